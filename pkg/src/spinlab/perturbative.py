"""Strong-coupling spectrum: second-order LMG levels fed into the two-level secular equation."""

import math
from dataclasses import dataclass

import numpy as np

from spinlab.errors import InvalidArgument, PerturbationBreakdown
from spinlab.spin_algebra import ladder_element

DEGENERACY_RTOL = 1e-8


def check_sigma(params, sigma):
    """Validate ``sigma`` as an S_z eigenvalue in ``{-S, ..., S}`` and return it as float."""
    s = params.spin
    two = 2.0 * (float(sigma) + s)
    if abs(float(sigma)) > s or abs(two - round(two)) > 1e-9 or round(two) % 2:
        raise InvalidArgument(f"sigma={sigma!r} is not in {{-S, ..., S}} for S={s}")
    return round(float(sigma) + s) - s


def sigmas(params):
    return np.arange(params.dim, dtype=float) - params.spin


@dataclass(frozen=True)
class PerturbativeLevel:
    """Chain energies on both single-spin branches and the two total levels for one ``sigma``."""

    sigma: float
    e_plus: float
    e_minus: float
    E_upper: float
    E_lower: float


def _zeroth(params, sigma, branch):
    return (params.omega_t + 0.5 * branch * params.j_couple) * sigma + params.j_chain / (
        2.0 * params.spin
    ) * sigma * sigma


def zeroth_energy(params, sigma, branch):
    """Unperturbed LMG energy ``(wt + branch*Jc/2) sigma + J sigma^2 / (2S)``."""
    if branch not in (1, -1):
        raise InvalidArgument(f"branch must be +1 or -1, got {branch!r}")
    return _zeroth(params, check_sigma(params, sigma), branch)


def _degeneracy_tol(params, branch, rtol):
    scale = float(np.max(np.abs(_zeroth(params, sigmas(params), branch))))
    return rtol * scale


def second_order_shift(params, sigma, branch, rtol=DEGENERACY_RTOL):
    """Second-order correction from ``V = dt S_x`` coupling ``sigma`` to ``sigma +- 1``.

    Raises
    ------
    PerturbationBreakdown
        An unperturbed gap is within ``rtol`` times the largest zeroth-order energy.
    """
    if branch not in (1, -1):
        raise InvalidArgument(f"branch must be +1 or -1, got {branch!r}")
    sigma = check_sigma(params, sigma)
    if params.delta_t == 0.0:
        return 0.0
    s = params.spin
    e0 = _zeroth(params, sigma, branch)
    tol = _degeneracy_tol(params, branch, rtol)
    total = 0.0
    for other in (sigma - 1.0, sigma + 1.0):
        if abs(other) > s:
            continue
        gap = e0 - _zeroth(params, other, branch)
        if abs(gap) <= tol:
            raise PerturbationBreakdown(sigma, other, gap, branch)
        total += params.delta_t**2 * ladder_element(s, sigma, other) ** 2 / gap
    return float(total)


def chain_level(params, sigma, branch, rtol=DEGENERACY_RTOL):
    """Chain energy to second order in ``delta_t`` on one branch."""
    return zeroth_energy(params, sigma, branch) + second_order_shift(params, sigma, branch, rtol)


def total_levels(params, sigma, rtol=DEGENERACY_RTOL):
    """Both roots of the quadratic secular equation for chain state ``sigma``."""
    sigma = check_sigma(params, sigma)
    ep = chain_level(params, sigma, 1, rtol)
    em = chain_level(params, sigma, -1, rtol)
    mean = 0.5 * (ep + em)
    half = 0.5 * math.hypot(params.omega + ep - em, params.delta)
    return PerturbativeLevel(sigma=sigma, e_plus=ep, e_minus=em, E_upper=mean + half, E_lower=mean - half)


def born_oppenheimer_levels(params, sigma, rtol=DEGENERACY_RTOL):
    """Eigenvalues (ascending) of ``(1/2)[[w, d], [d, -w]] + diag(e_plus, e_minus)``."""
    lev = total_levels(params, sigma, rtol)
    h = np.array(
        [
            [0.5 * params.omega + lev.e_plus, 0.5 * params.delta],
            [0.5 * params.delta, -0.5 * params.omega + lev.e_minus],
        ]
    )
    lo, hi = np.linalg.eigvalsh(h)
    return float(lo), float(hi)


def all_levels(params, rtol=DEGENERACY_RTOL):
    """``total_levels`` for every ``sigma`` from ``-S`` to ``S``."""
    return [total_levels(params, s, rtol) for s in sigmas(params)]


def perturbative_spectrum(params, rtol=DEGENERACY_RTOL):
    """All ``2(2S+1)`` perturbative energies, ascending."""
    levels = all_levels(params, rtol)
    return np.sort([e for lev in levels for e in (lev.E_lower, lev.E_upper)])


def match_levels(exact, approx):
    """Pair two spectra of equal length by rank and return ``|exact - approx|`` per pair.

    Rank pairing of sorted lists is the optimal one-to-one nearest-level
    assignment for an absolute-difference cost in one dimension.
    """
    exact = np.sort(np.asarray(exact, dtype=float))
    approx = np.sort(np.asarray(approx, dtype=float))
    if exact.shape != approx.shape:
        raise InvalidArgument(f"spectra differ in length: {exact.shape} vs {approx.shape}")
    return np.abs(exact - approx)
