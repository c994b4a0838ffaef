"""Exact finite-N spectra and the block-elimination (Fulton-Gouterman) residual."""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from spinlab.errors import InvalidArgument, NumericalFailure, PoleProximityError
from spinlab.spin_algebra import build_full, build_lmg, dicke_operators

POLE_TOL = 1e-9
SYMMETRY_RTOL = 1e-12


@dataclass(frozen=True)
class SpectrumResult:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None = None

    def __len__(self):
        return len(self.eigenvalues)


def eigensolve_sym(matrix, vectors=False):
    """Full spectrum of a real symmetric matrix, ascending.

    Parameters
    ----------
    matrix : array_like, shape (n, n)
    vectors : bool
        Also return orthonormal eigenvectors as columns.

    Raises
    ------
    InvalidArgument
        Non-square, non-finite or non-symmetric input.
    NumericalFailure
        LAPACK failed to converge, or the residual check did not hold.
    """
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidArgument(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidArgument("matrix has non-finite entries")
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    asym = float(np.max(np.abs(a - a.T))) if a.size else 0.0
    if asym > SYMMETRY_RTOL * max(scale, np.finfo(float).tiny):
        raise InvalidArgument(f"matrix is not symmetric (max |A - A^T| = {asym:.3e})")
    a = 0.5 * (a + a.T)
    try:
        if vectors:
            w, v = scipy.linalg.eigh(a, driver="evr")
        else:
            w = scipy.linalg.eigh(a, eigvals_only=True, driver="evr")
            v = None
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NumericalFailure(f"symmetric eigensolver failed for n={a.shape[0]}: {exc}") from exc
    if v is not None and a.size:
        norm = max(float(np.linalg.norm(a, 2)), np.finfo(float).tiny)
        resid = np.linalg.norm(a @ v - v * w, axis=0)
        worst = float(resid.max())
        if worst > 1e-10 * norm:
            raise NumericalFailure(f"eigenpair residual {worst:.3e} exceeds 1e-10*||H||={norm:.3e}")
    return SpectrumResult(eigenvalues=w, eigenvectors=v)


def exact_spectrum(params, vectors=False):
    """Eigenvalues of the full Hamiltonian at finite chain spin."""
    return eigensolve_sym(build_full(params), vectors=vectors)


def down_poles(params):
    """Eigenvalues of ``-w/2 + H_LMG^-``: the poles of the spin-down Green function."""
    h = build_lmg(params, -1) - 0.5 * params.omega * np.eye(params.dim)
    return eigensolve_sym(h).eigenvalues


def effective_hamiltonian(params, energy, pole_tol=POLE_TOL):
    """``w/2 + H_LMG^+ - (d^2/4) G_-(E)`` with ``G_-`` from a linear solve.

    Raises
    ------
    PoleProximityError
        ``energy`` is within ``pole_tol`` of an eigenvalue of ``-w/2 + H_LMG^-``.
    """
    ops = dicke_operators(params.spin)
    n = ops.dim
    eye = np.eye(n)
    h_up = build_lmg(params, 1, ops) + 0.5 * params.omega * eye
    h_down = build_lmg(params, -1, ops) - 0.5 * params.omega * eye
    poles = eigensolve_sym(h_down).eigenvalues
    k = int(np.argmin(np.abs(poles - energy)))
    if abs(poles[k] - energy) <= pole_tol:
        raise PoleProximityError(energy, float(poles[k]), pole_tol)
    green = scipy.linalg.solve(h_down - energy * eye, eye, assume_a="sym")
    h_eff = h_up - 0.25 * params.delta**2 * green
    return 0.5 * (h_eff + h_eff.T)


def fg_residual(params, energy, pole_tol=POLE_TOL):
    """Smallest ``|lambda(E) - E|`` over the eigenvalues of the effective Hamiltonian.

    Zero (to rounding) exactly when ``energy`` is an eigenvalue of the full
    Hamiltonian that does not sit on a spin-down pole.
    """
    h_eff = effective_hamiltonian(params, energy, pole_tol)
    lam = eigensolve_sym(h_eff).eigenvalues
    return float(np.min(np.abs(lam - energy)))


def fg_residuals(params, energies, pole_tol=POLE_TOL):
    """``fg_residual`` at every energy; pole-adjacent entries come back as ``nan``."""
    out = np.empty(len(energies))
    for i, e in enumerate(energies):
        try:
            out[i] = fg_residual(params, float(e), pole_tol)
        except PoleProximityError:
            out[i] = np.nan
    return out


def ground_energy_per_spin_scan(template, spins):
    """``[(S, E_min/S), ...]`` for each chain spin, other couplings from ``template``."""
    spins = list(spins)
    if any(b <= a for a, b in zip(spins, spins[1:])):
        raise InvalidArgument(f"spins must be strictly ascending, got {spins}")
    rows = []
    for s in spins:
        p = template.replace(spin=s)
        e0 = exact_spectrum(p).eigenvalues[0]
        rows.append((p.spin, float(e0 / p.spin)))
    return rows
