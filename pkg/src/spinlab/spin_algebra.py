"""Collective-spin matrices and the finite-N Hamiltonians.

Basis ordering is ``m = -S, ..., S`` ascending throughout the package.
"""

from dataclasses import dataclass

import numpy as np

from spinlab.errors import InvalidArgument
from spinlab.params import twice_spin


@dataclass(frozen=True)
class DickeOperators:
    """``S_x`` and ``S_z`` in the ``|S, m>`` basis."""

    dim: int
    sx: np.ndarray
    sz: np.ndarray

    @property
    def m(self):
        return np.diag(self.sz).copy()


def ladder_element(spin, m, m_prime):
    """``<m'|S_x|m>`` for ``|m' - m| = 1``."""
    return 0.5 * np.sqrt(spin * (spin + 1.0) - m * m_prime)


def dicke_operators(spin):
    """Build ``S_x`` (tridiagonal, zero diagonal) and ``S_z`` (diagonal) for total spin ``spin``.

    Raises
    ------
    InvalidArgument
        If ``spin`` is not a positive half-integer.
    """
    two = twice_spin(spin)
    s = two / 2
    m = np.arange(two + 1, dtype=float) - s
    off = ladder_element(s, m[:-1], m[1:])
    sx = np.zeros((two + 1, two + 1))
    idx = np.arange(two)
    sx[idx, idx + 1] = off
    sx[idx + 1, idx] = off
    return DickeOperators(dim=two + 1, sx=sx, sz=np.diag(m))


def _check_branch(branch):
    if branch not in (1, -1):
        raise InvalidArgument(f"branch must be +1 or -1, got {branch!r}")


def build_lmg(params, branch, ops=None):
    """LMG block ``(wt + branch*Jc/2) S_z + dt S_x + J/(2S) S_z^2`` for single-spin state ``branch``."""
    _check_branch(branch)
    if ops is None:
        ops = dicke_operators(params.spin)
    m = ops.m
    diag = (params.omega_t + 0.5 * branch * params.j_couple) * m
    diag = diag + params.j_chain / (2.0 * params.spin) * m * m
    return params.delta_t * ops.sx + np.diag(diag)


def build_full(params):
    """Full Hamiltonian as a 2x2 block matrix over the single spin, dimension ``2(2S+1)``.

    The upper-left block is the single spin up (``tau_z = +1``).
    """
    ops = dicke_operators(params.spin)
    n = ops.dim
    eye = np.eye(n)
    h = np.empty((2 * n, 2 * n))
    h[:n, :n] = 0.5 * params.omega * eye + build_lmg(params, 1, ops)
    h[n:, n:] = -0.5 * params.omega * eye + build_lmg(params, -1, ops)
    h[:n, n:] = 0.5 * params.delta * eye
    h[n:, :n] = 0.5 * params.delta * eye
    return h
