import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from spinlab import ModelParams
from spinlab.errors import InvalidArgument
from spinlab.spin_algebra import build_full, build_lmg, dicke_operators

spins = st.integers(min_value=1, max_value=100).map(lambda n: n / 2)
couplings = st.floats(min_value=-5, max_value=5, allow_nan=False)


def test_spin_half_is_pauli_over_two():
    ops = dicke_operators(0.5)
    np.testing.assert_array_equal(ops.sx, [[0, 0.5], [0.5, 0]])
    np.testing.assert_array_equal(ops.sz, np.diag([-0.5, 0.5]))


def test_spin_one_offdiagonals():
    ops = dicke_operators(1)
    np.testing.assert_allclose(ops.sx[[0, 1], [1, 2]], 1 / np.sqrt(2), rtol=1e-15)


def test_spin_three_halves_top_element():
    ops = dicke_operators(1.5)
    # rows ordered m = -3/2, -1/2, 1/2, 3/2
    assert ops.sx[3, 2] == pytest.approx(0.5 * np.sqrt(3), rel=1e-15)


@pytest.mark.parametrize("bad", [0.3, 0, -1, 1.25])
def test_dicke_rejects_non_half_integer(bad):
    with pytest.raises(InvalidArgument):
        dicke_operators(bad)


@given(spins)
def test_dicke_structure(spin):
    ops = dicke_operators(spin)
    m = np.arange(-spin, spin + 1)
    assert ops.dim == len(m)
    np.testing.assert_array_equal(np.diag(ops.sz), m)
    np.testing.assert_array_equal(ops.sx, ops.sx.T)
    assert not np.any(np.diag(ops.sx))
    # ladder norm: (Sx^2)_mm = (S(S+1) - m^2) / 2
    np.testing.assert_allclose(np.diag(ops.sx @ ops.sx), 0.5 * (spin * (spin + 1) - m**2), atol=1e-10)
    comm = ops.sz @ ops.sx - ops.sx @ ops.sz
    np.testing.assert_array_equal(comm, -comm.T)
    np.testing.assert_allclose(comm, ops.sx * (m[:, None] - m[None, :]), atol=1e-12)


def test_lmg_diagonal_when_no_transverse_field():
    p = ModelParams(omega_t=0.2, j_couple=2, j_chain=1, spin=0.5)
    np.testing.assert_allclose(build_lmg(p, 1), np.diag([-0.35, 0.85]), atol=1e-15)


def test_lmg_corner_entry():
    p = ModelParams(omega_t=0.2, j_couple=2, j_chain=1, spin=5)
    assert build_lmg(p, 1)[0, 0] == pytest.approx(-3.5, abs=1e-14)


@given(spins, couplings, couplings, couplings, couplings, st.sampled_from([1, -1]))
@settings(max_examples=60)
def test_lmg_symmetric_and_trace(spin, wt, dt, j, jc, branch):
    p = ModelParams(omega_t=wt, delta_t=dt, j_chain=j, j_couple=jc, spin=spin)
    h = build_lmg(p, branch)
    np.testing.assert_array_equal(h, h.T)
    m = np.arange(-spin, spin + 1)
    assert np.trace(h) == pytest.approx(j / (2 * spin) * np.sum(m**2), abs=1e-9 * (1 + abs(j) * spin**2))


def test_lmg_rejects_bad_branch():
    with pytest.raises(InvalidArgument):
        build_lmg(ModelParams(), 0)


@given(spins, couplings, couplings, couplings, couplings, couplings, couplings)
@settings(max_examples=40)
def test_full_hermitian(spin, w, d, wt, dt, j, jc):
    h = build_full(ModelParams(w, d, wt, dt, j, jc, spin))
    assert h.shape == (2 * (int(2 * spin) + 1),) * 2
    np.testing.assert_array_equal(h, h.T)


def test_full_block_diagonal_spectrum_union():
    p = ModelParams(omega=1.3, delta=0.0, omega_t=0.4, delta_t=0.7, j_chain=0.9, j_couple=1.1, spin=3)
    n = p.dim
    up = np.linalg.eigvalsh(0.65 * np.eye(n) + build_lmg(p, 1))
    down = np.linalg.eigvalsh(-0.65 * np.eye(n) + build_lmg(p, -1))
    np.testing.assert_allclose(np.linalg.eigvalsh(build_full(p)), np.sort(np.r_[up, down]), atol=1e-12)


def test_full_fully_diagonal_case():
    p = ModelParams(omega=0.8, omega_t=0.3, j_chain=0.6, spin=2)
    h = build_full(p)
    assert np.count_nonzero(h - np.diag(np.diag(h))) == 0
    m = np.arange(-2, 3)
    expect = np.r_[0.4 + 0.3 * m + 0.6 * m**2 / 4, -0.4 + 0.3 * m + 0.6 * m**2 / 4]
    np.testing.assert_allclose(np.diag(h), expect, atol=1e-15)


def test_spin_half_full_matches_symbolic_characteristic_polynomial():
    w, d, wt, dt, j, jc = (sympy.Rational(x) for x in ("1", "1/2", "1/5", "3/10", "7/10", "3/2"))
    half = sympy.Rational(1, 2)

    def block(b):
        f = wt + b * jc / 2
        return sympy.Matrix([[-half * f + j / 4, dt / 2], [dt / 2, half * f + j / 4]])

    eye = sympy.eye(2)
    h = sympy.zeros(4, 4)
    h[:2, :2] = w / 2 * eye + block(1)
    h[2:, 2:] = -w / 2 * eye + block(-1)
    h[:2, 2:] = d / 2 * eye
    h[2:, :2] = d / 2 * eye
    lam = sympy.symbols("lam")
    roots = sorted(float(sympy.re(r)) for r in sympy.Poly((h - lam * sympy.eye(4)).det(), lam).nroots(n=30))
    p = ModelParams(1, 0.5, 0.2, 0.3, 0.7, 1.5, 0.5)
    np.testing.assert_allclose(np.linalg.eigvalsh(build_full(p)), roots, atol=1e-13)
