from fractions import Fraction

import numpy as np
import pytest

from curvachay import linalg

F = Fraction


def test_solve_and_inverse_exact():
    a = linalg.frac_matrix([[2, 1], [1, 3]])
    inv = linalg.inverse(a)
    assert (a @ inv == linalg.identity(2)).all()
    assert inv[0, 0] == F(3, 5)


def test_singular_detection():
    a = linalg.frac_matrix([[1, 2], [2, 4]])
    assert linalg.is_singular(a)
    with pytest.raises(np.linalg.LinAlgError):
        linalg.solve(a, linalg.frac_matrix([[1], [1]]))


def test_schur_complement_diagonal_and_dense_paths_agree():
    m = linalg.frac_matrix([[4, 1, 2, 0], [1, 3, 0, 1], [2, 0, 5, 0], [0, 1, 0, 2]])
    s = linalg.schur_complement(m, 2)
    expect = m[:2, :2] - m[:2, 2:] @ linalg.inverse(m[2:, 2:]) @ m[2:, :2]
    assert (s == expect).all()
    m[2, 3] = m[3, 2] = F(1)
    s = linalg.schur_complement(m, 2)
    expect = m[:2, :2] - m[:2, 2:] @ linalg.inverse(m[2:, 2:]) @ m[2:, :2]
    assert (s == expect).all()


def test_rational_sqrt():
    assert linalg.rational_sqrt(F(9, 4)) == F(3, 2)
    assert linalg.rational_sqrt(F(1, 2)) is None
    assert linalg.rational_sqrt(F(-1)) is None


def test_psd_via_ldl():
    assert linalg.is_psd(linalg.frac_matrix([[1, 1], [1, 1]]))
    assert not linalg.is_psd(linalg.frac_matrix([[1, 2], [2, 1]]))
    assert not linalg.is_psd(linalg.frac_matrix([[0, 1], [1, 0]]))


def test_jacobi_against_numpy():
    rng = np.random.default_rng(5)
    for n in (1, 2, 5, 9):
        b = rng.normal(size=(n, n))
        a = b + b.T
        w, v = linalg.jacobi_eigh(a)
        assert np.allclose(w, np.linalg.eigvalsh(a), atol=1e-10)
        assert np.allclose(a @ v, v * w, atol=1e-9)


def test_exact_min_eigenvalue():
    a = linalg.frac_matrix([[2, -1], [-1, 2]])
    assert linalg.exact_min_eigenvalue(a, 1.0000000001) == 1
    irr = linalg.frac_matrix([[1, 1], [1, 0]])
    approx = linalg.min_eigenvalue(linalg.to_float(irr))[0]
    assert linalg.exact_min_eigenvalue(irr, approx) is None


def test_formatting():
    assert linalg.format_fraction(F(-3, 4)) == "-3/4"
    assert linalg.format_fraction(F(2)) == "2"
    assert linalg.matrix_to_csv(linalg.frac_matrix([[F(1, 2), 0]])) == "1/2,0\n"
