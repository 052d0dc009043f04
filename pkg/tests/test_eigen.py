import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ceslab import eigen
from ceslab.numeric import Mode, Status
from ceslab.operators import apply_cesaro, apply_cesaro_transpose, cesaro_matrix
from ceslab.spaces import Space, Weight

T_GRID = [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]
t_exact = st.fractions(min_value=0, max_value=1, max_denominator=16)


def falling_product(m, n, t):
    """(m+1)(m+2)...(m+n)/n! * t^n, the product form of the coordinates."""
    num = 1
    for i in range(1, n + 1):
        num *= m + i
    return Fraction(num, math.factorial(n)) * t ** n


# -- eigenvectors ---------------------------------------------------------------


def test_first_eigenvector_is_geometric():
    t = Fraction(2, 3)
    assert eigen.eigenvector(t, 0, 8) == [t ** n for n in range(8)]


def test_second_eigenvector_at_one_half():
    x = eigen.eigenvector(Fraction(1, 2), 1, 6)
    assert x == [0, 1, 1, Fraction(3, 4), Fraction(1, 2), Fraction(5, 16)]


@pytest.mark.parametrize("t", T_GRID + [Fraction(1)])
def test_third_eigenvector(t):
    assert eigen.eigenvector(t, 2, 6) == [0, 0, 1, 3 * t, 6 * t ** 2, 10 * t ** 3]


@settings(max_examples=30)
@given(t_exact, st.integers(0, 12))
def test_recurrence_matches_product_formula(t, m):
    x = eigen.eigenvector(t, m, m + 65)
    assert x[m:] == [falling_product(m, n, t) for n in range(65)]
    assert x == eigen.eigenvector_closed_form(t, m, m + 65)


def test_float_eigenvector_matches_exact():
    t = Fraction(9, 10)
    exact = eigen.eigenvector(t, 5, 300)
    assert np.allclose(eigen.eigenvector(t, 5, 300, Mode.FLOAT), [float(v) for v in exact], rtol=1e-12, atol=0)


def test_eigenvector_sequence_agrees_with_list():
    seq = eigen.eigenvector_sequence(Fraction(1, 2), 3)
    exact = eigen.eigenvector(Fraction(1, 2), 3, 200)
    assert [seq(k) for k in range(200)] == exact
    assert np.allclose(seq.prefix(200), [float(v) for v in exact], rtol=1e-12, atol=1e-300)


@pytest.mark.parametrize("t, m, N", [(0, 5, 10), (Fraction(1, 2), 0, 100), (Fraction(3, 4), 7, 200)])
def test_verify_eigenpair_examples(t, m, N):
    assert eigen.verify_eigenpair(t, m, N).yes


def test_eigenpair_with_wrong_vector_fails():
    # perturbing the vector must be detected, so the check is not vacuous
    x = eigen.eigenvector(Fraction(1, 2), 2, 20)
    x[7] += 1
    assert apply_cesaro(Fraction(1, 2), x) != [v / 3 for v in x]


# -- dual eigenvectors -------------------------------------------------------------


def test_dual_eigenvector_examples():
    assert eigen.dual_eigenvector(Fraction(1, 2), 0, 4) == [1, 0, 0, 0]
    assert eigen.verify_dual_eigenpair(Fraction(1, 2), 0, 4).yes
    z = eigen.dual_eigenvector(Fraction(1, 2), 1, 4)
    assert z == [Fraction(-1, 2), 1, 0, 0]
    assert cesaro_matrix(Fraction(1, 2), 4).T.dot(np.array(z, dtype=object)).tolist() == [Fraction(-1, 4),
                                                                                        Fraction(1, 2), 0, 0]
    assert eigen.verify_dual_eigenpair(Fraction(2, 3), 4, 16).yes


@settings(max_examples=30)
@given(t_exact, st.integers(0, 10))
def test_dual_support_and_leading_coordinate(t, n):
    z = eigen.dual_eigenvector(t, n, n + 5)
    assert z[n] == 1 and all(v == 0 for v in z[n + 1:])
    # transpose kernel agrees with the dense check
    assert apply_cesaro_transpose(t, z) == [v / (n + 1) for v in z]


@pytest.mark.parametrize("t, m, n, expected", [
    (Fraction(1, 2), 3, 3, 1),
    (Fraction(1, 3), 4, 1, 0),
    (Fraction(7, 8), 4, 1, 0),
])
def test_biorthogonality_examples(t, m, n, expected):
    assert eigen.biorthogonality(t, m, n) == expected


def test_biorthogonality_against_geometric_vector():
    # direct binomial sum against (t^k): t^2 - 2t * t + t^2 * 1 = 0
    t = Fraction(1, 2)
    direct = sum((-1) ** i * math.comb(2, i) * t ** i * t ** (2 - i) for i in range(3))
    assert direct == 0 == eigen.biorthogonality(t, 0, 2)


@settings(max_examples=40)
@given(t_exact, st.integers(0, 12), st.integers(0, 12))
def test_biorthogonality_is_delta(t, m, n):
    if n > m:
        m, n = n, m
    assert eigen.biorthogonality(t, m, n) == (1 if m == n else 0)


# -- the classical average's dual recurrence ----------------------------------------


@settings(max_examples=40)
@given(st.fractions(min_value=Fraction(-3), max_value=3, max_denominator=9).filter(lambda q: q != 0))
def test_c1_dual_residual_is_exactly_zero(lam):
    z = eigen.c1_dual_eigenvector(lam, 30, Mode.EXACT).coords
    # differenced form of sum_{n >= k} z_n/(n+1) = lam z_k
    assert all(z[k] / (k + 1) == lam * (z[k] - z[k + 1]) for k in range(29))


@pytest.mark.parametrize("m", [0, 1, 4, 9])
def test_c1_dual_at_eigenvalue_has_finite_support(m):
    N = m + 8
    d = eigen.c1_dual_eigenvector(Fraction(1, m + 1), N, Mode.EXACT)
    assert d.coords[m] != 0 and all(v == 0 for v in d.coords[m + 1:])
    assert d.verdict.yes and d.verdict.certificate["support"] == m + 1
    # the full transpose equation holds on the section once the support fits
    assert apply_cesaro_transpose(1, d.coords) == [v / (m + 1) for v in d.coords]


def test_c1_dual_membership_verdicts():
    assert eigen.c1_dual_eigenvector(0.6, 4096).verdict.yes  # Re(1/lam) = 5/3
    assert eigen.c1_dual_eigenvector(2, 4096).verdict.no  # Re(1/lam) = 1/2
    assert eigen.c1_dual_eigenvector(1 / 1.0 + 0.02j, 4096).verdict.inconclusive
    with pytest.raises(ValueError):
        eigen.c1_dual_eigenvector(0, 4)


def test_c1_dual_float_matches_exact():
    lam = Fraction(3, 5)
    exact = eigen.c1_dual_eigenvector(lam, 200, Mode.EXACT).coords
    approx = eigen.c1_dual_eigenvector(float(lam), 200).coords
    assert np.allclose(approx, [float(v) for v in exact], rtol=1e-12, atol=1e-300)


# -- membership of eigenvectors --------------------------------------------------------


def test_eigenvector_membership_examples():
    assert eigen.eigenvector_membership(Space.lp(1), Fraction(1, 2), 3).yes
    assert eigen.eigenvector_membership(Space.hahn(Weight.log()), Fraction(1, 2), 0).yes
    assert eigen.eigenvector_membership(Space.hahn(Weight.geometric(2)), Fraction(3, 5), 0).no


def test_eigenvectors_of_classical_average():
    assert eigen.eigenvector_membership(Space.lp(math.inf), 1, 0).yes  # the constant sequence
    assert eigen.eigenvector_membership(Space.c0(), 1, 0).no
    assert eigen.eigenvector_membership(Space.lp(math.inf), 1, 2).status is Status.NO


@pytest.mark.parametrize("m", [0, 3, 10])
def test_geometric_weight_threshold(m):
    w = Space.hahn(Weight.geometric(2))
    assert eigen.eigenvector_membership(w, Fraction(2, 5), m).yes
    assert eigen.eigenvector_membership(w, Fraction(3, 5), m).no
