import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ceslab import eigen
from ceslab.numeric import (
    AlternatingTail,
    IntegralTail,
    Mode,
    MonotoneTail,
    SeqGenerator,
    Status,
    constant_sequence,
    harmonic_minorant,
    unit_vector,
)
from ceslab.spaces import (
    Family,
    IsometryKind,
    Space,
    Weight,
    conjugation,
    membership,
    norm,
    parse_space,
    parse_weight,
)

small_q = st.fractions(min_value=-5, max_value=5, max_denominator=12)
vectors = st.lists(small_q, min_size=1, max_size=12)


def alternating_harmonic():
    return SeqGenerator(lambda n: (-1) ** n / (n + 1), tail=AlternatingTail(0), limit=0,
                        vectorized=lambda n: (-1.0) ** n / (n + 1))


def inverse_squares(sign=False, monotone=False):
    # sum_{n > N} 1/(n+1)^2 <= 1/(N+1)
    tail = MonotoneTail(0) if monotone else IntegralTail(0, lambda N: 1 / (N + 1))
    s = -1.0 if sign else 1.0
    return SeqGenerator(lambda n: s ** n / (n + 1) ** 2, tail=tail, limit=0,
                        vectorized=lambda n: s ** n / (n + 1.0) ** 2)


# -- parsing -----------------------------------------------------------------------


@pytest.mark.parametrize("text", ["l1", "l2", "linf", "c0", "c", "cs", "ces2", "cesinf", "ces0", "d1", "d2",
                                  "bv", "bv0", "bvlim", "bv2", "h[log(n+3)]"])
def test_space_names_round_trip(text):
    src = "h:log" if text.startswith("h[") else text
    assert parse_space(src).name == text


def test_parse_space_variants():
    assert parse_space("lp:3") == Space.lp(3)
    assert parse_space("l3/2").p == 1.5
    assert parse_space("h").weight == Weight.power(1)
    assert parse_space("h:geometric:3").weight == Weight.geometric(3)
    with pytest.raises(ValueError):
        parse_space("nowhere")


def test_parse_weight_rejects_unknown():
    with pytest.raises(ValueError):
        parse_weight("cubic")


@pytest.mark.parametrize("make", [lambda: Space.lp(0.5), lambda: Space.ces(1), lambda: Space.dp(math.inf),
                                  lambda: Space.bvp(1), lambda: Space(Family.HAHN)])
def test_space_parameter_ranges(make):
    with pytest.raises(ValueError):
        make()


def test_custom_weight_must_be_nondecreasing():
    with pytest.raises(ValueError, match="nondecreasing"):
        Weight.custom(lambda n: 5.0 if n == 7 else 1.0 + n / 1e5)
    with pytest.raises(ValueError):
        Weight.custom(lambda n: 0.5)
    assert Weight.custom(lambda n: 1.0 + n)(3) == 4.0


# -- norms of the catalogue examples ------------------------------------------------


def test_cs_norm_of_alternating_harmonic():
    # sup of partial sums is attained by the first one
    e = norm(Space.cs(), alternating_harmonic(), 4096)
    assert e.contains(1.0) and e.width < 1e-11


def test_cs_norm_of_inverse_squares():
    e = norm(Space.cs(), inverse_squares(), 4096)
    assert e.contains(math.pi ** 2 / 6) and e.width < 3e-4


def test_cs_is_not_a_riesz_norm():
    # |z| <= |x| coordinatewise, yet ||z|| > ||x||
    z = norm(Space.cs(), inverse_squares(), 4096)
    x = norm(Space.cs(), alternating_harmonic(), 4096)
    assert z.lower > x.upper


def test_bv_norm_examples():
    signed = norm(Space.bv(), inverse_squares(sign=True), 4096)
    absolute = norm(Space.bv(), inverse_squares(monotone=True), 4096)
    assert signed.contains(math.pi ** 2 / 3) and signed.width < 1e-3
    assert absolute.contains(2.0) and absolute.width < 1e-11
    assert signed.lower > absolute.upper


@pytest.mark.parametrize("n", range(6))
def test_hahn_norm_of_unit_vectors(n):
    w = Weight.log()
    expected = w(0) if n == 0 else w(n - 1) + w(n)
    e = norm(Space.hahn(w), unit_vector(n), 16, Mode.EXACT)
    assert e.is_exact() and e.lower == pytest.approx(expected, rel=1e-15)


def test_hahn_power_weight_unit_vectors_are_exact_integers():
    e = norm(Space.hahn(Weight.power(1)), unit_vector(3), 8, Mode.EXACT)
    assert e.is_exact() and e.lower == 3 + 4 and isinstance(e.lower, (int, Fraction))


def test_hahn_norm_of_geometric_eigenvector():
    # (1-t) sum (k+1) t^k = 1/(1-t) = 2
    e = norm(Space.hahn(Weight.power(1)), eigen.eigenvector_sequence(Fraction(1, 2), 0), 4096)
    assert e.contains(2.0) and e.width < 1e-11


def test_dp_envelope():
    # envelope of (0, 0, 1, 0, 1/2) is (1, 1, 1, 1/2, 1/2)
    x = [0, 0, Fraction(1), 0, Fraction(1, 2)]
    assert norm(Space.dp(1), x, 8, Mode.EXACT).lower == 4


def test_bvlim_needs_a_known_limit():
    seq = SeqGenerator(lambda n: 1.0, vectorized=lambda n: np.ones(n.shape))
    assert norm(Space.bvlim(), seq, 64).estimate_only
    assert norm(Space.bvlim(), constant_sequence(1), 64).lower == pytest.approx(1.0)
    assert norm(Space.bv(), constant_sequence(1), 64).lower == pytest.approx(1.0)


def test_uncertified_sequence_is_estimate_only():
    seq = SeqGenerator(lambda n: 1 / (n + 1) ** 2, vectorized=lambda n: 1 / (n + 1.0) ** 2)
    e = norm(Space.lp(1), seq, 100)
    assert e.estimate_only and e.lower > 1.6


# -- membership -----------------------------------------------------------------------


def test_membership_examples():
    assert membership(Space.lp(1), eigen.eigenvector_sequence(Fraction(1, 2), 3)).yes
    assert membership(Space.c0(), constant_sequence(1)).no
    harmonic = SeqGenerator(lambda n: 1 / (n + 1), minorant=harmonic_minorant(1), limit=0,
                            vectorized=lambda n: 1 / (n + 1.0))
    assert membership(Space.lp(1), harmonic).no


def test_membership_in_c_needs_convergence_certificate():
    assert membership(Space.c(), constant_sequence(3)).yes
    seq = SeqGenerator(lambda n: 1 / (n + 1), tail=IntegralTail(0, lambda N: math.inf))
    assert membership(Space.c(), seq).status is Status.INCONCLUSIVE


# -- structural properties ---------------------------------------------------------------

EXACT_SPACES = [Space.lp(1), Space.lp(math.inf), Space.c0(), Space.c(), Space.cs(), Space.ces0(), Space.dp(1),
                Space.bv(), Space.bv0(), Space.bvlim(), Space.hahn(Weight.power(1)), Space.hahn(Weight.power(2))]


@settings(max_examples=50)
@given(vectors)
def test_finite_support_norms_are_exact(x):
    for space in EXACT_SPACES:
        e = norm(space, x, 4, Mode.EXACT)
        assert e.is_exact(), space.name


@settings(max_examples=50)
@given(vectors)
def test_root_norms_are_tight_for_finite_support(x):
    # p-th powers are exact; only the root is rounded outward
    for space in (Space.lp(2), Space.lp(3), Space.bvp(2), Space.dp(2)):
        e = norm(space, x, 4, Mode.EXACT)
        assert e.upper - e.lower <= 1e-14 * max(1.0, float(e.upper)), space.name


SOLID = [Space.lp(1), Space.lp(2), Space.lp(math.inf), Space.c0(), Space.ces(2), Space.ces(math.inf),
         Space.ces0(), Space.dp(1), Space.dp(2)]


@settings(max_examples=80)
@given(st.lists(st.tuples(small_q, st.fractions(0, 1, max_denominator=12)), min_size=1, max_size=12))
def test_riesz_property_on_solid_spaces(pairs):
    y = [a for a, _ in pairs]
    x = [a * s for a, s in pairs]  # |x| <= |y|
    for space in SOLID:
        nx = norm(space, np.array([float(v) for v in x]), 16)
        ny = norm(space, np.array([float(v) for v in y]), 16)
        assert nx.lower <= ny.upper, space.name


CONJUGATED = [Space.cs(), Space.bv(), Space.bv0(), Space.bvp(2), Space.bvp(3), Space.hahn(Weight.power(1)),
              Space.hahn(Weight.geometric(2))]


@settings(max_examples=1000)
@given(vectors)
def test_conjugation_is_isometric(x):
    padded = list(x) + [Fraction(0)]  # one zero closes the last difference
    for space in CONJUGATED:
        U = conjugation(space)
        y = U.forward(padded)
        assert norm(space, x, len(x), Mode.EXACT) == norm(U.target, y, len(y), Mode.EXACT), space.name


@settings(max_examples=200)
@given(vectors)
def test_conjugation_inverse_round_trip(x):
    for space in CONJUGATED:
        U = conjugation(space)
        assert U.inverse(U.forward(x)) == x or U.kind is IsometryKind.HAHN_W
    # the Hahn map looks one coordinate ahead, so invert on vectors ending in 0
    U = conjugation(Space.hahn(Weight.power(2)))
    z = list(x) + [Fraction(0)]
    assert U.inverse(U.forward(z))[:-1] == list(x)


def test_bvp_round_trip_example():
    x = [Fraction(1), Fraction(1, 2), Fraction(1, 3), 0, 0]
    U = conjugation(Space.bvp(2))
    assert U.inverse(U.forward(x)) == x


def test_cs_forward_of_alternating_harmonic():
    x = alternating_harmonic().prefix(100_001)
    y = conjugation(Space.cs()).forward(x)
    assert np.max(np.abs(y)) == 1.0
    assert abs(y[-1] - math.log(2)) < 1e-5


def test_hahn_forward_of_unit_vector():
    space = Space.hahn(Weight.log())
    y = conjugation(space).forward(np.array([0.0, 1.0, 0.0]))
    assert np.abs(y).sum() == pytest.approx(math.log(3) + math.log(4), rel=1e-15)
    assert norm(space, unit_vector(1), 4).contains(np.abs(y).sum(), 1e-15)


def test_hahn_forward_survives_huge_weights():
    # d_n = 2^n overflows past n ~ 1024 while the differences underflow
    space = Space.hahn(Weight.geometric(2))
    x = 0.3 ** np.arange(3000.0)
    y = conjugation(space).forward(x)
    assert np.all(np.isfinite(y))
    assert abs(y[500]) == pytest.approx(0.7 * 0.6 ** 500, rel=1e-9)
    assert np.all(y[1100:] == 0)  # x itself underflowed there
