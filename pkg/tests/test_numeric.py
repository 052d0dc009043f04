import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ceslab.numeric import (
    AlternatingTail,
    CertificateError,
    ConstantTail,
    Enclosure,
    FiniteSupport,
    Mode,
    MonotoneTail,
    SeqGenerator,
    Status,
    TailCertificate,
    coerce,
    divergence_lower_bound,
    finite_sequence,
    format_scalar,
    harmonic_minorant,
    parse_scalar,
    round_out,
    sum_with_tail,
)

rationals_01 = st.fractions(min_value=0, max_value=Fraction(99, 100), max_denominator=100)


def geometric(t):
    return SeqGenerator(lambda n: t ** n)


# -- scalars -------------------------------------------------------------------


@pytest.mark.parametrize("text, value", [
    ("1/2", Fraction(1, 2)),
    ("0.3", Fraction(3, 10)),
    (" 7 ", Fraction(7)),
    ("-3/9", Fraction(-1, 3)),
])
def test_parse_scalar(text, value):
    assert parse_scalar(text) == value


def test_parse_scalar_float_is_decimal():
    assert parse_scalar(0.1) == Fraction(1, 10)


@pytest.mark.parametrize("value, text", [
    (Fraction(3, 4), "3/4"),
    (Fraction(4, 2), "2"),
    (5, "5"),
    (0.1, "0.10000000000000001"),
    (1 + 2j, "1+2j"),
])
def test_format_scalar(value, text):
    assert format_scalar(value) == text


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_format_float_round_trips(x):
    assert float(format_scalar(x)) == x


@given(st.fractions(max_denominator=10 ** 6))
def test_format_fraction_round_trips(q):
    assert parse_scalar(format_scalar(q)) == q


def test_coerce_modes():
    assert coerce("1/3", Mode.EXACT) == Fraction(1, 3)
    assert isinstance(coerce(Fraction(1, 3), Mode.FLOAT), float)
    # irrational data stays a float even in exact mode
    assert coerce(math.pi, Mode.EXACT) == math.pi


def test_enclosure_rejects_empty_interval():
    with pytest.raises(ValueError):
        Enclosure(2, 1)


def test_enclosure_helpers():
    e = Enclosure(Fraction(1), Fraction(3))
    assert e.width == 2 and e.midpoint == 2.0 and e.contains(3) and not e.contains(3.5)
    assert e.contains(3.5, tol=0.5)
    assert Enclosure.point(Fraction(1, 3)).is_exact()
    assert Enclosure(1.0, math.inf).estimate_only


@given(st.floats(-1e6, 1e6), st.floats(0, 1e3), st.integers(0, 10 ** 6))
def test_round_out_widens(x, w, n):
    lo, hi = round_out(x, x + w, n, abs(x) + w)
    assert lo < x and hi > x + w


# -- tail certificates ------------------------------------------------------------


def test_certificate_rejects_ratio_one():
    with pytest.raises(CertificateError):
        TailCertificate(0, 1)


def test_geometric_series_encloses_two():
    e = sum_with_tail(geometric(Fraction(1, 2)), TailCertificate(0, Fraction(1, 2)), 64, Mode.EXACT)
    assert e.lower <= 2 <= e.upper
    e = sum_with_tail(geometric(0.5), TailCertificate(0, 0.5), 64)
    assert e.contains(2.0)


def test_differentiated_geometric_series_encloses_four():
    # (n+2)/(n+1) * 1/2 <= 2/3 < 0.8 from n = 2 on; closed form 1/(1-t)^2
    terms = SeqGenerator(lambda n: (n + 1) * Fraction(1, 2) ** n)
    e = sum_with_tail(terms, TailCertificate(2, Fraction(4, 5)), 128, Mode.EXACT)
    assert e.lower <= 4 <= e.upper
    assert e.width < Fraction(1, 10 ** 30)


def test_harmonic_series_has_no_certificate():
    terms = SeqGenerator(lambda n: Fraction(1, n + 1))
    with pytest.raises(CertificateError):
        sum_with_tail(terms, None, 100)


def test_certificate_must_start_before_n():
    with pytest.raises(CertificateError):
        sum_with_tail(geometric(Fraction(1, 2)), TailCertificate(50, Fraction(1, 2)), 10, Mode.EXACT)


def test_alternating_tail_encloses_log2():
    terms = SeqGenerator(lambda n: (-1) ** n / (n + 1))
    e = sum_with_tail(terms, AlternatingTail(0), 10_000)
    assert e.contains(math.log(2)) and e.width < 2e-4


def test_finite_and_constant_tails():
    seq = finite_sequence([Fraction(1), Fraction(-2)])
    assert sum_with_tail(seq, seq.tail, 3, Mode.EXACT) == Enclosure(-1, -1)
    assert FiniteSupport(2).abs_tail([1]) is None
    assert ConstantTail(0, 0).abs_tail([0, 0]) == 0
    assert ConstantTail(0, 3).abs_tail([3]) is None
    assert ConstantTail(0, 3).sup_tail([3]) == 3


def test_monotone_tail_sup_is_last_term():
    assert MonotoneTail(2).sup_tail([5, 4, 3, 2]) == 2
    assert MonotoneTail(5).sup_tail([5, 4]) is None
    assert MonotoneTail(0).abs_tail([1]) is None


def test_finite_sequence_vectorized_matches_rule():
    seq = finite_sequence(np.array([1.0, 2.0, 3.0]))
    assert np.array_equal(seq.prefix(5), [1, 2, 3, 0, 0])
    assert seq(1) == 2.0 and seq(7) == 0


@settings(max_examples=60)
@given(rationals_01, st.integers(0, 40))
def test_geometric_enclosure_contains_closed_form(t, N):
    e = sum_with_tail(geometric(t), TailCertificate(0, t), N, Mode.EXACT)
    assert e.lower <= 1 / (1 - t) <= e.upper


@settings(max_examples=40)
@given(st.fractions(min_value=Fraction(1, 100), max_value=Fraction(99, 100), max_denominator=100),
       st.integers(0, 30))
def test_width_shrinks_with_n(t, N):
    cert = TailCertificate(0, t)
    a = sum_with_tail(geometric(t), cert, N, Mode.EXACT)
    b = sum_with_tail(geometric(t), cert, N + 1, Mode.EXACT)
    assert b.width < a.width


@settings(max_examples=60)
@given(st.lists(st.floats(1e-6, 1e6) | st.floats(-1e6, -1e-6), min_size=1, max_size=20))
def test_exact_and_float_modes_agree(vals):
    exact = [Fraction(v) for v in vals]
    seq_e, seq_f = finite_sequence(exact), finite_sequence(np.array(vals))
    e = sum_with_tail(seq_e, seq_e.tail, len(vals), Mode.EXACT)
    f = sum_with_tail(seq_f, seq_f.tail, len(vals))
    assert f.contains(float(e.lower))
    scale = sum(abs(v) for v in vals)
    assert abs(f.midpoint - float(e.lower)) <= 1e-12 * scale


# -- divergence ---------------------------------------------------------------


def test_divergence_shifted_harmonic():
    N = 10 ** 6
    seq = SeqGenerator(lambda k: 1 / (k + 2), minorant=harmonic_minorant(2),
                       vectorized=lambda k: 1 / (k + 2.0))
    bound = divergence_lower_bound(seq, N)
    direct = math.fsum(1 / (k + 2) for k in range(N + 1))
    assert 13.0 <= bound.lower <= direct
    assert bound.verdict.status is Status.NO


def test_divergence_weighted_power_r1():
    # (k+1)^(r-1)/(k+2) with r = 1 is the shifted harmonic series
    N = 10 ** 5
    seq = SeqGenerator(lambda k: (k + 1) ** 0 / (k + 2), minorant=harmonic_minorant(2),
                       vectorized=lambda k: (k + 1.0) ** 0 / (k + 2.0))
    assert divergence_lower_bound(seq, N).lower >= 11.0


def test_divergence_without_minorant_is_inconclusive():
    seq = SeqGenerator(lambda k: 2.0 ** -k)
    bound = divergence_lower_bound(seq, 10)
    assert bound.lower == pytest.approx(2 - 2 ** -10, abs=1e-12)
    assert bound.lower <= 2 - 2 ** -10
    assert bound.verdict.status is Status.INCONCLUSIVE


def test_divergence_rejects_negative_terms():
    with pytest.raises(ValueError):
        divergence_lower_bound(SeqGenerator(lambda k: -1.0), 5)
