"""Scalars, enclosures, tail certificates and certified series summation.

Two arithmetic modes exist. ``Mode.EXACT`` keeps rationals as
:class:`fractions.Fraction`; ``Mode.FLOAT`` uses IEEE doubles and widens every
enclosure outward by a rounding slack proportional to the number of terms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

import numpy as np

Scalar = Union[Fraction, int, float]
EPS = 2.0 ** -52


class Mode(str, Enum):
    EXACT = "exact"
    FLOAT = "float"


class Status(str, Enum):
    YES = "CertifiedYes"
    NO = "CertifiedNo"
    INCONCLUSIVE = "Inconclusive"


class CertificateError(ValueError):
    """Raised when a requested bound cannot be backed by a certificate."""


@dataclass(frozen=True)
class Verdict:
    """Three-valued answer with the numbers that justify it."""

    status: Status
    certificate: dict = field(default_factory=dict)
    note: str = ""

    @property
    def yes(self) -> bool:
        return self.status is Status.YES

    @property
    def no(self) -> bool:
        return self.status is Status.NO

    @property
    def inconclusive(self) -> bool:
        return self.status is Status.INCONCLUSIVE


def parse_scalar(text) -> Fraction:
    """Parse ``"p/q"``, a decimal string or a number into an exact rational."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, float):
        return Fraction(repr(text))
    return Fraction(str(text).strip())


def coerce(value, mode: Mode) -> Scalar:
    if mode is Mode.FLOAT:
        return float(value)
    if isinstance(value, (Fraction, int)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    # irrational data (log weights) stays floating even in exact mode
    return value


def format_scalar(value) -> str:
    """Serialise a scalar: rationals as ``p/q``, floats with 17 significant digits."""
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, complex):
        return f"{value.real:.17g}{value.imag:+.17g}j"
    return f"{float(value):.17g}"


@dataclass(frozen=True)
class Enclosure:
    """Closed interval ``[lower, upper]`` known to contain a quantity.

    ``upper == inf`` marks an estimate-only result: the lower end is a valid
    bound but nothing certifies the quantity is finite.
    """

    lower: Scalar
    upper: Scalar

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"empty enclosure [{self.lower}, {self.upper}]")

    @classmethod
    def point(cls, value) -> "Enclosure":
        return cls(value, value)

    @property
    def width(self):
        return self.upper - self.lower

    @property
    def estimate_only(self) -> bool:
        return math.isinf(float(self.upper))

    @property
    def midpoint(self) -> float:
        if self.estimate_only:
            return float(self.lower)
        return (float(self.lower) + float(self.upper)) / 2

    def contains(self, value, tol: float = 0.0) -> bool:
        return self.lower - tol <= value <= self.upper + tol

    def is_exact(self) -> bool:
        return self.lower == self.upper

    def __repr__(self):
        return f"Enclosure[{format_scalar(self.lower)}, {format_scalar(self.upper)}]"


def round_out(lower: float, upper: float, n_ops: int, scale: float) -> tuple[float, float]:
    """Widen a float interval by a worst-case accumulated rounding error."""
    delta = (n_ops + 1) * EPS * abs(scale)
    lo = math.nextafter(float(lower) - delta, -math.inf)
    hi = math.nextafter(float(upper) + delta, math.inf)
    return lo, hi


# -- tail certificates -------------------------------------------------------


@dataclass(frozen=True)
class TailCertificate:
    """``|a_{n+1}| <= ratio_bound * |a_n|`` for every ``n >= start_index``."""

    start_index: int
    ratio_bound: Scalar

    def __post_init__(self):
        if not (0 <= self.ratio_bound < 1):
            raise CertificateError(
                f"no geometric certificate: ratio bound {format_scalar(self.ratio_bound)} is not in [0, 1)"
            )

    def abs_tail(self, values: Sequence) -> Optional[Scalar]:
        """Bound on ``sum_{n > N} |a_n|`` where ``N = len(values) - 1``."""
        last = len(values) - 1
        if last < self.start_index:
            return None
        r = self.ratio_bound
        return abs(values[last]) * r / (1 - r)

    def sup_tail(self, values: Sequence) -> Optional[Scalar]:
        last = len(values) - 1
        if last < self.start_index:
            return None
        return abs(values[last]) * self.ratio_bound


@dataclass(frozen=True)
class IntegralTail:
    """``tail_integral(N)`` bounds ``sum_{n > N} |a_n|`` for ``N >= start_index``."""

    start_index: int
    tail_integral: Callable[[int], float]

    def abs_tail(self, values: Sequence) -> Optional[float]:
        last = len(values) - 1
        if last < self.start_index:
            return None
        return self.tail_integral(last)

    def sup_tail(self, values: Sequence) -> Optional[float]:
        return self.abs_tail(values)


@dataclass(frozen=True)
class AlternatingTail:
    """Signs alternate and ``|a_n|`` decreases to zero from ``start_index`` on.

    Absolute tails are not available; consumers use the fact that all later
    partial sums lie between two consecutive ones.
    """

    start_index: int

    def abs_tail(self, values: Sequence):
        return None

    def sup_tail(self, values: Sequence):
        last = len(values) - 1
        if last < self.start_index:
            return None
        return abs(values[last])


@dataclass(frozen=True)
class MonotoneTail:
    """``|a_n|`` is nonincreasing with limit zero and the sign is constant from ``start_index`` on."""

    start_index: int

    def abs_tail(self, values: Sequence):
        return None

    def sup_tail(self, values: Sequence):
        last = len(values) - 1
        if last < self.start_index:
            return None
        return abs(values[last])


@dataclass(frozen=True)
class FiniteSupport:
    """``a_n = 0`` for every ``n >= length``."""

    length: int

    def abs_tail(self, values: Sequence):
        return 0 if len(values) >= self.length else None

    def sup_tail(self, values: Sequence):
        return self.abs_tail(values)


@dataclass(frozen=True)
class ConstantTail:
    """``a_n = value`` for every ``n >= start_index``."""

    start_index: int
    value: Scalar

    def abs_tail(self, values: Sequence):
        if self.value == 0 and len(values) > self.start_index:
            return 0
        return None

    def sup_tail(self, values: Sequence):
        if len(values) > self.start_index:
            return abs(self.value)
        return None


@dataclass(frozen=True)
class IntegralMinorant:
    """``|a_n| >= g(n)`` for ``n >= start_index`` with ``g`` positive and decreasing.

    ``antiderivative`` is a primitive of ``g``; ``unbounded`` records that it
    tends to infinity, which certifies divergence of ``sum |a_n|``.
    """

    start_index: int
    antiderivative: Callable[[float], float]
    unbounded: bool = True


AnyTail = Union[TailCertificate, IntegralTail, AlternatingTail, MonotoneTail, FiniteSupport, ConstantTail]


@dataclass
class SeqGenerator:
    """A lazily evaluated sequence ``n -> a_n`` plus whatever is certified about it.

    ``vectorized`` (optional) evaluates many float coordinates at once and is
    used only in float mode.
    """

    rule: Callable[[int], Scalar]
    tail: Optional[AnyTail] = None
    minorant: Optional[IntegralMinorant] = None
    limit: Optional[Scalar] = None
    name: str = ""
    vectorized: Optional[Callable[[np.ndarray], np.ndarray]] = None

    def __call__(self, n: int) -> Scalar:
        return self.rule(n)

    def prefix(self, N: int, mode: Mode = Mode.FLOAT):
        """Coordinates ``0..N-1`` as a float array or a list of exact scalars."""
        if mode is Mode.FLOAT:
            if self.vectorized is not None:
                out = np.asarray(self.vectorized(np.arange(N)))
                return out if np.iscomplexobj(out) else out.astype(float)
            return np.array([float(self.rule(n)) for n in range(N)], dtype=float)
        return [coerce(self.rule(n), mode) for n in range(N)]

    def finite_length(self) -> Optional[int]:
        return self.tail.length if isinstance(self.tail, FiniteSupport) else None


def finite_sequence(values, name: str = "") -> SeqGenerator:
    """Sequence equal to ``values`` followed by zeros."""
    if isinstance(values, np.ndarray):
        arr = values
        L = len(arr)

        def vec(n):
            out = np.zeros(n.shape, dtype=arr.dtype)
            inside = n < L
            out[inside] = arr[n[inside]]
            return out

        return SeqGenerator(rule=lambda n: arr[n] if n < L else 0, tail=FiniteSupport(L), limit=0,
                            name=name or "finite", vectorized=vec)
    vals = list(values)
    return SeqGenerator(
        rule=lambda n: vals[n] if n < len(vals) else 0,
        tail=FiniteSupport(len(vals)),
        limit=0,
        name=name or "finite",
    )


def constant_sequence(value, name: str = "") -> SeqGenerator:
    return SeqGenerator(
        rule=lambda n: value,
        tail=ConstantTail(0, value),
        limit=value,
        name=name or f"constant {value}",
        vectorized=lambda n: np.full(n.shape, float(value)),
    )


def unit_vector(k: int) -> SeqGenerator:
    return finite_sequence([0] * k + [1], name=f"e_{k}")


# -- summation ---------------------------------------------------------------


def _terms_of(terms, N: int, mode: Mode):
    if isinstance(terms, SeqGenerator):
        return terms.prefix(N, mode)
    if mode is Mode.FLOAT:
        return np.array([float(terms(n)) for n in range(N)], dtype=float)
    return [coerce(terms(n), mode) for n in range(N)]


def sum_with_tail(terms, cert: Optional[AnyTail], N: int, mode: Mode = Mode.FLOAT) -> Enclosure:
    """Enclose ``sum_{n>=0} a_n`` using ``a_0..a_N`` and a tail certificate.

    Geometric certificates give ``sum_{n>N} |a_n| <= |a_N| r / (1 - r)``.  Nonnegative
    prefixes get a one-sided enclosure, signed ones a symmetric one.  An
    alternating certificate brackets the sum between two partial sums.
    """
    if cert is None:
        raise CertificateError("no geometric certificate supplied for the tail")
    if isinstance(cert, AlternatingTail):
        vals = _terms_of(terms, N + 2, mode)
        s_n = sum(vals[: N + 1], Fraction(0) if mode is Mode.EXACT else 0.0)
        s_next = s_n + vals[N + 1]
        lo, hi = min(s_n, s_next), max(s_n, s_next)
        if mode is Mode.FLOAT:
            lo, hi = round_out(lo, hi, N + 2, float(np.abs(vals).sum()))
        return Enclosure(lo, hi)

    vals = _terms_of(terms, N + 1, mode)
    tail = cert.abs_tail(vals)
    if tail is None:
        raise CertificateError(f"certificate does not apply at N={N}")
    if mode is Mode.FLOAT:
        arr = np.asarray(vals, dtype=float)
        partial = math.fsum(arr)
        nonneg = bool(np.all(arr >= 0))
        lo = partial if nonneg else partial - float(tail)
        hi = partial + float(tail)
        lo, hi = round_out(lo, hi, N + 1, float(np.abs(arr).sum()))
        return Enclosure(lo, hi)
    partial = sum(vals, Fraction(0))
    nonneg = all(v >= 0 for v in vals)
    lo = partial if nonneg else partial - tail
    return Enclosure(lo, partial + tail)


@dataclass(frozen=True)
class DivergenceBound:
    """Lower bound ``L_N`` on ``sum_{n<=N} a_n`` for nonnegative terms."""

    lower: float
    partial: float
    integral_bound: Optional[float]
    verdict: Verdict


def divergence_lower_bound(terms: SeqGenerator, N: int) -> DivergenceBound:
    """Certified lower bound on a partial sum of a nonnegative series.

    The partial sum is computed directly (rounded down).  When the sequence
    carries an :class:`IntegralMinorant`, the integral comparison
    ``sum_{n=s}^{N} g(n) >= G(N+1) - G(s)`` is also used, and divergence of
    the full series is certified if ``G`` is unbounded.
    """
    vals = terms.prefix(N + 1, Mode.FLOAT)
    if np.any(vals < 0):
        raise ValueError("divergence bounds need nonnegative terms")
    partial = math.fsum(vals)
    lower, _ = round_out(partial, partial, N + 1, partial)
    integral = None
    mino = terms.minorant
    if mino is not None and N >= mino.start_index:
        s = mino.start_index
        head = math.fsum(vals[:s])
        integral = head + mino.antiderivative(N + 1) - mino.antiderivative(s)
        integral, _ = round_out(integral, integral, 8, integral)
        lower = max(lower, integral)
    if mino is not None and mino.unbounded:
        verdict = Verdict(Status.NO, {"partial_lower": lower, "minorant_start": mino.start_index},
                          "terms dominate a positive decreasing function with unbounded integral")
    else:
        verdict = Verdict(Status.INCONCLUSIVE, {"partial_lower": lower}, "no registered integral form")
    return DivergenceBound(lower=lower, partial=partial, integral_bound=integral, verdict=verdict)


def harmonic_minorant(shift: int = 1, scale: float = 1.0, start: int = 0) -> IntegralMinorant:
    """Minorant ``g(x) = scale / (x + shift)``, primitive ``scale * log(x + shift)``."""
    return IntegralMinorant(start, lambda x: scale * math.log(x + shift), True)
