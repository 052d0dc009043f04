"""Sequence spaces, weights, certified norms and conjugating isometries.

A norm is computed from the first ``N`` coordinates of a sequence.  The tail
is bounded with whatever certificate the sequence carries; a sequence with no
certificate yields an estimate-only enclosure ``[partial, inf)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional

import numpy as np
from scipy.special import gammaln

from .numeric import (
    AlternatingTail,
    ConstantTail,
    Enclosure,
    FiniteSupport,
    Mode,
    MonotoneTail,
    SeqGenerator,
    Status,
    TailCertificate,
    Verdict,
    divergence_lower_bound,
    finite_sequence,
    round_out,
)


class WeightKind(str, Enum):
    POWER = "power"
    LOG = "log"
    GEOMETRIC = "geometric"
    FACTORIAL = "factorial"
    SUPERPOWER = "superpower"
    CUSTOM = "custom"


CUSTOM_SCAN = 10_000


@dataclass(frozen=True)
class Weight:
    """Nondecreasing weight ``d = (d_n)`` with ``d_0 >= 1`` defining a Hahn space.

    ``param`` is the exponent ``r`` for ``POWER`` and the base ``alpha`` for
    ``GEOMETRIC``.
    """

    kind: WeightKind
    param: Optional[Fraction] = None
    rule: Optional[Callable[[int], float]] = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind is WeightKind.POWER and not (self.param is not None and self.param > 0):
            raise ValueError("power weight needs r > 0")
        if self.kind is WeightKind.GEOMETRIC and not (self.param is not None and self.param > 1):
            raise ValueError("geometric weight needs alpha > 1")
        if self.kind is WeightKind.CUSTOM:
            if self.rule is None:
                raise ValueError("custom weight needs a rule")
            vals = np.array([float(self.rule(n)) for n in range(CUSTOM_SCAN)])
            if vals[0] < 1:
                raise ValueError("weight must satisfy d_0 >= 1")
            bad = np.nonzero(np.diff(vals) < 0)[0]
            if bad.size:
                raise ValueError(f"weight is not nondecreasing: d_{bad[0] + 1} < d_{bad[0]}")

    # constructors
    @classmethod
    def power(cls, r=1) -> "Weight":
        return cls(WeightKind.POWER, Fraction(r))

    @classmethod
    def log(cls) -> "Weight":
        return cls(WeightKind.LOG)

    @classmethod
    def geometric(cls, alpha=2) -> "Weight":
        return cls(WeightKind.GEOMETRIC, Fraction(alpha))

    @classmethod
    def factorial(cls) -> "Weight":
        return cls(WeightKind.FACTORIAL)

    @classmethod
    def superpower(cls) -> "Weight":
        return cls(WeightKind.SUPERPOWER)

    @classmethod
    def custom(cls, rule: Callable[[int], float]) -> "Weight":
        return cls(WeightKind.CUSTOM, None, rule)

    @property
    def label(self) -> str:
        k = self.kind
        if k is WeightKind.POWER:
            return "n+1" if self.param == 1 else f"(n+1)^{self.param}"
        if k is WeightKind.LOG:
            return "log(n+3)"
        if k is WeightKind.GEOMETRIC:
            return f"{self.param}^n"
        if k is WeightKind.FACTORIAL:
            return "(n+1)!"
        if k is WeightKind.SUPERPOWER:
            return "(n+1)^(n+1)"
        return "custom"

    def __call__(self, n: int):
        """``d_n``; exact (int or Fraction) whenever the family allows it."""
        k = self.kind
        if k is WeightKind.POWER:
            r = self.param
            return (n + 1) ** int(r) if r.denominator == 1 else float(n + 1) ** float(r)
        if k is WeightKind.LOG:
            return math.log(n + 3)
        if k is WeightKind.GEOMETRIC:
            return self.param ** n
        if k is WeightKind.FACTORIAL:
            return math.factorial(n + 1)
        if k is WeightKind.SUPERPOWER:
            return (n + 1) ** (n + 1)
        return self.rule(n)

    def log_values(self, n: np.ndarray) -> np.ndarray:
        """``log d_n`` evaluated without overflow."""
        n = np.asarray(n, dtype=float)
        k = self.kind
        if k is WeightKind.POWER:
            return float(self.param) * np.log1p(n)
        if k is WeightKind.LOG:
            return np.log(np.log(n + 3))
        if k is WeightKind.GEOMETRIC:
            return n * math.log(self.param)
        if k is WeightKind.FACTORIAL:
            return gammaln(n + 2)
        if k is WeightKind.SUPERPOWER:
            return (n + 1) * np.log1p(n)
        return np.log(np.array([float(self.rule(int(i))) for i in n]))

    def values(self, n: np.ndarray) -> np.ndarray:
        with np.errstate(over="ignore"):
            return np.exp(self.log_values(n))

    def ratio_sup(self, k: int) -> Optional[float]:
        """Upper bound for ``d_{j+1}/d_j`` over all ``j >= k``; None if unbounded or unknown."""
        if self.kind is WeightKind.POWER:
            return ((k + 2) / (k + 1)) ** float(self.param)
        if self.kind is WeightKind.LOG:
            return math.log(k + 4) / math.log(k + 3)
        if self.kind is WeightKind.GEOMETRIC:
            return float(self.param)
        return None

    def ratio_inf(self, k: int) -> Optional[float]:
        """Lower bound for ``d_{j+1}/d_j`` over all ``j >= k``."""
        if self.kind in (WeightKind.POWER, WeightKind.LOG):
            return 1.0
        if self.kind is WeightKind.GEOMETRIC:
            return float(self.param)
        if self.kind in (WeightKind.FACTORIAL, WeightKind.SUPERPOWER):
            # (j+2)!/(j+1)! = j+2 and (j+2)^(j+2)/(j+1)^(j+1) >= j+2
            return float(k + 2)
        return None

    @property
    def ratio_limit(self) -> Optional[float]:
        if self.kind in (WeightKind.POWER, WeightKind.LOG):
            return 1.0
        if self.kind is WeightKind.GEOMETRIC:
            return float(self.param)
        if self.kind in (WeightKind.FACTORIAL, WeightKind.SUPERPOWER):
            return math.inf
        return None

    @property
    def shift_ratios_decreasing(self) -> Optional[bool]:
        """Whether ``k -> d_{m+k+1}/d_k`` is nonincreasing for every ``m`` (known analytically)."""
        if self.kind in (WeightKind.POWER, WeightKind.LOG, WeightKind.GEOMETRIC):
            return True
        if self.kind in (WeightKind.FACTORIAL, WeightKind.SUPERPOWER):
            return False
        return None

    @property
    def ratios_decrease_to_one(self) -> Optional[bool]:
        """Whether ``d_{k+1}/d_k`` decreases to 1 (known analytically)."""
        if self.kind in (WeightKind.POWER, WeightKind.LOG):
            return True
        if self.kind in (WeightKind.GEOMETRIC, WeightKind.FACTORIAL, WeightKind.SUPERPOWER):
            return False
        return None


class Family(str, Enum):
    LP = "lp"
    C0 = "c0"
    C = "c"
    CS = "cs"
    CESP = "cesp"
    CES0 = "ces0"
    DP = "dp"
    BV = "bv"
    BV0 = "bv0"
    BVLIM = "bvlim"  # bv normed by |lim x| + sum_k |x_k - x_{k+1}|
    BVP = "bvp"
    HAHN = "hahn"


# families whose members must tend to zero
_NULL_FAMILIES = {Family.C0, Family.CS, Family.CES0, Family.DP, Family.BV0, Family.HAHN}


@dataclass(frozen=True)
class Space:
    family: Family
    p: Optional[float] = None
    weight: Optional[Weight] = None

    def __post_init__(self):
        f, p = self.family, self.p
        if f is Family.LP and not (p is not None and p >= 1):
            raise ValueError("l^p needs p >= 1")
        if f is Family.CESP and not (p is not None and p > 1):
            raise ValueError("ces_p needs p in (1, inf]")
        if f is Family.DP and not (p is not None and 1 <= p < math.inf):
            raise ValueError("d_p needs p in [1, inf)")
        if f is Family.BVP and not (p is not None and 1 < p < math.inf):
            raise ValueError("bv_p needs p in (1, inf)")
        if f is Family.HAHN and self.weight is None:
            raise ValueError("Hahn space needs a weight")

    # constructors
    @classmethod
    def lp(cls, p) -> "Space":
        return cls(Family.LP, float(p))

    @classmethod
    def c0(cls) -> "Space":
        return cls(Family.C0)

    @classmethod
    def c(cls) -> "Space":
        return cls(Family.C)

    @classmethod
    def cs(cls) -> "Space":
        return cls(Family.CS)

    @classmethod
    def ces(cls, p) -> "Space":
        return cls(Family.CESP, float(p))

    @classmethod
    def ces0(cls) -> "Space":
        return cls(Family.CES0)

    @classmethod
    def dp(cls, p) -> "Space":
        return cls(Family.DP, float(p))

    @classmethod
    def bv(cls) -> "Space":
        return cls(Family.BV)

    @classmethod
    def bv0(cls) -> "Space":
        return cls(Family.BV0)

    @classmethod
    def bvlim(cls) -> "Space":
        return cls(Family.BVLIM)

    @classmethod
    def bvp(cls, p) -> "Space":
        return cls(Family.BVP, float(p))

    @classmethod
    def hahn(cls, weight: Weight) -> "Space":
        return cls(Family.HAHN, None, weight)

    @property
    def name(self) -> str:
        f = self.family
        if f is Family.LP:
            return "linf" if math.isinf(self.p) else f"l{_fmt_p(self.p)}"
        if f is Family.CESP:
            return "cesinf" if math.isinf(self.p) else f"ces{_fmt_p(self.p)}"
        if f is Family.DP:
            return f"d{_fmt_p(self.p)}"
        if f is Family.BVP:
            return f"bv{_fmt_p(self.p)}"
        if f is Family.HAHN:
            return f"h[{self.weight.label}]"
        return f.value

    def __str__(self):
        return self.name

    @property
    def requires_null(self) -> bool:
        if self.family is Family.LP or self.family is Family.CESP:
            return not math.isinf(self.p)
        return self.family in _NULL_FAMILIES


def _fmt_p(p: float) -> str:
    return str(int(p)) if float(p).is_integer() else repr(float(p))


def parse_weight(text: str) -> Weight:
    parts = text.split(":")
    kind = parts[0].lower()
    if kind in ("", "n+1"):
        return Weight.power(1)
    if kind == "power":
        return Weight.power(Fraction(parts[1]) if len(parts) > 1 else 1)
    if kind == "log":
        return Weight.log()
    if kind == "geometric":
        return Weight.geometric(Fraction(parts[1]) if len(parts) > 1 else 2)
    if kind == "factorial":
        return Weight.factorial()
    if kind == "superpower":
        return Weight.superpower()
    raise ValueError(f"unknown weight {text!r}")


def parse_space(text: str) -> Space:
    """Parse names such as ``l1``, ``l2``, ``linf``, ``lp:3``, ``c0``, ``c``, ``cs``,
    ``ces2``, ``cesinf``, ``ces0``, ``d1``, ``bv``, ``bv0``, ``bvlim``, ``bv2``, ``h``,
    ``h:log``, ``h:power:2``, ``h:geometric:2``, ``h:factorial``, ``h:superpower``."""
    s = text.strip().lower()
    if s in ("c0", "c", "cs", "bv", "bv0", "bvlim", "ces0"):
        return {"c0": Space.c0, "c": Space.c, "cs": Space.cs, "bv": Space.bv, "bv0": Space.bv0,
                "bvlim": Space.bvlim, "ces0": Space.ces0}[s]()
    if s == "h" or s.startswith("h:"):
        return Space.hahn(parse_weight(s[2:] if s.startswith("h:") else ""))
    for prefix, make in (("ces", Space.ces), ("bv", Space.bvp), ("lp:", Space.lp), ("l", Space.lp),
                         ("dp:", Space.dp), ("d", Space.dp)):
        if s.startswith(prefix):
            rest = s[len(prefix):].lstrip(":")
            p = math.inf if rest in ("inf", "infty") else float(Fraction(rest))
            return make(p)
    raise ValueError(f"unknown space {text!r}")


# -- norms -------------------------------------------------------------------


def _as_seq(x) -> SeqGenerator:
    if isinstance(x, SeqGenerator):
        return x
    if isinstance(x, np.ndarray):
        return finite_sequence(x)
    return finite_sequence(list(x))


def _zero(mode: Mode):
    return Fraction(0) if mode is Mode.EXACT else 0.0


def _root(value, p: float, mode: Mode, up: bool):
    if p == 1:
        return value
    if math.isinf(float(value)):
        return math.inf
    r = float(value) ** (1.0 / p)
    return math.nextafter(r, math.inf if up else -math.inf) if value else 0.0


def _finish(lo, hi, mode: Mode, n_ops: int, scale) -> Enclosure:
    if mode is Mode.FLOAT and not math.isinf(hi):
        lo, hi = round_out(lo, hi, n_ops, float(scale))
        lo = max(lo, 0.0)
    elif mode is Mode.FLOAT:
        lo, _ = round_out(lo, lo, n_ops, float(scale))
        lo = max(lo, 0.0)
    return Enclosure(lo, hi)


def _pnorm_enclosure(lo_pow, hi_pow, p, mode, n_ops, scale) -> Enclosure:
    if p == 1:
        return _finish(lo_pow, hi_pow, mode, n_ops, scale)
    if mode is Mode.FLOAT and not math.isinf(hi_pow):
        lo_pow, hi_pow = round_out(lo_pow, hi_pow, n_ops, float(scale))
    lo = _root(max(lo_pow, 0), p, mode, up=False)
    hi = _root(hi_pow, p, mode, up=True)
    return Enclosure(max(lo, 0.0), hi)


def norm(space: Space, x, N: int = 4096, mode: Mode = Mode.FLOAT) -> Enclosure:
    """Certified enclosure of ``||x||`` in ``space`` from the first ``N`` coordinates."""
    seq = _as_seq(x)
    length = seq.finite_length()
    if length is not None:
        N = max(N, length)
    vals = seq.prefix(N, mode)
    absv = [abs(v) for v in vals] if mode is Mode.EXACT else np.abs(vals)
    tail = seq.tail
    T = tail.abs_tail(vals) if tail is not None else None
    s = tail.sup_tail(vals) if tail is not None else None
    fam, p = space.family, space.p
    zero = _zero(mode)
    inf = math.inf

    if fam in (Family.C0, Family.C) or (fam is Family.LP and math.isinf(p)):
        lo = max(absv) if N else zero
        hi = max(lo, s) if s is not None else inf
        return Enclosure(lo, hi)

    if fam is Family.LP:
        pw = [a ** int(p) for a in absv] if mode is Mode.EXACT and float(p).is_integer() else np.asarray(absv, float) ** p
        S = sum(pw, zero) if mode is Mode.EXACT else math.fsum(pw)
        hi = inf
        if T is not None:
            tail_p = (s ** (p - 1)) * T if p != 1 else T
            if isinstance(tail, TailCertificate):
                r = tail.ratio_bound
                tail_p = min(tail_p, absv[-1] ** p * r ** p / (1 - r ** p)) if p != 1 else tail_p
            hi = S + tail_p
        return _pnorm_enclosure(S, hi, p, mode, N, S)

    if fam is Family.CS:
        partial = np.cumsum(vals) if mode is Mode.FLOAT else _cumsum(vals)
        lo = max(abs(v) for v in partial)
        if isinstance(tail, AlternatingTail) and N - 1 >= tail.start_index:
            nxt = partial[-1] + coerce_mode(seq(N), mode)
            lo = max(lo, abs(nxt))
            return _finish(lo, lo, mode, N, lo)
        if isinstance(tail, ConstantTail) and tail.value != 0:
            return _finish(lo, inf, mode, N, lo)
        hi = max(lo, abs(partial[-1]) + T) if T is not None else inf
        return _finish(lo, hi, mode, N, lo)

    if fam in (Family.CESP, Family.CES0):
        P = sum(absv, zero) if mode is Mode.EXACT else math.fsum(absv)
        csum = _cumsum(absv) if mode is Mode.EXACT else np.cumsum(absv)
        means = [csum[n] / (n + 1) for n in range(N)] if mode is Mode.EXACT else csum / np.arange(1, N + 1)
        if fam is Family.CES0 or math.isinf(p):
            lo = max(means)
            if isinstance(tail, ConstantTail) and N > tail.start_index:
                return _finish(max(lo, abs(tail.value)), max(lo, abs(tail.value)), mode, N, P)
            hi = max(lo, (P + T) / (N + 1)) if T is not None else inf
            return _finish(lo, hi, mode, N, P)
        pf = float(p)
        S = math.fsum(np.asarray(means, float) ** pf)
        tail_lo = float(P) ** pf * (N + 1) ** (1 - pf) / (pf - 1)
        hi = inf
        if T is not None:
            tail_hi = float(P + T) ** pf * ((N + 1) ** -pf + (N + 1) ** (1 - pf) / (pf - 1))
            hi = S + tail_hi
        return _pnorm_enclosure(S + tail_lo, hi, pf, Mode.FLOAT, 2 * N, S + tail_lo)

    if fam is Family.DP:
        env = np.maximum.accumulate(np.asarray(absv, float)[::-1])[::-1]
        pf = float(p)
        exact_p1 = mode is Mode.EXACT and pf == 1
        if exact_p1:
            env_exact, run = [], zero
            for a in reversed(absv):
                run = max(run, a)
                env_exact.append(run)
            S = sum(env_exact, zero)
        else:
            S = math.fsum(env ** pf)
        hi = inf
        if isinstance(tail, FiniteSupport) and tail.length <= N:
            hi = S
        elif isinstance(tail, TailCertificate) and N - 1 >= tail.start_index:
            r = tail.ratio_bound
            last = absv[-1]
            if exact_p1:
                capped = [max(e, r * last) for e in env_exact]
                hi = sum(capped, zero) + last * r / (1 - r)
            else:
                cap = float(r) * float(last)
                hi = math.fsum(np.maximum(env, cap) ** pf) + float(last) ** pf * float(r) ** pf / (1 - float(r) ** pf)
        if exact_p1:
            return Enclosure(S, hi)
        return _pnorm_enclosure(S, hi, pf, Mode.FLOAT, N, S)

    if fam in (Family.BV, Family.BV0, Family.BVLIM, Family.BVP, Family.HAHN):
        diffs = _diffs(vals, mode)  # k = 0..N-2
        last = absv[-1] if N else zero
        closing = None  # exact value of the remaining differences, if known
        limit = None
        if isinstance(tail, FiniteSupport) and tail.length <= N:
            closing = [last]  # |x_N - x_{N-1}| with x_N = 0
            limit = zero
        elif isinstance(tail, MonotoneTail) and N - 1 >= tail.start_index:
            limit = zero
            if fam is not Family.HAHN:
                closing = [last]  # monotone run down to the limit 0
        elif isinstance(tail, ConstantTail) and N > tail.start_index:
            closing = []
            limit = abs(tail.value)
        elif seq.limit is not None:
            limit = abs(seq.limit)
        if fam is Family.HAHN:
            return _hahn_norm(space.weight, diffs, absv, closing, tail, T, mode, N)
        pf = 1.0 if fam in (Family.BV, Family.BV0, Family.BVLIM) else float(p)
        head = absv[0] if N else zero
        if fam is Family.BVLIM:
            if limit is None:
                return _finish(sum(diffs, zero) if mode is Mode.EXACT else math.fsum(diffs), inf, mode, N, 1)
            head = limit
        if pf == 1:
            S = head + (sum(diffs, zero) if mode is Mode.EXACT else math.fsum(diffs))
            if closing is not None:
                S = S + sum(closing, zero)
                return _finish(S, S, mode, N, S)
            hi = S + last + 2 * T if T is not None else inf
            return _finish(S, hi, mode, N, S)
        ip = int(pf) if pf.is_integer() else None
        if mode is Mode.EXACT and ip is not None:
            S = head ** ip + sum((d ** ip for d in diffs), zero)
            if closing is not None:
                S = S + sum((c ** ip for c in closing), zero)
        else:
            S = float(head) ** pf + math.fsum(np.asarray(diffs, float) ** pf)
            if closing is not None:
                S += math.fsum(float(c) ** pf for c in closing)
        if closing is not None:
            hi = S
        else:
            hi = S + (last + 2 * T) ** pf if T is not None else inf
        return _pnorm_enclosure(S, hi, pf, mode, N, S)

    raise ValueError(f"unsupported space {space}")


def coerce_mode(value, mode: Mode):
    return float(value) if mode is Mode.FLOAT else Fraction(value) if isinstance(value, int) else value


def _cumsum(vals):
    out, run = [], 0
    for v in vals:
        run = run + v
        out.append(run)
    return out


def _diffs(vals, mode: Mode):
    if mode is Mode.FLOAT:
        return np.abs(np.diff(np.asarray(vals)))
    return [abs(vals[k + 1] - vals[k]) for k in range(len(vals) - 1)]


def _hahn_norm(weight: Weight, diffs, absv, closing, tail, T, mode: Mode, N: int) -> Enclosure:
    if mode is Mode.EXACT:
        d = [weight(k) for k in range(N)]
        S = sum((d[k] * diffs[k] for k in range(N - 1)), Fraction(0))
        if closing is not None:
            S = S + (d[N - 1] * closing[0] if closing else 0)
            return Enclosure(S, S)
    else:
        d = weight.values(np.arange(N))
        S = math.fsum(d[:-1] * diffs) if N > 1 else 0.0
        if closing is not None:
            S += float(d[N - 1]) * float(closing[0]) if closing else 0.0
            return _finish(S, S, mode, N, S)
    hi = math.inf
    if isinstance(tail, TailCertificate) and N - 1 >= tail.start_index:
        r = float(tail.ratio_bound)
        rho = weight.ratio_sup(N - 1)
        if rho is not None and r * rho < 1:
            # sum_{k>=N-1} d_k |x_{k+1}-x_k| <= (1+r) sum_{k>=N-1} d_k |x_k|
            hi = float(S) + (1 + r) * float(d[N - 1]) * float(absv[-1]) / (1 - r * rho)
    if math.isinf(hi):
        return Enclosure(S if mode is Mode.EXACT else float(S), hi)
    return _finish(float(S), hi, Mode.FLOAT, N, S)


# -- membership ----------------------------------------------------------------


def membership(space: Space, x, N: int = 4096) -> Verdict:
    """Decide ``x in space`` with a certificate, or report Inconclusive."""
    seq = _as_seq(x)
    if space.requires_null and seq.limit is not None and seq.limit != 0:
        return Verdict(Status.NO, {"limit": seq.limit}, "coordinates do not tend to zero")
    divergent_l1 = space.family is Family.LP and space.p == 1 or space.family is Family.DP and space.p == 1
    if divergent_l1 and seq.minorant is not None and seq.minorant.unbounded:
        bound = divergence_lower_bound(seq, N)
        return Verdict(Status.NO, {"partial_lower": bound.lower},
                       "absolute values dominate a function with divergent integral")
    enc = norm(space, seq, N)
    if enc.estimate_only:
        return Verdict(Status.INCONCLUSIVE, {"partial": enc.lower}, "no certificate for the tail")
    tail = seq.tail
    if space.family is Family.C and not isinstance(
        tail, (TailCertificate, FiniteSupport, ConstantTail, AlternatingTail, MonotoneTail)
    ):
        return Verdict(Status.INCONCLUSIVE, {"norm": enc}, "no convergence certificate")
    return Verdict(Status.YES, {"norm": enc}, "finite certified norm")


# -- isometries ----------------------------------------------------------------


class IsometryKind(str, Enum):
    PARTIAL_SUM = "PartialSum"
    DIFFERENCE = "DifferenceTp"
    HAHN_W = "HahnW"
    IDENTITY = "Identity"


@dataclass(frozen=True)
class Isometry:
    """Linear isometry from a space onto a simpler target space.

    Vectors are finite sections; coordinates past the end are taken to be zero
    when an operation needs them.  Lists are treated exactly, arrays in float.
    """

    kind: IsometryKind
    source: Space
    target: Space

    def forward(self, x):
        k = self.kind
        if k is IsometryKind.IDENTITY:
            return x
        if k is IsometryKind.PARTIAL_SUM:
            return np.cumsum(x) if isinstance(x, np.ndarray) else _cumsum(x)
        if k is IsometryKind.DIFFERENCE:
            if isinstance(x, np.ndarray):
                return np.diff(x, prepend=0)
            return [x[0]] + [x[n] - x[n - 1] for n in range(1, len(x))]
        w = self.source.weight
        if isinstance(x, np.ndarray):
            diff = np.diff(np.append(x, 0))
            # d_n may overflow where the differences are tiny; multiply in log space
            with np.errstate(divide="ignore", over="ignore"):
                mag = np.exp(w.log_values(np.arange(len(x))) + np.log(np.abs(diff)))
            return np.where(diff == 0, 0, np.sign(diff) * mag)
        xx = list(x) + [0]
        return [w(n) * (xx[n + 1] - xx[n]) for n in range(len(x))]

    def inverse(self, y):
        k = self.kind
        if k is IsometryKind.IDENTITY:
            return y
        if k is IsometryKind.PARTIAL_SUM:
            if isinstance(y, np.ndarray):
                return np.diff(y, prepend=0)
            return [y[0]] + [y[n] - y[n - 1] for n in range(1, len(y))]
        if k is IsometryKind.DIFFERENCE:
            return np.cumsum(y) if isinstance(y, np.ndarray) else _cumsum(y)
        w = self.source.weight
        if isinstance(y, np.ndarray):
            scaled = y * np.exp(-w.log_values(np.arange(len(y))))
            return -np.cumsum(scaled[::-1])[::-1]
        out, run = [0] * len(y), 0
        for n in range(len(y) - 1, -1, -1):
            run = run + Fraction(y[n]) / w(n)
            out[n] = -run
        return out


def conjugation(space: Space) -> Isometry:
    """Isometry carrying ``space`` onto ``c``, ``l^p`` or ``l^1`` (or itself)."""
    f = space.family
    if f is Family.CS:
        return Isometry(IsometryKind.PARTIAL_SUM, space, Space.c())
    if f in (Family.BV, Family.BV0):
        return Isometry(IsometryKind.DIFFERENCE, space, Space.lp(1))
    if f is Family.BVP:
        return Isometry(IsometryKind.DIFFERENCE, space, Space.lp(space.p))
    if f is Family.HAHN:
        return Isometry(IsometryKind.HAHN_W, space, Space.lp(1))
    return Isometry(IsometryKind.IDENTITY, space, space)
