"""Existence and boundedness of ``C_t`` on Hahn spaces ``h_d``.

``h_d`` holds null sequences with ``sum_k d_k |x_{k+1} - x_k| < inf``.  The map
``W x = (d_k (x_{k+1} - x_k))`` is an isometry onto ``l^1``, so ``C_t`` exists
on ``h_d`` exactly when the column sums

    E_m = (1/d_m) sum_n d_n |sum_{k<=m} (a_{n,k} - a_{n+1,k})|

of ``W C_t W^{-1}`` stay bounded in ``m``.  With row sums ``rho_n`` the inner
sum is ``rho_n - rho_{n+1}`` for ``n < m`` and, for ``n >= m``,

    (1 - t^{m+1})/(1 - t) * t^{n-m} * (1/(n+1) - t/(n+2))

which reduces to ``(m+1)/((n+1)(n+2))`` at ``t = 1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .numeric import (
    Enclosure,
    SeqGenerator,
    Status,
    TailCertificate,
    Verdict,
    divergence_lower_bound,
    harmonic_minorant,
    sum_with_tail,
)
from .operators import check_t, conjugated_operator
from .spaces import Space, Weight, WeightKind

DEFAULT_M = 64
DEFAULT_N = 2 ** 16
REL_SLACK = 1e-12  # covers log/exp rounding in the coordinate sums
SCAN_K = 10_000


@dataclass(frozen=True)
class ExistenceReport:
    verdict: Verdict
    coordinates: list = field(default_factory=list)  # Enclosures of E_0..E_M
    uniform_bound: Optional[float] = None  # bound on sup_{m > M} E_m
    sup_bound: Optional[float] = None


def _row_sums(t: float, n: np.ndarray) -> np.ndarray:
    if t == 1:
        return np.ones(n.shape)
    return (1 - t ** (n + 1)) / ((1 - t) * (n + 1))


def _tail_t1(weight: Weight, N: int) -> Optional[float]:
    """Bound on ``sum_{n>=N} d_n / ((n+1)(n+2))``."""
    if weight.kind is WeightKind.LOG:
        return (1 + math.log(N)) / N + 1 / N ** 2
    if weight.kind is WeightKind.POWER and weight.param < 1:
        r = float(weight.param)
        return N ** (r - 1) / (1 - r)
    return None


def coordinate(weight: Weight, t, m: int, N: int = DEFAULT_N) -> Enclosure:
    """Enclosure of ``E_m`` from ``n < N`` plus a family tail bound for ``n >= N``."""
    t = float(check_t(t))
    log_dm = float(weight.log_values(np.array([m]))[0])
    head = 0.0
    if m > 0 and t < 1:
        k = np.arange(m + 1)
        rho = _row_sums(t, k)
        logd = weight.log_values(np.arange(m))
        head = math.fsum(np.exp(logd - log_dm) * np.abs(rho[:-1] - rho[1:]))
    n = np.arange(m, max(N, m + 1), dtype=float)
    if t == 1:
        logs = weight.log_values(n) - log_dm + math.log(m + 1) - np.log(n + 1) - np.log(n + 2)
    elif t == 0:
        logs = np.array([-math.log(m + 1)])
    else:
        c = math.log((1 - t ** (m + 1)) / (1 - t))
        logs = (weight.log_values(n) - log_dm + c + (n - m) * math.log(t)
                + np.log(1 / (n + 1) - t / (n + 2)))
    body = math.fsum(np.exp(logs))
    total = head + body
    if t == 0 or N <= m:
        tail = 0.0 if t == 0 else math.inf
    elif t == 1:
        s = _tail_t1(weight, N)
        tail = math.inf if s is None else (m + 1) * s * math.exp(-log_dm)
    else:
        rho = weight.ratio_sup(N)
        if rho is None or t * rho >= 1:
            tail = math.inf
        else:
            # terms bounded by u_n = (1-t)^{-1} (d_n/d_m) t^{n-m}/(n+1), ratio <= t rho
            log_u = float(weight.log_values(np.array([N]))[0]) - log_dm + (N - m) * math.log(t) - math.log(N + 1)
            tail = math.exp(log_u) / ((1 - t) * (1 - t * rho))
    lo = total * (1 - REL_SLACK)
    hi = (total + tail) * (1 + REL_SLACK) if not math.isinf(tail) else math.inf
    return Enclosure(lo, hi)


def uniform_bound(weight: Weight, t, M: int) -> Optional[float]:
    """Bound on ``E_m`` valid for every ``m > M``, or None when unavailable."""
    t = float(check_t(t))
    if t < 1:
        rho = 0.0 if t == 0 else weight.ratio_sup(M + 1)
        if rho is None or t * rho >= 1:
            return None
        # head part <= rho_0 - rho_m <= 1; tail part <= 1/((1-t)(m+1)(1 - t rho))
        return 1 + 1 / ((1 - t) * (M + 2) * (1 - t * rho))
    if weight.kind is WeightKind.LOG:
        L = math.log(M + 4)
        return 1 / (M + 3) + 1 + 1 / L + 1 / ((M + 2) * L)
    if weight.kind is WeightKind.POWER and weight.param < 1:
        return 1 / (M + 2) + 1 / (1 - float(weight.param))
    return None


def nonexistence_test(weight: Weight, t) -> Verdict:
    """Look for a certificate that ``C_t`` does not act on ``h_d``; never answers Yes.

    Two certificates are tried: ``gamma_n = d_n t^n / ((n+1)(n+2))`` eventually
    nondecreasing (so not null), and ``C_t e_0`` having weighted differences
    bounded below by a harmonic series.
    """
    t = Fraction(check_t(t))
    tf = float(t)
    if t == 0:
        return Verdict(Status.INCONCLUSIVE, {}, "C_0 is diagonal")
    for k0 in range(0, 4096):
        ri = weight.ratio_inf(k0)
        if ri is None:
            break
        if tf * ri * (k0 + 1) / (k0 + 3) >= 1:
            log_gamma = (float(weight.log_values(np.array([k0]))[0]) + k0 * math.log(tf)
                         - math.log((k0 + 1) * (k0 + 2)))
            return Verdict(Status.NO, {"from_index": k0, "gamma_lower": math.exp(log_gamma),
                                       "ratio_lower": tf * ri * (k0 + 1) / (k0 + 3)},
                           "gamma_n is eventually nondecreasing, so not a null sequence")
    ri = weight.ratio_inf(0)
    if ri is not None and tf * ri >= 1 and tf < 1:
        # d_k t^k is nondecreasing, so the weighted differences of C_t e_0 exceed (1-t) d_0/(k+2)
        return _harmonic_no(weight, tf, 0, (1 - tf) * float(weight(0)))
    if tf == 1 and weight.kind is WeightKind.POWER and weight.param >= 1:
        # d_k >= k+1, so d_k/((k+1)(k+2)) >= 1/(k+2)
        return _harmonic_no(weight, tf, 0, 1.0)
    return Verdict(Status.INCONCLUSIVE, {}, "no nonexistence certificate found")


def _harmonic_no(weight: Weight, t: float, k0: int, scale: float) -> Verdict:
    """``C_t e_0`` has weighted differences >= scale/(k+2) from ``k0`` on."""

    def beta_vec(k):
        k = np.asarray(k, dtype=float)
        with np.errstate(divide="ignore"):
            logs = weight.log_values(k) + k * math.log(t) + np.log(1 / (k + 1) - t / (k + 2))
        return np.exp(logs)

    seq = SeqGenerator(lambda k: float(beta_vec(np.array([k]))[0]), minorant=harmonic_minorant(2, scale, k0),
                       name="beta", vectorized=beta_vec)
    bound = divergence_lower_bound(seq, 4096)
    return Verdict(Status.NO, {"from_index": k0, "harmonic_scale": scale, "partial_lower": bound.lower},
                   "C_t e_0 has divergent weighted variation")


def existence_test(weight: Weight, t, M: int = DEFAULT_M, N: int = DEFAULT_N) -> ExistenceReport:
    """Decide whether ``C_t`` acts boundedly on ``h_d``."""
    t = check_t(t)
    no = nonexistence_test(weight, t)
    if no.no:
        return ExistenceReport(no)
    coords = [coordinate(weight, t, m, N) for m in range(M + 1)]
    ub = uniform_bound(weight, t, M)
    finite = all(not c.estimate_only for c in coords)
    if finite and ub is not None:
        sup = max(max(float(c.upper) for c in coords), ub)
        v = Verdict(Status.YES, {"sup_upper": sup, "uniform_bound": ub, "M": M, "N": N},
                    "column sums of the conjugated operator are bounded")
        return ExistenceReport(v, coords, ub, sup)
    v = Verdict(Status.INCONCLUSIVE, {"M": M, "N": N}, "no certified bound for all columns")
    return ExistenceReport(v, coords, ub, None)


@dataclass(frozen=True)
class ShiftBound:
    value: float
    closed_form: bool


def shift_norm_bound(weight: Weight, m: int, K: int = 1000) -> ShiftBound:
    """Bound ``d_m + sup_k d_{m+k+1}/d_k`` for ``||S^{m+1}||`` on ``h_d``.

    With nonincreasing shift ratios the supremum sits at ``k = 0``; otherwise
    only the scanned range ``k <= K`` is covered.
    """
    if weight.shift_ratios_decreasing:
        d0, dm, dm1 = weight(0), weight(m), weight(m + 1)
        return ShiftBound(float(dm) + float(Fraction(dm1) / d0 if isinstance(dm1, (int, Fraction)) else dm1 / d0),
                          True)
    k = np.arange(K + 1)
    logs = weight.log_values(m + k + 1) - weight.log_values(k)
    with np.errstate(over="ignore"):
        return ShiftBound(float(weight(m)) + float(np.exp(logs.max())), False)


def rt_convergence_check(weight: Weight, t, M: int = DEFAULT_M) -> Verdict:
    """Decide whether ``sum_m t^m S^m`` converges in operator norm on ``h_d``."""
    t = float(check_t(t))
    if t == 0:
        return Verdict(Status.YES, {"terms": 1}, "only the identity term")
    if t == 1:
        return Verdict(Status.NO, {}, "R_1 e_0 = (1, 1, ...) is not a null sequence")
    d0 = float(weight(0))
    for m0 in range(1, M + 1):
        rho = weight.ratio_sup(m0)
        if rho is not None and t * rho < 1 and weight.shift_ratios_decreasing:
            # t^m ||S^m|| <= t^m (d_{m-1} + d_m/d_0) <= (1 + 1/d_0) t^m d_m
            major = SeqGenerator(lambda m: (1 + 1 / d0) * math.exp(
                float(weight.log_values(np.array([m]))[0]) + m * math.log(t)))
            enc = sum_with_tail(major, TailCertificate(m0, t * rho), max(m0, 2048))
            return Verdict(Status.YES, {"ratio_bound": t * rho, "from_index": m0, "sum_upper": float(enc.upper)},
                           "majorant of the shift-norm series has a geometric tail")
        ri = weight.ratio_inf(m0)
        if ri is not None and t * ri >= 1:
            return Verdict(Status.NO, {"ratio_lower": t * ri, "from_index": m0},
                           "||R_t e_0|| = (1-t) sum d_k t^k diverges")
    return Verdict(Status.INCONCLUSIVE, {"M": M}, "ratio bounds undecided up to M")


def ratio_conditions_check(weight: Weight, K: int = SCAN_K) -> Verdict:
    """Check that shift ratios are nonincreasing and ``d_{k+1}/d_k`` decreases to 1."""
    dec, to_one = weight.shift_ratios_decreasing, weight.ratios_decrease_to_one
    if dec and to_one:
        return Verdict(Status.YES, {"family": weight.kind.value}, "proved for the family")
    if dec is False or to_one is False:
        lim = weight.ratio_limit
        return Verdict(Status.NO, {"family": weight.kind.value, "ratio_limit": lim},
                       "ratio limit differs from 1" if lim != 1 else "shift ratios increase")
    logs = weight.log_values(np.arange(K + 2))
    ratios = np.diff(logs)
    bad = np.nonzero(np.diff(ratios) > 1e-15)[0]
    if bad.size:
        return Verdict(Status.NO, {"violation_at": int(bad[0]) + 1}, "d_{k+1}/d_k increases")
    return Verdict(Status.INCONCLUSIVE, {"scanned": K, "scan": "ScanPassed"}, "ScanPassed on a finite range")


def hahn_w_column_sums(weight: Weight, t, M: int, N: int) -> np.ndarray:
    """Absolute column sums ``m = 0..M`` of the section of ``W C_t W^{-1}`` (matrix-free)."""
    op = conjugated_operator(Space.hahn(weight), t, N)
    return np.array([math.fsum(np.abs(op.column(m))) for m in range(M + 1)])
