"""Eigenvectors of ``C_t``, dual eigenvectors of its transpose, and their membership.

For ``0 <= t <= 1`` and ``m >= 0`` the vector ``x_t^[m]`` vanishes before
index ``m``, equals 1 at ``m`` and has ``(x)_{m+n} = binom(m+n, n) t^n``;
it satisfies ``C_t x = x / (m+1)``.  The dual vector
``z_t^[n] = sum_i (-1)^i binom(n, i) t^i e_{n-i}`` satisfies
``C_t^T z = z / (n+1)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .numeric import (
    FiniteSupport,
    Mode,
    SeqGenerator,
    Status,
    TailCertificate,
    Verdict,
    constant_sequence,
    finite_sequence,
    sum_with_tail,
)
from .operators import apply_cesaro, cesaro_matrix, check_t
from .spaces import Family, Space, Weight, membership

# membership of C_1^T dual eigenvectors in l^1 is decided away from Re(1/lam) = 1
DUAL_YES_ABOVE = 1.05
DUAL_NO_BELOW = 0.95


def eigenvector(t, m: int, N: int, mode: Mode = Mode.EXACT):
    """First ``N`` coordinates of ``x_t^[m]`` from the ratio recurrence
    ``x_{m+n+1} = x_{m+n} * t (m+n+1) / (n+1)``."""
    t = check_t(t)
    if mode is Mode.FLOAT:
        x = np.zeros(N)
        if m < N:
            k = np.arange(N - m - 1)
            ratios = float(t) * (m + k + 1) / (k + 1)
            x[m] = 1.0
            x[m + 1:] = np.cumprod(ratios)
        return x
    t = Fraction(t)
    x = [Fraction(0)] * N
    if m < N:
        x[m] = Fraction(1)
        for n in range(N - m - 1):
            x[m + n + 1] = x[m + n] * t * (m + n + 1) / (n + 1)
    return x


def eigenvector_closed_form(t, m: int, N: int) -> list:
    """Same vector from the product formula ``binom(m+n, n) t^n``."""
    t = Fraction(check_t(t))
    return [Fraction(0)] * min(m, N) + [math.comb(m + n, n) * t ** n for n in range(max(N - m, 0))]


def eigenvector_sequence(t, m: int) -> SeqGenerator:
    """``x_t^[m]`` as a lazy sequence with a certified geometric tail for ``t < 1``."""
    t = Fraction(check_t(t))

    def rule(k: int):
        return 0 if k < m else math.comb(k, m) * t ** (k - m)

    tail = None
    if t == 0:
        tail = FiniteSupport(m + 1)
    elif t < 1:
        r = (1 + t) / 2
        # ratio t (m+n+1)/(n+1) decreases in n; find where it drops below r
        n0 = 0
        while t * (m + n0 + 1) / (n0 + 1) > r:
            n0 += 1
        tail = TailCertificate(m + n0, r)
    vec = None
    if t < 1:
        tf = float(t)

        def vec(k):
            k = np.asarray(k)
            out = np.zeros(k.shape)
            j = k >= m
            from scipy.special import gammaln
            kk = k[j].astype(float)
            logc = gammaln(kk + 1) - gammaln(m + 1) - gammaln(kk - m + 1)
            out[j] = np.exp(logc + (kk - m) * math.log(tf)) if tf > 0 else (kk == m).astype(float)
            return out

    return SeqGenerator(rule, tail=tail, limit=0 if t < 1 else None,
                        name=f"x_{t}^[{m}]", vectorized=vec)


def verify_eigenpair(t, m: int, N: int) -> Verdict:
    """Exact check of ``C_t x_t^[m] = x_t^[m] / (m+1)`` on ``N`` coordinates."""
    x = eigenvector(t, m, N)
    lhs = apply_cesaro(t, x)
    bad = [n for n in range(N) if lhs[n] != x[n] / (m + 1)]
    return Verdict(Status.YES if not bad else Status.NO,
                   {"t": Fraction(t), "m": m, "N": N, "mismatches": len(bad)})


def dual_eigenvector(t, n: int, N: int) -> list:
    """``z_t^[n]`` on ``N`` coordinates (requires ``n < N``)."""
    t = Fraction(check_t(t))
    z = [Fraction(0)] * N
    for i in range(n + 1):
        z[n - i] = (-1) ** i * math.comb(n, i) * t ** i
    return z


def verify_dual_eigenpair(t, n: int, N: int) -> Verdict:
    """Exact check of ``A^T z = z / (n+1)`` with the dense section ``A``."""
    z = dual_eigenvector(t, n, N)
    A = cesaro_matrix(t, N)
    # z is supported on [0, n], so only the first n+1 rows of A contribute
    lhs = [sum((A[i, k] * z[i] for i in range(n + 1)), Fraction(0)) for k in range(N)]
    bad = [k for k in range(N) if lhs[k] != z[k] / (n + 1)]
    return Verdict(Status.YES if not bad else Status.NO,
                   {"t": Fraction(t), "n": n, "N": N, "mismatches": len(bad)})


def biorthogonality(t, m: int, n: int) -> Fraction:
    """Pairing ``<x_t^[m], z_t^[n]> = sum_i (-1)^i binom(n, i) t^i (x_t^[m])_{n-i}``."""
    t = Fraction(check_t(t))
    x = eigenvector(t, m, n + 1)
    return sum(((-1) ** i * math.comb(n, i) * t ** i * x[n - i] for i in range(n + 1)), Fraction(0))


@dataclass(frozen=True)
class DualEigenvector:
    lam: complex
    coords: object  # ndarray, or a list of fractions in exact mode
    decay_exponent: float
    verdict: Verdict


def c1_dual_eigenvector(lam, N: int, mode: Mode = Mode.FLOAT) -> DualEigenvector:
    """Solve ``C_1^T z = lam z`` with ``z_0 = 1`` and decide ``z in l^1``.

    The recurrence is ``z_{n+1} = z_n (1 - 1/(lam (n+1)))`` so that
    ``|z_n|`` behaves like ``n^{-Re(1/lam)}``.  Summability is certified by a
    Raabe-type bound ``|z_{n+1}/z_n| <= 1 - s/(n+1)`` with ``s > 1``; divergence
    by ``|z_{n+1}/z_n| >= 1 - a/(n+1)`` with ``a <= 1``.  In exact mode ``lam``
    must be rational and ``coords`` is a list of fractions.
    """
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    support = None
    if mode is Mode.EXACT:
        w = 1 / Fraction(lam)
        coords = [Fraction(1)]
        for n in range(N - 1):
            coords.append(coords[-1] * (1 - w / (n + 1)))
            if coords[-1] == 0 and support is None:
                support = n + 1
        lam, w = complex(lam), complex(w)
    else:
        lam = complex(lam)
        w = 1 / lam
        z = np.zeros(N, dtype=complex)
        z[0] = 1
        for n in range(N - 1):
            z[n + 1] = z[n] * (1 - w / (n + 1))
            if z[n + 1] == 0 and support is None:
                support = n + 1
        coords = z.real if np.all(z.imag == 0) and lam.imag == 0 else z
    a = w.real
    if support is not None:
        verdict = Verdict(Status.YES, {"support": support}, "finitely supported")
    elif a > DUAL_YES_ABOVE:
        s = (1 + a) / 2
        n0 = max(0, math.ceil(abs(w) ** 2 / (2 * (a - s))) - 1)
        tail = None
        if n0 < N - 1:
            zN = abs(complex(coords[N - 1]))
            tail = zN * N / (s - 1)
        verdict = Verdict(Status.YES, {"raabe_s": s, "from_index": n0, "tail_bound": tail,
                                       "partial_l1": float(np.abs(np.asarray(coords, dtype=complex)).sum())},
                          f"|z_n| = O(n^-{a:.6g})")
    elif a < DUAL_NO_BELOW:
        verdict = Verdict(Status.NO, {"exponent": a},
                          "|z_n| >= c/(n+1), harmonic divergence")
    else:
        verdict = Verdict(Status.INCONCLUSIVE, {"exponent": a}, "decay exponent too close to 1")
    return DualEigenvector(lam, coords, a, verdict)


# -- membership of eigenvectors ------------------------------------------------


def _hahn_ratio_bounds(weight: Weight, t: float, m: int, n0: int):
    """Bounds on ``beta_{n+1}/beta_n`` over ``n >= n0`` for
    ``beta_n = d_{m+n} |x_{m+n+1} - x_{m+n}|``; returns (sup, inf)."""
    growth_sup = max(1.0, (m + n0 + 1) / (n0 + 2))
    growth_inf = min(1.0, (m + n0 + 1) / (n0 + 2))
    denom = (n0 + 1) * (1 - t) - m * t
    third = 1 + (1 - t) / denom if denom > 0 else math.inf
    rs, ri = weight.ratio_sup(m + n0), weight.ratio_inf(m + n0)
    sup = rs * t * growth_sup * third if rs is not None else math.inf
    inf = ri * t * growth_inf if ri is not None else 0.0
    return sup, inf


def eigenvector_membership(space: Space, t, m: int, N: int = 4096) -> Verdict:
    """Decide ``x_t^[m] in space``."""
    t = Fraction(check_t(t))
    seq = eigenvector_sequence(t, m)
    if space.family is not Family.HAHN:
        if t == 1:
            # binomial growth (or constant 1 when m = 0)
            if space.requires_null:
                return Verdict(Status.NO, {"limit": "nonzero or infinite"}, "coordinates do not tend to zero")
            if m > 0:
                return Verdict(Status.NO, {"growth": f"binom(n, {m})"}, "coordinates unbounded")
            return membership(space, constant_sequence(1), N)
        return membership(space, seq, N)

    weight = space.weight
    if t == 0:
        return membership(space, finite_sequence([0] * m + [1]), N)
    if t == 1:
        return Verdict(Status.NO, {"limit": "not in c0"}, "x_1^[m] does not tend to zero")
    tf = float(t)

    def beta(n: int) -> float:
        x0 = math.comb(m + n, n) * t ** n
        x1 = math.comb(m + n + 1, n + 1) * t ** (n + 1)
        return float(weight(m + n)) * float(abs(x1 - x0))

    # search for a start index where the ratio bounds decide the question
    for n0 in list(range(1, 64)) + [2 ** k for k in range(6, 17)]:
        sup, inf = _hahn_ratio_bounds(weight, tf, m, n0)
        if sup < 1:
            head = sum(float(weight(k)) * abs(float(math.comb(k + 1, m) * t ** (k + 1 - m)
                                                     - (math.comb(k, m) * t ** (k - m) if k >= m else 0)))
                       for k in range(m))
            enc = sum_with_tail(lambda n: beta(n), TailCertificate(n0, sup), max(n0, 64))
            return Verdict(Status.YES, {"ratio_bound": sup, "from_index": n0,
                                        "norm_lower": head + float(enc.lower),
                                        "norm_upper": head + float(enc.upper)},
                           "geometric tail of the weighted differences")
        if inf >= 1 and beta(n0) > 0:
            return Verdict(Status.NO, {"ratio_lower": inf, "from_index": n0, "beta": beta(n0)},
                           "weighted differences are eventually nondecreasing")
    limit = (weight.ratio_limit or math.nan) * tf
    return Verdict(Status.INCONCLUSIVE, {"ratio_limit": limit}, "ratio bounds undecided")
