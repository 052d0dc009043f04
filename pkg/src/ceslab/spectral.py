"""Operator norms, finite-section spectra, resolvent probes and ergodic behaviour.

Every norm estimate carries a witness: a concrete vector whose norm ratio is
the reported lower bound.  Upper bounds come from a column/row argument with
a tail bound, or from an explicit domination argument named in the method.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy.special import zeta

from .eigen import eigenvector
from .hahn import coordinate, nonexistence_test, uniform_bound
from .numeric import (
    ConstantTail,
    Enclosure,
    Mode,
    MonotoneTail,
    SeqGenerator,
    Status,
    Verdict,
    constant_sequence,
    finite_sequence,
    round_out,
)
from .operators import (
    SingularError,
    apply_cesaro,
    apply_cesaro_transpose,
    cesaro_matrix,
    check_t,
    triangular_solve,
    triangular_solve_adjoint,
)
from .spaces import Family, Space, WeightKind, norm

BOYD_TOL = 1e-10
BOYD_CAP = 10_000
HAHN_WITNESS_N = 4096


class Method(str, Enum):
    COLUMN_SUM = "ColumnSum"
    ROW_SUP = "RowSup"
    BOYD = "BoydIteration"
    RIESZ_THORIN = "RieszThorin"
    CONJUGATED = "Conjugated"
    DOMINANCE = "Dominance"


class ExistenceError(ValueError):
    """``C_t`` does not map the space into itself."""


def check_existence(space: Space, t) -> None:
    t = check_t(t)
    f = space.family
    if t == 1:
        if f is Family.LP and space.p == 1:
            raise ExistenceError("C_1 does not exist in ℓ¹: C_1 e_0 = (1/(n+1)) is not summable")
        if f is Family.CS:
            raise ExistenceError("C_1 does not exist in cs: the series of 1/(n+1) diverges")
        if f is Family.DP and space.p == 1:
            raise ExistenceError("C_1 does not exist in d_1")
    if f is Family.HAHN and t > 0:
        v = nonexistence_test(space.weight, t)
        if v.no:
            raise ExistenceError(f"C_t does not exist in {space.name} for t = {t}: {v.note}")


@dataclass
class NormEstimate:
    space: Space
    t: object
    N: int
    enclosure: Enclosure
    method: Method
    witness: Optional[np.ndarray] = field(default=None, repr=False)
    witness_extension: float = 0.0  # value of the witness past its stored coordinates
    power: int = 1
    note: str = ""

    @property
    def lower(self):
        return self.enclosure.lower

    @property
    def upper(self):
        return self.enclosure.upper

    @property
    def section_only(self) -> bool:
        """True when no certified upper bound for the full operator is available."""
        return math.isinf(self.enclosure.upper)

    def replay(self) -> float:
        """Recompute the witness ratio from scratch."""
        return witness_ratio(self.space, self.t, self.witness, self.witness_extension, self.power)


def _rho(t: float, n: np.ndarray) -> np.ndarray:
    """Row sums of ``C_t``, i.e. ``C_t 1``."""
    if t == 1:
        return np.ones(n.shape)
    if t == 0:
        return 1.0 / (n + 1)
    return -np.expm1((n + 1) * math.log(t)) / ((1 - t) * (n + 1))


def witness_ratio(space: Space, t, w: np.ndarray, extension: float = 0.0, power: int = 1) -> float:
    """Certified lower bound for ``||C_t^power w|| / ||w||``.

    ``w`` is finitely supported unless ``extension`` is nonzero, in which case
    ``w`` must be the constant sequence ``extension``.
    """
    t = check_t(t)
    tf = float(t)
    w = np.asarray(w, dtype=float)
    N = len(w)
    if extension:
        if power != 1 or not np.all(w == extension):
            raise ValueError("constant-extended witnesses must be constant and used with power 1")
        x = constant_sequence(float(extension))
        if tf == 1:
            y = constant_sequence(float(extension))
        else:
            y = SeqGenerator(
                rule=lambda n: float(extension) * float(_rho(tf, np.array([n]))[0]),
                tail=MonotoneTail(0),
                limit=0,
                vectorized=lambda n: float(extension) * _rho(tf, n),
            )
    else:
        x = finite_sequence(w)
        yv = w
        for _ in range(power):
            yv = apply_cesaro(t, yv)
        y = SeqGenerator(rule=lambda n: yv[n], vectorized=lambda n: yv[n])
    den = norm(space, x, N).upper
    num = norm(space, y, N).lower
    return float(num) / float(den)


def _best_witness(space: Space, t, candidates, extensions=None):
    best, best_w, best_ext = -math.inf, None, 0.0
    extensions = extensions or [0.0] * len(candidates)
    for w, ext in zip(candidates, extensions):
        r = witness_ratio(space, t, w, ext)
        if r > best:
            best, best_w, best_ext = r, w, ext
    return best, best_w, best_ext


def _unit(N: int, k: int = 0) -> np.ndarray:
    e = np.zeros(N)
    e[k] = 1.0
    return e


def l1_column_bound(t, N: int, mode: Mode = Mode.FLOAT):
    """Column sums of the section and an upper bound for all columns of ``C_t`` on ``l^1``.

    Column ``k`` of the full matrix sums to the section value plus
    ``sum_{n>=N} t^{n-k}/(n+1) <= t^{N-k} / ((N+1)(1-t))``; columns ``k >= N``
    are bounded by ``1/((N+1)(1-t))``.
    """
    t = check_t(t)
    if t == 1:
        raise ExistenceError("C_1 does not exist in ℓ¹: C_1 e_0 = (1/(n+1)) is not summable")
    if mode is Mode.EXACT:
        t = Fraction(t)
        cols = apply_cesaro_transpose(t, [Fraction(1)] * N)
        if t == 0:
            return cols, max(cols)
        tails = [t ** (N - k) / ((N + 1) * (1 - t)) for k in range(N)]
        far = 1 / ((N + 1) * (1 - t))
        return cols, max(max(c + s for c, s in zip(cols, tails)), far)
    tf = float(t)
    cols = apply_cesaro_transpose(tf, np.ones(N))
    if tf == 0:
        up = float(cols.max())
    else:
        k = np.arange(N)
        tails = np.exp((N - k) * math.log(tf)) / ((N + 1) * (1 - tf))
        up = max(float(np.max(cols + tails)), 1 / ((N + 1) * (1 - tf)))
    _, up = round_out(up, up, N, up)
    return cols, up


def operator_norm(space: Space, t, N: int = 4096, mode: Mode = Mode.FLOAT) -> NormEstimate:
    """Enclosure of ``||C_t||`` on ``space``; the lower end is a witness ratio."""
    t = check_t(t)
    check_existence(space, t)
    tf = float(t)
    f, p = space.family, space.p

    if f is Family.LP and p == 1:
        cols, up = l1_column_bound(t, N, mode)
        k = int(np.argmax(np.asarray([float(c) for c in cols])))
        w = _unit(N, k)
        if mode is Mode.EXACT:
            lo = cols[k]
            return NormEstimate(space, t, N, Enclosure(lo, up), Method.COLUMN_SUM, w,
                                note="exact column sums")
        return NormEstimate(space, t, N, Enclosure(witness_ratio(space, t, w), up), Method.COLUMN_SUM, w)

    if f in (Family.C0, Family.C) or (f is Family.LP and math.isinf(p)):
        # row n sums to (1/(n+1)) sum_{j<=n} t^j <= 1, with equality at n = 0
        rows = apply_cesaro(t, [Fraction(1)] * N) if mode is Mode.EXACT else apply_cesaro(tf, np.ones(N))
        top = max(rows)
        if top > 1 + 1e-12:
            raise AssertionError("row sum exceeds 1")
        w = _unit(N)
        lo = witness_ratio(space, t, w)
        one = Fraction(1) if mode is Mode.EXACT else 1.0
        return NormEstimate(space, t, N, Enclosure(one if lo == 1 else lo, one), Method.ROW_SUP, w)

    if f is Family.LP:
        w, _ = boyd_iteration(t, N, p)
        lo = witness_ratio(space, t, w)
        q = p / (p - 1)
        up, note = q, "Hardy bound p'"
        if tf < 1:
            _, c1 = l1_column_bound(t, N)
            rt = c1 ** (1 / p)  # ||A||_1^{1/p} ||A||_inf^{1/p'} with ||A||_inf = 1
            if rt < up:
                up, note = rt, "Riesz-Thorin with the l1 column bound"
        return NormEstimate(space, t, N, Enclosure(lo, max(up, lo)), Method.BOYD, w, note=note)

    if f is Family.CS:
        # Q C_t Q^{-1} is entrywise nonnegative with row n summing to sum_{i<=n} t^i/(i+1)
        k = np.arange(N)
        terms = np.exp(k * math.log(tf)) / (k + 1) if tf > 0 else (k == 0).astype(float)
        part = math.fsum(terms)
        tail = 0.0 if tf == 0 else math.exp(N * math.log(tf)) / ((N + 1) * (1 - tf))
        _, up = round_out(part + tail, part + tail, N, part + tail)
        w = _unit(N)
        return NormEstimate(space, t, N, Enclosure(witness_ratio(space, t, w), up), Method.CONJUGATED, w)

    if f is Family.CES0 or (f is Family.CESP and math.isinf(p)):
        # averages of |C_t x| are dominated by the averages of |x|
        w = _unit(N)
        return NormEstimate(space, t, N, Enclosure(witness_ratio(space, t, w), 1.0), Method.DOMINANCE, w)

    if f is Family.CESP:
        q = p / (p - 1)
        up, note = q, "Hardy bound p'"
        if tf < 1:
            _, c1 = l1_column_bound(t, N)
            if c1 < up:
                up, note = c1, "C_1 C_t <= c C_1 entrywise with c the l1 column bound"
        cands = [_unit(N)] + [np.where(np.arange(N) < K, 1.0, 0.0) for K in (2, 8, 64, N // 4)]
        cands.append((np.arange(N) + 1.0) ** (-1 / p - 1 / math.log(N)))
        lo, w, _ = _best_witness(space, t, cands)
        return NormEstimate(space, t, N, Enclosure(lo, max(up, lo)), Method.DOMINANCE, w, note=note)

    if f is Family.DP:
        cands = [_unit(N)] + [np.where(np.arange(N) < K, 1.0, 0.0) for K in (2, 8, 64)]
        lo, w, _ = _best_witness(space, t, cands)
        up = 1.0 if tf == 0 else math.inf
        note = "|D_phi x| <= |x| and the norm is solid" if tf == 0 else "no upper bound computed"
        return NormEstimate(space, t, N, Enclosure(lo, max(up, lo)), Method.DOMINANCE, w, note=note)

    if f in (Family.BV, Family.BV0, Family.BVLIM):
        return _bv_norm(space, t, N)

    if f is Family.BVP:
        ones = np.ones(N)
        cands, exts = [ones, _unit(N)], [1.0, 0.0]
        lo, w, ext = _best_witness(space, t, cands, exts)
        if tf < 1:
            # D_phi = T^{-1}(A - B)T with ||A|| = 1, ||B|| <= (zeta(p) - 1)^{1/p}; S is an isometry
            up = (1 + float(zeta(p) - 1) ** (1 / p)) / (1 - tf)
            note = "||D_phi|| / (1 - t)"
        else:
            up, note = math.inf, "no upper bound computed"
        return NormEstimate(space, t, N, Enclosure(lo, max(up, lo)), Method.CONJUGATED, w, ext, note=note)

    if f is Family.HAHN:
        return _hahn_norm(space, t, N)

    raise ValueError(f"unsupported space {space}")


def _bv_norm(space: Space, t, N: int) -> NormEstimate:
    """Norms on ``bv``, ``bv_0`` and ``bv`` with the limit norm.

    In difference coordinates column ``j`` of ``C_t`` is the image of the
    block ``1_{[j, inf)}``, which is ``c_n = (1/(n+1)) sum_{j<=k<=n} t^{n-k}``.
    These columns rise to a maximum ``<= 1`` and then decrease to zero (they
    are nonincreasing for ``j = 0`` and constant 1 when ``t = 1``).  With the
    norm ``|x_0| + sum |x_{k+1} - x_k|`` a column therefore has norm at most
    ``2 max c <= 2``, attained by ``1``.  With ``|lim x| + sum |x_k - x_{k+1}|``
    every image of a block ``1_{[0, j]}`` or of ``1`` is nonincreasing from
    its first value ``<= 1``, giving the bound 1.  The ``bv_0`` bound follows
    from the limit-norm bound since ``(C_t x)_0 = x_0``.
    """
    tf = float(t)
    f = space.family
    if f is Family.BV0:
        w, ext, up = _unit(N), 0.0, 1.0
    elif f is Family.BVLIM:
        w, ext, up = np.ones(N), 1.0, 1.0
    else:
        w, ext, up = np.ones(N), 1.0, (1.0 if tf == 1 else 2.0)
    if f is not Family.BV0:
        _check_bv_columns(tf, min(N, 2048))
    lo = witness_ratio(space, t, w, ext)
    return NormEstimate(space, t, N, Enclosure(lo, max(up, lo)), Method.CONJUGATED, w, ext,
                        note="column shape bound")


def _check_bv_columns(t: float, N: int) -> None:
    """Confirm on a section that the block images have the shape used by the bound."""
    n = np.arange(N)
    for j in (0, 1, N // 2):
        c = apply_cesaro(t, (n <= j).astype(float))
        if np.any(np.diff(c) > 1e-14) or c.max() > 1 + 1e-14:
            raise AssertionError(f"block image 1_[0,{j}] is not nonincreasing below 1")


def _hahn_norm(space: Space, t, N: int, M: int = 64) -> NormEstimate:
    weight = space.weight
    tf = float(t)
    coords = [coordinate(weight, t, m, N) for m in range(M + 1)]
    ub = uniform_bound(weight, t, M)
    up = max([c.upper for c in coords] + [ub if ub is not None else math.inf])
    # witness W^{-1} e_m = -(1/d_m) 1_{[0, m]}, a unit vector of h_d
    logd = weight.log_values(np.arange(HAHN_WITNESS_N + 1))
    Nw = int(min(N, HAHN_WITNESS_N, np.searchsorted(logd, 600.0)))
    m_best = int(np.argmax([c.lower for c in coords[: min(M, Nw - 1) + 1]]))
    dm = math.exp(float(logd[m_best]))
    w = np.where(np.arange(Nw) <= m_best, -1.0 / dm, 0.0)
    lo = witness_ratio(space, t, w)
    return NormEstimate(space, t, N, Enclosure(lo, max(up, lo)), Method.CONJUGATED, w,
                        note=f"coordinates m <= {M} plus uniform bound")


def boyd_iteration(t, N: int, p: float, tol: float = BOYD_TOL, cap: int = BOYD_CAP):
    """Nonnegative power method for the ``l^p`` section norm of ``C_t``.

    Returns ``(x, value)`` with ``x`` the final iterate (a unit vector).
    """
    t = float(check_t(t))
    q = p / (p - 1)
    x = np.ones(N) / N ** (1 / p)
    value = prev = 0.0
    for _ in range(cap):
        y = apply_cesaro(t, x)
        value = float(np.linalg.norm(y, p))
        if abs(value - prev) <= tol * value:
            break
        prev = value
        z = apply_cesaro_transpose(t, y ** (p - 1))
        x = z ** (q - 1)
        x /= np.linalg.norm(x, p)
    else:
        warnings.warn(f"Boyd iteration hit the cap of {cap} iterations", RuntimeWarning)
    return x, value


@dataclass
class SpectrumReport:
    t: object
    N: int
    eigenvalues: list
    grid: dict = field(default_factory=dict)  # complex point -> resolvent estimate


def finite_section_spectrum(t, N: int) -> SpectrumReport:
    """Eigenvalues of the ``N x N`` section: the diagonal of a triangular matrix."""
    t = check_t(t)
    if N <= 256:
        A = cesaro_matrix(t, N)
        diag = [A[n, n] for n in range(N)]
    else:
        # diagonal entry n is t^0 / (n + 1)
        diag = [Fraction(1, n + 1) for n in range(N)]
    return SpectrumReport(t, N, diag)


def resolvent_probe(lam, t, N: int, iterations: int = 300, tol: float = 1e-10) -> float:
    """Lower estimate of ``||(lam I - C_t)^{-1}||_2`` on the ``N x N`` section."""
    t = check_t(t)
    x = np.ones(N, dtype=complex) / math.sqrt(N)
    best = 0.0
    for _ in range(iterations):
        y = triangular_solve(complex(lam), t, x)
        val = float(np.linalg.norm(y))
        if val <= best * (1 + tol):
            best = max(best, val)
            break
        best = val
        z = triangular_solve_adjoint(complex(lam), t, y)
        x = z / np.linalg.norm(z)
    return best


def pseudospectrum(t, grid: tuple, res: int, N: int, iterations: int = 60) -> SpectrumReport:
    """Resolvent estimates on a ``res x res`` grid over ``[re0, re1] x [im0, im1]``."""
    re0, re1, im0, im1 = grid
    if res < 1 or re1 < re0 or im1 < im0:
        raise ValueError("empty grid")
    report = SpectrumReport(check_t(t), N, [Fraction(1, n + 1) for n in range(N)])
    for im in np.linspace(im0, im1, res):
        for re in np.linspace(re0, re1, res):
            lam = complex(re, im)
            try:
                report.grid[lam] = resolvent_probe(lam, t, N, iterations)
            except SingularError:
                report.grid[lam] = math.inf
    return report


def _section_norm(space: Space, M: np.ndarray) -> float:
    f = space.family
    if f is Family.LP and space.p == 1:
        return float(np.max(np.abs(M).sum(axis=0)))
    if f in (Family.C0, Family.C) or (f is Family.LP and math.isinf(space.p)):
        return float(np.max(np.abs(M).sum(axis=1)))
    raise ValueError("dense section norms are available for l1, linf, c0 and c")


def power_norms(space: Space, t, n_max: int, N: int) -> list:
    """Section norms of ``C_t^n`` for ``n = 1..n_max`` (lower bounds for the full norms)."""
    t = check_t(t)
    check_existence(space, t)
    f, p = space.family, space.p
    out = []
    if f is Family.LP and p == 1:
        v = np.ones(N)
        for n in range(1, n_max + 1):
            v = apply_cesaro_transpose(t, v)
            k = int(np.argmax(v))
            w = _unit(N, k)
            out.append(NormEstimate(space, t, N, Enclosure(float(v[k]), math.inf),
                                    Method.COLUMN_SUM, w, power=n))
    elif f in (Family.C0, Family.C) or (f is Family.LP and math.isinf(p)):
        v = np.ones(N)
        for n in range(1, n_max + 1):
            v = apply_cesaro(t, v)
            out.append(NormEstimate(space, t, N, Enclosure(float(v.max()), math.inf),
                                    Method.ROW_SUP, np.ones(N), power=n))
    elif f is Family.LP:
        for n in range(1, n_max + 1):
            w, val = _power_boyd(t, N, p, n)
            out.append(NormEstimate(space, t, N, Enclosure(val, math.inf), Method.BOYD, w, power=n))
    else:
        raise ValueError(f"power norms are not provided for {space}")
    return out


def _power_boyd(t, N: int, p: float, n: int, tol: float = BOYD_TOL, cap: int = BOYD_CAP):
    q = p / (p - 1)
    x = np.ones(N) / N ** (1 / p)
    value = prev = 0.0
    for _ in range(cap):
        y = x
        for _ in range(n):
            y = apply_cesaro(t, y)
        value = float(np.linalg.norm(y, p))
        if abs(value - prev) <= tol * value:
            break
        prev = value
        z = y ** (p - 1)
        for _ in range(n):
            z = apply_cesaro_transpose(t, z)
        x = z ** (q - 1)
        x /= np.linalg.norm(x, p)
    return x, value


@dataclass(frozen=True)
class ProjectionP:
    """The rank-one projection ``P x = x_0 x_t^[0]`` for ``t < 1``."""

    t: object

    def __post_init__(self):
        if check_t(self.t) == 1:
            raise ValueError("no projection of this form at t = 1")

    def apply(self, x):
        v = eigenvector(self.t, 0, len(x), Mode.FLOAT if isinstance(x, np.ndarray) else Mode.EXACT)
        return x[0] * v

    def matrix(self, N: int, mode: Mode = Mode.FLOAT) -> np.ndarray:
        v = eigenvector(self.t, 0, N, mode)
        if mode is Mode.FLOAT:
            P = np.zeros((N, N))
            P[:, 0] = v
            return P
        P = np.full((N, N), Fraction(0), dtype=object)
        P[:, 0] = v
        return P

    def verify_identities(self, N: int) -> Verdict:
        """Exact check of ``P^2 = P`` and ``P C_t = C_t P = P`` on the section.

        With ``P = v e_0^T`` these reduce to ``v_0 = 1``, row 0 of the section
        being ``e_0^T`` and ``C_t v = v``; sections with ``N <= 64`` are also
        multiplied out in full.
        """
        t = Fraction(check_t(self.t))
        if t == 1:
            raise ValueError("no projection of this form at t = 1")
        v = eigenvector(t, 0, N)
        row0 = apply_cesaro_transpose(t, [Fraction(int(k == 0)) for k in range(N)])
        checks = {
            "P^2=P": v[0] == 1,
            "PC_t=P": row0 == [Fraction(int(k == 0)) for k in range(N)],
            "C_tP=P": apply_cesaro(t, v) == v,
        }
        if N <= 64:
            A = cesaro_matrix(t, N)
            P = self.matrix(N, Mode.EXACT)
            checks["dense"] = bool(np.all(P.dot(P) == P) and np.all(P.dot(A) == P) and np.all(A.dot(P) == P))
        status = Status.YES if all(checks.values()) else Status.NO
        return Verdict(status, {k: bool(v) for k, v in checks.items()})


@dataclass
class ErgodicReport:
    space: Space
    t: object
    N: int
    power_norms: list  # ||C_t^n||, n = 1..n_max
    distances: list  # ||C_t^n - P||
    mean_distances: list  # ||(C_t)_[n] - P||


def ergodic_report(space: Space, t, n_max: int, N: int) -> ErgodicReport:
    """Dense section norms of powers and Cesàro means of ``C_t`` against ``P``.

    ``C_t^n - P = (C_t - P)^n`` is accumulated as ``M_{n+1} = (I - P) C_t M_n``,
    which avoids subtracting two nearly equal matrices.
    """
    t = check_t(t)
    if t == 1:
        raise ValueError("no projection of this form at t = 1")
    check_existence(space, t)
    tf = float(t)
    P = ProjectionP(t).matrix(N)
    v = P[:, 0]
    Mn = cesaro_matrix(tf, N, Mode.FLOAT) - P
    running = np.zeros((N, N))
    powers, dists, means = [], [], []
    for n in range(1, n_max + 1):
        if n > 1:
            Y = apply_cesaro(tf, Mn)
            Mn = Y - np.outer(v, Y[0])
        running += Mn
        powers.append(_section_norm(space, Mn + P))
        dists.append(_section_norm(space, Mn))
        means.append(_section_norm(space, running / n))
    return ErgodicReport(space, t, N, powers, dists, means)


def cesaro_means_distance(space: Space, t, n_max: int, N: int) -> list:
    return ergodic_report(space, t, n_max, N).mean_distances
