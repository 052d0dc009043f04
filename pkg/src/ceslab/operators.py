"""Generalized Cesàro operators and their finite sections.

``C_t`` acts by ``(C_t x)_n = (t^n x_0 + t^{n-1} x_1 + ... + x_n) / (n + 1)``.
Matrix-free application runs the prefix recurrence ``S_n = t S_{n-1} + x_n``
in O(N).  Lists of rationals are handled exactly, numpy arrays in floating
point (real or complex).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.linalg import solve_banded
from scipy.signal import lfilter

from .numeric import Mode, Status, Verdict, parse_scalar
from .spaces import Isometry, IsometryKind, Space, conjugation

MAX_DENSE = 2048


class SingularError(ValueError):
    pass


def check_t(t):
    """Validate ``t`` in ``[0, 1]``; strings like ``"1/2"`` become rationals."""
    if isinstance(t, str):
        t = parse_scalar(t)
    if not (0 <= t <= 1):
        raise ValueError(f"t must lie in [0, 1], got {t}")
    return t


def _is_float(x) -> bool:
    return isinstance(x, np.ndarray)


def _column_scale(N: int, ndim: int) -> np.ndarray:
    scale = np.arange(1, N + 1, dtype=float)
    return scale.reshape((N,) + (1,) * (ndim - 1))


def _geometric_filter(t: float, x: np.ndarray) -> np.ndarray:
    """``S_n = t S_{n-1} + x_n`` along axis 0."""
    if t == 0:
        return np.array(x, copy=True)
    if t == 1:
        return np.cumsum(x, axis=0)
    return lfilter([1.0], [1.0, -t], x, axis=0)


def apply_cesaro(t, x):
    """``C_t x`` on a finite section."""
    t = check_t(t)
    if _is_float(x):
        return _geometric_filter(float(t), x) / _column_scale(x.shape[0], x.ndim)
    t = Fraction(t)
    out, s = [], Fraction(0)
    for n, v in enumerate(x):
        s = t * s + v
        out.append(s / (n + 1))
    return out


def apply_cesaro_transpose(t, y):
    """``C_t^T y`` on a finite section: ``sum_{n>=k} t^{n-k} y_n / (n+1)``."""
    t = check_t(t)
    if _is_float(y):
        scaled = y / _column_scale(y.shape[0], y.ndim)
        return _geometric_filter(float(t), scaled[::-1])[::-1]
    t = Fraction(t)
    out, u = [Fraction(0)] * len(y), Fraction(0)
    for k in range(len(y) - 1, -1, -1):
        u = y[k] / (k + 1) + t * u
        out[k] = u
    return out


def apply_diag(x):
    """``D_phi x = (x_n / (n+1))``."""
    if _is_float(x):
        return x / _column_scale(x.shape[0], x.ndim)
    return [v / (n + 1) for n, v in enumerate(x)]


def shift(x):
    """Forward shift ``(0, x_0, x_1, ...)`` truncated to the section."""
    if _is_float(x):
        out = np.zeros_like(x)
        out[1:] = x[:-1]
        return out
    return [0] + list(x[:-1])


def apply_rt(t, M: int, x):
    """``sum_{m=0}^{M} t^m S^m x``; equal to ``R_t x`` on the section once ``M >= N-1``."""
    t = check_t(t)
    N = len(x)
    if _is_float(x):
        s = _geometric_filter(float(t), x)
        if M < N - 1:
            s[M + 1:] -= float(t) ** (M + 1) * s[: N - M - 1]
        return s
    t = Fraction(t)
    out = [Fraction(0)] * N
    power = Fraction(1)
    for m in range(min(M, N - 1) + 1):
        for n in range(m, N):
            out[n] += power * x[n - m]
        power *= t
    return out


def cesaro_matrix(t, N: int, mode: Mode = Mode.EXACT):
    """Dense ``N x N`` section with entries ``t^{n-k}/(n+1)`` for ``k <= n``."""
    t = check_t(t)
    if N > MAX_DENSE:
        raise ValueError(f"dense sections are limited to N <= {MAX_DENSE}")
    if mode is Mode.FLOAT:
        n = np.arange(N)
        gap = n[:, None] - n[None, :]
        with np.errstate(divide="ignore"):
            vals = float(t) ** np.clip(gap, 0, None) / (n[:, None] + 1)
        return np.where(gap >= 0, vals, 0.0)
    return _exact_matrix(Fraction(t), N).copy()


@lru_cache(maxsize=8)
def _exact_matrix(t: Fraction, N: int) -> np.ndarray:
    powers = [Fraction(1)]
    for _ in range(N):
        powers.append(powers[-1] * t)
    A = np.full((N, N), Fraction(0), dtype=object)
    for n in range(N):
        for k in range(n + 1):
            A[n, k] = powers[n - k] / (n + 1)
    return A


def factorization_check(t, N: int) -> Verdict:
    """Check ``D_phi R_t = C_t`` exactly on the ``N x N`` section.

    ``R_t`` is accumulated from powers of the shift, ``C_t`` is read off the
    entry formula, and every column is also compared with the recurrence.
    """
    t = Fraction(check_t(t))
    R = np.full((N, N), Fraction(0), dtype=object)
    power = Fraction(1)
    for m in range(N):  # S^m has ones on the m-th subdiagonal
        for n in range(m, N):
            R[n, n - m] += power
        power *= t
    lhs = np.array([[R[n, k] / (n + 1) for k in range(N)] for n in range(N)], dtype=object)
    A = cesaro_matrix(t, N)
    mismatches = int(np.sum(lhs != A))
    for j in range(N):
        col = apply_cesaro(t, [Fraction(int(i == j)) for i in range(N)])
        mismatches += sum(1 for n in range(N) if col[n] != A[n, j])
    status = Status.YES if mismatches == 0 else Status.NO
    return Verdict(status, {"N": N, "t": t, "mismatches": mismatches})


@dataclass
class ConjugatedSection:
    """Finite section of ``U C_t U^{-1}`` for the isometry ``U`` of a space.

    ``matvec`` is exact on the section: the Hahn isometry looks one coordinate
    ahead, so the inner application runs on ``N + 1`` coordinates.
    """

    space: Space
    t: object
    N: int
    isometry: Isometry

    def matvec(self, y):
        U = self.isometry
        x = U.inverse(y)
        if U.kind is IsometryKind.HAHN_W:
            x = np.append(x, 0) if _is_float(x) else list(x) + [0]
            return U.forward(apply_cesaro(self.t, x))[: self.N]
        return U.forward(apply_cesaro(self.t, x))

    def rmatvec(self, z):
        """Transpose application, available for the lower-triangular isometries."""
        k = self.isometry.kind
        if k is IsometryKind.IDENTITY:
            return apply_cesaro_transpose(self.t, z)
        if k is IsometryKind.DIFFERENCE:  # (T A T^{-1})^T = Q^T A^T T^T
            w = z - np.append(z[1:], 0)
            v = apply_cesaro_transpose(self.t, w)
            return np.cumsum(v[::-1])[::-1]
        if k is IsometryKind.PARTIAL_SUM:  # (Q A T)^T = T^T A^T Q^T
            w = np.cumsum(z[::-1])[::-1]
            v = apply_cesaro_transpose(self.t, w)
            return v - np.append(v[1:], 0)
        raise NotImplementedError("transpose of the Hahn conjugate is not provided")

    def column(self, j: int, exact: bool = False):
        e = [Fraction(0)] * self.N if exact else np.zeros(self.N)
        e[j] = Fraction(1) if exact else 1.0
        return self.matvec(e)

    def dense(self, exact: bool = True):
        cols = [self.column(j, exact) for j in range(self.N)]
        if exact:
            return np.array(cols, dtype=object).T
        return np.array(cols).T


def conjugated_operator(space: Space, t, N: int) -> ConjugatedSection:
    return ConjugatedSection(space, check_t(t), N, conjugation(space))


# -- triangular solves -----------------------------------------------------------


def _singular_index(lam, N: int):
    """Index ``n < N`` with ``lam == 1/(n+1)``, or None."""
    if isinstance(lam, Fraction):
        if lam > 0 and lam.numerator == 1 and lam.denominator <= N:
            return lam.denominator - 1
        return None
    lam = complex(lam)
    if lam.imag != 0 or lam.real <= 0:
        return None
    n = round(1 / lam.real - 1)
    if 0 <= n < N and abs(lam.real - 1 / (n + 1)) <= 4e-16 * lam.real:
        return n
    return None


def triangular_solve(lam, t, rhs):
    """Solve ``(lam I - C_t) y = rhs`` on the section by forward substitution.

    With ``u = R_t y`` the system becomes the bidiagonal recurrence
    ``(lam - 1/(n+1)) u_n - lam t u_{n-1} = rhs_n`` and ``y = u - t S u``.
    """
    t = check_t(t)
    N = len(rhs)
    if isinstance(lam, str):
        lam = parse_scalar(lam)
    idx = _singular_index(lam if not isinstance(lam, int) else Fraction(lam), N)
    if idx is not None:
        raise SingularError(f"singular at index {idx}")
    if _is_float(rhs):
        lam = complex(lam)
        tf = float(t)
        n = np.arange(N)
        ab = np.zeros((2, N), dtype=complex)
        ab[0] = lam - 1.0 / (n + 1)
        ab[1, :-1] = -lam * tf
        u = solve_banded((1, 0), ab, rhs.astype(complex), check_finite=False)
        y = u - tf * shift(u)
        return y if np.iscomplexobj(rhs) or lam.imag else y.real
    lam, t = Fraction(lam), Fraction(t)
    out, s = [], Fraction(0)
    for n, b in enumerate(rhs):
        y = (b + t * s / (n + 1)) / (lam - Fraction(1, n + 1))
        s = t * s + y
        out.append(y)
    return out


def triangular_solve_adjoint(lam, t, rhs: np.ndarray) -> np.ndarray:
    """Solve ``(conj(lam) I - C_t^T) y = rhs`` on the section (float only)."""
    t = float(check_t(t))
    N = len(rhs)
    idx = _singular_index(complex(lam), N)
    if idx is not None:
        raise SingularError(f"singular at index {idx}")
    lc = np.conj(complex(lam))
    n = np.arange(N)
    b = rhs.astype(complex)
    b[:-1] -= t * rhs[1:]
    ab = np.zeros((2, N), dtype=complex)
    ab[0, 1:] = -lc * t
    ab[1] = lc - 1.0 / (n + 1)
    return solve_banded((0, 1), ab, b, check_finite=False)
