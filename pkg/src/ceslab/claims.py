"""Registry of machine-checked claims about ``C_t`` on the catalogued spaces.

Each row names the statement it checks, runs a finite computation and
compares it with the expected value or bound.  Statements about
infinite-dimensional properties with no finite shadow (supercyclicity,
compactness as such, the Bachelis spaces ``N^p``) are kept as rows with the
status NotMachineCheckable and a reason.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from . import eigen, hahn
from .numeric import Enclosure, Status, constant_sequence, format_scalar
from .operators import apply_cesaro, conjugated_operator, factorization_check
from .spaces import Space, Weight, membership, norm
from .spectral import (
    ExistenceError,
    ProjectionP,
    check_existence,
    ergodic_report,
    finite_section_spectrum,
    operator_norm,
    power_norms,
    resolvent_probe,
)


class ClaimStatus(str, Enum):
    PASS = "Pass"
    FAIL = "Fail"
    NMC = "NotMachineCheckable"


@dataclass(frozen=True)
class Claim:
    claim_id: str
    locus: str
    expected: str
    tags: tuple = ()
    check: Optional[Callable[[], tuple]] = None  # returns (computed, passed)
    reason: str = ""


@dataclass(frozen=True)
class ClaimRow:
    claim_id: str
    locus: str
    computed: str
    expected: str
    status: ClaimStatus
    reason: str = ""

    def as_dict(self) -> dict:
        return {"claim_id": self.claim_id, "locus": self.locus, "computed": self.computed,
                "expected": self.expected, "status": self.status.value, "reason": self.reason}


def _fmt(x) -> str:
    if isinstance(x, Enclosure):
        return f"[{_fmt(x.lower)}, {_fmt(x.upper)}]"
    if isinstance(x, (list, tuple)):
        return "; ".join(_fmt(v) for v in x)
    if isinstance(x, bool):
        return str(x)
    if isinstance(x, (float, np.floating)) and math.isinf(x):
        return "inf"
    return format_scalar(x)


def _contains(e: Enclosure, value: float, slack: float = 0.0) -> bool:
    return e.lower - slack <= value <= e.upper + slack


# -- check helpers ---------------------------------------------------------------


def _norm_contains(space, t, value, N=4096, slack=0.0):
    def run():
        e = operator_norm(space, t, N).enclosure
        return _fmt(e), _contains(e, value, slack) and e.lower <= e.upper
    return run


def _norm_exactly_one(space, t, N=64):
    def run():
        e = operator_norm(space, t, N).enclosure
        return _fmt(e), e.lower == 1 and e.upper == 1
    return run


def _norm_upper_at_most(space, t, bound, N=4096):
    def run():
        e = operator_norm(space, t, N).enclosure
        return _fmt(e), e.lower <= e.upper <= bound * (1 + 1e-12)
    return run


def _witness_below(space, t, bound, N=2048):
    def run():
        e = operator_norm(space, t, N).enclosure
        return f"witness lower {_fmt(e.lower)}", e.lower <= bound
    return run


def _nonexistent(space, t):
    def run():
        try:
            check_existence(space, t)
        except ExistenceError as exc:
            return str(exc), True
        return "no existence error", False
    return run


def _spectrum_lambda(t, N=64, m_max=8):
    def run():
        ev = finite_section_spectrum(t, N).eigenvalues
        ok = ev == [Fraction(1, n + 1) for n in range(N)]
        ok &= all(eigen.verify_eigenpair(t, m, N).yes for m in range(m_max + 1))
        return f"diagonal 1/(n+1) for n<{N}: {ok}", ok
    return run


def _eigvecs_in(space, t, m_max=5, N=4096):
    def run():
        verdicts = [eigen.eigenvector_membership(space, t, m, N) for m in range(m_max + 1)]
        return ", ".join(v.status.value for v in verdicts), all(v.yes for v in verdicts)
    return run


def _mean_ergodic(space, t, N, n_max, bound):
    def run():
        r = ergodic_report(space, t, n_max, N)
        P_ok = ProjectionP(Fraction(t)).verify_identities(64).yes
        d = r.mean_distances[-1]
        return f"sup||C^n||={_fmt(max(r.power_norms))}; ||mean_{n_max} - P||={_fmt(d)}; P identities {P_ok}", \
            d <= bound and P_ok and all(np.isfinite(r.power_norms))
    return run


def _verdict_is(fn, status: Status):
    def run():
        v = fn()
        return v.status.value, v.status is status
    return run


def _all(*checks):
    def run():
        parts, ok = [], True
        for c in checks:
            s, passed = c()
            parts.append(s)
            ok &= passed
        return " | ".join(parts), ok
    return run


# -- individual checks -----------------------------------------------------------


def _hardy_l2():
    e = operator_norm(Space.lp(2), 1, 2 ** 16).enclosure
    return _fmt(e), 1.8 <= e.lower <= 2 <= e.upper


def _disk_l2():
    inside = [resolvent_probe(1 + 0.5j, 1, 2 ** k) for k in (10, 12, 14)]
    outside = [resolvent_probe(-0.5, 1, 2 ** k) for k in (10, 12, 14)]
    ok = inside[-1] > 2 * inside[0] and max(outside) <= 1.1 * min(outside)
    return f"inside {_fmt(inside)}; outside {_fmt(outside)}", ok


def _not_power_bounded_l2():
    vals = [e.lower for e in power_norms(Space.lp(2), 1, 4, 2 ** 14)]
    return _fmt(vals), all(b > a for a, b in zip(vals, vals[1:])) and vals[-1] >= 4


def _power_bounded(space, t, n_max, N, bound):
    def run():
        vals = [e.lower for e in power_norms(space, t, n_max, N)]
        return f"sup over n<={n_max}: {_fmt(max(vals))}", max(vals) <= bound
    return run


def _c1_constant_eigenvector(space):
    def run():
        one = [Fraction(1)] * 64
        fixed = apply_cesaro(1, one) == one
        v = membership(space, constant_sequence(1))
        return f"C_1 1 = 1: {fixed}; 1 in {space.name}: {v.status.value}", fixed and v.yes
    return run


def _c0_no_constant():
    v = membership(Space.c0(), constant_sequence(1))
    return f"1 in c0: {v.status.value}", v.no


def _bv_standard_norm():
    e = operator_norm(Space.bv(), Fraction(1, 2), 4096).enclosure
    return _fmt(e), _contains(e, 2.0)


def _bvp_dphi():
    N = 64
    F = conjugated_operator(Space.bvp(2), 0, N).dense(exact=True)
    A = np.full((N, N), Fraction(0), dtype=object)
    B = np.full((N, N), Fraction(0), dtype=object)
    for n in range(N):
        A[n, n] = Fraction(1, n + 1)
        for j in range(n):
            B[n, j] = Fraction(1, n * (n + 1))
    ok = bool(np.all(F == A - B))
    return f"T D_phi T^-1 == A - B on {N}x{N}: {ok}", ok


def _bvp_shift_isometry():
    x = [Fraction((7 * k) % 13 - 6, 7) for k in range(40)]
    sx = [Fraction(0)] + x
    space = Space.bvp(2)
    a, b = norm(space, x, 64).lower, norm(space, sx, 64).lower
    return f"||x|| = {_fmt(a)}, ||Sx|| = {_fmt(b)}", abs(a - b) <= 1e-12 * a


def _shift_bounds():
    a = hahn.shift_norm_bound(Weight.power(2), 3).value
    b = hahn.shift_norm_bound(Weight.log(), 0).value
    ok = a == 41 and abs(b - (math.log(3) + math.log(4) / math.log(3))) <= 1e-12
    return f"{_fmt(a)}; {_fmt(b)}", ok


def _geometric_threshold():
    w = Weight.geometric(2)
    yes = [hahn.existence_test(w, t).verdict.status.value for t in ("0.4", "0.45", "0.49")]
    no = [hahn.existence_test(w, t).verdict.status.value for t in ("0.51", "0.55", "0.6")]
    ok = all(s == Status.YES.value for s in yes) and all(s == Status.NO.value for s in no)
    return f"{','.join(yes)} / {','.join(no)}", ok


def _rt_geometric():
    w = Weight.geometric(2)
    a = hahn.rt_convergence_check(w, Fraction(2, 5)).status
    b = hahn.rt_convergence_check(w, Fraction(3, 5)).status
    return f"t=0.4 {a.value}, t=0.6 {b.value}", a is Status.YES and b is Status.NO


def _hahn_consistency():
    weights = [Weight.power(1), Weight.power(2), Weight.log(), Weight.geometric(2), Weight.factorial()]
    bad = 0
    for w in weights:
        for t in ("1/4", "1/2", "3/4"):
            e = hahn.existence_test(w, t, M=16, N=4096).verdict.status
            n = hahn.nonexistence_test(w, t).status
            bad += e is Status.YES and n is Status.NO
    return f"contradictions: {bad}", bad == 0


def _hahn_norm_finite(weight, t):
    def run():
        e = operator_norm(Space.hahn(weight), t, 4096).enclosure
        return _fmt(e), math.isfinite(e.upper) and e.lower <= e.upper
    return run


def _dual_c1():
    a = eigen.c1_dual_eigenvector(0.6, 4096)
    b = eigen.c1_dual_eigenvector(1, 16)
    finite = all(z == 0 for z in b.coords[1:])
    return f"lambda=0.6: {a.verdict.status.value}; lambda=1 support {{0}}: {finite}", a.verdict.yes and finite


def _eigen_suite():
    grid = [Fraction(k, 4) for k in range(4)]
    ok = all(eigen.verify_eigenpair(t, m, 64).yes and eigen.verify_dual_eigenpair(t, m, 64).yes
             for t in grid for m in range(6))
    ok &= all(eigen.biorthogonality(t, m, n) == (1 if m == n else 0)
              for t in grid for m in range(6) for n in range(m + 1))
    return f"eigenpairs, dual pairs and biorthogonality on t in {{0,1/4,1/2,3/4}}: {ok}", ok


def _factorization():
    vs = [factorization_check(t, 48) for t in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))]
    return ", ".join(v.status.value for v in vs), all(v.yes for v in vs)


# -- registry ------------------------------------------------------------------


def _nmc(cid, locus, what, reason, tags=("nmc",)):
    return Claim(cid, locus, what, tags, None, reason)


SUPERCYCLIC = "supercyclicity - out of scope (no finite-section shadow)"
COMPACT = "compactness as such - out of scope; only finite-section shadows are computed"
NP_REASON = "N^p norm not defined in paper"
half = Fraction(1, 2)
L2LOG2 = 2 * math.log(2)


def registry() -> list:
    w_log, w_lin = Weight.log(), Weight.power(1)
    return [
        Claim("TF2-eigen-suite", "Theorem T-Fact 2", "eigenpairs, dual pairs, biorthogonality exact",
              ("eigen",), _eigen_suite),
        Claim("P4.1i-norm-l2-t1", "Prop 4.1(i)", "||C_1||_2 = 2", ("lp", "norm"), _hardy_l2),
        Claim("P4.1i-norm-l3-t1", "Prop 4.1(i)", "||C_1||_3 = 3/2", ("lp", "norm"),
              _norm_contains(Space.lp(3), 1, 1.5)),
        Claim("P4.1i-spectrum-disk-l2", "Prop 4.1(i)", "spectrum is the disk |z - 1| <= 1",
              ("lp", "spectrum"), _disk_l2),
        Claim("P4.1i-not-power-bounded-l2", "Prop 4.1(i)", "C_1 not power bounded on l2",
              ("lp", "ergodic"), _not_power_bounded_l2),
        Claim("P4.1ii-norm-linf-t1", "Prop 4.1(ii)", "||C_1||_inf = 1", ("lp", "norm"),
              _norm_exactly_one(Space.lp(math.inf), 1)),
        _nmc("P4.1-nmc-supercyclic", "Prop 4.1", "C_1 not supercyclic on l^p", SUPERCYCLIC),
        Claim("P4.2i-norm-l1", "Prop 4.2(i)", "||C_1/2||_1 = 2 log 2", ("lp", "norm"),
              _norm_contains(Space.lp(1), half, L2LOG2)),
        Claim("P4.2i-norm-l1-t0", "Prop 4.2(i)", "||C_0||_1 = 1", ("lp", "norm"),
              _norm_contains(Space.lp(1), 0, 1.0)),
        Claim("P4.2i-spectrum-l1", "Prop 4.2(i)", "point spectrum Lambda",
              ("lp", "spectrum"), _all(_spectrum_lambda(half), _eigvecs_in(Space.lp(1), half))),
        Claim("P4.2i-power-bounded-l1", "Prop 4.2(i)", "sup_n ||C_t^n||_1 <= 4",
              ("lp", "ergodic"), _power_bounded(Space.lp(1), half, 64, 1024, 4.0)),
        Claim("P4.2i-ume-l1", "Prop 4.2(i)", "||(C_t)_[256] - P||_1 <= 0.06",
              ("lp", "ergodic"), _mean_ergodic(Space.lp(1), half, 256, 256, 0.06)),
        _nmc("P4.2i-nmc-compact", "Prop 4.2(i)", "C_t compact on l1", COMPACT),
        Claim("P4.2ii-norm-linf", "Prop 4.2(ii)", "||C_t||_inf = 1", ("lp", "norm"),
              _norm_exactly_one(Space.lp(math.inf), Fraction(3, 10))),
        Claim("P4.2ii-ume-linf", "Prop 4.2(ii)", "||(C_t)_[256] - P||_inf <= 0.06",
              ("lp", "ergodic"), _mean_ergodic(Space.lp(math.inf), half, 256, 256, 0.06)),
        Claim("P4.2iii-norm-l2", "Prop 4.2(iii)", "||C_t||_2 <= 2", ("lp", "norm"),
              _norm_upper_at_most(Space.lp(2), half, 2.0)),
        Claim("P4.2iii-spectrum-l2", "Prop 4.2(iii)", "resolvent bounded at lambda = 2",
              ("lp", "spectrum"), lambda: (lambda v: (_fmt(v), max(v) <= 1.1 * min(v)))(
                  [resolvent_probe(2, half, 2 ** k) for k in (10, 12, 14)])),
        Claim("P5.1-norm-c0-t1", "Prop 5.1", "||C_1||_c0 = 1", ("c", "norm"),
              _norm_exactly_one(Space.c0(), 1)),
        Claim("P5.1-norm-c-t1", "Prop 5.1", "||C_1||_c = 1", ("c", "norm"),
              _norm_exactly_one(Space.c(), 1)),
        Claim("P5.1-pt-c-t1", "Prop 5.1", "1 is an eigenvalue in c but not in c0", ("c", "spectrum"),
              _all(_c1_constant_eigenvector(Space.c()), _c0_no_constant)),
        Claim("P5.2-norm-c0", "Prop 5.2", "||C_t||_c0 = 1", ("c", "norm"),
              _norm_exactly_one(Space.c0(), Fraction(9, 10))),
        Claim("P5.2-norm-c", "Prop 5.2", "||C_t||_c = 1", ("c", "norm"),
              _norm_exactly_one(Space.c(), half)),
        Claim("P5.2-spectrum-c0", "Prop 5.2", "x_t^[m] in c0", ("c", "spectrum"),
              _eigvecs_in(Space.c0(), half)),
        _nmc("P5.2-nmc-supercyclic", "Prop 5.2", "C_t not supercyclic on c0 and c", SUPERCYCLIC),
        Claim("P6.1-norm-cs", "Prop 6.1", "||C_1/2||_cs = 2 log 2", ("cs", "norm"),
              _norm_contains(Space.cs(), half, L2LOG2, slack=1e-3)),
        Claim("P6.1-norm-cs-t0", "Prop 6.1", "||C_0||_cs = 1", ("cs", "norm"),
              _norm_contains(Space.cs(), 0, 1.0)),
        Claim("P6.1-nonexist-cs-t1", "Prop 6.1", "C_1 does not exist in cs", ("cs",),
              _nonexistent(Space.cs(), 1)),
        Claim("P6.1-spectrum-cs", "Prop 6.1", "x_t^[m] in cs", ("cs", "spectrum"),
              _eigvecs_in(Space.cs(), half)),
        _nmc("P7.1-nmc-Np", "Prop 7.1", "C_1 on N^p", NP_REASON, ("np", "nmc")),
        _nmc("P7.2-nmc-Np", "Prop 7.2", "||C_t||_{N^p} <= 1/(1-t)", NP_REASON, ("np", "nmc")),
        Claim("P8.1i-norm-ces2-t1", "Prop 8.1(i)", "||C_1||_ces2 = 2", ("ces", "norm"),
              _norm_contains(Space.ces(2), 1, 2.0)),
        Claim("P8.1ii-norm-ces0-t1", "Prop 8.1(ii)", "||C_1||_ces0 = 1", ("ces", "norm"),
              _norm_contains(Space.ces0(), 1, 1.0)),
        Claim("P8.1iii-norm-cesinf-t1", "Prop 8.1(iii)", "||C_1||_cesinf = 1", ("ces", "norm"),
              _all(_norm_contains(Space.ces(math.inf), 1, 1.0),
                   _c1_constant_eigenvector(Space.ces(math.inf)))),
        Claim("P8.2i-norm-ces2", "Prop 8.2(i)", "||C_1/2||_ces2 <= min{2, 2}", ("ces", "norm"),
              _norm_upper_at_most(Space.ces(2), half, 2.0)),
        Claim("P8.2ii-norm-ces0", "Prop 8.2(ii)", "||C_t||_ces0 = 1", ("ces", "norm"),
              _norm_contains(Space.ces0(), half, 1.0)),
        Claim("P8.2iii-norm-cesinf", "Prop 8.2(iii)", "||C_t||_cesinf = 1", ("ces", "norm"),
              _norm_contains(Space.ces(math.inf), half, 1.0)),
        Claim("P9-nonexist-d1-t1", "Prop 9.1", "C_1 does not exist in d1", ("dp",),
              _nonexistent(Space.dp(1), 1)),
        Claim("P9.1i-norm-d1-t0", "Prop 9.1(i)", "||C_0||_d1 = 1", ("dp", "norm"),
              _norm_contains(Space.dp(1), 0, 1.0)),
        Claim("P9.1i-bound-d1", "Prop 9.1(i)", "||C_1/2||_d1 <= 4", ("dp", "norm"),
              _witness_below(Space.dp(1), half, 4.0)),
        Claim("P9.1ii-norm-d2-t0", "Prop 9.1(ii)", "||C_0||_d2 = 1", ("dp", "norm"),
              _norm_contains(Space.dp(2), 0, 1.0)),
        Claim("P9.1ii-bound-d2", "Prop 9.1(ii)", "||C_1/2||_d2 <= min{||xi||_2/(1-t), (1-t)^-3/2}",
              ("dp", "norm"), _witness_below(Space.dp(2), half, min(2 * math.pi / math.sqrt(6), 2 ** 1.5))),
        Claim("P9.1iii-spectrum-d1", "Prop 9.1(iii)", "x_t^[m] in d1", ("dp", "spectrum"),
              _eigvecs_in(Space.dp(1), half)),
        Claim("P10.1-factorization", "Prop 10.1", "C_t = D_phi R_t", ("solid",), _factorization),
        _nmc("C10.2-nmc-supercyclic", "Corollary 10.2", "C_t not supercyclic on solid lattices", SUPERCYCLIC),
        Claim("P11.1i-norm-bv-t1", "Prop 11.1(i)", "||C_1||_bv = 1", ("bv", "norm"),
              _norm_contains(Space.bv(), 1, 1.0)),
        Claim("P11.1i-pt-bv-t1", "Prop 11.1(i)", "1 is an eigenvalue in bv", ("bv", "spectrum"),
              _c1_constant_eigenvector(Space.bv())),
        Claim("P11.1ii-norm-bv0-t1", "Prop 11.1(ii)", "||C_1||_bv0 = 1", ("bv", "norm"),
              _norm_contains(Space.bv0(), 1, 1.0)),
        Claim("P11.2i-norm-bv", "Prop 11.2(i)", "||C_t||_bv = 1 with ||x|| = |lim x| + sum |x_k - x_k+1|",
              ("bv", "norm"), _all(_norm_contains(Space.bvlim(), half, 1.0),
                                   _norm_contains(Space.bvlim(), 0, 1.0))),
        Claim("P11.2i-norm-bv-x0", "Prop 11.2(i)", "||C_t||_bv = 2 with ||x|| = |x_0| + sum |x_k+1 - x_k|",
              ("bv", "norm"), _bv_standard_norm),
        Claim("P11.2ii-norm-bv0", "Prop 11.2(ii)", "||C_t||_bv0 = 1", ("bv", "norm"),
              _norm_contains(Space.bv0(), half, 1.0)),
        Claim("P11.2ii-spectrum-bv0", "Prop 11.2(ii)", "x_t^[m] in bv0", ("bv", "spectrum"),
              _eigvecs_in(Space.bv0(), half)),
        Claim("L11.1-dphi-conjugate", "Lemma 11.1", "T_p D_phi T_p^-1 = A - B", ("bv",), _bvp_dphi),
        Claim("P11.2bvp-shift-isometry", "Prop 11.2 (bv_p)", "S is an isometry of bv_p", ("bv",),
              _bvp_shift_isometry),
        Claim("P11.2bvp-spectrum", "Prop 11.2 (bv_p)", "x_t^[m] in bv_2", ("bv", "spectrum"),
              _eigvecs_in(Space.bvp(2), half)),
        _nmc("P11.2-nmc-compact", "Prop 11.2", "C_t compact on bv and bv0", COMPACT),
        Claim("P12.1-exist-log-t1", "Prop 12.1", "C_1 exists on h_d for d = log(n+3)", ("hahn",),
              _verdict_is(lambda: hahn.existence_test(w_log, 1).verdict, Status.YES)),
        Claim("P12.1-norm-h-power", "Prop 12.1", "C_1/2 bounded on h_d for d = n+1", ("hahn", "norm"),
              _hahn_norm_finite(w_lin, half)),
        Claim("PN12.1-shift-bound", "Prop PN.12.1", "||S^{m+1}|| <= d_m + d_{m+1}/d_0", ("hahn",), _shift_bounds),
        Claim("P12.4-rt-power", "Prop 12.4", "R_t converges for d = (n+1)^3, t = 0.9", ("hahn",),
              _verdict_is(lambda: hahn.rt_convergence_check(Weight.power(3), Fraction(9, 10)), Status.YES)),
        Claim("T12.5-eigvec-hahn-log", "Theorem 12.5", "x_t^[m] in h_d for d = log(n+3)", ("hahn", "spectrum"),
              _eigvecs_in(Space.hahn(w_log), half, m_max=3)),
        Claim("T12.5-norm-h-log", "Theorem 12.5", "C_t bounded on h_d for d = log(n+3)", ("hahn", "norm"),
              _hahn_norm_finite(w_log, Fraction(9, 10))),
        _nmc("T12.5-nmc-compact", "Theorem 12.5", "C_t compact on h_d", COMPACT, ("nmc",)),
        Claim("Ex12.6i-nonexist-n1-t1", "Example 12.6(i)", "C_1 does not exist in h_d for d = n+1", ("hahn",),
              _verdict_is(lambda: hahn.existence_test(w_lin, 1).verdict, Status.NO)),
        Claim("Ex12.6i-ratio-power", "Example 12.6(i)", "hypotheses hold for d = (n+1)^r", ("hahn",),
              _verdict_is(lambda: hahn.ratio_conditions_check(Weight.power(2)), Status.YES)),
        Claim("Ex12.6ii-ratio-log", "Example 12.6(ii)", "hypotheses hold for d = log(n+3)", ("hahn",),
              _verdict_is(lambda: hahn.ratio_conditions_check(w_log), Status.YES)),
        Claim("PNuova12i-exist-log-t1", "Prop P.Nuova_12(i)", "C_1 in L(h_d) for d = log(n+3)", ("hahn",),
              _verdict_is(lambda: hahn.existence_test(w_log, 1, M=32, N=2 ** 14).verdict, Status.YES)),
        Claim("PNuova12iii-dual-c1", "Prop P.Nuova_12(iii)", "dual eigenvectors of C_1 in l1", ("hahn", "spectrum"),
              _dual_c1),
        Claim("L12.7-consistency", "Lemma 12.7", "existence and nonexistence tests never conflict", ("hahn",),
              _hahn_consistency),
        Claim("Ex12.8i-threshold", "Example 12.8(i)", "d = 2^n: C_t exists iff t < 1/2", ("hahn",),
              _geometric_threshold),
        Claim("Ex12.8i-rt-geometric", "Example 12.8(i)", "d = 2^n: R_t converges iff t < 1/2", ("hahn",),
              _rt_geometric),
        Claim("Ex12.8i-ratio-geometric", "Example 12.8(i)", "d_{k+1}/d_k does not decrease to 1", ("hahn",),
              _verdict_is(lambda: hahn.ratio_conditions_check(Weight.geometric(2)), Status.NO)),
        Claim("Ex12.8i-shift-geometric", "Example 12.8(i)", "||S^3|| <= 4 + 8 = 12 for d = 2^n", ("hahn",),
              lambda: (lambda v: (_fmt(v), v == 12))(hahn.shift_norm_bound(Weight.geometric(2), 2).value)),
        Claim("Ex12.8ii-factorial", "Example 12.8(ii)", "C_1/2 does not exist for d = (n+1)!", ("hahn",),
              _verdict_is(lambda: hahn.nonexistence_test(Weight.factorial(), half), Status.NO)),
        Claim("Ex12.8iii-superpower", "Example 12.8(iii)", "C_0.3 does not exist for d = (n+1)^(n+1)", ("hahn",),
              _verdict_is(lambda: hahn.nonexistence_test(Weight.superpower(), Fraction(3, 10)), Status.NO)),
    ]


def select(claims: list, flt: Optional[str]) -> list:
    """Claims whose id contains ``flt`` or that carry ``flt`` as a tag."""
    if not flt:
        return list(claims)
    f = flt.lower()
    return [c for c in claims if f in c.claim_id.lower() or f in c.tags]


def evaluate(claim: Claim) -> ClaimRow:
    if claim.check is None:
        return ClaimRow(claim.claim_id, claim.locus, "", claim.expected, ClaimStatus.NMC, claim.reason)
    try:
        computed, passed = claim.check()
    except Exception as exc:  # a crashing check is a failed claim, reported with its message
        return ClaimRow(claim.claim_id, claim.locus, f"error: {exc}", claim.expected, ClaimStatus.FAIL)
    status = ClaimStatus.PASS if passed else ClaimStatus.FAIL
    return ClaimRow(claim.claim_id, claim.locus, computed, claim.expected, status)


def run_claims(flt: Optional[str] = None, threads: Optional[int] = None) -> list:
    """Evaluate the registry; rows come back sorted by claim id."""
    claims = select(registry(), flt)
    if threads is None:
        threads = int(os.environ.get("CESLAB_THREADS", "1"))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(evaluate, claims))
    else:
        rows = [evaluate(c) for c in claims]
    return sorted(rows, key=lambda r: r.claim_id)
