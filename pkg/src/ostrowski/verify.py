"""Empirical verification of the boundedness results and their supporting identities.

Each check evaluates one statement over an explicit window and reports the
observed extremal ratio against a cap.  The underlying theorems prove
boundedness with nonconstructive constants, so the caps are regression
constants: fixed once from an oracle run, versioned with the suite, and
deliberately left with headroom.  A cap failure therefore signals a code
regression (or a genuinely new extremal configuration), never a tuned fit.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import log, pi

import numpy as np

from .accumulate import ComplexNeumaier, Neumaier
from .alpha import PHI, SQRT2, SQRT3, AlphaSpec, SurdValue
from .discrepancy import KHReport, MinDistTracker, kh_lemma_check
from .errors import BudgetExceeded, DomainError, InsufficientQuotients
from .sums import FracCache, as_continued_fraction, t_sum_closed

#: the standard alpha suite: three quadratic classics, one declared-periodic
#: spec (exercises the tail-to-surd path), and two stress specs whose heads
#: drive the a_{n+1} division in the theorem envelope
SUITE: dict[str, AlphaSpec] = {
    "phi": PHI,
    "sqrt2": SQRT2,
    "sqrt3": SQRT3,
    "per": AlphaSpec.quotients([0], period=[1, 2]),
    "stress1": AlphaSpec.quotients(list(range(46))),
    "stress2": AlphaSpec.quotients([0, 1, 1, 1, 1_000_000], period=[1]),
}

#: denominators above this need an explicit budget override
DEFAULT_SUM_BUDGET = 2_000_000

#: hard ceiling for sampled prefix streams (the fractional-part cache is
#: an 8-byte-per-term array, so this is a memory bound, not a time bound)
STREAM_LIMIT = 8_000_000

# Caps.  THEOREM_CAP is part of the acceptance contract; the others were
# fixed from one oracle sweep of this suite and are intentionally ~2x the
# observed maxima (recorded alongside each constant).
THEOREM_CAP = 20.0
SINAI_CAP = 3.0  # observed max |T_{q_n}| = 1.4762 (sqrt3, n=22, q_n within 2e6)
HL_CAP = 1.5  # observed max |S''_M| = 0.6847 (sqrt3, M <= 2e5); phi peaks at 0.5491
LEMMA_OST_CAP = 3.0  # observed max ratio = 1.3223 (sqrt3, n=14); stress specs stay below 1

_CHUNK = 1 << 16


@dataclass(frozen=True)
class BoundRow:
    """One level of a |T_{q_n}| scan; skipped rows exceeded the term budget."""

    n: int
    a_n: int
    q_n: int
    t_value: complex | None
    abs_t: float | None
    bound: float
    ratio: float | None
    skipped: bool = False


@dataclass(frozen=True)
class BoundReport:
    alpha_id: str
    kind: str  # "theorem" or "sinai"
    cap: float
    budget: int
    rows: tuple[BoundRow, ...]
    max_ratio: float
    verdict: bool

    @property
    def skipped_levels(self) -> tuple[int, ...]:
        return tuple(r.n for r in self.rows if r.skipped)


@dataclass(frozen=True)
class HLScanReport:
    alpha_id: str
    M_max: int
    max_abs: float
    argmax_M: int
    cap: float
    verdict: bool
    samples: tuple[tuple[int, float], ...]


@dataclass(frozen=True)
class LemmaOstReport:
    alpha_id: str
    n: int
    q_n: int
    denom: float
    max_abs: float
    argmax_m: int
    ratio: float
    cap: float
    verdict: bool
    exhaustive: bool
    samples: tuple[tuple[int, float], ...]


@dataclass(frozen=True)
class OuterTermReport:
    """The three-link chain |1 - e(q_n psi_n)| <= 2 pi ||q_n alpha|| < 2 pi / q_{n+1}."""

    n: int
    q_n: int
    q_next: int
    theta: float  # q_n * psi_n
    chord: float  # |1 - e(theta)|
    arc_bound: float  # 2 pi |theta|
    next_bound: float  # 2 pi / q_{n+1}
    chord_arc_ok: bool
    dist_identity_ok: bool  # |theta| agrees with ||q_n alpha||
    best_approx_ok: bool  # |xi_n| < 1, exact where the backend allows
    exact: bool

    @property
    def all_ok(self) -> bool:
        return self.chord_arc_ok and self.dist_identity_ok and self.best_approx_ok


@dataclass(frozen=True)
class GrowthProbe:
    """Diagnostic only: the segment-sum scale 1/{{(c+1) q_i alpha}} near a large digit."""

    i: int
    C: int
    value: float
    ratio: float  # |value| / (q_{i+1} ln(C+1)); no assertion attached
    terms: tuple[float, ...]


# ---------------------------------------------------------------------------
# |T_{q_n}| scans
# ---------------------------------------------------------------------------


def _t_scan(cf, n_max: int, budget: int, bound_fn) -> tuple[tuple[BoundRow, ...], float]:
    if n_max < 0:
        raise DomainError(f"n_max={n_max} must be >= 0")
    cache = FracCache(cf)
    rows = []
    max_ratio = 0.0
    max_a = 1
    for n in range(n_max + 1):
        q_n = cf.q(n)
        a_n = cf.quotient(n)
        if n >= 1:
            max_a = max(max_a, a_n)
        bound = bound_fn(n, max_a)
        if q_n > budget:
            rows.append(BoundRow(n, a_n, q_n, None, None, bound, None, skipped=True))
            continue
        rep = t_sum_closed(cf, q_n, cache=cache)
        abs_t = abs(rep.T)
        ratio = abs_t / bound
        max_ratio = max(max_ratio, ratio)
        rows.append(BoundRow(n, a_n, q_n, rep.T, abs_t, bound, ratio))
    return tuple(rows), max_ratio


def theorem_envelope(cf, n: int, max_a: int | None = None) -> float:
    """B_n = max{ln(2 max_{1<=i<=n} a_i) / a_{n+1}, 1}; B_0 = 1 (empty max)."""
    if n == 0:
        return 1.0
    if max_a is None:
        max_a = max(cf.quotients(n)[1:])
    return max(log(2.0 * max_a) / cf.quotient(n + 1), 1.0)


def theorem_bound_check(
    alpha, n_max: int, cap: float = THEOREM_CAP, budget: int = DEFAULT_SUM_BUDGET
) -> BoundReport:
    """ratio rho_n = |T_{q_n}| / B_n for n = 0..n_max (levels over budget are skipped)."""
    cf = as_continued_fraction(alpha)
    rows, max_ratio = _t_scan(cf, n_max, budget, lambda n, ma: theorem_envelope(cf, n, ma))
    return BoundReport(
        alpha_id=cf.alpha_id, kind="theorem", cap=cap, budget=budget,
        rows=rows, max_ratio=max_ratio, verdict=max_ratio <= cap,
    )


def sinai_ulcigrai_check(
    alpha, n_max: int, cap: float = SINAI_CAP, budget: int = DEFAULT_SUM_BUDGET
) -> BoundReport:
    """|T_{q_n}| itself against a flat cap (sensible for bounded partial quotients)."""
    cf = as_continued_fraction(alpha)
    rows, max_ratio = _t_scan(cf, n_max, budget, lambda n, ma: 1.0)
    return BoundReport(
        alpha_id=cf.alpha_id, kind="sinai", cap=cap, budget=budget,
        rows=rows, max_ratio=max_ratio, verdict=max_ratio <= cap,
    )


def lemma_new_scan(alpha, budget: int = DEFAULT_SUM_BUDGET) -> tuple[KHReport, ...]:
    """kh_lemma_check at every level with q_n within budget, sharing one scan state."""
    cf = as_continued_fraction(alpha)
    cache = FracCache(cf)
    tracker = MinDistTracker(cf)  # InsufficientPrecision for finite heads
    reports = []
    n = 1
    while True:
        try:
            if cf.q(n) > budget:
                break
        except InsufficientQuotients:
            break
        reports.append(kh_lemma_check(cf, n, budget=budget, cache=cache, tracker=tracker))
        n += 1
    return tuple(reports)


# ---------------------------------------------------------------------------
# Hardy-Littlewood scan
# ---------------------------------------------------------------------------


def hardy_littlewood_scan(alpha, M_max: int, cap: float = HL_CAP) -> HLScanReport:
    """max over 1 <= M <= M_max of |S''_M|, evaluated incrementally in O(M_max).

    S''_M has real part -(M-1)/(2M) by construction, so |S''_M| =
    hypot(M-1, P_{M-1}) / (2M) with P_m the running cotangent sum; one pass
    over m yields every M.
    """
    cf = as_continued_fraction(alpha)
    if M_max < 1:
        raise DomainError(f"M_max={M_max} must be >= 1")
    cache = FracCache(cf)
    acc = Neumaier()
    best, best_m = 0.0, 0  # M = m + 1; M=1 gives the empty sum, |S''_1| = 0
    stride = max(1, M_max // 512)
    samples = [(1, 0.0)]
    lo = 1
    while lo < M_max:
        hi = min(lo + _CHUNK, M_max)
        t = cache.window(lo, hi)
        cots = np.cos(np.pi * t) / np.sin(np.pi * t)
        prefix = acc.value + np.cumsum(cots)
        ms = np.arange(lo, hi, dtype=np.float64)
        vals = np.hypot(ms, prefix) / (2.0 * (ms + 1.0))
        j = int(np.argmax(vals))
        if float(vals[j]) > best:
            best, best_m = float(vals[j]), lo + j
        # sample grid: M = stride, 2*stride, ..., plus M_max itself
        first_m = lo + ((stride - 1 - lo) % stride)  # smallest m >= lo with m+1 = 0 mod stride
        for m in range(first_m, hi, stride):
            samples.append((m + 1, float(vals[m - lo])))
        if hi == M_max and samples[-1][0] != M_max:
            samples.append((M_max, float(vals[-1])))
        acc.add(float(cots.sum()))
        lo = hi
    return HLScanReport(
        alpha_id=cf.alpha_id, M_max=M_max, max_abs=best, argmax_M=best_m + 1,
        cap=cap, verdict=best <= cap, samples=tuple(samples),
    )


# ---------------------------------------------------------------------------
# Lemma "ost" scan
# ---------------------------------------------------------------------------


def lemma_ost_check(
    alpha,
    n: int,
    cap: float = LEMMA_OST_CAP,
    sample_ms=None,
    budget: int = DEFAULT_SUM_BUDGET,
) -> LemmaOstReport:
    """sup_{m <= q_n - 1} |sum_{k<=m} 1/{{k alpha}}| against q_n max_i max(1, ln a_i).

    Exhaustive (every prefix) when q_n - 1 fits the budget; otherwise the
    caller must pass sample_ms, and the scan still streams every term up to
    max(sample_ms) so the recorded prefixes are exact partial sums.
    """
    cf = as_continued_fraction(alpha)
    if n < 1:
        raise DomainError(f"n={n} must be >= 1")
    q_n = cf.q(n)
    denom = q_n * max(max(1.0, log(a)) for a in cf.quotients(n)[1:])
    if sample_ms is None:
        if q_n - 1 > budget:
            raise BudgetExceeded(
                f"exhaustive scan of q_{n}-1={q_n - 1} prefixes exceeds budget "
                f"{budget}; pass sample_ms or raise the budget"
            )
        targets = None
        m_top = q_n - 1
    else:
        targets = sorted(set(int(m) for m in sample_ms))
        if not targets or targets[0] < 1 or targets[-1] > q_n - 1:
            raise DomainError("sample_ms must be nonempty with 1 <= m <= q_n - 1")
        if targets[-1] > STREAM_LIMIT:
            raise BudgetExceeded(
                f"largest sample m={targets[-1]} exceeds the stream limit {STREAM_LIMIT}"
            )
        m_top = targets[-1]
    if m_top == 0:  # q_n = 1: empty statement
        return LemmaOstReport(
            alpha_id=cf.alpha_id, n=n, q_n=1, denom=denom, max_abs=0.0, argmax_m=0,
            ratio=0.0, cap=cap, verdict=True, exhaustive=True, samples=(),
        )
    cache = FracCache(cf)
    acc = Neumaier()
    best, best_m = -1.0, 0
    stride = max(1, m_top // 512)
    samples = []
    ti = 0
    lo = 1
    while lo <= m_top:
        hi = min(lo + _CHUNK, m_top + 1)
        terms = 1.0 / cache.window(lo, hi)
        prefix = acc.value + np.cumsum(terms)
        ap = np.abs(prefix)
        if targets is None:
            j = int(np.argmax(ap))
            if float(ap[j]) > best:
                best, best_m = float(ap[j]), lo + j
            for m in range(lo + ((stride - lo % stride) % stride), hi, stride):
                samples.append((m, float(prefix[m - lo])))
        else:
            while ti < len(targets) and targets[ti] < hi:
                m = targets[ti]
                v = float(ap[m - lo])
                if v > best:
                    best, best_m = v, m
                samples.append((m, float(prefix[m - lo])))
                ti += 1
        acc.add(float(terms.sum()))
        lo = hi
    if targets is None and (not samples or samples[-1][0] != m_top):
        samples.append((m_top, acc.value))
    return LemmaOstReport(
        alpha_id=cf.alpha_id, n=n, q_n=q_n, denom=denom, max_abs=best,
        argmax_m=best_m, ratio=best / denom, cap=cap, verdict=best / denom <= cap,
        exhaustive=targets is None, samples=tuple(samples),
    )


# ---------------------------------------------------------------------------
# telescoping identity
# ---------------------------------------------------------------------------


def _telescope_parts(alpha, M: int, budget: int):
    cf = as_continued_fraction(alpha)
    if M < 2:
        raise DomainError(f"M={M} must be >= 2")
    if M > budget:
        raise BudgetExceeded(f"M={M} exceeds budget {budget}")
    cache = FracCache(cf)
    acc_l = ComplexNeumaier()
    acc_r1 = ComplexNeumaier()
    acc_p = ComplexNeumaier()
    w_last = 0j
    lo = 1
    while lo < M:
        hi = min(lo + _CHUNK, M)
        t = cache.window(lo, hi)
        inv = -0.5 - 0.5j * (np.cos(np.pi * t) / np.sin(np.pi * t))
        # phases e(M m alpha) for m = lo..hi, one lookahead for the pairing
        u = np.empty(hi - lo + 1, dtype=np.float64)
        for j in range(hi - lo + 1):
            u[j] = cf.signed_frac_float(M * (lo + j))
        w = np.exp((2j * np.pi) * u)
        prefix = acc_p.value + np.cumsum(inv)
        acc_l.add(complex((w[:-1] * inv).sum()))
        acc_r1.add(complex(((w[:-1] - w[1:]) * prefix).sum()))
        acc_p.add(complex(inv.sum()))
        w_last = complex(w[-1])
        lo = hi
    lhs = acc_l.value
    rhs = acc_r1.value + w_last * acc_p.value  # w_last = e(M^2 alpha)
    residual = abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))
    return lhs, rhs, residual


def telescope_check(alpha, M: int, budget: int = DEFAULT_SUM_BUDGET) -> float:
    """Relative residual of the Abel-summation identity

    sum_{m<M} e(Mm alpha)/(e(m alpha)-1)
      = sum_{m<M} (e(Mm alpha) - e(M(m+1) alpha)) P_m + e(M^2 alpha) P_{M-1},

    P_m = sum_{k<=m} 1/(e(k alpha)-1).  Exact algebra, so the residual is
    pure float noise.
    """
    return _telescope_parts(alpha, M, budget)[2]


# ---------------------------------------------------------------------------
# outer-term chain and the growth probe
# ---------------------------------------------------------------------------


def outer_term_check(alpha, n: int) -> OuterTermReport:
    """|1 - e(q_n psi_n)| = 2|sin(pi theta)| <= 2 pi ||theta|| = 2 pi ||q_n alpha|| < 2 pi / q_{n+1}.

    ||theta|| equals |theta| for every n >= 1; the distinction only matters
    in the n=0, a_1=1 corner where |psi_0| > 1/2.
    """
    cf = as_continued_fraction(alpha)
    ce = cf.convergent_error(n)
    q_n, q_next = cf.q(n), cf.q(n + 1)
    theta = ce.xi_approx / q_next  # q_n psi_n = xi_n / q_{n+1}
    dist = min(abs(theta), 1.0 - abs(theta))  # ||q_n alpha||, since |theta| < 1
    chord = 2.0 * abs(np.sin(pi * theta))
    arc_bound = 2.0 * pi * dist
    next_bound = 2.0 * pi / q_next
    measured = abs(cf.signed_frac_float(q_n))  # ||q_n alpha|| measured independently
    dist_ok = abs(dist - measured) <= 1e-12 * measured
    exact = isinstance(ce.xi, SurdValue)
    if exact:
        # |xi_n| < 1 forces ||q_n alpha|| < 1/q_{n+1} (trivially when q_{n+1}=1)
        best_ok = abs(ce.xi) < SurdValue(1)
    else:
        lo, hi = ce.xi
        best_ok = max(abs(lo), abs(hi)) < 1
    return OuterTermReport(
        n=n, q_n=q_n, q_next=q_next, theta=theta, chord=chord,
        arc_bound=arc_bound, next_bound=next_bound,
        chord_arc_ok=chord <= arc_bound * (1 + 1e-12),
        dist_identity_ok=dist_ok,
        best_approx_ok=best_ok and arc_bound < next_bound,
        exact=exact,
    )


def growth_probe(alpha, i: int, C: int | None = None) -> GrowthProbe:
    """sum_{c=0}^{C-1} 1/{{(c+1) q_i alpha}} and its ratio to q_{i+1} ln(C+1).

    Diagnostic only: the multiples of q_i are the terms a single segment
    family contributes, and their sum scales like q_{i+1} log C when the
    next digit is large.  No assertion is attached.
    """
    cf = as_continued_fraction(alpha)
    if i < 0:
        raise DomainError(f"i={i} must be >= 0")
    a_next = cf.quotient(i + 1)
    if C is None:
        C = a_next
    if not 1 <= C <= a_next:
        raise DomainError(f"C={C} outside 1..a_{i + 1}={a_next}; (C+1) q_i must stay below q_{i + 1}")
    q_i, q_next = cf.q(i), cf.q(i + 1)
    acc = Neumaier()
    terms = []
    for c in range(C):
        v = 1.0 / cf.signed_frac_float((c + 1) * q_i)
        acc.add(v)
        if len(terms) < 256:
            terms.append(v)
    ratio = abs(acc.value) / (q_next * log(C + 1.0))
    return GrowthProbe(i=i, C=C, value=acc.value, ratio=ratio, terms=tuple(terms))
