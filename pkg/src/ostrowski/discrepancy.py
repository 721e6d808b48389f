"""Exact discrepancy of {m alpha} point sets and the Koksma-Hlawka chain.

D_N = sup over circular arcs I (all endpoint topologies) of
|#{m <= N : {m alpha} in I} - N |I||.  For a finite point multiset the sup is
attained on arcs whose endpoints are sample points, in one of two families
over the sorted points y_1 <= ... <= y_N:

  closed arcs  [y_i, y_j], i <= j:  (j - i + 1) - N (y_j - y_i)   (overfull)
  open arcs    (y_i, y_j), i < j:   N (y_j - y_i) - (j - i - 1)   (underfull)

Arcs wrapping through 0 are covered by complementation (an arc and its
complement have the same counting defect), and degenerate single-point arcs
force D_N >= 1.  The scan runs in floats first, then every near-maximal
candidate class is re-evaluated in exact field arithmetic, so the returned
maximum and every comparison against it are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .alpha import SurdValue
from .errors import BudgetExceeded, DomainError, InsufficientPrecision
from .sums import FracCache, as_continued_fraction, recip_sum_report

DEFAULT_DISCREPANCY_BUDGET = 8192
DEFAULT_MIN_SCAN_BUDGET = 2_000_000

# float candidate values are trusted only to this margin; anything closer to
# the float maximum goes through exact re-evaluation
_REL_EPS = 2.0**-40


@dataclass(frozen=True)
class DiscrepancyReport:
    """Exact discrepancy and/or its Harman-type upper bound for one N.

    discrepancy_exact fills D_exact (keeping an exact handle for
    comparisons); harman_bound fills harman_bound and t_coeffs.  exact_value
    is a SurdValue; use exact_at_most for certified comparisons.
    """

    N: int
    D_exact: float | None = None
    harman_bound: float | None = None
    t_coeffs: tuple[int, ...] | None = None
    exact_value: object | None = None

    def exact_at_most(self, bound) -> bool:
        if self.exact_value is None:
            raise ValueError("no exact discrepancy handle on this report")
        return self.exact_value <= SurdValue(Fraction(bound))


@dataclass(frozen=True)
class KHReport:
    """One level of the Koksma-Hlawka chain for f(x) = 1/{{x}}.

    min_dist is the exact minimum of ||m alpha|| over 1 <= m <= q_n - 1
    (None when q_n = 1 and the range is empty); dist_ok certifies
    min_dist > 1/(2 q_n) exactly.  variation = 4 q_n, bound = 16 q_n.
    """

    n: int
    q_n: int
    min_dist: float | None
    variation: float
    sum_value: float
    bound: float
    ratio: float
    dist_ok: bool
    sum_ok: bool


class MinDistTracker:
    """Running exact argmin of ||m alpha|| over a growing prefix of m.

    Floats prefilter; any candidate within 2^-40 of the current best is
    resolved by exact comparison, so best_m and the exact minimum are never
    float-dependent.  Requires a surd-backed alpha.
    """

    def __init__(self, cf):
        if cf.exact_kind != "surd":
            raise InsufficientPrecision(
                "exact minimum needs field arithmetic; declare a surd or periodic alpha"
            )
        self.cf = cf
        self.m_done = 0
        self.best_m = 0
        self.best_f = float("inf")
        self._best_exact = None

    def _set_best(self, m: int, fv: float, exact=None) -> None:
        self.best_m = m
        self.best_f = fv
        self._best_exact = abs(self.cf.signed_frac_exact(m)) if exact is None else exact

    def extend(self, limit: int, cache: FracCache) -> None:
        while self.m_done < limit:
            hi = min(self.m_done + (1 << 16), limit)
            f = np.abs(cache.window(self.m_done + 1, hi + 1))
            if self.best_f == float("inf"):
                idx = range(f.size)
            else:
                idx = np.nonzero(f <= self.best_f * (1 + _REL_EPS))[0]
            for j in idx:
                fv = float(f[j])
                if fv > self.best_f * (1 + _REL_EPS):
                    continue  # the best moved within this chunk
                m = self.m_done + 1 + int(j)
                if fv < self.best_f * (1 - _REL_EPS) or self._best_exact is None:
                    self._set_best(m, fv)
                else:
                    cand = abs(self.cf.signed_frac_exact(m))
                    if cand < self._best_exact:
                        self._set_best(m, fv, cand)
            self.m_done = hi

    @property
    def exact_min(self):
        return self._best_exact

    def min_exceeds(self, threshold: Fraction) -> bool:
        """Exact check: min ||m alpha|| > threshold."""
        if self._best_exact is None:
            raise ValueError("tracker has seen no m yet")
        return self._best_exact > SurdValue(threshold)


# ---------------------------------------------------------------------------
# exact discrepancy
# ---------------------------------------------------------------------------


def _family_scan(y: np.ndarray, ms: np.ndarray, N: int):
    """Float pass + near-max candidate classes for both arc families.

    Returns (float_max, classes) where classes is a set of
    (family, count, m_hi, m_lo) with family "A" (closed) or "B" (open).
    Classes with equal (family, count, m_hi - m_lo) have equal exact value,
    so only one representative per (family, count, dm) is kept.
    """
    js = np.arange(N, dtype=np.float64)
    # family A: (j+1) - N y_j + max_{i<=j} (N y_i - i)
    gain = N * y - js
    u = np.maximum.accumulate(gain)
    rows_a = (js + 1) - N * y + u
    a_max = float(rows_a.max())
    # family B: N y_j - j + max_{i<j} (i + 1 - N y_i)
    loss = js + 1 - N * y
    v = np.maximum.accumulate(loss)
    rows_b = np.full(N, -np.inf)
    if N > 1:
        rows_b[1:] = N * y[1:] - js[1:] + v[:-1]
    b_max = float(rows_b.max()) if N > 1 else -np.inf
    fmax = max(1.0, a_max, b_max)
    tol = max(1e-9, 8 * N * 2.0**-50)
    classes: dict[tuple, tuple] = {}
    idx_a = np.nonzero(rows_a >= a_max - tol)[0] if a_max >= fmax - tol else ()
    for j in idx_a:
        vals = (float(j) + 1 - js[: j + 1]) - N * (y[j] - y[: j + 1])
        for i in np.nonzero(vals >= fmax - tol)[0]:
            cnt = int(j - i + 1)
            key = ("A", cnt, int(ms[j]) - int(ms[i]))
            classes.setdefault(key, ("A", cnt, int(ms[j]), int(ms[i])))
    idx_b = np.nonzero(rows_b >= b_max - tol)[0] if b_max >= fmax - tol else ()
    for j in idx_b:
        vals = N * (y[j] - y[:j]) - (float(j) - js[:j] - 1)
        for i in np.nonzero(vals >= fmax - tol)[0]:
            cnt = int(j - i - 1)
            key = ("B", cnt, int(ms[j]) - int(ms[i]))
            classes.setdefault(key, ("B", cnt, int(ms[j]), int(ms[i])))
    return fmax, classes.values()


def discrepancy_exact(alpha, N: int, budget: int = DEFAULT_DISCREPANCY_BUDGET) -> DiscrepancyReport:
    """Exact unnormalized D_N of {m alpha}, m = 1..N."""
    cf = as_continued_fraction(alpha)
    if N < 1:
        raise DomainError(f"N={N} must be >= 1")
    if N > budget:
        raise BudgetExceeded(
            f"N={N} exceeds the O(N^2) discrepancy budget {budget}; raise the budget to force"
        )
    if cf.exact_kind != "surd":
        raise InsufficientPrecision(
            "exact discrepancy needs field arithmetic; declare a surd or periodic alpha"
        )
    cache = FracCache(cf)
    t = cache.window(1, N + 1)
    u = np.where(t > 0, t, t + 1.0)  # {m alpha} in (0, 1)
    order = np.argsort(u, kind="stable")
    y = u[order]
    ms = order + 1  # original multiplier of each sorted point
    _fmax, classes = _family_scan(y, ms, N)
    best = SurdValue(1)  # degenerate single-point arcs
    for fam, cnt, m_hi, m_lo in classes:
        d = cf.frac01_exact(m_hi) - cf.frac01_exact(m_lo)
        val = (cnt - N * d) if fam == "A" else (N * d - cnt)
        if val > best:
            best = val
    return DiscrepancyReport(N=N, D_exact=best.to_float(), exact_value=best)


def discrepancy_brute_rational(points) -> Fraction:
    """Brute-force oracle over rational points: every arc pair, both families.

    O(N^2) pure Fraction arithmetic; for tests and synthetic configurations
    (e.g. equally spaced points, which tie on every pair).
    """
    y = sorted(Fraction(p) for p in points)
    if not y:
        raise DomainError("need at least one point")
    N = len(y)
    best = Fraction(1)
    for j in range(N):
        for i in range(j + 1):
            d = y[j] - y[i]
            best = max(best, (j - i + 1) - N * d)
            if i < j:
                best = max(best, N * d - (j - i - 1))
    return best


# ---------------------------------------------------------------------------
# Harman-type bound
# ---------------------------------------------------------------------------


def harman_bound(alpha, N: int) -> DiscrepancyReport:
    """D_N <= 3 sum t_j for the greedy decomposition N = sum t_j q_j."""
    cf = as_continued_fraction(alpha)
    if N < 1:
        raise DomainError(f"N={N} must be >= 1")
    ox = cf.ostrowski_expand(N)
    return DiscrepancyReport(
        N=N,
        harman_bound=3.0 * sum(ox.coeffs),
        t_coeffs=ox.coeffs,
    )


# ---------------------------------------------------------------------------
# Koksma-Hlawka chain
# ---------------------------------------------------------------------------


def kh_lemma_check(
    alpha,
    n: int,
    budget: int = DEFAULT_MIN_SCAN_BUDGET,
    cache: FracCache | None = None,
    tracker: MinDistTracker | None = None,
) -> KHReport:
    """Verify the explicit-constant chain at level n.

    min ||m alpha|| > 1/(2 q_n) over m <= q_n - 1 (exact), V(f) = 4 q_n,
    |sum 1/{{m alpha}}| <= 16 q_n.  Scans over many n can share cache and
    tracker so each m is visited once.
    """
    cf = as_continued_fraction(alpha)
    if n < 1:
        raise DomainError(f"n={n} must be >= 1")
    q_n = cf.q(n)
    if q_n > budget:
        raise BudgetExceeded(f"q_{n}={q_n} exceeds the scan budget {budget}")
    if cache is None:
        cache = FracCache(cf)
    if q_n == 1:
        return KHReport(
            n=n, q_n=1, min_dist=None, variation=4.0, sum_value=0.0,
            bound=16.0, ratio=0.0, dist_ok=True, sum_ok=True,
        )
    if tracker is None:
        tracker = MinDistTracker(cf)
    tracker.extend(q_n - 1, cache)
    dist_ok = tracker.min_exceeds(Fraction(1, 2 * q_n))
    rep = recip_sum_report(cf, q_n - 1, cache=cache)
    ratio = abs(rep.value) / q_n
    return KHReport(
        n=n,
        q_n=q_n,
        min_dist=tracker.best_f,
        variation=4.0 * q_n,
        sum_value=rep.value,
        bound=16.0 * q_n,
        ratio=ratio,
        dist_ok=dist_ok,
        sum_ok=abs(rep.value) <= 16.0 * q_n,
    )
