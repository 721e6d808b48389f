"""Double exponential sums T_M and their closed forms.

T_M = (1/M) sum_{m=0}^{M-1} sum_{n=0}^{M-1} e(n m alpha), e(x) = exp(2 pi i x).

The geometric inner sum gives T_M = 1 + S1 - S2 with

  S1 = (1/M) sum_{m=1}^{M-1} e(M m alpha) / (e(m alpha) - 1)
  S2 = (1/M) sum_{m=1}^{M-1} 1 / (e(m alpha) - 1)

and 1/(e(t) - 1) = -1/2 - (i/2) cot(pi t), which is how S2 reduces to a
cotangent sum.  Every trigonometric argument is reduced through the exact
signed fractional part before evaluation; raw m*alpha in floats would be
meaningless for large m.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .accumulate import ComplexNeumaier, Neumaier
from .alpha import AlphaSpec, ContinuedFraction
from .errors import DegenerateDenominator, DomainError

_CHUNK = 1 << 16


def as_continued_fraction(alpha) -> ContinuedFraction:
    if isinstance(alpha, ContinuedFraction):
        return alpha
    if isinstance(alpha, AlphaSpec):
        return ContinuedFraction(alpha)
    raise TypeError(f"expected AlphaSpec or ContinuedFraction, got {type(alpha).__name__}")


class FracCache:
    """Grow-on-demand array of certified {{m*alpha}} floats, m = 1..len.

    Scans and sums over many prefixes of the same alpha share one cache so
    each exact reduction is paid once.
    """

    def __init__(self, cf: ContinuedFraction):
        self.cf = cf
        self._buf = np.empty(0, dtype=np.float64)
        self._filled = 0

    def ensure(self, n: int) -> None:
        if n <= self._filled:
            return
        if n > self._buf.size:
            new = np.empty(max(n, 2 * self._buf.size, _CHUNK), dtype=np.float64)
            new[: self._filled] = self._buf[: self._filled]
            self._buf = new
        sf = self.cf.signed_frac_float
        buf = self._buf
        for m in range(self._filled + 1, n + 1):
            buf[m - 1] = sf(m)
        self._filled = n

    def window(self, lo: int, hi: int) -> np.ndarray:
        """Read-only view of t_m for m in [lo, hi)."""
        self.ensure(hi - 1)
        return self._buf[lo - 1 : hi - 1]


@dataclass(frozen=True)
class SumReport:
    """One evaluation of T_M with its split parts.

    max_term_magnitude is the largest |inner geometric sum| among m >= 1
    (0.0 when M = 1 and the sum over m is empty).
    """

    M: int
    T: complex
    S1: complex
    S2: complex
    method: str
    max_term_magnitude: float


@dataclass(frozen=True)
class RecipSumReport:
    m: int
    value: float
    max_term_magnitude: float


def _require_m(M: int, name: str = "M") -> None:
    if M < 1:
        raise DomainError(f"{name}={M} must be >= 1")


def t_sum_naive(alpha, M: int) -> complex:
    """O(M^2) reference evaluation of T_M.

    Row m is summed directly as sum_n e(n * {{m alpha}}); the argument
    n*m*alpha differs from n*{{m alpha}} by an integer, so the reduction is
    exact and no geometric identity is involved.
    """
    _require_m(M)
    cf = as_continued_fraction(alpha)
    ns = np.arange(M)
    acc = ComplexNeumaier()
    acc.add(complex(M))  # m = 0 row
    for m in range(1, M):
        t = cf.signed_frac_float(m)
        acc.add(complex(np.exp((2j * np.pi * t) * ns).sum()))
    return acc.value / M


def t_sum_closed(alpha, M: int, cache: FracCache | None = None) -> SumReport:
    """O(M) evaluation via the geometric series closed form.

    Three quantities are accumulated from the same per-term factors: the
    full term (w-1)*inv, and its two parts w*inv and inv, so that
    T = 1 + S1 - S2 can be confirmed rather than imposed.
    """
    _require_m(M)
    cf = as_continued_fraction(alpha)
    if cache is None:
        cache = FracCache(cf)
    acc_t = ComplexNeumaier()
    acc_s1 = ComplexNeumaier()
    acc_s2 = ComplexNeumaier()
    sf = cf.signed_frac_float
    max_term = 0.0
    lo = 1
    while lo < M:
        hi = min(lo + _CHUNK, M)
        t = cache.window(lo, hi)
        if np.any(t == 0.0):
            raise DegenerateDenominator(
                "e(m*alpha) = 1 for some m; alpha is rational, which the "
                "alpha layer should have rejected"
            )
        u = np.empty(hi - lo, dtype=np.float64)
        for j, m in enumerate(range(lo, hi)):
            u[j] = sf(M * m)
        # 1/(e(t)-1) = -1/2 - (i/2) cot(pi t), cancellation-free
        inv = -0.5 - 0.5j * (np.cos(np.pi * t) / np.sin(np.pi * t))
        w = np.exp((2j * np.pi) * u)
        s1 = w * inv
        tt = s1 - inv
        acc_s1.add(complex(s1.sum()))
        acc_s2.add(complex(inv.sum()))
        acc_t.add(complex(tt.sum()))
        if tt.size:
            max_term = max(max_term, float(np.abs(tt).max()))
        lo = hi
    return SumReport(
        M=M,
        T=1 + acc_t.value / M,
        S1=acc_s1.value / M,
        S2=acc_s2.value / M,
        method="closed",
        max_term_magnitude=max_term,
    )


def s2_via_cot(alpha, M: int, cache: FracCache | None = None) -> complex:
    """S2 = -(M-1)/(2M) - (i/2M) sum_{m=1}^{M-1} cot(pi {{m alpha}}).

    cot has period pi, so cot(pi m alpha) = cot(pi {{m alpha}}) and the
    exactly reduced argument is the right one to evaluate at.
    """
    _require_m(M)
    cf = as_continued_fraction(alpha)
    if cache is None:
        cache = FracCache(cf)
    acc = Neumaier()
    lo = 1
    while lo < M:
        hi = min(lo + _CHUNK, M)
        t = cache.window(lo, hi)
        acc.add(float((np.cos(np.pi * t) / np.sin(np.pi * t)).sum()))
        lo = hi
    return complex(-(M - 1) / (2 * M), -acc.value / (2 * M))


def cot_remainder(t: float) -> float:
    """pi t cot(pi t) - 1 on (0, 1/2]; 0 at t -> 0+, -1 at t = 1/2."""
    if not 0.0 < t <= 0.5:
        raise DomainError(f"t={t} outside (0, 1/2]")
    x = np.pi * t
    return float(x * np.cos(x) / np.sin(x)) - 1.0


def recip_sum(alpha, m: int, cache: FracCache | None = None) -> float:
    """sum_{k=1}^{m} 1/{{k alpha}}, compensated."""
    return recip_sum_report(alpha, m, cache).value


def recip_sum_report(alpha, m: int, cache: FracCache | None = None) -> RecipSumReport:
    _require_m(m, "m")
    cf = as_continued_fraction(alpha)
    if cache is None:
        cache = FracCache(cf)
    acc = Neumaier()
    max_term = 0.0
    lo = 1
    while lo <= m:
        hi = min(lo + _CHUNK, m + 1)
        terms = 1.0 / cache.window(lo, hi)
        acc.add(float(terms.sum()))
        max_term = max(max_term, float(np.abs(terms).max()))
        lo = hi
    return RecipSumReport(m=m, value=acc.value, max_term_magnitude=max_term)
