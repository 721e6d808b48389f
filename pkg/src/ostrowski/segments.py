"""Ostrowski segment decomposition of reciprocal fractional-part sums.

Writing m = sum_i c_{i+1} q_i splits (0, m] into consecutive windows of
length q_i (one per repetition c = 0..c_{i+1}-1, taken in increasing i).
Within one window, k*p_i mod q_i walks through every residue exactly once,
which singles out a handful of exceptional indices:

  k_zero:  the unique multiple of q_i in the window, (c+1) q_i
  k_plus:  k p_i = +1 (mod q_i), where 1/{{k alpha}} is near +q_i
  k_minus: k p_i = -1 (mod q_i), where it is near -q_i
  halves:  residues nearest q_i/2, where the nearest-integer representative
           n'_k can flip sign under the k psi_i perturbation

For every other k, 1/{{k alpha}} = q_i/n'_k + C_k k xi_i q_i/((n'_k)^2 q_{i+1})
exactly, with C_k = -1/(1+x) for x = k xi_i/(n'_k q_{i+1}).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .accumulate import Neumaier
from .alpha import ContinuedFraction
from .errors import DegenerateModulus, DomainError
from .sums import FracCache, as_continued_fraction


@dataclass(frozen=True)
class Segment:
    i: int
    c: int
    start: int  # n(i,c); the window is (start, start + length]
    length: int  # = q_i


@dataclass(frozen=True)
class SegmentPlan:
    m: int
    segments: tuple[Segment, ...]


@dataclass(frozen=True)
class SegmentAnalysis:
    """Exceptional indices of one segment, plus (optionally) the C_k table.

    degenerate is set when q_i <= 3, where the +-1 residues coincide with
    each other or with the half residues; the exceptional set is then merged
    and no C_k analysis is meaningful.  ck_values holds (k, n'_k, C_k)
    triples for the non-exceptional indices that were tabulated (possibly a
    sample; the |C_k| < 2 assertion always covers the whole window).
    """

    i: int
    c: int
    start: int
    k_plus: int
    k_minus: int
    k_zero: int
    half_indices: tuple[int, ...]
    degenerate: bool = False
    ck_values: tuple[tuple[int, int, float], ...] = ()

    @property
    def exceptional(self) -> tuple[int, ...]:
        return tuple(sorted({self.k_plus, self.k_minus, self.k_zero, *self.half_indices}))


def segment_plan(m: int, alpha) -> SegmentPlan:
    """Consecutive segments covering (0, m], from the Ostrowski digits of m."""
    cf = as_continued_fraction(alpha)
    if m < 0:
        raise DomainError(f"m={m} must be nonnegative")
    ox = cf.ostrowski_expand(m)
    segments = []
    start = 0
    for i, digit in enumerate(ox.coeffs):
        q_i = cf.q(i)
        for c in range(digit):
            segments.append(Segment(i=i, c=c, start=start, length=q_i))
            start += q_i
    assert start == m, "segment lengths must recompose m"
    return SegmentPlan(m=m, segments=tuple(segments))


def segment_sum(alpha, entry, cache: FracCache | None = None) -> float:
    """sum of 1/{{k alpha}} over the window (start, start+length]."""
    cf = as_continued_fraction(alpha)
    if cache is None:
        cache = FracCache(cf)
    start, length = entry.start, entry.length
    acc = Neumaier()
    lo = start + 1
    while lo <= start + length:
        hi = min(lo + (1 << 16), start + length + 1)
        acc.add(float((1.0 / cache.window(lo, hi)).sum()))
        lo = hi
    return acc.value


def _window_start(cf: ContinuedFraction, i: int, c: int, start) -> int:
    if c < 0:
        raise DomainError(f"c={c} must be nonnegative")
    if start is None:
        return c * cf.q(i)
    return start


def _solve_residue(target: int, inv_p: int, q: int, start: int) -> int:
    """The unique k in (start, start + q] with k*p = target (mod q)."""
    k0 = (target * inv_p) % q
    off = (k0 - start) % q
    return start + (off if off else q)


def exceptional_indices(i: int, c: int, alpha, start: int | None = None) -> SegmentAnalysis:
    """Locate k_zero, k_plus, k_minus and the half-residue indices.

    start defaults to the prefix-free window c*q_i; a plan-aware caller can
    pass the true n(i,c), which shifts every index by the same amount mod q_i.
    """
    cf = as_continued_fraction(alpha)
    q = cf.q(i)
    if q < 2:
        raise DegenerateModulus(f"q_{i}={q}; residues mod 1 carry no information")
    p = cf.p(i)
    start = _window_start(cf, i, c, start)
    # the unique multiple of q_i in the window; with start = prefix + c*q_i
    # and 0 <= prefix < q_i this is exactly (c+1) q_i
    k_zero = (start // q + 1) * q
    inv_p = pow(p % q, -1, q)
    k_plus = _solve_residue(1, inv_p, q, start)
    k_minus = _solve_residue(q - 1, inv_p, q, start)
    if q % 2 == 0:
        halves = (_solve_residue(q // 2, inv_p, q, start),)
    else:
        halves = tuple(
            sorted(
                (
                    _solve_residue((q - 1) // 2, inv_p, q, start),
                    _solve_residue((q + 1) // 2, inv_p, q, start),
                )
            )
        )
    degenerate = q <= 3  # +-1 residues collide with each other or the halves
    return SegmentAnalysis(
        i=i,
        c=c,
        start=start,
        k_plus=k_plus,
        k_minus=k_minus,
        k_zero=k_zero,
        half_indices=halves,
        degenerate=degenerate,
    )


def ck_values(alpha, i: int, c: int, start: int | None = None, sample: int | None = None) -> SegmentAnalysis:
    """Tabulate C_k over the window and assert |C_k| < 2 where |n'_k| >= 2.

    The assertion runs vectorized over every non-exceptional index in the
    window regardless of sample; sample only caps how many (k, n'_k, C_k)
    triples are materialized in the result.
    """
    cf = as_continued_fraction(alpha)
    base = exceptional_indices(i, c, alpha, start=start)
    q = cf.q(i)
    q_next = cf.q(i + 1)
    p = cf.p(i)
    xi = cf.convergent_error(i).xi_approx
    ks = np.arange(base.start + 1, base.start + q + 1, dtype=np.int64)
    n_k = (ks * (p % q)) % q
    n_prime = np.where(2 * n_k <= q, n_k, n_k - q)
    excl = np.zeros(q, dtype=bool)
    for k in base.exceptional:
        excl[k - base.start - 1] = True
    keep = ~excl
    ks, n_prime = ks[keep], n_prime[keep]
    x = ks * xi / (n_prime.astype(np.float64) * q_next)
    C = -1.0 / (1.0 + x)
    big = np.abs(n_prime) >= 2
    if big.any() and not bool((np.abs(C[big]) < 2.0).all()):
        worst = int(np.argmax(np.abs(np.where(big, C, 0.0))))
        raise AssertionError(
            f"|C_k| >= 2 at k={int(ks[worst])} in segment (i={i}, c={c}): C={C[worst]}"
        )
    if sample is not None and ks.size > sample:
        idx = np.linspace(0, ks.size - 1, sample).astype(np.int64)
        ks, n_prime, C = ks[idx], n_prime[idx], C[idx]
    table = tuple((int(k), int(n), float(cv)) for k, n, cv in zip(ks, n_prime, C))
    return SegmentAnalysis(
        i=base.i,
        c=base.c,
        start=base.start,
        k_plus=base.k_plus,
        k_minus=base.k_minus,
        k_zero=base.k_zero,
        half_indices=base.half_indices,
        degenerate=base.degenerate,
        ck_values=table,
    )


def exceptional_closed_forms(alpha, i: int, c: int, start: int | None = None) -> tuple[float, float]:
    """(1/{{k_plus alpha}}, 1/{{k_minus alpha}}) by the closed forms.

    Each value is cross-checked against direct reciprocal evaluation to
    1e-9 relative before being returned.
    """
    cf = as_continued_fraction(alpha)
    q = cf.q(i)
    if q <= 3:
        raise DegenerateModulus(
            f"q_{i}={q} <= 3: exceptional residues merge, no separate closed forms"
        )
    base = exceptional_indices(i, c, alpha, start=start)
    q_next = cf.q(i + 1)
    xi = cf.convergent_error(i).xi_approx
    plus = q * q_next / (q_next + base.k_plus * xi)
    minus = -q * q_next / (q_next - base.k_minus * xi)
    for k, val in ((base.k_plus, plus), (base.k_minus, minus)):
        direct = 1.0 / cf.signed_frac_float(k)
        if abs(val - direct) > 1e-9 * abs(direct):
            raise AssertionError(
                f"closed form at k={k} (i={i}, c={c}) gives {val}, direct {direct}"
            )
    return plus, minus
