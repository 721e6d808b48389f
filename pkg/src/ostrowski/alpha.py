"""Exact arithmetic for continued fractions of quadratic surds and declared quotient lists.

The central objects:

  * AlphaSpec        -- immutable description of an irrational alpha, either
                        (P + sqrt(D))/Q or an explicit partial-quotient list
                        (optionally with a periodic tail).
  * ContinuedFraction -- quotients, convergents, signed fractional parts
                        {{m*alpha}}, Ostrowski expansions, convergent errors.
  * SurdValue        -- exact element a + b*sqrt(d) of a real quadratic field,
                        with exact comparisons and certified float rendering.

Every float this module hands out is certified to relative error <= 2^-50 of
the exact value it renders.  Quadratic-surd alphas compute exactly in integer
arithmetic; finite-head alphas fall back to adaptive rational enclosures
between consecutive convergents and raise InsufficientPrecision when the head
cannot certify an answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .errors import (
    DomainError,
    IndexOutOfRange,
    InsufficientPrecision,
    InsufficientQuotients,
    InvalidSurd,
    RangeExceeded,
)

_FLOAT_GUARD_BITS = 55  # enclosure width must sit this far below the value


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _sign_quad(u: int, v: int, d: int) -> int:
    """Exact sign of u + v*sqrt(d) for integers u, v and non-square d >= 0."""
    if v == 0:
        return _sign(u)
    if u == 0:
        return _sign(v)
    if u > 0 and v > 0:
        return 1
    if u < 0 and v < 0:
        return -1
    uu, vv = u * u, v * v * d
    if u > 0:  # v < 0: positive iff u^2 > v^2 d (equality impossible, d non-square)
        return 1 if uu > vv else -1
    return 1 if vv > uu else -1


def _floor_quad(p: int, t: int, d: int, q: int) -> int:
    """floor((p + t*sqrt(d)) / q) exactly; d >= 0, and t*t*d non-square unless t = 0."""
    if q < 0:
        p, t, q = -p, -t, -q
    if t == 0:
        return p // q
    r = isqrt(t * t * d)
    num = p + r if t > 0 else p - r - 1
    return num // q


def _is_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


# cache of floor(sqrt(d) * 2^k) keyed by (d, k); idempotent, safe to share
_SQRT_SCALED: dict[tuple[int, int], int] = {}

_SQUARE_SPLIT: dict[int, tuple[int, int]] = {}


def _square_split(d: int) -> tuple[int, int]:
    """d = s*s*d0 with d0 squarefree; memoized trial division."""
    got = _SQUARE_SPLIT.get(d)
    if got is None:
        s, d0, n, p = 1, 1, d, 2
        while p * p <= n:
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                s *= p ** (e // 2)
                if e % 2:
                    d0 *= p
            p += 1 if p == 2 else 2
        got = (s, d0 * n)
        _SQUARE_SPLIT[d] = got
    return got


def _sqrt_scaled(d: int, k: int) -> int:
    key = (d, k)
    r = _SQRT_SCALED.get(key)
    if r is None:
        r = isqrt(d << (2 * k))
        _SQRT_SCALED[key] = r
    return r


class SurdValue:
    """Exact a + b*sqrt(d) with rational a, b and a fixed non-square d >= 0.

    Pure rationals are represented with b = 0 (d is then ignored and kept 0).
    The radicand is canonicalized to its squarefree kernel, so e.g.
    (1/2)*sqrt(12) and sqrt(3) compare equal.  Supports exact arithmetic
    against rationals and same-field surds, exact ordering, exact floor, and
    float rendering certified to 2^-50 relative.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d: int = 0):
        b = Fraction(b)
        if b == 0:
            d = 0
        else:
            if d <= 0 or _is_square(d):
                raise InvalidSurd(f"d={d} must be positive and non-square")
            s, d = _square_split(d)
            b *= s
        self.a = Fraction(a)
        self.b = b
        self.d = d

    # -- internal -----------------------------------------------------------

    def _ints(self) -> tuple[int, int, int]:
        """Common-denominator integer view (u + v*sqrt(d)) / c with c > 0."""
        a, b = self.a, self.b
        c = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
        return a.numerator * (c // a.denominator), b.numerator * (c // b.denominator), c

    def _coerce(self, other) -> "SurdValue | None":
        if isinstance(other, SurdValue):
            if self.b != 0 and other.b != 0 and self.d != other.d:
                return None
            return other
        if isinstance(other, (int, Fraction)):
            return SurdValue(other)
        return None

    # -- exact predicates ----------------------------------------------------

    def sign(self) -> int:
        u, v, _c = self._ints()
        return _sign_quad(u, v, max(self.d, 0))

    def __bool__(self) -> bool:
        return self.sign() != 0

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare SurdValue with {other!r}")
        return (self - o).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b and (self.b == 0 or self.d == o.d)

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return SurdValue(self.a + o.a, self.b + o.b, max(self.d, o.d))

    __radd__ = __add__

    def __neg__(self):
        return SurdValue(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = max(self.d, o.d)
        return SurdValue(
            self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d
        )

    __rmul__ = __mul__

    def reciprocal(self) -> "SurdValue":
        norm = self.a * self.a - self.b * self.b * self.d
        if norm == 0:
            if self.a == 0 and self.b == 0:
                raise ZeroDivisionError("reciprocal of zero")
            raise InvalidSurd("degenerate field element")  # unreachable for non-square d
        return SurdValue(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.reciprocal()

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- floor / float --------------------------------------------------------

    def __floor__(self) -> int:
        u, v, c = self._ints()
        return _floor_quad(u, v, self.d, c)

    def to_float(self) -> float:
        """Render to float with relative error <= 2^-50 (exact for rationals)."""
        if self.b == 0:
            return float(self.a)
        u, v, c = self._ints()
        k = 64
        while True:
            r = _sqrt_scaled(self.d, k)
            num = (u << k) + v * r  # off by < |v| in 2^-k units
            if abs(num) > abs(v) << _FLOAT_GUARD_BITS:
                return num / (c << k)
            k *= 2  # u + v*sqrt(d) != 0 for non-square d, so this terminates

    __float__ = to_float

    def __repr__(self):
        if self.b == 0:
            return f"SurdValue({self.a})"
        return f"SurdValue({self.a} + {self.b}*sqrt({self.d}))"


# ---------------------------------------------------------------------------
# alpha specifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlphaSpec:
    """Description of an irrational alpha.

    kind = "surd":      alpha = (P + sqrt(D))/Q, D > 0 non-square, Q != 0.
    kind = "quotients": alpha = [a0; a1, a2, ...] from an explicit head,
                        optionally continued by a repeating periodic tail.
    """

    kind: str
    P: int | None = None
    D: int | None = None
    Q: int | None = None
    head: tuple[int, ...] | None = None
    period: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind == "surd":
            if self.D is None or self.D <= 0:
                raise InvalidSurd(f"D={self.D} must be a positive integer")
            if _is_square(self.D):
                raise InvalidSurd(f"D={self.D} is a perfect square; alpha is rational")
            if not self.Q:
                raise InvalidSurd("Q must be nonzero")
        elif self.kind == "quotients":
            if not self.head:
                raise InvalidSurd("quotient head must be nonempty")
            for i, a in enumerate(self.head):
                if i > 0 and a < 1:
                    raise InvalidSurd(f"partial quotient a_{i}={a} must be >= 1")
            if self.period is not None:
                if not self.period:
                    raise InvalidSurd("periodic tail must be nonempty when given")
                for a in self.period:
                    if a < 1:
                        raise InvalidSurd(f"periodic quotient {a} must be >= 1")
        else:
            raise InvalidSurd(f"unknown alpha kind {self.kind!r}")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def surd(cls, P: int, D: int, Q: int) -> "AlphaSpec":
        return cls(kind="surd", P=int(P), D=int(D), Q=int(Q))

    @classmethod
    def quotients(cls, head, period=None) -> "AlphaSpec":
        return cls(
            kind="quotients",
            head=tuple(int(a) for a in head),
            period=None if period is None else tuple(int(a) for a in period),
        )

    # -- canonical string (the CLI grammar) ------------------------------------

    def canonical(self) -> str:
        if self.kind == "surd":
            return f"surd:{self.P},{self.D},{self.Q}"
        a0, rest = self.head[0], self.head[1:]
        parts = [str(a) for a in rest]
        if self.period is not None:
            parts.append("(" + ",".join(str(a) for a in self.period) + ")")
        return f"cf:{a0};" + ",".join(parts)

    def __str__(self) -> str:
        return self.canonical()

    @property
    def is_periodic(self) -> bool:
        return self.kind == "surd" or self.period is not None


PHI = AlphaSpec.surd(1, 5, 2)
SQRT2 = AlphaSpec.surd(0, 2, 1)
SQRT3 = AlphaSpec.surd(0, 3, 1)


# ---------------------------------------------------------------------------
# result records
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SignedFrac:
    """{{m*alpha}} in (-1/2, 1/2].

    exact:  SurdValue for surd-backed alphas, or an (lo, hi) Fraction pair
            certifying lo < {{m*alpha}} < hi for enclosure-backed alphas.
    approx: float with relative error <= 2^-50.
    """

    m: int
    exact: object
    approx: float


@dataclass(frozen=True)
class OstrowskiExpansion:
    """m = sum coeffs[k] * q_k; coeffs[k] is the digit multiplying q_k.

    top is the largest index with q_top <= m (top = -1 for m = 0, whose
    expansion is empty).
    """

    m: int
    coeffs: tuple[int, ...]
    top: int


@dataclass(frozen=True)
class ConvergentError:
    """psi = alpha - p_n/q_n and xi = q_n * q_{n+1} * psi.

    Exact invariants (checked by verify_invariants): sign(xi) = (-1)^n and
    1/2 < |xi| < 1.
    """

    n: int
    psi: object  # SurdValue or (lo, hi) Fraction pair
    xi: object
    psi_approx: float
    xi_approx: float


# ---------------------------------------------------------------------------
# backends
# ---------------------------------------------------------------------------


def _surd_quotient_stream(P: int, D: int, Q: int):
    """Partial quotients of (P + sqrt(D))/Q; classical integer recursion.

    Requires Q | D - P^2 (callers normalize first).  D stays fixed, so its
    integer square root is computed once.
    """
    r = isqrt(D)
    while True:
        a = (P + r) // Q if Q > 0 else (-P - r - 1) // (-Q)
        yield a
        P = a * Q - P
        Q = (D - P * P) // Q


class _SurdAlpha:
    """Exact backend: alpha = (A + B*sqrt(D))/C with C > 0, B != 0, D non-square."""

    __slots__ = ("A", "B", "C", "D", "_k", "_r")

    def __init__(self, A: int, B: int, C: int, D: int):
        if C == 0 or B == 0 or D <= 0 or _is_square(D):
            raise InvalidSurd(f"({A} + {B}*sqrt({D}))/{C} is not a quadratic irrational")
        if C < 0:
            A, B, C = -A, -B, -C
        g = gcd(gcd(abs(A), abs(B)), C)
        self.A, self.B, self.C, self.D = A // g, B // g, C // g, D
        self._k = 128
        self._r = _sqrt_scaled(D, self._k)

    def value(self) -> SurdValue:
        return SurdValue(Fraction(self.A, self.C), Fraction(self.B, self.C), self.D)

    def quotient_stream(self):
        # rewrite as (P + sqrt(D0))/Q0 with sqrt taken positively, then
        # rescale so Q0 divides D0 - P0^2
        A, B, C, D = self.A, self.B, self.C, self.D
        if B > 0:
            P0, D0, Q0 = A, B * B * D, C
        else:
            P0, D0, Q0 = -A, B * B * D, -C
        if (D0 - P0 * P0) % Q0 != 0:
            s = abs(Q0)
            P0, D0, Q0 = P0 * s, D0 * s * s, Q0 * s
        return _surd_quotient_stream(P0, D0, Q0)

    # -- certified float of (u + v*sqrt(D))/C ---------------------------------

    def _float(self, u: int, v: int) -> float:
        while True:
            num = (u << self._k) + v * self._r
            if abs(num) > abs(v) << _FLOAT_GUARD_BITS:
                return num / (self.C << self._k)
            self._k *= 2
            self._r = _sqrt_scaled(self.D, self._k)

    # -- fractional parts ------------------------------------------------------

    def signed_ints(self, m: int) -> tuple[int, int]:
        """{{m*alpha}} = (u + v*sqrt(D))/C exactly; returns (u, v)."""
        A, B, C, D = self.A, self.B, self.C, self.D
        p, v = m * A, m * B
        r = isqrt(v * v * D)
        num = p + r if v > 0 else p - r - 1
        k0 = num // C
        u0 = p - k0 * C
        # move (0,1) representative into (-1/2, 1/2]
        if _sign_quad(2 * u0 - C, 2 * v, D) > 0:
            u0 -= C
        return u0, v

    def frac01_ints(self, m: int) -> tuple[int, int]:
        """{m*alpha} = (u + v*sqrt(D))/C in (0, 1); returns (u, v)."""
        A, B, C, D = self.A, self.B, self.C, self.D
        p, v = m * A, m * B
        r = isqrt(v * v * D)
        num = p + r if v > 0 else p - r - 1
        k0 = num // C
        return p - k0 * C, v

    def signed_float(self, m: int) -> float:
        u, v = self.signed_ints(m)
        return self._float(u, v)

    def frac01_float(self, m: int) -> float:
        u, v = self.frac01_ints(m)
        return self._float(u, v)

    def signed_exact(self, m: int) -> SurdValue:
        u, v = self.signed_ints(m)
        return SurdValue(Fraction(u, self.C), Fraction(v, self.C), self.D)

    def signed_frac(self, m: int) -> SignedFrac:
        u, v = self.signed_ints(m)
        return SignedFrac(
            m,
            SurdValue(Fraction(u, self.C), Fraction(v, self.C), self.D),
            self._float(u, v),
        )


class _IntervalAlpha:
    """Enclosure backend for finite quotient heads.

    Works with the open interval between consecutive convergents
    (p_N/q_N, p_{N+1}/q_{N+1}) (order depends on parity), refined adaptively
    until the quantity of interest is certified.  All failures surface as
    InsufficientPrecision.
    """

    __slots__ = ("cf", "_n")

    def __init__(self, cf: "ContinuedFraction"):
        self.cf = cf
        self._n = 1

    def _pair(self, n: int):
        """(lo_num, lo_den, hi_num, hi_den) with lo < alpha < hi, unreduced."""
        cf = self.cf
        p0, q0 = cf.convergent(n)
        p1, q1 = cf.convergent(n + 1)
        if p0 * q1 < p1 * q0:
            return p0, q0, p1, q1
        return p1, q1, p0, q0

    def _max_n(self) -> int:
        return len(self.cf._spec.head) - 2  # need convergents n and n+1

    def value_interval(self, n: int | None = None):
        n = self._max_n() if n is None else n
        a, b, c, d = self._pair(n)
        return Fraction(a, b), Fraction(c, d)

    def signed_parts(self, m: int):
        """(lo, hi, float) for {{m*alpha}}; raises InsufficientPrecision."""
        cf, top = self.cf, self._max_n()
        if top < 1:
            raise InsufficientPrecision("need at least three quotients")
        n = min(max(self._n, 1), top)
        while True:
            la, lb, ha, hb = self._pair(n)
            lo_n, hi_n = m * la, m * ha  # m*alpha in (lo_n/lb, hi_n/hb)
            # k = floor(2*lo); the enclosure must stay inside [k/2, (k+1)/2]
            # so that no half-integer (hence no integer) sits strictly inside
            k = (2 * lo_n) // lb
            crosses = 2 * hi_n > (k + 1) * hb  # hi > (k+1)/2
            if not crosses:
                r, negative = (k // 2, False) if k % 2 == 0 else ((k + 1) // 2, True)
                # signed part in (lo - r, hi - r)
                su_n, su_d = lo_n - r * lb, lb
                sh_n, sh_d = hi_n - r * hb, hb
                width_ok = self._width_ok(su_n, su_d, sh_n, sh_d)
                if width_ok:
                    mid = (Fraction(su_n, su_d) + Fraction(sh_n, sh_d)) / 2
                    self._n = n
                    return Fraction(su_n, su_d), Fraction(sh_n, sh_d), float(mid)
            if n >= top:
                raise InsufficientPrecision(
                    f"head of {cf._spec} too short to certify {{{{{m}*alpha}}}}; "
                    "extend the head"
                )
            n += 1

    @staticmethod
    def _width_ok(lo_n: int, lo_d: int, hi_n: int, hi_d: int) -> bool:
        # relative width (hi-lo)/min|endpoint| <= 2^-54, endpoints same sign
        if _sign(lo_n) != _sign(hi_n) or lo_n == 0:
            return False
        w_n = hi_n * lo_d - lo_n * hi_d  # width numerator over lo_d*hi_d
        m_n = min(abs(lo_n) * hi_d, abs(hi_n) * lo_d)  # min|endpoint| same denom
        return (w_n << 54) <= m_n

    def signed_float(self, m: int) -> float:
        return self.signed_parts(m)[2]

    def signed_frac(self, m: int) -> SignedFrac:
        lo, hi, f = self.signed_parts(m)
        return SignedFrac(m, (lo, hi), f)


# ---------------------------------------------------------------------------
# the main object
# ---------------------------------------------------------------------------


class ContinuedFraction:
    """Quotients, convergents and exact fractional parts of one alpha.

    Quotients and convergents are grown lazily and cached; the object is safe
    for concurrent readers (all cache writes are idempotent appends).
    """

    def __init__(self, spec: AlphaSpec):
        self._spec = spec
        self._a: list[int] = []
        self._p: list[int] = []
        self._q: list[int] = []
        if spec.kind == "surd":
            self._backend = _SurdAlpha(spec.P, 1, spec.Q, spec.D)
            self._stream = self._backend.quotient_stream()
        elif spec.period is not None:
            self._backend = _SurdAlpha(*_periodic_to_surd(spec))
            self._stream = _cycle_quotients(spec.head, spec.period)
        else:
            self._stream = iter(spec.head)
            self._backend = None  # set after self is usable
        self._extend(1)
        if self._backend is None:
            self._backend = _IntervalAlpha(self)

    # -- spec / identity -------------------------------------------------------

    @property
    def spec(self) -> AlphaSpec:
        return self._spec

    @property
    def alpha_id(self) -> str:
        return self._spec.canonical()

    @property
    def exact_kind(self) -> str:
        """'surd' when backed by exact field arithmetic, else 'enclosure'."""
        return "surd" if isinstance(self._backend, _SurdAlpha) else "enclosure"

    def value_float(self) -> float:
        if isinstance(self._backend, _SurdAlpha):
            return self._backend._float(self._backend.A, self._backend.B)
        lo, hi = self._backend.value_interval()
        return float((lo + hi) / 2)

    # -- quotients / convergents ------------------------------------------------

    def _extend(self, n: int) -> None:
        """Ensure quotients a_0..a_n and convergents p_0..p_n, q_0..q_n exist."""
        while len(self._a) <= n:
            try:
                a = next(self._stream)
            except StopIteration:
                raise InsufficientQuotients(
                    f"{self._spec} provides only {len(self._a)} quotients, "
                    f"index {n} requested"
                ) from None
            k = len(self._a)
            if k > 0 and a < 1:
                raise InvalidSurd(f"partial quotient a_{k}={a} must be >= 1")
            self._a.append(a)
            if k == 0:
                self._p.append(a)
                self._q.append(1)
            elif k == 1:
                self._p.append(a * self._p[0] + 1)
                self._q.append(a)
            else:
                self._p.append(a * self._p[k - 1] + self._p[k - 2])
                self._q.append(a * self._q[k - 1] + self._q[k - 2])

    def quotient(self, n: int) -> int:
        if n < 0:
            raise IndexOutOfRange(f"quotient index {n} < 0")
        self._extend(n)
        return self._a[n]

    def quotients(self, n: int) -> list[int]:
        """a_0 .. a_n inclusive."""
        self._extend(n)
        return self._a[: n + 1]

    def convergent(self, n: int) -> tuple[int, int]:
        if n < 0:
            raise IndexOutOfRange(f"convergent index {n} < 0")
        self._extend(n)
        return self._p[n], self._q[n]

    def p(self, n: int) -> int:
        return self.convergent(n)[0]

    def q(self, n: int) -> int:
        return self.convergent(n)[1]

    def max_n_with_q_at_most(self, budget: int) -> int:
        """Largest n with q_n <= budget (q_0 = 1 always qualifies)."""
        n = 0
        while True:
            try:
                if self.q(n + 1) > budget:
                    return n
            except InsufficientQuotients:
                return n
            n += 1

    # -- fractional parts --------------------------------------------------------

    def signed_frac(self, m: int) -> SignedFrac:
        """{{m*alpha}} with exact representation and certified float."""
        if m < 1:
            raise DomainError(f"m={m}; signed_frac requires m >= 1 (m=0 is trivially 0)")
        return self._backend.signed_frac(m)

    def signed_frac_float(self, m: int) -> float:
        return self._backend.signed_float(m)

    def signed_frac_exact(self, m: int) -> SurdValue:
        """Exact {{m*alpha}} as a field element (surd-backed alphas only)."""
        be = self._require_surd("signed_frac_exact")
        return be.signed_exact(m)

    def frac01_float(self, m: int) -> float:
        """{m*alpha} in (0,1) as a certified float (surd-backed alphas only)."""
        be = self._require_surd("frac01_float")
        return be.frac01_float(m)

    def frac01_exact(self, m: int) -> SurdValue:
        """Exact {m*alpha} in (0,1) as a field element (surd-backed alphas only)."""
        be = self._require_surd("frac01_exact")
        u, v = be.frac01_ints(m)
        return SurdValue(Fraction(u, be.C), Fraction(v, be.C), be.D)

    def _require_surd(self, what: str) -> _SurdAlpha:
        if not isinstance(self._backend, _SurdAlpha):
            raise InsufficientPrecision(
                f"{what} needs exact field arithmetic; {self._spec} has a finite "
                "head (declare a surd or a periodic tail instead)"
            )
        return self._backend

    # -- Ostrowski numeration ------------------------------------------------------

    def ostrowski_expand(self, m: int) -> OstrowskiExpansion:
        """Greedy digits coeffs[k] with m = sum coeffs[k]*q_k.

        Digits satisfy coeffs[0] < a_1, coeffs[k] <= a_{k+1}, and coeffs[k-1] = 0
        whenever coeffs[k] = a_{k+1}.
        """
        if m < 0:
            raise DomainError(f"m={m} must be nonnegative")
        if m == 0:
            return OstrowskiExpansion(0, (), -1)
        top = 0
        try:
            while self.q(top + 1) <= m:
                top += 1
        except InsufficientQuotients:
            raise RangeExceeded(
                f"m={m} is not below the largest available denominator of {self._spec}"
            ) from None
        coeffs = [0] * (top + 1)
        rem = m
        for k in range(top, -1, -1):
            coeffs[k], rem = divmod(rem, self._q[k])
        assert rem == 0
        return OstrowskiExpansion(m, tuple(coeffs), top)

    def ostrowski_eval(self, coeffs) -> int:
        """sum coeffs[k]*q_k after validating the digit constraints."""
        coeffs = tuple(coeffs)
        for k, c in enumerate(coeffs):
            a_next = self.quotient(k + 1)
            limit = a_next - 1 if k == 0 else a_next
            if not 0 <= c <= limit:
                raise DomainError(f"digit coeffs[{k}]={c} outside [0, {limit}]")
            if k > 0 and c == a_next and coeffs[k - 1] != 0:
                raise DomainError(
                    f"coeffs[{k}]={c} saturates a_{k + 1}, so coeffs[{k - 1}] must be 0"
                )
        return sum(c * self.q(k) for k, c in enumerate(coeffs))

    # -- convergent errors ------------------------------------------------------------

    def convergent_error(self, n: int) -> ConvergentError:
        """psi_n = alpha - p_n/q_n and xi_n = q_n*q_{n+1}*psi_n."""
        p, q = self.convergent(n)
        qq = q * self.q(n + 1)
        if isinstance(self._backend, _SurdAlpha):
            psi = self._backend.value() - Fraction(p, q)
            xi = qq * psi
            return ConvergentError(n, psi, xi, psi.to_float(), xi.to_float())
        # enclosure: use a strictly deeper convergent pair
        iv = self._backend
        top = iv._max_n()
        depth = n + 2
        if depth > top:
            raise IndexOutOfRange(
                f"convergent_error({n}) needs quotients through {n + 3}; "
                f"{self._spec} is too short"
            )
        lo, hi = iv.value_interval(max(depth, min(top, depth + 20)))
        pq = Fraction(p, q)
        psi = (lo - pq, hi - pq)
        xi = (qq * psi[0], qq * psi[1])
        return ConvergentError(
            n, psi, xi, float((psi[0] + psi[1]) / 2), float((xi[0] + xi[1]) / 2)
        )

    def verify_error_invariants(self, n: int) -> ConvergentError:
        """convergent_error(n) plus exact checks: sign (-1)^n, 1/2 < |xi| < 1."""
        ce = self.convergent_error(n)
        want = 1 if n % 2 == 0 else -1
        if isinstance(ce.xi, SurdValue):
            ax = abs(ce.xi)
            ok = ce.xi.sign() == want and Fraction(1, 2) < ax < 1
        else:
            lo, hi = ce.xi
            ok = (
                _sign(lo.numerator) == want
                and _sign(hi.numerator) == want
                and Fraction(1, 2) < min(abs(lo), abs(hi))
                and max(abs(lo), abs(hi)) < 1
            )
        if not ok:
            raise AssertionError(f"xi_{n} invariants failed for {self._spec}: {ce}")
        return ce


def _cycle_quotients(head, period):
    yield from head
    while True:
        yield from period


def _periodic_to_surd(spec: AlphaSpec) -> tuple[int, int, int, int]:
    """Exact (A, B, C, D) with alpha = (A + B*sqrt(D))/C for a periodic spec.

    The purely periodic tail x = [b1; b2, ..., bp, x] solves a quadratic fixed
    by the tail's convergents; the head then acts on x as a Mobius map through
    the head's convergents.
    """
    tail = spec.period
    # convergents of the tail alone
    p_prev, p_cur = 1, tail[0]
    q_prev, q_cur = 0, 1
    for b in tail[1:]:
        p_prev, p_cur = p_cur, b * p_cur + p_prev
        q_prev, q_cur = q_cur, b * q_cur + q_prev
    # x = (p_cur*x + p_prev) / (q_cur*x + q_prev)
    aq, bq, cq = q_cur, q_prev - p_cur, -p_prev
    disc = bq * bq - 4 * aq * cq
    if disc <= 0 or _is_square(disc):
        raise InvalidSurd(f"period {tail} does not define a quadratic irrational")
    x = SurdValue(Fraction(-bq, 2 * aq), Fraction(1, 2 * aq), disc)
    # alpha = [a0; a1, ..., ak, x] via head convergents
    head = spec.head
    p_prev, p_cur = 1, head[0]
    q_prev, q_cur = 0, 1
    for a in head[1:]:
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
    alpha = (p_cur * x + p_prev) / (q_cur * x + q_prev)
    la = alpha.a.denominator
    lb = alpha.b.denominator
    c = la * lb // gcd(la, lb)
    return (
        alpha.a.numerator * (c // la),
        alpha.b.numerator * (c // lb),
        c,
        alpha.d,
    )


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------


def continued_fraction(spec: AlphaSpec) -> ContinuedFraction:
    return ContinuedFraction(spec)


def partial_quotients(spec_or_cf, n: int) -> list[int]:
    """a_0 .. a_n of alpha."""
    cf = spec_or_cf if isinstance(spec_or_cf, ContinuedFraction) else ContinuedFraction(spec_or_cf)
    return cf.quotients(n)


def convergents(quotients) -> list[tuple[int, int]]:
    """(p_k, q_k) for an explicit quotient list, by the standard recursion."""
    out: list[tuple[int, int]] = []
    p_prev, p_prev2 = 1, 0
    q_prev, q_prev2 = 0, 1
    for k, a in enumerate(quotients):
        if k > 0 and a < 1:
            raise ValueError(f"partial quotient a_{k}={a} must be >= 1")
        p = a * p_prev + p_prev2
        q = a * q_prev + q_prev2
        out.append((p, q))
        p_prev, p_prev2 = p, p_prev
        q_prev, q_prev2 = q, q_prev
    return out


def signed_frac_scalar(x):
    """{{x}} in (-1/2, 1/2] for an exactly-represented x.

    Accepts int, Fraction, SurdValue, or float (floats are exact binary
    rationals and are mapped back to float on return).
    """
    if isinstance(x, float):
        return float(signed_frac_scalar(Fraction(x)))
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, Fraction):
        f = x - (x.numerator // x.denominator)
        return f - 1 if f > Fraction(1, 2) else f
    if isinstance(x, SurdValue):
        f = x - x.__floor__()
        return f - 1 if f > Fraction(1, 2) else f
    raise TypeError(f"signed_frac_scalar needs an exact value, got {type(x).__name__}")


def frac_exact(cf: ContinuedFraction, m: int) -> SignedFrac:
    """{{m*alpha}}, exact plus certified float.  m >= 1."""
    return cf.signed_frac(m)


def ostrowski_expand(cf: ContinuedFraction, m: int) -> OstrowskiExpansion:
    return cf.ostrowski_expand(m)


def ostrowski_eval(cf: ContinuedFraction, coeffs) -> int:
    return cf.ostrowski_eval(coeffs)


def convergent_error(cf: ContinuedFraction, n: int) -> ConvergentError:
    return cf.convergent_error(n)


def eps_alpha_estimate(cf: ContinuedFraction, n_max: int) -> float:
    """min over 0 <= n <= n_max of q_n * ||q_n * alpha|| (exact minimum, float out)."""
    if n_max < 0:
        raise IndexOutOfRange(f"n_max={n_max} must be >= 0")
    best = None
    for n in range(n_max + 1):
        q = cf.q(n)
        if cf.exact_kind == "surd":
            val = abs(cf.signed_frac_exact(q)) * q
            if best is None or val < best:
                best = val
        else:
            lo, hi = cf.signed_frac(q).exact
            val_hi = max(abs(lo), abs(hi)) * q
            if best is None or val_hi < best:  # certified by enclosure width
                best = val_hi
    return best.to_float() if isinstance(best, SurdValue) else float(best)
