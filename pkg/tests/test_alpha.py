"""Core arithmetic tests: quotients, convergents, signed fractional parts,
Ostrowski digits, convergent errors.

Oracle strategy: every nontrivial value is checked against at least one
independent path, either a pure-Fraction high-precision enclosure of
sqrt(D) (no SurdValue code involved) or a hand-derived closed form.
"""

import math
from fractions import Fraction
from math import isqrt

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ostrowski import (
    PHI,
    SQRT2,
    SQRT3,
    AlphaSpec,
    ContinuedFraction,
    DomainError,
    InsufficientPrecision,
    InsufficientQuotients,
    InvalidSurd,
    RangeExceeded,
    SurdValue,
    continued_fraction,
    convergents,
    eps_alpha_estimate,
    signed_frac_scalar,
)
from ostrowski.alpha import _floor_quad, _sign_quad

# ---------------------------------------------------------------------------
# independent oracle: Fraction enclosure of (P + sqrt(D))/Q at 400 bits
# ---------------------------------------------------------------------------

ORACLE_BITS = 400


def sqrt_enclosure(D: int) -> tuple[Fraction, Fraction]:
    lo = Fraction(isqrt(D << (2 * ORACLE_BITS)), 1 << ORACLE_BITS)
    return lo, lo + Fraction(1, 1 << ORACLE_BITS)


def alpha_enclosure(P: int, D: int, Q: int) -> tuple[Fraction, Fraction]:
    s_lo, s_hi = sqrt_enclosure(D)
    if Q > 0:
        return (P + s_lo) / Q, (P + s_hi) / Q
    return (P + s_hi) / Q, (P + s_lo) / Q


def signed_frac_oracle(P: int, D: int, Q: int, m: int) -> tuple[Fraction, Fraction]:
    """Enclosure of {{m*alpha}}; both endpoints agree on the nearest integer."""
    a_lo, a_hi = alpha_enclosure(P, D, Q)
    lo, hi = m * a_lo, m * a_hi
    k = (2 * lo.numerator) // lo.denominator  # floor(2*lo)
    assert 2 * hi <= k + 1, "oracle enclosure straddles a half-integer, widen it"
    r = k // 2 if k % 2 == 0 else (k + 1) // 2
    return lo - r, hi - r


def check_signed_frac(cf: ContinuedFraction, P, D, Q, m):
    got = cf.signed_frac(m)
    lo, hi = signed_frac_oracle(P, D, Q, m)
    g = Fraction(got.approx)
    tol = max(abs(lo), abs(hi)) / (1 << 50) + (hi - lo)
    assert lo - tol <= g <= hi + tol, (m, float(lo), got.approx)
    # exact representation must sit inside the oracle enclosure
    assert SurdValue(lo) < got.exact < SurdValue(hi)


# ---------------------------------------------------------------------------
# quotient streams and convergents
# ---------------------------------------------------------------------------


def test_phi_quotients_all_ones():
    cf = continued_fraction(PHI)
    assert cf.quotients(12) == [1] * 13
    assert [cf.q(n) for n in range(13)] == [1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233]
    assert cf.q(30) == 1346269


def test_sqrt2_sqrt3_quotients():
    assert continued_fraction(SQRT2).quotients(6) == [1, 2, 2, 2, 2, 2, 2]
    assert continued_fraction(SQRT3).quotients(7) == [1, 1, 2, 1, 2, 1, 2, 1]


def test_general_surd_quotients():
    # (3 + sqrt(7))/2 = [2; 1, 4, 1, 1, ...]; oracle by Fraction enclosure
    cf = continued_fraction(AlphaSpec.surd(3, 7, 2))
    a_lo, a_hi = alpha_enclosure(3, 7, 2)
    x_lo, x_hi = a_lo, a_hi
    for n in range(20):
        a = cf.quotient(n)
        k_lo = x_lo.numerator // x_lo.denominator
        k_hi = x_hi.numerator // x_hi.denominator
        assert k_lo == k_hi == a, (n, a, float(x_lo))
        x_lo, x_hi = 1 / (x_hi - a), 1 / (x_lo - a)


def test_negative_q_surd():
    # (-1 + sqrt(2))/(-1) = 1 - sqrt(2) < 0; a_0 must be negative
    cf = continued_fraction(AlphaSpec.surd(-1, 2, -1))
    assert cf.quotient(0) == -1
    a_lo, a_hi = alpha_enclosure(-1, 2, -1)
    assert -1 <= a_lo and a_hi < 0


def test_periodic_tail_matches_surd():
    # [0; (1,2)] = sqrt(3) - 1, so its quotients past a_0 match sqrt(3) shifted
    per = continued_fraction(AlphaSpec.quotients([0], period=[1, 2]))
    s3 = continued_fraction(SQRT3)
    assert per.quotients(9)[1:] == s3.quotients(9)[1:]
    for m in (1, 2, 7, 100):
        a = per.signed_frac(m)
        b = s3.signed_frac(m)  # {{m(sqrt3 - 1)}} = {{m sqrt3}}
        assert a.exact == b.exact
        assert a.approx == b.approx


def test_convergent_recursion_and_determinant():
    for spec in (PHI, SQRT2, SQRT3, AlphaSpec.surd(5, 13, 3)):
        cf = continued_fraction(spec)
        pq = convergents(cf.quotients(15))
        for n in range(16):
            assert cf.convergent(n) == pq[n]
        for n in range(1, 16):
            p1, q1 = pq[n]
            p0, q0 = pq[n - 1]
            assert p1 * q0 - p0 * q1 == (-1) ** (n - 1)
            assert math.gcd(p1, q1) == 1


def test_convergents_standalone():
    assert convergents([1, 2, 2, 2]) == [(1, 1), (3, 2), (7, 5), (17, 12)]
    with pytest.raises(ValueError):
        convergents([1, 0, 2])


def test_finite_head_exhaustion():
    cf = continued_fraction(AlphaSpec.quotients([0, 1, 2, 3]))
    assert cf.quotients(3) == [0, 1, 2, 3]
    with pytest.raises(InsufficientQuotients):
        cf.quotient(4)


def test_max_n_with_q_at_most():
    phi = continued_fraction(PHI)
    assert phi.max_n_with_q_at_most(1346269) == 30
    assert phi.max_n_with_q_at_most(1346268) == 29
    assert phi.max_n_with_q_at_most(1) == 1
    fh = continued_fraction(AlphaSpec.quotients([0, 1, 2]))
    assert fh.max_n_with_q_at_most(10**9) == 2  # head runs out


# ---------------------------------------------------------------------------
# alpha spec validation
# ---------------------------------------------------------------------------


def test_spec_validation():
    with pytest.raises(InvalidSurd):
        AlphaSpec.surd(1, 4, 2)  # perfect square
    with pytest.raises(InvalidSurd):
        AlphaSpec.surd(1, -3, 2)
    with pytest.raises(InvalidSurd):
        AlphaSpec.surd(1, 5, 0)
    with pytest.raises(InvalidSurd):
        AlphaSpec.quotients([])
    with pytest.raises(InvalidSurd):
        AlphaSpec.quotients([1, 0, 2])
    with pytest.raises(InvalidSurd):
        AlphaSpec.quotients([1], period=[])
    with pytest.raises(InvalidSurd):
        AlphaSpec.quotients([1], period=[1, 0])
    # a_0 may be zero or negative
    AlphaSpec.quotients([0, 1])
    AlphaSpec.quotients([-3, 1, 1], period=[2])


def test_canonical_strings():
    assert PHI.canonical() == "surd:1,5,2"
    assert AlphaSpec.quotients([0], period=[1, 2]).canonical() == "cf:0;(1,2)"
    assert AlphaSpec.quotients([2, 1, 3]).canonical() == "cf:2;1,3"
    assert AlphaSpec.quotients([0, 1, 1, 1000000], period=[1]).canonical() == "cf:0;1,1,1000000,(1)"


# ---------------------------------------------------------------------------
# signed fractional parts
# ---------------------------------------------------------------------------


def test_signed_frac_frozen_values():
    """Closed forms derived by hand from p/q arithmetic.

    {{phi}}   = (sqrt5 - 3)/2      (nearest integer to phi is 2)
    {{2 phi}} = sqrt5 - 2
    {{5 sqrt2}} = 5 sqrt2 - 7
    """
    phi = continued_fraction(PHI)
    s2 = continued_fraction(SQRT2)
    assert phi.signed_frac_exact(1) == SurdValue(Fraction(-3, 2), Fraction(1, 2), 5)
    assert phi.signed_frac_exact(2) == SurdValue(-2, 1, 5)
    assert s2.signed_frac_exact(5) == SurdValue(-7, 5, 2)
    assert phi.signed_frac_float(1) == -0.38196601125010515
    assert phi.signed_frac_float(2) == 0.2360679774997897
    assert s2.signed_frac_float(5) == 0.07106781186547524


def test_signed_frac_against_oracle():
    for P, D, Q in ((1, 5, 2), (0, 2, 1), (0, 3, 1), (3, 7, 2), (-5, 11, 3), (2, 6, -4)):
        cf = continued_fraction(AlphaSpec.surd(P, D, Q))
        for m in (1, 2, 3, 17, 100, 12345, 10**7 + 7):
            check_signed_frac(cf, P, D, Q, m)


def test_signed_frac_range_and_integrality():
    """{{m a}} is in (-1/2, 1/2] and m*alpha - {{m a}} is an exact integer."""
    cf = continued_fraction(AlphaSpec.surd(3, 7, 2))
    alpha = SurdValue(Fraction(3, 2), Fraction(1, 2), 7)
    half = Fraction(1, 2)
    for m in range(1, 200):
        ex = cf.signed_frac_exact(m)
        assert SurdValue(-half) < ex <= SurdValue(half)
        k = m * alpha - ex
        assert k.b == 0 and k.a.denominator == 1


def test_signed_frac_rejects_nonpositive_m():
    cf = continued_fraction(PHI)
    with pytest.raises(DomainError):
        cf.signed_frac(0)
    with pytest.raises(DomainError):
        cf.signed_frac(-3)


def test_frac01_float():
    phi = continued_fraction(PHI)
    # {phi} = phi - 1, {2 phi} = 2 phi - 3
    assert abs(phi.frac01_float(1) - 0.6180339887498949) < 1e-15
    assert abs(phi.frac01_float(2) - 0.2360679774997897) < 1e-15


def test_scaling_invariance():
    # surd:2,20,2 is (2 + sqrt(20))/2 = 1 + sqrt(5) and {{m(1+sqrt5)}} = {{m sqrt5}}
    a = continued_fraction(AlphaSpec.surd(2, 20, 2))
    b = continued_fraction(AlphaSpec.surd(0, 5, 1))
    for m in (1, 2, 9, 1000):
        assert abs(a.signed_frac_float(m) - b.signed_frac_float(m)) < 1e-16


def test_nested_frac_identity():
    """{{n*m*alpha}} = {{n * {{m*alpha}}}}; the inner part shifts by an integer."""
    cf = continued_fraction(SQRT2)
    for m in (1, 3, 10):
        inner = cf.signed_frac_exact(m)
        for n in (1, 2, 7, 55):
            assert signed_frac_scalar(n * inner) == cf.signed_frac_exact(n * m)


def test_signed_frac_scalar_rationals():
    assert signed_frac_scalar(Fraction(7, 2)) == Fraction(1, 2)  # ties go up
    assert signed_frac_scalar(Fraction(-1, 3)) == Fraction(-1, 3)
    assert signed_frac_scalar(Fraction(5, 3)) == Fraction(-1, 3)
    assert signed_frac_scalar(4) == 0
    assert signed_frac_scalar(0.75) == -0.25
    with pytest.raises(TypeError):
        signed_frac_scalar("0.5")


# ---------------------------------------------------------------------------
# enclosure backend (finite heads)
# ---------------------------------------------------------------------------


def test_enclosure_matches_surd_twin():
    # same alpha two ways: sqrt3 as a surd and as a 40-term declared head
    s3 = continued_fraction(SQRT3)
    head = s3.quotients(40)
    fh = continued_fraction(AlphaSpec.quotients(head))
    for m in (1, 2, 3, 10, 99, 5000):
        sf = fh.signed_frac(m)
        lo, hi = sf.exact
        exact = s3.signed_frac_exact(m)
        assert SurdValue(lo) < exact < SurdValue(hi)
        assert abs(sf.approx - s3.signed_frac_float(m)) <= 1e-15 * abs(sf.approx)


def test_enclosure_insufficient_precision():
    fh = continued_fraction(AlphaSpec.quotients([0, 1, 2, 1]))
    with pytest.raises(InsufficientPrecision):
        fh.signed_frac(10**6)  # enclosure far too wide for a huge multiple
    with pytest.raises(InsufficientPrecision):
        fh.signed_frac_exact(1)  # exact field element needs a surd
    with pytest.raises(InsufficientPrecision):
        fh.frac01_float(1)


def test_exact_kind():
    assert continued_fraction(PHI).exact_kind == "surd"
    assert continued_fraction(AlphaSpec.quotients([0], period=[3])).exact_kind == "surd"
    assert continued_fraction(AlphaSpec.quotients([0, 1, 2])).exact_kind == "enclosure"


# ---------------------------------------------------------------------------
# Ostrowski numeration
# ---------------------------------------------------------------------------


def test_ostrowski_phi_10():
    # q(phi) = 1,1,2,3,5,8: greedy 10 = 8 + 2 = q_5 + q_2
    cf = continued_fraction(PHI)
    ox = cf.ostrowski_expand(10)
    assert ox.coeffs == (0, 0, 1, 0, 0, 1)
    assert ox.top == 5
    assert cf.ostrowski_eval(ox.coeffs) == 10


def test_ostrowski_sqrt2_10():
    # q(sqrt2) = 1,2,5,12: 10 = 2*5, saturating a_3 = 2 so the q_2 digit is 0
    cf = continued_fraction(SQRT2)
    ox = cf.ostrowski_expand(10)
    assert ox.coeffs == (0, 0, 2)
    assert cf.ostrowski_eval((0, 0, 2)) == 10


def test_ostrowski_zero_and_negative():
    cf = continued_fraction(PHI)
    ox = cf.ostrowski_expand(0)
    assert ox.coeffs == () and ox.top == -1
    assert cf.ostrowski_eval(()) == 0
    with pytest.raises(DomainError):
        cf.ostrowski_expand(-1)


def test_ostrowski_digit_constraints_hold():
    for spec in (PHI, SQRT2, SQRT3, AlphaSpec.surd(3, 7, 2)):
        cf = continued_fraction(spec)
        for m in range(1, 500):
            ox = cf.ostrowski_expand(m)
            assert cf.ostrowski_eval(ox.coeffs) == m
            assert ox.coeffs[ox.top] >= 1
            for k, c in enumerate(ox.coeffs):
                limit = cf.quotient(k + 1) - (1 if k == 0 else 0)
                assert 0 <= c <= limit
                if k > 0 and c == cf.quotient(k + 1):
                    assert ox.coeffs[k - 1] == 0


def test_ostrowski_eval_rejects_bad_digits():
    cf = continued_fraction(SQRT2)  # a = 1,2,2,2,...
    with pytest.raises(DomainError):
        cf.ostrowski_eval((2,))  # coeffs[0] must be < a_1 = 2
    with pytest.raises(DomainError):
        cf.ostrowski_eval((0, 3))  # above a_2 = 2
    with pytest.raises(DomainError):
        cf.ostrowski_eval((1, 2))  # saturation needs the previous digit zero
    cf.ostrowski_eval((0, 2))  # the legal form of the same value


def test_ostrowski_range_exceeded_on_short_head():
    cf = continued_fraction(AlphaSpec.quotients([0, 1, 2]))  # q = 1, 1, 3
    cf.ostrowski_expand(2)  # fine, 2 < q_2 = 3
    with pytest.raises(RangeExceeded):
        cf.ostrowski_expand(3)  # cannot certify the top index


# ---------------------------------------------------------------------------
# convergent errors
# ---------------------------------------------------------------------------


def test_convergent_error_frozen():
    """xi_2(phi) = 6*(phi - 3/2) = 3 sqrt5 - 6, xi_3(sqrt2) = 348 sqrt2 - 493."""
    phi = continued_fraction(PHI)
    ce = phi.convergent_error(2)
    assert ce.xi == SurdValue(-6, 3, 5)
    assert ce.xi_approx == 0.7082039324993691
    s2 = continued_fraction(SQRT2)
    ce3 = s2.convergent_error(3)
    assert ce3.xi == SurdValue(-493, 348, 2)
    assert ce3.xi_approx == -0.853680294162923


def test_error_invariants_suite():
    """sign(xi_n) = (-1)^n and 1/2 < |xi_n| < 1, checked exactly."""
    for spec in (PHI, SQRT2, SQRT3, AlphaSpec.surd(3, 7, 2), AlphaSpec.quotients([0], period=[1, 2])):
        cf = continued_fraction(spec)
        for n in range(0, 12):
            cf.verify_error_invariants(n)


def test_error_invariants_finite_head():
    cf = continued_fraction(AlphaSpec.quotients(list(range(46))))
    for n in range(0, 8):
        ce = cf.verify_error_invariants(n)
        lo, hi = ce.xi
        assert lo < hi


def test_psi_against_oracle():
    s2 = continued_fraction(SQRT2)
    a_lo, a_hi = alpha_enclosure(0, 2, 1)
    for n in range(10):
        p, q = s2.convergent(n)
        ce = s2.convergent_error(n)
        mid = (a_lo + a_hi) / 2 - Fraction(p, q)
        assert abs(Fraction(ce.psi_approx) - mid) < Fraction(1, 10**12) * abs(mid) + Fraction(1, 1 << ORACLE_BITS)


# ---------------------------------------------------------------------------
# eps estimate and best approximations
# ---------------------------------------------------------------------------


def test_eps_alpha_phi():
    phi = continued_fraction(PHI)
    # at n = 0 the nearest integer to phi is 2, giving 2 - phi, below 1/sqrt5
    assert abs(eps_alpha_estimate(phi, 0) - 0.38196601125010515) < 1e-16
    assert abs(eps_alpha_estimate(phi, 12) - 0.38196601125010515) < 1e-16


def test_eps_alpha_decreasing_in_n():
    cf = continued_fraction(AlphaSpec.surd(3, 7, 2))
    vals = [eps_alpha_estimate(cf, n) for n in range(8)]
    for a, b in zip(vals, vals[1:]):
        assert b <= a + 1e-17


def test_best_approximation_window():
    """Among 1 <= m < q_n, the smallest |{{m*alpha}}| occurs at m = q_{n-1}."""
    for spec in (PHI, SQRT2, SQRT3):
        cf = continued_fraction(spec)
        n = 7
        qn = cf.q(n)
        best_m = min(range(1, qn), key=lambda m: abs(cf.signed_frac_exact(m)))
        assert best_m == cf.q(n - 1)
        # and that minimum exceeds 1/(2 q_n), exactly
        assert abs(cf.signed_frac_exact(best_m)) > Fraction(1, 2 * qn)


# ---------------------------------------------------------------------------
# SurdValue unit behavior
# ---------------------------------------------------------------------------


def test_surd_value_field_ops():
    x = SurdValue(Fraction(1, 2), Fraction(1, 2), 5)  # phi
    assert x * x == x + 1  # phi^2 = phi + 1
    assert (1 / x) == x - 1  # 1/phi = phi - 1
    assert abs(-x) == x
    assert math.floor(x) == 1
    assert math.floor(-x) == -2
    y = SurdValue(0, 1, 2)
    assert y * y == 2
    with pytest.raises(InvalidSurd):
        SurdValue(1, 1, 4)
    with pytest.raises(ZeroDivisionError):
        SurdValue(0).reciprocal()


def test_surd_value_comparisons():
    s2 = SurdValue(0, 1, 2)
    assert SurdValue(Fraction(141, 100)) < s2 < SurdValue(Fraction(142, 100))
    assert s2 > 1 and s2 < 2 and s2 != 1
    assert not s2 == SurdValue(0, 1, 3)
    with pytest.raises(TypeError):
        s2 < SurdValue(0, 1, 3)  # different fields have no exact comparison


def test_surd_value_float_certified():
    lo, hi = sqrt_enclosure(2)
    f = Fraction(SurdValue(0, 1, 2).to_float())
    assert lo - Fraction(1, 1 << 50) * lo < f < hi + Fraction(1, 1 << 50) * hi
    # heavy cancellation case: 348 sqrt2 - 493, compare against the enclosure
    v = SurdValue(-493, 348, 2)
    f = Fraction(v.to_float())
    t_lo, t_hi = 348 * lo - 493, 348 * hi - 493
    width = abs(t_lo) / (1 << 49)
    assert t_lo - width < f < t_hi + width
    assert v.to_float() == -0.853680294162923


def test_floor_quad_and_sign_quad():
    import random

    rng = random.Random(20240817)
    lo2, hi2 = sqrt_enclosure(2)
    for _ in range(500):
        p = rng.randint(-10**6, 10**6)
        t = rng.randint(-10**3, 10**3)
        q = rng.choice([i for i in range(-50, 51) if i != 0])
        d = rng.choice([2, 3, 5, 7, 11, 13])
        s_lo, s_hi = sqrt_enclosure(d)
        x_lo = (p + t * (s_lo if t > 0 else s_hi)) / q
        x_hi = (p + t * (s_hi if t > 0 else s_lo)) / q
        if q < 0:
            x_lo, x_hi = x_hi, x_lo
        f_lo = x_lo.numerator // x_lo.denominator
        f_hi = x_hi.numerator // x_hi.denominator
        # |u + v sqrt(d)| >= 1/(|u| + |v| sqrt d) when nonzero, so a 400-bit
        # enclosure always pins both the floor and the sign at these sizes
        assert f_lo == f_hi
        assert _floor_quad(p, t, d, q) == f_lo
        u, v = rng.randint(-10**6, 10**6), rng.randint(-10**3, 10**3)
        val_lo = u + v * (s_lo if v > 0 else s_hi)
        val_hi = u + v * (s_hi if v > 0 else s_lo)
        want = 1 if val_lo > 0 else (-1 if val_hi < 0 else 0)
        assert _sign_quad(u, v, d) == want


# ---------------------------------------------------------------------------
# property tests
# ---------------------------------------------------------------------------

surd_specs = st.builds(
    lambda p, d, q: AlphaSpec.surd(p, d, q),
    st.integers(-20, 20),
    st.sampled_from([2, 3, 5, 6, 7, 8, 10, 11, 12, 13, 15]),
    st.sampled_from([-3, -2, -1, 1, 2, 3, 4, 5]),
)


@settings(max_examples=60, deadline=None)
@given(spec=surd_specs, m=st.integers(1, 10**6))
def test_prop_signed_frac_contract(spec, m):
    cf = continued_fraction(spec)
    sf = cf.signed_frac(m)
    ex = sf.exact
    assert SurdValue(Fraction(-1, 2)) < ex <= SurdValue(Fraction(1, 2))
    # certified float: |approx - exact| <= 2^-50 |exact|, checked exactly
    g = SurdValue(Fraction(sf.approx))
    err = abs(g - ex)
    assert err * (1 << 50) <= abs(ex) or err == 0
    # integrality of m*alpha - {{m*alpha}}
    alpha = SurdValue(Fraction(spec.P), 1, spec.D) / spec.Q
    k = m * alpha - ex
    assert k.b == 0 and k.a.denominator == 1


@settings(max_examples=40, deadline=None)
@given(spec=surd_specs, m=st.integers(0, 10**5))
def test_prop_ostrowski_roundtrip(spec, m):
    cf = continued_fraction(spec)
    ox = cf.ostrowski_expand(m)
    assert cf.ostrowski_eval(ox.coeffs) == m
    if m > 0:
        assert cf.q(ox.top) <= m < cf.q(ox.top + 1)


@settings(max_examples=30, deadline=None)
@given(
    head=st.lists(st.integers(1, 9), min_size=1, max_size=6).map(lambda h: [0] + h),
    period=st.lists(st.integers(1, 9), min_size=1, max_size=4),
    m=st.integers(1, 10**4),
)
def test_prop_periodic_equals_declared_stream(head, period, m):
    """A periodic spec's surd backend reproduces the declared quotients."""
    spec = AlphaSpec.quotients(head, period=period)
    cf = continued_fraction(spec)
    want = (head + period * 12)[:12]
    assert cf.quotients(11) == want
    sf = cf.signed_frac(m)
    assert SurdValue(Fraction(-1, 2)) < sf.exact <= SurdValue(Fraction(1, 2))
