"""Verification-layer tests: scans, envelopes, chain reports, probes."""

from math import log, pi

import pytest

from ostrowski.alpha import PHI, SQRT2, AlphaSpec, SurdValue, continued_fraction
from ostrowski.discrepancy import kh_lemma_check
from ostrowski.errors import BudgetExceeded, DomainError
from ostrowski.sums import recip_sum, s2_via_cot, t_sum_naive
from ostrowski.verify import (
    HL_CAP,
    LEMMA_OST_CAP,
    SINAI_CAP,
    SUITE,
    THEOREM_CAP,
    growth_probe,
    hardy_littlewood_scan,
    lemma_new_scan,
    lemma_ost_check,
    outer_term_check,
    sinai_ulcigrai_check,
    telescope_check,
    theorem_bound_check,
    theorem_envelope,
)


def test_suite_shape():
    assert set(SUITE) == {"phi", "sqrt2", "sqrt3", "per", "stress1", "stress2"}
    ids = {continued_fraction(s).alpha_id for s in SUITE.values()}
    assert len(ids) == 6
    assert THEOREM_CAP == 20.0
    assert SINAI_CAP > 0 and HL_CAP > 0 and LEMMA_OST_CAP > 0


# ---------------------------------------------------------------------------
# theorem / sinai scans
# ---------------------------------------------------------------------------


def test_theorem_envelope_golden_ratio_is_flat():
    cf = continued_fraction(PHI)
    for n in range(0, 20):
        assert theorem_envelope(cf, n) == 1.0  # ln 2 < 1 and a_{n+1} = 1


def test_theorem_envelope_large_digit():
    cf = continued_fraction(SUITE["stress2"])
    assert theorem_envelope(cf, 0) == 1.0
    assert theorem_envelope(cf, 3) == 1.0  # ln 2 / 10^6 collapses to the floor
    assert theorem_envelope(cf, 4) == log(2.0e6)  # max a_i = 10^6, a_5 = 1


def test_theorem_bound_check_report():
    rep = theorem_bound_check(PHI, 12)
    assert rep.kind == "theorem" and rep.verdict
    assert len(rep.rows) == 13 and not rep.skipped_levels
    for row in rep.rows:
        assert row.bound == 1.0
        assert row.ratio == row.abs_t / row.bound
        assert abs(row.t_value) == row.abs_t
    assert rep.max_ratio == max(r.ratio for r in rep.rows)
    # independent oracle at a small level
    naive = abs(t_sum_naive(PHI, rep.rows[6].q_n))
    assert rep.rows[6].abs_t == pytest.approx(naive, abs=1e-11)


def test_budget_skips_levels():
    rep = theorem_bound_check(PHI, 12, budget=100)
    assert rep.skipped_levels == (11, 12)  # q_11 = 144, q_12 = 233
    for row in rep.rows:
        if row.skipped:
            assert row.t_value is None and row.ratio is None
        else:
            assert row.q_n <= 100


def test_sinai_rows_are_raw_magnitudes():
    rep = sinai_ulcigrai_check(SQRT2, 8)
    assert rep.kind == "sinai" and rep.verdict
    for row in rep.rows:
        assert row.bound == 1.0 and row.ratio == row.abs_t
    assert rep.max_ratio <= SINAI_CAP


def test_scan_rejects_negative_range():
    with pytest.raises(DomainError):
        theorem_bound_check(PHI, -1)


# ---------------------------------------------------------------------------
# lemma scans
# ---------------------------------------------------------------------------


def test_lemma_new_scan_matches_fresh_checks():
    scan = lemma_new_scan(PHI, budget=1000)
    assert [r.n for r in scan] == list(range(1, len(scan) + 1))
    assert scan[-1].q_n <= 1000 < continued_fraction(PHI).q(len(scan) + 1)
    for rep in scan:
        assert rep == kh_lemma_check(PHI, rep.n)
        assert rep.dist_ok and rep.sum_ok


def test_lemma_new_scan_needs_exact_backend():
    from ostrowski.errors import InsufficientPrecision

    spec = AlphaSpec.quotients(list(range(8)))
    with pytest.raises(InsufficientPrecision):
        lemma_new_scan(spec, budget=10**9)  # exact minimum needs a surd backend


def test_lemma_ost_exhaustive():
    rep = lemma_ost_check(PHI, 10)
    assert rep.exhaustive and rep.q_n == 89
    assert rep.denom == 89.0  # all a_i = 1
    assert rep.ratio == rep.max_abs / rep.denom
    assert rep.verdict and rep.ratio <= LEMMA_OST_CAP
    # the recorded argmax is a genuine prefix value
    assert rep.max_abs == pytest.approx(abs(recip_sum(PHI, rep.argmax_m)), rel=1e-9)
    # every recorded sample is a genuine prefix value
    for m, v in rep.samples[:5]:
        assert v == pytest.approx(recip_sum(PHI, m), rel=1e-9)


def test_lemma_ost_log_factor():
    alt = AlphaSpec.quotients([0], period=[1, 10])
    cf = continued_fraction(alt)
    rep = lemma_ost_check(alt, 4)
    assert rep.denom == cf.q(4) * log(10.0)
    assert rep.verdict


def test_lemma_ost_sampled_mode():
    alt = AlphaSpec.quotients([0], period=[1, 10])
    targets = [1, 7, 500, 21564]
    rep = lemma_ost_check(alt, 10, sample_ms=targets, budget=1000)
    assert not rep.exhaustive
    assert [m for m, _ in rep.samples] == targets
    for m, v in rep.samples:
        assert v == pytest.approx(recip_sum(alt, m), rel=1e-9)
    assert rep.max_abs == max(abs(v) for _, v in rep.samples)


def test_lemma_ost_errors():
    with pytest.raises(BudgetExceeded):
        lemma_ost_check(PHI, 28, budget=1000)  # q_28 - 1 = 514228 prefixes
    with pytest.raises(DomainError):
        lemma_ost_check(PHI, 0)
    with pytest.raises(DomainError):
        lemma_ost_check(PHI, 10, sample_ms=[0, 5])
    with pytest.raises(DomainError):
        lemma_ost_check(PHI, 10, sample_ms=[89])  # m must stay <= q_n - 1
    from ostrowski.verify import STREAM_LIMIT

    with pytest.raises(BudgetExceeded):
        lemma_ost_check(PHI, 36, sample_ms=[STREAM_LIMIT + 1])  # q_36 - 1 = 24157816


# ---------------------------------------------------------------------------
# Hardy-Littlewood scan
# ---------------------------------------------------------------------------


def test_hl_scan_trivial_and_samples():
    rep = hardy_littlewood_scan(PHI, 1)
    assert rep.max_abs == 0.0 and rep.argmax_M == 1
    assert rep.samples == ((1, 0.0),)

    rep = hardy_littlewood_scan(PHI, 10_000)
    assert rep.verdict and rep.max_abs <= HL_CAP
    assert rep.samples[0] == (1, 0.0) and rep.samples[-1][0] == 10_000
    ms = [m for m, _ in rep.samples]
    assert ms == sorted(ms) and all(1 <= m <= 10_000 for m in ms)
    for m, v in rep.samples:
        assert v <= rep.max_abs + 1e-12
    # cross-check the peak against the direct cot evaluation
    direct = abs(s2_via_cot(PHI, rep.argmax_M))
    assert rep.max_abs == pytest.approx(direct, rel=1e-10)


def test_hl_scan_spot_values():
    rep = hardy_littlewood_scan(SQRT2, 2_000)
    probe = dict(rep.samples)
    for M in list(probe)[1:4]:
        assert probe[M] == pytest.approx(abs(s2_via_cot(SQRT2, M)), rel=1e-10)
    with pytest.raises(DomainError):
        hardy_littlewood_scan(PHI, 0)


# ---------------------------------------------------------------------------
# telescoping identity and outer-term chain
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("spec,M", [
    (PHI, 2),  # single-term identity
    (PHI, 233),  # M = q_12
    (SQRT2, 169),  # M = q_6
    (PHI, 257),  # M-generic: not a denominator
    (SQRT2, 1000),
])
def test_telescope_residual(spec, M):
    assert telescope_check(spec, M) < 1e-12


def test_telescope_errors():
    with pytest.raises(DomainError):
        telescope_check(PHI, 1)
    with pytest.raises(BudgetExceeded):
        telescope_check(PHI, 5000, budget=100)


@pytest.mark.parametrize("name", ["phi", "sqrt2", "sqrt3", "per", "stress1", "stress2"])
def test_outer_chain_holds(name):
    spec = SUITE[name]
    cf = continued_fraction(spec)
    for n in range(0, 9):
        rep = outer_term_check(spec, n)
        assert rep.all_ok, (name, n)
        assert rep.chord <= rep.arc_bound * (1 + 1e-12) and rep.arc_bound < rep.next_bound
        assert (rep.theta > 0) == (n % 2 == 0)  # sign of psi_n alternates
        assert rep.exact == (cf.exact_kind == "surd")


# ---------------------------------------------------------------------------
# growth probe
# ---------------------------------------------------------------------------


def test_growth_probe_single_term_exact_window():
    # C=1: the term is 1/{{q_i alpha}} = q_{i+1}/xi_i, with magnitude in
    # (q_{i+1}, q_{i+1} + q_i) because |xi_i| in (q_{i+1}/(q_{i+1}+q_i), 1)
    for spec in (PHI, SQRT2):
        cf = continued_fraction(spec)
        for i in range(1, 9):
            probe = growth_probe(spec, i, C=1)
            q, q_next = cf.q(i), cf.q(i + 1)
            exact = SurdValue(1) / cf.signed_frac_exact(q)
            assert SurdValue(q_next) < abs(exact) < SurdValue(q_next + q)
            assert probe.value == pytest.approx(exact.to_float(), rel=1e-12)
            assert probe.ratio == abs(probe.value) / (q_next * log(2.0))


def test_growth_probe_sign_pattern():
    # terms 1/{{(c+1) q_i alpha}} share the sign of xi_i while the multiple
    # stays inside the next convergent's window
    probe = growth_probe(SUITE["stress2"], 3, C=1000)
    assert all(t < 0 for t in probe.terms)  # xi_3 < 0
    probe = growth_probe(PHI, 6, C=1)
    assert all(t > 0 for t in probe.terms)  # xi_6 > 0


def test_growth_probe_defaults_and_errors():
    probe = growth_probe(SUITE["stress1"], 8)  # a_9 = 9
    assert probe.C == 9 and len(probe.terms) == 9
    assert probe.value == pytest.approx(sum(probe.terms), rel=1e-12)
    with pytest.raises(DomainError):
        growth_probe(PHI, 3, C=2)  # a_4 = 1
    with pytest.raises(DomainError):
        growth_probe(PHI, -1)
    big = growth_probe(SUITE["stress2"], 3, C=100_000)
    assert len(big.terms) == 256  # term echo is capped, the sum is not
