"""Command-line front end for the exact continued-fraction toolkit.

Alpha grammar: ``surd:P,D,Q`` | ``sqrt:D`` | ``phi`` | ``cf:a0;a1,a2,...``
with an optional parenthesized periodic tail ``cf:a0;a1,(a2,a3)``.

Exit codes: 0 pass, 1 a checked assertion failed, 2 usage or precision
error.  The environment variable OSTROWSKI_BUDGET overrides --budget when
set.  --out writes the report to a file instead of stdout; --plot PATH
additionally renders a PNG for commands with a natural curve (scan,
verify theorem/sinai/hl/lemma-ost).
"""

from __future__ import annotations

import argparse
import os
import sys
from math import isqrt

from . import __version__
from .alpha import AlphaSpec, continued_fraction
from .discrepancy import DEFAULT_DISCREPANCY_BUDGET, discrepancy_exact, harman_bound, kh_lemma_check
from .errors import DomainError, OstrowskiError, ParseError, PerfectSquareError
from .report import REPORT_HEADER, bound_report_rows, emit, kh_report_row
from .segments import ck_values, exceptional_closed_forms
from .sums import recip_sum_report, s2_via_cot, t_sum_closed, t_sum_naive
from .verify import (
    DEFAULT_SUM_BUDGET,
    HL_CAP,
    LEMMA_OST_CAP,
    SINAI_CAP,
    THEOREM_CAP,
    _telescope_parts,
    hardy_littlewood_scan,
    lemma_ost_check,
    outer_term_check,
    sinai_ulcigrai_check,
    theorem_bound_check,
)

_NAIVE_BUDGET = 8192  # t_sum_naive is O(M^2); everything else streams in O(M)


# ---------------------------------------------------------------------------
# alpha-spec parsing
# ---------------------------------------------------------------------------


def _int_token(tok: str, pos: int, what: str) -> int:
    try:
        return int(tok, 10)
    except ValueError:
        raise ParseError(f"{what}: {tok!r} is not an integer", position=pos) from None


def _reject_square(d: int, pos: int) -> None:
    if d > 0 and isqrt(d) ** 2 == d:
        raise PerfectSquareError(f"radicand {d} is a perfect square", position=pos)


def parse_alpha(s: str) -> AlphaSpec:
    """Parse the CLI alpha grammar; ParseError carries the failing position."""
    if not s:
        raise ParseError("empty alpha spec", position=0)
    if s == "phi":
        return AlphaSpec.surd(1, 5, 2)
    if s.startswith("sqrt:"):
        d = _int_token(s[5:], 5, "sqrt radicand")
        _reject_square(d, 5)
        try:
            return AlphaSpec.surd(0, d, 1)
        except OstrowskiError as e:
            raise ParseError(str(e), position=5) from None
    if s.startswith("surd:"):
        parts = s[5:].split(",")
        if len(parts) != 3:
            raise ParseError("surd spec needs exactly P,D,Q", position=5)
        pos = 5
        vals = []
        for tok, what in zip(parts, ("P", "D", "Q")):
            vals.append(_int_token(tok, pos, what))
            pos += len(tok) + 1
        _reject_square(vals[1], 5 + len(parts[0]) + 1)
        try:
            return AlphaSpec.surd(*vals)
        except OstrowskiError as e:
            raise ParseError(str(e), position=5) from None
    if s.startswith("cf:"):
        return _parse_cf(s)
    raise ParseError(f"unrecognized alpha spec {s!r}", position=0)


def _parse_cf(s: str) -> AlphaSpec:
    body = s[3:]
    if ";" not in body:
        raise ParseError("cf spec needs ';' after a0", position=len(s))
    a0_str, rest = body.split(";", 1)
    head = [_int_token(a0_str, 3, "a0")]
    period = None
    pos = 3 + len(a0_str) + 1
    if "(" in rest:
        pre, _, tail = rest.partition("(")
        if not tail.endswith(")"):
            raise ParseError("unterminated period", position=len(s))
        if pre and not pre.endswith(","):
            raise ParseError("period must start a new term", position=pos + len(pre))
        head_part, per_part = pre[:-1] if pre else "", tail[:-1]
    else:
        head_part, per_part = rest, None
    if head_part:
        for tok in head_part.split(","):
            head.append(_int_token(tok, pos, "partial quotient"))
            pos += len(tok) + 1
    if per_part is not None:
        pos += 1  # the '('
        period = []
        for tok in per_part.split(","):
            period.append(_int_token(tok, pos, "period entry"))
            pos += len(tok) + 1
        if not period:
            raise ParseError("empty period", position=pos)
    try:
        return AlphaSpec.quotients(head, period)
    except OstrowskiError as e:
        raise ParseError(str(e), position=3) from None


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ostrowski",
        description="Exact continued-fraction sums, discrepancy, and bound scans.",
    )
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def common(sp):
        sp.add_argument("--alpha", required=True, metavar="SPEC",
                        help="surd:P,D,Q | sqrt:D | phi | cf:a0;a1,(a2,a3)")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--out", metavar="PATH", help="write report here instead of stdout")
        sp.add_argument("--plot", metavar="PNG", help="render a figure alongside the report")
        sp.add_argument("--budget", type=int, help="term/size budget (OSTROWSKI_BUDGET overrides)")
        sp.add_argument("--cap", type=float, help="verdict cap for verify/scan commands")

    def add(name, help_, **numeric):
        sp = sub.add_parser(name, help=help_)
        common(sp)
        for flag, kw in numeric.items():
            sp.add_argument(flag, **kw)
        return sp

    add("expand", "partial quotients a_0..a_n", **{"--n": dict(type=int, required=True)})
    add("convergents", "convergents p_0/q_0 .. p_n/q_n", **{"--n": dict(type=int, required=True)})
    add("ostrowski", "greedy digit expansion of m", **{"--m": dict(type=int, required=True)})
    sp = add("sum", "double exponential and reciprocal sums",
             **{"--M": dict(type=int), "--m": dict(type=int)})
    sp.add_argument("variant", choices=("naive", "closed", "s2cot", "recip"))
    add("discrepancy", "exact D_N and the Harman bound", **{"--M": dict(type=int, required=True, help="number of points N")})
    sp = add("verify", "named checks; exit code reflects the verdict",
             **{"--n": dict(type=int), "--M": dict(type=int),
                "--n-max": dict(type=int, dest="n_max"), "--m": dict(type=int)})
    sp.add_argument("check", choices=("theorem", "sinai", "hl", "lemma-new",
                                      "lemma-ost", "telescope", "outer", "ck"))
    add("scan", "theorem-envelope ratio table for n = 0..n_max",
        **{"--n-max": dict(type=int, required=True, dest="n_max")})
    return p


def _env_budget() -> int | None:
    env = os.environ.get("OSTROWSKI_BUDGET")
    if env is None:
        return None
    try:
        return int(env)
    except ValueError:
        raise ParseError(f"OSTROWSKI_BUDGET={env!r} is not an integer") from None


def _budget(args, default: int) -> int:
    if args.env_budget is not None:
        return args.env_budget
    if args.budget is not None:
        return args.budget
    return default


def _require(args, flag: str, context: str) -> int:
    v = getattr(args, flag.lstrip("-").replace("-", "_"))
    if v is None:
        raise ParseError(f"{context} requires {flag}")
    return v


# ---------------------------------------------------------------------------
# command handlers: each returns (header, rows, command_name, verdict, plot)
# verdict None means structural output with no pass/fail meaning
# ---------------------------------------------------------------------------


def _cmd_expand(args, spec, cf):
    n = _require(args, "--n", "expand")
    if n < 0:
        raise DomainError(f"n={n} must be >= 0")
    rows = [(cf.alpha_id, k, cf.quotient(k), cf.q(k)) for k in range(n + 1)]
    return ("alpha", "n", "a_n", "q_n"), rows, None, None


def _cmd_convergents(args, spec, cf):
    n = _require(args, "--n", "convergents")
    if n < 0:
        raise DomainError(f"n={n} must be >= 0")
    rows = [(cf.alpha_id, k, cf.p(k), cf.q(k)) for k in range(n + 1)]
    return ("alpha", "n", "p_n", "q_n"), rows, None, None


def _cmd_ostrowski(args, spec, cf):
    m = _require(args, "--m", "ostrowski")
    ox = cf.ostrowski_expand(m)
    assert cf.ostrowski_eval(ox.coeffs) == m
    rows = [(cf.alpha_id, k, c, cf.q(k)) for k, c in enumerate(ox.coeffs)]
    return ("alpha", "k", "coeff", "q_k"), rows, None, None


def _cmd_sum(args, spec, cf):
    v = args.variant
    if v == "recip":
        m = _require(args, "--m", "sum recip")
        budget = _budget(args, DEFAULT_SUM_BUDGET)
        if m > budget:
            raise_over_budget(m, budget)
        rep = recip_sum_report(cf, m)
        rows = [(cf.alpha_id, m, rep.value, rep.max_term_magnitude)]
        return ("alpha", "m", "value", "max_term"), rows, None, None
    M = _require(args, "--M", "sum " + v)
    budget = _budget(args, _NAIVE_BUDGET if v == "naive" else DEFAULT_SUM_BUDGET)
    if M > budget:
        raise_over_budget(M, budget)
    if v == "naive":
        t = t_sum_naive(cf, M)
        rows = [(cf.alpha_id, M, t.real, t.imag, abs(t))]
        return ("alpha", "M", "re_T", "im_T", "abs_T"), rows, None, None
    if v == "closed":
        rep = t_sum_closed(cf, M)
        rows = [(cf.alpha_id, M, rep.T.real, rep.T.imag, abs(rep.T),
                 rep.S1.real, rep.S1.imag, rep.S2.real, rep.S2.imag,
                 rep.max_term_magnitude)]
        return ("alpha", "M", "re_T", "im_T", "abs_T", "re_S1", "im_S1",
                "re_S2", "im_S2", "max_term"), rows, None, None
    s2 = s2_via_cot(cf, M)
    rows = [(cf.alpha_id, M, s2.real, s2.imag, abs(s2))]
    return ("alpha", "M", "re_S2", "im_S2", "abs_S2"), rows, None, None


def raise_over_budget(value: int, budget: int):
    from .errors import BudgetExceeded

    raise BudgetExceeded(f"requested size {value} exceeds budget {budget}")


def _cmd_discrepancy(args, spec, cf):
    n_points = _require(args, "--M", "discrepancy")
    d = discrepancy_exact(cf, n_points, budget=_budget(args, DEFAULT_DISCREPANCY_BUDGET))
    h = harman_bound(cf, n_points)
    ok = d.exact_at_most(3 * sum(h.t_coeffs))
    rows = [(cf.alpha_id, n_points, d.D_exact, h.harman_bound,
             ";".join(str(t) for t in h.t_coeffs), ok)]
    return ("alpha", "N", "D_exact", "harman_bound", "t_coeffs", "verdict"), rows, None, ok


def _scan_rows(rep):
    return REPORT_HEADER, [r.cells() for r in bound_report_rows(rep)], rep


def _plot_bound(rep):
    xs = [r.n for r in rep.rows if not r.skipped]
    return {
        "|T_{q_n}|": (xs, [r.abs_t for r in rep.rows if not r.skipped]),
        "bound": (xs, [r.bound for r in rep.rows if not r.skipped]),
    }, "n", "magnitude"


def _cap(args, default: float) -> float:
    return args.cap if args.cap is not None else default


def _cmd_scan(args, spec, cf):
    n_max = _require(args, "--n-max", "scan")
    rep = theorem_bound_check(cf, n_max, cap=_cap(args, THEOREM_CAP),
                              budget=_budget(args, DEFAULT_SUM_BUDGET))
    header, rows, rep = _scan_rows(rep)
    return header, rows, lambda: _plot_bound(rep), rep.verdict


def _cmd_verify(args, spec, cf):
    check = args.check
    budget = _budget(args, DEFAULT_SUM_BUDGET)
    if check in ("theorem", "sinai"):
        n_max = _require(args, "--n-max", f"verify {check}")
        if check == "theorem":
            rep = theorem_bound_check(cf, n_max, cap=_cap(args, THEOREM_CAP), budget=budget)
        else:
            rep = sinai_ulcigrai_check(cf, n_max, cap=_cap(args, SINAI_CAP), budget=budget)
        header, rows, rep = _scan_rows(rep)
        return header, rows, lambda: _plot_bound(rep), rep.verdict
    if check == "hl":
        m_max = _require(args, "--M", "verify hl")
        rep = hardy_littlewood_scan(cf, m_max, cap=_cap(args, HL_CAP))
        rows = [(rep.alpha_id, rep.M_max, rep.max_abs, rep.argmax_M, rep.cap, rep.verdict)]
        header = ("alpha", "M_max", "max_abs", "argmax_M", "cap", "verdict")
        series = lambda: ({"|S''_M|": ([m for m, _ in rep.samples],
                                       [v for _, v in rep.samples])}, "M", "|S''_M|")
        return header, rows, series, rep.verdict
    if check == "lemma-new":
        n = _require(args, "--n", "verify lemma-new")
        rep = kh_lemma_check(cf, n, budget=budget)
        row = kh_report_row(cf.alpha_id, cf.quotient(n), rep)
        return REPORT_HEADER, [row.cells()], None, row.verdict == "pass"
    if check == "lemma-ost":
        n = _require(args, "--n", "verify lemma-ost")
        rep = lemma_ost_check(cf, n, cap=_cap(args, LEMMA_OST_CAP), budget=budget)
        rows = [(rep.alpha_id, rep.n, rep.q_n, rep.denom, rep.max_abs,
                 rep.argmax_m, rep.ratio, rep.cap, rep.verdict)]
        header = ("alpha", "n", "q_n", "denom", "max_abs", "argmax_m",
                  "ratio", "cap", "verdict")
        series = lambda: ({"prefix sum": ([m for m, _ in rep.samples],
                                          [v for _, v in rep.samples])}, "m", "sum_{k<=m} 1/{{k a}}")
        return header, rows, series, rep.verdict
    if check == "telescope":
        m_val = _require(args, "--M", "verify telescope")
        lhs, rhs, residual = _telescope_parts(cf, m_val, budget)
        ok = residual < 1e-8
        rows = [(cf.alpha_id, m_val, lhs.real, lhs.imag, rhs.real, rhs.imag, residual, ok)]
        return ("alpha", "M", "re_lhs", "im_lhs", "re_rhs", "im_rhs",
                "residual", "verdict"), rows, None, ok
    if check == "outer":
        n = _require(args, "--n", "verify outer")
        rep = outer_term_check(cf, n)
        rows = [(cf.alpha_id, rep.n, rep.q_n, rep.theta, rep.chord,
                 rep.arc_bound, rep.next_bound, rep.all_ok)]
        return ("alpha", "n", "q_n", "theta", "chord", "arc_bound",
                "next_bound", "verdict"), rows, None, rep.all_ok
    # ck: the segment-coefficient check at level i = --n, window c = --m
    i = _require(args, "--n", "verify ck")
    c = args.m if args.m is not None else 1
    analysis = ck_values(cf, i, c)
    cks = [v for _, _, v in analysis.ck_values]
    if analysis.degenerate:
        plus = minus = None
    else:
        plus, minus = exceptional_closed_forms(cf, i, c)
    rows = [(cf.alpha_id, i, c, cf.q(i), analysis.k_plus, analysis.k_minus,
             analysis.k_zero, len(cks),
             min(cks) if cks else None, max(cks) if cks else None,
             plus, minus, True)]
    return ("alpha", "i", "c", "q_i", "k_plus", "k_minus", "k_zero",
            "ck_count", "ck_min", "ck_max", "recip_plus", "recip_minus",
            "verdict"), rows, None, True


_HANDLERS = {
    "expand": _cmd_expand,
    "convergents": _cmd_convergents,
    "ostrowski": _cmd_ostrowski,
    "sum": _cmd_sum,
    "discrepancy": _cmd_discrepancy,
    "verify": _cmd_verify,
    "scan": _cmd_scan,
}


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _command_name(args) -> str:
    if args.command == "sum":
        return f"sum {args.variant}"
    if args.command == "verify":
        return f"verify {args.check}"
    return args.command


def _write(out_path, payload: bytes) -> None:
    if out_path:
        with open(out_path, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    meta_alpha = args.alpha
    try:
        args.env_budget = _env_budget()
        spec = parse_alpha(args.alpha)
        cf = continued_fraction(spec)
        meta_alpha = cf.alpha_id
        header, rows, plot_series, verdict = _HANDLERS[args.command](args, spec, cf)
    except AssertionError as e:
        return _fail(args, meta_alpha, "AssertionFailed", str(e) or "internal cross-check failed", 1)
    except OstrowskiError as e:
        return _fail(args, meta_alpha, type(e).__name__, str(e), 2)
    meta = {"alpha": meta_alpha, "command": _command_name(args), "version": __version__}
    _write(args.out, emit(meta, header, rows, args.format))
    if args.plot:
        if plot_series is None:
            print(f"note: no figure defined for '{_command_name(args)}'", file=sys.stderr)
        else:
            from .plots import render_line_plot

            series, xlabel, ylabel = plot_series()
            render_line_plot(args.plot, series, f"{_command_name(args)}  {meta_alpha}",
                             xlabel, ylabel)
    return 0 if verdict in (None, True) else 1


def _fail(args, alpha: str, code: str, message: str, exit_code: int) -> int:
    if args.format == "json":
        import json

        payload = (json.dumps({
            "meta": {"alpha": alpha, "command": _command_name(args), "version": __version__},
            "error": {"code": code, "message": message},
        }, indent=2) + "\n").encode()
        _write(args.out, payload)
    else:
        print(f"ostrowski: {code}: {message}", file=sys.stderr)
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
