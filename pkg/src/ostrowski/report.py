"""Deterministic CSV/JSON emission for scan reports.

Cell encoding rules (both formats): exact integers are serialized as decimal
strings, never floats, because denominators overflow 53-bit mantissas well
inside the scan windows.  CSV floats use 17 significant digits; JSON floats
are native numbers (repr round-trips losslessly).  Emission is a pure
function of its inputs, so identical runs are byte-identical.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

#: the canonical scan schema (theorem / sinai / lemma-new / scan commands)
REPORT_HEADER = (
    "alpha", "n", "a_n", "q_n",
    "re_T", "im_T", "abs_T", "bound", "ratio", "verdict",
)


@dataclass(frozen=True)
class ReportRow:
    alpha: str
    n: int
    a_n: int
    q_n: int
    re_T: float | None
    im_T: float | None
    abs_T: float | None
    bound: float | None
    ratio: float | None
    verdict: str  # "pass" | "fail" | "skipped"

    def cells(self) -> tuple:
        return (
            self.alpha, self.n, self.a_n, self.q_n,
            self.re_T, self.im_T, self.abs_T, self.bound, self.ratio, self.verdict,
        )


def format_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "pass" if v else "fail"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def emit_csv(header, rows) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([format_cell(v) for v in row])
    return buf.getvalue().encode()


def _json_cell(v):
    if isinstance(v, bool):
        return "pass" if v else "fail"
    if isinstance(v, int):
        return str(v)  # exact integers as decimal strings
    return v


def emit_json(meta: dict, header, rows) -> bytes:
    obj = {
        "meta": {k: _json_cell(v) for k, v in meta.items()},
        "rows": [
            {name: _json_cell(v) for name, v in zip(header, row)}
            for row in rows
        ],
    }
    return (json.dumps(obj, indent=2) + "\n").encode()


def emit(meta: dict, header, rows, fmt: str) -> bytes:
    rows = [tuple(r) for r in rows]
    if fmt == "json":
        return emit_json(meta, header, rows)
    return emit_csv(header, rows)


def bound_report_rows(rep) -> list[ReportRow]:
    """BoundReport (theorem/sinai scans) -> canonical schema rows."""
    out = []
    for r in rep.rows:
        if r.skipped:
            out.append(ReportRow(
                rep.alpha_id, r.n, r.a_n, r.q_n,
                None, None, None, r.bound, None, "skipped",
            ))
        else:
            out.append(ReportRow(
                rep.alpha_id, r.n, r.a_n, r.q_n,
                r.t_value.real, r.t_value.imag, r.abs_t, r.bound, r.ratio,
                "pass" if r.ratio <= rep.cap else "fail",
            ))
    return out


def kh_report_row(alpha_id: str, a_n: int, rep) -> ReportRow:
    """KHReport -> canonical schema row.

    The reciprocal sum is real, so it rides in re_T; bound is the explicit
    constant 16 and ratio = |sum|/q_n, making the pass test ratio <= bound.
    """
    ok = rep.dist_ok and rep.sum_ok
    return ReportRow(
        alpha_id, rep.n, a_n, rep.q_n,
        rep.sum_value, 0.0, abs(rep.sum_value), 16.0, rep.ratio,
        "pass" if ok else "fail",
    )
