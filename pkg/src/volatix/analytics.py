"""Corpus-level volatility products: rankings, threshold tables, scatter data.

All computation is a pure map over journals (parallelizable via
``max_workers``) followed by deterministic sorts and exact integer
accumulation, so identical corpora serialize to identical bytes regardless of
run or worker count.  Journals that cannot be ranked (single-paper journals,
journals whose relative volatility is undefined) are surfaced in a sidecar
exclusion list, never dropped silently.
"""

from __future__ import annotations

import csv
import enum
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .display import decimal_str, exact_str, percent_str, plain_number_str, sig2_percent_str
from .errors import InvalidThresholdsError
from .ingest import Corpus
from .metrics import VolatilityReport, top_paper_volatility

#: Threshold presets mirroring the customary report cuts.
DEFAULT_ABSOLUTE_CUTS = tuple(
    Fraction(s) for s in ("0.1", "0.25", "0.5", "0.75", "1", "1.5", "2", "3", "4", "5", "10", "50")
)
DEFAULT_RELATIVE_CUTS = tuple(
    Fraction(p, 100) for p in (10, 20, 25, 30, 40, 50, 60, 70, 80, 90, 100, 300)
)


class RankKey(enum.Enum):
    """Which volatility column a table is ordered or thresholded by."""

    ABSOLUTE = "absolute"
    RELATIVE = "relative"


@dataclass(frozen=True)
class Exclusion:
    """A journal left out of a ranking, and why."""

    journal_id: str
    reason: str


@dataclass(frozen=True)
class RankedTable:
    key: RankKey
    rows: tuple[VolatilityReport, ...]
    k: int
    excluded: tuple[Exclusion, ...] = ()


@dataclass(frozen=True)
class ThresholdRow:
    threshold: Fraction
    count: int
    percent: Fraction


@dataclass(frozen=True)
class ThresholdTable:
    key: RankKey
    rows: tuple[ThresholdRow, ...]
    journals_ranked: int


@dataclass(frozen=True)
class CorpusSummary:
    journals: int
    papers: int
    citations: int


def volatility_reports(
    corpus: Corpus, *, max_workers: int = 1
) -> tuple[list[VolatilityReport], list[Exclusion]]:
    """Top-paper volatility for every journal in a corpus.

    Returns reports sorted by journal_id plus the exclusion sidecar
    (single-paper journals, whose decomposition is undefined).  The per-journal
    map is pure, so any worker count yields the identical list.
    """
    ordered = [corpus.journals[jid] for jid in sorted(corpus.journals)]
    rankable = []
    excluded = []
    for agg in ordered:
        if agg.n_2y < 2:
            excluded.append(Exclusion(agg.journal_id, "singleton_journal"))
        else:
            rankable.append(agg)
    if max_workers > 1 and len(rankable) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            reports = list(pool.map(top_paper_volatility, rankable))
    else:
        reports = [top_paper_volatility(agg) for agg in rankable]
    return reports, excluded


def _key_value(report: VolatilityReport, key: RankKey) -> Optional[Fraction]:
    if key is RankKey.ABSOLUTE:
        return report.delta_f
    return report.delta_f_rel


def rank_by_volatility(
    reports: Iterable[VolatilityReport], key: RankKey, k: int
) -> RankedTable:
    """Top-k journals under the chosen key, exact-rational descending order.

    Ties break by delta_f descending, then journal_id ascending.  For the
    relative key, reports with undefined relative volatility move to the
    exclusion sidecar.  The result has the prefix property: the top-k table is
    the first k rows of the top-(k+1) table.
    """
    if k < 0:
        raise InvalidThresholdsError(f"table length k must be >= 0, got {k}")
    eligible = []
    excluded = []
    for report in reports:
        if _key_value(report, key) is None:
            excluded.append(Exclusion(report.journal_id, "undefined_relative"))
        else:
            eligible.append(report)
    eligible.sort(key=lambda r: r.journal_id)
    eligible.sort(key=lambda r: (_key_value(r, key), r.delta_f), reverse=True)
    return RankedTable(
        key=key, rows=tuple(eligible[:k]), k=k, excluded=tuple(excluded)
    )


def threshold_table(
    reports: Iterable[VolatilityReport],
    key: RankKey,
    thresholds: Sequence[Fraction],
) -> ThresholdTable:
    """How many journals exceed each cut, with the share of ranked journals.

    Membership is strict (value > threshold).  Thresholds must be strictly
    increasing, which forces the counts to be non-increasing.
    """
    cuts = [Fraction(t) for t in thresholds]
    for lo, hi in zip(cuts, cuts[1:]):
        if lo >= hi:
            raise InvalidThresholdsError(
                f"thresholds must be strictly increasing, got {lo} before {hi}"
            )
    values = [v for r in reports if (v := _key_value(r, key)) is not None]
    total = len(values)
    rows = []
    for cut in cuts:
        count = sum(1 for v in values if v > cut)
        percent = Fraction(count, total) if total else Fraction(0)
        rows.append(ThresholdRow(cut, count, percent))
    return ThresholdTable(key=key, rows=tuple(rows), journals_ranked=total)


def scatter_data(
    reports: Iterable[VolatilityReport],
) -> list[tuple[int, Fraction, Optional[Fraction]]]:
    """Plot-ready (n_2y, delta_f, delta_f_rel) points, one per ranked journal,
    sorted by n_2y then journal_id."""
    ordered = sorted(reports, key=lambda r: (r.n_2y, r.journal_id))
    return [(r.n_2y, r.delta_f, r.delta_f_rel) for r in ordered]


def dataset_summary(corpus: Corpus) -> CorpusSummary:
    """Exact corpus totals; singleton journals count here even though they
    cannot be ranked."""
    journals = len(corpus.journals)
    papers = sum(agg.n_2y for agg in corpus.journals.values())
    citations = sum(agg.total_citations for agg in corpus.journals.values())
    return CorpusSummary(journals=journals, papers=papers, citations=citations)


# --- serialization ---------------------------------------------------------

REPORT_FIELDS = ["journal_id", "f", "f_star", "c_star", "delta_f", "delta_f_rel", "n_2y"]


def _avg_cell(x: Fraction, exact: bool) -> str:
    return exact_str(x) if exact else decimal_str(x, 2)


def _rel_cell(x: Optional[Fraction], exact: bool) -> str:
    if x is None:
        return ""
    return exact_str(x) if exact else percent_str(x)


def report_row(report: VolatilityReport, *, exact: bool = False) -> list:
    return [
        report.journal_id,
        _avg_cell(report.f, exact),
        _avg_cell(report.f_star, exact),
        report.c_star,
        _avg_cell(report.delta_f, exact),
        _rel_cell(report.delta_f_rel, exact),
        report.n_2y,
    ]


def report_obj(report: VolatilityReport, *, exact: bool = False) -> dict:
    row = report_row(report, exact=exact)
    obj = dict(zip(REPORT_FIELDS, row))
    if report.delta_f_rel is None:
        obj["delta_f_rel"] = None
    return obj


def _open_out(dest):
    if isinstance(dest, (str, Path)):
        return open(dest, "w", encoding="utf-8", newline=""), True
    return dest, False


def write_reports_csv(reports, dest, *, exact: bool = False) -> None:
    out, own = _open_out(dest)
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(REPORT_FIELDS)
        for report in reports:
            writer.writerow(report_row(report, exact=exact))
    finally:
        if own:
            out.close()


def write_reports_json(reports, dest, *, exact: bool = False) -> None:
    out, own = _open_out(dest)
    try:
        json.dump([report_obj(r, exact=exact) for r in reports], out, indent=2)
        out.write("\n")
    finally:
        if own:
            out.close()


def write_ranked_csv(table: RankedTable, dest, *, exact: bool = False) -> None:
    out, own = _open_out(dest)
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["rank"] + REPORT_FIELDS)
        for i, report in enumerate(table.rows, start=1):
            writer.writerow([i] + report_row(report, exact=exact))
    finally:
        if own:
            out.close()


def write_ranked_json(table: RankedTable, dest, *, exact: bool = False) -> None:
    out, own = _open_out(dest)
    try:
        payload = {
            "key": table.key.value,
            "k": table.k,
            "rows": [report_obj(r, exact=exact) for r in table.rows],
            "excluded": [
                {"journal_id": e.journal_id, "reason": e.reason} for e in table.excluded
            ],
        }
        json.dump(payload, out, indent=2)
        out.write("\n")
    finally:
        if own:
            out.close()


def _threshold_label(cut: Fraction, key: RankKey, exact: bool) -> str:
    if exact:
        return exact_str(cut)
    if key is RankKey.RELATIVE:
        return plain_number_str(cut * 100) + "%"
    return plain_number_str(cut)


def threshold_rows(table: ThresholdTable, *, exact: bool = False) -> list[list]:
    rows = []
    for row in table.rows:
        percent = exact_str(row.percent) if exact else sig2_percent_str(row.percent)
        rows.append([_threshold_label(row.threshold, table.key, exact), row.count, percent])
    return rows


def write_thresholds_csv(table: ThresholdTable, dest, *, exact: bool = False) -> None:
    out, own = _open_out(dest)
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["threshold", "count", "percent"])
        for row in threshold_rows(table, exact=exact):
            writer.writerow(row)
    finally:
        if own:
            out.close()


def write_thresholds_json(table: ThresholdTable, dest, *, exact: bool = False) -> None:
    out, own = _open_out(dest)
    try:
        payload = {
            "key": table.key.value,
            "journals_ranked": table.journals_ranked,
            "rows": [
                {"threshold": label, "count": count, "percent": percent}
                for label, count, percent in threshold_rows(table, exact=exact)
            ],
        }
        json.dump(payload, out, indent=2)
        out.write("\n")
    finally:
        if own:
            out.close()


def write_scatter_csv(points, dest) -> None:
    """`scatter.csv`: n_2y,delta_f,delta_f_rel with floats for plot tools and
    an empty field where the relative value is undefined."""
    out, own = _open_out(dest)
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["n_2y", "delta_f", "delta_f_rel"])
        for n_2y, delta_f, delta_f_rel in points:
            writer.writerow(
                [
                    n_2y,
                    repr(float(delta_f)),
                    "" if delta_f_rel is None else repr(float(delta_f_rel)),
                ]
            )
    finally:
        if own:
            out.close()
