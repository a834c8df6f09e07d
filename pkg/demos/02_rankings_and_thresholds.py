#!/usr/bin/env python3
"""Demo: volatility rankings and threshold tables on the bundled 2017 data.

Loads the two fixture corpora (the most volatile journals of the 2017
reporting year, reconstructed from their published citation averages), runs
the top-paper decomposition, and prints ranked and threshold tables.

Usage:
    ./02_rankings_and_thresholds.py
"""

import io
import sys
from fractions import Fraction
from pathlib import Path

from volatix import (
    RankKey,
    dataset_summary,
    parse_aggregate,
    rank_by_volatility,
    scatter_data,
    threshold_table,
    volatility_reports,
)
from volatix.analytics import write_ranked_csv, write_scatter_csv, write_thresholds_csv

DATA = Path(__file__).resolve().parents[1] / "data"


def print_csv(write, *args):
    buf = io.StringIO()
    write(*args, buf)
    print("    " + buf.getvalue().replace("\n", "\n    ").rstrip())
    print()


def main():
    print("=" * 64)
    print("  Rankings and threshold tables, bundled 2017 corpora")
    print("=" * 64)

    for name, key in [
        ("top_absolute_2017.csv", RankKey.ABSOLUTE),
        ("top_relative_2017.csv", RankKey.RELATIVE),
    ]:
        corpus, log = parse_aggregate(DATA / name)
        summary = dataset_summary(corpus)
        reports, excluded = volatility_reports(corpus)
        print(f"\n  {name}: {summary.journals} journals, "
              f"{summary.papers} papers, {summary.citations} citations")
        if excluded:
            print(f"  excluded from ranking: {[e.journal_id for e in excluded]}")
        print(f"\n  top 5 by {key.value} volatility:")
        print_csv(write_ranked_csv, rank_by_volatility(reports, key, 5))

    corpus, _ = parse_aggregate(DATA / "top_absolute_2017.csv")
    reports, _ = volatility_reports(corpus)
    cuts = [Fraction(c) for c in (1, 5, 10, 50)]
    print("  journals whose average moved by more than each cut:")
    print_csv(write_thresholds_csv, threshold_table(reports, RankKey.ABSOLUTE, cuts))

    print("  plot-ready volatility vs size points (scatter.csv format):")
    print_csv(write_scatter_csv, scatter_data(reports))
    return 0


if __name__ == "__main__":
    sys.exit(main())
