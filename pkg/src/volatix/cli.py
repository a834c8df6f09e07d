"""volatix command line: ingest -> report -> rank/thresholds/scatter, plus a
what-if calculator and the synthetic-corpus generator.

Commands::

    volatix ingest INPUT [--schema papers|journals] [--out journals.csv]
    volatix report CORPUS [--format csv|json] [--exact] [--out PATH]
    volatix rank CORPUS --key abs|rel [--top K] [...]
    volatix thresholds CORPUS --key abs|rel [--cuts 0.1,0.5,...] [...]
    volatix whatif --f F1 --n N1 --c C [--format text|json] [--exact]
    volatix synth CONFIG.json [--seed S] [--out papers.csv]
    volatix scatter CORPUS [--out scatter.csv]

All data goes to stdout (or --out); diagnostics, including the cleaning log
as JSON, go to stderr.  Exit status is 0 unless a fatal error occurred.
CORPUS may be either CSV schema; the header decides.  VOLATIX_THREADS caps
the worker count used for report computation (default: available cores; the
output is identical for any value).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import analytics, ingest, metrics, synthgen
from .display import decimal_str, exact_str, parse_rational, percent_str
from .errors import VolatixError

KEYS = {"abs": analytics.RankKey.ABSOLUTE, "rel": analytics.RankKey.RELATIVE}


def _worker_count() -> int:
    env = os.environ.get("VOLATIX_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            print(f"volatix: ignoring bad VOLATIX_THREADS={env!r}", file=sys.stderr)
    return os.cpu_count() or 1


def _parse_cuts(text: str, key: analytics.RankKey) -> list[Fraction]:
    cuts = [parse_rational(part) for part in text.split(",") if part.strip()]
    if key is analytics.RankKey.RELATIVE:
        cuts = [c / 100 for c in cuts]
    return cuts


def _out_stream(args):
    if args.out:
        return open(args.out, "w", encoding="utf-8", newline="")
    return sys.stdout


def _load_reports(path: str):
    corpus, log = ingest.load_corpus(path)
    reports, excluded = analytics.volatility_reports(
        corpus, max_workers=_worker_count()
    )
    if excluded:
        payload = [{"journal_id": e.journal_id, "reason": e.reason} for e in excluded]
        print(json.dumps({"excluded": payload}), file=sys.stderr)
    return corpus, reports


def cmd_ingest(args) -> int:
    if args.schema == "papers":
        corpus, log = ingest.parse_paper_level(args.input)
    elif args.schema == "journals":
        corpus, log = ingest.parse_aggregate(args.input)
    else:
        corpus, log = ingest.load_corpus(args.input)
    print(log.to_json(), file=sys.stderr)
    out = _out_stream(args)
    try:
        ingest.write_journals_csv(corpus, out)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_report(args) -> int:
    _, reports = _load_reports(args.corpus)
    out = _out_stream(args)
    try:
        if args.format == "json":
            analytics.write_reports_json(reports, out, exact=args.exact)
        else:
            analytics.write_reports_csv(reports, out, exact=args.exact)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_rank(args) -> int:
    _, reports = _load_reports(args.corpus)
    table = analytics.rank_by_volatility(reports, KEYS[args.key], args.top)
    out = _out_stream(args)
    try:
        if args.format == "json":
            analytics.write_ranked_json(table, out, exact=args.exact)
        else:
            analytics.write_ranked_csv(table, out, exact=args.exact)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_thresholds(args) -> int:
    key = KEYS[args.key]
    if args.cuts:
        cuts = _parse_cuts(args.cuts, key)
    elif key is analytics.RankKey.ABSOLUTE:
        cuts = list(analytics.DEFAULT_ABSOLUTE_CUTS)
    else:
        cuts = list(analytics.DEFAULT_RELATIVE_CUTS)
    _, reports = _load_reports(args.corpus)
    table = analytics.threshold_table(reports, key, cuts)
    out = _out_stream(args)
    try:
        if args.format == "json":
            analytics.write_thresholds_json(table, out, exact=args.exact)
        else:
            analytics.write_thresholds_csv(table, out, exact=args.exact)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_whatif(args) -> int:
    inputs = metrics.VolatilityInputs(f1=args.f, n1=args.n, c=args.c)
    effect = metrics.classify_paper(args.c, args.f)
    delta_f = metrics.volatility_exact(inputs)
    delta_f_rel = (
        metrics.volatility_relative_exact(inputs) if args.f > 0 else None
    )
    benefit = metrics.benefit_approx(args.c, args.n)
    floor = metrics.penalty_bound(args.f, args.n)

    def avg(x):
        return exact_str(x) if args.exact else decimal_str(x, 2)

    fields = {
        "classification": effect.value,
        "delta_f": avg(delta_f),
        "delta_f_rel": (
            None
            if delta_f_rel is None
            else (exact_str(delta_f_rel) if args.exact else percent_str(delta_f_rel))
        ),
        "benefit_asymptote": avg(benefit),
        "penalty_floor": avg(floor),
        "break_even_citations": exact_str(args.f) if args.exact else decimal_str(args.f, 2),
    }
    if args.format == "json":
        print(json.dumps(fields))
    else:
        for name, value in fields.items():
            print(f"{name}: {'undefined' if value is None else value}")
    return 0


def cmd_synth(args) -> int:
    config = synthgen.SynthConfig.from_json_file(args.config)
    if args.seed is not None:
        config = synthgen.SynthConfig.from_dict(
            {**config.as_dict(), "seed": args.seed}
        )
    out = _out_stream(args)
    try:
        rows = synthgen.write_corpus_csv(config, out)
    finally:
        if out is not sys.stdout:
            out.close()
    print(f"volatix: wrote {rows} paper rows", file=sys.stderr)
    return 0


def cmd_scatter(args) -> int:
    _, reports = _load_reports(args.corpus)
    points = analytics.scatter_data(reports)
    out = _out_stream(args)
    try:
        analytics.write_scatter_csv(points, out)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _add_output_flags(parser, formats=("csv", "json")):
    parser.add_argument("--format", choices=formats, default=formats[0])
    parser.add_argument(
        "--exact", action="store_true", help="emit rationals as numerator/denominator"
    )
    parser.add_argument("--out", help="write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="volatix",
        description="Single-paper volatility analytics for journal citation averages.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse and clean a citation-report CSV")
    p.add_argument("input")
    p.add_argument("--schema", choices=["papers", "journals", "auto"], default="auto")
    p.add_argument("--out", help="write cleaned journals.csv here (default stdout)")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("report", help="per-journal top-paper volatility reports")
    p.add_argument("corpus")
    _add_output_flags(p)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("rank", help="top-K journals by volatility")
    p.add_argument("corpus")
    p.add_argument("--key", choices=["abs", "rel"], default="abs")
    p.add_argument("--top", type=int, default=10)
    _add_output_flags(p)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("thresholds", help="journal counts above volatility cuts")
    p.add_argument("corpus")
    p.add_argument("--key", choices=["abs", "rel"], default="abs")
    p.add_argument(
        "--cuts",
        help="comma-separated cut values (relative cuts in percent); "
        "defaults to the standard preset for the key",
    )
    _add_output_flags(p)
    p.set_defaults(func=cmd_thresholds)

    p = sub.add_parser("whatif", help="effect of one candidate paper on a journal")
    p.add_argument("--f", type=parse_rational, required=True, help="initial citation average")
    p.add_argument("--n", type=int, required=True, help="initial biennial size")
    p.add_argument("--c", type=int, required=True, help="candidate paper citations")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--exact", action="store_true")
    p.set_defaults(func=cmd_whatif)

    p = sub.add_parser("synth", help="generate a synthetic Schema-A corpus")
    p.add_argument("config", help="JSON config file")
    p.add_argument("--seed", type=int, help="override the config seed")
    p.add_argument("--out", help="write papers.csv here (default stdout)")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("scatter", help="volatility vs size scatter export")
    p.add_argument("corpus")
    p.add_argument("--out", help="write scatter.csv here (default stdout)")
    p.set_defaults(func=cmd_scatter)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except VolatixError as exc:
        print(f"volatix: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"volatix: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
