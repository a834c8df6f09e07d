"""Streaming ingest and cleaning of journal citation-report CSV files.

Two canonical schemas are accepted (UTF-8, comma-separated, double-quote
escaping, mandatory header, LF or CRLF):

* Schema A, per-paper (``papers.csv``)::

      journal_id,journal_name,paper_id,item_type,citations

  with ``item_type`` one of ``article``, ``review``, ``front_matter``.
  Only articles and reviews count toward a journal's C and N_2Y.

* Schema B, aggregate (``journals.csv``)::

      journal_id,journal_name,total_citations,n_2y,top_paper_citations

Parsing is a single pass with memory proportional to the number of journals,
never the number of rows.  Cleaning mirrors the usual report hygiene:
duplicate journal ids are collapsed (first occurrence wins), journals with
zero or unavailable citation output are dropped, and single-paper journals
are kept but flagged, since their top-paper decomposition is undefined.
Nothing is dropped silently: every removal lands in the CleaningLog, and the
citation totals reconcile exactly (``citations_read == citations_kept +
citations_removed``).

Structurally unreadable rows (wrong arity, unparseable integers) raise
:class:`~volatix.errors.MalformedRowError` with the line number; rows that are
readable but invalid (negative counts, unknown item types, violated count
invariants) are rejected and logged instead.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import BinaryIO, Iterable, Iterator, Optional, Union

from .errors import InvalidAggregateError, MalformedRowError
from .metrics import MAX_CITATIONS, ItemType, JournalAggregate, PaperRecord

logger = logging.getLogger(__name__)

PAPER_HEADER = ["journal_id", "journal_name", "paper_id", "item_type", "citations"]
AGGREGATE_HEADER = [
    "journal_id",
    "journal_name",
    "total_citations",
    "n_2y",
    "top_paper_citations",
]

Source = Union[str, Path, BinaryIO]


@dataclass
class CleaningLog:
    """Audit counters for one ingest pass.

    The five core counters are the serialized interface (see
    :meth:`as_json_dict`).  The citation totals are kept alongside so the
    conservation identity can be checked exactly:

        citations_read == citations_kept + citations_removed

    where "read" covers every row whose citation value parsed to an in-range
    non-negative integer, "kept" is the sum over journals in the returned
    corpus, and "removed" accounts for front-matter rows, rejected rows,
    collapsed duplicates and filtered journals.  Rows whose citation value was
    invalid (negative, above the 2^31 - 1 cap) appear only in
    ``rows_rejected``.
    """

    duplicates_removed: int = 0
    zero_or_na_removed: int = 0
    singletons_excluded: int = 0
    rows_read: int = 0
    journals_kept: int = 0
    # extra accounting, not part of the serialized form
    rows_rejected: int = 0
    citations_read: int = 0
    citations_kept: int = 0
    citations_removed: int = 0

    def as_json_dict(self) -> dict:
        return {
            "duplicates_removed": self.duplicates_removed,
            "zero_or_na_removed": self.zero_or_na_removed,
            "singletons_excluded": self.singletons_excluded,
            "rows_read": self.rows_read,
            "journals_kept": self.journals_kept,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_json_dict(), sort_keys=True)


@dataclass(frozen=True)
class Provenance:
    """Where a corpus came from: SHA-256 of the source bytes plus schema tag."""

    digest: str
    schema: str


@dataclass
class Corpus:
    """Cleaned journal aggregates, optionally with the raw per-paper records."""

    journals: dict[str, JournalAggregate]
    papers: Optional[list[PaperRecord]] = None
    provenance: Optional[Provenance] = None

    def __len__(self) -> int:
        return len(self.journals)


class _HashingReader(io.RawIOBase):
    """Binary pass-through that feeds every byte into a hash."""

    def __init__(self, raw, hasher):
        self._raw = raw
        self._hasher = hasher

    def readable(self) -> bool:
        return True

    def readinto(self, b) -> int:
        data = self._raw.read(len(b))
        n = len(data)
        self._hasher.update(data)
        b[:n] = data
        return n


def _open_rows(source: Source):
    """Wrap a path or binary stream into (csv.reader, hasher, closer)."""
    if isinstance(source, (str, Path)):
        raw = open(source, "rb")
        close_raw = True
    else:
        raw = source
        close_raw = False
    hasher = hashlib.sha256()
    text = io.TextIOWrapper(
        io.BufferedReader(_HashingReader(raw, hasher)),
        encoding="utf-8-sig",
        newline="",
    )

    def close():
        text.detach()
        if close_raw:
            raw.close()

    return csv.reader(text), hasher, close


def _check_header(rows, expected: list[str]) -> bool:
    """Validate the header row; returns False on a completely empty source."""
    header = next(rows, None)
    if header is None:
        return False
    if header != expected:
        raise MalformedRowError(
            f"bad header {header!r}, expected {expected!r}", line=1
        )
    return True


def _parse_count(value: str, line: int, column: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise MalformedRowError(
            f"cannot parse {column} value {value!r} as integer", line, column
        ) from None


def parse_paper_level(source: Source, *, keep_papers: bool = False):
    """Stream a Schema-A file into per-journal aggregates.

    Returns ``(Corpus, CleaningLog)``.  Aggregation is one pass and
    order-independent: C, N_2Y and c* are a sum, a count and a max over the
    journal's citable rows, so any permutation of the input yields the same
    corpus.  Front-matter rows are counted as read and removed but never touch
    C or N_2Y.  Set ``keep_papers`` to retain the raw records (costs memory
    proportional to rows; leave off for large files).
    """
    rows, hasher, close = _open_rows(source)
    log = CleaningLog()
    # journal_id -> [name, total, top, n_citable]
    acc: dict[str, list] = {}
    papers: Optional[list[PaperRecord]] = [] if keep_papers else None
    valid_types = {t.value: t for t in ItemType}
    try:
        if _check_header(rows, PAPER_HEADER):
            for row in rows:
                line = rows.line_num
                if len(row) != 5:
                    raise MalformedRowError(
                        f"expected 5 fields, got {len(row)}", line
                    )
                journal_id, name, paper_id, item_type, citations_text = row
                citations = _parse_count(citations_text, line, "citations")
                log.rows_read += 1
                if not 0 <= citations <= MAX_CITATIONS:
                    log.rows_rejected += 1
                    logger.warning(
                        "line %d: citations %d out of range, row rejected",
                        line,
                        citations,
                    )
                    continue
                kind = valid_types.get(item_type)
                if kind is None:
                    log.rows_rejected += 1
                    log.citations_read += citations
                    log.citations_removed += citations
                    logger.warning(
                        "line %d: unknown item_type %r, row rejected", line, item_type
                    )
                    continue
                log.citations_read += citations
                entry = acc.get(journal_id)
                if entry is None:
                    entry = acc[journal_id] = [name, 0, 0, 0]
                if kind.citable:
                    entry[1] += citations
                    if citations > entry[2]:
                        entry[2] = citations
                    entry[3] += 1
                else:
                    log.citations_removed += citations
                if papers is not None:
                    papers.append(PaperRecord(journal_id, paper_id, citations, kind))
    finally:
        close()

    journals: dict[str, JournalAggregate] = {}
    for journal_id, (name, total, top, n) in acc.items():
        if n == 0 or total == 0:
            # no citable output, or none of it cited: the zero/NA analogue
            log.zero_or_na_removed += 1
            log.citations_removed += total
            logger.info("journal %r removed: zero or no citable output", journal_id)
            continue
        if n == 1:
            log.singletons_excluded += 1
        journals[journal_id] = JournalAggregate(journal_id, name, total, n, top)
        log.citations_kept += total
    log.journals_kept = len(journals)
    corpus = Corpus(
        journals=journals,
        papers=papers,
        provenance=Provenance(hasher.hexdigest(), "papers"),
    )
    return corpus, log


def _iter_aggregate_rows(rows, log: CleaningLog) -> Iterator[JournalAggregate]:
    """Yield validated aggregates from Schema-B rows, rejecting violations."""
    for row in rows:
        line = rows.line_num
        if len(row) != 5:
            raise MalformedRowError(f"expected 5 fields, got {len(row)}", line)
        journal_id, name, total_text, n_text, top_text = row
        total = _parse_count(total_text, line, "total_citations")
        n_2y = _parse_count(n_text, line, "n_2y")
        top = _parse_count(top_text, line, "top_paper_citations")
        log.rows_read += 1
        if not 0 <= total <= MAX_CITATIONS or not 0 <= top <= MAX_CITATIONS:
            log.rows_rejected += 1
            logger.warning("line %d: citation count out of range, row rejected", line)
            continue
        log.citations_read += total
        try:
            yield JournalAggregate(journal_id, name, total, n_2y, top)
        except InvalidAggregateError as exc:
            log.rows_rejected += 1
            log.citations_removed += total
            logger.warning("line %d: %s, row rejected", line, exc)


def parse_aggregate(source: Source):
    """Stream a Schema-B file into a cleaned corpus.

    Returns ``(Corpus, CleaningLog)``.  Rows violating the count invariants
    (e.g. top_paper_citations > total_citations) are rejected with a reason;
    duplicate journal ids and zero-citation journals are then removed exactly
    as :func:`dedupe_and_filter` does.
    """
    rows, hasher, close = _open_rows(source)
    log = CleaningLog()
    try:
        journals: dict[str, JournalAggregate] = {}
        seen: set[str] = set()
        if _check_header(rows, AGGREGATE_HEADER):
            for agg in _iter_aggregate_rows(rows, log):
                _clean_into(journals, seen, agg, log)
    finally:
        close()
    log.journals_kept = len(journals)
    corpus = Corpus(
        journals=journals, provenance=Provenance(hasher.hexdigest(), "journals")
    )
    return corpus, log


def _clean_into(
    journals: dict[str, JournalAggregate],
    seen: set[str],
    agg: JournalAggregate,
    log: CleaningLog,
) -> None:
    """Apply the duplicate / zero-or-NA / singleton rules to one aggregate.

    Dedupe runs before the zero filter, so a zero-citation first occurrence
    still shadows every later row with the same id.
    """
    if agg.journal_id in seen:
        log.duplicates_removed += 1
        log.citations_removed += agg.total_citations
        logger.info("journal %r: duplicate entry dropped", agg.journal_id)
        return
    seen.add(agg.journal_id)
    if agg.total_citations == 0:
        log.zero_or_na_removed += 1
        logger.info("journal %r removed: zero citations", agg.journal_id)
        return
    if agg.n_2y == 1:
        log.singletons_excluded += 1
    journals[agg.journal_id] = agg
    log.citations_kept += agg.total_citations


def dedupe_and_filter(raw: Union[Corpus, Iterable[JournalAggregate]]):
    """Collapse duplicate journal ids (first wins) and drop zero-cited journals.

    Accepts a Corpus or any iterable of aggregates and returns
    ``(Corpus, CleaningLog)``.  Idempotent: running it on its own output is an
    identity apart from the counters.  All anomalies are logged, never fatal.
    """
    if isinstance(raw, Corpus):
        aggregates: Iterable[JournalAggregate] = raw.journals.values()
        papers = raw.papers
        provenance = raw.provenance
    else:
        aggregates = raw
        papers = None
        provenance = None
    log = CleaningLog()
    journals: dict[str, JournalAggregate] = {}
    seen: set[str] = set()
    for agg in aggregates:
        log.rows_read += 1
        log.citations_read += agg.total_citations
        _clean_into(journals, seen, agg, log)
    log.journals_kept = len(journals)
    return Corpus(journals=journals, papers=papers, provenance=provenance), log


def write_journals_csv(corpus: Corpus, dest: Union[str, Path, io.TextIOBase]) -> None:
    """Write a corpus as Schema B, rows sorted by journal_id, LF endings."""
    own = isinstance(dest, (str, Path))
    out = open(dest, "w", encoding="utf-8", newline="") if own else dest
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(AGGREGATE_HEADER)
        for journal_id in sorted(corpus.journals):
            agg = corpus.journals[journal_id]
            writer.writerow(
                [agg.journal_id, agg.name, agg.total_citations, agg.n_2y, agg.top_cited]
            )
    finally:
        if own:
            out.close()


def write_papers_csv(
    rows: Iterable[tuple], dest: Union[str, Path, io.TextIOBase]
) -> int:
    """Write Schema-A rows (journal_id, journal_name, paper_id, item_type,
    citations) and return how many were written."""
    own = isinstance(dest, (str, Path))
    out = open(dest, "w", encoding="utf-8", newline="") if own else dest
    count = 0
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(PAPER_HEADER)
        for row in rows:
            writer.writerow(row)
            count += 1
    finally:
        if own:
            out.close()
    return count


def sniff_schema(path: Union[str, Path]) -> str:
    """Return 'papers' or 'journals' from a file's header line."""
    with open(path, "rb") as fh:
        text = io.TextIOWrapper(fh, encoding="utf-8-sig", newline="")
        header = next(csv.reader(text), None)
    if header == PAPER_HEADER:
        return "papers"
    if header == AGGREGATE_HEADER:
        return "journals"
    raise MalformedRowError(f"unrecognized header {header!r}", line=1)


def load_corpus(path: Union[str, Path], *, keep_papers: bool = False):
    """Parse either schema by sniffing the header; returns (Corpus, CleaningLog)."""
    schema = sniff_schema(path)
    if schema == "papers":
        return parse_paper_level(path, keep_papers=keep_papers)
    return parse_aggregate(path)
