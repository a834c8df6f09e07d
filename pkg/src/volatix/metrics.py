"""Exact single-paper volatility of citation averages.

A journal's citation average (the computed stand-in for its Impact Factor) is

    f1 = C1 / N1

where ``C1`` counts census-year citations to the journal's citable items
(articles and reviews) of the prior two years and ``N1`` counts those items.
Publishing one more paper that brings ``c`` citations moves the average to

    f2 = (C1 + c) / (N1 + 1)

so the single paper shifts the average by

    delta_f(c)   = f2 - f1 = (c - f1) / (N1 + 1)          (volatility)
    delta_f_r(c) = delta_f / f1                           (relative volatility)

Every function here works on integers and ``fractions.Fraction`` and returns
exact rationals; rounding happens only at display time (see
:mod:`volatix.display`).  That exactness is load-bearing: the sign law
(``delta_f > 0`` iff ``c > f1``), the penalty floor, and the
remove-then-re-add round trip are integer identities that float arithmetic
would not preserve.

The top-paper decomposition asks the same question of a journal's own most
cited paper: with final average ``f = C / N_2Y`` and top count ``c*``, the
"initial" state is the journal without that paper, ``f* = (C - c*) /
(N_2Y - 1)``, and ``delta_f(c*) = f - f*`` is how much the single best paper
moved the published average.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .errors import (
    EmptyJournalError,
    InvalidAggregateError,
    InvalidSizeError,
    SingletonJournalError,
    UndefinedRelativeError,
)

Rational = Union[int, Fraction]

#: Largest accepted per-item citation count; sums are unbounded Python ints.
MAX_CITATIONS = 2**31 - 1


class ItemType(enum.Enum):
    """Kind of published item; only articles and reviews are citable."""

    ARTICLE = "article"
    REVIEW = "review"
    FRONT_MATTER = "front_matter"

    @property
    def citable(self) -> bool:
        return self is not ItemType.FRONT_MATTER


class PaperEffect(enum.Enum):
    """Direction a single paper pushes the citation average."""

    BENEFIT = "benefit"
    PENALTY = "penalty"
    NEUTRAL = "neutral"


@dataclass(frozen=True)
class PaperRecord:
    """One published item and its census-window citation count."""

    journal_id: str
    paper_id: str
    citations: int
    item_type: ItemType = ItemType.ARTICLE

    def __post_init__(self):
        if self.citations < 0:
            raise InvalidAggregateError(
                f"paper {self.paper_id!r}: negative citations ({self.citations})"
            )


@dataclass(frozen=True)
class JournalAggregate:
    """Journal-level counts: window citations C, biennial size N_2Y, top count c*.

    Invariants enforced on construction:
      * ``n_2y >= 1``
      * ``0 <= top_cited <= total_citations``
      * a single-paper journal's top paper holds all its citations
    """

    journal_id: str
    name: str
    total_citations: int
    n_2y: int
    top_cited: int

    def __post_init__(self):
        if self.n_2y < 1:
            raise InvalidAggregateError(
                f"journal {self.journal_id!r}: n_2y must be >= 1, got {self.n_2y}"
            )
        if self.total_citations < 0:
            raise InvalidAggregateError(
                f"journal {self.journal_id!r}: negative total_citations"
            )
        if not 0 <= self.top_cited <= self.total_citations:
            raise InvalidAggregateError(
                f"journal {self.journal_id!r}: top_cited {self.top_cited} outside "
                f"[0, {self.total_citations}]"
            )
        if self.n_2y == 1 and self.top_cited != self.total_citations:
            raise InvalidAggregateError(
                f"journal {self.journal_id!r}: single paper must hold all "
                f"{self.total_citations} citations"
            )

    @property
    def citation_average(self) -> Fraction:
        return Fraction(self.total_citations, self.n_2y)


@dataclass(frozen=True)
class VolatilityInputs:
    """Initial state (f1, N1) of a journal plus one candidate paper's count c.

    When built from counts via :meth:`from_counts`, ``f1 * n1`` is the integer
    ``C1`` by construction.
    """

    f1: Fraction
    n1: int
    c: int

    def __post_init__(self):
        if self.n1 < 1:
            raise InvalidSizeError(f"initial size n1 must be >= 1, got {self.n1}")
        if self.f1 < 0:
            raise InvalidAggregateError(f"initial average f1 must be >= 0, got {self.f1}")
        if self.c < 0:
            raise InvalidAggregateError(f"citation count c must be >= 0, got {self.c}")

    @classmethod
    def from_counts(cls, c1: int, n1: int, c: int) -> "VolatilityInputs":
        if n1 < 1:
            raise InvalidSizeError(f"initial size n1 must be >= 1, got {n1}")
        return cls(Fraction(c1, n1), n1, c)


@dataclass(frozen=True)
class VolatilityReport:
    """Per-journal result of the top-paper decomposition.

    ``delta_f_rel`` is None when the paperless average ``f_star`` is zero
    (the relative change is undefined/infinite there).
    """

    journal_id: str
    f: Fraction
    f_star: Fraction
    c_star: int
    delta_f: Fraction
    delta_f_rel: Optional[Fraction]
    n_2y: int


def citation_average(total_citations: int, n: int) -> Fraction:
    """Exact citation average C/N of a journal.

    >>> citation_average(112, 6)
    Fraction(56, 3)
    """
    if n < 1:
        raise InvalidSizeError(f"citable-item count must be >= 1, got {n}")
    if total_citations < 0:
        raise InvalidAggregateError("total_citations must be >= 0")
    return Fraction(total_citations, n)


def updated_average(total_citations: int, n: int, c: int) -> Fraction:
    """Citation average after adding one paper cited ``c`` times: (C+c)/(N+1)."""
    if n < 1:
        raise InvalidSizeError(f"citable-item count must be >= 1, got {n}")
    if c < 0:
        raise InvalidAggregateError("citation count c must be >= 0")
    return Fraction(total_citations + c, n + 1)


def volatility_exact(inputs: VolatilityInputs) -> Fraction:
    """Exact shift of the citation average: (c - f1) / (N1 + 1).

    Positive iff the paper is above the journal's average, zero iff it is
    exactly average, negative iff below.
    """
    return (inputs.c - inputs.f1) / (inputs.n1 + 1)


def volatility_relative_exact(inputs: VolatilityInputs) -> Fraction:
    """Exact relative shift: (c - f1) / (f1 * (N1 + 1)).

    Raises UndefinedRelativeError for journals with zero initial average.
    """
    if inputs.f1 == 0:
        raise UndefinedRelativeError(
            "relative volatility undefined for zero initial average"
        )
    return (inputs.c - inputs.f1) / (inputs.f1 * (inputs.n1 + 1))


def volatility_relative_approx(c: int, total_citations: int) -> Fraction:
    """Highly-cited shortcut c/C1 for the relative shift.

    Valid only in the regime c >> f1 and N1 >> 1; it always overestimates the
    exact value.  ``total_citations`` is the initial count C1 = f1 * N1.
    """
    if total_citations <= 0:
        raise UndefinedRelativeError("approximation undefined for C1 = 0")
    if c < 0:
        raise InvalidAggregateError("citation count c must be >= 0")
    return Fraction(c, total_citations)


def benefit_approx(c: int, n1: int) -> Fraction:
    """Asymptotic gain c/N1 from a paper far above the journal average.

    The exact gain is (c - f1)/(N1 + 1); for c >> f1 and N1 >> 1 it collapses
    to c/N1, which makes the size dependence explicit: the same paper is worth
    ten times more to a journal ten times smaller.
    """
    if n1 < 1:
        raise InvalidSizeError(f"initial size n1 must be >= 1, got {n1}")
    if c < 0:
        raise InvalidAggregateError("citation count c must be >= 0")
    return Fraction(c, n1)


def penalty_bound(f1: Rational, n1: int) -> Fraction:
    """Worst-case shift -f1/(N1 + 1), attained by an uncited paper (c = 0).

    Every volatility satisfies delta_f(c) >= -f1/(N1 + 1), with equality iff
    c = 0.  The looser asymptotic form -f1/N1 (from the same N1 >> 1 limit as
    :func:`benefit_approx`) overstates the loss slightly.
    """
    if n1 < 1:
        raise InvalidSizeError(f"initial size n1 must be >= 1, got {n1}")
    f1 = Fraction(f1)
    if f1 < 0:
        raise InvalidAggregateError("initial average f1 must be >= 0")
    return -f1 / (n1 + 1)


def classify_paper(c: int, f1: Rational) -> PaperEffect:
    """Benefit / penalty / neutral classification, in exact arithmetic."""
    if c < 0:
        raise InvalidAggregateError("citation count c must be >= 0")
    f1 = Fraction(f1)
    if f1 < 0:
        raise InvalidAggregateError("initial average f1 must be >= 0")
    if c > f1:
        return PaperEffect.BENEFIT
    if c < f1:
        return PaperEffect.PENALTY
    return PaperEffect.NEUTRAL


def top_paper_volatility(agg: JournalAggregate) -> VolatilityReport:
    """How much a journal's own top-cited paper moved its citation average.

    Removes one instance of the maximum count c* (ties are value-irrelevant:
    any tied instance leaves the same f*) and reports

        f  = C / N_2Y
        f* = (C - c*) / (N_2Y - 1)
        delta_f = f - f*,   delta_f_rel = delta_f / f*  (None when f* = 0)

    Raises SingletonJournalError for n_2y = 1, where f* would divide by zero;
    such journals stay in corpus summaries but cannot be ranked.
    """
    if agg.n_2y < 2:
        raise SingletonJournalError(
            f"journal {agg.journal_id!r} has a single citable paper; "
            "top-paper decomposition is undefined"
        )
    f = Fraction(agg.total_citations, agg.n_2y)
    f_star = Fraction(agg.total_citations - agg.top_cited, agg.n_2y - 1)
    delta_f = f - f_star
    delta_f_rel = delta_f / f_star if f_star > 0 else None
    return VolatilityReport(
        journal_id=agg.journal_id,
        f=f,
        f_star=f_star,
        c_star=agg.top_cited,
        delta_f=delta_f,
        delta_f_rel=delta_f_rel,
        n_2y=agg.n_2y,
    )


def journal_report_from_papers(
    papers: Iterable[PaperRecord],
) -> tuple[JournalAggregate, VolatilityReport]:
    """Aggregate raw per-paper counts and decompose, as one brute-force pass.

    Front-matter items are ignored.  Serves as the independent oracle for
    :func:`top_paper_volatility`: summing, counting and maxing the citable
    papers must give the identical report.
    """
    papers = list(papers)
    if not papers:
        raise EmptyJournalError("no papers given")
    citable = [p for p in papers if p.item_type.citable]
    if len(citable) < 2:
        raise SingletonJournalError(
            f"need >= 2 citable papers, got {len(citable)}"
        )
    journal_id = citable[0].journal_id
    for p in citable:
        if p.journal_id != journal_id:
            raise InvalidAggregateError(
                f"mixed journals in one report: {journal_id!r} vs {p.journal_id!r}"
            )
    counts = [p.citations for p in citable]
    agg = JournalAggregate(
        journal_id=journal_id,
        name=journal_id,
        total_citations=sum(counts),
        n_2y=len(counts),
        top_cited=max(counts),
    )
    return agg, top_paper_volatility(agg)
