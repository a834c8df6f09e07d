"""Deterministic synthetic corpora for exercising the volatility pipeline.

Real journal citation reports are proprietary, so scale experiments run on
generated corpora instead.  Every paper's citation count is drawn i.i.d. from
one heavy-tailed model regardless of journal size, which makes size the only
systematic variable: binned statistics then show the textbook sample-mean
behaviour (spread of citation averages shrinking like 1/sqrt(N)) and the
1/N decay of the top-paper volatility envelope.

Reproducibility contract:

* bit generator: numpy PCG64 (versioned and portable across platforms);
* stream splitting: journal sizes come from ``SeedSequence(seed,
  spawn_key=(0,))``; the citation counts of journal index ``j`` (0-based)
  come from ``SeedSequence(seed, spawn_key=(1, j))``.

Per-journal streams are independent and randomly accessible, so generation
may be parallelized across journals while producing byte-identical output in
journal-index order.

Citation models:

* ``discrete_lognormal(mu, sigma)``: floor(exp(Normal(mu, sigma))), support
  {0, 1, ...}; its exact mean is the series sum_{k>=1} P(X >= k).
* ``zipf(alpha, c_max)``: P(k) proportional to k**-alpha on {1..c_max}.

Size models: ``log_uniform(min, max)`` (roughly 1/n frequency over the
integer range) and ``fixed(n)``.  The default corpus configuration uses
log_uniform(2, 1000), under which about 90% of journals have a biennial size
of at most 500.
"""

from __future__ import annotations

import hashlib
import json
import math
from bisect import bisect_right
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Optional, Sequence, Union

import numpy as np

from .errors import ConfigError
from .ingest import Corpus, Provenance, write_papers_csv
from .metrics import MAX_CITATIONS, ItemType, JournalAggregate, PaperRecord


@dataclass(frozen=True)
class LogUniformSizes:
    """Journal sizes with density ~ 1/n on the integers [min, max]."""

    min: int
    max: int
    kind = "log_uniform"

    def __post_init__(self):
        if self.min < 2:
            raise ConfigError(f"log_uniform min must be >= 2, got {self.min}")
        if self.max < self.min:
            raise ConfigError(f"log_uniform max must be >= min, got {self.max}")

    def sample(self, gen: np.random.Generator, n: int) -> np.ndarray:
        u = gen.uniform(math.log(self.min), math.log(self.max + 1), size=n)
        return np.clip(np.floor(np.exp(u)).astype(np.int64), self.min, self.max)

    def as_dict(self) -> dict:
        return {"kind": self.kind, "min": self.min, "max": self.max}


@dataclass(frozen=True)
class FixedSizes:
    """Every journal publishes exactly n citable items."""

    n: int
    kind = "fixed"

    def __post_init__(self):
        if self.n < 1:
            raise ConfigError(f"fixed size must be >= 1, got {self.n}")

    def sample(self, gen: np.random.Generator, n: int) -> np.ndarray:
        return np.full(n, self.n, dtype=np.int64)

    def as_dict(self) -> dict:
        return {"kind": self.kind, "n": self.n}


@dataclass(frozen=True)
class DiscreteLognormal:
    """floor(exp(Normal(mu, sigma))): a conventional heavy-tailed count model."""

    mu: float
    sigma: float
    kind = "discrete_lognormal"

    def __post_init__(self):
        if not self.sigma > 0:
            raise ConfigError(f"sigma must be > 0, got {self.sigma}")

    def sample(self, gen: np.random.Generator, n: int) -> np.ndarray:
        raw = np.floor(np.exp(gen.normal(self.mu, self.sigma, size=n)))
        return np.minimum(raw, MAX_CITATIONS).astype(np.int64)

    def _survival(self, k: int) -> float:
        # P(exp(N) >= k) = P(N >= ln k)
        z = (math.log(k) - self.mu) / self.sigma
        return 0.5 * math.erfc(z / math.sqrt(2))

    def _moments(self) -> tuple[float, float]:
        # E[X] = sum_{k>=1} P(X>=k); E[X^2] = sum_{k>=1} (2k-1) P(X>=k)
        mean = 0.0
        second = 0.0
        k = 1
        while True:
            s = self._survival(k)
            mean += s
            second += (2 * k - 1) * s
            k += 1
            if (s < 1e-15 and k > math.exp(self.mu)) or k > 2_000_000:
                break
        return mean, second

    def mean(self) -> float:
        return self._moments()[0]

    def variance(self) -> float:
        mean, second = self._moments()
        return second - mean * mean

    def as_dict(self) -> dict:
        return {"kind": self.kind, "mu": self.mu, "sigma": self.sigma}


@dataclass(frozen=True)
class ZipfTruncated:
    """P(k) proportional to k**-alpha on the integers {1..c_max}."""

    alpha: float
    c_max: int
    kind = "zipf"

    def __post_init__(self):
        if not self.alpha > 1:
            raise ConfigError(f"zipf alpha must be > 1, got {self.alpha}")
        if self.c_max < 1:
            raise ConfigError(f"zipf c_max must be >= 1, got {self.c_max}")

    def _weights(self) -> np.ndarray:
        k = np.arange(1, self.c_max + 1, dtype=np.float64)
        w = k**-self.alpha
        return w / w.sum()

    def sample(self, gen: np.random.Generator, n: int) -> np.ndarray:
        cdf = np.cumsum(self._weights())
        cdf[-1] = 1.0
        u = gen.random(n)
        return (np.searchsorted(cdf, u, side="right") + 1).astype(np.int64)

    def mean(self) -> float:
        w = self._weights()
        k = np.arange(1, self.c_max + 1, dtype=np.float64)
        return float((k * w).sum())

    def variance(self) -> float:
        w = self._weights()
        k = np.arange(1, self.c_max + 1, dtype=np.float64)
        m = float((k * w).sum())
        return float((k * k * w).sum()) - m * m

    def as_dict(self) -> dict:
        return {"kind": self.kind, "alpha": self.alpha, "c_max": self.c_max}


SizeModel = Union[LogUniformSizes, FixedSizes]
CitationModel = Union[DiscreteLognormal, ZipfTruncated]

_SIZE_MODELS = {"log_uniform": LogUniformSizes, "fixed": FixedSizes}
_CITATION_MODELS = {"discrete_lognormal": DiscreteLognormal, "zipf": ZipfTruncated}


@dataclass(frozen=True)
class SynthConfig:
    """Everything that determines a synthetic corpus, bit for bit."""

    n_journals: int
    size_model: SizeModel
    citation_model: CitationModel
    seed: int

    def __post_init__(self):
        if self.n_journals < 1:
            raise ConfigError(f"n_journals must be >= 1, got {self.n_journals}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must fit in 64 unsigned bits")

    @classmethod
    def default(cls, n_journals: int = 1000, seed: int = 0) -> "SynthConfig":
        return cls(
            n_journals=n_journals,
            size_model=LogUniformSizes(2, 1000),
            citation_model=DiscreteLognormal(mu=0.5, sigma=1.2),
            seed=seed,
        )

    def as_dict(self) -> dict:
        return {
            "n_journals": self.n_journals,
            "size_model": self.size_model.as_dict(),
            "citation_model": self.citation_model.as_dict(),
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SynthConfig":
        try:
            size_spec = dict(data["size_model"])
            cite_spec = dict(data["citation_model"])
            size_cls = _SIZE_MODELS[size_spec.pop("kind")]
            cite_cls = _CITATION_MODELS[cite_spec.pop("kind")]
            return cls(
                n_journals=int(data["n_journals"]),
                size_model=size_cls(**size_spec),
                citation_model=cite_cls(**cite_spec),
                seed=int(data["seed"]),
            )
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"bad synth config: {exc}") from exc

    @classmethod
    def from_json_file(cls, path: Union[str, Path]) -> "SynthConfig":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"bad synth config JSON: {exc}") from exc
        return cls.from_dict(data)


def _journal_ids(config: SynthConfig) -> list[str]:
    width = max(5, len(str(config.n_journals)))
    return [f"S{i:0{width}d}" for i in range(1, config.n_journals + 1)]


def journal_sizes(config: SynthConfig) -> np.ndarray:
    """Biennial sizes for every journal, from the dedicated size stream."""
    seq = np.random.SeedSequence(config.seed, spawn_key=(0,))
    gen = np.random.Generator(np.random.PCG64(seq))
    return config.size_model.sample(gen, config.n_journals)


def journal_citations(config: SynthConfig, index: int, size: int) -> np.ndarray:
    """Citation counts for journal ``index``, from its own derived stream."""
    seq = np.random.SeedSequence(config.seed, spawn_key=(1, index))
    gen = np.random.Generator(np.random.PCG64(seq))
    return config.citation_model.sample(gen, size)


def generate_corpus(config: SynthConfig, *, keep_papers: bool = True) -> Corpus:
    """Build the synthetic corpus: aggregates always, paper records on demand.

    Byte-reproducible for a given config.  With ``keep_papers`` (the default)
    the corpus carries one PaperRecord per paper; switch it off for large
    corpora where only the aggregates matter.
    """
    ids = _journal_ids(config)
    sizes = journal_sizes(config)
    journals: dict[str, JournalAggregate] = {}
    papers: Optional[list[PaperRecord]] = [] if keep_papers else None
    for j, (jid, size) in enumerate(zip(ids, sizes)):
        counts = journal_citations(config, j, int(size))
        journals[jid] = JournalAggregate(
            journal_id=jid,
            name=jid,
            total_citations=int(counts.sum()),
            n_2y=int(size),
            top_cited=int(counts.max()),
        )
        if papers is not None:
            papers.extend(
                PaperRecord(jid, f"{jid}-P{i:06d}", int(c), ItemType.ARTICLE)
                for i, c in enumerate(counts, start=1)
            )
    digest = hashlib.sha256(
        json.dumps(config.as_dict(), sort_keys=True).encode()
    ).hexdigest()
    return Corpus(journals=journals, papers=papers, provenance=Provenance(digest, "synthetic"))


def iter_paper_rows(config: SynthConfig) -> Iterator[tuple]:
    """Schema-A rows for the whole corpus, lazily, in journal-index order."""
    ids = _journal_ids(config)
    sizes = journal_sizes(config)
    for j, (jid, size) in enumerate(zip(ids, sizes)):
        counts = journal_citations(config, j, int(size))
        for i, c in enumerate(counts, start=1):
            yield (jid, jid, f"{jid}-P{i:06d}", "article", int(c))


def write_corpus_csv(config: SynthConfig, dest) -> int:
    """Emit the corpus as a Schema-A papers.csv; returns the row count."""
    return write_papers_csv(iter_paper_rows(config), dest)


@dataclass(frozen=True)
class BinRow:
    size_lo: int
    size_hi: int
    journal_count: int
    mean_f: Optional[float]
    max_f: Optional[float]
    sd_f: Optional[float]
    max_delta_f: Optional[float]


@dataclass(frozen=True)
class BinnedStats:
    bins: tuple[BinRow, ...]


def clt_binned_stats(reports, edges: Sequence[int]) -> BinnedStats:
    """Citation-average statistics per size bin.

    ``edges`` are increasing bin boundaries; bin i is [edges[i], edges[i+1]).
    On i.i.d. corpora the spread of f and the top-paper volatility envelope
    both fall with bin size: sd_f because averages of N draws scatter like
    1/sqrt(N), max_delta_f because a single paper moves the average by at
    most ~c/N.  Empty bins report count 0 and null statistics.
    """
    edges = list(edges)
    if len(edges) < 2 or any(a >= b for a, b in zip(edges, edges[1:])):
        raise ConfigError(f"bin edges must be strictly increasing, got {edges}")
    per_bin: list[list] = [[] for _ in range(len(edges) - 1)]
    for report in reports:
        idx = bisect_right(edges, report.n_2y) - 1
        if 0 <= idx < len(per_bin) and report.n_2y < edges[idx + 1]:
            per_bin[idx].append(report)
    rows = []
    for i, bucket in enumerate(per_bin):
        if not bucket:
            rows.append(BinRow(edges[i], edges[i + 1], 0, None, None, None, None))
            continue
        fs = np.array([float(r.f) for r in bucket])
        rows.append(
            BinRow(
                size_lo=edges[i],
                size_hi=edges[i + 1],
                journal_count=len(bucket),
                mean_f=float(fs.mean()),
                max_f=float(fs.max()),
                sd_f=float(fs.std(ddof=1)) if len(bucket) > 1 else None,
                max_delta_f=float(max(r.delta_f for r in bucket)),
            )
        )
    return BinnedStats(bins=tuple(rows))
