"""Bibliographic corpus ingestion: authors, title-term skills, Jaccard edges.

Builds an expert network from publication records.  Skills are extracted
only for junior authors (few papers): a title term becomes a skill when it
occurs in enough of the author's distinct paper titles.  Senior authors keep
empty skill sets but stay in the graph, where they can act as connectors.
Co-authors are linked with weight 1 minus the Jaccard similarity of their
paper sets.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import LoadError
from .network import Expert, ExpertNetwork, jaccard_edge_weight

__all__ = ["PublicationRecord", "ingest_corpus", "load_corpus_file", "tokenize_title"]

# Minimal stop list for paper titles; terms shorter than 3 chars are dropped too.
STOP_WORDS = frozenset(
    """a an and are as at be by for from in into is it its of on or over the
    their this to towards under using via with within without""".split()
)

_TOKEN_SPLIT = re.compile(r"[^0-9a-z]+")


@dataclass(frozen=True)
class PublicationRecord:
    """One (author, paper) row of the corpus; title used for skill terms."""

    author_id: int
    paper_id: int
    title: str
    authority: float | None = None


def tokenize_title(title: str) -> set[str]:
    """Lowercase, split on non-alphanumerics, drop stop words and tiny tokens."""
    tokens = _TOKEN_SPLIT.split(title.lower())
    return {t for t in tokens if len(t) >= 3 and t not in STOP_WORDS}


def ingest_corpus(
    records: Sequence[PublicationRecord],
    junior_max_papers: int = 10,
    min_term_occurrence: int = 2,
) -> ExpertNetwork:
    """Build an expert network from publication records.

    Authors with fewer than ``junior_max_papers`` papers get a skill for every
    title term that occurs in at least ``min_term_occurrence`` of their
    distinct paper titles; everyone else keeps an empty skill set.  Authority
    comes from the optional per-record authority column, floored at 1.
    """
    if not records:
        raise LoadError("empty corpus", "corpus contains no publication records")
    if junior_max_papers < 1:
        raise ValueError("junior_max_papers must be >= 1")
    if min_term_occurrence < 1:
        raise ValueError("min_term_occurrence must be >= 1")

    papers: dict[int, set[int]] = {}
    titles: dict[int, dict[int, str]] = {}
    authority: dict[int, float] = {}
    by_paper: dict[int, set[int]] = {}
    seen: set[tuple[int, int]] = set()
    for rec in records:
        key = (rec.author_id, rec.paper_id)
        if key in seen:
            raise LoadError(
                "duplicate publication record",
                f"(author {rec.author_id}, paper {rec.paper_id}) listed more than once",
            )
        seen.add(key)
        papers.setdefault(rec.author_id, set()).add(rec.paper_id)
        titles.setdefault(rec.author_id, {})[rec.paper_id] = rec.title
        by_paper.setdefault(rec.paper_id, set()).add(rec.author_id)
        if rec.authority is not None:
            authority[rec.author_id] = max(authority.get(rec.author_id, 1.0), float(rec.authority))

    author_ids = sorted(papers)
    dense = {a: i for i, a in enumerate(author_ids)}

    experts = []
    for a in author_ids:
        paper_set = papers[a]
        assert paper_set, "author with zero papers cannot be constructed from records"
        skills: set[str] = set()
        if len(paper_set) < junior_max_papers:
            counts: dict[str, int] = {}
            for title in titles[a].values():
                for term in tokenize_title(title):
                    counts[term] = counts.get(term, 0) + 1
            skills = {t for t, c in counts.items() if c >= min_term_occurrence}
        auth = max(1.0, authority.get(a, 1.0))
        experts.append(
            Expert(
                id=dense[a],
                name=str(a),
                skills=frozenset(skills),
                authority=auth,
                inverse_authority=1.0 / auth,
            )
        )

    pair_set: set[tuple[int, int]] = set()
    for coauthors in by_paper.values():
        ids = sorted(coauthors)
        for i in range(len(ids)):
            for j in range(i + 1, len(ids)):
                pair_set.add((ids[i], ids[j]))
    edges = [
        (dense[a], dense[b], jaccard_edge_weight(papers[a], papers[b]))
        for a, b in sorted(pair_set)
    ]
    return ExpertNetwork(experts, edges)


def load_corpus_file(path: str | Path) -> list[PublicationRecord]:
    """Read line-delimited ``author_id<TAB>paper_id<TAB>title[<TAB>authority]``."""
    records = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        if not raw.strip() or raw.startswith("#"):
            continue
        parts = raw.split("\t")
        if len(parts) not in (3, 4):
            raise LoadError("malformed record", f"{path}:{lineno}: expected 3 or 4 fields")
        try:
            author, paper = int(parts[0]), int(parts[1])
            auth = float(parts[3]) if len(parts) == 4 and parts[3] else None
        except ValueError as exc:
            raise LoadError("malformed record", f"{path}:{lineno}: {exc}") from exc
        records.append(PublicationRecord(author, paper, parts[2], auth))
    return records
