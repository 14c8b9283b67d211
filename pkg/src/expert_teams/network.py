"""Expert network model, TSV ingestion, normalization and the skill index.

The network is an undirected weighted graph: nodes are experts carrying a
skill set and a positive authority score, edges carry a nonnegative
communication cost.  Authority maximization is folded into minimization via
the inverse authority ``1/a`` stored per expert.  Instances are immutable
after construction; every transformation returns a new network.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import LoadError, UnknownSkillError

__all__ = [
    "Expert",
    "ExpertNetwork",
    "Project",
    "load_network",
    "load_network_files",
    "write_network_files",
    "jaccard_edge_weight",
    "normalize",
    "skill_index",
]


@dataclass(frozen=True)
class Expert:
    """One node: dense integer id, display name, skill set and authority."""

    id: int
    name: str
    skills: frozenset[str]
    authority: float
    inverse_authority: float


@dataclass(frozen=True)
class Project:
    """The nonempty set of skills a team must cover."""

    skills: frozenset[str]

    def __post_init__(self):
        if not self.skills:
            raise ValueError("project must require at least one skill")

    @classmethod
    def of(cls, skills: Iterable[str]) -> "Project":
        return cls(frozenset(skills))

    def sorted(self) -> list[str]:
        return sorted(self.skills)


class ExpertNetwork:
    """Undirected expert graph with per-node skills and authorities.

    Adjacency is kept both as a CSR triple (``indptr``, ``indices``,
    ``weights``) for the distance machinery and as an unordered-pair weight
    map for scoring.  All arrays are read-only.
    """

    def __init__(self, experts: Sequence[Expert], edges: Sequence[tuple[int, int, float]]):
        self.experts: tuple[Expert, ...] = tuple(experts)
        n = len(self.experts)
        self.n = n
        for i, e in enumerate(self.experts):
            if e.id != i:
                raise LoadError("non-dense ids", f"expert ids must be dense 0..{n - 1}")

        canon = []
        seen: set[tuple[int, int]] = set()
        for u, v, w in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise LoadError("unknown edge endpoint", f"edge ({u},{v}) references unknown expert id")
            if u == v:
                raise LoadError("self-loop", f"self-loop on expert {u}")
            if w < 0:
                raise LoadError("negative edge weight", f"edge ({u},{v}) has negative weight {w}")
            if not math.isfinite(w):
                raise LoadError("non-finite edge weight", f"edge ({u},{v}) has non-finite weight")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise LoadError("duplicate edge", f"edge ({key[0]},{key[1]}) listed more than once")
            seen.add(key)
            canon.append((key[0], key[1], float(w)))
        canon.sort()
        self.edge_list: tuple[tuple[int, int, float], ...] = tuple(canon)
        self.m = len(canon)
        self._weight = {(u, v): w for u, v, w in canon}

        self.authorities = np.array([e.authority for e in self.experts], dtype=np.float64)
        self.inverse_authorities = np.array([e.inverse_authority for e in self.experts], dtype=np.float64)
        self.authorities.setflags(write=False)
        self.inverse_authorities.setflags(write=False)

        deg = np.zeros(n, dtype=np.int64)
        for u, v, _ in canon:
            deg[u] += 1
            deg[v] += 1
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(deg, out=indptr[1:])
        indices = np.empty(2 * self.m, dtype=np.int32)
        weights = np.empty(2 * self.m, dtype=np.float64)
        cursor = indptr[:-1].copy()
        for u, v, w in canon:
            indices[cursor[u]] = v
            weights[cursor[u]] = w
            cursor[u] += 1
            indices[cursor[v]] = u
            weights[cursor[v]] = w
            cursor[v] += 1
        # sort each neighbor list by id so tie-breaks scan in canonical order
        for i in range(n):
            lo, hi = indptr[i], indptr[i + 1]
            order = np.argsort(indices[lo:hi], kind="stable")
            indices[lo:hi] = indices[lo:hi][order]
            weights[lo:hi] = weights[lo:hi][order]
        self.indptr, self.indices, self.csr_weights = indptr, indices, weights
        for a in (self.indptr, self.indices, self.csr_weights):
            a.setflags(write=False)
        self.degrees = deg
        self.degrees.setflags(write=False)
        self.normalized = False

    # -- queries ------------------------------------------------------------

    def edge_weight(self, u: int, v: int) -> float:
        key = (u, v) if u < v else (v, u)
        return self._weight[key]

    def has_edge(self, u: int, v: int) -> bool:
        key = (u, v) if u < v else (v, u)
        return key in self._weight

    def neighbors(self, u: int) -> np.ndarray:
        return self.indices[self.indptr[u]: self.indptr[u + 1]]

    def neighbor_weights(self, u: int) -> np.ndarray:
        return self.csr_weights[self.indptr[u]: self.indptr[u + 1]]

    @property
    def skill_universe(self) -> frozenset[str]:
        if not hasattr(self, "_universe"):
            self._universe = frozenset(s for e in self.experts for s in e.skills)
        return self._universe

    def resolve_project(self, skills: Iterable[str]) -> Project:
        project = Project.of(skills)
        missing = project.skills - self.skill_universe
        if missing:
            raise UnknownSkillError(missing)
        return project

    def content_hash(self) -> str:
        """Stable digest of topology, weights, skills and authorities."""
        h = hashlib.sha256()
        h.update(f"n={self.n};m={self.m};norm={int(self.normalized)}".encode())
        for e in self.experts:
            h.update(f"|{e.id};{e.name};{e.authority!r};{e.inverse_authority!r};".encode())
            h.update(";".join(sorted(e.skills)).encode())
        for u, v, w in self.edge_list:
            h.update(f"|{u},{v},{w!r}".encode())
        return h.hexdigest()

    def __repr__(self):  # pragma: no cover
        return f"ExpertNetwork(n={self.n}, m={self.m}, skills={len(self.skill_universe)})"


def _validated_experts(node_records: Iterable[tuple]) -> list[Expert]:
    by_id: dict[int, Expert] = {}
    for rec in node_records:
        ident, name, authority, skills = rec
        ident = int(ident)
        if ident < 0:
            raise LoadError("negative id", f"expert id {ident} is negative")
        if ident in by_id:
            raise LoadError("duplicate id", f"expert id {ident} appears more than once")
        authority = float(authority)
        if not (authority > 0) or not math.isfinite(authority):
            raise LoadError("non-positive authority", f"expert {ident} has authority {authority}")
        by_id[ident] = Expert(
            id=ident,
            name=str(name),
            skills=frozenset(str(s) for s in skills if str(s)),
            authority=authority,
            inverse_authority=1.0 / authority,
        )
    n = len(by_id)
    if sorted(by_id) != list(range(n)):
        raise LoadError("non-dense ids", f"expert ids must be exactly 0..{n - 1}")
    return [by_id[i] for i in range(n)]


def load_network(node_records: Iterable[tuple], edge_records: Iterable[tuple]) -> ExpertNetwork:
    """Build a validated network from parsed records.

    ``node_records`` yields ``(id, name, authority, skills)`` and
    ``edge_records`` yields ``(src, dst, weight)``.  Violations raise
    :class:`LoadError` with a distinct reason per failure mode.
    """
    experts = _validated_experts(node_records)
    edges = [(int(u), int(v), float(w)) for u, v, w in edge_records]
    return ExpertNetwork(experts, edges)


def _parse_tsv(path: Path, n_fields: int, optional_last: bool = False):
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if not raw.strip() or raw.startswith("#"):
            continue
        parts = raw.split("\t")
        if optional_last and len(parts) == n_fields - 1:
            parts = parts + [""]
        if len(parts) != n_fields:
            raise LoadError(
                "malformed record",
                f"{path}:{lineno}: expected {n_fields} tab-separated fields, got {len(parts)}",
            )
        yield lineno, parts


def load_network_files(nodes_path: str | Path, edges_path: str | Path) -> ExpertNetwork:
    """Load the documented TSV pair.

    Node file: ``id<TAB>name<TAB>authority<TAB>skill;skill;...`` (skills may be
    empty).  Edge file: ``src_id<TAB>dst_id<TAB>weight``.
    """
    nodes_path, edges_path = Path(nodes_path), Path(edges_path)
    node_records = []
    for lineno, (ident, name, auth, skills) in _parse_tsv(nodes_path, 4, optional_last=True):
        try:
            ident_i, auth_f = int(ident), float(auth)
        except ValueError as exc:
            raise LoadError("malformed record", f"{nodes_path}:{lineno}: {exc}") from exc
        node_records.append((ident_i, name, auth_f, [s for s in skills.split(";") if s]))
    edge_records = []
    for lineno, (u, v, w) in _parse_tsv(edges_path, 3):
        try:
            edge_records.append((int(u), int(v), float(w)))
        except ValueError as exc:
            raise LoadError("malformed record", f"{edges_path}:{lineno}: {exc}") from exc
    return load_network(node_records, edge_records)


def write_network_files(network: ExpertNetwork, nodes_path: str | Path, edges_path: str | Path) -> None:
    """Serialize back to the TSV pair; inverse of :func:`load_network_files`."""
    node_lines = []
    for e in network.experts:
        node_lines.append(f"{e.id}\t{e.name}\t{e.authority!r}\t{';'.join(sorted(e.skills))}")
    Path(nodes_path).write_text("\n".join(node_lines) + "\n", encoding="utf-8")
    edge_lines = [f"{u}\t{v}\t{w!r}" for u, v, w in network.edge_list]
    Path(edges_path).write_text("\n".join(edge_lines) + "\n", encoding="utf-8")


def jaccard_edge_weight(papers_a: set, papers_b: set) -> float:
    """Communication cost between co-authors: 1 minus the Jaccard similarity
    of their paper sets.  0 for identical sets, approaching 1 for nearly
    disjoint ones."""
    if not papers_a or not papers_b:
        raise ValueError("jaccard edge weight is undefined for empty paper sets")
    inter = len(papers_a & papers_b)
    union = len(papers_a | papers_b)
    return 1.0 - inter / union


def _minmax(values: np.ndarray) -> np.ndarray:
    if values.size == 0:
        return values.copy()
    lo, hi = float(values.min()), float(values.max())
    if hi - lo <= 0.0:
        return np.zeros_like(values)
    return (values - lo) / (hi - lo)


def normalize(network: ExpertNetwork, enabled: bool = True) -> ExpertNetwork:
    """Min-max scale edge weights and inverse authorities to [0, 1].

    Both fields are scaled independently over the whole network; a constant
    field maps to all zeros.  With ``enabled=False`` the input is returned
    unchanged.  Authorities themselves are kept as loaded so reports can
    still show the raw h-index-like values.
    """
    if not enabled:
        return network
    inv = _minmax(network.inverse_authorities)
    experts = [
        Expert(e.id, e.name, e.skills, e.authority, float(inv[i]))
        for i, e in enumerate(network.experts)
    ]
    raw_w = np.array([w for _, _, w in network.edge_list], dtype=np.float64)
    scaled = _minmax(raw_w)
    edges = [(u, v, float(scaled[i])) for i, (u, v, _) in enumerate(network.edge_list)]
    out = ExpertNetwork(experts, edges)
    out.normalized = True
    return out


def skill_index(network: ExpertNetwork) -> dict[str, list[int]]:
    """Map each skill to the ascending list of expert ids holding it."""
    index: dict[str, list[int]] = {}
    for e in network.experts:
        for s in e.skills:
            index.setdefault(s, []).append(e.id)
    for holders in index.values():
        holders.sort()
    return index
