"""Greedy root-enumeration team search with top-k ranking.

Every expert is tried as a root; per required skill the root grabs the
candidate minimizing the mode's adjusted distance cost, paths from the root
to the picked experts are merged into a tree, and the per-root teams are
ranked either by the accumulated greedy cost (``surrogate``) or by the exact
objective of the assembled team (``true``, the default).  Authority-aware
modes run the same loop on the transformed graph.

Ties break deterministically everywhere: lowest candidate id, lowest root
id, lexicographic skill order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .distances import (
    DistanceIndex,
    build_index,
    cached_index,
    shortest_path_tree,
    walk_path,
)
from .errors import InfeasibleProjectError
from .network import ExpertNetwork, Project, normalize, skill_index
from .objectives import (
    Mode,
    ScoreMode,
    SearchParams,
    Team,
    sa_ca_cc,
    team_score,
    transform_graph,
)

__all__ = [
    "ScoredTeam",
    "TopKList",
    "TeamFinder",
    "best_team",
    "top_k_teams",
    "max_authority_team",
    "random_baseline",
]

# Above this size the root ranking switches from one exact pass per root to
# the landmark-aggregated bulk ranking (identical up to float regrouping).
EXACT_STRATEGY_MAX_N = 4096


@dataclass(frozen=True)
class ScoredTeam:
    team: Team
    score: float          # ranking score per the configured score mode
    surrogate: float      # greedy accumulated cost for this root
    root: int


class TopKList:
    """Ascending score list of up to k teams, deduplicated by
    (node set, assignment) identity."""

    def __init__(self, k: int):
        self.k = k
        self._by_identity: dict[tuple, ScoredTeam] = {}

    def offer(self, entry: ScoredTeam) -> None:
        key = entry.team.identity()
        held = self._by_identity.get(key)
        if held is None or (entry.score, entry.root) < (held.score, held.root):
            self._by_identity[key] = entry

    def entries(self) -> list[ScoredTeam]:
        ranked = sorted(self._by_identity.values(), key=lambda e: (e.score, e.root))
        return ranked[: self.k]

    def __len__(self):
        return min(len(self._by_identity), self.k)


def _mode_coefficients(params: SearchParams) -> tuple[float, float]:
    """(kd, kv) such that the adjusted cost equals kd*dist + kv*a'(v);
    used only for bulk root ranking."""
    mode = params.mode
    if mode is Mode.CC:
        return 1.0, 0.0
    if mode is Mode.CA:
        return 1.0, -1.0
    if mode is Mode.CA_CC:
        return 1.0, -params.gamma
    lam = params.lam
    return (1.0 - lam), -(1.0 - lam) * params.gamma + lam


def _adjusted_cost_array(dist: np.ndarray, inv: np.ndarray, params: SearchParams) -> np.ndarray:
    """Vectorized twin of objectives.adjusted_skill_cost, same float grouping."""
    mode = params.mode
    if mode is Mode.CC:
        out = dist.copy()
    elif mode is Mode.CA:
        out = dist - inv
    elif mode is Mode.CA_CC:
        out = dist - params.gamma * inv
    else:
        lam = params.lam
        out = (1.0 - lam) * (dist - params.gamma * inv) + lam * inv
    out[np.isinf(dist)] = np.inf
    return out


class TeamFinder:
    """Search session over one loaded network.

    Indexes (plain and per-gamma transformed, optionally normalized) are
    built on first use and cached for the session; pass ``cache_dir`` to
    persist them across processes keyed by network content hash.
    """

    def __init__(self, network: ExpertNetwork, cache_dir=None):
        self.network = network
        self.cache_dir = cache_dir
        self._nets: dict[bool, ExpertNetwork] = {False: network}
        self._skill_idx: dict[bool, dict[str, list[int]]] = {}
        self._indexes: dict[tuple[bool, float | None], tuple[ExpertNetwork, DistanceIndex]] = {}

    # -- cached views --------------------------------------------------------

    def network_for(self, normalized: bool) -> ExpertNetwork:
        if normalized not in self._nets:
            self._nets[normalized] = normalize(self.network, True)
        return self._nets[normalized]

    def skill_index_for(self, normalized: bool) -> dict[str, list[int]]:
        if normalized not in self._skill_idx:
            self._skill_idx[normalized] = skill_index(self.network_for(normalized))
        return self._skill_idx[normalized]

    def index_for(self, normalized: bool, gamma: float | None) -> tuple[ExpertNetwork, DistanceIndex]:
        key = (normalized, gamma)
        if key not in self._indexes:
            base = self.network_for(normalized)
            search_net = base if gamma is None else transform_graph(base, gamma).network
            if self.cache_dir is not None:
                tag = "base" if gamma is None else f"g{gamma:.6f}"
                tag += ".norm" if normalized else ""
                idx = cached_index(search_net, self.cache_dir, tag)
            else:
                idx = build_index(search_net)
            self._indexes[key] = (search_net, idx)
        return self._indexes[key]

    def _search_setup(self, skills: Iterable[str], params: SearchParams):
        net = self.network_for(params.normalize)
        project = net.resolve_project(skills)
        sidx = self.skill_index_for(params.normalize)
        gamma = None if params.mode is Mode.CC else params.effective_gamma
        search_net, index = self.index_for(params.normalize, gamma)
        ordered = project.sorted()
        holders = [np.asarray(sidx[s], dtype=np.int64) for s in ordered]
        return net, search_net, index, project, ordered, holders

    # -- per-root candidate construction --------------------------------------

    def _root_selection(self, root, dist, ordered, holders, holder_sets, net, params):
        """Greedy per-skill choices for one root from its distance row.
        Returns (choices, surrogate) or None when some skill is unreachable."""
        inv = net.inverse_authorities
        choices: list[int] = []
        surrogate = 0.0
        for skill, cand, cand_set in zip(ordered, holders, holder_sets):
            if root in cand_set:
                choices.append(root)
                continue
            vals = _adjusted_cost_array(dist[cand], inv[cand], params)
            j = int(np.argmin(vals))
            if math.isinf(vals[j]):
                return None
            choices.append(int(cand[j]))
            surrogate += float(vals[j])
        return choices, surrogate

    def _materialize(self, root, choices, ordered, search_net, dist, dist_fn=None) -> Team:
        """Union of root->expert shortest paths, kept a tree by skipping
        edges into already-present nodes."""
        nodes = {root}
        edges: list[tuple[int, int]] = []
        for v in choices:
            if v in nodes:
                continue
            if dist_fn is not None:
                path = walk_path_fn(search_net, dist_fn, root, v)
            else:
                path = walk_path(search_net, dist, root, v)
            for a, b in zip(path, path[1:]):
                if b not in nodes:
                    nodes.add(b)
                    edges.append((a, b))
        return Team.build(root, dict(zip(ordered, choices)), nodes, edges)

    def _candidate_for_root(self, root, ordered, holders, holder_sets, net, search_net, index, params):
        dist = index.dist_from(root)
        sel = self._root_selection(root, dist, ordered, holders, holder_sets, net, params)
        if sel is None:
            return None
        choices, surrogate = sel
        team = self._materialize(root, choices, ordered, search_net, dist)
        if params.score_mode is ScoreMode.SURROGATE:
            score = surrogate
        else:
            score = team_score(net, team, params)
        return ScoredTeam(team=team, score=score, surrogate=surrogate, root=root)

    def _scale_candidate(self, root, ordered, holders, holder_sets, net, search_net,
                         index, params, tables, kd):
        """Candidate team for one root without a full distance row: skill
        choices come from the bulk witness tables, paths from memoized pair
        queries, and the surrogate is recomputed with the exact per-candidate
        formula."""
        choices: list[int] = []
        for (cand_set, (best, argbest)) in zip(holder_sets, tables):
            if root in cand_set:
                choices.append(root)
                continue
            v = index.best_target_for(root, kd, best, argbest)
            if v < 0:
                return None
            choices.append(v)
        memo: dict[int, float] = {root: 0.0}

        def dist_to(x: int) -> float:
            d = memo.get(x)
            if d is None:
                d = index.query(root, x)
                memo[x] = d
            return d

        inv = net.inverse_authorities
        surrogate = 0.0
        for v in choices:
            if v == root:
                continue
            surrogate += adjusted_skill_cost(
                dist_to(v), False, float(inv[v]), params.mode, params.gamma, params.lam
            )
        team = self._materialize(root, choices, ordered, search_net, None, dist_fn=dist_to)
        return ScoredTeam(team=team, score=surrogate, surrogate=surrogate, root=root)

    # -- root ranking strategies ----------------------------------------------

    def _bulk_tables(self, ordered, holders, net, index, params):
        """Landmark-aggregated greedy costs for every root at once (scale
        path).  Returns (roots ascending by estimated team cost, estimates,
        per-skill witness tables)."""
        kd, kv = _mode_coefficients(params)
        inv = net.inverse_authorities
        total = np.zeros(net.n)
        tables = []
        for skill, cand in zip(ordered, holders):
            per_root, best, argbest = index.min_adjusted_to_targets(cand, kd, kv * inv[cand])
            per_root[cand] = 0.0  # root holds the skill
            total += per_root
            tables.append((best, argbest))
        feasible = np.isfinite(total)
        if not feasible.any():
            raise InfeasibleProjectError("no root can reach every required skill")
        roots = np.flatnonzero(feasible)
        roots = roots[np.argsort(total[roots], kind="stable")]
        return roots, total, tables, kd

    def top_k(self, skills: Iterable[str], params: SearchParams, trace=None) -> list[ScoredTeam]:
        """Up to k distinct teams, ascending by score.

        Raises UnknownSkillError for skills outside the universe and
        InfeasibleProjectError when no root covers the project.
        """
        net, search_net, index, project, ordered, holders = self._search_setup(skills, params)
        holder_sets = [set(map(int, h)) for h in holders]
        topk = TopKList(params.k)

        lazy_scale = (
            net.n > EXACT_STRATEGY_MAX_N and params.score_mode is ScoreMode.SURROGATE
        )
        if lazy_scale:
            # Materialize in estimated-ascending order; once k distinct teams
            # are held, later roots (estimate >= k-th score up to regrouping
            # noise) cannot displace anything.
            roots, estimates, tables, kd = self._bulk_tables(ordered, holders, net, index, params)
            for root in roots:
                root = int(root)
                if len(topk) >= params.k:
                    worst = topk.entries()[-1].score
                    if estimates[root] >= worst - 1e-12:
                        break
                entry = self._scale_candidate(
                    root, ordered, holders, holder_sets, net, search_net, index,
                    params, tables, kd,
                )
                if entry is None:
                    continue
                topk.offer(entry)
        else:
            found = False
            for root in range(net.n):
                entry = self._candidate_for_root(
                    root, ordered, holders, holder_sets, net, search_net, index, params
                )
                if entry is None:
                    continue
                found = True
                topk.offer(entry)
                if trace is not None:
                    trace.append(entry)
            if not found:
                raise InfeasibleProjectError("no root can reach every required skill")
        entries = topk.entries()
        if not entries:
            raise InfeasibleProjectError("no root can reach every required skill")
        return entries

    def best(self, skills: Iterable[str], params: SearchParams) -> ScoredTeam:
        return self.top_k(skills, params)[0]

    # -- other solvers ---------------------------------------------------------

    def max_authority_team(self, skills: Iterable[str]) -> Team:
        """Per skill the highest-authority holder; selected experts joined
        Steiner-style, nearest-first, via plain shortest paths."""
        net = self.network_for(False)
        project = net.resolve_project(skills)
        sidx = self.skill_index_for(False)
        _, index = self.index_for(False, None)
        auth = net.authorities

        assignment: dict[str, int] = {}
        for s in project.sorted():
            cand = sidx[s]
            assignment[s] = min(cand, key=lambda c: (-auth[c], c))
        selected = sorted(set(assignment.values()))
        start = min(selected, key=lambda c: (-auth[c], c))

        dist_rows = {e: index.dist_from(e) for e in selected}
        nodes = {start}
        edges: list[tuple[int, int]] = []
        remaining = [e for e in selected if e != start]
        while remaining:
            best = None  # (dist, expert, attach)
            for e in remaining:
                row = dist_rows[e]
                attach = min(nodes, key=lambda t: (row[t], t))
                cand = (float(row[attach]), e, attach)
                if best is None or cand < best:
                    best = cand
            d, expert, attach = best
            if math.isinf(d):
                raise InfeasibleProjectError(
                    f"selected expert {expert} unreachable from the growing team"
                )
            path = walk_path(net, dist_rows[expert], expert, attach)
            for a, b in zip(path[::-1], path[::-1][1:]):  # attach -> expert
                if b not in nodes:
                    nodes.add(b)
                    edges.append((a, b))
            remaining.remove(expert)
        team = Team.build(start, assignment, nodes, edges)
        return team

    def random_baseline(self, skills: Iterable[str], params: SearchParams, trials: int = 10_000) -> ScoredTeam:
        """Uniform random root and holders per trial, connected by plain
        shortest paths, scored by the exact combined objective; best kept.
        Infeasible draws count against the trial budget."""
        if trials < 1:
            raise ValueError("trials must be >= 1")
        net = self.network_for(params.normalize)
        project = net.resolve_project(skills)
        sidx = self.skill_index_for(params.normalize)
        _, index = self.index_for(params.normalize, None)
        ordered = project.sorted()
        holders = [sidx[s] for s in ordered]
        rng = np.random.default_rng(params.seed)
        gamma, lam = params.gamma, params.lam
        inv = net.inverse_authorities

        # draw every trial up front (fixed stream), then process grouped by
        # root so each root's distances and predecessor tree are built once;
        # the winner is the value-wise minimum, so processing order is free
        draws: list[tuple[int, list[int]]] = []
        for _ in range(trials):
            root = int(rng.integers(0, net.n))
            picks = [int(h[int(rng.integers(0, len(h)))]) for h in holders]
            draws.append((root, picks))
        by_root: dict[int, list[list[int]]] = {}
        for root, picks in draws:
            by_root.setdefault(root, []).append(picks)

        best: tuple[float, int, tuple[int, ...]] | None = None
        for root in sorted(by_root):
            dist = index.dist_from(root)
            parent = shortest_path_tree(net, dist)
            for picks in by_root[root]:
                if any(math.isinf(dist[v]) for v in picks):
                    continue
                team = self._compose_from_tree(root, picks, net, parent)
                if team is None:
                    continue
                nodes, cc, _ = team
                holders_set = set(picks)
                sa = sum(inv[h] for h in holders_set)
                ca = sum(inv[c] for c in nodes - holders_set)
                score = lam * sa + (1.0 - lam) * (gamma * ca + (1.0 - gamma) * cc)
                key = (score, root, tuple(picks))
                if best is None or key < best:
                    best = key
        if best is None:
            raise InfeasibleProjectError("no feasible random team in the trial budget")
        _, root, picks = best
        dist = index.dist_from(root)
        parent = shortest_path_tree(net, dist)
        nodes, _, edges = self._compose_from_tree(root, list(picks), net, parent)
        team = Team.build(root, dict(zip(ordered, picks)), nodes, edges)
        score = sa_ca_cc(net, team, gamma, lam)
        return ScoredTeam(team=team, score=score, surrogate=score, root=root)

    @staticmethod
    def _compose_from_tree(root, picks, net, parent):
        """Union of predecessor-tree paths root->pick; ancestor chains are
        shared, so stopping at the first in-team node keeps it a tree."""
        nodes = {root}
        cc = 0.0
        edges: list[tuple[int, int]] = []
        for v in picks:
            chain: list[int] = []
            x = v
            while x not in nodes:
                chain.append(x)
                x = int(parent[x])
                if x < 0 or len(chain) > net.n:
                    return None  # stuck walk (zero-weight cycle corner)
            prev = x
            for node in reversed(chain):
                nodes.add(node)
                cc += net.edge_weight(prev, node)
                edges.append((prev, node))
                prev = node
        return nodes, cc, edges


# -- functional wrappers matching the operation contracts ---------------------


def best_team(
    network: ExpertNetwork,
    index: DistanceIndex | None,
    skills_index: dict[str, list[int]] | None,
    project: Project | Sequence[str],
    params: SearchParams,
) -> ScoredTeam:
    return top_k_teams(network, index, skills_index, project, params)[0]


def top_k_teams(
    network: ExpertNetwork,
    index: DistanceIndex | None,
    skills_index: dict[str, list[int]] | None,
    project: Project | Sequence[str],
    params: SearchParams,
) -> list[ScoredTeam]:
    finder = TeamFinder(network)
    if index is not None and not params.normalize:
        finder._indexes[(False, None)] = (network, index)
    if skills_index is not None:
        finder._skill_idx[False] = skills_index
    skills = project.skills if isinstance(project, Project) else project
    return finder.top_k(skills, params)


def max_authority_team(network, index, skills_index, project) -> Team:
    finder = TeamFinder(network)
    if index is not None:
        finder._indexes[(False, None)] = (network, index)
    if skills_index is not None:
        finder._skill_idx[False] = skills_index
    skills = project.skills if isinstance(project, Project) else project
    return finder.max_authority_team(skills)


def random_baseline(network, index, skills_index, project, params, trials=10_000) -> ScoredTeam:
    finder = TeamFinder(network)
    if index is not None and not params.normalize:
        finder._indexes[(False, None)] = (network, index)
    if skills_index is not None:
        finder._skill_idx[False] = skills_index
    skills = project.skills if isinstance(project, Project) else project
    return finder.random_baseline(skills, params, trials)
