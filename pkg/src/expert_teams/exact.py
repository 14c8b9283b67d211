"""Exhaustive exact solver for desk-scale instances.

Enumerates every node subset that induces a connected subgraph and covers
the project, takes the minimum spanning tree of the induced subgraph as the
team tree (for a fixed node set only communication cost depends on the edge
choice, and the MST minimizes it), and optimizes the skill assignment in
closed form per mode.  Exponential by nature; the budget keeps it honest.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Iterator

from .errors import BudgetExceededError
from .network import ExpertNetwork, Project
from .objectives import Mode, SearchParams, Team, team_score

__all__ = ["OracleBudget", "exact_best_team", "enumerate_feasible_teams"]


@dataclass(frozen=True)
class OracleBudget:
    max_nodes: int = 16
    max_team_size: int | None = None
    timeout: float = 120.0  # seconds


def _assignment_coefficients(params: SearchParams) -> tuple[float, float]:
    """(per-holder, per-non-holder) coefficients on inverse authority."""
    mode = params.mode
    if mode is Mode.CC:
        return 0.0, 0.0
    if mode is Mode.CA:
        return 0.0, 1.0
    if mode is Mode.CA_CC:
        return 0.0, params.gamma
    return params.lam, (1.0 - params.lam) * params.gamma


def _cc_coefficient(params: SearchParams) -> float:
    mode = params.mode
    if mode is Mode.CC:
        return 1.0
    if mode is Mode.CA:
        return 0.0
    if mode is Mode.CA_CC:
        return 1.0 - params.gamma
    return (1.0 - params.lam) * (1.0 - params.gamma)


def _partitions(items: list[str]) -> Iterator[list[list[str]]]:
    """All set partitions (restricted-growth order)."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def _best_assignment(
    subset: list[int],
    skills: list[str],
    holder_sets: dict[str, set[int]],
    inv,
    params: SearchParams,
) -> tuple[float, dict[str, int]] | None:
    """Minimal sum of assignment-dependent terms over valid assignments.

    Returns (c1*sum_holders + c2*sum_others of a', assignment).  Searches
    set partitions of the skills: each block is covered by one expert, so
    choices within a partition can be kept distinct while reuse is captured
    by coarser partitions.  Exact because the best distinct choice per block
    lies in the top-|blocks| candidates.
    """
    c1, c2 = _assignment_coefficients(params)
    members_total = sum(inv[v] for v in subset)
    if c1 == c2:
        assignment = {}
        for s in skills:
            inside = [v for v in subset if v in holder_sets[s]]
            if not inside:
                return None
            assignment[s] = min(inside)
        return c2 * members_total, assignment

    best: tuple[float, tuple] | None = None
    for part in _partitions(skills):
        b = len(part)
        per_block: list[list[int]] = []
        ok = True
        for block in part:
            cands = [v for v in subset if all(v in holder_sets[s] for s in block)]
            if not cands:
                ok = False
                break
            # distinct optimum uses the b extreme candidates of each block
            cands.sort(key=lambda v: (inv[v], v) if c1 > c2 else (-inv[v], v))
            per_block.append(cands[:b])
        if not ok:
            continue
        for combo in itertools.product(*per_block):
            if len(set(combo)) != b:
                continue
            holders = set(combo)
            s_holders = sum(inv[v] for v in holders)
            value = c1 * s_holders + c2 * (members_total - s_holders)
            assignment = tuple(
                sorted((s, v) for block, v in zip(part, combo) for s in block)
            )
            if best is None or (value, assignment) < best:
                best = (value, assignment)
    if best is None:
        return None
    return best[0], dict(best[1])


def _subset_mst(nodes: list[int], sorted_edges) -> tuple[float, list[tuple[int, int]]] | None:
    """Kruskal restricted to ``nodes``; None when the subset is disconnected."""
    inside = set(nodes)
    parent = {v: v for v in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    total = 0.0
    picked = []
    needed = len(nodes) - 1
    for w, u, v in sorted_edges:
        if needed == 0:
            break
        if u in inside and v in inside:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                picked.append((u, v))
                total += w
                needed -= 1
    if needed:
        return None
    return total, picked


def enumerate_feasible_teams(
    network: ExpertNetwork,
    project: Project,
    max_size: int | None = None,
    budget: OracleBudget = OracleBudget(),
    params: SearchParams = SearchParams(mode=Mode.CC),
) -> Iterator[Team]:
    """Every connected covering node subset exactly once, smallest mask
    first, each as a Team with its mode-optimal assignment and MST tree."""
    n = network.n
    if n > budget.max_nodes:
        raise BudgetExceededError(
            f"oracle budget exceeded: {n} nodes > max_nodes={budget.max_nodes}"
        )
    if max_size is None:
        max_size = budget.max_team_size or n
    skills = project.sorted()
    holder_sets: dict[str, set[int]] = {s: set() for s in skills}
    skill_bits: dict[str, int] = {}
    for s in skills:
        bits = 0
        for e in network.experts:
            if s in e.skills:
                holder_sets[s].add(e.id)
                bits |= 1 << e.id
        skill_bits[s] = bits
    sorted_edges = sorted((w, u, v) for u, v, w in network.edge_list)
    inv = network.inverse_authorities
    deadline = time.monotonic() + budget.timeout

    for mask in range(1, 1 << n):
        if mask % 4096 == 0 and time.monotonic() > deadline:
            raise BudgetExceededError("oracle budget exceeded: timeout")
        if bin(mask).count("1") > max_size:
            continue
        if any(mask & skill_bits[s] == 0 for s in skills):
            continue
        nodes = [v for v in range(n) if mask >> v & 1]
        mst = _subset_mst(nodes, sorted_edges)
        if mst is None:
            continue
        _, tree_edges = mst
        assigned = _best_assignment(nodes, skills, holder_sets, inv, params)
        if assigned is None:
            continue
        _, assignment = assigned
        yield Team.build(min(nodes), assignment, nodes, tree_edges)


def exact_best_team(
    network: ExpertNetwork,
    project: Project,
    params: SearchParams,
    budget: OracleBudget = OracleBudget(),
) -> tuple[Team, float] | None:
    """Global optimum team for the configured mode, or None when no
    connected covering subset exists."""
    best: tuple[float, Team] | None = None
    for team in enumerate_feasible_teams(network, project, budget=budget, params=params):
        score = team_score(network, team, params)
        if best is None or score < best[0]:
            best = (score, team)
    if best is None:
        return None
    return best[1], best[0]
