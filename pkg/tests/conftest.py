from __future__ import annotations

import numpy as np
import pytest

from expert_teams.fixtures import desk_graph_d1
from expert_teams.network import ExpertNetwork, Expert, load_network
from expert_teams.objectives import Team
from expert_teams.search import TeamFinder


@pytest.fixture(scope="session")
def d1() -> ExpertNetwork:
    return desk_graph_d1()


@pytest.fixture(scope="session")
def d1_finder(d1) -> TeamFinder:
    return TeamFinder(d1)


def random_connected_network(rng: np.random.Generator, n: int, extra_edges: int = 0,
                             n_skills: int = 3, skill_prob: float = 0.6) -> ExpertNetwork:
    """Random tree plus extras; every edge weight in [0,1], authorities in [1,50]."""
    edges = {}
    perm = rng.permutation(n)
    for i in range(1, n):
        j = int(rng.integers(0, i))
        u, v = int(perm[i]), int(perm[j])
        edges[(min(u, v), max(u, v))] = float(rng.uniform(0.01, 1.0))
    for _ in range(extra_edges):
        u, v = int(rng.integers(0, n)), int(rng.integers(0, n))
        if u == v:
            continue
        key = (min(u, v), max(u, v))
        if key not in edges:
            edges[key] = float(rng.uniform(0.01, 1.0))
    skills = [f"s{i}" for i in range(n_skills)]
    nodes = []
    for i in range(n):
        mine = [s for s in skills if rng.random() < skill_prob / n_skills * 2]
        nodes.append((i, f"e{i}", float(rng.integers(1, 50)), mine))
    return load_network(nodes, [(u, v, w) for (u, v), w in edges.items()])


def random_team(rng: np.random.Generator, net: ExpertNetwork, max_size: int = 8):
    """Random connected subtree with a valid random assignment.
    Returns (team, project_skills) or None when the grown tree holds no skills."""
    root = int(rng.integers(0, net.n))
    nodes = {root}
    edges = []
    frontier = [root]
    target = int(rng.integers(1, max_size + 1))
    while frontier and len(nodes) < target:
        u = frontier[int(rng.integers(0, len(frontier)))]
        nbrs = [int(x) for x in net.neighbors(u) if int(x) not in nodes]
        if not nbrs:
            frontier.remove(u)
            continue
        v = nbrs[int(rng.integers(0, len(nbrs)))]
        nodes.add(v)
        edges.append((u, v))
        frontier.append(v)
    on_team: dict[str, list[int]] = {}
    for v in nodes:
        for s in net.experts[v].skills:
            on_team.setdefault(s, []).append(v)
    if not on_team:
        return None
    all_skills = sorted(on_team)
    n_pick = int(rng.integers(1, min(3, len(all_skills)) + 1))
    picked = [all_skills[i] for i in rng.choice(len(all_skills), size=n_pick, replace=False)]
    assignment = {s: on_team[s][int(rng.integers(0, len(on_team[s])))] for s in picked}
    team = Team.build(root, assignment, nodes, edges)
    return team, picked
