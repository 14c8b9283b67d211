"""Synthetic benchmark networks at co-authorship-like scale.

Connected graphs with heavy-tailed degrees (preferential attachment over a
random tree backbone), uniform [0,1] edge weights, heavy-tailed integer
authorities and zipf-assigned skills.  Everything is drawn from one seeded
generator in a fixed order, so a seed pins the network exactly.
"""

from __future__ import annotations

import numpy as np

from .network import Expert, ExpertNetwork

__all__ = ["generate_network", "sample_projects"]


def generate_network(
    n_nodes: int,
    n_edges: int,
    n_skills: int,
    seed: int = 0,
    max_authority: int = 10_000,
) -> ExpertNetwork:
    """Connected random expert network with ``n_nodes``/``n_edges``."""
    if n_nodes < 1:
        raise ValueError("need at least one node")
    if n_edges < n_nodes - 1:
        raise ValueError(f"{n_edges} edges cannot connect {n_nodes} nodes")
    cap = n_nodes * (n_nodes - 1) // 2
    if n_edges > cap:
        raise ValueError(f"{n_edges} edges exceed the simple-graph maximum {cap}")
    rng = np.random.default_rng(seed)

    # tree backbone with preferential attachment: endpoints pool doubles as
    # the degree-proportional sampler
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    pool = np.empty(2 * n_edges + 2, dtype=np.int64)
    pool[0] = 0
    pool_size = 1
    for i in range(1, n_nodes):
        target = int(pool[rng.integers(0, pool_size)])
        key = (target, i) if target < i else (i, target)
        edges.append(key)
        seen.add(key)
        pool[pool_size] = i
        pool[pool_size + 1] = target
        pool_size += 2

    attempts = 0
    max_attempts = 50 * n_edges + 1000
    while len(edges) < n_edges:
        u = int(pool[rng.integers(0, pool_size)])
        v = int(pool[rng.integers(0, pool_size)])
        attempts += 1
        if attempts > max_attempts:
            # dense corner: fall back to uniform endpoints
            u = int(rng.integers(0, n_nodes))
            v = int(rng.integers(0, n_nodes))
        if u == v:
            continue
        key = (u, v) if u < v else (v, u)
        if key in seen:
            continue
        seen.add(key)
        edges.append(key)
        if pool_size + 2 <= pool.size:
            pool[pool_size] = u
            pool[pool_size + 1] = v
            pool_size += 2

    weights = rng.uniform(0.0, 1.0, size=n_edges)
    authorities = np.minimum(rng.zipf(2.1, size=n_nodes), max_authority).astype(np.float64)

    skill_names = [f"s{i}" for i in range(n_skills)]
    per_node_counts = rng.poisson(1.5, size=n_nodes)
    skills: list[set[str]] = []
    for i in range(n_nodes):
        chosen: set[str] = set()
        for _ in range(int(per_node_counts[i])):
            sid = int(min(rng.zipf(1.6), n_skills) - 1)
            chosen.add(skill_names[sid])
        skills.append(chosen)
    # every advertised skill gets at least one holder
    held = set().union(*skills) if skills else set()
    for name in skill_names:
        if name not in held:
            skills[int(rng.integers(0, n_nodes))].add(name)

    experts = [
        Expert(
            id=i,
            name=f"expert{i}",
            skills=frozenset(skills[i]),
            authority=float(authorities[i]),
            inverse_authority=1.0 / float(authorities[i]),
        )
        for i in range(n_nodes)
    ]
    edge_list = [(u, v, float(weights[i])) for i, (u, v) in enumerate(edges)]
    return ExpertNetwork(experts, edge_list)


def sample_projects(
    network: ExpertNetwork, n_projects: int, skills_per_project: int, seed: int = 0
) -> list[list[str]]:
    """Uniformly sampled distinct-skill projects from the realized universe."""
    universe = sorted(network.skill_universe)
    if skills_per_project > len(universe):
        raise ValueError("not enough distinct skills in the network")
    rng = np.random.default_rng(seed)
    projects = []
    for _ in range(n_projects):
        picks = rng.choice(len(universe), size=skills_per_project, replace=False)
        projects.append([universe[i] for i in sorted(picks)])
    return projects
