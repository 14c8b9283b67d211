"""Team scoring: communication cost, authority objectives, and the
edge-weight transformation that folds node authorities into the graph.

A team is a connected subtree with one expert assigned per required skill;
nodes holding no assigned skill are connectors.  All scores are set up as
minimizations: authority enters through inverse authority, so "high h-index
connectors" means "low connector authority score".
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

from .errors import ExpertTeamsError
from .network import Expert, ExpertNetwork

__all__ = [
    "Mode",
    "ScoreMode",
    "SearchParams",
    "Team",
    "TransformedNetwork",
    "communication_cost",
    "connector_authority",
    "skill_holder_authority",
    "ca_cc",
    "sa_ca_cc",
    "team_score",
    "transform_graph",
    "adjusted_skill_cost",
    "validate_team",
]


class Mode(str, enum.Enum):
    """Ranking objective.  CA is the pure connector-authority problem and is
    served by the combined machinery with the tradeoff pinned to 1."""

    CC = "cc"
    CA = "ca"
    CA_CC = "ca-cc"
    SA_CA_CC = "sa-ca-cc"


class ScoreMode(str, enum.Enum):
    """How candidate teams are compared across roots: by the greedy
    accumulated cost (the literal algorithm) or by re-scoring each assembled
    team with the exact objective."""

    SURROGATE = "surrogate"
    TRUE_OBJECTIVE = "true"


@dataclass(frozen=True)
class SearchParams:
    mode: Mode = Mode.SA_CA_CC
    gamma: float = 0.6
    lam: float = 0.6
    k: int = 1
    seed: int = 0
    normalize: bool = False
    score_mode: ScoreMode = ScoreMode.TRUE_OBJECTIVE

    def __post_init__(self):
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError("gamma out of range")
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError("lambda out of range")
        if self.k < 1:
            raise ValueError("k must be >= 1")

    @property
    def effective_gamma(self) -> float:
        return 1.0 if self.mode is Mode.CA else self.gamma


@dataclass(frozen=True)
class Team:
    """Connected subtree plus the skill -> expert assignment."""

    root: int
    assignment: tuple[tuple[str, int], ...]  # sorted by skill name
    nodes: frozenset[int]
    edges: frozenset[tuple[int, int]]  # (min, max) pairs

    @classmethod
    def build(cls, root, assignment: dict[str, int], nodes, edges) -> "Team":
        return cls(
            root=root,
            assignment=tuple(sorted(assignment.items())),
            nodes=frozenset(nodes),
            edges=frozenset((min(u, v), max(u, v)) for u, v in edges),
        )

    @property
    def assignment_map(self) -> dict[str, int]:
        return dict(self.assignment)

    @property
    def skill_holders(self) -> frozenset[int]:
        return frozenset(e for _, e in self.assignment)

    @property
    def connectors(self) -> frozenset[int]:
        return self.nodes - self.skill_holders

    @property
    def size(self) -> int:
        return len(self.nodes)

    def identity(self) -> tuple:
        """Dedup key: teams with identical members and assignment are one."""
        return (self.nodes, self.assignment)


def validate_team(network: ExpertNetwork, team: Team, project_skills=None) -> None:
    """Assert the structural invariants; raises on violation."""
    if team.root not in team.nodes:
        raise ExpertTeamsError("root is not a team member")
    if len(team.edges) != len(team.nodes) - 1:
        raise ExpertTeamsError("team edges do not form a tree")
    adj: dict[int, list[int]] = {v: [] for v in team.nodes}
    for u, v in team.edges:
        if u not in team.nodes or v not in team.nodes:
            raise ExpertTeamsError("team edge leaves the node set")
        if not network.has_edge(u, v):
            raise ExpertTeamsError(f"({u},{v}) is not a network edge")
        adj[u].append(v)
        adj[v].append(u)
    stack, seen = [team.root], {team.root}
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if seen != team.nodes:
        raise ExpertTeamsError("team is not connected")
    assigned_skills = {s for s, _ in team.assignment}
    if project_skills is not None and assigned_skills != frozenset(project_skills):
        raise ExpertTeamsError("assignment does not cover the project")
    for skill, expert in team.assignment:
        if expert not in team.nodes:
            raise ExpertTeamsError(f"assigned expert {expert} not in team")
        if skill not in network.experts[expert].skills:
            raise ExpertTeamsError(f"expert {expert} does not hold {skill}")


# -- objective values ---------------------------------------------------------


def communication_cost(network: ExpertNetwork, team: Team) -> float:
    """Sum of the team's edge weights."""
    return float(sum(network.edge_weight(u, v) for u, v in team.edges))


def connector_authority(network: ExpertNetwork, team: Team) -> float:
    """Sum of inverse authorities over members holding no assigned skill."""
    inv = network.inverse_authorities
    return float(sum(inv[c] for c in team.connectors))


def skill_holder_authority(network: ExpertNetwork, team: Team) -> float:
    """Sum of inverse authorities over the distinct assigned experts."""
    inv = network.inverse_authorities
    return float(sum(inv[h] for h in team.skill_holders))


def ca_cc(network: ExpertNetwork, team: Team, gamma: float) -> float:
    return gamma * connector_authority(network, team) + (1.0 - gamma) * communication_cost(network, team)


def sa_ca_cc(network: ExpertNetwork, team: Team, gamma: float, lam: float) -> float:
    return lam * skill_holder_authority(network, team) + (1.0 - lam) * ca_cc(network, team, gamma)


def team_score(network: ExpertNetwork, team: Team, params: SearchParams) -> float:
    """The exact objective value for the configured mode."""
    mode = params.mode
    if mode is Mode.CC:
        return communication_cost(network, team)
    if mode is Mode.CA:
        return connector_authority(network, team)
    if mode is Mode.CA_CC:
        return ca_cc(network, team, params.gamma)
    return sa_ca_cc(network, team, params.gamma, params.lam)


# -- search-side machinery ----------------------------------------------------


@dataclass(frozen=True)
class TransformedNetwork:
    """Same topology as the source, edge weights folded with authorities:
    w'(u,v) = gamma*(a'(u)+a'(v)) + 2*(1-gamma)*w(u,v)."""

    network: ExpertNetwork
    source: ExpertNetwork
    gamma: float


def transform_graph(network: ExpertNetwork, gamma: float) -> TransformedNetwork:
    if not 0.0 <= gamma <= 1.0:
        raise ValueError("gamma out of range")
    inv = network.inverse_authorities
    edges = [
        (u, v, gamma * (inv[u] + inv[v]) + 2.0 * (1.0 - gamma) * w)
        for u, v, w in network.edge_list
    ]
    out = ExpertNetwork(network.experts, edges)
    out.normalized = network.normalized
    return TransformedNetwork(network=out, source=network, gamma=gamma)


def adjusted_skill_cost(
    dist: float,
    root_holds_skill: bool,
    inv_authority_v: float,
    mode: Mode,
    gamma: float,
    lam: float,
) -> float:
    """Per-candidate cost the greedy search minimizes for one skill.

    ``dist`` is the indexed distance from the root to candidate v: on the
    plain graph for CC, on the transformed graph otherwise.  When the root
    itself holds the skill the cost is zero and the skill goes to the root.
    """
    if root_holds_skill:
        return 0.0
    if math.isinf(dist):
        return math.inf
    if mode is Mode.CC:
        return dist
    if mode is Mode.CA:
        return dist - inv_authority_v
    if mode is Mode.CA_CC:
        return dist - gamma * inv_authority_v
    return (1.0 - lam) * (dist - gamma * inv_authority_v) + lam * inv_authority_v
