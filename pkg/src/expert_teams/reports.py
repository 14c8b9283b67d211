"""Shared result serialization: one payload dict per team.

The CLI, the sweep runner and the HTTP service all format teams through
this module so their answers are identical for identical parameters.
"""

from __future__ import annotations

from .network import ExpertNetwork
from .objectives import (
    SearchParams,
    ca_cc,
    communication_cost,
    connector_authority,
    sa_ca_cc,
    skill_holder_authority,
)
from .search import ScoredTeam

__all__ = ["team_payload", "format_team_text"]


def team_payload(net: ExpertNetwork, entry: ScoredTeam, params: SearchParams, rank: int) -> dict:
    team = entry.team
    assigned: dict[int, list[str]] = {}
    for skill, expert in team.assignment:
        assigned.setdefault(expert, []).append(skill)
    nodes = []
    for v in sorted(team.nodes):
        e = net.experts[v]
        role = "skill_holder" if v in assigned else "connector"
        nodes.append(
            {
                "id": v,
                "name": e.name,
                "authority": e.authority,
                "inverse_authority": e.inverse_authority,
                "role": role,
                "is_root": v == team.root,
                "assigned_skills": sorted(assigned.get(v, [])),
            }
        )
    edges = [
        {"source": u, "target": v, "weight": net.edge_weight(u, v)}
        for u, v in sorted(team.edges)
    ]
    return {
        "rank": rank,
        "root": team.root,
        "score": entry.score,
        "surrogate_cost": entry.surrogate,
        "cc": communication_cost(net, team),
        "ca": connector_authority(net, team),
        "sa": skill_holder_authority(net, team),
        "ca_cc": ca_cc(net, team, params.gamma),
        "sa_ca_cc": sa_ca_cc(net, team, params.gamma, params.lam),
        "size": team.size,
        "nodes": nodes,
        "edges": edges,
        "assignment": {skill: expert for skill, expert in team.assignment},
    }


def format_team_text(payload: dict) -> str:
    lines = [
        f"#{payload['rank']}  score={payload['score']:.6f}  "
        f"cc={payload['cc']:.6f} ca={payload['ca']:.6f} sa={payload['sa']:.6f}  "
        f"size={payload['size']}"
    ]
    for node in payload["nodes"]:
        star = "*" if node["is_root"] else " "
        if node["role"] == "skill_holder":
            role = "holds " + ",".join(node["assigned_skills"])
        else:
            role = "connector"
        lines.append(
            f"  {star}{node['id']:>6} {node['name']:<20} a={node['authority']:<8g} {role}"
        )
    for e in payload["edges"]:
        lines.append(f"   edge {e['source']}--{e['target']} w={e['weight']:.6f}")
    return "\n".join(lines)
