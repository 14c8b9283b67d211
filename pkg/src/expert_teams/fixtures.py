"""Desk-scale fixture graphs with hand-checkable optima."""

from __future__ import annotations

from .network import ExpertNetwork, load_network

__all__ = ["desk_graph_d1", "D1_NAMES"]

D1_NAMES = ("A", "B", "C", "D")


def desk_graph_d1() -> ExpertNetwork:
    """Four experts, three edges; small enough to enumerate every team.

    A(h=10, {s1}) -0.2- C(h=20, no skills) -0.2- B(h=2, {s2}); A -0.9- D(h=5, {s2}).
    Covering {s1, s2}: the cheapest-communication team is {A, C, B} (CC 0.4)
    while {A, D} (CC 0.9) wins once skill-holder authority is weighted in.
    """
    nodes = [
        (0, "A", 10.0, ["s1"]),
        (1, "B", 2.0, ["s2"]),
        (2, "C", 20.0, []),
        (3, "D", 5.0, ["s2"]),
    ]
    edges = [(0, 2, 0.2), (2, 1, 0.2), (0, 3, 0.9)]
    return load_network(nodes, edges)
