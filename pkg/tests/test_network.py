from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from expert_teams.errors import LoadError, UnknownSkillError
from expert_teams.network import (
    Project,
    jaccard_edge_weight,
    load_network,
    load_network_files,
    normalize,
    skill_index,
    write_network_files,
)

from conftest import random_connected_network


def test_single_node_reciprocal_authority():
    net = load_network([(0, "solo", 10.0, ["s1"])], [])
    assert net.experts[0].inverse_authority == pytest.approx(0.1)
    assert net.n == 1 and net.m == 0


def test_negative_edge_weight_rejected():
    with pytest.raises(LoadError) as err:
        load_network([(0, "a", 1, []), (1, "b", 1, [])], [(0, 1, -0.5)])
    assert err.value.reason == "negative edge weight"


def test_d1_inverse_authorities(d1):
    assert d1.n == 4 and d1.m == 3
    got = {e.name: e.inverse_authority for e in d1.experts}
    assert got == pytest.approx({"A": 0.1, "B": 0.5, "C": 0.05, "D": 0.2})


@pytest.mark.parametrize(
    "nodes,edges,reason",
    [
        ([(0, "a", 1, []), (0, "b", 1, [])], [], "duplicate id"),
        ([(0, "a", 1, [])], [(0, 1, 0.5)], "unknown edge endpoint"),
        ([(0, "a", 0.0, [])], [], "non-positive authority"),
        ([(0, "a", -3, [])], [], "non-positive authority"),
        ([(0, "a", 1, []), (1, "b", 1, [])], [(1, 1, 0.5)], "self-loop"),
        ([(0, "a", 1, []), (1, "b", 1, [])], [(0, 1, 0.5), (1, 0, 0.7)], "duplicate edge"),
        ([(0, "a", 1, []), (2, "b", 1, [])], [], "non-dense ids"),
    ],
)
def test_load_errors_are_distinct(nodes, edges, reason):
    with pytest.raises(LoadError) as err:
        load_network(nodes, edges)
    assert err.value.reason == reason


def test_round_trip_through_files(tmp_path):
    rng = np.random.default_rng(11)
    net = random_connected_network(rng, 40, extra_edges=25, n_skills=5)
    write_network_files(net, tmp_path / "n.tsv", tmp_path / "e.tsv")
    back = load_network_files(tmp_path / "n.tsv", tmp_path / "e.tsv")
    assert back.n == net.n and back.m == net.m
    assert back.edge_list == net.edge_list
    for a, b in zip(net.experts, back.experts):
        assert a == b


def test_d1_round_trip_identity(tmp_path, d1):
    write_network_files(d1, tmp_path / "n.tsv", tmp_path / "e.tsv")
    back = load_network_files(tmp_path / "n.tsv", tmp_path / "e.tsv")
    assert back.experts == d1.experts
    assert back.edge_list == d1.edge_list


# -- jaccard ------------------------------------------------------------------


def test_jaccard_identical_sets_zero():
    assert jaccard_edge_weight({1, 2, 3}, {1, 2, 3}) == 0.0


def test_jaccard_share_one_of_three():
    assert jaccard_edge_weight({1, 2}, {2, 3}) == pytest.approx(1 - 1 / 3)


def test_jaccard_nine_distinct():
    a = {0, 1, 2, 3, 4}
    b = {4, 5, 6, 7, 8}
    assert jaccard_edge_weight(a, b) == pytest.approx(1 - 1 / 9)


def test_jaccard_empty_rejected():
    with pytest.raises(ValueError):
        jaccard_edge_weight(set(), set())
    with pytest.raises(ValueError):
        jaccard_edge_weight({1}, set())


@given(
    st.sets(st.integers(0, 30), min_size=1, max_size=12),
    st.sets(st.integers(0, 30), min_size=1, max_size=12),
)
def test_jaccard_symmetric_bounded_zero_iff_equal(a, b):
    w1 = jaccard_edge_weight(a, b)
    w2 = jaccard_edge_weight(b, a)
    assert w1 == w2
    assert 0.0 <= w1 <= 1.0
    assert (w1 == 0.0) == (a == b)


# -- normalize ----------------------------------------------------------------


def test_normalize_disabled_is_identity(d1):
    assert normalize(d1, enabled=False) is d1


def test_normalize_inverse_authorities_minmax(d1):
    # a' = {0.05, 0.1, 0.2, 0.5} -> {0, 1/9, 1/3, 1}
    scaled = normalize(d1, enabled=True)
    got = {e.name: e.inverse_authority for e in scaled.experts}
    assert got == pytest.approx({"C": 0.0, "A": 1 / 9, "D": 1 / 3, "B": 1.0})


def test_normalize_constant_weights_map_to_zero():
    net = load_network(
        [(0, "a", 2, []), (1, "b", 4, []), (2, "c", 8, [])],
        [(0, 1, 0.7), (1, 2, 0.7)],
    )
    scaled = normalize(net)
    assert all(w == 0.0 for _, _, w in scaled.edge_list)


def test_normalize_bounds_random():
    rng = np.random.default_rng(5)
    net = random_connected_network(rng, 30, extra_edges=20)
    scaled = normalize(net)
    assert all(0.0 <= w <= 1.0 for _, _, w in scaled.edge_list)
    assert np.all((scaled.inverse_authorities >= 0) & (scaled.inverse_authorities <= 1))


# -- skill index ---------------------------------------------------------------


def test_skill_index_d1(d1):
    idx = skill_index(d1)
    assert idx == {"s1": [0], "s2": [1, 3]}


def test_skill_index_unknown_skill_absent(d1):
    assert "s99" not in skill_index(d1)


def test_skill_index_multi_skill_expert():
    net = load_network([(0, "a", 1, ["x", "y"]), (1, "b", 1, ["y"])], [(0, 1, 0.5)])
    idx = skill_index(net)
    assert idx == {"x": [0], "y": [0, 1]}


def test_skill_index_is_inverse_relation():
    rng = np.random.default_rng(23)
    for _ in range(5):
        net = random_connected_network(rng, int(rng.integers(2, 100)), extra_edges=30, n_skills=6)
        idx = skill_index(net)
        for e in net.experts:
            for s in e.skills:
                assert e.id in idx[s]
        for s, holders in idx.items():
            assert holders == sorted(holders)
            for h in holders:
                assert s in net.experts[h].skills


# -- project -------------------------------------------------------------------


def test_project_must_be_nonempty():
    with pytest.raises(ValueError):
        Project.of([])


def test_project_unknown_skill_rejected(d1):
    with pytest.raises(UnknownSkillError):
        d1.resolve_project(["s1", "nope"])
    proj = d1.resolve_project(["s2", "s1"])
    assert proj.sorted() == ["s1", "s2"]
