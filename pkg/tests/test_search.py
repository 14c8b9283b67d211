from __future__ import annotations

import numpy as np
import pytest

import expert_teams.search as search_mod
from expert_teams.distances import build_index
from expert_teams.errors import InfeasibleProjectError, UnknownSkillError
from expert_teams.exact import exact_best_team
from expert_teams.network import load_network, skill_index
from expert_teams.objectives import (
    Mode,
    ScoreMode,
    SearchParams,
    communication_cost,
    sa_ca_cc,
    team_score,
    validate_team,
)
from expert_teams.search import TeamFinder, TopKList, best_team, top_k_teams

from conftest import random_connected_network

NAMES = "ABCD"


def node_names(team, names=NAMES):
    return sorted(names[i] for i in team.nodes)


# -- desk fixture ---------------------------------------------------------------


def test_d1_cc_mode(d1_finder):
    entry = d1_finder.best(["s1", "s2"], SearchParams(mode=Mode.CC))
    assert node_names(entry.team) == ["A", "B", "C"]
    assert entry.score == pytest.approx(0.4, abs=1e-9)


def test_d1_sa_ca_cc_mode(d1_finder):
    params = SearchParams(mode=Mode.SA_CA_CC, gamma=0.6, lam=0.6)
    entry = d1_finder.best(["s1", "s2"], params)
    assert node_names(entry.team) == ["A", "D"]
    assert entry.score == pytest.approx(0.324, abs=1e-9)


def test_unknown_skill_raises(d1_finder):
    with pytest.raises(UnknownSkillError):
        d1_finder.best(["s1", "quantum"], SearchParams())


def test_top_k_first_entry_is_best(d1_finder):
    params = SearchParams(mode=Mode.CC, k=2)
    top = d1_finder.top_k(["s1", "s2"], params)
    assert top[0] == d1_finder.best(["s1", "s2"], SearchParams(mode=Mode.CC, k=1))


def test_d1_top2_cc(d1_finder):
    top = d1_finder.top_k(["s1", "s2"], SearchParams(mode=Mode.CC, k=2))
    assert [node_names(e.team) for e in top] == [["A", "B", "C"], ["A", "D"]]
    assert [e.score for e in top] == pytest.approx([0.4, 0.9], abs=1e-9)


def test_k_larger_than_distinct_teams(d1_finder):
    top = d1_finder.top_k(["s1", "s2"], SearchParams(mode=Mode.CC, k=50))
    assert len(top) == 2  # only two distinct greedy teams exist on D1
    keys = {e.team.identity() for e in top}
    assert len(keys) == len(top)


def test_scores_ascending_and_deduplicated(d1_finder):
    for mode in Mode:
        top = d1_finder.top_k(["s1", "s2"], SearchParams(mode=mode, k=10))
        scores = [e.score for e in top]
        assert scores == sorted(scores)
        assert len({e.team.identity() for e in top}) == len(top)


def test_returned_teams_validate(d1):
    rng = np.random.default_rng(61)
    for trial in range(10):
        net = random_connected_network(rng, int(rng.integers(5, 40)), extra_edges=20, n_skills=4)
        finder = TeamFinder(net)
        skills = sorted(net.skill_universe)[:2]
        if not skills:
            continue
        for mode in Mode:
            try:
                top = finder.top_k(skills, SearchParams(mode=mode, k=3))
            except InfeasibleProjectError:
                continue
            for e in top:
                validate_team(net, e.team, frozenset(skills))
                assert e.team.root in e.team.nodes


def test_determinism(d1):
    rng = np.random.default_rng(67)
    net = random_connected_network(rng, 60, extra_edges=40, n_skills=4)
    skills = sorted(net.skill_universe)[:3]
    params = SearchParams(mode=Mode.SA_CA_CC, k=5, seed=9)
    a = TeamFinder(net).top_k(skills, params)
    b = TeamFinder(net).top_k(skills, params)
    assert a == b


def test_surrogate_vs_true_modes_differ_only_in_ranking(d1_finder):
    surro = d1_finder.top_k(
        ["s1", "s2"],
        SearchParams(mode=Mode.SA_CA_CC, k=2, score_mode=ScoreMode.SURROGATE),
    )
    true = d1_finder.top_k(["s1", "s2"], SearchParams(mode=Mode.SA_CA_CC, k=2))
    assert {e.team.identity() for e in surro} == {e.team.identity() for e in true}
    for e in surro:
        assert e.score == e.surrogate


def test_infeasible_project():
    # two components; s1 only in one, s2 only in the other
    net = load_network(
        [(0, "a", 1, ["s1"]), (1, "b", 1, []), (2, "c", 1, ["s2"]), (3, "d", 1, [])],
        [(0, 1, 0.1), (2, 3, 0.1)],
    )
    finder = TeamFinder(net)
    with pytest.raises(InfeasibleProjectError):
        finder.best(["s1", "s2"], SearchParams(mode=Mode.CC))
    # single-component projects still work
    assert node_names(finder.best(["s1"], SearchParams(mode=Mode.CC)).team, "abcd") == ["a"]


def test_root_skipped_when_skill_unreachable():
    # s2 unreachable from the component of nodes 3,4 but reachable elsewhere
    net = load_network(
        [
            (0, "a", 1, ["s1"]), (1, "b", 1, ["s2"]),
            (2, "c", 1, []), (3, "d", 1, ["s1"]), (4, "e", 1, []),
        ],
        [(0, 2, 0.3), (2, 1, 0.4), (3, 4, 0.1)],
    )
    finder = TeamFinder(net)
    entry = finder.best(["s1", "s2"], SearchParams(mode=Mode.CC))
    assert entry.team.nodes == {0, 1, 2}


# -- strategy equivalence ----------------------------------------------------------


def test_bulk_strategy_matches_exact_strategy(monkeypatch):
    rng = np.random.default_rng(71)
    net = random_connected_network(rng, 300, extra_edges=500, n_skills=6)
    skills = sorted(net.skill_universe)[:4]
    params = SearchParams(mode=Mode.SA_CA_CC, k=5, score_mode=ScoreMode.SURROGATE)
    exact = TeamFinder(net).top_k(skills, params)
    monkeypatch.setattr(search_mod, "EXACT_STRATEGY_MAX_N", 10)
    bulk = TeamFinder(net).top_k(skills, params)
    assert [e.team.identity() for e in exact] == [e.team.identity() for e in bulk]
    for a, b in zip(exact, bulk):
        assert a.score == pytest.approx(b.score, abs=1e-12)


# -- max authority -------------------------------------------------------------------


def test_d1_max_authority(d1_finder):
    team = d1_finder.max_authority_team(["s1", "s2"])
    assert node_names(team) == ["A", "D"]
    assert team.assignment_map == {"s1": 0, "s2": 3}


def test_max_authority_single_expert():
    net = load_network([(0, "a", 9, ["x", "y"]), (1, "b", 1, ["x"])], [(0, 1, 0.2)])
    team = TeamFinder(net).max_authority_team(["x", "y"])
    assert team.nodes == {0} and team.edges == frozenset()


def test_max_authority_tie_breaks_lowest_id():
    net = load_network(
        [(0, "a", 5, ["x"]), (1, "b", 5, ["x"]), (2, "c", 1, ["y"])],
        [(0, 2, 0.1), (1, 2, 0.1)],
    )
    team = TeamFinder(net).max_authority_team(["x", "y"])
    assert team.assignment_map["x"] == 0


def test_max_authority_unreachable_selection():
    net = load_network(
        [(0, "a", 9, ["x"]), (1, "b", 9, ["y"]), (2, "c", 1, [])],
        [(0, 2, 0.1)],
    )
    with pytest.raises(InfeasibleProjectError):
        TeamFinder(net).max_authority_team(["x", "y"])


# -- random baseline --------------------------------------------------------------------


def test_random_baseline_deterministic(d1_finder):
    p = SearchParams(gamma=0.6, lam=0.6, seed=123)
    a = d1_finder.random_baseline(["s1", "s2"], p, trials=1)
    b = d1_finder.random_baseline(["s1", "s2"], p, trials=1)
    assert a == b


def test_random_baseline_d1_finds_optimum(d1_finder, d1):
    p = SearchParams(gamma=0.6, lam=0.6, seed=7)
    entry = d1_finder.random_baseline(["s1", "s2"], p, trials=10_000)
    assert entry.score == pytest.approx(0.324, abs=1e-9)
    validate_team(d1, entry.team, {"s1", "s2"})


def test_random_baseline_never_beats_exact():
    rng = np.random.default_rng(73)
    for trial in range(5):
        net = random_connected_network(rng, int(rng.integers(5, 12)), extra_edges=6, n_skills=3)
        skills = sorted(net.skill_universe)[:2]
        params = SearchParams(gamma=0.6, lam=0.6, seed=trial)
        finder = TeamFinder(net)
        got = finder.random_baseline(skills, params, trials=300)
        res = exact_best_team(
            net, net.resolve_project(skills), SearchParams(mode=Mode.SA_CA_CC, gamma=0.6, lam=0.6)
        )
        assert res is not None
        assert res[1] <= got.score + 1e-12


def test_random_baseline_rejects_bad_trials():
    with pytest.raises(ValueError):
        TeamFinder(load_network([(0, "a", 1, ["s1"])], [])).random_baseline(
            ["s1"], SearchParams(), trials=0
        )


# -- functional wrappers ---------------------------------------------------------------


def test_functional_wrappers_match_finder(d1):
    idx = build_index(d1)
    sidx = skill_index(d1)
    params = SearchParams(mode=Mode.CC, k=2)
    via_finder = TeamFinder(d1).top_k(["s1", "s2"], params)
    via_fn = top_k_teams(d1, idx, sidx, ["s1", "s2"], params)
    assert via_fn == via_finder
    assert best_team(d1, idx, sidx, ["s1", "s2"], params) == via_finder[0]


def test_topk_list_dedupes_and_caps(d1):
    from expert_teams.search import ScoredTeam
    from expert_teams.objectives import Team

    t1 = Team.build(0, {"s1": 0}, {0}, [])
    t2 = Team.build(1, {"s2": 1}, {1}, [])
    lst = TopKList(1)
    lst.offer(ScoredTeam(t1, 2.0, 2.0, 0))
    lst.offer(ScoredTeam(t1, 1.0, 1.0, 3))  # same identity, better score wins
    lst.offer(ScoredTeam(t2, 0.5, 0.5, 1))
    entries = lst.entries()
    assert len(entries) == 1
    assert entries[0].team is t2
