from __future__ import annotations

import numpy as np
import pytest
from scipy.sparse.csgraph import connected_components

from expert_teams.distances import _scipy_matrix
from expert_teams.network import write_network_files
from expert_teams.synthetic import generate_network, sample_projects


def test_exact_counts_and_ranges():
    net = generate_network(500, 1400, 12, seed=5)
    assert net.n == 500 and net.m == 1400
    assert all(0.0 <= w <= 1.0 for _, _, w in net.edge_list)
    assert np.all(net.authorities >= 1)
    assert np.all(net.authorities == np.round(net.authorities))
    assert net.skill_universe == {f"s{i}" for i in range(12)}


def test_generated_graph_is_connected():
    for seed in (0, 1, 2):
        net = generate_network(300, 700, 8, seed=seed)
        n_comp, _ = connected_components(_scipy_matrix(net), directed=False)
        assert n_comp == 1


def test_seed_determinism_in_memory():
    a = generate_network(120, 320, 6, seed=9)
    b = generate_network(120, 320, 6, seed=9)
    assert a.edge_list == b.edge_list
    assert a.experts == b.experts
    c = generate_network(120, 320, 6, seed=10)
    assert c.edge_list != a.edge_list


def test_seed_determinism_byte_identical_files(tmp_path):
    for i, out in enumerate((tmp_path / "one", tmp_path / "two")):
        net = generate_network(80, 200, 5, seed=31)
        write_network_files(net, f"{out}.nodes.tsv", f"{out}.edges.tsv")
    assert (tmp_path / "one.nodes.tsv").read_bytes() == (tmp_path / "two.nodes.tsv").read_bytes()
    assert (tmp_path / "one.edges.tsv").read_bytes() == (tmp_path / "two.edges.tsv").read_bytes()


def test_infeasible_edge_counts_rejected():
    with pytest.raises(ValueError):
        generate_network(10, 8, 3)  # fewer than n-1
    with pytest.raises(ValueError):
        generate_network(4, 10, 3)  # more than complete graph


def test_heavy_tailed_authorities():
    net = generate_network(3000, 9000, 10, seed=3)
    assert net.authorities.max() >= 10  # a tail exists
    assert np.median(net.authorities) <= 3  # most mass near the floor


def test_sample_projects_deterministic_and_valid():
    net = generate_network(200, 520, 10, seed=2)
    a = sample_projects(net, 5, 4, seed=1)
    b = sample_projects(net, 5, 4, seed=1)
    assert a == b
    for skills in a:
        assert len(skills) == 4 and len(set(skills)) == 4
        assert set(skills) <= net.skill_universe


def test_sample_projects_too_many_skills():
    net = generate_network(50, 100, 3, seed=0)
    with pytest.raises(ValueError):
        sample_projects(net, 2, 99, seed=0)
