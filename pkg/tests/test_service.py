from __future__ import annotations

import json

import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from expert_teams.cli import main as cli_main
from expert_teams.search import TeamFinder
from expert_teams.service import create_app


@pytest.fixture(scope="module")
def client(d1):
    finder = TeamFinder(d1)
    return TestClient(create_app(finder))


def test_skills_endpoint(client):
    res = client.get("/skills")
    assert res.status_code == 200
    assert res.json() == {
        "skills": [{"name": "s1", "holders": 1}, {"name": "s2", "holders": 2}]
    }


def test_network_stats(client):
    res = client.get("/network/stats")
    assert res.status_code == 200
    body = res.json()
    assert body["nodes"] == 4 and body["edges"] == 3 and body["skills"] == 2


def test_teams_endpoint_matches_engine(client):
    res = client.get(
        "/teams",
        params={"skills": "s1,s2", "mode": "sa-ca-cc", "gamma": 0.6, "lambda": 0.6, "k": 5},
    )
    assert res.status_code == 200
    body = res.json()
    teams = body["teams"]
    assert teams[0]["score"] == pytest.approx(0.324, abs=1e-9)
    assert teams[0]["assignment"] == {"s1": 0, "s2": 3}
    assert body["params"]["lambda"] == 0.6


def test_teams_equal_cli_output(client, d1, tmp_path):
    """Service and CLI must answer identically for identical parameters."""
    from expert_teams.network import write_network_files

    nodes, edges = tmp_path / "n.tsv", tmp_path / "e.tsv"
    write_network_files(d1, nodes, edges)
    runner = CliRunner()
    cli_res = runner.invoke(
        cli_main,
        ["query", "--nodes", str(nodes), "--edges", str(edges), "--skills", "s1,s2",
         "--mode", "sa-ca-cc", "--gamma", "0.6", "--lambda", "0.6", "--k", "5", "--jsonl"],
    )
    assert cli_res.exit_code == 0
    cli_teams = [json.loads(line) for line in cli_res.output.splitlines() if line.strip()]
    srv_teams = client.get(
        "/teams",
        params={"skills": "s1,s2", "mode": "sa-ca-cc", "gamma": 0.6, "lambda": 0.6, "k": 5},
    ).json()["teams"]
    assert cli_teams == srv_teams


def test_gamma_out_of_range(client):
    res = client.get("/teams", params={"skills": "s1", "gamma": 1.5})
    assert res.status_code == 400
    assert res.json() == {"error": "gamma_out_of_range", "message": "gamma out of range"}


def test_lambda_out_of_range(client):
    res = client.get("/teams", params={"skills": "s1", "lambda": -0.1})
    assert res.status_code == 400
    assert res.json()["error"] == "lambda_out_of_range"


def test_unknown_skill_code(client):
    res = client.get("/teams", params={"skills": "s1,warp-drives"})
    assert res.status_code == 400
    body = res.json()
    assert body["error"] == "unknown_skill"
    assert "warp-drives" in body["message"]


def test_bad_mode_code(client):
    res = client.get("/teams", params={"skills": "s1", "mode": "zz"})
    assert res.status_code == 400
    assert res.json()["error"] == "bad_mode"


def test_infeasible_project_404():
    from expert_teams.network import load_network

    net = load_network(
        [(0, "a", 1, ["x"]), (1, "b", 1, ["y"])], []
    )
    client = TestClient(create_app(TeamFinder(net)))
    res = client.get("/teams", params={"skills": "x,y"})
    assert res.status_code == 404
    assert res.json()["error"] == "infeasible_project"


def test_no_skills_rejected(client):
    res = client.get("/teams", params={"skills": " , "})
    assert res.status_code == 400
    assert res.json()["error"] == "no_skills"
