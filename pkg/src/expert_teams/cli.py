"""Command-line interface.

Exit codes: 0 success, 10 load error, 11 unknown skill, 12 infeasible
project, plus click's usage errors for bad flags.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .distances import cached_index
from .errors import InfeasibleProjectError, LoadError, UnknownSkillError
from .fixtures import desk_graph_d1
from .network import load_network_files, write_network_files
from .objectives import Mode, ScoreMode, SearchParams
from .reports import format_team_text, team_payload
from .search import TeamFinder
from .sweep import load_projects_file, run_mode_comparison, run_sweep
from .synthetic import generate_network, sample_projects

EXIT_LOAD_ERROR = 10
EXIT_UNKNOWN_SKILL = 11
EXIT_INFEASIBLE = 12

MODE_CHOICES = [m.value for m in Mode]


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load(nodes, edges):
    try:
        return load_network_files(nodes, edges)
    except LoadError as exc:
        _fail(EXIT_LOAD_ERROR, str(exc))


def _params(mode, gamma, lam, k, seed, score_mode, normalize) -> SearchParams:
    try:
        return SearchParams(
            mode=Mode(mode),
            gamma=gamma,
            lam=lam,
            k=k,
            seed=seed,
            normalize=normalize,
            score_mode=ScoreMode.TRUE_OBJECTIVE if score_mode == "true" else ScoreMode.SURROGATE,
        )
    except ValueError as exc:
        raise click.BadParameter(str(exc))


@click.group()
def main():
    """Team discovery over expert networks."""


network_opts = [
    click.option("--nodes", "nodes_path", required=True, type=click.Path(exists=True, dir_okay=False)),
    click.option("--edges", "edges_path", required=True, type=click.Path(exists=True, dir_okay=False)),
]
search_opts = [
    click.option("--mode", type=click.Choice(MODE_CHOICES), default=Mode.SA_CA_CC.value, show_default=True),
    click.option("--gamma", type=float, default=0.6, show_default=True),
    click.option("--lambda", "lam", type=float, default=0.6, show_default=True),
    click.option("--k", type=int, default=1, show_default=True),
    click.option("--seed", type=int, default=0, show_default=True),
    click.option("--score-mode", type=click.Choice(["surrogate", "true"]), default="true", show_default=True),
    click.option("--normalize/--no-normalize", default=False, show_default=True),
]


def _add_options(opts):
    def wrap(f):
        for opt in reversed(opts):
            f = opt(f)
        return f
    return wrap


@main.command()
@_add_options(network_opts)
@click.option("--skills", required=True, help="comma-separated required skills")
@_add_options(search_opts)
@click.option("--cache", "cache_dir", type=click.Path(file_okay=False), default=None,
              help="directory for persisted distance-label caches")
@click.option("--jsonl", is_flag=True, help="emit one JSON record per team instead of text")
def query(nodes_path, edges_path, skills, mode, gamma, lam, k, seed, score_mode, normalize, cache_dir, jsonl):
    """Rank teams for a set of required skills."""
    network = _load(nodes_path, edges_path)
    params = _params(mode, gamma, lam, k, seed, score_mode, normalize)
    finder = TeamFinder(network, cache_dir=cache_dir)
    skill_list = [s.strip() for s in skills.split(",") if s.strip()]
    try:
        entries = finder.top_k(skill_list, params)
    except UnknownSkillError as exc:
        _fail(EXIT_UNKNOWN_SKILL, str(exc))
    except InfeasibleProjectError as exc:
        _fail(EXIT_INFEASIBLE, str(exc))
    net = finder.network_for(params.normalize)
    for rank, entry in enumerate(entries, start=1):
        payload = team_payload(net, entry, params, rank)
        if jsonl:
            click.echo(json.dumps(payload, sort_keys=True))
        else:
            click.echo(format_team_text(payload))


@main.command()
@_add_options(network_opts)
@click.option("--projects", "projects_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="file with one comma-separated skill list per line")
@click.option("--param", type=click.Choice(["lambda", "gamma"]), default="lambda", show_default=True)
@click.option("--grid", default="0,0.2,0.4,0.6,0.8,1.0", show_default=True,
              help="comma-separated grid values in [0,1], step >= 0.05")
@_add_options(search_opts)
@click.option("--modes", default=None,
              help="comma-separated modes; adds a cross-mode comparison block")
@click.option("--jsonl", is_flag=True)
def sweep(nodes_path, edges_path, projects_path, param, grid, mode, gamma, lam, k, seed,
          score_mode, normalize, modes, jsonl):
    """Sensitivity sweep over lambda or gamma, averaged over projects."""
    network = _load(nodes_path, edges_path)
    params = _params(mode, gamma, lam, k, seed, score_mode, normalize)
    finder = TeamFinder(network)
    try:
        projects = load_projects_file(projects_path)
        grid_values = [float(x) for x in grid.split(",") if x.strip()]
        rows = run_sweep(finder, projects, param, grid_values, params)
    except LoadError as exc:
        _fail(EXIT_LOAD_ERROR, str(exc))
    except UnknownSkillError as exc:
        _fail(EXIT_UNKNOWN_SKILL, str(exc))
    except InfeasibleProjectError as exc:
        _fail(EXIT_INFEASIBLE, str(exc))
    except ValueError as exc:
        raise click.BadParameter(str(exc))
    if jsonl:
        for row in rows:
            click.echo(json.dumps(row.as_dict(), sort_keys=True))
    else:
        click.echo(f"{param:>8}  holder_a  holder_a'  conn_a  conn_a'  size   score")
        for r in rows:
            click.echo(
                f"{r.value:8.2f}  {r.avg_holder_authority:8.3f}  {r.avg_holder_inverse_authority:9.4f}"
                f"  {r.avg_connector_authority:6.2f}  {r.avg_connector_inverse_authority:7.4f}"
                f"  {r.avg_team_size:4.2f}  {r.avg_score:.6f}"
            )
    if modes:
        mode_list = [Mode(m.strip()) for m in modes.split(",") if m.strip()]
        comparison = run_mode_comparison(finder, projects, mode_list, params)
        for row in comparison:
            if jsonl:
                click.echo(json.dumps(row, sort_keys=True))
            else:
                click.echo(f"mode {row['mode']:>9}: avg sa-ca-cc {row['avg_sa_ca_cc']:.6f} over {row['n_teams']} teams")


@main.command()
@click.option("--n", "n_nodes", type=int, default=40_000, show_default=True)
@click.option("--m", "n_edges", type=int, default=125_000, show_default=True)
@click.option("--skills", "n_skills", type=int, default=200, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", "out_prefix", required=True, help="output path prefix")
@click.option("--fixture", type=click.Choice(["d1"]), default=None,
              help="emit a named desk fixture instead of a random graph")
@click.option("--projects", "n_projects", type=int, default=0,
              help="also emit this many sampled projects")
@click.option("--project-skills", type=int, default=4, show_default=True)
def gen(n_nodes, n_edges, n_skills, seed, out_prefix, fixture, n_projects, project_skills):
    """Generate synthetic benchmark network files."""
    if fixture == "d1":
        network = desk_graph_d1()
    else:
        try:
            network = generate_network(n_nodes, n_edges, n_skills, seed=seed)
        except ValueError as exc:
            raise click.BadParameter(str(exc))
    nodes_path = Path(f"{out_prefix}.nodes.tsv")
    edges_path = Path(f"{out_prefix}.edges.tsv")
    write_network_files(network, nodes_path, edges_path)
    click.echo(f"wrote {nodes_path} ({network.n} nodes) and {edges_path} ({network.m} edges)")
    if n_projects:
        projects = sample_projects(network, n_projects, project_skills, seed=seed)
        ppath = Path(f"{out_prefix}.projects.txt")
        ppath.write_text("\n".join(",".join(p) for p in projects) + "\n", encoding="utf-8")
        click.echo(f"wrote {ppath} ({n_projects} projects)")


@main.command()
@_add_options(network_opts)
@click.option("--cache", "cache_dir", required=True, type=click.Path(file_okay=False))
@click.option("--gamma", type=float, default=None,
              help="also index the authority-transformed graph for this gamma")
@click.option("--normalize/--no-normalize", default=False, show_default=True)
def index(nodes_path, edges_path, cache_dir, gamma, normalize):
    """Prebuild distance-label caches so later runs skip indexing."""
    network = _load(nodes_path, edges_path)
    finder = TeamFinder(network, cache_dir=cache_dir)
    _, idx = finder.index_for(normalize, None)
    click.echo(f"base index: {idx.total_label_entries} label entries")
    if gamma is not None:
        if not 0.0 <= gamma <= 1.0:
            raise click.BadParameter("gamma out of range")
        _, idx = finder.index_for(normalize, gamma)
        click.echo(f"gamma={gamma} index: {idx.total_label_entries} label entries")


@main.command()
@_add_options(network_opts)
@click.option("--bind", default="127.0.0.1:8040", show_default=True, help="HOST:PORT")
@click.option("--cache", "cache_dir", type=click.Path(file_okay=False), default=None)
def serve(nodes_path, edges_path, bind, cache_dir):
    """Serve the query API over HTTP (GET /skills, /teams, /network/stats)."""
    import uvicorn

    from .service import create_app

    network = _load(nodes_path, edges_path)
    finder = TeamFinder(network, cache_dir=cache_dir)
    finder.index_for(False, None)  # build before accepting traffic
    host, _, port = bind.rpartition(":")
    if not host or not port.isdigit():
        raise click.BadParameter("--bind must be HOST:PORT")
    app = create_app(finder)
    uvicorn.run(app, host=host, port=int(port), log_level="warning")


if __name__ == "__main__":
    main()
