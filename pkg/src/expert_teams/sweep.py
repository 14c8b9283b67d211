"""Parameter-sensitivity sweeps and mode comparisons over project batches."""

from __future__ import annotations

from dataclasses import asdict, dataclass, replace
from pathlib import Path

from .errors import LoadError
from .objectives import Mode, SearchParams
from .search import TeamFinder

__all__ = ["SweepRow", "run_sweep", "run_mode_comparison", "load_projects_file"]

MIN_GRID_STEP = 0.05


@dataclass(frozen=True)
class SweepRow:
    param: str
    value: float
    avg_holder_authority: float
    avg_holder_inverse_authority: float
    avg_connector_authority: float
    avg_connector_inverse_authority: float
    avg_team_size: float
    avg_score: float
    n_projects: int
    n_teams: int

    def as_dict(self) -> dict:
        return asdict(self)


def _check_grid(grid: list[float]) -> list[float]:
    if not grid:
        raise ValueError("empty sweep grid")
    out = sorted(float(g) for g in grid)
    for g in out:
        if not 0.0 <= g <= 1.0:
            raise ValueError(f"grid value {g} out of [0,1]")
    for a, b in zip(out, out[1:]):
        if b - a < MIN_GRID_STEP - 1e-12:
            raise ValueError(
                f"grid step {b - a:.4f} below the minimum {MIN_GRID_STEP}; "
                "finer steps do not change results"
            )
    return out


def _pooled_stats(finder: TeamFinder, projects, params: SearchParams):
    net = finder.network_for(params.normalize)
    holder_a: list[float] = []
    holder_inv: list[float] = []
    conn_a: list[float] = []
    conn_inv: list[float] = []
    sizes: list[int] = []
    scores: list[float] = []
    n_teams = 0
    for skills in projects:
        for entry in finder.top_k(skills, params):
            team = entry.team
            n_teams += 1
            sizes.append(team.size)
            scores.append(entry.score)
            for h in team.skill_holders:
                holder_a.append(net.experts[h].authority)
                holder_inv.append(net.experts[h].inverse_authority)
            for c in team.connectors:
                conn_a.append(net.experts[c].authority)
                conn_inv.append(net.experts[c].inverse_authority)

    def mean(xs):
        return sum(xs) / len(xs) if xs else 0.0

    return {
        "avg_holder_authority": mean(holder_a),
        "avg_holder_inverse_authority": mean(holder_inv),
        "avg_connector_authority": mean(conn_a),
        "avg_connector_inverse_authority": mean(conn_inv),
        "avg_team_size": mean(sizes),
        "avg_score": mean(scores),
        "n_teams": n_teams,
    }


def run_sweep(
    finder: TeamFinder,
    projects: list[list[str]],
    param: str,
    grid: list[float],
    base: SearchParams,
) -> list[SweepRow]:
    """One row per grid value: pooled team statistics over
    len(projects) x top-k teams at that parameter setting."""
    if param not in ("lambda", "gamma"):
        raise ValueError("sweep parameter must be 'lambda' or 'gamma'")
    if not projects:
        raise LoadError("empty project file", "no projects to sweep over")
    rows = []
    for value in _check_grid(grid):
        params = replace(base, lam=value) if param == "lambda" else replace(base, gamma=value)
        stats = _pooled_stats(finder, projects, params)
        rows.append(
            SweepRow(param=param, value=value, n_projects=len(projects), **stats)
        )
    return rows


def run_mode_comparison(
    finder: TeamFinder,
    projects: list[list[str]],
    modes: list[Mode],
    base: SearchParams,
) -> list[dict]:
    """Average combined-objective score of each mode's teams on the same
    projects; every mode is scored with the same gamma/lambda."""
    if not projects:
        raise LoadError("empty project file", "no projects to compare on")
    from .objectives import sa_ca_cc

    net = finder.network_for(base.normalize)
    out = []
    for mode in modes:
        params = replace(base, mode=mode)
        scores = []
        for skills in projects:
            for entry in finder.top_k(skills, params):
                scores.append(sa_ca_cc(net, entry.team, base.gamma, base.lam))
        out.append(
            {
                "mode": mode.value,
                "avg_sa_ca_cc": sum(scores) / len(scores) if scores else float("nan"),
                "n_teams": len(scores),
            }
        )
    return out


def load_projects_file(path) -> list[list[str]]:
    """Line-delimited projects: comma-separated skill names per line."""
    projects = []
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        projects.append([s.strip() for s in line.split(",") if s.strip()])
    if not projects:
        raise LoadError("empty project file", f"{path}: contains no projects")
    return projects
