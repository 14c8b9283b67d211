"""Read-only HTTP query service; the browser explorer consumes this API.

Endpoints return plain JSON; failures use ``{"error": code, "message": ...}``
with 400-class statuses.  All state is built before traffic is accepted and
never mutated afterward, so concurrent queries are safe.
"""

from __future__ import annotations

from fastapi import FastAPI, Query, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .errors import InfeasibleProjectError, UnknownSkillError
from .objectives import Mode, ScoreMode, SearchParams
from .reports import team_payload
from .search import TeamFinder

__all__ = ["create_app"]


class _ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        self.status = status
        self.code = code
        self.message = message


def create_app(finder: TeamFinder) -> FastAPI:
    app = FastAPI(title="expert-teams", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["GET"], allow_headers=["*"]
    )

    @app.exception_handler(_ApiError)
    async def _api_error(_request: Request, exc: _ApiError):
        return JSONResponse(
            status_code=exc.status, content={"error": exc.code, "message": exc.message}
        )

    @app.get("/skills")
    def skills():
        sidx = finder.skill_index_for(False)
        return {
            "skills": [
                {"name": name, "holders": len(holders)}
                for name, holders in sorted(sidx.items())
            ]
        }

    @app.get("/network/stats")
    def stats():
        net = finder.network
        return {
            "nodes": net.n,
            "edges": net.m,
            "skills": len(net.skill_universe),
            "avg_degree": 2.0 * net.m / net.n if net.n else 0.0,
            "max_degree": int(net.degrees.max()) if net.n else 0,
        }

    @app.get("/teams")
    def teams(
        skills: str = Query(..., description="comma-separated required skills"),
        mode: str = "sa-ca-cc",
        gamma: float = 0.6,
        lam: float = Query(0.6, alias="lambda"),
        k: int = 5,
        seed: int = 0,
        score_mode: str = "true",
        normalize: bool = False,
    ):
        try:
            mode_v = Mode(mode)
        except ValueError:
            raise _ApiError(400, "bad_mode", f"unknown mode {mode!r}")
        if not 0.0 <= gamma <= 1.0:
            raise _ApiError(400, "gamma_out_of_range", "gamma out of range")
        if not 0.0 <= lam <= 1.0:
            raise _ApiError(400, "lambda_out_of_range", "lambda out of range")
        if k < 1:
            raise _ApiError(400, "bad_k", "k must be >= 1")
        if score_mode not in ("true", "surrogate"):
            raise _ApiError(400, "bad_score_mode", f"unknown score mode {score_mode!r}")
        params = SearchParams(
            mode=mode_v,
            gamma=gamma,
            lam=lam,
            k=k,
            seed=seed,
            normalize=normalize,
            score_mode=ScoreMode.TRUE_OBJECTIVE if score_mode == "true" else ScoreMode.SURROGATE,
        )
        skill_list = [s.strip() for s in skills.split(",") if s.strip()]
        if not skill_list:
            raise _ApiError(400, "no_skills", "at least one skill is required")
        try:
            entries = finder.top_k(skill_list, params)
        except UnknownSkillError as exc:
            raise _ApiError(400, "unknown_skill", str(exc))
        except InfeasibleProjectError as exc:
            raise _ApiError(404, "infeasible_project", str(exc))
        net = finder.network_for(params.normalize)
        return {
            "params": {
                "skills": skill_list,
                "mode": mode_v.value,
                "gamma": gamma,
                "lambda": lam,
                "k": k,
                "seed": seed,
                "score_mode": score_mode,
                "normalize": normalize,
            },
            "teams": [
                team_payload(net, entry, params, rank)
                for rank, entry in enumerate(entries, start=1)
            ],
        }

    return app
