import json
import logging
from contextlib import asynccontextmanager

import project.checkFeasibility_service
import project.generateInstance_service
import project.runBenchmark_service
import project.solveInstance_service
import project.verifyPlan_service
from fastapi import FastAPI
from fastapi.encoders import jsonable_encoder
from fastapi.responses import Response
from pydantic import ValidationError
from project.config import get_settings
from project.errors import MapfError

logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    logger.info("Starting with %s", get_settings())
    yield


app = FastAPI(
    title="diSC MAPF Planner",
    lifespan=lifespan,
    description="Solves multi-agent path finding on strongly connected directed roadmaps by reduction to pebble motion on trees.",
)


def error_response(e: Exception) -> Response:
    """
    Planner errors (bad input, infeasible requests) answer 422; anything else is logged and answers 500.
    """
    if isinstance(e, (MapfError, ValidationError)):
        status = 422
    else:
        logger.exception("Error processing request")
        status = 500
    res = dict()
    res["error"] = str(e)
    return Response(
        content=json.dumps(jsonable_encoder(res)),
        status_code=status,
        media_type="application/json",
    )


@app.post("/solve", response_model=project.solveInstance_service.SolveResponse)
async def api_post_solveInstance(
    request: project.solveInstance_service.SolveRequest,
) -> project.solveInstance_service.SolveResponse | Response:
    """
    Solves an instance given in the text format and returns the plan, or why there is none.
    """
    try:
        res = await project.solveInstance_service.solveInstance(
            request.instance, request.compress
        )
        return res
    except Exception as e:
        return error_response(e)


@app.post(
    "/feasibility",
    response_model=project.checkFeasibility_service.FeasibilityResponse,
)
async def api_post_checkFeasibility(
    request: project.checkFeasibility_service.FeasibilityRequest,
) -> project.checkFeasibility_service.FeasibilityResponse | Response:
    """
    Decides whether an instance can be solved, without building the plan.
    """
    try:
        res = await project.checkFeasibility_service.checkFeasibility(request.instance)
        return res
    except Exception as e:
        return error_response(e)


@app.post("/verify", response_model=project.verifyPlan_service.VerifyResponse)
async def api_post_verifyPlan(
    request: project.verifyPlan_service.VerifyRequest,
) -> project.verifyPlan_service.VerifyResponse | Response:
    """
    Replays a plan against an instance and reports the first failure.
    """
    try:
        res = await project.verifyPlan_service.verifyPlan(request.instance, request.plan)
        return res
    except Exception as e:
        return error_response(e)


@app.post(
    "/generate", response_model=project.generateInstance_service.GenerateResponse
)
async def api_post_generateInstance(
    nodes: int, agents: int, seed: int = 0, wsK: int | None = None, wsP: float | None = None
) -> project.generateInstance_service.GenerateResponse | Response:
    """
    Generates a random instance on a random strongly connected roadmap.
    """
    try:
        res = await project.generateInstance_service.generateInstance(
            nodes, agents, seed, wsK, wsP
        )
        return res
    except Exception as e:
        return error_response(e)


@app.post("/bench", response_model=project.runBenchmark_service.BenchmarkResponse)
async def api_post_runBenchmark(
    request: project.runBenchmark_service.BenchmarkRequest,
) -> project.runBenchmark_service.BenchmarkResponse | Response:
    """
    Runs a small benchmark sweep and returns raw records with per-cell medians.
    """
    try:
        res = await project.runBenchmark_service.runBenchmark(
            request.nodes,
            request.agents,
            request.repetitions,
            request.seed,
            request.graph,
        )
        return res
    except Exception as e:
        return error_response(e)
