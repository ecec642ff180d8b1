from fastapi.concurrency import run_in_threadpool
from pydantic import BaseModel

from project.disc_solver import decide_feasibility
from project.formats import parse_instance


class FeasibilityRequest(BaseModel):
    instance: str


class FeasibilityResponse(BaseModel):
    """
    Whether some plan solves the instance, and which test decided it.
    """

    feasible: bool
    method: str


async def checkFeasibility(instance: str) -> FeasibilityResponse:
    """
    Decides feasibility without building a plan, off the event loop.

    Args:
        instance (str): Instance text.

    Returns:
        FeasibilityResponse: The verdict and the deciding method (`trivial`, `no-holes`,
        `cyclic-order`, `one-hole-group` or `tree`).
    """
    feasible, method = await run_in_threadpool(decide_feasibility, parse_instance(instance))
    return FeasibilityResponse(feasible=feasible, method=method)
