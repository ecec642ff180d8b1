from typing import Optional

from pydantic import BaseModel

from project.disc_solver import verify_report
from project.formats import parse_instance, parse_plan


class VerifyRequest(BaseModel):
    instance: str
    plan: str


class VerifyResponse(BaseModel):
    valid: bool
    failed_index: Optional[int] = None
    reason: Optional[str] = None
    misplaced: list[int] = []


async def verifyPlan(instance: str, plan: str) -> VerifyResponse:
    """
    Replays a plan from the instance start and reports the first failing move or the pebbles left off target.

    Args:
        instance (str): Instance text.
        plan (str): Plan text made of `m <from> <to>` lines.

    Returns:
        VerifyResponse: Validity with diagnostics.
    """
    report = verify_report(parse_instance(instance), parse_plan(plan))
    return VerifyResponse(**report.model_dump())
