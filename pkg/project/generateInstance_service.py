from typing import Optional

from pydantic import BaseModel

from project.config import get_settings
from project.formats import write_instance
from project.instance_lab import GenParams, gen_digraph, gen_instance


class GenerateResponse(BaseModel):
    """
    A random instance in the text format.
    """

    instance: str


async def generateInstance(
    nodes: int, agents: int, seed: int, wsK: Optional[int] = None, wsP: Optional[float] = None
) -> GenerateResponse:
    """
    Builds a random strongly connected roadmap and places pebbles on it.

    Args:
        nodes (int): Vertex count.
        agents (int): Pebble count, at most `nodes - 2`.
        seed (int): Seed for the roadmap and the placements.
        wsK (Optional[int]): Ring neighbour count of the small-world graph, defaults to the configured value.
        wsP (Optional[float]): Rewiring probability, defaults to the configured value.

    Returns:
        GenerateResponse: The instance text.
    """
    settings = get_settings()
    params = GenParams(
        node_count=nodes,
        seed=seed,
        ws_k=wsK if wsK is not None else settings.ws_k,
        ws_p=wsP if wsP is not None else settings.ws_p,
    )
    inst = gen_instance(gen_digraph(params), agents, seed)
    return GenerateResponse(instance=write_instance(inst))
