import os
from functools import lru_cache

from pydantic import BaseModel, Field

ENV_PREFIX = "MAPF_"


class Settings(BaseModel):
    """
    Runtime knobs shared by the library, the CLI and the HTTP service.

    Every field can be overridden with an environment variable named after it,
    upper-cased and prefixed with ``MAPF_`` (for example ``MAPF_WS_K=6``).
    """

    oracle_state_cap: int = Field(default=1_000_000, gt=0)
    ws_k: int = Field(default=4, ge=2)
    ws_p: float = Field(default=0.3, ge=0.0, le=1.0)
    bench_workers: int = Field(default=4, ge=1)
    check_intermediate: bool = True
    log_level: str = "INFO"


@lru_cache
def get_settings() -> Settings:
    """
    Builds the settings once per process from ``MAPF_*`` environment variables.

    Returns:
        Settings: The validated settings. Call ``get_settings.cache_clear()`` after
        changing the environment to reload them.
    """
    overrides = {}
    for name in Settings.model_fields:
        value = os.environ.get(ENV_PREFIX + name.upper())
        if value is not None:
            overrides[name] = value
    return Settings(**overrides)
