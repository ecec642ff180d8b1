import pytest
from pydantic import ValidationError

from project.config import get_settings
from project.instance_lab import GenParams


def test_defaults():
    settings = get_settings()
    assert settings.oracle_state_cap == 1_000_000
    assert (settings.ws_k, settings.ws_p) == (4, 0.3)
    assert settings.check_intermediate


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("MAPF_WS_K", "6")
    monkeypatch.setenv("MAPF_CHECK_INTERMEDIATE", "false")
    get_settings.cache_clear()
    assert get_settings().ws_k == 6
    assert not get_settings().check_intermediate
    assert GenParams(node_count=20).ws_k == 6


def test_bad_environment_values(monkeypatch):
    monkeypatch.setenv("MAPF_WS_P", "2.5")
    get_settings.cache_clear()
    with pytest.raises(ValidationError):
        get_settings()
