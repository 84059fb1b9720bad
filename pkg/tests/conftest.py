"""Pytest configuration and fixtures for sigma-rcm tests."""

import json
import os
from collections.abc import Callable, Generator
from pathlib import Path
from typing import Any

import pytest

from sigma_rcm.models.relational import RelationalModel, RelationalVariable
from sigma_rcm.models.schema import Schema
from sigma_rcm.models.skeleton import Skeleton
from sigma_rcm.services.catalog import MODELS, builtin_model, builtin_skeleton


@pytest.fixture(autouse=True)
def isolated_config(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Generator[Path, None, None]:
    """Point the default config file at an empty temp dir and clear RCM_* vars.

    Yields:
        Path of the (absent) config file
    """
    config_path = tmp_path / ".sigma-rcm" / "config.yaml"
    monkeypatch.setattr("sigma_rcm.models.config.DEFAULT_CONFIG_PATH", config_path)
    for key in [k for k in os.environ if k.startswith("RCM_")]:
        monkeypatch.delenv(key)
    yield config_path


@pytest.fixture
def social_schema() -> Schema:
    """Users react to posts; media create posts (each post has one creator)."""
    return builtin_model("social-acyclic").schema


@pytest.fixture
def social_acyclic() -> RelationalModel:
    """Sentiment -> Engagement -> Preference."""
    return builtin_model("social-acyclic")


@pytest.fixture
def social_cyclic() -> RelationalModel:
    """Acyclic social model plus Engagement -> Sentiment feedback."""
    return builtin_model("social-cyclic")


@pytest.fixture
def social_skeleton() -> Skeleton:
    """Alice, Bob; posts P1, P2 by M1; Alice reacts to both posts, Bob to P1."""
    return builtin_skeleton("social-skeleton")


@pytest.fixture
def lee_model() -> RelationalModel:
    """Five-entity all-ONE model of the acyclic-AGG counterexample."""
    return builtin_model("lee-counterexample")


@pytest.fixture
def lee_many_model() -> RelationalModel:
    """The same model with every cardinality relaxed to MANY."""
    return builtin_model("lee-counterexample-many")


@pytest.fixture
def var() -> Callable[[str], RelationalVariable]:
    """Parse bracket syntax, e.g. ``var("[USER].Sentiment")``."""
    return RelationalVariable.parse


@pytest.fixture
def write_json(tmp_path: Path) -> Callable[[str, Any], Path]:
    """Write a JSON document into the temp dir and return its path."""

    def _write(name: str, data: Any) -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(data, indent=2), encoding="utf-8")
        return path

    return _write


@pytest.fixture
def social_model_file(write_json: Callable[[str, Any], Path]) -> Path:
    """Acyclic social model as a JSON file."""
    return write_json("social.json", MODELS["social-acyclic"])
