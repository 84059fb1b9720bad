"""Shared fixtures for CLI tests."""

from __future__ import annotations

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from sigma_rcm.services.catalog import MODELS


@pytest.fixture
def cli_runner() -> CliRunner:
    """Provide Click test runner."""
    return CliRunner()


@pytest.fixture
def self_loop_model_file(tmp_path: Path) -> Path:
    """Social model plus a dependency of Sentiment on itself."""
    data = json.loads(json.dumps(MODELS["social-acyclic"]))
    data["dependencies"].append(
        {
            "cause": {"path": ["USER"], "attribute": "Sentiment"},
            "effect": {"class": "USER", "attribute": "Sentiment"},
        }
    )
    path = tmp_path / "self_loop.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    return path
