"""Tests for RCMConfig layering."""

import logging
from pathlib import Path

import pytest
from pydantic import ValidationError

from sigma_rcm.models.config import RCMConfig


class TestRCMConfig:
    """Test defaults, YAML file, environment and keyword precedence."""

    def test_defaults(self) -> None:
        """Test defaults apply when no file or variable is present."""
        config = RCMConfig()

        assert config.state_limit == 1_000_000
        assert config.max_conditioning == 2
        assert config.max_query_set == 1
        assert config.intersection_bound == 3
        assert config.default_hop == 6
        assert config.burn == "history"
        assert config.jobs == 1
        assert config.log_level == "warning"

    def test_yaml_file(self, isolated_config: Path) -> None:
        """Test the default config file is read at construction time."""
        isolated_config.parent.mkdir(parents=True)
        isolated_config.write_text("jobs: 4\nburn: previous\n")

        config = RCMConfig()

        assert config.jobs == 4
        assert config.burn == "previous"

    def test_explicit_path(self, tmp_path: Path) -> None:
        """Test an explicit config path replaces the default one."""
        path = tmp_path / "custom.yaml"
        path.write_text("default_hop: 4\n")

        assert RCMConfig(config_path=path).default_hop == 4

    def test_env_beats_file(self, isolated_config: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test RCM_* variables outrank the file."""
        isolated_config.parent.mkdir(parents=True)
        isolated_config.write_text("jobs: 4\n")
        monkeypatch.setenv("RCM_JOBS", "2")

        assert RCMConfig().jobs == 2

    def test_kwargs_beat_env(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test keyword arguments have the highest priority."""
        monkeypatch.setenv("RCM_STATE_LIMIT", "50")

        assert RCMConfig(state_limit=10).state_limit == 10

    def test_broken_yaml_falls_back(
        self, isolated_config: Path, caplog: pytest.LogCaptureFixture
    ) -> None:
        """Test a broken file is logged and ignored."""
        isolated_config.parent.mkdir(parents=True)
        isolated_config.write_text("jobs: [unclosed\n")

        with caplog.at_level(logging.WARNING, logger="sigma_rcm.models.config"):
            config = RCMConfig()

        assert config.jobs == 1
        assert "Failed to load config" in caplog.text

    def test_non_mapping_ignored(self, isolated_config: Path) -> None:
        """Test a YAML list at top level is ignored."""
        isolated_config.parent.mkdir(parents=True)
        isolated_config.write_text("- jobs\n")

        assert RCMConfig().jobs == 1

    @pytest.mark.parametrize(
        "overrides",
        [{"state_limit": 0}, {"jobs": 0}, {"burn": "everything"}, {"log_level": "loud"}],
    )
    def test_invalid_values(self, overrides: dict[str, object]) -> None:
        """Test out-of-range values are rejected."""
        with pytest.raises(ValidationError):
            RCMConfig(**overrides)
