"""Pydantic settings for sigma-rcm."""

import logging
import os
from pathlib import Path
from typing import Any, Literal

import yaml
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path.home() / ".sigma-rcm" / "config.yaml"


class RCMConfig(BaseSettings):
    """Main sigma-rcm configuration.

    Loads configuration from:
    1. Explicit keyword arguments
    2. Environment variables (RCM_*)
    3. Config file (~/.sigma-rcm/config.yaml or ``config_path``)
    4. Defaults

    Attributes:
        state_limit: Cap on oracle search states and on skeletons per sweep
        max_conditioning: Largest conditioning set in verification sweeps
        max_query_set: Largest X and Y sets in verification sweeps
        intersection_bound: Instances per entity class tried when searching
            for a skeleton that realizes an intersection variable
        default_hop: Hop threshold used when no flag or model hint is given
        burn: Bridge-burning scope for terminal sets
        jobs: Worker processes for verification sweeps
        log_level: Logging level for the CLI
    """

    model_config = SettingsConfigDict(env_prefix="RCM_", extra="ignore")

    state_limit: int = Field(
        1_000_000,
        ge=1,
        description="Oracle state cap (walk states, skeletons per sweep)",
    )
    max_conditioning: int = Field(
        2, ge=0, description="Maximum |Z| in verification query sweeps"
    )
    max_query_set: int = Field(
        1, ge=1, description="Maximum |X| and |Y| in verification query sweeps"
    )
    intersection_bound: int = Field(
        3,
        ge=1,
        description="Instances per entity class in intersection witness search",
    )
    default_hop: int = Field(6, ge=0, description="Default hop threshold")
    burn: Literal["history", "previous"] = Field(
        "history", description="Bridge-burning scope for terminal sets"
    )
    jobs: int = Field(1, ge=1, description="Worker processes for sweeps")
    log_level: Literal["debug", "info", "warning", "error"] = Field(
        "warning", description="Logging level"
    )

    def __init__(self, config_path: Path | None = None, **kwargs: Any) -> None:
        """Initialize configuration, layering the YAML file under env vars.

        Args:
            config_path: Optional YAML file; defaults to ~/.sigma-rcm/config.yaml
            **kwargs: Explicit overrides (highest priority)
        """
        path = config_path or DEFAULT_CONFIG_PATH
        for key, value in self._load_yaml(path).items():
            # Environment variables outrank the file
            if key in kwargs or f"RCM_{key.upper()}" in os.environ:
                continue
            kwargs[key] = value

        super().__init__(**kwargs)

    @staticmethod
    def _load_yaml(path: Path) -> dict[str, Any]:
        """Read the YAML config file, tolerating absence and syntax errors.

        Args:
            path: YAML file path

        Returns:
            Mapping of settings (empty when the file is missing or broken)
        """
        if not path.exists():
            return {}
        try:
            with open(path) as f:
                data = yaml.safe_load(f) or {}
        except (OSError, yaml.YAMLError) as e:
            logger.warning(f"Failed to load config from {path}: {e}")
            return {}
        if not isinstance(data, dict):
            logger.warning(f"Ignoring config {path}: top level is not a mapping")
            return {}
        logger.debug(f"Loaded config from {path}")
        return data
