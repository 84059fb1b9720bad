"""Tests for the export command."""

from __future__ import annotations

import json
from pathlib import Path

from click.testing import CliRunner

from sigma_rcm.cli.main import cli


class TestExportCommand:
    """Test DOT and JSON exports."""

    def test_agg_dot(self, cli_runner: CliRunner) -> None:
        """Test the σ-AGG export shows the intersection node."""
        result = cli_runner.invoke(
            cli, ["export", "--builtin", "social-acyclic", "--perspective", "USER", "--hop", "6"]
        )

        assert result.exit_code == 0
        assert result.stdout.startswith("digraph agg {\n")
        assert "∩" in result.stdout

    def test_agg_is_stable(self, cli_runner: CliRunner) -> None:
        args = ["export", "--builtin", "social-cyclic", "--hop", "4"]

        assert cli_runner.invoke(cli, args).stdout == cli_runner.invoke(cli, args).stdout

    def test_gg_json(self, cli_runner: CliRunner) -> None:
        result = cli_runner.invoke(
            cli,
            ["export", "--builtin", "social-cyclic", "--what", "gg", "--format", "json",
             "--builtin-skeleton", "social-skeleton"],
        )

        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert len(data["nodes"]) == 5
        assert len(data["edges"]) == 8

    def test_gg_needs_skeleton(self, cli_runner: CliRunner) -> None:
        result = cli_runner.invoke(cli, ["export", "--builtin", "social-acyclic", "--what", "gg"])

        assert result.exit_code == 2

    def test_acyclic_agg_of_cyclic_model_exits_3(self, cli_runner: CliRunner) -> None:
        result = cli_runner.invoke(cli, ["export", "--builtin", "social-cyclic", "--mode", "agg"])

        assert result.exit_code == 3

    def test_output_file(self, cli_runner: CliRunner, tmp_path: Path) -> None:
        out = tmp_path / "gg.dot"

        result = cli_runner.invoke(
            cli,
            ["export", "--builtin", "social-acyclic", "--what", "gg",
             "--builtin-skeleton", "social-skeleton", "-o", str(out)],
        )

        assert result.exit_code == 0
        assert result.stdout == ""
        assert out.read_text().startswith("digraph gg {\n")
