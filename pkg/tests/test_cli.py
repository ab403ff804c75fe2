"""
Test suite for the qkv command line.

Covers:
- Exit codes 0 / 1 / 2
- JSON reports on stdout
- dims and dump output
"""
import sys
import os

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import io
import json

import pytest

from src.cli.qkv import EXIT_FAIL, EXIT_OK, EXIT_USAGE, QkvCLI
from src.config import Config


class TestQkvCLI:
    """QkvCLI.run against in-memory streams."""

    @pytest.fixture
    def streams(self):
        return io.StringIO(), io.StringIO()

    @pytest.fixture
    def cli(self, streams):
        out, err = streams
        return QkvCLI(out=out, err=err)

    def test_verify_pass(self, cli, streams):
        code = cli.run(["verify", "--check", "sp1-wedge-identity", "--n", "2", "--jobs", "1"])
        assert code == EXIT_OK
        report = json.loads(streams[0].getvalue())
        assert report["results"][0]["check_id"] == "sp1-wedge-identity"
        assert report["results"][0]["status"] == "pass"

    def test_verify_induced_failure(self, cli, streams):
        code = cli.run([
            "verify", "--check", "killing-scaling-equivalence", "--n", "2",
            "--lambda-sq-offset", "0.25", "--jobs", "1",
        ])
        assert code == EXIT_FAIL
        result = json.loads(streams[0].getvalue())["results"][0]
        assert result["status"] == "fail"
        assert result["witness"]

    def test_verify_markdown(self, cli, streams):
        code = cli.run(["verify", "--check", "dims-2n", "--n", "2", "--format", "markdown"])
        assert code == EXIT_OK
        assert streams[0].getvalue().startswith("# qkv verification report")

    @pytest.mark.parametrize("argv", [
        ["verify", "--check", "no-such-check"],
        ["verify", "--check", "dims-2n", "--n", "1..3"],
        ["verify", "--check", "dims-2n", "--jobs", "0"],
        ["verify", "--format", "yaml"],
        ["frobnicate"],
        [],
        ["dims", "--n", "1"],
        ["dump", "--operator", "mu", "--n", "2", "--index", "9"],
        ["dump", "--operator", "clifford-real", "--n", "1"],
    ])
    def test_usage_errors(self, cli, argv):
        assert cli.run(argv) == EXIT_USAGE

    def test_negative_tolerance(self, cli):
        assert cli.run(["verify", "--check", "dims-2n", "--n", "2", "--tol", "-1"]) == EXIT_USAGE

    def test_invalid_environment(self, cli, streams, monkeypatch):
        monkeypatch.setattr(Config, "QKV_JOBS", "zero")
        assert cli.run(["dims", "--n", "2"]) == EXIT_USAGE
        assert "QKV_JOBS" in streams[1].getvalue()

    def test_internal_value_error_is_a_failure(self, cli, monkeypatch):
        def broken(args):
            raise ValueError("sym2H_iso needs an imaginary quaternion")

        monkeypatch.setattr(cli, "cmd_dims", broken)
        assert cli.run(["dims", "--n", "2"]) == EXIT_FAIL

    def test_list(self, cli, streams):
        assert cli.run(["verify", "--list"]) == EXIT_OK
        assert "Registered checks" in streams[0].getvalue()

    def test_dims_json(self, cli, streams):
        assert cli.run(["dims", "--n", "2", "--format", "json"]) == EXIT_OK
        record = json.loads(streams[0].getvalue())
        assert record["base"]["summands"] == [5, 8, 3]
        assert record["parallel_spinors"] == 4

    def test_dims_table(self, cli, streams):
        assert cli.run(["dims", "--n", "2"]) == EXIT_OK
        assert "parallel spinors" in streams[0].getvalue()

    def test_dump_mu(self, cli, streams):
        assert cli.run(["dump", "--operator", "mu", "--n", "2", "--h", "q", "--index", "1"]) == EXIT_OK
        lines = streams[0].getvalue().splitlines()
        assert lines[0].startswith("# base(2)")
        assert all(line.count("\t") == 2 for line in lines[1:])

    def test_dump_killing(self, cli, streams):
        assert cli.run(["dump", "--operator", "killing-A", "--n", "2"]) == EXIT_OK
        assert streams[0].getvalue().startswith("# killing(2)")


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
