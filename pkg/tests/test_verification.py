"""
Test suite for the check registry, runner and reports.

Tests:
- NRange parsing and result validation
- Registry integrity and lookup errors
- Deterministic result ordering and status mapping
- JSON and markdown reports with the canonical hash
"""
import sys
import os

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import json

import pytest
from pydantic import ValidationError

from src.algebra.verdict import Verdict
from src.verification import registry
from src.verification.checks import CheckContext
from src.verification.models import Backend, CheckResult, CheckSpec, CheckStatus, NRange
from src.verification.registry import (
    ANCHORS,
    CHECKS,
    CheckDefinition,
    CheckSpecValidationError,
    UnknownCheckError,
    check_ids,
    dims,
    get_check,
    run_checks,
    specs_for,
)
from src.verification.report import build_report, canonical_hash, emit_report, to_json, to_markdown

FROZEN_IDS = (
    "lemma-decomp-equivariance",
    "prop-62-wedge-identity",
    "appendix-b-re-claim",
    "thetastar-sigma1",
    "killing-scaling-equivalence",
    "clifford-anticommutator",
    "dims-2n",
    "sp1-wedge-identity",
    "cartan-bracket-oracle",
)


class TestModels:
    """Request and result validation."""

    @pytest.mark.parametrize("text,values", [("2", [2]), ("2..4", [2, 3, 4]), (" 3 .. 3 ", [3])])
    def test_parse_range(self, text, values):
        assert NRange.parse(text).values() == values

    @pytest.mark.parametrize("text", ["", "1..3", "4..2", "a..b", "2-4"])
    def test_invalid_range(self, text):
        with pytest.raises(ValueError):
            NRange.parse(text)

    def test_range_str(self):
        assert str(NRange(lo=2, hi=4)) == "2..4"
        assert str(NRange(lo=3, hi=3)) == "3"

    def test_fail_needs_witness(self):
        with pytest.raises(ValidationError):
            CheckResult(check_id="x", n=2, status=CheckStatus.FAIL)

    def test_negative_tolerance(self):
        with pytest.raises(ValidationError):
            CheckSpec(check_id="dims-2n", tolerance=-1.0)


class TestRegistry:
    """The frozen list of checks."""

    def test_frozen_ids_registered(self):
        for check_id in FROZEN_IDS:
            assert check_id in check_ids()

    def test_ids_unique(self):
        assert len(set(check_ids())) == len(CHECKS)

    def test_every_anchor_is_cited(self):
        assert {d.anchor for d in CHECKS} == set(ANCHORS)

    def test_unknown_id(self):
        with pytest.raises(UnknownCheckError) as exc:
            get_check("no-such-check")
        assert "qkv verify --list" in str(exc.value)

    def test_specs_for_all(self):
        specs = specs_for("all")
        assert [s.check_id for s in specs] == check_ids()

    def test_unknown_spec_rejected(self):
        with pytest.raises(CheckSpecValidationError) as exc:
            run_checks([CheckSpec(check_id="no-such-check")], jobs=1)
        assert len(exc.value.errors) == 1

    def test_float_only_check_resolves_backend(self):
        assert get_check("killing-scaling-equivalence").resolve_backend(Backend.EXACT) == Backend.FLOAT
        assert get_check("dims-2n").resolve_backend(Backend.FLOAT) == Backend.EXACT

    def test_reported_predicate(self):
        definition = get_check("half-spin-exchange")
        assert definition.is_reported(3)
        assert not definition.is_reported(2)


class TestRunner:
    """Results, statuses and ordering."""

    def test_results_in_registry_order(self):
        specs = [
            CheckSpec(check_id="sp1-wedge-identity", n_range=NRange(lo=2, hi=2)),
            CheckSpec(check_id="dims-2n", n_range=NRange(lo=2, hi=3)),
        ]
        results = run_checks(specs, jobs=3, seed=1, random_tuples=2)
        assert [(r.check_id, r.n) for r in results] == [
            ("dims-2n", 2),
            ("dims-2n", 3),
            ("sp1-wedge-identity", 2),
        ]
        assert all(r.status == CheckStatus.PASS for r in results)

    def test_default_range(self):
        results = run_checks([CheckSpec(check_id="sp1-wedge-identity")], jobs=1)
        assert [r.n for r in results] == [2]

    def test_perturbed_killing_check_fails(self):
        spec = CheckSpec(check_id="killing-scaling-equivalence", n_range=NRange(lo=2, hi=2), lambda_sq_offset=0.5)
        (result,) = run_checks([spec], jobs=1)
        assert result.status == CheckStatus.FAIL
        assert result.witness
        assert result.backend == Backend.FLOAT

    def test_killing_check_passes(self):
        spec = CheckSpec(check_id="killing-scaling-equivalence", n_range=NRange(lo=2, hi=3))
        results = run_checks([spec], jobs=2)
        assert [r.status for r in results] == [CheckStatus.PASS, CheckStatus.PASS]

    def test_appendix_b_re_claim_is_reported(self):
        spec = CheckSpec(check_id="appendix-b-re-claim", n_range=NRange(lo=2, hi=2))
        (result,) = run_checks([spec], jobs=1)
        assert result.status == CheckStatus.REPORTED
        assert result.verdict.startswith(("confirmed", "refuted"))

    def test_thetastar_sigma1_passes(self):
        (result,) = run_checks([CheckSpec(check_id="thetastar-sigma1")], jobs=1)
        assert result.n == 2
        assert result.status == CheckStatus.PASS

    def test_bianchi_is_reported(self):
        (result,) = run_checks([CheckSpec(check_id="bianchi-hpn", n_range=NRange(lo=2, hi=2))], jobs=1)
        assert result.status == CheckStatus.REPORTED
        assert result.verdict in get_check("bianchi-hpn").verdict_texts

    def test_hash_independent_of_jobs(self):
        specs = [
            CheckSpec(check_id="star-lie-action", n_range=NRange(lo=2, hi=2)),
            CheckSpec(check_id="cartan-bracket-oracle"),
            CheckSpec(check_id="dims-2n", n_range=NRange(lo=2, hi=3)),
            CheckSpec(check_id="sp1-wedge-identity"),
        ]
        serial = run_checks(specs, jobs=1, seed=11, random_tuples=3)
        pooled = run_checks(specs, jobs=4, seed=11, random_tuples=3)
        assert [(r.check_id, r.n, r.status) for r in serial] == [(r.check_id, r.n, r.status) for r in pooled]
        assert canonical_hash(build_report(serial)) == canonical_hash(build_report(pooled))

    def test_exception_becomes_failure(self):
        def explode(ctx):
            raise RuntimeError("boom")

        definition = CheckDefinition("exploding", "Appendix B", "raises", explode, reported=True)
        ctx = CheckContext(n=2, backend=Backend.EXACT, tolerance=1e-12, lambda_sq_offset=0.0)
        result = registry._execute(definition, ctx)
        assert result.status == CheckStatus.FAIL
        assert result.witness == "RuntimeError: boom"

    def test_failed_verdict_without_witness(self):
        definition = CheckDefinition("silent", "Appendix B", "fails quietly", lambda ctx: Verdict(False))
        ctx = CheckContext(n=2, backend=Backend.EXACT, tolerance=1e-12, lambda_sq_offset=0.0)
        result = registry._execute(definition, ctx)
        assert result.status == CheckStatus.FAIL
        assert result.witness


class TestDims:
    """The dimension record behind `qkv dims`."""

    def test_n2(self):
        record = dims(2)
        assert record["base"]["summands"] == [5, 8, 3]
        assert record["base"]["total"] == 16
        assert record["cone"]["summands"] == [14, 28, 18, 4]
        assert record["cone"]["total"] == 64
        assert record["primitive"]["E"] == [1, 4, 5]
        assert record["parallel_spinors"] == 4

    def test_rejects_small_n(self):
        with pytest.raises(CheckSpecValidationError):
            dims(1)


class TestReport:
    """JSON, markdown and the canonical hash."""

    @pytest.fixture
    def results(self):
        return [
            CheckResult(check_id="dims-2n", n=2, status=CheckStatus.PASS, elapsed_ms=3),
            CheckResult(
                check_id="appendix-b-re-claim", n=2, status=CheckStatus.REPORTED,
                verdict="refuted: differs", witness="(x, y): 1+0√2+0i+0i√2", elapsed_ms=40,
            ),
        ]

    def test_empty_report(self):
        assert json.loads(to_json(build_report([]))) == {
            "version": 1,
            "kappa_normalization": "16n(n+2)",
            "results": [],
        }

    def test_key_order(self, results):
        text = to_json(build_report(results))
        assert list(json.loads(text)) == ["version", "kappa_normalization", "results"]
        assert list(json.loads(text)["results"][0])[:3] == ["check_id", "n", "status"]
        assert text.endswith("}\n")

    def test_hash_ignores_timing(self, results):
        retimed = [r.model_copy(update={"elapsed_ms": 999}) for r in results]
        assert canonical_hash(build_report(results)) == canonical_hash(build_report(retimed))

    def test_hash_tracks_status(self, results):
        changed = [results[0].model_copy(update={"status": CheckStatus.REPORTED})] + results[1:]
        assert canonical_hash(build_report(results)) != canonical_hash(build_report(changed))

    def test_markdown(self, results):
        text = to_markdown(build_report(results))
        assert "| dims-2n | 2 | exact | PASS |" in text
        assert "refuted: differs" in text
        assert "## Cross-reference" in text
        for definition in CHECKS:
            assert f"`{definition.check_id}`" in text

    def test_unknown_format(self, results):
        with pytest.raises(ValueError):
            emit_report(results, "yaml")

    def test_exit_code(self, results):
        assert build_report(results).exit_code() == 0
        failed = CheckResult(check_id="dims-2n", n=3, status=CheckStatus.FAIL, witness="w")
        assert build_report(results + [failed]).exit_code() == 1


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
