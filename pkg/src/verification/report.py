"""
Report rendering: the JSON document, its canonical hash and the markdown summary.

JSON layout:
    {"version": 1, "kappa_normalization": "16n(n+2)", "results": [CheckResult...]}
"""
import hashlib
import json
from typing import Any, Dict, List, Sequence

from src.verification.models import CheckResult, CheckStatus, Report
from src.verification.registry import ANCHORS, CHECKS

FORMATS = ("json", "markdown")


def build_report(results: Sequence[CheckResult]) -> Report:
    return Report(results=list(results))


def _canonical_json(value: Any) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def to_json(report: Report) -> str:
    """Pretty JSON in schema field order, UTF-8, trailing newline."""
    return json.dumps(report.model_dump(mode="json"), indent=2, ensure_ascii=False) + "\n"


def canonical_hash(report: Report) -> str:
    """sha256 of the sorted compact JSON with elapsed_ms removed."""
    payload = report.model_dump(mode="json")
    for result in payload["results"]:
        result.pop("elapsed_ms", None)
    return hashlib.sha256(_canonical_json(payload).encode("utf-8")).hexdigest()


def _cell(text: Any) -> str:
    return str(text).replace("|", "\\|").replace("\n", " ")


def to_markdown(report: Report) -> str:
    """Results table followed by the anchor cross-reference table."""
    counts: Dict[CheckStatus, int] = {s: 0 for s in CheckStatus}
    for r in report.results:
        counts[r.status] += 1

    lines: List[str] = [
        "# qkv verification report",
        "",
        f"- Version: `{report.version}`",
        f"- κ normalization: `{report.kappa_normalization}`",
        f"- Results: {counts[CheckStatus.PASS]} pass, {counts[CheckStatus.FAIL]} fail, "
        f"{counts[CheckStatus.REPORTED]} reported",
        f"- Canonical hash: `{canonical_hash(report)}`",
        "",
        "## Results",
        "",
        "| Check | n | Backend | Status | Verdict / witness | ms |",
        "|-------|---|---------|--------|-------------------|----|",
    ]
    for r in report.results:
        note = r.witness or r.verdict or ""
        if r.status == CheckStatus.REPORTED and r.witness:
            note = f"{r.verdict} ({r.witness})"
        lines.append(
            f"| {r.check_id} | {r.n} | {r.backend.value} | {r.status.value.upper()} | {_cell(note)} | {r.elapsed_ms} |"
        )

    lines.extend([
        "",
        "## Cross-reference",
        "",
        "| Anchor | Statement | Check |",
        "|--------|-----------|-------|",
    ])
    for definition in CHECKS:
        lines.append(
            f"| {definition.anchor} | {_cell(ANCHORS[definition.anchor])} | `{definition.check_id}` |"
        )
    lines.append("")
    return "\n".join(lines)


def emit_report(results: Sequence[CheckResult], fmt: str = "json") -> str:
    """
    Render results as "json" or "markdown".

    Raises:
        ValueError: on an unknown format
    """
    report = build_report(results)
    if fmt == "json":
        return to_json(report)
    if fmt == "markdown":
        return to_markdown(report)
    raise ValueError(f"unknown report format {fmt!r}; expected one of {', '.join(FORMATS)}")
