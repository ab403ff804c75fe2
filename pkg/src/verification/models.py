"""Pydantic models for check requests, results and reports."""
import re
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from src.config import Config


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    REPORTED = "reported"   # computed and recorded; no claim to confirm


class Backend(str, Enum):
    EXACT = "exact"
    FLOAT = "float"


_RANGE = re.compile(r"^\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?$")


class NRange(BaseModel):
    """Inclusive range of quaternionic dimensions, written "a..b" or "k"."""
    lo: int
    hi: int

    @model_validator(mode="after")
    def _check_bounds(self) -> "NRange":
        if self.lo < 2:
            raise ValueError(f"n must be at least 2, got {self.lo}")
        if self.hi < self.lo:
            raise ValueError(f"empty range {self.lo}..{self.hi}")
        return self

    @classmethod
    def parse(cls, text: str) -> "NRange":
        """
        Parse "a..b" or "k".

        Raises:
            ValueError: on malformed text or n < 2
        """
        match = _RANGE.match(text)
        if not match:
            raise ValueError(f"malformed n range {text!r}; expected a..b or k")
        lo = int(match.group(1))
        hi = int(match.group(2)) if match.group(2) else lo
        return cls(lo=lo, hi=hi)

    def values(self) -> List[int]:
        return list(range(self.lo, self.hi + 1))

    def __str__(self) -> str:
        return f"{self.lo}..{self.hi}" if self.hi != self.lo else str(self.lo)


class CheckSpec(BaseModel):
    """A request to run one registered check over a range of n."""
    check_id: str
    n_range: Optional[NRange] = None   # None: the check's documented default
    backend: Backend = Backend.EXACT
    tolerance: float = Field(default_factory=Config.float_tolerance)
    lambda_sq_offset: float = 0.0       # induced-failure control for the Killing check

    @field_validator("tolerance")
    @classmethod
    def _non_negative(cls, v: float) -> float:
        if v < 0:
            raise ValueError("tolerance must be non-negative")
        return v


class CheckResult(BaseModel):
    """Outcome of one (check_id, n, backend) run."""
    check_id: str
    n: int
    status: CheckStatus
    witness: Optional[str] = None       # sparse-triplet counterexample
    elapsed_ms: int = 0
    backend: Backend = Backend.EXACT
    verdict: Optional[str] = None       # free text for reported checks
    details: Dict[str, Any] = {}

    @model_validator(mode="after")
    def _fail_has_witness(self) -> "CheckResult":
        if self.status == CheckStatus.FAIL and not self.witness:
            raise ValueError(f"failed result for {self.check_id} (n={self.n}) carries no witness")
        return self


class Report(BaseModel):
    """Top-level report document."""
    version: int = Config.REPORT_VERSION
    kappa_normalization: str = Config.KAPPA_NORMALIZATION
    results: List[CheckResult] = []

    @property
    def any_failed(self) -> bool:
        return any(r.status == CheckStatus.FAIL for r in self.results)

    def exit_code(self) -> int:
        """0 when nothing failed, 1 otherwise."""
        return 1 if self.any_failed else 0
