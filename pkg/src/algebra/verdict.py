"""
Verdict returned by the algebra-level verifiers.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, Optional


@dataclass
class Verdict:
    """
    Outcome of an exact (or float) identity check.

    Attributes:
        holds: whether the identity held on every case examined
        witness: first failing case in sparse-triplet notation
        details: JSON-serialisable measurements
    """
    holds: bool
    witness: Optional[str] = None
    details: Dict[str, Any] = field(default_factory=dict)
