"""Deterministic report envelope for command results."""

from dataclasses import dataclass, field
from typing import Any, Dict


@dataclass
class AnalysisReport:
    """One command's structured result with everything needed to reproduce it.

    Attributes:
        command: Subcommand name
        inputs: SHA-256 digest per input file, keyed by option name
        seed: Root seed
        scalar: Scalar mode requested
        tolerances: Effective thresholds
        versions: Package versions
        result: Command-specific payload
    """

    command: str
    inputs: Dict[str, str] = field(default_factory=dict)
    seed: int = 0
    scalar: str = "rational"
    tolerances: Dict[str, float] = field(default_factory=dict)
    versions: Dict[str, str] = field(default_factory=dict)
    result: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "inputs": dict(self.inputs),
            "seed": self.seed,
            "scalar": self.scalar,
            "tolerances": dict(self.tolerances),
            "versions": dict(self.versions),
            "result": self.result,
        }
