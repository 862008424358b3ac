from __future__ import annotations

import math
import sys
from dataclasses import asdict, dataclass
from typing import Literal

Status = Literal["pass", "fail", "report-only"]

# Stand-in residual for evaluators that raised; keeps every residual finite.
FAILED_RESIDUAL = sys.float_info.max


@dataclass(frozen=True)
class ClaimResult:
    """One checked identity.

    ``report-only`` claims carry a measured residual but never fail a run;
    they quantify statements that are ambiguous or false as printed.
    """

    id: str
    description: str
    anchor: str
    residual: float
    tolerance: float
    status: Status
    diagnostic: str = ""

    def __post_init__(self):
        if self.status not in ("pass", "fail", "report-only"):
            raise ValueError(f"bad status {self.status!r}")
        if not math.isfinite(self.residual) or self.residual < 0:
            raise ValueError(f"claim {self.id}: residual must be finite and >= 0")
        if self.status == "pass" and self.residual > self.tolerance:
            raise ValueError(f"claim {self.id}: pass with residual above tolerance")

    def to_json(self) -> dict:
        d = asdict(self)
        if not d["diagnostic"]:
            del d["diagnostic"]
        return d


def judge(
    id: str,
    description: str,
    anchor: str,
    residual: float,
    tolerance: float,
    required: bool = True,
    diagnostic: str = "",
) -> ClaimResult:
    """Build a claim, deciding pass/fail unless it is report-only."""
    residual = float(residual)
    if not math.isfinite(residual):
        return ClaimResult(id, description, anchor, FAILED_RESIDUAL, tolerance,
                           "fail" if required else "report-only",
                           diagnostic or "non-finite residual")
    if not required:
        status = "report-only"
    else:
        status = "pass" if residual <= tolerance else "fail"
    return ClaimResult(id, description, anchor, residual, tolerance, status, diagnostic)
