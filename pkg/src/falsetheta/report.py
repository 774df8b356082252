from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class VerificationReport:
    """Outcome of one check: a congruence claim, an identity or an audit.

    ``violations`` holds ``(n, value)`` pairs; the check passes iff it is
    empty.  ``info`` carries check-specific extras such as the verified
    index range or the coefficient window around an identity mismatch.
    """

    name: str
    n_checked: int
    violations: list[tuple[int, Any]]
    elapsed: float
    claim: Any = None
    skipped: int = 0
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "name": self.name,
            "status": self.status,
            "n_checked": self.n_checked,
            "violations": [{"n": n, "value": v} for n, v in self.violations],
        }
        if self.skipped:
            d["skipped"] = self.skipped
        if self.info:
            d["info"] = self.info
        if timing:
            d["elapsed_ms"] = round(self.elapsed * 1000, 3)
        return d

    def summary(self) -> str:
        line = f"{self.status.upper():4} {self.name}  n_checked={self.n_checked}"
        if self.skipped:
            line += f" skipped={self.skipped}"
        if self.violations:
            shown = ", ".join(f"n={n}: {v}" for n, v in self.violations[:5])
            more = f" (+{len(self.violations) - 5} more)" if len(self.violations) > 5 else ""
            line += f"  violations: {shown}{more}"
        return line
