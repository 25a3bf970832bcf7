"""Small report values returned by the validators.

A report never raises: it lists each law that was checked, whether it
passed, and a witness for the first failure found.
"""

from dataclasses import dataclass
from typing import Optional, Tuple


@dataclass(frozen=True)
class LawCheck:
    law: str
    passed: bool
    witness: Optional[dict] = None

    def to_dict(self) -> dict:
        return {"law": self.law, "passed": self.passed, "witness": self.witness}


@dataclass(frozen=True)
class ValidationReport:
    checks: Tuple[LawCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def first_failure(self) -> Optional[LawCheck]:
        for c in self.checks:
            if not c.passed:
                return c
        return None

    def check(self, law: str) -> LawCheck:
        for c in self.checks:
            if c.law == law:
                return c
        raise KeyError(law)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checks": [c.to_dict() for c in self.checks]}
