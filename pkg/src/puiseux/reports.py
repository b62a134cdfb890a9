"""Verification reports: failures are data, not exceptions."""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import Vec, fmt_vec


def _fmt(x) -> str:
    if isinstance(x, tuple):
        return fmt_vec(x)
    return str(x)


@dataclass(frozen=True)
class Check:
    label: str
    exponent: Vec | None
    lhs: str
    rhs: str

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def describe(self) -> str:
        where = f" at {fmt_vec(self.exponent)}" if self.exponent is not None else ""
        verdict = "ok" if self.passed else f"FAIL ({self.lhs} != {self.rhs})"
        return f"{self.label}{where}: {verdict}"


@dataclass
class CheckReport:
    name: str
    checks: list[Check] = field(default_factory=list)
    provisional: bool = False

    def record(self, label: str, lhs, rhs, exponent=None) -> None:
        self.checks.append(Check(label, exponent, _fmt(lhs), _fmt(rhs)))

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def checked_exponents(self) -> list[Vec]:
        seen = []
        for c in self.checks:
            if c.exponent is not None and c.exponent not in seen:
                seen.append(c.exponent)
        return seen

    def to_json(self) -> dict:
        from .exponents import exponent_to_json

        out = {
            "checked_exponents": [
                exponent_to_json(e) for e in self.checked_exponents()
            ],
            "all_passed": self.all_passed,
            "failures": [
                {
                    "exponent": None
                    if c.exponent is None
                    else exponent_to_json(c.exponent),
                    "lhs": c.lhs,
                    "rhs": c.rhs,
                }
                for c in self.failures
            ],
        }
        if self.provisional:
            out["provisional"] = True
        return out

    def describe(self) -> str:
        lines = [f"{self.name}: {'PASS' if self.all_passed else 'FAIL'}"
                 + (" (provisional: incomplete certificates)" if self.provisional else "")]
        lines += ["  " + c.describe() for c in self.checks]
        return "\n".join(lines)
