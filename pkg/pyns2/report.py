from __future__ import annotations

import sys
from typing import Any, Dict, List

# failures listed per check; the count is always exact
MAX_LISTED_FAILURES = 20


class Check:
    def __init__(self) -> None:
        self.checked = 0
        self.failed = 0
        self.failures: List[str] = []

    def to_json(self) -> Dict[str, Any]:
        return {"checked": self.checked, "failed": self.failed, "failures": self.failures}


class Report:
    """Named pass/fail counters plus measured values, as emitted by the CLI."""

    def __init__(self, title: str, verbose: bool = False):
        self.title = title
        self.verbose = verbose
        self.checks: Dict[str, Check] = {}
        self.values: Dict[str, Any] = {}

    def record(self, name: str, ok: bool, detail: str = "") -> bool:
        check = self.checks.setdefault(name, Check())
        check.checked += 1
        if not ok:
            check.failed += 1
            if len(check.failures) < MAX_LISTED_FAILURES:
                check.failures.append(detail)
            if self.verbose:
                print(f"{self.title}: {name} failed {detail}", file=sys.stderr)
        return ok

    def touch(self, name: str) -> None:
        """Declare a check even if nothing ends up being compared."""
        self.checks.setdefault(name, Check())

    def __setitem__(self, key: str, value: Any) -> None:
        self.values[key] = value

    def __getitem__(self, key: str) -> Any:
        return self.values[key]

    @property
    def passed(self) -> bool:
        return all(c.failed == 0 for c in self.checks.values())

    def failures(self, name: str) -> int:
        return self.checks[name].failed

    def merge(self, other: Report, prefix: str = "") -> None:
        for name, check in other.checks.items():
            mine = self.checks.setdefault(prefix + name, Check())
            mine.checked += check.checked
            mine.failed += check.failed
            room = MAX_LISTED_FAILURES - len(mine.failures)
            mine.failures.extend(check.failures[:room])
        for key, value in other.values.items():
            self.values[prefix + key] = value

    def to_json(self) -> Dict[str, Any]:
        return {
            "report": self.title,
            "passed": self.passed,
            "checks": {name: self.checks[name].to_json() for name in sorted(self.checks)},
            "values": {key: self.values[key] for key in sorted(self.values)},
        }
