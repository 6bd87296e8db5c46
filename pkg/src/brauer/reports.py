import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, List

import pandas as pd

ROOT = Path(__file__).resolve().parent.parent.parent
if str(ROOT) not in sys.path:
    sys.path.append(str(ROOT))


@dataclass(frozen=True)
class CheckRow:
    check: str
    instance: str
    expected: str
    computed: str
    passed: bool


@dataclass
class Report:
    """Pass/fail rows of one verification routine plus free-form notes."""

    name: str
    rows: List[CheckRow] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def add(self, check: str, instance: Any, expected: Any, computed: Any, passed: bool) -> CheckRow:
        row = CheckRow(check, str(instance), str(expected), str(computed), bool(passed))
        self.rows.append(row)
        return row

    def extend(self, other: "Report") -> "Report":
        self.rows.extend(other.rows)
        self.notes.extend(other.notes)
        return self

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    @property
    def failures(self) -> List[CheckRow]:
        return [r for r in self.rows if not r.passed]

    def to_frame(self) -> pd.DataFrame:
        columns = ["suite", "check", "instance", "expected", "computed", "passed"]
        records = [
            {"suite": self.name, "check": r.check, "instance": r.instance,
             "expected": r.expected, "computed": r.computed, "passed": r.passed}
            for r in self.rows
        ]
        return pd.DataFrame.from_records(records, columns=columns)
