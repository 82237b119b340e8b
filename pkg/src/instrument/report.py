from dataclasses import dataclass, field
from typing import Optional

from .check_type import CheckType


def outcome_label(outcome):
    """
    Text label of an outcome, '' for checks that are not attached to one
    """
    return "" if outcome is None else repr(float(outcome))


@dataclass(frozen=True)
class CheckRecord:
    check: CheckType
    outcome: Optional[float]
    residual: float
    tolerance: float

    @property
    def passed(self):
        return self.residual <= self.tolerance

    def sort_key(self):
        return (self.outcome is not None, self.outcome if self.outcome is not None else 0.0, str(self.check))

    def to_dict(self):
        return {"check": str(self.check),
                "outcome": outcome_label(self.outcome),
                "residual": float(self.residual),
                "tolerance": float(self.tolerance),
                "passed": bool(self.passed)}


@dataclass
class VerificationReport:
    """
    Ordered collection of check records; a report passes when every record does
    """
    name: str
    records: list = field(default_factory=list)

    def add(self, check, outcome, residual, tolerance):
        self.records.append(CheckRecord(check, outcome, float(residual), float(tolerance)))

    def extend(self, other):
        self.records.extend(other.records)
        return self

    @property
    def passed(self):
        return all(record.passed for record in self.records)

    def sorted_records(self):
        return sorted(self.records, key=CheckRecord.sort_key)

    def max_residual(self, check=None, outcome=None):
        residuals = [record.residual for record in self.records
                     if (check is None or record.check == check)
                     and (outcome is None or record.outcome == outcome)]
        return max(residuals) if residuals else 0.0

    def worst(self):
        """
        :return: the record with the largest residual relative to its tolerance
        """
        return max(self.records, key=lambda record: record.residual / record.tolerance, default=None)

    def failures(self):
        return [record for record in self.sorted_records() if not record.passed]

    def to_records(self):
        return [dict(report=self.name, **record.to_dict()) for record in self.sorted_records()]
