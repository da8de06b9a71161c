"""Report models shared by the checks and the CLI artifact writers.

Row models carry a ``CSV_COLUMNS`` tuple; :meth:`csv_row` renders a row in that
column order with infinities spelled ``inf`` and verdicts ``pass``/``fail``.
"""

from typing import Any, ClassVar, Literal

from pydantic import Field, computed_field

from santalo.commons.schema.base import BaseSchema


def verdict_label(ok: bool) -> str:
    return "pass" if ok else "fail"


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return verdict_label(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


class ReportRow(BaseSchema):
    """Base of all tabular rows."""

    CSV_COLUMNS: ClassVar[tuple[str, ...]] = ()

    def csv_row(self) -> list[str]:
        data = self.model_dump(by_alias=True)
        return [_cell(data[column]) for column in self.CSV_COLUMNS]


class LevelRow(ReportRow):
    """One λ of an equimeasurability check."""

    CSV_COLUMNS: ClassVar[tuple[str, ...]] = ("lambda", "mass_f", "mass_rearranged", "error_bound", "verdict")

    level: float = Field(alias="lambda")
    mass_f: float
    mass_rearranged: float
    error_bound: float
    verdict: bool


class ComparisonRow(ReportRow):
    """One λ of a level-set mass comparison ``lhs ≥ rhs − slack`` (or its reverse)."""

    CSV_COLUMNS: ClassVar[tuple[str, ...]] = ("lambda", "mass_lhs", "mass_rhs", "slack", "verdict")

    level: float = Field(alias="lambda")
    mass_lhs: float
    mass_rhs: float
    slack: float
    verdict: bool
    form: Literal["sublevel", "superlevel"] = "sublevel"
    t: float | None = None


class FlowRow(ReportRow):
    """One time of a flow trace."""

    CSV_COLUMNS: ClassVar[tuple[str, ...]] = ("t", "mass", "alpha", "residual", "verdict")

    t: float
    mass: float
    alpha: float
    residual: float
    product: float
    verdict: bool


class Report(BaseSchema):
    """A check outcome with optional tabular rows."""

    check: str
    rows: list[Any] = Field(default_factory=list)
    details: dict[str, Any] = Field(default_factory=dict)
    passed: bool | None = None

    @computed_field  # type: ignore[prop-decorator]
    @property
    def verdict(self) -> bool:
        """Conjunction of the row verdicts and the explicit ``passed`` flag."""
        rows_ok = all(getattr(row, "verdict", True) for row in self.rows)
        return rows_ok and (self.passed is not False)

    @property
    def failures(self) -> list[Any]:
        return [row for row in self.rows if not getattr(row, "verdict", True)]

    @property
    def columns(self) -> tuple[str, ...]:
        if not self.rows:
            return ()
        return type(self.rows[0]).CSV_COLUMNS


class LevelReport(Report):
    measure: str = "lebesgue1"
    rows: list[LevelRow] = Field(default_factory=list)  # type: ignore[assignment]


class ComparisonReport(Report):
    """Per-λ verdicts of a level-set comparison between f and its rearrangement."""

    cost: str = ""
    measure: str = "lebesgue1"
    slack_model: str = ""
    rows: list[ComparisonRow] = Field(default_factory=list)  # type: ignore[assignment]


class TransformReport(ComparisonReport):
    """Comparison of ``|{Af ≤ λ}|`` against ``|{Af_* ≤ λ}|``."""

    transform: str = "legendre"
    boundary_fraction: float = 0.0


class FlowTrace(Report):
    dimension: int = 1
    transform: str = "legendre"
    rows: list[FlowRow] = Field(default_factory=list)  # type: ignore[assignment]


def merge_reports(check: str, reports: list[Report], **details: Any) -> Report:
    """Summary report over many instance reports, passing iff every one passes."""
    failed = [index for index, report in enumerate(reports) if not report.verdict]
    return Report(
        check=check,
        passed=not failed,
        details={"instances": len(reports), "failed_instances": failed[:20], **details},
    )
