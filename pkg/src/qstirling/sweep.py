"""Parameter sweeps over cycle configurations and their delimited output."""
from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .cycle import CostModel, CycleParams, CycleReport, analyze
from .errors import InvalidInputError
from .media import COUPLED_SPINS, SINGLE_SPIN, WorkingMedium

__all__ = [
    "Knob",
    "SweepSpec",
    "SweepResult",
    "REPORT_COLUMNS",
    "run",
    "format_value",
    "to_csv",
    "to_json",
    "kappa_sweep_spec",
    "coupling_sweep_spec",
    "DEFAULT_STEPS",
]

DEFAULT_STEPS = 181


class Knob(enum.Enum):
    KAPPA = "kappa"
    J = "j"
    LAMBDA1 = "lambda1"
    LAMBDA2 = "lambda2"
    T_HOT = "th"
    T_COLD = "tc"

    @property
    def column(self) -> str:
        return {Knob.T_HOT: "t_hot", Knob.T_COLD: "t_cold"}.get(self, self.value)


# Scalar report fields in CSV order; the swept knob is prepended as its own column.
REPORT_COLUMNS = (
    "medium",
    "kappa",
    "lambda1",
    "lambda2",
    "j",
    "t_hot",
    "t_cold",
    "cost_model",
    "q1",
    "q2",
    "q3",
    "q4",
    "delta_q",
    "q_h",
    "q_c",
    "work",
    "w_cost_min",
    "w_cost_applied",
    "eta_regen_free",
    "eta_regen_cost",
    "eta_conventional",
    "eta_carnot",
    "sigma",
    "carnot_deficit",
    "w_cost_sufficient",
    "w_cost_required",
    "mode",
    "flags",
)

_FIXED_KEYS = ("lambda1", "lambda2", "j", "t_hot", "t_cold")


@dataclass(frozen=True)
class SweepSpec:
    """A linear grid over one knob with every other parameter held fixed.

    ``fixed`` maps ``lambda1``, ``lambda2``, ``j``, ``t_hot`` and ``t_cold``
    to values; the entry for the swept parameter is ignored. A ``kappa``
    sweep sets ``lambda1 = kappa * lambda2``.
    """

    medium: WorkingMedium
    knob: Knob
    start: float
    stop: float
    steps: int = DEFAULT_STEPS
    fixed: dict = field(default_factory=dict)
    cost: CostModel = field(default_factory=CostModel)

    def __post_init__(self) -> None:
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise InvalidInputError("sweep bounds must be finite")
        if self.start == self.stop:
            raise InvalidInputError("sweep start and stop must differ")
        if int(self.steps) != self.steps or self.steps < 2:
            raise InvalidInputError(f"steps must be an integer >= 2, got {self.steps!r}")
        unknown = set(self.fixed) - set(_FIXED_KEYS)
        if unknown:
            raise InvalidInputError(f"unknown fixed parameters: {sorted(unknown)}")
        if self.knob is Knob.KAPPA and not self.fixed.get("lambda2"):
            raise InvalidInputError("a kappa sweep needs a fixed non-zero lambda2")

    def grid(self) -> np.ndarray:
        lo, hi = sorted((self.start, self.stop))
        return np.linspace(lo, hi, int(self.steps))

    def params_at(self, value: float) -> CycleParams:
        values = {"lambda1": None, "lambda2": None, "j": 0.0, "t_hot": None, "t_cold": None}
        values.update(self.fixed)
        if self.knob is Knob.KAPPA:
            values["lambda1"] = value * values["lambda2"]
        else:
            values[self.knob.column] = value
        missing = [k for k, v in values.items() if v is None]
        if missing:
            raise InvalidInputError(f"sweep is missing fixed values for {missing}")
        return CycleParams(medium=self.medium, cost=self.cost, **values)


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    values: tuple[float, ...]
    reports: tuple[CycleReport, ...]

    @property
    def columns(self) -> tuple[str, ...]:
        knob_col = self.spec.knob.column
        return (knob_col,) + tuple(c for c in REPORT_COLUMNS if c != knob_col)

    def rows(self) -> list[dict]:
        out = []
        for value, report in zip(self.values, self.reports):
            row = report.as_dict()
            row["kappa"] = report.lambda1 / report.lambda2 if report.lambda2 != 0.0 else None
            row[self.spec.knob.column] = value
            out.append({c: row[c] for c in self.columns})
        return out

    def column(self, name: str) -> list:
        return [row[name] for row in self.rows()]


def run(spec: SweepSpec) -> SweepResult:
    grid = spec.grid()
    reports = tuple(analyze(spec.params_at(float(v))) for v in grid)
    return SweepResult(spec, tuple(float(v) for v in grid), reports)


def format_value(value) -> str:
    """CSV cell text: 12 significant digits, empty for undefined."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        return format(value, ".12g")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, (list, tuple)):
        return ";".join(str(v) for v in value)
    return str(value)


def to_csv(result: SweepResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(result.columns)
    for row in result.rows():
        writer.writerow([format_value(row[c]) for c in result.columns])
    return buf.getvalue()


def to_json(result: SweepResult) -> str:
    return json.dumps(result.rows(), indent=2) + "\n"


# Both presets use T_h = 3, T_c = 2 and the heat-pump minimum cost.
def kappa_sweep_spec(
    start: float = 1.05, stop: float = 8.0, steps: int = DEFAULT_STEPS, cost: Optional[CostModel] = None
) -> SweepSpec:
    """Single spin, ``lambda2 = 2``, efficiency against ``kappa = lambda1 / lambda2``."""
    return SweepSpec(
        medium=SINGLE_SPIN,
        knob=Knob.KAPPA,
        start=start,
        stop=stop,
        steps=steps,
        fixed={"lambda2": 2.0, "t_hot": 3.0, "t_cold": 2.0},
        cost=cost or CostModel(),
    )


def coupling_sweep_spec(
    start: float = 0.05, stop: float = 4.5, steps: int = DEFAULT_STEPS, cost: Optional[CostModel] = None
) -> SweepSpec:
    """Coupled spins, ``lambda1 = 2``, ``lambda2 = 1``, efficiency against ``J``."""
    return SweepSpec(
        medium=COUPLED_SPINS,
        knob=Knob.J,
        start=start,
        stop=stop,
        steps=steps,
        fixed={"lambda1": 2.0, "lambda2": 1.0, "t_hot": 3.0, "t_cold": 2.0},
        cost=cost or CostModel(),
    )
