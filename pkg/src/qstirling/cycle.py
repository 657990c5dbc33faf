"""Four-stroke quantum Stirling cycle between equilibrium endpoints.

Strokes::

    A (lambda1, T_h) --isotherm--> B (lambda2, T_h)
    B --isochore--> C (lambda2, T_c)
    C --isotherm--> D (lambda1, T_c)
    D --isochore--> A

Heat into the working substance is positive. The isochores exchange heat
with the regenerator; any imbalance ``dQ = Q2 + Q4`` is settled with the hot
bath (``dQ > 0``) or dumped to the cold bath (``dQ < 0``).
"""
from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass, field
from typing import NamedTuple, Optional

from .errors import InvalidInputError
from .media import MediumParams, WorkingMedium, spectrum
from .thermal import ThermalState, relative_entropy_gibbs

__all__ = [
    "CostKind",
    "CostModel",
    "CycleParams",
    "CyclePoints",
    "Heats",
    "Efficiencies",
    "Mode",
    "CycleReport",
    "thermal_points",
    "build_points",
    "heats",
    "regen_bookkeeping",
    "regeneration_cost",
    "efficiencies",
    "entropy_production",
    "carnot_deficit_conventional",
    "cost_bounds",
    "stroke_works",
    "classify",
    "analyze",
]

# |W| below this is treated as no cycle at all
DEGENERATE_WORK = 1e-14


class CostKind(enum.Enum):
    NONE = "none"
    MIN_CARNOT = "min-carnot"
    FIXED = "fixed"


@dataclass(frozen=True)
class CostModel:
    """How the regeneration work is charged.

    ``NONE`` charges nothing, ``MIN_CARNOT`` charges the reversible heat-pump
    minimum ``|Q2| (T_h - T_c) / T_c`` and ``FIXED`` charges ``value``.
    """

    kind: CostKind = CostKind.MIN_CARNOT
    value: float = 0.0

    def __post_init__(self) -> None:
        if self.kind is CostKind.FIXED:
            if not math.isfinite(self.value) or self.value < 0.0:
                raise InvalidInputError(f"fixed regeneration cost must be >= 0, got {self.value!r}")

    @classmethod
    def parse(cls, text: str) -> "CostModel":
        """Parse ``none``, ``min-carnot`` or ``fixed:<value>``."""
        text = text.strip().lower()
        if text == CostKind.NONE.value:
            return cls(CostKind.NONE)
        if text == CostKind.MIN_CARNOT.value:
            return cls(CostKind.MIN_CARNOT)
        if text.startswith("fixed:"):
            try:
                value = float(text.split(":", 1)[1])
            except ValueError:
                raise InvalidInputError(f"bad fixed cost {text!r}") from None
            return cls(CostKind.FIXED, value)
        raise InvalidInputError(f"unknown cost model {text!r} (none|min-carnot|fixed:<v>)")

    def __str__(self) -> str:
        if self.kind is CostKind.FIXED:
            return f"fixed:{self.value:.12g}"
        return self.kind.value


@dataclass(frozen=True)
class CycleParams:
    medium: WorkingMedium
    lambda1: float
    lambda2: float
    t_hot: float
    t_cold: float
    j: float = 0.0
    cost: CostModel = field(default_factory=CostModel)

    def __post_init__(self) -> None:
        for name in ("lambda1", "lambda2", "j", "t_hot", "t_cold"):
            value = float(getattr(self, name))
            object.__setattr__(self, name, value)
            if not math.isfinite(value):
                raise InvalidInputError(f"{name} must be finite, got {value!r}")
        if self.t_cold <= 0.0:
            raise InvalidInputError(f"t_cold must be > 0, got {self.t_cold!r}")
        if not self.t_hot > self.t_cold:
            raise InvalidInputError(
                f"t_hot must exceed t_cold (got t_hot={self.t_hot!r}, t_cold={self.t_cold!r})"
            )

    @property
    def beta_hot(self) -> float:
        return 1.0 / self.t_hot

    @property
    def beta_cold(self) -> float:
        return 1.0 / self.t_cold

    @property
    def kappa(self) -> float:
        """Relative field strength ``lambda1 / lambda2``."""
        return self.lambda1 / self.lambda2 if self.lambda2 != 0.0 else math.nan


@dataclass(frozen=True)
class CyclePoints:
    a: ThermalState
    b: ThermalState
    c: ThermalState
    d: ThermalState


class Heats(NamedTuple):
    q1: float
    q2: float
    q3: float
    q4: float


class Efficiencies(NamedTuple):
    regen_free: Optional[float]
    regen_cost: Optional[float]
    conventional: Optional[float]
    carnot: float


class Mode(enum.Enum):
    ENGINE = "engine"
    NOT_ENGINE = "not-engine"
    DEGENERATE = "degenerate"


def thermal_points(
    medium: WorkingMedium,
    lambda1: float,
    lambda2: float,
    t_hot: float,
    t_cold: float,
    j: float = 0.0,
) -> CyclePoints:
    """Endpoint Gibbs states without the ``t_hot > t_cold`` check.

    Only positivity of the temperatures is enforced, which lets callers
    probe limits such as ``t_hot == t_cold``.
    """
    if not (t_hot > 0.0 and t_cold > 0.0):
        raise InvalidInputError("temperatures must be positive")
    spec1 = spectrum(medium, MediumParams(lambda1, j))
    spec2 = spectrum(medium, MediumParams(lambda2, j))
    beta_h, beta_c = 1.0 / t_hot, 1.0 / t_cold
    return CyclePoints(
        a=ThermalState.at(spec1, beta_h),
        b=ThermalState.at(spec2, beta_h),
        c=ThermalState.at(spec2, beta_c),
        d=ThermalState.at(spec1, beta_c),
    )


def build_points(params: CycleParams) -> CyclePoints:
    return thermal_points(
        params.medium, params.lambda1, params.lambda2, params.t_hot, params.t_cold, params.j
    )


def heats(points: CyclePoints) -> Heats:
    """Stroke heats: ``T dS`` on the isotherms, ``dU`` on the isochores."""
    a, b, c, d = points.a, points.b, points.c, points.d
    # isochore pairs share a spectrum, so the ground energy cancels exactly
    return Heats(
        q1=(b.s - a.s) / a.beta,
        q2=c.excitation - b.excitation,
        q3=(d.s - c.s) / c.beta,
        q4=a.excitation - d.excitation,
    )


def regen_bookkeeping(q1: float, q2: float, q3: float, q4: float) -> tuple[float, float, float]:
    """Return ``(dQ, Q_h, Q_c)`` for the regenerative cycle."""
    delta_q = q2 + q4
    q_h = q1 + max(0.0, delta_q)
    q_c = q3 + min(0.0, delta_q)
    return delta_q, q_h, q_c


def regeneration_cost(q2: float, t_hot: float, t_cold: float, model: CostModel) -> float:
    if model.kind is CostKind.NONE:
        return 0.0
    if model.kind is CostKind.FIXED:
        return model.value
    return carnot_pump_work(q2, t_hot, t_cold)


def carnot_pump_work(q2: float, t_hot: float, t_cold: float) -> float:
    """Minimum work to lift ``|q2|`` from ``t_cold`` to ``t_hot``."""
    if not t_hot > t_cold > 0.0:
        raise InvalidInputError("need t_hot > t_cold > 0")
    return abs(q2) * (t_hot - t_cold) / t_cold


def _ratio(work: float, denominator: float, engine: bool) -> Optional[float]:
    if not engine or work <= 0.0 or denominator <= 0.0:
        return None
    return work / denominator


def efficiencies(
    work: float,
    q1: float,
    q4: float,
    q_h: float,
    w_cost: float,
    t_hot: float,
    t_cold: float,
    engine: bool = True,
) -> Efficiencies:
    """Cost-free regenerative, with-cost regenerative, and conventional efficiencies.

    An efficiency is ``None`` outside engine mode or when its denominator is
    not positive.
    """
    return Efficiencies(
        regen_free=_ratio(work, q_h, engine),
        regen_cost=_ratio(work, q_h + w_cost, engine),
        conventional=_ratio(work, q1 + q4, engine),
        carnot=1.0 - t_cold / t_hot,
    )


def entropy_production(points: CyclePoints) -> float:
    """Dimensionless entropy production of both isochores."""
    beta_h, beta_c = points.a.beta, points.c.beta
    return relative_entropy_gibbs(points.b.spectrum, beta_h, beta_c) + relative_entropy_gibbs(
        points.a.spectrum, beta_c, beta_h
    )


def carnot_deficit_conventional(points: CyclePoints, q: Heats) -> Optional[float]:
    """``Sigma / (beta_c (Q1 + Q4))``; ``None`` when ``Q1 + Q4 <= 0``."""
    absorbed = q.q1 + q.q4
    if absorbed <= 0.0:
        return None
    return entropy_production(points) / (points.c.beta * absorbed)


def cost_bounds(
    q: Heats, q_h: float, sigma: float, beta_hot: float, beta_cold: float
) -> tuple[float, float]:
    """Regeneration cost bounds ``(sufficient, required)``.

    ``sufficient`` is the cost above which the with-cost efficiency cannot
    exceed Carnot; ``required`` is the larger of that and the heat-pump
    minimum.
    """
    eta_c = 1.0 - beta_hot / beta_cold
    if eta_c <= 0.0:
        raise InvalidInputError("cost bounds need beta_cold > beta_hot")
    sufficient = (q.q1 + q.q4 - q_h) - sigma / (beta_cold * eta_c)
    pump = carnot_pump_work(q.q2, 1.0 / beta_hot, 1.0 / beta_cold)
    return sufficient, max(pump, sufficient)


def stroke_works(points: CyclePoints, q: Heats) -> tuple[float, float]:
    """Work output of the hot and cold isotherms, ``Q - dU`` on each."""
    w1 = q.q1 - (points.b.u - points.a.u)
    w3 = q.q3 - (points.d.u - points.c.u)
    return w1, w3


def classify(work: float, q_h: float, lambda1: float, lambda2: float) -> Mode:
    if lambda1 == lambda2 or abs(work) < DEGENERATE_WORK:
        return Mode.DEGENERATE
    if work > 0.0 and q_h > 0.0:
        return Mode.ENGINE
    return Mode.NOT_ENGINE


@dataclass(frozen=True)
class CycleReport:
    """Complete thermodynamic record of one cycle.

    Efficiencies and ``carnot_deficit`` are ``None`` where undefined.
    ``flags`` lists notable conditions such as ``cost-below-carnot-minimum``.
    """

    medium: str
    lambda1: float
    lambda2: float
    j: float
    t_hot: float
    t_cold: float
    cost_model: str
    q1: float
    q2: float
    q3: float
    q4: float
    delta_q: float
    q_h: float
    q_c: float
    work: float
    w_cost_min: float
    w_cost_applied: float
    eta_regen_free: Optional[float]
    eta_regen_cost: Optional[float]
    eta_conventional: Optional[float]
    eta_carnot: float
    sigma: float
    carnot_deficit: Optional[float]
    w_cost_sufficient: float
    w_cost_required: float
    mode: Mode
    flags: tuple[str, ...] = ()

    @property
    def is_engine(self) -> bool:
        return self.mode is Mode.ENGINE

    def as_dict(self) -> dict:
        out = asdict(self)
        out["mode"] = self.mode.value
        out["flags"] = list(self.flags)
        return out


def analyze(params: CycleParams) -> CycleReport:
    points = build_points(params)
    q = heats(points)
    work = q.q1 + q.q2 + q.q3 + q.q4
    delta_q, q_h, q_c = regen_bookkeeping(*q)
    w_min = carnot_pump_work(q.q2, params.t_hot, params.t_cold)
    w_applied = regeneration_cost(q.q2, params.t_hot, params.t_cold, params.cost)
    mode = classify(work, q_h, params.lambda1, params.lambda2)
    eff = efficiencies(
        work, q.q1, q.q4, q_h, w_applied, params.t_hot, params.t_cold, mode is Mode.ENGINE
    )
    sigma = entropy_production(points)
    deficit = carnot_deficit_conventional(points, q) if mode is Mode.ENGINE else None
    sufficient, required = cost_bounds(q, q_h, sigma, params.beta_hot, params.beta_cold)

    flags = []
    if params.medium.uses_coupling and params.j < 0.0:
        flags.append("negative-coupling")
    if mode is Mode.DEGENERATE:
        flags.append("degenerate-cycle")
    if params.cost.kind is CostKind.FIXED and w_applied < w_min:
        flags.append("cost-below-carnot-minimum")
    if mode is Mode.ENGINE and q_h + w_applied <= 0.0:
        flags.append("nonpositive-resource")

    return CycleReport(
        medium=params.medium.name,
        lambda1=params.lambda1,
        lambda2=params.lambda2,
        j=params.j,
        t_hot=params.t_hot,
        t_cold=params.t_cold,
        cost_model=str(params.cost),
        q1=q.q1,
        q2=q.q2,
        q3=q.q3,
        q4=q.q4,
        delta_q=delta_q,
        q_h=q_h,
        q_c=q_c,
        work=work,
        w_cost_min=w_min,
        w_cost_applied=w_applied,
        eta_regen_free=eff.regen_free,
        eta_regen_cost=eff.regen_cost,
        eta_conventional=eff.conventional,
        eta_carnot=eff.carnot,
        sigma=sigma,
        carnot_deficit=deficit,
        w_cost_sufficient=sufficient,
        w_cost_required=required,
        mode=mode,
        flags=tuple(flags),
    )
