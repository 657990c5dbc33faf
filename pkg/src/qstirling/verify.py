"""Property checks over randomized and gridded inputs.

Each check walks a set of cases, records the worst residual, and keeps the
first offending case. :func:`run_verify` is deterministic for a given seed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

import numpy as np

from . import thermal
from .cycle import (
    CostModel,
    CycleParams,
    Mode,
    analyze,
    build_points,
    heats,
    stroke_works,
)
from .media import COUPLED_SPINS, SINGLE_SPIN, Spectrum
from .sweep import kappa_sweep_spec, coupling_sweep_spec

__all__ = ["PropertyResult", "run_verify", "format_results", "FAULTS"]

IDENTITY_TOL = 1e-10
SPLIT_TOL = 1e-12
NONNEG_TOL = 1e-12
RATIO_MIN_HEAT = 1e-5

# test-only fault injections understood by run_verify
FAULTS = ("deficit-sign",)


@dataclass
class PropertyResult:
    name: str
    checked: int = 0
    failures: int = 0
    worst: float = 0.0
    first_failure: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, residual: float, tol: float, case: Callable[[], str]) -> None:
        self.checked += 1
        if math.isnan(residual):
            residual = math.inf
        self.worst = max(self.worst, residual)
        if residual > tol:
            self.failures += 1
            if self.first_failure is None:
                self.first_failure = case()


@dataclass
class _Checks:
    results: dict = field(default_factory=dict)

    def __getitem__(self, name: str) -> PropertyResult:
        if name not in self.results:
            self.results[name] = PropertyResult(name)
        return self.results[name]


def _random_spectrum(rng: np.random.Generator, max_levels: int = 6, scale: float = 5.0) -> Spectrum:
    n = int(rng.integers(1, max_levels + 1))
    return Spectrum(rng.uniform(-scale, scale, size=n))


def _thermal_checks(checks: _Checks, rng: np.random.Generator, trials: int) -> None:
    for _ in range(trials):
        spec = _random_spectrum(rng)
        beta_i, beta_f = rng.uniform(0.05, 5.0, size=2)

        def case(spec=spec, bi=beta_i, bf=beta_f) -> str:
            return f"spectrum={list(spec.energies)!r} beta_i={bi!r} beta_f={bf!r}"

        closed = thermal.relative_entropy_gibbs(spec, beta_i, beta_f)
        direct = thermal.relative_entropy_direct(
            thermal.populations(spec, beta_i), thermal.populations(spec, beta_f)
        )
        checks["thermal.relative-entropy-dual-path"].record(abs(closed - direct), IDENTITY_TOL, case)
        checks["thermal.relative-entropy-nonnegative"].record(max(0.0, -closed), NONNEG_TOL, case)

        s = thermal.entropy(spec, beta_i)
        s_direct = thermal.von_neumann_entropy(thermal.populations(spec, beta_i))
        checks["thermal.entropy-dual-path"].record(abs(s - s_direct), IDENTITY_TOL, case)

        u = thermal.internal_energy(spec, beta_i)
        f = thermal.free_energy(spec, beta_i)
        checks["thermal.gibbs-identity"].record(abs(f - (u - s / beta_i)), IDENTITY_TOL, case)

    two_level = Spectrum((-1.0, 1.0))
    betas = np.geomspace(1e-3, 1e2, 200)
    entropies = [thermal.entropy(two_level, b) for b in betas]
    for k in range(len(betas) - 1):
        checks["thermal.entropy-monotone-in-temperature"].record(
            max(0.0, entropies[k + 1] - entropies[k]),
            0.0,
            lambda k=k: f"spectrum=[-1, 1] beta={betas[k]!r}..{betas[k + 1]!r}",
        )

    for beta in (1e-6, 1e-2, 1.0, 1e2, 1e4, 1e6):
        for scale in (1.0, 1e2, 1e3):
            spec = Spectrum(rng.uniform(-scale, scale, size=4))
            values = [
                thermal.log_partition_function(spec, beta),
                thermal.internal_energy(spec, beta),
                thermal.entropy(spec, beta),
                thermal.free_energy(spec, beta),
            ]
            p = thermal.populations(spec, beta)
            finite = all(math.isfinite(v) for v in values) and bool(np.all(np.isfinite(p)))
            residual = abs(p.sum() - 1.0) if finite else math.inf
            checks["thermal.stability"].record(
                residual, 1e-12, lambda spec=spec, beta=beta: f"spectrum={list(spec.energies)!r} beta={beta!r}"
            )


def _cycle_cases(rng: np.random.Generator, trials: int, grid_steps: int) -> Iterator[CycleParams]:
    kappa_grid = kappa_sweep_spec(steps=grid_steps)
    for ratio in np.linspace(0.1, 0.9, max(2, grid_steps // 4)):
        for kappa in kappa_grid.grid():
            yield CycleParams(SINGLE_SPIN, kappa * 2.0, 2.0, t_hot=3.0, t_cold=3.0 * ratio)
    coupling_grid = coupling_sweep_spec(steps=grid_steps)
    for j in coupling_grid.grid():
        yield coupling_grid.params_at(float(j))
    for _ in range(trials):
        medium = COUPLED_SPINS if rng.random() < 0.5 else SINGLE_SPIN
        lam1, lam2, j = rng.uniform(-5.0, 5.0, size=3)
        t_cold = rng.uniform(0.2, 5.0)
        t_hot = t_cold * (1.0 + rng.uniform(0.05, 3.0))
        yield CycleParams(medium, lam1, lam2, t_hot=t_hot, t_cold=t_cold, j=j)


def _cycle_checks(
    checks: _Checks, rng: np.random.Generator, trials: int, grid_steps: int, fault: Optional[str]
) -> None:
    for params in _cycle_cases(rng, trials, grid_steps):

        def case(p=params) -> str:
            return (
                f"medium={p.medium.name} lambda1={p.lambda1!r} lambda2={p.lambda2!r} "
                f"j={p.j!r} t_hot={p.t_hot!r} t_cold={p.t_cold!r}"
            )

        report = analyze(params)
        points = build_points(params)
        q = heats(points)
        scale = max(1.0, abs(q.q1) + abs(q.q2) + abs(q.q3) + abs(q.q4))

        checks["cycle.first-law-split"].record(
            abs(report.q_h + report.q_c - report.work) / scale, SPLIT_TOL, case
        )
        w1, w3 = stroke_works(points, q)
        checks["cycle.stroke-work"].record(abs(w1 + w3 - report.work), IDENTITY_TOL, case)
        checks["cycle.sigma-nonnegative"].record(max(0.0, -report.sigma), NONNEG_TOL, case)
        work_form = report.eta_carnot * (q.q1 + q.q4) - report.sigma * params.t_cold
        checks["cycle.work-entropy-identity"].record(abs(work_form - report.work) / scale, SPLIT_TOL, case)

        if report.mode is not Mode.ENGINE:
            continue
        eta_c = report.eta_carnot
        # the ratio loses digits when the absorbed heat is tiny on the k_B T_h scale;
        # the work form above still covers those cases
        if (
            report.eta_conventional is not None
            and params.beta_hot * (report.q1 + report.q4) > RATIO_MIN_HEAT
        ):
            deficit = report.sigma / (params.beta_cold * (report.q1 + report.q4))
            if fault == "deficit-sign":
                deficit = -deficit
            checks["cycle.carnot-deficit-identity"].record(
                abs((eta_c - report.eta_conventional) - deficit), IDENTITY_TOL, case
            )
            checks["cycle.conventional-below-carnot"].record(
                max(0.0, report.eta_conventional - eta_c + deficit), IDENTITY_TOL, case
            )
        if report.eta_regen_cost is not None and report.eta_regen_free is not None:
            checks["cycle.cost-ordering"].record(
                max(0.0, report.eta_regen_cost - report.eta_regen_free), 0.0, case
            )
        denominator = report.q_h + report.w_cost_required
        if denominator > 0.0:
            eta = report.work / denominator
            checks["cycle.cost-bound-guarantee"].record(max(0.0, eta - eta_c), IDENTITY_TOL, case)

    for spec in (kappa_sweep_spec(steps=grid_steps), coupling_sweep_spec(steps=grid_steps)):
        for value in spec.grid():
            params = spec.params_at(float(value))
            report = analyze(params)
            if report.mode is Mode.ENGINE and report.eta_regen_cost is not None:
                checks["cycle.min-carnot-below-carnot"].record(
                    max(0.0, report.eta_regen_cost - report.eta_carnot),
                    0.0,
                    lambda p=params: f"lambda1={p.lambda1!r} lambda2={p.lambda2!r} j={p.j!r}",
                )

    for _ in range(max(10, trials // 20)):
        medium = COUPLED_SPINS if rng.random() < 0.5 else SINGLE_SPIN
        lam, j = rng.uniform(-5.0, 5.0, size=2)
        params = CycleParams(medium, lam, lam, t_hot=3.0, t_cold=2.0, j=j, cost=CostModel())
        report = analyze(params)
        numbers = [v for v in report.as_dict().values() if isinstance(v, float)]
        ok = (
            report.mode is Mode.DEGENERATE
            and report.work == 0.0
            and report.eta_regen_free is None
            and report.eta_regen_cost is None
            and report.eta_conventional is None
            and all(math.isfinite(v) for v in numbers)
        )
        checks["cycle.degenerate-safety"].record(
            0.0 if ok else math.inf, 0.0, lambda p=params: f"lambda={p.lambda1!r} j={p.j!r}"
        )


def run_verify(
    seed: int = 0, trials: int = 2000, grid_steps: int = 41, fault: Optional[str] = None
) -> list[PropertyResult]:
    if fault is not None and fault not in FAULTS:
        raise ValueError(f"unknown fault {fault!r}")
    rng = np.random.default_rng(seed)
    checks = _Checks()
    _thermal_checks(checks, rng, trials)
    _cycle_checks(checks, rng, trials, grid_steps, fault)
    return list(checks.results.values())


def format_results(results: list[PropertyResult]) -> str:
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status} {r.name:42s} checked={r.checked:<6d} worst_residual={r.worst:.3e}")
        if not r.passed:
            lines.append(f"     {r.failures} violation(s); first at {r.first_failure}")
    n_fail = sum(not r.passed for r in results)
    lines.append(f"{len(results) - n_fail}/{len(results)} properties passed")
    return "\n".join(lines) + "\n"
