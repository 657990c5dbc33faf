"""Equilibrium statistical mechanics over a finite spectrum.

Every Gibbs state here is diagonal in the energy eigenbasis of its
Hamiltonian, so all quantities reduce to sums over levels. Exponentials are
always taken relative to the ground level so that large ``beta * dE`` does
not overflow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import DivergenceError, InvalidInputError
from .media import Spectrum

__all__ = [
    "ThermalState",
    "partition_function",
    "log_partition_function",
    "populations",
    "internal_energy",
    "entropy",
    "von_neumann_entropy",
    "free_energy",
    "relative_entropy_gibbs",
    "relative_entropy_direct",
]

SpectrumLike = Union[Spectrum, Sequence[float], np.ndarray]

_NORM_TOL = 1e-9


def _levels(spec: SpectrumLike) -> np.ndarray:
    if isinstance(spec, Spectrum):
        return spec.as_array()
    energies = np.asarray(spec, dtype=float)
    if energies.ndim != 1 or energies.size == 0:
        raise InvalidInputError("spectrum must be a non-empty 1-d sequence")
    if not np.all(np.isfinite(energies)):
        raise InvalidInputError("spectrum levels must be finite")
    return energies


def _check_beta(beta: float) -> float:
    beta = float(beta)
    if not math.isfinite(beta) or beta <= 0.0:
        raise InvalidInputError(f"inverse temperature must be finite and > 0, got {beta!r}")
    return beta


def _shifted(spec: SpectrumLike, beta: float):
    """Return (levels, ground energy, Boltzmann factors relative to ground, their sum)."""
    energies = _levels(spec)
    beta = _check_beta(beta)
    e0 = float(energies.min())
    w = np.exp(-beta * (energies - e0))
    return energies, e0, w, float(w.sum())


def _log_shifted_sum(w: np.ndarray) -> float:
    """``ln sum(w)`` where one entry of ``w`` is exactly 1 (the ground level).

    Uses ``log1p`` of the remaining weight so that deep in the low-temperature
    regime the small excited-state contribution is not rounded away.
    """
    k = int(np.argmax(w))
    return math.log1p(float(np.delete(w, k).sum()))


def log_partition_function(spec: SpectrumLike, beta: float) -> float:
    """``ln Z``; finite even where ``Z`` itself would overflow."""
    _, e0, w, _ = _shifted(spec, beta)
    return -beta * e0 + _log_shifted_sum(w)


def partition_function(spec: SpectrumLike, beta: float) -> float:
    """Canonical partition function ``Z = sum_k exp(-beta E_k)``.

    Computed as ``exp(-beta E_min) * sum_k exp(-beta (E_k - E_min))``.
    """
    _, e0, _, total = _shifted(spec, beta)
    return math.exp(-beta * e0) * total


def populations(spec: SpectrumLike, beta: float) -> np.ndarray:
    """Gibbs populations in the same order as the spectrum."""
    _, _, w, total = _shifted(spec, beta)
    return w / total


def internal_energy(spec: SpectrumLike, beta: float) -> float:
    energies, e0, w, total = _shifted(spec, beta)
    # mean of the shifted levels keeps the sum well conditioned
    return e0 + float(np.dot(w, energies - e0)) / total


def entropy(spec: SpectrumLike, beta: float) -> float:
    """Thermodynamic entropy ``S = beta U + ln Z`` (k_B = 1).

    Evaluated as ``beta (U - E_min) + ln sum_k exp(-beta (E_k - E_min))``,
    which is the same expression with the ground-energy terms cancelled.
    """
    energies, e0, w, total = _shifted(spec, beta)
    mean_excitation = float(np.dot(w, energies - e0)) / total
    return beta * mean_excitation + _log_shifted_sum(w)


def von_neumann_entropy(p: Sequence[float]) -> float:
    """Direct form ``-sum_k p_k ln p_k`` with ``0 ln 0 = 0``."""
    p = np.asarray(p, dtype=float)
    nz = p[p > 0.0]
    return float(-np.sum(nz * np.log(nz)))


def free_energy(spec: SpectrumLike, beta: float) -> float:
    """Helmholtz free energy ``F = -ln Z / beta``."""
    return -log_partition_function(spec, beta) / _check_beta(beta)


def relative_entropy_gibbs(spec: SpectrumLike, beta_i: float, beta_f: float) -> float:
    """``S(rho_i || rho_f)`` for two Gibbs states of the same Hamiltonian.

    Closed form ``U_i (beta_f - beta_i) + ln(Z_f / Z_i)``. The ground-energy
    pieces of ``U_i`` and of the two ``ln Z`` cancel exactly and are dropped
    before evaluation.
    """
    energies, e0, w_i, total_i = _shifted(spec, beta_i)
    _, _, w_f, _ = _shifted(energies, beta_f)
    mean_excitation = float(np.dot(w_i, energies - e0)) / total_i
    return mean_excitation * (beta_f - beta_i) + (_log_shifted_sum(w_f) - _log_shifted_sum(w_i))


def relative_entropy_direct(p: Sequence[float], q: Sequence[float]) -> float:
    """``sum_k p_k (ln p_k - ln q_k)`` for commuting (co-diagonal) states.

    Raises
    ------
    InvalidInputError
        On length mismatch, negative entries, or unnormalised input.
    DivergenceError
        If some ``p_k > 0`` has ``q_k == 0``.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape or p.ndim != 1:
        raise InvalidInputError(f"distribution shapes differ: {p.shape} vs {q.shape}")
    for name, dist in (("p", p), ("q", q)):
        if np.any(dist < 0.0) or not np.all(np.isfinite(dist)):
            raise InvalidInputError(f"{name} has negative or non-finite entries")
        if abs(dist.sum() - 1.0) > _NORM_TOL:
            raise InvalidInputError(f"{name} is not normalised (sum={dist.sum()!r})")
    support = p > 0.0
    if np.any(q[support] == 0.0):
        raise DivergenceError("p is not absolutely continuous with respect to q")
    ps, qs = p[support], q[support]
    return float(np.sum(ps * (np.log(ps) - np.log(qs))))


@dataclass(frozen=True)
class ThermalState:
    """Gibbs state of a spectrum at inverse temperature ``beta``.

    Build with :meth:`at`; the derived quantities are computed once.
    """

    spectrum: Spectrum
    beta: float
    log_z: float
    u: float
    s: float
    f: float
    excitation: float  # u - ground energy, exact for nearly saturated states

    @classmethod
    def at(cls, spec: Spectrum, beta: float) -> "ThermalState":
        energies, e0, w, total = _shifted(spec, beta)
        excitation = float(np.dot(w, energies - e0)) / total
        log_sum = _log_shifted_sum(w)
        log_z = -beta * e0 + log_sum
        return cls(
            spectrum=spec,
            beta=beta,
            log_z=log_z,
            u=e0 + excitation,
            s=beta * excitation + log_sum,
            f=-log_z / beta,
            excitation=excitation,
        )

    @property
    def z(self) -> float:
        return math.exp(self.log_z)

    @property
    def temperature(self) -> float:
        return 1.0 / self.beta

    @property
    def populations(self) -> np.ndarray:
        return populations(self.spectrum, self.beta)
