"""Working media: maps from control parameters to energy spectra.

Two media are built in, a single spin-1/2 in a field ``H = lambda/2 sigma_z``
and a pair of spins with a flip-flop coupling

    H = lambda/2 (sigma_z^1 + sigma_z^2) + J (sigma_+^1 sigma_-^2 + h.c.)

Both are block diagonal in the computational basis so their spectra are
available in closed form. Units are hbar = k_B = 1 throughout.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional

import numpy as np

from .errors import InvalidInputError

__all__ = [
    "MediumKind",
    "MediumParams",
    "Spectrum",
    "WorkingMedium",
    "SINGLE_SPIN",
    "COUPLED_SPINS",
    "spectrum",
    "medium_from_name",
]


class MediumKind(enum.Enum):
    SINGLE_SPIN = "single"
    COUPLED_SPINS = "coupled"
    CUSTOM = "custom"


@dataclass(frozen=True)
class MediumParams:
    """Control parameters of a working medium.

    ``j`` is ignored by the single-spin medium.
    """

    lam: float
    j: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lam) and math.isfinite(self.j)):
            raise InvalidInputError(
                f"medium parameters must be finite (lambda={self.lam!r}, j={self.j!r})"
            )


@dataclass(frozen=True)
class Spectrum:
    """Ascending energy levels; degenerate levels appear repeatedly."""

    energies: tuple[float, ...]

    def __init__(self, energies: Iterable[float]):
        levels = tuple(sorted(float(e) for e in energies))
        if not levels:
            raise InvalidInputError("spectrum must contain at least one level")
        if not all(math.isfinite(e) for e in levels):
            raise InvalidInputError(f"spectrum levels must be finite: {levels!r}")
        object.__setattr__(self, "energies", levels)

    def __len__(self) -> int:
        return len(self.energies)

    def __iter__(self) -> Iterator[float]:
        return iter(self.energies)

    def __getitem__(self, k: int) -> float:
        return self.energies[k]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.energies, dtype=float)

    @property
    def ground(self) -> float:
        return self.energies[0]


SpectrumFunction = Callable[[MediumParams], Iterable[float]]


@dataclass(frozen=True)
class WorkingMedium:
    """A working medium.

    For ``MediumKind.CUSTOM`` the caller supplies ``spectrum_fn`` mapping
    :class:`MediumParams` to an iterable of energies.
    """

    kind: MediumKind
    spectrum_fn: Optional[SpectrumFunction] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.kind is MediumKind.CUSTOM and self.spectrum_fn is None:
            raise InvalidInputError("custom medium requires a spectrum function")

    @property
    def name(self) -> str:
        return self.kind.value

    @property
    def uses_coupling(self) -> bool:
        return self.kind is not MediumKind.SINGLE_SPIN


SINGLE_SPIN = WorkingMedium(MediumKind.SINGLE_SPIN)
COUPLED_SPINS = WorkingMedium(MediumKind.COUPLED_SPINS)


def medium_from_name(name: str) -> WorkingMedium:
    """Look up a built-in medium by its CLI name (``single`` or ``coupled``)."""
    try:
        kind = MediumKind(name)
    except ValueError:
        raise InvalidInputError(f"unknown medium {name!r}") from None
    if kind is MediumKind.CUSTOM:
        raise InvalidInputError("custom media cannot be selected by name")
    return WorkingMedium(kind)


def spectrum(medium: WorkingMedium, params: MediumParams) -> Spectrum:
    """Energy levels of ``medium`` at ``params``.

    Single spin: ``{-lambda/2, +lambda/2}``. Coupled pair: ``{-lambda, +lambda}``
    from the aligned states and ``{-J, +J}`` from the flip-flop block.
    """
    lam, j = params.lam, params.j
    if medium.kind is MediumKind.SINGLE_SPIN:
        return Spectrum((-0.5 * lam, 0.5 * lam))
    if medium.kind is MediumKind.COUPLED_SPINS:
        return Spectrum((-lam, -j, j, lam))
    return Spectrum(medium.spectrum_fn(params))
