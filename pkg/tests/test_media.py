import itertools

import numpy as np
import pytest

from qstirling.errors import InvalidInputError
from qstirling.media import (
    COUPLED_SPINS,
    SINGLE_SPIN,
    MediumKind,
    MediumParams,
    Spectrum,
    WorkingMedium,
    medium_from_name,
    spectrum,
)

SZ = np.diag([1.0, -1.0])
SP = np.array([[0.0, 1.0], [0.0, 0.0]])
SM = SP.T
I2 = np.eye(2)


def single_matrix(lam):
    return 0.5 * lam * SZ


def coupled_matrix(lam, j):
    zeeman = 0.5 * lam * (np.kron(SZ, I2) + np.kron(I2, SZ))
    flip_flop = j * (np.kron(SP, SM) + np.kron(SM, SP))
    return zeeman + flip_flop


def diag_levels(h):
    return np.sort(np.linalg.eigvalsh(h))


GRID = np.linspace(-5.0, 5.0, 21)


def test_single_spin_levels():
    assert spectrum(SINGLE_SPIN, MediumParams(2.0)).energies == (-1.0, 1.0)


def test_coupled_levels_with_interaction():
    levels = spectrum(COUPLED_SPINS, MediumParams(2.0, 1.0)).energies
    assert levels == (-2.0, -1.0, 1.0, 2.0)
    np.testing.assert_allclose(levels, diag_levels(coupled_matrix(2.0, 1.0)), atol=1e-12)


def test_coupled_levels_without_interaction():
    assert spectrum(COUPLED_SPINS, MediumParams(2.0, 0.0)).energies == (-2.0, 0.0, 0.0, 2.0)


@pytest.mark.parametrize("lam", GRID)
def test_single_matches_diagonalization(lam):
    closed = spectrum(SINGLE_SPIN, MediumParams(lam)).as_array()
    np.testing.assert_allclose(closed, diag_levels(single_matrix(lam)), atol=1e-12)


def test_coupled_matches_diagonalization_on_grid():
    worst = 0.0
    for lam, j in itertools.product(GRID, GRID):
        closed = spectrum(COUPLED_SPINS, MediumParams(lam, j)).as_array()
        worst = max(worst, np.max(np.abs(closed - diag_levels(coupled_matrix(lam, j)))))
    assert worst < 1e-12


@pytest.mark.parametrize("lam", [-3.0, 0.0, 0.7, 2.0])
def test_uncoupled_pair_is_sum_of_single_levels(lam):
    one = spectrum(SINGLE_SPIN, MediumParams(lam)).energies
    pair_sums = sorted(a + b for a in one for b in one)
    np.testing.assert_allclose(spectrum(COUPLED_SPINS, MediumParams(lam, 0.0)).energies, pair_sums)


@pytest.mark.parametrize("lam,j", [(2.0, 1.0), (0.5, 3.0), (-1.0, 4.5)])
def test_coupled_spectrum_even_in_j(lam, j):
    assert spectrum(COUPLED_SPINS, MediumParams(lam, j)) == spectrum(COUPLED_SPINS, MediumParams(lam, -j))


def test_custom_medium_delegates():
    medium = WorkingMedium(MediumKind.CUSTOM, lambda p: [p.lam, 0.0, -p.lam, 3.0])
    assert spectrum(medium, MediumParams(1.5)).energies == (-1.5, 0.0, 1.5, 3.0)


def test_custom_medium_needs_function():
    with pytest.raises(InvalidInputError):
        WorkingMedium(MediumKind.CUSTOM)


@pytest.mark.parametrize("lam,j", [(float("nan"), 0.0), (1.0, float("inf"))])
def test_non_finite_params_rejected(lam, j):
    with pytest.raises(InvalidInputError):
        MediumParams(lam, j)


def test_spectrum_sorted_and_validated():
    assert Spectrum([3, -1, 2]).energies == (-1.0, 2.0, 3.0)
    with pytest.raises(InvalidInputError):
        Spectrum([])
    with pytest.raises(InvalidInputError):
        Spectrum([0.0, float("nan")])


def test_medium_lookup():
    assert medium_from_name("single") == SINGLE_SPIN
    assert medium_from_name("coupled") == COUPLED_SPINS
    with pytest.raises(InvalidInputError):
        medium_from_name("triplet")
