"""Shared fixtures: default parameters, reference operating points, analytic states."""

import math

import numpy as np
import pytest

from src.polariton import (
    CovarianceSet,
    PhononBranch,
    build_system,
    default_params,
    matching_locus,
    steady_covariance,
)

K_I = 1.0
K_F = 0.4
N_PUMP = 1630.0


@pytest.fixture(scope="session")
def params():
    return default_params()


@pytest.fixture(scope="session")
def locus_k_f(params):
    """Largest lower-branch matching wave vector at k_i = K_I; the reference point for
    threshold, efficiency and pulse-brightness scales."""
    return matching_locus(K_I, PhononBranch.LOWER, params)[-1]


@pytest.fixture(scope="session")
def quiet_system(params):
    """Operating point without pump."""
    return build_system(K_I, K_F, 0.0, params)


@pytest.fixture(scope="session")
def pumped_system(params):
    return build_system(K_I, K_F, N_PUMP, params)


@pytest.fixture(scope="session")
def pumped_cov(pumped_system):
    return steady_covariance(pumped_system)


def two_mode_squeezed_moments(r: float) -> np.ndarray:
    """⟨A Aᵀ⟩ for s and v_L in a two-mode squeezed vacuum, v_U in vacuum."""
    c, s = math.cosh(r), math.sinh(r)
    m = np.zeros((6, 6), dtype=complex)
    m[0, 1], m[1, 0] = c**2, s**2
    m[2, 3] = 1.0
    m[4, 5], m[5, 4] = c**2, s**2
    m[0, 4] = m[4, 0] = c * s
    m[1, 5] = m[5, 1] = c * s
    return m


@pytest.fixture
def squeezed_cov(quiet_system):
    """Factory for CovarianceSets holding a two-mode squeezed vacuum of s and v_L."""

    def make(r: float) -> CovarianceSet:
        return CovarianceSet(second_moments=two_mode_squeezed_moments(r), system=quiet_system)

    return make
