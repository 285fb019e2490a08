"""Single-qubit Stern-Gerlach statistics.

Outcomes are always +1 or -1 (units hbar/2 = 1); the classical projection
cos(theta) of the prepared spin onto the measured axis survives only as the
mean of those two values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError
from .hilbert import ATOL_EXACT
from .rng import philox


def _unit_vector(v, what: str) -> np.ndarray:
    a = np.asarray(v, dtype=float)
    if a.shape != (3,):
        raise DimensionError(f"{what} must be a 3-vector, got shape {a.shape}")
    if abs(np.linalg.norm(a) - 1.0) > ATOL_EXACT:
        raise DomainError(f"{what} must be a unit vector, |v| = {np.linalg.norm(a)}")
    return a


@dataclass(frozen=True)
class SGSetup:
    """Preparation and measurement directions; the relative angle is derived."""

    prep_direction: np.ndarray
    meas_direction: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "prep_direction", _unit_vector(self.prep_direction, "prep_direction")
        )
        object.__setattr__(
            self, "meas_direction", _unit_vector(self.meas_direction, "meas_direction")
        )

    @property
    def theta(self) -> float:
        """Angle between preparation and measurement directions, in [0, pi]."""
        d = float(np.dot(self.prep_direction, self.meas_direction))
        return math.acos(max(-1.0, min(1.0, d)))


def projection_probabilities(setup: SGSetup) -> tuple[float, float]:
    """(P(+1), P(-1)) = (cos^2(theta/2), sin^2(theta/2)).

    P(-1) is computed as 1 - P(+1) so normalization holds exactly.
    """
    p_plus = math.cos(setup.theta / 2.0) ** 2
    return p_plus, 1.0 - p_plus


def expected_outcome(setup: SGSetup) -> float:
    """Mean outcome (+1)P(+1) + (-1)P(-1) = cos(theta), the classical projection."""
    p_plus, p_minus = projection_probabilities(setup)
    return p_plus - p_minus


@dataclass(frozen=True)
class OutcomeSample:
    """Tally of +1/-1 outcomes from one seeded run."""

    n_plus: int
    n_minus: int
    n: int
    seed: int

    def __post_init__(self):
        if self.n_plus + self.n_minus != self.n:
            raise DomainError("outcome counts must sum to the number of trials")

    @property
    def mean(self) -> float:
        return (self.n_plus - self.n_minus) / self.n


def sample_outcome_values(setup: SGSetup, n: int, seed: int) -> np.ndarray:
    """Array of n outcomes in {+1, -1}; trial i is a pure function of (seed, i)."""
    if n < 1:
        raise DomainError("need at least one trial")
    p_plus, _ = projection_probabilities(setup)
    u = philox(seed).random(n)
    return np.where(u < p_plus, 1, -1)


def sample_outcomes(setup: SGSetup, n: int, seed: int) -> OutcomeSample:
    """Seeded Monte Carlo tally; the empirical mean converges to cos(theta)."""
    values = sample_outcome_values(setup, n, seed)
    n_plus = int(np.count_nonzero(values == 1))
    return OutcomeSample(n_plus, n - n_plus, n, seed)


def binomial_band(p: float, n: int, sigmas: float = 3.0) -> float:
    """Half-width of the `sigmas`-sigma band for an empirical frequency."""
    return sigmas * math.sqrt(p * (1.0 - p) / n)
