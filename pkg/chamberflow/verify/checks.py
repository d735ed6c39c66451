#   ┌─┐┬ ┬┌─┐┌┬┐┌┐ ┌─┐┬─┐┌─┐┬  ┌─┐┬ ┬
#   │  ├─┤├─┤│││├┴┐├┤ ├┬┘├┤ │  │ ││││
#   └─┘┴ ┴┴ ┴┴ ┴└─┘└─┘┴└─└  ┴─┘└─┘└┴┘
#
#                                    🔒 Licensed under the CC-by-NC
#                                 https://creativecommons.org/licenses/by-nc/4.0/

import math

import numpy as np

from dataclasses import dataclass
from typing import Sequence, Tuple

from ..meanfield import as_chamber, potential_rho, vector_field_X
from ..types import DomainError


def fd_gradient(domain, point, h: float = 1e-6) -> np.ndarray:
    """Central differences of ``ρ``"""
    point = np.asarray(point, dtype=float)
    gradient = np.empty_like(point)

    for axis in range(point.size):
        step = np.zeros_like(point)
        step[axis] = h
        gradient[axis] = (potential_rho(domain, point + step) - potential_rho(domain, point - step)) / (2 * h)

    return gradient


def fd_gradient_check(domain, point, h: float = 1e-6) -> float:
    """
    ``‖fd grad ρ − X‖ / max(1, ‖X‖)``

    Raises:
        ``DomainError``: the point is within ``10h`` of a wall
    """
    cham = as_chamber(domain)
    margin = cham.min_margin(point)
    if margin <= 10 * h:
        raise DomainError(
            f"Margin {margin:.3g} is too small for step {h:g}", margin=margin
        )

    field = vector_field_X(cham, point)
    numeric = fd_gradient(cham, point, h)
    return float(np.linalg.norm(numeric - field) / max(1.0, np.linalg.norm(field)))


@dataclass(frozen=True)
class SeriesCheck:
    partial: float
    exact: float

    @property
    def error(self) -> float:
        return abs(self.partial - self.exact)


def cot_series_check(theta: float, J: int) -> SeriesCheck:
    """
    ``Σ 2/(θ + 2jπ)`` over ``|θ/2π + j| <= J + 1/2`` against ``cot(θ/2)``

    Raises:
        ``DomainError``: ``θ`` outside ``(0, 2π)`` or a vanishing denominator
    """
    if not 0 < theta < 2 * math.pi:
        raise DomainError(f"θ = {theta} is outside (0, 2π)")

    offset = theta / (2 * math.pi)
    low = math.ceil(-J - 0.5 - offset)
    high = math.floor(J + 0.5 - offset)
    j = np.arange(low, high + 1)

    # (θ/π + 2j)·π keeps the θ = π pairs exact negatives of each other
    denominators = (theta / math.pi + 2 * j) * math.pi
    if np.any(denominators == 0):
        raise DomainError(f"θ = {theta} is a pole of the series")

    exact = 0.0 if theta == math.pi else math.cos(theta / 2) / math.sin(theta / 2)
    return SeriesCheck(partial=math.fsum(2 / denominators), exact=exact)


def envelope(truncations: Sequence[int], errors: Sequence[float]) -> Tuple[float, bool]:
    """
    Smallest ``C`` with ``error(J) <= C/J`` and whether the errors decrease
    """
    truncations = np.asarray(truncations, dtype=float)
    errors = np.asarray(errors, dtype=float)

    constant = float(np.max(errors * truncations))
    decreasing = bool(np.all(np.diff(errors) < 0))
    return constant, decreasing
