#   ┌─┐┬ ┬┌─┐┌┬┐┌┐ ┌─┐┬─┐┌─┐┬  ┌─┐┬ ┬
#   │  ├─┤├─┤│││├┴┐├┤ ├┬┘├┤ │  │ ││││
#   └─┘┴ ┴┴ ┴┴ ┴└─┘└─┘┴└─└  ┴─┘└─┘└┴┘
#
#                                    🔒 Licensed under the CC-by-NC
#                                 https://creativecommons.org/licenses/by-nc/4.0/

"""
Catalog-wide sweeps

Every row draws its points from its own generator seeded with
``[seed, row index]``, so a row gives the same numbers whether it runs
alone, in a thread pool or as part of the whole catalog.
"""

import logging

import numpy as np

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

from .checks import fd_gradient_check
from ..config import settings
from ..meanfield import lift_family, lift_mean_curvature, min_hessian_eigenvalue, vector_field_X
from ..rootsys import ActionSpec, chamber, instantiated
from ..wrappers import fan_out

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RowResult:
    name: str
    worst: float
    points: int
    ok: bool

    def to_record(self, check: str) -> Dict[str, Any]:
        return {
            "check": check,
            "name": self.name,
            "verdict": "match" if self.ok else "mismatch",
            "worst": self.worst,
            "points": self.points,
        }


@dataclass
class SweepSummary:
    check: str
    tolerance: float
    rows: List[RowResult] = field(default_factory=list)

    def __iter__(self):
        return iter(self.rows)

    def __getitem__(self, name: str) -> RowResult:
        return next(row for row in self.rows if row.name == name)

    @property
    def failures(self) -> List[RowResult]:
        return [row for row in self.rows if not row.ok]

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def worst(self) -> float:
        return max((row.worst for row in self.rows), default=0.0)

    def to_records(self) -> List[Dict[str, Any]]:
        return [row.to_record(self.check) for row in self.rows]


def row_rng(seed: Optional[int], index: int) -> np.random.Generator:
    if seed is None:
        seed = settings()["seed"]

    return np.random.default_rng([seed, index])


def _sweep(
    check: str,
    measure: Callable[[Any, np.ndarray], float],
    passes: Callable[[float], bool],
    tolerance: float,
    rows: Optional[Sequence[ActionSpec]],
    n_points: int,
    seed: Optional[int],
    workers: Optional[int],
    reduce: Callable[[List[float]], float] = max,
) -> SweepSummary:
    rows = list(instantiated() if rows is None else rows)

    def run(item):
        index, spec = item
        cham = chamber(spec)
        points = cham.sample(n_points, row_rng(seed, index))
        values = [measure(cham, point) for point in points]
        worst = float(reduce(values)) if values else 0.0
        ok = all(passes(value) for value in values)

        logger.debug("%s %s: worst %.3g over %d points", check, spec.name, worst, len(values))
        return RowResult(spec.name, worst, len(values), ok)

    results = fan_out(run, list(enumerate(rows)), workers)
    summary = SweepSummary(check, tolerance, sorted(results, key=lambda row: row.name))

    for row in summary.failures:
        logger.warning("%s: %s fails with %.3g", check, row.name, row.worst)

    return summary


def consistency_sweep(
    rows: Optional[Sequence[ActionSpec]] = None,
    n_points: int = 100,
    tol: float = 1e-11,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
) -> SweepSummary:
    """
    Lifted mean curvature at ``w = 0`` against the chamber field, per row

    Returns:
        ``SweepSummary``: per-row maxima of ``‖H̃(0) − X(Y)‖``
    """

    def measure(cham, point):
        family = lift_family(cham, point)
        lifted = lift_mean_curvature(family, np.zeros(cham.rank))
        return float(np.linalg.norm(lifted - vector_field_X(cham, point)))

    return _sweep("consistency", measure, lambda x: x <= tol, tol, rows, n_points, seed, workers)


def gradient_sweep(
    rows: Optional[Sequence[ActionSpec]] = None,
    n_points: int = 100,
    tol: float = 1e-5,
    h: float = 1e-6,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
) -> SweepSummary:
    """Relative finite-difference error of ``grad ρ = X``, per row"""
    return _sweep(
        "gradient",
        lambda cham, point: fd_gradient_check(cham, point, h),
        lambda x: x <= tol,
        tol,
        rows,
        n_points,
        seed,
        workers,
    )


def convexity_sweep(
    rows: Optional[Sequence[ActionSpec]] = None,
    n_points: int = 100,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
) -> SweepSummary:
    """Smallest Hessian eigenvalue of ``ρ``; ``worst`` is the minimum over the points"""
    return _sweep(
        "convexity",
        min_hessian_eigenvalue,
        lambda x: x > 0,
        0.0,
        rows,
        n_points,
        seed,
        workers,
        reduce=min,
    )
