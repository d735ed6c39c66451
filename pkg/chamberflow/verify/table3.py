#   ┌─┐┬ ┬┌─┐┌┬┐┌┐ ┌─┐┬─┐┌─┐┬  ┌─┐┬ ┬
#   │  ├─┤├─┤│││├┴┐├┤ ├┬┘├┤ │  │ ││││
#   └─┘┴ ┴┴ ┴┴ ┴└─┘└─┘┴└─└  ┴─┘└─┘└┴┘
#
#                                    🔒 Licensed under the CC-by-NC
#                                 https://creativecommons.org/licenses/by-nc/4.0/

import logging

import numpy as np

from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, TextIO, Tuple, Union

from .allowlist import Allowlist, load_allowlist
from .. import utils
from ..meanfield import vector_field_X
from ..rootsys import ActionSpec, chamber
from ..rootsys.expr import Expression
from ..types import CatalogError

logger = logging.getLogger(__name__)

MATCH_TOL = 1e-9

MATCH = "match"
KNOWN = "known-discrepancy"
MISMATCH = "mismatch"


@dataclass(frozen=True)
class Transcription:
    """Printed closed form of the field, one expression per component"""

    name: str
    components: Tuple[Expression, ...]

    def __call__(self, point, **params) -> np.ndarray:
        env = dict(params)
        env.update({f"x{axis + 1}": float(x) for axis, x in enumerate(point)})

        with np.errstate(divide="ignore", invalid="ignore"):
            return np.array([float(component(**env)) for component in self.components])


def load_transcriptions(source: Union[str, Path, TextIO, Mapping[str, Any], None] = None) -> Dict[str, Transcription]:
    if source is None:
        source = utils.data_path("table3")

    data = source if isinstance(source, Mapping) else utils.load_yaml(source)
    rows = (data or {}).get("rows")
    if not isinstance(rows, Mapping):
        raise CatalogError("Transcription file must have a 'rows' mapping")

    result = {}
    for name, entry in rows.items():
        try:
            components = tuple(Expression(text) for text in entry["X"])
        except (KeyError, TypeError) as error:
            raise CatalogError(f"Transcription of {name} is malformed: {error!r}")

        result[str(name)] = Transcription(str(name), components)

    return result


@lru_cache(maxsize=None)
def _bundled(path: str) -> Dict[str, Transcription]:
    return load_transcriptions(path)


def transcriptions() -> Dict[str, Transcription]:
    return _bundled(str(utils.data_path("table3")))


@lru_cache(maxsize=None)
def _bundled_allowlist(path: str) -> Allowlist:
    return load_allowlist(path)


def allowlist() -> Allowlist:
    return _bundled_allowlist(str(utils.data_path("allowlist")))


@dataclass
class CrosscheckReport:
    """
    Printed closed form against the generated field

    ``verdict`` is ``match`` exactly when every deviation is within ``1e-9``.
    """

    name: str
    points: List[Tuple[float, ...]] = field(default_factory=list)
    deviations: List[float] = field(default_factory=list)
    component_diffs: List[float] = field(default_factory=list)
    verdict: str = MATCH
    note: str = ""

    @property
    def max_deviation(self) -> float:
        return max(self.deviations, default=0.0)

    @property
    def ok(self) -> bool:
        return self.verdict != MISMATCH

    def to_record(self) -> Dict[str, Any]:
        return {
            "check": "table3",
            "name": self.name,
            "verdict": self.verdict,
            "max_deviation": self.max_deviation,
            "component_diffs": self.component_diffs,
            "points": len(self.points),
            "note": self.note,
        }


def _deviation(difference: np.ndarray) -> np.ndarray:
    # a pole of the printed form counts as an unbounded deviation
    return np.where(np.isfinite(difference), np.abs(difference), np.inf)


def table3_crosscheck(
    spec: ActionSpec,
    transcription: Optional[Transcription] = None,
    n_points: Optional[int] = None,
    allowed: Optional[Allowlist] = None,
    rng: Optional[np.random.Generator] = None,
) -> CrosscheckReport:
    """
    Evaluates the printed form and the generated field at random interior points

    Mismatches are reported, never raised.

    Raises:
        ``CatalogError``: the row has no transcription
    """
    if transcription is None:
        available = transcriptions()
        if spec.name not in available:
            raise CatalogError(f"No transcription for {spec.name}")
        transcription = available[spec.name]

    if n_points is None:
        n_points = 100
    if allowed is None:
        allowed = allowlist()
    if rng is None:
        rng = utils.make_rng()

    report = CrosscheckReport(spec.name)
    if n_points:
        cham = chamber(spec)
        params = spec.param_values
        points = cham.sample(n_points, rng)

        diffs = np.array(
            [_deviation(transcription(point, **params) - vector_field_X(cham, point)) for point in points]
        )
        report.points = [tuple(point) for point in points]
        report.deviations = [float(x) for x in diffs.max(axis=1)]
        report.component_diffs = [float(x) for x in diffs.max(axis=0)]

    known = allowed.allows(spec.name, "table3")
    if report.max_deviation <= MATCH_TOL and (report.points or not known):
        report.verdict = MATCH
        if known:
            logger.warning("%s matches but is still on the allowlist", spec.name)
    elif known:
        report.verdict = KNOWN
        report.note = allowed.note(spec.name, "table3")
        logger.warning("%s: known discrepancy (%s)", spec.name, report.note)
    else:
        report.verdict = MISMATCH
        logger.warning("%s: printed field deviates by %.3g", spec.name, report.max_deviation)

    return report
