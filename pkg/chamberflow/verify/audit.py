"""Audits of the printed multiplicities"""

import logging

import numpy as np

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from .allowlist import Allowlist
from .table3 import KNOWN, MATCH, MISMATCH, allowlist
from ..flow import normal_residual
from ..flow.stratum import NORMAL_TOL
from ..rootsys import ActionSpec, chamber, facets
from ..utils import make_rng

logger = logging.getLogger(__name__)


@dataclass
class AuditReport:
    name: str
    check: str
    failures: List[str] = field(default_factory=list)
    worst: float = 0.0
    verdict: str = MATCH
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.verdict != MISMATCH

    def to_record(self) -> Dict[str, Any]:
        return {
            "check": self.check,
            "name": self.name,
            "verdict": self.verdict,
            "worst": self.worst,
            "failures": self.failures,
            "note": self.note,
        }


def _classify(report: AuditReport, allowed: Allowlist) -> AuditReport:
    known = allowed.allows(report.name, report.check)
    if not report.failures:
        report.verdict = MATCH
    elif known:
        report.verdict = KNOWN
        report.note = allowed.note(report.name, report.check)
    else:
        report.verdict = MISMATCH
        logger.warning("%s: %s audit fails: %s", report.name, report.check, "; ".join(report.failures))

    return report


def multiplicity_audit(spec: ActionSpec, allowed: Optional[Allowlist] = None) -> AuditReport:
    """
    Checks ``m_V + m_H = total`` for every root with a printed total

    A root dropped for having no multiplicity counts as ``(0, 0)``.
    """
    report = AuditReport(spec.name, "multiplicity")

    for label, total in spec.totals:
        root = spec.root(label)
        m_V, m_H = (root.m_V, root.m_H) if root else (0, 0)
        if m_V + m_H != total:
            report.failures.append(f"{label}: {m_V} + {m_H} != {total}")
            report.worst = max(report.worst, float(abs(total - m_V - m_H)))

    return _classify(report, allowlist() if allowed is None else allowed)


def tangency_check(
    spec: ActionSpec,
    n_points: int = 20,
    allowed: Optional[Allowlist] = None,
    rng: Optional[np.random.Generator] = None,
) -> AuditReport:
    """
    Normal part of the restricted field at ``n_points`` points of every facet

    The residual is measured relative to ``max(1, ‖field‖)``.
    """
    cham = chamber(spec)
    rng = rng or make_rng()
    report = AuditReport(spec.name, "tangency")

    for facet in facets(cham):
        worst = 0.0
        for point in facet.sample(n_points, rng):
            full, residual = normal_residual(facet, point)
            worst = max(worst, residual / max(1.0, float(np.linalg.norm(full))))

        report.worst = max(report.worst, worst)
        if worst > NORMAL_TOL:
            report.failures.append(f"{facet.describe()}: {worst:.3g}")

    return _classify(report, allowlist() if allowed is None else allowed)
