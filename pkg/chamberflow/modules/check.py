#   ┌─┐┬ ┬┌─┐┌┬┐┌┐ ┌─┐┬─┐┌─┐┬  ┌─┐┬ ┬
#   │  ├─┤├─┤│││├┴┐├┤ ├┬┘├┤ │  │ ││││
#   └─┘┴ ┴┴ ┴┴ ┴└─┘└─┘┴└─└  ┴─┘└─┘└┴┘
#
#                                    🔒 Licensed under the CC-by-NC
#                                 https://creativecommons.org/licenses/by-nc/4.0/

import math
import logging

from typing import Any, Dict, List

from ._common import num
from .. import loader, utils
from ..config import settings
from ..main import EXIT_MISMATCH, EXIT_OK
from ..rootsys import get, instantiated
from ..validators import ValidationError
from ..verify import (
    MISMATCH,
    consistency_sweep,
    convexity_sweep,
    cot_series_check,
    envelope,
    gradient_sweep,
    multiplicity_audit,
    row_rng,
    table3_crosscheck,
    tangency_check,
)
from ..wrappers import fan_out

logger = logging.getLogger(__name__)

SERIES_ANGLES = (0.3, math.pi / 2, 2.7)
SERIES_TRUNCATIONS = (10, 100, 1000, 10000)


def series_records() -> List[Dict[str, Any]]:
    records = []
    for theta in SERIES_ANGLES:
        checks = [cot_series_check(theta, J) for J in SERIES_TRUNCATIONS]
        constant, decreasing = envelope(SERIES_TRUNCATIONS, [check.error for check in checks])
        records.append(
            {
                "check": "cot_series",
                "name": f"theta={utils.fmt(theta)}",
                "verdict": "match" if decreasing and math.isfinite(constant) else MISMATCH,
                "envelope": constant,
                "errors": [check.error for check in checks],
            }
        )

    partials = [cot_series_check(math.pi, J).partial for J in SERIES_TRUNCATIONS]
    records.append(
        {
            "check": "cot_series",
            "name": "theta=pi",
            "verdict": "match" if all(partial == 0.0 for partial in partials) else MISMATCH,
            "errors": [abs(partial) for partial in partials],
        }
    )
    return records


@loader.module(name="check", author="chamberflow")
class CheckMod(loader.Module):
    """Verification suite"""

    GATING = ("gradient", "consistency", "table3", "cot_series")
    STRICT = ("convexity", "multiplicity", "tangency")

    @loader.command(
        "Run the verification suite on one row or on the whole catalog",
        loader.arg("--all", dest="all", action="store_true", help="every catalog row"),
        loader.arg("--action", help="one catalog row"),
        loader.arg("--q", type=int),
        loader.arg("--j", type=int),
        loader.arg("--out", default="chamberflow-check.jsonl", help="JSON lines report"),
        loader.arg("--strict", action="store_true", help="audits and convexity also gate the exit code"),
        loader.arg("--points", type=int, default=100, help="random points per row"),
        loader.arg("--seed", type=int),
        loader.arg("--workers", type=int),
    )
    def check_cmd(self, args):
        if bool(args.all) == bool(args.action):
            raise ValidationError(self.strings("target"))

        if args.all:
            rows = instantiated()
        else:
            params = {key: getattr(args, key) for key in ("q", "j") if getattr(args, key) is not None}
            rows = [get(args.action, **params)]

        seed = settings()["seed"] if args.seed is None else args.seed
        records = self.collect(rows, args.points, seed, args.workers)

        utils.write_records(args.out, records)

        gating = self.GATING + (self.STRICT if args.strict else ())
        failed = [r for r in records if r["verdict"] == MISMATCH and r["check"] in gating]

        for check in self.GATING + self.STRICT:
            chosen = [r for r in records if r["check"] == check]
            passed = sum(r["verdict"] != MISMATCH for r in chosen)
            self.out("summary", check=check, passed=passed, total=len(chosen))

            for record in chosen:
                if record["verdict"] == MISMATCH:
                    self.out("failed", name=record["name"], detail=num(record.get("worst", record.get("max_deviation"))))

        self.out("report", path=args.out)
        if failed:
            self.out("mismatch", path=args.out)
            return EXIT_MISMATCH

        return EXIT_OK

    def collect(self, rows, points: int, seed: int, workers) -> List[Dict[str, Any]]:
        records: List[Dict[str, Any]] = []

        for sweep in (gradient_sweep, consistency_sweep, convexity_sweep):
            records.extend(sweep(rows, n_points=points, seed=seed, workers=workers).to_records())

        def audits(item):
            index, spec = item
            return [
                table3_crosscheck(spec, n_points=points, rng=row_rng(seed, index)).to_record(),
                multiplicity_audit(spec).to_record(),
                tangency_check(spec, rng=row_rng(seed, index)).to_record(),
            ]

        results = fan_out(audits, list(enumerate(rows)), workers)
        for group in zip(*results):
            records.extend(sorted(group, key=lambda record: record["name"]))

        records.extend(series_records())
        return records
