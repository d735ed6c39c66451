"""Argument set and helpers shared by the run commands"""

from typing import Any, Iterable, Mapping, Optional, Tuple

from .. import utils
from ..loader import arg
from ..rootsys import ActionSpec, Chamber, chamber, get
from ..types import RunConfig

ACTION_ARGS = [
    arg("--action", required=True, help="catalog row name or label"),
    arg("--q", type=int, help="row param q"),
    arg("--j", type=int, help="row param j"),
]

RUN_ARGS = ACTION_ARGS + [
    arg("--start", help="start point x1,x2 in chamber coordinates"),
    arg("--out", help="JSON lines output file"),
    arg("--rtol", type=float),
    arg("--atol", type=float),
    arg("--wall-eps", dest="wall_eps", type=float),
    arg("--max-time", dest="max_time", type=float),
    arg("--seed", type=int),
    arg("--lenient-strata", dest="lenient_strata", action="store_true",
        help="project a non-tangent stratum field instead of failing"),
]

OPTION_KEYS = ("rtol", "atol", "wall_eps", "max_time")


def run_config(args) -> RunConfig:
    return RunConfig(
        action=args.action,
        params={key: getattr(args, key) for key in ("q", "j") if getattr(args, key, None) is not None},
        start=getattr(args, "start", None),
        options={key: getattr(args, key) for key in OPTION_KEYS if getattr(args, key, None) is not None},
        out=getattr(args, "out", None),
        seed=getattr(args, "seed", None),
        lenient_strata=bool(getattr(args, "lenient_strata", False)),
    )


def resolve(config: RunConfig) -> Tuple[ActionSpec, Chamber]:
    spec = get(config.action, **config.params)
    return spec, chamber(spec)


def point_text(point: Iterable[float]) -> str:
    return utils.format_point(point, fixed=False)


def num(value: Optional[float]) -> str:
    return "null" if value is None else utils.fmt(value)


def save(path: Optional[str], records: Iterable[Mapping[str, Any]]) -> int:
    if not path:
        return 0

    return utils.write_records(path, records)
