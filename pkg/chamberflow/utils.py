#   ┌─┐┬ ┬┌─┐┌┬┐┌┐ ┌─┐┬─┐┌─┐┬  ┌─┐┬ ┬
#   │  ├─┤├─┤│││├┴┐├┤ ├┬┘├┤ │  │ ││││
#   └─┘┴ ┴┴ ┴┴ ┴└─┘└─┘┴└─└  ┴─┘└─┘└┴┘
#
#                                    🔒 Licensed under the CC-by-NC
#                                 https://creativecommons.org/licenses/by-nc/4.0/

import os
import json
import math
import contextlib

import yaml
import numpy as np

from pathlib import Path
from typing import Any, Iterable, Mapping, Optional, Sequence, TextIO, Union

from .validators import Point

supress = contextlib.suppress

BASE_DIR = os.path.abspath(os.path.dirname(__file__))
BASE_PATH = Path(BASE_DIR)
DATA_PATH = BASE_PATH / "data"

DATA_FILES = {
    "catalog": ("catalog.yml", "CHAMBERFLOW_CATALOG"),
    "table3": ("table3.yml", "CHAMBERFLOW_TABLE3"),
    "allowlist": ("allowlist.yml", "CHAMBERFLOW_ALLOWLIST"),
}


def data_path(kind: str) -> Path:
    """
    Path of a bundled data file, honouring its environment override

    Args:
        kind (``str``): one of ``catalog``, ``table3``, ``allowlist``

    Returns:
        ``Path``: the file to read
    """
    filename, env = DATA_FILES[kind]
    override = os.environ.get(env)

    return Path(override) if override else DATA_PATH / filename


def load_yaml(source: Union[str, Path, TextIO]) -> Any:
    if hasattr(source, "read"):
        return yaml.safe_load(source)

    with open(source, encoding="utf-8") as file:
        return yaml.safe_load(file)


def get_langpack(lang: str = "en") -> dict:
    return load_yaml(BASE_PATH / "langpacks" / f"{lang}.yml") or {}


def fmt(value: float) -> str:
    """Float with 17 significant digits"""
    return format(float(value), ".17g")


def fmt_fixed(value: float, digits: int = 16) -> str:
    value = round(float(value), digits)
    if value == 0:
        value = 0.0

    return f"{value:.{digits}f}"


def format_point(point: Iterable[float], fixed: bool = True) -> str:
    render = fmt_fixed if fixed else fmt
    return ", ".join(render(x) for x in point)


def parse_point(text: Union[str, Sequence[float]], dim: Optional[int] = None) -> tuple:
    return Point._valid(text, dim=dim)


def _encode(value: Any) -> str:
    if value is None:
        return "null"

    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"

    if isinstance(value, (int, np.integer)):
        return str(int(value))

    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            return "null"

        return fmt(value)

    if isinstance(value, Mapping):
        items = (f"{json.dumps(str(key))}: {_encode(item)}" for key, item in value.items())
        return "{" + ", ".join(items) + "}"

    if isinstance(value, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_encode(item) for item in value) + "]"

    return json.dumps(str(value), ensure_ascii=False)


def dumps_record(record: Mapping[str, Any]) -> str:
    """One JSON line with every float at 17 significant digits"""
    return _encode(record)


def write_records(path: Union[str, Path], records: Iterable[Mapping[str, Any]]) -> int:
    count = 0
    with open(path, "w", encoding="utf-8") as file:
        for record in records:
            file.write(dumps_record(record) + "\n")
            count += 1

    return count


def read_records(path: Union[str, Path]) -> list:
    with open(path, encoding="utf-8") as file:
        return [json.loads(line) for line in file if line.strip()]


def make_rng(seed: Optional[int] = None) -> np.random.Generator:
    if seed is None:
        from .config import settings

        seed = settings()["seed"]

    return np.random.default_rng(seed)
