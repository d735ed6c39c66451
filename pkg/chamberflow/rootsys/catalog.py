#   ┌─┐┬ ┬┌─┐┌┬┐┌┐ ┌─┐┬─┐┌─┐┬  ┌─┐┬ ┬
#   │  ├─┤├─┤│││├┴┐├┤ ├┬┘├┤ │  │ ││││
#   └─┘┴ ┴┴ ┴┴ ┴└─┘└─┘┴└─└  ┴─┘└─┘└┴┘
#
#                                    🔒 Licensed under the CC-by-NC
#                                 https://creativecommons.org/licenses/by-nc/4.0/

import logging

import numpy as np

from dataclasses import dataclass, field, replace
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, TextIO, Tuple, Union

from .expr import Expression
from .. import utils
from ..types import CatalogError

logger = logging.getLogger(__name__)

Source = Union[str, Path, TextIO, Mapping[str, Any], None]


@dataclass(frozen=True)
class MarkedRoot:
    """
    Linear functional on the chamber space with its multiplicities

    Args:
        vector (``tuple``): coordinates of β♯, so that β(Y) = ⟨β♯, Y⟩
        m_V (``int``): vertical multiplicity
        m_H (``int``): horizontal multiplicity
        label (``str``, optional): name in the simple-root basis
    """

    vector: Tuple[float, ...]
    m_V: int
    m_H: int
    label: str = ""

    def __post_init__(self):
        if not any(self.vector):
            raise CatalogError(f"Root {self.label or self.vector} is zero")

        if self.m_V < 0 or self.m_H < 0:
            raise CatalogError(
                f"Root {self.label}: negative multiplicity ({self.m_V}, {self.m_H})"
            )

        if self.m_V + self.m_H < 1:
            raise CatalogError(f"Root {self.label} has no multiplicity")

    @property
    def vertical(self) -> bool:
        return self.m_V >= 1

    @property
    def horizontal(self) -> bool:
        return self.m_H >= 1

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.vector, dtype=float)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.vector))

    def __call__(self, point) -> float:
        return float(np.dot(self.vector, point))

    def negated(self) -> "MarkedRoot":
        return replace(
            self,
            vector=tuple(-x for x in self.vector),
            label=self.label[1:] if self.label.startswith("-") else f"-{self.label}",
        )


@dataclass(frozen=True)
class RootTemplate:
    """Catalog entry of a root before the row params are substituted"""

    label: str
    vector: Tuple[float, ...]
    m_V: Expression
    m_H: Expression
    total: Optional[Expression] = None


@dataclass(frozen=True)
class ActionSpec:
    """
    One catalog row

    A parametrized row is loaded with ``roots`` empty and gets concrete
    roots from :meth:`instantiate`.
    """

    name: str
    label: str
    cartan: str
    rank: int
    templates: Tuple[RootTemplate, ...] = field(compare=False, repr=False)
    params: Tuple[str, ...] = ()
    values: Tuple[Tuple[str, int], ...] = ()
    roots: Tuple[MarkedRoot, ...] = ()
    totals: Tuple[Tuple[str, int], ...] = field(default=(), compare=False, repr=False)
    witness: Optional[Tuple[float, ...]] = None
    metadata: Mapping[str, str] = field(default_factory=dict, compare=False, repr=False)
    notes: Tuple[str, ...] = field(default=(), compare=False, repr=False)
    range: str = field(default="", compare=False, repr=False)

    @property
    def is_concrete(self) -> bool:
        return bool(self.roots)

    @property
    def parametrized(self) -> bool:
        return bool(self.params)

    @property
    def param_values(self) -> Dict[str, int]:
        return dict(self.values)

    def require_concrete(self):
        if not self.is_concrete:
            raise CatalogError(
                f"{self.name} needs values for {', '.join(self.params)}"
            )

    def root(self, label: str) -> Optional[MarkedRoot]:
        return next((root for root in self.roots if root.label == label), None)

    def instantiate(self, **values: int) -> "ActionSpec":
        """
        Substitutes the row params into every multiplicity formula

        Missing params take the defaults from :func:`chamberflow.settings`.

        Raises:
            ``CatalogError``: unknown param, or a multiplicity that comes out negative
        """
        from ..config import settings

        unknown = set(values) - set(self.params)
        if unknown:
            raise CatalogError(
                f"{self.name} has no parameter {', '.join(sorted(unknown))}"
            )

        env = {key: int(values.get(key, settings()[key])) for key in self.params}

        roots, totals = [], []
        for template in self.templates:
            m_V, m_H = template.m_V.integer(**env), template.m_H.integer(**env)
            if m_V < 0 or m_H < 0:
                where = ", ".join(f"{key}={value}" for key, value in env.items())
                raise CatalogError(
                    f"{self.name} at {where}: {template.label} gets multiplicity "
                    f"({m_V}, {m_H})"
                )

            if template.total is not None:
                totals.append((template.label, template.total.integer(**env)))

            if m_V + m_H:
                roots.append(MarkedRoot(template.vector, m_V, m_H, template.label))

        if not roots:
            raise CatalogError(f"{self.name}: every multiplicity vanishes")

        return replace(
            self,
            values=tuple(env.items()),
            roots=tuple(roots),
            totals=tuple(totals),
        )


def _vectors(cartan: Mapping[str, Any]) -> Dict[str, Dict[str, np.ndarray]]:
    bases = {}
    for name, simple in (cartan or {}).items():
        try:
            bases[name] = {
                key: np.array([Expression(x).real() for x in coords])
                for key, coords in simple.items()
            }
        except (AttributeError, TypeError) as error:
            raise CatalogError(f"Cartan type {name}: {error}")

    return bases


def _template(label: str, data: Mapping[str, Any], basis: Mapping[str, np.ndarray]) -> RootTemplate:
    if data is None:
        data = {}

    if "vector" in data:
        vector = np.array([Expression(x).real() for x in data["vector"]])
    else:
        vector = Expression(label)(**basis)

    vector = tuple(float(x) for x in np.atleast_1d(vector))
    total = data.get("total")

    return RootTemplate(
        label=label,
        vector=vector,
        m_V=Expression(data.get("V", 0)),
        m_H=Expression(data.get("H", 0)),
        total=None if total is None else Expression(total),
    )


def _row(data: Mapping[str, Any], bases: Mapping[str, Mapping[str, np.ndarray]]) -> ActionSpec:
    name = str(data["name"])
    cartan = str(data["cartan"])
    if cartan not in bases:
        raise CatalogError(f"unknown Cartan type {cartan!r}")

    basis = bases[cartan]
    templates = tuple(
        _template(str(label), entry, basis) for label, entry in data["roots"].items()
    )

    params = tuple(str(param) for param in data.get("params") or ())
    for template in templates:
        free = (template.m_V.names | template.m_H.names) - set(params)
        if free:
            raise CatalogError(f"{template.label} uses undeclared {', '.join(sorted(free))}")

    witness = data.get("witness")
    metadata = dict(data.get("table1") or {})

    spec = ActionSpec(
        name=name,
        label=str(data.get("label", name)),
        cartan=cartan,
        rank=len(next(iter(basis.values()))),
        templates=templates,
        params=params,
        witness=None if witness is None else tuple(float(x) for x in witness),
        metadata=metadata,
        notes=tuple(data.get("notes") or ()),
        range=str(data.get("range", "")),
    )

    return spec if params else spec.instantiate()


def load_catalog(source: Source = None) -> List[ActionSpec]:
    """
    Reads catalog rows

    Args:
        source: path, open stream or already parsed mapping;
            defaults to the bundled ``catalog.yml`` (``CHAMBERFLOW_CATALOG`` overrides it)

    Returns:
        ``list`` of ``ActionSpec`` in file order; parametrized rows are not instantiated
    """
    if source is None:
        source = utils.data_path("catalog")

    data = source if isinstance(source, Mapping) else utils.load_yaml(source)
    if not isinstance(data, Mapping) or not isinstance(data.get("rows"), list):
        raise CatalogError("Catalog must be a mapping with a 'rows' list")

    bases = _vectors(data.get("cartan"))

    rows, seen = [], set()
    for index, entry in enumerate(data["rows"]):
        name = entry.get("name", f"#{index}") if isinstance(entry, Mapping) else f"#{index}"
        try:
            spec = _row(entry, bases)
        except CatalogError as error:
            raise CatalogError(f"Catalog row {name}: {error}")
        except (KeyError, TypeError, AttributeError, ValueError) as error:
            raise CatalogError(f"Catalog row {name} is malformed: {error!r}")

        if spec.name in seen:
            raise CatalogError(f"Duplicate catalog row {spec.name}")

        seen.add(spec.name)
        rows.append(spec)

    logger.debug("Loaded %d catalog rows", len(rows))
    return rows


@lru_cache(maxsize=None)
def _bundled(path: str) -> Tuple[ActionSpec, ...]:
    return tuple(load_catalog(path))


def catalog() -> Tuple[ActionSpec, ...]:
    """Rows of the configured catalog file, loaded once per path"""
    return _bundled(str(utils.data_path("catalog")))


def names() -> List[str]:
    return [spec.name for spec in catalog()]


def get(name: str, rows: Optional[Tuple[ActionSpec, ...]] = None, **values: int) -> ActionSpec:
    """
    Looks a row up by name or label and instantiates it

    Raises:
        ``CatalogError``: unknown row
    """
    for spec in rows if rows is not None else catalog():
        if name in (spec.name, spec.label):
            if spec.parametrized:
                return spec.instantiate(**values)

            if values:
                raise CatalogError(f"{spec.name} takes no parameters")

            return spec

    raise CatalogError(f"Unknown action {name!r}")


def instantiated(rows: Optional[Tuple[ActionSpec, ...]] = None) -> List[ActionSpec]:
    """Every row, parametrized ones at the default params"""
    return [
        spec.instantiate() if spec.parametrized else spec
        for spec in (rows if rows is not None else catalog())
    ]
