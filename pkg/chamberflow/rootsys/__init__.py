"""Catalog rows, root data and chamber geometry"""

from .catalog import (  # noqa: F401
    ActionSpec,
    MarkedRoot,
    RootTemplate,
    catalog,
    get,
    instantiated,
    load_catalog,
    names,
)
from .chamber import (  # noqa: F401
    Chamber,
    Constraint,
    ConstraintKind,
    Wall,
    chamber,
    sample_points,
)
from .strata import Stratum, facets, interior, locate, strata, vertices  # noqa: F401
