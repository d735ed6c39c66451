#   ┌─┐┬ ┬┌─┐┌┬┐┌┐ ┌─┐┬─┐┌─┐┬  ┌─┐┬ ┬
#   │  ├─┤├─┤│││├┴┐├┤ ├┬┘├┤ │  │ ││││
#   └─┘┴ ┴┴ ┴┴ ┴└─┘└─┘┴└─└  ┴─┘└─┘└┴┘
#
#                                    🔒 Licensed under the CC-by-NC
#                                 https://creativecommons.org/licenses/by-nc/4.0/

"""
Arithmetic expressions stored in the data files

Multiplicity formulas (``2*q-4``), root coordinates (``sqrt(3)``), root
labels (``2*alpha+beta``) and the transcribed closed forms of the flow field
(``tan(x1+s*x2)-2*cot(2*x1)``) are parsed once with sympy. Multiplicities are
evaluated exactly, everything else through a numpy ``lambdify``.
"""

import numpy as np
import sympy as sp

from sympy.core.function import AppliedUndef
from sympy.parsing.sympy_parser import parse_expr, standard_transformations
from tokenize import TokenError
from typing import Any, Callable, FrozenSet, Optional, Tuple, Union

from ..types import CatalogError

Number = Union[int, float]

# names outside this table parse as plain symbols; `beta` is a root here
GLOBALS = {
    "Symbol": sp.Symbol,
    "Function": sp.Function,
    "Integer": sp.Integer,
    "Float": sp.Float,
    "Rational": sp.Rational,
    "sin": sp.sin,
    "cos": sp.cos,
    "tan": sp.tan,
    "cot": sp.cot,
    "sqrt": sp.sqrt,
    "pi": sp.pi,
}

CONSTANTS = {"s": sp.sqrt(3)}

NUMPY = [{"cot": lambda x: 1.0 / np.tan(x)}, "numpy"]


class Expression:
    """
    Parsed expression

    :param source: text of the expression; integers and plain numbers are accepted too
    """

    def __init__(self, source: Union[str, Number]):
        self.source = str(source).strip()

        try:
            expr = parse_expr(
                self.source,
                local_dict=dict(CONSTANTS),
                global_dict=dict(GLOBALS),
                transformations=standard_transformations,
            )
        except (SyntaxError, TokenError, TypeError, ValueError, NameError, AttributeError) as error:
            raise CatalogError(f"Can't parse expression {self.source!r}: {error}")

        if not isinstance(expr, sp.Expr):
            raise CatalogError(f"{self.source!r}: only arithmetic is allowed")

        unknown = expr.atoms(AppliedUndef)
        if unknown:
            raise CatalogError(
                f"{self.source!r}: unknown function {', '.join(sorted(str(f.func) for f in unknown))}"
            )

        self.expr: sp.Expr = expr
        self._symbols: Tuple[sp.Symbol, ...] = tuple(sorted(expr.free_symbols, key=str))
        self.names: FrozenSet[str] = frozenset(str(symbol) for symbol in self._symbols)
        self._numeric: Optional[Callable] = None

    def __repr__(self) -> str:
        return f"Expression({self.source!r})"

    @property
    def is_constant(self) -> bool:
        return not self.names

    def _values(self, env) -> list:
        missing = self.names - set(env)
        if missing:
            raise CatalogError(
                f"{self.source!r}: no value for {', '.join(sorted(missing))}"
            )

        return [env[str(symbol)] for symbol in self._symbols]

    def __call__(self, **env) -> Any:
        """Numeric value; arrays are accepted and broadcast"""
        values = self._values(env)
        if self._numeric is None:
            self._numeric = sp.lambdify(self._symbols, self.expr, modules=NUMPY)

        return self._numeric(*values)

    def integer(self, **env) -> int:
        """Evaluates a multiplicity formula, which must give an integer"""
        values = self._values(env)
        value = self.expr.subs(dict(zip(self._symbols, values)))

        if not value.is_number:
            raise CatalogError(f"{self.source!r} = {value} is not a number")

        if not value.is_integer:
            rounded = sp.nsimplify(value)
            if not rounded.is_Integer:
                raise CatalogError(f"{self.source!r} = {value} is not an integer")
            value = rounded

        return int(value)

    def real(self, **env) -> float:
        if self.is_constant:
            return float(self.expr)

        return float(self(**env))
