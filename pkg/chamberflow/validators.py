#   ┌─┐┬ ┬┌─┐┌┬┐┌┐ ┌─┐┬─┐┌─┐┬  ┌─┐┬ ┬
#   │  ├─┤├─┤│││├┴┐├┤ ├┬┘├┤ │  │ ││││
#   └─┘┴ ┴┴ ┴┴ ┴└─┘└─┘┴└─└  ┴─┘└─┘└┴┘
#
#                                    🔒 Licensed under the CC-by-NC
#                                 https://creativecommons.org/licenses/by-nc/4.0/

import math

from typing import Union, Type, Tuple, Optional
from functools import partial

ALLOWED_TYPES = Union[int, float, str, bool, None]


class ValidationError(Exception):
    """
    Raises if the value conversion fails
    """


class Validator:
    def __init__(self, type):
        self.type: Type = type


class Integer(Validator):
    """
    Integer

    Args:
        minimum (``int``, optional):
            Minimum value

        maximum (``int``, optional):
            Maximum value
    """

    def __init__(self, *, minimum: int = None, maximum: int = None):
        super().__init__(partial(self._valid, minimum=minimum, maximum=maximum))

    @staticmethod
    def _valid(
        value: ALLOWED_TYPES, *, minimum: int = None, maximum: int = None
    ) -> int:
        if isinstance(value, bool):
            raise ValidationError("Value must be a number")

        try:
            value = int(str(value).strip())
        except ValueError:
            raise ValidationError("Value must be a number")

        if minimum is not None and value < minimum:
            raise ValidationError("Value must be greater than minimum")

        if maximum is not None and value > maximum:
            raise ValidationError("Value must be lower than maximum")

        return value


class Float(Validator):
    """
    Float validator
    :param minimum: minimum value
    :param maximum: maximum value
    :param positive: reject zero and negative values
    """

    def __init__(
        self, *, minimum: float = None, maximum: float = None, positive: bool = False
    ):
        super().__init__(
            partial(self._valid, minimum=minimum, maximum=maximum, positive=positive)
        )

    @staticmethod
    def _valid(
        value: ALLOWED_TYPES,
        *,
        minimum: float = None,
        maximum: float = None,
        positive: bool = False,
    ) -> float:
        if isinstance(value, bool):
            raise ValidationError("Value must be a float")

        try:
            value = float(str(value).strip())
        except ValueError:
            raise ValidationError("Value must be a float")

        if not math.isfinite(value):
            raise ValidationError("Value must be finite")

        if positive and value <= 0:
            raise ValidationError("Value must be positive")

        if minimum is not None and value < minimum:
            raise ValidationError("Value must be greater than minimum")

        if maximum is not None and value > maximum:
            raise ValidationError("Value must be lower than maximum")

        return value


class Point(Validator):
    """
    Point in chamber coordinates, given as ``"x1,x2,..."`` or a sequence

    Args:
        dim (``int``, optional):
            Required number of coordinates
    """

    def __init__(self, *, dim: Optional[int] = None):
        super().__init__(partial(self._valid, dim=dim))

    @staticmethod
    def _valid(value, *, dim: Optional[int] = None) -> Tuple[float, ...]:
        if isinstance(value, str):
            parts = [part for part in value.replace(" ", "").split(",") if part]
        else:
            try:
                parts = list(value)
            except TypeError:
                raise ValidationError("Point must be a comma separated list")

        try:
            point = tuple(float(part) for part in parts)
        except (TypeError, ValueError):
            raise ValidationError(f"Can't read point from {value!r}")

        if not point or not all(math.isfinite(x) for x in point):
            raise ValidationError(f"Can't read point from {value!r}")

        if dim is not None and len(point) != dim:
            raise ValidationError(f"Point must have {dim} coordinates, got {len(point)}")

        return point
