#   ┌─┐┬ ┬┌─┐┌┬┐┌┐ ┌─┐┬─┐┌─┐┬  ┌─┐┬ ┬
#   │  ├─┤├─┤│││├┴┐├┤ ├┬┘├┤ │  │ ││││
#   └─┘┴ ┴┴ ┴┴ ┴└─┘└─┘┴└─└  ┴─┘└─┘└┴┘
#
#                                    🔒 Licensed under the CC-by-NC
#                                 https://creativecommons.org/licenses/by-nc/4.0/

from typing import Any, Dict, Mapping, Optional, Tuple, Union

from dataclasses import dataclass, field

from .validators import ValidationError, Validator, Point


class ChamberflowError(Exception):
    """Base class of every error raised by chamberflow"""


class CatalogError(ChamberflowError):
    """Malformed catalog data, unknown rows, or rows that cannot be instantiated"""


class DomainError(ChamberflowError):
    """
    A point lies on or outside the domain of a closed-form expression

    :param constraint: the violated constraint, if known
    :param margin: its signed margin at the offending point
    """

    def __init__(self, message: str, *, constraint: Any = None, margin: float = None):
        super().__init__(message)
        self.constraint = constraint
        self.margin = margin


class ConvergenceError(ChamberflowError):
    """An iterative method did not reach its tolerance"""

    def __init__(self, message: str, **diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics


class StepSizeUnderflow(ConvergenceError):
    """Integrator step collapsed before the wall threshold was reached"""


class InvariantError(ChamberflowError):
    """A structural identity failed numerically"""


class UnsupportedError(ChamberflowError):
    pass


class WaitForDefault:
    pass


@dataclass
class ConfigValue:
    option: str
    doc: str = ""
    default: Any = None
    value: Any = field(default_factory=WaitForDefault)
    validator: Optional[Validator] = None

    def __post_init__(self):
        if isinstance(self.value, WaitForDefault):
            self.value = self.default

    def __setattr__(self, key: str, value: Any):
        if key == "value" and self.validator and value is not None:
            try:
                value = self.validator.type(value)
            except ValidationError:
                value = self.default

        object.__setattr__(self, key, value)


class Config(dict):
    def __init__(self, *values: ConfigValue):
        if all(isinstance(value, ConfigValue) for value in values):
            self.config = {config.option: config for config in values}
        else:
            keys, defaults, docstrings = values[::3], values[1::3], values[2::3]

            self.config = {
                key: ConfigValue(option=key, default=default, doc=doc)
                for key, default, doc in zip(keys, defaults, docstrings)
            }

        super().__init__(
            {option: config.value for option, config in self.config.items()}
        )

    def get_default(self, key: str) -> Any:
        return self.config[key].default

    def get_doc(self, key: str) -> Union[str, None]:
        return self.config[key].doc

    def __getitem__(self, key: str) -> Any:
        try:
            return self.config[key].value
        except KeyError:
            return None

    def set(self, key: str, value: Any) -> Any:
        """
        Validates and stores a value; unknown keys raise ``ValidationError``
        """
        if key not in self.config:
            raise ValidationError(f"Unknown option {key!r}")

        self.config[key].value = value
        super().__setitem__(key, self.config[key].value)
        return self.config[key].value

    def update_from(self, values: Mapping[str, Any]):
        for key, value in (values or {}).items():
            self.set(key, value)

    def reset(self):
        for key, config in self.config.items():
            config.value = config.default

        self.reload()

    def reload(self):
        for key in self.config:
            super().__setitem__(key, self.config[key].value)


@dataclass
class RunConfig:
    """Everything one CLI run needs; built from argparse namespaces"""

    action: str
    params: Dict[str, int] = field(default_factory=dict)
    start: Optional[Tuple[float, ...]] = None
    options: Dict[str, float] = field(default_factory=dict)
    out: Optional[str] = None
    seed: Optional[int] = None
    lenient_strata: bool = False

    def __post_init__(self):
        if self.start is not None:
            self.start = Point()._valid(self.start)

    def validate(self, chamber) -> Tuple[float, ...]:
        """Checks the start point against ``chamber`` before any run"""
        if self.start is None:
            raise ValidationError("A start point is required")

        if len(self.start) != chamber.rank:
            raise ValidationError(
                f"Start point must have {chamber.rank} coordinates"
            )

        chamber.require_interior(self.start)
        return self.start
