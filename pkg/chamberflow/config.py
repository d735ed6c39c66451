#   ┌─┐┬ ┬┌─┐┌┬┐┌┐ ┌─┐┬─┐┌─┐┬  ┌─┐┬ ┬
#   │  ├─┤├─┤│││├┴┐├┤ ├┬┘├┤ │  │ ││││
#   └─┘┴ ┴┴ ┴┴ ┴└─┘└─┘┴└─└  ┴─┘└─┘└┴┘
#
#                                    🔒 Licensed under the CC-by-NC
#                                 https://creativecommons.org/licenses/by-nc/4.0/

import logging

import yaml

from pathlib import Path
from typing import Optional, Union

from .types import Config, ConfigValue
from .validators import Float, Integer, ValidationError

logger = logging.getLogger(__name__)


def _defaults() -> Config:
    return Config(
        ConfigValue("rtol", "Relative tolerance of the embedded RK pair", 1e-10, validator=Float(positive=True)),
        ConfigValue("atol", "Absolute tolerance of the embedded RK pair", 1e-12, validator=Float(positive=True)),
        ConfigValue("wall_eps", "Wall margin that hands off to the blow-up model", 1e-8, validator=Float(positive=True)),
        ConfigValue("corner_eps", "Margin under which a second wall counts as active", 1e-6, validator=Float(positive=True)),
        ConfigValue("max_time", "Flow time limit", 1e3, validator=Float(positive=True)),
        ConfigValue("max_steps", "Accepted plus rejected step limit", 200000, validator=Integer(minimum=10)),
        ConfigValue("h_min", "Step size underflow threshold", 1e-22, validator=Float(positive=True)),
        ConfigValue("eps_pole", "Pole guard in functional units", 1e-12, validator=Float(positive=True)),
        ConfigValue("fixed_point_tol", "Field norm treated as a fixed point", 1e-12, validator=Float(positive=True)),
        ConfigValue("fit_window", "Accepted steps used by the blow-up fit", 50, validator=Integer(minimum=3)),
        ConfigValue("newton_maxiter", "Newton iteration limit", 200, validator=Integer(minimum=1)),
        ConfigValue("multistart", "Random Newton restarts for uniqueness", 5, validator=Integer(minimum=0)),
        ConfigValue("seed", "Seed of every random draw", 20240229, validator=Integer(minimum=0)),
        ConfigValue("safety_margin", "Wall distance of random sample points", 0.05, validator=Float(positive=True)),
        ConfigValue("q", "Default q of parametrized rows", 4, validator=Integer(minimum=1)),
        ConfigValue("j", "Default j of parametrized rows", 2, validator=Integer(minimum=1)),
    )


_settings: Optional[Config] = None


def settings() -> Config:
    """Process-wide options"""
    global _settings

    if _settings is None:
        _settings = _defaults()

    return _settings


def load_settings(path: Union[str, Path]) -> Config:
    """
    Overrides options from a yaml mapping

    :param path: yaml file with ``option: value`` pairs
    :return: the updated settings
    """
    with open(path, encoding="utf-8") as file:
        data = yaml.safe_load(file) or {}

    if not isinstance(data, dict):
        raise ValidationError(f"{path}: settings file must hold a mapping")

    config = settings()
    config.update_from(data)
    logger.debug("Loaded %d option(s) from %s", len(data), path)
    return config
