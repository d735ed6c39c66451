__authors__ = ["chamberflow contributors"]
__license__ = "Attribution-NonCommercial 4.0 International"
__copyright__ = "Copyright (C) 2024 chamberflow"
__version__ = "0.3.0"

from .config import settings  # noqa: F401
