"""Independent checks of the generated field against closed forms and printed tables"""

from .allowlist import AllowEntry, Allowlist, load_allowlist  # noqa: F401
from .audit import AuditReport, multiplicity_audit, tangency_check  # noqa: F401
from .checks import SeriesCheck, cot_series_check, envelope, fd_gradient, fd_gradient_check  # noqa: F401
from .sweep import RowResult, SweepSummary, consistency_sweep, convexity_sweep, gradient_sweep, row_rng  # noqa: F401
from .table3 import (  # noqa: F401
    KNOWN,
    MATCH,
    MISMATCH,
    CrosscheckReport,
    Transcription,
    allowlist,
    load_transcriptions,
    table3_crosscheck,
    transcriptions,
)
