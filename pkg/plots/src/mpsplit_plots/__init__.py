"""Figure rendering for mpsplit result files."""

__version__ = "0.1.0"

from .figures import KINDS, FigureSpec, plot  # noqa: F401
from .schema import SchemaError, read_cdf, read_decisions, read_sweep  # noqa: F401
