"""qgcert: exact quantum-group data and FRT-presentation certification.

Everything is computed over the exact field Q(q) (or Q after specializing q
to a nonzero rational), with zero-tolerance identity checks throughout.
"""

__version__ = "0.1.0"

from .scalars import (
    Fraction,
    LaurentPoly,
    PoleError,
    Scalar,
    laurent_content,
    parse_scalar,
    quantum_integer,
    sc,
)

__all__ = [
    "Fraction",
    "LaurentPoly",
    "PoleError",
    "Scalar",
    "laurent_content",
    "parse_scalar",
    "quantum_integer",
    "sc",
    "__version__",
]
