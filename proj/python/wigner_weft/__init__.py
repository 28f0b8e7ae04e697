"""Cross-Wigner transforms, weak values and phase-space state reconstruction."""

from ._core import *  # noqa: F401,F403
from ._core import (
    Field,
    Grid,
    OrthogonalityError,
    ParseError,
    PreconditionError,
    State,
    WeftError,
)

__version__ = "0.1.0"
