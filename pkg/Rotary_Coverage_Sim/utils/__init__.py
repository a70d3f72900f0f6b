from .errors import (
    CoverageError, OriginOutsideRegion, NonStarShaped, EmptySector, DensityOutOfBounds,
    NonFinite, NoConvergence, ReferenceEscaped, IndexOutOfRange,
    ConfigError, ParseError, ValidationError,
)
from .logging_setup import setup_logging

__all__ = [
    'CoverageError', 'OriginOutsideRegion', 'NonStarShaped', 'EmptySector', 'DensityOutOfBounds',
    'NonFinite', 'NoConvergence', 'ReferenceEscaped', 'IndexOutOfRange',
    'ConfigError', 'ParseError', 'ValidationError', 'setup_logging',
]
