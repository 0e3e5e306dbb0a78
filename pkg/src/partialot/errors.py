"""Error types shared across the package."""

import math


class PartialOTError(ValueError):
    """Base class for all input/validation errors raised by this package."""


class InvalidPointError(PartialOTError):
    """A point does not belong to the metric pair it was used with."""


class PairMismatchError(PartialOTError):
    """Two objects built over different metric pairs were combined."""


class UnsupportedPairError(PartialOTError):
    """A geodesic operation was requested on a non-geodesic pair."""


class AtomOnBoundaryError(PartialOTError):
    """A measure atom sits on (or too close to) the boundary set A."""


class NonPositiveMassError(PartialOTError):
    """A mass or flow value must be strictly positive."""


class MarginalMismatchError(PartialOTError):
    """Measures or plan marginals that should agree do not."""


class InadmissiblePlanError(PartialOTError):
    """A plan's marginals do not match the prescribed measures."""


class MissingPotentialError(PartialOTError):
    """Dual potentials do not cover an atom of the plan's marginals."""


class OracleSizeError(PartialOTError):
    """An instance exceeds the brute-force oracle's enumeration bounds."""


class MalformedFileError(PartialOTError):
    """An input file could not be parsed; message carries path and position."""


def check_exponent(p) -> float:
    """Validate the transport exponent: a finite real with p >= 1."""
    p = float(p)
    if not math.isfinite(p) or p < 1.0:
        raise PartialOTError(f"exponent p must be a finite real >= 1, got {p!r}")
    return p
