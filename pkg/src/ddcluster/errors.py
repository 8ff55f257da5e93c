"""Exception types shared across the toolkit."""


class ParseError(ValueError):
    """A point file could not be decoded; the message names the file and line."""


class DegenerateInputError(ValueError):
    """The input is too small for the requested operation (e.g. n < 2)."""


class DegenerateGeometryError(ValueError):
    """The input geometry collapses (e.g. every point coincident)."""
