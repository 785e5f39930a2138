"""Exception hierarchy shared across the package."""


class TexnoiseError(Exception):
    """Base class for all errors raised by this package."""


class BoundsError(TexnoiseError, ValueError):
    """A region of interest falls outside its parent raster."""


class RasterFormatError(TexnoiseError, ValueError):
    """Raster construction or file parsing failed."""


class GridMismatchError(TexnoiseError, ValueError):
    """Two histograms do not share the same bin grid."""


class InvalidParameterError(TexnoiseError, ValueError):
    """Requested distribution parameters are outside the valid domain."""


class DegenerateNoiseError(TexnoiseError, ValueError):
    """The background region has zero variance; no noise is detectable."""


class DimensionMismatchError(TexnoiseError, ValueError):
    """Two rasters that must share dimensions do not."""


class IncompleteInputError(TexnoiseError, ValueError):
    """A ranking or report is missing one or more required methods."""


class ManifestError(TexnoiseError, ValueError):
    """A dataset manifest is malformed or references bad data."""
