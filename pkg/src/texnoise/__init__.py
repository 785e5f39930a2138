"""texnoise: quantify how susceptible texture measures are to subtle
acquisition noise in CT-like grayscale images.

The library identifies the noise family in a uniform background region,
builds filtered (clean) and noise-doubled (distorted) image versions, pushes
all three through a simulated parallel-beam CT chain, extracts seven texture
feature sets from a tumour ROI in each version, and scores every method by
the Fisher separability between original and perturbed feature classes.
"""

from .errors import (
    BoundsError,
    DegenerateNoiseError,
    DimensionMismatchError,
    GridMismatchError,
    IncompleteInputError,
    InvalidParameterError,
    ManifestError,
    RasterFormatError,
    TexnoiseError,
)
from .filtering import FilterConfig, adaptive_filter, distort, residual
from .noise import (
    NoiseEstimate,
    NoiseFamily,
    NoiseModel,
    fit_family,
    identify,
    matusita,
    sample,
)
from .raster import (
    Histogram,
    Moments,
    Raster,
    RoiKind,
    RoiSpec,
    extract_roi,
    histogram,
    moments,
    read_pgm,
    write_pgm,
)
from .recon import (
    ScanGeometry,
    Sinogram,
    fbp,
    forward_project,
    roundtrip,
    shepp_logan,
)
from .separability import (
    FisherResult,
    ScatterPair,
    SeparabilityReport,
    fisher_j,
    rank_methods,
    scatter,
)
from .texture import (
    METHODS,
    FeatureVector,
    GrayQuant,
    all_features,
    normalize_features,
)

__version__ = "0.1.0"
