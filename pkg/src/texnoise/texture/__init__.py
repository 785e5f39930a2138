"""Seven texture feature extractors plus shared quantization/normalization."""

from __future__ import annotations

from ..raster import Raster
from .autocov import acf_features
from .common import (
    ANGLE_OFFSETS,
    FEATURE_COUNTS,
    METHODS,
    TEXTURE_ANGLES,
    FeatureVector,
    GrayQuant,
    normalize_features,
)
from .cooccurrence import cm_features, cooccurrence_matrix
from .fractal import fd_features, fd_image
from .gabor import GABOR_FREQS, gabor_features, gabor_sigma
from .gmrf import gmrf_features
from .runlength import rlm_features, run_length_matrix
from .wavelet import WAVELETS, dwt2, wavelet_packet_energies, wp_features

__all__ = [
    "ANGLE_OFFSETS", "FEATURE_COUNTS", "METHODS", "TEXTURE_ANGLES",
    "FeatureVector", "GrayQuant", "normalize_features",
    "acf_features", "cm_features", "cooccurrence_matrix",
    "fd_features", "fd_image", "GABOR_FREQS", "gabor_features", "gabor_sigma",
    "gmrf_features", "rlm_features", "run_length_matrix",
    "WAVELETS", "dwt2", "wavelet_packet_energies", "wp_features",
    "all_features",
]


def all_features(roi: Raster, cm_levels: int = 64, rlm_levels: int = 16,
                 wavelet: str = "db4", fd_window: int = 9) -> dict[str, FeatureVector]:
    """Run every extractor on one ROI; keys follow METHODS order."""
    return {
        "GMRF": gmrf_features(roi),
        "FD": fd_features(roi, window=fd_window),
        "CM": cm_features(roi, quant=GrayQuant(cm_levels)),
        "RLM": rlm_features(roi, quant=GrayQuant(rlm_levels)),
        "ACF": acf_features(roi),
        "GF": gabor_features(roi),
        "WP": wp_features(roi, wavelet=wavelet),
    }
