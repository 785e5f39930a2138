"""Grayscale raster container, ROI extraction, histograms, moments, PGM I/O.

Intensities are kept as float64 internally regardless of the source bit
depth; quantization to integers happens only when writing image files.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np

from .errors import BoundsError, RasterFormatError


class RoiKind(str, Enum):
    TUMOUR = "tumour"
    BACKGROUND = "background"


@dataclass(frozen=True, eq=False)
class Raster:
    """2-D grayscale image. ``data`` is a read-only (height, width) float64
    grid; ``depth`` records the bit depth (8 or 16) used for file I/O."""

    data: np.ndarray
    depth: int = 16

    def __post_init__(self):
        arr = np.array(self.data, dtype=np.float64, copy=True)
        if arr.ndim != 2 or arr.size == 0:
            raise RasterFormatError(
                f"raster data must be a non-empty 2-D grid, got shape {arr.shape}"
            )
        if not np.isfinite(arr).all():
            raise RasterFormatError("raster intensities must all be finite")
        if self.depth not in (8, 16):
            raise RasterFormatError(f"bit depth must be 8 or 16, got {self.depth}")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]


@dataclass(frozen=True)
class RoiSpec:
    """Square region of interest given by its top-left corner and side."""

    origin_x: int
    origin_y: int
    side: int = 32
    kind: RoiKind = RoiKind.TUMOUR

    def __post_init__(self):
        if self.side < 8:
            raise BoundsError(f"ROI side must be >= 8, got {self.side}")
        if self.origin_x < 0 or self.origin_y < 0:
            raise BoundsError(
                f"ROI origin must be non-negative, got ({self.origin_x}, {self.origin_y})"
            )


@dataclass(frozen=True, eq=False)
class Histogram:
    """Counts over an equal-width partition of the observed intensity range.

    Bins are closed on the left; the maximum value joins the last bin."""

    bin_edges: np.ndarray
    counts: np.ndarray
    total: int

    def normalized(self) -> np.ndarray:
        return self.counts / float(self.total)


@dataclass(frozen=True)
class Moments:
    """First four population moments; skewness/kurtosis are standardized and
    reported as 0 (with ``degenerate`` set) when the variance vanishes."""

    mean: float
    variance: float
    skewness: float
    kurtosis: float
    degenerate: bool = False


def extract_roi(img: Raster, roi: RoiSpec) -> Raster:
    """Copy the ``roi.side`` square block of ``img`` at the ROI origin."""
    x1 = roi.origin_x + roi.side
    y1 = roi.origin_y + roi.side
    if x1 > img.width:
        raise BoundsError(
            f"ROI x-extent {roi.origin_x}+{roi.side} exceeds raster width {img.width}"
        )
    if y1 > img.height:
        raise BoundsError(
            f"ROI y-extent {roi.origin_y}+{roi.side} exceeds raster height {img.height}"
        )
    block = img.data[roi.origin_y:y1, roi.origin_x:x1].copy()
    return Raster(block, depth=img.depth)


def histogram(img: Raster, bins: int) -> Histogram:
    """Tally intensities into ``bins`` equal-width bins spanning [min, max].

    A constant image occupies a single bin spanning one intensity unit."""
    if bins < 2:
        raise ValueError(f"need at least 2 bins, got {bins}")
    data = img.data.ravel()
    lo = float(data.min())
    hi = float(data.max())
    if lo == hi:
        edges = np.linspace(lo, lo + 1.0, bins + 1)
        counts = np.zeros(bins, dtype=np.int64)
        counts[0] = data.size
    else:
        counts, edges = np.histogram(data, bins=bins, range=(lo, hi))
        counts = counts.astype(np.int64)
    return Histogram(bin_edges=edges, counts=counts, total=int(data.size))


def moments(img: Raster) -> Moments:
    """Population mean/variance plus standardized skewness and kurtosis
    (kurtosis is the raw fourth standardized moment, 3 for a Gaussian)."""
    data = img.data.ravel()
    if data.size < 2:
        raise ValueError("moments need at least 2 pixels")
    mu = float(data.mean())
    centered = data - mu
    m2 = float(np.mean(centered**2))
    # variance at the level of pure float roundoff counts as zero
    tol = (8.0 * np.finfo(np.float64).eps * max(1.0, abs(mu))) ** 2
    if m2 <= tol:
        return Moments(mean=mu, variance=0.0, skewness=0.0, kurtosis=0.0, degenerate=True)
    m3 = float(np.mean(centered**3))
    m4 = float(np.mean(centered**4))
    return Moments(
        mean=mu,
        variance=m2,
        skewness=m3 / m2**1.5,
        kurtosis=m4 / m2**2,
    )


def _read_pgm_tokens(raw: bytes, n: int, start: int) -> tuple[list[int], int]:
    """Read ``n`` whitespace-separated integers from header/ASCII body,
    skipping ``#`` comments. Returns the tokens and the next byte offset."""
    tokens: list[int] = []
    i = start
    while len(tokens) < n and i < len(raw):
        c = raw[i:i + 1]
        if c == b"#":
            while i < len(raw) and raw[i:i + 1] not in (b"\n", b"\r"):
                i += 1
        elif c.isspace():
            i += 1
        else:
            j = i
            while j < len(raw) and not raw[j:j + 1].isspace() and raw[j:j + 1] != b"#":
                j += 1
            tokens.append(int(raw[i:j]))
            i = j
    if len(tokens) < n:
        raise RasterFormatError("truncated PGM header or body")
    return tokens, i


def read_pgm(path: str | Path) -> Raster:
    """Read an 8- or 16-bit PGM file (P2 ASCII or P5 binary, big-endian)."""
    raw = Path(path).read_bytes()
    magic = raw[:2]
    if magic not in (b"P2", b"P5"):
        raise RasterFormatError(f"{path}: not a PGM file (magic {magic!r})")
    (width, height, maxval), pos = _read_pgm_tokens(raw, 3, 2)
    if width <= 0 or height <= 0:
        raise RasterFormatError(f"{path}: bad dimensions {width}x{height}")
    if not 0 < maxval < 65536:
        raise RasterFormatError(f"{path}: bad maxval {maxval}")
    depth = 8 if maxval <= 255 else 16
    n = width * height
    if magic == b"P2":
        values, _ = _read_pgm_tokens(raw, n, pos)
        arr = np.array(values, dtype=np.float64)
    else:
        pos += 1  # single whitespace byte after maxval
        dtype = np.dtype(">u2") if depth == 16 else np.dtype("u1")
        body = raw[pos:pos + n * dtype.itemsize]
        if len(body) < n * dtype.itemsize:
            raise RasterFormatError(f"{path}: truncated P5 pixel data")
        arr = np.frombuffer(body, dtype=dtype).astype(np.float64)
    if arr.min() < 0 or arr.max() > maxval:
        raise RasterFormatError(f"{path}: pixel outside [0, {maxval}]")
    return Raster(arr.reshape(height, width), depth=depth)


def write_pgm(img: Raster, path: str | Path, binary: bool = True) -> None:
    """Write ``img`` as PGM, rounding and clipping to the raster's bit depth.

    Binary output (P5) stores 16-bit samples big-endian."""
    maxval = (1 << img.depth) - 1
    q = np.clip(np.rint(img.data), 0, maxval).astype(np.int64)
    header = f"{'P5' if binary else 'P2'}\n{img.width} {img.height}\n{maxval}\n"
    path = Path(path)
    if binary:
        dtype = np.dtype(">u2") if img.depth == 16 else np.dtype("u1")
        path.write_bytes(header.encode("ascii") + q.astype(dtype).tobytes())
    else:
        lines = "\n".join(" ".join(str(v) for v in row) for row in q)
        path.write_text(header + lines + "\n", encoding="ascii")
