import math

import numpy as np
import pytest

from texnoise.texture import (
    GABOR_FREQS,
    dwt2,
    gabor_features,
    gabor_sigma,
    wavelet_packet_energies,
    wp_features,
)
from texnoise.texture.common import TEXTURE_ANGLES
from texnoise.texture.wavelet import WAVELETS
from conftest import raster_from


def grating(f0, angle_deg, size=32, amplitude=1.0):
    theta = math.radians(angle_deg)
    x = np.arange(size)[None, :] * np.ones((size, 1))
    y = np.arange(size)[:, None] * np.ones((1, size))
    return amplitude * np.cos(2 * math.pi * f0 * (x * math.cos(theta) + y * math.sin(theta)))


class TestGabor:
    def test_zero_roi_all_zero(self):
        fv = gabor_features(raster_from(np.zeros((32, 32))))
        assert not np.any(fv.values)

    def test_constant_roi_all_zero_energies(self):
        # zero-DC transfer: the mean level contributes nothing
        fv = gabor_features(raster_from(np.full((32, 32), 200.0)))
        assert np.allclose(fv.values, 0.0, atol=1e-18)

    def test_horizontal_mid_frequency_channel(self):
        fv = gabor_features(raster_from(grating(GABOR_FREQS[1], 0)))
        assert int(np.argmax(fv.values)) == 4  # second frequency, 0 degrees

    def test_oblique_mid_frequency_channel(self):
        fv = gabor_features(raster_from(grating(GABOR_FREQS[1], 45)))
        assert int(np.argmax(fv.values)) == 5  # second frequency, 45 degrees

    @pytest.mark.parametrize("fi", range(3))
    @pytest.mark.parametrize("ai", range(4))
    def test_every_channel_selective(self, fi, ai):
        probe = grating(GABOR_FREQS[fi], TEXTURE_ANGLES[ai])
        fv = gabor_features(raster_from(probe))
        assert int(np.argmax(fv.values)) == fi * 4 + ai

    def test_mean_offset_invariance(self, rng):
        data = rng.normal(50, 5, (32, 32))
        a = gabor_features(raster_from(data))
        b = gabor_features(raster_from(data + 1000.0))
        np.testing.assert_allclose(a.values, b.values, rtol=1e-9)

    def test_resamples_other_sizes(self, rng):
        fv = gabor_features(raster_from(rng.normal(0, 1, (48, 48))))
        assert fv.values.shape == (12,)
        assert np.isfinite(fv.values).all()

    def test_sigma_constant_scales_inversely_with_frequency(self):
        s = [gabor_sigma(f) for f in GABOR_FREQS]
        assert s[0] > s[1] > s[2]
        assert s[0] * GABOR_FREQS[0] == pytest.approx(s[2] * GABOR_FREQS[2], rel=1e-12)


class TestWaveletFilters:
    @pytest.mark.parametrize("name", ["haar", "db4"])
    def test_orthonormal_filters(self, name):
        h = WAVELETS[name]
        assert h.sum() == pytest.approx(math.sqrt(2.0), abs=1e-10)
        assert (h**2).sum() == pytest.approx(1.0, abs=1e-10)
        for k in range(1, h.size // 2):
            assert np.dot(h[2 * k:], h[:-2 * k]) == pytest.approx(0.0, abs=1e-10)

    @pytest.mark.parametrize("name", ["haar", "db4"])
    def test_single_step_preserves_energy(self, name, rng):
        data = rng.normal(0, 3, (16, 16))
        bands = dwt2(data, name)
        total = sum(np.sum(b**2) for b in bands.values())
        assert total == pytest.approx(np.sum(data**2), rel=1e-10)

    def test_unknown_wavelet_rejected(self):
        with pytest.raises(ValueError):
            dwt2(np.zeros((4, 4)), "sym9")


class TestWaveletPackets:
    def test_constant_haar_energy_in_ll_lineage(self):
        c = 3.0
        fv = wp_features(raster_from(np.full((32, 32), c)), wavelet="haar")
        assert fv.values[0] == pytest.approx(16.0 * c * c, rel=1e-12)
        assert fv.values[1] == 0.0
        assert fv.values[2] == 0.0
        assert fv.values[3] == 0.0

    @pytest.mark.parametrize("name", ["haar", "db4"])
    def test_parseval_identity(self, name, rng):
        data = rng.normal(5, 2, (32, 32))
        energies = wavelet_packet_energies(data, name)
        subband_size = (32 // 4) ** 2
        total = energies.sum() * subband_size
        assert total == pytest.approx(np.sum(data**2), rel=1e-6)

    def test_finest_checkerboard_peaks_in_hh(self):
        board = (np.indices((32, 32)).sum(axis=0) % 2) * 2.0 - 1.0
        fv = wp_features(raster_from(board * 7.0), wavelet="haar")
        assert int(np.argmax(fv.values)) == 3
        assert fv.values[0] == pytest.approx(0.0, abs=1e-20)

    def test_negation_invariance_haar(self, rng):
        data = rng.normal(0, 4, (32, 32))
        a = wp_features(raster_from(data), wavelet="haar")
        b = wp_features(raster_from(-data), wavelet="haar")
        assert np.array_equal(a.values, b.values)

    def test_deterministic(self, rng):
        data = rng.normal(0, 4, (32, 32))
        a = wp_features(raster_from(data))
        b = wp_features(raster_from(data.copy()))
        assert np.array_equal(a.values, b.values)

    def test_side_must_divide_by_four(self):
        with pytest.raises(ValueError):
            wp_features(raster_from(np.zeros((30, 30))))
