import itertools
import math

import numpy as np
import pytest

from texnoise.texture import (
    GrayQuant,
    acf_features,
    cm_features,
    cooccurrence_matrix,
    rlm_features,
    run_length_matrix,
)
from texnoise.texture.autocov import autocovariance_margins
from texnoise.texture.common import ANGLE_OFFSETS, TEXTURE_ANGLES
from conftest import raster_from


# ---------------------------------------------------------------- oracles

def brute_force_cm(q, levels, angle, delta=1):
    dr, dc = ANGLE_OFFSETS[angle]
    dr *= delta
    dc *= delta
    mat = np.zeros((levels, levels))
    m, n = q.shape
    for r in range(m):
        for c in range(n):
            r2, c2 = r + dr, c + dc
            if 0 <= r2 < m and 0 <= c2 < n:
                mat[q[r, c], q[r2, c2]] += 1
    return mat


def brute_force_cm_features(counts):
    p = counts / counts.sum()
    xs, ys = np.nonzero(p)
    pv = p[xs, ys]
    energy = math.fsum(v * v for v in pv)
    entropy = -math.fsum(v * math.log2(v) for v in pv)
    dissim = math.fsum(abs(int(x) - int(y)) * v for x, y, v in zip(xs, ys, pv))
    mu_x = math.fsum(int(x) * v for x, v in zip(xs, pv))
    mu_y = math.fsum(int(y) * v for y, v in zip(ys, pv))
    var_x = math.fsum((int(x) - mu_x) ** 2 * v for x, v in zip(xs, pv))
    var_y = math.fsum((int(y) - mu_y) ** 2 * v for y, v in zip(ys, pv))
    if var_x <= 0 or var_y <= 0:
        corr = 0.0
    else:
        cov = math.fsum((int(x) - mu_x) * (int(y) - mu_y) * v
                        for x, y, v in zip(xs, ys, pv))
        corr = cov / math.sqrt(var_x * var_y)
    return [energy, entropy, dissim, corr]


def brute_force_lines(q, angle):
    """Co-linear sequences via explicit coordinate walks."""
    m, n = q.shape
    lines = []
    if angle == 0:
        lines = [[q[r, c] for c in range(n)] for r in range(m)]
    elif angle == 90:
        lines = [[q[r, c] for r in range(m)] for c in range(n)]
    elif angle == 45:
        # walk up-right from every left/bottom border cell
        for r0, c0 in [(r, 0) for r in range(m)] + [(m - 1, c) for c in range(1, n)]:
            line, r, c = [], r0, c0
            while r >= 0 and c < n:
                line.append(q[r, c])
                r -= 1
                c += 1
            lines.append(line)
    elif angle == 135:
        # walk down-right from every top/left border cell
        for r0, c0 in [(0, c) for c in range(n)] + [(r, 0) for r in range(1, m)]:
            line, r, c = [], r0, c0
            while r < m and c < n:
                line.append(q[r, c])
                r += 1
                c += 1
            lines.append(line)
    return lines


def brute_force_rlm(q, levels, angle):
    max_len = max(q.shape)
    mat = np.zeros((levels, max_len))
    for line in brute_force_lines(q, angle):
        for value, group in itertools.groupby(line):
            mat[value, len(list(group)) - 1] += 1
    return mat


def brute_force_rlm_features(counts):
    total = counts.sum()
    sre = math.fsum(counts[x, y] / (y + 1) ** 2
                    for x, y in zip(*np.nonzero(counts))) / total
    lre = math.fsum(counts[x, y] * (y + 1) ** 2
                    for x, y in zip(*np.nonzero(counts))) / total
    by_gray = counts.sum(axis=1)
    by_len = counts.sum(axis=0)
    gln = math.fsum(v * v for v in by_gray[by_gray > 0]) / total
    rln = math.fsum(v * v for v in by_len[by_len > 0]) / total
    return [sre, lre, gln, rln]


# ------------------------------------------------------------------ tests

class TestGrayQuant:
    def test_maps_range_to_levels(self):
        q = GrayQuant(4).quantize(np.array([[0.0, 1.0, 2.0, 4.0]]))
        assert list(q[0]) == [0, 1, 2, 3]
        q = GrayQuant(2).quantize(np.array([[0.0, 1.0, 2.0, 4.0]]))
        assert list(q[0]) == [0, 0, 1, 1]

    def test_constant_maps_to_zero(self):
        assert not GrayQuant(16).quantize(np.full((3, 3), 9.0)).any()

    def test_max_value_in_top_level(self, rng):
        data = rng.normal(0, 10, (16, 16))
        q = GrayQuant(64).quantize(data)
        assert q[np.unravel_index(data.argmax(), data.shape)] == 63
        assert q.min() == 0


class TestCooccurrence:
    def test_constant_roi(self):
        fv = cm_features(raster_from(np.full((8, 8), 3.0)))
        for a in range(4):
            energy, entropy, dissim, corr = fv.values[4 * a:4 * a + 4]
            assert (energy, entropy, dissim, corr) == (1.0, 0.0, 0.0, 0.0)
        assert fv.degenerate

    def test_checkerboard_horizontal(self):
        board = np.indices((4, 4)).sum(axis=0) % 2 * 255.0
        fv = cm_features(raster_from(board), quant=GrayQuant(2))
        energy, entropy, dissim, corr = fv.values[0:4]
        # 12 horizontal pairs, all alternating: mass splits over (0,1), (1,0)
        assert energy == pytest.approx(0.5, abs=1e-15)
        assert entropy == pytest.approx(1.0, abs=1e-15)
        assert dissim == pytest.approx(1.0, abs=1e-15)
        assert corr == pytest.approx(-1.0, abs=1e-15)

    def test_matrix_equals_brute_force(self, rng):
        for trial in range(20):
            q = rng.integers(0, 4, (8, 8))
            for angle in TEXTURE_ANGLES:
                mine = cooccurrence_matrix(q, 4, angle)
                oracle = brute_force_cm(q, 4, angle)
                assert np.array_equal(mine, oracle)

    def test_features_equal_brute_force(self, rng):
        for trial in range(100):
            data = rng.integers(0, 4, (8, 8)).astype(float)
            fv = cm_features(raster_from(data), quant=GrayQuant(4))
            q = GrayQuant(4).quantize(data)
            expected = []
            for angle in TEXTURE_ANGLES:
                expected.extend(brute_force_cm_features(brute_force_cm(q, 4, angle)))
            assert np.array_equal(fv.values, np.array(expected))

    def test_axis_swap_symmetry(self, rng):
        data = rng.integers(0, 6, (12, 9)).astype(float)
        quant = GrayQuant(6)
        on_img = cm_features(raster_from(data), quant=quant)
        on_transpose = cm_features(raster_from(data.T), quant=quant)
        # 0 deg on the image pairs the same pixels as 90 deg on the transpose
        assert np.array_equal(on_img.values[0:4], on_transpose.values[8:12])
        assert np.array_equal(on_img.values[8:12], on_transpose.values[0:4])

    def test_nontrivial_delta(self, rng):
        q = rng.integers(0, 3, (8, 8))
        mine = cooccurrence_matrix(q, 3, 0, delta=2)
        oracle = brute_force_cm(q, 3, 0, delta=2)
        assert np.array_equal(mine, oracle)


class TestRunLength:
    def test_constant_roi_closed_form(self):
        fv = rlm_features(raster_from(np.full((32, 32), 5.0)))
        sre, lre, gln, rln = fv.values[0:4]  # horizontal: 32 runs of 32
        assert sre == pytest.approx(1.0 / 1024.0, abs=1e-18)
        assert lre == pytest.approx(1024.0, abs=1e-9)
        assert gln == pytest.approx(32.0, abs=1e-12)
        assert rln == pytest.approx(32.0, abs=1e-12)

    def test_checkerboard_all_unit_runs(self):
        board = np.indices((8, 8)).sum(axis=0) % 2 * 9.0
        fv = rlm_features(raster_from(board), quant=GrayQuant(2))
        sre, lre = fv.values[0], fv.values[1]
        assert sre == 1.0 and lre == 1.0

    def test_diagonal_runs(self):
        q = np.array([[0, 1], [1, 0]])
        mat = run_length_matrix(q, 2, 45)
        # the anti-diagonal (1, 1) is one run of length 2
        assert mat[1, 1] == 1.0
        assert mat[0, 0] == 2.0  # two single-pixel corners
        assert mat.sum() == 3.0

    def test_matrix_equals_brute_force(self, rng):
        for trial in range(20):
            q = rng.integers(0, 4, (8, 8))
            for angle in TEXTURE_ANGLES:
                mine = run_length_matrix(q, 4, angle)
                oracle = brute_force_rlm(q, 4, angle)
                assert np.array_equal(mine, oracle)

    def test_features_equal_brute_force(self, rng):
        for trial in range(100):
            data = rng.integers(0, 4, (8, 8)).astype(float)
            fv = rlm_features(raster_from(data), quant=GrayQuant(4))
            q = GrayQuant(4).quantize(data)
            expected = []
            for angle in TEXTURE_ANGLES:
                expected.extend(brute_force_rlm_features(brute_force_rlm(q, 4, angle)))
            assert np.array_equal(fv.values, np.array(expected))

    def test_rectangular_roi(self, rng):
        data = rng.integers(0, 3, (6, 10)).astype(float)
        fv = rlm_features(raster_from(data), quant=GrayQuant(3))
        q = GrayQuant(3).quantize(data)
        expected = []
        for angle in TEXTURE_ANGLES:
            expected.extend(brute_force_rlm_features(brute_force_rlm(q, 3, angle)))
        assert np.allclose(fv.values, expected, rtol=0, atol=0)


class TestAutocovariance:
    def test_zero_shift_margin_is_one(self, rng):
        h, v = autocovariance_margins(rng.normal(0, 3, (16, 16)), 8)
        assert h[0] == 1.0 and v[0] == 1.0

    def test_margins_match_direct_formula(self, rng):
        data = rng.normal(10, 4, (12, 12))
        h, v = autocovariance_margins(data, 6)
        mu = data.mean()
        z = data - mu
        var0 = np.mean(z * z)
        for s in range(7):
            direct_h = sum(z[r, c] * z[r, c + s]
                           for r in range(12) for c in range(12 - s)) / (12 * (12 - s))
            direct_v = sum(z[r, c] * z[r + s, c]
                           for r in range(12 - s) for c in range(12)) / ((12 - s) * 12)
            assert h[s] == pytest.approx(direct_h / var0, abs=1e-12)
            assert v[s] == pytest.approx(direct_v / var0, abs=1e-12)

    def test_horizontal_sinusoid(self):
        cols = np.arange(32)
        data = np.tile(np.sin(2 * np.pi * cols / 8.0), (32, 1)) * 50.0 + 100.0
        h, v = autocovariance_margins(data, 16)
        assert h[4] < 0.0 < h[8]          # anti-phase at half period
        assert np.allclose(v, 1.0)        # rows identical

    def test_white_noise_decorrelates_fast(self, rng):
        data = rng.normal(0, 5, (32, 32))
        h, v = autocovariance_margins(data, 16)
        assert abs(h[1]) < 0.3 and abs(v[1]) < 0.3
        # the impulse-like margin drags the fitted exponential amplitude far
        # below the unit zero-shift sample
        fv = acf_features(raster_from(data))
        assert fv.values[6] < 0.5 and fv.values[7] < 0.5

    def test_zero_variance_degenerate(self):
        fv = acf_features(raster_from(np.full((16, 16), 2.0)))
        assert fv.degenerate
        assert not np.any(fv.values)

    def test_feature_count_and_order(self, rng):
        fv = acf_features(raster_from(rng.normal(0, 1, (16, 16))))
        assert fv.names[0].endswith("exp_rate_h")
        assert fv.names[7].endswith("exp_amp_v")
        assert len(fv.values) == 8

    def test_exponential_margin_recovered(self):
        # a field with known exponential covariance along columns
        rate = 0.5
        cols = np.arange(24)
        margin = np.exp(-rate * cols)
        # synthesize data via circulant embedding on rows: use a separable
        # trick - rows of cosines reproduce the target after averaging is
        # too loose, so check the fit helper directly instead
        from texnoise.texture.autocov import _fit_exponential
        amp, fitted_rate, degenerate = _fit_exponential(margin)
        assert not degenerate
        assert fitted_rate == pytest.approx(rate, abs=1e-9)
        assert amp == pytest.approx(1.0, abs=1e-9)

    def test_parabola_fit_exact_on_parabola(self):
        x = np.arange(10, dtype=float)
        margin = 1.0 - 0.3 * x + 0.02 * x * x
        from texnoise.texture.autocov import _fit_parabola
        c, d = _fit_parabola(margin)
        assert c == pytest.approx(-0.3, abs=1e-9)
        assert d == pytest.approx(0.02, abs=1e-9)
