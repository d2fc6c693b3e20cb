# SPDX-License-Identifier: Apache-2.0
# Copyright 2026 The gridwave Authors
import math

import numpy as np
import pytest

import gridwave as gw


@pytest.fixture(scope="module")
def bank():
    return gw.design("cauchy:100", M=101, M_C=2, oversampling=2.0, frames=16)


def test_design_layout(bank):
    assert bank.d == 102
    assert bank.channels == 102
    assert bank.responses.shape == (102, bank.L)
    assert bank.center_freqs[2] == pytest.approx(2 / 101)
    assert bank.oversampling == pytest.approx(2.0)


def test_real_roundtrip(bank):
    rng = np.random.default_rng(0)
    x = rng.standard_normal(bank.L)
    c = gw.analyze(bank, x)
    assert c.real_mode and c.data.shape == (102, 16)
    y = gw.synthesize(gw.dual_design(bank, "real"), c)
    assert y.dtype == np.float64
    assert np.linalg.norm(y - x) <= 1e-10 * np.linalg.norm(x)


def test_complex_roundtrip(bank):
    ext = gw.real_extend(bank)
    rng = np.random.default_rng(1)
    z = rng.standard_normal(bank.L) + 1j * rng.standard_normal(bank.L)
    y = gw.synthesize(gw.dual_design(ext, "complex"), gw.analyze(ext, z))
    assert np.linalg.norm(y - z) <= 1e-10 * np.linalg.norm(z)


def test_bounds_against_dense_operator():
    rng = np.random.default_rng(2)
    G = rng.standard_normal((3, 24)) + 1j * rng.standard_normal((3, 24))
    D = gw.custom_design(G, 3)
    for dom in ("real", "complex"):
        fb = gw.frame_bounds(D, dom)
        A, B = gw.brute_force_bounds(D, dom)
        assert fb["A"] == pytest.approx(A, rel=1e-9)
        assert fb["B"] == pytest.approx(B, rel=1e-9)


def test_zero_delays_raise():
    D = gw.design("cauchy:300", M=253, M_C=5, oversampling=2.0, frames=8, delays="zero")
    assert not gw.frame_bounds(D)["invertible"]
    with pytest.raises(gw.NonInvertibleError):
        gw.dual_design(D)


def test_bad_arguments():
    with pytest.raises(ValueError):
        gw.q_factor("morlet:3")
    with pytest.raises(OSError):
        gw.read_wav("/nonexistent/file.wav")


def test_sequences_and_wavelets():
    assert list(gw.make_delays("digital", 4)) == [0.0, 0.75, 0.375, 0.625]
    assert gw.check_elementary_intervals("digital", 64, 4)
    assert gw.make_delays("kronecker", 3)[1] == pytest.approx(gw.golden_alpha())
    assert gw.peak_frequency("cauchy:100") == pytest.approx(99 / (4 * math.pi))
    assert gw.q_factor("cauchy:300") == pytest.approx(5.2053, rel=0.01)


def test_onsets_and_cost():
    flux = np.full(40, 0.1)
    flux[10] = 5.0
    r = gw.pick_onsets(flux, frame_period=0.01)
    assert list(r["frames"]) == [10]
    assert gw.eval_onsets([0.1], [0.11]) == (1.0, 1.0, 1.0)
    assert gw.cost_estimate(1012, 20, 1000) == pytest.approx(99504.897, rel=1e-7)


def test_fgla_runs(bank):
    x = np.sin(0.2 * np.arange(bank.L))
    mag = np.abs(gw.analyze(bank, x).data)
    r = gw.fgla(bank, gw.dual_design(bank), mag, iters=10, warmup=2, inits=1)
    assert r["signal"].shape == (bank.L,)
    assert r["error_db"][-1] < r["error_db"][0]
