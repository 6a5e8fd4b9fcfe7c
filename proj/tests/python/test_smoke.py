# SPDX-License-Identifier: Apache-2.0
"""Smoke tests for the _splitrx extension module."""

import math
import sys

import _splitrx as sx


def test_special_functions():
    assert sx.erfc(0.0) == 1.0
    assert abs(sx.erfc(0.5) - 0.4795001222) < 1e-9
    assert abs(sx.exp_e1(0.021) - 3.3771) < 1e-4
    assert abs(sx.bessel_i0_scaled(1.0) - 0.4657596) < 1e-7


def test_constellations():
    q = sx.make_qam(64)
    assert len(q) == 64
    energy = sum(abs(p) ** 2 for p in q.points) / 64.0
    assert abs(energy - 1.0) < 1e-12
    p8 = sx.preset_constellation("psk8")
    assert all(abs(abs(pt) - 1.0) < 1e-12 for pt in p8.points)


def test_densities():
    assert abs(sx.emg_pdf(1.0, 0.5, 1.0, 0.5, 1.0) - 0.30327) < 1e-5
    assert abs(sx.ncx2_pdf(0.0, 0.0, 0.5) - 1.0) < 1e-12
    assert abs(sx.rc_pdf(1.0, 0.0, 0.5, 1.0) - 0.30327) < 1e-4


def test_mutual_information():
    env = sx.NoiseEnv(1.0, 1.0, 1.0)
    cfg = sx.SystemConfig(10.0, 1.0, 1.0, 1.0)
    assert abs(sx.mi_cd_closed_form(cfg, env).bits - math.log2(6.0)) < 1e-12

    est = sx.EstimatorConfig()
    est.n_samples = 40000
    est.bins_per_dim = 48
    est.seed = 3
    e = sx.mi_split_mc(cfg, env, est, sx.MiMethod.histogram)
    assert abs(e.bits - math.log2(6.0)) < 0.25

    env2 = sx.NoiseEnv(0.01, 1.0, 1.0)
    assert abs(sx.asymptotic_gain(env2) - 3.33) < 0.005
    cfg2 = sx.SystemConfig(1000.0, 1.0, 0.5, 1.0)
    env3 = sx.NoiseEnv(0.1, 1.0, 1.0)
    assert abs(sx.mi_split_approx(cfg2, env3).bits - 11.03) < 0.01


def test_detection_and_ser():
    env = sx.NoiseEnv(1e-20, 1e-20, 1e-20)
    cfg = sx.SystemConfig(100.0, 1.0, 0.7, 1.0)
    c = sx.make_qam(16)
    x = c.points[5]
    (y1, y2), = sx.draw_samples(x, cfg, env, seed=1, n=1)
    assert sx.detect_fast(y1, y2 / math.sqrt(cfg.power), c, cfg, env) == 5
    assert sx.detect_ml(y1, y2, c, cfg, env, quad_order=16) == 5

    env2 = sx.NoiseEnv(1.0, 1.0, 1.0)
    r1 = sx.ser_monte_carlo(c, cfg, env2, "fast", 5000, seed=7)
    r2 = sx.ser_monte_carlo(c, cfg, env2, "fast", 5000, seed=7)
    assert r1.n_errors == r2.n_errors
    assert r1.ser * r1.n_symbols == r1.n_errors

    sweep = sx.ser_optimal_rho(c, cfg, env2, "fast", 2000, [0.4, 0.8, 1.0], seed=7)
    assert len(sweep.curve) == 3


def main():
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
                print(f"ok   {name}")
            except AssertionError as exc:
                print(f"FAIL {name}: {exc}")
                failures += 1
    return failures


if __name__ == "__main__":
    sys.exit(main())
