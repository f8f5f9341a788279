"""Smoke tests for the python extension: a few frozen reference values and
one tiny end-to-end experiment run."""

import json
import math
import os

import pytest

try:
    import sgsim as m
except ImportError:  # running straight off the build tree
    import _sgsim as m


def test_version():
    assert m.__version__ == "0.1.0"


def test_analytics_reference_values():
    beta2 = 0.063 * 8.0 * math.pi
    assert m.xi_sg(beta2) == pytest.approx(0.067235859124866596, rel=1e-14)
    assert m.beta2_from_xi(m.xi_sg(beta2)) == pytest.approx(beta2, rel=1e-14)
    assert m.soliton_mass(beta2, 0.016) == pytest.approx(
        0.65966994023063236, rel=1e-12
    )
    m1 = m.breather_mass(1, 0.662, beta2)
    assert m1 == pytest.approx(0.13957291418205794, rel=1e-12)
    assert m.vertex_vev(beta2, m1) == pytest.approx(0.76960267211808788, rel=1e-12)
    with pytest.raises(m.DomainError):
        m.breather_mass(15, 0.662, beta2)


def test_ctm_spacing_matches_asymptotics_near_criticality():
    # small anisotropy: exact spacing approaches the log asymptote
    beta2 = 0.063 * 8.0 * math.pi
    eps = m.ctm_level_spacing(1.0, 0.999937, 0.981)
    assert eps == pytest.approx(2.1856485236494461, rel=1e-12)


def test_two_point_ff_decays():
    beta2 = 0.063 * 8.0 * math.pi
    g5 = m.two_point_ff(5.0, beta2, 0.662, 1.46)
    g20 = m.two_point_ff(20.0, beta2, 0.662, 1.46)
    assert g5 == pytest.approx(0.751609398126922, rel=1e-6)
    assert g5 > g20 > 0


def test_lattice_maps_roundtrip():
    beta2 = 1.2
    jx, jy, jz = m.sg_to_xyz(beta2, 0.05)
    back = m.xyz_to_sg(jx, jy, jz)
    assert back["beta2"] == pytest.approx(beta2, rel=1e-10)
    assert back["m"] == pytest.approx(0.05, rel=1e-10)


def test_fit_linear_exact():
    xs = [0.0, 1.0, 2.0, 3.0]
    ys = [1.0 + 2.0 * x for x in xs]
    fit = m.fit_linear(xs, ys)
    assert fit["slope"] == pytest.approx(2.0, abs=1e-12)
    assert fit["intercept"] == pytest.approx(1.0, abs=1e-12)


def test_run_experiment_predict(tmp_path):
    cfg = "\n".join(
        [
            "[experiment]",
            "kind = predict",
            "[sg]",
            "beta2 = 1.5833626974092558",
            "m = 0.662",
        ]
    )
    out = m.run_experiment(cfg, str(tmp_path))
    assert out["sg"]["soliton_mass"] == pytest.approx(0.662)
    assert len(out["breather_masses"]) == 14
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["provenance"]["code_version"] == m.__version__
    assert os.path.exists(tmp_path / "masses.csv")


def test_run_experiment_small_dmrg(tmp_path):
    cfg = "\n".join(
        [
            "[experiment]",
            "kind = dmrg",
            "[model]",
            "type = xyz",
            "mode = finite",
            "length = 6",
            "jx = 1",
            "jy = 1",
            "jz = 0",
            "[schedule]",
            "chi_start = 8",
            "chi_max = 8",
            "max_sweeps = 30",
        ]
    )
    out = m.run_experiment(cfg, str(tmp_path))
    # XX chain, L = 6: exact free-fermion ground energy
    exact = sum(
        e
        for e in (-2.0 * math.cos(math.pi * k / 7.0) for k in range(1, 7))
        if e < 0
    )
    assert out["result"]["energy"] == pytest.approx(exact, rel=1e-8)
