import math

import numpy as np
import pytest

import wigner_weft as ww


@pytest.fixture(scope="module")
def grid():
    return ww.make_grid(256, 0.1)


def test_grid(grid):
    assert grid.n == 256
    assert grid.dp == pytest.approx(0.245437, abs=1e-6)
    with pytest.raises(ww.PreconditionError):
        ww.make_grid(7, 0.1)


def test_wigner_origin(grid):
    g0 = ww.hermite(grid, 0)
    w = ww.cross_wigner(g0, g0)
    assert w.values.shape == (256, 256)
    assert w.values[128, 128].real == pytest.approx(1 / math.pi, abs=1e-10)
    assert w.lattice == "wigner"
    assert ww.cross_ambiguity(g0, g0).values[128, 128].real == pytest.approx(1 / (2 * math.pi), abs=1e-8)


def test_weak_values(grid):
    phi = ww.gaussian(grid, x0=1.0)
    psi = ww.hermite(grid, 0)
    rho = ww.quasi_distribution_rho(phi, psi)
    assert rho.integral() == pytest.approx(1.0, abs=1e-6)
    assert ww.weak_value("x", rho) == pytest.approx(0.5, abs=1e-6)
    assert ww.weak_value_direct("p", phi, psi) == pytest.approx(ww.weak_value("p", rho), abs=1e-6)
    ones = np.ones((256, 256), dtype=complex)
    assert ww.weak_value(ones, rho) == pytest.approx(1.0, abs=1e-6)
    assert ww.pointer_readout(0.5 + 0.25j, g=2.0) == pytest.approx((1.0, 1.0))
    with pytest.raises(ww.OrthogonalityError):
        ww.quasi_distribution_rho(ww.hermite(grid, 1), psi)


def test_reconstruction_recovers_phase(grid):
    phi = ww.hermite(grid, 0)
    psi = ww.gaussian(grid, x0=0.8, p0=0.3) * complex(math.cos(math.pi / 3), math.sin(math.pi / 3))
    w = ww.cross_wigner(phi, psi)
    rec = ww.reconstruct_psi(w, phi, ww.default_gamma(grid))
    assert np.max(np.abs(rec.values - psi.values)) < 1e-6


def test_state_from_numpy_and_files(grid, tmp_path):
    x = grid.x
    s = ww.State(grid, np.exp(-x**2 / 2) * np.pi**-0.25)
    assert s.norm() == pytest.approx(1.0, abs=1e-12)
    path = tmp_path / "s.json"
    ww.save_state(s, path, "ground")
    back = ww.load_state(path)
    assert np.array_equal(back.values, s.values)


def test_verify_suite():
    report = ww.verify(n=128, dx=0.15)
    assert report["all_pass"], [c for c in report["checks"] if not c["passed"]]


ROOT = __import__("pathlib").Path(__file__).resolve().parents[2]


def _schema(name):
    import json

    return json.loads((ROOT / "schemas" / name).read_text())


def test_bundled_states_match_schema():
    import json

    jsonschema = pytest.importorskip("jsonschema")
    for path in sorted((ROOT / "data").glob("*.json")):
        jsonschema.validate(json.loads(path.read_text()), _schema("state.schema.json"))
        state = ww.load_state(path)
        assert state.norm() == pytest.approx(1.0, abs=1e-10)


def test_cli_weak_value_output_matches_schema():
    import json
    import os
    import subprocess

    jsonschema = pytest.importorskip("jsonschema")
    cli = os.environ.get("WIGNER_WEFT_CLI")
    if not cli:
        pytest.skip("WIGNER_WEFT_CLI not set")
    for obs in ("x", "p", "proj:128"):
        out = subprocess.run(
            [cli, "weak-value", "--phi", str(ROOT / "data/displaced_gaussian.json"),
             "--psi", str(ROOT / "data/ground.json"), "--observable", obs],
            check=True, capture_output=True, text=True,
        )
        assert out.stderr == ""
        jsonschema.validate(json.loads(out.stdout), _schema("weak_value.schema.json"))
