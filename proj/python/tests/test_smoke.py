import math
import os

import pytest

import willmore

DATA = os.environ.get("WILLMORE_DATA", os.path.join(os.path.dirname(__file__), "..", "..", "data"))


def test_sphere_energy_from_file():
    e = willmore.energy(os.path.join(DATA, "sphere.csv"))
    assert e["W"] == pytest.approx(4 * math.pi, rel=1e-8)


def test_arrays_round_trip():
    s, r, h = willmore.builtin_curve("sphere")
    assert len(s) == len(r) == len(h)
    assert willmore.energy_of(r, h)["W"] == pytest.approx(4 * math.pi, rel=1e-6)


def test_j_model_above_8pi():
    e = willmore.model_energy("alpha", "alpha", 20, 0.1)
    assert e["W"] > 8 * math.pi
    assert willmore.turning_number(os.path.join(DATA, "j_model.csv")) in (1.5, -1.5)
    assert willmore.multiplicity(os.path.join(DATA, "j_model.csv")) == 2


def test_catsph_and_sweep():
    e = willmore.catsph_energy(20, 20, 0.1, "beta")
    assert e["W"] < 4 * math.pi
    csv = willmore.sweep_csv("alpha", [10, 100])
    assert csv.count("\n") == 3
    with pytest.raises(ValueError):
        willmore.catsph_energy(0.5, 20, 0.1)


def test_shrinking_trace():
    t = willmore.shrinking_trace(200, 20, 0.1, 20)
    assert t["monotone"]
    assert t["W"][-1] < 4 * math.pi


def test_flow_perturbed_sphere():
    n = 101
    r, h = [], []
    for i in range(n):
        p = math.pi * i / (n - 1)
        rad = 1 + 0.05 * math.sin(p) ** 2 * math.cos(3 * p)
        r.append(rad * math.sin(p))
        h.append(-rad * math.cos(p))
    r[0] = r[-1] = 0.0
    out = willmore.flow(r, h, steps=200)
    assert out["termination"] == "converged"
    assert out["W"][-1] == pytest.approx(4 * math.pi, abs=1e-3)


def test_verify_and_cli():
    ok, rep = willmore.verify("turning")
    assert ok and rep["tau"] == 1.5
    code, _, err = willmore.run_cli(["verify", "bogus"])
    assert code == 2 and err
