import json
from pathlib import Path

import pytest

import detlines

DATA = Path(__file__).resolve().parents[2] / "tests" / "data"


def test_gaussian_arithmetic():
    a = detlines.Gaussian("1/2+3/4*i")
    b = detlines.Gaussian("2")
    assert str(a * b) == str(detlines.Gaussian("1+3/2*i"))
    assert a / a == detlines.Gaussian(1)
    assert a.real == "1/2" and a.imag == "3/4"


def test_det_and_rank():
    assert detlines.det([["2", "1"], ["0", "3"]]) == "6"
    assert detlines.det([["i", "0"], ["0", "i"]]) == "-1"
    assert detlines.rank([["1", "2"], ["2", "4"]]) == 1


def test_rational_reconstruct():
    pts = detlines.default_grid(6)
    f = detlines.RatFunc("1 + z")
    vals = [str(f(p)) for p in pts]
    g = detlines.rational_reconstruct(pts, vals, 1, 1)
    assert g == f


def test_worked_family_gives_one_plus_z():
    out = detlines.compute("perturbation-function", (DATA / "worked_family.json").read_text())
    assert out["function"] == "1 + z"
    assert out["held_out"] >= 10


def test_compute_perturbation_of_invertible_differentials():
    data = json.loads((DATA / "pair.json").read_text())
    assert detlines.compute("perturbation", data)["scalar"] == "6"


def test_campaign_passes_and_is_deterministic():
    a = detlines.run_campaign("symmetry", seed=11, trials=5)
    b = detlines.run_campaign("symmetry", seed=11, trials=5)
    assert a["failures"] == [] and a["ok"]
    a.pop("elapsed")
    b.pop("elapsed")
    assert a == b


def test_corrupted_oracle_reports_failures():
    r = detlines.run_campaign("trivnil", seed=3, trials=2, corrupt_oracle=True)
    assert not r["ok"]
    assert [f["case_id"] for f in r["failures"]] == ["trial-00000", "trial-00001"]
    assert "a" in r["failures"][0]["inputs"]


def test_errors_are_raised():
    with pytest.raises(detlines.ConfigError):
        detlines.run_campaign("no-such-campaign")
    with pytest.raises(detlines.ParseError):
        detlines.compute("homology", "{not json")
    with pytest.raises(detlines.Error):
        detlines.compute("homology", (DATA / "bad_complex.json").read_text())
