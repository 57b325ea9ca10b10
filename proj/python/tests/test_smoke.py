from fractions import Fraction
from pathlib import Path

import pytest

import robustmatch

GS3 = Path(__file__).resolve().parents[2] / "data" / "gs3.json"

MEN_OPTIMAL = [("m1", "w1"), ("m2", "w2"), ("m3", "w3")]
EGALITARIAN = [("m1", "w2"), ("m2", "w3"), ("m3", "w1")]
WOMEN_OPTIMAL = [("m1", "w3"), ("m2", "w1"), ("m3", "w2")]


@pytest.fixture
def gs3():
    return robustmatch.load(GS3)


def test_solve_gs3(gs3):
    one = robustmatch.solve(gs3, 1)
    assert one["matching"] == EGALITARIAN
    assert one["psi"] == 30
    zero = robustmatch.solve(gs3, Fraction(0))
    assert zero["matching"] == MEN_OPTIMAL
    assert zero["psi"] == Fraction(9, 4)


def test_psi_table(gs3):
    table = {
        (1, 0): Fraction(69, 2),
        (1, 1): Fraction(30),
        (1, 2): Fraction(69, 2),
        (0, 0): Fraction(9, 4),
        (0, 1): Fraction(6),
        (0, 2): Fraction(81, 4),
    }
    matchings = [MEN_OPTIMAL, EGALITARIAN, WOMEN_OPTIMAL]
    for (nu, k), expected in table.items():
        assert robustmatch.evaluate(gs3, matchings[k], nu)["psi"] == expected


def test_relaxed_not_worse(gs3):
    for nu in ("0", "1/4", 0.5, 1):
        assert robustmatch.solve(gs3, nu, mode="relaxed")["psi"] <= robustmatch.solve(gs3, nu)["psi"]


def test_breakdown_sums(gs3):
    r = robustmatch.solve(gs3, "1/3", cost_convention="retained")
    assert sum(t["contribution"] for t in r["breakdown"]["terms"]) == r["psi"]
    assert r["breakdown"]["terms"][0]["leaver"] is None


def test_lattice(gs3):
    rots, edges = robustmatch.rotations(gs3)
    assert rots[0] == MEN_OPTIMAL
    assert edges == [(0, 1)]
    assert len(robustmatch.stable_matchings(gs3)) == 3
    assert robustmatch.is_stable(gs3, EGALITARIAN)
    assert not robustmatch.is_stable(gs3, [("m1", "w2"), ("m2", "w1"), ("m3", "w3")])


def test_round_trip():
    doc = robustmatch.random_instance(4, 7, leavers=2)
    again = robustmatch.parse(doc.serialize())
    assert again.serialize() == doc.serialize()
    assert doc.men == ["m1", "m2", "m3", "m4"]


def test_errors(gs3):
    with pytest.raises(ValueError):
        robustmatch.parse("{")
    with pytest.raises(ValueError):
        robustmatch.solve(gs3, 2)
    with pytest.raises(ValueError):
        robustmatch.evaluate(gs3, [("m1", "m2")], 1)
