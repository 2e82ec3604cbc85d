"""Smoke tests for the python module: a few known values per operation."""

import crystalca as cca

SPACE7 = "1,1;1,1;1,3;1,1;1,1;1,1;1,2"
SPACE13 = ";".join(["1,1"] * 13)
STATE13 = ".".join("1221121122221")


def test_crystal_enumeration():
    assert cca.enumerate_crystal(2, 1, 1) == ["1", "2", "3"]
    assert cca.enumerate_crystal(2, 1, 2) == ["11", "12", "13", "22", "23", "33"]
    assert len(cca.enumerate_crystal(3, 1, 3)) == 20
    assert cca.highest_element(3, 2, 2) == "11/22"


def test_promotion():
    assert cca.promotion(3, "223/334") == "133/444"
    assert cca.promotion(3, "1344") == "1124"
    assert cca.promotion_inverse(3, "133/444") == "223/334"


def test_evolution_chain():
    s1 = cca.evolve(3, SPACE7, "2.1.233.4.1.2.12", 1, 2)
    assert s1 == "1.2.123.3.4.1.22"
    s2 = cca.evolve(3, SPACE7, s1, 2, 1)
    assert s2 == "1.2.112.3.2.3.24"
    assert cca.weyl(0, 3, SPACE7, "2.1.233.4.1.2.12") == "2.4.233.4.1.2.24"


def test_dying_evolution():
    space = ";".join(["1,1"] * 6)
    assert cca.evolve(2, space, "2.1.3.2.1.3", 2, 1) is None
    assert not cca.is_evolvable(2, space, "2.1.3.2.1.3")


def test_content_and_energy():
    assert cca.content(3, SPACE7, "2.1.233.4.1.2.12") == "3,1,1,1/2,1/1"
    assert cca.content(1, SPACE13, STATE13) == "3,2,1"
    assert cca.energy(1, SPACE13, STATE13, 1, 2) == 5


def test_counting():
    assert cca.omega(1, SPACE13, "3,2,1") == 273
    assert cca.omega(3, "1,2;1,1;1,2;1,1", "1/-/-") == 4
    assert cca.lambda_weight(3, "1,2;1,1;1,2;1,1", "2,1/1/-") == [3, 2, 1, 0]
    assert cca.orbit_size([3, 2, 1, 0]) == 24
    assert cca.vacancy_numbers(1, SPACE13, "3,2,1") == {(1, 1): 7, (1, 2): 3, (1, 3): 1}


def test_periods():
    pred = cca.period_predicted(1, SPACE13, "3,2,1", 1, 2)
    assert pred["period"] == 91
    assert pred["ratios"] == ["1", "91/3", "91/16", "91/16"]
    assert cca.period_measured(1, SPACE13, STATE13, 1, 1, 20) == 13


def test_classify():
    result = cca.classify(1, "1,1;1,1")
    assert result["states"] == 4
    assert result["evolvable"] == 4
    assert len(result["rows"]) == 2
