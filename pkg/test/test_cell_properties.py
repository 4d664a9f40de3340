import pytest

from lowestcell import CellDatum, HeckeAlgebra, KLTable, LowestCell, verify_properties, verify_property
from lowestcell.affine_weyl import NON_EXTENDED
from lowestcell.cell_property import FAIL, PASS, property_ids
from lowestcell.exceptions import ConfigurationError, ResourceError

IDS = ["P1", "P2", "P3", "P4", "P5", "P6", "P7", "P8", "P13", "P15", "DEG32", "DEG33", "FLAT", "LPRE"]


@pytest.fixture(scope="module")
def a1():
    return KLTable(HeckeAlgebra(CellDatum("A1")), 6)


@pytest.fixture(scope="module")
def a1_unequal():
    return KLTable(HeckeAlgebra(CellDatum("A1", weights={"s0": 1, "s1": 2}, mode=NON_EXTENDED)), 6)


# Test that every property is registered.
def test_property_ids():
    assert sorted(property_ids()) == sorted(IDS)


# Test each property on affine A1.
@pytest.mark.parametrize("property_id", IDS)
def test_property_a1(a1, property_id):
    report = verify_property(property_id, a1, radius=3)

    assert report.verdict == PASS
    assert report.witness is None
    assert report.checked > 0


# Test each property with unequal parameters.
@pytest.mark.parametrize("property_id", IDS)
def test_property_a1_unequal(a1_unequal, property_id):
    report = verify_property(property_id, a1_unequal, radius=3)

    assert report.verdict != FAIL


# Test that sampling keeps the requested number of tuples.
def test_property_sample(a1):
    report = verify_property("P7", a1, radius=3, sample_size=5, seed=1)

    assert report.checked == 5
    assert "random sample" in report.note


# Test that "all" expands to every property.
def test_verify_all(a1):
    reports = verify_properties(["all"], a1, radius=2)

    assert [r.property_id for r in reports] == property_ids()
    assert all(r.passed for r in reports)


# Test that unknown ids are refused.
def test_unknown_property(a1):
    with pytest.raises(ConfigurationError):
        verify_property("P99", a1)


# Test that a ball larger than the table is refused.
def test_radius_too_large(a1):
    with pytest.raises(ResourceError):
        verify_property("P1", a1, radius=7)


# Test the JSON form of a report.
def test_report_json(a1):
    document = verify_property("P6", a1, radius=2).to_json()

    assert document["id"] == "P6"
    assert document["verdict"] == PASS
    assert document["checked"] == 2


@pytest.fixture(scope="module")
def c2():
    return KLTable(HeckeAlgebra(CellDatum("C2")), 8)


# Test that P4 sweeps every pair from the ball of half the table radius.
def test_p4_sweeps_all_pairs():
    table = KLTable(HeckeAlgebra(CellDatum("A1")), 10)
    datum = table.datum
    ball = datum.enumerate_ball(5)
    pairs = [(x, y) for x in ball for y in ball if datum.length(x) + datum.length(y) <= 10]

    report = verify_property("P4", table, radius=3)
    assert len(pairs) == 484
    assert report.verdict == PASS
    assert report.checked == len(LowestCell(table).elements(3)) + len(pairs)
    assert "random sample" not in report.note


# Test each property on affine C2 over a seeded sample of its tuples.
@pytest.mark.parametrize("property_id", IDS)
def test_property_c2(c2, property_id):
    report = verify_property(property_id, c2, radius=5, sample_size=200, seed=0)

    assert report.verdict == PASS
    assert report.witness is None
    assert 0 < report.checked <= 200
