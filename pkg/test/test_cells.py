import pytest

from lowestcell import CellDatum, GammaElement, HeckeAlgebra, KLTable, LowestCell
from lowestcell.affine_weyl import NON_EXTENDED
from lowestcell.cells import tensor_identity_sides, weight_independence_check
from lowestcell.exceptions import DomainError, TruncationError


@pytest.fixture(scope="module")
def a1():
    return LowestCell(KLTable(HeckeAlgebra(CellDatum("A1")), 6))


@pytest.fixture(scope="module")
def a1_unequal():
    datum = CellDatum("A1", weights={"s0": 1, "s1": 2}, mode=NON_EXTENDED)
    return LowestCell(KLTable(HeckeAlgebra(datum), 6))


# Test the distinguished involutions of the extended group of type A1.
def test_distinguished_involutions(a1):
    datum = a1.datum
    s0, s1 = datum.generators

    assert set(a1.distinguished_involutions()) == {s0, s1}
    assert a1.distinguished_of(datum.identity) == s1
    assert a1.distinguished_of(datum.omega_elements[1]) == s0


# Test the distinguished involutions with unequal parameters: s1 and s0 s1 s0.
def test_distinguished_involutions_unequal(a1_unequal):
    datum = a1_unequal.datum
    s0, s1 = datum.generators

    assert a1_unequal.a_value == GammaElement((2,))
    assert set(a1_unequal.distinguished_involutions()) == {s1, datum.product(s0, s1, s0)}


# Test that checking an involution beyond the table is refused.
def test_distinguished_involutions_truncated():
    datum = CellDatum("A1", weights={"s0": 1, "s1": 2}, mode=NON_EXTENDED)
    cell = LowestCell(KLTable(HeckeAlgebra(datum), 2))

    with pytest.raises(TruncationError):
        cell.distinguished_involutions()
    assert len(cell.distinguished_involutions(verify=False)) == 2


# Test Δ and n on the involutions and beyond.
def test_delta_and_n(a1):
    datum = a1.datum
    s0, s1 = datum.generators

    for d in (s0, s1):
        assert a1.delta(d) == a1.a_value
        assert a1.n(d) == 1
    assert a1.delta(datum.product(s1, s0)) == GammaElement((2,))


# Test the left and right cell labels.
def test_cell_labels(a1):
    datum = a1.datum
    s0, s1 = datum.generators
    pi = datum.omega_elements[1]

    assert a1.left_cell_of(s1) == datum.identity
    assert a1.left_cell_of(s0) == pi
    assert a1.right_cell_of(s0) == pi
    assert a1.contains(s1)
    assert not a1.contains(pi)
    with pytest.raises(DomainError):
        a1.left_cell_of(datum.identity)


# Test that the lowest cell of affine A1 is everything of positive length.
def test_elements(a1):
    elements = a1.elements(3)

    assert len(elements) == 12
    assert set(elements) == {w for w in a1.datum.enumerate_ball(3) if a1.datum.length(w) > 0}


# Test the census of left cells.
def test_left_cell_census(a1):
    census = a1.left_cell_census(3)

    assert set(census) == set(a1.datum.box_elements())
    assert all(len(members) == 6 for members in census.values())


# Test γ on the involutions.
def test_gamma(a1):
    s0, s1 = a1.datum.generators

    assert a1.gamma(s1, s1, s1) == 1
    assert a1.gamma(s0, s0, s0) == 1
    assert a1.gamma(s1, s1, s0) == 0
    assert a1.gamma_by_trace(s1, s1, s1) == 1


# Test that γ can be read off the trace form as well.
def test_gamma_by_trace(a1):
    elements = list(a1.elements(2))

    for x in elements:
        for y in elements:
            for z in elements:
                assert a1.gamma(x, y, z) == a1.gamma_by_trace(x, y, z)


# Test γ with unequal parameters.
def test_gamma_unequal(a1_unequal):
    s1 = a1_unequal.datum.generators[1]

    assert a1_unequal.gamma(s1, s1, s1) == 1


# Test that degrees of structure constants never exceed the a-value.
def test_empirical_a(a1):
    s1 = a1.datum.generators[1]

    assert a1.empirical_a(s1, 3) == a1.a_value


# Test the per-element records.
def test_asymptotic_data(a1):
    records = a1.asymptotic_data(3)

    assert len(records) == 12
    assert sum(1 for r in records if r.distinguished) == 2
    assert all(r.delta >= r.a_value for r in records)
    assert records[0].to_json()["a"] == [1]


# Test the left preorder graph and its truncation limit.
def test_left_preorder_graph(a1):
    graph = a1.left_preorder_graph(3)

    assert graph.number_of_nodes() == len(a1.datum.enumerate_ball(3))
    with pytest.raises(TruncationError):
        a1.left_preorder_graph(6)


# Test the tensor identity on a few triples.
def test_tensor_identity(a1):
    datum = a1.datum
    s0, s1 = datum.generators

    for x, xp, w in [(s1, s1, s1), (s0, datum.product(s1, s0), s1), (datum.product(s0, s1), s0, s0)]:
        left, right = tensor_identity_sides(a1, x, xp, w)
        assert left == right
        assert left


# Test that the lowest cell and its γ do not depend on the choice of unequal weights.
def test_weight_independence(a1_unequal):
    datum = CellDatum("A1", weights={"s0": 1, "s1": 3}, mode=NON_EXTENDED)
    other = LowestCell(KLTable(HeckeAlgebra(datum), 6))

    assert weight_independence_check(a1_unequal, other, 3) is None


# Test that cells of different groups are not compared.
def test_weight_independence_mismatch(a1, a1_unequal):
    with pytest.raises(DomainError):
        weight_independence_check(a1, a1_unequal, 3)
