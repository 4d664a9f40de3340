import pytest

from fractions import Fraction

from lowestcell import RootDatum
from lowestcell.exceptions import ConfigurationError, DomainError
from lowestcell.root_data import parse_cartan_type, simple_subsets


# Test parsing of Cartan types.
def test_parse_cartan_type():
    assert parse_cartan_type("A2") == ("A", 2)
    assert parse_cartan_type(" c2 ") == ("C", 2)
    assert parse_cartan_type("G2") == ("G", 2)


# Test that nonexistent types are rejected.
@pytest.mark.parametrize("name", ["B1", "D3", "E5", "G3", "X2", "A"])
def test_parse_cartan_type_invalid(name):
    with pytest.raises(ConfigurationError):
        parse_cartan_type(name)


# Test the orders of the finite Weyl groups.
@pytest.mark.parametrize("name, order", [("A1", 2), ("A2", 6), ("C2", 8), ("B3", 48), ("G2", 12)])
def test_weyl_group_order(name, order):
    assert len(RootDatum(name).weyl_group) == order


# Test the number of positive roots and the Coxeter number.
@pytest.mark.parametrize("name, roots, coxeter", [("A1", 1, 2), ("A2", 3, 3), ("C2", 4, 4), ("G2", 6, 6)])
def test_positive_roots(name, roots, coxeter):
    root_datum = RootDatum(name)

    assert len(root_datum.positive_roots) == roots
    assert root_datum.coxeter_number == coxeter


# Test the longest element, its length and its inverse.
def test_weyl_group_longest():
    group = RootDatum("A2").weyl_group

    assert group.length(group.longest) == 3
    assert group.inverse(group.longest) == group.longest
    assert group.rho_image(group.longest) == (-1, -1)


# Test that words and products agree.
def test_weyl_group_words():
    group = RootDatum("C2").weyl_group

    for u in range(len(group)):
        assert group.from_word(group.word(u)) == u
        assert group.multiply(u, group.inverse(u)) == group.identity


# Test the standard parabolic subgroups of A2.
def test_parabolic_subgroups():
    group = RootDatum("A2").weyl_group

    assert group.parabolic([]) == [group.identity]
    assert len(group.parabolic([0])) == 2
    assert len(group.parabolic([0, 1])) == 6
    assert group.parabolic_longest([0, 1]) == group.longest
    assert group.parabolic_longest([1]) == group.simple[1]


# Test that the root lattice of A2 is {(a, b) : a ≡ b mod 3}.
def test_root_lattice():
    root_datum = RootDatum("A2")

    assert root_datum.in_root_lattice((0, 0))
    assert root_datum.in_root_lattice((1, 1))
    assert root_datum.in_root_lattice((2, -1))
    assert not root_datum.in_root_lattice((1, 0))
    assert root_datum.alpha_coordinates((1, 0)) == (Fraction(2, 3), Fraction(1, 3))


# Test the duality x ↦ -w0(x).
def test_dual():
    assert RootDatum("A2").dual((1, 0)) == (0, 1)
    assert RootDatum("A2").dual((2, 1)) == (1, 2)
    assert RootDatum("C2").dual((1, 1)) == (1, 1)
    assert RootDatum("A1").dual((3,)) == (3,)


# Test Weyl's dimension formula.
@pytest.mark.parametrize(
    "name, weight, dim",
    [("A1", (3,), 4), ("A2", (1, 0), 3), ("A2", (1, 1), 8), ("A2", (2, 0), 6), ("C2", (1, 0), 4), ("C2", (0, 1), 5)],
)
def test_dimension(name, weight, dim):
    root_datum = RootDatum(name)

    assert root_datum.dim_irrep(weight) == dim
    assert sum(root_datum.weight_system(weight).values()) == dim


# Test weight multiplicities of the adjoint representation of A2.
def test_weight_multiplicity():
    root_datum = RootDatum("A2")

    assert root_datum.weight_multiplicity((1, 1), (1, 1)) == 1
    assert root_datum.weight_multiplicity((0, 0), (1, 1)) == 2
    assert root_datum.weight_multiplicity((2, -1), (1, 1)) == 1
    assert root_datum.weight_multiplicity((3, 0), (1, 1)) == 0


# Test 3 ⊗ 3 = 6 ⊕ 3̄.
def test_tensor_decompose_a2():
    root_datum = RootDatum("A2")

    assert root_datum.tensor_decompose((1, 0), (1, 0)) == {(0, 1): 1, (2, 0): 1}


# Test 3 ⊗ 3̄ = 8 ⊕ 1.
def test_tensor_decompose_a2_dual():
    root_datum = RootDatum("A2")

    assert root_datum.tensor_decompose((1, 0), (0, 1)) == {(0, 0): 1, (1, 1): 1}
    assert root_datum.tensor_multiplicity((1, 0), (0, 1), (0, 0)) == 1
    assert root_datum.tensor_multiplicity((1, 0), (1, 0), (0, 0)) == 0


# Test the Clebsch-Gordan rule for A1.
def test_tensor_decompose_a1():
    root_datum = RootDatum("A1")

    assert root_datum.tensor_decompose((2,), (3,)) == {(1,): 1, (3,): 1, (5,): 1}


# Test that the octet squared has the adjoint twice.
def test_tensor_decompose_octet():
    root_datum = RootDatum("A2")
    decomposition = root_datum.tensor_decompose((1, 1), (1, 1))

    assert decomposition[(1, 1)] == 2
    assert decomposition[(0, 0)] == 1
    assert sum(root_datum.dim_irrep(x) * m for x, m in decomposition.items()) == 64


# Test that tensor multiplicities are symmetric under duality, m(x, y, z) = m(y, z*, x*).
def test_tensor_multiplicity_duality():
    root_datum = RootDatum("C2")
    weights = root_datum.dominant_weights_up_to(2)

    for x in weights:
        for y in weights:
            for z, m in root_datum.tensor_decompose(x, y).items():
                assert root_datum.tensor_multiplicity(y, root_datum.dual(z), root_datum.dual(x)) == m


# Test that non-dominant weights are refused.
def test_tensor_decompose_not_dominant():
    with pytest.raises(DomainError):
        RootDatum("A2").tensor_decompose((1, -1), (1, 0))


# Test character values over Q and F_p.
def test_character_eval():
    root_datum = RootDatum("A1")

    assert root_datum.character_eval((1,), [2]) == Fraction(5, 2)
    assert root_datum.character_eval((0,), [7]) == 1
    assert root_datum.character_eval((1,), [2], modulus=5) == 0
    assert RootDatum("A2").character_eval((1, 1), [1, 1]) == 8


# Test that characters need a nonzero torus point of the right size.
def test_character_eval_invalid():
    root_datum = RootDatum("A2")

    with pytest.raises(DomainError):
        root_datum.character_eval((1, 0), [1])
    with pytest.raises(DomainError):
        root_datum.character_eval((1, 0), [1, 0])


# Test the enumeration of subsets of the finite simple reflections.
def test_simple_subsets():
    subsets = simple_subsets(2)

    assert subsets == [frozenset(), frozenset({1}), frozenset({2}), frozenset({1, 2})]
    assert len(simple_subsets(3)) == 8
