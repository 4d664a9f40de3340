import pytest

from lowestcell import CellDatum, GammaElement
from lowestcell.affine_weyl import NON_EXTENDED
from lowestcell.exceptions import ConfigurationError, DomainError


@pytest.fixture(scope="module")
def a1():
    return CellDatum("A1")


@pytest.fixture(scope="module")
def a2():
    return CellDatum("A2")


# Test the generators and Ω of the extended group of type A1.
def test_a1_structure(a1):
    s0, s1 = a1.generators

    assert len(a1.omega_elements) == 2
    assert a1.length(s0) == a1.length(s1) == 1
    assert a1.multiply(s0, s0).is_identity()
    assert a1.w0 == s1
    pi = a1.omega_elements[1]
    assert a1.length(pi) == 0
    assert a1.product(pi, s1, a1.inverse(pi)) == s0


# Test the Coxeter matrix of affine A2: all generators braid with order 3.
def test_a2_coxeter_matrix(a2):
    for i in range(3):
        for j in range(3):
            assert a2.coxeter_matrix[(i, j)] == (1 if i == j else 3)


# Test that the affine A1 generators generate an infinite dihedral group.
def test_a1_coxeter_matrix(a1):
    assert a1.coxeter_matrix[(0, 1)] == 0


# Test that the number of elements of each length in the affine A2 group grows linearly.
def test_a2_strata(a2):
    counts = [sum(1 for w in a2.stratum(n) if a2.omega_index(w) == 0) for n in range(5)]

    assert counts == [1, 3, 6, 9, 12]
    assert len(a2.stratum(0)) == 3


# Test that the hyperplane length agrees with the length read off descents.
def test_length_by_descents(a2):
    for w in a2.enumerate_ball(4):
        assert a2.length(w) == a2.length_by_descents(w)


# Test that the length of a translation is Σ <x, α^∨>.
def test_translation_length(a2):
    for x in [(1, 0), (0, 1), (1, 1), (2, 1)]:
        assert a2.length(a2.translation(x)) == a2.translation_length(x)
    assert a2.translation_length((1, 1)) == 4


# Test that reduced words reproduce the element and have its length.
def test_reduced_words(a2):
    for w in a2.enumerate_ball(4):
        omega, word = a2.reduced_word(w)
        assert len(word) == a2.length(w)
        assert a2.from_word(word, omega) == w


# Test the multiplication and inversion laws.
def test_group_law(a2):
    ball = a2.enumerate_ball(2)

    for a in ball:
        assert a2.multiply(a, a2.inverse(a)).is_identity()
        for b in ball[:6]:
            assert a2.inverse(a2.multiply(a, b)) == a2.multiply(a2.inverse(b), a2.inverse(a))


# Test that the identity lies in the box and that the box has |W0| elements.
@pytest.mark.parametrize("name", ["A1", "A2", "C2"])
def test_box_size(name):
    datum = CellDatum(name)

    assert len(datum.box_elements()) == len(datum.weyl_group)
    assert datum.is_in_box(datum.identity)
    assert datum.box_elements()[0] == datum.identity


# Test the box of the non-extended group of type C2.
def test_c2_non_extended_box():
    datum = CellDatum("C2", weights={"s0": 1, "s1": 2, "s2": 3}, mode=NON_EXTENDED)

    assert len(datum.omega_elements) == 1
    assert len(datum.box_elements()) == 8
    for w in datum.box_elements():
        assert datum.root_datum.in_root_lattice(w.translation)


# Test the box of the non-extended group of type A1.
def test_a1_non_extended_box():
    datum = CellDatum("A1", weights={"s0": 1, "s1": 2}, mode=NON_EXTENDED)

    assert datum.box_elements() == [datum.identity, datum.generators[0]]


# Test factorization of elements of the lowest cell.
def test_c0_factorize(a2):
    box = a2.box_elements()

    for w1 in box:
        for w2 in box:
            for x in [(0, 0), (1, 0), (0, 1)]:
                z = a2.c0_compose(w1, x, w2)
                assert a2.length(z) == a2.length(w1) + a2.length(a2.w0) + a2.translation_length(x) + a2.length(w2)
                assert a2.c0_factorize(z) == (w1, x, w2)


# Test that the fast factorization matches the exhaustive search.
def test_c0_factorize_bruteforce(a1):
    for z in a1.enumerate_ball(4):
        assert a1.c0_factorize(z) == a1.c0_factorize_bruteforce(z)


# Test that elements of length zero and the identity lie outside the lowest cell.
def test_c0_factorize_outside(a2):
    for pi in a2.omega_elements:
        assert a2.c0_factorize(pi) is None
    for s in a2.generators:
        assert a2.c0_factorize(s) is None


# Test the count of lowest cell elements of affine A1: four per length.
def test_c0_elements_a1(a1):
    elements = a1.c0_elements(5)

    assert len(elements) == 20
    assert all(1 <= a1.length(z) <= 5 for z in elements)


# Test membership in the dominant quarter, which lies on the right of w0.
def test_u0(a2):
    assert a2.is_in_U0(a2.identity)
    assert a2.is_in_U0(a2.inverse(a2.translation((1, 1))))
    assert not a2.is_in_U0(a2.translation((1, 1)))
    assert not a2.is_in_U0(a2.w0)
    for w in a2.enumerate_ball(4):
        additive = a2.length(a2.multiply(w, a2.w0)) == a2.length(w) + a2.length(a2.w0)
        assert a2.is_in_U0(w) == additive


def length_additive(datum, w):
    return datum.length(datum.multiply(w, datum.w0)) == datum.length(w) + datum.length(datum.w0)


def box_from_ball(datum, radius):
    # The minimal elements of the quarter: no translation step p_{c·ω_i} keeps w·p inside it.
    steps = []
    for i, period in enumerate(datum.box_periods):
        x = [0] * datum.rank
        x[i] = period
        steps.append(datum.translation(x))
    box = []
    for w in datum.enumerate_ball(radius):
        if length_additive(datum, w) and not any(length_additive(datum, datum.multiply(w, p)) for p in steps):
            box.append(w)
    return sorted(box)


BOX_CASES = [
    ("A1", {}, 3),
    ("A2", {}, 4),
    ("A3", {}, 6),
    ("C2", {}, 5),
    ("G2", {}, 11),
    ("C2", {"weights": {"s0": 1, "s1": 2, "s2": 3}, "mode": NON_EXTENDED}, 8),
    ("A1", {"weights": {"s0": 1, "s1": 2}, "mode": NON_EXTENDED}, 3),
]


# Test that every box element w satisfies l(w·w0) = l(w) + l(w0).
@pytest.mark.parametrize("name, options, radius", BOX_CASES)
def test_box_length_additive(name, options, radius):
    datum = CellDatum(name, **options)

    assert len(datum.box_elements()) == len(datum.weyl_group)
    for w in datum.box_elements():
        assert length_additive(datum, w)
        assert datum.is_in_U0(w)
        assert datum.length(datum.c0_compose(w, (0,) * datum.rank, w)) == 2 * datum.length(w) + datum.length(datum.w0)


# Test the box against the minimal elements of the quarter read off from lengths alone.
@pytest.mark.parametrize("name, options, radius", BOX_CASES)
def test_box_matches_quarter_minima(name, options, radius):
    datum = CellDatum(name, **options)

    assert box_from_ball(datum, radius) == datum.box_elements()


# Test that every composed element of the lowest cell in affine G2 has additive length and factorizes back.
def test_c0_elements_g2():
    datum = CellDatum("G2")
    base = datum.length(datum.w0)

    elements = datum.c0_elements(base + 6)
    assert len(elements) >= len(datum.weyl_group)
    for z, (w1, x, w2) in elements.items():
        assert datum.length(z) == datum.length(w1) + base + datum.translation_length(x) + datum.length(w2)
        assert datum.c0_factorize(z) == (w1, x, w2)


# Test the weights of an equal parameter group.
def test_equal_weights(a2):
    assert a2.weight_labels() == {"s0": [1], "s1": [1], "s2": [1]}
    assert a2.weight_length(a2.w0) == GammaElement((3,))


# Test that conjugate generators must get the same weight.
def test_weight_conflict():
    with pytest.raises(ConfigurationError):
        CellDatum("A2", weights={"s0": 1, "s1": 2, "s2": 1})


# Test that Ω makes the two end nodes of affine C2 conjugate.
def test_c2_conjugacy_classes():
    classes = CellDatum("C2").conjugacy_classes()

    assert classes == [frozenset({0, 1}), frozenset({2})]


# Test generic unequal weights in a rank two Γ.
def test_generic_weights_non_extended():
    datum = CellDatum("A1", gamma_rank=2, mode=NON_EXTENDED)

    assert datum.weight(0) < datum.weight(1)
    assert datum.weight_length(datum.w0) == datum.weight(1)


# Test that the non-extended mode needs L(s0) < L(s_end).
def test_non_extended_weight_order():
    with pytest.raises(ConfigurationError):
        CellDatum("A1", weights={"s0": 2, "s1": 1}, mode=NON_EXTENDED)


# Test that the non-extended mode is restricted to Coxeter type C̃.
def test_non_extended_wrong_type():
    with pytest.raises(ConfigurationError):
        CellDatum("A2", mode=NON_EXTENDED)


# Test that weights must be positive.
def test_nonpositive_weight():
    with pytest.raises(ConfigurationError):
        CellDatum("A1", weights={"s0": 0, "s1": 0})


# Test that translations outside Q are refused in the non-extended mode.
def test_non_extended_translation():
    datum = CellDatum("A1", weights={"s0": 1, "s1": 2}, mode=NON_EXTENDED)

    with pytest.raises(DomainError):
        datum.translation((1,))
    assert datum.length(datum.translation((2,))) == 2


# Test the JSON form of elements.
def test_element_json(a2):
    for w in a2.enumerate_ball(3):
        assert a2.element_from_json(w.to_json()) == w


# Test the weak order graph.
def test_weak_order_graph(a1):
    graph = a1.weak_order_graph(3)

    assert graph.number_of_nodes() == len(a1.enumerate_ball(3))
    assert all(a1.length(v) == a1.length(u) + 1 for u, v in graph.edges)
