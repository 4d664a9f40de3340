import pytest

from lowestcell import CellDatum, HeckeAlgebra, KLTable, LaurentElement
from lowestcell.affine_weyl import NON_EXTENDED
from lowestcell.exceptions import DomainError, TruncationError
from lowestcell.spectra import zeta_element


@pytest.fixture(scope="module")
def a1():
    return KLTable(HeckeAlgebra(CellDatum("A1")), 6)


@pytest.fixture(scope="module")
def a1_unequal():
    return KLTable(HeckeAlgebra(CellDatum("A1", weights={"s0": 1, "s1": 2}, mode=NON_EXTENDED)), 6)


@pytest.fixture(scope="module")
def a2():
    return KLTable(HeckeAlgebra(CellDatum("A2")), 6)


# Test C_s = T_s + q_s⁻¹.
def test_C_generator(a1_unequal):
    algebra = a1_unequal.algebra
    for s in algebra.datum.generators:
        assert a1_unequal.C(s) == algebra.T(s) + algebra.T(algebra.datum.identity, algebra.q(s).bar())


# Test that every C_w is bar invariant with the right leading term.
def test_defining_conditions(a2):
    for w in a2.elements()[:40]:
        C_w = a2.C(w)
        assert C_w.bar() == C_w
        assert C_w.coefficient(w) == 1
        assert all(c.is_strictly_negative() for y, c in C_w.items() if y != w)


# Test that in the infinite dihedral group p̃_{y,w} = q^{l(y) - l(w)} for y ≤ w.
def test_dihedral_polynomials(a1):
    datum = a1.datum
    for w in a1.elements():
        for y in a1.elements():
            expected = LaurentElement.monomial((datum.length(y) - datum.length(w),)) if datum.bruhat_leq(y, w) else 0
            assert a1.p_tilde(y, w) == expected


# Test that unequal parameters make C_{s0}C_{s1 s0} a KL basis element.
def test_unequal_dihedral_product(a1_unequal):
    datum = a1_unequal.datum
    s0, s1 = datum.generators

    assert a1_unequal.C(datum.product(s1, s0)) == a1_unequal.C(s1) * a1_unequal.C(s0)
    assert a1_unequal.C(datum.product(s0, s1, s0)) == a1_unequal.C(s0) * a1_unequal.C(datum.product(s1, s0))


# Test that in the equal parameter case C_{s}C_{ts} = C_{sts} + C_s.
def test_equal_dihedral_product(a1):
    datum = a1.datum
    s0, s1 = datum.generators

    assert a1.C(s0) * a1.C(datum.product(s1, s0)) == a1.C(datum.product(s0, s1, s0)) + a1.C(s0)


# Test the p polynomials.
def test_p(a1_unequal):
    datum = a1_unequal.datum
    s1 = datum.generators[1]

    assert a1_unequal.p(datum.identity, s1) == 1
    assert a1_unequal.p(s1, s1) == LaurentElement.monomial((2,))


# Test the closed form of C_w0.
def test_C_w0(a2):
    algebra = a2.algebra
    datum = a2.datum
    expected = algebra.zero()
    for u in range(len(datum.weyl_group)):
        y = datum.finite_element(u)
        expected = expected + algebra.T(y, algebra.q(y) * algebra.q(datum.w0).bar())

    assert a2.C(datum.w0) == expected


# Test C_w0 C_w0 = h_{w0,w0,w0} C_w0 with h_{w0,w0,w0} = q_w0⁻¹ Σ q_y².
def test_h_w0(a2):
    datum = a2.datum
    w0 = datum.w0
    q = LaurentElement.monomial((1,))
    q3 = q * q * q

    assert a2.structure(w0, w0) == {w0: q3 + 2 * q + 2 * q.bar() + q3.bar()}
    assert a2.h(w0, w0, w0) == zeta_element(datum, {1, 2})


# Test that C_π C_w = C_{πw}.
def test_omega_translates(a2):
    datum = a2.datum
    pi = datum.omega_elements[1]
    for w in datum.enumerate_ball(3)[:20]:
        assert a2.algebra.T(pi) * a2.C(w) == a2.C(datum.multiply(pi, w))


# Test expansion in the KL basis and back.
def test_to_kl_basis(a2):
    datum = a2.datum
    x, y = datum.generators[1], datum.w0
    product = a2.C(x) * a2.C(y)

    coefficients = a2.to_kl_basis(product)
    assert a2.from_kl_basis(coefficients) == product
    assert all(c.is_bar_invariant() for c in coefficients.values())


# Test C_s C_w = (q_s + q_s⁻¹) C_w when s is a left descent of w.
def test_structure_descent(a2):
    datum = a2.datum
    q = LaurentElement.monomial((1,))
    for w in datum.enumerate_ball(4):
        for s in datum.left_descents(w):
            assert a2.structure(datum.generators[s], w) == {w: q + q.bar()}


# Test that products leaving the table are refused.
def test_truncation(a1):
    datum = a1.datum
    far = datum.from_word([0, 1, 0, 1, 0, 1, 0])

    with pytest.raises(TruncationError):
        a1.C(far)
    with pytest.raises(TruncationError):
        a1.structure(datum.from_word([0, 1, 0, 1]), datum.from_word([0, 1, 0]))


# Test the decomposition C_{w1 w0 p_x w2⁻¹} = E_{w1} C_{w0} S_x F_{w2}.
def test_xi_decomposition(a1):
    datum = a1.datum
    for z, (w1, x, w2) in datum.c0_elements(a1.radius).items():
        assert not a1.xi_verify(w1, x, w2)


# Test the decomposition with unequal parameters.
def test_xi_decomposition_unequal(a1_unequal):
    datum = a1_unequal.datum
    for z, (w1, x, w2) in datum.c0_elements(a1_unequal.radius).items():
        assert not a1_unequal.xi_verify(w1, x, w2)


# Test both forms of the decomposition in affine A2.
def test_xi_decomposition_a2(a2):
    datum = a2.datum
    elements = datum.c0_elements(a2.radius)

    assert {w2 for _, (_, _, w2) in elements.items()} == set(datum.box_elements())
    for z, (w1, x, w2) in elements.items():
        assert not a2.xi_verify(w1, x, w2, check_second=True)


# Test both forms of the decomposition in affine C2, including a box element of length 3.
def test_xi_decomposition_c2():
    table = KLTable(HeckeAlgebra(CellDatum("C2")), 8)
    datum = table.datum
    elements = datum.c0_elements(table.radius)

    assert max(datum.length(w1) for _, (w1, _, _) in elements.items()) == 3
    for z, (w1, x, w2) in elements.items():
        assert not table.xi_verify(w1, x, w2, check_second=True)


# Test that E_w C_w0 = C_{w w0} on the box of affine C2.
def test_E_box_c2():
    table = KLTable(HeckeAlgebra(CellDatum("C2")), 7)
    datum = table.datum
    for w in datum.box_elements():
        assert table.E(w) * table.C(datum.w0) == table.C(datum.multiply(w, datum.w0))


# Test that S_x itself is the central factor in the extended mode.
def test_central_expansion_extended(a2):
    assert a2.central_expansion((1, 1)) == {(1, 1): 1}
    assert a2.central_element((1, 1)) == a2.algebra.S((1, 1))


# Test the central factor of C_{w0 p_x} with unequal parameters on the non-extended group.
def test_central_expansion_unequal(a1_unequal):
    datum = a1_unequal.datum
    algebra = a1_unequal.algebra
    s0, s1 = datum.generators

    assert a1_unequal.central_expansion((0,)) == {(0,): 1}
    assert a1_unequal.central_expansion((2,)) == {(0,): -1, (2,): 1}
    assert a1_unequal.central_expansion((4,)) == {(0,): 1, (2,): -1, (4,): 1}
    # C_{s1} S_2 picks up an extra C_{s1}.
    assert a1_unequal.C(s1) * algebra.S((2,)) == a1_unequal.C(datum.product(s1, s0, s1)) + a1_unequal.C(s1)


# Test that odd translations are not special in the non-extended mode.
def test_central_expansion_domain(a1_unequal):
    with pytest.raises(DomainError):
        a1_unequal.central_expansion((1,))


# Test that E and F are only defined on the dominant quarter.
def test_E_domain(a2):
    datum = a2.datum

    assert a2.E(datum.identity) == a2.algebra.one()
    with pytest.raises(DomainError):
        a2.E(datum.w0)


# Test that F_w is the flat image of E_w.
def test_F(a1):
    datum = a1.datum
    for w in datum.box_elements():
        assert a1.F(w) == a1.algebra.flat(a1.E(w))


# Test that several threads build the same table.
def test_threads():
    datum = CellDatum("A2")
    single = KLTable(HeckeAlgebra(datum), 4)
    threaded = KLTable(HeckeAlgebra(datum), 4, threads=3)

    assert single.to_json() == threaded.to_json()


# Test the JSON form of the table.
def test_to_json(a1):
    document = a1.to_json()

    assert "e" in document
    assert document["e"] == {"e": {"rank": 1, "terms": [{"exp": [0], "coeff": "1"}]}}
