import pytest

from lowestcell import CellDatum, HeckeAlgebra, LaurentElement
from lowestcell.affine_weyl import NON_EXTENDED
from lowestcell.exceptions import ConfigurationError


@pytest.fixture(scope="module")
def a1():
    return HeckeAlgebra(CellDatum("A1"))


@pytest.fixture(scope="module")
def a1_unequal():
    return HeckeAlgebra(CellDatum("A1", weights={"s0": 1, "s1": 2}, mode=NON_EXTENDED))


@pytest.fixture(scope="module")
def a2():
    return HeckeAlgebra(CellDatum("A2"))


# Test the quadratic relation T_s² = 1 + ξ_s T_s.
def test_quadratic_relation(a1_unequal):
    algebra = a1_unequal
    for i, s in enumerate(algebra.datum.generators):
        T_s = algebra.T(s)
        assert T_s * T_s == algebra.one() + T_s.scale(algebra.xi(i))


# Test that ξ_s reflects the weight of s.
def test_xi_unequal(a1_unequal):
    q = LaurentElement.monomial((1,))

    assert a1_unequal.xi(0) == q - q.bar()
    assert a1_unequal.xi(1) == q * q - q.bar() * q.bar()


# Test that lengths add in T_x T_y when l(xy) = l(x) + l(y).
def test_length_additive_product(a2):
    datum = a2.datum
    s0, s1, s2 = datum.generators

    x = datum.product(s0, s1)
    y = datum.product(s2, s0)
    assert datum.length(datum.multiply(x, y)) == 4
    assert a2.T(x) * a2.T(y) == a2.T(datum.multiply(x, y))


# Test the braid relation s1 s2 s1 = s2 s1 s2.
def test_braid_relation(a2):
    _, s1, s2 = a2.datum.generators

    left = a2.T(s1) * a2.T(s2) * a2.T(s1)
    right = a2.T(s2) * a2.T(s1) * a2.T(s2)
    assert left == right


# Test associativity on a few elements.
def test_associativity(a2):
    ball = a2.datum.enumerate_ball(2)
    elements = [a2.T(w) for w in ball[:8]]

    for a in elements[:4]:
        for b in elements[2:6]:
            for c in elements[4:8]:
                assert (a * b) * c == a * (b * c)


# Test that T_π is invertible and permutes the generators.
def test_omega_conjugation(a1):
    datum = a1.datum
    pi = datum.omega_elements[1]
    s0, s1 = datum.generators

    assert a1.T(pi) * a1.T(pi) == a1.one()
    assert a1.T(pi) * a1.T(s1) * a1.T(pi) == a1.T(s0)


# Test that bar is an involution and fixes T_π.
def test_bar_involution(a2):
    datum = a2.datum
    for w in datum.enumerate_ball(3)[:20]:
        assert a2.T(w).bar().bar() == a2.T(w)
    pi = datum.omega_elements[1]
    assert a2.T(pi).bar() == a2.T(pi)


# Test that bar is a ring homomorphism.
def test_bar_multiplicative(a1_unequal):
    algebra = a1_unequal
    ball = algebra.datum.enumerate_ball(3)

    for x in ball:
        for y in ball:
            product = algebra.T(x) * algebra.T(y)
            assert product.bar() == algebra.T(x).bar() * algebra.T(y).bar()


# Test that T_w⁻¹ really is the inverse of T_w.
def test_inverse_basis(a2):
    for w in a2.datum.enumerate_ball(3):
        assert a2.T(w) * a2.inverse_basis(w) == a2.one()


# Test the trace form τ(T_x T_y) = δ_{x,y⁻¹}.
def test_tau(a1):
    datum = a1.datum
    ball = datum.enumerate_ball(2)

    for x in ball:
        for y in ball:
            expected = 1 if datum.multiply(x, y).is_identity() else 0
            assert (a1.T(x) * a1.T(y)).tau() == expected


# Test that flat is an anti-involution.
def test_flat(a2):
    ball = a2.datum.enumerate_ball(2)

    for x in ball[:10]:
        for y in ball[:10]:
            assert a2.flat(a2.T(x) * a2.T(y)) == a2.flat(a2.T(y)) * a2.flat(a2.T(x))


# Test that the Bernstein elements commute and multiply like translations.
def test_theta(a2):
    assert a2.theta((1, 0)) * a2.theta((0, 1)) == a2.theta((1, 1))
    assert a2.theta((1, -1)) * a2.theta((-1, 1)) == a2.one()
    assert a2.theta((1, 0)) * a2.theta((-1, 1)) == a2.theta((-1, 1)) * a2.theta((1, 0))
    assert a2.theta((0, 0)) == a2.one()


# Test that θ_x does not depend on how x is split into dominant parts.
def test_theta_check(a1):
    a1.theta((-2,), check=True)
    a1.theta((3,), check=True)


# Test that S_x is central.
@pytest.mark.parametrize("x", [(1, 0), (0, 1), (1, 1)])
def test_S_central(a2, x):
    assert a2.commutes_with_generators(a2.S(x))


# Test that a non-central element is detected.
def test_T_not_central(a2):
    assert not a2.commutes_with_generators(a2.T(a2.datum.generators[1]))


# Test S_1·S_1 = S_2 + S_0 for affine A1.
def test_S_product(a1):
    assert a1.S((1,)) * a1.S((1,)) == a1.S((2,)) + a1.S((0,))
    assert a1.S((0,)) == a1.one()


# Test that S_x is central with unequal parameters.
def test_S_central_unequal(a1_unequal):
    assert a1_unequal.commutes_with_generators(a1_unequal.S((2,)))


# Test that elements of different algebras do not mix.
def test_different_algebras(a1):
    other = HeckeAlgebra(CellDatum("A1"))

    with pytest.raises(ConfigurationError):
        a1.one() + other.one()
