import pytest

from fractions import Fraction

from lowestcell import CellDatum, HeckeAlgebra, KLTable, RepRingElement
from lowestcell.affine_weyl import NON_EXTENDED
from lowestcell.exceptions import ConfigurationError, DomainError
from lowestcell.spectra import (
    ScalarField,
    Spectra,
    Specialization,
    TorusPoint,
    delta_basis_check,
    faithfulness_witness,
    specialization_from_config,
    torus_grid,
    zeta_element,
)


@pytest.fixture(scope="module")
def a1():
    return KLTable(HeckeAlgebra(CellDatum("A1")), 6)


@pytest.fixture(scope="module")
def a1_rational(a1):
    return Spectra(a1, Specialization.from_values([2]))


@pytest.fixture(scope="module")
def a1_mod5(a1):
    return Spectra(a1, Specialization.from_values([2], ScalarField(5)))


def point(value, field=None):
    return TorusPoint.from_values([value], field)


# Test parsing of the target field.
def test_scalar_field_parse():
    assert ScalarField.parse(None) == ScalarField()
    assert ScalarField.parse("Q").name == "Q"
    assert ScalarField.parse("5") == ScalarField(5)
    assert ScalarField.parse(7).name == "F7"
    with pytest.raises(ConfigurationError):
        ScalarField.parse("R")
    with pytest.raises(ConfigurationError):
        ScalarField.parse(4)


# Test rationals in a prime field.
def test_scalar_field_element():
    field = ScalarField(5)

    assert field.element("1/2") == 3
    assert ScalarField().element("1/2") == Fraction(1, 2)
    with pytest.raises(DomainError):
        field.element("1/5")


# Test that specialisations and torus points refuse zero.
def test_nonzero_values():
    with pytest.raises(DomainError):
        Specialization.from_values([0])
    with pytest.raises(DomainError):
        TorusPoint.from_values("5", ScalarField(5))


# Test the specialisation built from configuration values.
def test_specialization_from_config():
    specialization = specialization_from_config(["2"], "Q", 1)

    assert specialization.values == (Fraction(2),)
    assert specialization.to_json() == {"field": "Q", "q": ["2"]}
    with pytest.raises(ConfigurationError):
        specialization_from_config(["2", "3"], "Q", 1)


# Test ζ_I in rank one.
def test_zeta(a1, a1_rational, a1_mod5):
    assert zeta_element(a1.datum, set()) == 1
    assert a1_rational.zeta({1}) == Fraction(5, 2)
    assert a1_mod5.zeta({1}) == 0


# Test ζ_{1,2} for A2 at q = 2.
def test_zeta_a2():
    table = KLTable(HeckeAlgebra(CellDatum("A2")), 3)
    spectra = Spectra(table, Specialization.from_values([2]))

    assert spectra.zeta({1, 2}) == Fraction(105, 8)


# Test Δ_k over ℚ and over 𝔽_5.
def test_delta_set(a1_rational, a1_mod5):
    assert a1_rational.delta_set() == [frozenset()]
    assert a1_mod5.delta_set() == [frozenset({1})]


# Test α_I for I = {1}.
def test_alpha(a1, a1_mod5):
    datum = a1.datum

    assert a1_mod5.parabolic_element({1}) == datum.translation((1,))
    assert a1_mod5.alpha({1}) == RepRingElement.S(datum.root_datum, (1,))


# Test the modules attached to the lowest cell over 𝔽_5.
def test_attached_mod5(a1_mod5):
    field = ScalarField(5)
    inert = a1_mod5.report(point(2, field))
    attached = a1_mod5.report(point(1, field))

    assert not inert.attached
    assert inert.dim == 0
    assert attached.attached
    assert attached.alpha == {"{1}": 2}
    assert attached.to_json()["alpha"] == {"{1}": "2"}


# Test that over ℚ every point is attached.
def test_attached_rational(a1_rational):
    assert a1_rational.attached(point(3))
    assert a1_rational.first_row_nonzero(point(3))


# Test the zeros of det(m) on a grid of rational points.
def test_det_roots(a1_rational):
    grid = torus_grid(["-2", "-1", "1", "2", "1/2", "3"], 1)
    roots = a1_rational.det_roots(grid)

    assert {t.coordinates[0] for t in roots} == {Fraction(-2), Fraction(2), Fraction(1, 2)}


# Test the rank of the evaluated matrix.
def test_dim_rho(a1_rational):
    assert a1_rational.dim_rho(point(2)) == 1
    assert a1_rational.dim_rho(point(3)) == 2
    assert not a1_rational.phi_p_iso(point(2))
    assert a1_rational.phi_p_iso(point(3))


# Test that the determinant agrees with its evaluated form.
def test_det_element(a1_rational):
    det = a1_rational.det_element()

    for value in ("3", "1/2", "-1"):
        t = point(value)
        assert t.evaluate(det, a1_rational.specialization) == a1_rational.det_at(t)


# Test that a specialisation of the wrong rank is refused.
def test_specialization_rank(a1):
    with pytest.raises(ConfigurationError):
        Spectra(a1, Specialization.from_values([2, 3]))


# Test C_{uw0} = Z_x C_{w'w0} in both modes.
def test_delta_basis(a1):
    unequal = KLTable(HeckeAlgebra(CellDatum("A1", weights={"s0": 1, "s1": 2}, mode=NON_EXTENDED)), 6)

    assert delta_basis_check(a1) is None
    assert delta_basis_check(unequal) is None


# Test that the action on HC_w0 sees every nonzero element.
def test_faithfulness_witness(a1):
    algebra = a1.algebra
    s0, s1 = a1.datum.generators

    assert faithfulness_witness(algebra.T(s0), a1) == ()
    assert faithfulness_witness(algebra.T(s1), a1) == (0,)
    with pytest.raises(DomainError):
        faithfulness_witness(algebra.zero(), a1)
