"""
Specialisations of ℤ[Γ], rational torus points of the centre, and the data deciding which simple
modules of a specialised Hecke algebra are attached to the lowest two-sided cell.
"""

import itertools
import logging
import sys

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from tqdm import tqdm

from lowestcell.affine_weyl import AffineElement, CellDatum
from lowestcell.based_ring import RepRingElement, centre_coefficients
from lowestcell.cells import LowestCell
from lowestcell.exceptions import ConfigurationError, DomainError, ResourceError, VerificationError
from lowestcell.gamma import LaurentElement
from lowestcell.hecke import HeckeElement
from lowestcell.kl_table import KLTable
from lowestcell.root_data import simple_subsets
from lowestcell.utils.linalg import cofactor_det, exact_det, exact_rank
from lowestcell.utils.math import check_prime, format_rational, parse_rational, parse_rational_list

logger = logging.getLogger(__name__)

RATIONALS = "Q"

_prime_field_warned = False


class ScalarField:
    """
    The target field of a specialisation: ℚ, or 𝔽_p for a prime p.
    """

    def __init__(self, modulus: Optional[int] = None):
        global _prime_field_warned
        if modulus is not None:
            check_prime(modulus)
            if not _prime_field_warned:
                print("Prime-field specialisations are still experimental and may change in future versions.", file=sys.stderr)
                _prime_field_warned = True
        self.modulus = modulus

    @classmethod
    def parse(cls, value: Union[str, int, None]) -> "ScalarField":
        if value is None or value == RATIONALS:
            return cls()
        if isinstance(value, str) and value.strip().isdigit():
            value = int(value)
        if not isinstance(value, int):
            raise ConfigurationError(f"expected 'Q' or a prime, got {value!r}.", field="spectra.field")
        return cls(value)

    @property
    def name(self) -> str:
        return RATIONALS if self.modulus is None else f"F{self.modulus}"

    def __repr__(self) -> str:
        return f"ScalarField({self.name})"

    def __eq__(self, other) -> bool:
        return isinstance(other, ScalarField) and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash(("ScalarField", self.modulus))

    def element(self, value, field: str = "value"):
        """
        The image of a rational in this field.
        """
        value = parse_rational(value, field=field)
        if self.modulus is None:
            return value
        if value.denominator % self.modulus == 0:
            raise DomainError(f"{value} is not defined modulo {self.modulus}.")
        return value.numerator * pow(value.denominator, -1, self.modulus) % self.modulus

    def format(self, value) -> str:
        return format_rational(value) if self.modulus is None else str(int(value) % self.modulus)


@dataclass(frozen=True)
class Specialization:
    """
    The ring map ℤ[Γ] → k sending the i-th coordinate generator q^{e_i} to values[i].
    """

    field: ScalarField
    values: Tuple

    def __post_init__(self):
        for value in self.values:
            if (value == 0) if self.field.modulus is None else (int(value) % self.field.modulus == 0):
                raise DomainError("specialisation values must be nonzero.")

    @classmethod
    def from_values(cls, values: Iterable, field: Optional[ScalarField] = None) -> "Specialization":
        field = field or ScalarField()
        return cls(field, tuple(field.element(v, field=f"spectra.q[{i}]") for i, v in enumerate(values)))

    @property
    def rank(self) -> int:
        return len(self.values)

    def __call__(self, c):
        if isinstance(c, LaurentElement):
            return c.evaluate(self.values, self.field.modulus)
        if self.field.modulus is None:
            return Fraction(c)
        return int(c) % self.field.modulus

    def to_json(self) -> dict:
        return {"field": self.field.name, "q": [self.field.format(v) for v in self.values]}


@dataclass(frozen=True)
class TorusPoint:
    """
    A point t of the maximal torus with coordinates dual to the fundamental weights; it defines
    λ_t: 𝒵_k → k by S_x ↦ χ_x(t).
    """

    field: ScalarField
    coordinates: Tuple

    def __post_init__(self):
        for c in self.coordinates:
            if (c == 0) if self.field.modulus is None else (int(c) % self.field.modulus == 0):
                raise DomainError("torus coordinates must be nonzero.")

    @classmethod
    def from_values(cls, values: Union[str, Iterable], field: Optional[ScalarField] = None) -> "TorusPoint":
        field = field or ScalarField()
        values = parse_rational_list(values, field="spectra.torus")
        return cls(field, tuple(field.element(v, field=f"spectra.torus[{i}]") for i, v in enumerate(values)))

    def evaluate(self, element: RepRingElement, specialization: Specialization):
        if len(self.coordinates) != element.root_datum.rank:
            raise DomainError(f"torus point needs {element.root_datum.rank} coordinates, got {len(self.coordinates)}.")
        return element.evaluate(self.coordinates, scalar=specialization, modulus=self.field.modulus)

    def to_json(self) -> list:
        return [self.field.format(c) for c in self.coordinates]


def zeta_element(datum: CellDatum, subset: Iterable[int]) -> LaurentElement:
    """
    h_{w_I,w_I,w_I} = q_{w_I}⁻¹ Σ_{y ∈ W_I} q_y², for I a set of finite simple reflections (1..r).
    """
    group = datum.weyl_group
    roots = [i - 1 for i in subset]
    total = LaurentElement.zero(datum.gamma_rank)
    for y in group.parabolic(roots):
        q_y = _q(datum, y)
        total = total + q_y * q_y
    return total * _q(datum, group.parabolic_longest(roots)).bar()


def _q(datum: CellDatum, u: int) -> LaurentElement:
    return LaurentElement.monomial(datum.weight_length(datum.finite_element(u)))


def _subset_label(subset: Iterable[int]) -> str:
    return "{" + ",".join(str(i) for i in sorted(subset)) + "}"


@dataclass
class PointReport:
    """
    Everything decided about one (specialisation, torus point) pair.
    """

    specialization: Specialization
    torus: TorusPoint
    delta_k: List[FrozenSet[int]]
    alpha: Dict[str, object]
    attached: bool
    first_row_nonzero: bool
    dim: int
    det: object
    phi_iso: bool

    def to_json(self) -> dict:
        field = self.specialization.field
        return {
            "specialisation": self.specialization.to_json(),
            "torus": self.torus.to_json(),
            "delta_k": [_subset_label(I) for I in self.delta_k],
            "alpha": {label: field.format(value) for label, value in sorted(self.alpha.items())},
            "attached": self.attached,
            "first_row_nonzero": self.first_row_nonzero,
            "dim": self.dim,
            "det": field.format(self.det),
            "phi_iso": self.phi_iso,
        }


class Spectra:
    """
    The classification data of the simple modules attached to the lowest cell at a specialisation:
    α_I, ζ_I, Δ_k, the matrix (m_{w,w'}) over the centre, its determinant, and ranks at torus points.
    """

    def __init__(self, table: KLTable, specialization: Specialization):
        """
        Arguments:
            table {KLTable} -- Supplies the structure constants h_{x,y,z}.
            specialization {Specialization} -- The map ℤ[Γ] → k.
        """
        if specialization.rank != table.datum.gamma_rank:
            raise ConfigurationError(
                f"expected {table.datum.gamma_rank} specialisation values, got {specialization.rank}.", field="spectra.q"
            )
        self.table = table
        self.datum = table.datum
        self.cell = LowestCell(table)
        self.specialization = specialization
        self.field = specialization.field
        self.subsets = simple_subsets(self.datum.rank)
        self._alpha: Dict[FrozenSet[int], RepRingElement] = {}
        self._m: Optional[np.ndarray] = None
        self._det: Optional[RepRingElement] = None

    # ζ_I and Δ_k.

    def zeta(self, subset: Iterable[int]):
        return self.specialization(zeta_element(self.datum, subset))

    def delta_set(self) -> List[FrozenSet[int]]:
        """
        Δ_k = {I ⊆ I₀ | ζ_{I'} ≠ 0 and ζ_{I' ∪ {i}} = 0 for every i ∈ I}.
        """
        full = frozenset(range(1, self.datum.rank + 1))
        zero = {I: self.zeta(I) == 0 for I in self.subsets}
        result = []
        for I in self.subsets:
            complement = full - I
            if zero[complement]:
                continue
            if all(zero[complement | {i}] for i in I):
                result.append(I)
        for a, b in itertools.permutations(result, 2):
            if a < b:
                raise VerificationError(f"Δ_k contains {_subset_label(a)} ⊂ {_subset_label(b)}.", witness=(sorted(a), sorted(b)))
        return result

    # α_I.

    def parabolic_element(self, subset: Iterable[int]) -> AffineElement:
        """
        x_I·w_{I'} where x_I = Σ_{i ∈ I} ω_i and w_{I'} is the longest element of W_{I'}; validated to
        be ww₀ for some w ∈ B₀.
        """
        subset = frozenset(subset)
        datum = self.datum
        complement = [i - 1 for i in range(1, datum.rank + 1) if i not in subset]
        x = tuple(1 if i + 1 in subset else 0 for i in range(datum.rank))
        if not datum.is_special_translation(x):
            raise DomainError(f"x_I = {list(x)} is not a translation of this group.")
        element = datum.multiply(datum.translation(x), datum.finite_element(datum.weyl_group.parabolic_longest(complement)))
        w = datum.multiply(element, datum.inverse(datum.w0))
        if not datum.is_in_box(w) or datum.length(element) != datum.length(w) + datum.length(datum.w0):
            raise VerificationError(f"x_I·w_I' = {element} is not of the form w·w0 with w in B0.", witness=sorted(subset))
        return element

    def alpha(self, subset: Iterable[int]) -> RepRingElement:
        """
        α_I = Σ_x h_{w₀, x_Iw_{I'}, w₀p_x} S_x, with coefficients in ℤ[Γ].
        """
        subset = frozenset(subset)
        if subset not in self._alpha:
            self._alpha[subset] = centre_coefficients(self.cell, self.datum.w0, self.parabolic_element(subset))
        return self._alpha[subset]

    # The matrix (m_{w,w'}) and its determinant.

    def m_matrix(self) -> np.ndarray:
        """
        m_{w,w'} = Σ_x h_{w₀w⁻¹, w'w₀, w₀p_x} S_x for w, w' ∈ B₀.
        """
        if self._m is None:
            datum = self.datum
            box = datum.box_elements()
            matrix = np.empty((len(box), len(box)), dtype=object)
            for i, w in enumerate(box):
                left = datum.multiply(datum.w0, datum.inverse(w))
                for j, wp in enumerate(box):
                    matrix[i, j] = centre_coefficients(self.cell, left, datum.multiply(wp, datum.w0))
            self._m = matrix
        return self._m

    def det_element(self) -> RepRingElement:
        """
        det(m_{w,w'}) as an element of ℤ[Γ] ⊗ 𝒵_ℤ, by cofactor expansion.
        """
        if self._det is None:
            root_datum = self.datum.root_datum
            one = RepRingElement.one(root_datum).scale(LaurentElement.one(self.datum.gamma_rank))
            self._det = cofactor_det(self.m_matrix().tolist(), one, RepRingElement.zero(root_datum))
        return self._det

    def evaluated_m(self, torus: TorusPoint) -> List[List]:
        return [[torus.evaluate(e, self.specialization) for e in row] for row in self.m_matrix().tolist()]

    def dim_rho(self, torus: TorusPoint) -> int:
        """
        dim ρ(E_t): the rank of (λ_t(m_{w,w'})).
        """
        return exact_rank(self.evaluated_m(torus), self.field.modulus)

    def det_at(self, torus: TorusPoint):
        return exact_det(self.evaluated_m(torus), self.field.modulus)

    # Attached simple modules.

    def attached(self, torus: TorusPoint) -> bool:
        """
        Whether λ_t(α_I) ≠ 0 for some I ∈ Δ_k.
        """
        return any(torus.evaluate(self.alpha(I), self.specialization) != 0 for I in self.delta_set())

    def first_row_nonzero(self, torus: TorusPoint) -> bool:
        """
        Whether C_{w₀} acts nonzero on E_t, i.e. Σ_x h_{w₀,ww₀,w₀p_x}λ_t(S_x) ≠ 0 for some w ∈ B₀.
        """
        row = self.datum.box_elements().index(self.datum.identity)
        return any(value != 0 for value in self.evaluated_m(torus)[row])

    def det_rank_agree(self, torus: TorusPoint) -> bool:
        """
        Whether λ_t applied to the symbolic determinant vanishes exactly when (λ_t(m_{w,w'})) loses rank.
        """
        nonzero = torus.evaluate(self.det_element(), self.specialization) != 0
        return nonzero == (self.dim_rho(torus) == len(self.datum.box_elements()))

    def phi_p_iso(self, torus: TorusPoint) -> bool:
        """
        Whether φ becomes an isomorphism at the residue field of t, i.e. λ_t(det) ≠ 0. Cross-checked
        against the rank of the evaluated matrix.
        """
        if not self.det_rank_agree(torus):
            raise VerificationError(f"λ(det) and the rank disagree at {torus.to_json()}.", witness=torus.to_json())
        return torus.evaluate(self.det_element(), self.specialization) != 0

    def report(self, torus: TorusPoint) -> PointReport:
        delta_k = self.delta_set()
        alpha = {_subset_label(I): torus.evaluate(self.alpha(I), self.specialization) for I in delta_k}
        return PointReport(
            specialization=self.specialization,
            torus=torus,
            delta_k=delta_k,
            alpha=alpha,
            attached=any(value != 0 for value in alpha.values()),
            first_row_nonzero=self.first_row_nonzero(torus),
            dim=self.dim_rho(torus),
            det=self.det_at(torus),
            phi_iso=self.phi_p_iso(torus),
        )

    def det_roots(self, points: Iterable[TorusPoint], progress: bool = False) -> List[TorusPoint]:
        """
        The points of a finite grid at which λ_t(det) vanishes.
        """
        return [t for t in tqdm(list(points), desc="Scanning torus grid", disable=not progress) if self.det_at(t) == 0]


def torus_grid(values: Sequence, rank: int, field: Optional[ScalarField] = None) -> List[TorusPoint]:
    """
    All torus points with coordinates drawn from `values`.
    """
    field = field or ScalarField()
    coordinates = [field.element(v, field="spectra.grid.torus") for v in values]
    points = []
    for point in itertools.product(coordinates, repeat=rank):
        try:
            points.append(TorusPoint(field, point))
        except DomainError:
            continue
    return points


def zeta_I(subset: Iterable[int], specialization: Specialization, datum: CellDatum):
    return specialization(zeta_element(datum, subset))


def alpha_I(subset: Iterable[int], table: KLTable) -> RepRingElement:
    return Spectra(table, Specialization(ScalarField(), (Fraction(1),) * table.datum.gamma_rank)).alpha(subset)


def delta_set(specialization: Specialization, table: KLTable) -> List[FrozenSet[int]]:
    return Spectra(table, specialization).delta_set()


def attached_simple_test(torus: TorusPoint, specialization: Specialization, table: KLTable) -> bool:
    return Spectra(table, specialization).attached(torus)


def m_matrix(table: KLTable) -> np.ndarray:
    return Spectra(table, Specialization(ScalarField(), (Fraction(1),) * table.datum.gamma_rank)).m_matrix()


def det_element(table: KLTable) -> RepRingElement:
    return Spectra(table, Specialization(ScalarField(), (Fraction(1),) * table.datum.gamma_rank)).det_element()


def dim_rho(torus: TorusPoint, specialization: Specialization, table: KLTable) -> int:
    return Spectra(table, specialization).dim_rho(torus)


def phi_p_iso(torus: TorusPoint, specialization: Specialization, table: KLTable) -> bool:
    return Spectra(table, specialization).phi_p_iso(torus)


def delta_basis_check(table: KLTable, radius: Optional[int] = None) -> Optional[AffineElement]:
    """
    Every C_{uw₀} with u ∈ U₀ equals Z_x·C_{w'w₀} for its factorization uw₀ = w'w₀p_x (Z_x = S_x in the
    extended mode).

    Returns:
        Optional[AffineElement] -- The first u on which this fails, or None.
    """
    datum = table.datum
    radius = table.radius if radius is None else radius
    length_w0 = datum.length(datum.w0)
    for u in datum.enumerate_ball(radius - length_w0):
        if not datum.is_in_U0(u):
            continue
        z = datum.multiply(u, datum.w0)
        if datum.length(z) != datum.length(u) + length_w0:
            continue
        factorization = datum.c0_factorize(z)
        if factorization is None or factorization[2] != datum.identity:
            return u
        w1, x, _ = factorization
        if table.C(z) != table.central_element(x) * table.C(datum.multiply(w1, datum.w0)):
            return u
    return None


def faithfulness_witness(h: HeckeElement, table: KLTable, max_depth: Optional[int] = None) -> Tuple[int, ...]:
    """
    For h ≠ 0, a word s₁⋯s_p with h·T̃_{s₁}⋯T̃_{s_p}·C_{w₀} ≠ 0.

    Takes y longest in the support of h and extends it on the right, length adding, until no finite
    simple reflection is a right descent.

    Raises:
        DomainError -- When h is zero.
        ResourceError -- When no extension is found within max_depth letters.
    """
    if not h:
        raise DomainError("the zero element acts trivially.")
    datum = table.datum
    algebra = table.algebra
    max_depth = 4 * datum.length(datum.w0) + 4 if max_depth is None else max_depth
    finite = frozenset(range(1, datum.rank + 1))
    y = max(h.support(), key=lambda w: (datum.length(w), datum.sort_key(w)))

    word = None
    queue = deque([(y, ())])
    seen = {y}
    while queue:
        v, letters = queue.popleft()
        if not datum.right_descents(v) & finite:
            word = letters
            break
        if len(letters) >= max_depth:
            continue
        for s in range(len(datum.generators)):
            vs = datum.multiply(v, datum.generators[s])
            if vs not in seen and datum.length(vs) == datum.length(v) + 1:
                seen.add(vs)
                queue.append((vs, letters + (s,)))
    if word is None:
        raise ResourceError(f"no length-adding extension of {y} within {max_depth} letters.", limit=max_depth)

    product = h
    for s in word:
        product = algebra.right_multiply_generator(product, s)
    if not product * table.C(datum.w0):
        raise VerificationError(f"h·T̃_{list(word)}·C_w0 vanishes.", witness=list(word))
    return word


def specialization_from_config(values: Sequence, field: Union[str, int, None], gamma_rank: int) -> Specialization:
    """
    Builds the specialisation from configuration values, one per Γ coordinate.
    """
    specialization = Specialization.from_values(parse_rational_list(values, field="spectra.q"), ScalarField.parse(field))
    if specialization.rank != gamma_rank:
        raise ConfigurationError(f"expected {gamma_rank} values, got {specialization.rank}.", field="spectra.q")
    return specialization
