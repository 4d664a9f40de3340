"""
The based ring J₀ of the lowest two-sided cell in its matrix model Mat_{B₀}(𝒵_ℤ), and the
homomorphism φ: 𝓗 → ℤ[Γ] ⊗ J₀, C_x ↦ Σ_{d ∈ 𝒟, z ∈ 𝐜₀} h_{x,d,z} t_z.
"""

import logging

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from tqdm import tqdm

from lowestcell.affine_weyl import EXTENDED, AffineElement, CellDatum
from lowestcell.cells import LowestCell
from lowestcell.exceptions import ConfigurationError, DomainError
from lowestcell.gamma import LaurentElement
from lowestcell.hecke import HeckeElement
from lowestcell.kl_table import KLTable
from lowestcell.root_data import RootDatum, Weight
from lowestcell.utils.linalg import exact_rank

logger = logging.getLogger(__name__)


class RepRingElement:
    """
    An element Σ c_x S_x of the centre, written in the basis {S_x | x dominant}. Coefficients are
    integers (𝒵_ℤ, the representation ring) or elements of ℤ[Γ]; products use tensor multiplicities.
    """

    __slots__ = ("root_datum", "_terms")

    def __init__(self, root_datum: RootDatum, terms: Optional[Mapping[Sequence[int], object]] = None):
        self.root_datum = root_datum
        self._terms: Dict[Weight, object] = {}
        for x, c in (terms or {}).items():
            _add_term(self._terms, tuple(int(a) for a in x), c)

    @classmethod
    def S(cls, root_datum: RootDatum, x: Sequence[int], coeff=1) -> "RepRingElement":
        return cls(root_datum, {tuple(x): coeff})

    @classmethod
    def zero(cls, root_datum: RootDatum) -> "RepRingElement":
        return cls(root_datum)

    @classmethod
    def one(cls, root_datum: RootDatum) -> "RepRingElement":
        return cls.S(root_datum, (0,) * root_datum.rank)

    def items(self) -> List[Tuple[Weight, object]]:
        return sorted(self._terms.items(), key=lambda item: (sum(item[0]), item[0]))

    def coefficient(self, x: Sequence[int]):
        return self._terms.get(tuple(x), 0)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, RepRingElement):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def __add__(self, other) -> "RepRingElement":
        if isinstance(other, int) and other == 0:
            return self
        terms = dict(self._terms)
        for x, c in other._terms.items():
            _add_term(terms, x, c)
        return self._from_raw(terms)

    __radd__ = __add__

    def __neg__(self) -> "RepRingElement":
        return self._from_raw({x: -c for x, c in self._terms.items()})

    def __sub__(self, other) -> "RepRingElement":
        return self + (-other)

    def __mul__(self, other) -> "RepRingElement":
        if not isinstance(other, RepRingElement):
            return self.scale(other)
        terms: Dict[Weight, object] = {}
        for x, a in self._terms.items():
            for y, b in other._terms.items():
                product = a * b
                for z, m in self.root_datum.tensor_decompose(x, y).items():
                    _add_term(terms, z, product * m)
        return self._from_raw(terms)

    def __rmul__(self, other) -> "RepRingElement":
        return self.scale(other)

    def scale(self, c) -> "RepRingElement":
        terms: Dict[Weight, object] = {}
        for x, a in self._terms.items():
            _add_term(terms, x, a * c)
        return self._from_raw(terms)

    def _from_raw(self, terms: Dict[Weight, object]) -> "RepRingElement":
        element = RepRingElement.__new__(RepRingElement)
        element.root_datum = self.root_datum
        element._terms = terms
        return element

    def evaluate(self, torus: Sequence, scalar: Optional[Callable] = None, modulus: Optional[int] = None):
        """
        λ_t(Σ c_x S_x) = Σ scalar(c_x) χ_x(t).

        Arguments:
            torus {Sequence} -- The torus point t_1..t_r.
            scalar {Callable, optional} -- Specialises a coefficient; defaults to the identity on integers.
            modulus {int, optional} -- Evaluate in 𝔽_p.
        """
        if scalar is None:
            scalar = (lambda c: Fraction(c)) if modulus is None else (lambda c: int(c) % modulus)
        total = Fraction(0) if modulus is None else 0
        for x, c in self._terms.items():
            total += scalar(c) * self.root_datum.character_eval(x, torus, modulus)
        return total if modulus is None else total % modulus

    def to_json(self) -> list:
        return [
            {"x": list(x), "coeff": c.to_json() if isinstance(c, LaurentElement) else c}
            for x, c in self.items()
        ]

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for x, c in self.items():
            label = "S(" + ",".join(str(a) for a in x) + ")"
            parts.append(label if c == 1 else f"({c})·{label}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"RepRingElement({self})"


def _add_term(terms: Dict, key, c) -> None:
    value = terms.get(key, 0) + c
    if value:
        terms[key] = value
    else:
        terms.pop(key, None)


def _as_integer(c: LaurentElement):
    value = c.constant_term()
    return value if c == value else c


class J0Element:
    """
    An element of J₀ (or of ℤ[Γ] ⊗ J₀) as a B₀ × B₀ matrix of RepRingElements.
    """

    __slots__ = ("ring", "matrix")

    def __init__(self, ring: "BasedRing", matrix: np.ndarray):
        self.ring = ring
        self.matrix = matrix

    def entry(self, w1: AffineElement, w2: AffineElement) -> RepRingElement:
        return self.matrix[self.ring.index(w1), self.ring.index(w2)]

    def __add__(self, other: "J0Element") -> "J0Element":
        return J0Element(self.ring, self.matrix + other.matrix)

    def __sub__(self, other: "J0Element") -> "J0Element":
        return J0Element(self.ring, self.matrix - other.matrix)

    def __mul__(self, other) -> "J0Element":
        if isinstance(other, J0Element):
            return self.ring.multiply(self, other)
        return J0Element(self.ring, self.ring._map(lambda e: e * other, self.matrix))

    def __eq__(self, other) -> bool:
        if not isinstance(other, J0Element):
            return NotImplemented
        return all(a == b for a, b in zip(self.matrix.flat, other.matrix.flat))

    __hash__ = None

    def __bool__(self) -> bool:
        return any(bool(e) for e in self.matrix.flat)

    def to_t(self) -> Dict[AffineElement, object]:
        return self.ring.to_t(self)

    def to_json(self) -> dict:
        return {str(z): (c.to_json() if isinstance(c, LaurentElement) else c) for z, c in self.to_t().items()}

    def __str__(self) -> str:
        terms = self.to_t()
        if not terms:
            return "0"
        return " + ".join(f"t[{z}]" if c == 1 else f"({c})·t[{z}]" for z, c in terms.items())


class BasedRing:
    """
    J₀ ≅ Mat_{B₀}(𝒵_ℤ) with t_{w₁w₀p_xw₂⁻¹} ↦ Z_x·I_{w₁,w₂}, entries written over the S_y.

    In the extended mode Z_x = S_x. In the non-extended mode x ranges over Q⁺, B₀ has |W₀|
    elements and Z_x is the central element with C_{w₀p_x} = C_{w₀}Z_x, taken from a KLTable.
    """

    def __init__(self, datum: CellDatum, table: Optional[KLTable] = None):
        self.datum = datum
        self.root_datum = datum.root_datum
        self.table = table
        self.box = datum.box_elements()
        self._indices = {w: i for i, w in enumerate(self.box)}
        self.size = len(self.box)
        self._basis: Dict[Weight, RepRingElement] = {}

    def __repr__(self) -> str:
        return f"BasedRing({self.datum!r})"

    def index(self, w: AffineElement) -> int:
        if w not in self._indices:
            raise DomainError(f"{w} does not lie in B0.")
        return self._indices[w]

    def _map(self, f: Callable, matrix: np.ndarray) -> np.ndarray:
        result = np.empty(matrix.shape, dtype=object)
        for index, e in np.ndenumerate(matrix):
            result[index] = f(e)
        return result

    # Construction.

    def zero(self) -> J0Element:
        matrix = np.empty((self.size, self.size), dtype=object)
        for index in np.ndindex(matrix.shape):
            matrix[index] = RepRingElement.zero(self.root_datum)
        return J0Element(self, matrix)

    def unit(self) -> J0Element:
        """
        The identity Σ_{d ∈ 𝒟} t_d, i.e. the identity matrix.
        """
        element = self.zero()
        for i in range(self.size):
            element.matrix[i, i] = RepRingElement.one(self.root_datum)
        return element

    def basis(self, x: Sequence[int], coeff=1) -> RepRingElement:
        """
        coeff·Z_x, the entry attached to t_{w₀p_x}.

        Raises:
            DomainError -- When x is not a dominant special translation.
            ConfigurationError -- In the non-extended mode without a KLTable.
        """
        x = tuple(int(c) for c in x)
        element = self._basis.get(x)
        if element is None:
            if not self.datum.is_special_translation(x):
                raise DomainError(f"{list(x)} is not a dominant special translation.")
            if self.datum.mode == EXTENDED:
                element = RepRingElement.S(self.root_datum, x)
            elif self.table is None:
                raise ConfigurationError("the non-extended based ring reads its central basis off a KL table.")
            else:
                expansion = self.table.central_expansion(x)
                element = RepRingElement(self.root_datum, {y: _as_integer(c) for y, c in expansion.items()})
            self._basis[x] = element
        if isinstance(coeff, int) and coeff == 1:
            return element
        return element.scale(coeff)

    def coordinates(self, entry: RepRingElement) -> Dict[Weight, object]:
        """
        Rewrites Σ c_y S_y over the basis {Z_x}, peeling off the longest translation first.
        """
        if self.datum.mode == EXTENDED:
            return dict(entry.items())
        result = {}
        while entry:
            x = max((y for y, _ in entry.items()), key=lambda y: (self.datum.translation_length(y), y))
            c = entry.coefficient(x)
            result[x] = c
            entry = entry - self.basis(x, c)
        return result

    def matrix_unit(self, w1: AffineElement, x: Sequence[int], w2: AffineElement, coeff=1) -> J0Element:
        element = self.zero()
        element.matrix[self.index(w1), self.index(w2)] = self.basis(x, coeff)
        return element

    def t(self, z: AffineElement, coeff=1) -> J0Element:
        """
        The basis element t_z.
        """
        factorization = self.datum.c0_factorize(z)
        if factorization is None:
            raise DomainError(f"{z} does not lie in the lowest cell.")
        w1, x, w2 = factorization
        return self.matrix_unit(w1, x, w2, coeff)

    def from_t(self, coefficients: Mapping[AffineElement, object]) -> J0Element:
        element = self.zero()
        for z, c in coefficients.items():
            if c:
                element = element + self.t(z, c)
        return element

    def to_t(self, a: J0Element) -> Dict[AffineElement, object]:
        terms = {}
        for (i, j), entry in np.ndenumerate(a.matrix):
            for x, c in self.coordinates(entry).items():
                terms[self.datum.c0_compose(self.box[i], x, self.box[j])] = c
        return dict(sorted(terms.items()))

    # Products.

    def multiply(self, a: J0Element, b: J0Element) -> J0Element:
        product = self.zero()
        for i in range(self.size):
            for k in range(self.size):
                left = a.matrix[i, k]
                if not left:
                    continue
                for j in range(self.size):
                    right = b.matrix[k, j]
                    if right:
                        product.matrix[i, j] = product.matrix[i, j] + left * right
        return product

    def j_mul(self, a: J0Element, b: J0Element) -> J0Element:
        return self.multiply(a, b)

    def gamma_predict(self, u: AffineElement, up: AffineElement, upp: AffineElement) -> int:
        """
        γ_{u,u',u''} from the factorizations: with u = (w₁, x, w₂), u' = (w₃, x', w₄) and
        u''⁻¹ = (w₆, x''*, w₅), this is δ_{w₂,w₃}δ_{w₄,w₅}δ_{w₁,w₆}·m(x, x', x''*).
        In the non-extended mode m is the coefficient of Z_{x''*} in Z_xZ_{x'}.
        """
        factorizations = []
        for z in (u, up, upp):
            factorization = self.datum.c0_factorize(z)
            if factorization is None:
                raise DomainError(f"{z} does not lie in the lowest cell.")
            factorizations.append(factorization)
        (w1, x, w2), (w3, xp, w4), (w5, xpp, w6) = factorizations
        if w2 != w3 or w4 != w5 or w1 != w6:
            return 0
        target = self.root_datum.dual(xpp)
        if self.datum.mode == EXTENDED:
            return self.root_datum.tensor_multiplicity(x, xp, target)
        return self.coordinates(self.basis(x) * self.basis(xp)).get(target, 0)


def gamma_predict(u: AffineElement, up: AffineElement, upp: AffineElement, table: Optional[KLTable] = None) -> int:
    return BasedRing(u.datum, table).gamma_predict(u, up, upp)


def hecke_product(cell: LowestCell, u: AffineElement, up: AffineElement) -> Dict[AffineElement, int]:
    """
    t_ut_{u'} = Σ_z γ_{u,u',z⁻¹} t_z read off the Hecke algebra: γ_{u,u',z⁻¹} is the coefficient of
    q^{L(w₀)} in h_{u,u',z}.
    """
    terms = {}
    for z, h in cell.table.structure(u, up).items():
        if cell.contains(z):
            value = h.coefficient(cell.a_value)
            if value:
                terms[z] = value
    return dict(sorted(terms.items()))


def product_law_check(cell: LowestCell, pairs: Iterable[Tuple[AffineElement, AffineElement]]) -> Optional[tuple]:
    """
    Compares t_ut_{u'} in the matrix model against the Hecke-side structure constants.

    Returns:
        Optional[tuple] -- The first pair on which they differ, or None.
    """
    ring = BasedRing(cell.datum, cell.table)
    for u, up in pairs:
        if ring.to_t(ring.multiply(ring.t(u), ring.t(up))) != hecke_product(cell, u, up):
            logger.warning(f"Product law fails for t[{u}]·t[{up}].")
            return u, up
    return None


@dataclass
class RankReport:
    """
    Rank of the images {φ(C_w) | l(w) ≤ radius} at a rational specialisation of ℤ[Γ].
    """

    radius: int
    elements: int
    rank: int
    values: List[Fraction]

    @property
    def full_rank(self) -> bool:
        return self.rank == self.elements

    def to_json(self) -> dict:
        return {
            "radius": self.radius,
            "elements": self.elements,
            "rank": self.rank,
            "full_rank": self.full_rank,
            "specialisation": [str(v) for v in self.values],
        }


class JRingHomomorphism:
    """
    φ: 𝓗 → ℤ[Γ] ⊗ J₀ with φ(C_x) = Σ_{d ∈ 𝒟, z ∈ 𝐜₀} h_{x,d,z} t_z, valued in the matrix model.
    """

    def __init__(self, table: KLTable):
        self.table = table
        self.datum = table.datum
        self.cell = LowestCell(table)
        self.ring = BasedRing(self.datum, table)
        self.one = LaurentElement.one(self.datum.gamma_rank)
        self.involutions = self.cell.distinguished_involutions(verify=False)
        self._images: Dict[AffineElement, J0Element] = {}

    def image_of_basis(self, x: AffineElement) -> J0Element:
        cached = self._images.get(x)
        if cached is not None:
            return cached
        image = self.ring.zero()
        for d in self.involutions:
            for z, h in self.table.structure(x, d).items():
                factorization = self.cell.factorization(z)
                if factorization is None:
                    continue
                w1, y, w2 = factorization
                i, j = self.ring.index(w1), self.ring.index(w2)
                image.matrix[i, j] = image.matrix[i, j] + self.ring.basis(y, h)
        self._images[x] = image
        return image

    def __call__(self, h: HeckeElement) -> J0Element:
        result = self.ring.zero()
        for z, a in self.table.to_kl_basis(h).items():
            result = result + self.image_of_basis(z) * a
        return result

    def unit(self) -> J0Element:
        return self.ring.unit() * self.one

    def is_multiplicative(self, x: AffineElement, y: AffineElement) -> bool:
        """
        φ(C_xC_y) = φ(C_x)φ(C_y).
        """
        left = self(self.table.C(x) * self.table.C(y))
        return left == self.image_of_basis(x) * self.image_of_basis(y)

    def is_central_image(self, x: Sequence[int]) -> bool:
        """
        φ(S_x) = S_x·Id.
        """
        expected = self.ring.unit() * RepRingElement.S(self.ring.root_datum, x, self.one)
        return self(self.table.algebra.S(x)) == expected

    def w0_image_matches(self) -> bool:
        """
        φ(C_{w₀}) = Σ_{w ∈ B₀, x} h_{w₀,ww₀,w₀p_x} t_{w₀p_xw⁻¹}.
        """
        datum = self.datum
        expected = self.ring.zero()
        e = self.ring.index(datum.identity)
        for w in self.ring.box:
            expected.matrix[e, self.ring.index(w)] = centre_coefficients(
                self.cell, datum.w0, datum.multiply(w, datum.w0)
            ).scale(self.one)
        return self.image_of_basis(datum.w0) == expected

    def injectivity_check(self, radius: int, seed: int = 0, attempts: int = 3, progress: bool = False) -> RankReport:
        """
        Linear independence of {φ(C_w) | l(w) ≤ radius}, decided by an exact rank at random rational
        specialisations of ℤ[Γ]; full rank at one specialisation gives independence over Frac ℤ[Γ].
        """
        elements = self.datum.enumerate_ball(radius)
        images = [self.image_of_basis(w) for w in tqdm(elements, desc="Images of the KL basis", disable=not progress)]
        coordinates = [img.to_t() for img in images]
        columns = sorted({z for c in coordinates for z in c})
        rng = np.random.default_rng(seed)
        best = RankReport(radius, len(elements), -1, [])
        for _ in range(attempts):
            values = [
                Fraction(int(rng.integers(2, 40)), int(rng.integers(1, 40))) for _ in range(self.datum.gamma_rank)
            ]
            rows = [[c[z].evaluate(values) if z in c else 0 for z in columns] for c in coordinates]
            rank = exact_rank(rows)
            if rank > best.rank:
                best = RankReport(radius, len(elements), rank, values)
            if best.full_rank:
                break
        logger.info(f"φ-images of the ball of radius {radius}: rank {best.rank} of {best.elements}.")
        return best


def phi(h: HeckeElement, table: KLTable) -> J0Element:
    return JRingHomomorphism(table)(h)


def phi_injectivity_check(radius: int, table: KLTable, seed: int = 0) -> RankReport:
    return JRingHomomorphism(table).injectivity_check(radius, seed=seed)


def centre_coefficients(cell: LowestCell, a: AffineElement, b: AffineElement) -> RepRingElement:
    """
    Σ_x h_{a,b,w₀p_x} Z_x, reading the coefficients of C_aC_b on the elements w₀p_x.
    """
    datum = cell.datum
    ring = BasedRing(datum, cell.table)
    identity = datum.identity
    result = RepRingElement.zero(datum.root_datum)
    for z, h in cell.table.structure(a, b).items():
        factorization = cell.factorization(z)
        if factorization is not None and factorization[0] == identity and factorization[2] == identity:
            result = result + ring.basis(factorization[1], h)
    return result


def centre_check(table: KLTable, x: Sequence[int], y: Sequence[int]) -> bool:
    """
    S_x is central and S_xS_y = Σ_z m(x, y, z) S_z inside the Hecke algebra.
    """
    algebra = table.algebra
    S_x = algebra.S(x)
    if not algebra.commutes_with_generators(S_x):
        return False
    expected = algebra.zero()
    for z, m in table.datum.root_datum.tensor_decompose(x, y).items():
        expected = expected + algebra.S(z).scale(m)
    return S_x * algebra.S(y) == expected


def expand_in_delta(h: HeckeElement, table: KLTable) -> Dict[AffineElement, RepRingElement]:
    """
    Writes an element of 𝓗C_{w₀} over the free 𝒵-basis {C_{ww₀} | w ∈ B₀}, using
    C_{w₁w₀p_x} = Z_xC_{w₁w₀}.

    Raises:
        DomainError -- When h does not lie in 𝓗C_{w₀}.
    """
    cell = LowestCell(table)
    datum = table.datum
    ring = BasedRing(datum, table)
    coordinates = {w: RepRingElement.zero(datum.root_datum) for w in datum.box_elements()}
    for z, c in table.to_kl_basis(h).items():
        factorization = cell.factorization(z)
        if factorization is None or factorization[2] != datum.identity:
            raise DomainError(f"C_{z} occurs, so the element does not lie in HC_w0.")
        w1, x, _ = factorization
        coordinates[w1] = coordinates[w1] + ring.basis(x, c)
    return coordinates


def eta_check(table: KLTable, w: AffineElement, phi_map: Optional[JRingHomomorphism] = None) -> bool:
    """
    η(φ(C_w)) agrees with left multiplication by C_w on each basis vector C_{w₃w₀} of 𝓗C_{w₀},
    where η(t_{w₁w₀p_xw₂⁻¹})C_{w₃w₀} = δ_{w₂,w₃}Z_xC_{w₁w₀}.
    """
    phi_map = phi_map or JRingHomomorphism(table)
    ring = phi_map.ring
    image = phi_map.image_of_basis(w)
    datum = table.datum
    for w3 in ring.box:
        direct = expand_in_delta(table.C(w) * table.C(datum.multiply(w3, datum.w0)), table)
        column = ring.index(w3)
        for w1 in ring.box:
            if direct[w1] != image.matrix[ring.index(w1), column]:
                logger.warning(f"η(φ(C_{w})) differs from C_{w} on C_({w3}·w0) at {w1}.")
                return False
    return True


@dataclass(frozen=True)
class GammaRecord:
    u: AffineElement
    up: AffineElement
    upp: AffineElement
    hecke: int
    predicted: int

    @property
    def agrees(self) -> bool:
        return self.hecke == self.predicted

    def to_json(self) -> dict:
        return {"u": str(self.u), "u'": str(self.up), "u''": str(self.upp), "hecke": self.hecke, "predicted": self.predicted}


def gamma_agreement(cell: LowestCell, radius: int, progress: bool = False) -> List[GammaRecord]:
    """
    γ_{u,u',u''} from the Hecke algebra and from tensor multiplicities, for all triples of lowest-cell
    elements in the ball whose first two members multiply inside the table.
    """
    datum = cell.datum
    ring = BasedRing(datum, cell.table)
    elements = list(cell.elements(radius))
    records = []
    for u in tqdm(elements, desc="Comparing γ", disable=not progress):
        for up in elements:
            if datum.length(u) + datum.length(up) > cell.table.radius:
                continue
            for upp in elements:
                records.append(GammaRecord(u, up, upp, cell.gamma(u, up, upp), ring.gamma_predict(u, up, upp)))
    return records
