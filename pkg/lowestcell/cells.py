"""
Asymptotic data of the lowest two-sided cell 𝐜₀: the degrees Δ(z), the integers n_z, the
structure constants γ, the distinguished involutions and the left cells.
"""

import logging

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import networkx as nx

from tqdm import tqdm

from lowestcell.affine_weyl import AffineElement, Factorization
from lowestcell.exceptions import DomainError, TruncationError, VerificationError
from lowestcell.gamma import NEG_INF, GammaElement
from lowestcell.kl_table import KLTable

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AsymptoticData:
    """
    Per-element record for z in the lowest cell.
    """

    element: AffineElement
    factorization: Factorization
    a_value: GammaElement
    delta: object
    n: int
    left_cell: AffineElement
    distinguished: bool
    a_source: str = field(default="lowest cell (a = L(w0))")

    def to_json(self) -> dict:
        w1, x, w2 = self.factorization
        return {
            "element": str(self.element),
            "factorization": {"w1": str(w1), "x": list(x), "w2": str(w2)},
            "a": self.a_value.to_json(),
            "a_source": self.a_source,
            "delta": self.delta.to_json(),
            "n": self.n,
            "left_cell": str(self.left_cell),
            "distinguished": self.distinguished,
        }


class LowestCell:
    """
    Queries about the lowest two-sided cell answered from a KLTable.
    """

    def __init__(self, table: KLTable):
        self.table = table
        self.datum = table.datum
        self.algebra = table.algebra
        self.w0 = self.datum.w0
        self.a_value = self.datum.weight_length(self.w0)
        self._factorizations: Dict[AffineElement, Optional[Factorization]] = {}

    # Membership and labels.

    def factorization(self, z: AffineElement) -> Optional[Factorization]:
        if z not in self._factorizations:
            self._factorizations[z] = self.datum.c0_factorize(z)
        return self._factorizations[z]

    def contains(self, z: AffineElement) -> bool:
        return self.factorization(z) is not None

    def _require(self, *elements: AffineElement) -> None:
        for z in elements:
            if not self.contains(z):
                raise DomainError(f"{z} does not lie in the lowest cell.")

    def left_cell_of(self, z: AffineElement) -> AffineElement:
        """
        The B₀-label w₂ of z = w₁w₀p_xw₂⁻¹; z, z' lie in the same left cell iff their labels agree.
        """
        self._require(z)
        return self.factorization(z)[2]

    def right_cell_of(self, z: AffineElement) -> AffineElement:
        self._require(z)
        return self.factorization(z)[0]

    def distinguished_of(self, w: AffineElement) -> AffineElement:
        """
        The distinguished involution w·w₀·w⁻¹ of the left cell labelled w.
        """
        return self.datum.product(w, self.w0, self.datum.inverse(w))

    def elements(self, radius: Optional[int] = None) -> Dict[AffineElement, Factorization]:
        radius = self.table.radius if radius is None else radius
        elements = self.datum.c0_elements(radius)
        self._factorizations.update(elements)
        return elements

    # Degrees.

    def delta(self, z: AffineElement):
        """
        Δ(z) = -deg p̃_{e,z} (POS_INF when p̃_{e,z} = 0).
        """
        return -self.table.p_tilde(self.datum.identity, z).deg()

    def n(self, z: AffineElement) -> int:
        """
        The leading coefficient n_z of p̃_{e,z}.
        """
        return self.table.p_tilde(self.datum.identity, z).leading_coefficient()

    def gamma(self, x: AffineElement, y: AffineElement, z: AffineElement) -> int:
        """
        γ_{x,y,z}: the coefficient of q^{L(w₀)} in h_{x,y,z⁻¹}.
        """
        self._require(x, y, z)
        return self.table.h(x, y, self.datum.inverse(z)).coefficient(self.a_value)

    def gamma_by_trace(self, x: AffineElement, y: AffineElement, z: AffineElement) -> int:
        """
        γ_{x,y,z} read off as the coefficient of q_{w₀} in τ(T̃_xT̃_yT̃_z).
        """
        self._require(x, y, z)
        algebra = self.algebra
        product = algebra.T(x) * algebra.T(y) * algebra.T(z)
        return algebra.tau(product).coefficient(self.a_value)

    def distinguished_involutions(self, verify: bool = True) -> List[AffineElement]:
        """
        𝒟 = {ww₀w⁻¹ | w ∈ B₀}. With `verify`, each d is checked to satisfy d² = e, Δ(d) = L(w₀) and n_d = 1.
        """
        involutions = []
        for w in self.datum.box_elements():
            d = self.distinguished_of(w)
            if verify:
                if self.datum.length(d) > self.table.radius:
                    raise TruncationError(f"the involution {d} lies outside the table", self.table.radius, self.datum.length(d))
                if not self.datum.multiply(d, d).is_identity():
                    raise VerificationError(f"{d} is not an involution.", witness=d)
                if self.delta(d) != self.a_value or self.n(d) != 1:
                    raise VerificationError(f"{d} has Δ = {self.delta(d)}, n = {self.n(d)}.", witness=d)
            involutions.append(d)
        return sorted(involutions)

    def empirical_a(self, z: AffineElement, radius: Optional[int] = None):
        """
        max deg h_{x,y,z} over x, y in the ball of the given radius whose product fits in the table.
        This is a lower bound for a(z).
        """
        radius = self.table.radius if radius is None else radius
        datum = self.datum
        ball = datum.enumerate_ball(radius)
        best = NEG_INF
        target = datum.length(z)
        for x in ball:
            for y in ball:
                total = datum.length(x) + datum.length(y)
                if total < target or total > self.table.radius:
                    continue
                degree = self.table.h(x, y, z).deg()
                if degree > best:
                    best = degree
        return best

    # Left cells.

    def left_preorder_graph(self, radius: Optional[int] = None, progress: bool = False) -> nx.DiGraph:
        """
        The relation z' ≤_L z generated by C_z' occurring in C_sC_z (s ∈ S) or z' = πz, restricted to the ball.
        An edge z → z' means z' ≤_L z.
        """
        radius = self.table.radius - 1 if radius is None else radius
        if radius + 1 > self.table.radius:
            raise TruncationError("the left preorder needs products one step beyond the ball", self.table.radius, radius + 1)
        datum = self.datum
        graph = nx.DiGraph()
        for z in tqdm(datum.enumerate_ball(radius), desc="Left preorder", disable=not progress):
            graph.add_node(z)
            for s in datum.generators:
                for zp in self.table.structure(s, z):
                    if datum.length(zp) <= radius:
                        graph.add_edge(z, zp)
            for pi in datum.omega_elements[1:]:
                graph.add_edge(z, datum.multiply(pi, z))
        return graph

    def left_cell_census(self, radius: Optional[int] = None) -> Dict[AffineElement, List[AffineElement]]:
        """
        Groups the lowest cell in the ball by left-cell label.
        """
        census: Dict[AffineElement, List[AffineElement]] = {w: [] for w in self.datum.box_elements()}
        for z, (_, _, w2) in self.elements(radius).items():
            census[w2].append(z)
        return census

    def asymptotic_data(self, radius: Optional[int] = None) -> List[AsymptoticData]:
        involutions = set(self.distinguished_of(w) for w in self.datum.box_elements())
        records = []
        for z, factorization in self.elements(radius).items():
            records.append(
                AsymptoticData(
                    element=z,
                    factorization=factorization,
                    a_value=self.a_value,
                    delta=self.delta(z),
                    n=self.n(z),
                    left_cell=factorization[2],
                    distinguished=z in involutions,
                )
            )
        return records


def gamma_const(x: AffineElement, y: AffineElement, z: AffineElement, table: KLTable) -> int:
    return LowestCell(table).gamma(x, y, z)


def distinguished_involutions(table: KLTable) -> List[AffineElement]:
    return LowestCell(table).distinguished_involutions()


def left_cell_of(z: AffineElement) -> AffineElement:
    factorization = z.datum.c0_factorize(z)
    if factorization is None:
        raise DomainError(f"{z} does not lie in the lowest cell.")
    return factorization[2]


def empirical_a(z: AffineElement, radius: int, table: KLTable):
    return LowestCell(table).empirical_a(z, radius)


def _add_tensor(target: Dict[Tuple, int], a, b) -> None:
    for exp_a, c_a in a.items():
        for exp_b, c_b in b.items():
            key = (tuple(exp_a), tuple(exp_b))
            value = target.get(key, 0) + c_a * c_b
            if value:
                target[key] = value
            else:
                del target[key]


def tensor_identity_sides(
    cell: LowestCell, x: AffineElement, xp: AffineElement, w: AffineElement
) -> Tuple[Dict[AffineElement, Dict[Tuple, int]], Dict[AffineElement, Dict[Tuple, int]]]:
    """
    Both sides of Σ_{y'} h_{x,y',y} ⊗ h_{w,x',y'} = Σ_{y'} h_{x,w,y'} ⊗ h_{y',x',y} (y' in the lowest cell),
    for every y at once, as maps y → {(exponent, exponent): coefficient}.
    """
    table = cell.table
    left: Dict[AffineElement, Dict[Tuple, int]] = {}
    for yp, b in table.structure(w, xp).items():
        if cell.contains(yp):
            for y, a in table.structure(x, yp).items():
                _add_tensor(left.setdefault(y, {}), a, b)
    right: Dict[AffineElement, Dict[Tuple, int]] = {}
    for yp, a in table.structure(x, w).items():
        if cell.contains(yp):
            for y, b in table.structure(yp, xp).items():
                _add_tensor(right.setdefault(y, {}), a, b)
    return {y: t for y, t in left.items() if t}, {y: t for y, t in right.items() if t}


def weight_independence_check(first: LowestCell, second: LowestCell, radius: int) -> Optional[tuple]:
    """
    Compares the lowest cells of one group under two weight functions: the same elements, the same
    left cells and the same γ_{x,y,z} on every pair x, y from the ball whose product fits both tables.

    Returns:
        Optional[tuple] -- The first disagreeing element or pair, or None.
    """
    if first.datum.root_datum != second.datum.root_datum or first.datum.mode != second.datum.mode:
        raise DomainError("the two cell data do not describe the same group.")

    def transfer(z: AffineElement) -> AffineElement:
        return second.datum.element(z.translation, z.finite, check=False)

    elements = first.elements(radius)
    others = second.elements(radius)
    if sorted((z.translation, z.finite) for z in elements) != sorted((z.translation, z.finite) for z in others):
        return ("elements",)
    for z, (w1, x, w2) in elements.items():
        if second.factorization(transfer(z)) != (transfer(w1), x, transfer(w2)):
            return (z,)

    limit = min(first.table.radius, second.table.radius)
    for u in elements:
        for v in elements:
            if first.datum.length(u) + first.datum.length(v) > limit:
                continue
            left = {
                (z.translation, z.finite): h.coefficient(first.a_value)
                for z, h in first.table.structure(u, v).items()
                if first.contains(z) and h.coefficient(first.a_value)
            }
            right = {
                (z.translation, z.finite): h.coefficient(second.a_value)
                for z, h in second.table.structure(transfer(u), transfer(v)).items()
                if second.contains(z) and h.coefficient(second.a_value)
            }
            if left != right:
                return u, v
    return None
