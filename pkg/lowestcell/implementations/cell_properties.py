"""
The checks run by `lowestcell verify`. Each class decides one property of the lowest two-sided cell
tuple by tuple on the ball of a given radius.
"""

from typing import List, Set, Tuple

import networkx as nx

from lowestcell.affine_weyl import AffineElement
from lowestcell.cell_property import BaseCellProperty
from lowestcell.cells import tensor_identity_sides


class LowestCellProperty(BaseCellProperty):
    """
    Shared helpers for the concrete checks.
    """

    def l(self, w: AffineElement) -> int:
        return self.datum.length(w)

    def c0(self) -> List[AffineElement]:
        return list(self.cell.elements(self.radius))

    def involutions(self) -> List[AffineElement]:
        return sorted(self.cell.distinguished_of(w) for w in self.datum.box_elements())

    def inv(self, w: AffineElement) -> AffineElement:
        return self.datum.inverse(w)

    def nonzero_triples(self) -> List[Tuple[AffineElement, AffineElement, AffineElement]]:
        """
        Triples (x, y, z) from the lowest cell in the ball with z⁻¹ in the support of C_xC_y, i.e. the only
        triples where γ_{x,y,z} can be nonzero.
        """
        elements = self.c0()
        members = set(elements)
        triples = []
        for x in elements:
            for y in elements:
                if not self.fits(self.l(x), self.l(y)):
                    continue
                for z_inverse in self.table.structure(x, y):
                    z = self.inv(z_inverse)
                    if z in members:
                        triples.append((x, y, z))
        return triples


class LowerBoundOnDelta(LowestCellProperty):
    property_id = "P1"
    statement = "Δ(z) ≥ a(z) = L(w0) for every z in the lowest cell."

    def tuples(self):
        return [(z,) for z in self.c0()]

    def check(self, args) -> bool:
        (z,) = args
        return self.cell.delta(z) >= self.cell.a_value


class InverseOnInvolutions(LowestCellProperty):
    property_id = "P2"
    statement = "γ_{x,y,d} ≠ 0 with d distinguished forces x = y⁻¹."

    def tuples(self):
        involutions = self.involutions()
        elements = self.c0()
        return [
            (x, y, d)
            for x in elements
            for y in elements
            if self.fits(self.l(x), self.l(y))
            for d in involutions
        ]

    def check(self, args) -> bool:
        x, y, d = args
        return self.cell.gamma(x, y, d) == 0 or x == self.inv(y)


class UniqueInvolution(LowestCellProperty):
    property_id = "P3"
    statement = "For every y there is exactly one distinguished d with γ_{y⁻¹,y,d} ≠ 0."

    def tuples(self):
        return [(y,) for y in self.c0() if self.fits(self.l(y), self.l(y))]

    def check(self, args) -> bool:
        (y,) = args
        count = sum(1 for d in self.involutions() if self.cell.gamma(self.inv(y), y, d) != 0)
        return count == 1


class LowestCellIsALevel(LowestCellProperty):
    property_id = "P4"
    statement = "deg h_{z,d,z} = L(w0) on the lowest cell; deg h_{x,y,z} ≤ L(w0), strictly outside it."
    note = (
        "Degrees outside the lowest cell are empirical: every pair from the ball of half the table radius is swept."
        " Pass sample_size to check a random subset instead."
    )

    def tuples(self):
        tuples = []
        for z in self.c0():
            d = self.cell.distinguished_of(self.cell.left_cell_of(z))
            if self.fits(self.l(z), self.l(d)):
                tuples.append(("cell", z, d))
        ball = self.datum.enumerate_ball(self.table.radius // 2)
        tuples += [("pair", x, y) for x in ball for y in ball if self.l(x) + self.l(y) <= self.table.radius]
        return tuples

    def check(self, args) -> bool:
        a = self.cell.a_value
        if args[0] == "cell":
            _, z, d = args
            return self.table.h(z, d, z).deg() == a
        _, x, y = args
        for z, h in self.table.structure(x, y).items():
            degree = h.deg()
            if degree > a or (degree == a and not self.cell.contains(z)):
                return False
        return True


class InvolutionCoefficientOne(LowestCellProperty):
    property_id = "P5"
    statement = "γ_{y⁻¹,y,d} ≠ 0 implies γ_{y⁻¹,y,d} = n_d = 1."

    def tuples(self):
        return [(y, d) for y in self.c0() if self.fits(self.l(y), self.l(y)) for d in self.involutions()]

    def check(self, args) -> bool:
        y, d = args
        value = self.cell.gamma(self.inv(y), y, d)
        return value == 0 or (value == 1 and self.cell.n(d) == 1)


class InvolutionsSquareToOne(LowestCellProperty):
    property_id = "P6"
    statement = "d² = e for every distinguished involution d."

    def tuples(self):
        return [(d,) for d in self.involutions()]

    def check(self, args) -> bool:
        (d,) = args
        return self.datum.multiply(d, d).is_identity()


class CyclicSymmetry(LowestCellProperty):
    property_id = "P7"
    statement = "γ_{x,y,z} = γ_{y,z,x}."
    note = "Triples on which both sides vanish for support reasons are not listed."

    def tuples(self):
        candidates: Set[Tuple] = set()
        for x, y, z in self.nonzero_triples():
            for triple in ((x, y, z), (z, x, y)):
                a, b, c = triple
                if self.l(a) + self.l(b) <= self.table.radius and self.l(b) + self.l(c) <= self.table.radius:
                    candidates.add(triple)
                else:
                    self.skipped += 1
        return sorted(candidates, key=lambda t: tuple(e.sort_key for e in t))

    def check(self, args) -> bool:
        x, y, z = args
        return self.cell.gamma(x, y, z) == self.cell.gamma(y, z, x)


class LeftCellMatching(LowestCellProperty):
    property_id = "P8"
    statement = "γ_{x,y,z} ≠ 0 implies x ~L y⁻¹, y ~L z⁻¹ and z ~L x⁻¹."

    def tuples(self):
        return self.nonzero_triples()

    def check(self, args) -> bool:
        x, y, z = args
        if self.cell.gamma(x, y, z) == 0:
            return True
        label = self.cell.left_cell_of
        return (
            label(x) == label(self.inv(y))
            and label(y) == label(self.inv(z))
            and label(z) == label(self.inv(x))
        )


class OneInvolutionPerLeftCell(LowestCellProperty):
    property_id = "P13"
    statement = "Each left cell contains exactly one distinguished d, and γ_{x⁻¹,x,d} ≠ 0 for every x in it."

    def tuples(self):
        tuples = [("unique", w) for w in self.datum.box_elements()]
        tuples += [("nonzero", x) for x in self.c0() if self.fits(self.l(x), self.l(x))]
        return tuples

    def check(self, args) -> bool:
        kind, element = args
        if kind == "unique":
            return sum(1 for d in self.involutions() if self.cell.left_cell_of(d) == element) == 1
        d = self.cell.distinguished_of(self.cell.left_cell_of(element))
        return self.cell.gamma(self.inv(element), element, d) != 0


class TensorIdentity(LowestCellProperty):
    property_id = "P15"
    statement = "Σ_{y'} h_{x,y',y} ⊗ h_{w,x',y'} = Σ_{y'} h_{x,w,y'} ⊗ h_{y',x',y} over y' in the lowest cell."
    note = "x and x' range over a ball of the sample radius; w over the lowest cell."

    def tuples(self):
        ball = self.datum.enumerate_ball(self.sample_radius)
        return [
            (x, xp, w)
            for w in self.c0()
            for x in ball
            for xp in ball
            if self.fits(self.l(x), self.l(w), self.l(xp))
        ]

    def check(self, args) -> bool:
        x, xp, w = args
        left, right = tensor_identity_sides(self.cell, x, xp, w)
        return left == right


class BoxDegreeBound(LowestCellProperty):
    property_id = "DEG32"
    statement = "For u in the box and y in W0 \\ {e}, every coefficient of T̃_uT̃_y has degree < L(y)."

    def tuples(self):
        box = [u for u in self.datum.box_elements() if self.datum.omega_index(u) == 0]
        finite = [self.datum.finite_element(v) for v in range(1, len(self.datum.weyl_group))]
        return [(u, y) for u in box for y in sorted(finite)]

    def check(self, args) -> bool:
        u, y = args
        algebra = self.cell.algebra
        bound = self.datum.weight_length(y)
        return all(c.deg() < bound for _, c in (algebra.T(u) * algebra.T(y)).items())


class QuarterDegreeBound(LowestCellProperty):
    property_id = "DEG33"
    statement = "For u in the box, u' in the dominant quarter and y < w0, T̃_uT̃_yT̃_{u'⁻¹} has degrees < L(yw0)."

    def tuples(self):
        datum = self.datum
        box = [u for u in datum.box_elements() if datum.omega_index(u) == 0]
        quarter = [w for w in datum.enumerate_ball(self.radius) if datum.omega_index(w) == 0 and datum.is_in_U0(w)]
        finite = [datum.finite_element(v) for v in range(len(datum.weyl_group)) if v != datum.weyl_group.longest]
        return [(u, y, up) for u in box for y in sorted(finite) for up in quarter]

    def check(self, args) -> bool:
        u, y, up = args
        algebra = self.cell.algebra
        bound = self.datum.weight_length(self.datum.multiply(y, self.datum.w0))
        product = algebra.T(u) * algebra.T(y) * algebra.T(self.inv(up))
        return all(c.deg() < bound for _, c in product.items())


class FlatDuality(LowestCellProperty):
    property_id = "FLAT"
    statement = "(C_{w1 w0 p_x w2⁻¹})♭ = C_{w2 w0 p_x* w1⁻¹} and S_x♭ = S_x*."

    def tuples(self):
        tuples = [("cell", z) for z in self.c0()]
        tuples += [("centre", x) for x in self.datum.dominant_translations(2)]
        return tuples

    def check(self, args) -> bool:
        kind, value = args
        algebra = self.cell.algebra
        if kind == "centre":
            return algebra.flat(algebra.S(value)) == algebra.S(self.datum.root_datum.dual(value))
        z = value
        w1, x, w2 = self.cell.factorization(z)
        dual = self.datum.root_datum.dual(x)
        if self.cell.factorization(self.inv(z)) != (w2, dual, w1):
            return False
        return algebra.flat(self.table.C(z)) == self.table.C(self.inv(z))


class LeftPreorderConsistency(LowestCellProperty):
    property_id = "LPRE"
    statement = "Strongly connected components of the ≤L relation inside the ball never join two left cells of the lowest cell."
    note = "The preorder closure is computed inside the ball only."

    def tuples(self):
        radius = min(self.radius, self.table.radius - 1)
        graph = self.cell.left_preorder_graph(radius, progress=self.progress)
        components = [tuple(sorted(c)) for c in nx.strongly_connected_components(graph)]
        return sorted(components, key=lambda c: c[0].sort_key)

    def check(self, args) -> bool:
        labels = {self.cell.left_cell_of(z) for z in args if self.cell.contains(z)}
        return len(labels) <= 1
