import logging
import threading

from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Mapping, Sequence, Tuple

from tqdm import tqdm

from lowestcell.affine_weyl import EXTENDED, AffineElement, CellDatum
from lowestcell.exceptions import DomainError, TruncationError, VerificationError
from lowestcell.gamma import LaurentElement, symmetrize
from lowestcell.hecke import HeckeAlgebra, HeckeElement, _accumulate

logger = logging.getLogger(__name__)


class KLTable:
    """
    The generalized Kazhdan-Lusztig basis {C_w} on the ball of a given radius, stored through the
    coefficients p̃_{y,w} of C_w = Σ_y p̃_{y,w} T̃_y, together with memoised structure constants h_{x,y,z}.

    Only elements of W' are computed by the recursion; C_{πw} = T̃_π C_w for π ∈ Ω.
    """

    def __init__(
        self,
        algebra: HeckeAlgebra,
        radius: int,
        verify: bool = True,
        threads: int = 1,
        progress: bool = False,
    ):
        """
        Builds the table.

        Arguments:
            algebra {HeckeAlgebra} -- The Hecke algebra (or a CellDatum, from which one is built).
            radius {int} -- Largest length for which C_w is computed.
            verify {bool, optional} -- Re-check bar invariance and triangularity of every C_w. Defaults to True.
            threads {int, optional} -- Worker threads per length stratum. Defaults to 1.
            progress {bool, optional} -- Show a progress bar over the strata. Defaults to False.
        """
        if isinstance(algebra, CellDatum):
            algebra = HeckeAlgebra(algebra)
        self.algebra = algebra
        self.datum = algebra.datum
        self.radius = radius
        self.verify = verify
        self.threads = max(1, int(threads))
        self._basis: Dict[AffineElement, HeckeElement] = {}
        self._structure: Dict[tuple, Dict[AffineElement, LaurentElement]] = {}
        self._central: Dict[Tuple[int, ...], Dict[Tuple[int, ...], LaurentElement]] = {}
        self._lock = threading.Lock()
        self._build(progress)

    def __repr__(self) -> str:
        return f"KLTable({self.datum!r}, radius={self.radius})"

    def _build(self, progress: bool) -> None:
        datum = self.datum
        self._basis[datum.identity] = self.algebra.one()
        strata = range(1, self.radius + 1)
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            for n in tqdm(strata, desc="Computing KL basis", disable=not progress):
                stratum = [w for w in datum.stratum(n) if datum.omega_index(w) == 0]
                results = list(pool.map(self._compute, stratum)) if self.threads > 1 else map(self._compute, stratum)
                for w, element in zip(stratum, results):
                    self._basis[w] = element
        logger.info(f"Computed {len(self._basis)} KL basis elements of {datum.root_datum.name} up to length {self.radius}.")

    def _compute(self, w: AffineElement) -> HeckeElement:
        datum = self.datum
        algebra = self.algebra
        s = min(datum.left_descents(w))
        v = datum.multiply(datum.generators[s], w)
        previous = self._basis[v]

        # (T̃_s + q_s⁻¹)·C_{sw} is bar invariant with leading term T̃_w.
        product = algebra.left_multiply_generator(s, previous) + previous.scale(algebra.q(datum.generators[s]).bar())
        terms = dict(product._terms)
        for n in range(datum.length(w) - 1, -1, -1):
            for z in sorted(z for z in terms if datum.length(z) == n):
                c = terms.get(z)
                if c is None or not c.nonnegative_part():
                    continue
                correction = symmetrize(c)
                for y, p in self._basis[z]._terms.items():
                    _accumulate(terms, y, -(correction * p))
        element = HeckeElement._raw(algebra, terms)
        if self.verify:
            self._check_defining_conditions(w, element)
        return element

    def _check_defining_conditions(self, w: AffineElement, element: HeckeElement) -> None:
        if element.coefficient(w) != 1:
            raise VerificationError(f"C_{w} does not have leading coefficient 1.", witness=w)
        for y, c in element._terms.items():
            if y != w and not c.is_strictly_negative():
                raise VerificationError(f"p̃_{{{y},{w}}} = {c} has nonnegative exponents.", witness=(y, w))
        if element.bar() != element:
            raise VerificationError(f"C_{w} is not bar invariant.", witness=w)

    # Basis.

    def _require(self, length: int, what: str) -> None:
        if length > self.radius:
            raise TruncationError(f"{what} exceeds the table", radius=self.radius, required_radius=length)

    def C(self, w: AffineElement) -> HeckeElement:
        """
        Returns the Kazhdan-Lusztig basis element C_w.
        """
        cached = self._basis.get(w)
        if cached is not None:
            return cached
        self._require(self.datum.length(w), f"C_{w}")
        pi = self.datum.omega_part(w)
        rest = self.datum.multiply(self.datum.inverse(pi), w)
        element = self.algebra.left_multiply_omega(pi, self._basis[rest])
        self._basis[w] = element
        return element

    def kl_element(self, w: AffineElement) -> HeckeElement:
        return self.C(w)

    def p_tilde(self, y: AffineElement, w: AffineElement) -> LaurentElement:
        return self.C(w).coefficient(y)

    def p(self, y: AffineElement, w: AffineElement) -> LaurentElement:
        """
        p_{y,w} = q_w·p̃_{y,w}, the coefficient of T_y in C_w up to q_y.
        """
        return self.algebra.q(w) * self.p_tilde(y, w)

    def elements(self) -> List[AffineElement]:
        return self.datum.enumerate_ball(self.radius)

    # Expansion in the KL basis.

    def to_kl_basis(self, h: HeckeElement) -> Dict[AffineElement, LaurentElement]:
        """
        Writes h = Σ_z a_z C_z by peeling off the longest remaining term.

        Raises:
            TruncationError -- When h has a term longer than the table radius.
        """
        datum = self.datum
        terms = dict(h._terms)
        if not terms:
            return {}
        longest = max(datum.length(w) for w in terms)
        self._require(longest, "an element of length " + str(longest))
        result: Dict[AffineElement, LaurentElement] = {}
        for n in range(longest, -1, -1):
            for z in sorted(z for z in terms if datum.length(z) == n):
                a = terms.get(z)
                if a is None:
                    continue
                result[z] = a
                for y, p in self.C(z)._terms.items():
                    _accumulate(terms, y, -(a * p))
        return dict(sorted(result.items()))

    def from_kl_basis(self, coefficients: Mapping[AffineElement, LaurentElement]) -> HeckeElement:
        result = self.algebra.zero()
        for z, a in coefficients.items():
            result = result + self.C(z).scale(a)
        return result

    def structure(self, x: AffineElement, y: AffineElement) -> Dict[AffineElement, LaurentElement]:
        """
        The structure constants h_{x,y,z} of C_xC_y = Σ_z h_{x,y,z} C_z.
        """
        key = (x, y)
        cached = self._structure.get(key)
        if cached is not None:
            return cached
        self._require(self.datum.length(x) + self.datum.length(y), f"the product C_{x}·C_{y}")
        result = self.to_kl_basis(self.C(x) * self.C(y))
        with self._lock:
            self._structure[key] = result
        return result

    def structure_h(self, x: AffineElement, y: AffineElement) -> Dict[AffineElement, LaurentElement]:
        return self.structure(x, y)

    def h(self, x: AffineElement, y: AffineElement, z: AffineElement) -> LaurentElement:
        return self.structure(x, y).get(z, self.algebra.zero_scalar)

    # Lowest cell decompositions.

    def E(self, w: AffineElement) -> HeckeElement:
        """
        E_w = Σ p̃_{uw₀,ww₀} T̃_u over u with l(uw₀) = l(u) + l(w₀); defined for w ∈ U₀.
        """
        datum = self.datum
        if not datum.is_in_U0(w):
            raise DomainError(f"{w} does not lie in U0.")
        w0 = datum.w0
        length_w0 = datum.length(w0)
        terms = {}
        for y, p in self.C(datum.multiply(w, w0))._terms.items():
            u = datum.multiply(y, w0)
            if datum.length(y) == datum.length(u) + length_w0:
                terms[u] = p
        return HeckeElement._raw(self.algebra, terms)

    def F(self, w: AffineElement) -> HeckeElement:
        """
        F_w, the image of E_w under T̃_u ↦ T̃_{u⁻¹}.
        """
        return self.algebra.flat(self.E(w))

    E_elem = E
    F_elem = F

    def central_expansion(self, x: Sequence[int]) -> Dict[Tuple[int, ...], LaurentElement]:
        """
        The coefficients c_y of the central element Z_x = Σ_y c_y S_y with C_{w₀p_x} = C_{w₀}Z_x.

        In the extended mode Z_x = S_x. In the non-extended mode the coefficients are read off the
        table by peeling the longest term w₀p_y off C_{w₀p_x} - Σ c_{y'} C_{w₀}S_{y'}; for affine A1
        with L(s₀) < L(s₁) this gives Z_2 = S_2 - S_0.

        Raises:
            DomainError -- When x is not a dominant special translation.
            VerificationError -- When C_{w₀p_x} does not lie in C_{w₀}𝒵.
        """
        datum = self.datum
        x = tuple(int(c) for c in x)
        if not datum.is_special_translation(x):
            raise DomainError(f"{list(x)} is not a dominant special translation.")
        cached = self._central.get(x)
        if cached is not None:
            return cached
        one = LaurentElement.one(datum.gamma_rank)
        if datum.mode == EXTENDED:
            self._central[x] = {x: one}
            return self._central[x]

        C_w0 = self.C(datum.w0)
        residual = self.C(datum.c0_compose(datum.identity, x, datum.identity))
        coefficients: Dict[Tuple[int, ...], LaurentElement] = {}
        while residual:
            top = max(residual.support(), key=lambda w: (datum.length(w), w))
            factorization = datum.c0_factorize(top)
            if factorization is None or factorization[0] != datum.identity or factorization[2] != datum.identity:
                raise VerificationError(f"C_(w0 p_{list(x)}) leaves C_w0·Z at {top}.", witness=list(x))
            y = factorization[1]
            c = residual.coefficient(top)
            coefficients[y] = c
            residual = residual - (C_w0 * self.algebra.S(y)).scale(c)
        self._central[x] = dict(sorted(coefficients.items(), key=lambda item: (datum.translation_length(item[0]), item[0])))
        logger.debug(f"Z_{list(x)} = {self._central[x]}")
        return self._central[x]

    def central_element(self, x: Sequence[int]) -> HeckeElement:
        """
        Z_x as an element of the Hecke algebra; S_x in the extended mode.
        """
        result = self.algebra.zero()
        for y, c in self.central_expansion(x).items():
            result = result + self.algebra.S(y).scale(c)
        return result

    def xi_verify(
        self, w1: AffineElement, x: Sequence[int], w2: AffineElement, check_second: bool = True
    ) -> HeckeElement:
        """
        Returns the residual C_{w₁w₀p_xw₂⁻¹} - E_{w₁}C_{w₀}S_xF_{w₂}, which vanishes. In the
        non-extended mode S_x is replaced by Z_x (see central_expansion).

        Arguments:
            w1 {AffineElement} -- An element of B₀.
            x {Sequence[int]} -- A dominant translation.
            w2 {AffineElement} -- An element of B₀.
            check_second {bool, optional} -- Also compare with C_{w₁w₀w₂⁻¹}S_x, raising a
                VerificationError on disagreement. Defaults to True.
        """
        datum = self.datum
        for w in (w1, w2):
            if not datum.is_in_box(w):
                raise DomainError(f"{w} does not lie in B0.")
        if not datum.is_special_translation(x):
            raise DomainError(f"{list(x)} is not a dominant special translation.")
        z = datum.c0_compose(w1, x, w2)
        S = self.central_element(x)
        C_z = self.C(z)
        residual = C_z - self.E(w1) * self.C(datum.w0) * S * self.F(w2)
        if check_second:
            second = C_z - self.C(datum.c0_compose(w1, (0,) * datum.rank, w2)) * S
            if second:
                raise VerificationError(f"C_{z} differs from C_(w1 w0 w2^-1)·S_x.", witness=(w1, list(x), w2))
        return residual

    def to_json(self) -> dict:
        """
        {w: {y: p̃_{y,w}}} for every computed element of W'.
        """
        return {
            str(w): {str(y): c.to_json() for y, c in self._basis[w].items()}
            for w in sorted(self._basis)
            if self.datum.omega_index(w) == 0
        }
