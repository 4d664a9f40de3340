"""
The Hecke algebra 𝓗 of a CellDatum over ℤ[Γ], in the basis T̃_w = q_w⁻¹T_w.
"""

import logging
import threading

from typing import Dict, Iterator, Mapping, Optional, Sequence, Tuple, Union

from lowestcell.affine_weyl import AffineElement, CellDatum
from lowestcell.exceptions import ConfigurationError, VerificationError
from lowestcell.gamma import LaurentElement
from lowestcell.root_data import Weight

logger = logging.getLogger(__name__)

Scalar = Union[int, LaurentElement]


class HeckeElement:
    """
    A finite sum Σ c_w T̃_w with coefficients in ℤ[Γ]. Instances are immutable.
    """

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra: "HeckeAlgebra", terms: Optional[Mapping[AffineElement, Scalar]] = None):
        """
        Constructs a new Hecke algebra element.

        Arguments:
            algebra {HeckeAlgebra} -- The algebra the element belongs to.
            terms {Mapping[AffineElement, Scalar], optional} -- Coefficients in the T̃ basis.
        """
        self.algebra = algebra
        self._terms: Dict[AffineElement, LaurentElement] = {}
        if terms:
            for w, c in terms.items():
                c = algebra.scalar(c)
                if c:
                    self._terms[w] = c

    @classmethod
    def _raw(cls, algebra: "HeckeAlgebra", terms: Dict[AffineElement, LaurentElement]) -> "HeckeElement":
        element = cls.__new__(cls)
        element.algebra = algebra
        element._terms = terms
        return element

    def items(self) -> Iterator[Tuple[AffineElement, LaurentElement]]:
        """
        Iterates over (w, c_w) with w in increasing sort order.
        """
        for w in sorted(self._terms):
            yield w, self._terms[w]

    def support(self):
        return self._terms.keys()

    def coefficient(self, w: AffineElement) -> LaurentElement:
        return self._terms.get(w, self.algebra.zero_scalar)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.algebra is other.algebra and self._terms == other._terms

    __hash__ = None

    def _combine(self, other: "HeckeElement", sign: int) -> "HeckeElement":
        if not isinstance(other, HeckeElement):
            return NotImplemented
        if other.algebra is not self.algebra:
            raise ConfigurationError("elements belong to different Hecke algebras.", field="datum")
        terms = dict(self._terms)
        for w, c in other._terms.items():
            _accumulate(terms, w, c if sign > 0 else -c)
        return HeckeElement._raw(self.algebra, terms)

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        return self._combine(other, 1)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self._combine(other, -1)

    def __neg__(self) -> "HeckeElement":
        return HeckeElement._raw(self.algebra, {w: -c for w, c in self._terms.items()})

    def scale(self, c: Scalar) -> "HeckeElement":
        c = self.algebra.scalar(c)
        if not c:
            return self.algebra.zero()
        return HeckeElement._raw(self.algebra, {w: c * v for w, v in self._terms.items() if c * v})

    def __mul__(self, other) -> "HeckeElement":
        if isinstance(other, HeckeElement):
            return self.algebra.multiply(self, other)
        if isinstance(other, (int, LaurentElement)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other) -> "HeckeElement":
        if isinstance(other, (int, LaurentElement)):
            return self.scale(other)
        return NotImplemented

    def bar(self) -> "HeckeElement":
        return self.algebra.bar(self)

    def flat(self) -> "HeckeElement":
        return self.algebra.flat(self)

    def tau(self) -> LaurentElement:
        return self.algebra.tau(self)

    def to_json(self) -> list:
        return [{"element": w.to_json(), "coeff": c.to_json()} for w, c in self.items()]

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"({c})T[{w}]" for w, c in self.items())

    def __repr__(self) -> str:
        return f"HeckeElement({self})"


class HeckeAlgebra:
    """
    The Hecke algebra attached to a CellDatum, with the quadratic relation
    (T_s + 1)(T_s - q_s²) = 0, i.e. T̃_s² = 1 + ξ_s T̃_s with ξ_s = q_s - q_s⁻¹.
    """

    def __init__(self, datum: CellDatum):
        self.datum = datum
        self.rank = datum.gamma_rank
        self.zero_scalar = LaurentElement.zero(self.rank)
        self.one_scalar = LaurentElement.one(self.rank)
        self._xi = [self.q(s) - self.q(s).bar() for s in datum.generators]
        self._bar_cache: Dict[AffineElement, "HeckeElement"] = {}
        self._product_cache: Dict[Tuple[AffineElement, AffineElement], "HeckeElement"] = {}
        self._theta_cache: Dict[Weight, "HeckeElement"] = {}
        self._lock = threading.RLock()

    def __repr__(self) -> str:
        return f"HeckeAlgebra({self.datum!r})"

    # Scalars and basis.

    def scalar(self, c: Scalar) -> LaurentElement:
        if isinstance(c, LaurentElement):
            if c.rank != self.rank:
                raise ConfigurationError(f"Γ rank mismatch: {self.rank} against {c.rank}.", field="gamma_rank")
            return c
        if isinstance(c, int):
            return LaurentElement.constant(c, self.rank)
        raise TypeError(f"cannot use {c!r} as a scalar of the Hecke algebra.")

    def q(self, w: AffineElement) -> LaurentElement:
        """
        q_w = q^{L(w)}.
        """
        return LaurentElement.monomial(self.datum.weight_length(w))

    def xi(self, s: int) -> LaurentElement:
        return self._xi[s]

    def zero(self) -> HeckeElement:
        return HeckeElement._raw(self, {})

    def one(self) -> HeckeElement:
        return self.T(self.datum.identity)

    def T(self, w: AffineElement, coeff: Scalar = 1) -> HeckeElement:
        """
        Returns coeff·T̃_w.
        """
        if w.datum is not self.datum:
            raise ConfigurationError("element belongs to a different cell datum.", field="datum")
        return HeckeElement(self, {w: coeff})

    def from_terms(self, terms: Mapping[AffineElement, Scalar]) -> HeckeElement:
        return HeckeElement(self, terms)

    # Products.

    def left_multiply_generator(self, s: int, h: HeckeElement) -> HeckeElement:
        """
        T̃_s·h, using T̃_sT̃_w = T̃_{sw} if sw > w and T̃_{sw} + ξ_s T̃_w otherwise.
        """
        datum = self.datum
        generator = datum.generators[s]
        xi = self._xi[s]
        terms: Dict[AffineElement, LaurentElement] = {}
        for w, c in h._terms.items():
            sw = datum.multiply(generator, w)
            _accumulate(terms, sw, c)
            if s in datum.left_descents(w):
                _accumulate(terms, w, xi * c)
        return HeckeElement._raw(self, terms)

    def right_multiply_generator(self, h: HeckeElement, s: int) -> HeckeElement:
        datum = self.datum
        generator = datum.generators[s]
        xi = self._xi[s]
        terms: Dict[AffineElement, LaurentElement] = {}
        for w, c in h._terms.items():
            ws = datum.multiply(w, generator)
            _accumulate(terms, ws, c)
            if s in datum.right_descents(w):
                _accumulate(terms, w, xi * c)
        return HeckeElement._raw(self, terms)

    def left_multiply_omega(self, pi: AffineElement, h: HeckeElement) -> HeckeElement:
        return HeckeElement._raw(self, {self.datum.multiply(pi, w): c for w, c in h._terms.items()})

    def right_multiply_omega(self, h: HeckeElement, pi: AffineElement) -> HeckeElement:
        return HeckeElement._raw(self, {self.datum.multiply(w, pi): c for w, c in h._terms.items()})

    def left_multiply_basis(self, x: AffineElement, h: HeckeElement) -> HeckeElement:
        """
        T̃_x·h, through a reduced expression T̃_x = T̃_π T̃_{s_1}⋯T̃_{s_k}.
        """
        omega, word = self.datum.reduced_word(x)
        for s in reversed(word):
            h = self.left_multiply_generator(s, h)
        if omega:
            h = self.left_multiply_omega(self.datum.omega_elements[omega], h)
        return h

    def basis_product(self, x: AffineElement, y: AffineElement) -> HeckeElement:
        key = (x, y)
        cached = self._product_cache.get(key)
        if cached is None:
            cached = self.left_multiply_basis(x, self.T(y))
            self._product_cache[key] = cached
        return cached

    def multiply(self, a: HeckeElement, b: HeckeElement) -> HeckeElement:
        if a.algebra is not self or b.algebra is not self:
            raise ConfigurationError("elements belong to different Hecke algebras.", field="datum")
        terms: Dict[AffineElement, LaurentElement] = {}
        if len(b) == 1:
            ((y, d),) = b._terms.items()
            for x, c in a._terms.items():
                for w, v in self.basis_product(x, y)._terms.items():
                    _accumulate(terms, w, c * d * v)
        else:
            for x, c in a._terms.items():
                for w, v in self.left_multiply_basis(x, b)._terms.items():
                    _accumulate(terms, w, c * v)
        return HeckeElement._raw(self, terms)

    def h_mul(self, a: HeckeElement, b: HeckeElement) -> HeckeElement:
        return self.multiply(a, b)

    # Involutions and trace.

    def _bar_basis(self, y: AffineElement) -> HeckeElement:
        cached = self._bar_cache.get(y)
        if cached is not None:
            return cached
        datum = self.datum
        omega, word = datum.reduced_word(y)
        if not word:
            result = self.T(y)
        else:
            s = word[0]
            pi = datum.omega_elements[omega]
            rest = datum.multiply(datum.generators[s], datum.multiply(datum.inverse(pi), y))
            tail = self._bar_basis(rest)
            # bar(T̃_s) = T̃_s - ξ_s.
            result = self.left_multiply_generator(s, tail) - tail.scale(self._xi[s])
            if omega:
                result = self.left_multiply_omega(pi, result)
        self._bar_cache[y] = result
        return result

    def bar(self, h: HeckeElement) -> HeckeElement:
        """
        The ring involution with q^γ ↦ q^{-γ}, T̃_s ↦ T̃_s⁻¹ and T̃_π ↦ T̃_π.
        """
        terms: Dict[AffineElement, LaurentElement] = {}
        for y, c in h._terms.items():
            c_bar = c.bar()
            for w, v in self._bar_basis(y)._terms.items():
                _accumulate(terms, w, c_bar * v)
        return HeckeElement._raw(self, terms)

    def h_bar(self, h: HeckeElement) -> HeckeElement:
        return self.bar(h)

    def inverse_basis(self, w: AffineElement) -> HeckeElement:
        """
        T̃_w⁻¹, which equals the bar image of T̃_{w⁻¹}.
        """
        return self._bar_basis(self.datum.inverse(w))

    def tau(self, h: HeckeElement) -> LaurentElement:
        """
        The coefficient of T̃_e.
        """
        return h.coefficient(self.datum.identity)

    def flat(self, h: HeckeElement) -> HeckeElement:
        """
        The anti-involution T̃_w ↦ T̃_{w⁻¹}.
        """
        return HeckeElement._raw(self, {self.datum.inverse(w): c for w, c in h._terms.items()})

    # The Bernstein elements and the centre.

    def _split(self, x: Sequence[int]) -> Tuple[Weight, Weight]:
        """
        Writes x = y - z with y, z dominant translations of the group.
        """
        y = tuple(max(c, 0) for c in x)
        z = tuple(max(-c, 0) for c in x)
        if self.datum.mode != "extended" and not self.datum.root_datum.in_root_lattice(y):
            # 2ρ lies in Q, so shifting by a multiple of it keeps both parts in Q.
            m = (max(z) + 1) // 2 if any(z) else 0
            z = tuple(2 * m for _ in x)
            y = tuple(a + b for a, b in zip(x, z))
        return y, z

    def _theta_from(self, y: Weight, z: Weight) -> HeckeElement:
        datum = self.datum
        return self.multiply(self.T(datum.translation(y)), self.inverse_basis(datum.translation(z)))

    def theta(self, x: Sequence[int], check: bool = False) -> HeckeElement:
        """
        θ_x = T̃_{p_y}(T̃_{p_z})⁻¹ for any dominant y, z with x = y - z.

        Arguments:
            x {Sequence[int]} -- A weight (in Q in the non-extended mode).
            check {bool, optional} -- Recompute with a second decomposition and compare.
        """
        x = tuple(int(c) for c in x)
        cached = self._theta_cache.get(x)
        if cached is not None and not check:
            return cached
        y, z = self._split(x)
        result = self._theta_from(y, z)
        if check:
            shift = (2,) * len(x)
            other = self._theta_from(tuple(a + b for a, b in zip(y, shift)), tuple(a + b for a, b in zip(z, shift)))
            if other != result:
                raise VerificationError(f"θ_{list(x)} depends on the chosen decomposition.", witness=list(x))
        self._theta_cache[x] = result
        return result

    def S(self, x: Sequence[int]) -> HeckeElement:
        """
        S_x = Σ_{x'} d(x', x) θ_{x'}, the central element attached to V(x).
        """
        result = self.zero()
        for weight, multiplicity in sorted(self.datum.root_datum.weight_system(x).items()):
            result = result + self.theta(weight).scale(multiplicity)
        return result

    def S_elem(self, x: Sequence[int]) -> HeckeElement:
        return self.S(x)

    def commutes_with_generators(self, h: HeckeElement) -> bool:
        """
        Whether h commutes with every T̃_s and every T̃_π.
        """
        for s in range(len(self.datum.generators)):
            if self.left_multiply_generator(s, h) != self.right_multiply_generator(h, s):
                return False
        for pi in self.datum.omega_elements[1:]:
            if self.left_multiply_omega(pi, h) != self.right_multiply_omega(h, pi):
                return False
        return True


def _accumulate(terms: Dict[AffineElement, LaurentElement], w: AffineElement, c: LaurentElement) -> None:
    if not c:
        return
    current = terms.get(w)
    if current is None:
        terms[w] = c
        return
    value = current + c
    if value:
        terms[w] = value
    else:
        del terms[w]
