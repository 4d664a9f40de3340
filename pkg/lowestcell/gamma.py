"""
The totally ordered exponent group Γ = ℤ^r (lexicographic order) and the group ring ℤ[Γ].

Elements of ℤ[Γ] are written Σ a_γ q^γ and are modelled by LaurentElement, a finitely
supported map from exponent vectors to nonzero integers.
"""

import operator

from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

from lowestcell.exceptions import ConfigurationError, DomainError

Exponent = Tuple[int, ...]


class _Infinity:
    """
    The two infinite degree markers. NEG_INF is the degree of the zero element,
    POS_INF is its negation (used for Δ(z) when p̃_{e,z} vanishes).
    """

    __slots__ = ("positive",)

    def __init__(self, positive: bool):
        self.positive = positive

    def __neg__(self) -> "_Infinity":
        return POS_INF if not self.positive else NEG_INF

    def __eq__(self, other) -> bool:
        return isinstance(other, _Infinity) and other.positive == self.positive

    def __hash__(self) -> int:
        return hash(("inf", self.positive))

    def __lt__(self, other) -> bool:
        if isinstance(other, _Infinity):
            return not self.positive and other.positive
        return not self.positive

    def __le__(self, other) -> bool:
        return self == other or self < other

    def __gt__(self, other) -> bool:
        if isinstance(other, _Infinity):
            return self.positive and not other.positive
        return self.positive

    def __ge__(self, other) -> bool:
        return self == other or self > other

    def __repr__(self) -> str:
        return "+inf" if self.positive else "-inf"

    def to_json(self) -> str:
        return repr(self)


NEG_INF = _Infinity(False)
POS_INF = _Infinity(True)


class GammaElement(tuple):
    """
    An element of Γ = ℤ^r, compared lexicographically.

    Addition is coordinatewise; comparisons against an element of a different rank
    raise a ConfigurationError. The infinite markers compare below (NEG_INF) and
    above (POS_INF) every GammaElement.
    """

    def __new__(cls, exps: Iterable[int]):
        exps = tuple(int(e) for e in exps)
        if len(exps) < 1:
            raise ConfigurationError("Γ must have rank at least 1.", field="gamma_rank")
        return super().__new__(cls, exps)

    @classmethod
    def zero(cls, rank: int) -> "GammaElement":
        return cls((0,) * rank)

    @property
    def rank(self) -> int:
        return len(self)

    def _check(self, other) -> None:
        if len(other) != len(self):
            raise ConfigurationError(f"Γ rank mismatch: {len(self)} against {len(other)}.", field="gamma_rank")

    def __add__(self, other) -> "GammaElement":
        if isinstance(other, _Infinity):
            return other
        self._check(other)
        return GammaElement(map(operator.add, self, other))

    __radd__ = __add__

    def __sub__(self, other) -> "GammaElement":
        if isinstance(other, _Infinity):
            return -other
        self._check(other)
        return GammaElement(map(operator.sub, self, other))

    def __neg__(self) -> "GammaElement":
        return GammaElement(-e for e in self)

    def __mul__(self, n: int) -> "GammaElement":
        return GammaElement(n * e for e in self)

    __rmul__ = __mul__

    def __lt__(self, other) -> bool:
        if isinstance(other, _Infinity):
            return other.positive
        self._check(other)
        return tuple.__lt__(self, other)

    def __le__(self, other) -> bool:
        if isinstance(other, _Infinity):
            return other.positive
        self._check(other)
        return tuple.__le__(self, other)

    def __gt__(self, other) -> bool:
        if isinstance(other, _Infinity):
            return not other.positive
        self._check(other)
        return tuple.__gt__(self, other)

    def __ge__(self, other) -> bool:
        if isinstance(other, _Infinity):
            return not other.positive
        self._check(other)
        return tuple.__ge__(self, other)

    def __eq__(self, other) -> bool:
        if isinstance(other, _Infinity):
            return False
        return tuple.__eq__(self, other)

    def __ne__(self, other) -> bool:
        return not self == other

    __hash__ = tuple.__hash__

    def is_positive(self) -> bool:
        return self > GammaElement.zero(len(self))

    def is_negative(self) -> bool:
        return self < GammaElement.zero(len(self))

    def __repr__(self) -> str:
        return f"GammaElement({list(self)})"

    def to_json(self):
        return list(self)


def gamma_compare(a: GammaElement, b: GammaElement) -> int:
    """
    Compares two elements of Γ.

    Returns:
        int -- -1, 0 or 1 as a < b, a = b or a > b.
    """
    if len(a) != len(b):
        raise ConfigurationError(f"Γ rank mismatch: {len(a)} against {len(b)}.", field="gamma_rank")
    if tuple(a) == tuple(b):
        return 0
    return -1 if tuple(a) < tuple(b) else 1


def _add_exps(a: Exponent, b: Exponent) -> Exponent:
    return tuple(map(operator.add, a, b))


class LaurentElement:
    """
    An element Σ a_γ q^γ of ℤ[Γ]. Instances are immutable; zero coefficients are never stored.
    """

    __slots__ = ("_terms", "rank", "_hash")

    def __init__(self, terms: Optional[Mapping[Sequence[int], int]] = None, rank: int = 1):
        """
        Constructs a new element of ℤ[Γ].

        Arguments:
            terms {Mapping[Sequence[int], int], optional} -- Map from exponent vectors to integer coefficients.
            rank {int, optional} -- The rank of Γ. Defaults to 1.
        """
        self.rank = rank
        self._hash = None
        self._terms: Dict[Exponent, int] = {}
        if terms:
            for exp, coeff in terms.items():
                exp = (int(exp),) if isinstance(exp, int) else tuple(int(e) for e in exp)
                if len(exp) != rank:
                    raise ConfigurationError(f"exponent {exp} does not have rank {rank}.", field="gamma_rank")
                if coeff:
                    self._terms[exp] = self._terms.get(exp, 0) + int(coeff)
                    if not self._terms[exp]:
                        del self._terms[exp]

    @classmethod
    def _raw(cls, terms: Dict[Exponent, int], rank: int) -> "LaurentElement":
        element = cls.__new__(cls)
        element._terms = terms
        element.rank = rank
        element._hash = None
        return element

    @classmethod
    def zero(cls, rank: int = 1) -> "LaurentElement":
        return cls._raw({}, rank)

    @classmethod
    def one(cls, rank: int = 1) -> "LaurentElement":
        return cls._raw({(0,) * rank: 1}, rank)

    @classmethod
    def constant(cls, value: int, rank: int = 1) -> "LaurentElement":
        return cls._raw({(0,) * rank: int(value)} if value else {}, rank)

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff: int = 1) -> "LaurentElement":
        """
        Returns coeff·q^exp.
        """
        exp = tuple(int(e) for e in exp)
        return cls._raw({exp: int(coeff)} if coeff else {}, len(exp))

    # Arithmetic.

    def _coerce(self, other) -> "LaurentElement":
        if isinstance(other, LaurentElement):
            if other.rank != self.rank:
                raise ConfigurationError(f"Γ rank mismatch: {self.rank} against {other.rank}.", field="gamma_rank")
            return other
        if isinstance(other, int):
            return LaurentElement.constant(other, self.rank)
        return NotImplemented

    def __add__(self, other) -> "LaurentElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for exp, coeff in other._terms.items():
            value = terms.get(exp, 0) + coeff
            if value:
                terms[exp] = value
            else:
                terms.pop(exp, None)
        return LaurentElement._raw(terms, self.rank)

    __radd__ = __add__

    def __neg__(self) -> "LaurentElement":
        return LaurentElement._raw({exp: -coeff for exp, coeff in self._terms.items()}, self.rank)

    def __sub__(self, other) -> "LaurentElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "LaurentElement":
        return (-self) + other

    def __mul__(self, other) -> "LaurentElement":
        if isinstance(other, int):
            if not other:
                return LaurentElement.zero(self.rank)
            return LaurentElement._raw({exp: coeff * other for exp, coeff in self._terms.items()}, self.rank)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: Dict[Exponent, int] = {}
        for exp_a, coeff_a in self._terms.items():
            for exp_b, coeff_b in other._terms.items():
                exp = _add_exps(exp_a, exp_b)
                terms[exp] = terms.get(exp, 0) + coeff_a * coeff_b
        return LaurentElement._raw({exp: coeff for exp, coeff in terms.items() if coeff}, self.rank)

    __rmul__ = __mul__

    def shift(self, exp: Sequence[int]) -> "LaurentElement":
        """
        Returns q^exp times this element.
        """
        exp = tuple(exp)
        return LaurentElement._raw({_add_exps(e, exp): c for e, c in self._terms.items()}, self.rank)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self._terms == ({(0,) * self.rank: other} if other else {})
        if not isinstance(other, LaurentElement):
            return NotImplemented
        return self.rank == other.rank and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rank, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    # Structure.

    def items(self) -> Iterator[Tuple[GammaElement, int]]:
        """
        Iterates over (exponent, coefficient) pairs with exponents in descending order.
        """
        for exp in sorted(self._terms, reverse=True):
            yield GammaElement(exp), self._terms[exp]

    def coefficient(self, exp: Sequence[int]) -> int:
        return self._terms.get(tuple(exp), 0)

    def constant_term(self) -> int:
        return self._terms.get((0,) * self.rank, 0)

    def bar(self) -> "LaurentElement":
        """
        The involution q^γ ↦ q^{-γ}.
        """
        return LaurentElement._raw({tuple(-e for e in exp): coeff for exp, coeff in self._terms.items()}, self.rank)

    def deg(self):
        """
        Returns the largest exponent with a nonzero coefficient, or NEG_INF for the zero element.
        """
        if not self._terms:
            return NEG_INF
        return GammaElement(max(self._terms))

    def leading_coefficient(self) -> int:
        if not self._terms:
            return 0
        return self._terms[max(self._terms)]

    def _filtered(self, keep) -> "LaurentElement":
        zero = (0,) * self.rank
        return LaurentElement._raw({e: c for e, c in self._terms.items() if keep(e, zero)}, self.rank)

    def nonnegative_part(self) -> "LaurentElement":
        return self._filtered(lambda e, zero: e >= zero)

    def positive_part(self) -> "LaurentElement":
        return self._filtered(lambda e, zero: e > zero)

    def negative_part(self) -> "LaurentElement":
        return self._filtered(lambda e, zero: e < zero)

    def is_strictly_negative(self) -> bool:
        """
        Whether every exponent lies in Γ^{<0}.
        """
        zero = (0,) * self.rank
        return all(exp < zero for exp in self._terms)

    def is_bar_invariant(self) -> bool:
        return self == self.bar()

    def evaluate(self, values: Sequence, modulus: Optional[int] = None):
        """
        Evaluates the element at q^{e_i} ↦ values[i].

        Arguments:
            values {Sequence} -- One nonzero value per Γ coordinate (Fractions, or integers mod `modulus`).
            modulus {int, optional} -- A prime; when given the evaluation takes place in 𝔽_p.

        Returns:
            Fraction or int -- The image of this element.
        """
        if len(values) != self.rank:
            raise ConfigurationError(f"expected {self.rank} specialisation values, got {len(values)}.", field="spectra.q")
        if modulus is None:
            if any(Fraction(v) == 0 for v in values):
                raise DomainError("specialisation values must be nonzero.")
            total = Fraction(0)
            for exp, coeff in self._terms.items():
                term = Fraction(coeff)
                for value, e in zip(values, exp):
                    term *= Fraction(value) ** e
                total += term
            return total
        if any(int(v) % modulus == 0 for v in values):
            raise DomainError(f"specialisation values must be units modulo {modulus}.")
        total = 0
        for exp, coeff in self._terms.items():
            term = coeff % modulus
            for value, e in zip(values, exp):
                term = term * pow(int(value), e, modulus) % modulus
            total = (total + term) % modulus
        return total

    # Serialisation.

    def to_json(self) -> dict:
        return {"rank": self.rank, "terms": [{"exp": list(exp), "coeff": str(coeff)} for exp, coeff in self.items()]}

    @classmethod
    def from_json(cls, obj: dict, rank: Optional[int] = None) -> "LaurentElement":
        terms = obj.get("terms", [])
        if "rank" in obj:
            if rank is not None and int(obj["rank"]) != rank:
                raise ConfigurationError(f"expected Γ rank {rank}, found {obj['rank']}.", field="rank")
            rank = int(obj["rank"])
        elif rank is None:
            rank = len(terms[0]["exp"]) if terms else 1
        return cls({tuple(t["exp"]): int(t["coeff"]) for t in terms}, rank)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exp, coeff in self.items():
            if all(e == 0 for e in exp):
                parts.append(str(coeff))
                continue
            power = str(exp[0]) if self.rank == 1 else "(" + ",".join(str(e) for e in exp) + ")"
            monomial = f"q^{power}"
            parts.append(monomial if coeff == 1 else "-" + monomial if coeff == -1 else f"{coeff}{monomial}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"LaurentElement({self})"


def lp_mul(a: LaurentElement, b: LaurentElement) -> LaurentElement:
    return a * b


def lp_bar(a: LaurentElement) -> LaurentElement:
    return a.bar()


def lp_deg(a: LaurentElement) -> Union[GammaElement, _Infinity]:
    return a.deg()


def symmetrize(a: LaurentElement) -> LaurentElement:
    """
    Returns the bar-invariant element c_0 + Σ_{γ>0} c_γ(q^γ + q^{-γ}) built from the
    nonnegative part of `a`.
    """
    nonnegative = a.nonnegative_part()
    return nonnegative + nonnegative.positive_part().bar()
