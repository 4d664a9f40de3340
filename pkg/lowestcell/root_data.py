"""
Irreducible root systems, the finite Weyl group W₀ and the representation-ring arithmetic
(weight multiplicities, tensor product multiplicities and characters) behind the centre of the
affine Hecke algebra.

Conventions. ``cartan[i][j] = <α_i, α_j^∨>``, so row i of the Cartan matrix is the simple root α_i
written in the basis of fundamental weights ω. Weights are integer tuples in ω-coordinates, roots
are integer tuples in α-coordinates, and coroots are integer tuples in α^∨-coordinates (they pair
with a weight λ by ``<λ, β^∨> = Σ_i β^∨_i λ_i``). Numbering follows Bourbaki.
"""

import logging
import re
import threading

from collections import deque
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from lowestcell.exceptions import ConfigurationError, DomainError, ResourceError
from lowestcell.utils.math import dot

logger = logging.getLogger(__name__)

Weight = Tuple[int, ...]

# Largest finite Weyl group that is enumerated eagerly.
MAX_WEYL_GROUP_ORDER = 60000

_TYPE_PATTERN = re.compile(r"^\s*([A-Ga-g])\s*(\d+)\s*$")


def _simple_root_gram(family: str, rank: int) -> List[List[int]]:
    """
    Inner products (α_i, α_j) of the simple roots, scaled so that short roots have squared length 2.
    """
    gram = [[0] * rank for _ in range(rank)]

    def link(i: int, j: int, value: int) -> None:
        gram[i][j] = gram[j][i] = value

    if family in ("A", "D", "E"):
        for i in range(rank):
            gram[i][i] = 2
        if family == "A":
            for i in range(rank - 1):
                link(i, i + 1, -1)
        elif family == "D":
            for i in range(rank - 2):
                link(i, i + 1, -1)
            link(rank - 3, rank - 1, -1)
        else:
            link(0, 2, -1)
            link(1, 3, -1)
            for i in range(2, rank - 1):
                link(i, i + 1, -1)
    elif family == "B":
        for i in range(rank - 1):
            gram[i][i] = 4
        gram[rank - 1][rank - 1] = 2
        for i in range(rank - 1):
            link(i, i + 1, -2)
    elif family == "C":
        for i in range(rank - 1):
            gram[i][i] = 2
        gram[rank - 1][rank - 1] = 4
        for i in range(rank - 2):
            link(i, i + 1, -1)
        link(rank - 2, rank - 1, -2)
    elif family == "F":
        gram[0][0] = gram[1][1] = 4
        gram[2][2] = gram[3][3] = 2
        link(0, 1, -2)
        link(1, 2, -2)
        link(2, 3, -1)
    elif family == "G":
        gram[0][0] = 2
        gram[1][1] = 6
        link(0, 1, -3)
    return gram


def parse_cartan_type(name: str) -> Tuple[str, int]:
    """
    Parses a Cartan type such as "A2", "C2" or "G2".

    Returns:
        Tuple[str, int] -- The family letter and the rank.
    """
    match = _TYPE_PATTERN.match(str(name))
    if match is None:
        raise ConfigurationError(f"unrecognised Cartan type {name!r}.", field="type")
    family, rank = match.group(1).upper(), int(match.group(2))
    valid = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 4,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }[family]
    if not valid:
        raise ConfigurationError(f"there is no irreducible root system of type {family}{rank}.", field="type")
    return family, rank


class WeylGroup:
    """
    The finite Weyl group W₀, enumerated once as integer matrices acting on ω-coordinates.

    Elements are referred to by their index in a breadth-first enumeration; index 0 is the identity.
    Two elements are equal iff they send ρ to the same weight, which is how they are keyed.
    """

    def __init__(self, root_datum: "RootDatum"):
        self.root_datum = root_datum
        r = root_datum.rank
        cartan = np.array(root_datum.cartan, dtype=np.int64)

        # s_i acts on column vectors by v ↦ v - v_i α_i.
        generators = []
        for i in range(r):
            basis = np.zeros(r, dtype=np.int64)
            basis[i] = 1
            generators.append(np.eye(r, dtype=np.int64) - np.outer(cartan[i], basis))

        rho = np.ones(r, dtype=np.int64)
        identity = np.eye(r, dtype=np.int64)
        self._matrices: List[Tuple[Tuple[int, ...], ...]] = [tuple(map(tuple, identity.tolist()))]
        self._rho_images: List[Weight] = [tuple(rho.tolist())]
        self._words: List[Tuple[int, ...]] = [()]
        self._index: Dict[Weight, int] = {self._rho_images[0]: 0}

        arrays = [identity]
        queue = deque([0])
        while queue:
            current = queue.popleft()
            for i, generator in enumerate(generators):
                product = generator @ arrays[current]
                key = tuple((product @ rho).tolist())
                if key in self._index:
                    continue
                if len(arrays) >= MAX_WEYL_GROUP_ORDER:
                    raise ResourceError(
                        f"the Weyl group of type {root_datum.name} is too large to enumerate.", limit=MAX_WEYL_GROUP_ORDER
                    )
                self._index[key] = len(arrays)
                arrays.append(product)
                self._matrices.append(tuple(map(tuple, product.tolist())))
                self._rho_images.append(key)
                self._words.append((i,) + self._words[current])
                queue.append(len(arrays) - 1)

        self.order = len(arrays)
        self.identity = 0
        self.simple = [self._index[tuple((g @ rho).tolist())] for g in generators]
        self.longest = self._index[tuple((-rho).tolist())]
        self._products: Dict[Tuple[int, int], int] = {}
        self._inverses = [self.from_word(reversed(word)) for word in self._words]
        self._lengths = [len(word) for word in self._words]
        logger.debug(f"Enumerated W0 of type {root_datum.name} with {self.order} elements.")

    def __len__(self) -> int:
        return self.order

    def apply(self, u: int, v: Sequence[int]) -> Weight:
        """
        Returns u(v) for a weight v in ω-coordinates.
        """
        return tuple(dot(row, v) for row in self._matrices[u])

    def rho_image(self, u: int) -> Weight:
        return self._rho_images[u]

    def index_of(self, rho_image: Sequence[int]) -> int:
        return self._index[tuple(rho_image)]

    def multiply(self, u: int, v: int) -> int:
        key = (u, v)
        product = self._products.get(key)
        if product is None:
            product = self._index[self.apply(u, self._rho_images[v])]
            self._products[key] = product
        return product

    def inverse(self, u: int) -> int:
        return self._inverses[u]

    def length(self, u: int) -> int:
        return self._lengths[u]

    def word(self, u: int) -> Tuple[int, ...]:
        """
        A reduced word for u as a tuple of simple-root indices 0..r-1 (left to right).
        """
        return self._words[u]

    def from_word(self, word: Iterable[int]) -> int:
        u = self.identity
        for i in reversed(list(word)):
            u = self._index[self.apply(self.simple[i], self._rho_images[u])]
        return u

    def parabolic(self, subset: Iterable[int]) -> List[int]:
        """
        The elements of the standard parabolic subgroup generated by the simple reflections in `subset`
        (simple-root indices 0..r-1).
        """
        subset = sorted(set(subset))
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            u = queue.popleft()
            for i in subset:
                v = self.multiply(self.simple[i], u)
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return sorted(seen, key=lambda u: (self._lengths[u], self._words[u]))

    def parabolic_longest(self, subset: Iterable[int]) -> int:
        return max(self.parabolic(subset), key=lambda u: self._lengths[u])


class RootDatum:
    """
    An irreducible reduced root system together with its weight lattice P, root lattice Q and
    representation-ring arithmetic. Instances are immutable; multiplicity tables are memoised
    behind a lock so that queries are safe from several threads.
    """

    def __init__(self, cartan_type: str):
        """
        Constructs the root datum of the given Cartan type.

        Arguments:
            cartan_type {str} -- A type such as "A1", "A2", "B3", "C2" or "G2".
        """
        self.family, self.rank = parse_cartan_type(cartan_type)
        self.name = f"{self.family}{self.rank}"
        r = self.rank

        gram = _simple_root_gram(self.family, r)
        self.symmetrizer: Tuple[int, ...] = tuple(gram[i][i] // 2 for i in range(r))
        self.cartan: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(2 * gram[i][j] // gram[j][j] for j in range(r)) for i in range(r)
        )
        self._root_gram = gram

        cartan_matrix = sympy.Matrix(self.cartan)
        inverse = cartan_matrix.inv()
        self.cartan_inverse: Tuple[Tuple[Fraction, ...], ...] = tuple(
            tuple(Fraction(int(inverse[i, j].p), int(inverse[i, j].q)) for j in range(r)) for i in range(r)
        )
        omega_gram = inverse * sympy.diag(*self.symmetrizer)
        self.omega_gram: Tuple[Tuple[Fraction, ...], ...] = tuple(
            tuple(Fraction(int(omega_gram[i, j].p), int(omega_gram[i, j].q)) for j in range(r)) for i in range(r)
        )

        self.positive_roots: Tuple[Weight, ...] = self._positive_roots()
        self.positive_roots_omega: Tuple[Weight, ...] = tuple(self.to_omega(beta) for beta in self.positive_roots)
        self.positive_coroots: Tuple[Weight, ...] = tuple(self._coroot(beta) for beta in self.positive_roots)
        self.simple_roots_omega: Tuple[Weight, ...] = self.cartan
        self.coxeter_number = 2 * len(self.positive_roots) // r
        self.rho: Weight = (1,) * r

        # The affine reflection s₀ is attached to the root whose coroot is the highest coroot.
        index = max(range(len(self.positive_roots)), key=lambda k: (sum(self.positive_coroots[k]), self.positive_coroots[k]))
        self.theta: Weight = self.positive_roots[index]
        self.theta_omega: Weight = self.positive_roots_omega[index]
        self.theta_coroot: Weight = self.positive_coroots[index]

        self._weyl_group: Optional[WeylGroup] = None
        self._lock = threading.RLock()
        self._dominant_tables: Dict[Weight, Dict[Weight, int]] = {}
        self._weight_systems: Dict[Weight, Dict[Weight, int]] = {}
        self._tensor_tables: Dict[Tuple[Weight, Weight], Dict[Weight, int]] = {}

    def __repr__(self) -> str:
        return f"RootDatum({self.name!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, RootDatum) and other.name == self.name

    def __hash__(self) -> int:
        return hash(("RootDatum", self.name))

    # Roots and lattices.

    def to_omega(self, alpha_coordinates: Sequence[int]) -> Weight:
        return tuple(sum(c * self.cartan[i][j] for i, c in enumerate(alpha_coordinates)) for j in range(self.rank))

    def alpha_coordinates(self, x: Sequence[int]) -> Tuple[Fraction, ...]:
        """
        Coordinates of a weight in the basis of simple roots (rational in general).
        """
        return tuple(sum(x[i] * self.cartan_inverse[i][j] for i in range(self.rank)) for j in range(self.rank))

    def in_root_lattice(self, x: Sequence[int]) -> bool:
        return all(c.denominator == 1 for c in self.alpha_coordinates(x))

    def coset_key(self, x: Sequence[int]) -> Tuple[Fraction, ...]:
        """
        A key identifying the class of x in P/Q.
        """
        return tuple(c - (c.numerator // c.denominator) for c in self.alpha_coordinates(x))

    def _positive_roots(self) -> Tuple[Weight, ...]:
        r = self.rank
        simple = [tuple(1 if k == i else 0 for k in range(r)) for i in range(r)]
        roots = set(simple)
        layer = list(simple)
        while layer:
            next_layer = []
            for beta in layer:
                pairing = self.to_omega(beta)
                for i in range(r):
                    # p = how far the α_i-string through β extends downwards.
                    p = 0
                    lowered = list(beta)
                    while True:
                        lowered[i] -= 1
                        if tuple(lowered) in roots:
                            p += 1
                        else:
                            break
                    if p - pairing[i] > 0:
                        raised = list(beta)
                        raised[i] += 1
                        raised = tuple(raised)
                        if raised not in roots:
                            roots.add(raised)
                            next_layer.append(raised)
            layer = next_layer
        return tuple(sorted(roots, key=lambda beta: (sum(beta), tuple(-c for c in beta))))

    def _root_norm(self, beta: Sequence[int]) -> int:
        # (β, β)/2 in units where short roots have (β, β) = 2.
        total = sum(beta[i] * beta[j] * self._root_gram[i][j] for i in range(self.rank) for j in range(self.rank))
        return total // 2

    def _coroot(self, beta: Sequence[int]) -> Weight:
        norm = self._root_norm(beta)
        return tuple((c * self.symmetrizer[i]) // norm for i, c in enumerate(beta))

    def pair(self, x: Sequence[int], coroot: Sequence[int]) -> int:
        return dot(x, coroot)

    def inner(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        """
        The W₀-invariant form on weights in ω-coordinates (short roots have squared length 2).
        """
        r = self.rank
        return sum((x[i] * y[j] * self.omega_gram[i][j] for i in range(r) for j in range(r)), Fraction(0))

    # Weights.

    @staticmethod
    def is_dominant(x: Sequence[int]) -> bool:
        return all(c >= 0 for c in x)

    def reflect(self, i: int, v: Sequence[int]) -> Weight:
        """
        Applies the simple reflection s_i to a weight.
        """
        c = v[i]
        row = self.cartan[i]
        return tuple(v[k] - c * row[k] for k in range(self.rank))

    def dominant_representative(self, v: Sequence[int]) -> Weight:
        v = tuple(v)
        while True:
            for i, c in enumerate(v):
                if c < 0:
                    v = self.reflect(i, v)
                    break
            else:
                return v

    def dual(self, x: Sequence[int]) -> Weight:
        """
        Returns x* = -w₀(x) for a dominant weight x.
        """
        v = tuple(x)
        changed = True
        while changed:
            changed = False
            for i, c in enumerate(v):
                if c > 0:
                    v = self.reflect(i, v)
                    changed = True
                    break
        return tuple(-c for c in v)

    def orbit(self, x: Sequence[int]) -> List[Weight]:
        x = tuple(x)
        seen = {x}
        queue = deque([x])
        while queue:
            v = queue.popleft()
            for i in range(self.rank):
                w = self.reflect(i, v)
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return sorted(seen, reverse=True)

    @property
    def weyl_group(self) -> WeylGroup:
        with self._lock:
            if self._weyl_group is None:
                self._weyl_group = WeylGroup(self)
            return self._weyl_group

    # Representation ring.

    def _check_dominant(self, x: Sequence[int]) -> Weight:
        x = tuple(int(c) for c in x)
        if len(x) != self.rank:
            raise ConfigurationError(f"weight {list(x)} does not have rank {self.rank}.", field="weight")
        if not self.is_dominant(x):
            raise DomainError(f"weight {list(x)} is not dominant.")
        return x

    def _dominant_multiplicities(self, x: Weight) -> Dict[Weight, int]:
        """
        Freudenthal's recursion for the multiplicities of the dominant weights of V(x).
        """
        with self._lock:
            if x in self._dominant_tables:
                return self._dominant_tables[x]

        # Dominant weights below x, reached by subtracting positive roots.
        found = {x}
        queue = deque([x])
        while queue:
            mu = queue.popleft()
            for beta in self.positive_roots_omega:
                nu = tuple(a - b for a, b in zip(mu, beta))
                if self.is_dominant(nu) and nu not in found:
                    found.add(nu)
                    queue.append(nu)

        def depth(mu: Weight) -> Fraction:
            return sum(self.alpha_coordinates(tuple(a - b for a, b in zip(x, mu))))

        shifted = tuple(c + 1 for c in x)
        top = self.inner(shifted, shifted)
        table: Dict[Weight, int] = {}
        for mu in sorted(found, key=lambda mu: (depth(mu), tuple(-c for c in mu))):
            if mu == x:
                table[mu] = 1
                continue
            total = Fraction(0)
            for beta in self.positive_roots_omega:
                k = 1
                while True:
                    nu = tuple(a + k * b for a, b in zip(mu, beta))
                    multiplicity = table.get(self.dominant_representative(nu), 0)
                    if not multiplicity:
                        break
                    total += multiplicity * self.inner(nu, beta)
                    k += 1
            mu_shifted = tuple(c + 1 for c in mu)
            value = 2 * total / (top - self.inner(mu_shifted, mu_shifted))
            if value.denominator != 1:
                raise ArithmeticError(f"non-integral multiplicity {value} for {mu} in V({x}).")
            if value:
                table[mu] = int(value)

        with self._lock:
            self._dominant_tables[x] = table
        return table

    def weight_multiplicity(self, xp: Sequence[int], x: Sequence[int]) -> int:
        """
        Returns d(x', x), the dimension of the x'-weight space of the irreducible module V(x).

        Arguments:
            xp {Sequence[int]} -- Any weight, in ω-coordinates.
            x {Sequence[int]} -- A dominant weight.

        Returns:
            int -- The multiplicity (zero when x' is not a weight of V(x)).
        """
        x = self._check_dominant(x)
        return self._dominant_multiplicities(x).get(self.dominant_representative(xp), 0)

    def dominant_weights(self, x: Sequence[int]) -> Dict[Weight, int]:
        """
        The dominant weights of V(x) with their multiplicities.
        """
        return dict(self._dominant_multiplicities(self._check_dominant(x)))

    def weight_system(self, x: Sequence[int]) -> Dict[Weight, int]:
        """
        All weights of V(x) with their multiplicities.
        """
        x = self._check_dominant(x)
        with self._lock:
            if x in self._weight_systems:
                return self._weight_systems[x]
        system: Dict[Weight, int] = {}
        for mu, multiplicity in self._dominant_multiplicities(x).items():
            for nu in self.orbit(mu):
                system[nu] = multiplicity
        with self._lock:
            self._weight_systems[x] = system
        return system

    def dim_irrep(self, x: Sequence[int]) -> int:
        """
        The Weyl dimension formula.
        """
        x = self._check_dominant(x)
        value = Fraction(1)
        for coroot in self.positive_coroots:
            value *= Fraction(dot(x, coroot) + sum(coroot), sum(coroot))
        return int(value)

    def tensor_decompose(self, x: Sequence[int], xp: Sequence[int]) -> Dict[Weight, int]:
        """
        Decomposes V(x) ⊗ V(x') into irreducibles (Klimyk's formula).

        Returns:
            Dict[Weight, int] -- Map from dominant x'' to m(x, x', x'').
        """
        x, xp = self._check_dominant(x), self._check_dominant(xp)
        key = (x, xp) if x <= xp else (xp, x)
        with self._lock:
            if key in self._tensor_tables:
                return self._tensor_tables[key]

        small, large = (x, xp) if self.dim_irrep(x) <= self.dim_irrep(xp) else (xp, x)
        result: Dict[Weight, int] = {}
        for nu, multiplicity in self.weight_system(small).items():
            v = tuple(a + b + 1 for a, b in zip(nu, large))
            sign = 1
            while True:
                for i, c in enumerate(v):
                    if c < 0:
                        v = self.reflect(i, v)
                        sign = -sign
                        break
                else:
                    break
            if any(c == 0 for c in v):
                continue
            z = tuple(c - 1 for c in v)
            result[z] = result.get(z, 0) + sign * multiplicity
        result = {z: m for z, m in sorted(result.items()) if m}
        if any(m < 0 for m in result.values()):
            raise ArithmeticError(f"negative tensor multiplicity in V({x}) ⊗ V({xp}).")

        with self._lock:
            self._tensor_tables[key] = result
        return result

    def tensor_multiplicity(self, x: Sequence[int], xp: Sequence[int], xpp: Sequence[int]) -> int:
        """
        Returns m(x, x', x''), the multiplicity of V(x'') in V(x) ⊗ V(x').
        """
        return self.tensor_decompose(x, xp).get(tuple(xpp), 0)

    def character_eval(self, x: Sequence[int], t: Sequence, modulus: Optional[int] = None):
        """
        Evaluates the character of V(x) at a rational torus point.

        Arguments:
            x {Sequence[int]} -- A dominant weight.
            t {Sequence} -- Nonzero coordinates t_1..t_r, dual to the ω-basis.
            modulus {int, optional} -- Evaluate in 𝔽_p instead of ℚ.

        Returns:
            Fraction or int -- Σ d(x', x) Π t_i^{x'_i}.
        """
        if len(t) != self.rank:
            raise DomainError(f"torus point needs {self.rank} coordinates, got {len(t)}.")
        if modulus is None:
            t = [Fraction(c) for c in t]
            if any(c == 0 for c in t):
                raise DomainError("torus point coordinates must be nonzero.")
            total = Fraction(0)
            for nu, multiplicity in self.weight_system(x).items():
                term = Fraction(multiplicity)
                for c, e in zip(t, nu):
                    term *= c**e
                total += term
            return total
        t = [int(c) % modulus for c in t]
        if any(c == 0 for c in t):
            raise DomainError(f"torus point coordinates must be units modulo {modulus}.")
        total = 0
        for nu, multiplicity in self.weight_system(x).items():
            term = multiplicity % modulus
            for c, e in zip(t, nu):
                term = term * pow(c, e, modulus) % modulus
            total = (total + term) % modulus
        return total

    def dominant_weights_up_to(self, bound: int, root_lattice_only: bool = False) -> List[Weight]:
        """
        Dominant weights with coordinate sum at most `bound`, in a deterministic order.
        """
        weights = [()]
        for _ in range(self.rank):
            weights = [w + (c,) for w in weights for c in range(bound + 1) if sum(w) + c <= bound]
        if root_lattice_only:
            weights = [w for w in weights if self.in_root_lattice(w)]
        return sorted(weights, key=lambda w: (sum(w), w))


def simple_subsets(rank: int) -> List[FrozenSet[int]]:
    """
    All subsets of the finite simple reflections {1, ..., r}, smallest first.
    """
    subsets = [frozenset()]
    for i in range(1, rank + 1):
        subsets += [s | {i} for s in subsets]
    return sorted(subsets, key=lambda s: (len(s), sorted(s)))
