"""
The extended affine Weyl group W = W₀ ⋉ P and the affine Weyl group W' = W₀ ⋉ Q.

An element is stored as a pair (x, u), meaning p_x·u, which acts on weights by v ↦ u(v) + x.
Alcove geometry is decided exactly through the interior point p₀ = ρ/(h+1) of the fundamental
alcove: all pairings are scaled by h+1 so that everything stays in the integers.
"""

import functools
import itertools
import logging
import math
import threading

from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx

from tqdm import tqdm

from lowestcell.exceptions import ConfigurationError, DomainError, VerificationError
from lowestcell.gamma import GammaElement
from lowestcell.root_data import RootDatum, Weight
from lowestcell.utils.math import dot

logger = logging.getLogger(__name__)

EXTENDED = "extended"
NON_EXTENDED = "non-extended"

Factorization = Tuple["AffineElement", Weight, "AffineElement"]


class AffineElement:
    """
    An element p_x·u of the (extended) affine Weyl group of a CellDatum.
    Instances are immutable and hashable; structural data (length, descents, words) is memoised
    by the owning CellDatum.
    """

    __slots__ = ("datum", "translation", "finite", "_hash")

    def __init__(self, datum: "CellDatum", translation: Sequence[int], finite: int):
        self.datum = datum
        self.translation: Weight = tuple(translation)
        self.finite = finite
        self._hash = hash((self.translation, finite))

    def __eq__(self, other) -> bool:
        if not isinstance(other, AffineElement):
            return NotImplemented
        return self.finite == other.finite and self.translation == other.translation and self.datum is other.datum

    def __hash__(self) -> int:
        return self._hash

    def __mul__(self, other: "AffineElement") -> "AffineElement":
        return self.datum.multiply(self, other)

    def __lt__(self, other: "AffineElement") -> bool:
        return self.sort_key < other.sort_key

    def inverse(self) -> "AffineElement":
        return self.datum.inverse(self)

    @property
    def length(self) -> int:
        return self.datum.length(self)

    @property
    def weight_length(self) -> GammaElement:
        return self.datum.weight_length(self)

    @property
    def omega(self) -> int:
        return self.datum.omega_index(self)

    @property
    def word(self) -> Tuple[int, ...]:
        return self.datum.reduced_word(self)[1]

    @property
    def sort_key(self) -> Tuple:
        return self.datum.sort_key(self)

    def is_identity(self) -> bool:
        return self.finite == 0 and not any(self.translation)

    def to_json(self) -> dict:
        return self.datum.element_to_json(self)

    def __str__(self) -> str:
        omega, word = self.datum.reduced_word(self)
        parts = [f"pi{omega}"] if omega else []
        parts += [f"s{i}" for i in word]
        return "·".join(parts) if parts else "e"

    def __repr__(self) -> str:
        return f"AffineElement({self})"


class CellDatum:
    """
    An affine Weyl group together with a weight function L: S → Γ^{>0}.

    The group is either the extended group W = W₀ ⋉ P (Ω ≅ P/Q acts) or, for groups of Coxeter
    type C̃_r with unequal end parameters, the non-extended group W' = W₀ ⋉ Q.
    """

    def __init__(
        self,
        root_datum: Union[RootDatum, str],
        weights: Optional[Mapping] = None,
        gamma_rank: int = 1,
        mode: str = EXTENDED,
    ):
        """
        Constructs a new cell datum and validates its weight function.

        Arguments:
            root_datum {Union[RootDatum, str]} -- The root datum, or its Cartan type.
            weights {Mapping, optional} -- Map from generator ("s0".."sr" or 0..r) to an int or an exponent vector.
                Defaults to equal parameters when gamma_rank is 1, and to one Γ coordinate per conjugacy
                class when gamma_rank equals the number of classes.
            gamma_rank {int, optional} -- The rank of Γ = ℤ^gamma_rank. Defaults to 1.
            mode {str, optional} -- "extended" or "non-extended". Defaults to "extended".
        """
        if isinstance(root_datum, str):
            root_datum = RootDatum(root_datum)
        if mode not in (EXTENDED, NON_EXTENDED):
            raise ConfigurationError(f"unknown mode {mode!r}.", field="mode")
        if not isinstance(gamma_rank, int) or gamma_rank < 1:
            raise ConfigurationError("must be a positive integer.", field="gamma_rank")

        self.root_datum = root_datum
        self.mode = mode
        self.gamma_rank = gamma_rank
        self.rank = root_datum.rank
        self.weyl_group = root_datum.weyl_group
        self.scale = root_datum.coxeter_number + 1

        self._lengths: Dict[AffineElement, int] = {}
        self._weight_lengths: Dict[AffineElement, GammaElement] = {}
        self._words: Dict[AffineElement, Tuple[int, Tuple[int, ...]]] = {}
        self._bruhat: Dict[Tuple[AffineElement, AffineElement], bool] = {}
        self._lock = threading.RLock()
        self._strata: List[List[AffineElement]] = []

        self.identity = self.element((0,) * self.rank, self.weyl_group.identity, check=False)
        self.w0 = self.element((0,) * self.rank, self.weyl_group.longest, check=False)

        theta_reflection = self.weyl_group.index_of(
            tuple(1 - sum(root_datum.theta_coroot) * c for c in root_datum.theta_omega)
        )
        self.generators: List[AffineElement] = [self.element(root_datum.theta_omega, theta_reflection, check=False)]
        for i in range(self.rank):
            self.generators.append(self.element((0,) * self.rank, self.weyl_group.simple[i], check=False))

        self._extended_omega = self._find_omega()
        if mode == EXTENDED:
            self.omega_elements = list(self._extended_omega)
        else:
            if not (root_datum.family == "B" or root_datum.name in ("A1", "C2")):
                raise ConfigurationError(
                    "the non-extended mode is only available when W' has Coxeter type C̃_r (types A1, B_r, C2).",
                    field="mode",
                )
            self.omega_elements = [self.identity]
        self._omega_keys = {root_datum.coset_key(pi.translation): k for k, pi in enumerate(self.omega_elements)}

        self.coxeter_matrix = self._coxeter_matrix()
        self.weights = self._validate_weights(weights)

        # Special points: P in the extended mode, Q in the non-extended mode.
        if mode == EXTENDED:
            self.box_periods: Weight = (1,) * self.rank
        else:
            self.box_periods = tuple(
                abs(_gcd_all(root_datum.cartan[j][i] for j in range(self.rank))) for i in range(self.rank)
            )
        self._box = self._enumerate_box()
        self._box_set = frozenset(self._box)
        logger.debug(f"Built {self}: |W0| = {len(self.weyl_group)}, |Omega| = {len(self.omega_elements)}.")

    def __repr__(self) -> str:
        return f"CellDatum({self.root_datum.name!r}, mode={self.mode!r}, weights={self.weight_labels()})"

    # Construction.

    def element(self, translation: Sequence[int], finite: int, check: bool = True) -> AffineElement:
        translation = tuple(int(c) for c in translation)
        if check:
            if len(translation) != self.rank:
                raise ConfigurationError(f"translation {list(translation)} does not have rank {self.rank}.", field="translation")
            if self.mode == NON_EXTENDED and not self.root_datum.in_root_lattice(translation):
                raise DomainError(f"translation {list(translation)} is not in the root lattice.")
        return AffineElement(self, translation, finite)

    def translation(self, x: Sequence[int]) -> AffineElement:
        """
        Returns p_x.
        """
        return self.element(x, self.weyl_group.identity)

    def finite_element(self, u: int) -> AffineElement:
        return self.element((0,) * self.rank, u, check=False)

    def from_word(self, word: Iterable[int], omega: int = 0) -> AffineElement:
        """
        Returns π_omega·s_{word[0]}·s_{word[1]}⋯.
        """
        element = self.omega_elements[omega]
        for i in word:
            element = self.multiply(element, self.generators[i])
        return element

    def _check(self, *elements: AffineElement) -> None:
        for element in elements:
            if element.datum is not self:
                raise ConfigurationError("elements belong to different cell data.", field="datum")

    # Group law.

    def multiply(self, a: AffineElement, b: AffineElement) -> AffineElement:
        """
        (x, u)·(y, v) = (x + u(y), uv).
        """
        self._check(a, b)
        moved = self.weyl_group.apply(a.finite, b.translation)
        return AffineElement(
            self, tuple(p + q for p, q in zip(a.translation, moved)), self.weyl_group.multiply(a.finite, b.finite)
        )

    def inverse(self, a: AffineElement) -> AffineElement:
        self._check(a)
        u_inverse = self.weyl_group.inverse(a.finite)
        return AffineElement(self, tuple(-c for c in self.weyl_group.apply(u_inverse, a.translation)), u_inverse)

    def product(self, *elements: AffineElement) -> AffineElement:
        result = self.identity
        for element in elements:
            result = self.multiply(result, element)
        return result

    def is_translation(self, a: AffineElement) -> bool:
        return a.finite == self.weyl_group.identity

    # Alcove geometry.

    def _scaled_point(self, a: AffineElement) -> Weight:
        """
        (h+1)·a(p₀) in ω-coordinates, i.e. u(ρ) + (h+1)x.
        """
        rho_image = self.weyl_group.rho_image(a.finite)
        return tuple(r + self.scale * x for r, x in zip(rho_image, a.translation))

    def length(self, a: AffineElement) -> int:
        """
        The number of affine hyperplanes separating A₀ from a(A₀).
        """
        cached = self._lengths.get(a)
        if cached is not None:
            return cached
        point = self._scaled_point(a)
        value = 0
        for coroot in self.root_datum.positive_coroots:
            value += abs(dot(point, coroot) // self.scale)
        self._lengths[a] = value
        return value

    def length_by_descents(self, a: AffineElement) -> int:
        """
        Length recomputed through l(w) = 1 + l(sw) for a left descent s.
        """
        n = 0
        while True:
            descents = self.left_descents(a)
            if not descents:
                return n
            a = self.multiply(self.generators[min(descents)], a)
            n += 1

    def left_descents(self, a: AffineElement) -> FrozenSet[int]:
        point = self._scaled_point(a)
        descents = {i + 1 for i, c in enumerate(point) if c < 0}
        if dot(point, self.root_datum.theta_coroot) > self.scale:
            descents.add(0)
        return frozenset(descents)

    def right_descents(self, a: AffineElement) -> FrozenSet[int]:
        return self.left_descents(self.inverse(a))

    def descents(self, a: AffineElement, side: str = "left") -> FrozenSet[int]:
        if side == "left":
            return self.left_descents(a)
        if side == "right":
            return self.right_descents(a)
        raise ConfigurationError(f"side must be 'left' or 'right', got {side!r}.", field="side")

    # Ω.

    def _find_omega(self) -> List[AffineElement]:
        """
        The length-zero elements of the extended group, one per class of P/Q; the identity comes first.
        """
        root_datum = self.root_datum
        candidates = [(0,) * self.rank]
        for j, c in enumerate(root_datum.theta_coroot):
            if c == 1:
                candidates.append(tuple(1 if k == j else 0 for k in range(self.rank)))
        found: Dict[Tuple, AffineElement] = {}
        for x in candidates:
            key = root_datum.coset_key(x)
            if key in found:
                continue
            for u in range(len(self.weyl_group)):
                pi = AffineElement(self, x, u)
                if self.length(pi) == 0:
                    found[key] = pi
                    break
        return list(found.values())

    def omega_index(self, a: AffineElement) -> int:
        if self.mode == NON_EXTENDED:
            return 0
        return self._omega_keys[self.root_datum.coset_key(a.translation)]

    def omega_part(self, a: AffineElement) -> AffineElement:
        return self.omega_elements[self.omega_index(a)]

    def omega_conjugation(self, pi: AffineElement) -> Dict[int, int]:
        """
        The permutation of S induced by s ↦ πsπ⁻¹.
        """
        pi_inverse = self.inverse(pi)
        permutation = {}
        for i, s in enumerate(self.generators):
            conjugate = self.product(pi, s, pi_inverse)
            permutation[i] = self.generators.index(conjugate)
        return permutation

    # Words and weights.

    def reduced_word(self, a: AffineElement) -> Tuple[int, Tuple[int, ...]]:
        """
        Returns (k, word) with a = π_k·s_{word[0]}⋯s_{word[-1]}; at each step the smallest left descent is taken.
        """
        cached = self._words.get(a)
        if cached is not None:
            return cached
        self._check(a)
        k = self.omega_index(a)
        rest = self.multiply(self.inverse(self.omega_elements[k]), a)
        word = []
        while True:
            descents = self.left_descents(rest)
            if not descents:
                break
            s = min(descents)
            word.append(s)
            rest = self.multiply(self.generators[s], rest)
        result = (k, tuple(word))
        self._words[a] = result
        return result

    def sort_key(self, a: AffineElement) -> Tuple:
        k, word = self.reduced_word(a)
        return (len(word), k, word)

    def weight(self, s: int) -> GammaElement:
        return self.weights[s]

    def weight_length(self, a: AffineElement) -> GammaElement:
        """
        L(a) = Σ L(s) over a reduced word; Ω contributes 0.
        """
        cached = self._weight_lengths.get(a)
        if cached is not None:
            return cached
        total = [0] * self.gamma_rank
        for s in self.reduced_word(a)[1]:
            for k, e in enumerate(self.weights[s]):
                total[k] += e
        value = GammaElement(total)
        self._weight_lengths[a] = value
        return value

    def weight_labels(self) -> Dict[str, List[int]]:
        return {f"s{i}": list(self.weights[i]) for i in range(self.rank + 1)} if hasattr(self, "weights") else {}

    def _coxeter_matrix(self) -> Dict[Tuple[int, int], int]:
        """
        Orders m(s, t) of products of generators; 0 stands for ∞.
        """
        matrix = {}
        n = self.rank + 1
        for i in range(n):
            for j in range(n):
                if i == j:
                    matrix[(i, j)] = 1
                    continue
                product = self.multiply(self.generators[i], self.generators[j])
                power, order = product, 1
                while order <= 6 and not power.is_identity():
                    power = self.multiply(power, product)
                    order += 1
                matrix[(i, j)] = order if power.is_identity() else 0
        return matrix

    def conjugacy_classes(self) -> List[FrozenSet[int]]:
        """
        Classes of S under conjugation in the group: generators joined by an odd braid relation are
        conjugate, and in the extended mode Ω permutes them further.
        """
        graph = nx.Graph()
        graph.add_nodes_from(range(self.rank + 1))
        for (i, j), m in self.coxeter_matrix.items():
            if i < j and m % 2 == 1:
                graph.add_edge(i, j)
        if self.mode == EXTENDED:
            for pi in self.omega_elements[1:]:
                for i, j in self.omega_conjugation(pi).items():
                    if i != j:
                        graph.add_edge(i, j)
        return sorted((frozenset(c) for c in nx.connected_components(graph)), key=min)

    def _validate_weights(self, weights: Optional[Mapping]) -> List[GammaElement]:
        classes = self.conjugacy_classes()
        n = self.rank + 1
        given: Dict[int, GammaElement] = {}
        if weights is None:
            if self.gamma_rank == 1:
                weights = {i: 1 for i in range(n)}
            elif self.gamma_rank == len(classes):
                weights = {}
                for k, members in enumerate(classes):
                    for i in members:
                        weights[i] = tuple(1 if c == len(classes) - 1 - k else 0 for c in range(self.gamma_rank))
            else:
                raise ConfigurationError(
                    f"explicit weights are required when gamma_rank ({self.gamma_rank}) differs from 1 and from the "
                    f"number of conjugacy classes of generators ({len(classes)}).",
                    field="weights",
                )
        for key, value in weights.items():
            index = _generator_index(key, n)
            exps = (value,) if isinstance(value, int) else tuple(value)
            if len(exps) != self.gamma_rank:
                raise ConfigurationError(f"exponent vector {list(exps)} does not have rank {self.gamma_rank}.", field=f"weights.s{index}")
            given[index] = GammaElement(exps)

        resolved: List[Optional[GammaElement]] = [None] * n
        for members in classes:
            values = {i: given[i] for i in members if i in given}
            if not values:
                raise ConfigurationError(f"no weight given for the conjugacy class {_class_label(members)}.", field="weights")
            distinct = sorted(set(values.values()))
            if len(distinct) > 1:
                ordered = sorted(values, key=values.get)
                a, b = ordered[0], ordered[-1]
                raise ConfigurationError(
                    f"L(s{a}) != L(s{b}) but s{a} and s{b} are conjugate (class {_class_label(members)}); "
                    "a weight function must be constant on conjugacy classes.",
                    field="weights",
                )
            for i in members:
                resolved[i] = distinct[0]
        for i, value in enumerate(resolved):
            if not value.is_positive():
                raise ConfigurationError(f"L(s{i}) = {list(value)} is not positive.", field=f"weights.s{i}")

        if self.mode == NON_EXTENDED:
            pi = self._extended_omega[1]
            end = self.omega_conjugation(pi)[0]
            if not resolved[0] < resolved[end]:
                raise ConfigurationError(
                    f"the non-extended mode requires L(s0) < L(s{end}) so that the special points form Q.",
                    field="weights",
                )
        return resolved

    # Bruhat order and balls.

    def bruhat_leq(self, y: AffineElement, w: AffineElement) -> bool:
        """
        Bruhat order; in the extended mode πy ≤ π'w iff π = π' and y ≤ w.
        """
        self._check(y, w)
        if self.omega_index(y) != self.omega_index(w):
            return False
        pi_inverse = self.inverse(self.omega_part(w))
        return self._bruhat_leq(self.multiply(pi_inverse, y), self.multiply(pi_inverse, w))

    def _bruhat_leq(self, y: AffineElement, w: AffineElement) -> bool:
        if y == w:
            return True
        length_y, length_w = self.length(y), self.length(w)
        if length_y >= length_w:
            return False
        key = (y, w)
        cached = self._bruhat.get(key)
        if cached is not None:
            return cached
        s = min(self.left_descents(w))
        sw = self.multiply(self.generators[s], w)
        sy = self.multiply(self.generators[s], y)
        lower = sy if s in self.left_descents(y) else y
        result = self._bruhat_leq(lower, sw)
        self._bruhat[key] = result
        return result

    def _grow_strata(self, radius: int, progress: bool = False) -> None:
        with self._lock:
            if not self._strata:
                self._strata.append(sorted(self.omega_elements))
            steps = range(len(self._strata), radius + 1)
            for n in tqdm(steps, desc="Enumerating ball", disable=not progress or not steps):
                seen = set()
                for w in self._strata[n - 1]:
                    for s in self.generators:
                        ws = self.multiply(w, s)
                        if ws not in seen and self.length(ws) == n:
                            seen.add(ws)
                self._strata.append(sorted(seen))

    def stratum(self, n: int) -> List[AffineElement]:
        """
        The elements of length exactly n, in sort order.
        """
        self._grow_strata(n)
        return list(self._strata[n])

    def enumerate_ball(self, radius: int, progress: bool = False) -> List[AffineElement]:
        """
        All elements of length at most `radius`, in sort order.
        """
        if radius < 0:
            return []
        self._grow_strata(radius, progress=progress)
        return [w for n in range(radius + 1) for w in self._strata[n]]

    def weak_order_graph(self, radius: int) -> nx.DiGraph:
        """
        The right weak order on the ball: an edge w → ws, labelled s, whenever l(ws) = l(w) + 1 ≤ radius.
        """
        graph = nx.DiGraph()
        for w in self.enumerate_ball(radius):
            graph.add_node(w, length=self.length(w))
            for i, s in enumerate(self.generators):
                ws = self.multiply(w, s)
                if self.length(ws) == self.length(w) + 1 and self.length(ws) <= radius:
                    graph.add_edge(w, ws, generator=i)
        return graph

    # Boxes, quarters and the lowest cell.

    def _box_alcoves(self) -> List[AffineElement]:
        """
        The elements a ∈ W' with aA₀ inside the fundamental box.
        """
        root_datum = self.root_datum
        alcoves = []
        for u in range(len(self.weyl_group)):
            rho_image = self.weyl_group.rho_image(u)
            ranges = []
            for i, c in enumerate(rho_image):
                first = 1 if c < 0 else 0
                ranges.append(range(first, first + self.box_periods[i]))
            for x in itertools.product(*ranges):
                if root_datum.in_root_lattice(x):
                    alcoves.append(AffineElement(self, x, u))
        return alcoves

    def _enumerate_box(self) -> List[AffineElement]:
        # Ω fixes A₀, so b⁻¹A₀ = aA₀ for every b = π·a⁻¹.
        box = sorted(self.multiply(pi, self.inverse(a)) for pi in self.omega_elements for a in self._box_alcoves())
        length_w0 = self.length(self.w0)
        for b in box:
            if self.length(self.multiply(b, self.w0)) != self.length(b) + length_w0:
                raise VerificationError(f"l({b}·w0) is not l({b}) + l(w0).", witness=b)
        if len(box) != len(self.weyl_group):
            raise VerificationError(f"the box has {len(box)} elements, expected |W0| = {len(self.weyl_group)}.")
        return box

    def box_elements(self) -> List[AffineElement]:
        """
        B₀: the elements b with b⁻¹A₀ inside the fundamental box, so that l(b·w₀) = l(b) + l(w₀).
        """
        return list(self._box)

    def is_in_box(self, a: AffineElement) -> bool:
        return a in self._box_set

    def is_in_U0(self, a: AffineElement) -> bool:
        """
        Whether a⁻¹A₀ lies inside the dominant chamber, i.e. a has no finite right descent.
        """
        return all(c > 0 for c in self._scaled_point(self.inverse(a)))

    def translation_length(self, x: Sequence[int]) -> int:
        """
        l(p_x) for a dominant x, i.e. Σ_{α>0} <x, α^∨>.
        """
        return sum(dot(x, coroot) for coroot in self.root_datum.positive_coroots)

    def is_special_translation(self, x: Sequence[int]) -> bool:
        return self.root_datum.is_dominant(x) and (self.mode == EXTENDED or self.root_datum.in_root_lattice(x))

    def c0_factorize(self, z: AffineElement) -> Optional[Factorization]:
        """
        Writes z = w₁·w₀·p_x·w₂⁻¹ with w₁, w₂ ∈ B₀, x dominant and lengths adding up.

        Returns:
            Optional[Factorization] -- (w₁, x, w₂), or None when z lies outside the lowest cell.
        """
        self._check(z)
        length_z = self.length(z)
        length_w0 = self.length(self.w0)
        finite = frozenset(range(1, self.rank + 1))
        for w1 in self._box:
            length_w1 = self.length(w1)
            if length_w1 + length_w0 > length_z:
                continue
            y = self.multiply(self.inverse(w1), z)
            if self.length(y) != length_z - length_w1 or not finite <= self.left_descents(y):
                continue
            v = self.multiply(self.w0, y)
            length_v = self.length(v)
            for w2 in self._box:
                t = self.multiply(v, w2)
                if not self.is_translation(t) or not self.is_special_translation(t.translation):
                    continue
                if length_v == self.length(t) + self.length(w2):
                    return w1, t.translation, w2
        return None

    def c0_factorize_bruteforce(self, z: AffineElement) -> Optional[Factorization]:
        """
        Exhaustive search over all pairs (w₁, w₂) ∈ B₀².
        """
        found = []
        w0_inverse = self.inverse(self.w0)
        for w1 in self._box:
            for w2 in self._box:
                t = self.product(w0_inverse, self.inverse(w1), z, w2)
                if not self.is_translation(t) or not self.is_special_translation(t.translation):
                    continue
                if self.length(z) == self.length(w1) + self.length(self.w0) + self.length(t) + self.length(w2):
                    found.append((w1, t.translation, w2))
        if len(found) > 1:
            raise ArithmeticError(f"{z} has {len(found)} lowest-cell factorizations.")
        return found[0] if found else None

    def c0_compose(self, w1: AffineElement, x: Sequence[int], w2: AffineElement) -> AffineElement:
        """
        Returns w₁·w₀·p_x·w₂⁻¹.
        """
        return self.product(w1, self.w0, self.translation(x), self.inverse(w2))

    def dominant_translations(self, max_length: int) -> List[Weight]:
        """
        Dominant x (in Q in the non-extended mode) with l(p_x) ≤ max_length.
        """
        if max_length < 0:
            return []
        weights = self.root_datum.dominant_weights_up_to(max_length, root_lattice_only=self.mode == NON_EXTENDED)
        return [x for x in weights if self.translation_length(x) <= max_length]

    def c0_elements(self, radius: int) -> Dict[AffineElement, Factorization]:
        """
        The lowest cell intersected with the ball of the given radius, with factorizations.
        """
        elements = {}
        base = self.length(self.w0)
        for w1 in self._box:
            for w2 in self._box:
                outer = base + self.length(w1) + self.length(w2)
                for x in self.dominant_translations(radius - outer):
                    z = self.c0_compose(w1, x, w2)
                    if self.length(z) != outer + self.translation_length(x):
                        logger.warning(f"Skipping {z}: lengths of {w1}, w0, p_{list(x)}, {w2} do not add up.")
                        continue
                    elements[z] = (w1, x, w2)
        return dict(sorted(elements.items()))

    # Serialisation.

    def element_to_json(self, a: AffineElement) -> dict:
        word = self.weyl_group.word(a.finite)
        return {"omega": self.omega_index(a), "finite": [i + 1 for i in word], "translation": list(a.translation)}

    def element_from_json(self, obj: Mapping) -> AffineElement:
        word = [int(i) - 1 for i in obj.get("finite", [])]
        if any(i < 0 or i >= self.rank for i in word):
            raise ConfigurationError(f"finite word {obj.get('finite')} uses unknown generators.", field="element.finite")
        element = self.element(obj.get("translation", (0,) * self.rank), self.weyl_group.from_word(word))
        if "omega" in obj and int(obj["omega"]) != self.omega_index(element):
            raise ConfigurationError(
                f"omega label {obj['omega']} does not match the translation class ({self.omega_index(element)}).",
                field="element.omega",
            )
        return element


def _generator_index(key, n: int) -> int:
    if isinstance(key, str):
        label = key.strip().lower()
        if label.startswith("s"):
            label = label[1:]
        if not label.isdigit():
            raise ConfigurationError(f"unknown generator {key!r}.", field="weights")
        key = int(label)
    if not isinstance(key, int) or not 0 <= key < n:
        raise ConfigurationError(f"unknown generator {key!r}; expected s0..s{n - 1}.", field="weights")
    return key


def _class_label(members: Iterable[int]) -> str:
    return "{" + ", ".join(f"s{i}" for i in sorted(members)) + "}"


def _gcd_all(values: Iterable[int]) -> int:
    return functools.reduce(math.gcd, values, 0)
