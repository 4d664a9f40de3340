"""
Exact linear algebra over ℚ and 𝔽_p (through sympy's DomainMatrix), and determinants over
arbitrary commutative rings by cofactor expansion.
"""

from fractions import Fraction
from typing import Callable, Dict, Optional, Sequence, TypeVar

from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix

R = TypeVar("R")


def _domain_matrix(rows: Sequence[Sequence], modulus: Optional[int]) -> DomainMatrix:
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    if modulus is None:
        domain = QQ
        entries = [[QQ(Fraction(v).numerator, Fraction(v).denominator) for v in row] for row in rows]
    else:
        domain = GF(modulus)
        entries = [[domain(int(v) % modulus) for v in row] for row in rows]
    return DomainMatrix(entries, (n_rows, n_cols), domain)


def exact_rank(rows: Sequence[Sequence], modulus: Optional[int] = None) -> int:
    """
    Rank of a matrix with rational entries (or residues modulo a prime).
    """
    if not rows or not rows[0]:
        return 0
    return _domain_matrix(rows, modulus).rank()


def exact_det(rows: Sequence[Sequence], modulus: Optional[int] = None):
    """
    Determinant of a square matrix with rational entries (or residues modulo a prime).

    Returns:
        Fraction or int -- The determinant, as a Fraction over ℚ or an int in [0, p) over 𝔽_p.
    """
    if not rows:
        return Fraction(1) if modulus is None else 1
    value = _domain_matrix(rows, modulus).det()
    if modulus is None:
        return Fraction(int(value.numerator), int(value.denominator))
    return int(value) % modulus


def cofactor_det(matrix: Sequence[Sequence[R]], one: R, zero: R, mul: Callable[[R, R], R] = None) -> R:
    """
    Determinant over a commutative ring by Laplace expansion along rows, memoised on the set of
    remaining columns.

    Arguments:
        matrix {Sequence[Sequence[R]]} -- Square matrix of ring elements supporting +, - and *.
        one {R} -- The unit of the ring.
        zero {R} -- The zero of the ring.
        mul {Callable, optional} -- Multiplication, defaults to the * operator.

    Returns:
        R -- The determinant.
    """
    n = len(matrix)
    if mul is None:
        mul = lambda a, b: a * b  # noqa: E731
    memo: Dict[int, R] = {}

    def minor(mask: int) -> R:
        # Rows already used are the first n - |remaining columns| rows.
        if mask == 0:
            return one
        if mask in memo:
            return memo[mask]
        row = n - bin(mask).count("1")
        total = zero
        position = 0
        for col in range(n):
            if not mask & (1 << col):
                continue
            entry = matrix[row][col]
            if entry:
                term = mul(entry, minor(mask & ~(1 << col)))
                total = total - term if position % 2 else total + term
            position += 1
        memo[mask] = total
        return total

    return minor((1 << n) - 1)
