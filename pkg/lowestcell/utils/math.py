from fractions import Fraction
from typing import List, Sequence, Union

from sympy import isprime

from lowestcell.exceptions import ConfigurationError


def parse_rational(value: Union[str, int, Fraction], field: str = "value") -> Fraction:
    """
    Parses an exact rational given as an integer or a string "p/q".

    Arguments:
        value {Union[str, int, Fraction]} -- The value to parse.
        field {str} -- Configuration path reported on failure.

    Returns:
        Fraction -- The parsed rational.
    """
    if isinstance(value, bool):
        raise ConfigurationError(f"expected a rational, got {value!r}.", field=field)
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError):
        raise ConfigurationError(f"expected a rational 'p/q', got {value!r}.", field=field) from None


def parse_rational_list(value: Union[str, Sequence], field: str = "value") -> List[Fraction]:
    """
    Parses "3,1/2" or ["3", "1/2"] into a list of Fractions.
    """
    if isinstance(value, str):
        value = [part for part in value.split(",") if part.strip()]
    return [parse_rational(v, field=f"{field}[{i}]") for i, v in enumerate(value)]


def format_rational(value: Union[int, Fraction]) -> str:
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def check_prime(p: int, field: str = "spectra.field") -> int:
    if not isinstance(p, int) or isinstance(p, bool) or not isprime(p):
        raise ConfigurationError(f"{p!r} is not a prime.", field=field)
    return p


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))
