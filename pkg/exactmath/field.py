from __future__ import annotations
from fractions import Fraction
from functools import lru_cache
from collections.abc import Sequence

from sympy import isprime
from sympy.polys.domains import QQ, GF
from sympy.polys.domains.domain import Domain

from errors import PreconditionError


@lru_cache(maxsize = None)
def coefficient_field(p: int) -> Domain:
    """
    Return the exact coefficient field of characteristic p.
    Args:
        p (int): 0 for the rationals, otherwise a prime.
    Returns:
        Domain: sympy's QQ for p = 0, GF(p) with residues 0..p-1 otherwise.
    Raises:
        PreconditionError: If p is negative or not prime.
    """
    if p == 0:
        return QQ
    if p < 0 or not isprime(p):
        raise PreconditionError(f"Characteristic must be 0 or a prime (got: {p})")
    return GF(p, symmetric = False)


def characteristic(field: Domain) -> int:
    """Return the characteristic of a coefficient field (0 for QQ)."""
    return int(field.characteristic())


def embed(field: Domain, x: int | Fraction) -> object:
    """
    Map an integer or a Python Fraction into the field.
    Raises:
        PreconditionError: If a denominator vanishes in the field.
    """
    if isinstance(x, Fraction):
        num, den = field(x.numerator), field(x.denominator)
        if den == field.zero:
            raise PreconditionError(f"Denominator of {x} vanishes in characteristic {characteristic(field)}")
        return num / den
    return field(int(x))


def coerce(field: Domain, x: object) -> object:
    """
    Return x as an element of field.
    Integers are embedded; elements of another field are a contract violation.
    Raises:
        PreconditionError: On an element belonging to a different field.
    """
    if isinstance(x, (int, Fraction)):
        return embed(field, x)
    if field.of_type(x):
        return x
    raise PreconditionError(f"Entry {x!r} does not belong to {field}")


def is_zero(field: Domain, x: object) -> bool:
    return x == field.zero


def to_fraction(field: Domain, x: object) -> Fraction | int:
    """
    Convert a field element into a plain Python number.
    Rationals become Fraction (int when integral); F_p elements become their residue 0..p-1.
    """
    p = characteristic(field)
    if p:
        return int(x) % p
    value = Fraction(int(field.numer(x)), int(field.denom(x)))
    return value.numerator if value.denominator == 1 else value


def render(field: Domain, x: object) -> str:
    return str(to_fraction(field, x))


def reduce_mod_p(x: int | Sequence, p: int) -> object:
    """
    Reduce an integer object (scalar, vector or matrix) entrywise into F_p.
    Nested lists and tuples keep their shape; reduction commutes with matrix products.
    Args:
        x (int | Sequence): Integer or nested sequence of integers.
        p (int): A prime.
    Returns:
        The same shape with GF(p) entries.
    """
    field = coefficient_field(p)
    if p == 0:
        raise PreconditionError("reduce_mod_p needs a prime, got 0")
    if isinstance(x, int):
        return field(x)
    reduced = [reduce_mod_p(item, p) for item in x]
    return tuple(reduced) if isinstance(x, tuple) else reduced
