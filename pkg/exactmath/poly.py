"""
Weight-homogeneous polynomials over QQ / GF(p), backed by sympy's sparse PolyRing.
The ring does the arithmetic; Poly adds the variable weights and keeps every nonzero
element homogeneous.
"""
from __future__ import annotations
from functools import lru_cache
from collections.abc import Iterator, Sequence, Mapping

from sympy.polys.domains.domain import Domain
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyElement, PolyRing

from exactmath.field import coerce, render

Exponent = tuple[int, ...]


def monomials(weight: int, weights: Sequence[int]) -> list[Exponent]:
    """
    All exponent vectors e with sum(e_i * weights_i) == weight.
    Args:
        weight (int): Target weight (>= 0).
        weights (Sequence[int]): Positive weight of each variable.
    Returns:
        list[Exponent]: Exponents in descending lexicographic order (x_0 heaviest first).
    """
    if weight < 0:
        return []

    def _rec(i: int, remaining: int) -> Iterator[Exponent]:
        if i == len(weights):
            if remaining == 0:
                yield ()
            return
        for e in range(remaining // weights[i], -1, -1):
            for tail in _rec(i + 1, remaining - e * weights[i]):
                yield (e,) + tail

    return list(_rec(0, weight))


@lru_cache(maxsize = None)
def polynomial_ring(field: Domain, nvars: int) -> PolyRing:
    """The ring field[x1, ..., x_nvars], shared by every Poly with that field and variable count."""
    return PolyRing([f"x{i + 1}" for i in range(nvars)], field, lex)


class Poly:
    """
    Weight-homogeneous polynomial with exact coefficients.
    Attributes:
        field (Domain): Coefficient field (QQ or GF(p)).
        weights (tuple[int, ...]): Weight of each variable; all 1 for the ambient ring S = k[V].
        element (PolyElement): The underlying sympy polynomial.
    The zero polynomial has no weight; every nonzero Poly is checked to be homogeneous
    when built.
    """
    __slots__ = ("field", "weights", "element", "_weight")

    def __init__(self, field: Domain, weights: Sequence[int], terms: Mapping[Exponent, object] | None = None):
        """
        Build a polynomial, dropping zero coefficients.
        Args:
            field (Domain): Coefficient field.
            weights (Sequence[int]): Positive variable weights; its length is the variable count.
            terms (Mapping[Exponent, object] | None): Coefficients by exponent vector.
        Raises:
            ValueError: If an exponent has the wrong length or the terms are not homogeneous.
        """
        weights = tuple(weights)
        coeffs = {}
        for exp, c in (terms or {}).items():
            if len(exp) != len(weights):
                raise ValueError(f"Exponent {exp} does not match {len(weights)} variables")
            coeffs[tuple(exp)] = coerce(field, c)
        self._init(field, weights, polynomial_ring(field, len(weights)).from_dict(coeffs))

    def _init(self, field: Domain, weights: tuple[int, ...], element: PolyElement) -> None:
        self.field = field
        self.weights = weights
        self.element = element
        found = {sum(e * d for e, d in zip(exp, weights)) for exp in element.itermonoms()}
        if len(found) > 1:
            raise ValueError(f"Polynomial is not homogeneous (weights {sorted(found)})")
        self._weight = found.pop() if found else None

    def _wrap(self, element: PolyElement) -> Poly:
        out = Poly.__new__(Poly)
        out._init(self.field, self.weights, element)
        return out

    @classmethod
    def zero(cls, field: Domain, weights: Sequence[int]) -> Poly:
        return cls(field, weights)

    @classmethod
    def constant(cls, field: Domain, weights: Sequence[int], c: object = 1) -> Poly:
        return cls(field, weights, {(0,) * len(weights): c})

    @classmethod
    def variable(cls, field: Domain, weights: Sequence[int], i: int) -> Poly:
        if not (0 <= i < len(weights)):
            raise IndexError(f"Variable {i} is out of range (0-{len(weights) - 1})")
        return cls(field, weights, {tuple(int(j == i) for j in range(len(weights))): 1})

    @classmethod
    def linear_form(cls, field: Domain, coeffs: Sequence) -> Poly:
        """The weight-1 polynomial sum(coeffs_i * x_i) in the standard-graded ring."""
        n = len(coeffs)
        return cls(field, (1,) * n, {tuple(int(j == i) for j in range(n)): c for i, c in enumerate(coeffs)})

    @classmethod
    def from_vector(cls, field: Domain, weights: Sequence[int], basis: Sequence[Exponent], vector: Sequence) -> Poly:
        """Polynomial with coefficient vector `vector` on the monomial basis `basis`."""
        return cls(field, weights, dict(zip(basis, vector)))

    @property
    def nvars(self) -> int:
        return len(self.weights)

    @property
    def terms(self) -> dict[Exponent, object]:
        """Nonzero coefficients by exponent vector."""
        return dict(self.element.iterterms())

    @property
    def is_zero(self) -> bool:
        return not self.element

    @property
    def weight(self) -> int:
        """
        Weight of a nonzero polynomial.
        Raises:
            ValueError: For the zero polynomial, whose weight is undefined.
        """
        if self._weight is None:
            raise ValueError("The zero polynomial has no weight")
        return self._weight

    def coefficient(self, exp: Exponent) -> object:
        return self.element.get(tuple(exp), self.field.zero)

    def coefficient_vector(self, basis: Sequence[Exponent]) -> list:
        """
        Coefficients on a monomial basis.
        Raises:
            ValueError: If a term lies outside the basis.
        """
        index = set(basis)
        for exp in self.element.itermonoms():
            if exp not in index:
                raise ValueError(f"Monomial {exp} is not in the given basis")
        return [self.coefficient(exp) for exp in basis]

    def _check_compatible(self, other: Poly) -> None:
        if self.field != other.field or self.weights != other.weights:
            raise ValueError("Polynomials live in different rings")

    def __add__(self, other: Poly) -> Poly:
        self._check_compatible(other)
        return self._wrap(self.element + other.element)

    def __neg__(self) -> Poly:
        return self._wrap(-self.element)

    def __sub__(self, other: Poly) -> Poly:
        self._check_compatible(other)
        return self._wrap(self.element - other.element)

    def scale(self, c: object) -> Poly:
        return self._wrap(self.element.mul_ground(coerce(self.field, c)))

    def __mul__(self, other: Poly | int) -> Poly:
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check_compatible(other)
        return self._wrap(self.element * other.element)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            raise ValueError(f"Negative power {k}")
        return self._wrap(self.element ** k)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self.weights == other.weights and self.element == other.element

    def __hash__(self) -> int:
        return hash((self.weights, self.element))

    def evaluate(self, point: Sequence) -> object:
        """
        Value at a point given as ints or field elements.
        Raises:
            ValueError: If the point has the wrong length.
        """
        if len(point) != self.nvars:
            raise ValueError(f"Point has {len(point)} coordinates, expected {self.nvars}")
        return self.element(*[coerce(self.field, x) for x in point])

    def derivative(self, i: int) -> Poly:
        """Partial derivative with respect to variable i (stays homogeneous)."""
        d = self.element.diff(i)
        # diff keeps coefficients that vanish mod p
        d.strip_zero()
        return self._wrap(d)

    def substitute(self, values: Sequence[Poly]) -> Poly:
        """
        Substitute polynomials for the variables: f(values_0, ..., values_{m-1}).
        All values must live in one ring and value i must have weight weights_i
        (or be zero), so the result is homogeneous.
        """
        if len(values) != self.nvars:
            raise ValueError(f"Expected {self.nvars} substitutions, got {len(values)}")
        target = values[0]
        for v in values[1:]:
            target._check_compatible(v)
        ring = target.element.ring
        images = [v.element for v in values]
        result = ring.zero
        for exp, c in self.element.iterterms():
            term = ring.ground_new(c)
            for x, e in zip(images, exp):
                if e:
                    term *= x ** e
            result += term
        return target._wrap(result)

    def compose_linear(self, matrix: Sequence[Sequence[int]]) -> Poly:
        """
        The polynomial x -> f(M x) for an integer matrix M (variables of weight 1).
        This is the action of a group element on S = k[V] used for invariants.
        """
        ring = self.element.ring
        forms = [Poly.linear_form(self.field, row).element for row in matrix]
        return self._wrap(self.element.compose(list(zip(ring.gens, forms))))

    def sorted_terms(self) -> list[tuple[Exponent, object]]:
        return sorted(self.terms.items(), reverse = True)

    def to_string(self, names: Sequence[str] | None = None) -> str:
        """Readable form such as `y1*y3 - y2^2`, terms in descending exponent order."""
        if self.is_zero:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, exp) if e)
            coeff = render(self.field, c)
            negative = coeff.startswith("-")
            mag = coeff[1:] if negative else coeff
            if mono:
                text = mono if mag == "1" else f"{mag}*{mono}"
            else:
                text = mag
            parts.append(("- " if negative else "+ ") + text)
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    def __repr__(self) -> str:
        return f"Poly({self.to_string()})"
