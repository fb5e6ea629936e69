"""
The invariant ring k[V]^W = H*(BG, k): Reynolds operator, Molien series, degreewise
invariants, minimal generators, relations and the local models over a point.
Weights are half-codegrees: the coordinate functions on V have weight 1 (codegree 2).
"""
from __future__ import annotations
import logging
from dataclasses import dataclass
from functools import lru_cache
from collections.abc import Sequence

from sympy import Matrix
from sympy.polys.domains import QQ

from constants import CODEGREE_PER_WEIGHT, DEFAULT_AUDIT_FACTOR, DEFAULT_RELATION_FACTOR
from errors import PreconditionError, VerificationError
from exactmath.field import coerce
from exactmath.linalg import (IntMat, clear_denominators, complement_basis, echelon_form, field_matrix, identity, integer_kernel,
                             kernel, minus_identity, rank, saturate)
from exactmath.poly import Exponent, Poly, monomials
from group import GroupData, Subgroup, is_reflection_action, is_reflection_group, restrict
from strata import integer_point, pointwise_stabilizer, resolve, setwise_stabilizer

logger = logging.getLogger(__name__)


@dataclass(frozen = True)
class Presentation:
    """
    Generators and relations of k[V]^W.
    Attributes:
        rank (int): n, the number of ambient variables.
        characteristic (int): Coefficient characteristic.
        group_order (int): |W|.
        generators (tuple[Poly, ...]): Invariant polynomials, by nondecreasing weight.
        weights (tuple[int, ...]): Weights d_1 <= ... <= d_m of the generators.
        relations (tuple[Poly, ...]): Polynomials in y_1..y_m (weight(y_i) = d_i) vanishing on the generators.
        relation_bound (int): Weight bound D through which relations were searched.
        molien (tuple[int, ...]): Hilbert series coefficients used for the audit.
        relations_certified (bool): True when no relation can lie beyond D.
    """
    rank: int
    characteristic: int
    group_order: int
    generators: tuple[Poly, ...]
    weights: tuple[int, ...]
    relations: tuple[Poly, ...]
    relation_bound: int
    molien: tuple[int, ...]
    relations_certified: bool

    @property
    def is_polynomial(self) -> bool:
        return not self.relations and len(self.generators) == self.rank

    @property
    def codegrees(self) -> tuple[int, ...]:
        return tuple(CODEGREE_PER_WEIGHT * d for d in self.weights)

    def generator_values(self, point: Sequence[int]) -> list:
        """The image q = (g_1(v), ..., g_m(v)) of a point of V in generator coordinates."""
        return [g.evaluate(point) for g in self.generators]


@dataclass(frozen = True)
class LocalModel:
    """
    Decomposition of the completed local ring over the image of a point v.
    Attributes:
        point (tuple[int, ...]): v.
        orbit_size (int): Number of primes over the image prime, |W| / |G_p|.
        setwise (Subgroup): G_p, the stabilizer of the line through v.
        pointwise (Subgroup): W_v, the stabilizer of v.
        fixed_basis (IntMat): Basis of V^{W_v}.
        complement_basis (IntMat): Basis of the W_v-stable complement V'.
        complement_action (tuple[IntMat, ...]): Matrices of W_v on V' (one per element of W_v).
        regular (bool): True iff W_v acts on V' as a reflection group.
    """
    point: tuple[int, ...]
    orbit_size: int
    setwise: Subgroup
    pointwise: Subgroup
    fixed_basis: IntMat
    complement_basis: IntMat
    complement_action: tuple[IntMat, ...]
    regular: bool


def _ambient(group: GroupData) -> tuple[int, ...]:
    return (1,) * group.rank


def act(f: Poly, matrix: IntMat) -> Poly:
    """The polynomial x -> f(M x)."""
    return f.compose_linear(matrix)


def reynolds(group: GroupData, f: Poly) -> Poly:
    """
    Average of f over the group: |W|^-1 * sum_g f(M_g x).
    The result is invariant; invariants are left unchanged.
    """
    field = f.field
    total = Poly.zero(field, f.weights)
    for m in group.elements:
        total = total + act(f, m)
    return total.scale(field.one / coerce(field, group.order))


@lru_cache(maxsize = None)
def _det_series(matrix: IntMat, bound: int) -> tuple[int, ...]:
    """Coefficients of 1 / det(I - t M) up to t^bound (integers, since det(I - tM) = 1 + ...)."""
    coeffs = [int(c) for c in Matrix(matrix).charpoly().all_coeffs()]
    out = [1]
    for j in range(1, bound + 1):
        out.append(-sum(coeffs[k] * out[j - k] for k in range(1, min(j, len(coeffs) - 1) + 1)))
    return tuple(out)


@lru_cache(maxsize = None)
def molien(group: GroupData, bound: int) -> tuple[int, ...]:
    """
    Hilbert series coefficients of k[V]^W up to weight `bound`, computed over Q from the
    integral matrices: (1/|W|) sum_g 1 / det(I - t M_g).
    Raises:
        VerificationError: If a coefficient is not a nonnegative integer.
    """
    totals = [0] * (bound + 1)
    for m in group.elements:
        for j, c in enumerate(_det_series(m, bound)):
            totals[j] += c
    out = []
    for j, t in enumerate(totals):
        value = QQ(t, group.order)
        if QQ.denom(value) != 1 or value < 0:
            raise VerificationError(f"Molien coefficient {value} at weight {j} is not a nonnegative integer")
        out.append(int(QQ.numer(value)))
    return tuple(out)


def _action_rows(group: GroupData, index: int, weight: int, basis: Sequence[Exponent]) -> list[list]:
    """Rows of (rho_w(g) - I) on the monomial basis of S_w."""
    field = group.field
    matrix = group.elements[index]
    position = {e: i for i, e in enumerate(basis)}
    columns = []
    for exp in basis:
        image = act(Poly(field, _ambient(group), {exp: 1}), matrix)
        col = image.coefficient_vector(basis)
        col[position[exp]] -= field.one
        columns.append(col)
    return [list(row) for row in zip(*columns)]


@lru_cache(maxsize = None)
def invariant_basis(group: GroupData, weight: int) -> tuple[Poly, ...]:
    """
    Basis of the weight-w invariants (S_w)^W as the kernel of the stacked (rho_w(g) - I)
    over the generators of W, in reduced echelon form on the descending monomial basis.
    Raises:
        VerificationError: If the dimension differs from the Molien coefficient.
    """
    field = group.field
    basis = monomials(weight, _ambient(group))
    rows = []
    for i in group.generator_indices:
        rows.extend(_action_rows(group, i, weight, basis))
    vectors = kernel(rows, field, len(basis))
    expected = molien(group, weight)[weight]
    if len(vectors) != expected:
        raise VerificationError(
            f"{group}: {len(vectors)} invariants of weight {weight} but the Molien series predicts {expected}")
    logger.debug("%r: %d invariants of weight %d", group, len(vectors), weight)
    return tuple(Poly.from_vector(field, _ambient(group), basis, v) for v in vectors)


def _evaluate_monomials(gens: Sequence[Poly], ymons: Sequence[Exponent], cache: dict[tuple[int, int], Poly]) -> list[Poly]:
    """The products prod_i g_i^{a_i} for each exponent a in ymons."""
    out = []
    for a in ymons:
        term = Poly.constant(gens[0].field, gens[0].weights)
        for i, e in enumerate(a):
            if e:
                if (i, e) not in cache:
                    cache[(i, e)] = gens[i] ** e
                term = term * cache[(i, e)]
        out.append(term)
    return out


@lru_cache(maxsize = None)
def generators(group: GroupData) -> tuple[tuple[Poly, int], ...]:
    """
    Minimal homogeneous generators of k[V]^W with their weights.
    Weights 1..|W| are scanned (the non-modular degree bound); at each weight the new
    generators span a complement of the decomposables inside the invariants.
    """
    field = group.field
    gens: list[Poly] = []
    weights: list[int] = []
    cache: dict[tuple[int, int], Poly] = {}
    for w in range(1, group.order + 1):
        basis = monomials(w, _ambient(group))
        invariants = [f.coefficient_vector(basis) for f in invariant_basis(group, w)]
        if not invariants:
            continue
        decomposable = []
        if gens:
            products = _evaluate_monomials(gens, monomials(w, weights), cache)
            decomposable = [f.coefficient_vector(basis) for f in products]
        for v in complement_basis(invariants, decomposable, field, len(basis)):
            gens.append(Poly.from_vector(field, _ambient(group), basis, v))
            weights.append(w)
    logger.debug("%r: generator weights %s", group, weights)
    return tuple(zip(gens, weights))


def _multiples(found: Sequence[Poly], weights: tuple[int, ...], ymons: Sequence[Exponent]) -> list[list]:
    """Coefficient vectors of every monomial multiple of the found relations landing in the weight of ymons."""
    if not found or not ymons:
        return []
    w = sum(e * d for e, d in zip(ymons[0], weights))
    field = found[0].field
    out = []
    for r in found:
        for b in monomials(w - r.weight, weights):
            out.append((r * Poly(field, weights, {b: 1})).coefficient_vector(ymons))
    return out


def relations(group: GroupData, gens: Sequence[tuple[Poly, int]], bound: int) -> tuple[Poly, ...]:
    """
    Relations among the generators through weight `bound`.
    At each weight the kernel of the evaluation map k[y]_w -> S_w is computed and reduced
    modulo multiples of lower relations; the rank of the map is audited against Molien.
    Raises:
        VerificationError: If the image dimension differs from the Molien coefficient or a
            relation does not vanish on the generators.
    """
    field = group.field
    polys = [g for g, _ in gens]
    weights = tuple(d for _, d in gens)
    series = molien(group, bound)
    found: list[Poly] = []
    cache: dict[tuple[int, int], Poly] = {}
    for w in range(1, bound + 1):
        ymons = monomials(w, weights)
        if not ymons:
            continue
        basis = monomials(w, _ambient(group))
        images = [f.coefficient_vector(basis) for f in _evaluate_monomials(polys, ymons, cache)]
        matrix = [list(row) for row in zip(*images)]
        rels = kernel(matrix, field, len(ymons))
        if len(ymons) - len(rels) != series[w]:
            raise VerificationError(
                f"{group}: generators span {len(ymons) - len(rels)} invariants of weight {w}, Molien says {series[w]}")
        multiples = _multiples(found, weights, ymons)
        for v in complement_basis(rels, multiples, field, len(ymons)):
            rel = Poly.from_vector(field, weights, ymons, v)
            if not rel.substitute(polys).is_zero:
                raise VerificationError(f"Relation {rel.to_string()} does not vanish on the generators")
            found.append(rel)
    return tuple(found)


def relations_complete(group: GroupData, weights: tuple[int, ...], found: Sequence[Poly], through: int) -> bool:
    """
    Hilbert-series test that `found` generates every relation through weight `through`.
    In each weight w the relations form a space of dimension |k[y]_w| - Molien_w; the
    test passes iff the multiples of `found` fill it.
    """
    series = molien(group, through)
    for w in range(1, through + 1):
        ymons = monomials(w, weights)
        expected = len(ymons) - series[w]
        if expected and rank(_multiples(found, weights, ymons), group.field, len(ymons)) != expected:
            logger.debug("%r: relations incomplete at weight %d", group, w)
            return False
    return True


def default_relation_bound(weights: Sequence[int]) -> int:
    return DEFAULT_RELATION_FACTOR * max(weights, default = 1)


def presentation(group: GroupData, p: int | None = None, bound: int | None = None) -> Presentation:
    """
    Generators, relations through weight D and the Molien audit table of k[V]^W.
    Relations are certified complete when the generators are algebraically independent
    (m = n), when D >= 2|W| (the degree bound for relations of non-modular invariant
    rings), or when relations_complete finds nothing missing through 2|W|.
    Raises:
        VerificationError: If polynomiality disagrees with the reflection-group test.
    """
    group = resolve(group, p)
    gens = generators(group)
    weights = tuple(d for _, d in gens)
    bound = default_relation_bound(weights) if bound is None else bound
    rels = relations(group, gens, bound)
    audit = max(bound, DEFAULT_AUDIT_FACTOR * group.order)
    certified = (len(gens) == group.rank or bound >= 2 * group.order
                 or relations_complete(group, weights, rels, 2 * group.order))
    pres = Presentation(group.rank, group.characteristic, group.order, tuple(g for g, _ in gens), weights,
                        rels, bound, molien(group, audit), certified)
    reflection = is_reflection_group(group.whole())
    if pres.is_polynomial != reflection:
        raise VerificationError(
            f"{group}: invariant ring polynomial={pres.is_polynomial} but reflection group={reflection}")
    return pres


def molien_audit(group: GroupData, p: int | None = None, bound: int | None = None) -> list[tuple[int, int, int]]:
    """(weight, invariant dimension over k, Molien coefficient) for every weight up to bound (default 2|W|)."""
    group = resolve(group, p)
    bound = DEFAULT_AUDIT_FACTOR * group.order if bound is None else bound
    series = molien(group, bound)
    return [(w, len(invariant_basis(group, w)), series[w]) for w in range(bound + 1)]


def complement_lattice(subgroup: Subgroup) -> IntMat:
    """Saturated lattice of the image of I - P, P the averaging projector of the subgroup."""
    n = subgroup.parent.rank
    total = field_matrix([[0] * n for _ in range(n)], QQ)
    for m in subgroup.matrices:
        total += field_matrix(m, QQ)
    proj = field_matrix(identity(n), QQ) - total * QQ(1, subgroup.order)
    spanning, _ = echelon_form(proj.transpose().to_list(), QQ, n)
    return saturate([clear_denominators(v, QQ) for v in spanning], n)


def local_model(group: GroupData, v: Sequence[int], p: int | None = None) -> LocalModel:
    """
    Orbit/stabilizer data of the primes over the image of v, and the splitting
    V = V^{W_v} ⊕ V' with the W_v-action on V'.
    Raises:
        PreconditionError: If v is zero.
    """
    group = resolve(group, p)
    setwise = setwise_stabilizer(group, v)
    pointwise = pointwise_stabilizer(group, v)
    point = integer_point(v)
    if not pointwise.issubset(setwise):
        raise VerificationError(f"Pointwise stabilizer of {point} is not inside the setwise stabilizer")
    if group.order % setwise.order:
        raise VerificationError(f"Setwise stabilizer order {setwise.order} does not divide {group.order}")
    complement = complement_lattice(pointwise)
    action = restrict(pointwise, complement)
    regular = is_reflection_action(action, group.characteristic)
    return LocalModel(point, group.order // setwise.order, setwise, pointwise, pointwise.fixed_basis,
                      complement, tuple(action), regular)


def complement_fixed_rank(model: LocalModel) -> int:
    """Rank of the vectors of V' fixed by all of W_v (zero when V^{W_v} was split off completely)."""
    size = len(model.complement_basis)
    if size == 0:
        return 0
    rows = [row for m in model.complement_action for row in minus_identity(m)]
    return len(integer_kernel(rows, size))


def check_presentation_rank(pres: Presentation, point: Sequence[int]) -> None:
    if len(point) != pres.rank:
        raise PreconditionError(f"Point has {len(point)} coordinates but the presentation has rank {pres.rank}")
