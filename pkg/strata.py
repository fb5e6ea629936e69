"""
Stratification of the group variety V/W by pointwise stabilizers and the nucleus.
A stratum is a closed subgroup K (the full pointwise stabilizer of V^K) with its fixed
lattice V^K; it is nuclear when K is not a reflection group.
"""
from __future__ import annotations
import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from collections.abc import Sequence

from sympy.polys.domains import QQ

from constants import DEFAULT_HEIGHT_BOUND
from errors import PreconditionError, SearchExhaustedError, VerificationError
from exactmath.linalg import clear_denominators, mat_vec, rank
from group import GroupData, Subgroup, is_reflection_group, pointwise_fixer, subgroups
from lattice import CircleClass, Lattice, circle_to_point, contains, fixed_lattice, torus_centralizer, witness_torus

logger = logging.getLogger(__name__)


class Classification(Enum):
    EMPTY = "EMPTY"
    TRIVIAL = "TRIVIAL"
    POSITIVE = "POSITIVE"


@dataclass(frozen = True)
class Stratum:
    """
    Points of V whose pointwise stabilizer is exactly a closed subgroup K.
    Attributes:
        subgroup (Subgroup): The closed subgroup K.
        lattice (Lattice): V^K (rank 0 for the origin).
        representative (tuple[int, ...] | None): A point with stabilizer exactly K; None for the origin.
        nuclear (bool): True iff K is not a reflection group.
    """
    subgroup: Subgroup
    lattice: Lattice
    representative: tuple[int, ...] | None
    nuclear: bool

    @property
    def is_origin(self) -> bool:
        return self.lattice.rank == 0

    def sort_key(self) -> tuple:
        return (-self.lattice.rank, self.lattice.basis, self.subgroup.indices)


@dataclass(frozen = True)
class Nucleus:
    """
    The nucleus as a union of maximal nuclear strata, plus the origin rule.
    Attributes:
        strata (tuple[Stratum, ...]): Maximal positive-dimensional nuclear strata, pairwise incomparable.
        includes_origin (bool): True iff W itself is not a reflection group.
        classification (Classification): EMPTY, TRIVIAL (only the origin) or POSITIVE.
        characteristic (int): Characteristic used for the reflection tests.
    """
    strata: tuple[Stratum, ...]
    includes_origin: bool
    classification: Classification
    characteristic: int = 0

    def bases(self) -> list[tuple[tuple[int, ...], ...]]:
        """Canonical form used for comparing nuclei across characteristics."""
        return sorted(s.lattice.basis for s in self.strata)


@dataclass(frozen = True)
class PointClassification:
    point: tuple[int, ...]
    stabilizer: Subgroup
    singular: bool
    witness: tuple[CircleClass, ...] = field(default = ())


def resolve(group: GroupData, p: int | None) -> GroupData:
    """The group carrying characteristic p (or its own characteristic when p is None)."""
    return group if p is None else group.with_characteristic(p)


def on_group(subgroup: Subgroup, group: GroupData) -> Subgroup:
    """The same index set viewed inside another characteristic variant of its parent."""
    if subgroup.parent is group:
        return subgroup
    return Subgroup(group, subgroup.indices)


def integer_point(v: Sequence[int | Fraction]) -> tuple[int, ...]:
    """
    Integral representative of the line through v (rational entries are cleared).
    Raises:
        PreconditionError: If v is the zero vector.
    """
    if not any(v):
        raise PreconditionError("The zero vector has no stabilizer stratum; use the origin rule")
    if all(isinstance(x, int) for x in v):
        return tuple(int(x) for x in v)
    return clear_denominators([QQ(Fraction(x).numerator, Fraction(x).denominator) for x in v], QQ)


def _check_point(group: GroupData, v: Sequence[int]) -> tuple[int, ...]:
    point = integer_point(v)
    if len(point) != group.rank:
        raise PreconditionError(f"Point has {len(point)} coordinates, the group acts on rank {group.rank}")
    p = group.characteristic
    if p and all(x % p == 0 for x in point):
        raise PreconditionError(f"Point {point} vanishes in characteristic {p}")
    return point


def pointwise_stabilizer(group: GroupData, v: Sequence[int], p: int | None = None) -> Subgroup:
    """
    {g in W : M_g v = v} over the field of characteristic p.
    Raises:
        PreconditionError: If v is zero (over k).
    """
    group = resolve(group, p)
    point = _check_point(group, v)
    q = group.characteristic
    keep = []
    for i, m in enumerate(group.elements):
        diff = [a - b for a, b in zip(mat_vec(m, point), point)]
        if all((d % q == 0) if q else d == 0 for d in diff):
            keep.append(i)
    return Subgroup(group, keep)


def setwise_stabilizer(group: GroupData, v: Sequence[int], p: int | None = None) -> Subgroup:
    """
    {g in W : M_g v ∈ k·v}, the stabilizer of the line (homogeneous prime) through v.
    Raises:
        PreconditionError: If v is zero (over k).
    """
    group = resolve(group, p)
    point = _check_point(group, v)
    k = group.field
    keep = [i for i, m in enumerate(group.elements) if rank([point, mat_vec(m, point)], k, group.rank) <= 1]
    return Subgroup(group, keep)


def closure(subgroup: Subgroup) -> Subgroup:
    """
    The full pointwise stabilizer of V^K; contains K and is idempotent.
    Computed over Z: the averaging argument makes it independent of the characteristic.
    """
    return pointwise_fixer(subgroup.parent, subgroup.fixed_basis)


@lru_cache(maxsize = None)
def closed_subgroups(group: GroupData) -> tuple[Subgroup, ...]:
    """
    All subgroups K with closure(K) = K, sorted by order and indices.
    Always contains closure(trivial) and W itself; every fixed lattice is checked mod p.
    """
    found = sorted({closure(k) for k in subgroups(group)})
    for k in found:
        fixed_lattice(k)
    logger.debug("%r has %d closed subgroups", group, len(found))
    return tuple(found)


def _value_rank(x: int) -> int:
    # 1, -1, 2, -2, ... with 0 after every nonzero value
    return 2 * abs(x) - (x > 0) if x else 1 << 30


def _candidates(r: int, height: int) -> list[tuple[int, ...]]:
    values = range(-height, height + 1)
    cands = [c for c in itertools.product(values, repeat = r) if max(map(abs, c)) == height]
    return sorted(cands, key = lambda c: (sum(1 for x in c if x), tuple(_value_rank(x) for x in c)))


def representative_point(subgroup: Subgroup, p: int | None = None, height_bound: int = DEFAULT_HEIGHT_BOUND) -> tuple[int, ...]:
    """
    An integer vector of V^K whose pointwise stabilizer over k is exactly K.
    Lattice combinations are tried by growing coefficient height, in a fixed order.
    Raises:
        PreconditionError: If V^K = 0.
        SearchExhaustedError: If no representative has coefficients of height <= height_bound.
    """
    group = resolve(subgroup.parent, p)
    subgroup = on_group(subgroup, group)
    basis = subgroup.fixed_basis
    if not basis:
        raise PreconditionError(f"{subgroup} fixes only the origin")
    q = group.characteristic
    for h in range(1, height_bound + 1):
        for c in _candidates(len(basis), h):
            v = tuple(sum(ci * b[j] for ci, b in zip(c, basis)) for j in range(group.rank))
            if q and all(x % q == 0 for x in v):
                continue
            if pointwise_stabilizer(group, v).indices == subgroup.indices:
                logger.debug("representative %s for %r found at height %d", v, subgroup, h)
                return v
    raise SearchExhaustedError(
        f"No point with stabilizer exactly {subgroup} up to height {height_bound} in characteristic {q}; "
        "raise --height-bound or use a larger characteristic (characteristic 0 always succeeds)")


def origin_stratum(group: GroupData) -> Stratum:
    """The origin: stabilizer W, nuclear iff W is not a reflection group."""
    whole = group.whole()
    return Stratum(whole, Lattice(group.rank, ()), None, not is_reflection_group(whole))


def closed_strata(group: GroupData, p: int | None = None, height_bound: int = DEFAULT_HEIGHT_BOUND) -> list[Stratum]:
    """Every positive-dimensional stratum, with a representative point, in canonical order."""
    group = resolve(group, p)
    out = []
    for k in closed_subgroups(group):
        lat = fixed_lattice(k)
        if lat.rank == 0:
            continue
        rep = representative_point(k, height_bound = height_bound)
        out.append(Stratum(k, lat, rep, not is_reflection_group(k)))
    return sorted(out, key = Stratum.sort_key)


def _maximal(strata: Sequence[Stratum]) -> list[Stratum]:
    keep = []
    for s in strata:
        if not any(t is not s and t.lattice != s.lattice and contains(t.lattice, s.lattice) for t in strata):
            keep.append(s)
    return keep


def nucleus(group: GroupData, p: int | None = None, height_bound: int = DEFAULT_HEIGHT_BOUND) -> Nucleus:
    """
    The nucleus: maximal V^K over closed K of positive fixed rank that are not reflection
    groups, together with the origin when W is not a reflection group.
    Raises:
        VerificationError: If a positive stratum appears while the origin is excluded.
    """
    group = resolve(group, p)
    nuclear = [s for s in closed_strata(group, height_bound = height_bound) if s.nuclear]
    strata = tuple(sorted(_maximal(nuclear), key = Stratum.sort_key))
    includes_origin = not is_reflection_group(group.whole())
    if strata and not includes_origin:
        raise VerificationError(f"{group}: nuclear strata found but the origin is not nuclear")
    if strata:
        kind = Classification.POSITIVE
    elif includes_origin:
        kind = Classification.TRIVIAL
    else:
        kind = Classification.EMPTY
    return Nucleus(strata, includes_origin, kind, group.characteristic)


def containment_chains(group: GroupData, p: int | None = None, height_bound: int = DEFAULT_HEIGHT_BOUND) -> list[tuple[Stratum, Stratum]]:
    """Pairs (nuclear stratum, maximal nuclear stratum containing it) for verbose reports."""
    group = resolve(group, p)
    nuclear = [s for s in closed_strata(group, height_bound = height_bound) if s.nuclear]
    tops = _maximal(nuclear)
    return [(s, next(t for t in tops if contains(t.lattice, s.lattice))) for s in nuclear]


def classify_point(group: GroupData, v: Sequence[int], p: int | None = None) -> PointClassification:
    """
    Classifier verdict at a nonzero point: singular iff its pointwise stabilizer is not a
    reflection group. A singular point comes with the witness torus of its stabilizer.
    Raises:
        PreconditionError: If v is zero.
    """
    group = resolve(group, p)
    point = _check_point(group, v)
    stab = pointwise_stabilizer(group, point)
    singular = not is_reflection_group(stab)
    witness = tuple(witness_torus(closure(stab))) if singular else ()
    return PointClassification(point, stab, singular, witness)


def is_nuclear_torus(group: GroupData, circles: Sequence[Sequence[int] | CircleClass], p: int | None = None) -> bool:
    """A torus is nuclear iff C_G(H)/T is not a reflection group; the empty torus is the trivial subgroup."""
    group = resolve(group, p)
    return not is_reflection_group(torus_centralizer(group, circles))


def nuclear_circles(group: GroupData, p: int | None = None, height: int = 2) -> list[CircleClass]:
    """Nuclear circle subgroups among primitive classes with entries of absolute value <= height."""
    group = resolve(group, p)
    seen = set()
    out = []
    for v in itertools.product(range(-height, height + 1), repeat = group.rank):
        if not any(v):
            continue
        c = circle_to_point(v)
        if c in seen:
            continue
        seen.add(c)
        if is_nuclear_torus(group, [c]):
            out.append(c)
    return sorted(out)


def projective_nonsingular(group: GroupData, p: int | None = None) -> bool:
    """True iff no circle subgroup is nuclear, i.e. the nucleus has no positive-dimensional stratum."""
    return not nucleus(group, p).strata
