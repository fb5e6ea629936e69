"""
Torus subgroups of T^n as saturated sublattices of H_2(BT, Z) = Z^n.
A circle subgroup is a primitive vector up to sign; a rank-r torus is a saturated rank-r sublattice.
"""
from __future__ import annotations
import logging
from dataclasses import dataclass
from collections.abc import Sequence

from sympy.polys.domains import QQ

from errors import PreconditionError, VerificationError
from exactmath.field import coefficient_field, reduce_mod_p
from exactmath.linalg import IntMat, minus_identity, primitive, rank, saturate
from group import GroupData, Subgroup, pointwise_fixer

logger = logging.getLogger(__name__)


@dataclass(frozen = True)
class Lattice:
    """
    Saturated sublattice of Z^n with a canonical basis.
    Attributes:
        ambient_rank (int): n.
        basis (IntMat): Canonical hermite_form rows (possibly none).
    Equal lattices have equal bases, so equality is a literal comparison.
    """
    ambient_rank: int
    basis: IntMat

    def __post_init__(self):
        for row in self.basis:
            if len(row) != self.ambient_rank:
                raise ValueError(f"Basis row {row} does not have length {self.ambient_rank}")

    @property
    def rank(self) -> int:
        return len(self.basis)

    def vectors(self) -> list[list[int]]:
        return [list(row) for row in self.basis]


@dataclass(frozen = True, order = True)
class CircleClass:
    """
    A circle subgroup of T^n: a primitive integer vector whose first nonzero entry is positive.
    """
    vector: tuple[int, ...]

    def __post_init__(self):
        if not any(self.vector):
            raise PreconditionError("A circle class cannot be the zero vector")
        if primitive(self.vector) != self.vector:
            raise ValueError(f"Circle class {self.vector} is not primitive")
        if next(x for x in self.vector if x) < 0:
            raise ValueError(f"Circle class {self.vector} is not sign-normalized")


def circle_to_point(r: Sequence[int]) -> CircleClass:
    """
    The circle subgroup defined by an integer tuple, i.e. its point [r_1 : ... : r_n].
    Args:
        r (Sequence[int]): Nonzero integer vector.
    Returns:
        CircleClass: r divided by the gcd of its entries, first nonzero entry made positive.
    Raises:
        PreconditionError: If every entry is zero.
    """
    if not any(r):
        raise PreconditionError("Not all entries of a circle vector may be zero")
    v = primitive(r)
    if next(x for x in v if x) < 0:
        v = tuple(-x for x in v)
    return CircleClass(v)


def torus_to_subspace(circles: Sequence[Sequence[int]], ambient_rank: int | None = None) -> Lattice:
    """
    The saturated sublattice H_2(BH) spanned by the circle factors of a torus H.
    Args:
        circles (Sequence[Sequence[int]]): Linearly independent integer vectors.
        ambient_rank (int | None): n, needed when circles is empty.
    Raises:
        PreconditionError: If the vectors are dependent over Q.
    """
    rows = [tuple(c.vector) if isinstance(c, CircleClass) else tuple(int(x) for x in c) for c in circles]
    n = ambient_rank if ambient_rank is not None else (len(rows[0]) if rows else 0)
    return Lattice(n, saturate(rows, n))


def fixed_lattice(subgroup: Subgroup) -> Lattice:
    """
    The lattice of vectors fixed by every element of the subgroup.
    When the parent group has characteristic p > 0, also checks that the reduction of the
    integral fixed lattice spans the fixed space over F_p.
    Raises:
        VerificationError: If the dimensions over Z and over F_p disagree.
    """
    parent = subgroup.parent
    lat = Lattice(parent.rank, subgroup.fixed_basis)
    p = parent.characteristic
    if p:
        verify_fixed_space_mod_p(subgroup, p)
    return lat


def verify_fixed_space_mod_p(subgroup: Subgroup, p: int) -> None:
    """
    Check H_2(BT, F_p)^K = H_2(BT, Z)^K ⊗ F_p: the reduced lattice basis stays independent
    and has the dimension of the F_p fixed space.
    Raises:
        VerificationError: On any mismatch (only possible when p divides |W|).
    """
    field = coefficient_field(p)
    n = subgroup.parent.rank
    rows = [row for m in subgroup.matrices[1:] for row in minus_identity(m)]
    dim_fp = n - rank(rows, field, n)
    basis = subgroup.fixed_basis
    reduced_rank = rank(reduce_mod_p([list(b) for b in basis], p), field, n) if basis else 0
    if dim_fp != len(basis) or reduced_rank != len(basis):
        raise VerificationError(
            f"Fixed space of {subgroup} has dimension {dim_fp} over F_{p} but the integral "
            f"fixed lattice has rank {len(basis)} (reduced rank {reduced_rank})")


def witness_torus(subgroup: Subgroup) -> list[CircleClass]:
    """
    Circle subgroups C_1, ..., C_r whose classes form a basis of the fixed lattice of the
    subgroup; the torus C_1 x ... x C_r has H_2 equal to the fixed space.
    Raises:
        PreconditionError: If the fixed lattice is zero (only the trivial torus).
    """
    lat = fixed_lattice(subgroup)
    if lat.rank == 0:
        raise PreconditionError(f"{subgroup} fixes no nonzero vector; only the trivial torus remains")
    return [circle_to_point(row) for row in lat.basis]


def torus_centralizer(parent: GroupData, circles: Sequence[Sequence[int] | CircleClass]) -> Subgroup:
    """
    C_G(H)/T for the torus H spanned by the circles: the elements of W fixing each circle class.
    The empty torus is centralized by all of W.
    """
    lat = torus_to_subspace(circles, parent.rank)
    return pointwise_fixer(parent, lat.basis)


def contains(outer: Lattice, inner: Lattice) -> bool:
    """True iff inner ⊆ outer (equivalently, their rational spans are nested)."""
    if inner.rank == 0:
        return True
    if outer.rank < inner.rank:
        return False
    n = outer.ambient_rank
    return rank(list(outer.basis) + list(inner.basis), QQ, n) == outer.rank
