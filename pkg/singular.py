"""
Jacobian-criterion singularity oracle for Spec k[V]^W, the homogeneous singular locus
and the singular support of the singularity category with its witness modules.
"""
from __future__ import annotations
import logging
from dataclasses import dataclass
from enum import Enum
from collections.abc import Sequence

from constants import DEFAULT_HEIGHT_BOUND
from errors import PreconditionError, VerificationError
from exactmath.field import coefficient_field, coerce
from exactmath.linalg import IntMat, rank
from group import GroupData, Subgroup, is_reflection_action, restrict
from invariants import Presentation, check_presentation_rank, complement_lattice, presentation
from strata import Stratum, closed_strata, integer_point, nucleus, origin_stratum, resolve

logger = logging.getLogger(__name__)


class Verdict(Enum):
    SMOOTH = "SMOOTH"
    SINGULAR = "SINGULAR"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen = True)
class JacobianVerdict:
    """
    Outcome of the Jacobian criterion at the image of a point.
    Attributes:
        kind (Verdict): SMOOTH, SINGULAR or INCONCLUSIVE.
        rank (int): Rank of the Jacobian of the relations at q.
        expected_rank (int): m - n, the codimension of Spec k[V]^W in affine m-space.
        reason (str | None): Why the verdict is inconclusive.
    """
    kind: Verdict
    rank: int
    expected_rank: int
    reason: str | None = None


@dataclass(frozen = True)
class WitnessModule:
    """
    The cyclic module R/p for the prime p of a singular stratum, with the evidence that the
    local ring at p is not regular (so the residue field there is not small).
    Attributes:
        stratum (Stratum): The singular stratum (the origin when its lattice has rank 0).
        description (str): Readable description of R/p.
        stabilizer (Subgroup): K, the pointwise stabilizer of the stratum.
        complement_basis (IntMat): Basis of the K-stable complement V'.
        complement_action (tuple[IntMat, ...]): K acting on V'.
        complement_is_reflection (bool): Always False for a valid witness.
    """
    stratum: Stratum
    description: str
    stabilizer: Subgroup
    complement_basis: IntMat
    complement_action: tuple[IntMat, ...]
    complement_is_reflection: bool


@dataclass(frozen = True)
class StratumCheck:
    stratum: Stratum
    classifier_singular: bool
    verdict: JacobianVerdict


@dataclass(frozen = True)
class SingularSupport:
    """
    Support of Dsg(C*(BG)): the singular strata, the origin when W is not a reflection
    group, and one witness per member.
    """
    members: tuple[WitnessModule, ...]
    characteristic: int

    def bases(self) -> list[tuple[tuple[int, ...], ...]]:
        return sorted(w.stratum.lattice.basis for w in self.members)


def jacobian_at(pres: Presentation, v: Sequence[int]) -> JacobianVerdict:
    """
    Jacobian criterion at q = (g_1(v), ..., g_m(v)).
    Args:
        pres (Presentation): Output of presentation().
        v (Sequence[int]): Nonzero point of V.
    Returns:
        JacobianVerdict: SMOOTH iff the rank equals m - n; otherwise SINGULAR when the
            relations are certified complete and INCONCLUSIVE when they were truncated.
    Raises:
        PreconditionError: If v is zero (over k) or has the wrong number of coordinates.
        VerificationError: If the rank exceeds m - n.
    """
    point = integer_point(v)
    check_presentation_rank(pres, point)
    p = pres.characteristic
    if p and all(x % p == 0 for x in point):
        raise PreconditionError(f"Point {point} vanishes in characteristic {p}")
    field = coefficient_field(p)
    q = [coerce(field, x) for x in pres.generator_values(point)]
    m = len(pres.generators)
    rows = [[r.derivative(i).evaluate(q) for i in range(m)] for r in pres.relations]
    r = rank(rows, field, m) if rows else 0
    expected = m - pres.rank
    if r == expected:
        return JacobianVerdict(Verdict.SMOOTH, r, expected)
    if r > expected:
        raise VerificationError(f"Jacobian rank {r} at {point} exceeds the codimension {expected}")
    if pres.relations_certified:
        return JacobianVerdict(Verdict.SINGULAR, r, expected)
    reason = f"relations searched only through weight {pres.relation_bound}"
    logger.warning("Jacobian at %s inconclusive (rank %d < %d): %s", point, r, expected, reason)
    return JacobianVerdict(Verdict.INCONCLUSIVE, r, expected, reason)


def compare_strata(group: GroupData, p: int | None = None, bound: int | None = None,
                   height_bound: int = DEFAULT_HEIGHT_BOUND) -> list[StratumCheck]:
    """
    Classifier verdict against the Jacobian oracle at every closed-stratum representative.
    Raises:
        VerificationError: On a SMOOTH/SINGULAR disagreement.
    """
    group = resolve(group, p)
    pres = presentation(group, bound = bound)
    checks = []
    for s in closed_strata(group, height_bound = height_bound):
        verdict = jacobian_at(pres, s.representative)
        if verdict.kind is not Verdict.INCONCLUSIVE and (verdict.kind is Verdict.SINGULAR) != s.nuclear:
            raise VerificationError(
                f"{group}: classifier says singular={s.nuclear} at {s.representative} "
                f"but the Jacobian criterion says {verdict.kind.value}")
        checks.append(StratumCheck(s, s.nuclear, verdict))
    return checks


def singular_locus(group: GroupData, p: int | None = None, bound: int | None = None,
                   height_bound: int = DEFAULT_HEIGHT_BOUND) -> list[Stratum]:
    """
    Maximal singular strata away from the origin, computed by the classifier and confirmed
    by the Jacobian oracle.
    Raises:
        VerificationError: If the two computations disagree.
    """
    group = resolve(group, p)
    compare_strata(group, bound = bound, height_bound = height_bound)
    return list(nucleus(group, height_bound = height_bound).strata)


def witness_module(group: GroupData, stratum: Stratum, p: int | None = None) -> WitnessModule:
    """
    Witness R/p for a singular stratum: its stabilizer K acts on the complement V' of V^K
    without being a reflection group there, so the local ring is not regular.
    Raises:
        PreconditionError: If the stratum is smooth.
        VerificationError: If the complement action turns out to be a reflection group.
    """
    group = resolve(group, p)
    if not stratum.nuclear:
        raise PreconditionError(f"Stratum {stratum.lattice.basis} is smooth and has no witness module")
    k = stratum.subgroup if stratum.subgroup.parent is group else Subgroup(group, stratum.subgroup.indices)
    complement = complement_lattice(k)
    action = tuple(restrict(k, complement))
    regular = is_reflection_action(action, group.characteristic)
    if regular:
        raise VerificationError(f"Stabilizer of order {k.order} acts on the complement as a reflection group")
    if stratum.is_origin:
        description = "R/I_G, the graded residue field at the irrelevant ideal"
    else:
        span = ", ".join(str(b) for b in stratum.lattice.basis)
        description = f"R/p for the prime of the image of span{{{span}}}"
    return WitnessModule(stratum, description, k, complement, action, regular)


def supp_dsg(group: GroupData, p: int | None = None, bound: int | None = None,
             height_bound: int = DEFAULT_HEIGHT_BOUND) -> SingularSupport:
    """
    Support of the singularity category: singular_locus plus the origin when W is not a
    reflection group, each member with its witness module. Empty for reflection groups.
    """
    group = resolve(group, p)
    members = []
    origin = origin_stratum(group)
    if origin.nuclear:
        members.append(witness_module(group, origin))
    for s in singular_locus(group, bound = bound, height_bound = height_bound):
        members.append(witness_module(group, s))
    return SingularSupport(tuple(members), group.characteristic)
