from __future__ import annotations
import logging
from collections.abc import Callable, Sequence

from constants import DEFAULT_LIMITS, VERIFY_CHARACTERISTICS, Limits
from errors import NucleusError, VerificationError
from group import GroupData, is_reflection_group
from invariants import complement_fixed_rank, local_model, molien_audit, presentation
from lattice import Lattice, contains
from singular import Verdict, compare_strata, supp_dsg
from strata import closed_strata, closed_subgroups, nuclear_circles, nucleus

logger = logging.getLogger(__name__)


class VerificationRunner:
    """
    Runs every cross-check between the stratum classifier, the invariant ring and the
    Jacobian oracle on one group, over a sweep of characteristics.
    Attributes:
        group (GroupData): The group under test (its own characteristic is ignored).
        limits (Limits): Relation and search bounds.
        characteristics (tuple[int, ...]): Characteristics to test; those dividing |W| are skipped.
        echo (bool): If True, prints one line per check.
        history (list[tuple[str, int, bool, str]]): (check, characteristic, passed, detail) records.
    """
    def __init__(self, group: GroupData, limits: Limits = DEFAULT_LIMITS,
                 characteristics: Sequence[int] = VERIFY_CHARACTERISTICS, echo: bool = True):
        self.group = group
        self.limits = limits
        self.characteristics = tuple(p for p in characteristics if p == 0 or group.order % p)
        self.echo = echo
        self.history = []
        self._nuclei = {}

    def run(self) -> bool:
        """
        Run all checks in every admissible characteristic.
        Returns:
            bool: True iff no check failed.
        """
        for p in self.characteristics:
            g = self.group.with_characteristic(p)
            self._check("molien audit", p, lambda: self._molien(g))
            self._check("classifier vs jacobian", p, lambda: self._oracle(g))
            self._check("upward closure", p, lambda: self._upward(g))
            self._check("origin rule", p, lambda: self._origin(g))
            self._check("local models", p, lambda: self._local_models(g))
            self._check("singular support", p, lambda: self._support(g))
            self._check("nuclear circles", p, lambda: self._circles(g))
        self._check("characteristic independence", None, self._independence)
        return self.passed

    @property
    def passed(self) -> bool:
        return all(ok for _, _, ok, _ in self.history)

    def _check(self, name: str, p: int | None, fn: Callable[[], str]) -> None:
        try:
            detail = fn()
            ok = True
        except NucleusError as e:
            detail = str(e)
            ok = False
            logger.warning("%s failed for %r (p=%s): %s", name, self.group, p, e)
        self.history.append((name, p, ok, detail))
        if self.echo:
            where = "" if p is None else f" [p={p}]"
            print(f"{'PASS' if ok else 'FAIL'} {name}{where}: {detail}")

    def _nucleus(self, g: GroupData):
        if g.characteristic not in self._nuclei:
            self._nuclei[g.characteristic] = nucleus(g, height_bound = self.limits.height_bound)
        return self._nuclei[g.characteristic]

    def _molien(self, g: GroupData) -> str:
        rows = molien_audit(g)
        bad = [(w, dim, expected) for w, dim, expected in rows if dim != expected]
        if bad:
            raise VerificationError(f"invariant dimensions differ from Molien coefficients at {bad}")
        return f"{len(rows)} weights agree"

    def _oracle(self, g: GroupData) -> str:
        checks = compare_strata(g, bound = self.limits.relation_bound, height_bound = self.limits.height_bound)
        undecided = [c.stratum.representative for c in checks if c.verdict.kind is Verdict.INCONCLUSIVE]
        if undecided:
            raise VerificationError(f"Jacobian criterion inconclusive at {undecided}; raise the relation bound")
        return f"{len(checks)} closed strata agree"

    def _upward(self, g: GroupData) -> str:
        closed = closed_subgroups(g)
        pairs = 0
        for k in closed:
            if is_reflection_group(k):
                continue
            for k2 in closed:
                if k.issubset(k2):
                    pairs += 1
                    if is_reflection_group(k2):
                        raise VerificationError(f"{k} is not a reflection group but {k2} containing it is")
        return f"{pairs} pairs checked"

    def _origin(self, g: GroupData) -> str:
        nuc = self._nucleus(g)
        pres = presentation(g, bound = self.limits.relation_bound)
        if nuc.strata and not nuc.includes_origin:
            raise VerificationError("positive strata without the origin")
        if nuc.includes_origin == pres.is_polynomial:
            raise VerificationError(f"origin included={nuc.includes_origin} but polynomial={pres.is_polynomial}")
        return f"classification {nuc.classification.value}"

    def _local_models(self, g: GroupData) -> str:
        strata = closed_strata(g, height_bound = self.limits.height_bound)
        for s in strata:
            model = local_model(g, s.representative)
            if model.orbit_size * model.setwise.order != g.order:
                raise VerificationError(f"orbit size {model.orbit_size} times {model.setwise.order} is not {g.order}")
            if complement_fixed_rank(model):
                raise VerificationError(f"complement at {s.representative} has fixed vectors")
        return f"{len(strata)} points checked"

    def _support(self, g: GroupData) -> str:
        nuc = self._nucleus(g)
        support = supp_dsg(g, bound = self.limits.relation_bound, height_bound = self.limits.height_bound)
        expected = sorted(nuc.bases() + ([()] if nuc.includes_origin else []))
        if support.bases() != expected:
            raise VerificationError(f"singular support {support.bases()} differs from nucleus {expected}")
        return f"{len(support.members)} members"

    def _circles(self, g: GroupData) -> str:
        nuc = self._nucleus(g)
        circles = nuclear_circles(g, height = 1)
        for c in circles:
            if not any(contains(s.lattice, Lattice(g.rank, (c.vector,))) for s in nuc.strata):
                raise VerificationError(f"nuclear circle {c.vector} lies in no nucleus stratum")
        return f"{len(circles)} nuclear circles"

    def _independence(self) -> str:
        bases = {p: n.bases() for p, n in self._nuclei.items()}
        if len({tuple(b) for b in bases.values()}) > 1:
            raise VerificationError(f"nucleus strata depend on the characteristic: {bases}")
        return f"{len(bases)} characteristics agree"
