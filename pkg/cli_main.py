from __future__ import annotations
import argparse
import logging
import sys
import time
from fractions import Fraction
from collections.abc import Sequence

from constants import DEFAULT_HEIGHT_BOUND, DEFAULT_MAX_ORDER, VERIFY_CHARACTERISTICS, Limits
from errors import NucleusError, PreconditionError
from exactmath.field import render
from group import GroupData
from invariants import local_model, presentation
from lattice import torus_centralizer, torus_to_subspace, witness_torus
from presets import PRESETS, preset_group
from report import GroupSpec, Report, generator_names, load_spec, poly_record, stratum_record
from singular import jacobian_at
from strata import classify_point, containment_chains, is_nuclear_torus, nucleus
from verification_runner import VerificationRunner

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_PRECONDITION = 0, 1, 2


def parse_vector(text: str) -> tuple[int | Fraction, ...]:
    """Parse `1,0,-2` (or `1 0 -2`); entries may be fractions such as `1/2`."""
    tokens = text.replace(",", " ").split()
    if not tokens:
        raise PreconditionError("Empty vector")
    try:
        values = [Fraction(t) for t in tokens]
    except (ValueError, ZeroDivisionError):
        raise PreconditionError(f"Not an integer or rational vector: {text}") from None
    return tuple(int(x) if x.denominator == 1 else x for x in values)


def resolve_group(args: argparse.Namespace) -> GroupData:
    """The group named by --preset or --spec; --char overrides the characteristic of the input."""
    if args.spec:
        spec = load_spec(args.spec)
        if args.char is not None:
            spec = GroupSpec(spec.rank, spec.generators, args.char, spec.name)
        return spec.build(args.max_order)
    return preset_group(args.preset or "segre", args.char or 0, args.max_order)


def cmd_nucleus(group: GroupData, limits: Limits, verbose: bool = False) -> Report:
    nuc = nucleus(group, height_bound = limits.height_bound)
    report = Report("nucleus")
    report.data = {
        "group": _group_record(group),
        "classification": nuc.classification.value,
        "includes_origin": nuc.includes_origin,
        "strata": [stratum_record(s, witness_torus(s.subgroup)) for s in nuc.strata],
    }
    report.add(f"{_describe(group)}")
    report.add(f"Nucleus: {nuc.classification.value} (origin {'included' if nuc.includes_origin else 'excluded'})")
    for s in nuc.strata:
        circles = " x ".join(str(c.vector) for c in witness_torus(s.subgroup))
        report.add(f"  stratum span{_basis_text(s.lattice.basis)}  |K| = {s.subgroup.order}  witness torus {circles}")
    if verbose:
        chains = containment_chains(group, height_bound = limits.height_bound)
        report.data["chains"] = [[list(map(list, a.lattice.basis)), list(map(list, b.lattice.basis))] for a, b in chains]
        report.add("Nuclear strata and their maximal strata:")
        for a, b in chains:
            report.add(f"  span{_basis_text(a.lattice.basis)} <= span{_basis_text(b.lattice.basis)}")
    return report


def cmd_presentation(group: GroupData, limits: Limits, verbose: bool = False) -> Report:
    pres = presentation(group, bound = limits.relation_bound)
    ynames = generator_names(len(pres.generators))
    report = Report("presentation")
    report.data = {
        "group": _group_record(group),
        "generators": [{"weight": d, "codegree": c, "coeffs": poly_record(g)}
                       for g, d, c in zip(pres.generators, pres.weights, pres.codegrees)],
        "relations": [{"weight": r.weight, "coeffs": poly_record(r)} for r in pres.relations],
        "is_polynomial": pres.is_polynomial,
        "relation_bound": pres.relation_bound,
        "relations_certified": pres.relations_certified,
        "molien": list(pres.molien),
    }
    report.add(_describe(group))
    report.add(f"Generators ({len(pres.generators)}):")
    for name, g, d in zip(ynames, pres.generators, pres.weights):
        report.add(f"  {name} = {g.to_string()}  (weight {d}, codegree {2 * d})")
    report.add(f"Relations through weight {pres.relation_bound} ({len(pres.relations)}, "
               f"{'complete' if pres.relations_certified else 'possibly truncated'}):")
    for r in pres.relations:
        report.add(f"  {r.to_string(ynames)} = 0")
    report.add(f"Polynomial invariant ring: {pres.is_polynomial}")
    if verbose:
        report.add("Molien series: " + ", ".join(str(c) for c in pres.molien))
    return report


def cmd_check_point(group: GroupData, v: Sequence, limits: Limits) -> Report:
    verdict = classify_point(group, v)
    pres = presentation(group, bound = limits.relation_bound)
    jac = jacobian_at(pres, verdict.point)
    model = local_model(group, verdict.point)
    classifier = "SINGULAR" if verdict.singular else "SMOOTH"
    report = Report("check-point")
    report.ok = jac.kind.value in (classifier, "INCONCLUSIVE")
    report.data = {
        "group": _group_record(group),
        "point": list(verdict.point),
        "image": [render(group.field, x) for x in pres.generator_values(verdict.point)],
        "image_heaviest_first": [render(group.field, x) for x in reversed(pres.generator_values(verdict.point))],
        "pointwise_stabilizer_order": model.pointwise.order,
        "setwise_stabilizer_order": model.setwise.order,
        "verdicts": {"classifier": classifier, "jacobian": jac.kind.value},
        "jacobian_rank": jac.rank,
        "expected_rank": jac.expected_rank,
        "local_model": {
            "orbit_size": model.orbit_size,
            "fixed_basis": [list(b) for b in model.fixed_basis],
            "complement_basis": [list(b) for b in model.complement_basis],
            "complement_regular": model.regular,
        },
        "witness_circles": [list(c.vector) for c in verdict.witness],
    }
    report.add(_describe(group))
    report.add(f"Point {verdict.point} -> image ({', '.join(report.data['image'])})"
               f"  [heaviest generator first: ({', '.join(report.data['image_heaviest_first'])})]")
    report.add(f"  stabilizer: pointwise |W_v| = {model.pointwise.order}, setwise |G_p| = {model.setwise.order}, "
               f"orbit of primes {model.orbit_size}")
    report.add(f"  classifier: {classifier}   jacobian: {jac.kind.value} (rank {jac.rank}, expected {jac.expected_rank})")
    if jac.reason:
        report.add(f"  note: {jac.reason}")
    report.add(f"  local model: V^(W_v) = span{_basis_text(model.fixed_basis)}, "
               f"V' = span{_basis_text(model.complement_basis)}, reflection action on V': {model.regular}")
    if verdict.witness:
        report.add("  witness torus: " + " x ".join(str(c.vector) for c in verdict.witness))
    return report


def cmd_verify(groups: Sequence[GroupData], limits: Limits, characteristics: Sequence[int] = VERIFY_CHARACTERISTICS,
               verbose: bool = False) -> Report:
    report = Report("verify")
    records = []
    for group in groups:
        start = time.perf_counter()
        runner = VerificationRunner(group, limits, characteristics, echo = False)
        ok = runner.run()
        elapsed = time.perf_counter() - start
        report.ok = report.ok and ok
        records.append({
            "group": _group_record(group),
            "passed": ok,
            "checks": [{"check": name, "char": p, "passed": passed, "detail": detail}
                       for name, p, passed, detail in runner.history],
        })
        timing = f" in {elapsed:.2f}s" if verbose else ""
        report.add(f"{'PASS' if ok else 'FAIL'} {_describe(group)}{timing}")
        for name, p, passed, detail in runner.history:
            if verbose or not passed:
                where = "" if p is None else f" [p={p}]"
                report.add(f"  {'ok  ' if passed else 'FAIL'} {name}{where}: {detail}")
    report.data = {"groups": records}
    return report


def cmd_torus(group: GroupData, circles: Sequence[Sequence[int]]) -> Report:
    lattice = torus_to_subspace(circles, group.rank)
    centralizer = torus_centralizer(group, circles)
    nuclear = is_nuclear_torus(group, circles)
    report = Report("torus")
    report.data = {
        "group": _group_record(group),
        "circles": [list(c) for c in circles],
        "subspace": [list(b) for b in lattice.basis],
        "centralizer_order": centralizer.order,
        "nuclear": nuclear,
    }
    report.add(_describe(group))
    report.add(f"Torus H_2 = span{_basis_text(lattice.basis)}")
    report.add(f"  |C_G(H)/T| = {centralizer.order}, nuclear: {nuclear}")
    return report


def cmd_presets() -> Report:
    report = Report("presets")
    rows = []
    for name, (description, _) in PRESETS.items():
        g = preset_group(name)
        rows.append({"name": name, "rank": g.rank, "order": g.order, "description": description})
        report.add(f"{name:6} rank {g.rank}  |W| = {g.order:3}  {description}")
    report.data = {"presets": rows}
    return report


def _group_record(group: GroupData) -> dict:
    return {"name": group.name, "rank": group.rank, "order": group.order, "char": group.characteristic}


def _describe(group: GroupData) -> str:
    label = group.name or "group"
    return f"{label}: rank {group.rank}, |W| = {group.order}, characteristic {group.characteristic}"


def _basis_text(basis) -> str:
    return "{" + ", ".join(str(tuple(b)) for b in basis) + "}"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog = "cli_main.py",
                                     description = "Nucleus, cohomology presentation and singular locus of T^n x| W.")
    common = argparse.ArgumentParser(add_help = False)
    source = common.add_mutually_exclusive_group()
    source.add_argument("--preset", choices = sorted(PRESETS), help = "preset group (default: segre)")
    source.add_argument("--spec", help = "group specification file (text or JSON)")
    common.add_argument("--char", type = int, default = None, help = "coefficient characteristic p (0 or prime)")
    common.add_argument("--max-order", type = int, default = DEFAULT_MAX_ORDER)
    common.add_argument("--relation-bound", type = int, default = None, help = "relation weight bound D")
    common.add_argument("--height-bound", type = int, default = DEFAULT_HEIGHT_BOUND)
    common.add_argument("--json", action = "store_true", help = "structured output")
    common.add_argument("--verbose", action = "store_true", help = "chains, audit tables and debug logs")
    common.add_argument("--out", help = "write the report to a file instead of stdout")

    sub = parser.add_subparsers(dest = "command", required = True)
    sub.add_parser("nucleus", parents = [common], help = "nucleus strata and classification")
    sub.add_parser("presentation", parents = [common], help = "generators and relations of H*(BG)")
    point = sub.add_parser("check-point", parents = [common], help = "classifier and Jacobian verdicts at a point")
    point.add_argument("point", help = "comma-separated coordinates, e.g. 0,0,1")
    verify = sub.add_parser("verify", parents = [common], help = "run all cross-checks (all presets by default)")
    verify.add_argument("--chars", default = None, help = "comma-separated characteristics to sweep")
    torus = sub.add_parser("torus", parents = [common], help = "centralizer and nuclear verdict of a torus")
    torus.add_argument("--circle", action = "append", default = [], help = "circle class, repeatable")
    sub.add_parser("presets", parents = [common], help = "list preset groups")
    return parser


def run(args: argparse.Namespace) -> Report:
    limits = Limits(args.max_order, args.height_bound, args.relation_bound)
    if args.command == "presets":
        return cmd_presets()
    if args.command == "verify":
        chars = VERIFY_CHARACTERISTICS if args.chars is None else tuple(int(x) for x in args.chars.split(","))
        if args.preset or args.spec:
            groups = [resolve_group(args)]
        else:
            groups = [preset_group(name, 0, args.max_order) for name in PRESETS]
        return cmd_verify(groups, limits, chars, args.verbose)
    group = resolve_group(args)
    if args.command == "nucleus":
        return cmd_nucleus(group, limits, args.verbose)
    if args.command == "presentation":
        return cmd_presentation(group, limits, args.verbose)
    if args.command == "check-point":
        return cmd_check_point(group, parse_vector(args.point), limits)
    circles = [parse_vector(c) for c in args.circle]
    if any(isinstance(x, Fraction) for c in circles for x in c):
        raise PreconditionError("Circle classes must be integer vectors")
    return cmd_torus(group, circles)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level = logging.DEBUG if args.verbose else logging.WARNING,
                        format = "%(levelname)s %(name)s: %(message)s", stream = sys.stderr)
    try:
        report = run(args)
    except (PreconditionError, ValueError) as e:
        print(f"Error: {e}", file = sys.stderr)
        return EXIT_PRECONDITION
    except NucleusError as e:
        print(f"Error: {e}", file = sys.stderr)
        return EXIT_FAILED

    text = report.to_json() if args.json else report.to_text()
    if args.out:
        with open(args.out, "w", encoding = "utf-8") as f:
            f.write(text + "\n")
    else:
        print(text)
    return EXIT_OK if report.ok else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
