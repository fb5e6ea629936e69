import time

import pytest

from conftest import PRESET_NAMES, REFLECTION_PRESETS
from cli_main import EXIT_OK, main
from exactmath.field import coefficient_field
from exactmath.poly import Poly
from group import is_reflection_group
from invariants import complement_fixed_rank, local_model, molien, molien_audit, presentation
from presets import preset_group
from singular import Verdict, compare_strata, jacobian_at, supp_dsg
from strata import Classification, closed_strata, closed_subgroups, nucleus

CHARACTERISTICS = (0, 5, 7, 11)


def _same_up_to_sign(rel, expected):
    return rel in (expected, -expected)


@pytest.mark.parametrize("p", [0, 3, 5, 7])
def test_segre_example(p):
    start = time.perf_counter()
    group = preset_group("segre", p)
    pres = presentation(group)
    assert len(pres.generators) == 3
    assert len(pres.relations) == 1
    y = [Poly.variable(coefficient_field(p), (2, 2, 2), i) for i in range(3)]
    # up to relabeling: the relation is a product of two generators minus the square of the third
    candidates = [y[a] * y[b] - y[c] ** 2 for a, b, c in ((0, 1, 2), (0, 2, 1), (1, 2, 0))]
    assert any(_same_up_to_sign(pres.relations[0], e) for e in candidates)
    assert nucleus(group).classification is Classification.TRIVIAL
    for s in closed_strata(group):
        assert not s.nuclear
        assert jacobian_at(pres, s.representative).kind is Verdict.SMOOTH
    assert time.perf_counter() - start < 1


def test_t3c2_example():
    start = time.perf_counter()
    group = preset_group("t3c2")
    pres = presentation(group)
    assert len(pres.generators) == 4
    assert pres.weights.count(1) == 1
    (rel,) = pres.relations
    one = pres.weights.index(1)
    assert all(exp[one] == 0 for exp in rel.terms)
    nuc = nucleus(group)
    assert nuc.bases() == [((0, 0, 1),)]
    image = pres.generator_values(nuc.strata[0].representative)
    assert [i for i, x in enumerate(image) if x != 0] == [one]
    for s in closed_strata(group):
        expected = Verdict.SINGULAR if s.lattice.basis == ((0, 0, 1),) else Verdict.SMOOTH
        assert jacobian_at(pres, s.representative).kind is expected
    assert time.perf_counter() - start < 5


@pytest.mark.parametrize("name", PRESET_NAMES)
@pytest.mark.parametrize("p", CHARACTERISTICS)
def test_classifier_matches_jacobian(name, p):
    for check in compare_strata(preset_group(name), p):
        assert check.verdict.kind is not Verdict.INCONCLUSIVE
        assert (check.verdict.kind is Verdict.SINGULAR) == check.classifier_singular


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_polynomial_iff_reflection(name):
    group = preset_group(name)
    pres = presentation(group)
    assert pres.is_polynomial == is_reflection_group(group.whole())
    if name in REFLECTION_PRESETS:
        assert pres.relations == ()
        assert nucleus(group).classification is Classification.EMPTY


@pytest.mark.parametrize("name", PRESET_NAMES)
@pytest.mark.parametrize("p", CHARACTERISTICS)
def test_molien_audit_through_twice_the_order(name, p):
    group = preset_group(name)
    rows = molien_audit(group, p, 2 * group.order)
    assert [dim for _, dim, _ in rows] == list(molien(group, 2 * group.order))


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_upward_closure(name):
    closed = closed_subgroups(preset_group(name))
    violations = [(k, k2) for k in closed for k2 in closed
                  if k.issubset(k2) and not is_reflection_group(k) and is_reflection_group(k2)]
    assert violations == []


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_origin_rule(name):
    group = preset_group(name)
    nuc = nucleus(group)
    if nuc.strata:
        assert nuc.includes_origin
    assert (not nuc.includes_origin) == presentation(group).is_polynomial


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_local_model_arithmetic(name):
    group = preset_group(name)
    for s in closed_strata(group):
        model = local_model(group, s.representative)
        assert model.orbit_size * model.setwise.order == group.order
        assert model.pointwise.issubset(model.setwise)
        assert complement_fixed_rank(model) == 0


@pytest.mark.parametrize("name", PRESET_NAMES)
@pytest.mark.parametrize("p", CHARACTERISTICS)
def test_singular_support_is_the_nucleus(name, p):
    group = preset_group(name, p)
    nuc = nucleus(group)
    assert supp_dsg(group).bases() == sorted(nuc.bases() + ([()] if nuc.includes_origin else []))


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_characteristic_independence(name):
    group = preset_group(name)
    bases = {p: nucleus(group, p).bases() for p in CHARACTERISTICS}
    assert len({tuple(b) for b in bases.values()}) == 1


def test_full_verification_is_fast(capsys):
    start = time.perf_counter()
    assert main(["verify"]) == EXIT_OK
    assert time.perf_counter() - start < 60
    assert "FAIL" not in capsys.readouterr().out
