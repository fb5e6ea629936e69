from fractions import Fraction
from itertools import product

import pytest

from conftest import PRESET_NAMES, REFLECTION_PRESETS
from errors import PreconditionError
from group import Subgroup, is_reflection_group
from lattice import CircleClass, Lattice, circle_to_point, contains, torus_centralizer
from presets import preset_group
from strata import (Classification, classify_point, closed_strata, closed_subgroups, closure, containment_chains, integer_point,
                    is_nuclear_torus, nuclear_circles, nucleus, origin_stratum, pointwise_stabilizer, projective_nonsingular,
                    representative_point, setwise_stabilizer)


def test_pointwise_stabilizer(t3c2, segre, swap):
    assert pointwise_stabilizer(t3c2, (0, 0, 1)) == t3c2.whole()
    assert pointwise_stabilizer(segre, (1, 0)) == segre.trivial()
    assert pointwise_stabilizer(swap, (1, 1)) == swap.whole()
    assert pointwise_stabilizer(swap, (1, 2)) == swap.trivial()


def test_pointwise_stabilizer_mod_p(swap):
    # (1, 6) = (1, 1) in F_5
    assert pointwise_stabilizer(swap, (1, 6), p = 5) == swap.with_characteristic(5).whole()
    assert pointwise_stabilizer(swap, (1, 6)) == swap.trivial()


def test_setwise_stabilizer(segre, swap):
    assert setwise_stabilizer(segre, (1, 0)) == segre.whole()
    assert setwise_stabilizer(swap, (1, 2)) == swap.trivial()
    assert setwise_stabilizer(swap, (1, -1)) == swap.whole()


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_pointwise_inside_setwise(name):
    group = preset_group(name)
    for s in closed_strata(group):
        assert pointwise_stabilizer(group, s.representative).issubset(setwise_stabilizer(group, s.representative))


def test_zero_vector_is_rejected(segre):
    with pytest.raises(PreconditionError):
        pointwise_stabilizer(segre, (0, 0))
    with pytest.raises(PreconditionError):
        classify_point(segre, (0, 0))
    with pytest.raises(PreconditionError):
        pointwise_stabilizer(segre.with_characteristic(5), (5, 10))


def test_wrong_dimension_is_rejected(segre):
    with pytest.raises(PreconditionError):
        pointwise_stabilizer(segre, (1, 0, 0))


def test_integer_point_clears_denominators():
    assert integer_point((Fraction(1, 2), Fraction(1, 3))) == (3, 2)
    assert integer_point((0, 2)) == (0, 2)


def test_closure(b2, t3c2, trivial_rank2):
    assert closure(trivial_rank2.trivial()) == trivial_rank2.trivial()
    minus = Subgroup(b2, [0, b2.index_of([[-1, 0], [0, -1]])])
    assert closure(minus) == b2.whole()
    assert closure(t3c2.whole()) == t3c2.whole()


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_closure_is_idempotent(name):
    group = preset_group(name)
    for k in closed_subgroups(group):
        assert closure(k) == k
        assert k.is_closed


def test_closed_subgroups(segre, b2, trivial_rank2):
    assert closed_subgroups(segre) == (segre.trivial(), segre.whole())
    assert closed_subgroups(trivial_rank2) == (trivial_rank2.trivial(),)
    minus = Subgroup(b2, [0, b2.index_of([[-1, 0], [0, -1]])])
    assert minus not in closed_subgroups(b2)
    # trivial, four reflections, whole group
    assert len(closed_subgroups(b2)) == 6


def test_representative_points(t3c2, segre, swap):
    assert representative_point(t3c2.whole()) == (0, 0, 1)
    assert representative_point(segre.trivial()) == (1, 0)
    assert representative_point(swap.whole()) == (1, 1)


def test_representative_of_origin_is_rejected(segre):
    with pytest.raises(PreconditionError):
        representative_point(segre.whole())


@pytest.mark.parametrize("p", [0, 5, 7])
def test_representatives_have_exact_stabilizer(a2, p):
    group = a2.with_characteristic(p)
    for s in closed_strata(group):
        assert pointwise_stabilizer(group, s.representative) == s.subgroup


def test_nucleus_segre(segre):
    nuc = nucleus(segre)
    assert nuc.classification is Classification.TRIVIAL
    assert nuc.strata == ()
    assert nuc.includes_origin


def test_nucleus_t3c2(t3c2):
    nuc = nucleus(t3c2)
    assert nuc.classification is Classification.POSITIVE
    assert nuc.bases() == [((0, 0, 1),)]
    assert nuc.strata[0].representative == (0, 0, 1)
    assert nuc.includes_origin


@pytest.mark.parametrize("name", REFLECTION_PRESETS)
def test_reflection_groups_have_empty_nucleus(name):
    nuc = nucleus(preset_group(name))
    assert nuc.classification is Classification.EMPTY
    assert not nuc.includes_origin


def test_origin_stratum(segre, swap):
    assert origin_stratum(segre).nuclear
    assert origin_stratum(segre).is_origin
    assert not origin_stratum(swap).nuclear


def test_classify_point(t3c2, segre):
    verdict = classify_point(t3c2, (0, 0, 1))
    assert verdict.singular
    assert verdict.witness == (CircleClass((0, 0, 1)),)
    smooth = classify_point(segre, (1, 0))
    assert not smooth.singular
    assert smooth.witness == ()


@pytest.mark.parametrize("name", REFLECTION_PRESETS)
def test_reflection_presets_are_smooth_everywhere(name):
    group = preset_group(name)
    for s in closed_strata(group):
        assert not classify_point(group, s.representative).singular


def test_containment_chains(t3c2):
    chains = containment_chains(t3c2)
    assert [(a.lattice.basis, b.lattice.basis) for a, b in chains] == [(((0, 0, 1),), ((0, 0, 1),))]


def test_nuclear_tori(t3c2, segre, b2):
    assert is_nuclear_torus(t3c2, [(0, 0, 1)])
    assert not is_nuclear_torus(t3c2, [(1, 0, 0)])
    # the empty torus is nuclear iff W is not a reflection group
    assert is_nuclear_torus(segre, [])
    assert not is_nuclear_torus(b2, [])


def test_nuclear_circles(t3c2, segre):
    assert nuclear_circles(t3c2) == [CircleClass((0, 0, 1))]
    assert nuclear_circles(segre) == []


def test_projective_nonsingular(segre, t3c2, b2):
    assert projective_nonsingular(segre)
    assert projective_nonsingular(b2)
    assert not projective_nonsingular(t3c2)


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_nuclear_circles_lie_in_the_nucleus(name):
    group = preset_group(name)
    nuc = nucleus(group)
    for c in nuclear_circles(group, height = 1):
        assert any(contains(s.lattice, Lattice(group.rank, (c.vector,))) for s in nuc.strata)


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_upward_closure_for_circles(name):
    group = preset_group(name)
    circles = _all_circles(group.rank)
    for s in circles:
        for s2 in circles:
            if torus_centralizer(group, [s]).issubset(torus_centralizer(group, [s2])) and is_nuclear_torus(group, [s]):
                assert is_nuclear_torus(group, [s2])


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_upward_closure_for_closed_subgroups(name):
    closed = closed_subgroups(preset_group(name))
    for k in closed:
        for k2 in closed:
            if k.issubset(k2) and not is_reflection_group(k):
                assert not is_reflection_group(k2)


def _all_circles(rank):
    return sorted({circle_to_point(v) for v in product((-1, 0, 1), repeat = rank) if any(v)})


def test_nested_nuclear_strata_keep_only_the_maximal_one(nested):
    nuclear = [s.lattice.basis for s in closed_strata(nested) if s.nuclear]
    assert sorted(nuclear) == [((0, 0, 0, 1),), ((0, 0, 1, 0), (0, 0, 0, 1))]
    nuc = nucleus(nested)
    assert nuc.classification is Classification.POSITIVE
    assert nuc.bases() == [((0, 0, 1, 0), (0, 0, 0, 1))]
    assert nuc.includes_origin


def test_nested_containment_chains(nested):
    plane = ((0, 0, 1, 0), (0, 0, 0, 1))
    chains = {(a.lattice.basis, b.lattice.basis) for a, b in containment_chains(nested)}
    assert chains == {(((0, 0, 0, 1),), plane), (plane, plane)}


def test_nested_classify_point(nested):
    assert classify_point(nested, (0, 0, 0, 1)).singular
    assert classify_point(nested, (0, 0, 2, 1)).singular
    assert not classify_point(nested, (1, 0, 0, 1)).singular
