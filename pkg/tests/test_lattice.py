import pytest

from conftest import PRESET_NAMES
from errors import PreconditionError
from exactmath.field import coefficient_field
from exactmath.linalg import kernel, minus_identity
from group import Subgroup, subgroups
from lattice import (CircleClass, Lattice, circle_to_point, contains, fixed_lattice, torus_centralizer, torus_to_subspace,
                     verify_fixed_space_mod_p, witness_torus)
from presets import preset_group
from strata import closure


@pytest.mark.parametrize("r, expected", [
    ((2, 4), (1, 2)),
    ((-3, 3), (1, -1)),
    ((0, -5, 10), (0, 1, -2)),
])
def test_circle_to_point(r, expected):
    assert circle_to_point(r) == CircleClass(expected)


def test_circle_to_point_rejects_zero():
    with pytest.raises(PreconditionError):
        circle_to_point((0, 0))


def test_circle_class_validation():
    with pytest.raises(ValueError):
        CircleClass((2, 4))
    with pytest.raises(ValueError):
        CircleClass((-1, 1))


@pytest.mark.parametrize("circles, n, basis", [
    ([(0, 0, 1)], 3, ((0, 0, 1),)),
    ([(1, 0), (0, 1)], 2, ((1, 0), (0, 1))),
    ([(2, 0), (0, 2)], 2, ((1, 0), (0, 1))),
    ([], 2, ()),
])
def test_torus_to_subspace(circles, n, basis):
    assert torus_to_subspace(circles, n) == Lattice(n, basis)


def test_torus_to_subspace_rejects_dependent_circles():
    with pytest.raises(PreconditionError):
        torus_to_subspace([(1, 1), (2, 2)])


def test_fixed_lattices(segre, t3c2, swap):
    assert fixed_lattice(segre.whole()).rank == 0
    assert fixed_lattice(t3c2.whole()).basis == ((0, 0, 1),)
    assert fixed_lattice(swap.whole()).basis == ((1, 1),)
    assert fixed_lattice(swap.trivial()).basis == ((1, 0), (0, 1))


@pytest.mark.parametrize("p", [3, 5, 7])
def test_fixed_space_survives_reduction(b2, p):
    group = b2.with_characteristic(p)
    for k in (group.trivial(), group.whole(), Subgroup(group, [0, group.index_of([[0, 1], [1, 0]])])):
        verify_fixed_space_mod_p(k, p)


def test_witness_torus(t3c2, swap, trivial_rank2):
    assert witness_torus(t3c2.whole()) == [CircleClass((0, 0, 1))]
    assert witness_torus(swap.whole()) == [CircleClass((1, 1))]
    assert witness_torus(trivial_rank2.trivial()) == [CircleClass((1, 0)), CircleClass((0, 1))]


def test_witness_torus_of_origin(segre):
    with pytest.raises(PreconditionError):
        witness_torus(segre.whole())


def test_torus_centralizer(t3c2, segre):
    assert torus_centralizer(t3c2, [(0, 0, 1)]) == t3c2.whole()
    assert torus_centralizer(t3c2, [(1, 0, 0)]) == t3c2.trivial()
    assert torus_centralizer(segre, []) == segre.whole()


def test_centralizer_equals_closure_on_fixed_lattice(b2):
    for k in (b2.trivial(), b2.whole(), Subgroup(b2, [0, b2.index_of([[-1, 0], [0, -1]])])):
        assert torus_centralizer(b2, fixed_lattice(k).basis) == closure(k)


def test_contains():
    line = Lattice(3, ((0, 0, 1),))
    plane = Lattice(3, ((1, 0, 0), (0, 0, 1)))
    assert contains(plane, line)
    assert not contains(line, plane)
    assert contains(line, Lattice(3, ()))
    assert not contains(Lattice(3, ((1, 1, 0),)), line)


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_fixed_lattices_reverse_inclusion(name):
    every = subgroups(preset_group(name))
    for k1 in every:
        for k2 in every:
            if k1.issubset(k2):
                assert contains(fixed_lattice(k1), fixed_lattice(k2))


@pytest.mark.parametrize("name", PRESET_NAMES)
@pytest.mark.parametrize("p", [5, 7, 11])
def test_fixed_rank_matches_dimension_mod_p(name, p):
    group = preset_group(name)
    for k in subgroups(group):
        rows = [row for m in k.matrices for row in minus_identity(m)]
        assert fixed_lattice(k).rank == len(kernel(rows, coefficient_field(p), group.rank))
