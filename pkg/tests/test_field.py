from fractions import Fraction

import pytest
from sympy.polys.domains import QQ

from conftest import PRESET_NAMES
from errors import PreconditionError
from exactmath.field import characteristic, coefficient_field, coerce, embed, render, reduce_mod_p, to_fraction
from exactmath.linalg import integer_kernel, kernel, mat_mul, minus_identity
from presets import preset_group


def test_rationals_for_characteristic_zero():
    assert coefficient_field(0) == QQ
    assert characteristic(coefficient_field(0)) == 0


@pytest.mark.parametrize("p", [2, 3, 5, 11])
def test_prime_fields(p):
    assert characteristic(coefficient_field(p)) == p


@pytest.mark.parametrize("p", [1, 4, 9, -3])
def test_rejects_non_prime_characteristic(p):
    with pytest.raises(PreconditionError):
        coefficient_field(p)


def test_minus_one_mod_five():
    assert to_fraction(coefficient_field(5), reduce_mod_p(-1, 5)) == 4
    assert render(coefficient_field(5), reduce_mod_p(-1, 5)) == "4"


def test_reduce_matrix_mod_three():
    f3 = coefficient_field(3)
    reduced = reduce_mod_p([[-1, 0, 0], [0, -1, 0], [0, 0, 1]], 3)
    assert [[to_fraction(f3, x) for x in row] for row in reduced] == [[2, 0, 0], [0, 2, 0], [0, 0, 1]]


def test_reduce_mod_zero_is_rejected():
    with pytest.raises(PreconditionError):
        reduce_mod_p(3, 0)


def test_integer_kernel_reduces_to_kernel_over_f5():
    swap = [[0, 1], [1, 0]]
    f5 = coefficient_field(5)
    over_z = integer_kernel(minus_identity(swap), 2)
    over_f5 = kernel(minus_identity(swap), f5, 2)
    assert [[to_fraction(f5, x) for x in row] for row in reduce_mod_p([list(r) for r in over_z], 5)] == \
        [[to_fraction(f5, x) for x in row] for row in over_f5]


def test_embed_fraction():
    assert to_fraction(QQ, embed(QQ, Fraction(3, 6))) == Fraction(1, 2)
    f7 = coefficient_field(7)
    # 1/2 = 4 in F_7
    assert to_fraction(f7, embed(f7, Fraction(1, 2))) == 4


def test_embed_fraction_with_vanishing_denominator():
    with pytest.raises(PreconditionError):
        embed(coefficient_field(5), Fraction(1, 5))


def test_mixing_characteristics_is_an_error():
    with pytest.raises(PreconditionError):
        coerce(QQ, coefficient_field(5)(2))
    with pytest.raises(PreconditionError):
        coerce(coefficient_field(7), coefficient_field(5)(2))


def test_to_fraction_integral_rational_is_int():
    assert to_fraction(QQ, QQ(4, 2)) == 2
    assert isinstance(to_fraction(QQ, QQ(4, 2)), int)


@pytest.mark.parametrize("name", PRESET_NAMES)
@pytest.mark.parametrize("p", [5, 7])
def test_reduction_commutes_with_products(name, p):
    elements = preset_group(name).elements
    for g in elements:
        for h in elements:
            assert reduce_mod_p(mat_mul(g, h), p) == mat_mul(reduce_mod_p(g, p), reduce_mod_p(h, p))
