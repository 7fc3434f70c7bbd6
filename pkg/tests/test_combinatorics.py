import pytest
from math import gcd

from fermatlines.combinatorics import (Character, character_sets, class_counts, count_A_closed_form,
                                       count_D_closed_form, rational_generation_predicate,
                                       rational_generation_test, surface_invariants, weight)
from fermatlines.errors import ZeroCoordinate


@pytest.mark.parametrize("m,rho,b2", [(4, 20, 22), (5, 37, 53), (6, 86, 106), (7, 91, 187),
                                      (11, 271, 911), (13, 397, 1597)])
def test_invariants(m, rho, b2):
    inv = surface_invariants(m)
    assert (inv.rho, inv.b2) == (rho, b2)
    assert inv.lam == b2 - rho
    assert inv.e == inv.b2 + 2          # c2 = b2 + 2 for a simply connected surface
    assert inv.h11 == inv.b2 - 2 * inv.pg


def test_sets_consistent_with_counts():
    for m in range(3, 16):
        cs = character_sets(m)
        assert (len(cs.A), len(cs.B), len(cs.D)) == class_counts(m)
        assert len(cs.A) == count_A_closed_form(m)
        assert len(cs.D) == count_D_closed_form(m)
        assert {tuple(x) for x in cs.D} <= {tuple(x) for x in cs.B}


def test_rational_generation_sweep():
    for m in range(2, 61):
        assert rational_generation_test(m) == rational_generation_predicate(m)


def test_weight():
    assert weight((1, 1, 1, 2), 5) == 1
    assert weight(Character((4, 4, 4, 3), 5)) == 3
    with pytest.raises(ZeroCoordinate):
        weight((0, 1, 2, 2), 5)
