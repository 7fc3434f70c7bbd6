import pytest

from fermatlines.errors import BadCharacteristic, NotIrreducible, NotSupersingularPair, RootOrderMismatch
from fermatlines.field_tower import (build_field_ctx, element_order, find_defining_poly, frobenius_power,
                                     is_irreducible, solve_power_equation, sqrt_in_ext)


def test_quintic_field():
    ctx = build_field_ctx(2, [1, 1, 1, 1, 1], 5)
    assert (ctx.q, ctx.size) == (4, 16)
    assert element_order(ctx.gamma) == 5


def test_septic_field_identity():
    # (10 + 11 g)^2 = 5 = 1 + 11^2 over F_13[g]/(g^2 + 3g + 1)
    ctx = build_field_ctx(13, [1, 3, 1], 7)
    beta = ctx.elem([10, 11])
    assert beta * beta == ctx(5)
    assert frobenius_power(beta) == -beta
    assert beta ** (ctx.q - 1) == -ctx.one


def test_field_axioms_small():
    ctx = build_field_ctx(3, [1, 0, 1], 4)
    elems = [ctx.elem([a, b]) for a in range(3) for b in range(3)]
    for a in elems:
        for b in elems:
            assert a + b == b + a and a * b == b * a
            if b:
                assert (a / b) * b == a
        assert a - a == ctx.zero


def test_errors():
    with pytest.raises(BadCharacteristic):
        build_field_ctx(5, [1, 1, 1, 1, 1], 5)
    with pytest.raises(NotIrreducible):
        build_field_ctx(2, [1, 0, 1], 3)
    with pytest.raises(RootOrderMismatch):
        build_field_ctx(1423, [1, 14, 1], 89)
    with pytest.raises(NotSupersingularPair):
        find_defining_poly(2, 7)


def test_find_defining_poly():
    assert find_defining_poly(2, 5) == [1, 1, 1, 1, 1]
    f = find_defining_poly(13, 7, seed=3)
    assert f in ([1, 3, 1], [1, 5, 1])
    assert is_irreducible(f, 13)


def test_m89_erratum_polynomial():
    assert build_field_ctx(1423, [1, 16, 1], 89).q == 1423


def test_roots():
    ctx = build_field_ctx(13, [1, 5, 1], 7)
    a = ctx.elem([3, 4])
    s = sqrt_in_ext(a * a)
    assert s * s == a * a
    sols = solve_power_equation(ctx.gamma, 2)
    assert len(sols) == 2 and all(c * c == ctx.gamma for c in sols)
    g = ctx.lifted_root(2)
    assert g * g == ctx.gamma and element_order(g) == 14
