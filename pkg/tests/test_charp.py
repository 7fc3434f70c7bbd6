import numpy as np
import pytest

from fermatlines.charp import (ProjLine, SpecialDivisor, char3_line, cover_from, cube_root_line,
                               find_cover_params, find_special_line, general_line, group_act,
                               is_special_pair, is_supersingular_prime, line_incidence, OrbitDivisor,
                               basis_orbit_pairing, pullback_standard_line, pushdown_gram,
                               pushdown_self_intersection, standard_to_proj, validate_line_on_surface)
from fermatlines.errors import BadCharacteristic, SearchLimitExceeded
from fermatlines.field_tower import FieldElem, build_field_ctx
from fermatlines.lines import StandardLine, line_pairing

from oracles import points_meet


@pytest.fixture(scope="module")
def septic():
    ctx = build_field_ctx(13, [1, 5, 1], 7)
    return ctx, cover_from(7, 2)


def test_supersingular_primes():
    assert is_supersingular_prime(2, 5)
    assert is_supersingular_prime(3, 4)
    assert not is_supersingular_prime(2, 7)
    with pytest.raises(BadCharacteristic):
        is_supersingular_prime(5, 35)


@pytest.mark.parametrize("m,expected", [(5, (1, 4, 2, 2)), (7, (2, 13, 13, 1)), (89, (16, 1423, 1423, 1)),
                                        (4, (1, 3, 3, 1))])
def test_find_cover(m, expected):
    c = find_cover_params(m)
    assert (c.r, c.q, c.p, c.n) == expected


def test_cover_limit():
    with pytest.raises(SearchLimitExceeded):
        find_cover_params(89, max_r=10)


def test_special_line_search(septic):
    ctx, cover = septic
    for seed in range(5):
        a, b = find_special_line(ctx, cover, seed=seed)
        assert is_special_pair(ctx, a, b)
        assert validate_line_on_surface(general_line(ctx, a, b), 14)


def test_table_pair_m7():
    ctx = build_field_ctx(13, [1, 3, 1], 7)
    assert validate_line_on_surface(general_line(ctx, 11, ctx.elem([10, 11])), 14)


def test_variant_lines():
    ctx = build_field_ctx(3, [1, 0, 1], 4)
    assert validate_line_on_surface(char3_line(ctx), 4)
    # q = 13 is 1 mod 3
    ctx13 = build_field_ctx(13, [1, 5, 1], 7)
    assert validate_line_on_surface(cube_root_line(ctx13), 14)


def test_non_surface_line(septic):
    ctx, _ = septic
    L = ProjLine.from_elems(ctx, [1, 1, 0, 0], [0, 0, 1, 1])
    assert not validate_line_on_surface(L, 14)


def test_standard_lines_validate_and_pair(septic):
    ctx, _ = septic
    rng = np.random.default_rng(0)
    for _ in range(100):
        a = StandardLine(int(rng.integers(1, 4)), int(rng.integers(7)), int(rng.integers(7)), 7)
        b = StandardLine(int(rng.integers(1, 4)), int(rng.integers(7)), int(rng.integers(7)), 7)
        La, Lb = standard_to_proj(a, ctx), standard_to_proj(b, ctx)
        assert validate_line_on_surface(La, 7)
        assert line_incidence(La, Lb, 7) == line_pairing(a, b, 7)


def test_incidence_matches_point_determinant(septic):
    ctx, cover = septic
    rng = np.random.default_rng(3)
    a, b = find_special_line(ctx, cover, seed=1)
    base = general_line(ctx, a, b)
    for _ in range(60):
        s = rng.integers(0, 14, 3)
        L = group_act(s, base, ctx, order=14)
        P1, Q1 = base.points()
        P2, Q2 = L.points()
        if L != base:
            assert line_incidence(base, L, 14) == int(points_meet(P1, Q1, P2, Q2))


def test_group_action(septic):
    ctx, cover = septic
    a, b = find_special_line(ctx, cover, seed=2)
    L = general_line(ctx, a, b)
    assert group_act((0, 0, 0), L, ctx) == L
    s = (3, 1, 5)
    assert group_act((-3, -1, -5), group_act(s, L, ctx), ctx) == L
    orbit = {group_act((i, j, k), L, ctx) for i in range(7) for j in range(7) for k in range(7)}
    assert len(orbit) == 343


def test_pullback(septic):
    ctx, cover = septic
    line = StandardLine(2, 3, 5, 7)
    ups = pullback_standard_line(line, cover, ctx)
    assert len(ups) == 4
    down = standard_to_proj(line, ctx)
    for U in ups:
        assert validate_line_on_surface(U, 14)
        P, Q = U.points()
        # coordinatewise squares of points on U land on the original line
        for t in range(3):
            pt = [x + y * t for x, y in zip(P, Q)]
            sq = [x * x for x in pt]
            Pd, Qd = down.points()
            rows = [Pd, Qd, sq]
            # rank 2: sq is in the span of Pd, Qd
            assert all(not (rows[0][i] * rows[1][j] * rows[2][k] - rows[0][i] * rows[1][k] * rows[2][j]
                            - rows[0][j] * rows[1][i] * rows[2][k] + rows[0][j] * rows[1][k] * rows[2][i]
                            + rows[0][k] * rows[1][i] * rows[2][j] - rows[0][k] * rows[1][j] * rows[2][i])
                       for i, j, k in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])


def test_self_intersections():
    assert pushdown_self_intersection(cover_from(7, 2)) == -8
    assert pushdown_self_intersection(cover_from(11, 3)) == -23
    assert pushdown_self_intersection(cover_from(13, 2)) == -20


def test_pushdown_gram_agrees_with_tables(septic):
    ctx, cover = septic
    a, b = ctx(2), ctx.elem([1, 3])
    SD = SpecialDivisor(ctx, cover, a, b)
    f = SD.orbit_pairings()
    assert f[0] == -8 == SD.self_intersection_projection
    rng = np.random.default_rng(7)
    for _ in range(15):
        s, t = tuple(int(x) for x in rng.integers(0, 7, 3)), tuple(int(x) for x in rng.integers(0, 7, 3))
        D, E = OrbitDivisor(a, b, s, cover), OrbitDivisor(a, b, t, cover)
        G = SD.orbit_gram(np.array([s, t]))
        assert pushdown_gram(D, E, ctx) == G[0, 1]
        assert pushdown_gram(D, D, ctx) == -8


def test_basis_orbit_pairing_matches_columns(septic):
    ctx, cover = septic
    a, b = ctx(2), ctx.elem([1, 3])
    SD = SpecialDivisor(ctx, cover, a, b)
    rng = np.random.default_rng(11)
    for _ in range(20):
        line = StandardLine(int(rng.integers(1, 4)), int(rng.integers(7)), int(rng.integers(7)), 7)
        s = tuple(int(x) for x in rng.integers(0, 7, 3))
        direct = basis_orbit_pairing(line, OrbitDivisor(a, b, s, cover), ctx)
        col = SD.columns(np.array([s]), np.array([line.j]), np.array([line.k]), np.array([line.l]))
        assert direct == col[0, 0] == SD.basis_pairing(line, s)


def test_r1_pairing_is_incidence():
    ctx = build_field_ctx(2, [1, 1, 1, 1, 1], 5)
    cover = cover_from(5, 1)
    a = ctx.elem([1, 0, 1, 1])
    D = OrbitDivisor(a, a + 1, (1, 2, 3), cover)
    for line in [StandardLine(1, 0, 0, 5), StandardLine(3, 4, 2, 5)]:
        assert basis_orbit_pairing(line, D, ctx) in (0, 1)
