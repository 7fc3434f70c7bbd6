import numpy as np
import pytest

from fermatlines.errors import NotDecomposableForFamily
from fermatlines.linalg import det_exact
from fermatlines.lines import (H, StandardLine, act_on_standard, all_lines, cyclotomic_as_integer,
                               eigendivisor, eigendivisor_pairing, gram_matrix, hyperplane_divisor,
                               line_pairing, pairing_arrays, rational_basis, relation_block_determinants,
                               relation_matrix)


def test_basic_pairings():
    m = 5
    a = StandardLine(1, 0, 0, m)
    assert line_pairing(a, a, m) == 2 - m
    assert line_pairing(H, H, m) == m
    assert line_pairing(H, a, m) == 1
    assert line_pairing(a, StandardLine(1, 0, 3, m), m) == 1
    assert line_pairing(a, StandardLine(1, 2, 3, m), m) == 0


def test_hyperplane_section_relation():
    # the m lines l_1(2, l), l = 0..m-1, form a hyperplane section, so every line meets their sum once
    m = 7
    J, K, L = all_lines(m)
    G = pairing_arrays(J[:, None], K[:, None], L[:, None], J[None, :], K[None, :], L[None, :], m)
    fam = (J == 1) & (K == 2)
    sec = G[fam].sum(axis=0)
    assert (sec == 1).all()


@pytest.mark.parametrize("m,expected", [(4, -64), (5, 5 ** 12), (7, 7 ** 48), (9, 3 ** 216)])
def test_basis_discriminants(m, expected):
    B = rational_basis(m)
    assert det_exact(gram_matrix(B, m)) == expected


def test_group_action_preserves_pairing():
    m = 7
    rng = np.random.default_rng(1)
    J, K, L = all_lines(m)
    G = pairing_arrays(J[:, None], K[:, None], L[:, None], J[None, :], K[None, :], L[None, :], m)
    for _ in range(10):
        sigma = rng.integers(0, m, 3)
        J2, K2, L2 = act_on_standard(sigma, J, K, L, m)
        G2 = pairing_arrays(J2[:, None], K2[:, None], L2[:, None], J2[None, :], K2[None, :], L2[None, :], m)
        assert (G == G2).all()


def test_relation_matrix_shape_and_lemma():
    assert relation_matrix(5).shape == (30, 30)
    assert relation_block_determinants(5, 1) == (5, 5, 25)
    assert relation_block_determinants(4, 2) == (-4, -4, 16)


def test_eigendivisor_identities_m5():
    m = 5
    a = (1, 4, 2, 3)                      # decomposable for family 1
    w = eigendivisor(1, a, m)
    wn = eigendivisor(1, tuple(-x for x in a), m)
    assert cyclotomic_as_integer(eigendivisor_pairing(w, wn, m)) == -m ** 3
    assert cyclotomic_as_integer(eigendivisor_pairing(w, hyperplane_divisor(m), m)) == 0
    with pytest.raises(NotDecomposableForFamily):
        eigendivisor(2, a, m)
