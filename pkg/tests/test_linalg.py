import numpy as np
import pytest
from sympy import Matrix

from fermatlines.errors import DimensionMismatch, NotSquare, ZeroDiscriminant
from fermatlines.linalg import (crt_symmetric, det_exact, det_mod, full_kernel, kernel_mod, kernel_refine,
                                left_kernel_mod, matmul_mod, nullspace_mod, rank_mod, same_row_space,
                                squarefree_gcd_criterion, squarefree_status)

PRIMES = [5, 13, 1000003, 2 ** 21 - 9, 2 ** 31 - 1]


@pytest.mark.parametrize("p", PRIMES)
def test_matmul_mod(p):
    rng = np.random.default_rng(p % 1000)
    A = rng.integers(0, p, (37, 150))
    B = rng.integers(0, p, (150, 29))
    ref = (A.astype(object) @ B.astype(object)) % p
    assert (matmul_mod(A, B, p) == ref.astype(np.int64)).all()


def test_det_exact_vs_sympy():
    rng = np.random.default_rng(0)
    for n in (1, 2, 5, 17, 50):
        M = rng.integers(-9, 10, (n, n))
        assert det_exact(M) == int(Matrix(M.tolist()).det())


def test_det_mod_large_block():
    rng = np.random.default_rng(2)
    M = rng.integers(-5, 6, (300, 300))
    p = 1000003
    d = det_exact(M)
    assert det_mod(M, p) == d % p


@pytest.mark.parametrize("p", [7, 1000003])
def test_kernels(p):
    rng = np.random.default_rng(p)
    A = rng.integers(0, p, (40, 25))
    A[30:] = (A[:10] * 3 + A[10:20]) % p
    N = nullspace_mod(A.T, p)
    K = left_kernel_mod(A, p)
    assert not (matmul_mod(K, A, p)).any()
    assert K.shape[0] == 40 - rank_mod(A, p)
    assert same_row_space(K, N, p)


def test_kernel_refine_matches_one_shot():
    p = 11
    rng = np.random.default_rng(5)
    M = rng.integers(0, p, (30, 12))
    st = full_kernel(30, p)
    for c in range(0, 12, 3):
        st = kernel_refine(st, M[:, c:c + 3])
    assert st.dim == kernel_mod(M, p).dim
    assert same_row_space(st.basis, kernel_mod(M, p).basis, p)
    assert st.trace == sorted(st.trace, reverse=True)
    with pytest.raises(DimensionMismatch):
        kernel_refine(st, np.zeros((3, 2), dtype=np.int64))


def test_errors_and_crt():
    with pytest.raises(NotSquare):
        det_exact(np.zeros((2, 3), dtype=np.int64))
    assert crt_symmetric([2, 3], [5, 7]) == 17
    assert crt_symmetric([4, 6], [5, 7]) == -1


def test_squarefree():
    assert squarefree_status(2 * 3 * 5) == "squarefree"
    assert squarefree_status(12) == "not squarefree"
    assert squarefree_status(1000003 ** 2) == "not squarefree"
    assert squarefree_status(1000003 * 1000033) == "squarefree"
    assert squarefree_gcd_criterion(7 ** 48, 13 ** 40) is True
    assert squarefree_gcd_criterion(2 ** 4, 2 ** 6) is False
    with pytest.raises(ZeroDiscriminant):
        squarefree_gcd_criterion(0, 5)
