"""Exact linear algebra over Z and over prime fields.

Residue matrices are int64 arrays with canonical entries in [0, p).  Gaussian
elimination is blocked: panels are factored by a compiled kernel and the
trailing update is a matrix product done in float64 BLAS, split so that every
partial sum stays below 2^53 and is therefore exact.

Determinants over Z are recombined from residues modulo primes descending
from CRT_PRIME_START until the product of moduli exceeds twice the Hadamard
bound.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import gcd, isqrt

import numpy as np
from numba import njit

from .errors import DimensionMismatch, NotSquare, ZeroDiscriminant
from .numtheory import factorize, integer_root, primality, primes_descending

CRT_PRIME_START = 2 ** 21
BLOCK = 64
SMALL = 96  # below this size elimination is done entirely in compiled code

# ---------------------------------------------------------------------------
# exact modular matrix products


def _center(A: np.ndarray, p: int) -> np.ndarray:
    return np.where(A > p // 2, A - p, A).astype(np.float64)


def matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """(A @ B) mod p for canonical residue matrices, exactly."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    n, k = A.shape
    k2, c = B.shape
    if k != k2:
        raise DimensionMismatch(f"cannot multiply {A.shape} by {B.shape}")
    if n == 0 or c == 0 or k == 0:
        return np.zeros((n, c), dtype=np.int64)
    if p < 2 ** 24:
        half = p // 2 + 1
        chunk = max(1, (2 ** 52) // (half * half))
        Af, Bf = _center(A, p), _center(B, p)
        out = np.zeros((n, c), dtype=np.int64)
        for s in range(0, k, chunk):
            part = Af[:, s:s + chunk] @ Bf[s:s + chunk]
            out = (out + part.astype(np.int64)) % p
        return out
    if p >= 2 ** 31:
        raise ValueError("modulus too large for exact float products")
    # split both factors into 16-bit halves; each partial product is < 2^32
    mask = (1 << 16) - 1
    Ah, Al = (A >> 16).astype(np.float64), (A & mask).astype(np.float64)
    Bh, Bl = (B >> 16).astype(np.float64), (B & mask).astype(np.float64)
    chunk = 2 ** 20
    hh = np.zeros((n, c), dtype=np.int64)
    mid = np.zeros((n, c), dtype=np.int64)
    ll = np.zeros((n, c), dtype=np.int64)
    for s in range(0, k, chunk):
        sl = slice(s, s + chunk)
        hh = (hh + (Ah[:, sl] @ Bh[sl]).astype(np.int64)) % p
        mid = (mid + (Ah[:, sl] @ Bl[sl]).astype(np.int64) % p
               + (Al[:, sl] @ Bh[sl]).astype(np.int64)) % p
        ll = (ll + (Al[:, sl] @ Bl[sl]).astype(np.int64)) % p
    s32 = pow(2, 32, p)
    s16 = pow(2, 16, p)
    return (hh * s32 % p + mid * s16 % p + ll) % p


# ---------------------------------------------------------------------------
# compiled kernels


@njit(cache=True)
def _panel(A, row0, col0, width, p, pivcols):
    """Factor A[row0:, col0:col0+width] in place with row pivoting.

    Swaps act on whole rows.  Multipliers are stored below each pivot in the
    pivot column.  Returns (number of pivots, number of row swaps).
    """
    n = A.shape[0]
    t = 0
    swaps = 0
    for c in range(col0, col0 + width):
        r = row0 + t
        if r >= n:
            break
        piv = -1
        for i in range(r, n):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for cc in range(A.shape[1]):
                tmp = A[r, cc]
                A[r, cc] = A[piv, cc]
                A[piv, cc] = tmp
            swaps += 1
        # modular inverse by exponentiation
        a = A[r, c]
        inv = 1
        e = p - 2
        base = a
        while e > 0:
            if e & 1:
                inv = inv * base % p
            base = base * base % p
            e >>= 1
        for i in range(r + 1, n):
            if A[i, c] != 0:
                mult = A[i, c] * inv % p
                A[i, c] = mult
                for cc in range(c + 1, col0 + width):
                    A[i, cc] = (A[i, cc] - mult * A[r, cc]) % p
        pivcols[t] = c
        t += 1
    return t, swaps


@njit(cache=True)
def _forward_rows_mod(A, row0, t, pivcols, cstart, p):
    ncol = A.shape[1]
    for i in range(t):
        ri = row0 + i
        for j in range(i + 1, t):
            rj = row0 + j
            mult = A[rj, pivcols[i]]
            if mult != 0:
                for cc in range(cstart, ncol):
                    A[rj, cc] = (A[rj, cc] - mult * A[ri, cc]) % p


@njit(cache=True)
def _upper_solve_small(U, X, p):
    """Solve U Y = X in place (U upper triangular, nonzero diagonal)."""
    r = U.shape[0]
    ncol = X.shape[1]
    for i in range(r - 1, -1, -1):
        a = U[i, i]
        inv = 1
        e = p - 2
        base = a
        while e > 0:
            if e & 1:
                inv = inv * base % p
            base = base * base % p
            e >>= 1
        for cc in range(ncol):
            X[i, cc] = X[i, cc] * inv % p
        for j in range(i):
            mult = U[j, i]
            if mult != 0:
                for cc in range(ncol):
                    X[j, cc] = (X[j, cc] - mult * X[i, cc]) % p


# ---------------------------------------------------------------------------
# elimination


@dataclass
class Echelon:
    """Result of in-place LU-style elimination of a residue matrix."""
    p: int
    work: np.ndarray
    pivcols: list[int]
    swaps: int

    @property
    def rank(self) -> int:
        return len(self.pivcols)

    def upper(self) -> np.ndarray:
        r = self.rank
        U = np.zeros((r, self.work.shape[1]), dtype=np.int64)
        for i, c in enumerate(self.pivcols):
            U[i, c:] = self.work[i, c:]
        return U


def reduce_mod(M, p: int) -> np.ndarray:
    M = np.asarray(M)
    if M.dtype == object:
        return np.array([[int(x) % p for x in row] for row in M], dtype=np.int64).reshape(M.shape)
    return np.mod(M.astype(np.int64), p)


def echelon_mod(M, p: int, block: int = BLOCK) -> Echelon:
    A = np.ascontiguousarray(reduce_mod(M, p))
    n, ncols = A.shape
    pivbuf = np.zeros(max(1, min(n, ncols)), dtype=np.int64)
    pivcols: list[int] = []
    swaps = 0
    row, col = 0, 0
    if n == 0 or ncols == 0:
        return Echelon(p, A, [], 0)
    if max(n, ncols) <= SMALL:
        t, s = _panel(A, 0, 0, ncols, p, pivbuf)
        return Echelon(p, A, [int(c) for c in pivbuf[:t]], int(s))
    while col < ncols and row < n:
        width = min(block, ncols - col)
        t, s = _panel(A, row, col, width, p, pivbuf)
        swaps += int(s)
        pc = [int(c) for c in pivbuf[:t]]
        if t:
            cstart = col + width
            if cstart < ncols:
                _forward_rows_mod(A, row, t, pivbuf[:t].copy(), cstart, p)
                if row + t < n:
                    L21 = A[row + t:, pc]
                    U12 = A[row:row + t, cstart:]
                    A[row + t:, cstart:] = (A[row + t:, cstart:] - matmul_mod(L21, U12, p)) % p
        pivcols.extend(pc)
        row += t
        col += width
    return Echelon(p, A, pivcols, swaps)


def det_mod(M, p: int) -> int:
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NotSquare(f"determinant of a {M.shape} matrix")
    if M.shape[0] == 0:
        return 1 % p
    E = echelon_mod(M, p)
    if E.rank < M.shape[0]:
        return 0
    d = -1 if E.swaps % 2 else 1
    diag = np.diagonal(E.work)
    acc = d % p
    for x in diag:
        acc = acc * int(x) % p
    return acc


def rank_mod(M, p: int) -> int:
    return echelon_mod(M, p).rank


def upper_solve(U: np.ndarray, X: np.ndarray, p: int) -> np.ndarray:
    """Solve U Y = X mod p for upper-triangular U with nonzero diagonal."""
    r = U.shape[0]
    if r <= 2 * SMALL:
        Y = np.ascontiguousarray(X.copy())
        _upper_solve_small(np.ascontiguousarray(U), Y, p)
        return Y
    h = r // 2
    Y2 = upper_solve(U[h:, h:], X[h:], p)
    rhs = (X[:h] - matmul_mod(U[:h, h:], Y2, p)) % p
    Y1 = upper_solve(U[:h, :h], rhs, p)
    return np.vstack([Y1, Y2])


def nullspace_mod(M, p: int) -> np.ndarray:
    """Rows spanning the right kernel {x : M x = 0} over F_p."""
    M = np.asarray(M)
    ncols = M.shape[1]
    E = echelon_mod(M, p)
    piv = E.pivcols
    free = [c for c in range(ncols) if c not in set(piv)]
    if not free:
        return np.zeros((0, ncols), dtype=np.int64)
    U = E.upper()
    Upiv = U[:, piv]
    Ufree = U[:, free]
    X = np.zeros((len(free), ncols), dtype=np.int64)
    X[np.arange(len(free)), free] = 1
    if piv:
        Y = upper_solve(Upiv, Ufree, p)
        X[:, piv] = (-Y.T) % p
    return X


def left_kernel_mod(M, p: int) -> np.ndarray:
    """Rows spanning {v : v M = 0} over F_p."""
    return nullspace_mod(np.asarray(M).T, p)


# ---------------------------------------------------------------------------
# incremental kernel intersection


@dataclass
class KernelState:
    """Left kernel of a growing column set, as independent rows in F_ell^rho."""
    ell: int
    basis: np.ndarray
    trace: list[int] = field(default_factory=list)

    @property
    def rho(self) -> int:
        return self.basis.shape[1]

    @property
    def dim(self) -> int:
        return self.basis.shape[0]


def kernel_mod(M, ell: int) -> KernelState:
    K = left_kernel_mod(M, ell)
    return KernelState(ell, K, [K.shape[0]])


def full_kernel(rho: int, ell: int) -> KernelState:
    return KernelState(ell, np.eye(rho, dtype=np.int64), [rho])


def kernel_refine(state: KernelState, columns) -> KernelState:
    """Intersect the kernel with the left kernel of `columns` (rho x c)."""
    C = reduce_mod(columns, state.ell)
    if C.ndim != 2 or C.shape[0] != state.rho:
        raise DimensionMismatch(f"columns have {C.shape[0] if C.ndim == 2 else '?'} rows, "
                                f"ambient dimension is {state.rho}")
    if state.dim == 0 or C.shape[1] == 0:
        return KernelState(state.ell, state.basis.copy(), state.trace + [state.dim])
    P = matmul_mod(state.basis, C, state.ell)
    if not P.any():
        return KernelState(state.ell, state.basis.copy(), state.trace + [state.dim])
    W = left_kernel_mod(P, state.ell)
    new = matmul_mod(W, state.basis, state.ell) if W.shape[0] else \
        np.zeros((0, state.rho), dtype=np.int64)
    return KernelState(state.ell, new, state.trace + [new.shape[0]])


def same_row_space(A: np.ndarray, B: np.ndarray, p: int) -> bool:
    ra, rb = rank_mod(A, p) if A.size else 0, rank_mod(B, p) if B.size else 0
    if ra != rb:
        return False
    if ra == 0:
        return True
    return rank_mod(np.vstack([A, B]), p) == ra


# ---------------------------------------------------------------------------
# determinants over Z


def _as_int_rows(M) -> list[list[int]]:
    return [[int(x) for x in row] for row in np.asarray(M, dtype=object)]


def hadamard_bound_sq(M) -> int:
    """Product of squared row norms, an upper bound for det(M)^2."""
    M = np.asarray(M)
    if M.dtype != object and M.size and np.abs(M).max() < 2 ** 20 and M.shape[1] < 2 ** 20:
        norms = (M.astype(np.int64) ** 2).sum(axis=1)
    else:
        norms = [sum(x * x for x in row) for row in _as_int_rows(M)]
    out = 1
    for x in norms:
        out *= int(x)
    return out


_PRIME_CACHE: dict[int, list[int]] = {}


def crt_primes(bound_sq: int, start: int = CRT_PRIME_START) -> list[int]:
    """Primes below `start` whose product P satisfies P^2 > 4 * bound_sq."""
    cache = _PRIME_CACHE.setdefault(start, [])
    gen = None
    primes, prod = [], 1
    i = 0
    while prod * prod <= 4 * bound_sq:
        if i == len(cache):
            if gen is None:
                gen = primes_descending(cache[-1] if cache else start)
            cache.append(next(gen))
        q = cache[i]
        primes.append(q)
        prod *= q
        i += 1
    return primes


def crt_symmetric(residues: list[int], moduli: list[int]) -> int:
    x, M = 0, 1
    for r, q in zip(residues, moduli):
        t = (r - x) * pow(M, -1, q) % q
        x += M * t
        M *= q
    return x - M if x > M // 2 else x


def det_exact(M, workers: int = 1) -> int:
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NotSquare(f"determinant of a {M.shape} matrix")
    if M.shape[0] == 0:
        return 1
    bsq = hadamard_bound_sq(M)
    if bsq == 0:
        return 0
    primes = crt_primes(bsq)
    prod = 1
    for q in primes:
        prod *= q
    assert prod * prod > 4 * bsq
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            residues = list(ex.map(lambda q: det_mod(M, q), primes))
    else:
        residues = [det_mod(M, q) for q in primes]
    return crt_symmetric(residues, primes)


# ---------------------------------------------------------------------------
# squarefree gcd criterion


SQUAREFREE, NOT_SQUAREFREE, INDETERMINATE = "squarefree", "not squarefree", "indeterminate"


def squarefree_status(n: int) -> str:
    n = abs(n)
    fac, rest = factorize(n)
    if any(e > 1 for e in fac.values()):
        return NOT_SQUAREFREE
    if rest == 1:
        return SQUAREFREE
    # rest has no prime factor below the trial-division cap
    s = isqrt(rest)
    if s * s == rest:
        return NOT_SQUAREFREE
    if rest < 10 ** 21:
        # at most two prime factors above 10^7, and not a square: distinct primes
        return SQUAREFREE
    if primality(rest):
        return SQUAREFREE
    return INDETERMINATE


def squarefree_gcd_criterion(d1: int, d2: int) -> bool | None:
    """True iff gcd(|d1|, |d2|) is squarefree; None when undecidable here."""
    if d1 == 0 or d2 == 0:
        raise ZeroDiscriminant("discriminants must be nonzero")
    status = squarefree_status(gcd(d1, d2))
    return None if status == INDETERMINATE else status == SQUAREFREE
