"""Slow, obviously-correct reference implementations used by the tests."""
from fractions import Fraction
from itertools import product


def cofactor_det(M):
    """Laplace expansion along the first row."""
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return int(M[0][0])
    total = 0
    for j in range(n):
        if M[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        total += (-1) ** j * int(M[0][j]) * cofactor_det(minor)
    return total


def fraction_rank(M):
    """Rank over Q by Gaussian elimination with Fractions."""
    A = [[Fraction(int(x)) for x in row] for row in M]
    rank, cols = 0, len(A[0]) if A else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for i in range(len(A)):
            if i != rank and A[i][c] != 0:
                f = A[i][c] / A[rank][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[rank])]
        rank += 1
    return rank


def brute_left_kernel_dim(M, p):
    """Number of x in F_p^rows with x M = 0, as a dimension (tiny matrices only)."""
    rows = len(M)
    count = 0
    for x in product(range(p), repeat=rows):
        if all(sum(x[i] * int(M[i][j]) for i in range(rows)) % p == 0 for j in range(len(M[0]))):
            count += 1
    d = 0
    while p ** d < count:
        d += 1
    return d


def points_meet(P1, Q1, P2, Q2):
    """Two lines meet iff the 4x4 matrix of spanning points is singular (FieldElem entries)."""
    rows = [list(P1), list(Q1), list(P2), list(Q2)]

    def det(A):
        if len(A) == 1:
            return A[0][0]
        out = None
        for j in range(len(A)):
            minor = [r[:j] + r[j + 1:] for r in A[1:]]
            term = A[0][j] * det(minor)
            if j % 2:
                term = -term
            out = term if out is None else out + term
        return out

    return not det(rows)
