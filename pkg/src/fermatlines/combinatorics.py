"""Numerical invariants of the degree-m Fermat surface and its character sets.

A character is a 4-tuple alpha = (a0, a1, a2, a3) of residues mod m with
sum 0.  A_m collects those with all entries nonzero, B_m those whose weight
|r*alpha| equals 2 for every unit r, and D_m the decomposable ones, where
a0 + aj = 0 for some j.  The Picard number is #B_m + 1.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from math import comb, gcd

import numpy as np

from .errors import ZeroCoordinate


@dataclass(frozen=True)
class Character:
    a: tuple[int, int, int, int]
    m: int

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) % self.m for x in self.a))
        if sum(self.a) % self.m:
            raise ValueError(f"{self.a} does not sum to 0 mod {self.m}")

    def __neg__(self):
        return Character(tuple(-x for x in self.a), self.m)

    def scale(self, r: int) -> "Character":
        return Character(tuple(r * x for x in self.a), self.m)

    def __iter__(self):
        return iter(self.a)


@dataclass(frozen=True)
class SurfaceInvariants:
    m: int
    b2: int
    pg: int
    chi: int
    e: int
    ksq: int
    h11: int
    rho: int
    lam: int
    countA: int
    countB: int
    countD: int

    def as_dict(self) -> dict:
        d = asdict(self)
        d["lambda"] = d.pop("lam")
        return d


@dataclass
class CharacterSets:
    """Arrays of shape (k, 4) with entries in [0, m)."""
    m: int
    A: np.ndarray
    B: np.ndarray
    D: np.ndarray
    D1: np.ndarray
    D2: np.ndarray
    D3: np.ndarray

    def split(self, j: int) -> np.ndarray:
        return (self.D1, self.D2, self.D3)[j - 1]


def units(m: int) -> list[int]:
    return [r for r in range(1, m) if gcd(r, m) == 1] if m > 1 else [0]


def weight(alpha, m: int | None = None) -> Fraction:
    """|alpha| = (sum of representatives in (0, m)) / m."""
    if isinstance(alpha, Character):
        a, m = alpha.a, alpha.m
    else:
        a = tuple(int(x) % m for x in alpha)
    if any(x == 0 for x in a):
        raise ZeroCoordinate(f"{a} has a zero coordinate")
    return Fraction(sum(a), m)


def all_characters(m: int) -> np.ndarray:
    """A_m in lexicographic order of (a0, a1, a2)."""
    r = np.arange(1, m, dtype=np.int64)
    a0, a1, a2 = np.meshgrid(r, r, r, indexing="ij")
    a0, a1, a2 = a0.ravel(), a1.ravel(), a2.ravel()
    a3 = (-(a0 + a1 + a2)) % m
    keep = a3 != 0
    return np.stack([a0[keep], a1[keep], a2[keep], a3[keep]], axis=1)


def _in_B(chars: np.ndarray, m: int) -> np.ndarray:
    """Mask of characters whose weight stays 2 under every unit."""
    alive = np.flatnonzero(chars.sum(axis=1) == 2 * m)
    sub = chars[alive]
    for r in units(m)[1:]:
        ok = ((sub * r) % m).sum(axis=1) == 2 * m
        alive, sub = alive[ok], sub[ok]
    mask = np.zeros(len(chars), dtype=bool)
    mask[alive] = True
    return mask


def _decomposable_masks(chars: np.ndarray, m: int):
    return [(chars[:, 0] + chars[:, j]) % m == 0 for j in (1, 2, 3)]


def character_sets(m: int) -> CharacterSets:
    if m < 2:
        raise ValueError("character sets need m >= 2")
    A = all_characters(m)
    B = A[_in_B(A, m)]
    masks = _decomposable_masks(A, m)
    D = A[masks[0] | masks[1] | masks[2]]
    return CharacterSets(m, A, B, D, A[masks[0]], A[masks[1]], A[masks[2]])


def count_D_closed_form(m: int) -> int:
    return 3 * (m - 1) * (m - 2) + (1 if m % 2 == 0 else 0)


def count_A_closed_form(m: int) -> int:
    return (m - 1) * (m * m - 3 * m + 3)


def _sorted_characters(m: int):
    """Multisets {a0 <= a1 <= a2 <= a3} in A_m with their orbit sizes under S_4."""
    r = np.arange(1, m, dtype=np.int64)
    a0, a1 = np.meshgrid(r, r, indexing="ij")
    sel = a0 <= a1
    a0, a1 = a0[sel], a1[sel]
    rows = []
    for c in range(1, m):
        keep = a1 <= c
        b0, b1 = a0[keep], a1[keep]
        d = (-(b0 + b1 + c)) % m
        ok = (d >= c)
        rows.append(np.stack([b0[ok], b1[ok], np.full(ok.sum(), c), d[ok]], axis=1))
    S = np.concatenate(rows) if rows else np.zeros((0, 4), dtype=np.int64)
    # distinct permutations of a sorted tuple: 24 / prod(run length!)
    rl1 = np.where(S[:, 0] == S[:, 1], 2, 1)
    rl2 = np.where(S[:, 1] == S[:, 2], rl1 + 1, 1)
    rl3 = np.where(S[:, 2] == S[:, 3], rl2 + 1, 1)
    mult = 24 // (rl1 * rl2 * rl3)
    return S, mult


def class_counts(m: int) -> tuple[int, int, int]:
    """(#A_m, #B_m, #D_m) by enumerating sorted representatives only.

    B_m and D_m are both invariant under permuting coordinates, so counting
    multisets with their permutation counts suffices; this keeps the m <= 200
    sweep cheap.
    """
    S, mult = _sorted_characters(m)
    inB = _in_B(S, m)
    # decomposable iff some pair of coordinates sums to 0 (pairs are symmetric)
    inD = np.zeros(len(S), dtype=bool)
    for i in range(4):
        for j in range(i + 1, 4):
            inD |= (S[:, i] + S[:, j]) % m == 0
    return int(mult.sum()), int(mult[inB].sum()), int(mult[inD].sum())


def surface_invariants(m: int) -> SurfaceInvariants:
    if m < 1:
        raise ValueError("degree must be positive")
    b2 = m ** 3 - 4 * m ** 2 + 6 * m - 2
    pg = comb(m - 1, 3)
    chi = 1 + pg
    ksq = m * (m - 4) ** 2
    e = 12 * chi - ksq
    h11 = b2 - 2 * pg
    if m >= 2:
        countA, countB, countD = class_counts(m)
    else:
        countA = countB = countD = 0
    rho = countB + 1
    return SurfaceInvariants(m=m, b2=b2, pg=pg, chi=chi, e=e, ksq=ksq, h11=h11, rho=rho,
                             lam=b2 - rho, countA=countA, countB=countB, countD=countD)


def rational_generation_test(m: int) -> bool:
    """True iff D_m = B_m, i.e. lines span NS(S) tensor Q."""
    if m < 2:
        return True
    _, nB, nD = class_counts(m)
    # D_m is always contained in B_m, so equal counts mean equal sets
    return nB == nD


def rational_generation_predicate(m: int) -> bool:
    return m <= 4 or gcd(m, 6) == 1
