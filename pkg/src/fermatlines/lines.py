"""The 3m^2 lines on the complex Fermat surface and their intersection lattice.

A standard line is stored by its family j and exponents (k, l), meaning
(zeta, eta) = (gamma^k, gamma^l):

    l1(zeta, eta) = [lam, w*zeta*lam, mu, w*eta*mu]
    l2(zeta, eta) = [lam, mu, w*zeta*lam, w*eta*mu]
    l3(zeta, eta) = [lam, mu, w*eta*mu, w*zeta*lam]

with w^m = -1.  For odd m we take w = -1; for even m, w is a primitive
2m-th root with w^2 = gamma, which shifts the (1,3) incidence rule by one.
Nothing here is ever evaluated numerically; incidences are congruences on
exponents.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegreeMismatch, NotDecomposableForFamily, UnsupportedDegree
from .numtheory import _zpoly_divmod, cyclotomic_coefficients


@dataclass(frozen=True, order=True)
class StandardLine:
    j: int
    k: int
    l: int
    m: int = field(compare=False)

    def __post_init__(self):
        if self.j not in (1, 2, 3):
            raise ValueError(f"family must be 1, 2 or 3, got {self.j}")
        object.__setattr__(self, "k", self.k % self.m)
        object.__setattr__(self, "l", self.l % self.m)

    @property
    def index(self) -> int:
        return line_index(self.j, self.k, self.l, self.m)

    @property
    def twisted(self) -> bool:
        """Even degree: zeta, eta carry the 2m-th root twist."""
        return self.m % 2 == 0

    def __repr__(self):
        return f"l{self.j}({self.k},{self.l})"


class _Hyperplane:
    __slots__ = ()

    def __repr__(self):
        return "H"


H = _Hyperplane()


def line_index(j, k, l, m):
    """Position of l_j(k, l) in the list of all 3m^2 lines (works on arrays)."""
    return (j - 1) * m * m + (k % m) * m + (l % m)


def all_lines(m: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    idx = np.arange(3 * m * m)
    return idx // (m * m) + 1, (idx // m) % m, idx % m


def lines_to_arrays(lines) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    J = np.array([x.j for x in lines], dtype=np.int64)
    K = np.array([x.k for x in lines], dtype=np.int64)
    L = np.array([x.l for x in lines], dtype=np.int64)
    return J, K, L


def _check_degree(m, *objs):
    for x in objs:
        if isinstance(x, StandardLine) and x.m != m:
            raise DegreeMismatch(f"{x!r} lives on degree {x.m}, not {m}")


def pairing_arrays(J1, K1, L1, J2, K2, L2, m: int) -> np.ndarray:
    """Broadcast intersection numbers between standard lines given as arrays."""
    eps = 1 if m % 2 == 0 else 0
    J1, K1, L1, J2, K2, L2 = np.broadcast_arrays(J1, K1, L1, J2, K2, L2)
    out = np.zeros(J1.shape, dtype=np.int64)
    same = J1 == J2
    out[same & ((K1 == K2) | (L1 == L2))] = 1
    out[same & (K1 == K2) & (L1 == L2)] = 2 - m

    # (1,2): zeta*eta' = zeta'*eta
    c12 = (K1 + L2 - K2 - L1) % m == 0
    c21 = (K2 + L1 - K1 - L2) % m == 0
    out[(J1 == 1) & (J2 == 2) & c12] = 1
    out[(J1 == 2) & (J2 == 1) & c21] = 1
    # (1,3): zeta' = w^2 zeta eta eta'
    c13 = (K2 - K1 - L1 - L2 - eps) % m == 0
    c31 = (K1 - K2 - L2 - L1 - eps) % m == 0
    out[(J1 == 1) & (J2 == 3) & c13] = 1
    out[(J1 == 3) & (J2 == 1) & c31] = 1
    # (2,3): zeta*eta = zeta'*eta'
    c23 = (K1 + L1 - K2 - L2) % m == 0
    out[(J1 == 2) & (J2 == 3) & c23] = 1
    out[(J1 == 3) & (J2 == 2) & c23] = 1
    return out


def line_pairing(x, y, m: int) -> int:
    """Intersection number of two standard lines or the hyperplane class H."""
    _check_degree(m, x, y)
    if x is H and y is H:
        return m
    if x is H or y is H:
        return 1
    return int(pairing_arrays(x.j, x.k, x.l, y.j, y.k, y.l, m))


def rational_basis(m: int) -> list[StandardLine]:
    """The rational basis of NS(S) tensor Q by lines, in j, k, l order.

    For m = 4 this is the shifted variant (l -> l-1, plus l2(0, m-2)).
    """
    if m % 2 == 0 and m != 4:
        raise UnsupportedDegree(f"no line basis for even degree {m} other than 4")
    if m < 4:
        raise UnsupportedDegree(f"degree {m} is below the supported range")
    shift = 1 if m == 4 else 0
    out = [StandardLine(j, k, l - shift, m)
           for j in (1, 2, 3) for k in range(m - 1) for l in range(1, m - 1)]
    out.append(StandardLine(1, m - 1, 1 - shift, m))
    if m == 4:
        out.append(StandardLine(2, 0, m - 2, m))
    return out


def rational_basis_arrays(m: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    return lines_to_arrays(rational_basis(m))


def gram_matrix(lines, m: int) -> np.ndarray:
    """Integer Gram matrix of a list of standard lines (and possibly H)."""
    lines = list(lines)
    _check_degree(m, *lines)
    n = len(lines)
    std = [i for i, x in enumerate(lines) if x is not H]
    hyp = [i for i, x in enumerate(lines) if x is H]
    G = np.zeros((n, n), dtype=np.int64)
    if std:
        J, K, L = lines_to_arrays([lines[i] for i in std])
        sub = pairing_arrays(J[:, None], K[:, None], L[:, None], J[None, :], K[None, :], L[None, :], m)
        G[np.ix_(std, std)] = sub
    for i in hyp:
        G[i, :] = 1
        G[:, i] = 1
    for i in hyp:
        for k in hyp:
            G[i, k] = m
    return G


def gram_from_arrays(J, K, L, m: int) -> np.ndarray:
    return pairing_arrays(J[:, None], K[:, None], L[:, None], J[None, :], K[None, :], L[None, :], m)


# ---------------------------------------------------------------------------
# group action of mu_m^3 on standard lines


def act_on_standard(sigma, J, K, L, m: int):
    """Image of l_j(k, l) under [x0:x1:x2:x3] -> [g^a x0 : g^b x1 : g^c x2 : x3]."""
    a, b, c = sigma
    J = np.asarray(J)
    K = np.asarray(K)
    L = np.asarray(L)
    K2 = np.where(J == 1, K + b - a, np.where(J == 2, K + c - a, K - a)) % m
    L2 = np.where(J == 1, L - c, np.where(J == 2, L - b, L + c - b)) % m
    return J, K2, L2


# ---------------------------------------------------------------------------
# formal divisors with cyclotomic coefficients


class FormalDivisor:
    """Finite sum of standard lines and H with coefficients in Z[x]/(x^m - 1).

    Pairings are reduced modulo the m-th cyclotomic polynomial at the end.
    """

    def __init__(self, m: int, indices=(), coeffs=None, h_coeff=None):
        self.m = m
        self.indices = np.asarray(indices, dtype=np.int64)
        if coeffs is None:
            coeffs = np.zeros((len(self.indices), m), dtype=np.int64)
        self.coeffs = np.asarray(coeffs, dtype=np.int64).reshape(len(self.indices), m)
        self.h_coeff = np.zeros(m, dtype=np.int64) if h_coeff is None else np.asarray(h_coeff, dtype=np.int64)

    @classmethod
    def from_terms(cls, m: int, terms: dict) -> "FormalDivisor":
        """terms maps StandardLine or H to an exponent (monomial gamma^e) or a coefficient vector."""
        idx, cf, h = [], [], np.zeros(m, dtype=np.int64)
        for key, val in terms.items():
            vec = np.zeros(m, dtype=np.int64)
            if isinstance(val, (int, np.integer)):
                vec[int(val) % m] = 1
            else:
                vec[:] = val
            if key is H:
                h += vec
            else:
                _check_degree(m, key)
                idx.append(key.index)
                cf.append(vec)
        return cls(m, idx, np.array(cf, dtype=np.int64).reshape(len(idx), m), h)

    def __len__(self):
        return len(self.indices) + int(self.h_coeff.any())

    def coefficient(self, line) -> np.ndarray:
        if line is H:
            return self.h_coeff.copy()
        hits = np.flatnonzero(self.indices == line.index)
        return self.coeffs[hits].sum(axis=0) if len(hits) else np.zeros(self.m, dtype=np.int64)

    def __add__(self, other: "FormalDivisor") -> "FormalDivisor":
        if other.m != self.m:
            raise DegreeMismatch("divisors on different surfaces")
        return FormalDivisor(self.m, np.concatenate([self.indices, other.indices]),
                             np.vstack([self.coeffs, other.coeffs]), self.h_coeff + other.h_coeff)

    def __neg__(self):
        return FormalDivisor(self.m, self.indices, -self.coeffs, -self.h_coeff)

    def __sub__(self, other):
        return self + (-other)


def hyperplane_divisor(m: int) -> FormalDivisor:
    h = np.zeros(m, dtype=np.int64)
    h[0] = 1
    return FormalDivisor(m, [], None, h)


def cyclic_to_cyclotomic(vec, m: int) -> list[int]:
    """Reduce an element of Z[x]/(x^m - 1) modulo the m-th cyclotomic polynomial."""
    phi = cyclotomic_coefficients(m)
    _, r = _zpoly_divmod([int(x) for x in vec], phi)
    r = list(r) + [0] * (len(phi) - 1 - len(r))
    return r[: len(phi) - 1]


def cyclotomic_as_integer(c: list[int]) -> int | None:
    """The rational integer represented by c, or None if c is not in Z."""
    if any(c[1:]):
        return None
    return c[0] if c else 0


def _cyclic_product_sum(C1: np.ndarray, T: np.ndarray, m: int) -> np.ndarray:
    """sum_a C1[a] * T[a] in Z[x]/(x^m - 1)."""
    M = C1.T.astype(object) @ T.astype(object)
    out = np.zeros(m, dtype=object)
    for i in range(m):
        for s in range(m):
            out[(i + s) % m] += M[i, s]
    return out


def eigendivisor_pairing(u: FormalDivisor, v: FormalDivisor, m: int) -> list[int]:
    """Bilinear extension of the line pairing; returns cyclotomic coefficients."""
    if u.m != m or v.m != m:
        raise DegreeMismatch("divisors on different surfaces")
    J, K, L = all_lines(m)
    G = pairing_arrays(J[u.indices][:, None], K[u.indices][:, None], L[u.indices][:, None],
                       J[v.indices][None, :], K[v.indices][None, :], L[v.indices][None, :], m)
    total = np.zeros(m, dtype=object)
    if len(u.indices) and len(v.indices):
        total += _cyclic_product_sum(u.coeffs, G @ v.coeffs, m)
    # H terms: H.l = 1, H.H = m
    if u.h_coeff.any() and len(v.indices):
        total += _cyclic_product_sum(u.h_coeff[None, :], v.coeffs.sum(axis=0)[None, :], m)
    if v.h_coeff.any() and len(u.indices):
        total += _cyclic_product_sum(u.coeffs.sum(axis=0)[None, :], v.h_coeff[None, :], m)
    if u.h_coeff.any() and v.h_coeff.any():
        total += m * _cyclic_product_sum(u.h_coeff[None, :], v.h_coeff[None, :], m)
    return cyclic_to_cyclotomic(total, m)


def eigendivisor(j: int, alpha, m: int | None = None) -> FormalDivisor:
    """w_j(alpha): sum over the m^2 lines of family j with character-twisted coefficients.

    w1 = sum zeta^a1 eta^a3 l1,  w2 = sum zeta^a2 eta^a3 l2,  w3 = sum zeta^a3 eta^a2 l3.
    """
    a = tuple(alpha.a) if hasattr(alpha, "a") else tuple(alpha)
    m = alpha.m if m is None else m
    a = tuple(int(x) % m for x in a)
    if sum(a) % m:
        raise ValueError(f"{a} is not a character mod {m}")
    if (a[0] + a[j]) % m:
        raise NotDecomposableForFamily(f"a0 + a{j} != 0 for {a}")
    e1, e2 = {1: (a[1], a[3]), 2: (a[2], a[3]), 3: (a[3], a[2])}[j]
    k, l = np.meshgrid(np.arange(m), np.arange(m), indexing="ij")
    k, l = k.ravel(), l.ravel()
    idx = line_index(j, k, l, m)
    expo = (e1 * k + e2 * l) % m
    coeffs = np.zeros((len(idx), m), dtype=np.int64)
    coeffs[np.arange(len(idx)), expo] = 1
    return FormalDivisor(m, idx, coeffs)


# ---------------------------------------------------------------------------
# relation matrix blocks


def shift_matrices(m: int) -> tuple[np.ndarray, np.ndarray]:
    """D with ones at (i, i+1) and (m-1, 0); B = D^T = D^-1."""
    D = np.zeros((m, m), dtype=np.int64)
    for i in range(m - 1):
        D[i, i + 1] = 1
    D[m - 1, 0] = 1
    return D.T.copy(), D


def constant_row(m: int, r: int) -> np.ndarray:
    """U(r): ones in row r (1-based), zeros elsewhere."""
    U = np.zeros((m, m), dtype=np.int64)
    U[r - 1, :] = 1
    return U


def relation_matrix(m: int) -> np.ndarray:
    """The 6m x 6m block matrix encoding the line relations."""
    B, D = shift_matrices(m)
    I = np.eye(m, dtype=np.int64)
    Z = np.zeros((m, m), dtype=np.int64)
    layout = [[I, I, Z, Z, Z, Z],
              [Z, Z, I, I, Z, Z],
              [Z, Z, Z, Z, I, I],
              [I, B, I, B, Z, Z],
              [I, D, Z, Z, I, B],
              [Z, Z, I, D, I, D]]
    return np.block(layout)


def relation_block_determinants(m: int, r: int) -> tuple[int, int, int]:
    from .linalg import det_exact
    if m < 2 or not 1 <= r <= m:
        raise ValueError("need m >= 2 and 1 <= r <= m")
    B, D = shift_matrices(m)
    I = np.eye(m, dtype=np.int64)
    U = constant_row(m, r)
    return (det_exact(B - I + U), det_exact(D - I + U),
            det_exact(2 * I - B - D + constant_row(m, 2)))


def discB_exponent(m: int) -> int:
    return 3 * (m - 3) ** 2
