"""Divisors that only exist after supersingular reduction.

Given a degree m and a prime power q = r*m - 1, the Fermat surface of degree
r*m = q + 1 over F_{q^2} carries the extra line

    l(alpha, beta) = {[lam, alpha*lam + beta*mu, beta*lam + alpha*mu, mu]}

whenever alpha is in F_q, beta^2 = 1 + alpha^2 and beta^(q-1) = -1.  The
coordinatewise r-th power map phi pushes it down to a curve D on the degree-m
surface.  Pairings with D are computed upstairs with the projection formula
(b . D = phi^* b . l), so D itself is never parametrised.

Lines are handled through Pluecker coordinates (p01, p02, p03, p12, p13, p23);
two distinct lines meet iff the Pluecker pairing vanishes.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import (BadCharacteristic, CoincidentLine, MissingRootOfUnity,
                     NoPairFound, RootExtractionFailed, SearchLimitExceeded,
                     ValidationFailed)
from .field_tower import FieldCtx, FieldElem, frobenius_power, solve_power_equation, sqrt_in_ext
from .lines import StandardLine, act_on_standard, all_lines, line_index
from .numtheory import multiplicative_order, prime_power

PLUECKER_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
# pairing: p01 q23 - p02 q13 + p03 q12 + p12 q03 - p13 q02 + p23 q01
_DUAL = ((0, 5, 1), (1, 4, -1), (2, 3, 1), (3, 2, 1), (4, 1, -1), (5, 0, 1))


# ---------------------------------------------------------------------------
# supersingularity and cover parameters


def is_supersingular_prime(p: int, m: int) -> bool:
    """-1 lies in the subgroup generated by p in (Z/m)^*."""
    if m % p == 0:
        raise BadCharacteristic(f"{p} divides {m}")
    if m <= 2:
        return True
    d = multiplicative_order(p % m, m)
    return d % 2 == 0 and pow(p, d // 2, m) == m - 1


@dataclass(frozen=True)
class CoverParams:
    m: int
    r: int
    q: int
    p: int
    n: int

    @property
    def mhat(self) -> int:
        return self.r * self.m

    def as_dict(self) -> dict:
        return {"r": self.r, "q": self.q, "p": self.p, "n": self.n}


def cover_from(m: int, r: int) -> CoverParams:
    q = r * m - 1
    pp = prime_power(q)
    if pp is None:
        raise ValueError(f"{q} is not a prime power")
    return CoverParams(m, r, q, pp[0], pp[1])


def find_cover_params(m: int, max_r: int = 64) -> CoverParams:
    """Smallest r >= 1 with r*m - 1 a prime power not dividing into m."""
    for r in range(1, max_r + 1):
        q = r * m - 1
        if q < 2:
            continue
        pp = prime_power(q)
        if pp is not None and m % pp[0]:
            return CoverParams(m, r, q, pp[0], pp[1])
    raise SearchLimitExceeded(f"no prime power r*m - 1 with r <= {max_r} for m = {m}")


# ---------------------------------------------------------------------------
# projective lines over F_{q^2}


class ProjLine:
    """A line in P^3 spanned by two points with coordinates in F_{q^2} (stored as codes)."""

    __slots__ = ("ctx", "P", "Q", "on_surface")

    def __init__(self, ctx: FieldCtx, P, Q, on_surface: bool = False):
        self.ctx = ctx
        self.P = tuple(int(ctx.coerce(x).code) if not isinstance(x, (int, np.integer)) else int(x)
                       for x in P)
        self.Q = tuple(int(ctx.coerce(x).code) if not isinstance(x, (int, np.integer)) else int(x)
                       for x in Q)
        self.on_surface = on_surface
        if not any(pluecker(ctx, np.array(self.P), np.array(self.Q))):
            raise ValueError("spanning points are dependent")

    @classmethod
    def from_elems(cls, ctx, P, Q, on_surface=False):
        return cls(ctx, [ctx.coerce(x).code for x in P], [ctx.coerce(x).code for x in Q], on_surface)

    def pluecker(self) -> np.ndarray:
        return pluecker(self.ctx, np.array(self.P), np.array(self.Q))

    def key(self) -> tuple:
        return tuple(int(x) for x in normalize_pluecker(self.ctx, self.pluecker()))

    def __eq__(self, other):
        return isinstance(other, ProjLine) and self.ctx is other.ctx and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def points(self) -> tuple[list[FieldElem], list[FieldElem]]:
        return ([FieldElem(self.ctx, c) for c in self.P], [FieldElem(self.ctx, c) for c in self.Q])

    def __repr__(self):
        P, Q = self.points()
        return f"ProjLine({P}, {Q})"


def pluecker(ctx: FieldCtx, P: np.ndarray, Q: np.ndarray) -> np.ndarray:
    """Pluecker coordinates of lines spanned by P, Q (arrays of shape (..., 4))."""
    P = np.asarray(P, dtype=np.int64)
    Q = np.asarray(Q, dtype=np.int64)
    out = [ctx.vsub(ctx.vmul(P[..., i], Q[..., j]), ctx.vmul(P[..., j], Q[..., i]))
           for i, j in PLUECKER_PAIRS]
    return np.stack(out, axis=-1)


def normalize_pluecker(ctx: FieldCtx, U: np.ndarray) -> np.ndarray:
    """Scale each Pluecker vector so its first nonzero entry is 1."""
    U = np.asarray(U, dtype=np.int64)
    nz = U != 0
    first = np.argmax(nz, axis=-1)
    lead = np.take_along_axis(U, first[..., None], axis=-1)
    if (lead == 0).any():
        raise ValueError("zero Pluecker vector")
    inv = ctx.vinv(lead)
    return ctx.vmul(U, np.broadcast_to(inv, U.shape))


def pluecker_pairing(ctx: FieldCtx, U: np.ndarray, V: np.ndarray) -> np.ndarray:
    """Bilinear form that vanishes iff the two lines meet (broadcasting)."""
    U = np.asarray(U, dtype=np.int64)
    V = np.asarray(V, dtype=np.int64)
    total = None
    for a, b, sign in _DUAL:
        term = ctx.vmul(U[..., a], V[..., b])
        if sign < 0:
            term = ctx.vneg(term)
        total = term if total is None else ctx.vadd(total, term)
    return total


def same_line(ctx: FieldCtx, U: np.ndarray, V: np.ndarray) -> np.ndarray:
    """Pluecker vectors proportional, i.e. all 2x2 minors vanish."""
    U, V = np.broadcast_arrays(np.asarray(U, dtype=np.int64), np.asarray(V, dtype=np.int64))
    Un = normalize_pluecker(ctx, U)
    Vn = normalize_pluecker(ctx, V)
    return (Un == Vn).all(axis=-1)


def incidence_arrays(ctx: FieldCtx, U: np.ndarray, V: np.ndarray, degree: int) -> np.ndarray:
    """Intersection numbers of lines on the degree surface from Pluecker arrays."""
    meet = pluecker_pairing(ctx, U, V) == 0
    eq = same_line(ctx, U, V)
    return np.where(eq, 2 - degree, meet.astype(np.int64))


def line_incidence(L1: ProjLine, L2: ProjLine, degree: int) -> int:
    if L1 == L2:
        return 2 - degree
    return int(pluecker_pairing(L1.ctx, L1.pluecker(), L2.pluecker()) == 0)


# ---------------------------------------------------------------------------
# surface membership


def validate_line_on_surface(line: ProjLine, degree: int, ctx: FieldCtx | None = None) -> bool:
    """Does sum_i (a_i lam + b_i mu)^degree vanish identically?"""
    ctx = ctx or line.ctx
    a = [FieldElem(ctx, c) for c in line.P]
    b = [FieldElem(ctx, c) for c in line.Q]
    q = ctx.q
    if degree == q + 1:
        # (a lam + b mu)^(q+1) = (a^q lam^q + b^q mu^q)(a lam + b mu)
        coeffs = [ctx.zero] * 4
        for ai, bi in zip(a, b):
            aq, bq = frobenius_power(ai), frobenius_power(bi)
            coeffs[0] = coeffs[0] + aq * ai
            coeffs[1] = coeffs[1] + aq * bi
            coeffs[2] = coeffs[2] + bq * ai
            coeffs[3] = coeffs[3] + bq * bi
        return all(not c for c in coeffs)
    p = ctx.p
    for t in range(degree + 1):
        binom = comb(degree, t) % p
        if not binom:
            continue
        s = ctx.zero
        for ai, bi in zip(a, b):
            s = s + (ai ** t) * (bi ** (degree - t))
        if s * binom:
            return False
    return True


# ---------------------------------------------------------------------------
# standard lines as projective lines


def omega(ctx: FieldCtx, m: int | None = None) -> FieldElem:
    m = ctx.m if m is None else m
    if m % 2:
        return -ctx.one
    return ctx.omega


def _family_points(ctx: FieldCtx, J, C, D):
    """Spanning points of the family-J line with coefficients c, d (code arrays)."""
    J = np.asarray(J)
    C = np.asarray(C, dtype=np.int64)
    D = np.asarray(D, dtype=np.int64)
    J, C, D = np.broadcast_arrays(J, C, D)
    P = np.zeros(J.shape + (4,), dtype=np.int64)
    Q = np.zeros(J.shape + (4,), dtype=np.int64)
    P[..., 0] = 1
    f1, f2, f3 = J == 1, J == 2, J == 3
    # l1: x1 = c x0, x3 = d x2
    P[f1, 1] = C[f1]
    Q[f1, 2] = 1
    Q[f1, 3] = D[f1]
    # l2: x2 = c x0, x3 = d x1
    P[f2, 2] = C[f2]
    Q[f2, 1] = 1
    Q[f2, 3] = D[f2]
    # l3: x3 = c x0, x2 = d x1
    P[f3, 3] = C[f3]
    Q[f3, 1] = 1
    Q[f3, 2] = D[f3]
    return P, Q


def standard_to_proj(line: StandardLine, ctx: FieldCtx) -> ProjLine:
    w = omega(ctx, line.m)
    if line.m != ctx.m:
        raise ValueError("line degree does not match the field context")
    c = (w * ctx.gamma ** line.k).code
    d = (w * ctx.gamma ** line.l).code
    P, Q = _family_points(ctx, line.j, c, d)
    return ProjLine(ctx, P.tolist(), Q.tolist(), on_surface=True)


def standard_pluecker_all(ctx: FieldCtx) -> np.ndarray:
    """Pluecker coordinates of all 3m^2 standard lines, in line_index order."""
    m = ctx.m
    J, K, L = all_lines(m)
    w = omega(ctx, m).code
    lg = ctx.log(ctx.gamma.code)
    C = ctx.vmul(w, ctx.vexp(K * lg))
    D = ctx.vmul(w, ctx.vexp(L * lg))
    P, Q = _family_points(ctx, J, C, D)
    return pluecker(ctx, P, Q)


def group_act(sigma, line: ProjLine, ctx: FieldCtx, order: int | None = None) -> ProjLine:
    """[x0:x1:x2:x3] -> [g^a x0 : g^b x1 : g^c x2 : x3] with g of order m (or r*m)."""
    m = ctx.m
    order = m if order is None else order
    if order == m:
        g = ctx.gamma
    else:
        if order % m:
            raise MissingRootOfUnity(f"order {order} is not a multiple of {m}")
        g = ctx.lifted_root(order // m)
    s = [g ** int(e) for e in sigma] + [ctx.one]
    P, Q = line.points()
    return ProjLine.from_elems(ctx, [x * y for x, y in zip(P, s)],
                               [x * y for x, y in zip(Q, s)], line.on_surface)


# ---------------------------------------------------------------------------
# special lines


def general_line(ctx: FieldCtx, alpha, beta) -> ProjLine:
    alpha, beta = ctx.coerce(alpha), ctx.coerce(beta)
    return ProjLine.from_elems(ctx, [1, alpha, beta, 0], [0, beta, alpha, 1])


def cube_root_line(ctx: FieldCtx) -> ProjLine:
    """[lam, a(lam + a mu), a(a lam - mu), mu] with a^2 + a + 1 = 0, a in F_q."""
    if (ctx.q - 1) % 3:
        raise NoPairFound("q is not 1 mod 3, F_q has no primitive cube root of unity")
    a = FieldElem(ctx, ctx.exp((ctx.N // 3)))
    return ProjLine.from_elems(ctx, [1, a, a * a, 0], [0, a * a, -a, 1])


def char3_line(ctx: FieldCtx) -> ProjLine:
    """[lam, lam + mu, lam - mu, mu]; lies on the degree q+1 surface when p = 3."""
    if ctx.p != 3:
        raise BadCharacteristic("this line needs characteristic 3")
    return ProjLine.from_elems(ctx, [1, 1, 1, 0], [0, 1, -1, 1])


def is_special_pair(ctx: FieldCtx, alpha, beta) -> bool:
    alpha, beta = ctx.coerce(alpha), ctx.coerce(beta)
    if not alpha or frobenius_power(alpha) != alpha:
        return False
    if beta * beta != 1 + alpha * alpha or not beta:
        return False
    return beta ** (ctx.q - 1) == -ctx.one


def find_special_line(ctx: FieldCtx, cover: CoverParams, seed: int = 0,
                      attempts: int = 10000) -> tuple[FieldElem, FieldElem]:
    """A random pair (alpha, beta) whose line lies on the degree q+1 surface."""
    if cover.q != ctx.q:
        raise ValueError("field context does not match the cover")
    rng = np.random.default_rng(seed)
    base = ctx.base_field_elements()
    for _ in range(attempts):
        alpha = base[int(rng.integers(len(base)))]
        s = 1 + alpha * alpha
        if not s:
            continue
        beta = sqrt_in_ext(s)
        if beta is None:
            continue
        if ctx.p != 2 and rng.integers(2):
            beta = -beta
        if not is_special_pair(ctx, alpha, beta):
            continue
        if not validate_line_on_surface(general_line(ctx, alpha, beta), cover.q + 1, ctx):
            raise ValidationFailed(f"line for ({alpha}, {beta}) is not on the surface")
        return alpha, beta
    raise NoPairFound(f"no special pair after {attempts} attempts")


# ---------------------------------------------------------------------------
# pullback and pushforward


def pullback_coefficients(ctx: FieldCtx, r: int) -> np.ndarray:
    """Row t lists the r solutions c (as codes) of c^r = w * gamma^t."""
    m = ctx.m
    w = omega(ctx, m)
    rows = []
    for t in range(m):
        sols = solve_power_equation(w * ctx.gamma ** t, r)
        if len(sols) != r:
            raise RootExtractionFailed(f"w*gamma^{t} has {len(sols)} r-th roots, expected {r}")
        rows.append(sorted(s.code for s in sols))
    return np.array(rows, dtype=np.int64)


def pullback_standard_line(line: StandardLine, cover: CoverParams, ctx: FieldCtx) -> list[ProjLine]:
    """The r^2 lines upstairs that the r-th power map sends onto `line`."""
    roots = pullback_coefficients(ctx, cover.r)
    out = []
    for c in roots[line.k]:
        for d in roots[line.l]:
            P, Q = _family_points(ctx, line.j, c, d)
            out.append(ProjLine(ctx, P.tolist(), Q.tolist(), on_surface=True))
    return out


def pushdown_self_intersection(cover: CoverParams) -> int:
    """D^2 = 4r - 2 - r m for the image of a line under the r-th power map."""
    return 4 * cover.r - 2 - cover.r * cover.m


def lift_exponents(sigma, m: int, shift=(0, 0, 0)) -> tuple[int, int, int]:
    """The lift of sigma in (Z/m)^3 to (Z/rm)^3 with exponents sigma + m*shift."""
    return tuple(int(s) % m + m * int(t) for s, t in zip(sigma, shift))


@dataclass
class OrbitDivisor:
    """sigma(D) where D is the pushdown of l(alpha, beta)."""
    alpha: FieldElem
    beta: FieldElem
    sigma: tuple[int, int, int]
    cover: CoverParams


class SpecialDivisor:
    """The pushdown D of one special line, with cached pairing tables.

    `standard_pairings` is the vector b . D over all 3m^2 standard lines b;
    the pairing of b with sigma(D) is then sigma^-1(b) . D.  `orbit_pairings`
    tabulates D . tau(D) over tau in (Z/m)^3, so that
    sigma(D) . tau(D) = D . (sigma^-1 tau)(D).
    """

    def __init__(self, ctx: FieldCtx, cover: CoverParams, alpha, beta, line: ProjLine | None = None):
        self.ctx = ctx
        self.cover = cover
        self.m = cover.m
        self.r = cover.r
        self.alpha = ctx.coerce(alpha)
        self.beta = ctx.coerce(beta)
        self.line = line if line is not None else general_line(ctx, self.alpha, self.beta)
        self.ghat = ctx.lifted_root(self.r)
        self._v = None
        self._f = None
        self.self_intersection_projection = None

    @property
    def mhat(self) -> int:
        return self.cover.mhat

    def lifted_line(self, sigma, shift=(0, 0, 0)) -> ProjLine:
        e = lift_exponents(sigma, self.m, shift)
        return group_act(e, self.line, self.ctx, order=self.mhat)

    def _scaled_pluecker(self, E: np.ndarray) -> np.ndarray:
        """Pluecker vectors of (ghat^e0, ghat^e1, ghat^e2, 1) l for exponent rows E."""
        ctx = self.ctx
        base = self.line.pluecker()
        lg = ctx.log(self.ghat.code)
        E = np.asarray(E, dtype=np.int64)
        E4 = np.concatenate([E, np.zeros(E.shape[:-1] + (1,), dtype=np.int64)], axis=-1)
        cols = []
        for idx, (i, j) in enumerate(PLUECKER_PAIRS):
            scale = ctx.vexp((E4[..., i] + E4[..., j]) * lg)
            cols.append(ctx.vmul(np.full(scale.shape, base[idx]), scale))
        return np.stack(cols, axis=-1)

    def standard_pairings(self, chunk: int = 1 << 18) -> np.ndarray:
        """b . D for all 3m^2 standard lines b, via the r^2 pullback lines of b."""
        if self._v is not None:
            return self._v
        ctx, m, r = self.ctx, self.m, self.r
        roots = pullback_coefficients(ctx, r)
        J, K, L = all_lines(m)
        target = self.line.pluecker()
        tnorm = normalize_pluecker(ctx, target)
        # enumerate (line, s, t) triples in chunks
        total = np.zeros(3 * m * m, dtype=np.int64)
        n_lines = 3 * m * m
        per = r * r
        s_idx, t_idx = np.meshgrid(np.arange(r), np.arange(r), indexing="ij")
        s_idx, t_idx = s_idx.ravel(), t_idx.ravel()
        step = max(1, chunk // per)
        for start in range(0, n_lines, step):
            sl = slice(start, min(n_lines, start + step))
            Jc, Kc, Lc = J[sl], K[sl], L[sl]
            C = roots[Kc][:, s_idx]
            D = roots[Lc][:, t_idx]
            Jb = np.broadcast_to(Jc[:, None], C.shape)
            P, Q = _family_points(ctx, Jb, C, D)
            U = pluecker(ctx, P, Q)
            if (normalize_pluecker(ctx, U) == tnorm).all(axis=-1).any():
                raise CoincidentLine("a pulled-back standard line equals the special line")
            meet = pluecker_pairing(ctx, U, target) == 0
            total[sl] = meet.sum(axis=1)
        self._v = total
        return total

    def orbit_pairings(self) -> np.ndarray:
        """D . tau(D) for tau in (Z/m)^3, flattened as tau0*m^2 + tau1*m + tau2."""
        if self._f is not None:
            return self._f
        ctx, m, r = self.ctx, self.m, self.r
        mh = self.mhat
        g = np.arange(mh)
        E = np.stack(np.meshgrid(g, g, g, indexing="ij"), axis=-1).reshape(-1, 3)
        V = self._scaled_pluecker(E)
        U = self.line.pluecker()
        meet = (pluecker_pairing(ctx, np.broadcast_to(U, V.shape), V) == 0).astype(np.int64)
        eq = (normalize_pluecker(ctx, V) == normalize_pluecker(ctx, U)).all(axis=-1)
        meet = meet.reshape(mh, mh, mh)
        eq = eq.reshape(mh, mh, mh)
        # fold the r^3 lifts of each tau together
        f = meet.reshape(r, m, r, m, r, m).sum(axis=(0, 2, 4))
        coincide = eq.reshape(r, m, r, m, r, m).any(axis=(0, 2, 4))
        d2 = pushdown_self_intersection(self.cover)
        # projection-formula value of D^2, valid when phi is birational on the line
        stab = int(eq.reshape(r, m, r, m, r, m)[:, 0, :, 0, :, 0].sum())
        # identity term counted as a meeting; replace it by the self-intersection
        self.self_intersection_projection = (2 - mh) + int(f[0, 0, 0]) - 1
        self.stabilizer_order = stab
        f = np.where(coincide, d2, f)
        self._f = f.reshape(-1)
        return self._f

    def basis_pairing(self, b: StandardLine, sigma) -> int:
        v = self.standard_pairings()
        inv = tuple(-int(s) for s in sigma)
        J, K, L = act_on_standard(inv, b.j, b.k, b.l, self.m)
        return int(v[line_index(int(J), int(K), int(L), self.m)])

    def columns(self, sigmas: np.ndarray, J, K, L) -> np.ndarray:
        """Matrix (len(J) x len(sigmas)) of b . sigma(D)."""
        v = self.standard_pairings()
        m = self.m
        sig = np.asarray(sigmas, dtype=np.int64).reshape(-1, 3)
        a, b, c = (-sig[:, 0])[None, :], (-sig[:, 1])[None, :], (-sig[:, 2])[None, :]
        Jc, Kc, Lc = J[:, None], K[:, None], L[:, None]
        K2 = np.where(Jc == 1, Kc + b - a, np.where(Jc == 2, Kc + c - a, Kc - a)) % m
        L2 = np.where(Jc == 1, Lc - c, np.where(Jc == 2, Lc - b, Lc + c - b)) % m
        return v[line_index(np.broadcast_to(Jc, K2.shape), K2, L2, m)]

    def orbit_gram(self, sigmas: np.ndarray) -> np.ndarray:
        f = self.orbit_pairings()
        m = self.m
        sig = np.asarray(sigmas, dtype=np.int64).reshape(-1, 3)
        d = (sig[None, :, :] - sig[:, None, :]) % m
        return f[d[..., 0] * m * m + d[..., 1] * m + d[..., 2]]


def basis_orbit_pairing(b: StandardLine, D: OrbitDivisor, ctx: FieldCtx, shift=(0, 0, 0)) -> int:
    """b . sigma(D), summed over the pullback of b against a lift of sigma(l)."""
    target = group_act(lift_exponents(D.sigma, D.cover.m, shift),
                       general_line(ctx, D.alpha, D.beta), ctx, order=D.cover.mhat)
    total = 0
    for L in pullback_standard_line(b, D.cover, ctx):
        if L == target:
            raise CoincidentLine(f"pullback of {b!r} contains the orbit line")
        total += line_incidence(L, target, D.cover.mhat)
    return total


def pushdown_gram(D: OrbitDivisor, E: OrbitDivisor, ctx: FieldCtx) -> int:
    """sigma(D) . tau(E) via the projection formula over the deck group (mu_r)^3."""
    cover = D.cover
    if E.cover != cover:
        raise ValueError("divisors from different covers")
    m, r = cover.m, cover.r
    LD = group_act(lift_exponents(D.sigma, m), general_line(ctx, D.alpha, D.beta), ctx, order=cover.mhat)
    base_E = general_line(ctx, E.alpha, E.beta)
    total = 0
    for t0 in range(r):
        for t1 in range(r):
            for t2 in range(r):
                LE = group_act(lift_exponents(E.sigma, m, (t0, t1, t2)), base_E, ctx, order=cover.mhat)
                if LE == LD:
                    return pushdown_self_intersection(cover)
                total += line_incidence(LD, LE, cover.mhat)
    return total
