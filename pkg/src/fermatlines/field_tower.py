"""Arithmetic in F_p ⊂ F_q ⊂ F_{q^2} = F_p[x]/(f) with a distinguished root of unity.

Elements are stored as packed coefficient codes ``sum(c_i * p**i)``; the
coefficient vector of degree < deg f is available as ``FieldElem.coeffs``.
Multiplication and addition go through exponential/logarithm tables built
once per context (q^2 stays below ~2.1e6 for every degree this package
targets), so all arithmetic is exact integer table lookup.
"""
from __future__ import annotations

from array import array
from math import gcd, isqrt
from typing import Sequence

import numpy as np

from .errors import (BadCharacteristic, MissingRootOfUnity, NotIrreducible,
                     NotSupersingularPair, RootOrderMismatch, ZeroElement)
from .numtheory import (cyclotomic_coefficients, is_prime, multiplicative_order,
                        prime_factors)

# ---------------------------------------------------------------------------
# dense polynomials over F_p, constant term first


def _trim(a: list[int]) -> list[int]:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    a = [c % p for c in a]
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j in range(df + 1):
                a[i - df + j] = (a[i - df + j] - c * f[j]) % p
    return _trim(a[:df] if len(a) > df else a) or [0]


def poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def poly_mulmod(a, b, f, p) -> list[int]:
    return poly_mod(poly_mul(a, b, p), f, p)


def poly_powmod(a, e: int, f, p) -> list[int]:
    result = [1]
    base = poly_mod(a, f, p)
    while e:
        if e & 1:
            result = poly_mulmod(result, base, f, p)
        base = poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def poly_divmod(a, b, p) -> tuple[list[int], list[int]]:
    a = [c % p for c in a]
    b = _trim([c % p for c in b])
    db = len(b) - 1
    if len(a) - 1 < db:
        return [0], _trim(a)
    inv_lead = pow(b[-1], -1, p)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return _trim(q), _trim(a[:db]) if db else [0]


def poly_gcd(a, b, p) -> list[int]:
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while any(b):
        _, r = poly_divmod(a, b, p)
        a, b = b, r
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def poly_sub(a, b, p) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """gcd(f, x^{p^k} - x) = 1 for 0 < k < deg f and x^{p^deg f} = x mod f."""
    f = _trim([c % p for c in f])
    d = len(f) - 1
    if d < 1:
        return False
    x = [0, 1]
    xpk = poly_mod(x, f, p)
    for k in range(1, d + 1):
        xpk = poly_powmod(xpk, p, f, p)
        diff = poly_sub(xpk, x, p)
        if k < d:
            if len(poly_gcd(f, diff, p)) > 1:
                return False
        elif any(diff):
            return False
    return True


# ---------------------------------------------------------------------------


class FieldElem:
    """An element of F_{q^2}; immutable, hashable."""

    __slots__ = ("ctx", "code")

    def __init__(self, ctx: "FieldCtx", code: int):
        self.ctx = ctx
        self.code = code

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.ctx.code_to_coeffs(self.code)

    def __add__(self, other):
        other = self.ctx.coerce(other)
        return FieldElem(self.ctx, self.ctx.add(self.code, other.code))

    __radd__ = __add__

    def __sub__(self, other):
        other = self.ctx.coerce(other)
        return FieldElem(self.ctx, self.ctx.sub(self.code, other.code))

    def __rsub__(self, other):
        return self.ctx.coerce(other) - self

    def __mul__(self, other):
        other = self.ctx.coerce(other)
        return FieldElem(self.ctx, self.ctx.mul(self.code, other.code))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self.ctx.coerce(other)
        return FieldElem(self.ctx, self.ctx.mul(self.code, self.ctx.inv(other.code)))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.code))

    def __pow__(self, e: int):
        return FieldElem(self.ctx, self.ctx.pow(self.code, e))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.ctx is other.ctx and self.code == other.code
        if isinstance(other, int):
            return self.code == self.ctx.coerce(other).code
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ctx), self.code))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("g" if i == 1 else f"g^{i}")
                terms.append(f"{c}{'*' if mono and c != 1 else ''}{mono}" if c != 1 or not mono else mono)
        return " + ".join(reversed(terms)) if terms else "0"


class FieldCtx:
    """The tower F_p ⊂ F_q ⊂ F_{q^2} for q = p^n, with gamma of order m.

    Built by :func:`build_field_ctx`; immutable afterwards.
    """

    def __init__(self, p: int, f: Sequence[int], m: int | None, source: str = "table"):
        self.p = p
        self.f = tuple(c % p for c in f)
        self.degree = len(self.f) - 1
        self.n = self.degree // 2
        self.q = p ** self.n
        self.size = p ** self.degree
        self.N = self.size - 1  # order of the multiplicative group
        self.m = m
        self.source = source
        self._build_tables()
        self.zero = FieldElem(self, 0)
        self.one = FieldElem(self, 1)
        self.gamma = FieldElem(self, p) if self.degree > 1 else None
        self._minus_one = self.neg(1)

    # -- construction ------------------------------------------------------

    def _find_primitive(self) -> list[int]:
        N, p, f = self.N, self.p, list(self.f)
        primes = prime_factors(N) if N > 1 else []
        for code in range(p if self.degree > 1 else 2, self.size):
            cand = self.code_to_coeffs(code)
            if all(poly_powmod(cand, N // s, f, p) != [1] for s in primes):
                return list(cand)
        raise AssertionError("no primitive element found")

    def _build_tables(self) -> None:
        p, d, N = self.p, self.degree, self.N
        f = list(self.f)
        g = self._find_primitive()
        self._generator_coeffs = tuple(g)
        # multiplication-by-g matrix over F_p (columns: g * x^i mod f)
        T = np.zeros((d, d), dtype=np.int64)
        for i in range(d):
            col = poly_mulmod(g, [0] * i + [1], f, p)
            T[: len(col), i] = col
        # baby steps by doubling, giant steps by T^B
        B = max(1, isqrt(N) + 1)
        V = np.zeros((d, 1), dtype=np.int64)
        V[0, 0] = 1
        Tk = T.copy()
        while V.shape[1] < B:
            V = np.hstack([V, Tk @ V % p])
            Tk = Tk @ Tk % p
        V = V[:, :B]
        G = np.eye(d, dtype=np.int64)
        for _ in range(B):
            G = G @ T % p
        blocks = [V]
        for _ in range((N + B - 1) // B - 1):
            blocks.append(G @ blocks[-1] % p)
        powers = np.hstack(blocks)[:, :N]
        weights = p ** np.arange(d, dtype=np.int64)
        exp_codes = weights @ powers
        log = np.full(self.size, -1, dtype=np.int64)
        log[exp_codes] = np.arange(N, dtype=np.int64)
        assert (log[1:] >= 0).all(), "generator is not primitive"
        d0 = exp_codes % p
        plus_one = exp_codes - d0 + (d0 + 1) % p
        zech = log[plus_one]
        self._exp = array("q", exp_codes.tobytes())
        self._log = array("q", log.tobytes())
        self._zech = array("q", zech.tobytes())
        self._exp_np = exp_codes
        self._log_np = log
        self._zech_np = zech

    # -- code level arithmetic ---------------------------------------------

    def code_to_coeffs(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.degree):
            code, c = divmod(code, self.p)
            out.append(c)
        return tuple(out)

    def coeffs_to_code(self, coeffs: Sequence[int]) -> int:
        coeffs = poly_mod(list(coeffs) or [0], list(self.f), self.p) if len(coeffs) > self.degree \
            else [c % self.p for c in coeffs]
        code = 0
        for c in reversed(coeffs):
            code = code * self.p + c
        return code

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % self.N]

    def add(self, a: int, b: int) -> int:
        if not a:
            return b
        if not b:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % self.N]
        return 0 if z < 0 else self._exp[(la + z) % self.N]

    def neg(self, a: int) -> int:
        if not a or self.p == 2:
            return a
        return self._exp[(self._log[a] + self.N // 2) % self.N]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def inv(self, a: int) -> int:
        if not a:
            raise ZeroElement("inverse of zero")
        return self._exp[(-self._log[a]) % self.N]

    def pow(self, a: int, e: int) -> int:
        if not a:
            if e < 0:
                raise ZeroElement("negative power of zero")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % self.N]

    def log(self, a: int) -> int:
        if not a:
            raise ZeroElement("logarithm of zero")
        return self._log[a]

    def exp(self, k: int) -> int:
        return self._exp[k % self.N]

    # -- vectorised arithmetic on arrays of codes ---------------------------

    def vmul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self._exp_np[(self._log_np[a] + self._log_np[b]) % self.N]
        return np.where((a == 0) | (b == 0), 0, out)

    def vadd(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la = self._log_np[a]
        z = self._zech_np[(self._log_np[b] - la) % self.N]
        out = np.where(z < 0, 0, self._exp_np[(la + z) % self.N])
        out = np.where(b == 0, a, out)
        return np.where(a == 0, b, out)

    def vneg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a.copy()
        out = self._exp_np[(self._log_np[a] + self.N // 2) % self.N]
        return np.where(a == 0, 0, out)

    def vsub(self, a, b) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vinv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if (a == 0).any():
            raise ZeroElement("inverse of zero")
        return self._exp_np[(-self._log_np[a]) % self.N]

    def vexp(self, k) -> np.ndarray:
        return self._exp_np[np.asarray(k, dtype=np.int64) % self.N]

    # -- element level -----------------------------------------------------

    def __call__(self, value) -> FieldElem:
        return self.coerce(value)

    def coerce(self, value) -> FieldElem:
        if isinstance(value, FieldElem):
            if value.ctx is not self:
                raise ValueError("element belongs to a different field context")
            return value
        if isinstance(value, (int, np.integer)):
            return FieldElem(self, int(value) % self.p)
        return FieldElem(self, self.coeffs_to_code(list(value)))

    def elem(self, coeffs: Sequence[int]) -> FieldElem:
        return FieldElem(self, self.coeffs_to_code(list(coeffs)))

    def generator(self) -> FieldElem:
        return FieldElem(self, self._exp[1])

    def elements_of_order(self, d: int) -> list[FieldElem]:
        if self.N % d:
            return []
        step = self.N // d
        return [FieldElem(self, self._exp[step * t]) for t in range(d) if gcd(t, d) == 1]

    def root_of_unity(self, order: int) -> FieldElem:
        """A deterministic element of exact multiplicative order `order`."""
        if self.N % order:
            raise MissingRootOfUnity(f"no element of order {order} in F_{self.size}")
        return FieldElem(self, self._exp[self.N // order])

    @property
    def omega(self) -> FieldElem:
        """The twist ω with ω^m = -1; -1 for odd m, a square root of gamma for even m."""
        if self.m % 2:
            return -self.one
        roots = solve_power_equation(self.gamma, 2)
        return min(roots, key=lambda e: e.code)

    def lifted_root(self, r: int) -> FieldElem:
        """A primitive (r*m)-th root whose r-th power is gamma."""
        if self.N % (r * self.m):
            raise MissingRootOfUnity(f"no root of unity of order {r * self.m} in F_{self.size}")
        if r == 1:
            return self.gamma
        for c in sorted(solve_power_equation(self.gamma, r), key=lambda e: e.code):
            if element_order(c) == r * self.m:
                return c
        raise MissingRootOfUnity(f"gamma has no primitive {r}-th root of order {r * self.m}")

    def in_base_field(self, a: FieldElem) -> bool:
        """Membership in F_q."""
        return frobenius_power(a) == a

    def base_field_elements(self) -> list[FieldElem]:
        """All of F_q^*, as powers of g^(q+1)."""
        step = self.q + 1
        return [FieldElem(self, self._exp[step * t]) for t in range(self.q - 1)]

    def __repr__(self):
        return f"FieldCtx(p={self.p}, n={self.n}, f={list(self.f)}, m={self.m})"


# ---------------------------------------------------------------------------
# public operations


def build_field_ctx(p: int, f: Sequence[int], m: int, source: str = "table") -> FieldCtx:
    """Validate (p, f, m) and build the field context with gamma = x mod f."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m % p == 0:
        raise BadCharacteristic(f"characteristic {p} divides the degree {m}")
    f = [c % p for c in f]
    if f[-1] != 1:
        raise ValueError("defining polynomial must be monic")
    if (len(f) - 1) % 2 or len(f) < 3:
        raise ValueError("defining polynomial must have even positive degree")
    if not is_irreducible(f, p):
        raise NotIrreducible(f"{f} is reducible over F_{p}")
    ctx = FieldCtx(p, f, m, source=source)
    if element_order(ctx.gamma) != m:
        raise RootOrderMismatch(f"a root of {f} has order {element_order(ctx.gamma)}, not {m}")
    return ctx


def find_defining_poly(p: int, m: int, seed: int = 0) -> list[int]:
    """A random monic irreducible factor of the m-th cyclotomic polynomial over F_p.

    Requires -1 in the subgroup generated by p mod m, so that the factors have
    degree 2n with p^n = -1 (mod m).
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m % p == 0:
        raise BadCharacteristic(f"characteristic {p} divides the degree {m}")
    if m <= 2:
        raise NotSupersingularPair(f"degree {m} has no quadratic factor structure")
    d = multiplicative_order(p % m, m)
    if d % 2 or pow(p, d // 2, m) != m - 1:
        raise NotSupersingularPair(f"-1 is not a power of {p} modulo {m}")
    rng = np.random.default_rng(seed)
    # any irreducible polynomial of degree d gives a model of F_{p^d}
    helper = None
    while helper is None:
        cand = [int(c) for c in rng.integers(0, p, size=d)] + [1]
        if is_irreducible(cand, p):
            helper = FieldCtx(p, cand, None, source="helper")
    units = [t for t in range(1, m) if gcd(t, m) == 1]
    t = units[int(rng.integers(0, len(units)))]
    root = FieldElem(helper, helper.exp((helper.N // m) * t))
    # minimal polynomial: product over the Frobenius orbit of the root
    poly = [helper.one]
    conj = root
    for _ in range(d):
        nxt = [helper.zero] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - c * conj
        poly = nxt
        conj = conj ** p
    out = []
    for c in poly:
        assert c.code < p, "minimal polynomial left the prime field"
        out.append(c.code)
    return out


def element_order(a: FieldElem) -> int:
    """Exact multiplicative order, by stripping prime factors of q^2 - 1."""
    if not a:
        raise ZeroElement("zero has no multiplicative order")
    ctx = a.ctx
    order = ctx.N
    for s in prime_factors(ctx.N) if ctx.N > 1 else []:
        while order % s == 0 and ctx.pow(a.code, order // s) == 1:
            order //= s
    return order


def frobenius_power(a: FieldElem) -> FieldElem:
    """a^q; fixes exactly F_q."""
    return a ** a.ctx.q


def sqrt_in_ext(a: FieldElem) -> FieldElem | None:
    """Some square root of a in F_{q^2}, or None."""
    ctx = a.ctx
    if not a:
        return ctx.zero
    e = ctx.log(a.code)
    if ctx.p == 2:
        return FieldElem(ctx, ctx.exp(e * ((ctx.N + 1) // 2)))
    if e % 2:
        return None
    return FieldElem(ctx, ctx.exp(e // 2))


def solve_power_equation(a: FieldElem, r: int) -> list[FieldElem]:
    """All c with c^r = a; empty or exactly gcd(r, q^2-1) solutions."""
    if not a:
        raise ZeroElement("power equation with zero right-hand side")
    ctx = a.ctx
    N = ctx.N
    e = ctx.log(a.code)
    d = gcd(r, N)
    if e % d:
        return []
    Nd = N // d
    x0 = (e // d) * pow(r // d, -1, Nd) % Nd if Nd > 1 else 0
    return [FieldElem(ctx, ctx.exp(x0 + k * Nd)) for k in range(d)]


def cyclotomic_mod_p(m: int, p: int) -> list[int]:
    return [c % p for c in cyclotomic_coefficients(m)]
