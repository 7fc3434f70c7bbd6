"""Small integer number theory: primality, prime powers, factoring by trial division."""
from __future__ import annotations

from math import gcd, isqrt

# Miller-Rabin with these bases is exact for n < 3.317e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3317044064679887385961981

TRIAL_DIVISION_CAP = 10**7


def _mr_witness(a: int, n: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x in (1, n - 1):
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def primality(n: int) -> bool | None:
    """True/False when decided; None for n beyond the deterministic range that
    passes every Miller-Rabin round (possible prime, not proven)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        if _mr_witness(a, n, d, s):
            return False
    return True if n < _MR_LIMIT else None


def is_prime(n: int) -> bool:
    res = primality(n)
    if res is None:
        raise ValueError(f"primality of {n} is not decidable deterministically")
    return res


def integer_root(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0."""
    if n < 2 or k == 1:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def perfect_power(n: int) -> tuple[int, int]:
    """Return (b, e) with n = b**e and e maximal."""
    if n < 4:
        return n, 1
    best = (n, 1)
    for k in range(2, n.bit_length() + 1):
        b = integer_root(n, k)
        if b < 2:
            break
        if b ** k == n:
            best = (b, k)
    return best


def prime_power(n: int) -> tuple[int, int] | None:
    """(p, e) if n = p**e with p prime, else None."""
    if n < 2:
        return None
    b, e = perfect_power(n)
    return (b, e) if is_prime(b) else None


def trial_factor(n: int, cap: int = TRIAL_DIVISION_CAP) -> tuple[dict[int, int], int]:
    """Strip prime factors up to `cap`; return (factors, cofactor)."""
    n = abs(n)
    fac: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            fac[p] = fac.get(p, 0) + 1
            n //= p
    # wheel mod 30
    steps = (4, 2, 4, 2, 4, 6, 2, 6)
    p, i = 7, 0
    while p <= cap and p * p <= n:
        while n % p == 0:
            fac[p] = fac.get(p, 0) + 1
            n //= p
        p += steps[i]
        i = (i + 1) % 8
    if 1 < n and n < p * p:
        # no factor below sqrt(n): n is prime
        fac[n] = fac.get(n, 0) + 1
        n = 1
    return fac, n


def factorize(n: int, cap: int = TRIAL_DIVISION_CAP) -> tuple[dict[int, int], int]:
    """Factor |n| as far as trial division plus primality/perfect-power tests allow.

    Returns (factors, remainder); remainder == 1 means the factorization is
    complete, otherwise it is a composite without prime factors below `cap`.
    """
    fac, rest = trial_factor(n, cap)
    if rest > 1:
        b, e = perfect_power(rest)
        if primality(b):
            fac[b] = fac.get(b, 0) + e
            rest = 1
    return dict(sorted(fac.items())), rest


def format_factorization(fac: dict[int, int], rest: int = 1, sign: int = 1) -> str:
    parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in sorted(fac.items())]
    if rest != 1:
        parts.append(f"Indeterminate({rest})")
    body = " * ".join(parts) if parts else "1"
    return ("-" if sign < 0 else "") + body


def prime_factors(n: int) -> list[int]:
    fac, rest = trial_factor(n, cap=isqrt(abs(n)) + 1)
    assert rest == 1
    return sorted(fac)


def multiplicative_order(a: int, m: int) -> int:
    if gcd(a, m) != 1:
        raise ValueError(f"{a} is not a unit mod {m}")
    if m == 1:
        return 1
    phi = totient(m)
    order = phi
    for p in prime_factors(phi):
        while order % p == 0 and pow(a, order // p, m) == 1:
            order //= p
    return order


def totient(n: int) -> int:
    result = n
    for p in prime_factors(n):
        result -= result // p
    return result


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def mobius(n: int) -> int:
    fac, _ = trial_factor(n, cap=isqrt(n) + 1)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def cyclotomic_coefficients(m: int) -> list[int]:
    """Integer coefficients of the m-th cyclotomic polynomial, constant term first."""
    num = [1]
    den = [1]
    for d in divisors(m):
        mu = mobius(m // d)
        factor = [-1] + [0] * (d - 1) + [1]  # x^d - 1
        if mu == 1:
            num = _zpoly_mul(num, factor)
        elif mu == -1:
            den = _zpoly_mul(den, factor)
    q, r = _zpoly_divmod(num, den)
    assert not any(r)
    return q


def _zpoly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _zpoly_divmod(a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    """Division by a monic integer polynomial."""
    a = list(a)
    assert b[-1] == 1
    db = len(b) - 1
    if len(a) - 1 < db:
        return [0], a
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    return q, a[:db] if db else [0]


def primes_descending(start: int):
    """Yield primes strictly below `start` in decreasing order."""
    n = start - 1
    if n % 2 == 0:
        n -= 1
    while n > 2:
        if is_prime(n):
            yield n
        n -= 2
