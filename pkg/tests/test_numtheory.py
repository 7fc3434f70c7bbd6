import pytest
from sympy import factorint, isprime, totient as sym_totient

from fermatlines.numtheory import (cyclotomic_coefficients, divisors, factorize, format_factorization,
                                   integer_root, is_prime, mobius, multiplicative_order,
                                   perfect_power, prime_factors, prime_power, primes_descending,
                                   totient)


def test_primality_agrees_with_sympy_below_5000():
    for n in range(5000):
        assert is_prime(n) == isprime(n)


@pytest.mark.parametrize("q,expected", [(4, (2, 2)), (13, (13, 1)), (32, (2, 5)), (81, (3, 4)),
                                        (1423, (1423, 1)), (729, (3, 6)), (12, None), (1, None)])
def test_prime_power(q, expected):
    assert prime_power(q) == expected


def test_integer_root_and_perfect_power():
    assert integer_root(10 ** 30 + 5, 3) == 10 ** 10
    assert perfect_power(3 ** 12) == (3, 12)
    assert perfect_power(10) == (10, 1)


def test_factorize_matches_sympy():
    for n in [2 ** 16, 7 ** 48, 13 ** 40 * 2 ** 3, 600851475143, 2 ** 38 * 7 ** 2 * 13 ** 48]:
        fac, rest = factorize(n)
        assert rest == 1 and fac == factorint(n)


def test_format_factorization_with_cofactor():
    assert format_factorization({2: 3, 5: 1}) == "2^3 * 5"
    assert format_factorization({2: 1}, 1000000007 * 1000000009, -1).startswith("-2 * Indeterminate(")


def test_multiplicative_order_and_totient():
    assert multiplicative_order(2, 7) == 3
    assert multiplicative_order(13, 7) == 2
    for n in range(1, 200):
        assert totient(n) == sym_totient(n)


def test_mobius_and_divisors():
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert prime_factors(35) == [5, 7]


def test_cyclotomic_coefficients():
    assert cyclotomic_coefficients(5) == [1, 1, 1, 1, 1]
    assert cyclotomic_coefficients(4) == [1, 0, 1]
    assert cyclotomic_coefficients(6) == [1, -1, 1]
    assert len(cyclotomic_coefficients(35)) == totient(35) + 1


def test_primes_descending():
    gen = primes_descending(100)
    assert [next(gen) for _ in range(4)] == [97, 89, 83, 79]
