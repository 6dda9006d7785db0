"""Exact integer and rational tables: Bernoulli numbers, Stirling numbers,
the Moebius function, and the mixed-Stirling coefficients of powers of a
binomial series.

Everything here is exact (fractions.Fraction or int); floats only appear in
char_coeff where a real power alpha enters.
"""

from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import DomainError

BERNOULLI_MAX = 60
STIRLING_MAX = 40


@lru_cache(maxsize=None)
def bernoulli(N):
    """Bernoulli numbers B_0..B_N as a tuple of Fractions (B_1 = -1/2)."""
    if not (0 <= N <= BERNOULLI_MAX):
        raise DomainError(f"need 0 <= N <= {BERNOULLI_MAX}, got {N}")
    # sum_{j=0}^{n} C(n+1, j) B_j = 0 solved for B_n
    table = [Fraction(1)]
    for n in range(1, N + 1):
        acc = Fraction(0)
        for j in range(n):
            acc += comb(n + 1, j) * table[j]
        table.append(-acc / (n + 1))
    return tuple(table)


@lru_cache(maxsize=None)
def stirling(N):
    """Stirling number triangles up to row N.

    Returns (first, second): first[n][k] is the signed first kind (the
    coefficient of x^k in the falling factorial x(x-1)...(x-n+1)),
    second[n][k] counts partitions of n elements into k nonempty blocks.
    """
    if not (0 <= N <= STIRLING_MAX):
        raise DomainError(f"need 0 <= N <= {STIRLING_MAX}, got {N}")
    first = [[0] * (N + 1) for _ in range(N + 1)]
    second = [[0] * (N + 1) for _ in range(N + 1)]
    first[0][0] = second[0][0] = 1
    for n in range(1, N + 1):
        for k in range(1, n + 1):
            first[n][k] = first[n - 1][k - 1] - (n - 1) * first[n - 1][k]
            second[n][k] = second[n - 1][k - 1] + k * second[n - 1][k]
    return (tuple(tuple(row) for row in first),
            tuple(tuple(row) for row in second))


def mobius(n):
    """Moebius function by trial division: 0 on square factors,
    else (-1)^(number of prime factors)."""
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


def char_coeff(alpha, k, m):
    """Coefficient of z^m in ((1+z)^alpha - 1)^k.

    Computed through both Stirling triangles:
        (k!/m!) * sum_{j=k}^{m} first[m][j] * second[j][k] * alpha^j
    Returns 0.0 for k > m or k < 0.
    """
    if m < 0 or m > STIRLING_MAX:
        raise DomainError(f"need 0 <= m <= {STIRLING_MAX}, got {m}")
    if k < 0 or k > m:
        return 0.0
    if k == 0:
        return 1.0 if m == 0 else 0.0
    first, second = stirling(m)
    acc = 0.0
    for j in range(k, m + 1):
        acc += first[m][j] * second[j][k] * float(alpha) ** j
    # k!/m! as an exact ratio before the float multiply
    ratio = Fraction(1)
    for i in range(k + 1, m + 1):
        ratio /= i
    return acc * float(ratio)
