"""Exact residue arithmetic kernels.

All functions work on plain Python integers, so every product is exact at
any size; the documented guarantee is exactness for moduli below 2**31,
which is also what the vectorized transform paths are audited for.
Results are always canonical residues in [0, m).
"""

from dataclasses import dataclass
from functools import reduce
from math import gcd, lcm

from .errors import BadInput, ModuliNotCoprime, ModulusTooSmall, NotInvertible

# Below this modulus a linear scan over successive powers is cheap and easy
# to debug; above it the order is found by peeling prime factors off the
# Carmichael bound.
ORDER_SCAN_LIMIT = 2**20


@dataclass(frozen=True)
class ExtGcdResult:
    """gcd with Bezout coefficients: a*x + b*y == g."""

    g: int
    x: int
    y: int


def mod_reduce(a: int, m: int) -> int:
    """Canonical residue of a modulo m, nonnegative for any signed a."""
    if m < 2:
        raise ModulusTooSmall(f"modulus must be >= 2, got {m}")
    return a % m


def ext_gcd(a: int, b: int) -> ExtGcdResult:
    """Extended Euclidean algorithm.

    Returns (g, x, y) with a*x + b*y == g == gcd(a, b). Inputs must not
    both be zero.
    """
    if a == 0 and b == 0:
        raise BadInput("ext_gcd(0, 0) is undefined")
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return ExtGcdResult(old_r, old_s, old_t)


def mod_inverse(b: int, m: int) -> int:
    """Inverse of b modulo m, i.e. the residue i with b*i == 1 (mod m)."""
    if m < 2:
        raise ModulusTooSmall(f"modulus must be >= 2, got {m}")
    b = b % m
    res = ext_gcd(b, m)
    if res.g != 1:
        raise NotInvertible(f"{b} is not invertible mod {m} (gcd = {res.g})")
    return res.x % m


def mod_pow(base: int, exp: int, m: int) -> int:
    """base**exp mod m in O(log exp) multiplications."""
    if m < 2:
        raise ModulusTooSmall(f"modulus must be >= 2, got {m}")
    if exp < 0:
        raise BadInput("negative exponent; invert the base explicitly")
    return pow(base, exp, m)


def factorize(n: int) -> dict[int, int]:
    """Prime factorization {p: exponent} by trial division up to sqrt(n)."""
    if n < 1:
        raise BadInput(f"cannot factorize {n}")
    factors: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    d = 5
    while d * d <= n:
        for p in (d, d + 2):
            while n % p == 0:
                factors[p] = factors.get(p, 0) + 1
                n //= p
        d += 6
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (intended for n < 2**31)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    d = 5
    while d * d <= n:
        if n % d == 0 or n % (d + 2) == 0:
            return False
        d += 6
    return True


def totient(m: int) -> int:
    """Euler's totient: count of integers in [1, m] coprime to m."""
    if m < 1:
        raise BadInput(f"totient undefined for {m}")
    result = m
    for p in factorize(m):
        result -= result // p
    return result


def carmichael_lambda(m: int) -> int:
    """Carmichael function: exponent of the multiplicative group mod m.

    Prime-power rule: odd p**k -> totient(p**k); 2 and 4 -> totient;
    2**k for k >= 3 -> totient(2**k) // 2.  Combined by lcm.
    """
    if m < 1:
        raise BadInput(f"carmichael_lambda undefined for {m}")
    if m == 1:
        return 1
    parts = []
    for p, k in factorize(m).items():
        pk = p**k
        if p == 2 and k >= 3:
            parts.append(totient(pk) // 2)
        else:
            parts.append(totient(pk))
    return reduce(lcm, parts)


def multiplicative_order(a: int, m: int) -> int:
    """Smallest v >= 1 with a**v == 1 (mod m).

    Uses a linear scan below ORDER_SCAN_LIMIT and a Carmichael-divisor
    search above it (factor lambda(m), then peel primes while the power
    stays 1).
    """
    if m < 2:
        raise ModulusTooSmall(f"modulus must be >= 2, got {m}")
    a = a % m
    if gcd(a, m) != 1:
        raise NotInvertible(f"order undefined: gcd({a}, {m}) != 1")
    if m < ORDER_SCAN_LIMIT:
        v = 1
        x = a
        while x != 1:
            x = x * a % m
            v += 1
        return v
    order = carmichael_lambda(m)
    for p in factorize(order):
        while order % p == 0 and pow(a, order // p, m) == 1:
            order //= p
    return order


def crt_combine(residues: list[tuple[int, int]]) -> int:
    """Unique x in [0, prod(m_i)) with x == r_i (mod m_i) for all i.

    ``residues`` is a non-empty list of (r, m) pairs with pairwise
    coprime moduli.
    """
    if not residues:
        raise BadInput("crt_combine needs at least one (residue, modulus) pair")
    x, m = 0, 1
    for r, mi in residues:
        if mi < 2:
            raise ModulusTooSmall(f"modulus must be >= 2, got {mi}")
        g = gcd(m, mi)
        if g != 1:
            raise ModuliNotCoprime(f"moduli share factor {g}")
        r = r % mi
        # lift: x + m*t == r (mod mi)  =>  t == (r - x) * m^-1 (mod mi)
        t = (r - x) * mod_inverse(m, mi) % mi
        x += m * t
        m *= mi
    return x


def next_power_of_two(n: int) -> int:
    """Smallest power of two >= n (and >= 1)."""
    if n <= 1:
        return 1
    return 1 << (n - 1).bit_length()


def is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0
