"""Arithmetic of the cubic gap polynomial F(m) = 3m^2 + 3m + 1.

F(m) = (m+1)^3 - m^3 is the order parameter of the 3-fold cyclic
branched cover of a twisted double: the cover's first homology is
Z_a (+) Z_a with a = F(m).  Which primes can occur, and with which
exponent, controls every later stage of the obstruction pipeline:

* only primes p = 1 mod 3 ever divide F(m) (the discriminant of F is
  -3, a square mod p exactly when p = 1 mod 3);
* every such prime has a witness m where its exponent in F(m) is
  exactly one, which is the hypothesis the character-theoretic
  obstruction needs;
* distinct knots in an independent family must use primes that do not
  divide each other's F values.

Everything here is exact integer arithmetic on top of the standard
library; primality is deterministic Miller-Rabin, modular square roots
are Tonelli-Shanks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass


class PreconditionError(ValueError):
    """An operation was invoked outside its documented domain."""


class SearchBoundError(PreconditionError):
    """A bounded search ran out of room before finding what was asked."""


def F(m: int) -> int:
    """The cubic gap (m+1)^3 - m^3 = 3m^2 + 3m + 1.

    >>> F(1), F(2), F(5)
    (7, 19, 91)
    >>> F(-2) == F(1)
    True
    """
    return 3 * m * m + 3 * m + 1


def F_prime(m: int) -> int:
    """Derivative of F: F'(m) = 6m + 3.

    The identity 4*F(m) - (2m+1)*F_prime(m) = 1 shows F and F' are
    coprime at every integer, so F has no repeated prime factors coming
    from a shared root with its derivative.

    >>> 4 * F(3) - 7 * F_prime(3)
    1
    """
    return 6 * m + 3


def exponent_of(p: int, n: int) -> int:
    """Largest e with p**e dividing n.  Rejects n = 0 (infinite exponent).

    >>> exponent_of(7, 49), exponent_of(7, F(1))
    (2, 1)
    """
    if n == 0:
        raise PreconditionError("exponent_of is undefined at n = 0")
    if p < 2:
        raise PreconditionError(f"p = {p} is not a valid prime base")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond 64-bit inputs.

    >>> [k for k in range(2, 20) if is_prime(k)]
    [2, 3, 5, 7, 11, 13, 17, 19]
    """
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
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime_power(n: int) -> bool:
    """True when n = p**k for a single prime p and k >= 1.

    >>> [k for k in range(2, 20) if is_prime_power(k)]
    [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19]
    """
    if n < 2:
        return False
    p = smallest_prime_factor(n)
    while n % p == 0:
        n //= p
    return n == 1


def smallest_prime_factor(n: int) -> int:
    """Least prime dividing n >= 2, by trial division."""
    if n < 2:
        raise PreconditionError(f"{n} has no prime factors")
    if n % 2 == 0:
        return 2
    if n % 3 == 0:
        return 3
    f = 5
    while f * f <= n:
        if n % f == 0:
            return f
        if n % (f + 2) == 0:
            return f + 2
        f += 6
    return n


def primes_up_to(n: int) -> list[int]:
    """All primes <= n by a byte sieve."""
    if n < 2:
        return []
    mark = bytearray([1]) * (n + 1)
    mark[0] = mark[1] = 0
    for i in range(2, int(n**0.5) + 1):
        if mark[i]:
            mark[i * i :: i] = bytearray(len(mark[i * i :: i]))
    return [i for i in range(n + 1) if mark[i]]


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as {prime: exponent}, by trial division.

    >>> factorize(91)
    {7: 1, 13: 1}
    """
    if n < 1:
        raise PreconditionError("factorize expects a positive integer")
    out: dict[int, int] = {}
    while n > 1:
        p = smallest_prime_factor(n)
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out[p] = e
    return out


def legendre_symbol(a: int, p: int) -> int:
    """Legendre symbol (a/p) via Euler's criterion; p an odd prime.

    >>> legendre_symbol(-3, 7), legendre_symbol(-3, 5)
    (1, -1)
    """
    if p == 2 or not is_prime(p):
        raise PreconditionError(f"p = {p} must be an odd prime")
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def sqrt_mod(a: int, p: int, seed: int | None = None) -> int | None:
    """A square root of a mod p (odd prime), or None for a non-residue.

    Tonelli-Shanks.  The non-residue needed to seed the algorithm is
    found by deterministic scan; pass ``seed`` to sample candidates at
    random instead (useful only to exercise the probabilistic variant,
    the result is a root either way).  Returns the smaller of the two
    roots.

    >>> sqrt_mod(4, 7), sqrt_mod(-3, 7), sqrt_mod(3, 7)
    (2, 2, None)
    """
    if p == 2 or not is_prime(p):
        raise PreconditionError(f"p = {p} must be an odd prime")
    a %= p
    if a == 0:
        return 0
    if legendre_symbol(a, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return min(r, p - r)
    # write p - 1 = q * 2^s with q odd
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    if seed is None:
        z = 2
        while legendre_symbol(z, p) != -1:
            z += 1
    else:
        rng = random.Random(seed)
        z = rng.randrange(2, p)
        while legendre_symbol(z, p) != -1:
            z = rng.randrange(2, p)
    c = pow(z, q, p)
    r = pow(a, (q + 1) // 2, p)
    t = pow(a, q, p)
    m = s
    while t != 1:
        # order of t is 2^i for some 0 < i < m
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        r = r * b % p
        c = b * b % p
        t = t * c % p
        m = i
    return min(r, p - r)


def solve_F_mod_p(p: int, seed: int | None = None) -> tuple[int, ...]:
    """Roots of F(m) = 3m^2 + 3m + 1 modulo p, sorted; empty iff p = 2 mod 3.

    The quadratic formula needs sqrt(-3) mod p, which exists exactly
    when p = 1 mod 3 (quadratic reciprocity: (-3/p) = (p/3)); then the
    two roots are (-3 +- sqrt(-3)) / 6.

    >>> solve_F_mod_p(7)
    (1, 5)
    >>> solve_F_mod_p(5)
    ()
    """
    if p in (2, 3) or not is_prime(p):
        raise PreconditionError(
            f"p = {p} must be a prime other than 2 and 3 "
            "(F is odd and F = 1 mod 3, so neither ever divides it)"
        )
    s = sqrt_mod(-3 % p, p, seed)
    if s is None:
        return ()
    inv6 = pow(6, -1, p)
    roots = {(-3 + s) * inv6 % p, (-3 - s) * inv6 % p}
    return tuple(sorted(roots))


@dataclass(frozen=True)
class PrimeWitness:
    """A prime p together with a witness m where p | F(m) with known exponent."""

    p: int
    m: int
    exponent: int

    def __post_init__(self) -> None:
        if not is_prime(self.p) or self.p == 3:
            raise PreconditionError(f"p = {self.p} must be a prime other than 3")
        if self.p % 3 != 1:
            raise PreconditionError(
                f"p = {self.p} is = {self.p % 3} mod 3: only primes = 1 mod 3 divide F"
            )
        if exponent_of(self.p, F(self.m)) != self.exponent:
            raise PreconditionError(
                f"p = {self.p} divides F({self.m}) with exponent "
                f"{exponent_of(self.p, F(self.m))}, not {self.exponent}"
            )


def select_independent_family(
    count: int, search_bound: int | None = None
) -> list[PrimeWitness]:
    """Greedily pick ``count`` pairs (m_i, p_i) with pairwise-independent primes.

    Walks m = 1, 2, 3, ... and keeps the largest exponent-one prime
    factor of F(m), subject to the independence requirements: no chosen
    prime may divide any other chosen witness's F value (in either
    direction).  The result is what the linking-form argument needs to
    conclude that no nontrivial combination of the witnesses' knots can
    be slice.

    >>> [(w.m, w.p) for w in select_independent_family(2)]
    [(1, 7), (2, 19)]
    """
    if count < 1:
        raise PreconditionError("count must be at least 1")
    bound = search_bound if search_bound is not None else max(8 * count, 40)
    chosen: list[PrimeWitness] = []
    used: set[int] = set()
    for m in range(1, bound + 1):
        fm = F(m)
        fac = factorize(fm)
        if any(p in used for p in fac):
            continue  # an already-chosen prime divides this F value
        candidates = [
            p
            for p, e in fac.items()
            if e == 1 and all(F(w.m) % p != 0 for w in chosen)
        ]
        if not candidates:
            continue
        p = max(candidates)
        chosen.append(PrimeWitness(p=p, m=m, exponent=1))
        used.add(p)
        if len(chosen) == count:
            return chosen
    raise SearchBoundError(
        f"bound exhausted: found {len(chosen)} of {count} independent "
        f"witnesses with m <= {bound}; raise search_bound"
    )
