"""Exact arbitrary-precision number-theoretic primitives.

Everything here is pure and total on its stated domain; all arithmetic is
exact integer arithmetic (no floating point leaks into results).
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class NotInvertible(ValueError):
    """gcd(a, m) > 1: the requested modular inverse does not exist."""


class SelectionExhausted(RuntimeError):
    """No qualifying prime modulus was found within the candidate cap."""


def isqrt(n: int) -> int:
    """Integer square root: the unique s with s**2 <= n < (s+1)**2.

    Backed by math.isqrt (exact for arbitrary precision); kept as a named
    entry point so callers never reach for float sqrt by accident.
    """
    if n < 0:
        raise ValueError("isqrt of negative integer")
    return math.isqrt(n)


def is_perfect_square(n: int) -> int | None:
    """Return s if n == s*s, else None."""
    if n < 0:
        return None
    s = math.isqrt(n)
    return s if s * s == n else None


def iroot(n: int, k: int) -> int:
    """Floor of the k-th root: largest s with s**k <= n.

    Float seeding only; the result is corrected until the bracketing
    s**k <= n < (s+1)**k holds exactly.
    """
    if n < 0:
        raise ValueError("iroot of negative integer")
    if k < 1:
        raise ValueError("root order must be >= 1")
    if n == 0:
        return 0
    if k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    try:
        s = int(round(n ** (1.0 / k)))
    except OverflowError:
        s = 1 << (n.bit_length() // k + 1)
    while s > 1 and s**k > n:
        s -= 1
    while (s + 1) ** k <= n:
        s += 1
    return s


def modinv(a: int, m: int) -> int:
    """Inverse of a modulo m, in [1, m). Raises NotInvertible if gcd > 1."""
    if m < 2:
        raise ValueError("modulus must be >= 2")
    try:
        return pow(a, -1, m)
    except ValueError as exc:
        raise NotInvertible(f"{a} is not invertible mod {m}") from exc


# Strong-pseudoprime witnesses: deterministic for n < 2**64; for larger n the
# same fixed bases give a pseudoprime test with negligible failure odds at the
# sizes this library handles.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_prime(n: int) -> bool:
    """Miller-Rabin with fixed witnesses; correct for all n < 2**64."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime >= n."""
    if n <= 2:
        return 2
    n |= 1
    while not is_prime(n):
        n += 2
    return n


def sieve_primes(limit: int) -> list[int]:
    """All primes <= limit, by Eratosthenes."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = b"\x00" * len(flags[i * i :: i])
    return [i for i in range(2, limit + 1) if flags[i]]


@dataclass(frozen=True)
class PrimeModulus:
    """A certified prime modulus."""

    value: int

    def __post_init__(self) -> None:
        if self.value < 2 or not is_prime(self.value):
            raise ValueError(f"modulus {self.value} is not prime")

    def __int__(self) -> int:
        return self.value


def select_modulus(
    N: int, p: int, max_candidates: int = 64
) -> tuple[PrimeModulus, int]:
    """Pick the working prime modulus B and the residue x0 of the factor p.

    B starts at the first prime >= floor(N**(1/6)) and advances until
    x0 = (p - isqrt(N)) mod B satisfies gcd(B, x0) = gcd(isqrt(N), B) =
    gcd(isqrt(N) + x0, B) = 1.  x0 = 0 always forces advancement (gcd(B, 0)
    = B).  Raises SelectionExhausted after max_candidates primes.
    """
    if p <= 1 or N % p != 0:
        raise ValueError("p must be a nontrivial divisor of N")
    root = isqrt(N)
    B = next_prime(max(iroot(N, 6), 2))
    for _ in range(max_candidates):
        x0 = (p - root) % B
        if (
            x0 != 0
            and math.gcd(root, B) == 1
            and math.gcd(root + x0, B) == 1
        ):
            return PrimeModulus(B), x0
        B = next_prime(B + 1)
    raise SelectionExhausted(
        f"no qualifying modulus for N={N} within {max_candidates} candidates"
    )
