"""Small integer helpers on top of sympy.ntheory."""

from __future__ import annotations

from sympy.ntheory import factorint, isprime


def is_prime(n: int) -> bool:
    return n >= 2 and bool(isprime(n))


def prime_factors(n: int) -> tuple[int, ...]:
    if n < 1:
        raise ValueError("n must be positive")
    return tuple(sorted(int(p) for p in factorint(n)))


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``n == p**k`` and ``k >= 1``, else None."""
    if n < 2:
        return None
    f = factorint(n)
    if len(f) != 1:
        return None
    ((p, k),) = f.items()
    return int(p), int(k)


def is_prime_power(n: int) -> bool:
    return prime_power(n) is not None


def p_part(n: int, p: int) -> int:
    """Largest power of ``p`` dividing ``n``."""
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out
