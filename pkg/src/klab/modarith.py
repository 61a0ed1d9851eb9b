"""Exact modular arithmetic for word-sized odd prime moduli.

Residues are plain Python ints in [0, p).  Arbitrary-precision integers
make every product exact, so there is no overflow path to guard here;
the checks that do exist catch domain misuse (zero inverses, composite
moduli) loudly instead of letting it corrupt a long computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Union

__all__ = [
    "Residue",
    "PrimeModulus",
    "ZeroNotInvertible",
    "is_prime_u64",
    "mul_mod",
    "inv_mod",
    "batch_inv",
]

# A residue mod p is just an int in [0, p).
Residue = int

_U64_LIMIT = 1 << 64
_MODULUS_LIMIT = 1 << 63

# Fixed witness tuple proven deterministic for every n < 3.3e24, which
# covers the whole u64 range with room to spare.  No probabilistic
# failure mode exists in-range.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Cheap trial divisors applied before the Miller-Rabin rounds.
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


class ZeroNotInvertible(ZeroDivisionError):
    """An inverse of 0 mod p was requested.

    ``index`` is the position of the offending element for batch calls,
    None for scalar calls.
    """

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


def is_prime_u64(n: int) -> bool:
    """Deterministic Miller-Rabin primality test for 0 <= n < 2**64.

    The fixed witness tuple makes the answer exact, not probabilistic,
    on the whole supported range; out-of-range input raises ValueError
    rather than returning a silently unreliable answer.
    """
    if not isinstance(n, int):
        raise TypeError(f"is_prime_u64 expects an int, got {type(n).__name__}")
    if not (0 <= n < _U64_LIMIT):
        raise ValueError(f"is_prime_u64 domain is [0, 2**64): got {n}")
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n == q:
            return True
        if n % q == 0:
            return False
    # n - 1 = d * 2**s with d odd
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeModulus:
    """An odd prime modulus with its float sqrt and natural log cached.

    Construction validates primality (deterministically) and the range
    3 <= p < 2**63, so downstream code can trust the modulus without
    re-checking.
    """

    p: int
    sqrt_p: float = field(init=False, repr=False, compare=False)
    log_p: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        p = self.p
        if not isinstance(p, int) or isinstance(p, bool):
            raise TypeError(f"modulus must be an int, got {type(p).__name__}")
        if not (3 <= p < _MODULUS_LIMIT):
            raise ValueError(f"modulus must satisfy 3 <= p < 2**63: got {p}")
        if not is_prime_u64(p):
            raise ValueError(f"modulus must be prime: got {p}")
        object.__setattr__(self, "sqrt_p", math.sqrt(p))
        object.__setattr__(self, "log_p", math.log(p))

    def __int__(self) -> int:
        return self.p


ModulusLike = Union[PrimeModulus, int]


def _as_int(p: ModulusLike) -> int:
    """Accept a PrimeModulus or a raw int modulus; raw ints are trusted."""
    return p.p if isinstance(p, PrimeModulus) else int(p)


def mul_mod(a: Residue, b: Residue, p: ModulusLike) -> Residue:
    """Product a*b mod p.

    Python ints carry the double-width product exactly, so this is
    correct for any word-sized operands, including ones near 2**63.
    """
    return a * b % _as_int(p)


def inv_mod(a: Residue, p: ModulusLike) -> Residue:
    """Inverse of a mod p via the extended Euclid iteration.

    Raises ZeroNotInvertible when a = 0 mod p.
    """
    m = _as_int(p)
    a %= m
    if a == 0:
        raise ZeroNotInvertible(f"0 has no inverse mod {m}")
    # Iterative extended gcd on (a, m); only the a-side cofactor is kept.
    old_r, r = a, m
    old_s, s = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    # old_r == gcd(a, m) == 1 since m is prime and a != 0 mod m.
    return old_s % m


def batch_inv(values: Iterable[Residue], p: ModulusLike) -> list[Residue]:
    """Invert every element mod p using a single scalar inversion.

    The Montgomery trick turns N inversions into one inversion plus
    3(N-1) multiplications via prefix products, which is what makes
    O(p) inverse tables affordable for the sliding-window sums.
    Raises ZeroNotInvertible naming the index of the first zero element.
    """
    m = _as_int(p)
    vals = [v % m for v in values]
    n = len(vals)
    if n == 0:
        return []
    prefix = [0] * n  # prefix[i] = vals[0] * ... * vals[i] mod m
    acc = 1
    for i, v in enumerate(vals):
        if v == 0:
            raise ZeroNotInvertible(f"element at index {i} is 0 mod {m}", index=i)
        acc = acc * v % m
        prefix[i] = acc
    inv_acc = inv_mod(acc, m)
    out = [0] * n
    for i in range(n - 1, 0, -1):
        out[i] = inv_acc * prefix[i - 1] % m
        inv_acc = inv_acc * vals[i] % m
    out[0] = inv_acc
    return out
