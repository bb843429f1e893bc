"""Residue number system: prime selection and exact reconstruction.

Coefficients are computed modulo several 31-bit primes and recombined by
mixed radix conversion, so no arithmetic ever touches integers larger than
a machine word until the final answer is assembled.  Signed values are
recovered from the balanced range (-M/2, M/2) where M is the product of
the moduli.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@lru_cache(maxsize=4096)
def _inv(a: int, m: int) -> int:
    return pow(a, -1, m)


def _is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond 64 bits of input."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
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


@dataclass(frozen=True)
class ModulusSet:
    primes: tuple[int, ...]

    def __post_init__(self):
        if not self.primes:
            raise ValueError("empty modulus set")
        if len(set(self.primes)) != len(self.primes):
            raise ValueError("repeated modulus")
        for q in self.primes:
            if not _is_prime(q):
                raise ValueError(f"modulus {q} is not prime")

    @property
    def product(self) -> int:
        m = 1
        for p in self.primes:
            m *= p
        return m


@dataclass(frozen=True)
class RnsValue:
    residues: tuple[int, ...]


def coefficient_bound_bits(weight: int, p: int) -> int:
    """Bits needed to cover any coefficient of h**p, plus sign headroom.

    The sum of absolute coefficient values of h**p is at most weight**p,
    so ceil(p*log2(weight)) + 2 bits always suffice.  Computed with integer
    arithmetic; no floating point rounding.
    """
    if weight < 1:
        raise ValueError("weight must be positive")
    if p < 0:
        raise ValueError("negative power")
    w = weight ** p
    ceil_log2 = 0 if w == 1 else (w - 1).bit_length()
    return ceil_log2 + 2


def select_primes(bound_bits: int, min_exclusive: int = 1,
                  max_bits: int = 31) -> ModulusSet:
    """Smallest set of primes below 2**max_bits whose product exceeds 2**bound_bits.

    Scans downward from 2**max_bits - 1, so the choice is deterministic.
    Every prime also exceeds min_exclusive (node counts must stay invertible).
    """
    if not 20 <= max_bits <= 31:
        raise ValueError("prime size must be between 20 and 31 bits")
    if min_exclusive >= 2 ** max_bits - 1:
        raise ValueError("no primes available above min_exclusive")
    target = 1 << bound_bits
    primes = []
    product = 1
    candidate = 2 ** max_bits - 1
    while product <= target:
        while candidate > min_exclusive and not _is_prime(candidate):
            candidate -= 1
        if candidate <= min_exclusive:
            raise ValueError("prime window exhausted before reaching the bound")
        primes.append(candidate)
        product *= candidate
        candidate -= 1
    return ModulusSet(tuple(primes))


def reduce_int(x: int, ms: ModulusSet) -> RnsValue:
    return RnsValue(tuple(x % p for p in ms.primes))


def mixed_radix_digits(v: RnsValue, ms: ModulusSet) -> list[int]:
    """Digits a_i with x = a_1 + a_2 m_1 + a_3 m_1 m_2 + ..., 0 <= a_i < m_i.

    Computed with O(s^2) word-sized modular operations; no big integers.
    """
    primes = ms.primes
    if len(v.residues) != len(primes):
        raise ValueError("residue count mismatch")
    digits = []
    for i, (x, mi) in enumerate(zip(v.residues, primes)):
        t = x % mi
        for j in range(i):
            # strip digit j, then divide by m_j
            t = (t - digits[j]) * _inv(primes[j], mi) % mi
        digits.append(t)
    return digits


def reconstruct(v: RnsValue, ms: ModulusSet) -> int:
    """The unique x with x = v (mod every prime) and -M/2 < x < M/2."""
    digits = mixed_radix_digits(v, ms)
    x = 0
    scale = 1
    for d, m in zip(digits, ms.primes):
        x += d * scale
        scale *= m
    if 2 * x >= scale:
        x -= scale
    return x
