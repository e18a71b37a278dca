"""Foundational arithmetic: the Liouville parity sieve, primality, Jacobi
symbols, primitive roots, largest prime factors and sign functions.

The Liouville function is stored as a bit-packed table of Omega(n) mod 2,
built by a segmented sieve over prime powers. Inside a segment every prime
power p^k with p <= sqrt(X) flips the parity of its multiples and multiplies
a running "smooth part" accumulator by p; whatever is left over, n divided by
its smooth part, is either 1 or a single prime > sqrt(X), which contributes
one more flip.
"""

from __future__ import annotations

import math
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping

import numpy as np

PARITY_MAGIC = b"LPAR"
PARITY_VERSION = 1
_HEADER = struct.Struct("<4sBQ")

DEFAULT_SEGMENT = 1 << 20
# Packed table + per-segment scratch; 2 GiB is far beyond the 10^8 target.
DEFAULT_MEMORY_BUDGET = 2 << 30


class CapacityError(ValueError):
    """Requested size exceeds the configured memory budget."""


class UndefinedValueError(ValueError):
    """A sign function was evaluated outside its domain."""


# --------------------------------------------------------------------------
# small-prime helpers


def primes_up_to(n: int) -> np.ndarray:
    """Primes <= n as an int64 array (plain Eratosthenes)."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for i in range(3, math.isqrt(n) + 1, 2):
        if sieve[i]:
            sieve[i * i :: 2 * i] = False
    return np.flatnonzero(sieve).astype(np.int64)


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; the 12 prime bases are exact below 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
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


def jacobi_symbol(a: int, n: int) -> int:
    """Jacobi symbol (a|n) for odd n >= 1, by binary quadratic reciprocity."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"Jacobi symbol needs an odd positive modulus, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization. Only meant for n up to ~10^12."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f, step = 5, 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += step
        step = 6 - step
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def big_omega(n: int) -> int:
    """Number of prime factors of n counted with multiplicity."""
    return sum(factorize(n).values())


def find_primitive_root(p: int) -> int:
    """Smallest primitive root modulo the odd prime p."""
    if p < 3 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    cofactors = [(p - 1) // q for q in factorize(p - 1)]
    for d in range(2, p):
        if all(pow(d, e, p) != 1 for e in cofactors):
            return d
    raise AssertionError("unreachable: every prime has a primitive root")


@dataclass(frozen=True)
class FactorView:
    n: int
    largest: int
    cofactor: int


def largest_prime_factor(n: int) -> FactorView:
    if n < 2:
        raise ValueError(f"largest prime factor needs n >= 2, got {n}")
    big = max(factorize(n))
    return FactorView(n=n, largest=big, cofactor=n // big)


# --------------------------------------------------------------------------
# Liouville parity table


@dataclass(frozen=True, eq=False)
class ParityTable:
    """Parity of Omega(n) for 1 <= n <= limit, packed little-endian per byte.

    Bit j of byte i holds the parity for n = 8i + j + 1. The table is
    immutable and safe to share between threads.
    """

    limit: int
    bits: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.bits.dtype != np.uint8 or self.bits.size != (self.limit + 7) // 8:
            raise ValueError("packed buffer does not match limit")
        self.bits.setflags(write=False)

    def __eq__(self, other):
        if not isinstance(other, ParityTable):
            return NotImplemented
        return self.limit == other.limit and np.array_equal(self.bits, other.bits)

    def _check(self, n: int) -> None:
        if not 1 <= n <= self.limit:
            raise IndexError(f"n={n} outside table range [1, {self.limit}]")

    def parity(self, n: int) -> int:
        self._check(n)
        i = n - 1
        return (int(self.bits[i >> 3]) >> (i & 7)) & 1

    def parities(self, lo: int = 1, hi: int | None = None) -> np.ndarray:
        """Parities for lo..hi inclusive as a uint8 array."""
        hi = self.limit if hi is None else hi
        if lo > hi:
            return np.zeros(0, dtype=np.uint8)
        self._check(lo)
        self._check(hi)
        b0 = (lo - 1) >> 3
        b1 = (hi - 1) >> 3
        unpacked = np.unpackbits(self.bits[b0 : b1 + 1], bitorder="little")
        off = (lo - 1) - 8 * b0
        return unpacked[off : off + hi - lo + 1]

    def signs(self, lo: int = 1, hi: int | None = None) -> np.ndarray:
        """lambda(n) for lo..hi inclusive as an int8 array of +-1."""
        par = self.parities(lo, hi)
        return (1 - 2 * par.astype(np.int8)).astype(np.int8)

    def to_bytes(self) -> bytes:
        return _HEADER.pack(PARITY_MAGIC, PARITY_VERSION, self.limit) + self.bits.tobytes()

    @classmethod
    def from_bytes(cls, data: bytes) -> "ParityTable":
        if len(data) < _HEADER.size:
            raise ValueError("parity file truncated")
        magic, version, limit = _HEADER.unpack_from(data)
        if magic != PARITY_MAGIC:
            raise ValueError(f"bad magic {magic!r}")
        if version != PARITY_VERSION:
            raise ValueError(f"unsupported parity file version {version}")
        nbytes = (limit + 7) // 8
        payload = data[_HEADER.size :]
        if len(payload) != nbytes:
            raise ValueError(f"expected {nbytes} data bytes, found {len(payload)}")
        return cls(limit=limit, bits=np.frombuffer(payload, dtype=np.uint8).copy())

    def save(self, path: str | Path) -> None:
        Path(path).write_bytes(self.to_bytes())

    @classmethod
    def load(cls, path: str | Path) -> "ParityTable":
        return cls.from_bytes(Path(path).read_bytes())


def liouville(table: ParityTable, n: int) -> int:
    return 1 - 2 * table.parity(n)


def _sieve_segment(lo: int, hi: int, small_primes: np.ndarray) -> np.ndarray:
    """Omega parity for lo..hi-1 (uint8), given all primes <= sqrt(hi-1)."""
    size = hi - lo
    acc_type = np.uint32 if hi <= 2**32 else np.uint64
    parity = np.zeros(size, dtype=np.uint8)
    smooth = np.ones(size, dtype=acc_type)
    for p in small_primes.tolist():
        pk = p
        while pk < hi:
            start = (-lo) % pk
            if start < size:
                parity[start::pk] ^= 1
                smooth[start::pk] *= acc_type(p)
            pk *= p
    n = np.arange(lo, hi, dtype=acc_type)
    # n / smooth(n) > 1 means exactly one prime factor above sqrt(X) remains
    parity ^= (smooth != n).astype(np.uint8)
    return parity


def build_parity_table(
    limit: int,
    *,
    segment_size: int = DEFAULT_SEGMENT,
    workers: int = 1,
    memory_budget: int = DEFAULT_MEMORY_BUDGET,
) -> ParityTable:
    """Sieve Omega(n) mod 2 for 1 <= n <= limit.

    Output is bit-identical for any ``workers``/``segment_size`` choice.
    """
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    if limit >= 2**63:
        raise CapacityError("limit must fit in a signed 64-bit word")
    segment_size = max(8, segment_size - segment_size % 8)
    scratch = segment_size * (1 + 8 + 8) * max(1, workers)
    needed = (limit + 7) // 8 + scratch
    if needed > memory_budget:
        raise CapacityError(f"sieve to {limit} needs ~{needed} bytes, budget is {memory_budget}")

    small = primes_up_to(math.isqrt(limit))
    # segment boundaries sit at n = 1 + 8k so packed bytes concatenate cleanly
    starts = list(range(1, limit + 1, segment_size))
    out = np.empty((limit + 7) // 8, dtype=np.uint8)

    def work(lo: int) -> None:
        hi = min(lo + segment_size, limit + 1)
        packed = np.packbits(_sieve_segment(lo, hi, small), bitorder="little")
        b0 = (lo - 1) // 8
        out[b0 : b0 + packed.size] = packed

    if workers <= 1:
        for lo in starts:
            work(lo)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(work, starts))
    return ParityTable(limit=limit, bits=out)


# --------------------------------------------------------------------------
# sign functions


def quadratic_residue_table(p: int) -> np.ndarray:
    """chi_p(a) for a = 0..p-1 as int8."""
    if p < 3 or not is_prime(p):
        raise ValueError(f"quadratic character needs an odd prime, got {p}")
    chi = np.full(p, -1, dtype=np.int8)
    k = np.arange(1, (p - 1) // 2 + 1, dtype=np.int64)
    chi[(k * k) % p] = 1
    chi[0] = 0
    return chi


@dataclass(frozen=True, eq=False)
class SignFunction:
    """A completely multiplicative function with values in {-1, 0, +1}.

    Use the constructors :meth:`liouville`, :meth:`character` and
    :meth:`custom`. ``limit`` is the largest argument that may be evaluated
    (``None`` when unbounded).
    """

    kind: str
    name: str
    limit: int | None
    _vec: Callable[[int, int], np.ndarray] = field(repr=False)
    modulus: int | None = None

    @classmethod
    def liouville(cls, table: ParityTable) -> "SignFunction":
        return cls("liouville", "liouville", table.limit, table.signs)

    @classmethod
    def character(cls, p: int) -> "SignFunction":
        chi = quadratic_residue_table(p)

        def vec(lo: int, hi: int) -> np.ndarray:
            return chi[np.arange(lo, hi + 1, dtype=np.int64) % p]

        return cls("character", f"chi_{p}", None, vec, modulus=p)

    @classmethod
    def custom(cls, prime_values: Mapping[int, int], cutoff: int, name: str = "custom") -> "SignFunction":
        """Completely multiplicative extension of a +-1 assignment on primes <= cutoff."""
        primes = primes_up_to(cutoff).tolist()
        missing = [p for p in primes if p not in prime_values]
        if missing:
            raise ValueError(f"no value assigned to prime(s) {missing[:5]}")
        if any(prime_values[p] not in (1, -1) for p in primes):
            raise ValueError("custom prime values must be +-1")
        vals = np.ones(cutoff + 1, dtype=np.int8)
        for p in primes:
            if prime_values[p] == -1:
                pk = p
                while pk <= cutoff:
                    vals[pk::pk] *= -1
                    pk *= p
        vals.setflags(write=False)

        def vec(lo: int, hi: int) -> np.ndarray:
            return vals[lo : hi + 1].copy()

        return cls("custom", name, cutoff, vec)

    def values(self, lo: int, hi: int) -> np.ndarray:
        """f(n) for lo..hi inclusive as int8."""
        if lo < 1:
            raise UndefinedValueError(f"{self.name} is defined on positive integers only")
        if hi < lo:
            return np.zeros(0, dtype=np.int8)
        if self.limit is not None and hi > self.limit:
            raise UndefinedValueError(f"{self.name} is defined only up to {self.limit}, asked for {hi}")
        return self._vec(lo, hi)

    def __call__(self, n: int) -> int:
        return int(self.values(n, n)[0])
