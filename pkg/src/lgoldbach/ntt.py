"""Exact integer convolution via number-theoretic transforms.

Each transform runs modulo a prime p = c * 2^k + 1 below 2^30, so products
of two residues fit in int64. Results from several primes are recombined by
Garner's algorithm and mapped to the symmetric residue range.
"""

from __future__ import annotations

import numpy as np

# (prime, primitive root, 2-adic order of p - 1)
NTT_PRIMES: tuple[tuple[int, int, int], ...] = (
    (998244353, 3, 23),
    (469762049, 3, 26),
    (167772161, 3, 25),
)


def _bit_reverse(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    rev = np.zeros(n, dtype=np.int64)
    for b in range(bits):
        rev |= ((np.arange(n) >> b) & 1) << (bits - 1 - b)
    return rev


def _root_table(n: int, p: int, g: int, inverse: bool) -> np.ndarray:
    """w^0..w^{n/2-1} for w a primitive n-th root of unity mod p."""
    w = pow(g, (p - 1) // n, p)
    if inverse:
        w = pow(w, p - 2, p)
    half = max(n // 2, 1)
    roots = np.ones(half, dtype=np.int64)
    k = 1
    while k < half:
        step = pow(w, k, p)
        roots[k : 2 * k] = roots[:k] * step % p
        k *= 2
    return roots


def ntt(a: np.ndarray, p: int, g: int, *, inverse: bool = False) -> np.ndarray:
    """Iterative radix-2 transform of ``a`` (length a power of two) mod p."""
    n = a.size
    if n & (n - 1):
        raise ValueError("transform length must be a power of two")
    out = np.asarray(a, dtype=np.int64)[_bit_reverse(n)] % p
    roots = _root_table(n, p, g, inverse)
    length = 2
    while length <= n:
        half = length // 2
        tw = roots[:: n // length][:half]
        blocks = out.reshape(-1, length)
        u = blocks[:, :half].copy()
        v = blocks[:, half:] * tw % p
        blocks[:, :half] = u + v
        blocks[:, half:] = u - v
        blocks %= p
        length *= 2
    if inverse:
        out = out * pow(n, p - 2, p) % p
    return out


def primes_for(length: int, bound: int) -> list[tuple[int, int, int]]:
    """Fewest NTT primes supporting ``length`` whose product exceeds 2*bound."""
    usable = [t for t in NTT_PRIMES if (1 << t[2]) >= length]
    chosen, prod = [], 1
    for t in usable:
        chosen.append(t)
        prod *= t[0]
        if prod > 2 * bound:
            return chosen
    raise ValueError(f"no NTT prime set supports length {length} with bound {bound}")


def crt_signed(residues: list[np.ndarray], moduli: list[int]) -> np.ndarray:
    """Garner recombination to the symmetric range (-M/2, M/2]."""
    if len(moduli) == 1:
        p = moduli[0]
        r = residues[0].astype(np.int64)
        return np.where(r > p // 2, r - p, r)
    # mixed-radix digits, each below its modulus
    digits: list[np.ndarray] = []
    for i, (r, p) in enumerate(zip(residues, moduli)):
        x = r.astype(np.int64) % p
        prefix = 1
        for d, q in zip(digits, moduli[:i]):
            x = (x - d * (prefix % p)) % p
            prefix *= q
        x = x * pow(prefix % p, p - 2, p) % p
        digits.append(x)
    total = np.zeros(residues[0].shape, dtype=object)
    weight = 1
    for d, q in zip(digits, moduli):
        total = total + d.astype(object) * weight
        weight *= q
    return np.array([v - weight if v > weight // 2 else v for v in total], dtype=object)


def autoconvolve(a: np.ndarray, bound: int, primes: list[tuple[int, int, int]] | None = None) -> np.ndarray:
    """Exact linear autoconvolution c[k] = sum_i a[i] a[k-i].

    ``bound`` must dominate every |c[k]|; it fixes how many primes are needed.
    Returns int64 when the result fits, otherwise an object array.
    """
    a = np.asarray(a, dtype=np.int64)
    out_len = 2 * a.size - 1
    n = 1 << max(0, (out_len - 1).bit_length())
    primes = primes or primes_for(n, bound)
    residues, moduli = [], []
    for p, g, _ in primes:
        buf = np.zeros(n, dtype=np.int64)
        buf[: a.size] = a % p
        fa = ntt(buf, p, g)
        residues.append(ntt(fa * fa % p, p, g, inverse=True)[:out_len])
        moduli.append(p)
    c = crt_signed(residues, moduli)
    if c.dtype == object and bound < 2**62:
        c = c.astype(np.int64)
    return c
