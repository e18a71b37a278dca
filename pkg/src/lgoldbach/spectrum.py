"""Harmonic analysis over Z/pZ.

``spectrum`` gives S_f(xi) = sum_{1<=n<p} f(n) e(n xi / p) for every residue
xi, using e(t) = exp(2 pi i t). Large p goes through the FFT; the O(p^2)
direct sum is kept as an oracle for p <= 512.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .arith import ParityTable, SignFunction, is_prime, quadratic_residue_table

DIRECT_MAX = 512


def _require_odd_prime(p: int) -> None:
    if p < 3 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")


@dataclass(frozen=True, eq=False)
class SpectrumVector:
    p: int
    values: np.ndarray = field(repr=False)  # complex128, indexed by xi
    source: str = ""

    def __call__(self, xi: int) -> complex:
        return complex(self.values[xi % self.p])

    def to_json(self) -> str:
        pairs = [[float(z.real), float(z.imag)] for z in self.values]
        return json.dumps({"p": self.p, "source": self.source, "values": pairs})

    @classmethod
    def from_json(cls, text: str) -> "SpectrumVector":
        obj = json.loads(text)
        vals = np.array([complex(re, im) for re, im in obj["values"]], dtype=np.complex128)
        return cls(obj["p"], vals, obj.get("source", ""))


def _weights(f: SignFunction, p: int) -> np.ndarray:
    w = np.zeros(p, dtype=np.float64)
    w[1:] = f.values(1, p - 1)
    return w


def spectrum(f: SignFunction, p: int, *, method: str = "fft") -> SpectrumVector:
    """Spectrum of n -> f(n) 1_[1,p-1](n) modulo p."""
    _require_odd_prime(p)
    w = _weights(f, p)
    if method == "fft":
        # numpy's inverse transform carries the e(+n xi / p) sign convention
        vals = np.fft.ifft(w) * p
    elif method == "direct":
        vals = _direct_dft(w, p)
    else:
        raise ValueError(f"unknown method {method!r}")
    return SpectrumVector(p, vals, f.name)


def _direct_dft(w: np.ndarray, p: int) -> np.ndarray:
    if p > DIRECT_MAX:
        raise ValueError(f"direct summation is limited to p <= {DIRECT_MAX}")
    n = np.arange(p)
    # reduce n*xi mod p before scaling so the phase stays exact
    phase = 2j * np.pi * (np.outer(n, n) % p) / p
    return np.exp(phase) @ w


@dataclass(frozen=True)
class GaussSum:
    p: int
    xi: int
    value: complex


def twisted_gauss(p: int, xi: int) -> GaussSum:
    """sum_{1<=n<p} chi_p(n) e(n xi / p); the n = p term of the usual
    definition vanishes because chi_p(p) = 0."""
    _require_odd_prime(p)
    chi = quadratic_residue_table(p).astype(np.float64)
    n = np.arange(p, dtype=np.int64)
    phase = 2j * np.pi * ((n * (xi % p)) % p) / p
    return GaussSum(p, xi % p, complex(np.sum(chi * np.exp(phase))))


def plancherel_residual(spec: SpectrumVector) -> float:
    """|(1/p) sum |S|^2 - (p-1)|, zero for any +-1 valued input."""
    p = spec.p
    return abs(float(np.sum(np.abs(spec.values) ** 2)) / p - (p - 1))


def dilation_residual(spec: SpectrumVector, d: int, s: int) -> float:
    """max over xi of |S(d xi) - s S(xi)|."""
    p = spec.p
    if not 1 <= d < p:
        raise ValueError(f"d={d} must lie in [1, {p - 1}]")
    idx = (np.arange(p, dtype=np.int64) * d) % p
    return float(np.max(np.abs(spec.values[idx] - s * spec.values)))


def inverse_spectrum(spec: SpectrumVector) -> np.ndarray:
    """Recover f(1..p-1) from its spectrum: (1/p) sum_xi S(xi) e(-n xi / p)."""
    f = np.fft.fft(spec.values) / spec.p
    return f.real[1:]


def conjugate_symmetry_residual(spec: SpectrumVector) -> float:
    v = spec.values
    return float(np.max(np.abs(v[(-np.arange(spec.p)) % spec.p] - np.conj(v))))


@dataclass(frozen=True)
class CharacterMatch:
    p: int
    bound: int
    agreements: int
    first_disagreement: int | None


def character_match(table: ParityTable, p: int, bound: int) -> CharacterMatch:
    """Compare lambda(n) with chi_p(n) for n < bound, p not dividing n."""
    _require_odd_prime(p)
    if bound - 1 > table.limit:
        raise ValueError(f"bound {bound} exceeds parity table limit {table.limit}")
    if bound <= 1:
        return CharacterMatch(p, bound, 0, None)
    n = np.arange(1, bound, dtype=np.int64)
    lam = table.signs(1, bound - 1)
    chi = quadratic_residue_table(p)[n % p]
    keep = chi != 0
    agree = keep & (lam == chi)
    bad = np.flatnonzero(keep & ~agree)
    return CharacterMatch(p, bound, int(agree.sum()), int(n[bad[0]]) if bad.size else None)


def dilation_sweep(f: SignFunction, p: int, sign_of) -> list[tuple[int, int, int, float]]:
    """Rows (p, d, s, residual) for every 1 <= d < p with s = sign_of(d)."""
    spec = spectrum(f, p)
    return [(p, d, s, dilation_residual(spec, d, s)) for d in range(1, p) for s in [sign_of(d)]]
