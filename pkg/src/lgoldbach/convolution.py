"""Goldbach-type convolution sums L_f(N) = sum_{1<=n<N} f(n) f(N-n).

Single values are computed directly; whole ranges come from one exact
autoconvolution of the Liouville sign vector. The divisor-reduction and
extremal-structure reports check the structure that extremality
(|L(N)| = N-1) forces on divisors of N.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .arith import CapacityError, ParityTable, SignFunction, factorize
from .ntt import NTT_PRIMES, autoconvolve

# largest X whose autoconvolution fits the biggest supported NTT length
MAX_SCAN = (1 << max(t[2] for t in NTT_PRIMES)) // 2 - 1


def divisors(n: int) -> list[int]:
    out = [1]
    for p, e in factorize(n).items():
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def conv_sum_naive(f: SignFunction, N: int) -> int:
    """Direct O(N) evaluation of sum_{n<N} f(n) f(N-n)."""
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    v = f.values(1, N - 1).astype(np.int64)
    return int(v @ v[::-1])


def conv_sum_paired(f: SignFunction, N: int) -> int:
    """Same sum, folded over the palindrome n <-> N-n."""
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    total = 0
    for n in range(1, N // 2 + 1):
        term = f(n) * f(N - n)
        total += term if 2 * n == N else 2 * term
    return total


def _conv(table: ParityTable, N: int) -> int:
    return 0 if N == 1 else conv_sum_naive(SignFunction.liouville(table), N)


@dataclass(frozen=True)
class ConvolutionRecord:
    N: int
    L: int
    ratio: float
    extremal: bool

    @classmethod
    def of(cls, N: int, L: int) -> "ConvolutionRecord":
        return cls(N, L, abs(L) / (N - 1), abs(L) == N - 1)


@dataclass
class ScanReport:
    """L(N) for every 2 <= N <= limit, held as arrays."""

    limit: int
    L: np.ndarray = field(repr=False)  # L[N] for N = 0..limit; entries 0, 1 unused

    @property
    def Ns(self) -> np.ndarray:
        return np.arange(2, self.limit + 1)

    @property
    def extremal(self) -> list[int]:
        N = self.Ns
        return N[np.abs(self.L[2:]) == N - 1].tolist()

    def record(self, N: int) -> ConvolutionRecord:
        if not 2 <= N <= self.limit:
            raise IndexError(N)
        return ConvolutionRecord.of(N, int(self.L[N]))

    def records(self):
        for N in range(2, self.limit + 1):
            yield ConvolutionRecord.of(N, int(self.L[N]))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["N", "L", "ratio", "extremal"])
        for r in self.records():
            w.writerow([r.N, r.L, f"{r.ratio:.6f}", int(r.extremal)])
        return buf.getvalue()

    def to_json(self) -> str:
        rows = [
            {"N": r.N, "L": r.L, "ratio": round(r.ratio, 6), "extremal": int(r.extremal)}
            for r in self.records()
        ]
        return json.dumps({"limit": self.limit, "extremal_list": self.extremal, "records": rows})


def conv_scan(table: ParityTable, X: int) -> ScanReport:
    """L_lambda(N) for all 2 <= N <= X from one exact autoconvolution."""
    if X < 2:
        raise ValueError(f"X must be >= 2, got {X}")
    if X > table.limit:
        raise ValueError(f"X={X} exceeds parity table limit {table.limit}")
    if X > MAX_SCAN:
        raise CapacityError(f"X={X} exceeds the transform budget ({MAX_SCAN})")
    a = np.zeros(X + 1, dtype=np.int64)
    a[1:] = table.signs(1, X)
    c = autoconvolve(a, bound=X)
    return ScanReport(limit=X, L=np.asarray(c[: X + 1], dtype=np.int64))


@dataclass
class DivisorCheck:
    N: int
    L_N: int
    rows: list[dict]
    violations: list[int]

    @property
    def ok(self) -> bool:
        return not self.violations


def divisor_reduction_check(table: ParityTable, N: int) -> DivisorCheck:
    """Test |L(N)| <= |L(d)| + N - d for every divisor d of N (L(1) = 0)."""
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    LN = _conv(table, N)
    rows, bad = [], []
    for d in divisors(N):
        Ld = LN if d == N else _conv(table, d)
        holds = abs(LN) <= abs(Ld) + N - d
        rows.append({"d": d, "L_d": Ld, "bound": abs(Ld) + N - d, "holds": holds})
        if not holds:
            bad.append(d)
    return DivisorCheck(N=N, L_N=LN, rows=rows, violations=bad)


@dataclass
class ExtremalReport:
    N: int
    L_N: int
    extremal: bool
    divisor_values: dict[int, int]
    # extremal case: divisors where the forced identities fail (should be empty)
    failures: list[int]
    # non-extremal case: least divisor d >= 2 with |L(d)| < d-1, and least
    # n with lambda(n) lambda(N-n) != lambda(N-1)
    first_breaking_divisor: int | None = None
    witness: int | None = None

    def as_dict(self) -> dict:
        d = asdict(self)
        d["divisor_values"] = {str(k): v for k, v in self.divisor_values.items()}
        return d


def extremal_structure_report(table: ParityTable, N: int) -> ExtremalReport:
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    lam = table.signs(1, N).astype(np.int64)  # lam[n-1] = lambda(n)
    LN = int(lam[: N - 1] @ lam[N - 2 :: -1]) if N > 1 else 0
    divs = [d for d in divisors(N) if d >= 2]
    values = {d: (LN if d == N else _conv(table, d)) for d in divs}
    if abs(LN) == N - 1:
        failures = [
            d
            for d in divs
            if values[d] != lam[d - 2] * (d - 1) or lam[N - 2] != lam[d - 2]
        ]
        return ExtremalReport(N, LN, True, values, failures)
    breaking = next(d for d in divs if abs(values[d]) < d - 1)
    prods = lam[: N - 1] * lam[N - 2 :: -1]
    witness = int(np.flatnonzero(prods != lam[N - 2])[0]) + 1
    return ExtremalReport(N, LN, False, values, [], breaking, witness)


@dataclass
class GoldbachResult:
    N: int
    pair: tuple[int, int] | None
    # populated only when no pair exists
    L_N: int | None = None
    liouville_sum: int | None = None
    fallback_holds: bool | None = None


def _least_mm_pair(lam: np.ndarray, minus: np.ndarray, N: int) -> tuple[int, int] | None:
    # lam[n] = lambda(n); minus = sorted n with lambda(n) = -1
    for a in minus:
        if 2 * a > N:
            break
        if lam[N - a] == -1:
            return int(a), int(N - a)
    return None


def _fallback(lam: np.ndarray, N: int) -> GoldbachResult:
    body = lam[1:N].astype(np.int64)
    LN = int(body @ body[::-1])
    s = int(body.sum())
    return GoldbachResult(N, None, LN, s, abs(LN) > N - 2 * abs(s))


def goldbach_mm_pair(table: ParityTable, N: int) -> GoldbachResult:
    """Least (a, b), a <= b, a + b = N with lambda(a) = lambda(b) = -1."""
    if N < 4 or N % 2:
        raise ValueError(f"N must be even and >= 4, got {N}")
    if N > table.limit:
        raise ValueError(f"N={N} exceeds parity table limit {table.limit}")
    lam = np.concatenate(([0], table.signs(1, N)))
    minus = np.flatnonzero(lam == -1)
    pair = _least_mm_pair(lam, minus, N)
    return GoldbachResult(N, pair) if pair else _fallback(lam, N)


def goldbach_mm_scan(table: ParityTable, X: int) -> list[GoldbachResult]:
    """The pair search for every even 4 <= N <= X, in ascending N."""
    if X > table.limit:
        raise ValueError(f"X={X} exceeds parity table limit {table.limit}")
    signs = np.concatenate(([0], table.signs(1, X)))
    lam = signs.tolist()
    minus = [n for n in range(1, X + 1) if lam[n] == -1]
    out = []
    for N in range(4, X + 1, 2):
        for a in minus:
            if 2 * a > N:
                out.append(_fallback(signs, N))
                break
            if lam[N - a] == -1:
                out.append(GoldbachResult(N, (a, N - a)))
                break
    return out
