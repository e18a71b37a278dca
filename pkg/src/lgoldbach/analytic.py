"""L(1, chi_p), the smoothed divisor sums compared against (p/2) L(1, chi_p),
and Polya-Vinogradov statistics for the quadratic character.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import astuple, dataclass, fields
from fractions import Fraction

import numpy as np
from scipy.special import zeta

from .arith import ParityTable, is_prime, quadratic_residue_table


class AccuracyError(RuntimeError):
    """The requested accuracy is not reachable within the iteration budget."""


def _odd_prime(p: int) -> None:
    if p < 3 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")


def character_partial_sums(p: int) -> np.ndarray:
    """S(u) = sum_{n<=u} chi_p(n) for u = 0..p."""
    chi = quadratic_residue_table(p).astype(np.int64)
    return np.concatenate(([0], np.cumsum(chi[1:]), [0]))


def pv_max(p: int) -> int:
    return int(np.max(np.abs(character_partial_sums(p))))


def polya_vinogradov_stat(p: int) -> float:
    """max_u |sum_{n<=u} chi_p(n)| / (sqrt(p) log p)."""
    _odd_prime(p)
    return pv_max(p) / (math.sqrt(p) * math.log(p))


def abel_tail_bound(p: int, M: int) -> float:
    """Bound on |sum_{n>M} chi_p(n)/n| by partial summation: 2 max|S| / (M+1)."""
    return 2 * pv_max(p) / (M + 1)


@dataclass(frozen=True)
class L1Value:
    value: float
    error_bound: float
    method: str


def _l1_closed_form(p: int) -> float:
    chi = quadratic_residue_table(p).astype(np.float64)
    a = np.arange(p, dtype=np.float64)
    if p % 4 == 3:
        return float(-math.pi / p**1.5 * np.dot(a[1:], chi[1:]))
    return float(-np.dot(chi[1:], np.log(np.sin(np.pi * a[1:] / p))) / math.sqrt(p))


def _l1_direct(p: int, blocks: int, terms: int, tol: float) -> L1Value:
    # sum over n <= blocks*p, then the tail
    #   (1/p) sum_{k>=blocks} sum_a chi(a) / (k + a/p)
    #   = (1/p) sum_{i>=1} (-1)^i mu_i zeta(i+1, blocks),  mu_i = sum_a chi(a) (a/p)^i
    chi = quadratic_residue_table(p).astype(np.float64)
    n = np.arange(1, blocks * p + 1, dtype=np.float64)
    head = math.fsum(np.tile(chi, blocks)[1:] / n[:-1]) + chi[0] / n[-1]
    x = np.arange(p, dtype=np.float64) / p
    tail = 0.0
    xi = np.ones(p)
    for i in range(1, terms + 1):
        xi = xi * x
        mu = float(np.dot(chi, xi))
        tail += (-1) ** i * mu * float(zeta(i + 1, blocks))
    tail /= p
    # |mu_i| <= p-1 and zeta(i+1, K) <= 2 K^{-i}, so the dropped terms are
    # below 2 K^{-terms} / (K-1)
    bound = 2.0 * blocks ** (-terms) / (blocks - 1) + 1e-13
    if bound > tol:
        raise AccuracyError(f"direct L(1, chi_{p}) bound {bound:.3g} exceeds tolerance {tol:.3g}")
    return L1Value(head + tail, bound, "direct")


def l1_chi(p: int, method: str = "character-sum", *, blocks: int = 16, terms: int = 12,
           tol: float = 1e-8) -> float:
    """L(1, chi_p) for an odd prime p.

    ``character-sum`` is the finite closed form (a weighted sum of chi for
    p = 3 mod 4, a log-sine sum for p = 1 mod 4). ``direct`` sums chi(n)/n
    over ``blocks`` periods and completes the tail with a Hurwitz zeta
    expansion in the moments of chi.
    """
    return l1_chi_detail(p, method, blocks=blocks, terms=terms, tol=tol).value


def l1_chi_detail(p: int, method: str = "character-sum", *, blocks: int = 16, terms: int = 12,
                  tol: float = 1e-8) -> L1Value:
    _odd_prime(p)
    if method == "character-sum":
        return L1Value(_l1_closed_form(p), 1e-12 * p, method)
    if method == "direct":
        if blocks < 2:
            raise ValueError("need at least two blocks for the tail expansion")
        return _l1_direct(p, blocks, terms, tol)
    raise ValueError(f"unknown method {method!r}")


def smoothed_sum_chi_exact(p: int) -> Fraction:
    """sum_{n<p} (1 - n/p) sum_{d|n} chi_p(d), as an exact fraction.

    Regrouped by d: sum_{d<p} chi_p(d) sum_{m <= (p-1)/d} (p - md) / p.
    """
    _odd_prime(p)
    chi = quadratic_residue_table(p).astype(np.int64)
    d = np.arange(1, p, dtype=np.int64)
    M = (p - 1) // d
    inner = p * M - d * M * (M + 1) // 2
    return Fraction(int(np.dot(chi[1:], inner)), p)


def smoothed_sum_chi(p: int) -> float:
    return float(smoothed_sum_chi_exact(p))


def smoothed_sum_chi_bruteforce(p: int) -> Fraction:
    """Oracle: the defining double sum, term by term."""
    chi = quadratic_residue_table(p)
    total = Fraction(0)
    for n in range(1, p):
        inner = sum(int(chi[d % p]) for d in range(1, n + 1) if n % d == 0)
        total += Fraction(p - n, p) * inner
    return total


def liouville_divisor_sums(table: ParityTable, upto: int) -> np.ndarray:
    """(1 * lambda)(n) for n = 0..upto (index 0 unused)."""
    lam = np.concatenate(([0], table.signs(1, upto).astype(np.int64)))
    g = np.zeros(upto + 1, dtype=np.int64)
    for d in range(1, upto + 1):
        g[d::d] += lam[d]
    return g


def square_closed_form(p: int) -> Fraction:
    """sum_{m^2 < p} (1 - m^2/p)."""
    k = math.isqrt(p - 1)
    return Fraction(sum(p - m * m for m in range(1, k + 1)), p)


class LiouvilleSmoother:
    """Batch evaluation of sum_{n<p} (1 - n/p) (1 * lambda)(n) from prefix sums."""

    def __init__(self, table: ParityTable, upto: int | None = None):
        upto = table.limit if upto is None else upto
        g = liouville_divisor_sums(table, upto)
        n = np.arange(upto + 1, dtype=np.int64)
        self.upto = upto
        self._G = np.cumsum(g)
        self._H = np.cumsum(n * g)

    def __call__(self, p: int) -> Fraction:
        if not 2 <= p <= self.upto + 1:
            raise ValueError(f"p={p} outside the precomputed range")
        return Fraction(int(p * self._G[p - 1] - self._H[p - 1]), p)


def smoothed_sum_liouville(table: ParityTable, p: int) -> Fraction:
    if p < 2 or p - 1 > table.limit:
        raise ValueError(f"p={p} needs a parity table up to {p - 1}")
    return LiouvilleSmoother(table, max(p - 1, 1))(p)


def livigen_ratio(p: int, S_chi: float, L1: float) -> float:
    return abs(S_chi - p / 2 * L1) / (p ** (5 / 6) * math.log(p))


def llam_quantity(p: int, method: str = "character-sum") -> float:
    """L(1, chi_p) p^(1/6) / log p."""
    return l1_chi(p, method) * p ** (1 / 6) / math.log(p)


@dataclass(frozen=True)
class AnalyticRecord:
    p: int
    L1: float
    S_chi: float
    S_lam: float
    livigen_ratio: float
    llam_quantity: float
    pv_stat: float


CSV_FIELDS = [f.name for f in fields(AnalyticRecord)]


def analytic_record(p: int, smoother: LiouvilleSmoother) -> AnalyticRecord:
    L1 = l1_chi(p)
    S_chi = smoothed_sum_chi(p)
    return AnalyticRecord(
        p=p,
        L1=L1,
        S_chi=S_chi,
        S_lam=float(smoother(p)),
        livigen_ratio=livigen_ratio(p, S_chi, L1),
        llam_quantity=L1 * p ** (1 / 6) / math.log(p),
        pv_stat=polya_vinogradov_stat(p),
    )


@dataclass
class AnalyticReport:
    records: list[AnalyticRecord]

    @property
    def max_livigen_ratio(self) -> tuple[int, float]:
        best = max(self.records, key=lambda r: r.livigen_ratio)
        return best.p, best.livigen_ratio

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_FIELDS)
        for r in self.records:
            row = astuple(r)
            w.writerow([row[0]] + [f"{x:.10g}" for x in row[1:]])
        return buf.getvalue()


def analytic_report(table: ParityTable, primes) -> AnalyticReport:
    primes = sorted(int(p) for p in primes)
    smoother = LiouvilleSmoother(table, primes[-1] - 1)
    return AnalyticReport([analytic_record(p, smoother) for p in primes])
