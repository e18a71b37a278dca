"""The pair-descent engine behind the dilation argument.

A pair (m, j) with 1 <= m < p, 0 <= j < q is classified by where m + jp
falls among the points pq/r. The map psi_r sends a pair of class r to one of
strictly larger class with m' + j'p = pq - r(m + jp), so iterating it always
reaches j = 0. The sequence of classes visited is the pair's signature.

All rounding (ceil(rm/p), the fractional part {rm/p}) is done with integer
quotient/remainder so the identities hold exactly.

The checkers at the bottom count violations of identities that hold for an
extremal prime p. For the quadratic character they hold unconditionally, so
chi_p is the exact oracle; for lambda they usually fail.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import SignFunction, is_prime


class BoundaryError(ValueError):
    """m + jp landed exactly on some pq/r: impossible for prime p, q."""


@dataclass(frozen=True)
class PairState:
    p: int
    q: int
    m: int
    j: int

    def __post_init__(self):
        if not 1 <= self.m < self.p:
            raise ValueError(f"m={self.m} outside [1, {self.p - 1}]")
        if not 0 <= self.j < self.q:
            raise ValueError(f"j={self.j} outside [0, {self.q - 1}]")
        if self.q >= self.p:
            raise ValueError(f"need q < p, got q={self.q}, p={self.p}")

    @property
    def value(self) -> int:
        return self.m + self.j * self.p


@dataclass(frozen=True)
class Signature:
    rs: tuple[int, ...]
    terminal_m: int
    trajectory: tuple[PairState, ...]  # initial state first, terminal last


def checked_state(p: int, q: int, m: int, j: int) -> PairState:
    """PairState with primality of p and q verified."""
    if p < 3 or not is_prime(p):
        raise ValueError(f"p={p} is not an odd prime")
    if not is_prime(q):
        raise ValueError(f"q={q} is not prime")
    return PairState(p, q, m, j)


def classify(state: PairState) -> int:
    """The r in [1, q] with pq/(r+1) < m+jp < pq/r, or q when j = 0."""
    if state.j == 0:
        return state.q
    pq, v = state.p * state.q, state.value
    r, rem = divmod(pq, v)
    if rem == 0:
        raise BoundaryError(f"m+jp={v} divides pq={pq}")
    return r


def psi(r: int, state: PairState) -> PairState:
    p, q, m, j = state.p, state.q, state.m, state.j
    if r >= q or classify(state) != r:
        raise ValueError(f"psi_{r} applied to {state}, which has class {classify(state)}")
    ceil_rm = -(-r * m // p)
    return PairState(p, q, ceil_rm * p - r * m, q - j * r - ceil_rm)


def compute_signature(state: PairState) -> Signature:
    rs, traj = [], [state]
    while state.j != 0:
        if len(rs) >= state.q - 1:
            raise RuntimeError(f"signature of {traj[0]} did not terminate within q-1 steps")
        r = classify(state)
        state = psi(r, state)
        rs.append(r)
        traj.append(state)
    return Signature(tuple(rs), state.m, tuple(traj))


def residue_rep(r: int, m: int, p: int) -> int:
    """p {rm/p}, i.e. rm reduced into [1, p-1]."""
    x = r * m % p
    if x == 0:
        raise ValueError(f"p={p} divides r*m={r * m}")
    return x


def trace_lines(sig: Signature) -> list[str]:
    """CSV trace, one row per state: step,r,m,j,m_plus_jp.

    ``r`` is the class of that state (q for the terminal one).
    """
    rows = ["step,r,m,j,m_plus_jp"]
    for i, s in enumerate(sig.trajectory):
        rows.append(f"{i},{classify(s)},{s.m},{s.j},{s.value}")
    return rows


# --------------------------------------------------------------------------
# conditional-identity checkers


@dataclass
class ViolationReport:
    p: int
    q: int | None
    lemma: str
    violations: int
    first_witness: str | None = None
    checked: int = 0

    def csv_row(self) -> str:
        q = "" if self.q is None else self.q
        w = "" if self.first_witness is None else self.first_witness
        return f"{self.p},{q},{self.lemma},{self.violations},{w}"


REPORT_HEADER = "p,q,lemma,violations,first_witness"


def _table(f: SignFunction, upto: int) -> list[int]:
    # index n -> f(n); index 0 unused
    return [0] + f.values(1, upto).tolist()


def relations_check(f: SignFunction, p: int) -> list[ViolationReport]:
    """The three shifts forced on an extremal p, checked for every m < p:
    (a) f(p+m) = f(m) for odd m; (b) f(2p+m) = f(m) for m = p mod 3;
    (c) f(2p-m) = f(p-1) f(m) for m = 2p mod 3."""
    v = _table(f, 3 * p)
    found = {"a": [], "b": [], "c": []}
    checked = dict.fromkeys(found, 0)
    for m in range(1, p):
        if m % 2 == 1:
            checked["a"] += 1
            if v[p + m] != v[m]:
                found["a"].append(m)
        if (m - p) % 3 == 0:
            checked["b"] += 1
            if v[2 * p + m] != v[m]:
                found["b"].append(m)
        if (m - 2 * p) % 3 == 0:
            checked["c"] += 1
            if v[2 * p - m] != v[p - 1] * v[m]:
                found["c"].append(m)
    return [
        ViolationReport(p, None, f"relations_{k}", len(bad), f"m={bad[0]}" if bad else None, checked[k])
        for k, bad in found.items()
    ]


def periodicity_check(f: SignFunction, p: int, r: int) -> int:
    """Number of m in [1, p-1] with f(rm mod p) != f(r) f(m)."""
    if not 1 <= r < p:
        raise ValueError(f"r={r} outside [1, {p - 1}]")
    v = _table(f, p - 1)
    return sum(1 for m in range(1, p) if v[residue_rep(r, m, p)] != v[r] * v[m])


@dataclass(frozen=True)
class IdentityCheck:
    lhs: int
    rhs: int
    equal: bool


def iteration_identity_check(f: SignFunction, state: PairState) -> IdentityCheck:
    """f(m) f(m+jp) against the product of f(m_i r_{i+1}) f(r_{i+1} m_i mod p)
    along the signature trajectory."""
    p, q = state.p, state.q
    if state.value % q:
        raise ValueError(f"q={q} does not divide m+jp={state.value}")
    lhs = f(state.m) * f(state.value)
    sig = compute_signature(state)
    rhs = 1
    for s, r in zip(sig.trajectory, sig.rs):
        rhs *= f(s.m * r) * f(residue_rep(r, s.m, p))
    return IdentityCheck(lhs, rhs, lhs == rhs)


def qualifying_pairs(p: int, q: int):
    """All (m, j), 1 <= m < p, 0 <= j < q, with m = -jp (mod q)."""
    for j in range(q):
        for m in range(1, p):
            if (m + j * p) % q == 0:
                yield m, j


def iteration_scan(f: SignFunction, p: int, q: int) -> ViolationReport:
    bad, n = [], 0
    for m, j in qualifying_pairs(p, q):
        n += 1
        if not iteration_identity_check(f, PairState(p, q, m, j)).equal:
            bad.append((m, j))
    w = f"m={bad[0][0]};j={bad[0][1]}" if bad else None
    return ViolationReport(p, q, "iteration", len(bad), w, n)


def equivcond_report(f: SignFunction, p: int, q: int) -> ViolationReport:
    v = _table(f, p * q)
    bad, n = [], 0
    for m, j in qualifying_pairs(p, q):
        n += 1
        if v[m] * v[m + j * p] != 1:
            bad.append((m, j))
    w = f"m={bad[0][0]};j={bad[0][1]}" if bad else None
    return ViolationReport(p, q, "equivcond", len(bad), w, n)


def equivcond_scan(f: SignFunction, p: int, q: int) -> int:
    """Pairs with m = -jp (mod q) where f(m) f(m+jp) != +1."""
    return equivcond_report(f, p, q).violations
