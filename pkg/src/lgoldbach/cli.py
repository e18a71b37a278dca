"""Command-line front end. Each subcommand wraps one module operation.

Exit codes: 0 success, 1 a check found violations that ``--expect-none``
said should not exist (or a built-in invariant failed), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import analytic, convolution, signature, spectrum
from .arith import (
    ParityTable,
    SignFunction,
    build_parity_table,
    is_prime,
    primes_up_to,
)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    parity: str | None = None
    out: str | None = None
    fmt: str = "csv"
    workers: int = 1
    expect_none: bool = False


@dataclass
class Outcome:
    text: str | bytes
    violated: bool = False  # a checker found violations
    broken: bool = False  # a built-in invariant failed: always exit 1
    note: str = ""


# --------------------------------------------------------------------------
# helpers


def _odd_prime(value: int, flag: str) -> int:
    if value < 3 or not is_prime(value):
        raise UsageError(f"{flag} must be an odd prime, got {value}")
    return value


def _table(cfg: RunConfig, need: int) -> ParityTable:
    if cfg.parity is None:
        raise UsageError("--parity is required for this subcommand")
    try:
        table = ParityTable.load(cfg.parity)
    except (OSError, ValueError) as exc:
        raise UsageError(f"--parity: cannot read {cfg.parity}: {exc}") from exc
    if table.limit < need:
        raise UsageError(f"--parity: table covers n <= {table.limit}, need {need}")
    return table


def _source(cfg: RunConfig, p: int, need: int) -> SignFunction:
    if cfg.params.get("source", "liouville") == "chi":
        return SignFunction.character(p)
    return SignFunction.liouville(_table(cfg, need))


def _write(cfg: RunConfig, payload: str | bytes) -> None:
    data = payload.encode() if isinstance(payload, str) else payload
    if cfg.out is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return
    target = Path(cfg.out)
    fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=f".{target.name}.")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# --------------------------------------------------------------------------
# subcommands


def cmd_sieve(cfg: RunConfig) -> Outcome:
    limit = cfg.params["limit"]
    if limit < 1:
        raise UsageError("--limit must be >= 1")
    if cfg.out is None:
        raise UsageError("--out is required for sieve")
    table = build_parity_table(limit, workers=cfg.workers)
    return Outcome(table.to_bytes(), note=f"sieved n <= {limit}")


def cmd_scan(cfg: RunConfig) -> Outcome:
    X = cfg.params["limit"]
    if X < 2:
        raise UsageError("--limit must be >= 2")
    rep = convolution.conv_scan(_table(cfg, X), X)
    N = rep.Ns
    L = rep.L[2:]
    broken = bool(((abs(L) > N - 1) | ((L - (N - 1)) % 2 != 0)).any())
    text = rep.to_json() if cfg.fmt == "json" else rep.to_csv()
    return Outcome(text, broken=broken, note=f"extremal N: {rep.extremal}")


def cmd_structure(cfg: RunConfig) -> Outcome:
    N = cfg.params["N"]
    if N < 2:
        raise UsageError("--N must be >= 2")
    table = _table(cfg, N)
    div = convolution.divisor_reduction_check(table, N)
    ext = convolution.extremal_structure_report(table, N)
    doc = {"divisor_reduction": {"N": N, "L_N": div.L_N, "rows": div.rows,
                                 "violations": div.violations},
           "extremal_structure": ext.as_dict()}
    return Outcome(json.dumps(doc, indent=2) + "\n", broken=bool(div.violations or ext.failures))


def cmd_spectrum(cfg: RunConfig) -> Outcome:
    p = _odd_prime(cfg.params["p"], "--p")
    f = _source(cfg, p, p - 1)
    return Outcome(spectrum.spectrum(f, p).to_json() + "\n")


def cmd_dilation(cfg: RunConfig) -> Outcome:
    p = _odd_prime(cfg.params["p"], "--p")
    d = cfg.params.get("d")
    if d is not None and not 1 <= d < p:
        raise UsageError(f"--d must lie in [1, {p - 1}]")
    f = _source(cfg, p, p - 1)
    spec = spectrum.spectrum(f, p)
    ds = [d] if d is not None else range(1, p)
    lines = ["p,d,sign,residual"]
    worst = 0.0
    for dd in ds:
        s = f(dd)
        r = spectrum.dilation_residual(spec, dd, s)
        worst = max(worst, r)
        lines.append(f"{p},{dd},{s},{r:.6e}")
    return Outcome("\n".join(lines) + "\n", violated=worst >= 1e-9 * p, note=f"max residual {worst:.3e}")


def cmd_signature(cfg: RunConfig) -> Outcome:
    P = cfg.params
    p = _odd_prime(P["p"], "--p")
    if not is_prime(P["q"]) or P["q"] >= p:
        raise UsageError(f"--q must be a prime below {p}")
    try:
        state = signature.PairState(p, P["q"], P["m"], P["j"])
    except ValueError as exc:
        raise UsageError(f"--m/--j: {exc}") from exc
    sig = signature.compute_signature(state)
    note = f"signature={sig.rs} terminal_m={sig.terminal_m}"
    return Outcome("\n".join(signature.trace_lines(sig)) + "\n", note=note)


def cmd_relations(cfg: RunConfig) -> Outcome:
    p = _odd_prime(cfg.params["p"], "--p")
    f = _source(cfg, p, 3 * p)
    reports = signature.relations_check(f, p)
    lines = [signature.REPORT_HEADER] + [r.csv_row() for r in reports]
    return Outcome("\n".join(lines) + "\n", violated=any(r.violations for r in reports))


def cmd_equivcond(cfg: RunConfig) -> Outcome:
    p = _odd_prime(cfg.params["p"], "--p")
    q = cfg.params.get("q")
    if q is not None and (not is_prime(q) or q >= p):
        raise UsageError(f"--q must be a prime below {p}")
    qs = [q] if q is not None else [int(x) for x in primes_up_to(p - 1)]
    f = _source(cfg, p, p * max(qs))
    reports = []
    for qq in qs:
        reports.append(signature.equivcond_report(f, p, qq))
        reports.append(signature.iteration_scan(f, p, qq))
    lines = [signature.REPORT_HEADER] + [r.csv_row() for r in reports]
    return Outcome("\n".join(lines) + "\n", violated=any(r.violations for r in reports))


def cmd_analytic(cfg: RunConfig) -> Outcome:
    pmin, pmax = cfg.params.get("pmin", 3), cfg.params["pmax"]
    if pmax < 3 or pmin > pmax:
        raise UsageError("--pmin/--pmax must satisfy 3 <= pmin <= pmax")
    if pmax > 10**6:
        raise UsageError("--pmax must be <= 10^6")
    primes = [int(p) for p in primes_up_to(pmax) if p >= max(pmin, 3)]
    if not primes:
        raise UsageError(f"no odd primes in [{pmin}, {pmax}]")
    rep = analytic.analytic_report(_table(cfg, primes[-1]), primes)
    worst_p, worst = rep.max_livigen_ratio
    broken = any(r.L1 <= 0 or r.S_lam >= r.p**0.5 for r in rep.records)
    if cfg.fmt == "json":
        doc = {"max_livigen_ratio": {"p": worst_p, "value": worst},
               "records": [r.__dict__ for r in rep.records]}
        text = json.dumps(doc) + "\n"
    else:
        text = rep.to_csv()
    return Outcome(text, broken=broken, note=f"max livigen_ratio {worst:.10g} at p={worst_p}")


def cmd_goldbach(cfg: RunConfig) -> Outcome:
    X = cfg.params["limit"]
    if X < 4:
        raise UsageError("--limit must be >= 4")
    results = convolution.goldbach_mm_scan(_table(cfg, X), X)
    misses = [r for r in results if r.pair is None]
    if cfg.fmt == "json":
        doc = {"limit": X, "checked": len(results), "with_pair": len(results) - len(misses),
               "misses": [asdict(m) for m in misses],
               "pairs": [[r.N, *r.pair] for r in results if r.pair]}
        text = json.dumps(doc) + "\n"
    else:
        rows = ["N,a,b"] + [f"{r.N},{r.pair[0]},{r.pair[1]}" if r.pair else f"{r.N},," for r in results]
        text = "\n".join(rows) + "\n"
    notes = [f"{len(results) - len(misses)} of {len(results)} even N have a minus-minus pair"]
    notes += [f"miss N={m.N}: L={m.L_N}, sum lambda={m.liouville_sum}, fallback holds={m.fallback_holds}"
              for m in misses]
    return Outcome(text, violated=bool(misses),
                   broken=any(not m.fallback_holds for m in misses), note="\n".join(notes))


COMMANDS = {
    "sieve": cmd_sieve,
    "scan": cmd_scan,
    "structure": cmd_structure,
    "spectrum": cmd_spectrum,
    "dilation": cmd_dilation,
    "signature": cmd_signature,
    "relations": cmd_relations,
    "equivcond": cmd_equivcond,
    "analytic": cmd_analytic,
    "goldbach-mm": cmd_goldbach,
}


def run(cfg: RunConfig) -> int:
    try:
        outcome = COMMANDS[cfg.command](cfg)
    except (UsageError, ValueError) as exc:
        # ValueError covers capacity and range errors raised by the modules
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    _write(cfg, outcome.text)
    if outcome.note:
        print(outcome.note, file=sys.stderr)
    if outcome.broken or (outcome.violated and cfg.expect_none):
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lgoldbach", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help_, *, parity=True, fmt=False, source=False, expect=False, out=True):
        sp = sub.add_parser(name, help=help_)
        if parity:
            sp.add_argument("--parity", help="parity table file (from `sieve`)")
        if out:
            sp.add_argument("--out", help="output path (default: stdout)")
        if fmt:
            sp.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
        if source:
            sp.add_argument("--source", choices=("liouville", "chi"), default="liouville",
                            help="lambda from --parity, or the quadratic character mod p")
        if expect:
            sp.add_argument("--expect-none", action="store_true",
                            help="exit 1 if any violation is found")
        sp.add_argument("--workers", type=int, default=1)
        return sp

    sp = add("sieve", "build a Liouville parity table file", parity=False)
    sp.add_argument("--limit", type=int, required=True)
    sp = add("scan", "L(N) for every 2 <= N <= limit", fmt=True)
    sp.add_argument("--limit", type=int, required=True)
    sp = add("structure", "divisor-reduction and extremal-structure report for one N")
    sp.add_argument("--N", type=int, required=True)
    sp = add("spectrum", "spectrum mod p as JSON [re, im] pairs", source=True)
    sp.add_argument("--p", type=int, required=True)
    sp = add("dilation", "dilation residuals S(d xi) - s S(xi)", source=True, expect=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--d", type=int)
    sp = add("signature", "trace the psi_r descent of one pair", parity=False)
    for flag in ("--p", "--q", "--m", "--j"):
        sp.add_argument(flag, type=int, required=True)
    sp = add("relations", "shift relations forced by an extremal p", source=True, expect=True)
    sp.add_argument("--p", type=int, required=True)
    sp = add("equivcond", "sign condition and iteration identity over pairs", source=True, expect=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--q", type=int)
    sp = add("analytic", "L(1, chi_p), smoothed sums and PV statistics per prime", fmt=True)
    sp.add_argument("--pmax", type=int, required=True)
    sp.add_argument("--pmin", type=int, default=3)
    sp = add("goldbach-mm", "least minus-minus pair for every even N", fmt=True, expect=True)
    sp.add_argument("--limit", type=int, required=True)
    return ap


_COMMON = {"command", "parity", "out", "fmt", "workers", "expect_none"}


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    d = vars(ns)
    return RunConfig(
        command=ns.command,
        params={k: v for k, v in d.items() if k not in _COMMON},
        parity=d.get("parity"),
        out=d.get("out"),
        fmt=d.get("fmt") or "csv",
        workers=d.get("workers", 1),
        expect_none=d.get("expect_none", False),
    )


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    return run(config_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
