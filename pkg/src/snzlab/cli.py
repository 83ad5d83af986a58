"""Command-line entry point.

Exit codes: 0 verified/ok, 1 refuted (counterexample or failed check),
2 malformed input or other error, 3 indeterminate (budget exhausted).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import charge, extension, lemmas, verifier
from .lang import ClopenSyntaxError, format_set, parse_set
from .numerics import int_from_str

log = logging.getLogger("snzlab")

EXIT_OK, EXIT_REFUTED, EXIT_ERROR, EXIT_INDETERMINATE = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    strategy: str = "exhaustive"
    t_max: int = 0
    jobs: int = 1
    budget_ms: int | None = None
    deterministic: bool = False
    p_path: str | None = None
    out_path: str | None = None

    def __post_init__(self):
        if self.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        if self.budget_ms is not None and self.budget_ms < 0:
            raise UsageError("--budget-ms must be >= 0")


def _load_p(arg: str) -> list[int]:
    """A p-sequence JSON file, or an inline list such as ``1,-1,2`` / ``(1,1)``."""
    if os.path.exists(arg):
        with open(arg) as fh:
            return list(charge.load_pseq(fh.read()).values)
    text = arg.strip().strip("()[]")
    try:
        vals = [int_from_str(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--p: {arg!r} is neither a file nor a comma-separated integer list")
    if not vals:
        raise UsageError("--p: empty sequence")
    return vals


def _emit(obj, out_path: str | None = None):
    text = json.dumps(obj, indent=2) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    sys.stdout.write(text)


def _read_expr(args) -> str:
    if args.expr_file:
        with open(args.expr_file) as fh:
            return fh.read()
    if args.expr is None:
        raise UsageError("measure needs an expression or --expr-file")
    return args.expr


# -- subcommands -----------------------------------------------------------

def cmd_measure(args) -> int:
    u = parse_set(_read_expr(args))
    p = _load_p(args.p)
    value = charge.charge_of(u, p)
    if args.json:
        wv = charge.weight_vector(u)
        _emit({"schema": "snzlab/1", "set": format_set(u), "support": list(u.support),
               "w": [str(x) for x in wv.w], "charge": str(value)}, args.out)
    else:
        print(value)
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = RunConfig("verify-snz", args.strategy, args.t_max, args.jobs,
                    args.budget_ms, args.deterministic, args.p, args.out)
    p = _load_p(cfg.p_path)
    if cfg.t_max < 0:
        raise UsageError("--t-max must be >= 0")
    if len(p) < cfg.t_max + 1:
        raise UsageError(f"--t-max {cfg.t_max} needs p_0..p_{cfg.t_max}; got {len(p)} terms")
    cert = verifier.verify_range(p, cfg.t_max, cfg.strategy, jobs=cfg.jobs,
                                 budget_ms=cfg.budget_ms,
                                 deterministic=cfg.deterministic)
    _emit(cert.to_json(), cfg.out_path)
    return {"ok": EXIT_OK, "counterexample": EXIT_REFUTED}.get(cert.verdict, EXIT_INDETERMINATE)


def cmd_recheck(args) -> int:
    with open(args.cert) as fh:
        cert = json.load(fh)
    p = _load_p(args.p) if args.p else [int_from_str(x) for x in cert["p"]]
    ok = verifier.recheck_certificate(cert, p, strategy=args.strategy)
    _emit({"schema": "snzlab/1", "recheck": "valid" if ok else "invalid",
           "p_digest": cert.get("p_digest")})
    return EXIT_OK if ok else EXIT_REFUTED


def cmd_gen(args) -> int:
    if not args.greedy:
        raise UsageError("gen-pseq currently supports --greedy only")
    seq = charge.GreedyMinimal(args.t_horizon, strategy=args.strategy)
    try:
        values = seq.terms(args.t_horizon + 1)
    except charge.GreedyBudgetExceeded as exc:
        log.error("%s", exc)
        return EXIT_INDETERMINATE
    _emit(charge.dump_pseq(values, seq.provenance()), args.out)
    return EXIT_OK


def cmd_growth(args) -> int:
    p = _load_p(args.p)
    g = charge.GrowthSpec.parse(args.g)
    k_max = len(p) - 1 if args.k_max is None else args.k_max
    if k_max >= len(p):
        raise UsageError(f"--k-max {k_max} exceeds the sequence length {len(p)}")
    rows = charge.check_growth(p, g, k_max)
    _emit({"schema": "snzlab/1", "growth": g.name, "rows": rows})
    return EXIT_OK if all(r["ok"] for r in rows) else EXIT_REFUTED


def _sample_ws(t: int, n: int, seed: int):
    rng = random.Random(seed)
    radices = verifier.box_radices(t)
    basis = lemmas.build_dual_basis(t).u
    ws = [tuple(u) for u in basis]
    while len(ws) < t + 1 + n:
        w = tuple(rng.randrange(r) for r in radices)
        if any(w):
            ws.append(w)
    return ws


def cmd_lemmas(args) -> int:
    t, s = args.t, args.s
    if t < 0 or (s is not None and s < 0):
        raise UsageError("--t and --s must be nonnegative")
    checks: list[lemmas.Check] = [
        lemmas.Check("dual_basis", {"t": t}, lemmas.check_dual_basis(t)),
    ]
    if t >= 1:
        checks.append(lemmas.check_sandwich(t, t if s is None else min(s, t)))
    if s is not None:
        if s >= 1 and t >= 4 * (s + 2) ** 2:
            checks.append(lemmas.check_vandermonde_error(t, s))
        else:
            log.info("vandermonde check skipped: needs s >= 1 and t >= 4(s+2)^2")
        if s >= 1:
            checks.extend(lemmas.q_spectral_report(s))
        if t <= 20:
            checks.extend(lemmas.check_bbound(t, _sample_ws(t, 20, args.seed)))
    _emit([c.to_json() for c in checks], args.out)
    return EXIT_OK if all(c.ok for c in checks) else EXIT_REFUTED


def cmd_demo_chain(args) -> int:
    rs = args.r or ["-1", "0", "1/3", "1/2", "2"]
    _emit(extension.demo_chain([Fraction(x) for x in rs]), args.out)
    return EXIT_OK


def cmd_demo_evens(args) -> int:
    _emit(extension.evens_extension_witness(args.e).to_json(), args.out)
    return EXIT_OK


def cmd_demo_obstruction(args) -> int:
    values = [int_from_str(v) for v in args.values]
    _emit(extension.build_obstruction(args.a, values).to_json(), args.out)
    return EXIT_OK


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="snzlab", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="cmd", required=True)

    def with_out(sp):
        sp.add_argument("--out", help="also write the JSON output to this file")
        return sp

    sp = with_out(sub.add_parser("measure", help="charge of a clopen-set expression"))
    sp.add_argument("expr", nargs="?")
    sp.add_argument("--expr-file")
    sp.add_argument("--p", required=True, help="p-sequence JSON file or inline list")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_measure)

    sp = with_out(sub.add_parser("verify-snz", help="strict-nonzeroness search"))
    sp.add_argument("--p", required=True)
    sp.add_argument("--t-max", type=int, required=True)
    sp.add_argument("--strategy", choices=verifier.STRATEGIES, default="exhaustive")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--budget-ms", type=int)
    sp.add_argument("--deterministic", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("recheck", help="re-validate a verify-snz certificate")
    sp.add_argument("--cert", required=True)
    sp.add_argument("--p")
    sp.add_argument("--strategy", choices=verifier.STRATEGIES, default="mitm")
    sp.set_defaults(func=cmd_recheck)

    sp = with_out(sub.add_parser("gen-pseq", help="generate a p-sequence"))
    sp.add_argument("--greedy", action="store_true")
    sp.add_argument("--t-horizon", type=int, required=True)
    sp.add_argument("--strategy", choices=verifier.STRATEGIES, default="mitm")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("check-growth", help="growth condition per index")
    sp.add_argument("--p", required=True)
    sp.add_argument("--g", default="default",
                    help="'default' (log2 g = (100k)^10), 'log2:<expr in k>' or '<expr in k>', e.g. 2^k")
    sp.add_argument("--k-max", type=int)
    sp.set_defaults(func=cmd_growth)

    sp = with_out(sub.add_parser("check-lemmas", help="exact lemma checks"))
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--s", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_lemmas)

    sp = with_out(sub.add_parser("demo-chain", help="chain A_r of subsets of N"))
    sp.add_argument("--r", nargs="+", help="rationals such as 1/3 -2 5/7")
    sp.set_defaults(func=cmd_demo_chain)

    sp = with_out(sub.add_parser("demo-evens", help="no SNZ extension to the evens"))
    sp.add_argument("--e", type=int, required=True, help="hypothetical charge of E")
    sp.set_defaults(func=cmd_demo_evens)

    sp = with_out(sub.add_parser("demo-obstruction", help="residue-class obstruction"))
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--values", nargs="+", required=True)
    sp.set_defaults(func=cmd_demo_obstruction)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except ClopenSyntaxError as exc:
        print(f"snzlab: syntax error: {exc}", file=sys.stderr)
    except (UsageError, ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"snzlab: error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
