"""Command-line entry point ``witt-charge``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from math import gcd

from . import __version__
from .errors import WittChargeError
from .exactnum import GaloisElem, set_precision
from .metric_group import a_p_representative, gauss_sum_n
from .so_odd import DEFAULT_RANK_CAP, build_category, fs_exponent, gauss_sum, sqrt_of_dim, xi1_closed
from .verify import SUITES, run_all, run_suite
from .witt import (
    DEFAULT_PHI_CAP,
    WittWord,
    Xi_eval,
    a_sequence,
    direct_central_charge,
    generator,
    ising_gauss_sum,
    kernel_test,
    word_modulus,
    word_signature_detail,
    xi1_of,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class Config:
    precision_start_bits: int = 64
    precision_cap_bits: int = 16384
    phi_cap: int = DEFAULT_PHI_CAP
    rank_cap_enumeration: int = DEFAULT_RANK_CAP
    output_format: str = "json"
    threads: int = 1
    timing: bool = True

    def __post_init__(self):
        if not 0 < self.precision_start_bits <= self.precision_cap_bits:
            raise ValueError("need 0 < precision start <= precision cap")
        if self.phi_cap < 1 or self.rank_cap_enumeration < 1 or self.threads < 1:
            raise ValueError("caps and thread count must be positive")
        if self.output_format not in ("json", "csv", "md"):
            raise ValueError(f"unknown format {self.output_format}")


class UsageError(Exception):
    pass


# -- output -----------------------------------------------------------------


def _cell(v) -> str:
    if isinstance(v, dict) and set(v) == {"order", "exp"}:
        return f"zeta({v['order']})^{v['exp']}"
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def render(data, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(data, indent=2, sort_keys=True) + "\n"
    rows = data if isinstance(data, list) else [data]
    cols: list[str] = []
    for row in rows:
        for k in row:
            if k not in cols:
                cols.append(k)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for row in rows:
            w.writerow([_cell(row.get(c)) for c in cols])
        return buf.getvalue()
    lines = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
    for row in rows:
        lines.append("| " + " | ".join(_cell(row.get(c)).replace("|", "\\|") for c in cols) + " |")
    return "\n".join(lines) + "\n"


# -- commands ---------------------------------------------------------------


def _rank(r: int) -> int:
    if r < 1:
        raise UsageError("rank must be positive")
    return r


def cmd_category(args, cfg: Config):
    r = _rank(args.rank)
    if args.closed_form:
        N, exact = fs_exponent(r, cfg.rank_cap_enumeration)
        return {
            "r": r,
            "xi1": xi1_closed(r).to_json(),
            "sqrt_dim": sqrt_of_dim(r).to_json(),
            "fs_exponent": N,
            "fs_exact": exact,
        }, EXIT_OK
    if r > cfg.rank_cap_enumeration:
        raise UsageError(f"rank {r} exceeds the enumeration cap {cfg.rank_cap_enumeration}; use --closed-form")
    return build_category(r).to_json(full=args.full), EXIT_OK


def cmd_signature(args, cfg: Config):
    r = _rank(args.rank)
    if args.modulus is not None and gcd(args.k, args.modulus) != 1:
        raise UsageError(f"k = {args.k} is not a unit mod {args.modulus}")
    s, path = generator(f"C{r}").signature(args.k)
    return {"rank": r, "k": args.k, "signature": s, "path": path}, EXIT_OK


def cmd_gauss_sum(args, cfg: Config):
    g = generator(args.target)
    if g.kind == "so_odd":
        if g.param > cfg.rank_cap_enumeration:
            raise UsageError(f"rank {g.param} exceeds the enumeration cap")
        tau = gauss_sum(build_category(g.param), args.n)
    elif g.kind == "ising":
        tau = ising_gauss_sum(args.n)
    else:
        tau = gauss_sum_n(a_p_representative(g.param).group, args.n)
    return {"target": g.label, "n": args.n, "tau": tau.to_json()}, EXIT_OK


def cmd_central_charge(args, cfg: Config):
    g = generator(args.target)
    if g.kind == "so_odd" and g.param > cfg.rank_cap_enumeration:
        raise UsageError(f"rank {g.param} exceeds the enumeration cap")
    xi = direct_central_charge(g, args.n)
    return {"target": g.label, "n": args.n, "xi": xi.to_json()}, EXIT_OK


def cmd_witt_eval(args, cfg: Config):
    word = WittWord.parse(args.word)
    M = word_modulus(word)
    out = {"word": str(word), "modulus": M, "xi1": xi1_of(word).to_json()}
    if args.k is not None:
        if gcd(args.k, M) != 1:
            raise UsageError(f"k = {args.k} is not a unit mod {M}")
        sign, paths = word_signature_detail(word, args.k, M)
        out.update({
            "k": args.k % M,
            "Xi": Xi_eval(word, GaloisElem(M, args.k)).to_json(),
            "signature": sign,
            "paths": paths,
        })
    return out, EXIT_OK


def cmd_witt_kernel(args, cfg: Config):
    word = WittWord.parse(args.word)
    res = kernel_test(word, mode=args.mode, phi_cap=cfg.phi_cap, z=args.z)
    return res.to_json(), EXIT_OK


def cmd_sequence(args, cfg: Config):
    if args.z < 0 or args.count < 1:
        raise UsageError("need z >= 0 and count >= 1")
    seq = a_sequence(args.z, args.count, args.primes)
    l = 4 * args.z + 2
    return {"z": args.z, "l": l, "modulus": 8 * l + 2, "residue": 2 * l + 1,
            "primes_only": args.primes, "terms": seq}, EXIT_OK


def cmd_verify(args, cfg: Config):
    if args.suite == "all":
        results = run_all(cfg.threads, depth=args.depth, z=args.z)
    else:
        kw = {"depth": args.depth, "z": args.z} if args.suite == "structure" else {}
        results = [run_suite(args.suite, cfg.threads, **kw)]
    rows = [r.to_json(timing=cfg.timing) for r in results]
    ok = all(r.passed for r in results)
    if cfg.output_format == "json":
        data = {"passed": ok, "suites": rows}
    else:
        data = [{k: v for k, v in row.items() if k != "details"} for row in rows]
    return data, EXIT_OK if ok else EXIT_FAIL


# -- parser -----------------------------------------------------------------


def _env_threads() -> int:
    raw = os.environ.get("WITT_CHARGE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


GLOBAL_DEFAULTS = {
    "format": "json",
    "precision": 64,
    "precision_cap": 16384,
    "threads": None,
    "phi_cap": DEFAULT_PHI_CAP,
    "rank_cap": DEFAULT_RANK_CAP,
    "no_timing": False,
}


def _global_options(suppress: bool) -> argparse.ArgumentParser:
    # accepted both before and after the subcommand
    g = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS if suppress else None)
    g.add_argument("--format", choices=["json", "csv", "md"])
    g.add_argument("--precision", type=int, metavar="BITS", help="starting precision for certified signs")
    g.add_argument("--precision-cap", type=int, metavar="BITS")
    g.add_argument("--threads", type=int, help="worker threads (default: $WITT_CHARGE_THREADS or 1)")
    g.add_argument("--phi-cap", type=int, help="largest phi(M) for exhaustive kernel tests")
    g.add_argument("--rank-cap", type=int, help="largest rank enumerated simple by simple")
    g.add_argument("--no-timing", action="store_true", help="omit wall-clock timings for byte-stable output")
    return g


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="witt-charge",
        description="Exact central charges and Witt-class invariants.",
        parents=[_global_options(False)],
    )
    p.set_defaults(**GLOBAL_DEFAULTS)
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    common = _global_options(True)

    c = sub.add_parser("category", parents=[common], help="invariants of so(2r+1) at level 2r+1")
    c.add_argument("rank", type=int)
    c.add_argument("--full", action="store_true", help="include per-simple data")
    c.add_argument("--closed-form", action="store_true", help="closed forms only, no enumeration")
    c.set_defaults(func=cmd_category)

    s = sub.add_parser("signature", parents=[common], help="sign of sigma_k(sqrt dim) for C_r")
    s.add_argument("--rank", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--modulus", type=int)
    s.set_defaults(func=cmd_signature)

    g = sub.add_parser("gauss-sum", parents=[common], help="tau_n of a generator (C<r>, I, Ap<p>)")
    g.add_argument("target")
    g.add_argument("--n", type=int, default=1)
    g.set_defaults(func=cmd_gauss_sum)

    cc = sub.add_parser("central-charge", parents=[common], help="xi_n of a generator (C<r>, I, Ap<p>)")
    cc.add_argument("target")
    cc.add_argument("--n", type=int, default=1)
    cc.set_defaults(func=cmd_central_charge)

    w = sub.add_parser("witt", parents=[common], help="Witt-word calculus")
    wsub = w.add_subparsers(dest="witt_command", required=True)
    we = wsub.add_parser("eval", parents=[common], help="xi_1 and optionally Xi(sigma_k) of a word")
    we.add_argument("word")
    we.add_argument("--k", type=int)
    we.set_defaults(func=cmd_witt_eval)
    wk = wsub.add_parser("kernel", parents=[common], help="test whether a word lies in the kernel of Xi")
    wk.add_argument("word")
    wk.add_argument("--mode", choices=["exhaustive", "certify"], default="exhaustive")
    wk.add_argument("--z", type=int, default=0)
    wk.set_defaults(func=cmd_witt_kernel)

    q = sub.add_parser("sequence", parents=[common], help="greedy coprime sequence for parameter z")
    q.add_argument("--z", type=int, default=0)
    q.add_argument("--count", type=int, default=11)
    q.add_argument("--primes", action="store_true")
    q.set_defaults(func=cmd_sequence)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES) + ["all"])
    v.add_argument("--depth", type=int, default=3)
    v.add_argument("--z", type=int, default=0)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = Config(
            precision_start_bits=args.precision,
            precision_cap_bits=args.precision_cap,
            phi_cap=args.phi_cap,
            rank_cap_enumeration=args.rank_cap,
            output_format=args.format,
            threads=args.threads if args.threads is not None else _env_threads(),
            timing=not args.no_timing,
        )
        set_precision(cfg.precision_start_bits, cfg.precision_cap_bits)
        data, code = args.func(args, cfg)
    except (UsageError, WittChargeError, ValueError, KeyError) as exc:
        print(f"witt-charge: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(render(data, cfg.output_format))
    return code


if __name__ == "__main__":
    sys.exit(main())
