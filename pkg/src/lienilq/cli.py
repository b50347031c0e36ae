"""Command-line front door: null-pair checks and scans, Hilbert series and
weight tables, named verifications, and cache management. All reports are
JSON with sorted keys, exact integers, rationals as "a/b" strings, and
timing isolated in a top-level "timing" field so payloads are
byte-reproducible."""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field

from . import __version__
from .errors import EngineError, InconsistencyError, ResourceGuardError
from .lcs import (ComponentStore, hilbert_q, lambda_dim, lambda_weights,
                  stabilization_window)
from .scalars import DEFAULT_PRIMES, EXACT, Mode, mod
from . import characters, fsforms, identities, presentation

EXIT_OK = 0
EXIT_INCONSISTENT = 1
EXIT_RESOURCE = 2
EXIT_USAGE = 3

MOD_SEMANTICS = ("membership mod p is a necessary condition; "
                 "non-membership mod p is strong evidence over the "
                 "rationals; exact mode certifies")


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    i: int | None = None
    m: int | None = None
    l: int | None = None
    max_sum: int | None = None
    max_degree: int | None = None
    name: str | None = None
    primes: list = field(default_factory=list)
    exact: bool = False
    exact_up_to: int = 7
    cache_dir: str | None = None
    jobs: int = 1
    max_component: int = math.factorial(10)
    force: bool = False
    output: str | None = None

    def modes(self, default_two_primes: bool = False) -> list:
        out = [mod(p) for p in self.primes]
        if self.exact:
            out.append(EXACT)
        if not out:
            if default_two_primes:
                out = [mod(p) for p in DEFAULT_PRIMES]
            else:
                out = [mod(DEFAULT_PRIMES[0])]
        return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _fmt_weights(table) -> dict:
    return {",".join(map(str, nu)): m
            for nu, m in sorted(table.entries.items())}


def _pair_payload(rep) -> dict:
    out = {
        "m": rep.m,
        "l": rep.l,
        "is_null": rep.is_null,
        "verdicts": dict(sorted(rep.verdicts.items())),
        "component_dim": rep.dim,
        "spanning_rank": rep.spanning_rank,
        "disagreement": rep.disagreement,
    }
    if rep.shortcut:
        out["shortcut"] = rep.shortcut
    if rep.parity_null is not None:
        out["parity_predicts_null"] = rep.parity_null
        out["agrees_with_parity"] = rep.agrees_with_parity
    return out


def cmd_nullpair(cfg: RunConfig, store: ComponentStore) -> tuple:
    rep = identities.check_null_pair(
        cfg.m, cfg.l, cfg.modes(default_two_primes=True), store=store,
        max_component=cfg.max_component, force=cfg.force)
    payload = _pair_payload(rep)
    payload["mode_semantics"] = MOD_SEMANTICS
    return payload, {"pair": rep.elapsed}, EXIT_OK


def cmd_scan(cfg: RunConfig, store: ComponentStore) -> tuple:
    reports = identities.scan_null_pairs(
        cfg.max_sum, cfg.modes(default_two_primes=True),
        exact_up_to=cfg.exact_up_to, store=store,
        max_component=cfg.max_component, force=cfg.force)
    payload = {
        "max_sum": cfg.max_sum,
        "pairs": [_pair_payload(r) for r in reports],
        "not_null_pairs": [[r.m, r.l] for r in reports if not r.is_null],
        "parity_conjecture_agreement": all(r.agrees_with_parity
                                           for r in reports),
        "mode_semantics": MOD_SEMANTICS,
    }
    timing = {f"{r.m},{r.l}": r.elapsed for r in reports}
    return payload, timing, EXIT_OK


def cmd_hilbert(cfg: RunConfig, store: ComponentStore) -> tuple:
    mode = cfg.modes()[0]
    series = hilbert_q(cfg.n, cfg.i, cfg.max_degree, mode, store=store)
    table = lambda_weights(cfg.n, cfg.i, cfg.max_degree, mode, store=store)
    dim, stabilized = lambda_dim(cfg.n, cfg.i, cfg.max_degree, mode,
                                 store=store)
    payload = {
        "n": cfg.n,
        "i": cfg.i,
        "max_degree": cfg.max_degree,
        "mode": mode.tag(),
        "series": list(series.coefficients),
        "lambda_weights": _fmt_weights(table),
        "lambda_dim": dim,
        "stabilized": stabilized,
        "stabilization_window": stabilization_window(cfg.n, cfg.i),
    }
    if mode.p is not None:
        payload["mode_semantics"] = MOD_SEMANTICS
    return payload, {}, EXIT_OK


def _verify_q_presentation(cfg, store, target):
    n = cfg.n or 2
    default_d = 7 if n == 2 else 6
    if target == 3:
        default_d = 6 if n == 2 else 5
    D = cfg.max_degree or default_d
    results = {}
    passed = True
    for mode in cfg.modes(default_two_primes=True):
        rep = presentation.verify_presentation(n, target, D, mode,
                                               store=store)
        results[mode.tag()] = {
            "passed": rep.passed,
            "records": [
                {"delta": list(r.delta), "dim": r.dim,
                 "rank_ideal": r.rank_ideal, "rank_m": r.rank_m,
                 "equal": r.equal}
                for r in rep.records],
            "witness": rep.witness,
            "witness_delta": (list(rep.witness_delta)
                              if rep.witness_delta else None),
        }
        passed = passed and rep.passed
    return {"name": f"q{target}-presentation", "n": n, "max_degree": D,
            "verified_up_to_degree": D, "passed": passed,
            "modes": results}


def _verify_fs(cfg, store):
    n = cfg.n or 2
    D = cfg.max_degree or (5 if n == 2 else 4)
    mode = cfg.modes()[0]
    rep = fsforms.fs_check(n, D, mode, store=store)
    return {"name": "fs-model", "n": n, "max_degree": D,
            "mode": mode.tag(),
            "passed": rep.passed,
            "associativity_ok": rep.associativity_ok,
            "relations_ok": rep.relations_ok,
            "dims": rep.dims, "quotient_dims": rep.quotient_dims,
            "dims_match": rep.dims_match,
            "failures": rep.failures}


def _verify_corollary(cfg, store):
    n = cfg.n or 2
    mode = cfg.modes()[0]
    rep = characters.verify_corollary_k3(n, mode, cfg.max_degree,
                                         store=store)
    return {"name": "corollary-k3", "n": n, "max_degree": rep.truncation,
            "mode": mode.tag(), "passed": rep.passed,
            "decomposition": {",".join(map(str, lam)): m
                              for lam, m in
                              sorted(rep.decomposition.multiplicities.items())},
            "expected": {"2,1": 1, "2,2": 1},
            "stabilized": rep.stabilized}


def _verify_gupta_levin(cfg, store):
    mode = cfg.modes()[0]
    checks = {}
    d6 = (1,) * 6
    checks["m3_m3_multilinear_a6"] = identities.check_gupta_levin(
        3, 3, d6, mode, store=store, max_component=cfg.max_component,
        force=cfg.force)
    checks["m2_m2_delta_2_2"] = identities.check_gupta_levin(
        2, 2, (2, 2), mode, store=store, max_component=cfg.max_component,
        force=cfg.force)
    return {"name": "gupta-levin", "mode": mode.tag(),
            "checks": checks, "passed": all(checks.values())}


def _verify_triple(cfg, store):
    mode = cfg.modes()[0]
    checks = {}
    checks["m2_m2_m3_multilinear_a7"] = identities.check_triple_bracket(
        2, 2, 3, (1,) * 7, mode, store=store,
        max_component=cfg.max_component, force=cfg.force)
    checks["m2_m2_m2_multilinear_a6"] = identities.check_triple_bracket(
        2, 2, 2, (1,) * 6, mode, store=store,
        max_component=cfg.max_component, force=cfg.force)
    return {"name": "triple-bracket", "mode": mode.tag(),
            "checks": checks, "passed": all(checks.values())}


def _verify_s_in_m4(cfg, store):
    from .lcs import member_of_m
    s = identities.s_element(1, 2, 3, 4, 5)
    ok = member_of_m(s, 4, EXACT, store=store)
    return {"name": "s-in-m4", "mode": "exact", "passed": ok}


def _verify_r_identity(cfg, store):
    import random
    rng = random.Random(2008)
    results = {"base": identities.verify_r_identity(1, 2, 3, 4, 5)}
    random_ok = True
    for _ in range(10):
        args = tuple(rng.randint(1, 5) for _ in range(5))
        random_ok = random_ok and identities.verify_r_identity(*args)
    results["random_tuples"] = random_ok
    return {"name": "r-identity", "mode": "exact",
            "checks": results, "passed": all(results.values())}


def _verify_four_term(cfg, store):
    from .ncpoly import NCPoly, commutator
    x = [None] + [NCPoly.generator(t, 5) for t in range(1, 6)]
    ok1 = identities.verify_four_term_identity(x[1], x[2], x[3], x[4])
    ok2 = identities.verify_four_term_identity(
        x[1], x[2], x[3], commutator(x[4], x[5]))
    return {"name": "four-term", "mode": "exact",
            "checks": {"generators": ok1, "bracket_fourth_argument": ok2},
            "passed": ok1 and ok2}


VERIFIERS = {
    "q3-presentation": lambda cfg, st: _verify_q_presentation(cfg, st, 3),
    "q4-presentation": lambda cfg, st: _verify_q_presentation(cfg, st, 4),
    "fs-model": _verify_fs,
    "corollary-k3": _verify_corollary,
    "gupta-levin": _verify_gupta_levin,
    "triple-bracket": _verify_triple,
    "s-in-m4": _verify_s_in_m4,
    "r-identity": _verify_r_identity,
    "four-term": _verify_four_term,
}


def cmd_verify(cfg: RunConfig, store: ComponentStore) -> tuple:
    t0 = time.time()
    payload = VERIFIERS[cfg.name](cfg, store)
    return payload, {"verify": time.time() - t0}, EXIT_OK


def cmd_cache(cfg: RunConfig, store: ComponentStore) -> tuple:
    cache_dir = cfg.cache_dir
    if not cache_dir:
        return ({"cache_dir": None, "files": 0,
                 "note": "no cache directory configured"}, {}, EXIT_OK)
    entries = []
    if os.path.isdir(cache_dir):
        entries = [f for f in os.listdir(cache_dir)
                   if f.startswith(("span_", "ann_"))]
    if cfg.name == "clear":
        for f in entries:
            os.remove(os.path.join(cache_dir, f))
        return ({"cache_dir": cache_dir, "removed": len(entries)}, {},
                EXIT_OK)
    return ({"cache_dir": cache_dir, "files": len(entries)}, {}, EXIT_OK)


def build_parser() -> _Parser:
    parser = _Parser(prog="lienilq",
                     description="exact computations in free associative "
                                 "algebras and their Lie nilpotent quotients")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--prime", type=int, action="append", default=[],
                       help="work mod this prime (repeatable)")
        p.add_argument("--exact", action="store_true",
                       help="also run in exact rational mode")
        p.add_argument("--cache-dir",
                       default=os.environ.get("LIENILQ_CACHE_DIR"),
                       help="directory for persisted bases "
                            "(env LIENILQ_CACHE_DIR)")
        p.add_argument("--jobs", type=int, default=1,
                       help="parallel workers for independent components")
        p.add_argument("--max-component", type=int,
                       default=math.factorial(10),
                       help="refuse components above this dimension")
        p.add_argument("--force", action="store_true",
                       help="override the component size guard")
        p.add_argument("--output", help="also write the JSON report here")

    p = sub.add_parser("nullpair", help="check one pair")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    common(p)

    p = sub.add_parser("scan", help="check all pairs with m+l <= max-sum")
    p.add_argument("--max-sum", type=int, required=True)
    p.add_argument("--exact-up-to", type=int, default=7,
                   help="add exact mode for pairs with m+l at most this")
    common(p)

    p = sub.add_parser("hilbert", help="quotient dimension series and "
                                       "finite-factor weights")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--max-degree", type=int, required=True)
    common(p)

    p = sub.add_parser("verify", help="named verification")
    p.add_argument("name", choices=sorted(VERIFIERS))
    p.add_argument("--n", type=int)
    p.add_argument("--max-degree", type=int)
    common(p)

    p = sub.add_parser("cache", help="cache management")
    p.add_argument("name", choices=["info", "clear"])
    common(p)
    return parser


def _config_from_args(args) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for attr in ("n", "i", "m", "l", "name", "max_degree", "jobs",
                 "max_component", "force", "output", "cache_dir", "exact"):
        if hasattr(args, attr):
            setattr(cfg, attr, getattr(args, attr))
    if hasattr(args, "max_sum"):
        cfg.max_sum = args.max_sum
    if hasattr(args, "exact_up_to"):
        cfg.exact_up_to = args.exact_up_to
    if hasattr(args, "prime"):
        cfg.primes = list(args.prime)
    return cfg


COMMANDS = {
    "nullpair": cmd_nullpair,
    "scan": cmd_scan,
    "hilbert": cmd_hilbert,
    "verify": cmd_verify,
    "cache": cmd_cache,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    cfg = _config_from_args(args)
    store = ComponentStore(cache_dir=cfg.cache_dir)
    t0 = time.time()
    try:
        payload, timing, code = COMMANDS[cfg.command](cfg, store)
    except ResourceGuardError as e:
        _emit({"command": cfg.command, "error": str(e),
               "kind": "resource-guard"}, {}, cfg)
        return EXIT_RESOURCE
    except (InconsistencyError,) as e:
        _emit({"command": cfg.command, "error": str(e),
               "kind": "inconsistency"}, {}, cfg)
        return EXIT_INCONSISTENT
    except (ValueError, EngineError) as e:
        _emit({"command": cfg.command, "error": str(e),
               "kind": "bad-arguments"}, {}, cfg)
        return EXIT_USAGE
    timing = dict(timing)
    timing["total"] = time.time() - t0
    _emit({"command": cfg.command, **payload}, timing, cfg)
    return code


def _emit(payload: dict, timing: dict, cfg: RunConfig):
    doc = dict(payload)
    doc["timing"] = {k: round(v, 3) for k, v in timing.items()}
    text = json.dumps(doc, sort_keys=True, indent=2)
    print(text)
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text + "\n")


if __name__ == "__main__":
    sys.exit(main())
