"""Command-line front end.

Exit codes: 0 success or every check passed, 1 at least one verification
failed (the report is still printed), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path

from blockerlab import blocker as order
from blockerlab import clutter as cl
from blockerlab import io
from blockerlab.antichains import DEFAULT_ENUMERATION_LIMIT, enumerate_antichains, make_antichain
from blockerlab.bridge import BOOLEAN_LIMIT, boolean_lattice, cross_check
from blockerlab.errors import BlockerLabError
from blockerlab.generators import random_bounded_poset
from blockerlab.labels import parse_label_list
from blockerlab.maps import (
    blocker_instance,
    check_beta_condition,
    check_gamma_extensive,
    check_hypothesis_bdb,
    check_hypothesis_bgb,
    check_order_preserving,
    check_order_reversing,
    check_triple_beta,
    sweep_sandwich_theorem,
    verify_sandwich_theorem,
)
from blockerlab.report import VerificationReport, combine

LIMIT_ENV = "BLOCKERLAB_LIMIT_ELEMENTS"

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    subverb: str
    inputs: list[str] = field(default_factory=list)
    seed: int = 0
    poset_limit: int = DEFAULT_ENUMERATION_LIMIT
    boolean_limit: int = BOOLEAN_LIMIT
    format: str = "text"


class Output:
    """Collects the run's result; JSON mode prints exactly one document on stdout."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.document = None
        self.status = EXIT_OK

    def text(self, line: str = ""):
        print(line, file=sys.stderr if self.fmt == "json" else sys.stdout)

    def result(self, document, lines: list[str]):
        self.document = document
        for line in lines:
            self.text(line)

    def report(self, rep: VerificationReport, extra_lines: list[str] = ()):
        if rep.failed:
            self.status = EXIT_FAIL
        self.result(rep.to_json(), [rep.summary(), *extra_lines])

    def reports(self, reps: list[VerificationReport]):
        if any(r.failed for r in reps):
            self.status = EXIT_FAIL
        self.result([r.to_json() for r in reps], [r.summary() for r in reps])

    def flush(self):
        if self.fmt == "json" and self.document is not None:
            print(json.dumps(self.document, indent=2))


def _env_limit() -> int:
    raw = os.environ.get(LIMIT_ENV)
    if raw is None:
        return DEFAULT_ENUMERATION_LIMIT
    try:
        return int(raw)
    except ValueError:
        raise BlockerLabError(f"{LIMIT_ENV} must be an integer, got {raw!r}") from None


# -- clutter ---------------------------------------------------------------


def _all_subsets(labels):
    return [list(c) for k in range(len(labels) + 1) for c in combinations(labels, k)]


def _need(value, flag: str, subverb: str):
    if value is None:
        raise BlockerLabError(f"'{subverb}' needs {flag}")
    return value


def run_clutter(args, cfg: RunConfig, out: Output):
    c = io.clutter_from_json(io.read_json(args.file))
    x = parse_label_list(args.x) if args.x is not None else None
    sv = cfg.subverb
    if sv == "blocker":
        b = cl.blocker(c)
        out.result(io.clutter_to_json(b), [str(b)])
    elif sv in ("delete", "contract"):
        fn = cl.delete if sv == "delete" else cl.contract
        r = fn(c, _need(x, "--x", sv))
        out.result(io.clutter_to_json(r), [f"{r}  (ground {{{','.join(r.ground)}}})"])
    elif sv == "verify-involution":
        out.report(cl.verify_involution(c))
    elif sv == "verify-seymour":
        xs = _all_subsets(c.ground.elements) if args.all else [_need(x, "--x or --all", sv)]
        out.report(combine("seymour", (cl.verify_seymour(c, xx) for xx in xs)))


# -- poset -----------------------------------------------------------------


def _antichain_arg(p, args, sv):
    return make_antichain(p, parse_label_list(_need(args.antichain, "--antichain", sv)))


def run_poset(args, cfg: RunConfig, out: Output):
    p = io.poset_from_json(io.read_json(args.file), strict_bounded=args.strict_bounded)
    sv = cfg.subverb
    x = order.atom_subset(p, parse_label_list(args.x)) if args.x is not None else None
    if sv == "antichains":
        carrier = enumerate_antichains(p, cfg.poset_limit)
        out.result({"count": len(carrier), "antichains": [a.members for a in carrier]},
                   [f"{len(carrier)} antichains"] + [str(a) for a in carrier])
    elif sv == "bmap":
        r = order.bmap(p, _antichain_arg(p, args, sv))
        out.result(io.antichain_to_json(r), [str(r)])
    elif sv in ("delete", "contract"):
        fn = order.delete if sv == "delete" else order.contract
        r = fn(p, _antichain_arg(p, args, sv), _need(x, "--x", sv))
        out.result(io.antichain_to_json(r), [str(r)])
    elif sv in ("verify-lemma", "verify-corollary"):
        relation = sv.removeprefix("verify-")
        if args.all:
            out.report(order.sweep(p, relation, cfg.poset_limit))
        else:
            fn = order.verify_lemma if relation == "lemma" else order.verify_corollary
            out.report(fn(p, _antichain_arg(p, args, sv), _need(x, "--x or --all", sv)))
    elif sv == "verify-triple":
        if args.all:
            out.report(order.sweep(p, "triple_bmap", cfg.poset_limit))
        else:
            out.report(order.verify_triple_bmap(p, _antichain_arg(p, args, sv)))
    elif sv == "verify-operator-laws":
        if args.all:
            out.report(order.sweep(p, "operator_laws", cfg.poset_limit))
        else:
            out.report(order.verify_operator_laws(p, _need(x, "--x or --all", sv), cfg.poset_limit))


# -- maps ------------------------------------------------------------------


def _load_maps(args):
    p = io.poset_from_json(io.read_json(args.poset), bounded=False) if args.poset else None
    maps = {}
    for name in ("beta", "delta", "gamma"):
        path = getattr(args, name)
        if path is not None:
            maps[name] = io.map_from_json(io.read_json(path), p)
            p = p or maps[name].poset
    return p, maps


def run_maps(args, cfg: RunConfig, out: Output):
    sv = cfg.subverb
    if sv == "sweep":
        rep, stats = sweep_sandwich_theorem(args.size, args.count, cfg.seed)
        lines = [f"{k}: {v}" for k, v in stats.items()]
        out.report(rep, lines)
        return
    if sv == "verify-theorem" and args.blocker_x is not None:
        P = io.poset_from_json(io.read_json(_need(args.poset, "a poset file", sv)))
        _, beta, delta, gamma = blocker_instance(P, parse_label_list(args.blocker_x), cfg.poset_limit)
        rep = verify_sandwich_theorem(beta, delta, gamma)
        out.report(rep, [f"asserted: {', '.join(rep.details['asserted']) or 'nothing'}",
                         f"side conditions: {rep.details['side_conditions']}",
                         f"hypotheses: {rep.details['hypotheses']}"])
        return
    _, maps = _load_maps(args)
    if sv == "check":
        if not maps:
            raise BlockerLabError("'check' needs at least one of --beta, --delta, --gamma")
        reps = []
        if "beta" in maps:
            reps += [check_order_reversing(maps["beta"]), check_beta_condition(maps["beta"])]
            if all(r.passed for r in reps):
                reps.append(check_triple_beta(maps["beta"]))
        if "delta" in maps:
            reps.append(check_order_preserving(maps["delta"]))
        if "gamma" in maps:
            reps += [check_order_preserving(maps["gamma"]), check_gamma_extensive(maps["gamma"])]
        if len(maps) == 3:
            reps += [check_hypothesis_bdb(maps["beta"], maps["delta"], maps["gamma"]),
                     check_hypothesis_bgb(maps["beta"], maps["delta"], maps["gamma"])]
        out.reports(reps)
    elif sv == "verify-theorem":
        missing = [n for n in ("beta", "delta", "gamma") if n not in maps]
        if missing:
            raise BlockerLabError(f"'verify-theorem' needs --{', --'.join(missing)}")
        rep = verify_sandwich_theorem(maps["beta"], maps["delta"], maps["gamma"])
        out.report(rep, [f"asserted: {', '.join(rep.details['asserted']) or 'nothing'}",
                         f"hypotheses: {rep.details['hypotheses']}"])


# -- gen, bridge -----------------------------------------------------------


def run_gen(args, cfg: RunConfig, out: Output):
    sv = cfg.subverb
    if sv == "random-poset":
        p = random_bounded_poset(args.size, random.Random(cfg.seed), limit=cfg.poset_limit)
        doc = io.poset_to_json(p)
    elif sv == "boolean-lattice":
        doc = io.poset_to_json(boolean_lattice(range(1, args.n + 1), cfg.boolean_limit).poset)
    else:
        doc = [io.clutter_to_json(c) for c in cl.all_clutters(range(1, args.n + 1))]
    text = io.dumps(doc) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        out.text(f"wrote {args.out}")
    elif cfg.format == "json":
        out.document = doc
    else:
        sys.stdout.write(text)


def run_bridge(args, cfg: RunConfig, out: Output):
    c = io.clutter_from_json(io.read_json(args.file))
    bl = boolean_lattice(c.ground, cfg.boolean_limit)
    if args.all:
        xs = _all_subsets(c.ground.elements)
    else:
        xs = [parse_label_list(args.x) if args.x is not None else []]
    out.report(combine("bridge", (cross_check(c, x, bl) for x in xs)))


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--limit", type=int, default=None,
                        help=f"poset enumeration cap (default {DEFAULT_ENUMERATION_LIMIT}, or ${LIMIT_ENV})")

    parser = argparse.ArgumentParser(prog="blockerlab", description=__doc__.splitlines()[0])
    verbs = parser.add_subparsers(dest="command", required=True)

    p = verbs.add_parser("clutter", parents=[common], help="set-theoretic blocker, deletion, contraction")
    p.add_argument("subverb", choices=("blocker", "delete", "contract", "verify-involution", "verify-seymour"))
    p.add_argument("file")
    p.add_argument("--x", help="comma-separated subset of the ground set")
    p.add_argument("--all", action="store_true", help="every X")
    p.set_defaults(run=run_clutter)

    p = verbs.add_parser("poset", parents=[common], help="antichain lattice and order-theoretic maps")
    p.add_argument("subverb", choices=("antichains", "bmap", "delete", "contract", "verify-lemma",
                                       "verify-corollary", "verify-triple", "verify-operator-laws"))
    p.add_argument("file")
    p.add_argument("--antichain", help="comma-separated element labels ('' for the empty antichain)")
    p.add_argument("--x", help="comma-separated atom labels")
    p.add_argument("--all", action="store_true", help="every antichain and every atom subset")
    p.add_argument("--strict-bounded", action="store_true", help="also require a greatest element")
    p.set_defaults(run=run_poset)

    p = verbs.add_parser("maps", parents=[common], help="checks on table-given self-maps of a poset")
    p.add_argument("subverb", choices=("check", "verify-theorem", "sweep"))
    p.add_argument("poset", nargs="?", help="poset JSON (optional when map files embed their poset)")
    p.add_argument("--beta")
    p.add_argument("--delta")
    p.add_argument("--gamma")
    p.add_argument("--blocker-x", help="verify-theorem on Ant(P) with bmap, deletion and contraction by these atoms")
    p.add_argument("--size", type=int, default=6)
    p.add_argument("--count", type=int, default=1000)
    p.set_defaults(run=run_maps)

    p = verbs.add_parser("gen", parents=[common], help="generate posets and clutters")
    p.add_argument("subverb", choices=("random-poset", "boolean-lattice", "all-clutters"))
    p.add_argument("--size", type=int, default=8)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--out")
    p.set_defaults(run=run_gen)

    p = verbs.add_parser("bridge", parents=[common], help="cross-check clutter maps against the Boolean lattice")
    p.add_argument("subverb", choices=("check",))
    p.add_argument("file")
    p.add_argument("--x")
    p.add_argument("--all", action="store_true")
    p.set_defaults(run=run_bridge)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    out = Output(args.format)
    try:
        limit = args.limit if args.limit is not None else _env_limit()
        inputs = [v for v in (getattr(args, "file", None), getattr(args, "poset", None)) if v]
        cfg = RunConfig(args.command, args.subverb, inputs, seed=args.seed, poset_limit=limit, format=args.format)
        args.run(args, cfg, out)
    except BlockerLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # exit codes are part of the contract; never leak a traceback's 1
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out.flush()
    return out.status


if __name__ == "__main__":
    sys.exit(main())
