"""``gbr``: parse, compare, normalize and enumerate braid words; run the verification suite.

Exit codes
  parse      0 ok, 2 syntax or legality error
  eq         0 equal, 1 refuted by some model, 3 only unknown, 2 bad input or endpoint mismatch
  normalize  0 ok, 2 bad input
  enumerate  0 ok, 2 bad input
  verify     0 all checks pass, 1 some check failed, 4 report could not be written
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import ktheory, split, verify
from .braid import BraidError, BraidSyntaxError, EndpointMismatch, Partition, parse, render
from .rewrite import Budget, enumerate_words, equal, normalize

DEFAULT_MAX_STATES = 200_000
DEFAULT_MAX_LEN = 16
BUDGET_ENV = "GBR_BUDGET_STATES"

EXIT_OK, EXIT_REFUTED, EXIT_INPUT, EXIT_UNKNOWN, EXIT_IO = 0, 1, 2, 3, 4

EQUAL, REFUTED, UNKNOWN = "equal", "refuted", "unknown"


@dataclass(frozen=True)
class RunConfig:
    budget: Budget
    model: str = "all"
    fmt: str = "text"
    seed: int = 0

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> RunConfig:
        light = getattr(args, "light_budget", None)
        states, max_len = args.max_states, args.max_len
        if states is None and BUDGET_ENV in os.environ:
            states = int(os.environ[BUDGET_ENV])
        if states is None:
            states = light.max_states if light else DEFAULT_MAX_STATES
        if max_len is None:
            max_len = light.max_len if light else DEFAULT_MAX_LEN
        return cls(Budget(states, max_len), getattr(args, "model", "all"), args.format, args.seed)


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def _emit(cfg: RunConfig, text: str, data: dict | list) -> None:
    if cfg.fmt == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def _input_error(err: Exception) -> int:
    where = f" at position {err.position}" if isinstance(err, BraidSyntaxError) else ""
    print(f"error: {type(err).__name__}{where}: {err}", file=sys.stderr)
    return EXIT_INPUT


def cmd_parse(args, cfg: RunConfig) -> int:
    try:
        w = parse(args.word)
    except BraidError as err:
        return _input_error(err)
    _emit(cfg, f"{render(w)}\nsource: {w.source}\ntarget: {w.target}\nlength: {len(w.normalized())}",
          {"word": render(w), "source": w.source.label, "target": w.target.label, "json": w.to_json()})
    return EXIT_OK


def _verdicts(w1, w2, cfg: RunConfig) -> dict[str, dict]:
    models = verify.MODELS if cfg.model == "all" else (cfg.model,)
    out = {}
    if "rewrite" in models:
        v = equal(w1, w2, cfg.budget)
        out["rewrite"] = {"verdict": EQUAL if v.proved else UNKNOWN, **v.to_json()}
    if "split" in models:
        s = split.split_equal(w1, w2)
        out["split"] = {"verdict": REFUTED if s is split.SplitVerdict.DISTINCT else EQUAL, "status": s.value}
    if "ktheory" in models:
        a, b = ktheory.evaluate_word(w1), ktheory.evaluate_word(w2)
        out["ktheory"] = {"verdict": EQUAL if a == b else REFUTED, "lhs_matrix": a.tolist(),
                          "rhs_matrix": b.tolist()}
    return out


def aggregate(verdicts: list[str]) -> str:
    """Refutation outranks proof, which outranks silence."""
    if REFUTED in verdicts:
        return REFUTED
    if EQUAL in verdicts:
        return EQUAL
    return UNKNOWN


def cmd_eq(args, cfg: RunConfig) -> int:
    try:
        w1, w2 = parse(args.lhs), parse(args.rhs)
        if (w1.source, w1.target) != (w2.source, w2.target):
            raise EndpointMismatch(w1.source if w1.source != w2.source else w1.target,
                                   w2.source if w1.source != w2.source else w2.target)
    except BraidError as err:
        return _input_error(err)
    per_model = _verdicts(w1, w2, cfg)
    overall = aggregate([m["verdict"] for m in per_model.values()])
    lines = [f"{name}: {m.get('status', m['verdict'])}" for name, m in per_model.items()]
    lines.append(f"verdict: {overall}")
    _emit(cfg, "\n".join(lines), {"lhs": render(w1), "rhs": render(w2), "models": per_model, "verdict": overall})
    return {EQUAL: EXIT_OK, REFUTED: EXIT_REFUTED, UNKNOWN: EXIT_UNKNOWN}[overall]


def cmd_normalize(args, cfg: RunConfig) -> int:
    try:
        w = parse(args.word)
    except BraidError as err:
        return _input_error(err)
    n = normalize(w, cfg.budget)
    _emit(cfg, render(n), {"input": render(w), "normal_form": render(n), "json": n.to_json()})
    return EXIT_OK


def cmd_enumerate(args, cfg: RunConfig) -> int:
    try:
        src, tgt = Partition.parse(args.source), Partition.parse(args.target)
    except ValueError as err:
        return _input_error(err)
    reps = enumerate_words(src, tgt, args.length, cfg.budget)
    _emit(cfg, "\n".join(render(w) for w in reps) or "(no words)",
          {"source": src.label, "target": tgt.label, "length": args.length,
           "classes": [render(w) for w in reps]})
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    results = verify.run_verification(cfg.model, seed=cfg.seed, samples=args.samples)
    failed = [r for r in results if not r.passed]
    if args.report:
        try:
            with open(args.report, "w", encoding="utf-8") as fh:
                fh.write(verify.report_json(results))
        except OSError as err:
            print(f"error: cannot write report: {err}", file=sys.stderr)
            return EXIT_IO
    if cfg.fmt == "json":
        print(verify.report_json(results), end="")
    else:
        for r in results:
            print(f"{r.status.upper():4}  {r.check}")
        print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_OK if not failed else EXIT_REFUTED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-states", type=_positive, default=None,
                        help=f"search state budget (default {DEFAULT_MAX_STATES}, or ${BUDGET_ENV})")
    common.add_argument("--max-len", type=_positive, default=None,
                        help=f"longest word visited during search (default {DEFAULT_MAX_LEN})")
    common.add_argument("--format", choices=("text", "json"), default="text", help="output format")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    model = argparse.ArgumentParser(add_help=False)
    model.add_argument("--model", choices=verify.MODELS + ("all",), default="all",
                       help="which model(s) to run (default all)")

    p = argparse.ArgumentParser(prog="gbr", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("parse", parents=[common], help="check a word and print its endpoints")
    sp.add_argument("word")
    sp.set_defaults(func=cmd_parse)

    sp = sub.add_parser("eq", parents=[common, model], help="compare two words in the selected models")
    sp.add_argument("lhs")
    sp.add_argument("rhs")
    sp.set_defaults(func=cmd_eq)

    sp = sub.add_parser("normalize", parents=[common], help="least word found in the congruence class",
                        description="Without budget flags, uses 5000 states and length 8: normalize "
                                    "re-explores the class once per improvement.")
    sp.add_argument("word")
    sp.set_defaults(func=cmd_normalize, light_budget=Budget(5_000, 8))

    sp = sub.add_parser("enumerate", parents=[common],
                        help="one representative per provable-equality class of words SOURCE -> TARGET",
                        description="Without budget flags, uses 2000 states and length 8 per explored class.")
    sp.add_argument("source")
    sp.add_argument("target")
    sp.add_argument("length", type=int, nargs="?", default=2, help="longest word enumerated (default 2)")
    sp.set_defaults(func=cmd_enumerate, light_budget=Budget(2_000, 8))

    sp = sub.add_parser("verify", parents=[common, model], help="run the full verification suite")
    sp.add_argument("--report", metavar="PATH", help="write the JSON report here")
    sp.add_argument("--samples", type=int, default=1000, help="random pairs for the cross-model check")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    return args.func(args, cfg)


if __name__ == "__main__":
    sys.exit(main())
