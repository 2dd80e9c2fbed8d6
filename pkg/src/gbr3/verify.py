"""Whole-calculus verification: every relation in every model, the identity
suite, and randomized cross-model consistency.

Each check is a :class:`CheckResult`; results are sorted by name so that the
JSON report is byte-identical for identical inputs and seeds.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import ktheory as kt
from . import split
from .braid import (
    P3, P12, P21, P111, PARTITIONS, Axis, BraidWord, Kind, legal_generators, parse, reflect, render,
)
from .polynomials import SymLaurent, V
from .rewrite import Budget, Relation, _moves, _pattern_table, _raw, _word, equal, relation_closure, replay

MODELS = ("rewrite", "split", "ktheory")

PASS = "pass"
FAIL = "fail"


@dataclass(frozen=True)
class CheckResult:
    check: str
    status: str
    lhs_matrix: list | None = None
    rhs_matrix: list | None = None
    detail: str | None = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict:
        out: dict = {"check": self.check, "status": self.status, "lhs_matrix": self.lhs_matrix}
        if self.rhs_matrix is not None:
            out["rhs_matrix"] = self.rhs_matrix
        if self.detail is not None:
            out["detail"] = self.detail
        return out


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def _matrix_check(name: str, lhs: kt.KOperator, rhs: kt.KOperator, detail: str | None = None) -> CheckResult:
    return CheckResult(name, _status(lhs == rhs), lhs.tolist(), rhs.tolist(), detail)


# -- relation suite ---------------------------------------------------------

def relation_checks(relations: Sequence[Relation], models: Iterable[str],
                    budget: Budget = Budget(max_states=2_000, max_len=8)) -> list[CheckResult]:
    models = set(models)
    out = []
    for r in relations:
        if "rewrite" in models:
            v = equal(r.lhs, r.rhs, budget, relations)
            ok = v.proved and len(v.witness) == 1 and replay(r.lhs, v.witness, relations) == r.rhs
            out.append(CheckResult(f"relation/{r.name}/rewrite", _status(ok),
                                   detail=f"{v.status.value}, path {None if v.witness is None else len(v.witness)}"))
        if "split" in models:
            verdict = split.split_equal(r.lhs, r.rhs)
            out.append(CheckResult(f"relation/{r.name}/split",
                                   _status(verdict is not split.SplitVerdict.DISTINCT), detail=verdict.value))
        if "ktheory" in models:
            out.append(_matrix_check(f"relation/{r.name}/ktheory",
                                     kt.evaluate_word(r.lhs), kt.evaluate_word(r.rhs)))
    return out


# -- identity suite ---------------------------------------------------------

SIX_SUMMAND_WORD = "f[3>12] ; f[12>111] ; g[111>12] ; g[12>3]"
SKEIN_WORDS = {
    P12: ("g[12>3] ; f[3>12]", "f[12>111] ; g[111>21] ; f[21>111] ; g[111>12]"),
    P21: ("g[21>3] ; f[3>21]", "f[21>111] ; g[111>12] ; f[12>111] ; g[111>21]"),
}


def _adj(text: str) -> kt.KOperator:
    return kt.evaluate_word(parse(text), merges_as_adjoints=True)


def _scalar(module: kt.KBasisModule, c: int) -> kt.KOperator:
    return kt.KOperator.identity(module).scale(c)


def ktheory_identity_checks() -> list[CheckResult]:
    out = [
        _matrix_check("identity/spherical-12", _adj("f[12>111] ; g[111>12]"), _scalar(kt.KP2, 2)),
        _matrix_check("identity/spherical-21", _adj("f[21>111] ; g[111>21]"), _scalar(kt.KP2DUAL, 2)),
        _matrix_check("identity/p2-12", _adj("f[3>12] ; g[12>3]"), _scalar(kt.KPT, 3)),
        _matrix_check("identity/p2-21", _adj("f[3>21] ; g[21>3]"), _scalar(kt.KPT, 3)),
        _matrix_check("identity/six-summand", _adj(SIX_SUMMAND_WORD), _scalar(kt.KPT, 6)),
        _matrix_check("identity/multifork-column", kt.evaluate_word(parse("f[3>21] ; f[21>111]")),
                      kt.evaluate_word(parse("f[3>12] ; f[12>111]"))),
    ]
    for side, (fr, rfrf) in SKEIN_WORDS.items():
        m = kt.MODULES[side]
        lhs = _adj(fr) - _adj(rfrf) + kt.KOperator.identity(m)
        out.append(_matrix_check(f"identity/skein-{side.label}", lhs, _scalar(m, 0)))
    eye6 = kt.KOperator.identity(kt.KFL3)
    for i in (1, 2):
        t = kt.evaluate_word(parse(f"t[111,{i}]"))
        out.append(_matrix_check(f"identity/involution-{i}", t.then(t), eye6))
    for a, b in (("t[21>12]", "d[12>21]"), ("d[12>21]", "t[21>12]"), ("t[12>21]", "d[21>12]"),
                 ("d[21>12]", "t[12>21]")):
        w = parse(f"{a} ; {b}")
        out.append(_matrix_check(f"identity/mixed-inverse-{a}-{b}", kt.evaluate_word(w),
                                 kt.KOperator.identity(kt.MODULES[w.source])))
    for side in (P12, P21):
        out.append(_matrix_check(f"identity/flop-flop-{side.label}",
                                 kt.evaluate_word(split.flop_flop_word(side)),
                                 kt.evaluate_sum(split.ptwist_class(side))))
    for m in kt.MODULES.values():
        det = kt.unimodularity_certificate(m)
        out.append(CheckResult(f"identity/unimodular-{m.name}", _status(abs(det) == 1),
                               detail=f"det {det}, saturation gcd {kt.saturation_gcd(m)}"))
    bad = demazure_violations(demazure_sample())
    out.append(CheckResult("identity/demazure", _status(not bad), detail=f"{len(bad)} violations"))
    return out


def split_identity_checks() -> list[CheckResult]:
    E = split.SplitVerdict
    six = split.reduce_word(SIX_SUMMAND_WORD)
    expected = split.FormalSum.identity(P3).scale(1 + 2 * V ** 2 + 2 * V ** 4 + V ** 6)
    out = [CheckResult("split/six-summand", _status(six.same_terms(expected) and not six.cone), detail=str(six))]
    for side in (P12, P21):
        v = split.split_equal(split.flop_flop_word(side), split.ptwist_class(side))
        out.append(CheckResult(f"split/flop-flop-{side.label}", _status(v is E.EQUAL_AT_MINUS_ONE), detail=v.value))
    for i in (1, 2):
        for w in (f"t[111,{i}] ; d[111,{i}]", f"d[111,{i}] ; t[111,{i}]"):
            v = split.split_equal(parse(w), BraidWord.identity(P111))
            out.append(CheckResult(f"split/involution-{w.replace(' ', '')}", _status(v is not E.DISTINCT),
                                   detail=v.value))
    for side, (fr, rfrf) in SKEIN_WORDS.items():
        lhs = split.reduce_word(rfrf)
        rhs = split.reduce_word(fr) + split.FormalSum.identity(side).scale(V ** 2)
        out.append(CheckResult(f"split/skein-{side.label}", _status(lhs.same_terms(rhs)), detail=str(lhs)))
    return out


# -- Demazure sample --------------------------------------------------------

def demazure_sample(size: int = 64, seed: int = 0, spread: int = 3) -> list[SymLaurent]:
    """Deterministic sample of distinct monomials ``x1^a x2^b x3^c``."""
    rng = random.Random(seed)
    seen: dict = {}
    while len(seen) < size:
        e = tuple(rng.randint(-spread, spread) for _ in range(3))
        m = SymLaurent.monomial(*e)
        seen.setdefault(m, None)
    return list(seen)


def demazure_violations(sample: Iterable[SymLaurent]) -> list[str]:
    bad = []
    for f in sample:
        for i in (1, 2):
            p = kt.demazure(i, f)
            if kt.demazure(i, p) != p:
                bad.append(f"idempotence {i} at {f}")
            if p.swap(i) != p:
                bad.append(f"symmetry {i} at {f}")
        if kt.demazure_word((1, 2, 1), f) != kt.demazure_word((2, 1, 2), f):
            bad.append(f"braid at {f}")
    return bad


# -- random words and pairs -------------------------------------------------

_BY_SOURCE = {p: [g for g in legal_generators() if g.source == p and g.kind is not Kind.IDENTITY]
              for p in PARTITIONS}


def random_word(rng: random.Random, max_len: int, source=None) -> BraidWord:
    src = source if source is not None else rng.choice(PARTITIONS)
    steps = []
    here = src
    for _ in range(rng.randint(0, max_len)):
        g = rng.choice(_BY_SOURCE[here])
        steps.append(g)
        here = g.target
    return BraidWord(src, tuple(steps))


def random_word_between(rng: random.Random, src, tgt, max_len: int, tries: int = 200) -> BraidWord | None:
    for _ in range(tries):
        w = random_word(rng, max_len, src)
        if w.target == tgt:
            return w
    return None


def random_walk(rng: random.Random, w: BraidWord, steps: int, max_len: int,
                relations: Sequence[Relation] | None = None) -> BraidWord:
    """Apply ``steps`` random relation moves, staying within ``max_len``."""
    table = _pattern_table(tuple(relations or relation_closure()))
    raw = _raw(w)
    for _ in range(steps):
        options = sorted({v for v, _ in _moves(raw, table) if len(v[1]) <= max_len})
        if not options:
            break
        raw = rng.choice(options)
    return _word(raw)


def random_pairs(n: int, seed: int, max_len: int = 6,
                 relations: Sequence[Relation] | None = None) -> list[tuple[BraidWord, BraidWord]]:
    """``n`` same-endpoint pairs: even indices unrelated, odd indices a word and a rewrite walk of it."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        w1 = random_word(rng, max_len)
        if len(out) % 2 == 0:
            w2 = random_word_between(rng, w1.source, w1.target, max_len)
            if w2 is None:
                continue
        else:
            w2 = random_walk(rng, w1, rng.randint(1, 3), max_len, relations)
        out.append((w1, w2))
    return out


@dataclass
class CrossModelTally:
    pairs: int = 0
    rewrite_proved: int = 0
    split_distinct: int = 0
    matrices_equal: int = 0
    proved_but_matrices_differ: int = 0
    proved_but_split_distinct: int = 0
    split_equal_but_matrices_differ: int = 0
    split_distinct_but_matrices_equal: int = 0
    examples: list | None = None

    @property
    def violations(self) -> int:
        return (self.proved_but_matrices_differ + self.proved_but_split_distinct
                + self.split_equal_but_matrices_differ)


def cross_model_tally(pairs: Sequence[tuple[BraidWord, BraidWord]],
                      budget: Budget = Budget(max_states=600, max_len=8),
                      relations: Sequence[Relation] | None = None) -> CrossModelTally:
    t = CrossModelTally(examples=[])
    for w1, w2 in pairs:
        t.pairs += 1
        proved = equal(w1, w2, budget, relations).proved
        same = kt.evaluate_word(w1) == kt.evaluate_word(w2)
        distinct = split.split_equal(w1, w2) is split.SplitVerdict.DISTINCT
        t.rewrite_proved += proved
        t.split_distinct += distinct
        t.matrices_equal += same
        flags = []
        if proved and not same:
            t.proved_but_matrices_differ += 1
            flags.append("proved/matrices differ")
        if proved and distinct:
            t.proved_but_split_distinct += 1
            flags.append("proved/split distinct")
        if not distinct and not same:
            t.split_equal_but_matrices_differ += 1
            flags.append("split equal/matrices differ")
        if distinct and same:
            t.split_distinct_but_matrices_equal += 1
        if flags and len(t.examples) < 5:
            t.examples.append(f"{render(w1)} vs {render(w2)}: {', '.join(flags)}")
    return t


def cross_model_checks(n: int, seed: int, relations: Sequence[Relation] | None = None) -> list[CheckResult]:
    t = cross_model_tally(random_pairs(n, seed, relations=relations), relations=relations)
    summary = (f"{t.pairs} pairs, {t.rewrite_proved} proved, {t.matrices_equal} matrix-equal, "
               f"{t.split_distinct} split-distinct, {t.split_distinct_but_matrices_equal} split-distinct "
               f"with equal matrices")
    ex = "" if not t.examples else "; " + "; ".join(t.examples)
    return [
        CheckResult("cross-model/rewrite-vs-ktheory", _status(t.proved_but_matrices_differ == 0),
                    detail=f"{t.proved_but_matrices_differ} violations; {summary}{ex}"),
        CheckResult("cross-model/rewrite-vs-split", _status(t.proved_but_split_distinct == 0),
                    detail=f"{t.proved_but_split_distinct} violations"),
        CheckResult("cross-model/split-vs-ktheory", _status(t.split_equal_but_matrices_differ == 0),
                    detail=f"{t.split_equal_but_matrices_differ} violations"),
        # a split refutation is a Grothendieck-group statement, so equal matrices mean a model bug
        CheckResult("cross-model/split-distinct-vs-ktheory", _status(t.split_distinct_but_matrices_equal == 0),
                    detail=f"{t.split_distinct_but_matrices_equal} discrepancies"),
    ]


def reflection_checks(relations: Sequence[Relation]) -> list[CheckResult]:
    keys = {r.key() for r in relations}
    missing = [f"{r.name}/{ax.value}" for r in relations for ax in Axis
               if frozenset((reflect(r.lhs, ax), reflect(r.rhs, ax))) not in keys]
    return [CheckResult("relation-closure/closed", _status(not missing),
                        detail=f"{len(relations)} relations" + (f"; missing {missing[:5]}" if missing else ""))]


# -- driver -----------------------------------------------------------------

def run_verification(model: str = "all", seed: int = 0, samples: int = 1000,
                     relations: Sequence[Relation] | None = None) -> list[CheckResult]:
    """Run the suite for ``model`` in ``{"rewrite", "split", "ktheory", "all"}``."""
    if model not in MODELS + ("all",):
        raise ValueError(f"unknown model {model!r}")
    models = MODELS if model == "all" else (model,)
    rels = list(relations) if relations is not None else relation_closure()
    out = relation_checks(rels, models)
    if "rewrite" in models:
        out += reflection_checks(rels)
    if "ktheory" in models:
        out += ktheory_identity_checks()
    if "split" in models:
        out += split_identity_checks()
    if model == "all" and samples:
        out += cross_model_checks(samples, seed, rels)
    return sorted(out, key=lambda c: c.check)


def report_json(results: Sequence[CheckResult]) -> str:
    return json.dumps([r.to_json() for r in results], indent=2, sort_keys=True) + "\n"
