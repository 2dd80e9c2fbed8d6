"""Decategorified split-P^2 calculus.

Every composite of fork, merge and crossing functors is written as a formal
sum of *atoms* (irreducible fork/right-adjoint words) with coefficients in
``Z[v, v^-1]``.  Inside an atom a merge letter ``g`` stands for the right
adjoint ``R`` of the matching fork; the merge functor itself is ``R[1]`` or
``R[2]`` and contributes ``v^-1`` or ``v^-2``.

Direct-sum rules hold at generic ``v``.  Rules coming from exact triangles
(the skein triangles and the crossing cones) only hold for Euler classes, so
sums that used one carry ``cone=True`` and are only compared at ``v = -1``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Union

from .braid import (
    P12, P21, P111, BraidWord, EndpointMismatch, Generator, Kind, Partition, fork,
    merge, parse,
)
from .polynomials import V, ShiftPoly

ONE = ShiftPoly.const(1)
SPHERICAL = 1 + V ** 2              # id + [-2]
P2_FUNCTOR = 1 + V ** 2 + V ** 4    # id + [-2] + [-4]


@dataclass(frozen=True)
class Rule:
    name: str
    lhs: tuple[Generator, ...]
    rhs: tuple[tuple[tuple[Generator, ...], ShiftPoly], ...]  # (atom letters, coefficient)
    cone: bool = False


def _w(text: str) -> tuple[Generator, ...]:
    return parse(text).steps


def _rules() -> tuple[Rule, ...]:
    return (
        Rule("spherical-12", _w("f[12>111]; g[111>12]"), (((), SPHERICAL),)),
        Rule("spherical-21", _w("f[21>111]; g[111>21]"), (((), SPHERICAL),)),
        Rule("p2-12", _w("f[3>12]; g[12>3]"), (((), P2_FUNCTOR),)),
        Rule("p2-21", _w("f[3>21]; g[21>3]"), (((), P2_FUNCTOR),)),
        Rule("multifork", _w("f[3>21]; f[21>111]"), ((_w("f[3>12]; f[12>111]"), ONE),)),
        Rule("multifork-adjoint", _w("g[111>21]; g[21>3]"), ((_w("g[111>12]; g[12>3]"), ONE),)),
        # multifork followed by the other spherical rule; needed for confluence
        Rule("multifork-spherical", _w("f[3>12]; f[12>111]; g[111>21]"), ((_w("f[3>21]"), SPHERICAL),)),
        Rule("multifork-spherical-adjoint", _w("f[21>111]; g[111>12]; g[12>3]"),
             ((_w("g[21>3]"), SPHERICAL),)),
        Rule("skein-12", _w("f[12>111]; g[111>21]; f[21>111]; g[111>12]"),
             ((_w("g[12>3]; f[3>12]"), ONE), ((), V ** 2)), cone=True),
        Rule("skein-21", _w("f[21>111]; g[111>12]; f[12>111]; g[111>21]"),
             ((_w("g[21>3]; f[3>21]"), ONE), ((), V ** 2)), cone=True),
    )


RULES: tuple[Rule, ...] = _rules()


@lru_cache(maxsize=None)
def _rules_by_first(rules: tuple[Rule, ...]) -> dict[Generator, tuple[Rule, ...]]:
    out: dict[Generator, list[Rule]] = {}
    for r in rules:
        out.setdefault(r.lhs[0], []).append(r)
    return {k: tuple(sorted(v, key=lambda r: len(r.lhs))) for k, v in out.items()}


def find_redex(letters: tuple[Generator, ...], rules: tuple[Rule, ...] = RULES) -> tuple[int, Rule] | None:
    """Leftmost redex; among redexes starting at the same place, the shortest."""
    table = _rules_by_first(rules)
    for start, g in enumerate(letters):
        for r in table.get(g, ()):
            if letters[start:start + len(r.lhs)] == r.lhs:
                return start, r
    return None


@dataclass(frozen=True)
class Atom:
    word: BraidWord

    def __post_init__(self):
        w = self.word.normalized()
        object.__setattr__(self, "word", w)
        if any(g.kind not in (Kind.FORK, Kind.MERGE) for g in w.steps):
            raise ValueError(f"atoms contain only forks and merges: {w}")
        if find_redex(w.steps) is not None:
            raise ValueError(f"atom is reducible: {w}")

    @classmethod
    def identity(cls, obj: Partition) -> Atom:
        return cls(BraidWord.identity(obj))

    @property
    def source(self) -> Partition:
        return self.word.source

    @property
    def target(self) -> Partition:
        return self.word.target

    def __str__(self) -> str:
        return str(self.word)


def _atom_unchecked(source: Partition, letters: tuple[Generator, ...]) -> Atom:
    a = object.__new__(Atom)
    object.__setattr__(a, "word", BraidWord(source, letters))
    return a


@dataclass(frozen=True)
class FormalSum:
    source: Partition
    target: Partition
    terms: Mapping[Atom, ShiftPoly] = field(default_factory=dict)
    cone: bool = False

    def __post_init__(self):
        clean = {}
        for a, p in self.terms.items():
            if a.source != self.source or a.target != self.target:
                raise EndpointMismatch(self.source, a.source,
                                       f"atom {a} does not run {self.source} -> {self.target}")
            if not p.is_zero():
                clean[a] = p
        object.__setattr__(self, "terms", clean)

    @classmethod
    def zero(cls, source: Partition, target: Partition) -> FormalSum:
        return cls(source, target, {})

    @classmethod
    def of_atom(cls, atom: Atom, coeff: ShiftPoly | int = 1) -> FormalSum:
        coeff = coeff if isinstance(coeff, ShiftPoly) else ShiftPoly.const(coeff)
        return cls(atom.source, atom.target, {atom: coeff})

    @classmethod
    def identity(cls, obj: Partition) -> FormalSum:
        return cls.of_atom(Atom.identity(obj))

    def __add__(self, other: FormalSum) -> FormalSum:
        if (self.source, self.target) != (other.source, other.target):
            raise EndpointMismatch(self.source, other.source)
        out = dict(self.terms)
        for a, p in other.terms.items():
            out[a] = out.get(a, ShiftPoly()) + p
        return FormalSum(self.source, self.target, out, self.cone or other.cone)

    def __neg__(self) -> FormalSum:
        return FormalSum(self.source, self.target, {a: -p for a, p in self.terms.items()}, self.cone)

    def __sub__(self, other: FormalSum) -> FormalSum:
        return self + (-other)

    def scale(self, c: ShiftPoly | int) -> FormalSum:
        c = c if isinstance(c, ShiftPoly) else ShiftPoly.const(c)
        return FormalSum(self.source, self.target, {a: c * p for a, p in self.terms.items()}, self.cone)

    def then(self, other: FormalSum) -> FormalSum:
        """Diagram-order product (``self`` first), reduced."""
        if self.target != other.source:
            raise EndpointMismatch(self.target, other.source)
        out = FormalSum.zero(self.source, other.target)
        cone = self.cone or other.cone
        for a, p in self.terms.items():
            for b, q in other.terms.items():
                r = _reduce_letters(a.source, a.word.steps + b.word.steps)
                cone = cone or r.cone
                out = out + r.scale(p * q)
        return FormalSum(out.source, out.target, out.terms, cone)

    def at_minus_one(self) -> FormalSum:
        return FormalSum(self.source, self.target,
                         {a: p.at_minus_one() for a, p in self.terms.items()}, self.cone)

    def same_terms(self, other: FormalSum) -> bool:
        return (self.source, self.target) == (other.source, other.target) and self.terms == other.terms

    def to_json(self) -> dict:
        terms = sorted(self.terms.items(), key=lambda kv: kv[0].word.sort_key)
        return {
            "source": self.source.label,
            "target": self.target.label,
            "terms": [{"atom": a.word.to_json(), "poly": p.to_json()} for a, p in terms],
        }

    @classmethod
    def from_json(cls, data: dict) -> FormalSum:
        src, tgt = Partition.parse(data["source"]), Partition.parse(data["target"])
        terms: dict[Atom, ShiftPoly] = {}
        for t in data["terms"]:
            a = Atom(BraidWord.from_json(t["atom"]))
            terms[a] = terms.get(a, ShiftPoly()) + ShiftPoly.from_json(t["poly"])
        return cls(src, tgt, terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        terms = sorted(self.terms.items(), key=lambda kv: kv[0].word.sort_key)
        return " + ".join(f"({p})[{a}]" for a, p in terms)


@lru_cache(maxsize=65536)
def _reduce_letters(source: Partition, letters: tuple[Generator, ...],
                    rules: tuple[Rule, ...] = RULES) -> FormalSum:
    hit = find_redex(letters, rules)
    target = letters[-1].target if letters else source
    if hit is None:
        return FormalSum.of_atom(_atom_unchecked(source, letters))
    start, rule = hit
    out = FormalSum.zero(source, target)
    cone = rule.cone
    for rep, coeff in rule.rhs:
        new = letters[:start] + rep + letters[start + len(rule.lhs):]
        r = _reduce_letters(source, new, rules)
        cone = cone or r.cone
        out = out + r.scale(coeff)
    return FormalSum(source, target, out.terms, cone)


def reduce(s: FormalSum, rules: tuple[Rule, ...] = RULES) -> FormalSum:
    """Rewrite every atom to normal form; linear, idempotent."""
    out = FormalSum.zero(s.source, s.target)
    cone = s.cone
    for a, p in s.terms.items():
        r = _reduce_letters(a.source, a.word.steps, rules)
        cone = cone or r.cone
        out = out + r.scale(p)
    return FormalSum(s.source, s.target, out.terms, cone)


def reduce_word(text_or_word: str | BraidWord) -> FormalSum:
    """Reduce a fork/merge word read as a single atom product."""
    w = parse(text_or_word) if isinstance(text_or_word, str) else text_or_word
    w = w.normalized()
    return _reduce_letters(w.source, w.steps)


def _atom_sum(text: str, coeff: ShiftPoly) -> FormalSum:
    w = parse(text)
    return FormalSum(w.source, w.target, {_atom_unchecked(w.source, w.steps): coeff})


@lru_cache(maxsize=None)
def crossing_class(g: Generator) -> FormalSum:
    """Raw (unreduced) cone class of a crossing, marked ``cone=True``.

    ``Cone(A -> B)`` is recorded as ``[B] - [A]`` with each functor's shifts
    expressed through ``v``; at ``v = -1`` this is the honest Euler class.
    """
    if not g.kind.is_crossing:
        raise ValueError(f"not a crossing: {g}")
    positive = g.kind is Kind.POS
    v = V
    inv = V ** -1
    if g.source == P111:
        fr = "g[111>21]; f[21>111]" if g.position == 1 else "g[111>12]; f[12>111]"
        idw = FormalSum.identity(P111)
        if positive:
            # Cone(F G[-1] -> id),  F G[-1] = v * v^-1 F R
            s = idw - _atom_sum(fr, ONE)
        else:
            # Cone(id[-1] -> F G)
            s = _atom_sum(fr, inv) - idw.scale(v)
        return FormalSum(s.source, s.target, s.terms, cone=True)
    mid, other = (P12, P21) if g.source == P12 else (P21, P12)
    rf = f"f[{mid.label}>111]; g[111>{other.label}]"     # R^{other} F_{mid}: through 111
    fr = f"g[{mid.label}>3]; f[3>{other.label}]"           # F_3^{other} R^3_{mid}: through 3
    if positive:
        # Cone(F G[-1] -> G F) with G = R[2] on the 3-edge and R[1] on the 111-edge
        s = _atom_sum(rf, inv) - _atom_sum(fr, v * V ** -2)
    else:
        # Cone(G F[-1] -> F G)
        s = _atom_sum(fr, V ** -2) - _atom_sum(rf, v * inv)
    return FormalSum(s.source, s.target, s.terms, cone=True)


@lru_cache(maxsize=None)
def generator_class(g: Generator) -> FormalSum:
    if g.kind is Kind.IDENTITY:
        return FormalSum.identity(g.source)
    if g.kind is Kind.FORK:
        return _atom_sum(g.token, ONE)
    if g.kind is Kind.MERGE:
        # (1,1)-merge: G = R[1]; (1,2)/(2,1)-merge: G = R[2]
        return _atom_sum(g.token, V ** (-1 if g.source == P111 else -2))
    return reduce(crossing_class(g))


def atomize(w: BraidWord) -> FormalSum:
    """Formal-sum class of a braid word, reduced to normal form."""
    out = FormalSum.identity(w.source)
    for g in w.steps:
        out = out.then(generator_class(g))
    return out


class SplitVerdict(enum.Enum):
    EQUAL_GENERIC_V = "EqualGenericV"
    EQUAL_AT_MINUS_ONE = "EqualAtMinusOne"
    DISTINCT = "Distinct"


Comparable = Union[BraidWord, FormalSum]


def _as_sum(x: Comparable) -> FormalSum:
    return atomize(x) if isinstance(x, BraidWord) else reduce(x)


def split_equal(a: Comparable, b: Comparable) -> SplitVerdict:
    """Compare two words (or formal sums) in the split model."""
    if (a.source, a.target) != (b.source, b.target):
        raise EndpointMismatch(a.source if a.source != b.source else a.target,
                               b.source if a.source != b.source else b.target)
    sa, sb = _as_sum(a), _as_sum(b)
    if not (sa.cone or sb.cone) and sa.same_terms(sb):
        return SplitVerdict.EQUAL_GENERIC_V
    if sa.at_minus_one().same_terms(sb.at_minus_one()):
        return SplitVerdict.EQUAL_AT_MINUS_ONE
    return SplitVerdict.DISTINCT


def ptwist_class(side: Partition | str = P12) -> FormalSum:
    """Euler class of the P-twist complex ``F R[-2] -> F R -> id`` of the fork ``3 -> side``."""
    side = Partition.parse(side) if isinstance(side, str) else side
    if side not in (P12, P21):
        raise ValueError("P-twists live on 12 or 21")
    fr = _atom_sum(f"g[{side.label}>3]; f[3>{side.label}]", ONE)
    s = FormalSum.identity(side) - fr + fr.scale(V ** 2)
    return FormalSum(s.source, s.target, s.terms, cone=True)


def flop_flop_word(side: Partition | str = P12) -> BraidWord:
    """The two mixed positive crossings starting and ending at ``side``."""
    side = Partition.parse(side) if isinstance(side, str) else side
    other = P21 if side == P12 else P12
    return parse(f"t[{side.label}>{other.label}] ; t[{other.label}>{side.label}]")


def irreducible_atoms(source: Partition, target: Partition, max_len: int) -> list[Atom]:
    """All irreducible fork/merge words ``source -> target`` up to ``max_len`` letters."""
    from .braid import words_between
    letters = [g for g in _fork_merge_alphabet()]
    return [Atom(w) for w in words_between(source, target, max_len, letters)
            if find_redex(w.steps) is None]


def _fork_merge_alphabet() -> list[Generator]:
    return [fork("3", "12"), fork("3", "21"), fork("12", "111"), fork("21", "111"),
            merge("12", "3"), merge("21", "3"), merge("111", "12"), merge("111", "21")]
