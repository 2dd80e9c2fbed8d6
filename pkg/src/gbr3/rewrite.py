"""Relations of GBr_3 and a bounded congruence search for the word problem.

The word problem is only semi-decidable, so :func:`equal` answers
``ProvedEqual`` (with a replayable witness) or ``Unknown``; it never claims
inequality.  Search is bidirectional breadth-first over single relation
applications.  A BFS level, once started, is always finished, which makes
verdicts independent of the order words are visited in (and therefore
equivariant under the three reflections).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .braid import (
    PARTITIONS, Axis, BraidWord, EndpointMismatch, Generator, Kind, Partition, legal_generators,
    parse, reflect, words_between,
)

FORWARD = "forward"
BACKWARD = "backward"


@dataclass(frozen=True)
class Budget:
    max_states: int = 200_000
    max_len: int = 16

    def __post_init__(self):
        if self.max_states < 1 or self.max_len < 0:
            raise ValueError("budgets must be positive")

    @classmethod
    def from_config(cls, config: dict) -> Budget:
        return cls(int(config.get("max_states", cls.max_states)), int(config.get("max_len", cls.max_len)))


@dataclass(frozen=True)
class Relation:
    name: str
    lhs: BraidWord
    rhs: BraidWord
    provenance: tuple[Axis, ...] = ()   # empty for a base relation

    def __post_init__(self):
        lhs, rhs = self.lhs.normalized(), self.rhs.normalized()
        object.__setattr__(self, "lhs", lhs)
        object.__setattr__(self, "rhs", rhs)
        if (lhs.source, lhs.target) != (rhs.source, rhs.target):
            raise EndpointMismatch(lhs.source, rhs.source, f"relation {self.name} has mismatched sides")
        if lhs == rhs:
            raise ValueError(f"trivial relation {self.name}")

    @property
    def is_base(self) -> bool:
        return not self.provenance

    def reflected(self, axis: Axis) -> Relation:
        return Relation(_reflected_name(self.name, axis), reflect(self.lhs, axis),
                        reflect(self.rhs, axis), self.provenance + (axis,))

    def key(self) -> frozenset:
        return frozenset((self.lhs, self.rhs))

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "provenance": "base" if self.is_base else [a.value for a in self.provenance],
        }

    @classmethod
    def from_json(cls, data: dict) -> Relation:
        prov = data["provenance"]
        axes = () if prov == "base" else tuple(Axis(a) for a in prov)
        return cls(data["name"], BraidWord.from_json(data["lhs"]), BraidWord.from_json(data["rhs"]), axes)

    def __str__(self) -> str:
        return f"{self.name}: {self.lhs} = {self.rhs}"


_AXIS_TAG = {Axis.VERTICAL: "V", Axis.HORIZONTAL: "H", Axis.BLACKBOARD: "B"}


def _reflected_name(name: str, axis: Axis) -> str:
    base, _, tags = name.partition("|")
    tags = "".join(sorted(set(tags) ^ {_AXIS_TAG[axis]}, key="VHB".index))
    return f"{base}|{tags}" if tags else base


def base_relations() -> list[Relation]:
    """Multifork, braid, inverse and pitchfork relations, words in diagram order."""
    def rel(name: str, lhs: str, rhs: str) -> Relation:
        return Relation(name, parse(lhs), parse(rhs))

    return [
        rel("multifork", "f[3>21] ; f[21>111]", "f[3>12] ; f[12>111]"),
        rel("braid", "t[111,1] ; t[111,2] ; t[111,1]", "t[111,2] ; t[111,1] ; t[111,2]"),
        rel("inverse-12", "d[12>21] ; t[21>12]", "id[12]"),
        rel("inverse-21", "t[21>12] ; d[12>21]", "id[21]"),
        rel("inverse-111-1", "d[111,1] ; t[111,1]", "id[111]"),
        rel("inverse-111-2", "d[111,2] ; t[111,2]", "id[111]"),
        rel("inverse-111-1-rev", "t[111,1] ; d[111,1]", "id[111]"),
        rel("inverse-111-2-rev", "t[111,2] ; d[111,2]", "id[111]"),
        rel("pitchfork", "t[21>12] ; f[12>111]", "f[21>111] ; t[111,2] ; t[111,1]"),
    ]


@lru_cache(maxsize=1)
def _closure() -> tuple[Relation, ...]:
    base = base_relations()
    seen: dict[frozenset, Relation] = {r.key(): r for r in base}
    order = (Axis.VERTICAL, Axis.HORIZONTAL, Axis.BLACKBOARD)
    for r in base:
        for k in range(1, 4):
            for axes in itertools.combinations(order, k):
                q = r
                for ax in axes:
                    q = q.reflected(ax)
                seen.setdefault(q.key(), q)
    return tuple(seen.values())


def relation_closure() -> list[Relation]:
    """Base relations closed under the three reflections, deduplicated up to swapping sides."""
    return list(_closure())


def export_relation_pack(relations: Sequence[Relation] | None = None) -> list[dict]:
    return [r.to_json() for r in (relations if relations is not None else relation_closure())]


def load_relation_pack(data: Sequence[dict]) -> list[Relation]:
    return [Relation.from_json(d) for d in data]


# -- internal word representation ------------------------------------------
# Search runs on (source index, tuple of generator indices); hashing plain
# ints is several times cheaper than hashing Generator objects.

RawWord = tuple[int, tuple[int, ...]]

_GENS: tuple[Generator, ...] = tuple(legal_generators())
_GEN_INDEX = {g: k for k, g in enumerate(_GENS)}
_PART_INDEX = {p: k for k, p in enumerate(PARTITIONS)}
_GEN_SOURCE = tuple(_PART_INDEX[g.source] for g in _GENS)
_GEN_TARGET = tuple(_PART_INDEX[g.target] for g in _GENS)
_GEN_ORDER = {k: r for r, k in enumerate(sorted(range(len(_GENS)), key=lambda k: _GENS[k].sort_key))}


def _raw(w: BraidWord) -> RawWord:
    return (_PART_INDEX[w.source], tuple(_GEN_INDEX[g] for g in w.normalized().steps))


def _word(raw: RawWord) -> BraidWord:
    w = object.__new__(BraidWord)
    object.__setattr__(w, "source", PARTITIONS[raw[0]])
    object.__setattr__(w, "steps", tuple(_GENS[k] for k in raw[1]))
    return w


def _raw_key(raw: RawWord) -> tuple:
    return (len(raw[1]), tuple(_GEN_ORDER[k] for k in raw[1]), raw[0])


@dataclass(frozen=True)
class _Pattern:
    name: str
    direction: str
    find: tuple[int, ...]
    replace: tuple[int, ...]


@lru_cache(maxsize=8)
def _pattern_table(relations: tuple[Relation, ...]):
    by_first: dict[int, list[_Pattern]] = {}
    inserts: dict[int, list[_Pattern]] = {k: [] for k in range(len(PARTITIONS))}
    for r in relations:
        for direction, a, b in ((FORWARD, r.lhs, r.rhs), (BACKWARD, r.rhs, r.lhs)):
            (src, find), (_, rep) = _raw(a), _raw(b)
            pat = _Pattern(r.name, direction, find, rep)
            if find:
                by_first.setdefault(find[0], []).append(pat)
            else:
                inserts[src].append(pat)
    return by_first, inserts


@dataclass(frozen=True)
class RewriteMove:
    relation: str
    position: int
    direction: str

    def as_tuple(self) -> tuple[str, int, str]:
        return (self.relation, self.position, self.direction)


def _moves(raw: RawWord, table) -> Iterator[tuple[RawWord, tuple[str, int, str]]]:
    by_first, inserts = table
    src, steps = raw
    n = len(steps)
    obj = src
    for i in range(n + 1):
        for pat in inserts[obj]:
            yield (src, steps[:i] + pat.replace + steps[i:]), (pat.name, i, pat.direction)
        if i == n:
            break
        for pat in by_first.get(steps[i], ()):
            m = len(pat.find)
            if steps[i:i + m] == pat.find:
                yield (src, steps[:i] + pat.replace + steps[i + m:]), (pat.name, i, pat.direction)
        obj = _GEN_TARGET[steps[i]]


def apply_move(w: BraidWord, move: RewriteMove | tuple, relations: Sequence[Relation] | None = None) -> BraidWord:
    """Replay one witness step, checking that the relation side really occurs."""
    if isinstance(move, tuple):
        move = RewriteMove(*move)
    rels = {r.name: r for r in (relations or relation_closure())}
    r = rels[move.relation]
    find, rep = (r.lhs, r.rhs) if move.direction == FORWARD else (r.rhs, r.lhs)
    w = w.normalized()
    i, m = move.position, len(find.steps)
    objs = w.objects()
    if i > len(w.steps) or objs[i] != find.source or w.steps[i:i + m] != find.steps:
        raise ValueError(f"{move} does not apply to {w}")
    return BraidWord(w.source, w.steps[:i] + rep.steps + w.steps[i + m:])


def rewrite_step(w: BraidWord, relations: Sequence[Relation] | None = None) -> set[BraidWord]:
    """One-step congruence neighbourhood of ``w``.

    Contains every single relation application, plus erasure of one explicit
    identity step, or insertion of one when ``w`` has none.  Never contains ``w``.
    """
    rels = tuple(relations or relation_closure())
    out = {_word(raw) for raw, _ in _moves(_raw(w), _pattern_table(rels))}
    ids = [k for k, g in enumerate(w.steps) if g.kind is Kind.IDENTITY]
    if ids:
        for k in ids:
            out.add(BraidWord(w.source, w.steps[:k] + w.steps[k + 1:]))
    else:
        for k, obj in enumerate(w.objects()):
            out.add(BraidWord(w.source, w.steps[:k] + (Generator(Kind.IDENTITY, obj, obj),) + w.steps[k:]))
    out.discard(w)
    return out


class Status(enum.Enum):
    PROVED_EQUAL = "ProvedEqual"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class EqualityVerdict:
    status: Status
    witness: tuple[RewriteMove, ...] | None
    states_explored: int

    @property
    def proved(self) -> bool:
        return self.status is Status.PROVED_EQUAL

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "witness": None if self.witness is None else [list(m.as_tuple()) for m in self.witness],
            "states_explored": self.states_explored,
        }


def replay(w: BraidWord, witness: Iterable[RewriteMove], relations: Sequence[Relation] | None = None) -> BraidWord:
    rels = list(relations or relation_closure())
    for move in witness:
        w = apply_move(w, move, rels)
    return w


def _inverse(move: RewriteMove) -> RewriteMove:
    return RewriteMove(move.relation, move.position, BACKWARD if move.direction == FORWARD else FORWARD)


def _path(parents: dict, node: RawWord) -> list[RewriteMove]:
    out = []
    while parents[node] is not None:
        node, move = parents[node]
        out.append(RewriteMove(*move))
    return out[::-1]


def equal(w1: BraidWord, w2: BraidWord, budget: Budget = Budget(),
          relations: Sequence[Relation] | None = None) -> EqualityVerdict:
    """Bounded bidirectional search for a derivation ``w1 ~ w2``."""
    if w1.source != w2.source:
        raise EndpointMismatch(w1.source, w2.source)
    if w1.target != w2.target:
        raise EndpointMismatch(w1.target, w2.target)
    table = _pattern_table(tuple(relations or relation_closure()))
    a, b = _raw(w1), _raw(w2)
    if a == b:
        return EqualityVerdict(Status.PROVED_EQUAL, (), 1)
    fwd: dict[RawWord, tuple | None] = {a: None}
    bwd: dict[RawWord, tuple | None] = {b: None}
    ffront, bfront = [a], [b]
    explored = 2
    while ffront and bfront and explored < budget.max_states:
        forward = len(ffront) <= len(bfront)
        front, seen, other = (ffront, fwd, bwd) if forward else (bfront, bwd, fwd)
        nxt = []
        meet = None
        for u in front:
            for v, move in _moves(u, table):
                if len(v[1]) > budget.max_len or v in seen:
                    continue
                seen[v] = (u, move)
                nxt.append(v)
                explored += 1
                if meet is None and v in other:
                    meet = v
        if meet is not None:
            fpath = _path(fwd, meet)
            bpath = _path(bwd, meet)
            witness = tuple(fpath) + tuple(_inverse(m) for m in reversed(bpath))
            return EqualityVerdict(Status.PROVED_EQUAL, witness, explored)
        nxt.sort(key=_raw_key)
        if forward:
            ffront = nxt
        else:
            bfront = nxt
    return EqualityVerdict(Status.UNKNOWN, None, explored)


def explore(w: BraidWord, budget: Budget = Budget(),
            relations: Sequence[Relation] | None = None) -> list[BraidWord]:
    """Level-synchronous BFS of the congruence class of ``w`` within ``budget``."""
    table = _pattern_table(tuple(relations or relation_closure()))
    start = _raw(w)
    seen = {start}
    front = [start]
    while front and len(seen) < budget.max_states:
        nxt = []
        for u in front:
            for v, _ in _moves(u, table):
                if len(v[1]) <= budget.max_len and v not in seen:
                    seen.add(v)
                    nxt.append(v)
        nxt.sort(key=_raw_key)
        front = nxt
    return [_word(r) for r in sorted(seen, key=_raw_key)]


def normalize(w: BraidWord, budget: Budget = Budget(max_states=5_000, max_len=8),
              relations: Sequence[Relation] | None = None) -> BraidWord:
    """Shortest, then lexicographically least, word found in the explored class.

    Re-explores from each new minimum until it is stable, so the result is a
    fixed point for the given budget.
    """
    current = w.normalized()
    while True:
        best = explore(current, budget, relations)[0]
        if best == current:
            return current
        current = best


def enumerate_words(src: Partition, tgt: Partition, max_len: int,
                    budget: Budget = Budget(max_states=2_000, max_len=8),
                    relations: Sequence[Relation] | None = None) -> list[BraidWord]:
    """One representative (the least word) per provable-equality class of words ``src -> tgt``."""
    words = words_between(src, tgt, max_len)
    index = {_raw(w): k for k, w in enumerate(words)}
    parent = list(range(len(words)))

    def find(k: int) -> int:
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    for k, w in enumerate(words):
        if find(k) != k:
            continue
        for u in explore(w, budget, relations):
            j = index.get(_raw(u))
            if j is not None:
                ra, rb = find(k), find(j)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    classes: dict[int, BraidWord] = {}
    for k, w in enumerate(words):
        classes.setdefault(find(k), w)
    return sorted(classes.values(), key=lambda w: w.sort_key)


def enumerate_classes(src: Partition, tgt: Partition, max_len: int,
                      budget: Budget = Budget(max_states=2_000, max_len=8),
                      relations: Sequence[Relation] | None = None) -> list[list[BraidWord]]:
    """Like :func:`enumerate_words` but returns every class in full."""
    reps = enumerate_words(src, tgt, max_len, budget, relations)
    words = words_between(src, tgt, max_len)
    groups: list[list[BraidWord]] = [[r] for r in reps]
    for w in words:
        if w in reps:
            continue
        for g in groups:
            if equal(g[0], w, budget, relations).proved:
                g.append(w)
                break
        else:
            groups.append([w])
    return groups
