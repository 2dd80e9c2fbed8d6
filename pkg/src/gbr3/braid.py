"""Objects, generators and words of the generalised braid category on three strands.

Objects are the ordered partitions of 3.  A word is a composable sequence of
generating diagrams stored in diagram order: the first step is applied first,
reading from source to target.

Text grammar (whitespace between tokens is ignored)::

    word  := "id[" obj "]" | token (";" token)*
    obj   := "3" | "12" | "21" | "111"
    token := kind "[" obj ">" obj "]" | kind "[111," pos "]"
    kind  := "f" | "g" | "t" | "d"
    pos   := "1" | "2"

``f`` is a fork, ``g`` a merge, ``t`` a positive crossing and ``d`` a negative
crossing.  ``t[111,1]`` crosses strands 1 and 2, ``t[111,2]`` strands 2 and 3.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class BraidError(ValueError):
    """Base class for word construction errors."""


class EndpointMismatch(BraidError):
    def __init__(self, left: Partition, right: Partition, message: str | None = None):
        self.left = left
        self.right = right
        super().__init__(message or f"endpoint mismatch: {left} vs {right}")


class IllegalGenerator(BraidError):
    pass


class BraidSyntaxError(BraidError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} at position {position}")


@dataclass(frozen=True, order=False)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        if any(p < 1 for p in self.parts) or sum(self.parts) != 3:
            raise ValueError(f"not an ordered partition of 3: {self.parts}")

    @classmethod
    def parse(cls, label: str) -> Partition:
        try:
            return _BY_LABEL[label]
        except KeyError:
            raise ValueError(f"unknown object {label!r}") from None

    @property
    def label(self) -> str:
        return "".join(map(str, self.parts))

    @property
    def rank(self) -> int:
        """Position in the fixed object order 3 < 12 < 21 < 111."""
        return _ORDER.index(self.parts)

    def reversed(self) -> Partition:
        return Partition(self.parts[::-1])

    def __lt__(self, other: Partition) -> bool:
        return self.rank < other.rank

    def __str__(self) -> str:
        return self.label

    def __repr__(self) -> str:
        return f"Partition({self.label})"


_ORDER = [(3,), (1, 2), (2, 1), (1, 1, 1)]
P3, P12, P21, P111 = (Partition(p) for p in _ORDER)
PARTITIONS: tuple[Partition, ...] = (P3, P12, P21, P111)
_BY_LABEL = {p.label: p for p in PARTITIONS}


class Kind(enum.Enum):
    FORK = "f"
    MERGE = "g"
    POS = "t"
    NEG = "d"
    IDENTITY = "id"

    @property
    def is_crossing(self) -> bool:
        return self in (Kind.POS, Kind.NEG)

    def flipped(self) -> Kind:
        return {Kind.POS: Kind.NEG, Kind.NEG: Kind.POS}.get(self, self)


_KIND_RANK = {Kind.FORK: 0, Kind.MERGE: 1, Kind.POS: 2, Kind.NEG: 3, Kind.IDENTITY: 4}

# (source, target) pairs of the forks; merges are the reverses
_FORK_EDGES = [(P3, P12), (P3, P21), (P12, P111), (P21, P111)]
_MIXED_EDGES = [(P12, P21), (P21, P12)]


@dataclass(frozen=True)
class Generator:
    kind: Kind
    source: Partition
    target: Partition
    position: int | None = None

    def __post_init__(self):
        if (self.kind, self.source, self.target, self.position) not in _LEGAL_KEYS:
            raise IllegalGenerator(f"illegal generator {self._text()}")

    def _text(self) -> str:
        if self.kind is Kind.IDENTITY:
            return f"id[{self.source}]"
        if self.position is not None:
            return f"{self.kind.value}[111,{self.position}]"
        return f"{self.kind.value}[{self.source}>{self.target}]"

    @property
    def token(self) -> str:
        return self._text()

    @property
    def sort_key(self) -> tuple[int, int, int, int]:
        return (_KIND_RANK[self.kind], self.source.rank, self.target.rank, self.position or 0)

    def to_json(self) -> dict:
        out = {"kind": self.kind.value, "src": self.source.label, "tgt": self.target.label}
        if self.position is not None:
            out["pos"] = self.position
        return out

    @classmethod
    def from_json(cls, data: dict) -> Generator:
        return cls(Kind(data["kind"]), Partition.parse(data["src"]),
                   Partition.parse(data["tgt"]), data.get("pos"))

    def __str__(self) -> str:
        return self._text()

    def __repr__(self) -> str:
        return f"Generator({self._text()})"


def _legal_keys() -> list[tuple]:
    keys = []
    for s, t in _FORK_EDGES:
        keys.append((Kind.FORK, s, t, None))
    for s, t in _FORK_EDGES:
        keys.append((Kind.MERGE, t, s, None))
    for kind in (Kind.POS, Kind.NEG):
        for pos in (1, 2):
            keys.append((kind, P111, P111, pos))
    for kind in (Kind.POS, Kind.NEG):
        for s, t in _MIXED_EDGES:
            keys.append((kind, s, t, None))
    for p in PARTITIONS:
        keys.append((Kind.IDENTITY, p, p, None))
    return keys


_LEGAL_LIST = _legal_keys()
_LEGAL_KEYS = frozenset(_LEGAL_LIST)


def legal_generators() -> list[Generator]:
    """The 16 generating diagrams followed by the 4 identities, in a fixed order."""
    return [Generator(*k) for k in _LEGAL_LIST]


def fork(src: str, tgt: str) -> Generator:
    return Generator(Kind.FORK, Partition.parse(src), Partition.parse(tgt))


def merge(src: str, tgt: str) -> Generator:
    return Generator(Kind.MERGE, Partition.parse(src), Partition.parse(tgt))


def crossing(positive: bool, src: str = "111", tgt: str = "111", position: int | None = None) -> Generator:
    kind = Kind.POS if positive else Kind.NEG
    return Generator(kind, Partition.parse(src), Partition.parse(tgt), position)


@dataclass(frozen=True)
class BraidWord:
    source: Partition
    steps: tuple[Generator, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        here = self.source
        for k, g in enumerate(self.steps):
            if g.source != here:
                raise EndpointMismatch(here, g.source, f"step {k} ({g}) starts at {g.source}, expected {here}")
            here = g.target

    @classmethod
    def identity(cls, obj: Partition | str) -> BraidWord:
        if isinstance(obj, str):
            obj = Partition.parse(obj)
        return cls(obj, ())

    @classmethod
    def of(cls, *steps: Generator) -> BraidWord:
        if not steps:
            raise ValueError("use BraidWord.identity for the empty word")
        return cls(steps[0].source, steps)

    @property
    def target(self) -> Partition:
        return self.steps[-1].target if self.steps else self.source

    def __len__(self) -> int:
        return len(self.steps)

    def objects(self) -> list[Partition]:
        """The object before each step, followed by the target (length ``len + 1``)."""
        out = [self.source]
        out.extend(g.target for g in self.steps)
        return out

    def normalized(self) -> BraidWord:
        """Erase explicit identity steps."""
        if all(g.kind is not Kind.IDENTITY for g in self.steps):
            return self
        return BraidWord(self.source, tuple(g for g in self.steps if g.kind is not Kind.IDENTITY))

    @property
    def sort_key(self) -> tuple:
        return (len(self.steps), tuple(g.sort_key for g in self.steps), self.source.rank)

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"BraidWord({render(self)!r})"

    def to_json(self) -> dict:
        return {"source": self.source.label, "steps": [g.to_json() for g in self.steps]}

    @classmethod
    def from_json(cls, data: dict) -> BraidWord:
        return cls(Partition.parse(data["source"]), tuple(Generator.from_json(s) for s in data["steps"]))


def compose(w1: BraidWord, w2: BraidWord) -> BraidWord:
    """``w1`` followed by ``w2``."""
    if w1.target != w2.source:
        raise EndpointMismatch(w1.target, w2.source)
    return BraidWord(w1.source, w1.steps + w2.steps)


_TOKEN = re.compile(
    r"\s*(?:(?P<id>id)\[(?P<idobj>[0-9]+)\]"
    r"|(?P<kind>[a-z]+)\[(?:(?P<src>[0-9]+)>(?P<tgt>[0-9]+)|(?P<pobj>[0-9]+),\s*(?P<pos>[0-9]+))\])\s*"
)


def parse(text: str) -> BraidWord:
    """Parse the text grammar into a word."""
    tokens = []
    i = 0
    n = len(text)
    if not text.strip():
        raise BraidSyntaxError("empty input", 0)
    while True:
        m = _TOKEN.match(text, i)
        if not m:
            j = i + len(text[i:]) - len(text[i:].lstrip())
            raise BraidSyntaxError(f"unexpected {text[j:j + 8]!r}", j)
        tokens.append((m, i + (len(m.group(0)) - len(m.group(0).lstrip()))))
        i = m.end()
        if i == n:
            break
        if text[i] != ";":
            raise BraidSyntaxError(f"expected ';' but found {text[i]!r}", i)
        i += 1

    def obj(label: str, pos: int) -> Partition:
        try:
            return Partition.parse(label)
        except ValueError:
            raise IllegalGenerator(f"unknown object {label!r} at position {pos}") from None

    if tokens[0][0].group("id"):
        if len(tokens) > 1:
            raise BraidSyntaxError("identity token must stand alone", tokens[1][1])
        m, pos = tokens[0]
        return BraidWord.identity(obj(m.group("idobj"), pos))

    steps = []
    for m, pos in tokens:
        if m.group("id"):
            raise BraidSyntaxError("identity token must stand alone", pos)
        try:
            kind = Kind(m.group("kind"))
        except ValueError:
            raise IllegalGenerator(f"unknown generator kind {m.group('kind')!r} at position {pos}") from None
        if kind is Kind.IDENTITY:
            raise BraidSyntaxError("identity token must stand alone", pos)
        if m.group("pos") is not None:
            src = tgt = obj(m.group("pobj"), pos)
            position = int(m.group("pos"))
            if src != P111:
                raise IllegalGenerator(f"positioned crossing must live on 111 at position {pos}")
        else:
            src, tgt = obj(m.group("src"), pos), obj(m.group("tgt"), pos)
            position = None
        try:
            steps.append(Generator(kind, src, tgt, position))
        except IllegalGenerator as exc:
            raise IllegalGenerator(f"{exc} at position {pos}") from None
    return BraidWord.of(*steps)


def render(w: BraidWord) -> str:
    """Canonical text; explicit identity steps are erased first."""
    w = w.normalized()
    if not w.steps:
        return f"id[{w.source}]"
    return " ; ".join(g.token for g in w.steps)


class Axis(enum.Enum):
    VERTICAL = "vertical"
    HORIZONTAL = "horizontal"
    BLACKBOARD = "blackboard"


def _reflect_generator(g: Generator, axis: Axis) -> Generator:
    if axis is Axis.BLACKBOARD:
        return Generator(g.kind.flipped(), g.source, g.target, g.position)
    if axis is Axis.HORIZONTAL:
        pos = None if g.position is None else 3 - g.position
        return Generator(g.kind.flipped(), g.source.reversed(), g.target.reversed(), pos)
    kind = {Kind.FORK: Kind.MERGE, Kind.MERGE: Kind.FORK}.get(g.kind, g.kind.flipped())
    return Generator(kind, g.target, g.source, g.position)


def reflect(w: BraidWord, axis: Axis | str) -> BraidWord:
    """Vertical, horizontal or blackboard reflection of a word.

    Vertical reverses the step order (so it is contravariant in composition);
    horizontal mirrors the partitions and the crossing position; all three
    reverse the crossing parity.
    """
    axis = Axis(axis)
    steps = tuple(_reflect_generator(g, axis) for g in w.steps)
    if axis is Axis.VERTICAL:
        return BraidWord(w.target, steps[::-1])
    if axis is Axis.HORIZONTAL:
        return BraidWord(w.source.reversed(), steps)
    return BraidWord(w.source, steps)


def reflect_all(w: BraidWord, axes: Iterable[Axis]) -> BraidWord:
    for ax in axes:
        w = reflect(w, ax)
    return w


def words_between(src: Partition, tgt: Partition, max_len: int,
                  alphabet: Sequence[Generator] | None = None) -> list[BraidWord]:
    """All identity-free words ``src -> tgt`` of length at most ``max_len``, sorted."""
    alphabet = [g for g in (alphabet or legal_generators()) if g.kind is not Kind.IDENTITY]
    by_source: dict[Partition, list[Generator]] = {p: [] for p in PARTITIONS}
    for g in alphabet:
        by_source[g.source].append(g)
    out = []
    layer = [BraidWord.identity(src)]
    for length in range(max_len + 1):
        out.extend(w for w in layer if w.target == tgt)
        if length == max_len:
            break
        layer = [BraidWord(w.source, w.steps + (g,)) for w in layer for g in by_source[w.target]]
    return sorted(out, key=lambda w: w.sort_key)
