"""Integer matrix shadow of the action on K-groups of flag-variety cotangent bundles.

The four categories are modelled by the Grothendieck groups of the projective
cores of the cotangent bundles: ``K(pt)``, ``K(P^2)``, ``K(P^2 dual)`` and
``K(Fl_3)`` of ranks 1, 3, 3, 6.  Every class lives inside ``K(Fl_3)`` through
pullback, so all computations happen in the single ring

    Z[x1, x2, x3]^{+-1} / (x1 x2 x3 - 1, e1 - 3, e2 - 3)

where ``x_i`` is the class of the dual of the i-th tautological subquotient
line (``V1``, ``V2/V1``, ``C^3/V2``).  With that convention the isobaric
Demazure operator ``pi_i`` is exactly pull-push along the P^1-fibration that
forgets the ``i``-dimensional subspace.

Functors, decategorified at ``v = -1``:

* fork ``f[12>111] = i_B* pi_A^*``: pull back, then multiply by the Koszul
  class ``1 - x2/x3`` of the divisor ``B`` (its conormal line restricted to the
  core is the relative tangent line of ``Fl_3 -> P^2``);
* merge right adjoint ``R = pi_A* i_B^!``: twist by the normal line
  ``x3/x2``, shift ``[-1]`` (sign -1), push forward with ``pi_2``.  The twist
  ``x3/x2`` is ``V1^* (x) (Lambda^2 V2)^2`` in these variables;
* ``f[3>12] = i_{P^2}* pi^*``: ``1 -> lambda_{-1}(T P^2)``;
  ``R`` is ``chi(P^2, K (x) -)`` with shift ``[-2]`` (sign +1);
* the ``21`` side swaps the roles of ``pi_1`` and ``pi_2``;
* merges ``g`` are ``R[1]`` or ``R[2]``, crossings are cone classes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Sequence

import numpy as np

from .braid import (
    P3, P12, P21, P111, BraidWord, EndpointMismatch, Generator, IllegalGenerator, Kind,
    Partition, legal_generators,
)
from .polynomials import X1, X2, X3, SymLaurent


def demazure(i: int, f: SymLaurent) -> SymLaurent:
    """Isobaric Demazure operator ``(x_i f - x_{i+1} s_i f) / (x_i - x_{i+1})``."""
    if i not in (1, 2):
        raise ValueError("Demazure index must be 1 or 2")
    xi, xj = SymLaurent.var(i), SymLaurent.var(i + 1)
    return (xi * f - xj * f.swap(i)).divide_by_difference(i)


def demazure_word(word: Sequence[int], f: SymLaurent) -> SymLaurent:
    """Apply ``pi_{word[-1]}`` first, i.e. ``pi_{w1} pi_{w2} ... f``."""
    for i in reversed(word):
        f = demazure(i, f)
    return f


FL3_BASIS_EXPONENTS: tuple[tuple[int, int], ...] = ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (2, 1))


@lru_cache(maxsize=None)
def _reduce_y(a: int, b: int, c: int) -> tuple[tuple[tuple[int, int], int], ...]:
    # y_i = x_i - 1; ideal (e1(y), e2(y), e3(y)) with Groebner basis
    # y1 + y2 + y3, y1^2 + y1 y2 + y2^2, y1^3
    if c:
        out: dict[tuple[int, int], int] = {}
        for part in (_reduce_y(a + 1, b, c - 1), _reduce_y(a, b + 1, c - 1)):
            for k, v in part:
                out[k] = out.get(k, 0) - v
        return tuple((k, v) for k, v in out.items() if v)
    if b >= 2:
        out = {}
        for part in (_reduce_y(a + 2, b - 2, 0), _reduce_y(a + 1, b - 1, 0)):
            for k, v in part:
                out[k] = out.get(k, 0) - v
        return tuple((k, v) for k, v in out.items() if v)
    if a >= 3:
        return ()
    return (((a, b), 1),)


def _fl3_coordinates(f: SymLaurent) -> list[int]:
    y: dict[tuple[int, int], int] = {}
    for (a, b, c), k in f.canonical().items():
        for i, j, l in itertools.product(range(a + 1), range(b + 1), range(c + 1)):
            m = k * comb(a, i) * comb(b, j) * comb(c, l)
            for key, v in _reduce_y(i, j, l):
                y[key] = y.get(key, 0) + m * v
    # x1^a x2^b = sum C(a,i) C(b,j) y1^i y2^j; invert the binomial transform
    out = []
    for a, b in FL3_BASIS_EXPONENTS:
        out.append(sum((-1) ** (i - a + j - b) * comb(i, a) * comb(j, b) * v
                       for (i, j), v in y.items() if i >= a and j >= b))
    return out


class NotInModule(ArithmeticError):
    """A class does not lie in the requested sub-lattice of ``K(Fl_3)``."""


@dataclass(frozen=True, eq=False)
class KBasisModule:
    name: str
    partition: Partition
    basis: tuple[SymLaurent, ...]
    symmetric_in: tuple[int, ...]  # Demazure indices fixing every element

    @property
    def rank(self) -> int:
        return len(self.basis)

    def embedding(self) -> np.ndarray:
        """Columns: ``K(Fl_3)`` coordinates of the basis elements."""
        return _embedding(self.name)

    def coordinates(self, f: SymLaurent) -> np.ndarray:
        return reduce_class(f, self)

    def element(self, coords: Sequence[int]) -> SymLaurent:
        out = SymLaurent()
        for c, b in zip(coords, self.basis):
            out = out + int(c) * b
        return out

    def __repr__(self) -> str:
        return f"KBasisModule({self.name}, rank={self.rank})"


KPT = KBasisModule("Kpt", P3, (SymLaurent.const(1),), (1, 2))
KP2 = KBasisModule("KP2", P12, (SymLaurent.const(1), X1, X1 ** 2), (2,))
# x1 x2 is the inverse of x3: the hyperplane line on the dual plane
KP2DUAL = KBasisModule("KP2dual", P21, (SymLaurent.const(1), X1 * X2, (X1 * X2) ** 2), (1,))
KFL3 = KBasisModule("KFl3", P111, tuple(SymLaurent.monomial(a, b, 0) for a, b in FL3_BASIS_EXPONENTS), ())

MODULES: dict[Partition, KBasisModule] = {P3: KPT, P12: KP2, P21: KP2DUAL, P111: KFL3}
_BY_NAME = {m.name: m for m in MODULES.values()}


@lru_cache(maxsize=None)
def _embedding(name: str) -> np.ndarray:
    m = _BY_NAME[name]
    return np.array([_fl3_coordinates(b) for b in m.basis], dtype=object).T


@lru_cache(maxsize=None)
def _left_inverse(name: str) -> tuple[tuple[Fraction, ...], ...]:
    """Exact rational left inverse of the embedding (Gauss-Jordan on E^T E)."""
    E = _embedding(name)
    r = E.shape[1]
    G = [[Fraction(int(sum(E[k, i] * E[k, j] for k in range(E.shape[0])))) for j in range(r)]
         + [Fraction(int(i == j)) for j in range(r)] for i in range(r)]
    for col in range(r):
        piv = next(row for row in range(col, r) if G[row][col] != 0)
        G[col], G[piv] = G[piv], G[col]
        p = G[col][col]
        G[col] = [x / p for x in G[col]]
        for row in range(r):
            if row != col and G[row][col] != 0:
                fac = G[row][col]
                G[row] = [x - fac * y for x, y in zip(G[row], G[col])]
    ginv = [row[r:] for row in G]
    # (E^T E)^{-1} E^T
    return tuple(tuple(sum(ginv[i][j] * int(E[k, j]) for j in range(r)) for k in range(E.shape[0]))
                 for i in range(r))


def reduce_class(f: SymLaurent, module: KBasisModule = KFL3) -> np.ndarray:
    """Exact integer coordinates of ``f`` in the basis of ``module``."""
    v = _fl3_coordinates(f)
    if module is KFL3:
        return np.array(v, dtype=object)
    L = _left_inverse(module.name)
    coords = [sum(row[k] * v[k] for k in range(len(v))) for row in L]
    if any(c.denominator != 1 for c in coords):
        raise NotInModule(f"{f} has non-integral coordinates in {module.name}")
    coords = [int(c) for c in coords]
    if list(module.embedding().dot(np.array(coords, dtype=object))) != v:
        raise NotInModule(f"{f} does not lie in {module.name}")
    return np.array(coords, dtype=object)


@dataclass(frozen=True, eq=False)
class KOperator:
    source: KBasisModule
    target: KBasisModule
    matrix: np.ndarray

    def __post_init__(self):
        if self.matrix.shape != (self.target.rank, self.source.rank):
            raise ValueError(f"matrix shape {self.matrix.shape} does not fit "
                             f"{self.source.name} -> {self.target.name}")

    @classmethod
    def identity(cls, module: KBasisModule) -> KOperator:
        return cls(module, module, _eye(module.rank))

    @classmethod
    def from_function(cls, source: KBasisModule, target: KBasisModule,
                      fn: Callable[[SymLaurent], SymLaurent]) -> KOperator:
        cols = [reduce_class(fn(b), target) for b in source.basis]
        return cls(source, target, np.array(cols, dtype=object).T.reshape(target.rank, source.rank))

    def then(self, other: KOperator) -> KOperator:
        """Diagram-order composition: apply ``self`` first."""
        if self.target is not other.source:
            raise EndpointMismatch(self.target.partition, other.source.partition)
        return KOperator(self.source, other.target, other.matrix.dot(self.matrix))

    def __matmul__(self, other: KOperator) -> KOperator:
        return other.then(self)

    def __add__(self, other: KOperator) -> KOperator:
        self._check_parallel(other)
        return KOperator(self.source, self.target, self.matrix + other.matrix)

    def __sub__(self, other: KOperator) -> KOperator:
        self._check_parallel(other)
        return KOperator(self.source, self.target, self.matrix - other.matrix)

    def __neg__(self) -> KOperator:
        return KOperator(self.source, self.target, -self.matrix)

    def scale(self, c: int) -> KOperator:
        return KOperator(self.source, self.target, self.matrix * c)

    def _check_parallel(self, other: KOperator) -> None:
        if self.source is not other.source or self.target is not other.target:
            raise EndpointMismatch(self.source.partition, other.source.partition)

    def apply(self, f: SymLaurent) -> SymLaurent:
        return self.target.element(self.matrix.dot(reduce_class(f, self.source)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, KOperator):
            return NotImplemented
        return (self.source is other.source and self.target is other.target
                and np.array_equal(self.matrix, other.matrix))

    __hash__ = None

    def tolist(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.matrix]

    def __repr__(self) -> str:
        return f"KOperator({self.source.name}->{self.target.name}, {self.tolist()})"


def _eye(n: int) -> np.ndarray:
    m = np.zeros((n, n), dtype=object)
    for i in range(n):
        m[i, i] = 1
    return m


def euler_characteristic(f: SymLaurent) -> int:
    """Push forward ``Fl_3 -> pt``: ``pi_1 pi_2 pi_1`` then the constant coordinate."""
    coords = reduce_class(demazure_word((1, 2, 1), f), KFL3)
    if any(coords[1:]):
        raise ArithmeticError(f"full symmetrisation of {f} is not a constant class")
    return int(coords[0])


# Koszul, twist and canonical classes (see module docstring)
KOSZUL_B = 1 - X2 * X3 ** -1          # [O_B] restricted to the core
KOSZUL_D = 1 - X1 * X2 ** -1          # [O_D]
NORMAL_B = X3 * X2 ** -1               # O_B(B) = V1^* (x) (Lambda^2 V2)^2
NORMAL_D = X2 * X1 ** -1               # O_D(D)
LAMBDA_TP2 = (1 - X1 * X2 ** -1) * (1 - X1 * X3 ** -1)       # [O_{P^2}] in T^*P^2
LAMBDA_TP2DUAL = (1 - X1 * X3 ** -1) * (1 - X2 * X3 ** -1)
CANONICAL_P2 = X1 ** -3
CANONICAL_P2DUAL = X3 ** 3


def _fork_functions() -> dict[tuple[Partition, Partition], tuple[Callable, Callable]]:
    """(fork, right adjoint) as functions on classes, keyed by fork endpoints."""
    return {
        (P12, P111): (lambda f: KOSZUL_B * f, lambda f: -demazure(2, NORMAL_B * f)),
        (P21, P111): (lambda f: KOSZUL_D * f, lambda f: -demazure(1, NORMAL_D * f)),
        (P3, P12): (lambda f: LAMBDA_TP2 * f, lambda f: SymLaurent.const(euler_characteristic(CANONICAL_P2 * f))),
        (P3, P21): (lambda f: LAMBDA_TP2DUAL * f,
                    lambda f: SymLaurent.const(euler_characteristic(CANONICAL_P2DUAL * f))),
    }


@lru_cache(maxsize=None)
def fork_operator(src: Partition, tgt: Partition) -> KOperator:
    fn, _ = _fork_functions()[(src, tgt)]
    return KOperator.from_function(MODULES[src], MODULES[tgt], fn)


@lru_cache(maxsize=None)
def right_adjoint_operator(src: Partition, tgt: Partition) -> KOperator:
    """Right adjoint ``R`` of the fork ``tgt -> src`` (so ``R: src -> tgt``)."""
    _, fn = _fork_functions()[(tgt, src)]
    return KOperator.from_function(MODULES[src], MODULES[tgt], fn)


def _merge_sign(src: Partition, tgt: Partition) -> int:
    # G = R[1] on (1,1)-merges, R[2] on (1,2)/(2,1)-merges; [m] has sign (-1)^m
    return -1 if src == P111 else 1


@lru_cache(maxsize=None)
def build_generator_operator(g: Generator) -> KOperator:
    """Integer matrix of a generating diagram."""
    if not isinstance(g, Generator):
        raise IllegalGenerator(f"not a generator: {g!r}")
    if g.kind is Kind.IDENTITY:
        return KOperator.identity(MODULES[g.source])
    if g.kind is Kind.FORK:
        return fork_operator(g.source, g.target)
    if g.kind is Kind.MERGE:
        return right_adjoint_operator(g.source, g.target).scale(_merge_sign(g.source, g.target))
    from .split import crossing_class  # cone classes are shared with the split model
    return evaluate_sum(crossing_class(g))


def atom_operator(word: BraidWord) -> KOperator:
    """Operator of a fork/merge atom, with merges read as right adjoints ``R``."""
    op = KOperator.identity(MODULES[word.source])
    for g in word.steps:
        if g.kind is Kind.FORK:
            op = op.then(fork_operator(g.source, g.target))
        elif g.kind is Kind.MERGE:
            op = op.then(right_adjoint_operator(g.source, g.target))
        elif g.kind is not Kind.IDENTITY:
            raise IllegalGenerator(f"atoms contain only forks and merges, got {g}")
    return op


def evaluate_sum(s) -> KOperator:
    """Evaluate a split-model formal sum at ``v = -1``."""
    out = KOperator(MODULES[s.source], MODULES[s.target],
                    np.zeros((MODULES[s.target].rank, MODULES[s.source].rank), dtype=object))
    for atom, poly in s.terms.items():
        out = out + atom_operator(atom.word).scale(poly.evaluate(-1))
    return out


def evaluate_word(w: BraidWord, merges_as_adjoints: bool = False) -> KOperator:
    """Ordered product of generator matrices (first step rightmost).

    With ``merges_as_adjoints`` every merge letter is read as the right
    adjoint ``R`` rather than the merge functor ``G = R[1]`` or ``R[2]``;
    crossings are then rejected.
    """
    if merges_as_adjoints:
        return atom_operator(w)
    op = KOperator.identity(MODULES[w.source])
    for g in w.steps:
        op = op.then(build_generator_operator(g))
    return op


def all_generator_operators() -> dict[Generator, KOperator]:
    return {g: build_generator_operator(g) for g in legal_generators()}


# -- certificates ---------------------------------------------------------

def schubert_point_class() -> SymLaurent:
    """Structure sheaf of the flag ``(<e1>, <e1, e2>)``.

    Koszul class of ``V1 = <e1>`` (a section of ``V1^* (x) C^2``) times that
    of ``e2 in V2`` (a section of ``C^3 / V2``).
    """
    return (1 - X1 ** -1) ** 2 * (1 - X3)


def grothendieck_classes() -> dict[tuple[int, ...], SymLaurent]:
    """Schubert structure sheaves ``O_{X_w} = pi_w [O_pt]`` keyed by a reduced word of ``w``."""
    return {w: demazure_word(w, schubert_point_class())
            for w in ((), (1,), (2,), (1, 2), (2, 1), (1, 2, 1))}


def _int_det(m: Sequence[Sequence[int]]) -> int:
    n = len(m)
    a = [[Fraction(int(x)) for x in row] for row in m]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            fac = a[r][c] / a[c][c]
            a[r] = [x - fac * y for x, y in zip(a[r], a[c])]
    assert det.denominator == 1
    return int(det)


def unimodularity_certificate(module: KBasisModule) -> int:
    """Determinant of the change from the module basis to its Grothendieck classes.

    The Grothendieck classes of a partial flag module are the ``G_w`` fixed by
    the module's Demazure operators.  Returns the determinant, which must be +-1.
    """
    classes = [f for f in grothendieck_classes().values()
               if all(demazure(i, f) == f for i in module.symmetric_in)]
    if len(classes) != module.rank:
        raise ArithmeticError(f"{module.name}: found {len(classes)} invariant classes")
    return _int_det([list(reduce_class(f, module)) for f in classes])


def saturation_gcd(module: KBasisModule) -> int:
    """gcd of maximal minors of the embedding into ``K(Fl_3)`` (1 iff saturated)."""
    from math import gcd
    E = module.embedding()
    r = module.rank
    g = 0
    for rows in itertools.combinations(range(E.shape[0]), r):
        g = gcd(g, abs(_int_det([[E[i, j] for j in range(r)] for i in rows])))
    return g
