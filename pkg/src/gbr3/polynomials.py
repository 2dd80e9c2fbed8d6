"""Exact Laurent polynomial arithmetic.

Two small carriers live here:

* :class:`ShiftPoly` -- integer Laurent polynomials in one variable ``v``.
  ``v**k`` records a homological shift ``[-k]``, so ``[m]`` is ``v**(-m)`` and
  evaluating at ``v = -1`` gives ordinary Euler characteristics.
* :class:`SymLaurent` -- integer Laurent polynomials in ``x1, x2, x3`` taken
  modulo ``x1*x2*x3 - 1``.  The representative is kept raw during arithmetic
  (so divided differences stay exact) and canonicalised only for comparison.

Both are immutable; coefficients are Python ints.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Mapping


class InexactDivision(ArithmeticError):
    """A divided difference left a nonzero remainder (always an internal bug)."""


def _prune(terms: Mapping) -> dict:
    return {k: c for k, c in terms.items() if c}


class ShiftPoly:
    """Integer Laurent polynomial in the shift variable ``v``."""

    __slots__ = ("_c",)

    def __init__(self, coefficients: Mapping[int, int] | None = None):
        self._c = _prune({int(k): int(c) for k, c in (coefficients or {}).items()})

    @classmethod
    def const(cls, c: int) -> ShiftPoly:
        return cls({0: c})

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> ShiftPoly:
        return cls({k: c})

    @classmethod
    def shift(cls, m: int) -> ShiftPoly:
        """Class of the shift functor ``[m]``."""
        return cls({-m: 1})

    @property
    def coefficients(self) -> dict[int, int]:
        return dict(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def __add__(self, other) -> ShiftPoly:
        other = _as_shift(other)
        out = dict(self._c)
        for k, c in other._c.items():
            out[k] = out.get(k, 0) + c
        return ShiftPoly(out)

    __radd__ = __add__

    def __neg__(self) -> ShiftPoly:
        return ShiftPoly({k: -c for k, c in self._c.items()})

    def __sub__(self, other) -> ShiftPoly:
        return self + (-_as_shift(other))

    def __rsub__(self, other) -> ShiftPoly:
        return _as_shift(other) - self

    def __mul__(self, other) -> ShiftPoly:
        other = _as_shift(other)
        out: dict[int, int] = defaultdict(int)
        for a, c in self._c.items():
            for b, d in other._c.items():
                out[a + b] += c * d
        return ShiftPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> ShiftPoly:
        if n < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials are invertible")
            ((k, c),) = self._c.items()
            if c not in (1, -1):
                raise ValueError("only unit monomials are invertible")
            return ShiftPoly({-k * (-n): c ** (-n)})
        out = ShiftPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def evaluate(self, v: int) -> int:
        """Value at an integer unit ``v`` (only ``v = +-1`` keeps integrality)."""
        if v not in (1, -1):
            raise ValueError("evaluate only at v = 1 or v = -1")
        return sum(c * v ** (k % 2) for k, c in self._c.items())

    def at_minus_one(self) -> ShiftPoly:
        return ShiftPoly.const(self.evaluate(-1))

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = ShiftPoly.const(other)
        if not isinstance(other, ShiftPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def to_json(self) -> dict[str, int]:
        return {str(k): c for k, c in sorted(self._c.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> ShiftPoly:
        return cls({int(k): int(c) for k, c in data.items()})

    def __repr__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for k, c in sorted(self._c.items()):
            mono = "" if k == 0 else ("v" if k == 1 else f"v^{k}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _as_shift(x) -> ShiftPoly:
    if isinstance(x, ShiftPoly):
        return x
    if isinstance(x, int):
        return ShiftPoly.const(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to ShiftPoly")


V = ShiftPoly.monomial(1)

Exponent = tuple[int, int, int]


class SymLaurent:
    """Laurent polynomial in ``x1, x2, x3`` over the integers, modulo ``x1 x2 x3 = 1``."""

    __slots__ = ("_c",)

    def __init__(self, terms: Mapping[Exponent, int] | None = None):
        self._c = _prune({tuple(k): int(c) for k, c in (terms or {}).items()})

    @classmethod
    def const(cls, c: int) -> SymLaurent:
        return cls({(0, 0, 0): c})

    @classmethod
    def monomial(cls, a: int, b: int, c: int, coeff: int = 1) -> SymLaurent:
        return cls({(a, b, c): coeff})

    @classmethod
    def var(cls, i: int) -> SymLaurent:
        e = [0, 0, 0]
        e[i - 1] = 1
        return cls({tuple(e): 1})

    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._c)

    def canonical(self) -> dict[Exponent, int]:
        """Representative whose monomials all have minimum exponent zero."""
        out: dict[Exponent, int] = defaultdict(int)
        for (a, b, c), k in self._c.items():
            m = min(a, b, c)
            out[(a - m, b - m, c - m)] += k
        return _prune(out)

    def is_zero(self) -> bool:
        return not self.canonical()

    def __add__(self, other) -> SymLaurent:
        other = _as_sym(other)
        out = dict(self._c)
        for k, c in other._c.items():
            out[k] = out.get(k, 0) + c
        return SymLaurent(out)

    __radd__ = __add__

    def __neg__(self) -> SymLaurent:
        return SymLaurent({k: -c for k, c in self._c.items()})

    def __sub__(self, other) -> SymLaurent:
        return self + (-_as_sym(other))

    def __rsub__(self, other) -> SymLaurent:
        return _as_sym(other) - self

    def __mul__(self, other) -> SymLaurent:
        other = _as_sym(other)
        out: dict[Exponent, int] = defaultdict(int)
        for (a, b, c), k in self._c.items():
            for (d, e, f), l in other._c.items():
                out[(a + d, b + e, c + f)] += k * l
        return SymLaurent(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> SymLaurent:
        if n < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials are invertible")
            ((e, c),) = self._c.items()
            if c not in (1, -1):
                raise ValueError("only unit monomials are invertible")
            return SymLaurent({tuple(-x * (-n) for x in e): c ** (-n)})
        out = SymLaurent.const(1)
        for _ in range(n):
            out = out * self
        return out

    def swap(self, i: int) -> SymLaurent:
        """Apply the simple transposition exchanging ``x_i`` and ``x_{i+1}``."""
        j = i - 1
        out = {}
        for e, c in self._c.items():
            e2 = list(e)
            e2[j], e2[j + 1] = e2[j + 1], e2[j]
            out[tuple(e2)] = c
        return SymLaurent(out)

    def substitute(self, images: Iterable[SymLaurent]) -> SymLaurent:
        """Ring map sending ``x_k`` to ``images[k-1]`` (images must be monomials if exponents are negative)."""
        images = list(images)
        out = SymLaurent()
        for e, c in self._c.items():
            term = SymLaurent.const(c)
            for img, k in zip(images, e):
                term = term * img ** k
            out = out + term
        return out

    def divide_by_difference(self, i: int) -> SymLaurent:
        """Exact quotient by ``x_i - x_{i+1}``; raises :class:`InexactDivision` otherwise."""
        j = i - 1
        # group by (x_i-degree + x_{i+1}-degree, other exponent) -> binary form in t = x_i / x_{i+1}
        groups: dict[tuple, dict[int, int]] = defaultdict(dict)
        for e, c in self._c.items():
            rest = tuple(x for n, x in enumerate(e) if n not in (j, j + 1))
            groups[(e[j] + e[j + 1], rest)][e[j]] = c
        out: dict[Exponent, int] = {}
        for (d, rest), poly in groups.items():
            # synthetic division of sum c_k t^k by (t - 1), highest power first
            carry = 0
            for k in range(max(poly), min(poly) - 1, -1):
                carry += poly.get(k, 0)
                if k == min(poly):
                    if carry:
                        raise InexactDivision(f"remainder {carry} dividing by x{i} - x{i + 1}")
                    break
                if carry:
                    e = [0, 0, 0]
                    e[j], e[j + 1] = k - 1, d - k
                    others = [n for n in range(3) if n not in (j, j + 1)]
                    for n, x in zip(others, rest):
                        e[n] = x
                    out[tuple(e)] = out.get(tuple(e), 0) + carry
        return SymLaurent(out)

    def evaluate_at_ones(self) -> int:
        return sum(self._c.values())

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = SymLaurent.const(other)
        if not isinstance(other, SymLaurent):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash(frozenset(self.canonical().items()))

    def __repr__(self) -> str:
        terms = self.canonical()
        if not terms:
            return "0"
        parts = []
        for e, c in sorted(terms.items(), reverse=True):
            mono = "*".join(
                f"x{n + 1}" if k == 1 else f"x{n + 1}^{k}" for n, k in enumerate(e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)


def _as_sym(x) -> SymLaurent:
    if isinstance(x, SymLaurent):
        return x
    if isinstance(x, int):
        return SymLaurent.const(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to SymLaurent")


X1, X2, X3 = SymLaurent.var(1), SymLaurent.var(2), SymLaurent.var(3)
