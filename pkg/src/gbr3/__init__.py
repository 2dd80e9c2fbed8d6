"""Symbolic calculus for generalised braids on three strands.

Words in the generating diagrams are compared in three ways: a bounded
rewriting search (sound proofs of equality), a split Grothendieck-group
calculus with graded shifts, and explicit integer matrices on K-theory of
the flag variety and its partial flags (sound refutations).
"""

from .braid import (
    P3, P12, P21, P111, PARTITIONS, Axis, BraidError, BraidSyntaxError, BraidWord, EndpointMismatch,
    Generator, IllegalGenerator, Kind, Partition, compose, legal_generators, parse, reflect, render,
)
from .ktheory import KBasisModule, KOperator, build_generator_operator, demazure, evaluate_word, reduce_class
from .polynomials import ShiftPoly, SymLaurent
from .rewrite import (
    Budget, EqualityVerdict, Relation, base_relations, enumerate_words, equal, normalize,
    relation_closure, rewrite_step,
)
from .split import Atom, FormalSum, SplitVerdict, atomize, ptwist_class, split_equal
from .verify import run_verification

__version__ = "0.1.0"
