import json

import pytest
from hypothesis import given, settings, strategies as st

from conftest import words
from gbr3 import ktheory as kt
from gbr3.braid import P3, P12, P21, P111, PARTITIONS, BraidWord, compose, parse, words_between
from gbr3.polynomials import V, ShiftPoly
from gbr3.rewrite import relation_closure
from gbr3.split import (
    P2_FUNCTOR, RULES, SPHERICAL, Atom, FormalSum, SplitVerdict, _fork_merge_alphabet, atomize,
    crossing_class, flop_flop_word, generator_class, irreducible_atoms, ptwist_class, reduce, reduce_word,
    split_equal,
)

E = SplitVerdict


def atom_sum(text, coeff=1):
    return FormalSum.of_atom(Atom(parse(text)), coeff)


def test_atomize_examples():
    assert atomize(parse("f[3>12]")) == atom_sum("f[3>12]")
    assert atomize(parse("g[111>12]")) == atom_sum("g[111>12]", V ** -1)
    assert atomize(parse("g[12>3]")) == atom_sum("g[12>3]", V ** -2)
    t = atomize(parse("t[111,1]"))
    assert t.cone
    assert t.at_minus_one().same_terms(FormalSum.identity(P111) - atom_sum("g[111>21] ; f[21>111]"))


def test_mixed_crossing_class():
    # t: v^-1 ([R F through 111] - [F R through 3]); d differs only by a v-power
    rf, fr = atom_sum("f[12>111] ; g[111>21]"), atom_sum("g[12>3] ; f[3>21]")
    t = crossing_class(parse("t[12>21]").steps[0])
    assert t.same_terms((rf - fr).scale(V ** -1)) and t.cone
    d = crossing_class(parse("d[12>21]").steps[0])
    assert d.at_minus_one().same_terms(t.at_minus_one())
    assert not d.same_terms(t)


def test_reduce_examples():
    assert reduce_word("f[3>12] ; g[12>3]") == FormalSum.identity(P3).scale(P2_FUNCTOR)
    assert reduce_word("f[21>111] ; g[111>21]") == FormalSum.identity(P21).scale(SPHERICAL)
    six = reduce_word("f[3>12] ; f[12>111] ; g[111>12] ; g[12>3]")
    assert six.same_terms(FormalSum.identity(P3).scale(1 + 2 * V ** 2 + 2 * V ** 4 + V ** 6))
    assert not six.cone
    skein = reduce_word("f[12>111] ; g[111>21] ; f[21>111] ; g[111>12]")
    assert skein.cone
    assert skein.at_minus_one().same_terms(atom_sum("g[12>3] ; f[3>12]") + FormalSum.identity(P12))


def test_six_summand_factors_through_either_edge():
    via12 = reduce_word("f[3>12] ; f[12>111] ; g[111>12] ; g[12>3]")
    via21 = reduce_word("f[3>21] ; f[21>111] ; g[111>21] ; g[21>3]")
    mixed = reduce_word("f[3>21] ; f[21>111] ; g[111>12] ; g[12>3]")
    assert via12 == via21 == mixed
    assert (1 + V ** 2) * (1 + V ** 2 + V ** 4) == 1 + 2 * V ** 2 + 2 * V ** 4 + V ** 6


def test_atoms_are_irreducible():
    with pytest.raises(ValueError):
        Atom(parse("f[3>12] ; g[12>3]"))
    with pytest.raises(ValueError):
        Atom(parse("t[111,1]"))
    a = Atom(parse("g[12>3] ; f[3>12]"))
    assert (a.source, a.target) == (P12, P12)
    assert Atom.identity(P21).word == BraidWord.identity(P21)


def test_rules_terminate():
    # each rule shortens the word, or keeps its length and lowers it in the word order
    for r in RULES:
        for letters, _ in r.rhs:
            key = lambda ls: (len(ls), tuple(g.sort_key for g in ls))
            assert key(letters) < key(r.lhs), r.name


def _one_step_reducts(source, letters):
    for r in RULES:
        n = len(r.lhs)
        for i in range(len(letters) - n + 1):
            if letters[i:i + n] == r.lhs:
                out = FormalSum.zero(source, letters[-1].target)
                for rep, coeff in r.rhs:
                    w = BraidWord(source, letters[:i] + rep + letters[i + n:])
                    out = out + reduce(FormalSum.of_atom(_unchecked(w))).scale(coeff)
                yield r.name, i, out


def _unchecked(w):
    a = object.__new__(Atom)
    object.__setattr__(a, "word", w)
    return a


def test_local_confluence_by_exhaustion():
    alphabet = _fork_merge_alphabet()
    checked = 0
    for src in PARTITIONS:
        for tgt in PARTITIONS:
            for w in words_between(src, tgt, 8, alphabet):
                outs = list(_one_step_reducts(src, w.steps))
                if len(outs) > 1:
                    checked += 1
                    first = outs[0][2]
                    for name, i, s in outs[1:]:
                        assert s.same_terms(first), (str(w), name, i)
    assert checked > 100


def test_irreducible_atoms():
    atoms = irreducible_atoms(P3, P3, 4)
    assert atoms == [Atom.identity(P3)]
    assert Atom(parse("g[12>3] ; f[3>12]")) in irreducible_atoms(P12, P12, 2)


def test_split_equal_examples():
    assert split_equal(parse("f[3>21] ; f[21>111]"), parse("f[3>12] ; f[12>111]")) is E.EQUAL_GENERIC_V
    assert split_equal(parse("t[111,1] ; t[111,2] ; t[111,1]"),
                       parse("t[111,2] ; t[111,1] ; t[111,2]")) is E.EQUAL_AT_MINUS_ONE
    assert split_equal(parse("t[111,1]"), BraidWord.identity(P111)) is E.DISTINCT
    with pytest.raises(Exception):
        split_equal(parse("f[3>12]"), parse("f[3>21]"))


def test_cone_taint_refuses_generic_v():
    t = parse("t[111,1]")
    assert split_equal(t, t) is E.EQUAL_AT_MINUS_ONE


def test_ptwist_class():
    for side in (P12, P21):
        p = ptwist_class(side)
        assert p.cone
        assert p.at_minus_one().same_terms(FormalSum.identity(side))
        assert split_equal(flop_flop_word(side), p) is E.EQUAL_AT_MINUS_ONE
    assert flop_flop_word(P12) == parse("t[12>21] ; t[21>12]")
    with pytest.raises(ValueError):
        ptwist_class(P3)


@pytest.mark.parametrize("rel", relation_closure(), ids=lambda r: r.name)
def test_relations_never_distinct(rel):
    assert split_equal(rel.lhs, rel.rhs) is not E.DISTINCT


@pytest.mark.parametrize("i", [1, 2])
def test_crossing_involution(i):
    prod = atomize(parse(f"t[111,{i}]")).then(atomize(parse(f"d[111,{i}]")))
    assert prod.at_minus_one().same_terms(FormalSum.identity(P111))


@pytest.mark.parametrize("rule", RULES, ids=lambda r: r.name)
def test_rules_hold_in_ktheory(rule):
    src = rule.lhs[0].source
    lhs = kt.atom_operator(BraidWord(src, rule.lhs))
    rhs = None
    for letters, coeff in rule.rhs:
        term = kt.atom_operator(BraidWord(src, letters)).scale(coeff.evaluate(-1))
        rhs = term if rhs is None else rhs + term
    assert lhs == rhs


@settings(max_examples=40, deadline=None)
@given(words(5), st.data())
def test_atomize_is_a_functor(a, data):
    b = data.draw(words(4, source=a.target))
    assert atomize(compose(a, b)).same_terms(atomize(a).then(atomize(b)))


@settings(max_examples=40, deadline=None)
@given(words(5), st.data(), st.integers(-3, 3), st.integers(-3, 3))
def test_reduce_linear_and_idempotent(a, data, i, j):
    b = data.draw(words(5, source=a.source).filter(lambda w: w.target == a.target))
    sa, sb = atomize(a), atomize(b)
    combo = sa.scale(V ** i) + sb.scale(V ** j)
    assert reduce(combo).same_terms(reduce(sa).scale(V ** i) + reduce(sb).scale(V ** j))
    assert reduce(reduce(combo)).same_terms(reduce(combo))


def test_formal_sum_json():
    s = atom_sum("g[12>3] ; f[3>12]", V ** -2 + 1)
    data = s.to_json()
    assert data == {"source": "12", "target": "12",
                    "terms": [{"atom": parse("g[12>3] ; f[3>12]").to_json(), "poly": {"-2": 1, "0": 1}}]}
    assert FormalSum.from_json(json.loads(json.dumps(data))) == s


def test_formal_sum_endpoint_checks():
    with pytest.raises(Exception):
        atom_sum("f[3>12]") + atom_sum("f[3>21]")
    with pytest.raises(Exception):
        FormalSum(P3, P21, {Atom(parse("f[3>12]")): ShiftPoly.const(1)})


def test_generator_class_of_identity():
    from gbr3.braid import Generator, Kind
    assert generator_class(Generator(Kind.IDENTITY, P12, P12)) == FormalSum.identity(P12)
