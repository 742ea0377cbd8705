"""Tests for posets, nerves, subcomplexes, and decorations."""

import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anodyne.complexes import (
    Complex,
    ComplexError,
    DecoratedComplex,
    Poset,
    Regime,
    boundary,
    close,
    closure_of,
    empty_complex,
    face_of,
    generalized_horn,
    horn,
    join_linear,
    nerve,
    relabel_map,
    restrict,
    standard_simplex,
    subchains,
)
from anodyne.certificates import match_linear
from anodyne.rules import InnerHorn, OuterMsHorn, horn_template


def test_poset_rejects_bad_relations():
    with pytest.raises(ComplexError):
        Poset((0, 1), frozenset({(0, 0)}))
    with pytest.raises(ComplexError):
        Poset((0, 1, 2), frozenset({(0, 1), (1, 2)}))  # not transitive
    with pytest.raises(ComplexError):
        Poset((0, 0), frozenset())
    with pytest.raises(ComplexError):
        Poset((0, 1), frozenset({(1, 0)}))  # violates numeric refinement


def test_nerve_linear_counts():
    assert len(standard_simplex(2).cells) == 7
    b2 = nerve(Poset.boolean(2))
    assert b2.top_cells() == frozenset({(0, 1, 3), (0, 2, 3)})
    b3 = nerve(Poset.boolean(3))
    assert len([c for c in b3.cells if len(c) == 4]) == 6


@pytest.mark.parametrize("n", range(1, 7))
def test_nerve_boolean_top_count(n):
    import math

    b = nerve(Poset.boolean(n))
    assert len([c for c in b.cells if len(c) == n + 1]) == math.factorial(n)


def test_close_examples():
    lin2 = Poset.linear(2)
    assert close(lin2, [(0, 1, 2)]).cells == standard_simplex(2).cells
    assert close(lin2, []).cells == frozenset()
    five = close(lin2, [(0, 2), (1, 2)])
    assert len(five.cells) == 5
    assert five.cells == horn(2, 2).cells
    with pytest.raises(ComplexError):
        close(lin2, [(2, 0)])


def test_close_idempotent_monotone():
    rng = random.Random(7)
    lin = Poset.linear(4)
    full = nerve(lin)
    for _ in range(50):
        gens = rng.sample(sorted(full.cells), rng.randint(0, 6))
        cx = close(lin, gens)
        assert close(lin, sorted(cx.cells)).cells == cx.cells
        more = close(lin, gens + [tuple(range(5))])
        assert cx.cells <= more.cells


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sets(st.integers(0, 4), min_size=1), max_size=5))
def test_close_downward_closed(subsets):
    lin = Poset.linear(4)
    gens = [tuple(sorted(s)) for s in subsets]
    cx = close(lin, gens)
    for cell in cx.cells:
        for i in range(len(cell)):
            if len(cell) > 1:
                assert face_of(cell, i) in cx.cells


def test_generalized_horn_examples():
    assert generalized_horn(2, {0, 2}).cells == horn(2, 1).cells
    assert boundary(1).cells == frozenset({(0,), (1,)})
    # oracle: enumerate the subchains of the two faces directly
    d0 = (1, 2, 3)
    d3 = (0, 1, 2)
    oracle = set()
    for f in (d0, d3):
        for k in (1, 2, 3):
            oracle.update(combinations(f, k))
    gh = generalized_horn(3, {0, 3})
    assert gh.cells == frozenset(oracle)
    # the diagonal edge lies in neither face
    assert (0, 3) not in gh.cells
    assert generalized_horn(3, {0, 1, 2, 3}).cells == boundary(3).cells
    with pytest.raises(ComplexError):
        generalized_horn(2, set())
    with pytest.raises(ComplexError):
        generalized_horn(2, {3})
    with pytest.raises(ComplexError):
        horn(2, 5)


def test_join_linear():
    cx, labels = join_linear(1, 1)
    assert cx.cells == standard_simplex(3).cells
    assert labels == {0: 2, 1: 3}
    cx, labels = join_linear(0, 0)
    assert cx.cells == standard_simplex(1).cells
    cx, labels = join_linear(2, 0)
    assert cx.cells == standard_simplex(3).cells
    assert labels == {0: 3}


def test_restrict():
    from anodyne.twisted import q

    q1 = q(1)
    assert restrict(q1, q1.complex) == q1
    vertex = Complex(q1.ambient, frozenset({(0,)}))
    r = restrict(q1, vertex)
    assert not r.marked and not r.scaled
    front = Complex(q1.ambient, closure_of([(0, 1, 2)]))
    r = restrict(q1, front)
    assert r.scaled == frozenset({(0, 1, 2)})
    with pytest.raises(ComplexError):
        restrict(q1, standard_simplex(5))  # different ambient cells


def test_restrict_twice_is_intersection():
    from anodyne.twisted import r as r_obj

    x = r_obj(1)
    a = Complex(x.ambient, closure_of([(0, 1, 2), (1, 2, 3)]))
    b = Complex(x.ambient, closure_of([(1, 2, 3), (0, 3)]))
    both = restrict(restrict(x, a), a.intersection(b))
    direct = restrict(x, a.intersection(b))
    assert both == direct


def test_match_linear_examples():
    lin = Poset.linear(2)
    sigma = (0, 1, 2)
    tpl = horn_template(InnerHorn(2, 1), Regime.PLAIN)
    sub = DecoratedComplex(Complex(lin, horn(2, 1).cells))
    assert match_linear(sub, sigma, tpl)
    sub_wrong = DecoratedComplex(Complex(lin, horn(2, 2).cells))
    assert not match_linear(sub_wrong, sigma, tpl)
    # decorated outer case at n=1: the domain is the final vertex
    tpl_a2 = horn_template(OuterMsHorn(1), Regime.MARKED_SCALED)
    lin1 = Poset.linear(1)
    sub1 = DecoratedComplex(
        Complex(lin1, frozenset({(1,)})), regime=Regime.MARKED_SCALED
    )
    assert match_linear(sub1, (0, 1), tpl_a2)
    with pytest.raises(ComplexError):
        match_linear(sub1, (0, 1, 2), tpl_a2)


def test_match_linear_relabel_invariance():
    rng = random.Random(3)
    tpl = horn_template(InnerHorn(3, 2), Regime.PLAIN)
    for _ in range(20):
        ids = sorted(rng.sample(range(100), 4))
        poset = Poset.from_leq(ids, lambda a, b: a < b)
        sigma = tuple(ids)
        cells = frozenset(
            tuple(sigma[i] for i in c) for c in horn(3, 2).cells
        )
        sub = DecoratedComplex(Complex(poset, cells))
        assert match_linear(sub, sigma, tpl)


def test_product_interval_poset():
    p = Poset.product_interval(Poset.linear(1))
    assert set(p.elements) == {0, 1, 2, 3}
    assert p.leq(0, 3) and p.leq(0, 1) and p.leq(2, 3)
    assert not p.leq(1, 2)  # (0,1) vs (1,0) incomparable


def test_decoration_invariants():
    lin = Poset.linear(2)
    full = nerve(lin)
    with pytest.raises(ComplexError):
        DecoratedComplex(full, frozenset({(0, 1)}), regime=Regime.PLAIN)
    with pytest.raises(ComplexError):
        DecoratedComplex(
            full, frozenset(), frozenset({(0, 1, 2)}), Regime.MARKED
        )
    with pytest.raises(ComplexError):
        DecoratedComplex(
            Complex(lin, frozenset({(0,)})), frozenset({(0, 1)}), regime=Regime.MARKED
        )


def test_text_format_round_trip():
    from anodyne.textio import format_decorated, parse_decorated

    from anodyne.twisted import r as r_obj

    x = r_obj(1)
    text = format_decorated(x)
    back = parse_decorated(text, x.ambient, Regime.MARKED_SCALED)
    assert back == x
