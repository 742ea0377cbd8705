"""Tests for the cube combinatorics and the box-filling certificates."""

import random
from itertools import combinations, permutations

import pytest

from anodyne.certificates import replay
from anodyne.complexes import Complex, Poset, closure_of, face_of, nerve
from anodyne.cube import (
    CubeError,
    FiltrationShapeError,
    b_tau,
    boundary_cube,
    chain_of_tuple,
    cube_complex,
    cube_face,
    cube_fill,
    horn_union_certificate,
    initial_edge,
    inner_filtration,
    j_box,
    lc_membership_faces,
    left_box,
    marked_tail,
    perm_less,
    perm_of,
    phi,
    prism_decomposition,
    sorted_perms,
    tuple_face,
)
from anodyne.rules import InnerHorn, LeftMarkedHorn


def test_phi_examples():
    assert phi((1, 2, 3)) == (0b000, 0b001, 0b011, 0b111)
    assert phi((1,)) == (0, 1)
    with pytest.raises(CubeError):
        phi((1, 1))


def test_phi_perm_of_inverse_s4():
    for tau in permutations(range(1, 5)):
        assert perm_of(phi(tau)) == tau


def test_tuple_face_example():
    assert tuple_face((1, 2, 3), 2) == (1, 2, 2)
    assert chain_of_tuple((1, 2, 2), 2) == (0b000, 0b001, 0b111)
    # the zeroth face decrements every entry
    for tau in permutations(range(1, 5)):
        assert tuple_face(tau, 0) == tuple(t - 1 for t in tau)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_face_identity_vs_chain_deletion(n):
    for tau in permutations(range(1, n + 1)):
        walk = phi(tau)
        for i in range(n + 1):
            tup = tuple_face(tau, i)
            assert chain_of_tuple(tup, n - 1) == face_of(walk, i)


def test_perm_less_printed_order():
    assert sorted_perms(3) == [
        (1, 2, 3),
        (1, 3, 2),
        (2, 1, 3),
        (3, 1, 2),
        (2, 3, 1),
        (3, 2, 1),
    ]
    # not the lexicographic order
    assert perm_less((3, 1, 2), (2, 3, 1))
    assert sorted_perms(4)[0] == (1, 2, 3, 4)


def test_perm_less_total_order_s4():
    perms = list(permutations(range(1, 5)))
    for a in perms:
        assert not perm_less(a, a)
        for b in perms:
            if a != b:
                assert perm_less(a, b) != perm_less(b, a)
            for c in perms:
                if perm_less(a, b) and perm_less(b, c):
                    assert perm_less(a, c)


def test_box_definitions():
    for n in (1, 2, 3):
        bd = boundary_cube(n)
        union = frozenset().union(
            *(cube_face(n, i, j).cells for i in range(1, n + 1) for j in (0, 1))
        )
        assert bd.cells == union
        lb = left_box(n)
        assert lb.cells == union - (cube_face(n, n, 1).cells - frozenset().union(
            *(cube_face(n, i, j).cells
              for i in range(1, n + 1) for j in (0, 1) if (i, j) != (n, 1))
        ))
    # the open face's interior is really missing
    assert (0b10, 0b11) in boundary_cube(2).cells
    assert (0b10, 0b11) not in left_box(2).cells


def test_j_box_spines():
    for n in (2, 3):
        jb = j_box(n)
        for tau in permutations(range(1, n + 1)):
            walk = phi(tau)
            if tau[n - 1] != 1:
                assert walk in jb.cells
            else:
                assert walk not in jb.cells
        assert left_box(n).cells <= jb.cells


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_lc_membership_faces_agrees(n):
    lb = left_box(n)
    for tau in permutations(range(1, n + 1)):
        walk = phi(tau)
        predicted = lc_membership_faces(tau)
        actual = frozenset(
            i
            for i in range(n + 1)
            if closure_of([face_of(walk, i)]) <= lb.cells
        )
        assert predicted == actual
        assert n in predicted
        assert not predicted & set(range(1, n))


def test_b_tau_examples():
    cx, t = b_tau(2, (1, 2))
    assert t == frozenset({0, 2})
    _, t = b_tau(3, (1, 2, 3))
    assert t == frozenset({0, 3})
    with pytest.raises(CubeError):
        b_tau(2, (2, 1))  # outside the inner filtration


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_b_tau_shapes(n):
    for tau in sorted_perms(n):
        if tau[n - 1] == 1:
            continue
        _, t = b_tau(n, tau)
        assert {0, n} <= set(t) and set(t) < set(range(n + 1))


def test_inner_filtration_small():
    cert = inner_filtration(2)
    assert len(cert.steps) == 1
    assert cert.steps[0].rule == InnerHorn(2, 1)
    assert cert.steps[0].attached == phi((1, 2))
    assert replay(cert).ok

    cert3 = inner_filtration(3)
    walks = [s.attached for s in cert3.steps if len(s.attached) == 4]
    assert walks == [phi(t) for t in [(1, 2, 3), (1, 3, 2), (2, 1, 3), (3, 1, 2)]]
    assert replay(cert3).ok


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_inner_filtration_lands_on_j_box(n):
    cert = inner_filtration(n)
    assert cert.target.cells == j_box(n).cells
    assert replay(cert).ok


def test_marked_tail_small():
    cert = marked_tail(1)
    assert len(cert.steps) == 1
    assert cert.steps[0].rule == LeftMarkedHorn(1)
    assert replay(cert).ok
    cert2 = marked_tail(2)
    assert replay(cert2).ok
    assert cert2.target.marked == frozenset({initial_edge(2)})


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_cube_fill_composite(n):
    cert = cube_fill(n)
    rep = replay(cert)
    assert rep.ok and rep.fully_primitive
    assert cert.start.cells == left_box(n).cells
    assert cert.target.cells == cube_complex(n).cells


def test_horn_union_certificates():
    for n in range(2, 6):
        for r in range(0, n - 1):
            for extra in combinations(range(1, n), r):
                t = {0, n} | set(extra)
                if len(t) == n + 1:
                    continue
                cert = horn_union_certificate(n, t)
                rep = replay(cert)
                assert rep.ok and rep.fully_primitive, (n, t)
    for n in range(1, 6):
        for r in range(0, max(0, n - 2) + 1):
            for extra in combinations(range(2, n), r):
                t = {1, n} | set(extra)
                cert = horn_union_certificate(n, t, marked=True)
                rep = replay(cert)
                assert rep.ok and rep.fully_primitive, (n, t)


def test_prism_examples():
    lin0 = Poset.linear(0)
    point = nerve(lin0)
    cert = prism_decomposition(Complex(lin0, frozenset()), point)
    assert len(cert.steps) == 1
    assert cert.steps[0].rule == LeftMarkedHorn(1)
    assert replay(cert).ok

    lin1 = Poset.linear(1)
    seg = nerve(lin1)
    ends = Complex(lin1, frozenset({(0,), (1,)}))
    cert = prism_decomposition(ends, seg)
    assert len(cert.steps) == 2
    assert replay(cert).ok

    from anodyne.complexes import horn, standard_simplex

    cert = prism_decomposition(
        Complex(Poset.linear(2), horn(2, 1).cells), standard_simplex(2)
    )
    assert replay(cert).ok
    assert [s.rule.kind for s in cert.steps] == [
        "inner_horn",
        "left_marked_horn",
        "inner_horn",
        "inner_horn",
        "left_marked_horn",
    ]


def test_prism_random_pairs():
    rng = random.Random(9)
    for _ in range(40):
        m = rng.randint(0, 3)
        lin = Poset.linear(m)
        full = nerve(lin)
        cells = sorted(full.cells)
        sup = Complex(
            lin, closure_of(rng.sample(cells, min(len(cells), rng.randint(1, 4))))
        )
        sub_gens = [c for c in sup.cells if rng.random() < 0.4]
        sub = Complex(lin, closure_of(sub_gens))
        cert = prism_decomposition(sub, sup)
        rep = replay(cert)
        assert rep.ok, (m, sorted(sub.cells), sorted(sup.cells))
