"""Tests for step recognition, replay, search, and the JSON wire format."""

import random

import pytest

from anodyne.certificates import (
    Certificate,
    CertificateError,
    FillStep,
    apply_prefix,
    certificate_from_json,
    certificate_to_json,
    dumps,
    loads,
    recognize,
    replay,
    search,
)
from anodyne.complexes import (
    Complex,
    DecoratedComplex,
    Poset,
    Regime,
    close,
    closure_of,
    horn,
    nerve,
    standard_simplex,
)
from anodyne.rules import (
    InnerHorn,
    LeftMarkedHorn,
    OuterMsHorn,
    RightHorn,
    RuleError,
    SharpRight,
)


def plain(cx):
    return DecoratedComplex(cx)


def test_rule_parameter_validation():
    with pytest.raises(RuleError):
        InnerHorn(2, 0)
    with pytest.raises(RuleError):
        InnerHorn(2, 2)
    with pytest.raises(RuleError):
        InnerHorn(1, 1)
    with pytest.raises(RuleError):
        RightHorn(0)


def test_recognize_inner_horn():
    target = plain(standard_simplex(2))
    current = plain(horn(2, 1))
    assert recognize(current, FillStep(InnerHorn(2, 1), (0, 1, 2)), target)
    assert not recognize(
        plain(horn(2, 2)), FillStep(InnerHorn(2, 1), (0, 1, 2)), target
    )


def test_recognize_ms_inner_horn_needs_scaled_triangle():
    lin = Poset.linear(2)
    full = nerve(lin)
    tri = frozenset({(0, 1, 2)})
    target = DecoratedComplex(full, frozenset(), tri, Regime.MARKED_SCALED)
    current = DecoratedComplex(
        Complex(lin, horn(2, 1).cells), regime=Regime.MARKED_SCALED
    )
    step = FillStep(InnerHorn(2, 1), (0, 1, 2))
    assert recognize(current, step, target)
    flat_target = DecoratedComplex(full, regime=Regime.MARKED_SCALED)
    assert not recognize(current, step, flat_target)


def test_recognize_outer_ms_horn_n1():
    lin = Poset.linear(1)
    full = nerve(lin)
    target = DecoratedComplex(
        full, frozenset({(0, 1)}), frozenset(), Regime.MARKED_SCALED
    )
    current = DecoratedComplex(
        Complex(lin, frozenset({(1,)})), regime=Regime.MARKED_SCALED
    )
    assert recognize(current, FillStep(OuterMsHorn(1), (0, 1)), target)
    unmarked = DecoratedComplex(full, regime=Regime.MARKED_SCALED)
    assert not recognize(current, FillStep(OuterMsHorn(1), (0, 1)), unmarked)


def test_replay_order_dependence():
    from anodyne.twisted import v_certificate

    cert = v_certificate(1)
    report = replay(cert)
    assert report.ok and report.steps_applied == 4
    swapped = Certificate(
        cert.regime,
        cert.ambient,
        cert.start,
        cert.target,
        (cert.steps[0], cert.steps[2], cert.steps[1], cert.steps[3]),
    )
    bad = replay(swapped)
    assert not bad.ok and bad.failure_index == 1


def test_replay_rejects_wrong_regime_rule():
    target = plain(standard_simplex(2))
    start = plain(horn(2, 1))
    cert = Certificate(
        Regime.PLAIN,
        target.ambient,
        start,
        target,
        (FillStep(LeftMarkedHorn(2), (0, 1, 2)),),
    )
    rep = replay(cert)
    assert not rep.ok and "not allowed" in rep.reason


def test_replay_final_state_mismatch():
    lin = Poset.linear(2)
    target = plain(nerve(lin))
    start = plain(Complex(lin, horn(2, 1).cells))
    cert = Certificate(Regime.PLAIN, lin, start, target, ())
    rep = replay(cert)
    assert not rep.ok and rep.failure_index is None


def test_search_examples():
    st = plain(horn(2, 1))
    tg = plain(standard_simplex(2))
    cert = search(st, tg, Regime.PLAIN)
    assert cert is not None and len(cert.steps) == 1
    assert replay(cert).ok
    # no inner horn applies to a full boundary
    from anodyne.complexes import boundary

    st2 = plain(boundary(2))
    assert search(st2, tg, Regime.PLAIN, rule_kinds=(InnerHorn,)) is None
    # budget exhaustion is an absent result
    st3 = plain(close(Poset.linear(4), [(0, 1, 2, 3), (1, 2, 3, 4), (0, 4)]))
    tg3 = plain(standard_simplex(4))
    assert search(st3, tg3, Regime.PLAIN, budget=1) is None


def test_search_round_trip_fuzz():
    rng = random.Random(5)
    found = 0
    for _ in range(120):
        n = rng.randint(2, 5)
        lin = Poset.linear(n)
        full = nerve(lin)
        cells = sorted(full.cells)
        tgt = close(lin, rng.sample(cells, rng.randint(1, 5)))
        sub_gens = [c for c in tgt.cells if rng.random() < 0.5]
        sta = close(lin, sub_gens)
        cert = search(plain(sta), plain(tgt), Regime.PLAIN, budget=20_000)
        if cert is None:
            continue
        found += 1
        rep = replay(cert)
        assert rep.ok and rep.fully_primitive
        # steps strictly grow the complex
        sizes = [len(apply_prefix(cert, k).cells) for k in range(len(cert.steps) + 1)]
        assert all(a < b for a, b in zip(sizes, sizes[1:]))
    assert found >= 20


def test_search_generalized_horn_inner_only():
    from anodyne.complexes import generalized_horn

    st = plain(generalized_horn(4, {0, 4}))
    tg = plain(standard_simplex(4))
    cert = search(st, tg, Regime.PLAIN, rule_kinds=(InnerHorn,))
    assert cert is not None and replay(cert).ok


@pytest.mark.parametrize("n", range(2, 7))
def test_search_face_unions_plain_inner(n):
    from itertools import combinations

    from anodyne.complexes import generalized_horn

    tg = plain(standard_simplex(n))
    for r in range(0, n - 1):
        for extra in combinations(range(1, n), r):
            t = {0, n} | set(extra)
            if len(t) == n + 1:
                continue
            st = plain(generalized_horn(n, t))
            cert = search(st, tg, Regime.PLAIN, rule_kinds=(InnerHorn,))
            assert cert is not None and replay(cert).ok, (n, t)


@pytest.mark.parametrize("n", range(1, 7))
def test_search_face_unions_marked(n):
    from itertools import combinations

    from anodyne.complexes import face_of

    lin = Poset.linear(n)
    full = nerve(lin)
    edge = (0, 1)
    tg = DecoratedComplex(full, frozenset([edge]), regime=Regime.MARKED)
    top = tuple(range(n + 1))
    for r in range(0, max(0, n - 2) + 1):
        for extra in combinations(range(2, n), r):
            t = {1, n} | set(extra)
            cells = closure_of(face_of(top, i) for i in t)
            st = DecoratedComplex(
                Complex(lin, cells), frozenset([edge]) & cells, regime=Regime.MARKED
            )
            cert = search(st, tg, Regime.MARKED)
            assert cert is not None and replay(cert).ok, (n, t)


def test_recognition_relabel_invariance():
    ids = (3, 17, 40)
    poset = Poset.from_leq(ids, lambda a, b: a < b)
    full = nerve(poset)
    target = plain(full)
    cells = closure_of([(3, 17), (17, 40)])
    current = plain(Complex(poset, cells))
    assert recognize(current, FillStep(InnerHorn(2, 1), ids), target)


def test_sharp_right_step():
    from anodyne.twisted import r

    target = r(1)
    start_cells = closure_of([(0, 1, 3), (3,)])
    start = DecoratedComplex(
        Complex(target.ambient, start_cells),
        frozenset(),
        frozenset({(0, 1, 2)}) & start_cells,
        Regime.MARKED_SCALED,
    )
    step = FillStep(SharpRight(), (2, 3))
    assert recognize(start, step, target)
    # fails when the target is not sharp on the attachment
    flat = DecoratedComplex(
        target.complex, frozenset(), target.scaled, Regime.MARKED_SCALED
    )
    assert not recognize(start, step, flat)


def test_json_round_trip():
    from anodyne.cube import cube_fill
    from anodyne.twisted import v_certificate

    for cert in (cube_fill(2), v_certificate(2)):
        text = dumps(cert)
        back = loads(text)
        assert back == cert
        assert replay(back).ok
        assert dumps(back) == text


def test_apply_prefix_matches_replay():
    from anodyne.cube import cube_fill

    cert = cube_fill(3)
    state = apply_prefix(cert, len(cert.steps))
    assert state.cells == cert.target.cells
    assert state.marked == cert.target.marked
    with pytest.raises(CertificateError):
        bad = Certificate(
            cert.regime,
            cert.ambient,
            cert.start,
            cert.target,
            cert.steps[1:],
        )
        apply_prefix(bad, 1)
