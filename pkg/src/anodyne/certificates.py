"""Fill certificates: recognition of single steps, replay, and search.

A certificate lists, in order, the cells attached to grow a start complex
into a target complex, each step justified by a rule.  Replay re-checks every
step against the current state and reports the first failure; search looks
for a certificate built from primitive horn rules only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional

from .complexes import (
    Chain,
    Complex,
    ComplexError,
    DecoratedComplex,
    Poset,
    Regime,
    closure_of,
    face_of,
    relabel_cells,
    relabel_map,
    subchains,
)
from .families import (
    SubsetFamily,
    is_inner_dull,
    is_right_dull,
    pivot_hypotheses,
    right_pivot_hypotheses,
    s_complex,
)
from .rules import (
    ALLOWED_RULES,
    HornRule,
    HornTemplate,
    InnerHorn,
    LeftMarkedHorn,
    OuterMsHorn,
    PivotTrick,
    RightHorn,
    RightPivotTrick,
    RuleError,
    RuleId,
    SharpRight,
    horn_template,
)


class CertificateError(ValueError):
    pass


def match_linear(sub: DecoratedComplex, sigma: Chain, template: HornTemplate) -> bool:
    """Match an inclusion inside one top chain against a horn template.

    The unique monotone relabeling of ``sigma`` must carry the cells of
    ``sub`` exactly onto the template's horn, and the template's domain
    decorations must be present among ``sub``'s decorations.
    """
    if len(sigma) != template.n + 1:
        raise ComplexError(
            f"dimension mismatch: chain has dim {len(sigma) - 1}, template dim {template.n}"
        )
    m = relabel_map(sigma)
    if relabel_cells(sub.cells, m) != template.domain_cells:
        return False
    dom_marked = template.marked & template.domain_cells
    dom_scaled = template.scaled & template.domain_cells
    return dom_marked <= relabel_cells(sub.marked, m) and dom_scaled <= relabel_cells(
        sub.scaled, m
    )


@dataclass(frozen=True)
class FillStep:
    rule: RuleId
    attached: Chain


@dataclass(frozen=True)
class Certificate:
    regime: Regime
    ambient: Poset
    start: DecoratedComplex
    target: DecoratedComplex
    steps: tuple[FillStep, ...]

    def __post_init__(self):
        if self.start.ambient != self.ambient or self.target.ambient != self.ambient:
            raise CertificateError("start/target must live in the stated ambient")
        if self.start.regime != self.regime or self.target.regime != self.regime:
            raise CertificateError("start/target regimes must match the certificate")

    def fully_primitive(self) -> bool:
        return all(s.rule.trust == "primitive" for s in self.steps)


@dataclass(frozen=True)
class ReplayReport:
    ok: bool
    steps_applied: int
    failure_index: Optional[int] = None
    reason: Optional[str] = None
    fully_primitive: bool = True

    def __str__(self) -> str:
        if self.ok:
            kind = "primitive" if self.fully_primitive else "uses cited lemmas"
            return f"ok: {self.steps_applied} steps replayed ({kind})"
        at = "final state" if self.failure_index is None else f"step {self.failure_index}"
        return f"FAIL at {at}: {self.reason}"


class _State:
    """Mutable replay state; decorations grow monotonically."""

    __slots__ = ("cells", "marked", "scaled")

    def __init__(self, x: DecoratedComplex):
        self.cells = set(x.cells)
        self.marked = set(x.marked)
        self.scaled = set(x.scaled)

    def snapshot(self) -> tuple[frozenset, frozenset, frozenset]:
        return frozenset(self.cells), frozenset(self.marked), frozenset(self.scaled)


def _inv_relabel(cells: Iterable[Chain], sigma: Chain) -> set[Chain]:
    return {tuple(sigma[i] for i in c) for c in cells}


def _sub_decorated(state: _State, ambient: Poset, u_cells: frozenset[Chain]) -> DecoratedComplex:
    cells = frozenset(state.cells & u_cells)
    return DecoratedComplex(
        Complex(ambient, cells),
        frozenset(state.marked & cells),
        frozenset(state.scaled & cells),
        Regime.MARKED_SCALED,
    )


def _check_step(
    state: _State,
    step: FillStep,
    target: DecoratedComplex,
    regime: Regime,
    search_budget: int,
) -> tuple[bool, str, set[Chain], set[Chain], set[Chain]]:
    """Recognize one step against the state; on success return the additions."""
    rule = step.rule
    if not isinstance(rule, ALLOWED_RULES[regime]):
        return False, f"rule {rule.kind} not allowed in regime {regime.value}", set(), set(), set()
    sigma = step.attached
    if not target.ambient.is_chain(sigma):
        return False, f"attached {sigma} is not a chain of the ambient", set(), set(), set()
    if sigma in state.cells:
        return False, f"attached chain {sigma} already present", set(), set(), set()
    u = closure_of([sigma])
    if not u <= target.cells:
        return False, f"attachment {sigma} leaves the target", set(), set(), set()
    new_cells = set(u - state.cells)

    if isinstance(rule, (InnerHorn, RightHorn, OuterMsHorn, LeftMarkedHorn)):
        try:
            tpl = horn_template(rule, regime)
        except RuleError as e:
            return False, str(e), set(), set(), set()
        if len(sigma) != tpl.n + 1:
            return False, f"attached chain has dim {len(sigma) - 1}, rule wants {tpl.n}", set(), set(), set()
        sub = _sub_decorated(state, target.ambient, u)
        if not match_linear(sub, sigma, tpl):
            return False, f"boundary of {sigma} does not match the rule's horn", set(), set(), set()
        add_marked = _inv_relabel(tpl.marked, sigma) - state.marked
        add_scaled = _inv_relabel(tpl.scaled, sigma) - state.scaled
        if not _inv_relabel(tpl.marked, sigma) <= set(target.marked):
            return False, "rule marks an edge the target leaves unmarked", set(), set(), set()
        if not _inv_relabel(tpl.scaled, sigma) <= set(target.scaled):
            return False, "rule scales a triangle the target leaves unscaled", set(), set(), set()
        return True, "", new_cells, add_marked, add_scaled

    if isinstance(rule, SharpRight):
        edges = {c for c in u if len(c) == 2}
        tris = {c for c in u if len(c) == 3}
        if not edges <= set(target.marked) or not tris <= set(target.scaled):
            return False, "sharp right-cone rule needs fully sharp decorations in the target", set(), set(), set()
        sub_cells = state.cells & u
        sub_edges = {c for c in sub_cells if len(c) == 2}
        sub_tris = {c for c in sub_cells if len(c) == 3}
        if not sub_edges <= state.marked or not sub_tris <= state.scaled:
            return False, "current decorations are not sharp on the attachment boundary", set(), set(), set()
        m = relabel_map(sigma)
        nn = len(sigma) - 1
        amb = Poset.linear(nn)
        plain_sub = DecoratedComplex(Complex(amb, relabel_cells(sub_cells, m)))
        plain_full = DecoratedComplex(Complex(amb, relabel_cells(u, m)))
        cert = search(
            plain_sub,
            plain_full,
            Regime.PLAIN,
            budget=search_budget,
            rule_kinds=(InnerHorn, RightHorn),
        )
        if cert is None:
            return False, "underlying inclusion not certified right-anodyne within budget", set(), set(), set()
        return True, "", new_cells, edges - state.marked, tris - state.scaled

    if isinstance(rule, (PivotTrick, RightPivotTrick)):
        fam = rule.family
        nn = len(sigma) - 1
        if fam.n != nn:
            return False, f"family over [{fam.n}] but attached chain has dim {nn}", set(), set(), set()
        m = relabel_map(sigma)
        expected_sub = s_complex(fam).cells
        if relabel_cells(state.cells & u, m) != expected_sub:
            return False, "current boundary is not the family's named subcomplex", set(), set(), set()
        amb = Poset.linear(nn)
        deco = DecoratedComplex(
            Complex(amb, relabel_cells(u, m)),
            relabel_cells(set(target.marked) & u, m),
            relabel_cells(set(target.scaled) & u, m),
            Regime.MARKED_SCALED,
        )
        if isinstance(rule, PivotTrick):
            if rule.pivot not in is_inner_dull(fam):
                return False, f"family is not inner dull with pivot {rule.pivot}", set(), set(), set()
            if not pivot_hypotheses(fam, rule.pivot, deco):
                return False, "pivot hypotheses fail on the target decorations", set(), set(), set()
        else:
            if not is_right_dull(fam):
                return False, "family is not right dull", set(), set(), set()
            if not right_pivot_hypotheses(fam, deco):
                return False, "right pivot hypotheses fail on the target decorations", set(), set(), set()
        sub_cells = state.cells & u
        tgt_marked_sub = set(target.marked) & sub_cells
        tgt_scaled_sub = set(target.scaled) & sub_cells
        if not tgt_marked_sub <= state.marked or not tgt_scaled_sub <= state.scaled:
            return False, "state is missing target decorations on the attachment boundary", set(), set(), set()
        add_marked = (set(target.marked) & u) - state.marked
        add_scaled = (set(target.scaled) & u) - state.scaled
        return True, "", new_cells, add_marked, add_scaled

    return False, f"unknown rule {rule!r}", set(), set(), set()


def recognize(
    current: DecoratedComplex,
    step: FillStep,
    target: DecoratedComplex,
    search_budget: int = 200_000,
) -> bool:
    """True iff the step applies to the current state en route to the target."""
    state = _State(current)
    ok, _, _, _, _ = _check_step(state, step, target, current.regime, search_budget)
    return ok


def replay(cert: Certificate, search_budget: int = 200_000) -> ReplayReport:
    """Apply every step in order; succeed iff the final state equals the target."""
    state = _State(cert.start)
    fully = cert.fully_primitive()
    for idx, step in enumerate(cert.steps):
        ok, reason, cells, marked, scaled = _check_step(
            state, step, cert.target, cert.regime, search_budget
        )
        if not ok:
            return ReplayReport(False, idx, idx, reason, fully)
        if not cells:
            return ReplayReport(
                False, idx, idx, "step does not grow the complex", fully
            )
        state.cells |= cells
        state.marked |= marked
        state.scaled |= scaled
    if state.cells != set(cert.target.cells):
        return ReplayReport(
            False, len(cert.steps), None, "final cells differ from the target", fully
        )
    if state.marked != set(cert.target.marked) or state.scaled != set(cert.target.scaled):
        return ReplayReport(
            False,
            len(cert.steps),
            None,
            "final decorations differ from the target",
            fully,
        )
    return ReplayReport(True, len(cert.steps), None, None, fully)


def apply_prefix(cert: Certificate, count: int, search_budget: int = 200_000) -> DecoratedComplex:
    """Replay the first ``count`` steps and return the intermediate state."""
    state = _State(cert.start)
    for idx, step in enumerate(cert.steps[:count]):
        ok, reason, cells, marked, scaled = _check_step(
            state, step, cert.target, cert.regime, search_budget
        )
        if not ok:
            raise CertificateError(f"prefix replay fails at step {idx}: {reason}")
        state.cells |= cells
        state.marked |= marked
        state.scaled |= scaled
    return DecoratedComplex(
        Complex(cert.ambient, frozenset(state.cells)),
        frozenset(state.marked),
        frozenset(state.scaled),
        cert.regime,
    )


def _is_boolean_ambient(poset: Poset) -> Optional[int]:
    k = len(poset.elements).bit_length() - 1
    if len(poset.elements) != 1 << k or poset.elements != tuple(range(1 << k)):
        return None
    sample = [(a, b) for (a, b) in poset.pairs if a & b != a]
    return None if sample else k


def _candidate_key(sigma: Chain, cube_bits: Optional[int]):
    if cube_bits and len(sigma) == cube_bits + 1 and sigma[0] == 0:
        diffs = [a ^ b for a, b in zip(sigma, sigma[1:])]
        if all(d.bit_count() == 1 for d in diffs):
            inverse = tuple(d.bit_length() for d in diffs)
            return (len(sigma), 0, inverse, sigma)
    return (len(sigma), 1, (), sigma)


def _horn_rule_for(
    sigma: Chain,
    state: _State,
    regime: Regime,
    rule_kinds: tuple[type, ...],
) -> Optional[HornRule]:
    """The unique horn rule that could attach sigma to the state, if any."""
    n = len(sigma) - 1
    present = set()
    for t in range(n + 1):
        f = face_of(sigma, t)
        if all(c in state.cells for c in subchains(f)):
            present.add(t)
    missing = set(range(n + 1)) - present
    if len(missing) != 1:
        return None
    sub = state.cells & closure_of([sigma])
    if sub != closure_of(face_of(sigma, t) for t in present):
        return None
    (i,) = missing
    try:
        if 0 < i < n and InnerHorn in rule_kinds:
            return InnerHorn(n, i)
        if i == n and RightHorn in rule_kinds and regime is Regime.PLAIN:
            return RightHorn(n)
        if i == n and OuterMsHorn in rule_kinds and regime is Regime.MARKED_SCALED:
            return OuterMsHorn(n)
        if i == 0 and LeftMarkedHorn in rule_kinds and regime is Regime.MARKED:
            return LeftMarkedHorn(n)
    except RuleError:
        return None
    return None


class _Exhausted(Exception):
    pass


def search(
    start: DecoratedComplex,
    target: DecoratedComplex,
    regime: Regime,
    budget: int = 200_000,
    rule_kinds: Optional[tuple[type, ...]] = None,
) -> Optional[Certificate]:
    """Depth-first search for a primitive-rule certificate.

    Candidate attachments are tried in a fixed documented order: cube top
    cells in the walk order when the ambient is a Boolean lattice, otherwise
    by dimension then lexicographically.  Failure states are memoized.
    Returns None when no certificate is found within the node budget.
    """
    if not start.cells <= target.cells:
        raise CertificateError("search start must be a subcomplex of the target")
    if rule_kinds is None:
        rule_kinds = tuple(
            k for k in ALLOWED_RULES[regime] if k in (InnerHorn, RightHorn, LeftMarkedHorn, OuterMsHorn)
        )
    cube_bits = _is_boolean_ambient(target.ambient)
    goal = (frozenset(target.cells), frozenset(target.marked), frozenset(target.scaled))
    failed: set[tuple] = set()
    nodes = 0

    def dfs(state: _State) -> Optional[list[FillStep]]:
        nonlocal nodes
        snap = state.snapshot()
        if snap == goal:
            return []
        if snap in failed:
            return None
        nodes += 1
        if nodes > budget:
            raise _Exhausted
        candidates = sorted(
            set(target.cells) - state.cells, key=lambda s: _candidate_key(s, cube_bits)
        )
        for sigma in candidates:
            rule = _horn_rule_for(sigma, state, regime, rule_kinds)
            if rule is None:
                continue
            step = FillStep(rule, sigma)
            ok, _, cells, marked, scaled = _check_step(state, step, target, regime, 0)
            if not ok:
                continue
            nxt = _State.__new__(_State)
            nxt.cells = state.cells | cells
            nxt.marked = state.marked | marked
            nxt.scaled = state.scaled | scaled
            rest = dfs(nxt)
            if rest is not None:
                return [step] + rest
        failed.add(snap)
        return None

    try:
        steps = dfs(_State(start))
    except _Exhausted:
        return None
    if steps is None:
        return None
    return Certificate(regime, target.ambient, start, target, tuple(steps))


# -- JSON wire format ---------------------------------------------------------

def _poset_to_json(p: Poset) -> dict:
    return {"elements": list(p.elements), "pairs": sorted([a, b] for a, b in p.pairs)}


def _poset_from_json(d: dict) -> Poset:
    return Poset(tuple(d["elements"]), frozenset((a, b) for a, b in d["pairs"]))


def _decorated_to_json(x: DecoratedComplex) -> dict:
    return {
        "cells": sorted(list(c) for c in x.cells),
        "marked": sorted(list(c) for c in x.marked),
        "scaled": sorted(list(c) for c in x.scaled),
    }


def _decorated_from_json(d: dict, ambient: Poset, regime: Regime) -> DecoratedComplex:
    return DecoratedComplex(
        Complex(ambient, frozenset(tuple(c) for c in d["cells"])),
        frozenset(tuple(c) for c in d["marked"]),
        frozenset(tuple(c) for c in d["scaled"]),
        regime,
    )


def _rule_to_json(rule: RuleId) -> dict:
    if isinstance(rule, InnerHorn):
        return {"kind": rule.kind, "n": rule.n, "i": rule.i}
    if isinstance(rule, (RightHorn, OuterMsHorn, LeftMarkedHorn)):
        return {"kind": rule.kind, "n": rule.n}
    if isinstance(rule, PivotTrick):
        return {
            "kind": rule.kind,
            "n": rule.family.n,
            "members": sorted(sorted(s) for s in rule.family.members),
            "pivot": rule.pivot,
        }
    if isinstance(rule, RightPivotTrick):
        return {
            "kind": rule.kind,
            "n": rule.family.n,
            "members": sorted(sorted(s) for s in rule.family.members),
        }
    if isinstance(rule, SharpRight):
        return {"kind": rule.kind}
    raise CertificateError(f"cannot serialize rule {rule!r}")


def _rule_from_json(d: dict) -> RuleId:
    kind = d["kind"]
    if kind == "inner_horn":
        return InnerHorn(d["n"], d["i"])
    if kind == "right_horn":
        return RightHorn(d["n"])
    if kind == "outer_ms_horn":
        return OuterMsHorn(d["n"])
    if kind == "left_marked_horn":
        return LeftMarkedHorn(d["n"])
    if kind == "pivot":
        return PivotTrick(SubsetFamily.of(d["n"], d["members"]), d["pivot"])
    if kind == "right_pivot":
        return RightPivotTrick(SubsetFamily.of(d["n"], d["members"]))
    if kind == "sharp_right":
        return SharpRight()
    raise CertificateError(f"unknown rule kind {kind!r}")


def certificate_to_json(cert: Certificate) -> dict:
    return {
        "regime": cert.regime.value,
        "ambient": _poset_to_json(cert.ambient),
        "start": _decorated_to_json(cert.start),
        "target": _decorated_to_json(cert.target),
        "steps": [
            {"rule": _rule_to_json(s.rule), "attached": list(s.attached)}
            for s in cert.steps
        ],
    }


def certificate_from_json(d: dict) -> Certificate:
    regime = Regime(d["regime"])
    ambient = _poset_from_json(d["ambient"])
    return Certificate(
        regime,
        ambient,
        _decorated_from_json(d["start"], ambient, regime),
        _decorated_from_json(d["target"], ambient, regime),
        tuple(
            FillStep(_rule_from_json(s["rule"]), tuple(s["attached"]))
            for s in d["steps"]
        ),
    )


def dumps(cert: Certificate) -> str:
    return json.dumps(certificate_to_json(cert), indent=1, sort_keys=True)


def loads(text: str) -> Certificate:
    return certificate_from_json(json.loads(text))
