"""Filling rules: primitive horn generators and cited macro rules.

A horn rule names an inclusion of a horn into a standard simplex together
with the decorations its codomain carries; which decorations apply depends on
the replay regime.  Macro rules (the two pivot rules and the sharp right-cone
rule) stand for cited lemmas whose hypotheses are checked mechanically at
recognition time.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from .complexes import Chain, Regime, horn
from .families import SubsetFamily

PRIMITIVE = "primitive"
CITED_LEMMA = "cited-lemma"


class RuleError(ValueError):
    pass


@dataclass(frozen=True)
class InnerHorn:
    """Fill a simplex through an inner horn.

    Flat in the plain and marked regimes; in the marked-scaled regime the
    codomain scales the triangle {i-1, i, i+1}.
    """

    n: int
    i: int

    def __post_init__(self):
        if self.n < 2 or not 0 < self.i < self.n:
            raise RuleError(f"inner horn needs 0 < i < n, n >= 2; got n={self.n}, i={self.i}")

    trust = PRIMITIVE
    kind = "inner_horn"


@dataclass(frozen=True)
class RightHorn:
    """Fill through the outer right horn, plain regime only."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise RuleError("right horn needs n >= 1")

    trust = PRIMITIVE
    kind = "right_horn"


@dataclass(frozen=True)
class OuterMsHorn:
    """Marked-scaled outer horn: edge {n-1, n} marked, triangle {0, n-1, n} scaled."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise RuleError("outer marked-scaled horn needs n >= 1")

    trust = PRIMITIVE
    kind = "outer_ms_horn"


@dataclass(frozen=True)
class LeftMarkedHorn:
    """Left horn with the initial edge {0, 1} marked, marked regime."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise RuleError("left marked horn needs n >= 1")

    trust = PRIMITIVE
    kind = "left_marked_horn"


@dataclass(frozen=True)
class PivotTrick:
    """Cited lemma: a dull family's named subcomplex includes anodynely.

    ``family`` and ``pivot`` are relative to the attached chain: members are
    position sets in 0..dim(attached).
    """

    family: SubsetFamily
    pivot: int

    trust = CITED_LEMMA
    kind = "pivot"


@dataclass(frozen=True)
class RightPivotTrick:
    """Cited lemma, right-dull variant; the pivot is the top position."""

    family: SubsetFamily

    trust = CITED_LEMMA
    kind = "right_pivot"


@dataclass(frozen=True)
class SharpRight:
    """Cited rule: a plain right-anodyne inclusion with all decorations sharp."""

    trust = CITED_LEMMA
    kind = "sharp_right"


HornRule = Union[InnerHorn, RightHorn, OuterMsHorn, LeftMarkedHorn]
RuleId = Union[HornRule, PivotTrick, RightPivotTrick, SharpRight]

ALLOWED_RULES: dict[Regime, tuple[type, ...]] = {
    Regime.PLAIN: (InnerHorn, RightHorn),
    Regime.MARKED: (InnerHorn, LeftMarkedHorn),
    Regime.MARKED_SCALED: (
        InnerHorn,
        OuterMsHorn,
        SharpRight,
        PivotTrick,
        RightPivotTrick,
    ),
}


@dataclass(frozen=True)
class HornTemplate:
    """A horn rule materialized over [n]: domain cells plus codomain decorations."""

    n: int
    missing: int
    domain_cells: frozenset[Chain]
    marked: frozenset[Chain]
    scaled: frozenset[Chain]


@lru_cache(maxsize=None)
def _horn_cells(n: int, i: int) -> frozenset[Chain]:
    return horn(n, i).cells


def horn_template(rule: HornRule, regime: Regime) -> HornTemplate:
    if isinstance(rule, InnerHorn):
        scaled = (
            frozenset({(rule.i - 1, rule.i, rule.i + 1)})
            if regime is Regime.MARKED_SCALED
            else frozenset()
        )
        return HornTemplate(
            rule.n, rule.i, _horn_cells(rule.n, rule.i), frozenset(), scaled
        )
    if isinstance(rule, RightHorn):
        if regime is not Regime.PLAIN:
            raise RuleError("right horn applies in the plain regime only")
        return HornTemplate(
            rule.n, rule.n, _horn_cells(rule.n, rule.n), frozenset(), frozenset()
        )
    if isinstance(rule, OuterMsHorn):
        if regime is not Regime.MARKED_SCALED:
            raise RuleError("outer marked-scaled horn needs the marked-scaled regime")
        n = rule.n
        scaled = frozenset({(0, n - 1, n)}) if n >= 2 else frozenset()
        return HornTemplate(
            n, n, _horn_cells(n, n), frozenset({(n - 1, n)}), scaled
        )
    if isinstance(rule, LeftMarkedHorn):
        if regime is not Regime.MARKED:
            raise RuleError("left marked horn needs the marked regime")
        return HornTemplate(
            rule.n,
            0,
            _horn_cells(rule.n, 0),
            frozenset({(0, 1)}),
            frozenset(),
        )
    raise RuleError(f"not a horn rule: {rule!r}")
