"""Subset families and the face-union calculus they drive.

A family A of subsets of [n] names the subcomplex of Delta^n obtained as the
union of the faces Delta^{[n] - S} over S in A.  Families are compared
extensionally (same named subcomplex), minimized by dropping non-minimal
members, restricted along faces, and tested for the dullness conditions that
let the pivot lemmas certify the inclusion of the named subcomplex into the
full simplex.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable

from .complexes import (
    Chain,
    Complex,
    DecoratedComplex,
    Poset,
    closure_of,
    empty_complex,
)


class FamilyError(ValueError):
    pass


Member = frozenset[int]


@dataclass(frozen=True)
class SubsetFamily:
    """A family of subsets of [n].  The empty set is a permitted member."""

    n: int
    members: frozenset[Member]

    def __post_init__(self):
        full = set(range(self.n + 1))
        for s in self.members:
            if not set(s) <= full:
                raise FamilyError(f"member {sorted(s)} not a subset of [{self.n}]")

    @classmethod
    def of(cls, n: int, members: Iterable[Iterable[int]]) -> "SubsetFamily":
        return cls(n, frozenset(frozenset(s) for s in members))


def s_complex(a: SubsetFamily) -> Complex:
    """The union of the faces Delta^{[n] - S} for S in the family."""
    full = tuple(range(a.n + 1))
    faces = [tuple(v for v in full if v not in s) for s in a.members]
    cells = closure_of(f for f in faces if f)
    if not cells:
        return empty_complex(Poset.linear(a.n))
    return Complex(Poset.linear(a.n), cells)


def chain_in_s_complex(chain: Chain, a: SubsetFamily) -> bool:
    """Membership without materializing: the chain must miss some member."""
    cs = set(chain)
    return any(not (cs & s) for s in a.members)


def minimize(a: SubsetFamily) -> SubsetFamily:
    """Keep only the inclusion-minimal members; names the same subcomplex."""
    keep = frozenset(
        s for s in a.members if not any(t < s for t in a.members)
    )
    return SubsetFamily(a.n, keep)


def equivalent(a: SubsetFamily, b: SubsetFamily) -> bool:
    if a.n != b.n:
        raise FamilyError("families over different simplices")
    return s_complex(a).cells == s_complex(b).cells


def restrict_family(a: SubsetFamily, t: Iterable[int]) -> SubsetFamily:
    """The family {S & T} over T, relabeled to positions within T.

    Satisfies: its named subcomplex is the T-face slice of the original one.
    """
    t_sorted = sorted(set(t))
    if not set(t_sorted) <= set(range(a.n + 1)):
        raise FamilyError("restriction set must lie in [n]")
    pos = {v: i for i, v in enumerate(t_sorted)}
    members = frozenset(
        frozenset(pos[v] for v in s if v in pos) for s in a.members
    )
    return SubsetFamily(len(t_sorted) - 1, members)


def add_face(a: SubsetFamily, t: Iterable[int]) -> SubsetFamily:
    """Adjoin the face Delta^T: add the complement of T as a member."""
    t_set = set(t)
    if not t_set <= set(range(a.n + 1)):
        raise FamilyError("face set must lie in [n]")
    comp = frozenset(set(range(a.n + 1)) - t_set)
    return SubsetFamily(a.n, a.members | {comp})


def basal_sets(a: SubsetFamily) -> frozenset[frozenset[int]]:
    """All transversals picking exactly one element from each member.

    Requires pairwise-disjoint members; with overlaps the transversal notion
    used by the pivot lemmas does not apply.
    """
    members = sorted(a.members, key=sorted)
    for i, s in enumerate(members):
        if not s:
            raise FamilyError("basal sets undefined with an empty member")
        for t in members[i + 1 :]:
            if s & t:
                raise FamilyError("basal sets require pairwise-disjoint members")
    return frozenset(
        frozenset(choice) for choice in product(*(sorted(s) for s in members))
    )


def _is_disjoint(a: SubsetFamily) -> bool:
    members = list(a.members)
    return all(
        not (members[i] & members[j])
        for i in range(len(members))
        for j in range(i + 1, len(members))
    )


def is_inner_dull(a: SubsetFamily) -> frozenset[int]:
    """The set of valid inner pivot points (empty if the family is not dull).

    A pivot i is valid when: the family has no empty member, no member
    contains i, 0 < i < n, members are pairwise disjoint, and every basal set
    straddles i.
    """
    if frozenset() in a.members or not _is_disjoint(a):
        return frozenset()
    try:
        basals = basal_sets(a)
    except FamilyError:
        return frozenset()
    pivots = set()
    for i in range(1, a.n):
        if any(i in s for s in a.members):
            continue
        if all(any(u < i for u in x) and any(v > i for v in x) for x in basals):
            pivots.add(i)
    return frozenset(pivots)


def is_right_dull(a: SubsetFamily) -> bool:
    """Nonempty, no empty member, no member contains n, pairwise disjoint."""
    return (
        bool(a.members)
        and frozenset() not in a.members
        and not any(a.n in s for s in a.members)
        and _is_disjoint(a)
    )


def fully_scaled(vertices: Iterable[int], x: DecoratedComplex) -> bool:
    """Every nondegenerate triangle on the vertex set is scaled."""
    vs = sorted(set(vertices))
    return all(t in x.scaled for t in combinations(vs, 3))


def pivot_hypotheses(a: SubsetFamily, i: int, x: DecoratedComplex) -> bool:
    """Check the inner pivot lemma's hypotheses on a decorated Delta^n.

    The ambient of ``x`` must be the linear order [n] with n = a.n; the family
    must be inner dull with pivot i.
    """
    _check_simplex_decoration(a, x)
    if i not in is_inner_dull(a):
        raise FamilyError(f"family is not inner dull with pivot {i}")
    for e in x.marked:
        if i not in e and not chain_in_s_complex(e, a):
            return False
    for tri in x.scaled:
        if chain_in_s_complex(tri, a) or i in tri:
            continue
        lo, _, hi = tri
        if not (lo < i < hi):
            return False
        if not fully_scaled(set(tri) | {i}, x):
            return False
    for basal in basal_sets(a):
        lower = max(v for v in basal if v < i)
        upper = min(v for v in basal if v > i)
        for r in range(lower, i):
            for s in range(i + 1, upper + 1):
                if (r, i, s) not in x.scaled:
                    return False
    return True


def right_pivot_hypotheses(a: SubsetFamily, x: DecoratedComplex) -> bool:
    """Check the right pivot lemma's hypotheses; the pivot is n itself."""
    _check_simplex_decoration(a, x)
    if not is_right_dull(a):
        raise FamilyError("family is not right dull")
    n = a.n
    for e in x.marked:
        if n not in e and not chain_in_s_complex(e, a):
            return False
    for tri in x.scaled:
        if n in tri or chain_in_s_complex(tri, a):
            continue
        c = tri[-1]
        if not fully_scaled(set(tri) | {n}, x):
            return False
        if (c, n) not in x.marked:
            return False
    for basal in basal_sets(a):
        lo, hi = min(basal), max(basal)
        for r in range(0, lo + 1):
            for s in range(hi, n):
                if r < s and (r, s, n) not in x.scaled:
                    return False
                if (s, n) not in x.marked:
                    return False
    return True


def _check_simplex_decoration(a: SubsetFamily, x: DecoratedComplex) -> None:
    expected = set(range(a.n + 1))
    if set(x.ambient.elements) != expected or len(x.cells) != (1 << (a.n + 1)) - 1:
        raise FamilyError("decorated complex must be the full simplex on [n]")
