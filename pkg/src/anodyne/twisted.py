"""Twisted-arrow constructions over the join of a simplex with its opposite.

The n-th object lives on Delta^{2n+1}: positions 0..n form the forward part,
positions n+1..2n+1 the backward part, and position i pairs with 2n+1-i.
The standard scaling singles out triangles compatible with this pairing; the
backward marking distinguishes edges inside the backward part.  The main
deliverable is the certificate that the forward cone includes anodynely into
the whole decorated simplex, generated by replaying a fixed recursive plan
whose macro steps are hypothesis-checked as they are emitted.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .certificates import Certificate, FillStep
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
    restrict,
    standard_simplex,
)
from .families import (
    SubsetFamily,
    add_face,
    is_inner_dull,
    is_right_dull,
    minimize,
    pivot_hypotheses,
    restrict_family,
    right_pivot_hypotheses,
)
from .rules import InnerHorn, OuterMsHorn, PivotTrick, RightPivotTrick, SharpRight


class TwistedError(ValueError):
    pass


class FalsificationError(TwistedError):
    """A mechanically generated step failed its hypothesis check."""


def bar(n: int, i: int) -> int:
    if not 0 <= i <= 2 * n + 1:
        raise TwistedError(f"index {i} out of range for the join on [2n+1], n={n}")
    return 2 * n + 1 - i


def q_scaling(n: int) -> frozenset[Chain]:
    """The standard scaling: nondegenerate triangles of the four kinds."""
    out: set[Chain] = set()
    top = 2 * n + 1
    for x, y, z in combinations(range(top + 1), 3):
        if z <= n or x >= n + 1:
            out.add((x, y, z))
        elif y <= n <= z - 1 and y <= top - z:
            # forward pair (x, y) against backward z = bar(k): needs y <= k
            out.add((x, y, z))
        elif x <= n and y >= n + 1 and top - y <= x:
            # forward x against backward pair: needs bar(y) <= x
            out.add((x, y, z))
    return frozenset(out)


def heart_marking(n: int) -> frozenset[Chain]:
    """Edges lying in the backward part."""
    return frozenset(
        (x, y) for x, y in combinations(range(2 * n + 2), 2) if x >= n + 1
    )


def q(n: int) -> DecoratedComplex:
    """The scaled join: Delta^{2n+1} with the standard scaling, no marking."""
    return DecoratedComplex(
        standard_simplex(2 * n + 1),
        frozenset(),
        q_scaling(n),
        Regime.MARKED_SCALED,
    )


def r(n: int) -> DecoratedComplex:
    """The scaled join with the backward marking."""
    return DecoratedComplex(
        standard_simplex(2 * n + 1),
        heart_marking(n),
        q_scaling(n),
        Regime.MARKED_SCALED,
    )


def front_cone_vertices(n: int) -> Chain:
    """Positions 0..n plus the final backward vertex."""
    return tuple(range(n + 1)) + (2 * n + 1,)


def j(n: int) -> DecoratedComplex:
    """The forward cone with inherited decorations."""
    cells = closure_of([front_cone_vertices(n)])
    return restrict(r(n), Complex(Poset.linear(2 * n + 1), cells))


@dataclass(frozen=True)
class MFiltration:
    """The chain of subcomplexes interpolating the cone union into the simplex."""

    n: int
    stages: tuple[Complex, ...]


def m_filtration(n: int) -> MFiltration:
    poset = Poset.linear(2 * n + 1)
    op_chain = tuple(range(n + 1, 2 * n + 2))
    cells = closure_of([front_cone_vertices(n), op_chain])
    stages = [Complex(poset, cells)]
    full = tuple(range(2 * n + 2))
    for ell in range(1, n + 1):
        side = tuple(v for v in full if v not in (ell, bar(n, ell)))
        cells = cells | closure_of([side])
        stages.append(Complex(poset, cells))
    return MFiltration(n, tuple(stages))


def _m_family(m: int, k: int) -> SubsetFamily:
    """Face family (in positions over [2m+1]) of the k-th filtration stage."""
    members = [
        frozenset(range(m + 1, 2 * m + 1)),
        frozenset(range(m + 1)),
    ]
    members += [frozenset({ell, 2 * m + 1 - ell}) for ell in range(1, k + 1)]
    return SubsetFamily(2 * m + 1, frozenset(members))


def _pivot_step(
    labels: tuple[int, ...],
    positions: list[int],
    fam: SubsetFamily,
    target: DecoratedComplex,
    right: bool,
) -> FillStep:
    """Emit one macro step on a face, deriving the pivot mechanically."""
    rel = minimize(restrict_family(fam, positions))
    attached = tuple(labels[p] for p in positions)
    u = closure_of([attached])
    pos_of = {v: i for i, v in enumerate(attached)}
    deco = DecoratedComplex(
        Complex(Poset.linear(len(attached) - 1), relabel_cells(u, pos_of)),
        relabel_cells(set(target.marked) & u, pos_of),
        relabel_cells(set(target.scaled) & u, pos_of),
        Regime.MARKED_SCALED,
    )
    if right:
        if not is_right_dull(rel) or not right_pivot_hypotheses(rel, deco):
            raise FalsificationError(
                f"right pivot hypotheses fail on face {attached}"
            )
        return FillStep(RightPivotTrick(rel), attached)
    for pivot in sorted(is_inner_dull(rel)):
        if pivot_hypotheses(rel, pivot, deco):
            return FillStep(PivotTrick(rel, pivot), attached)
    raise FalsificationError(f"no valid pivot on face {attached}")


def _m_tail_steps(
    labels: tuple[int, ...], k: int, target: DecoratedComplex
) -> list[FillStep]:
    """Steps filling the k-th filtration stage of the labeled join to its simplex."""
    m = len(labels) // 2 - 1
    if m == 0:
        return []
    steps: list[FillStep] = []
    for ell in range(k + 1, m + 1):
        sub = tuple(
            labels[p] for p in range(2 * m + 2) if p not in (ell, 2 * m + 1 - ell)
        )
        steps += _m_tail_steps(sub, ell - 1, target)
    if m == 1:
        v = labels
        steps.append(FillStep(OuterMsHorn(2), (v[1], v[2], v[3])))
        steps.append(FillStep(InnerHorn(2, 1), (v[0], v[1], v[2])))
        steps.append(FillStep(InnerHorn(3, 1), tuple(v)))
        return steps
    fam = _m_family(m, m)
    top = 2 * m + 1
    plan: list[tuple[list[int], bool]] = []
    for kk in range(m, 1, -1):
        plan.append((list(range(kk, m + 1)) + list(range(m + 1, top + 1)), False))
    for jj in range(m, 1, -1):
        plan.append(
            (
                list(range(m + 1)) + list(range(m + 1, top + 1 - jj)) + [top],
                False,
            )
        )
    plan.append((list(range(1, top + 1)), True))
    plan.append((list(range(top + 1)), False))
    for positions, right in plan:
        steps.append(_pivot_step(labels, positions, fam, target, right))
        fam = minimize(add_face(fam, positions))
    return steps


def v_certificate(n: int, bound: int = 4) -> Certificate:
    """Certificate that the forward cone fills the whole decorated join.

    The plan mirrors the filtration: one sharp right-cone step attaches the
    backward part, the paired side faces are handled recursively, and the
    final stage runs through hypothesis-checked macro steps.
    """
    if n < 0:
        raise TwistedError("need n >= 0")
    if n > bound:
        raise TwistedError(
            f"n={n} above the configured bound {bound}; raise it explicitly"
        )
    target = r(n)
    poset = Poset.linear(2 * n + 1)
    start = j(n)
    steps: list[FillStep] = []
    if n >= 1:
        op_chain = tuple(range(n + 1, 2 * n + 2))
        steps.append(FillStep(SharpRight(), op_chain))
        steps += _m_tail_steps(tuple(range(2 * n + 2)), 0, target)
    return Certificate(Regime.MARKED_SCALED, poset, start, target, tuple(steps))


def pushout_decoration_check(n: int) -> bool:
    """The forward cone differs from its flat simplex only by forward scaling.

    Also checks that the restriction to the horn at the initial vertex
    matches the same description.
    """
    if n < 1:
        raise TwistedError("need n >= 1")
    cone = j(n)
    front = set(range(n + 1))
    expected = frozenset(
        c for c in cone.cells if len(c) == 3 and set(c) <= front
    )
    if cone.marked or set(cone.scaled) != set(expected):
        return False
    verts = front_cone_vertices(n)
    horn_cells = closure_of(face_of(verts, t) for t in range(1, n + 2))
    horn_restr = restrict(cone, Complex(cone.ambient, horn_cells))
    return not horn_restr.marked and set(horn_restr.scaled) == set(
        expected & horn_cells
    )


@dataclass(frozen=True)
class TwSimplex:
    """A monotone vertex assignment for the scaled join, landing in a complex."""

    n: int
    vertices: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) != 2 * self.n + 2:
            raise TwistedError("vertex count must be 2n+2")


def _image_chain(seq: tuple[int, ...]) -> Chain:
    out = [seq[0]]
    for v in seq[1:]:
        if v != out[-1]:
            out.append(v)
    return tuple(out)


def tw_enumerate(x: DecoratedComplex, n: int) -> list[TwSimplex]:
    """All scaled-join simplices of a decorated complex, lexicographically.

    A candidate is a weakly increasing vertex sequence whose image chain is a
    cell and whose scaled triangles land on scaled (or degenerate) triangles.
    """
    poset = x.ambient
    scaling = q_scaling(n)
    nexts = {
        v: [v] + [w for w in poset.elements if poset.lt(v, w)]
        for v in poset.elements
    }
    out: list[TwSimplex] = []
    length = 2 * n + 2

    def extend(seq: list[int]):
        if len(seq) == length:
            if _image_chain(tuple(seq)) not in x.cells:
                return
            for a, b, c in scaling:
                img = (seq[a], seq[b], seq[c])
                if img[0] != img[1] and img[1] != img[2] and img not in x.scaled:
                    return
            out.append(TwSimplex(n, tuple(seq)))
            return
        for w in nexts[seq[-1]] if seq else sorted(poset.elements):
            seq.append(w)
            extend(seq)
            seq.pop()

    extend([])
    return out


def tw_face(ts: TwSimplex, i: int) -> TwSimplex:
    """Drop the i-th pairing: positions i and its partner."""
    if not 0 <= i <= ts.n:
        raise TwistedError(f"face index {i} out of range")
    partner = bar(ts.n, i)
    verts = tuple(v for p, v in enumerate(ts.vertices) if p not in (i, partner))
    return TwSimplex(ts.n - 1, verts)


def is_fully_scaled_edge(x: DecoratedComplex, ts: TwSimplex) -> bool:
    """Cartesian test for a 1-simplex: every triangle of its join lands scaled."""
    if ts.n != 1:
        raise TwistedError("fully-scaled test applies to 1-simplices")
    for a, b, c in combinations(range(4), 3):
        img = (ts.vertices[a], ts.vertices[b], ts.vertices[c])
        if img[0] != img[1] and img[1] != img[2] and img not in x.scaled:
            return False
    return True
