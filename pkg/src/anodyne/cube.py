"""Cube combinatorics: walk-indexed simplices, boxes, and filling certificates.

The n-cube is the nerve of the Boolean lattice on n bits.  Its top
nondegenerate simplices are walks from the bottom vertex to the top vertex,
indexed by permutations: step k of the walk for tau flips bit tau^{-1}(k).
Simplices are also handled as step tuples (t_1, ..., t_n), where coordinate j
is the map collapsing the first t_j vertices to 0; faces act on step tuples by
decrementing every entry above the face index.
"""

from __future__ import annotations

from itertools import permutations as _permutations

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
    nerve,
)
from .rules import InnerHorn, LeftMarkedHorn

Permutation = tuple[int, ...]
StepTuple = tuple[int, ...]


class CubeError(ValueError):
    pass


class FiltrationShapeError(CubeError):
    """An intersection is not a union of faces of the expected kind."""


def check_permutation(tau: Permutation) -> int:
    n = len(tau)
    if sorted(tau) != list(range(1, n + 1)):
        raise CubeError(f"not a permutation of 1..{n}: {tau}")
    return n


def phi(tau: Permutation) -> Chain:
    """The walk whose k-th vertex has bit j set iff tau(j) <= k."""
    n = check_permutation(tau)
    verts = []
    for k in range(n + 1):
        mask = 0
        for j in range(1, n + 1):
            if tau[j - 1] <= k:
                mask |= 1 << (j - 1)
        verts.append(mask)
    return tuple(verts)


def perm_of(chain: Chain) -> Permutation:
    """Inverse of phi on top-dimensional walks."""
    n = len(chain) - 1
    if chain[0] != 0 or chain[-1] != (1 << n) - 1:
        raise CubeError(f"not a full walk of the {n}-cube: {chain}")
    tau = [0] * n
    for k in range(1, n + 1):
        d = chain[k] ^ chain[k - 1]
        if d.bit_count() != 1:
            raise CubeError(f"not a cube walk: step {k} flips {d.bit_count()} bits")
        tau[d.bit_length() - 1] = k
    return tuple(tau)


def step_tuple(tau: Permutation) -> StepTuple:
    check_permutation(tau)
    return tuple(tau)


def tuple_face(t: StepTuple, i: int) -> StepTuple:
    """The i-th face at the step-tuple level: decrement entries above i."""
    if not 0 <= i <= max(t, default=0):
        raise CubeError(f"face index {i} out of range for {t}")
    return tuple(x - 1 if x > i else x for x in t)


def chain_of_tuple(t: StepTuple, dim: int) -> Chain:
    """The walk of a step tuple viewed as a dim-simplex; degenerate walks collapse."""
    verts = []
    for k in range(dim + 1):
        mask = 0
        for j, tj in enumerate(t):
            if tj <= k:
                mask |= 1 << j
        verts.append(mask)
    out = [verts[0]]
    for v in verts[1:]:
        if v != out[-1]:
            out.append(v)
    return tuple(out)


def perm_less(tau: Permutation, sigma: Permutation) -> bool:
    """The filling order: lexicographic comparison of the inverses."""
    n = check_permutation(tau)
    if check_permutation(sigma) != n:
        raise CubeError("permutations of different degree")
    inv_t = tuple(tau.index(k) for k in range(1, n + 1))
    inv_s = tuple(sigma.index(k) for k in range(1, n + 1))
    return inv_t < inv_s


def perm_sort_key(tau: Permutation) -> tuple[int, ...]:
    return tuple(tau.index(k) for k in range(1, len(tau) + 1))


def sorted_perms(n: int) -> list[Permutation]:
    return sorted(_permutations(range(1, n + 1)), key=perm_sort_key)


def cube_poset(n: int) -> Poset:
    return Poset.boolean(n)


def cube_complex(n: int) -> Complex:
    return nerve(cube_poset(n))


def cube_face(n: int, coord: int, value: int) -> Complex:
    """The face of the cube with coordinate ``coord`` (1-based) frozen."""
    if not 1 <= coord <= n or value not in (0, 1):
        raise CubeError(f"bad face ({coord}, {value}) for the {n}-cube")
    bit = 1 << (coord - 1)
    cells = frozenset(
        c
        for c in cube_complex(n).cells
        if all((v & bit != 0) == bool(value) for v in c)
    )
    return Complex(cube_poset(n), cells)


def boundary_cube(n: int) -> Complex:
    cells = frozenset().union(
        *(cube_face(n, i, j).cells for i in range(1, n + 1) for j in (0, 1))
    )
    return Complex(cube_poset(n), cells)


def left_box(n: int) -> Complex:
    """The boundary of the n-cube minus the face with last coordinate 1."""
    cells = frozenset().union(
        *(
            cube_face(n, i, j).cells
            for i in range(1, n + 1)
            for j in (0, 1)
            if (i, j) != (n, 1)
        )
    )
    return Complex(cube_poset(n), cells)


def j_box(n: int) -> Complex:
    """Spanned by the walks whose first step does not flip the last bit."""
    gens = [phi(tau) for tau in sorted_perms(n) if tau[n - 1] != 1]
    cells = closure_of(gens) | left_box(n).cells
    return Complex(cube_poset(n), cells)


def initial_edge(n: int) -> Chain:
    return (0, 1 << (n - 1))


def lc_membership_faces(tau: Permutation) -> frozenset[int]:
    """Predicted face indices i with d_i(phi(tau)) inside the left box."""
    n = check_permutation(tau)
    pred = {n}
    if tau[n - 1] != 1:
        pred.add(0)
    return frozenset(pred)


def _face_intersection_shape(
    current_cells: frozenset[Chain], walk: Chain
) -> tuple[frozenset[Chain], frozenset[int]]:
    """Intersect the state with a walk's closure; demand a union of faces."""
    n = len(walk) - 1
    u = closure_of([walk])
    inter = current_cells & u
    t_set = frozenset(
        t
        for t in range(n + 1)
        if closure_of([face_of(walk, t)]) <= current_cells
    )
    if inter != closure_of(face_of(walk, t) for t in t_set):
        raise FiltrationShapeError(
            f"intersection with {walk} is not a union of its faces"
        )
    return inter, t_set


def b_tau(n: int, tau: Permutation) -> tuple[Complex, frozenset[int]]:
    """Brute-force intersection of a walk with the left box and earlier walks."""
    if check_permutation(tau) != n:
        raise CubeError("degree mismatch")
    if tau[n - 1] == 1:
        raise CubeError(f"walk {tau} is outside the inner filtration")
    key = perm_sort_key(tau)
    cells = set(left_box(n).cells)
    for sig in sorted_perms(n):
        if perm_sort_key(sig) < key:
            cells.update(closure_of([phi(sig)]))
    inter, t_set = _face_intersection_shape(frozenset(cells), phi(tau))
    if not ({0, n} <= set(t_set) and set(t_set) < set(range(n + 1))):
        raise FiltrationShapeError(
            f"face set {sorted(t_set)} for {tau} is not a proper set containing 0 and {n}"
        )
    return Complex(cube_poset(n), inter), t_set


def inner_fill_steps(vertices: Chain, present: frozenset[int]) -> list[FillStep]:
    """Fill a simplex from a union of faces containing the first and last.

    Missing faces are all inner; they are filled in increasing index through
    recursion, leaving the last one to a single inner horn.
    """
    n = len(vertices) - 1
    missing = sorted(set(range(n + 1)) - set(present))
    if not missing or 0 in missing or n in missing:
        raise CubeError(
            f"inner scheme needs faces 0 and {n} present and some inner face missing"
        )
    steps: list[FillStep] = []
    have = set(present)
    for m in missing[:-1]:
        sub_present = frozenset(t if t < m else t - 1 for t in have)
        steps += inner_fill_steps(face_of(vertices, m), sub_present)
        have.add(m)
    steps.append(FillStep(InnerHorn(n, missing[-1]), vertices))
    return steps


def marked_fill_steps(vertices: Chain, present: frozenset[int]) -> list[FillStep]:
    """Fill a simplex whose missing faces include the zeroth.

    Faces 1 and n must be present; inner missing faces are filled recursively
    in increasing index, and the zeroth face arrives with the final left
    marked horn (the edge on the first two vertices is the marked one).
    """
    n = len(vertices) - 1
    missing = sorted(set(range(n + 1)) - set(present))
    if 0 not in missing or 1 in missing or n in missing:
        raise CubeError("marked scheme needs faces 1 and n present and face 0 missing")
    steps: list[FillStep] = []
    have = set(present)
    for m in missing:
        if m == 0:
            continue
        sub_present = frozenset(t if t < m else t - 1 for t in have)
        steps += marked_fill_steps(face_of(vertices, m), sub_present)
        have.add(m)
    steps.append(FillStep(LeftMarkedHorn(n), vertices))
    return steps


def inner_filtration(n: int) -> Certificate:
    """Certificate for the left box into the span of early walks (plain regime)."""
    if n < 2:
        raise CubeError("inner filtration needs n >= 2")
    poset = cube_poset(n)
    start = left_box(n)
    cells = set(start.cells)
    steps: list[FillStep] = []
    for tau in sorted_perms(n):
        if tau[n - 1] == 1:
            continue
        walk = phi(tau)
        _, t_set = _face_intersection_shape(frozenset(cells), walk)
        if not ({0, n} <= set(t_set) and set(t_set) < set(range(n + 1))):
            raise FiltrationShapeError(f"unexpected face set {sorted(t_set)} at {tau}")
        steps += inner_fill_steps(walk, t_set)
        cells |= closure_of([walk])
    target = Complex(poset, frozenset(cells))
    if target.cells != j_box(n).cells:
        raise FiltrationShapeError("inner filtration did not land on the walk span")
    return Certificate(
        Regime.PLAIN,
        poset,
        DecoratedComplex(start),
        DecoratedComplex(target),
        tuple(steps),
    )


def marked_tail(n: int) -> Certificate:
    """Certificate for the walk span into the full cube, initial edge marked."""
    if n < 1:
        raise CubeError("marked tail needs n >= 1")
    poset = cube_poset(n)
    start = j_box(n)
    edge = initial_edge(n)
    start_marked = frozenset([edge]) & start.cells
    cells = set(start.cells)
    steps: list[FillStep] = []
    for tau in sorted_perms(n):
        if tau[n - 1] != 1:
            continue
        walk = phi(tau)
        _, t_set = _face_intersection_shape(frozenset(cells), walk)
        if not ({1, n} <= set(t_set) and 0 not in t_set):
            raise FiltrationShapeError(f"unexpected face set {sorted(t_set)} at {tau}")
        steps += marked_fill_steps(walk, t_set)
        cells |= closure_of([walk])
    target = cube_complex(n)
    if frozenset(cells) != target.cells:
        raise FiltrationShapeError("marked tail did not land on the full cube")
    return Certificate(
        Regime.MARKED,
        poset,
        DecoratedComplex(start, start_marked, regime=Regime.MARKED),
        DecoratedComplex(target, frozenset([edge]), regime=Regime.MARKED),
        tuple(steps),
    )


def cube_fill(n: int) -> Certificate:
    """Concatenated certificate from the left box to the full cube.

    Runs in the marked regime: the inner part uses flat inner horns, the tail
    needs the initial edge marked.
    """
    if n < 2:
        return marked_tail(n)
    inner = inner_filtration(n)
    tail = marked_tail(n)
    poset = cube_poset(n)
    edge = initial_edge(n)
    start = DecoratedComplex(
        left_box(n), frozenset([edge]) & left_box(n).cells, regime=Regime.MARKED
    )
    return Certificate(
        Regime.MARKED,
        poset,
        start,
        tail.target,
        inner.steps + tail.steps,
    )


def horn_union_certificate(n: int, faces, marked: bool = False) -> Certificate:
    """Standalone certificate for a union of faces into its simplex.

    Plain variant: the face set must properly contain {0, n}.  Marked
    variant: the face set must contain {1, n} and omit 0, and the edge on
    the first two vertices is marked on both ends of the certificate.
    """
    t_set = frozenset(faces)
    poset = Poset.linear(n)
    top = tuple(range(n + 1))
    cells = closure_of(face_of(top, t) for t in t_set)
    if marked:
        steps = marked_fill_steps(top, t_set)
        edge = (0, 1)
        return Certificate(
            Regime.MARKED,
            poset,
            DecoratedComplex(
                Complex(poset, cells), frozenset([edge]) & cells, regime=Regime.MARKED
            ),
            DecoratedComplex(
                nerve(poset), frozenset([edge]), regime=Regime.MARKED
            ),
            tuple(steps),
        )
    steps = inner_fill_steps(top, t_set)
    return Certificate(
        Regime.PLAIN,
        poset,
        DecoratedComplex(Complex(poset, cells)),
        DecoratedComplex(nerve(poset)),
        tuple(steps),
    )


# -- prisms -------------------------------------------------------------------

def _interval_lift(chain: Chain, split: int) -> Chain:
    """The prism walk over a chain: bottom copy up to ``split``, then top."""
    return tuple(2 * v for v in chain[: split + 1]) + tuple(
        2 * v + 1 for v in chain[split:]
    )


def cylinder_cells(base: Complex, product: Poset) -> frozenset[Chain]:
    """All chains of base x [1] whose projection lies in the base complex."""
    out: set[Chain] = set()
    for c in nerve(product).cells:
        proj = []
        for v in c:
            p = v >> 1
            if not proj or proj[-1] != p:
                proj.append(p)
        if tuple(proj) in base.cells:
            out.add(c)
    return frozenset(out)


def prism_decomposition(sub: Complex, sup: Complex) -> Certificate:
    """Fill (sup x {0}) union (sub x interval) into sup x interval.

    Cells of sup missing from sub are processed in increasing dimension; each
    contributes its prism, decomposed into inner horns and one left marked
    horn through the marked vertical edge over its initial vertex.
    """
    if not sub.cells <= sup.cells:
        raise CubeError("prism decomposition needs sub <= sup")
    if sub.ambient != sup.ambient:
        raise CubeError("prism decomposition needs a shared ambient")
    product = Poset.product_interval(sup.ambient)
    bottom = frozenset(tuple(2 * v for v in c) for c in sup.cells)
    start_cells = bottom | cylinder_cells(sub, product)
    target_cells = cylinder_cells(sup, product)
    vertical = lambda cx: frozenset(
        (2 * c[0], 2 * c[0] + 1) for c in cx.cells if len(c) == 1
    )
    steps: list[FillStep] = []
    for cell in sorted(sup.cells - sub.cells, key=lambda c: (len(c), c)):
        k = len(cell) - 1
        for i in range(k, 0, -1):
            steps.append(FillStep(InnerHorn(k + 1, i), _interval_lift(cell, i)))
        steps.append(FillStep(LeftMarkedHorn(k + 1), _interval_lift(cell, 0)))
    return Certificate(
        Regime.MARKED,
        product,
        DecoratedComplex(
            Complex(product, start_cells), vertical(sub), regime=Regime.MARKED
        ),
        DecoratedComplex(
            Complex(product, target_cells), vertical(sup), regime=Regime.MARKED
        ),
        tuple(steps),
    )
