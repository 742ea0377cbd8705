"""Finite posets, their nerves, and decorated subcomplexes.

Everything in this package lives inside the nerve of a finite poset: a cell
("chain") is a strictly increasing tuple of poset elements, and a complex is a
downward-closed set of chains.  Degenerate simplices are never stored; where a
construction decorates degenerate edges or triangles, that decoration is
implicit.

Poset elements are small integers.  Builders choose ids so that the partial
order refines the numeric order (a <= b in the poset implies a <= b as ints),
which lets chains be stored as numerically sorted tuples; the constructor
rejects relations violating this.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable, Mapping

Chain = tuple[int, ...]


class Regime(Enum):
    PLAIN = "plain"
    MARKED = "marked"
    MARKED_SCALED = "marked_scaled"


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class Poset:
    """A finite poset on integer ids.

    ``pairs`` holds every strict relation a < b.  Reflexivity is implicit.
    """

    elements: tuple[int, ...]
    pairs: frozenset[tuple[int, int]]

    def __post_init__(self):
        elems = set(self.elements)
        if len(elems) != len(self.elements):
            raise ComplexError("poset elements must be distinct")
        for a, b in self.pairs:
            if a not in elems or b not in elems:
                raise ComplexError(f"relation mentions unknown element: {(a, b)}")
            if a == b:
                raise ComplexError("pairs must be strict (no loops)")
            if b < a:
                raise ComplexError(
                    "poset order must refine the numeric order on ids "
                    f"(got {a} < {b} in the poset with {a} > {b} as ints)"
                )
            if (b, a) in self.pairs:
                raise ComplexError(f"antisymmetry violated at {(a, b)}")
        for a, b in self.pairs:
            for c in self.elements:
                if (b, c) in self.pairs and (a, c) not in self.pairs:
                    raise ComplexError(f"transitivity violated at {a} < {b} < {c}")

    @classmethod
    def from_leq(cls, elements: Iterable[int], leq) -> "Poset":
        elems = tuple(sorted(elements))
        pairs = frozenset(
            (a, b) for a in elems for b in elems if a != b and leq(a, b)
        )
        return cls(elems, pairs)

    @classmethod
    def linear(cls, n: int) -> "Poset":
        """The total order 0 < 1 < ... < n."""
        if n < 0:
            raise ComplexError("linear order needs n >= 0")
        return cls(
            tuple(range(n + 1)),
            frozenset((a, b) for a in range(n + 1) for b in range(a + 1, n + 1)),
        )

    @classmethod
    def boolean(cls, n: int) -> "Poset":
        """The Boolean lattice on n bits; elements are bitmasks, order is subset."""
        if n < 0:
            raise ComplexError("Boolean lattice needs n >= 0")
        masks = range(1 << n)
        return cls.from_leq(masks, lambda a, b: a & b == a)

    @classmethod
    def product_interval(cls, base: "Poset") -> "Poset":
        """base x [1]; element (p, eps) gets id 2*p + eps."""
        elems = [2 * p + e for p in base.elements for e in (0, 1)]
        base_leq = base.leq
        return cls.from_leq(
            elems,
            lambda a, b: base_leq(a >> 1, b >> 1) and (a & 1) <= (b & 1),
        )

    def leq(self, a: int, b: int) -> bool:
        return a == b or (a, b) in self.pairs

    def lt(self, a: int, b: int) -> bool:
        return (a, b) in self.pairs

    def is_chain(self, vertices: Iterable[int]) -> bool:
        vs = tuple(vertices)
        if not vs:
            return False
        elems = set(self.elements)
        return all(v in elems for v in vs) and all(
            self.lt(a, b) for a, b in zip(vs, vs[1:])
        )


def subchains(chain: Chain) -> list[Chain]:
    """All nonempty subchains (faces of every dimension, including the chain)."""
    out = []
    for k in range(1, len(chain) + 1):
        out.extend(combinations(chain, k))
    return out


def closure_of(chains: Iterable[Chain]) -> frozenset[Chain]:
    cells: set[Chain] = set()
    for c in chains:
        cells.update(subchains(c))
    return frozenset(cells)


def face_of(chain: Chain, i: int) -> Chain:
    if not 0 <= i < len(chain):
        raise ComplexError(f"face index {i} out of range for {chain}")
    return chain[:i] + chain[i + 1 :]


@dataclass(frozen=True)
class Complex:
    """A downward-closed set of chains in the nerve of a finite poset."""

    ambient: Poset
    cells: frozenset[Chain]

    def __post_init__(self):
        for c in self.cells:
            if not self.ambient.is_chain(c):
                raise ComplexError(f"not a chain of the ambient poset: {c}")
            for i in range(len(c)):
                if len(c) > 1 and face_of(c, i) not in self.cells:
                    raise ComplexError(f"not downward closed: missing face of {c}")

    def cells_of_dim(self, d: int) -> frozenset[Chain]:
        return frozenset(c for c in self.cells if len(c) == d + 1)

    def top_cells(self) -> frozenset[Chain]:
        return frozenset(
            c
            for c in self.cells
            if not any(c != d and set(c) <= set(d) for d in self.cells)
        )

    def dim(self) -> int:
        return max((len(c) - 1 for c in self.cells), default=-1)

    def __contains__(self, chain: Chain) -> bool:
        return chain in self.cells

    def __le__(self, other: "Complex") -> bool:
        return self.cells <= other.cells

    def union(self, other: "Complex") -> "Complex":
        if self.ambient != other.ambient:
            raise ComplexError("union needs a shared ambient poset")
        return Complex(self.ambient, self.cells | other.cells)

    def intersection(self, other: "Complex") -> "Complex":
        if self.ambient != other.ambient:
            raise ComplexError("intersection needs a shared ambient poset")
        return Complex(self.ambient, self.cells & other.cells)


def nerve(poset: Poset) -> Complex:
    """All strictly increasing chains of the poset."""
    succs = {
        a: [b for b in poset.elements if poset.lt(a, b)] for a in poset.elements
    }
    cells: set[Chain] = set()
    stack: list[Chain] = [(e,) for e in poset.elements]
    while stack:
        c = stack.pop()
        cells.add(c)
        for s in succs[c[-1]]:
            stack.append(c + (s,))
    return Complex(poset, frozenset(cells))


def close(ambient: Poset, generators: Iterable[Chain]) -> Complex:
    """Smallest downward-closed cell set containing the generators."""
    gens = [tuple(g) for g in generators]
    for g in gens:
        if not ambient.is_chain(g):
            raise ComplexError(f"generator is not a chain: {g}")
    return Complex(ambient, closure_of(gens))


def empty_complex(ambient: Poset) -> Complex:
    return Complex(ambient, frozenset())


def standard_simplex(n: int) -> Complex:
    return nerve(Poset.linear(n))


def generalized_horn(n: int, faces: Iterable[int]) -> Complex:
    """Union of the faces d_t(Delta^n) for t in the given index set."""
    t_set = set(faces)
    if not t_set:
        raise ComplexError("generalized horn needs a nonempty face set")
    if not t_set <= set(range(n + 1)):
        raise ComplexError(f"face indices out of range for n={n}: {sorted(t_set)}")
    top = tuple(range(n + 1))
    return close(Poset.linear(n), [face_of(top, t) for t in t_set])


def horn(n: int, i: int) -> Complex:
    if not 0 <= i <= n:
        raise ComplexError(f"horn index {i} out of range for n={n}")
    return generalized_horn(n, set(range(n + 1)) - {i})


def boundary(n: int) -> Complex:
    return generalized_horn(n, range(n + 1))


def join_linear(m: int, n: int) -> tuple[Complex, dict[int, int]]:
    """Delta^m joined with an n-simplex: Delta^{m+n+1}.

    Returns the simplex together with the map sending second-factor index i
    to its vertex m+1+i.
    """
    if m < 0 or n < 0:
        raise ComplexError("join_linear needs m, n >= 0")
    return standard_simplex(m + n + 1), {i: m + 1 + i for i in range(n + 1)}


@dataclass(frozen=True)
class DecoratedComplex:
    """A complex plus a marking (edges) and scaling (triangles).

    Only nondegenerate cells are stored; degenerate edges and triangles are
    decorated by convention.
    """

    complex: Complex
    marked: frozenset[Chain] = frozenset()
    scaled: frozenset[Chain] = frozenset()
    regime: Regime = Regime.PLAIN

    def __post_init__(self):
        if not self.marked <= self.complex.cells_of_dim(1):
            raise ComplexError("marked edges must be 1-cells of the complex")
        if not self.scaled <= self.complex.cells_of_dim(2):
            raise ComplexError("scaled triangles must be 2-cells of the complex")
        if self.regime is Regime.PLAIN and (self.marked or self.scaled):
            raise ComplexError("plain regime carries no decorations")
        if self.regime is Regime.MARKED and self.scaled:
            raise ComplexError("marked regime carries no scaling")

    @property
    def ambient(self) -> Poset:
        return self.complex.ambient

    @property
    def cells(self) -> frozenset[Chain]:
        return self.complex.cells


def restrict(x: DecoratedComplex, sub: Complex) -> DecoratedComplex:
    """Inherit decorations on a subcomplex."""
    if sub.ambient != x.ambient:
        raise ComplexError("restriction needs a shared ambient poset")
    if not sub.cells <= x.cells:
        raise ComplexError("restriction target is not a subcomplex")
    return DecoratedComplex(
        sub, x.marked & sub.cells, x.scaled & sub.cells, x.regime
    )


def restrict_cells(x: DecoratedComplex, cells: frozenset[Chain]) -> DecoratedComplex:
    return restrict(x, Complex(x.ambient, cells))


def relabel_map(sigma: Chain) -> Mapping[int, int]:
    """The unique monotone relabeling of a chain onto 0..dim."""
    return {v: i for i, v in enumerate(sigma)}


def relabel_chain(chain: Chain, mapping: Mapping[int, int]) -> Chain:
    return tuple(mapping[v] for v in chain)


def relabel_cells(cells: Iterable[Chain], mapping: Mapping[int, int]) -> frozenset[Chain]:
    return frozenset(relabel_chain(c, mapping) for c in cells)
