"""Plain-text format for decorated complexes.

Grammar (one record per line, blank lines and ``#``-comments ignored except
for the two section markers):

    <chain>      ::= id ("," id)*          one cell per line, ids in order
    "#mark"                                 following chains are marked edges
    "#scale"                                following chains are scaled triangles

Cells listed before any marker are the generating chains of the complex; the
downward closure is taken automatically.  The ambient poset is supplied by
the caller (it is not part of the format).
"""

from __future__ import annotations

from .complexes import (
    Chain,
    Complex,
    DecoratedComplex,
    Poset,
    Regime,
    close,
)


class TextFormatError(ValueError):
    pass


def parse_decorated(
    text: str, ambient: Poset, regime: Regime = Regime.PLAIN
) -> DecoratedComplex:
    section = "cells"
    gens: list[Chain] = []
    marked: list[Chain] = []
    scaled: list[Chain] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            tag = line[1:].strip().lower()
            if tag == "mark":
                section = "mark"
            elif tag == "scale":
                section = "scale"
            continue
        try:
            chain = tuple(int(p) for p in line.split(","))
        except ValueError as e:
            raise TextFormatError(f"line {lineno}: not a chain: {line!r}") from e
        if section == "cells":
            gens.append(chain)
        elif section == "mark":
            marked.append(chain)
        else:
            scaled.append(chain)
    cx = close(ambient, gens)
    return DecoratedComplex(cx, frozenset(marked), frozenset(scaled), regime)


def format_decorated(x: DecoratedComplex) -> str:
    lines = [",".join(str(v) for v in c) for c in sorted(x.cells)]
    if x.marked:
        lines.append("#mark")
        lines += [",".join(str(v) for v in c) for c in sorted(x.marked)]
    if x.scaled:
        lines.append("#scale")
        lines += [",".join(str(v) for v in c) for c in sorted(x.scaled)]
    return "\n".join(lines) + "\n"


def ambient_from_spec(spec: str) -> Poset:
    """Parse an ambient descriptor: ``linear:N``, ``cube:N``, or ``prism:N``."""
    try:
        kind, num = spec.split(":")
        n = int(num)
    except ValueError as e:
        raise TextFormatError(f"bad ambient spec {spec!r}; want kind:N") from e
    if kind == "linear":
        return Poset.linear(n)
    if kind == "cube":
        return Poset.boolean(n)
    if kind == "prism":
        return Poset.product_interval(Poset.linear(n))
    raise TextFormatError(f"unknown ambient kind {kind!r}")
