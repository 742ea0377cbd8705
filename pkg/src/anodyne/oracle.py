"""Cross-checks for the face-union calculus against independent mask oracles.

The oracle side never touches the complex machinery: a cell of the simplex on
[n] is a nonempty bitmask, and membership in the named subcomplex is the
direct criterion "misses some member".  The library side materializes
complexes; the checks compare the two.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .families import (
    SubsetFamily,
    add_face,
    equivalent,
    minimize,
    restrict_family,
    s_complex,
)


def mask_of(chain_or_set) -> int:
    m = 0
    for v in chain_or_set:
        m |= 1 << v
    return m


def cells_as_masks(cells) -> frozenset[int]:
    return frozenset(mask_of(c) for c in cells)


def oracle_masks(a: SubsetFamily) -> frozenset[int]:
    """Direct enumeration: nonempty masks missing some member."""
    member_masks = [mask_of(s) for s in a.members]
    return frozenset(
        m
        for m in range(1, 1 << (a.n + 1))
        if any(m & s == 0 for s in member_masks)
    )


def _submasks(t_mask: int) -> frozenset[int]:
    out = set()
    m = t_mask
    while True:
        if m:
            out.add(m)
        if m == 0:
            break
        m = (m - 1) & t_mask
    return frozenset(out)


@dataclass
class OracleReport:
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def note(self, condition: bool, message: str) -> None:
        self.checks += 1
        if not condition:
            self.failures.append(message)


def check_family(a: SubsetFamily, t_sets, report: OracleReport) -> None:
    """Run the calculus identities for one family against the mask oracle."""
    lib = cells_as_masks(s_complex(a).cells)
    orc = oracle_masks(a)
    report.note(lib == orc, f"named subcomplex differs from oracle for {_fmt(a)}")
    mini = minimize(a)
    report.note(
        cells_as_masks(s_complex(mini).cells) == orc,
        f"minimize changes the subcomplex for {_fmt(a)}",
    )
    report.note(
        equivalent(a, mini), f"equivalent(A, minimize(A)) false for {_fmt(a)}"
    )
    for t in t_sets:
        t_sorted = sorted(t)
        t_mask = mask_of(t)
        if t_sorted:
            restricted = restrict_family(a, t)
            back = {
                mask_of(t_sorted[p] for p in c)
                for c in s_complex(restricted).cells
            }
            report.note(
                back == {m for m in orc if m & ~t_mask == 0},
                f"restriction identity fails for {_fmt(a)}, T={t_sorted}",
            )
        added = add_face(a, t)
        report.note(
            cells_as_masks(s_complex(added).cells) == orc | _submasks(t_mask),
            f"face-union identity fails for {_fmt(a)}, T={t_sorted}",
        )
    members = list(a.members)
    disjoint = all(
        not (members[i] & members[j])
        for i in range(len(members))
        for j in range(i + 1, len(members))
    )
    if disjoint and members:
        low = [
            m
            for m in range(1, 1 << (a.n + 1))
            if m.bit_count() < len(members)
        ]
        report.note(
            all(m in orc for m in low),
            f"low-dimensional skeleton missing for disjoint {_fmt(a)}",
        )


def _fmt(a: SubsetFamily) -> str:
    return f"n={a.n} members={sorted(sorted(s) for s in a.members)}"


def random_family(rng: random.Random, n: int, max_members: int = 5) -> SubsetFamily:
    count = rng.randint(0, max_members)
    members = [
        frozenset(v for v in range(n + 1) if rng.random() < 0.4)
        for _ in range(count)
    ]
    return SubsetFamily(n, frozenset(members))


def run_subset_fuzz(n: int, trials: int, seed: int) -> OracleReport:
    """Seeded random families with random restriction sets."""
    rng = random.Random(seed)
    report = OracleReport()
    for _ in range(trials):
        a = random_family(rng, n)
        t_sets = [
            frozenset(v for v in range(n + 1) if rng.random() < 0.5)
            for _ in range(2)
        ]
        check_family(a, t_sets, report)
    return report
