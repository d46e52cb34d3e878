"""Reeb chord spectra and Morse-style generator sets.

For a k-fold Legendrian cover of an embedded Lagrangian with equally
spaced lift points in each fiber (deck group Z_k inside the circle), the
space of Reeb chords splits into components indexed by a sheet shift
d in [0, k) and a winding number m >= 0, each diffeomorphic to the
Legendrian, with action d/k + m under the period-1 normalization.  The
generators of the associated complex are chords paired with critical
points of a product Morse function, plus the critical points on the
Legendrian itself.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .rational import rat_str


@dataclass(frozen=True, order=True)
class ChordComponent:
    """One component of the Reeb chord space, with a representative chord.

    The component is determined by (cover_order, sheet shift, winding);
    start_sheet picks the representative chord from that start sheet.
    """

    cover_order: int
    start_sheet: int
    end_sheet: int
    winding: int

    def __post_init__(self):
        k = self.cover_order
        if k < 1:
            raise ValueError("cover order must be a positive integer")
        if not (0 <= self.start_sheet < k and 0 <= self.end_sheet < k):
            raise ValueError("sheets must lie in [0, cover order)")
        if self.winding < 0:
            raise ValueError("winding must be nonnegative")
        if self.sheet_shift == 0 and self.winding == 0:
            raise ValueError("zero-action chord excluded (constant path)")

    @property
    def sheet_shift(self) -> int:
        return (self.end_sheet - self.start_sheet) % self.cover_order

    @property
    def action(self) -> Fraction:
        return Fraction(self.sheet_shift, self.cover_order) + self.winding


def action(c: ChordComponent) -> Fraction:
    """The action (fiber-angle length) of a chord."""
    return c.action


def concatenate(c1: ChordComponent, c2: ChordComponent) -> ChordComponent:
    """Concatenation of chords with matching endpoint sheets; actions add."""
    if c1.cover_order != c2.cover_order:
        raise ValueError("chords live over different covers")
    if c1.end_sheet != c2.start_sheet:
        raise ValueError("endpoint sheets do not match")
    k = c1.cover_order
    total_shift = c1.sheet_shift + c2.sheet_shift
    return ChordComponent(
        cover_order=k,
        start_sheet=c1.start_sheet,
        end_sheet=c2.end_sheet,
        winding=c1.winding + c2.winding + total_shift // k,
    )


def enumerate_chords(k: int, max_action: Fraction) -> list[ChordComponent]:
    """All chord components with action in (0, max_action], sorted.

    One representative per component (start sheet 0); the k translates of
    a component come from `sheet_realizations`.  Sorted by action, then by
    sheet shift.
    """
    if k < 1:
        raise ValueError("cover order must be a positive integer")
    max_action = Fraction(max_action)
    if max_action <= 0:
        raise ValueError("max_action must be positive")
    out = []
    m = 0
    while Fraction(m) <= max_action:  # the cheapest action at winding m is m
        for d in range(k):
            theta = Fraction(d, k) + m
            if 0 < theta <= max_action:
                out.append(ChordComponent(cover_order=k, start_sheet=0, end_sheet=d, winding=m))
        m += 1
    out.sort(key=lambda c: (c.action, c.sheet_shift))
    return out


def sheet_realizations(c: ChordComponent) -> list[ChordComponent]:
    """The k chords of the component, one per start sheet."""
    k = c.cover_order
    d = c.sheet_shift
    return [
        ChordComponent(
            cover_order=k, start_sheet=s, end_sheet=(s + d) % k, winding=c.winding
        )
        for s in range(k)
    ]


@dataclass(frozen=True)
class MorseModel:
    """Product Morse data on a torus of the given rank.

    Critical points are labeled by subsets S of {1..rank} (Morse index
    |S|), 2^rank in total.  `positivity_witness` is the constant a > 0 in
    the translation-invariant lift a d/ds + grad; it is carried, never
    evaluated.
    """

    rank: int
    positivity_witness: Fraction = Fraction(1)

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        object.__setattr__(self, "positivity_witness", Fraction(self.positivity_witness))
        if self.positivity_witness <= 0:
            raise ValueError("the vertical drift must be positive")

    def critical_points(self) -> list[frozenset[int]]:
        items = list(range(1, self.rank + 1))
        out = []
        for r in range(self.rank + 1):
            for combo in itertools.combinations(items, r):
                out.append(frozenset(combo))
        return out

    def index(self, label: frozenset[int]) -> int:
        return len(label)


@dataclass(frozen=True)
class GeneratorSet:
    """Generators of the complex: chord-bound (white) and interior (black)."""

    white: tuple[tuple[ChordComponent, frozenset[int]], ...]
    black: tuple[frozenset[int], ...]

    def __len__(self) -> int:
        return len(self.white) + len(self.black)


def generator_set(k: int, morse: MorseModel, max_action: Fraction) -> GeneratorSet:
    """White generators: chords x critical points; black: critical points.

    Each chord component is diffeomorphic to the Legendrian, so the same
    product Morse function serves on every component.
    """
    chords = enumerate_chords(k, max_action)
    crits = morse.critical_points()
    white = tuple((c, s) for c in chords for s in crits)
    black = tuple(crits)
    return GeneratorSet(white=white, black=black)


def chords_tsv(chords: Iterable[ChordComponent]) -> str:
    """Tab-separated rows: d, m, action, start_sheet, end_sheet."""
    lines = ["d\tm\taction\tstart_sheet\tend_sheet"]
    for c in chords:
        lines.append(
            f"{c.sheet_shift}\t{c.winding}\t{rat_str(c.action)}\t{c.start_sheet}\t{c.end_sheet}"
        )
    return "\n".join(lines) + "\n"
