"""Difference sets, translate disjointness, and exact packing-family search.

Two shifts b, b' are compatible for a set A when the translated copies
``b + A`` and ``b' + A`` are disjoint; a packing family is a set of pairwise
compatible shifts, i.e. a clique of the compatibility graph. The search here
is exact: branch-and-bound for the answer, plus an independent exhaustive
oracle used by the test suite to cross-check it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from . import clique
from .errors import (
    EmptySetError,
    GroupMismatchError,
    PreconditionError,
    WindowTooLargeError,
)
from .groups import (
    Element,
    GroupSpec,
    Window,
    add_coord,
    enumerate_window,
    format_element,
    format_group,
    neg_coord,
    parse_element,
    parse_group,
)

DEFAULT_MAX_VERTICES = 1024


@dataclass(frozen=True)
class ElementSet:
    """A finite set of elements of one group, in canonical iteration order."""

    group: GroupSpec
    elements: tuple[Element, ...]

    @classmethod
    def of(cls, group: GroupSpec, elements: Iterable[Element]) -> ElementSet:
        seen = {}
        for e in elements:
            if e.group != group:
                raise GroupMismatchError("set elements must share one group spec")
            seen[e.coords] = e
        ordered = sorted(seen.values(), key=Element.sort_key)
        return cls(group, tuple(ordered))

    @classmethod
    def parse(cls, group: GroupSpec, texts: Iterable[str]) -> ElementSet:
        return cls.of(group, (parse_element(group, t) for t in texts))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Element]:
        return iter(self.elements)

    def __contains__(self, e: Element) -> bool:
        return e.group == self.group and e.coords in self.coords_set()

    def coords_set(self) -> frozenset:
        return frozenset(e.coords for e in self.elements)

    def translate(self, b: Element) -> ElementSet:
        return ElementSet.of(self.group, (b + a for a in self.elements))

    def to_texts(self) -> list[str]:
        return [format_element(e) for e in self.elements]


def _coord_add(group: GroupSpec, x: tuple, y: tuple) -> tuple:
    return tuple(add_coord(f, a, b) for f, a, b in zip(group.factors, x, y))


def _coord_neg(group: GroupSpec, x: tuple) -> tuple:
    return tuple(neg_coord(f, a) for f, a in zip(group.factors, x))


def _coord_sub(group: GroupSpec, x: tuple, y: tuple) -> tuple:
    return _coord_add(group, x, _coord_neg(group, y))


def difference_set(A: ElementSet) -> ElementSet:
    """All pairwise differences a - a'; symmetric and contains zero."""
    if not A.elements:
        raise EmptySetError("difference set of an empty set is undefined")
    group = A.group
    coords = [e.coords for e in A.elements]
    out = {}
    for x in coords:
        for y in coords:
            d = _coord_sub(group, x, y)
            out[d] = Element(group, d)
    return ElementSet(group, tuple(sorted(out.values(), key=Element.sort_key)))


def _difference_coords(A: ElementSet) -> set:
    group = A.group
    coords = [e.coords for e in A.elements]
    negs = [_coord_neg(group, c) for c in coords]
    return {_coord_add(group, x, ny) for x in coords for ny in negs}


def translates_disjoint(A: ElementSet, b: Element, b2: Element) -> bool:
    """True iff (b + A) and (b2 + A) share no element."""
    if b.coords == b2.coords and b.group == b2.group:
        raise PreconditionError("shifts must be distinct")
    group = A.group
    left = {_coord_add(group, b.coords, a.coords) for a in A.elements}
    return not any(
        _coord_add(group, b2.coords, a.coords) in left for a in A.elements
    )


@dataclass(frozen=True)
class PackingFamily:
    """A set of shifts whose translates of ``base`` are pairwise disjoint."""

    base: ElementSet
    shifts: ElementSet
    certified: bool

    @property
    def size(self) -> int:
        return len(self.shifts)


def compatibility_graph(A: ElementSet, vertices: list[Element]) -> list[int]:
    """Bit-packed adjacency of the shift-compatibility graph on ``vertices``."""
    group = A.group
    diff = _difference_coords(A)
    zero = A.group.zero().coords
    diff.discard(zero)
    n = len(vertices)
    coords = [v.coords for v in vertices]
    adj = [0] * n
    for i in range(n):
        ci = coords[i]
        for j in range(i + 1, n):
            if _coord_sub(group, ci, coords[j]) not in diff:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj


def _certify_family(A: ElementSet, shifts: list[Element]) -> bool:
    for i, b in enumerate(shifts):
        for b2 in shifts[i + 1 :]:
            if not translates_disjoint(A, b, b2):
                return False
    return True


def max_packing_family(
    A: ElementSet, window: Window, max_vertices: int = DEFAULT_MAX_VERTICES
) -> PackingFamily:
    """Exact maximum family of shifts inside the window, ties broken canonically."""
    if not A.elements:
        raise EmptySetError("packing index of the empty set is undefined")
    if window.group != A.group:
        raise GroupMismatchError("window and set belong to different groups")
    size = window.size()
    if size > max_vertices:
        raise WindowTooLargeError(size, max_vertices)
    vertices = list(enumerate_window(window))
    adj = compatibility_graph(A, vertices)
    _, picked = clique.first_max_clique(adj)
    shifts = [vertices[i] for i in picked]
    certified = _certify_family(A, shifts)
    return PackingFamily(A, ElementSet.of(A.group, shifts), certified)


@dataclass(frozen=True)
class CliqueResult:
    """Maximum set C with all pairwise differences inside a symmetric base set."""

    size: int
    witness: ElementSet
    certified: bool


def _bset_graph(B: ElementSet) -> tuple[list[Element], list[int]]:
    group = B.group
    coords = B.coords_set()
    zero = group.zero()
    if zero.coords not in coords:
        raise PreconditionError("the base set must contain zero")
    for e in B.elements:
        if _coord_neg(group, e.coords) not in coords:
            raise PreconditionError("the base set must be symmetric")
    vertices = list(B.elements)
    n = len(vertices)
    adj = [0] * n
    for i in range(n):
        ci = vertices[i].coords
        for j in range(i + 1, n):
            if _coord_sub(group, ci, vertices[j].coords) in coords:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return vertices, adj


def _verify_in_bset(B: ElementSet, chosen: list[Element]) -> bool:
    coords = B.coords_set()
    group = B.group
    return all(
        _coord_sub(group, a.coords, b.coords) in coords
        for a in chosen
        for b in chosen
    )


def max_clique_in_bset(B: ElementSet) -> CliqueResult:
    """Largest C with C - C inside B, searched over subsets of B itself.

    Any such C can be translated by one of its own points to sit inside
    B while keeping all differences, so the restriction loses nothing.
    """
    vertices, adj = _bset_graph(B)
    size, picked = clique.first_max_clique(adj)
    chosen = [vertices[i] for i in picked]
    witness = ElementSet.of(B.group, chosen)
    return CliqueResult(size, witness, _verify_in_bset(B, chosen))


def clique_in_bset_of_size(B: ElementSet, target: int) -> ElementSet | None:
    """Lexicographically-first C of exactly ``target`` points with C - C in B."""
    vertices, adj = _bset_graph(B)
    picked = clique.clique_of_size(adj, target)
    if picked is None:
        return None
    return ElementSet.of(B.group, [vertices[i] for i in picked])


# -- set files ----------------------------------------------------------------


def read_set_file(path: str | Path) -> ElementSet:
    """Load ``{"group": <DSL>, "elements": [...]}`` from a JSON file."""
    data = json.loads(Path(path).read_text())
    group = parse_group(data["group"])
    return ElementSet.parse(group, data["elements"])


def write_set_file(path: str | Path, A: ElementSet) -> None:
    payload = {"group": format_group(A.group), "elements": A.to_texts()}
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
