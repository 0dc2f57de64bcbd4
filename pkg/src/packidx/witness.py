"""Greedy construction of sets with a prescribed windowed sharp packing index.

Given a verified base set B and a window W, the builder walks the window's
elements g (outside the nonzero part of B) in canonical order and greedily
picks anchor points a so that the growing set A = U {a, g + a} never meets
its own B-translates. Two invariants certify the outcome:

  I1: (B* + A) and A are disjoint, where B* = B minus zero
  I2: every window element outside B* is a difference of two points of A

Together they force the windowed sharp index of A to be exactly kappa.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bsets import BSet
from .errors import (
    CandidateExhaustedError,
    GroupMismatchError,
    PreconditionError,
    PropertyThreeViolatedError,
)
from .groups import Element, GroupSpec, Window, enumerate_window
from .packing import (
    ElementSet,
    PackingFamily,
    _coord_add,
    _coord_neg,
    max_packing_family,
)


@dataclass(frozen=True)
class TraceStep:
    """One greedy step: the difference g being realized, the anchor a picked,
    and the size of the forbidden region the anchor had to avoid."""

    g: Element
    a: Element
    forbidden_size: int


@dataclass(frozen=True)
class WitnessSet:
    group: GroupSpec
    kappa: int
    bset: BSet
    window: Window
    elements: ElementSet
    trace: tuple[TraceStep, ...]
    ambient: Window


def build_witness(bset: BSet, window: Window, max_expansions: int = 8) -> WitnessSet:
    """Run the greedy construction over the window, expanding the candidate
    search region (ambient) by doubling when it runs dry, up to the cap."""
    group = bset.group
    if window.group != group:
        raise GroupMismatchError("window group differs from the base set's group")
    zero = group.zero().coords
    bcoords = [e.coords for e in bset.elements]
    if zero not in set(bcoords):
        raise PreconditionError("base set must contain zero")
    bstar = {c for c in bcoords if c != zero}

    targets = [g for g in enumerate_window(window) if g.coords not in bstar]

    ambient = window
    expansions = 0
    forbidden: set = set()  # F + B, grown incrementally
    acoords: list = []
    aset: set = set()
    trace: list[TraceStep] = []

    for g in targets:
        gc = g.coords
        neg_g = _coord_neg(group, gc)
        a = None
        while a is None:
            for cand in enumerate_window(ambient):
                cc = cand.coords
                if cc in forbidden:
                    continue
                if _coord_add(group, cc, gc) in forbidden:
                    continue
                a = cand
                break
            if a is None:
                bigger = ambient.expanded()
                if bigger is None:
                    raise PropertyThreeViolatedError(
                        f"no anchor left for g={g} in the finite group {group}"
                    )
                expansions += 1
                if expansions > max_expansions:
                    raise CandidateExhaustedError(
                        f"no anchor for g={g} after {max_expansions} ambient expansions"
                    )
                ambient = bigger

        shifted_extra = sum(
            1 for c in forbidden if _coord_add(group, c, neg_g) not in forbidden
        )
        trace.append(TraceStep(g, a, len(forbidden) + shifted_extra))

        for fresh in (a.coords, _coord_add(group, a.coords, gc)):
            if fresh not in aset:
                acoords.append(fresh)
                aset.add(fresh)
                for b in bcoords:
                    forbidden.add(_coord_add(group, fresh, b))

    elements = ElementSet.of(group, [Element(group, c) for c in acoords])
    return WitnessSet(
        group, bset.kappa, bset, window, elements, tuple(trace), ambient
    )


@dataclass(frozen=True)
class InvariantReport:
    i1_holds: bool
    i1_counterexample: tuple[Element, Element] | None
    i2_holds: bool
    i2_missing: Element | None

    @property
    def all_hold(self) -> bool:
        return self.i1_holds and self.i2_holds


def verify_witness(w: WitnessSet) -> InvariantReport:
    """Exhaustively check both defining invariants; failures carry witnesses."""
    group = w.group
    zero = group.zero().coords
    acoords = frozenset(e.coords for e in w.elements)
    bstar = [e for e in w.bset.elements if e.coords != zero]

    i1_counter = None
    for beta in bstar:
        for a in w.elements:
            if _coord_add(group, beta.coords, a.coords) in acoords:
                i1_counter = (beta, a)
                break
        if i1_counter:
            break

    i2_missing = None
    bstar_coords = {e.coords for e in bstar}
    for g in enumerate_window(w.window):
        if g.coords in bstar_coords:
            continue
        gc = g.coords
        if not any(_coord_add(group, gc, a) in acoords for a in acoords):
            i2_missing = g
            break

    return InvariantReport(
        i1_holds=i1_counter is None,
        i1_counterexample=i1_counter,
        i2_holds=i2_missing is None,
        i2_missing=i2_missing,
    )


def windowed_sharp_index(w: WitnessSet) -> int:
    """Size of the largest in-window disjoint-translate family, plus one."""
    report = verify_witness(w)
    if not report.all_hold:
        raise PreconditionError(
            "witness invariants do not hold; refusing to report an index"
        )
    family = max_packing_family(w.elements, w.window)
    return family.size + 1


def max_family(w: WitnessSet) -> PackingFamily:
    return max_packing_family(w.elements, w.window)
