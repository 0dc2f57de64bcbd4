"""Maps from index pairs to index pairs: validation and exhaustive search.

A map f from the 2-element subsets of {0..a-1} into the 2-element subsets
of {0..b-1} is *separately injective* when fixing one index makes it
injective in the other, and *preserves intersections* when images of pairs
sharing an index always intersect. Backtracking over the pair table with
early pruning decides, exhaustively, whether any map has both properties
for given sizes; the combinatorial fact being exercised is that none exists
once a >= 5 and b < a.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import PreconditionError, SearchBudgetExceededError

DEFAULT_NODE_BUDGET = 50_000_000


def domain_pairs(n: int) -> list[tuple[int, int]]:
    """All pairs {i, j} with i < j < n, in colexicographic order."""
    return [(i, j) for j in range(n) for i in range(j)]


def codomain_pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def _pair_rank(i: int, j: int) -> int:
    return j * (j - 1) // 2 + i


@dataclass(frozen=True)
class PairMap:
    """A total map on index pairs; ``table[k]`` is the image of the k-th
    domain pair in colex order."""

    size_a: int
    size_b: int
    table: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.size_a < 2 or self.size_b < 2:
            raise PreconditionError("both index sets need at least two points")
        if len(self.table) != self.size_a * (self.size_a - 1) // 2:
            raise PreconditionError("table must cover every domain pair")
        for k, l in self.table:
            if not (0 <= k < l < self.size_b):
                raise PreconditionError(f"image ({k},{l}) is not a codomain pair")

    def image(self, i: int, j: int) -> tuple[int, int]:
        if i > j:
            i, j = j, i
        if i == j or i < 0 or j >= self.size_a:
            raise PreconditionError(f"({i},{j}) is not a domain pair")
        return self.table[_pair_rank(i, j)]

    @classmethod
    def from_function(cls, size_a: int, size_b: int, fn) -> PairMap:
        table = tuple(
            tuple(sorted(fn(i, j))) for i, j in domain_pairs(size_a)
        )
        return cls(size_a, size_b, table)


@dataclass(frozen=True)
class Validation:
    separately_injective: bool
    preserves_intersections: bool

    @property
    def valid(self) -> bool:
        return self.separately_injective and self.preserves_intersections


def validate_pairmap(f: PairMap) -> Validation:
    """Evaluate both predicates by full quantifier sweep."""
    sep = True
    for a in range(f.size_a):
        images = [f.image(x, a) for x in range(f.size_a) if x != a]
        if len(set(images)) != len(images):
            sep = False
            break
    pres = True
    for a0 in range(f.size_a):
        others = [x for x in range(f.size_a) if x != a0]
        for a1, a2 in combinations(others, 2):
            if not set(f.image(a0, a1)) & set(f.image(a0, a2)):
                pres = False
                break
        if not pres:
            break
    return Validation(sep, pres)


class _Search:
    """Depth-first assignment of images to domain pairs in colex order.

    Two pairs sharing exactly one domain index constrain each other: their
    images must differ yet intersect. Pairs sharing no index are free, so
    checking each new assignment against its overlapping predecessors prunes
    every violation as early as it can appear.
    """

    def __init__(self, size_a: int, size_b: int, node_budget: int):
        if size_a < 2 or size_b < 2:
            raise PreconditionError("both sizes must be at least 2")
        self.pairs = domain_pairs(size_a)
        self.images = codomain_pairs(size_b)
        self.masks = [(1 << k) | (1 << l) for k, l in self.images]
        self.overlaps: list[list[int]] = []
        for idx, (i, j) in enumerate(self.pairs):
            self.overlaps.append(
                [
                    prev
                    for prev in range(idx)
                    if len({i, j} & set(self.pairs[prev])) == 1
                ]
            )
        self.size_a = size_a
        self.size_b = size_b
        self.node_budget = node_budget
        self.nodes = 0
        self.assignment = [0] * len(self.pairs)

    def run(self, limit: int) -> list[PairMap]:
        found: list[PairMap] = []

        def place(idx: int) -> bool:
            if idx == len(self.pairs):
                found.append(
                    PairMap(
                        self.size_a,
                        self.size_b,
                        tuple(self.images[s] for s in self.assignment),
                    )
                )
                return len(found) >= limit
            masks = self.masks
            assignment = self.assignment
            for s in range(len(self.images)):
                mask = masks[s]
                ok = True
                for prev in self.overlaps[idx]:
                    p = assignment[prev]
                    if p == s or not masks[p] & mask:
                        ok = False
                        break
                if not ok:
                    continue
                self.nodes += 1
                if self.nodes > self.node_budget:
                    raise SearchBudgetExceededError(self.nodes, self.node_budget)
                assignment[idx] = s
                if place(idx + 1):
                    return True
            return False

        place(0)
        return found


def search_pairmap(
    size_a: int, size_b: int, node_budget: int = DEFAULT_NODE_BUDGET
) -> tuple[PairMap | None, int]:
    """Exhaustive search for a map with both properties.

    Returns (witness, nodes_visited); the witness is the canonical
    (colex pair order, lex image order) first valid map when one exists,
    else None once the whole tree has been exhausted.
    """
    search = _Search(size_a, size_b, node_budget)
    found = search.run(limit=1)
    return (found[0] if found else None), search.nodes


def iter_valid_maps(
    size_a: int, size_b: int, limit: int, node_budget: int = DEFAULT_NODE_BUDGET
) -> list[PairMap]:
    """Up to ``limit`` valid maps in canonical search order."""
    return _Search(size_a, size_b, node_budget).run(limit=limit)


def common_point(f: PairMap, a0: int) -> int | None:
    """Smallest point lying in every image f({a, a0}); None when the
    intersection is empty (possible only below the size-5 threshold for
    valid maps)."""
    if not 0 <= a0 < f.size_a:
        raise PreconditionError("a0 must be a domain index")
    inter: set[int] | None = None
    for a in range(f.size_a):
        if a == a0:
            continue
        img = set(f.image(a, a0))
        inter = img if inter is None else inter & img
        if not inter:
            return None
    return min(inter) if inter else None
