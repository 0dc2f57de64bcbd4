"""Finitely described abelian groups: DSL parsing, canonical arithmetic, enumeration.

A group is a finite direct sum of factors of four kinds: the integers ``Z``,
finite cyclic groups ``Z_n``, countable powers ``Z_n^w`` whose elements are
finite-support residue vectors, and quasicyclic groups ``Prufer(p)`` whose
elements are reduced fractions ``a/p^k`` taken modulo 1.

Elements are immutable and always kept in canonical form, so equality and
hashing are structural. Window enumeration emits elements in a fixed total
order (the order of :meth:`Element.sort_key`), which makes every downstream
greedy construction and search reproducible byte for byte:

* ``Z`` coordinates run 0, 1, -1, 2, -2, ...
* ``Z_n`` coordinates run 0, 1, ..., n-1
* ``Z_n^w`` coordinates run in lexicographic order over the first m copies
* ``Prufer(p)`` coordinates run by level, then numerator
* multi-factor elements are ordered lexicographically, leftmost factor first
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from math import gcd, lcm, prod
from typing import Iterator

from .errors import ElementSyntaxError, GroupMismatchError, GroupSyntaxError

INFINITE_CYCLIC = "infinite_cyclic"
CYCLIC = "cyclic"
REPEATED_CYCLIC = "repeated_cyclic"
PRUFER = "prufer"

_KINDS = (INFINITE_CYCLIC, CYCLIC, REPEATED_CYCLIC, PRUFER)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Factor:
    """One direct summand. ``param`` is the modulus (cyclic kinds) or the prime."""

    kind: str
    param: int = 0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown factor kind {self.kind!r}")
        if self.kind in (CYCLIC, REPEATED_CYCLIC) and self.param < 2:
            raise ValueError("cyclic modulus must be >= 2")
        if self.kind == PRUFER and not _is_prime(self.param):
            raise ValueError("Prufer parameter must be prime")

    @property
    def finite(self) -> bool:
        return self.kind == CYCLIC

    def exponent(self) -> int | None:
        """Least n killing every element of the factor, or None for unbounded."""
        if self.kind in (CYCLIC, REPEATED_CYCLIC):
            return self.param
        return None

    def format(self) -> str:
        if self.kind == INFINITE_CYCLIC:
            return "Z"
        if self.kind == CYCLIC:
            return f"Z_{self.param}"
        if self.kind == REPEATED_CYCLIC:
            return f"Z_{self.param}^w"
        return f"Prufer({self.param})"


def Zf() -> Factor:
    return Factor(INFINITE_CYCLIC)


def Zn(n: int) -> Factor:
    return Factor(CYCLIC, n)


def ZnW(n: int) -> Factor:
    return Factor(REPEATED_CYCLIC, n)


def PruferF(p: int) -> Factor:
    return Factor(PRUFER, p)


# -- per-factor coordinate arithmetic ---------------------------------------
#
# Coordinate representations:
#   infinite cyclic -- int
#   cyclic(n)       -- int in [0, n)
#   repeated(n)     -- tuple of ints in [0, n) with no trailing zero
#   prufer(p)       -- (numerator, level); level 0 means zero, otherwise
#                      0 < numerator < p**level and p does not divide it


def _strip(vec: tuple) -> tuple:
    k = len(vec)
    while k and vec[k - 1] == 0:
        k -= 1
    return vec[:k]


def _prufer_reduce(a: int, k: int, p: int) -> tuple[int, int]:
    m = p**k
    a %= m
    if a == 0:
        return (0, 0)
    while a % p == 0:
        a //= p
        k -= 1
    return (a, k)


def zero_coord(f: Factor):
    if f.kind == REPEATED_CYCLIC:
        return ()
    if f.kind == PRUFER:
        return (0, 0)
    return 0


def canon_coord(f: Factor, raw):
    """Bring an arbitrary raw coordinate into canonical form."""
    if f.kind == INFINITE_CYCLIC:
        return int(raw)
    if f.kind == CYCLIC:
        return int(raw) % f.param
    if f.kind == REPEATED_CYCLIC:
        return _strip(tuple(int(v) % f.param for v in raw))
    a, k = raw
    if k < 0:
        raise ElementSyntaxError("Prufer level must be >= 0")
    return _prufer_reduce(int(a), int(k), f.param)


def add_coord(f: Factor, x, y):
    if f.kind == INFINITE_CYCLIC:
        return x + y
    if f.kind == CYCLIC:
        return (x + y) % f.param
    if f.kind == REPEATED_CYCLIC:
        n = f.param
        if len(x) < len(y):
            x, y = y, x
        out = list(x)
        for i, v in enumerate(y):
            out[i] = (out[i] + v) % n
        return _strip(tuple(out))
    p = f.param
    (a1, k1), (a2, k2) = x, y
    k = max(k1, k2)
    a = a1 * p ** (k - k1) + a2 * p ** (k - k2)
    return _prufer_reduce(a, k, p)


def neg_coord(f: Factor, x):
    if f.kind == INFINITE_CYCLIC:
        return -x
    if f.kind == CYCLIC:
        return (-x) % f.param
    if f.kind == REPEATED_CYCLIC:
        n = f.param
        return tuple((-v) % n for v in x)
    a, k = x
    if k == 0:
        return x
    return (f.param**k - a, k)


def mul_coord(f: Factor, c: int, x):
    if f.kind == INFINITE_CYCLIC:
        return c * x
    if f.kind == CYCLIC:
        return (c * x) % f.param
    if f.kind == REPEATED_CYCLIC:
        return _strip(tuple((c * v) % f.param for v in x))
    a, k = x
    return _prufer_reduce(c * a, k, f.param)


def order_coord(f: Factor, x) -> int | None:
    """Least n >= 1 with n*x = 0, or None for infinite order."""
    if f.kind == INFINITE_CYCLIC:
        return 1 if x == 0 else None
    if f.kind == CYCLIC:
        return f.param // gcd(x, f.param)
    if f.kind == REPEATED_CYCLIC:
        n = f.param
        return lcm(1, *(n // gcd(v, n) for v in x))
    return f.param ** x[1]


def coord_sort_key(f: Factor, x):
    if f.kind == INFINITE_CYCLIC:
        return (abs(x), 0 if x >= 0 else 1)
    if f.kind == PRUFER:
        return (x[1], x[0])
    return x


def iter_coords(f: Factor, bound: int | None) -> Iterator:
    """Canonical coordinate stream for one factor, within the window bound."""
    if f.kind == INFINITE_CYCLIC:
        yield 0
        for i in range(1, bound + 1):
            yield i
            yield -i
    elif f.kind == CYCLIC:
        yield from range(f.param)
    elif f.kind == REPEATED_CYCLIC:
        for vec in itertools.product(range(f.param), repeat=bound):
            yield _strip(vec)
    else:
        p = f.param
        yield (0, 0)
        for k in range(1, bound + 1):
            for a in range(1, p**k):
                if a % p:
                    yield (a, k)


def coord_in_bound(f: Factor, x, bound: int | None) -> bool:
    if f.kind == INFINITE_CYCLIC:
        return abs(x) <= bound
    if f.kind == CYCLIC:
        return True
    if f.kind == REPEATED_CYCLIC:
        return len(x) <= bound
    return x[1] <= bound


def count_coords(f: Factor, bound: int | None) -> int:
    if f.kind == INFINITE_CYCLIC:
        return 2 * bound + 1
    if f.kind == CYCLIC:
        return f.param
    if f.kind == REPEATED_CYCLIC:
        return f.param**bound
    return f.param**bound


def format_coord(f: Factor, x) -> str:
    if f.kind == INFINITE_CYCLIC or f.kind == CYCLIC:
        return str(x)
    if f.kind == REPEATED_CYCLIC:
        if not x:
            return "0"
        return "[" + ",".join(str(v) for v in x) + "]"
    a, k = x
    if k == 0:
        return "0"
    if k == 1:
        return f"{a}/{f.param}"
    return f"{a}/{f.param}^{k}"


_PRUFER_COORD_RE = re.compile(r"^(-?\d+)/(\d+)(?:\^(\d+))?$")


def parse_coord(f: Factor, text: str):
    text = text.strip()
    if f.kind in (INFINITE_CYCLIC, CYCLIC):
        try:
            return canon_coord(f, int(text))
        except ValueError:
            raise ElementSyntaxError(f"expected an integer, got {text!r}") from None
    if f.kind == REPEATED_CYCLIC:
        if text == "0":
            return ()
        if not (text.startswith("[") and text.endswith("]")):
            raise ElementSyntaxError(f"expected 0 or [..] for a Z_n^w coordinate, got {text!r}")
        body = text[1:-1].strip()
        if not body:
            return ()
        try:
            return canon_coord(f, tuple(int(v) for v in body.split(",")))
        except ValueError:
            raise ElementSyntaxError(f"bad vector coordinate {text!r}") from None
    if text == "0":
        return (0, 0)
    m = _PRUFER_COORD_RE.match(text)
    if not m:
        raise ElementSyntaxError(f"expected a/p^k for a Prufer coordinate, got {text!r}")
    a, base, k = int(m.group(1)), int(m.group(2)), int(m.group(3) or 1)
    if base != f.param:
        raise ElementSyntaxError(f"Prufer coordinate base {base} does not match p={f.param}")
    return canon_coord(f, (a, k))


# -- groups ------------------------------------------------------------------


@dataclass(frozen=True)
class GroupSpec:
    """An ordered direct sum of factors; all derived flags are recomputed."""

    factors: tuple[Factor, ...]

    @property
    def is_finite(self) -> bool:
        return all(f.finite for f in self.factors)

    @property
    def cardinality(self) -> int | None:
        """Exact order when finite, None otherwise."""
        if not self.is_finite:
            return None
        return prod(f.param for f in self.factors)

    @property
    def exponent(self) -> int | None:
        """lcm of element orders, or None when unbounded."""
        exps = [f.exponent() for f in self.factors]
        if any(e is None for e in exps):
            return None
        return lcm(1, *exps)

    def zero(self) -> Element:
        return Element(self, tuple(zero_coord(f) for f in self.factors))

    def element(self, *raw) -> Element:
        """Build a canonical element from one raw coordinate per factor."""
        if len(raw) != len(self.factors):
            raise ElementSyntaxError(
                f"expected {len(self.factors)} coordinates, got {len(raw)}"
            )
        return Element(
            self, tuple(canon_coord(f, r) for f, r in zip(self.factors, raw))
        )

    def __str__(self) -> str:
        return format_group(self)


@dataclass(frozen=True)
class Element:
    """A canonical-form group element; one coordinate per factor."""

    group: GroupSpec
    coords: tuple

    def _check(self, other: Element):
        if self.group != other.group:
            raise GroupMismatchError(
                f"elements of {self.group} and {other.group} cannot be combined"
            )

    def __add__(self, other: Element) -> Element:
        self._check(other)
        return Element(
            self.group,
            tuple(
                add_coord(f, x, y)
                for f, x, y in zip(self.group.factors, self.coords, other.coords)
            ),
        )

    def __neg__(self) -> Element:
        return Element(
            self.group,
            tuple(neg_coord(f, x) for f, x in zip(self.group.factors, self.coords)),
        )

    def __sub__(self, other: Element) -> Element:
        return self + (-other)

    def scaled(self, c: int) -> Element:
        return Element(
            self.group,
            tuple(mul_coord(f, c, x) for f, x in zip(self.group.factors, self.coords)),
        )

    def __rmul__(self, c: int) -> Element:
        if not isinstance(c, int):
            return NotImplemented
        return self.scaled(c)

    def is_zero(self) -> bool:
        return all(
            x == zero_coord(f) for f, x in zip(self.group.factors, self.coords)
        )

    def order(self) -> int | None:
        """Least n >= 1 with n*self = 0, or None for infinite order."""
        result = 1
        for f, x in zip(self.group.factors, self.coords):
            o = order_coord(f, x)
            if o is None:
                return None
            result = lcm(result, o)
        return result

    def sort_key(self):
        return tuple(
            coord_sort_key(f, x) for f, x in zip(self.group.factors, self.coords)
        )

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"<{format_element(self)} in {self.group}>"


def scalar_mul(c: int, a: Element) -> Element:
    return a.scaled(c)


def element_order(a: Element) -> int | None:
    return a.order()


# -- windows -----------------------------------------------------------------


@dataclass(frozen=True)
class Window:
    """A finite, negation-closed truncation of a group.

    Per-factor bounds: None for a full cyclic factor, |x| <= N for ``Z``,
    first m copies for ``Z_n^w``, level <= m for ``Prufer(p)``.
    """

    group: GroupSpec
    bounds: tuple[int | None, ...]

    def __post_init__(self):
        if len(self.bounds) != len(self.group.factors):
            raise ValueError("one bound per factor required")
        for f, b in zip(self.group.factors, self.bounds):
            if f.kind == CYCLIC:
                if b is not None:
                    raise ValueError("finite cyclic factors take no bound")
            elif b is None or b <= 0:
                raise ValueError("window bound must be a positive integer")

    @classmethod
    def for_group(
        cls,
        group: GroupSpec,
        bound: int | None = None,
        repeated_m: int = 4,
        prufer_level: int = 4,
    ) -> Window:
        bounds = []
        for f in group.factors:
            if f.kind == CYCLIC:
                bounds.append(None)
            elif f.kind == INFINITE_CYCLIC:
                if bound is None:
                    raise ValueError("a bound is required for Z factors")
                bounds.append(bound)
            elif f.kind == REPEATED_CYCLIC:
                bounds.append(repeated_m)
            else:
                bounds.append(prufer_level)
        return cls(group, tuple(bounds))

    def size(self) -> int:
        return prod(
            count_coords(f, b) for f, b in zip(self.group.factors, self.bounds)
        )

    def contains(self, e: Element) -> bool:
        if e.group != self.group:
            raise GroupMismatchError("element does not belong to the window's group")
        return all(
            coord_in_bound(f, x, b)
            for f, x, b in zip(self.group.factors, e.coords, self.bounds)
        )

    def expanded(self) -> Window | None:
        """Grow every expandable bound (None when the group is fully finite)."""
        if self.group.is_finite:
            return None
        new = []
        for f, b in zip(self.group.factors, self.bounds):
            if f.kind == CYCLIC:
                new.append(None)
            elif f.kind == INFINITE_CYCLIC:
                new.append(2 * b)
            else:
                new.append(b + 1)
        return Window(self.group, tuple(new))


def enumerate_window(window: Window) -> Iterator[Element]:
    """Deterministic, duplicate-free canonical element stream of a window."""
    group = window.group
    pools = [
        iter_coords(f, b) for f, b in zip(group.factors, window.bounds)
    ]
    for coords in itertools.product(*pools):
        yield Element(group, coords)


# -- group-spec DSL ----------------------------------------------------------

_TOKEN_RE = re.compile(r"(?P<int>\d+)|(?P<name>[A-Za-z]+)|(?P<sym>[_^+()])|(?P<bad>\S)")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    for m in _TOKEN_RE.finditer(text):
        if m.lastgroup == "bad":
            raise GroupSyntaxError(f"unexpected character {m.group()!r}", m.start())
        tokens.append((m.lastgroup, m.group(), m.start()))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise GroupSyntaxError("unexpected end of input", len(self.text))
        self.pos += 1
        return tok

    def expect(self, kind: str, value: str | None = None):
        tok = self.take()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            raise GroupSyntaxError(f"expected {want!r}, got {tok[1]!r}", tok[2])
        return tok

    def parse(self) -> GroupSpec:
        factors = list(self.term())
        while self.peek() is not None:
            self.expect("sym", "+")
            factors.extend(self.term())
        return GroupSpec(tuple(factors))

    def term(self) -> list[Factor]:
        kind, value, at = self.take()
        if kind == "name" and value == "Prufer":
            self.expect("sym", "(")
            _, num, numat = self.expect("int")
            p = int(num)
            if not _is_prime(p):
                raise GroupSyntaxError(f"Prufer parameter {p} is not prime", numat)
            self.expect("sym", ")")
            return [Factor(PRUFER, p)]
        if kind != "name" or value != "Z":
            raise GroupSyntaxError(f"expected 'Z' or 'Prufer', got {value!r}", at)

        modulus = None
        tok = self.peek()
        if tok is not None and tok[0] == "sym" and tok[1] == "_":
            self.take()
            _, num, numat = self.expect("int")
            modulus = (int(num), numat)
        elif tok is not None and tok[0] == "int":
            self.take()
            modulus = (int(tok[1]), tok[2])

        rep = None
        tok = self.peek()
        if tok is not None and tok[0] == "sym" and tok[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] == "int":
                rep = (int(tok[1]), tok[2])
                if rep[0] < 1:
                    raise GroupSyntaxError("repetition must be >= 1 or 'w'", tok[2])
            elif tok[0] == "name" and tok[1] == "w":
                rep = ("w", tok[2])
            else:
                raise GroupSyntaxError(f"expected a repetition count or 'w', got {tok[1]!r}", tok[2])

        if modulus is not None and modulus[0] < 2:
            raise GroupSyntaxError(f"modulus {modulus[0]} must be >= 2", modulus[1])

        if rep is not None and rep[0] == "w":
            if modulus is None:
                raise GroupSyntaxError(
                    "countably repeated Z is not supported; 'w' needs a finite modulus",
                    rep[1],
                )
            return [Factor(REPEATED_CYCLIC, modulus[0])]
        base = Factor(INFINITE_CYCLIC) if modulus is None else Factor(CYCLIC, modulus[0])
        return [base] * (rep[0] if rep is not None else 1)


def parse_group(text: str) -> GroupSpec:
    """Parse the group-spec DSL, e.g. ``"Z_4 + Z_2^w"`` or ``"Prufer(3)"``."""
    parser = _Parser(text)
    spec = parser.parse()
    if not spec.factors:
        raise GroupSyntaxError("empty group spec", 0)
    return spec


def format_group(group: GroupSpec) -> str:
    return " + ".join(f.format() for f in group.factors)


# -- element text syntax -----------------------------------------------------


def _split_top_level(body: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(body):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(body[start:i])
            start = i + 1
    parts.append(body[start:])
    return parts


def parse_element(group: GroupSpec, text: str) -> Element:
    """Parse element text: a bare coordinate for rank-1 groups, else ``(c1,...,ck)``."""
    text = text.strip()
    factors = group.factors
    if len(factors) == 1:
        return Element(group, (parse_coord(factors[0], text),))
    if not (text.startswith("(") and text.endswith(")")):
        raise ElementSyntaxError(f"expected parenthesized coordinates, got {text!r}")
    parts = _split_top_level(text[1:-1])
    if len(parts) != len(factors):
        raise ElementSyntaxError(
            f"expected {len(factors)} coordinates, got {len(parts)}"
        )
    return Element(
        group, tuple(parse_coord(f, p) for f, p in zip(factors, parts))
    )


def format_element(e: Element) -> str:
    parts = [format_coord(f, x) for f, x in zip(e.group.factors, e.coords)]
    if len(parts) == 1:
        return parts[0]
    return "(" + ",".join(parts) + ")"
