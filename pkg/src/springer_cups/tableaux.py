"""Partitions, standard Young tableaux and (signed) domino tableaux of two-row shape.

Tableaux follow the decreasing convention: entries decrease along rows and
down columns, and the domino labelled m sits in the first column.  Cells are
``(row, column)`` with rows 1, 2 and columns starting at 1.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .cups import CupDiagram, DiagramError

FLAVORS = ("D", "C")


class TableauError(ValueError):
    """Raised for malformed tableaux or inadmissible shapes."""


# ---------------------------------------------------------------------------
# partitions


@dataclass(frozen=True)
class Partition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts if int(p) != 0)
        if any(p < 0 for p in parts) or list(parts) != sorted(parts, reverse=True):
            raise TableauError(f"not a partition: {self.parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


def _epsilon(flavor) -> int:
    if flavor in (1, -1):
        return flavor
    if flavor == "D":
        return 1
    if flavor == "C":
        return -1
    raise TableauError(f"unknown flavor {flavor!r}")


def is_admissible(shape, flavor) -> bool:
    """Parts j with (-1)^j = eps must occur with even multiplicity.

    ``flavor`` is "D" (eps = +1, even parts) or "C" (eps = -1, odd parts).
    """
    eps = _epsilon(flavor)
    parts = shape.parts if isinstance(shape, Partition) else Partition(tuple(shape)).parts
    counts = Counter(parts)
    return all(c % 2 == 0 for j, c in counts.items() if (-1) ** j == eps)


def _two_row(shape) -> tuple:
    parts = shape.parts if isinstance(shape, Partition) else tuple(shape)
    parts = tuple(int(p) for p in parts)
    if len(parts) > 2 and any(parts[2:]):
        raise TableauError(f"only two-row shapes are supported, got {parts}")
    a = parts[0] if parts else 0
    b = parts[1] if len(parts) > 1 else 0
    if a < b or b < 0:
        raise TableauError(f"not a partition: {parts}")
    return a, b


# ---------------------------------------------------------------------------
# standard Young tableaux


@dataclass(frozen=True)
class StandardYoungTableau:
    """Rows of a two-row tableau with entries decreasing along rows and columns."""

    top: tuple
    bottom: tuple = ()

    def __post_init__(self):
        top, bottom = tuple(self.top), tuple(self.bottom)
        object.__setattr__(self, "top", top)
        object.__setattr__(self, "bottom", bottom)
        n = len(top) + len(bottom)
        if sorted(top + bottom) != list(range(1, n + 1)):
            raise TableauError("entries must be 1..n, each once")
        if len(bottom) > len(top):
            raise TableauError("lower row longer than upper row")
        for row in (top, bottom):
            if any(x <= y for x, y in zip(row, row[1:])):
                raise TableauError("rows must decrease")
        if any(t <= b for t, b in zip(top, bottom)):
            raise TableauError("columns must decrease")

    @property
    def shape(self) -> tuple:
        return (len(self.top), len(self.bottom))

    @property
    def n(self) -> int:
        return len(self.top) + len(self.bottom)

    def increasing(self) -> "tuple[tuple, tuple]":
        """The same tableau in the usual increasing convention (entry x -> n+1-x)."""
        n = self.n
        return tuple(n + 1 - x for x in self.top), tuple(n + 1 - x for x in self.bottom)

    def __str__(self):
        lines = [" ".join(map(str, self.top))]
        if self.bottom:
            lines.append(" ".join(map(str, self.bottom)))
        return "\n".join(lines)


def enumerate_syt(shape) -> list:
    """All decreasing standard tableaux of a shape with at most two rows."""
    a, b = _two_row(shape)
    n = a + b
    out = []
    # choose the lower row; validity is the column condition
    for bottom in itertools.combinations(range(n, 0, -1), b):
        top = tuple(x for x in range(n, 0, -1) if x not in bottom)
        if all(t > s for t, s in zip(top, bottom)):
            out.append(StandardYoungTableau(top, bottom))
    out.sort(key=lambda t: (t.top, t.bottom))
    return out


def _match(entries: Iterable) -> tuple:
    """Cups and rays from (label, row) pairs: lower-row labels open cups."""
    stack, cups, rays = [], [], []
    for label, row in sorted(entries):
        if row == 2:
            stack.append(label)
        elif stack:
            cups.append((stack.pop(), label))
        else:
            rays.append(label)
    if stack:
        raise TableauError("lower row entries left unmatched")
    return cups, rays


def psi(T: StandardYoungTableau) -> CupDiagram:
    """Undecorated cup diagram whose cup left endpoints are the lower-row entries."""
    cups, rays = _match([(x, 1) for x in T.top] + [(x, 2) for x in T.bottom])
    return CupDiagram(T.n, tuple((i, j, False) for i, j in cups), tuple((r, False) for r in rays))


def psi_inverse(a: CupDiagram) -> StandardYoungTableau:
    if a.n_dots:
        raise DiagramError("psi_inverse expects an undecorated diagram")
    left = {i for i, _, _ in a.cups}
    top = tuple(x for x in range(a.m, 0, -1) if x not in left)
    bottom = tuple(sorted(left, reverse=True))
    return StandardYoungTableau(top, bottom)


# ---------------------------------------------------------------------------
# domino tableaux


@dataclass(frozen=True)
class Domino:
    """A domino with its leftmost (top) cell at ``(row, col)``."""

    label: int
    row: int
    col: int
    vertical: bool

    @property
    def cells(self) -> tuple:
        if self.vertical:
            return ((1, self.col), (2, self.col))
        return ((self.row, self.col), (self.row, self.col + 1))


def _signed_columns(flavor: str) -> int:
    """Parity of the columns whose vertical dominoes carry a sign (1 = odd)."""
    return 1 if flavor == "D" else 0


@dataclass(frozen=True)
class SignedDominoTableau:
    """An admissible domino tableau plus signs on the signed vertical dominoes.

    ``signs`` maps labels to "+" or "-"; an empty mapping means an unsigned
    tableau.  Type D signs sit on odd-column verticals, type C on even ones.
    """

    shape: tuple
    flavor: str
    dominoes: tuple
    signs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "shape", tuple(int(x) for x in self.shape))
        object.__setattr__(self, "dominoes", tuple(sorted(self.dominoes, key=lambda d: -d.label)))
        object.__setattr__(self, "signs", tuple(sorted(dict(self.signs).items())))
        check_adt(self)

    @property
    def m(self) -> int:
        return len(self.dominoes)

    def domino(self, label: int) -> Domino:
        return self.dominoes[self.m - label]

    def signed_labels(self) -> list:
        """Labels of the dominoes that take a sign, left to right."""
        par = _signed_columns(self.flavor)
        return [d.label for d in sorted(self.dominoes, key=lambda d: d.col)
                if d.vertical and d.col % 2 == par]

    @property
    def is_signed(self) -> bool:
        return bool(self.signs) or not self.signed_labels()

    def sign(self, label: int) -> str:
        return dict(self.signs)[label]

    @property
    def n_minus(self) -> int:
        return sum(s == "-" for _, s in self.signs)

    @property
    def parity(self) -> str:
        return "odd" if self.n_minus % 2 else "even"

    def grid(self) -> list:
        a, b = self.shape
        rows = [[0] * a, [0] * b]
        for d in self.dominoes:
            for r, c in d.cells:
                rows[r - 1][c - 1] = d.label
        return rows

    def reading_word(self) -> tuple:
        top, bottom = self.grid()
        return tuple(top) + tuple(bottom)

    def sort_key(self):
        order = self.signed_labels()
        signs = dict(self.signs)
        return (self.reading_word(), tuple(signs.get(l, "+") == "-" for l in order))

    def forget_signs(self) -> "SignedDominoTableau":
        return SignedDominoTableau(self.shape, self.flavor, self.dominoes, ())

    def with_signs(self, signs) -> "SignedDominoTableau":
        return SignedDominoTableau(self.shape, self.flavor, self.dominoes, tuple(dict(signs).items()))

    def to_json(self):
        signs = dict(self.signs)
        out = []
        for d in self.dominoes:
            item = {"label": d.label, "cells": [list(c) for c in d.cells]}
            if d.label in signs:
                item["sign"] = signs[d.label]
            out.append(item)
        return {"shape": list(self.shape), "flavor": self.flavor, "dominoes": out}

    @classmethod
    def from_json(cls, data):
        try:
            dominoes, signs = [], {}
            for item in data["dominoes"]:
                (r1, c1), (r2, c2) = sorted(tuple(map(int, c)) for c in item["cells"])
                if c1 == c2 and (r1, r2) == (1, 2):
                    dom = Domino(int(item["label"]), 1, c1, True)
                elif r1 == r2 and c2 == c1 + 1:
                    dom = Domino(int(item["label"]), r1, c1, False)
                else:
                    raise TableauError(f"cells {item['cells']} do not form a domino")
                dominoes.append(dom)
                if "sign" in item:
                    signs[dom.label] = item["sign"]
            return cls(tuple(data["shape"]), data["flavor"], tuple(dominoes), tuple(signs.items()))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, TableauError):
                raise
            raise TableauError(f"malformed tableau JSON: {exc}") from exc

    def __str__(self):
        signs = dict(self.signs)
        top, bottom = self.grid()
        width = max([len(str(x)) for x in top + bottom] + [1]) + 1
        lines = ["".join(str(x).rjust(width) for x in top),
                 "".join(str(x).rjust(width) for x in bottom)]
        marks = [" " * width] * len(top)
        for label, s in signs.items():
            marks[self.domino(label).col - 1] = s.rjust(width)
        out = [lines[0], lines[1]]
        if signs:
            out.append("".join(marks).rstrip())
        return "\n".join(line.rstrip() for line in out)


def check_adt(T: SignedDominoTableau) -> None:
    """Validate the tiling, label monotonicity, prefix admissibility and signs."""
    if T.flavor not in FLAVORS:
        raise TableauError(f"unknown flavor {T.flavor!r}")
    a, b = _two_row(T.shape)
    m = len(T.dominoes)
    if a + b != 2 * m:
        raise TableauError("shape size must be twice the number of dominoes")
    if sorted(d.label for d in T.dominoes) != list(range(1, m + 1)):
        raise TableauError("labels must be 1..m, each once")
    cells = {}
    for d in T.dominoes:
        if d.row not in (1, 2) or d.col < 1 or (d.vertical and d.row != 1):
            raise TableauError(f"bad domino position {d}")
        for c in d.cells:
            if c in cells:
                raise TableauError(f"cell {c} covered twice")
            cells[c] = d.label
    expected = {(1, c) for c in range(1, a + 1)} | {(2, c) for c in range(1, b + 1)}
    if set(cells) != expected:
        raise TableauError("dominoes do not tile the shape")
    for (r, c), x in cells.items():
        if (r, c + 1) in cells and cells[(r, c + 1)] > x:
            raise TableauError("labels must weakly decrease along rows")
        if r == 1 and (2, c) in cells and cells[(2, c)] > x:
            raise TableauError("labels must weakly decrease down columns")
    for i in range(1, m + 1):
        sub = [r for (r, _), x in cells.items() if x >= i]
        shape_i = (sub.count(1), sub.count(2))
        if not is_admissible(shape_i, T.flavor):
            raise TableauError(f"truncation at {i} has inadmissible shape {shape_i}")
    signable = set(T.signed_labels())
    signs = dict(T.signs)
    if signs:
        if set(signs) != signable:
            raise TableauError("signs must sit exactly on the signed vertical dominoes")
        if any(s not in ("+", "-") for s in signs.values()):
            raise TableauError("signs must be '+' or '-'")


def _chains(a: int, b: int, flavor: str):
    """Domino placements from the empty shape to (a, b), largest label first."""
    m = (a + b) // 2

    def rec(p, q, label, placed):
        if label == 0:
            if (p, q) == (a, b):
                yield tuple(placed)
            return
        moves = []
        if p == q:
            moves.append((p + 1, q + 1, Domino(label, 1, p + 1, True)))
        moves.append((p + 2, q, Domino(label, 1, p + 1, False)))
        if q + 2 <= p:
            moves.append((p, q + 2, Domino(label, 2, q + 1, False)))
        for p2, q2, dom in moves:
            if p2 <= a and q2 <= b and is_admissible((p2, q2), flavor):
                yield from rec(p2, q2, label - 1, placed + [dom])

    yield from rec(0, 0, m, [])


def enumerate_adt(shape, flavor: str) -> list:
    """All admissible domino tableaux (unsigned) of a two-row shape."""
    a, b = _two_row(shape)
    if flavor not in FLAVORS:
        raise TableauError(f"unknown flavor {flavor!r}")
    if (a + b) % 2 or not is_admissible((a, b), flavor):
        raise TableauError(f"shape ({a},{b}) is not admissible of type {flavor}")
    out = [SignedDominoTableau((a, b), flavor, chain) for chain in _chains(a, b, flavor)]
    out.sort(key=SignedDominoTableau.sort_key)
    return out


def enumerate_signed(shape, flavor: str, parity: str | None = None) -> list:
    """All signed domino tableaux; ``parity`` keeps only "odd" or "even" minus counts."""
    out = []
    for T in enumerate_adt(shape, flavor):
        labels = T.signed_labels()
        for choice in itertools.product("+-", repeat=len(labels)):
            S = T.with_signs(zip(labels, choice))
            if parity is None or S.parity == parity:
                out.append(S)
    return out


def forget_signs(T: SignedDominoTableau) -> SignedDominoTableau:
    return T.forget_signs()


# ---------------------------------------------------------------------------
# clusters and the bijection with cup diagrams


@dataclass(frozen=True)
class Cluster:
    kind: str  # "open" or "closed"
    vertical_labels: tuple  # (left,) or (left, right)
    horizontal_labels: tuple
    left_sign: str
    rows: tuple = ()  # row of each horizontal domino, aligned with horizontal_labels

    @property
    def labels(self) -> set:
        return set(self.vertical_labels) | set(self.horizontal_labels)


def clusters(T: SignedDominoTableau) -> list:
    """Decompose a type D tableau into clusters, numbered right to left."""
    if T.flavor != "D":
        raise TableauError("clusters are defined for type D tableaux")
    signs = dict(T.signs)
    found, current = [], None
    for d in sorted(T.dominoes, key=lambda d: (d.col, d.row)):
        if d.vertical and d.col % 2 == 1:
            if current is not None:
                raise TableauError("odd-column vertical inside an unfinished cluster")
            current = {"v": [d.label], "h": [], "rows": [], "sign": signs.get(d.label, "+")}
        elif current is None:
            raise TableauError(f"domino {d.label} lies outside every cluster")
        elif d.vertical:
            current["v"].append(d.label)
            found.append(Cluster("closed", tuple(current["v"]), tuple(current["h"]),
                                 current["sign"], tuple(current["rows"])))
            current = None
        else:
            current["h"].append(d.label)
            current["rows"].append(d.row)
    if current is not None:
        found.append(Cluster("open", tuple(current["v"]), tuple(current["h"]),
                             current["sign"], tuple(current["rows"])))
    return found[::-1]


def Psi(T: SignedDominoTableau) -> CupDiagram:
    """Cup diagram of a signed type D tableau; vertex numbers equal domino labels."""
    if T.flavor != "D":
        raise TableauError("Psi is defined for type D tableaux")
    if not T.is_signed:
        raise TableauError("Psi needs a signed tableau")
    cups, rays = [], []
    for cl in clusters(T):
        inner_cups, inner_rays = _match(zip(cl.horizontal_labels, cl.rows))
        cups += [(i, j, False) for i, j in inner_cups]
        rays += [(r, False) for r in inner_rays]
        dot = cl.left_sign == "-"
        if cl.kind == "closed":
            if inner_rays:
                raise TableauError("closed cluster with unbalanced rows")
            left, right = cl.vertical_labels
            cups.append((right, left, dot))
        else:
            rays.append((cl.vertical_labels[0], dot))
    return CupDiagram(T.m, tuple(cups), tuple(rays))


def Psi_inverse(a: CupDiagram) -> SignedDominoTableau:
    """The signed type D tableau with ``Psi(T) == a``."""
    rho = a.rightmost_ray
    pieces = []
    if rho is not None:
        pieces.append(("open", 1, rho))
    start = rho + 1 if rho is not None else 1
    for i, j, _ in a.cups:
        if i >= start and not any(k < i and j < l for k, l, _ in a.cups):
            pieces.append(("closed", i, j))
    dominoes, signs = [], {}
    top = bottom = 0  # current row lengths
    for kind, lo, hi in reversed(pieces):
        if top != bottom or top % 2:
            raise DiagramError("pieces do not start on an odd column")
        dot = a.partner(hi)[2]
        dominoes.append(Domino(hi, 1, top + 1, True))
        signs[hi] = "-" if dot else "+"
        top = bottom = top + 1
        inner_hi = hi - 1
        inner_lo = lo + 1 if kind == "closed" else lo
        left = {i for i, j, _ in a.cups if inner_lo <= i and j <= inner_hi}
        for x in range(inner_hi, inner_lo - 1, -1):
            if x in left:
                dominoes.append(Domino(x, 2, bottom + 1, False))
                bottom += 2
            else:
                dominoes.append(Domino(x, 1, top + 1, False))
                top += 2
        if kind == "closed":
            dominoes.append(Domino(lo, 1, top + 1, True))
            top = bottom = top + 1
    return SignedDominoTableau((top, bottom), "D", tuple(dominoes), tuple(signs.items()))


# ---------------------------------------------------------------------------
# type D to type C


def d_to_c(T: SignedDominoTableau) -> SignedDominoTableau:
    """Delete the domino labelled m (first column) and shift everything left."""
    if T.flavor != "D":
        raise TableauError("d_to_c expects a type D tableau")
    m = T.m
    first = T.domino(m) if m else None
    if first is None or not first.vertical or first.col != 1:
        raise TableauError("no vertical domino in the first column")
    rest = tuple(Domino(d.label, d.row, d.col - 1, d.vertical) for d in T.dominoes if d.label != m)
    signs = tuple((l, s) for l, s in T.signs if l != m)
    a, b = T.shape
    return SignedDominoTableau((a - 1, b - 1), "C", rest, signs)


def c_to_d(T: SignedDominoTableau, parity: str) -> SignedDominoTableau:
    """Inverse of ``d_to_c`` on the signed type D tableaux of the given parity."""
    if T.flavor != "C":
        raise TableauError("c_to_d expects a type C tableau")
    m = T.m + 1
    doms = (Domino(m, 1, 1, True),) + tuple(
        Domino(d.label, d.row, d.col + 1, d.vertical) for d in T.dominoes)
    want_odd = parity == "odd"
    sign = "-" if (T.n_minus % 2 == 1) != want_odd else "+"
    a, b = T.shape
    return SignedDominoTableau((a + 1, b + 1), "D", doms, T.signs + ((m, sign),))


def admissible_shapes(max_n: int, flavor: str) -> list:
    """Two-row shapes (a, b) with b >= 1 and a + b <= max_n admissible for the flavor."""
    out = []
    for n in range(2, max_n + 1, 2):
        for b in range(1, n // 2 + 1):
            if is_admissible((n - b, b), flavor):
                out.append((n - b, b))
    return out


def tableau_from_chain(shapes: Sequence, flavor: str = "D") -> SignedDominoTableau:
    """Build an unsigned tableau from its chain of shapes (first shape has label m)."""
    m = len(shapes)
    doms, p, q = [], 0, 0
    for idx, (p2, q2) in enumerate(shapes):
        label = m - idx
        if (p2 - p, q2 - q) == (1, 1) and p == q:
            doms.append(Domino(label, 1, p + 1, True))
        elif (p2 - p, q2 - q) == (2, 0):
            doms.append(Domino(label, 1, p + 1, False))
        elif (p2 - p, q2 - q) == (0, 2):
            doms.append(Domino(label, 2, q + 1, False))
        else:
            raise TableauError(f"step {(p, q)} -> {(p2, q2)} is not a domino")
        p, q = p2, q2
    return SignedDominoTableau((p, q), flavor, tuple(doms))
