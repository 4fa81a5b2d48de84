"""Cup diagrams with dots, circle diagrams and the intersection predictor."""
from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class DiagramError(ValueError):
    """Raised for malformed or inadmissible cup diagrams."""


@dataclass(frozen=True)
class CupDiagram:
    """Cups ``(i, j, dotted)`` with i < j and rays ``(i, dotted)`` on vertices 1..m."""

    m: int
    cups: tuple = ()
    rays: tuple = ()

    def __post_init__(self):
        cups = tuple(sorted((int(i), int(j), bool(d)) for i, j, d in self.cups))
        rays = tuple(sorted((int(i), bool(d)) for i, d in self.rays))
        object.__setattr__(self, "cups", cups)
        object.__setattr__(self, "rays", rays)
        seen = []
        for i, j, _ in cups:
            if not 1 <= i < j <= self.m:
                raise DiagramError(f"bad cup ({i},{j}) for m={self.m}")
            seen += [i, j]
        seen += [i for i, _ in rays]
        if sorted(seen) != list(range(1, self.m + 1)):
            raise DiagramError("every vertex must meet exactly one cup or ray")
        for (i, j, _), (k, l, _) in itertools.combinations(cups, 2):
            if i < k < j < l or k < i < l < j:
                raise DiagramError(f"cups ({i},{j}) and ({k},{l}) cross")
        for r, _ in rays:
            for i, j, _ in cups:
                if i < r < j:
                    raise DiagramError(f"ray {r} lies inside cup ({i},{j})")
        for i, j, d in cups:
            if d and not self.cup_dottable(i, j):
                raise DiagramError(f"cup ({i},{j}) cannot carry a dot")
        for r, d in rays:
            if d and r != self.rightmost_ray:
                raise DiagramError(f"ray {r} cannot carry a dot")

    # -- structure ---------------------------------------------------------

    @property
    def rightmost_ray(self) -> int | None:
        return self.rays[-1][0] if self.rays else None

    def cup_dottable(self, i: int, j: int) -> bool:
        """A cup reaches the right edge iff it is not nested and no ray is to its right."""
        nested = any(k < i and j < l for k, l, _ in self.cups)
        ray_right = any(r > j for r, _ in self.rays)
        return not nested and not ray_right

    @property
    def n_dots(self) -> int:
        return sum(d for *_, d in self.cups) + sum(d for _, d in self.rays)

    @property
    def parity(self) -> str:
        return "odd" if self.n_dots % 2 else "even"

    @property
    def k(self) -> int:
        """Second part of the two-row shape (n-k, k) this diagram belongs to."""
        if len(self.rays) <= 1:
            return self.m
        return 2 * len(self.cups) + 1

    @property
    def shape(self) -> tuple:
        return (2 * self.m - self.k, self.k)

    def partner(self, v: int):
        """('cup', w, dotted) or ('ray', None, dotted) for vertex v."""
        for i, j, d in self.cups:
            if v == i:
                return ("cup", j, d)
            if v == j:
                return ("cup", i, d)
        for r, d in self.rays:
            if r == v:
                return ("ray", None, d)
        raise KeyError(v)

    def has_undotted_cup(self) -> bool:
        return any(not d for *_, d in self.cups)

    def toggled(self, vertex: int) -> "CupDiagram":
        """Copy with the dot on the cup/ray at ``vertex`` flipped (validated)."""
        cups = [(i, j, (not d) if vertex in (i, j) else d) for i, j, d in self.cups]
        rays = [(r, (not d) if r == vertex else d) for r, d in self.rays]
        return CupDiagram(self.m, tuple(cups), tuple(rays))

    # -- text / json -------------------------------------------------------

    def __str__(self):
        return format_diagram(self)

    def to_json(self):
        return {
            "m": self.m,
            "cups": [{"from": i, "to": j, "dot": d} for i, j, d in self.cups],
            "rays": [{"at": r, "dot": d} for r, d in self.rays],
        }

    @classmethod
    def from_json(cls, data):
        try:
            return cls(int(data["m"]),
                       tuple((c["from"], c["to"], c.get("dot", False)) for c in data["cups"]),
                       tuple((r["at"], r.get("dot", False)) for r in data["rays"]))
        except (KeyError, TypeError) as exc:
            raise DiagramError(f"malformed diagram JSON: {exc}") from exc

    def sort_key(self):
        dotted_cups = sum(d for *_, d in self.cups)
        return (self.n_dots % 2, self.n_dots, dotted_cups,
                tuple((i, j) for i, j, _ in self.cups),
                tuple(d for *_, d in self.cups), tuple(self.rays))


_TOKEN = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)(\*?)|\|\s*(\d+)(\*?)|(\S)")


def parse_diagram(text: str, m: int | None = None) -> CupDiagram:
    """Parse ``(1,2) |3 |4*`` style text; whitespace between tokens is optional."""
    cups, rays = [], []
    for mt in _TOKEN.finditer(text):
        if mt.group(6) is not None:
            raise DiagramError(f"unexpected character {mt.group(6)!r} in {text!r}")
        if mt.group(1) is not None:
            i, j = int(mt.group(1)), int(mt.group(2))
            if i > j:
                i, j = j, i
            cups.append((i, j, bool(mt.group(3))))
        else:
            rays.append((int(mt.group(4)), bool(mt.group(5))))
    verts = [v for i, j, _ in cups for v in (i, j)] + [r for r, _ in rays]
    if not verts:
        if m == 0 or (m is None and not text.strip()):
            return CupDiagram(0)
        raise DiagramError("empty diagram")
    return CupDiagram(m if m is not None else max(verts), tuple(cups), tuple(rays))


def format_diagram(a: CupDiagram) -> str:
    items = [(i, f"({i},{j})" + ("*" if d else "")) for i, j, d in a.cups]
    items += [(r, f"|{r}" + ("*" if d else "")) for r, d in a.rays]
    return " ".join(s for _, s in sorted(items))


# ---------------------------------------------------------------------------
# enumeration


def _skeletons(m: int, c: int):
    """Non-crossing diagrams as (cups, rays) with c cups; rays never nested."""
    out = []

    def rec(v, stack, cups, rays, opened):
        if v > m:
            if not stack and opened == c:
                out.append((tuple(cups), tuple(rays)))
            return
        remaining = m - v + 1
        # open a cup
        if opened < c and len(stack) + 1 <= remaining - 1:
            rec(v + 1, stack + [v], cups, rays, opened + 1)
        # close the innermost open cup
        if stack:
            rec(v + 1, stack[:-1], cups + [(stack[-1], v)], rays, opened)
        # a ray, only at nesting depth zero
        if not stack:
            rec(v + 1, stack, cups, rays + [v], opened)

    rec(1, [], [], [], 0)
    return out


def enumerate_cup_diagrams(m: int, c: int) -> list:
    """All cup diagrams on m vertices with c cups, sorted (even before odd)."""
    if not 0 <= 2 * c <= m:
        raise DiagramError(f"need 0 <= 2c <= m, got m={m}, c={c}")
    result = []
    for cups, rays in _skeletons(m, c):
        base = CupDiagram(m, tuple((i, j, False) for i, j in cups), tuple((r, False) for r in rays))
        slots = [("cup", i, j) for i, j in cups if base.cup_dottable(i, j)]
        if rays:
            slots.append(("ray", rays[-1], None))
        for choice in itertools.product((False, True), repeat=len(slots)):
            dotted = {(s[1], s[2]) for s, d in zip(slots, choice) if d and s[0] == "cup"}
            ray_dot = any(d for s, d in zip(slots, choice) if s[0] == "ray")
            result.append(CupDiagram(
                m,
                tuple((i, j, (i, j) in dotted) for i, j in cups),
                tuple((r, ray_dot and r == rays[-1]) for r in rays)))
    result.sort(key=CupDiagram.sort_key)
    return result


def diagrams_for_shape(n_minus_k: int, k: int) -> list:
    """The set B^{n-k,k}: diagrams on m = n/2 vertices with floor(k/2) cups."""
    n = n_minus_k + k
    if n % 2 or not 1 <= k <= n // 2:
        raise DiagramError(f"({n_minus_k},{k}) is not a two-row shape with 1 <= k <= m")
    if k % 2 == 0 and k != n // 2:
        raise DiagramError(f"({n_minus_k},{k}) is not type D admissible")
    return enumerate_cup_diagrams(n // 2, k // 2)


def parity(a: CupDiagram) -> str:
    return a.parity


def diagram_names(diagrams: Sequence) -> list:
    """Canonical names a, b, ..., z, aa, ab, ... in enumeration order."""
    names = []
    for idx in range(len(diagrams)):
        s, t = "", idx
        while True:
            s = chr(ord("a") + t % 26) + s
            t = t // 26 - 1
            if t < 0:
                break
        names.append(s)
    return names


# ---------------------------------------------------------------------------
# circle diagrams


@dataclass(frozen=True)
class Component:
    vertices: tuple
    closed: bool
    dots: int
    propagating: bool | None  # None for closed components
    ray_ends: tuple = ()      # ('top'|'bottom', vertex) for line segments


@dataclass(frozen=True)
class CircleDiagram:
    m: int
    components: tuple = field(default_factory=tuple)

    @property
    def circ(self) -> int:
        return sum(c.closed for c in self.components)

    def to_json(self):
        return {"m": self.m, "components": [
            {"vertices": list(c.vertices), "closed": c.closed, "dots": c.dots,
             "propagating": c.propagating} for c in self.components]}


def circle_diagram(a: CupDiagram, b: CupDiagram) -> CircleDiagram:
    """Glue the mirror image of a (on top) to b (below) and trace components."""
    if a.m != b.m:
        raise DiagramError("diagrams have different numbers of vertices")
    top = {v: a.partner(v) for v in range(1, a.m + 1)}
    bot = {v: b.partner(v) for v in range(1, b.m + 1)}
    sides = {"top": top, "bottom": bot}
    other = {"top": "bottom", "bottom": "top"}
    visited = set()
    comps = []

    def walk(start, side):
        """Follow arcs from ``start`` leaving through ``side``; returns path info."""
        verts, dots, v = [start], 0, start
        while True:
            kind, w, d = sides[side][v]
            if kind == "ray":
                dots += d
                return verts, dots, (side, v)
            dots += d
            if w == start:
                return verts, dots, None
            verts.append(w)
            v, side = w, other[side]

    for v0 in range(1, a.m + 1):
        if v0 in visited:
            continue
        verts, dots, end = walk(v0, "top")
        if end is None:
            comps.append(Component(tuple(verts), True, dots, None))
            visited.update(verts)
            continue
        # open: walk the other way from v0 to reach the second end
        back, dots2, end2 = walk(v0, "bottom")
        path = list(reversed(back[1:])) + verts
        if path[0] > path[-1]:
            path.reverse()
            end, end2 = end2, end
        total = dots + dots2
        ends = tuple(sorted([end, end2], key=lambda e: e[1]))
        propagating = {end[0], end2[0]} == {"top", "bottom"}
        comps.append(Component(tuple(path), False, total, propagating, ends))
        visited.update(path)
    return CircleDiagram(a.m, tuple(comps))


@dataclass(frozen=True)
class IntersectionType:
    empty: bool
    circ: int | None = None

    def __str__(self):
        return "Empty" if self.empty else f"NonEmpty({self.circ})"

    @classmethod
    def parse(cls, text):
        if text == "Empty":
            return cls(True)
        mt = re.fullmatch(r"NonEmpty\((\d+)\)", text)
        if not mt:
            raise ValueError(text)
        return cls(False, int(mt.group(1)))


EMPTY = IntersectionType(True)


def intersection_type(a: CupDiagram, b: CupDiagram) -> IntersectionType:
    """Empty unless every component has an even number of dots and every line propagates."""
    cd = circle_diagram(a, b)
    for comp in cd.components:
        if comp.dots % 2:
            return EMPTY
        if not comp.closed and not comp.propagating:
            return EMPTY
    return IntersectionType(False, cd.circ)


@dataclass
class IntersectionGraph:
    names: list
    diagrams: list
    edges: dict  # (i, j) with i <= j -> IntersectionType

    def components(self) -> list:
        """Connected components (index lists) using nonempty edges."""
        parent = list(range(len(self.diagrams)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (i, j), t in self.edges.items():
            if not t.empty:
                parent[find(i)] = find(j)
        groups = {}
        for i in range(len(self.diagrams)):
            groups.setdefault(find(i), []).append(i)
        return sorted(groups.values())

    def neighbours(self, i):
        return sorted(j if a == i else a for (a, j), t in self.edges.items()
                      if not t.empty and a != j and i in (a, j))

    def to_json(self):
        return {
            "nodes": [{"name": n, "diagram": str(d)} for n, d in zip(self.names, self.diagrams)],
            "edges": [{"source": self.names[i], "target": self.names[j], "type": str(t)}
                      for (i, j), t in sorted(self.edges.items())],
        }

    def to_dot(self) -> str:
        lines = ["graph intersections {"]
        for n, d in zip(self.names, self.diagrams):
            lines.append(f'  {n} [label="{n}: {d}"];')
        for (i, j), t in sorted(self.edges.items()):
            if not t.empty:
                lines.append(f'  {self.names[i]} -- {self.names[j]} [label="{t}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def intersection_graph(diagrams: Sequence, names: Sequence | None = None) -> IntersectionGraph:
    diagrams = list(diagrams)
    if len({(d.m, len(d.cups)) for d in diagrams}) > 1:
        raise DiagramError("all diagrams must share m and the number of cups")
    names = list(names) if names is not None else diagram_names(diagrams)
    edges = {}
    for i, j in itertools.combinations_with_replacement(range(len(diagrams)), 2):
        edges[(i, j)] = intersection_type(diagrams[i], diagrams[j])
    return IntersectionGraph(names, diagrams, edges)


def admissible_shapes_D(max_n: int) -> list:
    """All type-D two-row shapes (n-k, k) with 1 <= k <= m and n <= max_n."""
    shapes = []
    for n in range(2, max_n + 1, 2):
        m = n // 2
        for k in range(1, m + 1):
            if k == m or k % 2:
                shapes.append((n - k, k))
    return shapes


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)
