"""Symbolic sphere relations of a cup diagram, a union-find oracle, and P^1 relations."""
from __future__ import annotations

from dataclasses import dataclass

from .cups import CupDiagram, DiagramError, intersection_type
from .exact import I, LINE_E, LINE_F, ONE, ProjLine

CONVENTIONS = ("definition", "swapped")

# constants are (symbol, sign): p = ("p", 1), -q = ("q", -1)
_SWAP = {"p": "q", "q": "p"}


@dataclass(frozen=True)
class SphereConstraint:
    kind: str  # "Equal", "Negate" or "Const"
    i: int
    j: int | None = None
    const: tuple | None = None

    def __str__(self):
        if self.kind == "Const":
            return f"Const({self.i},{format_const(self.const)})"
        return f"{self.kind}({self.i},{self.j})"


def format_const(c) -> str:
    sym, sign = c
    return sym if sign > 0 else "-" + sym


def relations_of(a: CupDiagram, convention: str = "definition") -> list:
    """Sphere relations cutting out S_a.

    ``definition``: dotted ray p, undotted rightmost ray -p, other rays q.
    ``swapped``: the same with p and q exchanged.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    out = []
    for i, j, d in a.cups:
        out.append(SphereConstraint("Equal" if d else "Negate", i, j))
    rho = a.rightmost_ray
    for r, d in a.rays:
        if d:
            c = ("p", 1)
        elif r == rho:
            c = ("p", -1)
        else:
            c = ("q", 1)
        if convention == "swapped":
            c = (_SWAP[c[0]], c[1])
        out.append(SphereConstraint("Const", r, const=c))
    return out


@dataclass(frozen=True)
class Inconsistent:
    reason: str
    consistent = False

    def __str__(self):
        return f"Inconsistent({self.reason})"


@dataclass(frozen=True)
class Consistent:
    free: int
    witness: tuple
    consistent = True

    def __str__(self):
        return f"Consistent({self.free})"


class _SignedUnionFind:
    """x_v = sign(v) * x_root(v); roots may carry a constant (symbol, sign)."""

    def __init__(self, n):
        self.parent = list(range(n + 1))
        self.sign = [1] * (n + 1)
        self.const = [None] * (n + 1)

    def find(self, v):
        if self.parent[v] == v:
            return v, 1
        root, s = self.find(self.parent[v])
        self.parent[v] = root
        self.sign[v] *= s
        return root, self.sign[v]

    def tag(self, v, c):
        root, s = self.find(v)
        want = (c[0], c[1] * s)  # constant seen at the root
        have = self.const[root]
        if have is None:
            self.const[root] = want
        elif have != want:
            return f"x{v} = {format_const(c)} clashes with {format_const((have[0], have[1] * s))}"
        return None

    def union(self, u, v, rel):
        """Impose x_u = rel * x_v."""
        ru, su = self.find(u)
        rv, sv = self.find(v)
        if ru == rv:
            if su != rel * sv:
                return f"odd cycle through x{u} and x{v}"
            return None
        # x_ru = su*x_u = su*rel*x_v = su*rel*sv*x_rv
        s = su * rel * sv
        self.parent[ru] = rv
        self.sign[ru] = s
        cu = self.const[ru]
        self.const[ru] = None
        if cu is not None:
            cv = (cu[0], cu[1] * s)
            if self.const[rv] is None:
                self.const[rv] = cv
            elif self.const[rv] != cv:
                return f"constants {format_const(cv)} and {format_const(self.const[rv])} meet at x{v}"
        return None


def solve_constraints(m: int, constraints) -> Inconsistent | Consistent:
    uf = _SignedUnionFind(m)
    for c in constraints:
        if c.kind == "Const":
            err = uf.tag(c.i, c.const)
        else:
            err = uf.union(c.i, c.j, 1 if c.kind == "Equal" else -1)
        if err:
            return Inconsistent(err)
    free_roots = {}
    witness = []
    for v in range(1, m + 1):
        root, s = uf.find(v)
        c = uf.const[root]
        if c is None:
            if root not in free_roots:
                free_roots[root] = f"s{len(free_roots) + 1}"
            c = (free_roots[root], 1)
        witness.append(format_const((c[0], c[1] * s)))
    return Consistent(len(free_roots), tuple(witness))


def solve(a: CupDiagram, b: CupDiagram, convention: str = "definition"):
    """Decide S_a ∩ S_b symbolically; free classes are independent sphere points."""
    if a.m != b.m:
        raise DiagramError("diagrams must have the same number of vertices")
    return solve_constraints(a.m, relations_of(a, convention) + relations_of(b, convention))


@dataclass
class CrossCheck:
    a: CupDiagram
    b: CupDiagram
    predicted: object
    verdicts: dict
    ok: bool

    def report(self) -> str:
        parts = [f"a={self.a}", f"b={self.b}", f"predictor={self.predicted}"]
        parts += [f"{k}={v}" for k, v in self.verdicts.items()]
        return ("agree: " if self.ok else "MISMATCH: ") + "; ".join(parts)


def oracle_cross_check(a: CupDiagram, b: CupDiagram) -> CrossCheck:
    """Compare the circle-diagram predictor with the oracle under both conventions."""
    pred = intersection_type(a, b)
    verdicts = {conv: solve(a, b, conv) for conv in CONVENTIONS}
    ok = True
    for v in verdicts.values():
        if v.consistent == pred.empty:
            ok = False
        elif v.consistent and v.free != pred.circ:
            ok = False
    return CrossCheck(a, b, pred, verdicts, ok)


# ---------------------------------------------------------------------------
# relations on (P^1)^m


@dataclass(frozen=True)
class ProjRelation:
    kind: str  # "Perp", "Same" or "Fixed"
    i: int
    j: int | None = None
    line: ProjLine | None = None

    def __str__(self):
        if self.kind == "Fixed":
            return f"Fixed({self.i},{line_name(self.line)})"
        return f"{self.kind}({self.i},{self.j})"

    def holds(self, lines) -> bool:
        """Check the relation on a tuple of lines indexed from 1."""
        li = lines[self.i - 1]
        if self.kind == "Fixed":
            return li == self.line
        lj = lines[self.j - 1]
        return li.perp() == lj if self.kind == "Perp" else li == lj


def line_name(line: ProjLine) -> str:
    names = {LINE_E: "e", LINE_F: "f", ProjLine(1, 1): "e+f", ProjLine(1, -1): "e-f",
             ProjLine(I, 1): "ie+f", ProjLine(I, -1): "ie-f"}
    return names.get(line, repr(line))


def translate_to_p1(a: CupDiagram, k: int | None = None) -> list:
    """The relations cutting out T_a in (P^1)^m for a in B^{n-k,k}."""
    m = a.m
    k = a.k if k is None else k
    out = []
    for i, j, d in a.cups:
        out.append(ProjRelation("Same" if d else "Perp", i, j))
    rho = a.rightmost_ray
    for r, d in a.rays:
        if k == m:
            line = LINE_E if d else LINE_F
        elif r != rho:
            line = LINE_E
        else:
            sgn = ONE if d else -ONE  # (-1)^eps with eps = 0 iff dotted
            first = ONE if (m - k) % 2 == 0 else I
            line = ProjLine(first, sgn)
        out.append(ProjRelation("Fixed", r, line=line))
    return out


def flip_dot_relations(a: CupDiagram, vertex: int, k: int | None = None) -> list:
    """P^1 relations of ``a`` with the dot at ``vertex`` flipped, ignoring the dot rule.

    A flipped cup swaps Perp and Same.  A flipped ray takes the line the
    rightmost ray would get with the opposite decoration (e and f swap when
    k = m).  Used to build deliberately wrong inputs for negative controls.
    """
    m = a.m
    k = a.k if k is None else k
    out = []
    for rel in translate_to_p1(a, k):
        if rel.kind != "Fixed" and vertex in (rel.i, rel.j):
            rel = ProjRelation("Same" if rel.kind == "Perp" else "Perp", rel.i, rel.j)
        elif rel.kind == "Fixed" and rel.i == vertex:
            dotted = a.partner(vertex)[2]
            if k == m:
                line = LINE_F if dotted else LINE_E
            else:
                first = ONE if (m - k) % 2 == 0 else I
                line = ProjLine(first, -ONE if dotted else ONE)
                if vertex == a.rightmost_ray or line == rel.line:
                    line = ProjLine(rel.line.alpha, -rel.line.beta)
            rel = ProjRelation("Fixed", rel.i, line=line)
        out.append(rel)
    return out
