"""Exact linear algebra of two-row Springer fibers of types D and C.

The ambient space has basis e_1..e_N, f_1..f_N (in that order) with the
nilpotent z sending e_j to e_{j-1} and f_j to f_{j-1}, and the projection C
onto C^2 sending every e_j to e and every f_j to f.
"""
from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .cups import CupDiagram, DiagramError
from .exact import (I, ONE, ZERO, GaussianRational, Matrix, ProjLine, Subspace,
                    _rref_rows, dot, format_scalar, parse_scalar, unit, vadd, vscale)
from .spheres import translate_to_p1
from .tableaux import (SignedDominoTableau, TableauError, Psi_inverse, d_to_c,
                       is_admissible, tableau_from_chain)


class NotContained(ValueError):
    """A subspace is not contained in the domain of a bilinear form."""


class FormError(ValueError):
    """A Gram matrix fails its construction checks."""


# ---------------------------------------------------------------------------
# ambient space


class Ambient:
    def __init__(self, N: int):
        if N < 1:
            raise ValueError("N must be positive")
        self.N = N
        self.dim = 2 * N
        rows = [[ZERO] * self.dim for _ in range(self.dim)]
        for j in range(1, N):
            rows[j - 1][j] = ONE  # z e_{j+1} = e_j
            rows[N + j - 1][N + j] = ONE
        self.z = Matrix(rows, self.dim)
        self.C = Matrix([[ONE] * N + [ZERO] * N, [ZERO] * N + [ONE] * N], self.dim)

    def e(self, j: int):
        return unit(self.dim, j - 1)

    def f(self, j: int):
        return unit(self.dim, self.N + j - 1)

    def E(self, p: int, q: int) -> Subspace:
        """span(e_1..e_p, f_1..f_q)."""
        if p > self.N or q > self.N:
            raise ValueError(f"E_{{{p},{q}}} does not fit into N={self.N}")
        return Subspace(self.dim, [self.e(i) for i in range(1, p + 1)] + [self.f(j) for j in range(1, q + 1)])

    def vector(self, e_coeffs=(), f_coeffs=()):
        """Vector with the given coefficient lists on e_1.. and f_1.."""
        v = [ZERO] * self.dim
        for j, c in enumerate(e_coeffs):
            v[j] = c if isinstance(c, GaussianRational) else GaussianRational(c)
        for j, c in enumerate(f_coeffs):
            v[self.N + j] = c if isinstance(c, GaussianRational) else GaussianRational(c)
        return tuple(v)

    def name(self, v) -> str:
        """Readable form such as ``i*e3+f2``."""
        terms = []
        for idx, c in enumerate(v):
            if not c:
                continue
            b = f"e{idx + 1}" if idx < self.N else f"f{idx - self.N + 1}"
            s = format_scalar(c)
            if s == "1":
                terms.append(b)
            elif s == "-1":
                terms.append("-" + b)
            elif "+" in s[1:] or "-" in s[1:]:
                terms.append(f"({s})*{b}")
            else:
                terms.append(f"{s}*{b}")
        return "+".join(terms).replace("+-", "-") or "0"


def build_ambient(m: int, n_minus_k: int = 0) -> Ambient:
    """Ambient space large enough for flags of length m and E_{n-k,k}."""
    if m < 1:
        raise ValueError("m must be positive")
    return Ambient(max(m + 1, n_minus_k))


# ---------------------------------------------------------------------------
# bilinear forms


def _delta(a, b):
    return 1 if a == b else 0


@dataclass
class FormSpec:
    """A bilinear form on E = span(e_1..e_p, f_1..f_q) inside an ambient space."""

    flavor: str
    p: int
    q: int
    gram: Matrix  # on E-coordinates: e_1..e_p then f_1..f_q
    ambient: Ambient
    checked: bool = True

    def __post_init__(self):
        self.E = self.ambient.E(self.p, self.q)
        idx = list(range(self.p)) + [self.ambient.N + j for j in range(self.q)]
        self._idx = idx
        rows = [[ZERO] * self.ambient.dim for _ in range(self.ambient.dim)]
        for a, ia in enumerate(idx):
            for b, ib in enumerate(idx):
                rows[ia][ib] = self.gram[a, b] if hasattr(self.gram, "__getitem__") else ZERO
        self.G = Matrix(rows, self.ambient.dim)
        if self.checked:
            self.check()

    @property
    def shape(self) -> tuple:
        return (self.p, self.q)

    def pair(self, u, v) -> GaussianRational:
        """The form evaluated on ambient vectors lying in E."""
        for w in (u, v):
            if not self.E.contains(w):
                raise NotContained("vector outside the domain of the form")
        return dot(u, self.G.apply(v))

    def check(self):
        """(Anti)symmetry, nondegeneracy and z-compatibility of the Gram matrix."""
        g = self.gram
        d = self.p + self.q
        sgn = 1 if self.flavor == "D" else -1
        for a in range(d):
            for b in range(d):
                if g[a, b] != sgn * g[b, a]:
                    kind = "symmetric" if sgn == 1 else "antisymmetric"
                    raise FormError(f"form {self.flavor}{self.shape} is not {kind} at ({a},{b})")
        if d and g.rank() != d:
            raise FormError(f"form {self.flavor}{self.shape} is degenerate")
        z = self.ambient.z
        basis = [unit(self.ambient.dim, i) for i in self._idx]
        zb = [z.apply(v) for v in basis]
        for v, zv in zip(basis, zb):
            for w, zw in zip(basis, zb):
                if dot(zv, self.G.apply(w)) != -dot(v, self.G.apply(zw)):
                    raise FormError(f"z is not skew for form {self.flavor}{self.shape}")

    def tampered(self, a: int, b: int, delta=1) -> "FormSpec":
        """Copy with one Gram entry shifted by ``delta``, skipping the checks."""
        rows = [list(r) for r in self.gram.rows]
        rows[a][b] = rows[a][b] + GaussianRational(delta)
        return FormSpec(self.flavor, self.p, self.q, Matrix(rows, self.p + self.q),
                        self.ambient, checked=False)

    def isotropic(self, U: Subspace) -> bool:
        """True iff the form vanishes on U; raises NotContained if U is not in E."""
        if not self.E.contains_subspace(U):
            raise NotContained(f"subspace of dim {U.dim} is not contained in E_{{{self.p},{self.q}}}")
        images = [self.G.apply(u) for u in U.basis]
        return all(not dot(u, gv) for u in U.basis for gv in images)

    def perp(self, U: Subspace) -> Subspace:
        """The orthogonal complement of U inside E."""
        return U.perp_form(self.G).intersect(self.E)


def _gram_entries(flavor: str, p: int, q: int, m: int, variant: str):
    """Yield ((kind, i), (kind, j), value) for the nonzero entries."""
    if flavor == "D":
        k = q
        if p == q:  # k = m
            for j in range(1, k + 1):
                jp = k + 1 - j
                v = (-1) ** (j - 1)
                yield ("e", jp), ("f", j), v
                yield ("f", j), ("e", jp), v
        else:
            for i in range(1, p + 1):
                yield ("e", i), ("e", p + 1 - i), (-1) ** (i - 1)
            for j in range(1, q + 1):
                yield ("f", j), ("f", q + 1 - j), (-1) ** j
    else:
        if p == q:  # k = m, shape (k-1, k-1)
            k = q + 1
            for j in range(1, k):
                jp = k - j
                v = (-1) ** (j - 1)
                yield ("f", j), ("e", jp), v
                yield ("e", jp), ("f", j), -v
        else:  # shape (n-k-1, k-1)
            nk, k = p + 1, q + 1
            for i in range(1, p + 1):
                ip = nk - i
                if variant == "printed" and i > ip:
                    v = (-1) ** (i - 1)
                else:
                    v = (-1) ** i
                yield ("e", i), ("e", ip), v
            for j in range(1, q + 1):
                jp = k - j
                if variant == "printed" and j > jp:
                    v = (-1) ** j
                else:
                    v = (-1) ** (j - 1)
                yield ("f", j), ("f", jp), v


def make_form(flavor: str, n: int, k: int, ambient: Ambient | None = None,
              variant: str = "corrected") -> FormSpec:
    """The orthogonal form on E_{n-k,k} or the symplectic form on E_{n-k-1,k-1}, for a type D shape (n-k, k).

    ``variant="printed"`` keeps the alternative sign split for type C with
    k < m; that form comes out symmetric and fails the construction check.
    """
    m = n // 2
    if n % 2 or not 1 <= k <= m or not is_admissible((n - k, k), "D"):
        raise TableauError(f"({n - k},{k}) is not a type D admissible two-row shape")
    if flavor == "D":
        p, q = n - k, k
    elif flavor == "C":
        p, q = n - k - 1, k - 1
    else:
        raise ValueError(f"unknown flavor {flavor!r}")
    if ambient is None:
        ambient = build_ambient(m, n - k)
    d = p + q
    rows = [[ZERO] * d for _ in range(d)]

    def pos(kind, i):
        return i - 1 if kind == "e" else p + i - 1

    for a, b, v in _gram_entries(flavor, p, q, m, variant):
        rows[pos(*a)][pos(*b)] = GaussianRational(v)
    return FormSpec(flavor, p, q, Matrix(rows, d), ambient)


# ---------------------------------------------------------------------------
# Jordan types


def _conjugate(parts) -> tuple:
    parts = [p for p in parts if p]
    return tuple(sum(1 for p in parts if p > i) for i in range(parts[0])) if parts else ()


def _jordan_from_kernel_dims(dims) -> tuple:
    """dims[i] = dim ker M^i for i = 0, 1, ... until it stabilises."""
    counts = [b - a for a, b in zip(dims, dims[1:])]  # blocks of size > i
    return _conjugate(counts)


def jordan_type(M: Matrix) -> tuple:
    """Jordan block sizes (a partition) of a nilpotent matrix."""
    n = M.nrows
    if M.ncols != n:
        raise ValueError("Jordan type of a non-square matrix")
    dims = [0]
    P = Matrix.identity(n)
    for _ in range(n):
        P = M @ P
        dims.append(n - P.rank())
        if dims[-1] == n:
            break
    if dims[-1] != n:
        raise ValueError("matrix is not nilpotent")
    return _jordan_from_kernel_dims(dims)


def induced_map(z: Matrix, U: Subspace, form: FormSpec) -> Matrix:
    """Matrix of the map induced by z on U^perp / U (complement basis of U in U^perp)."""
    if not form.isotropic(U):
        raise ValueError("U must be isotropic")
    if not U.contains_subspace(U.image(z)):
        raise ValueError("U is not z-stable")
    W = form.perp(U)
    # extend the basis of U to one of W, keeping the added vectors
    comp, current = [], U
    for w in W.basis:
        if not current.contains(w):
            comp.append(w)
            current = Subspace(current.ambient_dim, current.basis + (w,))
    full = list(U.basis) + comp
    n = len(full)
    cols = []
    for w in comp:
        coords = _solve_in_basis(full, z.apply(w))
        cols.append(coords[U.dim:])
    r = len(comp)
    return Matrix([[cols[c][row] for c in range(r)] for row in range(r)], r) if r else Matrix([], 0)


def _solve_in_basis(basis, v):
    """Coordinates of v in the (independent) list ``basis``."""
    n = len(basis)
    dim = len(v)
    # solve via rref of the augmented transposed system
    rows = [[basis[c][r] for c in range(n)] + [v[r]] for r in range(dim)]
    red, piv = _rref_rows(rows, n + 1)
    if n in piv:
        raise ValueError("vector not in span")
    x = [ZERO] * n
    for row, p in zip(red, piv):
        x[p] = row[n]
    return x


def induced_jordan_type(z: Matrix, U: Subspace, form: FormSpec) -> tuple:
    """Jordan type on U^perp/U from dim(U^perp ∩ z^{-j}U) - dim U."""
    W = form.perp(U)
    total = W.dim - U.dim
    dims = [0]
    pre = U
    while dims[-1] < total:
        pre = pre.preimage(z)
        dims.append(W.intersect(pre).dim - U.dim)
        if len(dims) > total + 2:
            raise ValueError("induced map is not nilpotent")
    return _jordan_from_kernel_dims(dims)


# ---------------------------------------------------------------------------
# flags


class Flag:
    """Nested subspaces F_1 ⊂ ... ⊂ F_l with dim F_i = i."""

    def __init__(self, spaces, ambient_dim: int | None = None):
        spaces = tuple(spaces)
        if ambient_dim is None:
            if not spaces:
                raise ValueError("ambient dimension needed for the empty flag")
            ambient_dim = spaces[0].ambient_dim
        prev = Subspace.zero(ambient_dim)
        for i, F in enumerate(spaces, 1):
            if F.dim != i:
                raise ValueError(f"F_{i} has dimension {F.dim}")
            if not F.contains_subspace(prev):
                raise ValueError(f"F_{i - 1} is not contained in F_{i}")
            prev = F
        self.spaces = spaces
        self.ambient_dim = ambient_dim

    def __len__(self):
        return len(self.spaces)

    def __getitem__(self, i):
        return self.spaces[i]

    def __eq__(self, other):
        return isinstance(other, Flag) and self.spaces == other.spaces

    def __hash__(self):
        return hash(self.spaces)

    def z_compatible(self, z: Matrix) -> bool:
        prev = Subspace.zero(self.ambient_dim)
        for F in self.spaces:
            if not prev.contains_subspace(F.image(z)):
                return False
            prev = F
        return True

    def to_json(self):
        """Basis vectors added at each step, as scalar strings."""
        out, prev = [], Subspace.zero(self.ambient_dim)
        for F in self.spaces:
            new = next(b for b in F.basis if not prev.contains(b))
            out.append([format_scalar(x) for x in new])
            prev = F
        return {"ambient_dim": self.ambient_dim, "vectors": out}

    @classmethod
    def from_json(cls, data):
        n = int(data["ambient_dim"])
        vectors, spaces = [], []
        for v in data["vectors"]:
            vectors.append([parse_scalar(x) for x in v])
            spaces.append(Subspace(n, vectors))
        return cls(spaces, n)


def pi(flag: Flag) -> Flag:
    """Forget the last subspace."""
    return Flag(flag.spaces[:-1], flag.ambient_dim)


def phi(flag: Flag, amb: Ambient) -> tuple:
    """Lines C(F_i ∩ F_{i-1}^perp) for i = 1..m (Hermitian perp)."""
    lines = []
    prev = Subspace.zero(amb.dim)
    for i, F in enumerate(flag.spaces, 1):
        L = F.intersect(prev.perp_hermitian())
        if L.dim != 1:
            raise ValueError(f"F_{i} ∩ F_{i - 1}^perp has dimension {L.dim}")
        alpha, beta = amb.C.apply(L.basis[0])
        if not alpha and not beta:
            raise ValueError(f"C kills F_{i} ∩ F_{i - 1}^perp")
        lines.append(ProjLine(alpha, beta))
        prev = F
    return tuple(lines)


def phi_inverse(lines, amb: Ambient) -> Flag:
    """Lift a tuple of lines to the unique flag with ``phi(flag) == lines``."""
    if len(lines) + 1 > amb.N:
        raise ValueError("ambient space too small: need N > m")
    F = Subspace.zero(amb.dim)
    spaces = []
    for i, line in enumerate(lines, 1):
        W = F.preimage(amb.z).intersect(F.perp_hermitian())
        if W.dim != 2:
            raise AssertionError(f"lift step {i}: expected a plane, got dim {W.dim}")
        w1, w2 = W.basis
        c1, c2 = amb.C.apply(w1), amb.C.apply(w2)
        a, b = _solve_2x2(c1, c2, line.coords)
        v = vadd(vscale(a, w1), vscale(b, w2))
        F = Subspace(amb.dim, F.basis + (v,))
        spaces.append(F)
    return Flag(spaces, amb.dim)


def _solve_2x2(c1, c2, target):
    """a, b with a*c1 + b*c2 = target (columns c1, c2 of length 2)."""
    det = c1[0] * c2[1] - c2[0] * c1[1]
    if not det:
        raise AssertionError("C is not injective on the lift plane")
    t0, t1 = target
    a = (t0 * c2[1] - c2[0] * t1) / det
    b = (c1[0] * t1 - t0 * c1[1]) / det
    return a, b


# ---------------------------------------------------------------------------
# Spaltenstein map


@dataclass
class SpaltensteinResult:
    shapes: list  # J(x^(l)), ..., J(x^(0))
    tableau: SignedDominoTableau


def _two(parts) -> tuple:
    parts = tuple(parts)
    if len(parts) > 2:
        raise TableauError(f"Jordan type {parts} has more than two rows")
    return (parts + (0, 0))[:2]


def spaltenstein_data(flag: Flag, form: FormSpec, fast: bool = True) -> SpaltensteinResult:
    z = form.ambient.z
    l = len(flag)
    shapes = []
    for i in range(l, -1, -1):
        U = flag.spaces[i - 1] if i else Subspace.zero(flag.ambient_dim)
        if fast:
            shapes.append(_two(induced_jordan_type(z, U, form)))
        else:
            shapes.append(_two(jordan_type(induced_map(z, U, form))))
    if shapes[0] != (0, 0):
        raise TableauError(f"flag is not full: J(x^({l})) = {shapes[0]}")
    try:
        T = tableau_from_chain(shapes[1:], form.flavor)
    except TableauError as exc:
        raise TableauError(f"Jordan types {shapes} do not form a domino chain: {exc}") from exc
    return SpaltensteinResult(shapes, T)


def spaltenstein(flag: Flag, form: FormSpec) -> SignedDominoTableau:
    """Unsigned domino tableau recording how Jordan types grow along the flag."""
    return spaltenstein_data(flag, form).tableau


# ---------------------------------------------------------------------------
# sampling


def make_rng(seed, *parts) -> random.Random:
    """Deterministic generator keyed by the seed and a task description."""
    key = "/".join(str(p) for p in (seed,) + parts)
    digest = hashlib.sha256(key.encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


_EXCLUDED = {ZERO, ONE, -ONE, I, -I}


def random_scalar(rng: random.Random, bound: int = 7) -> GaussianRational:
    re = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
    im = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
    return GaussianRational(re, im)


def random_line(rng: random.Random) -> ProjLine:
    """A line (1 : t) away from the fixed lines e, f, e±f, ie±f."""
    while True:
        beta = random_scalar(rng)
        if beta not in _EXCLUDED:
            return ProjLine(ONE, beta)


def sample_T_a(a: CupDiagram, rng: random.Random, relations=None) -> tuple:
    """A point of T_a: fixed lines on rays, random line / partner on each cup."""
    relations = translate_to_p1(a) if relations is None else relations
    lines = [None] * a.m
    for rel in relations:
        if rel.kind == "Fixed":
            lines[rel.i - 1] = rel.line
    for rel in sorted((r for r in relations if r.kind != "Fixed"), key=lambda r: r.i):
        ell = random_line(rng)
        lines[rel.i - 1] = ell
        lines[rel.j - 1] = ell.perp() if rel.kind == "Perp" else ell
    if any(l is None for l in lines):
        raise DiagramError("relations leave a vertex unconstrained")
    lines = tuple(lines)
    bad = [str(r) for r in relations if not r.holds(lines)]
    if bad:
        raise AssertionError(f"sample violates {bad}")
    return lines


# ---------------------------------------------------------------------------
# verification


def expected_jordan_sequence(flavor: str, n: int, k: int) -> list:
    """J(z^(i)) for i = 0..l on components without undotted cups."""
    m = n // 2
    out = []
    if flavor == "D":
        for i in range(m + 1):
            out.append((n - k - 2 * i, k) if i <= m - k else (m - i, m - i))
    else:
        for i in range(m):
            out.append((n - k - 1 - 2 * i, k - 1) if i <= m - k else (m - 1 - i, m - 1 - i))
    return out


@dataclass
class Failure:
    check: str
    diagram: str
    sample: int
    detail: str
    flag: dict | None = None

    def to_json(self):
        return {"check": self.check, "diagram": self.diagram, "sample": self.sample,
                "detail": self.detail, "flag": self.flag}


@dataclass
class Report:
    name: str
    checks: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def add(self, report: "Report"):
        self.checks += report.checks
        self.failures += report.failures
        self.notes += report.notes

    def record(self, passed: bool, check: str, diagram, sample, detail="", flag=None):
        self.checks += 1
        if not passed:
            self.failures.append(Failure(check, str(diagram), sample, detail,
                                         flag.to_json() if flag is not None else None))

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.checks} checks, {len(self.failures)} failures"

    def to_json(self):
        return {"name": self.name, "ok": self.ok, "checks": self.checks,
                "failures": [f.to_json() for f in self.failures], "notes": self.notes}


def lift(a: CupDiagram, samples: int, seed=0, amb: Ambient | None = None, relations=None) -> list:
    """Sampled points of T_a and their lifted flags: list of (lines, flag)."""
    n, k = a.shape
    amb = amb or build_ambient(a.m, n)
    out = []
    for s in range(samples):
        rng = make_rng(seed, a, s)
        lines = sample_T_a(a, rng, relations)
        out.append((lines, phi_inverse(lines, amb)))
    return out


def verify_component(a: CupDiagram, samples: int = 5, seed=0, form: FormSpec | None = None,
                     relations=None, expected: SignedDominoTableau | None = None) -> Report:
    """Check that lifted points of T_a lie in the type D Springer fiber component of a."""
    n_minus_k, k = a.shape
    n = n_minus_k + k
    form = form or make_form("D", n, k)
    amb = form.ambient
    expected = expected or Psi_inverse(a).forget_signs()
    seq = expected_jordan_sequence("D", n, k) if not a.has_undotted_cup() else None
    rep = Report(f"theorem1 {a}")
    for s, (lines, flag) in enumerate(lift(a, samples, seed, amb, relations)):
        rep.record(flag.z_compatible(amb.z), "z-compatible", a, s, flag=flag)
        top = flag.spaces[-1]
        inside = form.E.contains_subspace(top)
        rep.record(inside, "contained in E", a, s, f"E_{{{form.p},{form.q}}}", flag)
        if inside:
            iso = form.isotropic(top)
            rep.record(iso, "isotropic", a, s, "form does not vanish on F_m", flag)
        else:
            iso = False
        back = phi(flag, amb)
        rep.record(back == tuple(lines), "phi round trip", a, s, flag=flag)
        if not iso:
            continue
        try:
            data = spaltenstein_data(flag, form)
        except TableauError as exc:
            rep.record(False, "spaltenstein", a, s, str(exc), flag)
            continue
        rep.record(data.tableau == expected, "spaltenstein", a, s,
                   f"got {data.tableau.to_json()}, expected {expected.to_json()}", flag)
        if seq is not None:
            got = data.shapes[::-1]
            rep.record(got == seq, "jordan sequence", a, s, f"got {got}, expected {seq}", flag)
    return rep


def verify_theorem2(a: CupDiagram, samples: int = 5, seed=0, form: FormSpec | None = None) -> Report:
    """Check that forgetting F_m sends the odd component of a into the type C fiber."""
    if a.parity != "odd":
        raise DiagramError(f"{a} is not odd")
    n_minus_k, k = a.shape
    n = n_minus_k + k
    rep = Report(f"theorem2 {a}")
    if a.m == 1:
        rep.notes.append("m = 1: the projected flag is empty, trivially passes")
        return rep
    form = form or make_form("C", n, k)
    amb = form.ambient
    expected = d_to_c(Psi_inverse(a)).forget_signs()
    seq = expected_jordan_sequence("C", n, k) if not a.has_undotted_cup() else None
    images = {}
    for s, (lines, flag) in enumerate(lift(a, samples, seed, amb)):
        G = pi(flag)
        top = G.spaces[-1]
        inside = form.E.contains_subspace(top)
        rep.record(inside, "contained in E_C", a, s, f"E_{{{form.p},{form.q}}}", G)
        if not inside:
            continue
        iso = form.isotropic(top)
        rep.record(iso, "C-isotropic", a, s, "symplectic form does not vanish on F_{m-1}", G)
        if not iso:
            continue
        try:
            data = spaltenstein_data(G, form)
        except TableauError as exc:
            rep.record(False, "spaltenstein C", a, s, str(exc), G)
            continue
        rep.record(data.tableau == expected, "spaltenstein C", a, s,
                   f"got {data.tableau.to_json()}, expected {expected.to_json()}", G)
        if seq is not None:
            got = data.shapes[::-1]
            rep.record(got == seq, "jordan sequence C", a, s, f"got {got}, expected {seq}", G)
        if G in images and images[G] != lines:
            rep.record(False, "injective", a, s, f"samples {images[G]} and {lines} collide", G)
        images.setdefault(G, lines)
    distinct = len(set(images.values()))
    rep.record(len(images) == distinct, "injective", a, "all",
               f"{distinct} distinct samples gave {len(images)} images")
    return rep


def random_subspace(rng: random.Random, V: Subspace, dim: int | None = None) -> Subspace:
    """Span of random combinations of a basis of V."""
    if dim is None:
        dim = rng.randint(0, V.dim)
    vectors = []
    for _ in range(dim):
        v = (ZERO,) * V.ambient_dim
        for b in V.basis:
            v = vadd(v, vscale(random_scalar(rng, 3), b))
        vectors.append(v)
    return Subspace(V.ambient_dim, vectors)


def isotropy_propagation(n: int, k: int, flavor: str = "D", instances: int = 100, seed=0) -> Report:
    """Random U with zU isotropic in the smaller space; U must be isotropic in the larger."""
    from .cups import diagrams_for_shape

    rep = Report(f"isotropy propagation {flavor} ({n - k},{k})")
    m = n // 2
    if flavor == "D" and (k < 2 or m < 2):
        rep.notes.append("needs k >= 2")
        return rep
    if flavor == "C" and k < 3:
        rep.notes.append("needs k >= 3")
        return rep
    form = make_form(flavor, n, k)
    amb = form.ambient
    small_n, small_k = n - 4, k - 2
    if small_n > 0:
        pool = diagrams_for_shape(small_n - small_k, small_k)
        if flavor == "C":
            pool = [b for b in pool if b.parity == "odd"]
        small = make_form(flavor, small_n, small_k, amb)
    else:
        pool, small = [], None
    for t in range(instances):
        rng = make_rng(seed, "propagation", flavor, n, k, t)
        if pool:
            b = rng.choice(pool)
            lines = sample_T_a(b, rng)
            flag = phi_inverse(lines, amb)
            top = flag.spaces[-1] if flavor == "D" else (flag.spaces[-2] if len(flag) > 1 else Subspace.zero(amb.dim))
            V = random_subspace(rng, top)
            if not small.isotropic(V):
                rep.record(False, "setup", b, t, "generated V is not isotropic")
                continue
        else:
            V = Subspace.zero(amb.dim)
        U = random_subspace(rng, V.preimage(amb.z))
        inside = form.E.contains_subspace(U)
        rep.record(inside, "contained", f"({n - k},{k})", t)
        if inside:
            rep.record(form.isotropic(U), "isotropic", f"({n - k},{k})", t,
                       f"U of dim {U.dim} is not isotropic")
    return rep
