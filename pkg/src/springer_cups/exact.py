"""Exact linear algebra over the Gaussian rationals Q(i).

Scalars are :class:`GaussianRational`; vectors are plain tuples of scalars;
subspaces are stored by their reduced row-echelon basis so that ``==`` on
:class:`Subspace` is set equality.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class GaussianRational:
    """The number (a + b*i) / d with integers a, b and d > 0 in lowest terms."""

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re=0, im=0):
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        self._set(re.numerator * (d // re.denominator), im.numerator * (d // im.denominator), d)

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> "GaussianRational":
        obj = object.__new__(cls)
        obj._set(a, b, d)
        return obj

    def _set(self, a, b, d):
        g = gcd(gcd(a, b), d)
        if g != 1:
            a //= g
            b //= g
            d //= g
        self._a, self._b, self._d = a, b, d

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self._a, -self._b, self._d)

    def norm(self) -> Fraction:
        """|z|^2 as a rational."""
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    def __bool__(self):
        return self._a != 0 or self._b != 0

    def __eq__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        return self._a == other._a and self._b == other._b and self._d == other._d

    def __hash__(self):
        return hash((self._a, self._b, self._d))

    def __neg__(self):
        return GaussianRational._raw(-self._a, -self._b, self._d)

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            other = as_scalar(other)
        d1, d2 = self._d, other._d
        if d1 == d2:
            return GaussianRational._raw(self._a + other._a, self._b + other._b, d1)
        return GaussianRational._raw(self._a * d2 + other._a * d1,
                                     self._b * d2 + other._b * d1, d1 * d2)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            other = as_scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return as_scalar(other) - self

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            other = as_scalar(other)
        a1, b1, a2, b2 = self._a, self._b, other._a, other._b
        return GaussianRational._raw(a1 * a2 - b1 * b2, a1 * b2 + a2 * b1, self._d * other._d)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        a, b, d = self._a, self._b, self._d
        n = a * a + b * b
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        # d / (a + bi) = d (a - bi) / n
        return GaussianRational._raw(d * a, -d * b, n)

    def __truediv__(self, other):
        if not isinstance(other, GaussianRational):
            other = as_scalar(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return as_scalar(other) * self.inverse()

    def __repr__(self):
        return f"GaussianRational({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


ZERO = GaussianRational._raw(0, 0, 1)
ONE = GaussianRational._raw(1, 0, 1)
I = GaussianRational._raw(0, 1, 1)


def as_scalar(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    if isinstance(x, complex):
        return GaussianRational(Fraction(x.real), Fraction(x.imag))
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"cannot convert {type(x).__name__} to GaussianRational")


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(z: GaussianRational) -> str:
    """Text form ``a/b+c/d*i``; zero parts are omitted."""
    re_, im_ = z.re, z.im
    if not im_:
        return _fmt_rational(re_)
    if im_ == 1:
        im_s = "i"
    elif im_ == -1:
        im_s = "-i"
    else:
        im_s = _fmt_rational(im_) + "*i"
    if not re_:
        return im_s
    sep = "" if im_s.startswith("-") else "+"
    return _fmt_rational(re_) + sep + im_s


_RAT_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def _parse_rational(part: str, text: str) -> Fraction:
    if not _RAT_RE.match(part):
        raise ValueError(f"malformed scalar: {text!r}")
    return Fraction(part)


def parse_scalar(text: str) -> GaussianRational:
    """Inverse of :func:`format_scalar`; accepts ``3``, ``-1/2*i``, ``1+2i``."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    if not s.endswith("i"):
        return GaussianRational(_parse_rational(s, text))
    body = s[:-1]
    cut = max(body.rfind("+"), body.rfind("-"))
    real_part, imag_part = (body[:cut], body[cut:]) if cut > 0 else ("", body)
    if imag_part.endswith("*"):
        imag_part = imag_part[:-1]
        if imag_part in ("", "+", "-"):
            raise ValueError(f"malformed scalar: {text!r}")
    if imag_part in ("", "+"):
        im_ = Fraction(1)
    elif imag_part == "-":
        im_ = Fraction(-1)
    else:
        im_ = _parse_rational(imag_part, text)
    re_ = _parse_rational(real_part, text) if real_part else Fraction(0)
    return GaussianRational(re_, im_)


# ---------------------------------------------------------------------------
# vectors and matrices

Vector = tuple


def vec(entries: Iterable) -> Vector:
    return tuple(as_scalar(x) for x in entries)


def unit(n: int, j: int) -> Vector:
    return tuple(ONE if t == j else ZERO for t in range(n))


def zero_vec(n: int) -> Vector:
    return (ZERO,) * n


def dot(u: Sequence, v: Sequence) -> GaussianRational:
    """Bilinear pairing sum u_j v_j (no conjugation)."""
    s = ZERO
    for x, y in zip(u, v):
        if x and y:
            s = s + x * y
    return s


def hermitian(u: Sequence, v: Sequence) -> GaussianRational:
    """<u, v> = sum u_j conj(v_j)."""
    s = ZERO
    for x, y in zip(u, v):
        if x and y:
            s = s + x * y.conjugate()
    return s


def vadd(u, v):
    return tuple(x + y if y else x for x, y in zip(u, v))


def vscale(c, v):
    c = as_scalar(c)
    return tuple(c * x if x else ZERO for x in v)


def vconj(v):
    return tuple(x.conjugate() for x in v)


def is_zero_vec(v) -> bool:
    return not any(v)


class Matrix:
    """Immutable dense matrix of Gaussian rationals."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        rows = tuple(vec(r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("need ncols for an empty matrix")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, key, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, n):
        return cls((unit(n, j) for j in range(n)), n)

    @classmethod
    def zeros(cls, r, c):
        return cls((zero_vec(c) for _ in range(r)), c)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        return f"Matrix({[[str(x) for x in r] for r in self.rows]})"

    def transpose(self) -> "Matrix":
        return Matrix(tuple(tuple(r[j] for r in self.rows) for j in range(self.ncols)), self.nrows)

    def conjugate(self) -> "Matrix":
        return Matrix((vconj(r) for r in self.rows), self.ncols)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.ncols:
            raise ValueError("dimension mismatch")
        nz = [(j, x) for j, x in enumerate(v) if x]
        out = []
        for r in self.rows:
            s = ZERO
            for j, x in nz:
                y = r[j]
                if y:
                    s = s + y * x
            out.append(s)
        return tuple(out)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        cols = [other.apply_col(j) for j in range(other.ncols)]
        return Matrix(tuple(tuple(dot(r, c) for c in cols) for r in self.rows), other.ncols)

    def apply_col(self, j):
        return tuple(r[j] for r in self.rows)

    def power(self, e: int) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("power of a non-square matrix")
        result = Matrix.identity(self.nrows)
        for _ in range(e):
            result = self @ result
        return result

    def rank(self) -> int:
        return len(_rref_rows(self.rows, self.ncols)[0])

    def kernel(self) -> "Subspace":
        return Subspace(self.ncols, _annihilator(_rref_rows(self.rows, self.ncols), self.ncols),
                        _canonical=False)

    def to_json(self):
        return [[format_scalar(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, data):
        return cls([[parse_scalar(x) for x in r] for r in data])


def _rref_rows(rows, ncols):
    """Reduced row-echelon form of a list of vectors.

    Returns ``(nonzero_rows, pivots)``; pivots are strictly increasing and
    every pivot entry is 1 with zeros above and below it.
    """
    work = [list(r) for r in rows if any(r)]
    out: list[list] = []
    pivots: list[int] = []
    col = 0
    while work and col < ncols:
        sel = None
        for idx, r in enumerate(work):
            if r[col]:
                sel = idx
                break
        if sel is None:
            col += 1
            continue
        prow = work.pop(sel)
        inv = prow[col].inverse()
        if inv != ONE:
            prow = [x * inv if x else ZERO for x in prow]
        nz = [j for j in range(col, ncols) if prow[j]]
        for r in work + out:
            c = r[col]
            if c:
                for j in nz:
                    r[j] = r[j] - c * prow[j]
        work = [r for r in work if any(r)]
        out.append(prow)
        pivots.append(col)
        col += 1
    return [tuple(r) for r in out], pivots


def rref(M: Matrix) -> Matrix:
    """Reduced row-echelon form; zero rows are kept at the bottom."""
    rows, _ = _rref_rows(M.rows, M.ncols)
    rows = rows + [zero_vec(M.ncols)] * (M.nrows - len(rows))
    return Matrix(rows, M.ncols)


def _annihilator(rref_result, n):
    """Basis of {w : dot(w, r) = 0 for every row r}, already in rref."""
    rows, pivots = rref_result
    piv_set = set(pivots)
    out = []
    for c in range(n):
        if c in piv_set:
            continue
        w = [ZERO] * n
        w[c] = ONE
        for r, p in zip(rows, pivots):
            x = r[c]
            if x:
                w[p] = -x
        out.append(w)
    # the vectors above are in rref up to reordering of pivots: pivot of the
    # vector built from free column c is its smallest nonzero index, which may
    # be a pivot column p < c; re-reduce to the canonical form
    return _rref_rows(out, n)[0]


class Subspace:
    """A linear subspace of Q(i)^n stored by its canonical rref basis."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = (), _canonical=True):
        vectors = [vec(v) for v in vectors]
        if any(len(v) != ambient_dim for v in vectors):
            raise ValueError("vector length does not match ambient dimension")
        rows, pivots = _rref_rows(vectors, ambient_dim)
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", tuple(rows))
        object.__setattr__(self, "pivots", tuple(pivots))

    def __setattr__(self, key, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def zero(cls, n):
        return cls(n, ())

    @classmethod
    def full(cls, n):
        return cls(n, (unit(n, j) for j in range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, basis={self.to_json()})"

    def _check(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(f"ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}")

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.ambient_dim, self.basis + other.basis)

    __add__ = sum

    def annihilator(self) -> "Subspace":
        """{w : dot(w, u) = 0 for all u in self}."""
        n = self.ambient_dim
        return Subspace(n, _annihilator((self.basis, self.pivots), n))

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        return self.annihilator().sum(other.annihilator()).annihilator()

    __and__ = intersect

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
        v = list(vec(v))
        for r, p in zip(self.basis, self.pivots):
            c = v[p]
            if c:
                for j in range(p, self.ambient_dim):
                    if r[j]:
                        v[j] = v[j] - c * r[j]
        return not any(v)

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains(v) for v in other.basis)

    __contains__ = contains

    def equals(self, other: "Subspace") -> bool:
        self._check(other)
        return self == other

    def coordinates(self, v: Sequence) -> tuple:
        """Coordinates of v in the rref basis (v must lie in the subspace)."""
        if not self.contains(v):
            raise ValueError("vector not in subspace")
        return tuple(v[p] for p in self.pivots)

    def perp_hermitian(self) -> "Subspace":
        n = self.ambient_dim
        return Subspace(n, _annihilator(_rref_rows([vconj(b) for b in self.basis], n), n))

    def perp_form(self, G: Matrix) -> "Subspace":
        """{v : v^T G u = 0 for all u in self}."""
        n = self.ambient_dim
        if G.shape != (n, n):
            raise ValueError("Gram matrix size does not match ambient dimension")
        rows = [G.apply(u) for u in self.basis]
        return Subspace(n, _annihilator(_rref_rows(rows, n), n))

    def image(self, M: Matrix) -> "Subspace":
        if M.ncols != self.ambient_dim:
            raise ValueError("dimension mismatch")
        return Subspace(M.nrows, (M.apply(b) for b in self.basis))

    def preimage(self, M: Matrix) -> "Subspace":
        """{v : M v in self}."""
        if M.nrows != self.ambient_dim:
            raise ValueError("dimension mismatch")
        ann = self.annihilator()
        Mt = M.transpose()
        rows = [Mt.apply(w) for w in ann.basis]  # w^T M as a vector
        return Subspace(M.ncols, _annihilator(_rref_rows(rows, M.ncols), M.ncols))

    def to_json(self):
        return [[format_scalar(x) for x in b] for b in self.basis]

    @classmethod
    def from_json(cls, data, ambient_dim=None):
        vectors = [[parse_scalar(x) for x in row] for row in data]
        if ambient_dim is None:
            if not vectors:
                raise ValueError("ambient dimension needed for the zero subspace")
            ambient_dim = len(vectors[0])
        return cls(ambient_dim, vectors)


def span(vectors, ambient_dim=None) -> Subspace:
    vectors = [vec(v) for v in vectors]
    if ambient_dim is None:
        ambient_dim = len(vectors[0])
    return Subspace(ambient_dim, vectors)


def preimage(M: Matrix, U: Subspace) -> Subspace:
    return U.preimage(M)


def perp_hermitian(U: Subspace) -> Subspace:
    return U.perp_hermitian()


def perp_form(U: Subspace, G: Matrix) -> Subspace:
    return U.perp_form(G)


class ProjLine:
    """A point (a : b) of P^1, normalised so the first nonzero coordinate is 1."""

    __slots__ = ("alpha", "beta")

    def __init__(self, alpha, beta):
        alpha, beta = as_scalar(alpha), as_scalar(beta)
        if not alpha and not beta:
            raise ValueError("(0:0) is not a point of P^1")
        if alpha:
            alpha, beta = ONE, beta / alpha
        else:
            beta = ONE
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    def __setattr__(self, key, value):
        raise AttributeError("ProjLine is immutable")

    @property
    def coords(self):
        return (self.alpha, self.beta)

    def perp(self) -> "ProjLine":
        return ProjLine(-self.beta.conjugate(), self.alpha.conjugate())

    def __eq__(self, other):
        return isinstance(other, ProjLine) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"ProjLine({self.alpha}:{self.beta})"

    def to_json(self):
        return [format_scalar(self.alpha), format_scalar(self.beta)]

    @classmethod
    def from_json(cls, data):
        return cls(parse_scalar(data[0]), parse_scalar(data[1]))


LINE_E = ProjLine(1, 0)
LINE_F = ProjLine(0, 1)
