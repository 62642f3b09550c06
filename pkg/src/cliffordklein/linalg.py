"""Exact linear algebra over the active base field.

Subspaces of the 4-dimensional ambient space V and the 6-dimensional space of
bivectors are kept in reduced row echelon form, which makes the stored basis
a unique canonical representative: two subspaces are equal iff their stored
bases are identical.  Vectors are plain tuples of scalars.

Elimination is fraction-free (one-step Gauss-Jordan with exact division by
the previous pivot) over denominator-cleared rows.  Every subspace also
keeps the fraction-free scaled basis rows (``ff_rows``); joins, meets,
kernels and wedge computations chain through those, so denominators and the
polynomial gcds they require appear only when a final canonical basis is
normalized.
"""

from fractions import Fraction
from math import gcd, lcm

from .errors import AmbientMismatch
from .scalars import (FieldSpec, RatFunc, Scalar, inv,
                      _PONE, _padd, _pdivexact, _pgcd, _pmul)

Vector = tuple


# --------------------------------------------------------------------------
# Small vector helpers.

def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c: Scalar, u: Vector) -> Vector:
    return tuple(c * a for a in u)


def vec_dot(u: Vector, v: Vector) -> Scalar:
    acc = u[0] * v[0]
    for a, b in zip(u[1:], v[1:]):
        acc = acc + a * b
    return acc


def vec_is_zero(u: Vector) -> bool:
    return not any(u)


def unit_vector(field: FieldSpec, n: int, i: int) -> Vector:
    zero, one = field.zero(), field.one()
    return tuple(one if j == i else zero for j in range(n))


# --------------------------------------------------------------------------
# Fraction-free Gauss-Jordan elimination.
#
# The working representation is field-specific: plain integers over the
# rationals, sparse polynomial dicts over GF(2)(x, y).

def _int_rows(rows) -> list[list[int]]:
    out = []
    for row in rows:
        row = [Fraction(x) if not isinstance(x, int) else x for x in row]
        m = lcm(*(x.denominator if isinstance(x, Fraction) else 1 for x in row))
        ints = [int(x * m) for x in row]
        g = 0
        for x in ints:
            g = gcd(g, x)
        out.append([x // g for x in ints] if g > 1 else ints)
    return out


def _poly_rows(rows) -> list[list[dict]]:
    out = []
    for row in rows:
        den = _PONE
        for x in row:
            if x.den != _PONE:
                den = _pmul(den, x.den)
        cleared = []
        for x in row:
            if x.den == _PONE:
                cleared.append(_pmul(x.num, den) if den != _PONE else x.num)
            else:
                cleared.append(_pmul(x.num, _pdivexact(den, x.den)))
        out.append(cleared)
    return out


def _bareiss_jordan_int(m: list[list[int]]):
    # one-step fraction-free Gauss-Jordan; all divisions are exact, and at
    # the end every pivot entry equals the final pivot value
    nrows, ncols = len(m), len(m[0])
    pivots = []
    r, prev = 0, 1
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        for i in range(nrows):
            if i == r:
                continue
            row, f = m[i], m[i][c]
            if f:
                prow = m[r]
                m[i] = [(piv * row[j] - f * prow[j]) // prev for j in range(ncols)]
            elif prev != 1:
                m[i] = [(piv * x) // prev for x in row]
            elif piv != 1:
                m[i] = [piv * x for x in row]
        prev = piv
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m[:r], pivots, prev


def _clmul(a: int, b: int) -> int:
    # carry-less product; loop over the sparser operand's set bits
    if a.bit_count() > b.bit_count():
        a, b = b, a
    r = 0
    while a:
        low = a & -a
        r ^= b << (low.bit_length() - 1)
        a &= a - 1
    return r


def _ydivmod_int(a: int, b: int) -> tuple[int, int]:
    db = b.bit_length()
    q = 0
    while a.bit_length() >= db:
        shift = a.bit_length() - db
        q |= 1 << shift
        a ^= b << shift
    return q, a


def _packed_divexact(f: int, g: int, stride: int) -> int:
    if not f:
        return 0
    q = 0
    dgx = (g.bit_length() - 1) // stride
    gl = g >> (dgx * stride)
    while f:
        dfx = (f.bit_length() - 1) // stride
        fl = f >> (dfx * stride)
        qc, rem = _ydivmod_int(fl, gl)
        if rem or dfx < dgx:
            raise ArithmeticError("inexact packed polynomial division")
        shift = (dfx - dgx) * stride
        q |= qc << shift
        f ^= _clmul(g, qc) << shift
    return q


def _pack_poly(f: dict, stride: int) -> int:
    acc = 0
    for e, mask in f.items():
        acc |= mask << (e * stride)
    return acc


def _unpack_poly(v: int, stride: int) -> dict:
    f = {}
    mask = (1 << stride) - 1
    e = 0
    while v:
        m = v & mask
        if m:
            f[e] = m
        v >>= stride
        e += 1
    return f


def _bareiss_jordan_poly(rows: list[list[dict]]):
    # entries are packed into single integers (one y-block per x power), so
    # the elimination arithmetic is carry-less big-integer work; the stride
    # covers every minor's y-degree, which is at most the sum over rows of
    # the largest y-degree per row
    nrows, ncols = len(rows), len(rows[0])
    # minors multiply at most min(nrows, ncols) entries from distinct rows
    per_row = sorted((max((m.bit_length() for x in row for m in x.values()),
                          default=0) for row in rows), reverse=True)
    ybound = 8 + sum(per_row[:min(nrows, ncols)])
    stride = ybound * 2
    m = [[_pack_poly(x, stride) for x in row] for row in rows]
    pivots = []
    r, prev = 0, 1
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        one_prev = prev == 1
        for i in range(nrows):
            if i == r:
                continue
            row, f = m[i], m[i][c]
            if f:
                prow = m[r]
                new = [_clmul(piv, row[j]) ^ _clmul(f, prow[j])
                       for j in range(ncols)]
                m[i] = new if one_prev else [
                    _packed_divexact(x, prev, stride) for x in new]
            elif not one_prev:
                m[i] = [_packed_divexact(_clmul(piv, x), prev, stride)
                        for x in row]
            elif piv != 1:
                m[i] = [_clmul(piv, x) for x in row]
        prev = piv
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    out = [[_unpack_poly(x, stride) for x in row] for row in m[:r]]
    return out, pivots, _unpack_poly(prev, stride)


def _is_poly_field(field: FieldSpec, rows) -> bool:
    if field is not None:
        return field.characteristic == 2
    sample = next(x for row in rows for x in row if x)
    return isinstance(sample, RatFunc)


def _eliminate(field: FieldSpec, rows):
    """Fraction-free Gauss-Jordan on scalar rows.

    Returns (matrix, pivots, pivot_value, poly_mode) with matrix =
    pivot_value * (canonical RREF) in the cleared representation.
    """
    rows = [row for row in rows if any(row)]
    if not rows:
        return [], [], None, False
    if any(len(r) != len(rows[0]) for r in rows):
        raise AmbientMismatch("rows of differing length")
    if _is_poly_field(field, rows):
        m, pivots, prev = _bareiss_jordan_poly(_poly_rows(rows))
        return m, pivots, prev, True
    m, pivots, prev = _bareiss_jordan_int(_int_rows(rows))
    return m, pivots, prev, False


def _wrap_ff(field: FieldSpec, m, poly_mode: bool) -> list[tuple]:
    if poly_mode:
        return [tuple(RatFunc(field, x, _PONE, normalized=True) for x in row)
                for row in m]
    return [tuple(row) for row in m]


def rref(rows, field: FieldSpec | None = None):
    """Reduced row echelon form; returns (rows, pivot_columns).

    Pivots are 1 with zeros above and below, pivot columns strictly
    increasing, zero rows dropped.
    """
    canonical, pivots, _ = _rref_full(field, rows)
    return canonical, pivots


def _rref_full(field: FieldSpec | None, rows):
    m, pivots, _, poly_mode = _eliminate(field, rows)
    if not m:
        return [], [], []
    canonical = []
    ff = []
    # the ff copy is the canonical row with denominators cleared: it spans
    # the same row but stays primitive, so scale factors never compound
    # through chained constructions
    if poly_mode:
        fld = field if field is not None else next(
            x for row in rows for x in row if x).field
        pone = _PONE
        for row, p in zip(m, pivots):
            piv = row[p]
            canon = [RatFunc(fld, x, piv) for x in row]
            canonical.append(tuple(canon))
            common = _PONE
            for e in canon:
                if e.den != _PONE:
                    g = _pgcd(common, e.den)
                    common = _pmul(_pdivexact(common, g), e.den)
            if common == _PONE:
                ff.append(tuple(RatFunc(fld, e.num, pone,
                                        normalized=True) for e in canon))
            else:
                ff.append(tuple(
                    RatFunc(fld, _pmul(e.num, _pdivexact(common, e.den)),
                            pone, normalized=True) for e in canon))
    else:
        for row, p in zip(m, pivots):
            piv = row[p]
            canon = [Fraction(x, piv) for x in row]
            canonical.append(tuple(canon))
            common = lcm(*(e.denominator for e in canon))
            ff.append(tuple(int(e * common) for e in canon))
    return canonical, pivots, ff


def rref_naive(rows):
    """Plain scalar-arithmetic elimination; the independent oracle for rref."""
    m = [list(r) for r in rows]
    if m and any(len(r) != len(m[0]) for r in m):
        raise AmbientMismatch("rows of differing length")
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv = inv(m[r][c])
        m[r] = [x * piv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def rank(rows, field: FieldSpec | None = None) -> int:
    return len(_eliminate(field, rows)[1])


def kernel_rows(field: FieldSpec, ambient_dim: int, rows) -> list[tuple]:
    """A fraction-free spanning set of {x : row . x = 0 for all rows}.

    The returned rows are scalar tuples without denominators (scaled by the
    final elimination pivot); they are not canonical.
    """
    for r in rows:
        if len(r) != ambient_dim:
            raise AmbientMismatch(f"row of length {len(r)} in ambient {ambient_dim}")
    m, pivots, prev, poly_mode = _eliminate(field, rows)
    if not m:
        poly_mode = field.characteristic == 2
    free = [c for c in range(ambient_dim) if c not in pivots]
    if poly_mode:
        zero = {}
        pone = prev if prev is not None else _PONE
        neg = lambda x: x  # characteristic 2
    else:
        zero = 0
        pone = prev if prev is not None else 1
        neg = lambda x: -x
    basis = []
    for f in free:
        v = [zero] * ambient_dim
        v[f] = pone
        for row, p in zip(m, pivots):
            if row[f]:
                v[p] = neg(row[f])
        basis.append(v)
    return _wrap_ff(field, basis, poly_mode)


# --------------------------------------------------------------------------
# Canonical subspaces.

class Subspace:
    """A linear subspace in canonical (RREF) form.

    ``rows`` is the canonical pivot-1 basis used for equality and reduction;
    ``ff_rows`` is a denominator-free scaled copy of the same basis used to
    chain further exact computations cheaply.
    """

    __slots__ = ("field", "ambient_dim", "rows", "pivots", "ff_rows")

    def __init__(self, field: FieldSpec, ambient_dim: int, rows, canonical: bool = False):
        for r in rows:
            if len(r) != ambient_dim:
                raise AmbientMismatch(f"vector of length {len(r)} in ambient {ambient_dim}")
        if canonical:
            self.rows = tuple(tuple(r) for r in rows)
            self.pivots = tuple(next(i for i, x in enumerate(r) if x) for r in self.rows)
            self.ff_rows = self.rows
        else:
            reduced, pivots, ff = _rref_full(field, rows)
            self.rows = tuple(reduced)
            self.pivots = tuple(pivots)
            self.ff_rows = tuple(ff)
        self.field = field
        self.ambient_dim = ambient_dim

    @property
    def dim(self) -> int:
        """Vector dimension (projective dimension is one less)."""
        return len(self.rows)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.rows == other.rows

    def __hash__(self):
        return hash((self.ambient_dim, self.rows))

    def __repr__(self):
        coords = "; ".join(",".join(str(x) for x in r) for r in self.rows)
        return f"Subspace({self.dim} of {self.ambient_dim}: {coords})"

    def _check_ambient(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise AmbientMismatch(f"{self.ambient_dim} vs {other.ambient_dim}")

    def reduce_vector(self, v: Vector) -> Vector:
        """Eliminate v against the canonical basis (the canonical residue)."""
        if len(v) != self.ambient_dim:
            raise AmbientMismatch(f"vector of length {len(v)} in ambient {self.ambient_dim}")
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            if v[p]:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return tuple(v)

    def contains_vector(self, v: Vector) -> bool:
        if len(v) != self.ambient_dim:
            raise AmbientMismatch(f"vector of length {len(v)} in ambient {self.ambient_dim}")
        if not any(v):
            return True
        if not self.rows:
            return False
        stacked = list(self.ff_rows) + [tuple(v)]
        return rank(stacked, self.field) == self.dim

    def contains(self, other: "Subspace") -> bool:
        self._check_ambient(other)
        if other.dim == 0:
            return True
        stacked = list(self.ff_rows) + list(other.ff_rows)
        return rank(stacked, self.field) == self.dim

    def coordinates_of(self, v: Vector) -> Vector | None:
        """Coefficients of v in the canonical basis, or None if v is outside."""
        if not vec_is_zero(self.reduce_vector(v)):
            return None
        return tuple(v[p] for p in self.pivots)

    def join(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        return Subspace(self.field, self.ambient_dim,
                        self.ff_rows + other.ff_rows)

    def meet(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        ann = (kernel_rows(self.field, self.ambient_dim, self.ff_rows)
               + kernel_rows(self.field, self.ambient_dim, other.ff_rows))
        return solve_homogeneous(self.field, self.ambient_dim, ann)

    def complement_columns(self) -> tuple[int, ...]:
        """Ambient coordinate positions not used as pivots."""
        return tuple(c for c in range(self.ambient_dim) if c not in self.pivots)

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.rows]


def span(field: FieldSpec, ambient_dim: int, vectors) -> Subspace:
    """Canonical subspace spanned by the given vectors."""
    return Subspace(field, ambient_dim, list(vectors))


def zero_space(field: FieldSpec, ambient_dim: int) -> Subspace:
    return Subspace(field, ambient_dim, [], canonical=True)


def full_space(field: FieldSpec, ambient_dim: int) -> Subspace:
    rows = [unit_vector(field, ambient_dim, i) for i in range(ambient_dim)]
    return Subspace(field, ambient_dim, rows, canonical=True)


def solve_homogeneous(field: FieldSpec, ambient_dim: int, rows) -> Subspace:
    """The full solution space {x : row . x = 0 for every row}."""
    return Subspace(field, ambient_dim, kernel_rows(field, ambient_dim, rows))


def annihilator(x: Subspace) -> Subspace:
    """{v : r . v = 0 for every basis row r}; an involution on subspaces."""
    return solve_homogeneous(x.field, x.ambient_dim, x.ff_rows)
