"""The Klein correspondence between lines of P(V) and points of a quadric.

Bivector coordinates are always taken in the fixed basis order
(e01, e02, e03, e12, e13, e23).  The quadric carries the quadratic form

    omega(x) = x01*x23 - x02*x13 + x03*x12,

whose polarization pairs coordinate 0 with 5, 1 with 4 (negatively) and
2 with 3; the Gram pairing is hard-coded in that order.  Decomposable
bivectors (wedges of vectors of V) are exactly the zeros of omega, and every
construction here -- polarity, generating planes, linear complexes, null
polarities, reguli -- is exact linear algebra on top of that form.
"""

from .errors import (BadDimension, DegenerateConic, NotALine, NotAPlane,
                     NotAPoint, NotOnQuadric, NotSkew, SpecialComplex,
                     ZeroBivector)
from .linalg import (Subspace, annihilator, kernel_rows, solve_homogeneous,
                     span, unit_vector, vec_add, vec_is_zero, vec_scale)
from .sampling import integral_scalar, random_vector_in
from .scalars import (FieldSpec, RatFunc, Scalar, field_of, inv, is_zero,
                      small_scalars, sqrt_exact, _PONE, _padd, _pdeg_x,
                      _pdivexact, _pmul, _psqrt, _random_poly)

#: bivector coordinate order: index -> (sigma, tau)
BASIS_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
PAIR_INDEX = {p: i for i, p in enumerate(BASIS_PAIRS)}


def wedge(u, v) -> tuple:
    """Exterior product of two vectors of V, as a 6-coordinate bivector."""
    return (u[0] * v[1] - u[1] * v[0],
            u[0] * v[2] - u[2] * v[0],
            u[0] * v[3] - u[3] * v[0],
            u[1] * v[2] - u[2] * v[1],
            u[1] * v[3] - u[3] * v[1],
            u[2] * v[3] - u[3] * v[2])


def omega(x) -> Scalar:
    """The quadratic form of the quadric."""
    return x[0] * x[5] - x[1] * x[4] + x[2] * x[3]


def polar_form(x, y) -> Scalar:
    """Polarization of omega: omega(x+y) - omega(x) - omega(y)."""
    return (x[0] * y[5] + x[5] * y[0]
            - x[1] * y[4] - x[4] * y[1]
            + x[2] * y[3] + x[3] * y[2])


def gram_image(x) -> tuple:
    """The linear form <x, .> as a coordinate row."""
    return (x[5], -x[4], x[3], x[2], -x[1], x[0])


def perp(x: Subspace) -> Subspace:
    """Polarity of the quadric: the orthogonal complement under the polar form."""
    if x.ambient_dim != 6:
        raise BadDimension("polarity lives in the 6-dimensional bivector space")
    return solve_homogeneous(x.field, 6, [gram_image(r) for r in x.ff_rows])


# --------------------------------------------------------------------------
# The line embedding and its inverse.

def _line_rep(m: Subspace) -> tuple:
    if m.ambient_dim != 4 or m.dim != 2:
        raise NotALine(f"expected a line of V, got dim {m.dim} of {m.ambient_dim}")
    return wedge(m.ff_rows[0], m.ff_rows[1])


def pluecker_rep(m: Subspace) -> tuple:
    """The bivector of the canonical basis of a line (a quadric point)."""
    return _line_rep(m)


def pluecker(m: Subspace) -> Subspace:
    """The line embedding: a line of V to a point of the bivector space."""
    return span(m.field, 6, [_line_rep(m)])


def pluecker_inverse(p) -> Subspace:
    """The line of V whose image is the given quadric point.

    Accepts a 1-dimensional subspace or a raw bivector; the column space of
    the alternating 4x4 coordinate matrix of the bivector is the line.
    """
    if isinstance(p, Subspace):
        if p.ambient_dim != 6 or p.dim != 1:
            raise NotAPoint("expected a point of the bivector space")
        field, x = p.field, p.ff_rows[0]
    else:
        x = tuple(p)
        if vec_is_zero(x):
            raise ZeroBivector("the zero bivector has no line")
        field = field_of(next(c for c in x if c))
    if vec_is_zero(x):
        raise ZeroBivector("the zero bivector has no line")
    if not is_zero(omega(x)):
        raise NotOnQuadric("bivector is not decomposable")
    zero = field.zero()
    mat = [[zero] * 4 for _ in range(4)]
    for idx, (s, t) in enumerate(BASIS_PAIRS):
        mat[s][t] = x[idx]
        mat[t][s] = -x[idx]
    cols = [tuple(mat[r][c] for r in range(4)) for c in range(4)]
    line = span(field, 4, cols)
    if line.dim != 2:
        raise NotOnQuadric("coordinate matrix does not have rank 2")
    return line


def lines_meet(m: Subspace, n: Subspace, cross_check: bool = False) -> bool:
    """True iff the two lines of V have a common point.

    Equivalent to their image points being conjugate under the polarity;
    with cross_check=True the meet dimension is verified independently.
    """
    conjugate = is_zero(polar_form(_line_rep(m), _line_rep(n)))
    if cross_check:
        assert conjugate == (m.meet(n).dim == 1)
    return conjugate


# --------------------------------------------------------------------------
# Generating planes of the quadric.

def star_plane(p: Subspace) -> Subspace:
    """The quadric plane whose points are the images of all lines through p."""
    if p.ambient_dim != 4 or p.dim != 1:
        raise NotAPoint("expected a point of V")
    rep = p.ff_rows[0]
    pivot = p.pivots[0]
    vecs = [wedge(rep, unit_vector(p.field, 4, i)) for i in range(4) if i != pivot]
    return span(p.field, 6, vecs)


def ruled_plane(z: Subspace) -> Subspace:
    """The quadric plane whose points are the images of all lines inside z."""
    if z.ambient_dim != 4 or z.dim != 3:
        raise NotAPlane("expected a plane of V")
    r0, r1, r2 = z.ff_rows
    return span(z.field, 6, [wedge(r0, r1), wedge(r0, r2), wedge(r1, r2)])


def pencil_gamma_line(p: Subspace, z: Subspace) -> Subspace:
    """Image of the pencil of lines through p inside z: a line on the quadric.

    Spanned by wedge(p, z1), wedge(p, z2) for any z1, z2 completing p in z.
    """
    if p.dim != 1:
        raise NotAPoint("pencil centre must be a point")
    if z.dim != 3:
        raise NotAPlane("pencil carrier must be a plane")
    if not z.contains(p):
        raise NotAPoint("pencil centre must lie in the carrier plane")
    rep = p.ff_rows[0]
    vecs = [wedge(rep, r) for r in z.ff_rows]
    line = span(p.field, 6, vecs)
    assert line.dim == 2
    return line


# --------------------------------------------------------------------------
# Linear complexes and null polarities.

class LinearComplex:
    """A hyperplane section of the quadric; special iff the hyperplane is
    tangent (its pole lies on the quadric).  ``psi`` is a defining linear
    form of the hyperplane, used for constant-time membership tests."""

    __slots__ = ("hyperplane", "kind", "pole", "axis", "psi")

    KIND_GENERAL = "general"
    KIND_SPECIAL = "special"

    def __init__(self, hyperplane: Subspace, kind: str, pole: Subspace, axis, psi):
        self.hyperplane = hyperplane
        self.kind = kind
        self.pole = pole
        self.axis = axis
        self.psi = psi

    def form_value(self, x) -> Scalar:
        acc = self.psi[0] * x[0]
        for c, v in zip(self.psi[1:], x[1:]):
            acc = acc + c * v
        return acc

    def contains_line(self, m: Subspace) -> bool:
        return is_zero(self.form_value(_line_rep(m)))

    def to_json(self) -> dict:
        return {"W": self.hyperplane.to_json(), "kind": self.kind}


def complex_from_hyperplane(w: Subspace) -> LinearComplex:
    """Classify the hyperplane section of the quadric cut out by w."""
    if w.ambient_dim != 6 or w.dim != 5:
        raise BadDimension(f"expected a hyperplane of the bivector space, got dim {w.dim}")
    # the Gram pairing is an involution, so the pole of {psi . x = 0} is
    # simply gram_image(psi); no linear solve is needed
    psi = annihilator(w).ff_rows[0]
    rep = gram_image(psi)
    pole = span(w.field, 6, [rep])
    if is_zero(omega(rep)):
        return LinearComplex(w, LinearComplex.KIND_SPECIAL, pole,
                             pluecker_inverse(pole), psi)
    return LinearComplex(w, LinearComplex.KIND_GENERAL, pole, None, psi)


class NullPolarity:
    """The point-to-plane correlation whose null lines form a general complex."""

    __slots__ = ("field", "psi")

    def __init__(self, field: FieldSpec, psi: tuple):
        self.field = field
        self.psi = psi

    def _form_on_vector(self, p0, v) -> Scalar:
        w = wedge(p0, v)
        acc = self.psi[0] * w[0]
        for c, x in zip(self.psi[1:], w[1:]):
            acc = acc + c * x
        return acc

    def plane_of(self, p: Subspace) -> Subspace:
        """The polar plane of a point; always passes through the point."""
        if p.ambient_dim != 4 or p.dim != 1:
            raise NotAPoint("expected a point of V")
        p0 = p.rows[0]
        row = tuple(self._form_on_vector(p0, unit_vector(self.field, 4, j))
                    for j in range(4))
        plane = solve_homogeneous(self.field, 4, [row])
        assert plane.dim == 3
        return plane

    def is_null_line(self, m: Subspace) -> bool:
        x = _line_rep(m)
        acc = self.psi[0] * x[0]
        for c, v in zip(self.psi[1:], x[1:]):
            acc = acc + c * v
        return is_zero(acc)


def null_polarity(complex_: LinearComplex) -> NullPolarity:
    if complex_.kind != LinearComplex.KIND_GENERAL:
        raise SpecialComplex("special complexes do not define a null polarity")
    return NullPolarity(complex_.hyperplane.field, complex_.psi)


# --------------------------------------------------------------------------
# Reguli.

class Regulus:
    """A plane section of the quadric that is a nondegenerate conic, together
    with three known member lines."""

    __slots__ = ("plane", "lines")

    def __init__(self, plane: Subspace, lines: tuple):
        self.plane = plane
        self.lines = lines


def _conic_nondegenerate(e: Subspace) -> bool:
    field = e.field
    if field.characteristic != 2:
        b = [[polar_form(r1, r2) for r2 in e.ff_rows] for r1 in e.ff_rows]
        det = (b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1])
               - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
               + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]))
        return not is_zero(det)
    # char 2: the restricted polar form is alternating on an odd-dimensional
    # space, so the radical is at least a point (the nucleus); the section is
    # a nondegenerate conic iff the radical is exactly the nucleus and the
    # nucleus is off the quadric.  Work in plane coordinates: 3x3 only.
    rows = e.ff_rows
    gram = [[polar_form(r1, r2) for r2 in rows] for r1 in rows]
    radical_coords = kernel_rows(e.field, 3, gram)
    if len(radical_coords) != 1:
        return False
    c1, c2, c3 = radical_coords[0]
    nucleus = vec_add(vec_add(vec_scale(c1, rows[0]), vec_scale(c2, rows[1])),
                      vec_scale(c3, rows[2]))
    return not is_zero(omega(nucleus))


def regulus_through(l1: Subspace, l2: Subspace, l3: Subspace) -> Regulus:
    """The regulus spanned by three pairwise skew lines."""
    for a, b in ((l1, l2), (l1, l3), (l2, l3)):
        if lines_meet(a, b):
            raise NotSkew("the three lines must be pairwise skew")
    pts = [_line_rep(l) for l in (l1, l2, l3)]
    e = span(l1.field, 6, pts)
    if e.dim != 3:
        raise DegenerateConic("image points do not span a plane")
    if not _conic_nondegenerate(e):
        raise DegenerateConic("plane section of the quadric is degenerate")
    return Regulus(e, (l1, l2, l3))


def transversal(p: Subspace, l1: Subspace, l2: Subspace) -> Subspace:
    """The unique line through p meeting both of two skew lines (p on neither)."""
    t = p.join(l1).meet(p.join(l2))
    assert t.dim == 2
    return t


def chord_second_points(plane: Subspace, x0):
    """Second quadric points on chords through x0, deterministically.

    Chord directions run over small-coefficient combinations of the plane
    basis; each non-tangent chord meets the section again in
    omega(y)*x0 - <x0, y>*y, which enumerates the whole conic.
    """
    field = plane.field
    rows = plane.ff_rows
    values = []
    gen = small_scalars(field)
    while len(values) < 24:
        values.append(next(gen))
        for c1 in values:
            for c2 in values:
                for c3 in values:
                    y = vec_add(vec_add(vec_scale(c1, rows[0]),
                                        vec_scale(c2, rows[1])),
                                vec_scale(c3, rows[2]))
                    if vec_is_zero(y):
                        continue
                    oy, pxy = omega(y), polar_form(x0, y)
                    if is_zero(oy):
                        cand = y
                    elif is_zero(pxy):
                        continue
                    else:
                        cand = vec_add(vec_scale(oy, x0), vec_scale(-pxy, y))
                    if not vec_is_zero(cand):
                        yield cand


def regulus_opposite(r: Regulus, seed_member: Subspace | None = None) -> Regulus:
    """The opposite regulus: the section by the polar plane; its members are
    the common transversals of the original members.

    A known transversal may be passed as seed_member; otherwise one is
    constructed.  Further members come from chords of the polar section.
    """
    e2 = perp(r.plane)
    l1, l2, l3 = r.lines
    field = l3.field
    if seed_member is not None and e2.contains_vector(_line_rep(seed_member)):
        members = [seed_member]
    else:
        p = span(field, 4, [l3.ff_rows[0]])
        first = transversal(p, l1, l2)
        assert e2.contains_vector(_line_rep(first))
        members = [first]
    x0 = _line_rep(members[0])
    for cand in chord_second_points(e2, x0):
        line = pluecker_inverse(cand)
        if line not in members:
            members.append(line)
        if len(members) == 3:
            break
    return Regulus(e2, tuple(members))


def regulus_contains(r: Regulus, m: Subspace) -> bool:
    return r.plane.contains_vector(_line_rep(m))


def regulus_sample_members(r: Regulus, rng, bound: int, count: int) -> list[Subspace]:
    """Sample member lines by the chord construction through a known point.

    Within the regulus plane, the second quadric point on the chord through
    x0 in direction y is omega(y)*x0 - <x0, y>*y, which parametrizes the
    whole conic rationally.
    """
    x0 = _line_rep(r.lines[0])
    members = [r.lines[0]]
    attempts = 0
    while len(members) < count and attempts < 40 * count:
        attempts += 1
        y = random_vector_in(r.plane, rng, bound)
        oy, pxy = omega(y), polar_form(x0, y)
        if is_zero(oy):
            x = y  # y itself is a conic point
        elif is_zero(pxy):
            continue  # chord tangent at x0
        else:
            x = vec_add(vec_scale(oy, x0), vec_scale(-pxy, y))
        if vec_is_zero(x):
            continue
        line = pluecker_inverse(x)
        if line not in members:
            members.append(line)
    return members[:count]


# --------------------------------------------------------------------------
# Exact quadratic solving and quadric-point search.

def solve_quadratic(field: FieldSpec, a: Scalar, b: Scalar, c: Scalar):
    """Roots of a*x^2 + b*x + c over the field.

    Returns (roots, decided).  decided is False only in characteristic 2
    when the Artin-Schreier step cannot be settled exactly (non-polynomial
    right-hand side); callers must then fall back to sampling.
    """
    if is_zero(a):
        if is_zero(b):
            return ([field.zero()] if is_zero(c) else []), True
        return [-c * inv(b)], True
    if field.characteristic != 2:
        disc = b * b - 4 * a * c
        s = sqrt_exact(disc)
        if s is None:
            return [], True
        half = inv(2 * a)
        roots = [(-b + s) * half]
        if not is_zero(s):
            roots.append((-b - s) * half)
        return roots, True
    if is_zero(b):
        s = sqrt_exact(c * inv(a))
        return ([s] if s is not None else []), True
    # x = (b/a) w turns the equation into w^2 + w = a*c/b^2
    scale = b * inv(a)
    d = a * c * inv(b * b)
    w, decided = artin_schreier_root(d)
    if not decided:
        return [], False
    if w is None:
        return [], True
    r1 = scale * w
    return [r1, r1 + scale], True


def artin_schreier_root(d):
    """A solution w of w^2 + w = d over GF(2)(x, y), if one exists.

    Returns (root or None, decided).  Any solution a/b in lowest terms has
    a(a + b) coprime to b, so the reduced right-hand side must have a square
    denominator; when it does not, there is no root.  Polynomial right-hand
    sides are decided exactly by greedy descent on the leading monomial
    (w^2 + w is additive in w, and the top monomial of any image is a
    square); the remaining cases are undecided.
    """
    if isinstance(d, RatFunc) and not d:
        return d.field.zero(), True
    if d.den != _PONE:
        if _psqrt(d.den) is None:
            return None, True
        return None, False
    field = d.field
    w: dict = {}
    r = dict(d.num)
    while r:
        e = _pdeg_x(r)
        m = r[e]
        j = m.bit_length() - 1
        if e == 0 and j == 0:
            return None, True  # remaining 1: no cube roots of unity here
        if e & 1 or j & 1:
            return None, True  # leading monomial is not a square
        mono = {e: 1 << j}
        root_mono = _psqrt(mono)
        w = _padd(w, root_mono)
        r = _padd(r, _padd(mono, root_mono))
    return RatFunc(field, w, _PONE), True


def line_quadric_point(u, v, rng=None, bound: int = 2, samples: int = 0):
    """Search for a quadric point on the line spanned by bivectors u, v.

    Returns (status, witness) with status one of "exact-none", "found",
    "sampled-none".  The point set is {v} + {u + t*v}; the restriction of
    omega is the binary form omega(u) + t*<u,v> + t^2*omega(v), which is
    solved exactly whenever possible.
    """
    ou, ov, p = omega(u), omega(v), polar_form(u, v)
    if is_zero(ou):
        return "found", u
    if is_zero(ov):
        return "found", v
    field = field_of(ou)
    roots, decided = solve_quadratic(field, ov, p, ou)
    for t in roots:
        w = vec_add(u, vec_scale(t, v))
        if any(w):  # dependent u, v can degenerate to the zero vector
            return "found", w
    if decided:
        return "exact-none", None
    # undecided only in characteristic 2: scan polynomial parameters against
    # the denominator-cleared restriction of the form
    dd = _pmul(_pmul(ou.den, p.den), ov.den)
    c0 = _pmul(ou.num, _pdivexact(dd, ou.den))
    b0 = _pmul(p.num, _pdivexact(dd, p.den))
    a0 = _pmul(ov.num, _pdivexact(dd, ov.den))
    for _ in range(samples):
        tp = _random_poly(rng, bound)
        if not tp:
            continue
        val = _padd(c0, _padd(_pmul(tp, b0), _pmul(_pmul(tp, tp), a0)))
        if not val:
            t = RatFunc(field, tp, _PONE, normalized=True)
            w = vec_add(u, vec_scale(t, v))
            if any(w):
                return "found", w
    return "sampled-none", None


def find_quadric_point(sub: Subspace, rng, bound: int = 2, attempts: int = 32):
    """Search for a quadric point inside a subspace of the bivector space.

    Slices the subspace by random chords and solves the restricted quadratic
    exactly where possible.  Returns a witness bivector or None; None means
    "not found within budget", never a proof of emptiness.
    """
    if sub.dim == 0:
        return None
    for r in sub.ff_rows:
        if is_zero(omega(r)):
            return r
    if sub.dim == 1:
        return None
    for _ in range(attempts):
        y = random_vector_in(sub, rng, bound)
        z = random_vector_in(sub, rng, bound)
        oz = omega(z)
        if is_zero(oz):
            return z
        status, witness = line_quadric_point(y, z)
        if status == "found":
            return witness
    return None
