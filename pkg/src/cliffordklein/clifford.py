"""Parallelisms of P(V) from planes external to the quadric of lines.

For an algebra H with conjugation, the alternating map (g, h) |-> conj(g)*h
taken modulo scalars induces a linear map kappa on bivectors whose kernel C
is a plane; the companion map with (g, h) |-> g*conj(h) yields C'.  Both
planes are external to the quadric of lines exactly when H has no zero
divisors, and they induce the left and right translation parallelisms:
M is parallel to N iff the solids C + M^gamma and C + N^gamma coincide.

Externality of a plane is certified at an explicit level (definite,
frobenius-independent, or sampled with a recorded budget), reusing the
algebra's own division certificate.
"""

import hashlib
import random

from .errors import (BadConfiguration, BadForm, KernelDimensionUnexpected,
                     MeetNotAPoint, NonCollinearRequired, NotALine,
                     NotAPoint, NotDivisionAlgebra, PreconditionFailed,
                     SameClass, ZeroElement)
from .kleingeom import (LinearComplex, Regulus, complex_from_hyperplane,
                        find_quadric_point, line_quadric_point, lines_meet,
                        omega, perp, pluecker, pluecker_inverse, pluecker_rep,
                        polar_form, regulus_opposite, star_plane, wedge)
from .linalg import (Subspace, kernel_rows, rank, solve_homogeneous, span,
                     unit_vector, vec_add, vec_dot, vec_is_zero, vec_scale)
from .qalg import (CASE_B, VALIDATION_ASSERT, VALIDATION_DEFINITE,
                   VALIDATION_FROBENIUS, Algebra, exterior_square,
                   left_translation, mat_apply)
from .sampling import random_point, random_vector
from .scalars import (RATIONALS_KIND, Scalar, gf2_square_class_components,
                      inv, is_zero)

EXTERNALITY_DEFINITE = "definite"
EXTERNALITY_FROBENIUS = "frobenius"
EXTERNALITY_SAMPLED = "sampled"

_DEFAULT_SEARCH_ATTEMPTS = 64


class ExternalityCertificate:
    """What was proved about the plane avoiding the quadric."""

    __slots__ = ("level", "samples")

    def __init__(self, level: str, samples: int = 0):
        self.level = level
        self.samples = samples

    def describe(self) -> str:
        if self.level == EXTERNALITY_SAMPLED:
            return f"sampled:{self.samples}"
        return self.level

    def __repr__(self):
        return f"ExternalityCertificate({self.describe()})"


class Parallelism:
    """A plane of the bivector space certified external to the quadric,
    acting on lines of V via M ~ N iff plane + M^gamma = plane + N^gamma."""

    __slots__ = ("plane", "certificate", "_solids")

    def __init__(self, plane: Subspace, certificate: ExternalityCertificate):
        if plane.ambient_dim != 6 or plane.dim != 3:
            raise KernelDimensionUnexpected(
                f"parallelism plane must have vector dimension 3, got {plane.dim}")
        self.plane = plane
        self.certificate = certificate
        self._solids = {}

    def solid_of(self, m: Subspace) -> Subspace:
        """The span of the plane and the image point of a line (cached)."""
        entry = self._solids.get(m)
        if entry is None:
            solid = self.plane.join(pluecker(m))
            entry = (solid, kernel_rows(solid.field, 6, solid.ff_rows))
            if len(self._solids) >= 256:
                self._solids.clear()
            self._solids[m] = entry
        return entry[0]

    def solid_annihilator(self, m: Subspace):
        """Annihilator rows of the class solid of m (cached with the solid)."""
        self.solid_of(m)
        return self._solids[m][1]

    def __eq__(self, other):
        if not isinstance(other, Parallelism):
            return NotImplemented
        return self.plane == other.plane

    def __hash__(self):
        return hash(self.plane)

    def __getstate__(self):
        return (self.plane, self.certificate)

    def __setstate__(self, state):
        self.plane, self.certificate = state
        self._solids = {}

    def to_json(self) -> dict:
        return {"C": self.plane.to_json(), "certificate": self.certificate.describe()}


class ParallelClass:
    """One equivalence class, represented by the solid spanned with the plane."""

    __slots__ = ("parallelism", "solid", "_ann")

    def __init__(self, parallelism: Parallelism, solid: Subspace):
        self.parallelism = parallelism
        self.solid = solid
        self._ann = None

    def line_through(self, p: Subspace) -> Subspace:
        if self._ann is None:
            self._ann = kernel_rows(self.solid.field, 6, self.solid.ff_rows)
        x = _star_section_vector(self.solid.field, self._ann, p)
        if x is None:
            raise MeetNotAPoint(
                "star plane does not meet the class solid in a single point; "
                "the parallelism plane is not external to the quadric")
        return pluecker_inverse(span(self.solid.field, 6, [x]))

    def contains_line(self, m: Subspace) -> bool:
        return self.solid.contains_vector(pluecker_rep(m))

    def sample_lines(self, rng, bound: int, count: int) -> list[Subspace]:
        field = self.solid.field
        lines: list[Subspace] = []
        attempts = 0
        while len(lines) < count and attempts < 40 * count:
            attempts += 1
            p = random_point(field, rng, 4, bound)
            line = self.line_through(p)
            if line not in lines:
                lines.append(line)
        return lines


# --------------------------------------------------------------------------
# The defining maps and their kernels.

def kappa(alg: Algebra, x) -> tuple:
    """Linear extension of g ^ h |-> conj(g)*h modulo scalars (coords 1..3)."""
    return _apply_rows(_kappa_rows(alg), x)


def kappa_prime(alg: Algebra, x) -> tuple:
    """Linear extension of g ^ h |-> g*conj(h) modulo scalars (coords 1..3)."""
    return _apply_rows(_kappa_prime_rows(alg), x)


def _apply_rows(rows, x) -> tuple:
    out = []
    for row in rows:
        acc = row[0] * x[0]
        for c, v in zip(row[1:], x[1:]):
            acc = acc + c * v
        out.append(acc)
    return tuple(out)


def _basis_products(alg: Algebra, prime: bool):
    from .kleingeom import BASIS_PAIRS
    for s, t in BASIS_PAIRS:
        es, et = alg.basis_element(s), alg.basis_element(t)
        yield alg.mul(es, alg.conj(et)) if prime else alg.mul(alg.conj(es), et)


def _kappa_rows(alg: Algebra) -> tuple:
    cols = [p[1:] for p in _basis_products(alg, prime=False)]
    return tuple(tuple(cols[p][r] for p in range(6)) for r in range(3))


def _kappa_prime_rows(alg: Algebra) -> tuple:
    cols = [p[1:] for p in _basis_products(alg, prime=True)]
    return tuple(tuple(cols[p][r] for p in range(6)) for r in range(3))


def plane_C(alg: Algebra, rng=None) -> Parallelism:
    """The parallelism of left translations: the kernel of kappa."""
    return _certified_kernel(alg, _kappa_rows(alg), rng)


def plane_Cprime(alg: Algebra, rng=None) -> Parallelism:
    """The parallelism of right translations: the kernel of kappa'."""
    return _certified_kernel(alg, _kappa_prime_rows(alg), rng)


def _certified_kernel(alg: Algebra, rows, rng) -> Parallelism:
    kernel = solve_homogeneous(alg.field, 6, rows)
    if kernel.dim != 3:
        raise KernelDimensionUnexpected(
            f"kernel has vector dimension {kernel.dim}, expected 3")
    cert = certify_external(kernel, alg, rng)
    return Parallelism(kernel, cert)


def certify_external(plane: Subspace, alg: Algebra, rng=None) -> ExternalityCertificate:
    """Certify that the plane misses the quadric, at the level justified by
    the algebra's division certificate.  A sampled search that does find a
    quadric point converts it into a zero-divisor witness and raises."""
    level = alg.certificate.level
    if level == VALIDATION_DEFINITE:
        assert _definite_on(plane), "definite algebra must give a definite restriction"
        return ExternalityCertificate(EXTERNALITY_DEFINITE)
    if level == VALIDATION_FROBENIUS:
        assert _frobenius_external(plane), "frobenius-independent values expected"
        return ExternalityCertificate(EXTERNALITY_FROBENIUS)
    if level == VALIDATION_ASSERT:
        return ExternalityCertificate(EXTERNALITY_SAMPLED, 0)
    if rng is None:
        rng = random.Random(_stable_seed("externality", *(
            ",".join(r) for r in plane.to_json())))
    point = find_quadric_point(plane, rng, attempts=_DEFAULT_SEARCH_ATTEMPTS)
    if point is not None:
        witness = _zero_divisor_from_quadric_point(alg, point)
        raise NotDivisionAlgebra(
            "kernel plane meets the quadric; zero divisor: "
            f"{alg.format_element(witness)}", witness=witness)
    return ExternalityCertificate(EXTERNALITY_SAMPLED, _DEFAULT_SEARCH_ATTEMPTS)


def _zero_divisor_from_quadric_point(alg: Algebra, point) -> tuple:
    line = pluecker_inverse(point)
    for g in line.ff_rows:
        if is_zero(alg.norm(g)):
            return g
    raise AssertionError("quadric point on the kernel without a norm-zero vector")


def _definite_on(plane: Subspace) -> bool:
    """Exact definiteness of the restricted form (characteristic 0)."""
    if plane.field.characteristic != 0:
        return False
    n = plane.dim
    m = [[polar_form(r1, r2) for r2 in plane.ff_rows] for r1 in plane.ff_rows]
    # congruence diagonalization; definite iff all pivots share one sign
    sign = 0
    for k in range(n):
        if is_zero(m[k][k]):
            swap = next((i for i in range(k + 1, n) if not is_zero(m[i][i])), None)
            if swap is None:
                return False  # isotropic or degenerate
            m[k], m[swap] = m[swap], m[k]
            for row in m:
                row[k], row[swap] = row[swap], row[k]
        piv = m[k][k]
        s = 1 if piv > 0 else -1
        if sign == 0:
            sign = s
        elif s != sign:
            return False
        for i in range(k + 1, n):
            if not is_zero(m[i][k]):
                f = m[i][k] * inv(piv)
                for j in range(k, n):
                    m[i][j] = m[i][j] - f * m[k][j]
                for r in range(k, n):
                    m[r][i] = m[r][i] - f * m[r][k]
    return True


def _frobenius_external(plane: Subspace) -> bool:
    """Characteristic 2, polar form vanishing on the plane: the restricted
    form is additive under Frobenius, so it is anisotropic iff the values on
    a basis are independent over the subfield of squares."""
    if plane.field.characteristic != 2:
        return False
    rows = plane.ff_rows
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            if not is_zero(polar_form(rows[i], rows[j])):
                return False
    comps = [gf2_square_class_components(omega(r)) for r in rows]
    return span(plane.field, 4, comps).dim == len(rows)


def perp_parallelism(p: Parallelism, rng=None) -> Parallelism:
    """The companion parallelism of the polar plane, re-certified at the
    same level as the original."""
    plane = perp(p.plane)
    level = p.certificate.level
    if level == EXTERNALITY_DEFINITE:
        assert _definite_on(plane)
        cert = ExternalityCertificate(EXTERNALITY_DEFINITE)
    elif level == EXTERNALITY_FROBENIUS:
        assert _frobenius_external(plane)
        cert = ExternalityCertificate(EXTERNALITY_FROBENIUS)
    else:
        samples = p.certificate.samples
        if samples:
            if rng is None:
                rng = random.Random(_stable_seed("perp", *(
                    ",".join(r) for r in plane.to_json())))
            if find_quadric_point(plane, rng, attempts=samples) is not None:
                raise PreconditionFailed("polar plane meets the quadric")
        cert = ExternalityCertificate(EXTERNALITY_SAMPLED, samples)
    return Parallelism(plane, cert)


def _stable_seed(*parts: str) -> int:
    digest = hashlib.sha256(":".join(parts).encode()).digest()
    return int.from_bytes(digest[:8], "big")


# --------------------------------------------------------------------------
# The three parallel relations.

def left_parallel(alg: Algebra, m: Subspace, n: Subspace) -> bool:
    """True iff c*M = N for some nonzero c: candidates c = n * g^{-1}."""
    return _translation_parallel(alg, m, n, left=True)


def right_parallel(alg: Algebra, m: Subspace, n: Subspace) -> bool:
    """True iff M*c = N for some nonzero c: candidates c = g^{-1} * n."""
    return _translation_parallel(alg, m, n, left=False)


def _translation_parallel(alg: Algebra, m: Subspace, n: Subspace, left: bool) -> bool:
    for line in (m, n):
        if line.ambient_dim != 4 or line.dim != 2:
            raise NotALine("translation parallelism relates lines of the algebra")
    # the candidate n * g^{-1} is used projectively, so the norm denominator
    # can be dropped: use n * conj(g) instead, which stays polynomial
    g_conj = alg.conj(m.ff_rows[0])
    for cand in n.ff_rows:
        c = alg.mul(cand, g_conj) if left else alg.mul(g_conj, cand)
        if not any(c):
            continue
        if left:
            image = [alg.mul(c, v) for v in m.ff_rows]
        else:
            image = [alg.mul(v, c) for v in m.ff_rows]
        # image spans n iff it has rank 2 and fits inside n
        if rank(image, alg.field) == 2 and rank(list(n.ff_rows) + image,
                                                alg.field) == 2:
            return True
    return False


def translate_line(alg: Algebra, c: tuple, m: Subspace, left: bool = True) -> Subspace:
    """The image line c*M (or M*c)."""
    if not any(c):
        raise ZeroElement("translation by zero")
    image = [alg.mul(c, v) if left else alg.mul(v, c) for v in m.ff_rows]
    return span(alg.field, 4, image)


def left_parallel_line_through(alg: Algebra, point: Subspace, m: Subspace) -> Subspace:
    """The left-translate of m through the given point: translate by
    q * conj(g) for g in m, which maps g to norm(g) * q."""
    q0 = point.ff_rows[0]
    c = alg.mul(q0, alg.conj(m.ff_rows[0]))
    line = translate_line(alg, c, m, left=True)
    assert line.contains(point)
    return line


def c_parallel(p: Parallelism, m: Subspace, n: Subspace) -> bool:
    """True iff the plane spans the same solid with both image points."""
    for line in (m, n):
        if line.ambient_dim != 4 or line.dim != 2:
            raise NotALine("plane parallelism relates lines of V")
    # for an external plane both solids have dimension 4, so equality is
    # one rank test; fall back to the solid comparison in degenerate cases
    x_m, x_n = pluecker_rep(m), pluecker_rep(n)
    base = list(p.plane.ff_rows)
    if rank(base + [x_m], p.plane.field) == 4:
        return rank(base + [x_m, x_n], p.plane.field) == 4
    return p.solid_of(m) == p.solid_of(n)


def _star_section_vector(field, ann_rows, point: Subspace):
    """The bivector where the star plane of the point meets the solid with
    the given annihilator rows, or None if the section is not a point.

    The star plane is spanned by three wedges with the point, so the section
    solves a small system in three combination coefficients.
    """
    if point.ambient_dim != 4 or point.dim != 1:
        raise NotAPoint("expected a point of V")
    rep = point.ff_rows[0]
    pivot = point.pivots[0]
    gens = [wedge(rep, unit_vector(field, 4, i)) for i in range(4) if i != pivot]
    system = [[vec_dot(row, g) for g in gens] for row in ann_rows]
    coeffs = kernel_rows(field, 3, system)
    if len(coeffs) != 1:
        return None
    c1, c2, c3 = coeffs[0]
    x = vec_add(vec_add(vec_scale(c1, gens[0]), vec_scale(c2, gens[1])),
                vec_scale(c3, gens[2]))
    if vec_is_zero(x):
        return None
    return x


def _section_vector_or_raise(p: Parallelism, m: Subspace, point: Subspace):
    x = _star_section_vector(p.plane.field, p.solid_annihilator(m), point)
    if x is None:
        raise MeetNotAPoint(
            "star plane does not meet the class solid in a single point; "
            "the parallelism plane is not external to the quadric")
    return x


def parallel_through(p: Parallelism, point: Subspace, m: Subspace) -> Subspace:
    """The unique line through the point parallel to m."""
    x = span(p.plane.field, 6, [_section_vector_or_raise(p, m, point)])
    return pluecker_inverse(x)


def parallel_class(p: Parallelism, m: Subspace) -> ParallelClass:
    solid = p.solid_of(m)
    if solid.dim != 4:
        raise PreconditionFailed(
            "line image lies inside the parallelism plane; not external")
    return ParallelClass(p, solid)


def class_is_regular_spread(k: ParallelClass, rng=None, bound: int = 2,
                            samples: int = 1000) -> tuple[bool, str]:
    """Check the polar line of the class solid misses the quadric.

    Returns (ok, mode): mode "exact" when the binary form was decided
    exactly, "sampled:<n>" when only a sampled search was possible, and
    "witness" with ok=False when a quadric point was found.
    """
    line = perp(k.solid)
    assert line.dim == 2
    u, v = line.rows
    status, _ = line_quadric_point(u, v, rng=rng, bound=bound, samples=samples)
    if status == "found":
        return False, "witness"
    if status == "exact-none":
        return True, "exact"
    return True, f"sampled:{samples}"


# --------------------------------------------------------------------------
# Double space, reguli, hyperplanes, crossed pencils.

def double_space_check(p: Parallelism, p_perp: Parallelism, a: Subspace,
                       b: Subspace, c: Subspace) -> bool:
    """The two constructed parallels to the sides of the triangle meet.

    The parallels are taken as quadric points (star-plane sections of the
    class solids); the lines meet exactly when those points are conjugate.
    """
    for pt in (a, b, c):
        if pt.ambient_dim != 4 or pt.dim != 1:
            raise NonCollinearRequired("three points of V expected")
    triangle = span(a.field, 4, [a.ff_rows[0], b.ff_rows[0], c.ff_rows[0]])
    if triangle.dim != 3:
        raise NonCollinearRequired("the three points are collinear")
    x1 = _section_vector_or_raise(p, a.join(b), c)
    x2 = _section_vector_or_raise(p_perp, a.join(c), b)
    return is_zero(polar_form(x1, x2))


def opposite_regulus_parallel_check(p: Parallelism, r: Regulus, rng=None,
                                    bound: int = 2,
                                    extra_members=()) -> bool:
    """Members of the opposite regulus are mutually parallel under the
    polar plane's parallelism."""
    for a in r.lines:
        for b in r.lines:
            if a is not b and not c_parallel(p, a, b):
                raise PreconditionFailed("regulus members are not mutually parallel")
    p_perp = Parallelism(perp(p.plane), p.certificate)
    seed = extra_members[0] if extra_members else None
    members = list(regulus_opposite(r, seed_member=seed).lines)
    for extra in extra_members:
        if extra not in members:
            members.append(extra)
    first = members[0]
    return all(c_parallel(p_perp, first, m) for m in members[1:])


def hyperplane_for_classes(p: Parallelism, m1: Subspace, m2: Subspace) -> LinearComplex:
    """The unique linear complex containing both parallel classes."""
    if c_parallel(p, m1, m2):
        raise SameClass("the two lines are parallel")
    w = p.solid_of(m1).join(p.solid_of(m2))
    assert w.dim == 5, "distinct class solids meet exactly in the plane"
    return complex_from_hyperplane(w)


def lines_form_pencil(x: Subspace, y: Subspace, z: Subspace) -> bool:
    """Pencil test: one common point and a common plane.

    Equivalent rank formulation: the joined rows have rank 3 (coplanar and
    not all equal) and the stacked annihilators have rank 3 (a common
    point).
    """
    field = x.field
    rows = list(x.ff_rows) + list(y.ff_rows) + list(z.ff_rows)
    if rank(rows, field) != 3:
        return False
    ann = (kernel_rows(field, 4, x.ff_rows) + kernel_rows(field, 4, y.ff_rows)
           + kernel_rows(field, 4, z.ff_rows))
    return rank(ann, field) == 3


def crossed_pencils_check(p: Parallelism, m1: Subspace, m2: Subspace,
                          n1: Subspace, n2: Subspace) -> bool:
    """If m1, m2 and the joining line are in a common pencil, so are n1, n2;
    vacuously true when the hypothesis pencil condition fails."""
    if not (c_parallel(p, m1, n1) and c_parallel(p, m2, n2)):
        raise BadConfiguration("lines are not parallel in pairs")
    pt_p = m1.meet(m2)
    pt_q = n1.meet(n2)
    if pt_p.dim != 1 or pt_q.dim != 1 or pt_p == pt_q:
        raise BadConfiguration("crossing points must be two distinct points")
    joining = pt_p.join(pt_q)
    if not lines_form_pencil(m1, m2, joining):
        return True
    return lines_form_pencil(n1, n2, joining)


# --------------------------------------------------------------------------
# Translation invariance of subspaces through the plane.

def translation_invariance_check(alg: Algebra, c: tuple, p: Parallelism,
                                 rng=None, bound: int = 2,
                                 hyperplane_samples: int = 1,
                                 polar_plane: Subspace | None = None) -> bool:
    """The exterior square of left translation by c fixes the plane, every
    subspace through the plane, and every point of the polar plane."""
    if not any(c):
        raise ZeroElement("translation by zero")
    plane = p.plane
    field = alg.field
    l6 = exterior_square(left_translation(alg, c))

    image = span(field, 6, [mat_apply(l6, r) for r in plane.rows])
    if image != plane:
        return False

    # induced map on the quotient modulo the plane must be a scalar: that is
    # exactly invariance of every hyperplane (hence every subspace) through it
    comp = plane.complement_columns()
    qcols = []
    for d in comp:
        res = plane.reduce_vector(mat_apply(l6, unit_vector(field, 6, d)))
        qcols.append(tuple(res[e] for e in comp))
    if not _is_scalar_matrix(tuple(zip(*qcols))):
        return False

    # the polar plane is fixed pointwise (projectively): the restricted map
    # is a scalar multiple of the identity
    polar = polar_plane if polar_plane is not None else perp(plane)
    rows = []
    for r in polar.rows:
        coords = polar.coordinates_of(mat_apply(l6, r))
        if coords is None:
            return False
        rows.append(coords)
    if not _is_scalar_matrix(tuple(rows)):
        return False

    # belt and braces: a couple of sampled hyperplanes through the plane
    if rng is not None:
        for _ in range(hyperplane_samples):
            while True:
                extra = [random_vector(field, rng, 6, bound) for _ in range(2)]
                w = plane.join(span(field, 6, extra))
                if w.dim == 5:
                    break
            w_image = span(field, 6, [mat_apply(l6, r) for r in w.rows])
            if w_image != w:
                return False
    return True


def _is_scalar_matrix(m) -> bool:
    n = len(m)
    diag = m[0][0]
    if is_zero(diag):
        return False
    for i in range(n):
        for j in range(n):
            if i == j:
                if m[i][j] != diag:
                    return False
            elif not is_zero(m[i][j]):
                return False
    return True


def hyperplane_from_form(alg: Algebra, phi) -> Subspace:
    """Kernel of the form g ^ h |-> phi(conj(g)*h) on bivectors; contains
    the kernel plane for every admissible phi (phi(1) = 0, phi != 0)."""
    phi = tuple(phi)
    if len(phi) != 4 or all(is_zero(x) for x in phi):
        raise BadForm("expected a nonzero linear form on the algebra")
    if not is_zero(phi[0]):
        raise BadForm("the form must vanish on 1")
    psi = []
    for prod in _basis_products(alg, prime=False):
        acc = phi[0] * prod[0]
        for a, b in zip(phi[1:], prod[1:]):
            acc = acc + a * b
        psi.append(acc)
    hyperplane = solve_homogeneous(alg.field, 6, [tuple(psi)])
    assert hyperplane.dim == 5
    return hyperplane
