"""Seeded random generation of projective objects for the verification suites.

Everything is driven by an explicit ``random.Random`` stream, so any sampled
configuration can be reproduced from (seed, trial index).  Projective data
is sampled with denominator-free coordinates (integers over the rationals,
polynomials over GF(2)(x, y)); projectively this loses nothing and keeps the
exact arithmetic fast.
"""

from .linalg import Subspace, span, vec_add, vec_scale
from .scalars import _PONE, _random_poly, FieldSpec, RATIONALS_KIND, RatFunc


def integral_scalar(field: FieldSpec, rng, bound: int):
    """A denominator-free scalar: an integer or a GF(2)[x, y] polynomial."""
    if field.kind == RATIONALS_KIND:
        return rng.randint(-bound, bound)
    return RatFunc(field, _random_poly(rng, bound), _PONE, normalized=True)


def nonzero_integral_scalar(field: FieldSpec, rng, bound: int):
    while True:
        c = integral_scalar(field, rng, bound)
        if c:
            return c


def _coordinate_bound(field: FieldSpec, bound: int) -> int:
    # vector coordinates over function fields stay at degree <= max(1, b-1):
    # chained joins and meets multiply coordinate degrees into their minors,
    # and the canonical gcd reductions dominate the runtime beyond that
    if field.kind == RATIONALS_KIND:
        return bound
    return max(1, bound - 1)


def random_vector(field: FieldSpec, rng, dim: int, bound: int) -> tuple:
    """A nonzero vector with denominator-free entries."""
    cbound = _coordinate_bound(field, bound)
    while True:
        v = tuple(integral_scalar(field, rng, cbound) for _ in range(dim))
        if any(v):
            return v


def random_point(field: FieldSpec, rng, dim: int, bound: int) -> Subspace:
    return span(field, dim, [random_vector(field, rng, dim, bound)])


def random_subspace(field: FieldSpec, rng, ambient: int, dim: int, bound: int) -> Subspace:
    while True:
        vecs = [random_vector(field, rng, ambient, bound) for _ in range(dim)]
        s = span(field, ambient, vecs)
        if s.dim == dim:
            return s


def random_line(field: FieldSpec, rng, bound: int) -> Subspace:
    return random_subspace(field, rng, 4, 2, bound)


def random_vector_in(sub: Subspace, rng, bound: int) -> tuple:
    """A nonzero denominator-free vector of the given subspace."""
    field = sub.field
    cbound = _coordinate_bound(field, bound)
    zero = field.zero()
    while True:
        v = (zero,) * sub.ambient_dim
        for row in sub.ff_rows:
            c = integral_scalar(field, rng, cbound)
            if c:
                v = vec_add(v, vec_scale(c, row))
        if any(v):
            return v


def random_point_on(sub: Subspace, rng, bound: int) -> Subspace:
    return span(sub.field, sub.ambient_dim, [random_vector_in(sub, rng, bound)])


def random_line_through(p: Subspace, rng, bound: int) -> Subspace:
    """A random line incident with the point p."""
    field = p.field
    while True:
        line = span(field, p.ambient_dim,
                    [p.ff_rows[0], random_vector(field, rng, p.ambient_dim, bound)])
        if line.dim == 2:
            return line


def random_plane_through(p: Subspace, rng, bound: int) -> Subspace:
    field = p.field
    while True:
        plane = span(field, p.ambient_dim,
                     [p.ff_rows[0],
                      random_vector(field, rng, p.ambient_dim, bound),
                      random_vector(field, rng, p.ambient_dim, bound)])
        if plane.dim == 3:
            return plane


def random_algebra_element(algebra, rng, bound: int, nonzero: bool = True) -> tuple:
    field = algebra.field
    while True:
        h = tuple(integral_scalar(field, rng, bound) for _ in range(4))
        if any(h) or not nonzero:
            return h
