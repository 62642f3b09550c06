"""Quadratic four-dimensional algebras over an exact base field.

Three cases are supported, each fixed by two nonzero structure constants
a, b and realized on the basis 1, i, j, k:

* ``A1`` (characteristic != 2): i^2 = a, j^2 = b, k^2 = -ab, ij = -ji = k,
  jk = -kj = -b*i, ki = -ik = -a*j; conjugation negates i, j, k.
* ``A2`` (characteristic 2):   i^2 = i + a, j^2 = b, k^2 = ab, ij = k,
  jk = b + b*i, ki = a*j, ji = j + k, kj = b*i, ik = a*j + k; conjugation
  sends i to i + 1 and fixes j, k.
* ``B``  (characteristic 2):   the A1 table with all minus signs dropped;
  the algebra is commutative, conjugation is the identity, every square
  lies in the base field.

norm(h) = h * conj(h) and trace(h) = h + conj(h) are scalars, and every
element satisfies h^2 - trace(h)*h + norm(h) = 0.  Whether the algebra has
no zero divisors is validated up to an explicit certificate level; the
certificate is honest about what was actually proved.
"""

from dataclasses import dataclass
from itertools import product

from .errors import (BadStructureConstants, CharMismatch, NotDivisionAlgebra,
                     SingularMap, ZeroDivisor, ZeroElement)
from .kleingeom import BASIS_PAIRS, wedge
from .linalg import rank
from .scalars import (FieldSpec, GF2_KIND, RATIONALS_KIND, RatFunc, Scalar,
                      gf2_square_class_components, inv, is_zero)

CASE_A1 = "A1"
CASE_A2 = "A2"
CASE_B = "B"

VALIDATION_DEFINITE = "definite"
VALIDATION_FROBENIUS = "frobenius"
VALIDATION_SEARCH = "search"
VALIDATION_ASSERT = "assert"

_BASIS_NAMES = ("1", "i", "j", "k")


@dataclass(frozen=True)
class DivisionCertificate:
    """What was proved about the absence of zero divisors."""

    level: str
    budget: int = 0

    def describe(self) -> str:
        if self.level == VALIDATION_SEARCH:
            return f"search:{self.budget}"
        return self.level


class Algebra:
    """A quadratic algebra fixed by (case, field, a, b)."""

    __slots__ = ("case", "field", "a", "b", "certificate", "table")

    def __init__(self, case: str, field: FieldSpec, a: Scalar, b: Scalar,
                 certificate: DivisionCertificate):
        self.case = case
        self.field = field
        self.a = a
        self.b = b
        self.certificate = certificate
        self.table = _multiplication_table(case, field, a, b)

    # -- element constructors ------------------------------------------

    def zero(self) -> tuple:
        z = self.field.zero()
        return (z, z, z, z)

    def one(self) -> tuple:
        z, o = self.field.zero(), self.field.one()
        return (o, z, z, z)

    def basis_element(self, i: int) -> tuple:
        z, o = self.field.zero(), self.field.one()
        return tuple(o if r == i else z for r in range(4))

    def scalar(self, c: Scalar) -> tuple:
        z = self.field.zero()
        return (c, z, z, z)

    # -- arithmetic ------------------------------------------------------

    def add(self, g: tuple, h: tuple) -> tuple:
        return tuple(x + y for x, y in zip(g, h))

    def scale(self, c: Scalar, h: tuple) -> tuple:
        return tuple(c * x for x in h)

    def mul(self, g: tuple, h: tuple) -> tuple:
        out = list(self.zero())
        for i in range(4):
            gi = g[i]
            if is_zero(gi):
                continue
            for j in range(4):
                hj = h[j]
                if is_zero(hj):
                    continue
                c = gi * hj
                t = self.table[i][j]
                for r in range(4):
                    if not is_zero(t[r]):
                        out[r] = out[r] + c * t[r]
        return tuple(out)

    def conj(self, h: tuple) -> tuple:
        if self.case == CASE_A1:
            return (h[0], -h[1], -h[2], -h[3])
        if self.case == CASE_A2:
            return (h[0] + h[1], h[1], h[2], h[3])
        return h

    def norm(self, h: tuple) -> Scalar:
        n = self.mul(h, self.conj(h))
        assert all(is_zero(c) for c in n[1:]), "norm is not scalar"
        return n[0]

    def trace(self, h: tuple) -> Scalar:
        t = self.add(h, self.conj(h))
        assert all(is_zero(c) for c in t[1:]), "trace is not scalar"
        return t[0]

    def inverse(self, h: tuple) -> tuple:
        if not any(h):
            raise ZeroElement("zero has no inverse")
        n = self.norm(h)
        if is_zero(n):
            raise ZeroDivisor(
                f"element {self.format_element(h)} has norm zero", witness=h)
        return self.scale(inv(n), self.conj(h))

    # -- presentation ------------------------------------------------------

    def format_element(self, h: tuple) -> str:
        parts = []
        one = self.field.one()
        for c, name in zip(h, _BASIS_NAMES):
            if is_zero(c):
                continue
            if name == "1":
                parts.append(str(c))
            elif c == one:
                parts.append(name)
            elif c == -one:
                parts.append(f"-{name}")
            else:
                parts.append(f"{c}*{name}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def element_json(self, h: tuple) -> dict:
        return {"coords": [str(c) for c in h], "pretty": self.format_element(h)}

    def table_json(self) -> dict:
        out = {}
        for i in range(1, 4):
            for j in range(1, 4):
                key = f"{_BASIS_NAMES[i]}*{_BASIS_NAMES[j]}"
                out[key] = self.format_element(self.table[i][j])
        return out

    def __repr__(self):
        return f"Algebra({self.case}, {self.field}, a={self.a}, b={self.b})"


def _multiplication_table(case, field, a, b):
    z, o = field.zero(), field.one()

    def e(c0=None, c1=None, c2=None, c3=None):
        return (z if c0 is None else c0, z if c1 is None else c1,
                z if c2 is None else c2, z if c3 is None else c3)

    if case in (CASE_A1, CASE_B):
        # in case B the field has characteristic 2, so the negations vanish
        row_i = (e(c1=o), e(c0=a), e(c3=o), e(c2=a))
        row_j = (e(c2=o), e(c3=-o), e(c0=b), e(c1=-b))
        row_k = (e(c3=o), e(c2=-a), e(c1=b), e(c0=-(a * b)))
    else:
        row_i = (e(c1=o), e(c0=a, c1=o), e(c3=o), e(c2=a, c3=o))
        row_j = (e(c2=o), e(c2=o, c3=o), e(c0=b), e(c0=b, c1=b))
        row_k = (e(c3=o), e(c2=a), e(c1=b), e(c0=a * b))
    row_1 = (e(c0=o), e(c1=o), e(c2=o), e(c3=o))
    return (row_1, row_i, row_j, row_k)


# --------------------------------------------------------------------------
# Construction with division validation.

def make_algebra(case: str, field: FieldSpec, a: Scalar, b: Scalar,
                 validation: str) -> Algebra:
    """Build an algebra and validate the division property.

    validation is one of "definite", "frobenius", "search:<budget>",
    "assert".  Raises NotDivisionAlgebra (with a witness where one was
    found) when validation fails, CharMismatch or BadStructureConstants on
    inconsistent input.
    """
    if case not in (CASE_A1, CASE_A2, CASE_B):
        raise BadStructureConstants(f"unknown case {case!r}")
    if is_zero(a) or is_zero(b):
        raise BadStructureConstants("structure constants must be nonzero")
    char = field.characteristic
    if case == CASE_A1 and char != 0:
        raise CharMismatch("case A1 needs characteristic != 2 (use case B in characteristic 2)")
    if case in (CASE_A2, CASE_B) and char != 2:
        raise CharMismatch(f"case {case} needs characteristic 2")

    level, _, budget_text = validation.partition(":")
    if level == VALIDATION_DEFINITE:
        cert = _validate_definite(case, field, a, b)
    elif level == VALIDATION_FROBENIUS:
        cert = _validate_frobenius(case, field, a, b)
    elif level == VALIDATION_SEARCH:
        budget = int(budget_text) if budget_text else 2000
        cert = _validate_search(case, field, a, b, budget)
    elif level == VALIDATION_ASSERT:
        cert = DivisionCertificate(VALIDATION_ASSERT)
    else:
        raise BadStructureConstants(f"unknown validation level {validation!r}")
    return Algebra(case, field, a, b, cert)


def _validate_definite(case, field, a, b) -> DivisionCertificate:
    # norm form x0^2 - a x1^2 - b x2^2 + ab x3^2 is positive definite
    # exactly when a < 0 and b < 0 over the rationals
    if case == CASE_A1 and field.kind == RATIONALS_KIND and a < 0 and b < 0:
        return DivisionCertificate(VALIDATION_DEFINITE)
    witness = _search_zero_divisor(Algebra(case, field, a, b,
                                           DivisionCertificate(VALIDATION_ASSERT)), 2000)
    detail = "definiteness requires case A1 over the rationals with a < 0 and b < 0"
    if witness is not None:
        alg = Algebra(case, field, a, b, DivisionCertificate(VALIDATION_ASSERT))
        raise NotDivisionAlgebra(
            f"{detail}; zero divisor found: {alg.format_element(witness)}",
            witness=witness)
    raise NotDivisionAlgebra(detail)


def _validate_frobenius(case, field, a, b) -> DivisionCertificate:
    # case B is a field iff 1, a, b, ab are independent over the subfield of
    # squares; check by exponent-parity decomposition of each value
    if case != CASE_B or field.kind != GF2_KIND:
        raise NotDivisionAlgebra("frobenius validation applies to case B over GF(2)(a,b)")
    values = [field.one(), a, b, a * b]
    rows = [gf2_square_class_components(v) for v in values]
    if rank(rows) == 4:
        return DivisionCertificate(VALIDATION_FROBENIUS)
    raise NotDivisionAlgebra(
        "1, a, b, ab are dependent over the subfield of squares; "
        "the algebra has nilpotents")


def _validate_search(case, field, a, b, budget: int) -> DivisionCertificate:
    alg = Algebra(case, field, a, b, DivisionCertificate(VALIDATION_ASSERT))
    witness = _search_zero_divisor(alg, budget)
    if witness is not None:
        raise NotDivisionAlgebra(
            f"zero divisor found: {alg.format_element(witness)}", witness=witness)
    return DivisionCertificate(VALIDATION_SEARCH, budget)


def _small_scalars(field: FieldSpec):
    """Deterministic stream of small field elements, zero first."""
    if field.kind == RATIONALS_KIND:
        yield field.zero()
        n = 1
        while True:
            yield field.from_int(n)
            yield field.from_int(-n)
            n += 1
    else:
        # polynomials enumerated by increasing total degree then bit pattern
        degree = 0
        while True:
            monos = [(ex, ey) for ex in range(degree + 1)
                     for ey in range(degree + 1 - ex)]
            for bits in range(2 ** len(monos)):
                poly = {}
                for idx, (ex, ey) in enumerate(monos):
                    if (bits >> idx) & 1:
                        poly[ex] = poly.get(ex, 0) | (1 << ey)
                yield RatFunc(field, poly, {0: 1}, normalized=True)
            degree += 1


def _search_zero_divisor(alg: Algebra, budget: int):
    """Enumerate small candidates h != 0 and return the first with norm 0.

    A zero of the norm form with denominators can be scaled to one without,
    so the search ranges over denominator-free coordinates.  Coordinates are
    enumerated with x0 varying fastest, so witnesses involving 1 and i
    surface before ones involving j and k.
    """
    values = []
    gen = _small_scalars(alg.field)
    checked = 0
    while checked < budget:
        values.append(next(gen))
        for x3, x2, x1, x0 in product(values, repeat=4):
            h = (x0, x1, x2, x3)
            if not any(h):
                continue
            checked += 1
            if is_zero(alg.norm(h)):
                return h
            if checked >= budget:
                break
        else:
            continue
        break
    return None


# --------------------------------------------------------------------------
# Linear maps attached to algebra elements.

def mat_identity(field: FieldSpec, n: int) -> tuple:
    z, o = field.zero(), field.one()
    return tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))


def mat_apply(m: tuple, v: tuple) -> tuple:
    out = []
    for row in m:
        acc = row[0] * v[0]
        for a, b in zip(row[1:], v[1:]):
            acc = acc + a * b
        out.append(acc)
    return tuple(out)


def mat_mul(m: tuple, n: tuple) -> tuple:
    cols = list(zip(*n))
    return tuple(tuple(sum_entries(row, col) for col in cols) for row in m)


def sum_entries(row, col):
    acc = row[0] * col[0]
    for a, b in zip(row[1:], col[1:]):
        acc = acc + a * b
    return acc


def left_translation(alg: Algebra, c: tuple) -> tuple:
    """Matrix of h |-> c*h on the basis 1, i, j, k (rows index coordinates)."""
    if not any(c):
        raise ZeroElement("translation by zero is not invertible")
    cols = [alg.mul(c, alg.basis_element(j)) for j in range(4)]
    return tuple(tuple(cols[j][r] for j in range(4)) for r in range(4))


def right_translation(alg: Algebra, c: tuple) -> tuple:
    """Matrix of h |-> h*c on the basis 1, i, j, k."""
    if not any(c):
        raise ZeroElement("translation by zero is not invertible")
    cols = [alg.mul(alg.basis_element(j), c) for j in range(4)]
    return tuple(tuple(cols[j][r] for j in range(4)) for r in range(4))


def exterior_square(m: tuple) -> tuple:
    """The induced 6x6 map on bivectors: u ^ v |-> m(u) ^ m(v)."""
    if rank(m) != 4:
        raise SingularMap("exterior square of a singular map")
    cols = list(zip(*m))
    image_cols = [wedge(cols[s], cols[t]) for s, t in BASIS_PAIRS]
    return tuple(tuple(image_cols[p][r] for p in range(6)) for r in range(6))


def quadratic_algebra_check(alg: Algebra, h: tuple) -> bool:
    """h^2 - trace(h)*h + norm(h) = 0, exactly."""
    sq = alg.mul(h, h)
    t, n = alg.trace(h), alg.norm(h)
    lhs = alg.add(sq, alg.scale(-t, h))
    lhs = alg.add(lhs, alg.scalar(n))
    return all(is_zero(c) for c in lhs)
