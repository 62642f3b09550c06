"""Exact arithmetic for the two supported base fields.

* ``FieldSpec.rationals()`` -- the rational numbers; elements are
  ``fractions.Fraction`` (always reduced, positive denominator).
* ``FieldSpec.gf2_function_field(x, y)`` -- the field GF(2)(x, y) of rational
  functions in two indeterminates over the two-element field; elements are
  :class:`RatFunc` fractions of bivariate polynomials, normalized by dividing
  out the gcd.  Over GF(2) the leading coefficient is automatically 1, so the
  gcd-reduced fraction is the unique canonical representative.

A polynomial over GF(2) is stored sparsely as ``{x_exponent: y_mask}`` where
bit ``j`` of ``y_mask`` is the coefficient of ``y**j``.  Addition is XOR and
arithmetic in GF(2)[y] is carry-less integer arithmetic, which keeps the
content/primitive-part gcd fast.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import DivisionByZero, FieldMismatch

RATIONALS_KIND = "rationals"
GF2_KIND = "gf2_function_field"


# --------------------------------------------------------------------------
# GF(2)[y]: univariate polynomials packed into integer bitmasks.

def _ymul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _ydivmod(a: int, b: int) -> tuple[int, int]:
    db = b.bit_length()
    q = 0
    while a.bit_length() >= db:
        shift = a.bit_length() - db
        q |= 1 << shift
        a ^= b << shift
    return q, a


def _ygcd(a: int, b: int) -> int:
    while b:
        a, b = b, _ydivmod(a, b)[1]
    return a


def _ysqrt(m: int) -> int | None:
    # squares have support on even powers only
    r, i = 0, 0
    while m:
        if m & 1:
            if i & 1:
                return None
            r |= 1 << (i >> 1)
        m >>= 1
        i += 1
    return r


# --------------------------------------------------------------------------
# GF(2)[x, y]: dict {x_exponent: y_mask}, values nonzero.

Poly = dict


def _padd(f: Poly, g: Poly) -> Poly:
    r = dict(f)
    for e, m in g.items():
        n = r.get(e, 0) ^ m
        if n:
            r[e] = n
        else:
            r.pop(e, None)
    return r


_PONE: Poly = {0: 1}


def _pmul(f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return {}
    if f == _PONE:
        return g
    if g == _PONE:
        return f
    r: Poly = {}
    for e1, m1 in f.items():
        for e2, m2 in g.items():
            e = e1 + e2
            n = r.get(e, 0) ^ _ymul(m1, m2)
            if n:
                r[e] = n
            else:
                r.pop(e, None)
    return r


def _pscale_y(f: Poly, c: int) -> Poly:
    if c == 1:
        return dict(f)
    return {e: _ymul(m, c) for e, m in f.items()}


def _pshift_x(f: Poly, k: int) -> Poly:
    return {e + k: m for e, m in f.items()}


def _pdeg_x(f: Poly) -> int:
    return max(f) if f else -1


def _ptotal_deg(f: Poly) -> int:
    return max((e + m.bit_length() - 1 for e, m in f.items()), default=-1)


def _pcontent(f: Poly) -> int:
    c = 0
    for m in f.values():
        c = _ygcd(c, m)
        if c == 1:
            break
    return c


def _pdiv_content(f: Poly, c: int) -> Poly:
    if c == 1:
        return dict(f)
    return {e: _ydivmod(m, c)[0] for e, m in f.items()}


def _pprem(f: Poly, g: Poly) -> Poly:
    # pseudo-remainder of f by g, viewed as polynomials in x over GF(2)[y]
    dg = _pdeg_x(g)
    lg = g[dg]
    f = dict(f)
    while f and _pdeg_x(f) >= dg:
        df = _pdeg_x(f)
        lf = f[df]
        f = _padd(_pscale_y(f, lg), _pshift_x(_pscale_y(g, lf), df - dg))
    return f


def _pprimitive(f: Poly) -> Poly:
    if not f:
        return {}
    return _pdiv_content(f, _pcontent(f))


def _pmonomial_content(f: Poly) -> tuple[int, int]:
    mx = min(f)
    my = min(((m & -m).bit_length() - 1) for m in f.values())
    return mx, my


def _pshift_down(f: Poly, mx: int, my: int) -> Poly:
    if not mx and not my:
        return f
    return {e - mx: m >> my for e, m in f.items()}


def _pgcd(f: Poly, g: Poly) -> Poly:
    if not f:
        return dict(g)
    if not g:
        return dict(f)
    if f == _PONE or g == _PONE:
        return dict(_PONE)
    if f == g:
        return dict(f)
    # strip the common monomial factor first; it is cheap and shrinks the
    # remainder sequence below
    fx, fy = _pmonomial_content(f)
    gx, gy = _pmonomial_content(g)
    mx, my = min(fx, gx), min(fy, gy)
    f = _pshift_down(f, fx, fy)
    g = _pshift_down(g, gx, gy)
    cf, cg = _pcontent(f), _pcontent(g)
    c = _ygcd(cf, cg)
    f, g = _pdiv_content(f, cf), _pdiv_content(g, cg)
    # primitive polynomial remainder sequence in x
    while g:
        r = _pprem(f, g)
        f, g = g, _pprimitive(r)
    result = _pscale_y(f, c)
    if mx or my:
        result = {e + mx: m << my for e, m in result.items()}
    return result


def _pdivexact(f: Poly, g: Poly) -> Poly:
    # exact division; g must divide f
    if not f:
        return {}
    if g == _PONE:
        return dict(f)
    q: Poly = {}
    dg = _pdeg_x(g)
    lg = g[dg]
    r = dict(f)
    while r:
        dr = _pdeg_x(r)
        qc, rem = _ydivmod(r[dr], lg)
        if rem or dr < dg:
            raise ArithmeticError("inexact polynomial division")
        q[dr - dg] = qc
        r = _padd(r, _pshift_x(_pscale_y(g, qc), dr - dg))
    return q


def _psqrt(f: Poly) -> Poly | None:
    r: Poly = {}
    for e, m in f.items():
        if e & 1:
            return None
        s = _ysqrt(m)
        if s is None:
            return None
        r[e >> 1] = s
    return r


def _pstr(f: Poly, xname: str, yname: str) -> str:
    if not f:
        return "0"
    terms = []
    for e in sorted(f, reverse=True):
        m = f[e]
        for j in range(m.bit_length() - 1, -1, -1):
            if not (m >> j) & 1:
                continue
            parts = []
            if e == 1:
                parts.append(xname)
            elif e > 1:
                parts.append(f"{xname}^{e}")
            if j == 1:
                parts.append(yname)
            elif j > 1:
                parts.append(f"{yname}^{j}")
            terms.append("*".join(parts) or "1")
    return " + ".join(terms)


def _pparse(text: str, xname: str, yname: str) -> Poly:
    f: Poly = {}
    text = text.replace("-", "+")
    for term in text.split("+"):
        term = term.strip()
        if not term:
            continue
        ex = ey = 0
        coeff = 1
        for factor in term.split("*"):
            factor = factor.strip()
            if not factor:
                raise ValueError(f"empty factor in {term!r}")
            if factor.isdigit():
                coeff *= int(factor)
                continue
            name, _, exp = factor.partition("^")
            k = int(exp) if exp else 1
            if name == xname:
                ex += k
            elif name == yname:
                ey += k
            else:
                raise ValueError(f"unknown indeterminate {name!r}")
        if coeff % 2 == 0:
            continue
        n = f.get(ex, 0) ^ (1 << ey)
        if n:
            f[ex] = n
        else:
            f.pop(ex, None)
    return f


# --------------------------------------------------------------------------
# Field elements.

class RatFunc:
    """A gcd-reduced fraction of polynomials in GF(2)[x, y]."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num: Poly, den: Poly, normalized: bool = False):
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            num, den = {}, _PONE
        elif not normalized and den != _PONE:
            g = _pgcd(num, den)
            if g != _PONE:
                num = _pdivexact(num, g)
                den = _pdivexact(den, g)
        self.field = field
        self.num = num
        self.den = den

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.field != self.field:
                raise FieldMismatch(f"{other.field} vs {self.field}")
            return other
        if isinstance(other, int):
            return RatFunc(self.field, _PONE if other & 1 else {},
                           _PONE, normalized=True)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            raise FieldMismatch(f"cannot combine {type(other).__name__} with GF(2) function")
        if self.den == o.den:
            return RatFunc(self.field, _padd(self.num, o.num), self.den)
        # Henrici: common factors of the sum and the joint denominator all
        # divide gcd(d1, d2), so only small gcds are ever taken
        g0 = _pgcd(self.den, o.den)
        if g0 == _PONE:
            num = _padd(_pmul(self.num, o.den), _pmul(o.num, self.den))
            return RatFunc(self.field, num, _pmul(self.den, o.den),
                           normalized=True)
        d1r = _pdivexact(self.den, g0)
        d2r = _pdivexact(o.den, g0)
        num = _padd(_pmul(self.num, d2r), _pmul(o.num, d1r))
        g1 = _pgcd(num, g0)
        if g1 != _PONE:
            num = _pdivexact(num, g1)
            den = _pmul(d1r, _pdivexact(o.den, g1))
        else:
            den = _pmul(d1r, o.den)
        return RatFunc(self.field, num, den, normalized=True)

    __radd__ = __add__
    __sub__ = __add__       # characteristic 2
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            raise FieldMismatch(f"cannot combine {type(other).__name__} with GF(2) function")
        if not self.num or not o.num:
            return RatFunc(self.field, {}, _PONE, normalized=True)
        if self.den == _PONE and o.den == _PONE:
            return RatFunc(self.field, _pmul(self.num, o.num), _PONE,
                           normalized=True)
        # cross-cancel so the product is already reduced
        g1 = _pgcd(self.num, o.den)
        g2 = _pgcd(o.num, self.den)
        n1 = _pdivexact(self.num, g1)
        n2 = _pdivexact(o.num, g2)
        d1 = _pdivexact(self.den, g2)
        d2 = _pdivexact(o.den, g1)
        return RatFunc(self.field, _pmul(n1, n2), _pmul(d1, d2), normalized=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            raise FieldMismatch(f"cannot combine {type(other).__name__} with GF(2) function")
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o * self.inverse()

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise DivisionByZero("inverse of zero")
        return RatFunc(self.field, self.den, self.num, normalized=True)

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return (self.field == other.field and self.num == other.num
                    and self.den == other.den)
        if isinstance(other, int):
            o = self._coerce(other)
            return self.num == o.num and self.den == o.den
        return NotImplemented

    def __hash__(self):
        return hash((frozenset(self.num.items()), frozenset(self.den.items())))

    def __str__(self):
        x, y = self.field.indeterminates
        n = f"({_pstr(self.num, x, y)})"
        if self.den == _PONE:
            return n
        return f"{n}/({_pstr(self.den, x, y)})"

    __repr__ = __str__


Scalar = Fraction | RatFunc


# --------------------------------------------------------------------------
# Field specifications.

@dataclass(frozen=True)
class FieldSpec:
    """One of the supported base fields."""

    kind: str
    indeterminates: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind == RATIONALS_KIND:
            if self.indeterminates:
                raise ValueError("the rationals have no indeterminates")
        elif self.kind == GF2_KIND:
            if len(self.indeterminates) != 2:
                raise ValueError("GF(2) function field needs exactly two indeterminates")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @staticmethod
    def rationals() -> "FieldSpec":
        return FieldSpec(RATIONALS_KIND)

    @staticmethod
    def gf2_function_field(x: str = "s", y: str = "t") -> "FieldSpec":
        return FieldSpec(GF2_KIND, (x, y))

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == RATIONALS_KIND else 2

    def zero(self) -> Scalar:
        if self.kind == RATIONALS_KIND:
            return Fraction(0)
        return RatFunc(self, {}, _PONE, normalized=True)

    def one(self) -> Scalar:
        if self.kind == RATIONALS_KIND:
            return Fraction(1)
        return RatFunc(self, _PONE, _PONE, normalized=True)

    def from_int(self, n: int) -> Scalar:
        if self.kind == RATIONALS_KIND:
            return Fraction(n)
        return RatFunc(self, _PONE if n & 1 else {}, _PONE, normalized=True)

    def monomial(self, ex: int, ey: int) -> Scalar:
        """The monomial x^ex * y^ey (GF(2) function fields only)."""
        if self.kind != GF2_KIND:
            raise FieldMismatch("monomials exist only over function fields")
        return RatFunc(self, {ex: 1 << ey}, _PONE, normalized=True)

    def parse(self, text: str) -> Scalar:
        return parse_scalar(self, text)

    def random(self, rng, bound: int) -> Scalar:
        return random_scalar(self, rng, bound)

    def __str__(self):
        if self.kind == RATIONALS_KIND:
            return "Q"
        return f"F2({self.indeterminates[0]},{self.indeterminates[1]})"


RATIONALS = FieldSpec.rationals()


def field_of(x: Scalar) -> FieldSpec:
    """The FieldSpec an element belongs to."""
    if isinstance(x, (Fraction, int)):
        return RATIONALS
    if isinstance(x, RatFunc):
        return x.field
    raise FieldMismatch(f"not a scalar: {type(x).__name__}")


def _check_same_field(x: Scalar, y: Scalar) -> None:
    if field_of(x) != field_of(y):
        raise FieldMismatch(f"{field_of(x)} vs {field_of(y)}")


# --------------------------------------------------------------------------
# Field operations (uniform surface; everyday code uses the operators).

def field_add(x: Scalar, y: Scalar) -> Scalar:
    _check_same_field(x, y)
    return x + y


def field_mul(x: Scalar, y: Scalar) -> Scalar:
    _check_same_field(x, y)
    return x * y


def field_neg(x: Scalar) -> Scalar:
    return -x


def field_inv(x: Scalar) -> Scalar:
    return inv(x)


def inv(x: Scalar) -> Scalar:
    if isinstance(x, RatFunc):
        return x.inverse()
    if not x:
        raise DivisionByZero("inverse of zero")
    return Fraction(1) / x


def is_zero(x: Scalar) -> bool:
    return not x


def characteristic(field: FieldSpec) -> int:
    return field.characteristic


def sqrt_exact(x: Scalar) -> Scalar | None:
    """Exact square root within the field, or None if x is not a square."""
    if isinstance(x, RatFunc):
        n = _psqrt(x.num)
        if n is None:
            return None
        d = _psqrt(x.den)
        if d is None:
            return None
        return RatFunc(x.field, n, d, normalized=True)
    if x < 0:
        return None
    rn, rd = isqrt(x.numerator), isqrt(x.denominator)
    if rn * rn != x.numerator or rd * rd != x.denominator:
        return None
    return Fraction(rn, rd)


def gf2_square_class_components(x: RatFunc) -> tuple[RatFunc, RatFunc, RatFunc, RatFunc]:
    """Write x = c0^2 + c1^2*a + c2^2*b + c3^2*a*b over GF(2)(a, b).

    The subfield of squares has basis 1, a, b, ab; the components are read
    off the exponent parities of num*den over den^2 and mapped back through
    the Frobenius (exponent halving).  Returns (c0, c1, c2, c3).
    """
    field = x.field
    u = _pmul(x.num, x.den)
    parts: list[Poly] = [{}, {}, {}, {}]
    for e, m in u.items():
        ex_par = e & 1
        j = 0
        while m:
            if m & 1:
                idx = ex_par + 2 * (j & 1)
                w = parts[idx]
                key = (e - ex_par) >> 1
                bit = 1 << ((j - (j & 1)) >> 1)
                n = w.get(key, 0) ^ bit
                if n:
                    w[key] = n
                else:
                    w.pop(key, None)
            m >>= 1
            j += 1
    return tuple(RatFunc(field, p, x.den) for p in parts)  # type: ignore[return-value]


# --------------------------------------------------------------------------
# Random generation, parsing, formatting.

def random_scalar(field: FieldSpec, rng, bound: int) -> Scalar:
    """Deterministic bounded random element from the given rng stream.

    Rationals: |numerator| <= bound and denominator <= bound.  GF(2)(x, y):
    numerator and denominator of total degree <= bound.
    """
    if bound < 1:
        raise ValueError("size bound must be >= 1")
    if field.kind == RATIONALS_KIND:
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
    num = _random_poly(rng, bound)
    den = _random_poly(rng, bound)
    while not den:
        den = _random_poly(rng, bound)
    return RatFunc(field, num, den)


def _random_poly(rng, bound: int) -> Poly:
    f: Poly = {}
    for ex in range(bound + 1):
        m = 0
        for ey in range(bound + 1 - ex):
            if rng.getrandbits(1):
                m |= 1 << ey
        if m:
            f[ex] = m
    return f


def scalar_to_string(x: Scalar) -> str:
    """Serialize: rationals as "p/q" (q omitted when 1), function-field
    elements as "(poly)/(poly)" with monomials like "s^2*t"."""
    return str(x)


def parse_scalar(field: FieldSpec, text: str) -> Scalar:
    text = text.strip()
    if field.kind == RATIONALS_KIND:
        return Fraction(text)
    xname, yname = field.indeterminates
    if text.startswith("(") and ")/(" in text:
        left, _, right = text.partition(")/(")
        num = _pparse(left[1:], xname, yname)
        den = _pparse(right[:-1].rstrip(")") if right.endswith(")") else right,
                      xname, yname)
    else:
        if text.startswith("(") and text.endswith(")"):
            text = text[1:-1]
        num = _pparse(text, xname, yname)
        den = _PONE
    return RatFunc(field, num, den)


def total_degree(x: RatFunc) -> int:
    """max(total degree of numerator, total degree of denominator)."""
    return max(_ptotal_deg(x.num), _ptotal_deg(x.den))


def small_scalars(field: FieldSpec):
    """Deterministic stream of small field elements, zero first.

    Rationals: 0, 1, -1, 2, -2, ...; function fields: polynomials by
    increasing total degree, then by monomial-subset bit pattern.
    """
    if field.kind == RATIONALS_KIND:
        yield field.zero()
        n = 1
        while True:
            yield field.from_int(n)
            yield field.from_int(-n)
            n += 1
    else:
        degree = 0
        while True:
            monos = [(ex, ey) for ex in range(degree + 1)
                     for ey in range(degree + 1 - ex)]
            for bits in range(2 ** len(monos)):
                poly: Poly = {}
                for idx, (ex, ey) in enumerate(monos):
                    if (bits >> idx) & 1:
                        poly[ex] = poly.get(ex, 0) | (1 << ey)
                yield RatFunc(field, poly, _PONE, normalized=True)
            degree += 1
