"""Exception hierarchy shared by all modules."""


class CliffordKleinError(Exception):
    """Base class for every error raised by this package."""


# --- scalars ---------------------------------------------------------------

class FieldMismatch(CliffordKleinError):
    """Operands belong to different base fields."""


class DivisionByZero(CliffordKleinError, ZeroDivisionError):
    """Inversion of, or division by, the zero element."""


# --- linalg ----------------------------------------------------------------

class AmbientMismatch(CliffordKleinError):
    """Vectors or subspaces live in ambient spaces of different dimension."""


# --- kleingeom -------------------------------------------------------------

class NotAPoint(CliffordKleinError):
    """A projective point (vector dimension 1) was expected."""


class NotALine(CliffordKleinError):
    """A projective line (vector dimension 2) was expected."""


class NotAPlane(CliffordKleinError):
    """A projective plane (vector dimension 3) was expected."""


class BadDimension(CliffordKleinError):
    """Subspace has the wrong dimension for this operation."""


class ZeroBivector(CliffordKleinError):
    """The zero bivector does not determine a line."""


class NotOnQuadric(CliffordKleinError):
    """The bivector is not decomposable (its quadratic form value is nonzero)."""


class SpecialComplex(CliffordKleinError):
    """A general linear complex was expected, but the complex is special."""


class NotSkew(CliffordKleinError):
    """Three pairwise skew lines were expected."""


class DegenerateConic(CliffordKleinError):
    """The plane section of the quadric is not a nondegenerate conic."""


# --- qalg ------------------------------------------------------------------

class BadStructureConstants(CliffordKleinError):
    """Structure constants must be nonzero field elements."""


class CharMismatch(CliffordKleinError):
    """Algebra case is incompatible with the field characteristic."""


class NotDivisionAlgebra(CliffordKleinError):
    """Division-property validation failed.  ``witness`` holds a nonzero
    element of norm zero when the validator found one."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ZeroDivisor(CliffordKleinError):
    """Inversion hit an element of norm zero; validation was too weak."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ZeroElement(CliffordKleinError):
    """A nonzero algebra element was expected."""


class SingularMap(CliffordKleinError):
    """An invertible linear map was expected."""


# --- clifford --------------------------------------------------------------

class KernelDimensionUnexpected(CliffordKleinError):
    """The kernel of the defining map does not have vector dimension 3."""


class MeetNotAPoint(CliffordKleinError):
    """The star-plane section of a class solid was not a single point;
    the plane of the parallelism cannot be external to the quadric."""


class NonCollinearRequired(CliffordKleinError):
    """Three non-collinear points were expected."""


class PreconditionFailed(CliffordKleinError):
    """An operation's documented precondition does not hold."""


class SameClass(CliffordKleinError):
    """Two lines from distinct parallel classes were expected."""


class BadConfiguration(CliffordKleinError):
    """The four lines do not form a valid crossed-pencils configuration."""


class BadForm(CliffordKleinError):
    """A nonzero linear form vanishing on the identity was expected."""


# --- cli -------------------------------------------------------------------

class ConfigError(CliffordKleinError):
    """The algebra configuration file is malformed."""
