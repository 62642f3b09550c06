"""Named verification suites over a configured algebra.

Each suite checks one family of statements about the constructed
parallelisms.  Trials are deterministic: the random stream of trial i of
suite S under seed N depends only on (N, S, i), so results are identical no
matter how trials are sharded across workers.  A report carries the exact
counts, any failing witnesses, and the certificate levels that back the
claims being exercised.
"""

import hashlib
import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor

from . import clifford, kleingeom, qalg
from .errors import CliffordKleinError, ConfigError
from .kleingeom import (complex_from_hyperplane, find_quadric_point,
                        lines_meet, null_polarity, omega, pencil_gamma_line,
                        perp, pluecker_inverse, pluecker_rep, regulus_through,
                        wedge)
from .linalg import rank, span, vec_add, vec_scale, zero_space
from .sampling import (random_algebra_element, random_line,
                       random_line_through, random_plane_through, random_point,
                       random_point_on, random_vector, random_vector_in)
from .scalars import FieldSpec, GF2_KIND, RATIONALS_KIND, is_zero

SUITE_NAMES = (
    "table1", "polarity", "equivalence", "axioms", "regular-spread",
    "double-space", "opposite-regulus", "unique-complex", "crossed-pencils",
    "translation-invariance", "case-b-identity", "geometric-hyperplane",
)

MUTATE_SUITES = ("axioms", "regular-spread", "double-space")

DEFAULT_TRIALS = 200
DEFAULT_BOUND_RATIONALS = 10
DEFAULT_BOUND_FUNCTION_FIELD = 2


# --------------------------------------------------------------------------
# Configuration.

def parse_field(text: str) -> FieldSpec:
    text = text.strip()
    if text == "Q":
        return FieldSpec.rationals()
    if text.startswith("F2(") and text.endswith(")"):
        names = [n.strip() for n in text[3:-1].split(",")]
        if len(names) == 2 and all(names):
            return FieldSpec.gf2_function_field(*names)
    raise ConfigError(f"unknown field {text!r}; expected \"Q\" or \"F2(x,y)\"")


def algebra_from_config(config: dict) -> qalg.Algebra:
    try:
        case = config["case"]
        field = parse_field(config["field"])
        a = field.parse(config["a"])
        b = field.parse(config["b"])
        validation = config.get("validation", "assert")
    except ConfigError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad algebra config: {exc}") from exc
    return qalg.make_algebra(case, field, a, b, validation)


def default_bound(field: FieldSpec) -> int:
    if field.kind == RATIONALS_KIND:
        return DEFAULT_BOUND_RATIONALS
    return DEFAULT_BOUND_FUNCTION_FIELD


class VerifyContext:
    """Algebra plus its two certified parallelisms."""

    __slots__ = ("config", "algebra", "left", "right", "bound")

    def __init__(self, config: dict, bound: int | None = None):
        self.config = config
        self.algebra = algebra_from_config(config)
        self.left = clifford.plane_C(self.algebra)
        self.right = clifford.plane_Cprime(self.algebra)
        self.bound = bound if bound is not None else default_bound(self.algebra.field)

    def certificates(self) -> list[dict]:
        return [
            {"claim": "algebra has no zero divisors",
             "level": self.algebra.certificate.describe()},
            {"claim": "plane C is external to the quadric",
             "level": self.left.certificate.describe()},
            {"claim": "plane C' is external to the quadric",
             "level": self.right.certificate.describe()},
        ]


def _trial_rng(seed: int, suite: str, index: int) -> random.Random:
    digest = hashlib.sha256(f"{seed}:{suite}:{index}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


# --------------------------------------------------------------------------
# Expected kernel bases (exact reproduction checks).

def expected_plane_basis(algebra: qalg.Algebra, primed: bool) -> list[tuple]:
    """The published kernel bases in bivector coordinates
    (1^i, 1^j, 1^k, i^j, i^k, j^k)."""
    f = algebra.field
    z, o = f.zero(), f.one()
    a, b = algebra.a, algebra.b
    if algebra.case in (qalg.CASE_A1, qalg.CASE_B):
        if not primed:
            return [(b, z, z, z, z, -o), (z, a, z, z, o, z), (z, z, o, o, z, z)]
        return [(b, z, z, z, z, o), (z, a, z, z, -o, z), (z, z, o, -o, z, z)]
    if not primed:
        return [(b, z, z, z, z, o), (z, a, z, z, o, z), (z, o, o, o, z, z)]
    return [(b, z, z, z, z, o), (z, a, o, z, o, z), (z, z, o, o, z, z)]


def expected_char2_meet_point(algebra: qalg.Algebra) -> tuple:
    """In case A2 the planes meet in the single point b*(1^i) + j^k."""
    f = algebra.field
    z, o = f.zero(), f.one()
    return (algebra.b, z, z, z, z, o)


# --------------------------------------------------------------------------
# Exact suites.

def _checks_table1(ctx: VerifyContext) -> list[tuple]:
    expected_c = span(ctx.algebra.field, 6, expected_plane_basis(ctx.algebra, False))
    expected_cp = span(ctx.algebra.field, 6, expected_plane_basis(ctx.algebra, True))
    return [
        ("plane C equals the published kernel basis",
         ctx.left.plane == expected_c,
         {"got": ctx.left.plane.to_json(), "expected": expected_c.to_json()}),
        ("plane C' equals the published kernel basis",
         ctx.right.plane == expected_cp,
         {"got": ctx.right.plane.to_json(), "expected": expected_cp.to_json()}),
    ]


def _checks_polarity(ctx: VerifyContext) -> list[tuple]:
    field = ctx.algebra.field
    c, cp = ctx.left.plane, ctx.right.plane
    checks = [("C' is the polar plane of C", cp == perp(c),
               {"Cperp": perp(c).to_json(), "Cprime": cp.to_json()})]
    meet = c.meet(cp)
    if field.characteristic != 2:
        checks.append(("C and C' are disjoint in characteristic 0",
                       meet.dim == 0, {"meet": meet.to_json()}))
    elif ctx.algebra.case == qalg.CASE_A2:
        point = span(field, 6, [expected_char2_meet_point(ctx.algebra)])
        checks.append(("C meets C' exactly in the published point",
                       meet == point, {"meet": meet.to_json()}))
    else:
        checks.append(("C is self-polar in case B", c == cp,
                       {"meet": meet.to_json()}))
    return checks


EXACT_SUITES = {"table1": _checks_table1, "polarity": _checks_polarity}


# --------------------------------------------------------------------------
# Per-trial suites.  Each returns None on success or a witness dict.

def _random_line_pair(ctx, rng):
    m = random_line(ctx.algebra.field, rng, ctx.bound)
    while True:
        n = random_line(ctx.algebra.field, rng, ctx.bound)
        if n != m:
            return m, n


def _trial_equivalence(ctx: VerifyContext, rng) -> dict | None:
    alg = ctx.algebra
    if rng.getrandbits(1):
        m = random_line(alg.field, rng, ctx.bound)
        c = random_algebra_element(alg, rng, ctx.bound)
        n_left = clifford.translate_line(alg, c, m, left=True)
        n_right = clifford.translate_line(alg, c, m, left=False)
        if not (clifford.left_parallel(alg, m, n_left)
                and clifford.c_parallel(ctx.left, m, n_left)):
            return {"kind": "constructed-left", "M": m.to_json(),
                    "c": alg.element_json(c)}
        if not (clifford.right_parallel(alg, m, n_right)
                and clifford.c_parallel(ctx.right, m, n_right)):
            return {"kind": "constructed-right", "M": m.to_json(),
                    "c": alg.element_json(c)}
        return None
    m, n = _random_line_pair(ctx, rng)
    if clifford.left_parallel(alg, m, n) != clifford.c_parallel(ctx.left, m, n):
        return {"kind": "left-vs-plane", "M": m.to_json(), "N": n.to_json()}
    if clifford.right_parallel(alg, m, n) != clifford.c_parallel(ctx.right, m, n):
        return {"kind": "right-vs-plane", "M": m.to_json(), "N": n.to_json()}
    return None


def _trial_axioms(ctx: VerifyContext, rng) -> dict | None:
    field = ctx.algebra.field
    p = random_point(field, rng, 4, ctx.bound)
    m = random_line(field, rng, ctx.bound)
    n = clifford.parallel_through(ctx.left, p, m)
    if not (n.contains(p) and clifford.c_parallel(ctx.left, m, n)):
        return {"kind": "existence", "p": p.to_json(), "M": m.to_json()}
    if clifford.parallel_through(ctx.left, p, n) != n:
        return {"kind": "uniqueness", "p": p.to_json(), "M": m.to_json()}
    if not clifford.c_parallel(ctx.left, m, m):
        return {"kind": "reflexivity", "M": m.to_json()}
    if not clifford.c_parallel(ctx.left, n, m):
        return {"kind": "symmetry", "M": m.to_json(), "N": n.to_json()}
    q = random_point(field, rng, 4, ctx.bound)
    n2 = clifford.parallel_through(ctx.left, q, n)
    if not clifford.c_parallel(ctx.left, m, n2):
        return {"kind": "transitivity", "M": m.to_json(), "N": n.to_json(),
                "N2": n2.to_json()}
    return None


def _trial_regular_spread(ctx: VerifyContext, rng) -> dict | None:
    field = ctx.algebra.field
    m = random_line(field, rng, ctx.bound)
    k = clifford.parallel_class(ctx.left, m)
    ok, mode = clifford.class_is_regular_spread(k, rng, bound=ctx.bound,
                                                samples=1000)
    if not ok:
        return {"kind": "polar-line-carries-quadric-point", "M": m.to_json(),
                "mode": mode}
    members = k.sample_lines(rng, ctx.bound, 3)
    for i in range(len(members)):
        if not k.contains_line(members[i]):
            return {"kind": "member-outside-class", "M": m.to_json()}
        for j in range(i + 1, len(members)):
            if lines_meet(members[i], members[j]):
                return {"kind": "members-meet", "A": members[i].to_json(),
                        "B": members[j].to_json()}
    return None


def _trial_double_space(ctx: VerifyContext, rng) -> dict | None:
    field = ctx.algebra.field
    while True:
        a = random_point(field, rng, 4, ctx.bound)
        b = random_point(field, rng, 4, ctx.bound)
        c = random_point(field, rng, 4, ctx.bound)
        if span(field, 4, [a.rows[0], b.rows[0], c.rows[0]]).dim == 3:
            break
    if not clifford.double_space_check(ctx.left, ctx.right, a, b, c):
        return {"kind": "double-space", "p": a.to_json(), "q": b.to_json(),
                "r": c.to_json()}
    if not clifford.double_space_check(ctx.right, ctx.left, a, b, c):
        return {"kind": "double-space-swapped", "p": a.to_json(),
                "q": b.to_json(), "r": c.to_json()}
    return None


def _class_and_transversal_regulus(ctx: VerifyContext, rng):
    """Three distinct members of one parallel class that meet a common line."""
    field = ctx.algebra.field
    while True:
        m = random_line(field, rng, ctx.bound)
        n = random_line(field, rng, ctx.bound)
        if clifford.c_parallel(ctx.left, m, n):
            continue
        u, v = n.ff_rows
        pts = [span(field, 4, [u]), span(field, 4, [v]),
               span(field, 4, [tuple(x + y for x, y in zip(u, v))])]
        lines = [clifford.parallel_through(ctx.left, p, m) for p in pts]
        if len({lines[0], lines[1], lines[2]}) == 3:
            return regulus_through(*lines), n


def _trial_opposite_regulus(ctx: VerifyContext, rng) -> dict | None:
    reg, transversal_line = _class_and_transversal_regulus(ctx, rng)
    if not clifford.opposite_regulus_parallel_check(
            ctx.left, reg, rng, ctx.bound, extra_members=(transversal_line,)):
        return {"kind": "opposite-not-parallel", "E": reg.plane.to_json()}
    section = reg.plane.meet(ctx.left.plane)
    if section.dim != 2:
        return {"kind": "regulus-plane-section", "dim": section.dim}
    dual = perp(reg.plane).join(perp(ctx.left.plane))
    if dual.dim != 4:
        return {"kind": "polar-join-not-a-solid", "dim": dual.dim}
    return None


def _pencil_against_complex(ctx, rng, complex_) -> dict | None:
    field = ctx.algebra.field
    p = random_point(field, rng, 4, ctx.bound)
    z = random_plane_through(p, rng, ctx.bound)
    gamma_line = pencil_gamma_line(p, z)
    u, v = gamma_line.ff_rows
    su, sv = complex_.form_value(u), complex_.form_value(v)
    if is_zero(su) and is_zero(sv):
        # the whole pencil lies inside the complex
        for _ in range(3):
            w = random_vector_in(z, rng, ctx.bound)
            line = span(field, 4, [p.ff_rows[0], w])
            if line.dim == 2 and not complex_.contains_line(line):
                return {"kind": "contained-pencil-member-outside",
                        "p": p.to_json(), "Z": z.to_json()}
        return None
    # otherwise the section is the single point sv*u - su*v
    point = vec_add(vec_scale(sv, u), vec_scale(-su, v))
    member = pluecker_inverse(point)
    if not (complex_.contains_line(member) and member.contains(p)
            and z.contains(member)):
        return {"kind": "pencil-member-invalid", "p": p.to_json(),
                "Z": z.to_json()}
    return None


def _trial_unique_complex(ctx: VerifyContext, rng) -> dict | None:
    m1, m2 = _random_line_pair(ctx, rng)
    while clifford.c_parallel(ctx.left, m1, m2):
        m1, m2 = _random_line_pair(ctx, rng)
    cx = clifford.hyperplane_for_classes(ctx.left, m1, m2)
    if cx.hyperplane.dim != 5:
        return {"kind": "hyperplane-dimension", "dim": cx.hyperplane.dim}
    if cx.kind != "general":
        return {"kind": "complex-not-general"}
    for m in (m1, m2):
        for _ in range(2):
            c = random_algebra_element(ctx.algebra, rng, ctx.bound)
            member = clifford.translate_line(ctx.algebra, c, m, left=True)
            if not clifford.c_parallel(ctx.left, m, member):
                return {"kind": "translate-outside-class", "M": m.to_json()}
            if not cx.contains_line(member):
                return {"kind": "class-member-outside-complex",
                        "M": m.to_json()}
    for _ in range(5):
        witness = _pencil_against_complex(ctx, rng, cx)
        if witness is not None:
            return witness
    return None


def _crossed_pencil_config(ctx: VerifyContext, rng, want_pencil: bool):
    field = ctx.algebra.field
    while True:
        p = random_point(field, rng, 4, ctx.bound)
        m1 = random_line_through(p, rng, ctx.bound)
        m2 = random_line_through(p, rng, ctx.bound)
        if m1 == m2:
            continue
        carrier_rows = [p.ff_rows[0], m1.ff_rows[0], m1.ff_rows[1],
                        m2.ff_rows[0], m2.ff_rows[1]]
        if want_pencil:
            # a combination of spanning vectors of the carrier plane
            q_vec = random_vector_in(m1, rng, ctx.bound)
            q_vec = vec_add(q_vec, random_vector_in(m2, rng, ctx.bound))
            if not any(q_vec):
                continue
            q = span(field, 4, [q_vec])
        else:
            q = random_point(field, rng, 4, ctx.bound)
            if rank(carrier_rows + [q.ff_rows[0]], field) == 3:
                continue
        if q == p or m1.contains(q) or m2.contains(q):
            continue
        n1 = clifford.left_parallel_line_through(ctx.algebra, q, m1)
        n2 = clifford.left_parallel_line_through(ctx.algebra, q, m2)
        if n1 == n2:
            continue
        return p, q, m1, m2, n1, n2


def _trial_crossed_pencils(ctx: VerifyContext, rng) -> dict | None:
    want_pencil = rng.getrandbits(2) != 0  # mostly non-vacuous configurations
    p, q, m1, m2, n1, n2 = _crossed_pencil_config(ctx, rng, want_pencil)
    if not clifford.crossed_pencils_check(ctx.left, m1, m2, n1, n2):
        return {"kind": "crossed-pencils", "p": p.to_json(), "q": q.to_json(),
                "M1": m1.to_json(), "M2": m2.to_json()}
    if want_pencil:
        cx = clifford.hyperplane_for_classes(ctx.left, m1, m2)
        pi = null_polarity(cx)
        q_plane = pi.plane_of(q)
        joining = p.join(q)
        for line in (n1, n2, joining):
            if not q_plane.contains(line):
                return {"kind": "null-polarity-pencil", "q": q.to_json(),
                        "line": line.to_json()}
    return None


def _trial_translation_invariance(ctx: VerifyContext, rng) -> dict | None:
    c = random_algebra_element(ctx.algebra, rng, ctx.bound)
    if not clifford.translation_invariance_check(ctx.algebra, c, ctx.left,
                                                 rng=rng, bound=ctx.bound,
                                                 hyperplane_samples=0,
                                                 polar_plane=ctx.right.plane):
        return {"kind": "translation-invariance",
                "c": ctx.algebra.element_json(c)}
    return None


def _trial_case_b_identity(ctx: VerifyContext, rng) -> dict | None:
    alg = ctx.algebra
    if alg.case == qalg.CASE_B:
        if rng.getrandbits(1):
            m = random_line(alg.field, rng, ctx.bound)
            c = random_algebra_element(alg, rng, ctx.bound)
            n = clifford.translate_line(alg, c, m, left=True)
        else:
            m, n = _random_line_pair(ctx, rng)
        if clifford.left_parallel(alg, m, n) != clifford.right_parallel(alg, m, n):
            return {"kind": "left-right-differ", "M": m.to_json(),
                    "N": n.to_json()}
        return None
    # outside case B the two parallelisms are distinct: find a separating pair
    for _ in range(10):
        m = random_line(alg.field, rng, ctx.bound)
        c = random_algebra_element(alg, rng, ctx.bound)
        n = clifford.translate_line(alg, c, m, left=True)
        if not clifford.right_parallel(alg, m, n):
            return None
    return {"kind": "left-right-indistinguishable"}


def _trial_geometric_hyperplane(ctx: VerifyContext, rng) -> dict | None:
    m1, m2 = _random_line_pair(ctx, rng)
    while clifford.c_parallel(ctx.left, m1, m2):
        m1, m2 = _random_line_pair(ctx, rng)
    cx = clifford.hyperplane_for_classes(ctx.left, m1, m2)
    for _ in range(5):
        witness = _pencil_against_complex(ctx, rng, cx)
        if witness is not None:
            return witness
    return None


TRIAL_SUITES = {
    "equivalence": _trial_equivalence,
    "axioms": _trial_axioms,
    "regular-spread": _trial_regular_spread,
    "double-space": _trial_double_space,
    "opposite-regulus": _trial_opposite_regulus,
    "unique-complex": _trial_unique_complex,
    "crossed-pencils": _trial_crossed_pencils,
    "translation-invariance": _trial_translation_invariance,
    "case-b-identity": _trial_case_b_identity,
    "geometric-hyperplane": _trial_geometric_hyperplane,
}


# --------------------------------------------------------------------------
# Runner.

def _run_trial_range(config: dict, bound, suite: str, seed: int,
                     indices) -> list[tuple[int, dict]]:
    ctx = VerifyContext(config, bound)
    fn = TRIAL_SUITES[suite]
    witnesses = []
    for i in indices:
        rng = _trial_rng(seed, suite, i)
        try:
            witness = fn(ctx, rng)
        except CliffordKleinError as exc:
            witness = {"kind": "error", "error": type(exc).__name__,
                       "message": str(exc)}
        if witness is not None:
            witness["trial"] = i
            witnesses.append((i, witness))
    return witnesses


def run_suite(ctx: VerifyContext, suite: str, seed: int,
              trials: int = DEFAULT_TRIALS, workers: int = 1) -> dict:
    """Run one suite and build its report."""
    start = time.monotonic()
    if suite in EXACT_SUITES:
        checks = EXACT_SUITES[suite](ctx)
        witnesses = [{"check": name, **data}
                     for name, ok, data in checks if not ok]
        total, passed = len(checks), sum(1 for _, ok, _ in checks if ok)
    elif suite in TRIAL_SUITES:
        if workers > 1 and trials >= 2 * workers:
            chunks = [range(w, trials, workers) for w in range(workers)]
            with ProcessPoolExecutor(max_workers=workers) as pool:
                parts = pool.map(_run_trial_range,
                                 [ctx.config] * workers, [ctx.bound] * workers,
                                 [suite] * workers, [seed] * workers, chunks)
            indexed = [w for part in parts for w in part]
        else:
            indexed = _run_trial_range(ctx.config, ctx.bound, suite, seed,
                                       range(trials))
        indexed.sort(key=lambda pair: pair[0])
        witnesses = [w for _, w in indexed]
        total, passed = trials, trials - len(witnesses)
    else:
        raise ConfigError(f"unknown suite {suite!r}")
    return {
        "suite": suite,
        "algebra": ctx.config,
        "seed": seed,
        "trials": total,
        "passed": passed,
        "failed_witnesses": witnesses,
        "certificates": ctx.certificates(),
        "wall_time_ms": int((time.monotonic() - start) * 1000),
    }


def run_suites(ctx: VerifyContext, suite: str, seed: int,
               trials: int = DEFAULT_TRIALS, workers: int = 1) -> list[dict]:
    names = SUITE_NAMES if suite == "all" else (suite,)
    return [run_suite(ctx, name, seed, trials, workers) for name in names]


def workers_from_env() -> int:
    try:
        return max(1, int(os.environ.get("CK_WORKERS", "1")))
    except ValueError:
        return 1


# --------------------------------------------------------------------------
# Negative control: verify the suites notice a broken plane.

def _mutated_parallelisms(ctx: VerifyContext, rng):
    """A plane through a quadric point, with the point's line as witness."""
    field = ctx.algebra.field
    while True:
        u = random_vector(field, rng, 4, ctx.bound)
        v = random_vector(field, rng, 4, ctx.bound)
        point = wedge(u, v)
        if not any(point):
            continue
        plane = span(field, 6, [point,
                                random_vector(field, rng, 6, ctx.bound),
                                random_vector(field, rng, 6, ctx.bound)])
        if plane.dim != 3:
            continue
        cert = clifford.ExternalityCertificate(clifford.EXTERNALITY_SAMPLED, 0)
        mutated = clifford.Parallelism(plane, cert)
        mutated_perp = clifford.Parallelism(perp(plane), cert)
        return mutated, mutated_perp, point, span(field, 4, [u, v])


class _MutatedContext:
    """VerifyContext stand-in whose planes are the mutated pair."""

    __slots__ = ("config", "algebra", "left", "right", "bound")

    def __init__(self, base: VerifyContext, left, right):
        self.config = base.config
        self.algebra = base.algebra
        self.left = left
        self.right = right
        self.bound = base.bound


def _probe_witness_line(ctx, witness_line, rng) -> dict | None:
    """Targeted uniqueness probes at points of the planted quadric point's
    line; these break deterministically when the plane is not external."""
    field = ctx.algebra.field
    u, v = witness_line.ff_rows
    for p0 in (u, v, tuple(x + y for x, y in zip(u, v))):
        p = span(field, 4, [p0])
        m = random_line(field, rng, ctx.bound)
        try:
            n = clifford.parallel_through(ctx.left, p, m)
        except CliffordKleinError as exc:
            return {"kind": "error", "error": type(exc).__name__,
                    "message": str(exc)}
        if not (n.contains(p) and clifford.c_parallel(ctx.left, m, n)):
            return {"kind": "uniqueness-broken", "p": p.to_json(),
                    "M": m.to_json()}
    return None


def run_mutate(config: dict, seed: int, trials: int = 20,
               bound: int | None = None) -> dict:
    """Replace the plane by a random non-external one and report which
    suites break; the unmutated control must pass."""
    start = time.monotonic()
    ctx = VerifyContext(config, bound)
    rng = _trial_rng(seed, "mutate", 0)
    mutated_left, mutated_right, point, witness_line = _mutated_parallelisms(ctx, rng)
    mutated_ctx = _MutatedContext(ctx, mutated_left, mutated_right)

    control, mutated, broken = {}, {}, []
    for suite in MUTATE_SUITES:
        fn = TRIAL_SUITES[suite]
        control[suite] = _mini_run(ctx, fn, suite, seed, trials)
        result = _mini_run(mutated_ctx, fn, suite, seed, trials)
        if suite == "axioms":
            probe = _probe_witness_line(mutated_ctx, witness_line, rng)
            result["trials"] += 1
            if probe is not None:
                result["witnesses"].append(probe)
            else:
                result["passed"] += 1
        if result["passed"] < result["trials"]:
            broken.append(suite)
        mutated[suite] = result

    return {
        "mode": "mutate",
        "algebra": config,
        "seed": seed,
        "planted_point": [str(c) for c in point],
        "witness_line": witness_line.to_json(),
        "control": control,
        "mutated": mutated,
        "broken_suites": broken,
        "wall_time_ms": int((time.monotonic() - start) * 1000),
    }


def _mini_run(ctx, fn, suite: str, seed: int, trials: int) -> dict:
    witnesses = []
    for i in range(trials):
        rng = _trial_rng(seed, f"mutate-{suite}", i)
        try:
            witness = fn(ctx, rng)
        except CliffordKleinError as exc:
            witness = {"kind": "error", "error": type(exc).__name__,
                       "message": str(exc)}
        if witness is not None:
            witness["trial"] = i
            witnesses.append(witness)
    return {"trials": trials, "passed": trials - len(witnesses),
            "witnesses": witnesses}


def report_to_json(report) -> str:
    return json.dumps(report, indent=2, sort_keys=True)
