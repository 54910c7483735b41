"""Verification suites over a quiver and a field.

Every suite returns a list of (name, ok, detail) triples and never stops
at the first failure. When a check fails, the detail carries the inputs
printed in the element grammar (or explicit matrix/basis labels for the
auxiliary models), so a reported counterexample can be replayed through
the bracket command or a short script.

Suites that need a hypothesis the input violates raise HypothesisRefusal
rather than reporting failures; suites pointed at a quiver of the wrong
shape raise UsageError.
"""

import random

from .cohomology import (
    apply_theta,
    build_D,
    cohomology_cached,
    injectivity_checks,
    kernel_checks,
)
from .errors import HypothesisRefusal, UsageError
from .exactla import Subspace, kernel_image, rank_of
from .expr import format_element, format_pair
from .gerst import (
    MWElement,
    PropElement,
    _one_loop_seed,
    _require_one_loop,
    bracket,
    mw_ops,
    one_loop_bracket_oracle,
    project,
    zero_element,
)
from .propcalc import (
    EndProp,
    QuiverProp,
    RLoopsProp,
    TensorModel,
    TwoLoopsCorrespondence,
    gl_bracket,
    gl_theta,
    interchange_failures,
    prop_bracket,
    star,
    t_bracket,
    t_theta,
    to_chain,
)
from .quiver import ParallelPair, Path

_SEED = 20240915


def _require_char_not(field, p, what):
    if field.characteristic == p:
        raise HypothesisRefusal("%s requires characteristic != %d" % (what, p))


def _require_char_zero(field, what):
    if field.characteristic != 0:
        raise HypothesisRefusal("%s requires characteristic 0" % what)


# ---- kernel and injectivity of the connecting map ----


def kernel_suite(quiver, field, bound=4, guard=200000):
    return kernel_checks(quiver, field, bound=bound, guard=guard)


def injectivity_suite(quiver, field, bound=4, guard=200000):
    return injectivity_checks(quiver, field, bound=bound, guard=guard)


# ---- one-loop bracket constants ----


def witt_suite(quiver, field, bound=4, guard=200000):
    """Chain brackets of the one-loop classes against the frozen table."""
    _require_one_loop(quiver, 1, 1)
    _require_char_not(field, 2, "the one-loop bracket table")
    top = max(2, min(bound + 1, 8))
    results = []
    for m in range(1, top + 1):
        f = _one_loop_seed(quiver, m, field.one(), field)
        for n in range(1, top + 1):
            g = _one_loop_seed(quiver, n, field.one(), field)
            got = bracket(f, g, field)
            want = one_loop_bracket_oracle(quiver, m, n, field)
            ok = got == want
            if ok:
                detail = "matches the frozen constant"
            else:
                detail = "bracket of %s and %s gave %s, expected %s" % (
                    format_element(f),
                    format_element(g),
                    format_element(got),
                    format_element(want),
                )
            results.append(("witt m=%d n=%d" % (m, n), ok, detail))
    return results


# ---- degree-one structure of the two-loops quiver ----


def sl2_suite(quiver, field, bound=4, guard=200000):
    """Bracket table of the four degree-one classes on two loops."""
    if (
        len(quiver.vertices) != 1
        or len(quiver.arrows) != 2
        or any(a.source != a.target for a in quiver.arrows)
    ):
        raise UsageError(
            "the special linear split needs the quiver with two loops on one vertex"
        )
    _require_char_zero(field, "the special linear split")
    one = field.one()
    a = quiver.arrow_path(quiver.arrows[0].name)
    b = quiver.arrow_path(quiver.arrows[1].name)

    def unit(first, second, coeff):
        return PropElement(quiver, 1, 1, {}, {ParallelPair(first, second): coeff})

    e = unit(b, a, one)
    f = unit(a, b, one)
    h = unit(a, a, one) + unit(b, b, -one)
    center = unit(a, a, one) + unit(b, b, one)

    results = []
    group = cohomology_cached(quiver, 1, 0, field, guard=guard)
    dim = len(group.quotient_reps) + len(group.kernel_basis)
    results.append(
        (
            "degree-one group has dimension 4",
            dim == 4,
            "dimension %d" % dim,
        )
    )

    offset = quiver.pair_count(1, 1)
    class_vecs = []
    for x in (e, f, h, center):
        cls = project(x, field, guard=guard)
        vec = dict(cls.high_residue)
        for pos, c in cls.low_kernel.items():
            vec[offset + pos] = c
        class_vecs.append(vec)
    indep = rank_of(class_vecs, field) == 4
    results.append(
        (
            "the four generators are independent classes",
            indep,
            "rank %d of 4" % rank_of(class_vecs, field),
        )
    )

    two = field.scalar(2)
    table = [
        (e, f, h),
        (h, e, e.scaled(two)),
        (h, f, f.scaled(-two)),
        (center, e, zero_element(quiver, 1, 1)),
        (center, f, zero_element(quiver, 1, 1)),
        (center, h, zero_element(quiver, 1, 1)),
        (center, center, zero_element(quiver, 1, 1)),
    ]
    for x, y, want in table:
        got = bracket(x, y, field)
        ok = project(got, field, guard=guard) == project(want, field, guard=guard)
        name = "[%s, %s] = %s" % (
            format_element(x),
            format_element(y),
            format_element(want),
        )
        if ok:
            detail = "holds as classes"
        else:
            detail = "got %s instead" % format_element(got)
        results.append((name, ok, detail))
    return results


# ---- bracket identities on an even crown ----


def _crown_walk(quiver, vertex, length):
    """The unique path of the given length starting at a crown vertex."""
    rev = []
    v = vertex
    for _ in range(length):
        i = quiver.arrows_by_source[v][0]
        rev.append(i)
        v = quiver.arrows[i].target
    if not rev:
        return quiver.trivial_path(vertex)
    return Path(quiver, tuple(reversed(rev)))


def crown_single(quiver, arrow_name, p, field, coeff=None):
    """The class (a, a followed by p turns of the cycle), second block."""
    c = len(quiver.arrows)
    a = quiver.arrow_path(arrow_name)
    w = _crown_walk(quiver, a.source, c * p + 1)
    coeff = field.one() if coeff is None else coeff
    return PropElement(quiver, 1, c * p + 1, {}, {ParallelPair(a, w): coeff})


def crown_sigma(quiver, p, field, coeff=None):
    """The diagonal sum of the single classes, first block, one arity up."""
    c = len(quiver.arrows)
    coeff = field.one() if coeff is None else coeff
    low = {}
    for arw in quiver.arrows:
        a = quiver.arrow_path(arw.name)
        low[ParallelPair(a, _crown_walk(quiver, a.source, c * p + 1))] = coeff
    return PropElement(quiver, 1, c * p + 2, low, {})


def crown_suite(quiver, field, bound=4, guard=200000):
    """Chain-level bracket identities among the crown cycle classes."""
    if not quiver.is_crown():
        raise UsageError("the cycle bracket identities need a crown quiver")
    c = len(quiver.arrows)
    if c % 2 != 0:
        raise HypothesisRefusal(
            "the cycle bracket identities require an even cycle length, got %d" % c
        )
    _require_char_not(field, 2, "the cycle bracket table")
    results = []
    powers = (1, 2)
    for p in powers:
        for q in powers:
            for arw in quiver.arrows:
                f = crown_single(quiver, arw.name, p, field)
                g = crown_single(quiver, arw.name, q, field)
                want = crown_single(quiver, arw.name, p + q, field, field.scalar(q - p))
                got = bracket(f, g, field)
                ok = got == want
                name = "single brackets: arrow %s, powers %d and %d" % (
                    arw.name,
                    p,
                    q,
                )
                if ok:
                    detail = "[%s, %s] = %s" % (
                        format_element(f),
                        format_element(g),
                        format_element(want),
                    )
                else:
                    detail = "[%s, %s] gave %s, expected %s" % (
                        format_element(f),
                        format_element(g),
                        format_element(got),
                        format_element(want),
                    )
                results.append((name, ok, detail))
    for p in powers:
        for q in powers:
            sp = crown_sigma(quiver, p, field)
            sq = crown_sigma(quiver, q, field)
            got = bracket(sp, sq, field)
            ok = got.is_zero()
            name = "diagonal sums commute: powers %d and %d" % (p, q)
            detail = (
                "[%s, %s] = 0" % (format_element(sp), format_element(sq))
                if ok
                else "[%s, %s] gave %s" % (
                    format_element(sp),
                    format_element(sq),
                    format_element(got),
                )
            )
            results.append((name, ok, detail))
    for p in powers:
        for q in powers:
            sp = crown_sigma(quiver, p, field)
            for arw in quiver.arrows:
                g = crown_single(quiver, arw.name, q, field)
                want = crown_sigma(quiver, p + q, field, field.scalar(-p))
                got = bracket(sp, g, field)
                ok = got == want
                name = "diagonal against single: powers %d and %d, arrow %s" % (
                    p,
                    q,
                    arw.name,
                )
                if ok:
                    detail = "[%s, %s] = %s" % (
                        format_element(sp),
                        format_element(g),
                        format_element(want),
                    )
                else:
                    detail = "[%s, %s] gave %s, expected %s" % (
                        format_element(sp),
                        format_element(g),
                        format_element(got),
                        format_element(want),
                    )
                results.append((name, ok, detail))
    return results


# ---- star bracket laws on the finite instances ----


def _rand_vec(prop, m, n, rng, lawful=False):
    basis = prop.bracket_basis(m, n) if lawful else prop.basis(m, n)
    vec = prop.zero(m, n)
    for _ in range(2):
        coeff = prop.field.scalar(rng.randint(-2, 2))
        if coeff:
            vec = vec + prop.unit(m, n, rng.choice(basis), coeff)
    return vec


def _vec_text(prop, vec):
    if isinstance(prop, QuiverProp):
        return format_element(to_chain(prop, vec))
    if vec.is_zero():
        return "0"
    parts = []
    for key in sorted(vec.terms, key=repr):
        parts.append(
            "%s * %s" % (prop.field.format(vec.terms[key]), prop.basis_label(key))
        )
    return " + ".join(parts) + " at arity (%d, %d)" % (vec.m, vec.n)


def _bilinear_instances(quiver, field, guard):
    return [
        ("quiver(%s)" % quiver.name, QuiverProp(quiver, field, guard=guard)),
        ("end_v(2)", EndProp(2, field)),
        ("r_loops(2)", RLoopsProp(2, field)),
    ]


def jacobi_prop_suite(quiver, field, bound=4, guard=200000):
    """Interchange, identity laws, antisymmetry, and the Jacobi identity
    for the star bracket on the finite instances.

    The direct-sum instance only enters the interchange check: its
    horizontal product places blocks and is not additive in either slot,
    so the bracket laws are not claimed for it. On the two-block
    instances the laws are certified on the span of the full-length
    keys; the short block composes to zero from the left, which breaks
    the right identity law there, and that vanishing is checked as a
    property of its own.
    """
    from .propcalc import DirectSumProp

    results = []
    instances = _bilinear_instances(quiver, field, guard)
    for label, prop in instances + [("direct_sum(2)", DirectSumProp(2, field))]:
        bad, checked = interchange_failures(prop, min(2, bound))
        ok = not bad
        detail = "%d squares checked" % checked
        if bad:
            f1, f2, g1, g2 = bad[0]
            detail = "failing square %s, %s over %s, %s" % (
                _vec_text(prop, f1),
                _vec_text(prop, f2),
                _vec_text(prop, g1),
                _vec_text(prop, g2),
            )
        results.append(("interchange %s" % label, ok, detail))

    for label, prop in instances:
        rng = random.Random(_SEED)
        idv = prop.identity()
        bad = None
        for _ in range(25):
            m = rng.randint(1, 3)
            n = rng.randint(1, 3)
            f = _rand_vec(prop, m, n, rng, lawful=True)
            if not (star(prop, idv, f) == f.scaled(prop.field.scalar(n))):
                bad = ("unit input law", f)
                break
            if not (star(prop, f, idv) == f.scaled(prop.field.scalar(m))):
                bad = ("unit output law", f)
                break
            if not (prop_bracket(prop, idv, f) == f.scaled(prop.field.scalar(n - m))):
                bad = ("unit bracket law", f)
                break
        results.append(
            (
                "identity laws %s" % label,
                bad is None,
                "25 seeded elements" if bad is None else "%s fails on %s" % (bad[0], _vec_text(prop, bad[1])),
            )
        )

    for label, prop in instances:
        short = [
            key
            for key in prop.basis(1, 2)
            if key not in prop.bracket_basis(1, 2)
        ]
        if not short:
            continue
        idv = prop.identity()
        bad = None
        for key in short:
            f = prop.unit(1, 2, key)
            if not star(prop, idv, f).is_zero():
                bad = f
                break
        results.append(
            (
                "short block composes to zero from the left %s" % label,
                bad is None,
                "%d short keys at arity (1, 2)" % len(short)
                if bad is None
                else "unit star %s is not zero" % _vec_text(prop, bad),
            )
        )

    for label, prop in instances:
        rng = random.Random(_SEED + 1)
        bad = None
        for _ in range(100):
            arities = [(rng.randint(1, 3), rng.randint(1, 3)) for _ in range(3)]
            f, g, h = (_rand_vec(prop, m, n, rng, lawful=True) for m, n in arities)
            sfg = prop.field.scalar(
                -1 if ((f.m - f.n) * (g.m - g.n)) % 2 else 1
            )
            anti = prop_bracket(prop, f, g) + prop_bracket(prop, g, f).scaled(sfg)
            if not anti.is_zero():
                bad = ("antisymmetry", f, g, h)
                break
            lhs = prop_bracket(prop, f, prop_bracket(prop, g, h))
            rhs = prop_bracket(prop, prop_bracket(prop, f, g), h) + prop_bracket(
                prop, g, prop_bracket(prop, f, h)
            ).scaled(sfg)
            if not (lhs == rhs):
                bad = ("jacobi", f, g, h)
                break
        detail = "100 seeded triples, arities up to (3, 3)"
        if bad is not None:
            detail = "%s fails on %s ; %s ; %s" % (
                bad[0],
                _vec_text(prop, bad[1]),
                _vec_text(prop, bad[2]),
                _vec_text(prop, bad[3]),
            )
        results.append(("bracket laws %s" % label, bad is None, detail))
    return results


# ---- padding bracket on square matrices ----


def _gl_rand(size, field, rng):
    return [
        [field.scalar(rng.randint(-2, 2)) for _ in range(size)] for _ in range(size)
    ]


def _gl_is_zero(X):
    return all(not e for row in X for e in row)


def _gl_eq(X, Y):
    return len(X) == len(Y) and all(
        X[i][j] == Y[i][j] for i in range(len(X)) for j in range(len(X))
    )


def _gl_neg(X):
    return [[-e for e in row] for row in X]


def _gl_text(X, field):
    return "[" + "; ".join(
        ",".join(field.format(e) for e in row) for row in X
    ) + "]"


def jacobi_gl_suite(quiver, field, bound=4, guard=200000):
    """Laws of the padding bracket on square matrices of small sizes."""
    results = []
    top = max(2, min(bound, 6))
    rng = random.Random(_SEED + 2)

    bad = None
    for n in range(1, top + 1):
        for _ in range(10):
            a = _gl_rand(1, field, rng)
            b = _gl_rand(n, field, rng)
            if not (_gl_is_zero(gl_bracket(a, b, field)) and _gl_is_zero(gl_bracket(b, a, field))):
                bad = (a, b)
                break
        if bad:
            break
    results.append(
        (
            "size-one matrices are central",
            bad is None,
            "sizes up to %d" % top
            if bad is None
            else "fails on %s, %s" % (_gl_text(bad[0], field), _gl_text(bad[1], field)),
        )
    )

    bad = None
    for _ in range(60):
        a = _gl_rand(rng.randint(1, 3), field, rng)
        b = _gl_rand(rng.randint(1, 3), field, rng)
        if not _gl_eq(gl_bracket(a, b, field), _gl_neg(gl_bracket(b, a, field))):
            bad = (a, b)
            break
    results.append(
        (
            "antisymmetry",
            bad is None,
            "60 seeded pairs, sizes up to 3"
            if bad is None
            else "fails on %s, %s" % (_gl_text(bad[0], field), _gl_text(bad[1], field)),
        )
    )

    bad = None
    for _ in range(60):
        a = _gl_rand(rng.randint(1, 3), field, rng)
        b = _gl_rand(rng.randint(1, 3), field, rng)
        if not _gl_eq(
            gl_bracket(gl_theta(a, field), b, field),
            gl_theta(gl_bracket(a, b, field), field),
        ):
            bad = (a, b)
            break
    results.append(
        (
            "corner embedding respects the bracket",
            bad is None,
            "60 seeded pairs, sizes up to 3"
            if bad is None
            else "fails on %s, %s" % (_gl_text(bad[0], field), _gl_text(bad[1], field)),
        )
    )

    bad = None
    for _ in range(100):
        a = _gl_rand(rng.randint(1, top), field, rng)
        b = _gl_rand(rng.randint(1, top), field, rng)
        c = _gl_rand(rng.randint(1, top), field, rng)
        total = gl_bracket(gl_bracket(a, b, field), c, field)
        total = [
            [
                total[i][j] + row[j]
                for j in range(len(total))
            ]
            for i, row in enumerate(gl_bracket(gl_bracket(b, c, field), a, field))
        ]
        third = gl_bracket(gl_bracket(c, a, field), b, field)
        total = [
            [total[i][j] + third[i][j] for j in range(len(total))]
            for i in range(len(total))
        ]
        if not _gl_is_zero(total):
            bad = (a, b, c)
            break
    results.append(
        (
            "cyclic Jacobi identity",
            bad is None,
            "100 seeded triples, sizes up to %d" % top
            if bad is None
            else "fails on %s, %s, %s"
            % (
                _gl_text(bad[0], field),
                _gl_text(bad[1], field),
                _gl_text(bad[2], field),
            ),
        )
    )
    return results


# ---- the two-family model and its square-zero operator ----


def _mw_eq(x, y):
    if x is None:
        return y is None or y.coeff == 0
    return x == y


def _mw_cup(x, y):
    if x is None or y is None:
        return None
    return mw_ops(x, y)[0]


def _mw_brk(x, y):
    if x is None or y is None:
        return None
    return mw_ops(x, y)[1]


def _mw_delta(x):
    if x is None:
        return None
    return mw_ops(x, x)[2]


def bv_model_suite(quiver, field, bound=4, guard=200000):
    """Operator laws of the two-family model over the integers."""
    results = []
    top = max(3, min(bound + 1, 5))
    for variant in ("full", "even"):
        step = 2 if variant == "even" else 1
        indices = [i for i in range(-top, top + 1) if i % step == 0]
        gens = [
            MWElement(fam, i, 1, variant)
            for fam in ("L", "M")
            for i in indices
        ]
        checks = {
            "cup table": [],
            "bracket table": [],
            "square-zero operator": [],
            "graded antisymmetry": [],
            "bracket is the operator deviation": [],
        }
        for x in gens:
            dx = _mw_delta(x)
            if x.family == "L":
                want = MWElement("M", x.index, -x.index, variant)
            else:
                want = None
            if not _mw_eq(dx, want):
                checks["square-zero operator"].append(repr(x))
            if not _mw_eq(_mw_delta(dx), None):
                checks["square-zero operator"].append("delta twice on %r" % x)
        for x in gens:
            for y in gens:
                cup, brk, _ = mw_ops(x, y)
                i, j = x.index, y.index
                if x.family == "M" and y.family == "M":
                    cup_want = MWElement("M", i + j, 1, variant)
                    brk_want = None
                elif x.family == "L" and y.family == "L":
                    cup_want = None
                    brk_want = MWElement("L", i + j, i - j, variant)
                elif x.family == "L":
                    cup_want = MWElement("L", i + j, 1, variant)
                    brk_want = MWElement("M", i + j, -j, variant)
                else:
                    cup_want = MWElement("L", i + j, 1, variant)
                    brk_want = MWElement("M", i + j, i, variant)
                if not _mw_eq(cup, cup_want):
                    checks["cup table"].append("%r cup %r" % (x, y))
                if not _mw_eq(brk, brk_want):
                    checks["bracket table"].append("[%r, %r]" % (x, y))
                back = _mw_brk(y, x)
                sign = -1 if ((x.degree - 1) * (y.degree - 1)) % 2 else 1
                flipped = (
                    None
                    if back is None
                    else MWElement(back.family, back.index, -sign * back.coeff, variant)
                )
                if not _mw_eq(brk, flipped):
                    checks["graded antisymmetry"].append("[%r, %r]" % (x, y))
                sx = -1 if x.degree % 2 else 1
                term1 = _mw_delta(cup)
                if term1 is not None:
                    term1 = MWElement(term1.family, term1.index, -sx * term1.coeff, variant)
                term2 = _mw_cup(_mw_delta(x), y)
                if term2 is not None:
                    term2 = MWElement(term2.family, term2.index, sx * term2.coeff, variant)
                term3 = _mw_cup(x, _mw_delta(y))
                total = {}
                for t in (term1, term2, term3):
                    if t is not None:
                        key = (t.family, t.index)
                        total[key] = total.get(key, 0) + t.coeff
                total = {k: v for k, v in total.items() if v}
                got = dict()
                if brk is not None:
                    got[(brk.family, brk.index)] = brk.coeff
                if total != got:
                    checks["bracket is the operator deviation"].append(
                        "[%r, %r]" % (x, y)
                    )
        for label, bad in checks.items():
            ok = not bad
            detail = "indices within %d of zero" % top
            if bad:
                detail = "fails at %s" % "; ".join(bad[:3])
            results.append(("%s, %s variant" % (label, variant), ok, detail))
    return results


# ---- dictionary between the two-loops quiver and the tensor model ----


def _chain_theta(quiver, el, field, guard=None):
    def block(vec, length, kind):
        pos = {}
        for pr, c in vec.items():
            pos[quiver.pair_position(el.m, length, pr)] = c
        out = apply_theta(
            quiver, el.m, el.p - 1, pos, kind, field, reduce=False, guard=guard
        )
        pairs = quiver.parallel_pairs(el.m + 1, length + 1, guard=guard)
        return {pairs[j]: c for j, c in out.items()}

    return PropElement(
        quiver,
        el.m + 1,
        el.p + 1,
        block(el.low, el.p - 1, "low"),
        block(el.high, el.p, "high"),
    )


def _rand_chain(quiver, m, P, field, rng):
    low = {}
    high = {}
    lows = quiver.parallel_pairs(m, P - 1)
    highs = quiver.parallel_pairs(m, P)
    for _ in range(2):
        if lows:
            low[rng.choice(lows)] = field.scalar(rng.randint(-2, 2))
        high[rng.choice(highs)] = field.scalar(rng.randint(-2, 2))
    low = {k: v for k, v in low.items() if v}
    high = {k: v for k, v in high.items() if v}
    return PropElement(quiver, m, P, low, high)


def correspondence_suite(quiver, field, bound=4, guard=200000):
    """The two-loops quiver against the tensor model on a plane of size 2.

    Checks that the dictionary turns the connecting map into the shifted
    tensor map, that the latter has the predicted kernels, and that the
    dictionary carries the chain bracket and the right-append shift to
    their tensor counterparts.
    """
    corr = TwoLoopsCorrespondence(quiver, field)
    model = TensorModel(field)
    results = []
    top = min(bound, 3)

    bad = None
    for m in range(0, top + 1):
        for p in range(0, top + 1):
            mat = build_D(quiver, m, p, field, guard=guard)
            src = quiver.parallel_pairs(m, p, guard=guard)
            dst = quiver.parallel_pairs(m + 1, p + 1, guard=guard)
            images = model.phi_pairs(m, p)
            for j, pr in enumerate(src):
                got = mat.apply({j: field.one()})
                got_units = corr.map_block({dst[i]: c for i, c in got.items()})
                key = (corr.string_of(pr.first), corr.string_of(pr.second))
                if got_units != images[key]:
                    bad = (m, p, pr)
                    break
            if bad:
                break
        if bad:
            break
    results.append(
        (
            "dictionary turns the connecting map into the tensor map",
            bad is None,
            "blocks up to (%d, %d)" % (top, top)
            if bad is None
            else "fails at block (%d, %d) on %s"
            % (bad[0], bad[1], format_pair(bad[2])),
        )
    )

    for m in range(0, top + 1):
        kernel, _ = kernel_image(model.phi_matrix(m, m), field)
        basis = model.basis(m, m)
        ident = {}
        for j, (s, t) in enumerate(basis):
            if s == t:
                ident[j] = field.one()
        span = Subspace.from_vectors(field, kernel)
        ok = len(kernel) == 1 and span.contains(ident)
        results.append(
            (
                "tensor map kernel at equal powers %d is the identity line" % m,
                ok,
                "kernel dimension %d" % len(kernel),
            )
        )
    bad = None
    for m in range(0, top + 1):
        for p in range(0, top + 1):
            if m == p:
                continue
            kernel, _ = kernel_image(model.phi_matrix(m, p), field)
            if kernel:
                bad = (m, p, len(kernel))
                break
        if bad:
            break
    results.append(
        (
            "tensor map is injective at unequal powers",
            bad is None,
            "blocks up to (%d, %d)" % (top, top)
            if bad is None
            else "kernel dimension %d at (%d, %d)" % (bad[2], bad[0], bad[1]),
        )
    )

    rng = random.Random(_SEED + 3)
    bad = None
    for _ in range(30):
        f = _rand_chain(quiver, rng.randint(1, 2), rng.randint(1, 2), field, rng)
        g = _rand_chain(quiver, rng.randint(1, 2), rng.randint(1, 2), field, rng)
        want = corr.map_element(bracket(f, g, field))
        got = t_bracket(corr.map_element(f), corr.map_element(g), field)
        if got != want:
            bad = (f, g)
            break
    results.append(
        (
            "dictionary carries the bracket",
            bad is None,
            "30 seeded pairs, arities up to (2, 2)"
            if bad is None
            else "fails on %s ; %s"
            % (format_element(bad[0]), format_element(bad[1])),
        )
    )

    rng = random.Random(_SEED + 4)
    bad = None
    for _ in range(30):
        f = _rand_chain(quiver, rng.randint(1, 2), rng.randint(1, 2), field, rng)
        want = corr.map_element(_chain_theta(quiver, f, field, guard=guard))
        got = t_theta(corr.map_element(f), field)
        if got != want:
            bad = f
            break
    results.append(
        (
            "dictionary carries the right-append shift",
            bad is None,
            "30 seeded elements"
            if bad is None
            else "fails on %s" % format_element(bad),
        )
    )

    rng = random.Random(_SEED + 5)
    bad = None
    for _ in range(20):
        f = _rand_chain(quiver, rng.randint(1, 2), rng.randint(1, 2), field, rng)
        g = _rand_chain(quiver, rng.randint(1, 2), rng.randint(1, 2), field, rng)
        want = _chain_theta(quiver, bracket(f, g, field), field, guard=guard)
        left = bracket(_chain_theta(quiver, f, field, guard=guard), g, field)
        right = bracket(f, _chain_theta(quiver, g, field, guard=guard), field)
        if not (left == want and right == want):
            bad = (f, g)
            break
    results.append(
        (
            "right-append shift respects the bracket",
            bad is None,
            "20 seeded pairs"
            if bad is None
            else "fails on %s ; %s"
            % (format_element(bad[0]), format_element(bad[1])),
        )
    )
    return results


SUITES = {
    "kernel": kernel_suite,
    "injectivity": injectivity_suite,
    "witt": witt_suite,
    "sl2": sl2_suite,
    "crown": crown_suite,
    "jacobi-prop": jacobi_prop_suite,
    "jacobi-gl": jacobi_gl_suite,
    "bv-model": bv_model_suite,
    "correspondence": correspondence_suite,
}


def run_suite(name, quiver, field, bound=4, guard=200000):
    if name not in SUITES:
        raise UsageError(
            "unknown suite %r; available: %s" % (name, ", ".join(sorted(SUITES)))
        )
    return SUITES[name](quiver, field, bound=bound, guard=guard)
