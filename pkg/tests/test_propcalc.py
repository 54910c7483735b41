import random
from fractions import Fraction

import pytest

from sgcoh.cohomology import build_D, cohomology_cached
from sgcoh.errors import UsageError
from sgcoh.exactla import RationalField
from sgcoh.gerst import PropElement, bracket
from sgcoh.propcalc import (
    DirectSumProp,
    EndProp,
    QuiverProp,
    RLoopsProp,
    TensorModel,
    TwoLoopsCorrespondence,
    from_chain,
    gl_bracket,
    gl_theta,
    gl_zero,
    interchange_failures,
    make_prop,
    prop_bracket,
    star,
    t_bracket,
    t_theta,
    tensor_model,
    to_chain,
)
from sgcoh.quiver import multi_loop, one_loop

Q = RationalField()


def test_star_on_tensor_instance_collapses_at_two_one():
    prop = EndProp(1, Q)
    (key,) = prop.basis(2, 1)
    f = prop.unit(2, 1, key)
    assert star(prop, f, f).is_zero()


def test_star_arity_bookkeeping():
    prop = EndProp(2, Q)
    f = prop.unit(1, 2, prop.basis(1, 2)[0])
    g = prop.unit(2, 1, prop.basis(2, 1)[0])
    out = star(prop, f, g)
    assert (out.m, out.n) == (2, 2)
    with pytest.raises(UsageError):
        star(prop, prop.unit(0, 1, prop.basis(0, 1)[0]), f)


@pytest.mark.parametrize(
    "prop",
    [
        EndProp(2, Q),
        RLoopsProp(2, Q),
        QuiverProp(multi_loop(2), Q),
        DirectSumProp(2, Q),
    ],
    ids=lambda p: p.label,
)
def test_interchange_square(prop):
    bad, checked = interchange_failures(prop, 2)
    assert not bad
    assert checked > 0


@pytest.mark.parametrize(
    "prop",
    [EndProp(2, Q), RLoopsProp(2, Q), QuiverProp(one_loop(), Q)],
    ids=lambda p: p.label,
)
def test_identity_laws_on_the_certified_span(prop):
    rng = random.Random(23)
    idv = prop.identity()
    for _ in range(20):
        m = rng.randint(1, 3)
        n = rng.randint(1, 3)
        keys = prop.bracket_basis(m, n)
        f = prop.unit(m, n, rng.choice(keys), Q.scalar(rng.randint(1, 3)))
        assert star(prop, idv, f) == f.scaled(Q.scalar(n))
        assert star(prop, f, idv) == f.scaled(Q.scalar(m))
        assert prop_bracket(prop, idv, f) == f.scaled(Q.scalar(n - m))


@pytest.mark.parametrize(
    "prop",
    [RLoopsProp(2, Q), QuiverProp(one_loop(), Q)],
    ids=lambda p: p.label,
)
def test_short_block_breaks_the_left_identity_law(prop):
    idv = prop.identity()
    short = [k for k in prop.basis(1, 2) if k not in prop.bracket_basis(1, 2)]
    assert short
    for key in short:
        f = prop.unit(1, 2, key)
        assert star(prop, idv, f).is_zero()
        assert not star(prop, idv, f) == f.scaled(Q.scalar(2))


@pytest.mark.parametrize("r", [1, 2, 3])
def test_loops_instance_matches_quiver_dimensions(r):
    loops = RLoopsProp(r, Q)
    pairs = QuiverProp(multi_loop(r), Q)
    for m in range(0, 7):
        for n in range(0, 7 - m):
            if m == n == 0:
                continue
            assert loops.dim(m, n) == pairs.dim(m, n), (r, m, n)
            assert len(loops.basis(m, n)) == loops.dim(m, n)


@pytest.mark.parametrize(
    "prop",
    [RLoopsProp(2, Q), QuiverProp(one_loop(), Q)],
    ids=lambda p: p.label,
)
def test_bracket_laws_on_certified_span(prop):
    rng = random.Random(29)

    def rand(m, n):
        keys = prop.bracket_basis(m, n)
        vec = prop.zero(m, n)
        for _ in range(2):
            c = Q.scalar(rng.randint(-2, 2))
            if c:
                vec = vec + prop.unit(m, n, rng.choice(keys), c)
        return vec

    for _ in range(40):
        arities = [(rng.randint(1, 3), rng.randint(1, 3)) for _ in range(3)]
        f, g, h = (rand(m, n) for m, n in arities)
        sign = Q.scalar(-1 if ((f.m - f.n) * (g.m - g.n)) % 2 else 1)
        anti = prop_bracket(prop, f, g) + prop_bracket(prop, g, f).scaled(sign)
        assert anti.is_zero()
        lhs = prop_bracket(prop, f, prop_bracket(prop, g, h))
        rhs = prop_bracket(prop, prop_bracket(prop, f, g), h) + prop_bracket(
            prop, g, prop_bracket(prop, f, h)
        ).scaled(sign)
        assert lhs == rhs


@pytest.mark.parametrize(
    "quiver", [one_loop(), multi_loop(2)], ids=lambda q: q.name
)
def test_long_blocks_agree_with_the_chain_bracket(quiver):
    prop = QuiverProp(quiver, Q)
    rng = random.Random(31)
    for _ in range(40):
        m1, p1 = rng.randint(1, 2), rng.randint(1, 3)
        m2, p2 = rng.randint(1, 2), rng.randint(1, 3)
        f = PropElement(
            quiver,
            m1,
            p1,
            {},
            {rng.choice(quiver.parallel_pairs(m1, p1)): Q.scalar(rng.randint(1, 2))},
        )
        g = PropElement(
            quiver,
            m2,
            p2,
            {},
            {rng.choice(quiver.parallel_pairs(m2, p2)): Q.scalar(rng.randint(1, 2))},
        )
        chain = bracket(f, g, Q)
        vec = prop_bracket(prop, from_chain(prop, f), from_chain(prop, g))
        assert to_chain(prop, vec).high == chain.high


def test_chain_round_trip_and_mismatch():
    quiver = multi_loop(2)
    prop = QuiverProp(quiver, Q)
    pairs = quiver.parallel_pairs(1, 1)
    element = PropElement(
        quiver, 1, 2, {pairs[0]: Fraction(2)}, {quiver.parallel_pairs(1, 2)[1]: Fraction(-1)}
    )
    assert to_chain(prop, from_chain(prop, element)) == element
    with pytest.raises(UsageError):
        from_chain(QuiverProp(one_loop(), Q), element)
    with pytest.raises(UsageError):
        from_chain(EndProp(2, Q), element)


def test_make_prop_kinds():
    assert make_prop("end_v(3)", Q).d == 3
    assert make_prop("r_loops(2)", Q).r == 2
    assert make_prop("direct_sum(2)", Q).d == 2
    assert make_prop("quiver", Q, quiver=one_loop()).quiver is not None
    with pytest.raises(UsageError):
        make_prop("quiver", Q)
    with pytest.raises(UsageError):
        make_prop("torus(2)", Q)
    with pytest.raises(UsageError):
        EndProp(0, Q)


def _position_maps(quiver, model, m, p):
    cols = model.basis(m, p)
    placed = {}
    for j, pair in enumerate(quiver.parallel_pairs(m, p)):
        key = (tuple(pair.first.arrows), tuple(pair.second.arrows))
        placed[j] = cols.index(key)
    return placed


@pytest.mark.parametrize("m", [0, 1, 2])
@pytest.mark.parametrize("p", [0, 1, 2])
def test_tensor_model_matrix_matches_the_pair_differential(m, p):
    quiver = multi_loop(2)
    model = TensorModel(Q)
    mat = build_D(quiver, m, p, Q)
    phi = model.phi_matrix(m, p)
    col_map = _position_maps(quiver, model, m, p)
    row_map = _position_maps(quiver, model, m + 1, p + 1)
    assert (mat.nrows, mat.ncols) == (phi.nrows, phi.ncols)
    translated = {}
    for (i, j), v in mat.entries.items():
        translated[(row_map[i], col_map[j])] = v
    assert translated == phi.entries


@pytest.mark.parametrize("m", [1, 2])
@pytest.mark.parametrize("p", [0, 1, 2])
def test_tensor_model_groups_match_the_pair_groups(m, p):
    quiver = multi_loop(2)
    model = TensorModel(Q)
    kernel, image, reps = model.k_group(m, p)
    group = cohomology_cached(quiver, m, p, Q)
    assert len(kernel) == group.dim_kernel
    assert len(reps) == group.dim_quotient


def test_tensor_model_argument_checks():
    phi, theta, (kernel, image, reps) = tensor_model(1, 1, Q)
    assert phi.ncols == theta.ncols == 4
    assert phi.nrows == theta.nrows == 16
    with pytest.raises(UsageError):
        tensor_model(-1, 0, Q)


def test_correspondence_transports_the_bracket():
    quiver = multi_loop(2)
    table = TwoLoopsCorrespondence(quiver, Q)
    rng = random.Random(37)
    for _ in range(25):
        m1, p1 = rng.randint(1, 2), rng.randint(1, 2)
        m2, p2 = rng.randint(1, 2), rng.randint(1, 2)
        f = PropElement(
            quiver,
            m1,
            p1 + 1,
            {rng.choice(quiver.parallel_pairs(m1, p1)): Q.scalar(rng.randint(1, 2))},
            {rng.choice(quiver.parallel_pairs(m1, p1 + 1)): Q.scalar(rng.randint(-2, 2))},
        )
        g = PropElement(
            quiver,
            m2,
            p2 + 1,
            {},
            {rng.choice(quiver.parallel_pairs(m2, p2 + 1)): Q.scalar(rng.randint(1, 2))},
        )
        chain = bracket(f, g, Q)
        got = t_bracket(table.map_element(f), table.map_element(g), Q)
        want = table.map_element(chain)
        assert got[:2] == want[:2]
        assert got[2] == want[2] and got[3] == want[3]


def test_correspondence_transports_the_shift():
    quiver = multi_loop(2)
    table = TwoLoopsCorrespondence(quiver, Q)
    model = TensorModel(Q)
    element = PropElement(
        quiver,
        1,
        2,
        {},
        {quiver.parallel_pairs(1, 2)[3]: Fraction(1)},
    )
    m, p, lo, hi = t_theta(table.map_element(element), Q)
    assert (m, p) == (2, 2) and lo == {}
    mat = model.theta_matrix(1, 2)
    cols = model.basis(1, 2)
    rows = model.basis(2, 3)
    (src_key,) = table.map_element(element)[3]
    j = cols.index(src_key)
    expected = {rows[i]: v for (i, jj), v in mat.entries.items() if jj == j}
    assert hi == expected


def test_correspondence_requires_two_loops():
    with pytest.raises(UsageError):
        TwoLoopsCorrespondence(one_loop(), Q)


def test_padding_bracket_laws():
    rng = random.Random(41)

    def rand(n):
        return [[Q.scalar(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]

    def add(X, Y):
        return [[X[i][j] + Y[i][j] for j in range(len(X))] for i in range(len(X))]

    def neg(X):
        return [[-v for v in row] for row in X]

    def is_zero(X):
        return all(not v for row in X for v in row)

    for _ in range(40):
        a = rand(rng.randint(1, 3))
        b = rand(rng.randint(1, 3))
        c = rand(rng.randint(1, 3))
        assert is_zero(add(gl_bracket(a, b, Q), neg(neg(gl_bracket(b, a, Q)))))
        cyclic = add(
            add(
                gl_bracket(gl_bracket(a, b, Q), c, Q),
                gl_bracket(gl_bracket(b, c, Q), a, Q),
            ),
            gl_bracket(gl_bracket(c, a, Q), b, Q),
        )
        assert is_zero(cyclic)
        assert gl_bracket(gl_theta(a, Q), b, Q) == gl_theta(gl_bracket(a, b, Q), Q)


def test_scalars_are_central_for_the_padding_bracket():
    rng = random.Random(43)
    for n in range(1, 4):
        b = [[Q.scalar(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
        scalar = [[Q.scalar(3)]]
        assert gl_bracket(scalar, b, Q) == gl_zero(n, Q)
        assert gl_bracket(b, scalar, Q) == gl_zero(n, Q)
    with pytest.raises(UsageError):
        gl_bracket([], [[Q.one()]], Q)
