"""The graded Lie bracket on chain elements and its cohomology projection.

A chain element of arity (M, P) carries a low block spanned by parallel
pairs of path lengths (M, P-1) and a high block spanned by pairs of
lengths (M, P). The bracket of arities (M, P) and (N, Q) lands at
(M+N-1, P+Q-1); its high output only sees the high blocks, its low output
pairs each low block against the other argument's high block, and the low
blocks of both arguments never meet.
"""

from .errors import NotACocycleError, UsageError
from .quiver import ParallelPair, Path, compose


class PropElement:
    """A chain element: two sparse blocks of parallel-pair coefficients."""

    def __init__(self, quiver, arity_in, arity_out, low=None, high=None):
        self.quiver = quiver
        self.m = arity_in
        self.p = arity_out
        self.low = {k: v for (k, v) in (low or {}).items() if v}
        self.high = {k: v for (k, v) in (high or {}).items() if v}
        for pair in self.low:
            if len(pair.first) != self.m or len(pair.second) != self.p - 1:
                raise UsageError(
                    "low pair %r does not fit arity (%d, %d)" % (pair, self.m, self.p)
                )
        for pair in self.high:
            if len(pair.first) != self.m or len(pair.second) != self.p:
                raise UsageError(
                    "high pair %r does not fit arity (%d, %d)" % (pair, self.m, self.p)
                )

    def is_zero(self):
        return not self.low and not self.high

    def scaled(self, coeff):
        return PropElement(
            self.quiver,
            self.m,
            self.p,
            {k: coeff * v for k, v in self.low.items()},
            {k: coeff * v for k, v in self.high.items()},
        )

    def __add__(self, other):
        if (
            self.quiver is not other.quiver
            or self.m != other.m
            or self.p != other.p
        ):
            raise UsageError("cannot add elements of different arities")
        low = dict(self.low)
        high = dict(self.high)
        for k, v in other.low.items():
            s = low.get(k)
            s = v if s is None else s + v
            if s:
                low[k] = s
            else:
                low.pop(k, None)
        for k, v in other.high.items():
            s = high.get(k)
            s = v if s is None else s + v
            if s:
                high[k] = s
            else:
                high.pop(k, None)
        return PropElement(self.quiver, self.m, self.p, low, high)

    def __sub__(self, other):
        return self + other.scaled(-_any_one(self, other))

    def __eq__(self, other):
        return (
            isinstance(other, PropElement)
            and self.quiver is other.quiver
            and self.m == other.m
            and self.p == other.p
            and self.low == other.low
            and self.high == other.high
        )

    def __repr__(self):
        return "PropElement(arity=(%d,%d), low=%d terms, high=%d terms)" % (
            self.m,
            self.p,
            len(self.low),
            len(self.high),
        )


def _any_one(*elements):
    for el in elements:
        for v in list(el.low.values()) + list(el.high.values()):
            return v / v
    return 1


def zero_element(quiver, m, p):
    return PropElement(quiver, m, p)


def _word_path(quiver, arrows, fallback_vertex):
    if arrows:
        return Path(quiver, arrows)
    return Path(quiver, (), fallback_vertex)


def _add_term(acc, first, second, coeff):
    if not coeff:
        return
    key = ParallelPair(first, second)
    cur = acc.get(key)
    cur = coeff if cur is None else cur + coeff
    if cur:
        acc[key] = cur
    else:
        acc.pop(key, None)


def _sign(field, exponent):
    return field.one() if exponent % 2 == 0 else -field.one()


def star_high(quiver, f_terms, M, P, g_terms, N, Q, field):
    """High-block star: substitute g into f's inputs, f into g's outputs.

    Input slot i of f is matched by padding f's second word with a filler
    path and comparing the slice at position i against g's second word;
    output slot i of g pads g's second word and compares against f's first
    word. Both emit substituted words with alternating slot signs.
    """
    out = {}
    for (af, bf), cf in f_terms.items():
        for (ag, bg), cg in g_terms.items():
            c0 = cf * cg
            # substitution into the i-th input of f
            for i in range(1, M + 1):
                sgn = _sign(field, (i - 1) * (Q - N)) * c0
                for z in quiver.paths(Q - 1):
                    if z.target != af.source:
                        continue
                    S = af.arrows + z.arrows
                    if S[i - 1 : i - 1 + Q] != bg.arrows:
                        continue
                    first = S[: i - 1] + ag.arrows + S[i - 1 + Q :]
                    second = bf.arrows + z.arrows
                    _add_term(
                        out,
                        _word_path(quiver, first, None),
                        _word_path(quiver, second, None),
                        sgn,
                    )
            # substitution into the i-th output of g
            for i in range(1, Q):
                sgn = _sign(field, i * (P - M)) * c0
                for v in quiver.paths(M - 1):
                    if v.target != ag.source:
                        continue
                    S = bg.arrows + v.arrows
                    if S[i : i + M] != af.arrows:
                        continue
                    first = ag.arrows + v.arrows
                    second = S[:i] + bf.arrows + S[i + M :]
                    _add_term(
                        out,
                        _word_path(quiver, first, None),
                        _word_path(quiver, second, None),
                        sgn,
                    )
    return out


def low_high(quiver, f_low_terms, M, P, g_high_terms, N, Q, field):
    """Low-block output of bracketing a low element against a high one.

    The first group substitutes g into each input slot of f, the second
    replaces every length-N slice of f's short second word (padded on the
    right by a filler path) with g's second word while g's first word
    absorbs f's first. Slot signs are pinned by compatibility with the
    differential: applying the boundary map to this output must agree
    with the high-block bracket of f's boundary against g.
    """
    out = {}
    for (af, bf), cf in f_low_terms.items():
        for (ag, bg), cg in g_high_terms.items():
            c0 = cf * cg
            for i in range(1, M + 1):
                sgn = _sign(field, i * (Q - N)) * c0
                for z in quiver.paths(Q - 1):
                    if z.target != af.source:
                        continue
                    S = af.arrows + z.arrows
                    if S[i - 1 : i - 1 + Q] != bg.arrows:
                        continue
                    first = S[: i - 1] + ag.arrows + S[i - 1 + Q :]
                    second = bf.arrows + z.arrows
                    _add_term(
                        out,
                        _word_path(quiver, first, None),
                        _word_path(quiver, second, af.source),
                        sgn,
                    )
            for i in range(0, P - 1):
                sgn = -_sign(field, (Q - N) * (i + M + P)) * c0
                for v in quiver.paths(N - 1):
                    if v.target != af.source:
                        continue
                    S = bf.arrows + v.arrows
                    if S[i : i + N] != ag.arrows:
                        continue
                    first = af.arrows + v.arrows
                    second = S[:i] + bg.arrows + S[i + N :]
                    _add_term(
                        out,
                        _word_path(quiver, first, None),
                        _word_path(quiver, second, af.source),
                        sgn,
                    )
    return out


def bracket(f, g, field):
    """Graded Lie bracket of two chain elements."""
    if f.quiver is not g.quiver:
        raise UsageError("cannot bracket elements over different quivers")
    quiver = f.quiver
    M, P, N, Q = f.m, f.p, g.m, g.p
    eps = _sign(field, (M - P) * (N - Q))
    high = star_high(quiver, f.high, M, P, g.high, N, Q, field)
    back = star_high(quiver, g.high, N, Q, f.high, M, P, field)
    for k, v in back.items():
        _add_term(high, k.first, k.second, -eps * v)
    low = low_high(quiver, f.low, M, P, g.high, N, Q, field)
    back_low = low_high(quiver, g.low, N, Q, f.high, M, P, field)
    for k, v in back_low.items():
        _add_term(low, k.first, k.second, -eps * v)
    return PropElement(quiver, M + N - 1, P + Q - 1, low, high)


# ---- independent closed form for two arity-one high elements ----


def diamond(path, i, replacement):
    """Replace the i-th written arrow of path by a parallel path, or None."""
    if i < 1 or i > len(path.arrows):
        return None
    quiver = path.quiver
    arrow = quiver.arrows[path.arrows[i - 1]]
    if replacement.source != arrow.source or replacement.target != arrow.target:
        return None
    arrows = path.arrows[: i - 1] + replacement.arrows + path.arrows[i:]
    return Path(quiver, arrows)


def bracket_deg1_closed_form(f, g, field):
    """Bracket of two arity-(1, *) pure high elements by arrow substitution.

    This is a hand-expanded formula used as an independent oracle against
    the star machinery: each matching arrow of one second word is replaced
    wholesale by the other second word, with alternating signs.
    """
    if f.m != 1 or g.m != 1 or f.low or g.low:
        raise UsageError("closed form needs pure high elements of first arity 1")
    quiver = f.quiver
    out = {}
    for (x, gam), cf in f.high.items():
        for (y, bet), cg in g.high.items():
            p = len(gam) - 1
            q = len(bet) - 1
            c0 = cf * cg
            for i in range(1, q + 2):
                if bet.arrows[i - 1] != x.arrows[0]:
                    continue
                new = diamond(bet, i, gam)
                if new is None:
                    continue
                _add_term(out, y, new, _sign(field, (i - 1) * p) * c0)
            lead = -_sign(field, p * q)
            for i in range(1, p + 2):
                if gam.arrows[i - 1] != y.arrows[0]:
                    continue
                new = diamond(gam, i, bet)
                if new is None:
                    continue
                _add_term(out, x, new, lead * _sign(field, (i - 1) * q) * c0)
    return PropElement(quiver, 1, f.p + g.p - 1, {}, out)


# ---- chain level cup and projection to cohomology ----


def chain_cup(f, g, field):
    """Concatenation product on pairs; both blocks multiply wordwise.

    Low times low concatenates to a low pair, anything involving a high
    block concatenates to words one longer than the high length of the
    target arity, so the high-flavoured products vanish inside the target
    cell. The returned element keeps only the surviving terms.
    """
    if f.quiver is not g.quiver:
        raise UsageError("cannot multiply elements over different quivers")
    quiver = f.quiver
    m, p = f.m + g.m, f.p + g.p - 1
    low = {}
    for (af, bf), cf in f.low.items():
        for (ag, bg), cg in g.low.items():
            first = compose(af, ag)
            second = compose(bf, bg)
            if first is None or second is None:
                continue
            _add_term(low, first, second, cf * cg)
    # low lengths: (f.m + g.m, (f.p - 1) + (g.p - 1)) = (m, p - 1): fits
    return PropElement(quiver, m, p, low, {})


def cup_overflow_terms(f, g):
    """The concatenations that fall outside the target cell.

    Any product touching a high block has second length (f.p + g.p) or
    more, while the target high block holds words of length f.p + g.p - 1.
    These terms are returned for inspection; their classes are zero.
    """
    quiver = f.quiver
    out = []
    for one_terms, other_terms in (
        (f.high, g.high),
        (f.high, g.low),
        (f.low, g.high),
    ):
        for (af, bf), cf in one_terms.items():
            for (ag, bg), cg in other_terms.items():
                first = compose(af, ag)
                second = compose(bf, bg)
                if first is None or second is None:
                    continue
                out.append((ParallelPair(first, second), cf * cg))
    return out


class CohomologyClass:
    """A cohomology class: canonical high residue plus a kernel vector."""

    def __init__(self, group, high_residue, low_kernel):
        self.group = group
        self.high_residue = high_residue
        self.low_kernel = low_kernel

    def is_zero(self):
        return not self.high_residue and not self.low_kernel

    def __eq__(self, other):
        return (
            isinstance(other, CohomologyClass)
            and self.group.m == other.group.m
            and self.group.p == other.group.p
            and self.high_residue == other.high_residue
            and self.low_kernel == other.low_kernel
        )

    def __repr__(self):
        return "CohomologyClass(m=%d, p=%d, zero=%s)" % (
            self.group.m,
            self.group.p,
            self.is_zero(),
        )


def project(element, field, guard=None):
    """Project a chain element to its cohomology class.

    The low block must be a cocycle of the outgoing differential; the high
    block is reduced to its canonical residue modulo the incoming image.
    """
    from .cohomology import _cached_D, cohomology_cached

    quiver = element.quiver
    m = element.m
    p = element.p - 1
    if p < 0:
        raise UsageError("projection needs arity (m, P) with P at least 1")
    group = cohomology_cached(quiver, m, p, field, guard=guard)
    low_vec = {}
    for pair, coeff in element.low.items():
        pos = quiver.pair_position(m, p, pair)
        if pos is None:
            raise UsageError("low pair %r is not a parallel pair" % (pair,))
        low_vec[pos] = coeff
    high_vec = {}
    for pair, coeff in element.high.items():
        pos = quiver.pair_position(m, p + 1, pair)
        if pos is None:
            raise UsageError("high pair %r is not a parallel pair" % (pair,))
        high_vec[pos] = coeff
    outgoing = _cached_D(quiver, m, p, field, guard=guard)
    boundary = outgoing.apply(low_vec)
    if boundary:
        raise NotACocycleError(
            "low block at arity (%d, %d) has nonzero differential" % (m, element.p)
        )
    return CohomologyClass(group, group.reduce_high(high_vec), low_vec)


# ---- frozen closed forms for the one-loop algebra ----


def _one_loop_seed(quiver, k, coeff, field):
    """The canonical representative of the degree -k class, k >= 1.

    Odd k sits in the high block at arity (1, k+2), even k in the low
    block at the same arity.
    """
    a = quiver.arrow_path(quiver.arrows[0].name)
    if k % 2 == 1:
        word = Path(quiver, a.arrows * (k + 2))
        return PropElement(quiver, 1, k + 2, {}, {ParallelPair(a, word): coeff})
    word = Path(quiver, a.arrows * (k + 1))
    return PropElement(quiver, 1, k + 2, {ParallelPair(a, word): coeff}, {})


def one_loop_bracket_oracle(quiver, m, n, field):
    """Frozen bracket table on one-loop classes of degrees -m and -n."""
    _require_one_loop(quiver, m, n)
    if m % 2 == 1 and n % 2 == 1:
        return _one_loop_seed(quiver, m + n + 1, field.scalar(n - m), field)
    if m % 2 == 0 and n % 2 == 0:
        return zero_element(quiver, 1, m + n + 3)
    if m % 2 == 0:
        return _one_loop_seed(quiver, m + n + 1, field.scalar(-m), field)
    # odd m, even n: graded antisymmetry of the mixed case
    swapped = one_loop_bracket_oracle(quiver, n, m, field)
    return swapped.scaled(-_sign(field, (m + 1) * (n + 1)))


def one_loop_cup_oracle(quiver, m, n, field):
    """Frozen cup table on one-loop classes of degrees -m and -n."""
    _require_one_loop(quiver, m, n)
    if m % 2 == 1 and n % 2 == 1:
        return zero_element(quiver, 1, m + n + 2)
    if m % 2 == 0 and n % 2 == 0:
        return _one_loop_seed(quiver, m + n, field.one(), field)
    if m % 2 == 0:
        return _one_loop_seed(quiver, m + n, field.scalar(-1), field)
    return _one_loop_seed(quiver, m + n, field.scalar(-1), field)


def one_loop_delta_oracle(quiver, m, field):
    """Frozen square-zero operator table on a degree -m one-loop class."""
    _require_one_loop(quiver, m, m)
    if m % 2 == 0:
        return zero_element(quiver, 1, m + 3)
    return _one_loop_seed(quiver, m + 1, field.scalar(m), field)


def _require_one_loop(quiver, m, n):
    if len(quiver.vertices) != 1 or len(quiver.arrows) != 1:
        raise UsageError("these closed forms apply to the one-loop quiver only")
    if quiver.arrows[0].source != quiver.arrows[0].target:
        raise UsageError("these closed forms apply to the one-loop quiver only")
    if m < 1 or n < 1:
        raise UsageError("class degrees must be at least 1 below zero")


# ---- the two-family model algebra ----


class MWElement:
    """A scaled generator of the two-family model: family 'L' or 'M'."""

    def __init__(self, family, index, coeff=1, variant="full"):
        if family not in ("L", "M"):
            raise UsageError("family must be 'L' or 'M'")
        if variant not in ("full", "even"):
            raise UsageError("variant must be 'full' or 'even'")
        if variant == "even" and index % 2 != 0:
            raise UsageError("the even variant only carries even indices")
        self.family = family
        self.index = index
        self.coeff = coeff
        self.variant = variant

    @property
    def degree(self):
        return 2 * self.index + (1 if self.family == "L" else 0)

    def __eq__(self, other):
        if other is None:
            return self.coeff == 0
        return (
            isinstance(other, MWElement)
            and self.family == other.family
            and self.index == other.index
            and self.coeff == other.coeff
            and self.variant == other.variant
        )

    def __repr__(self):
        return "MWElement(%s_%d, coeff=%s, %s)" % (
            self.family,
            self.index,
            self.coeff,
            self.variant,
        )


def mw_ops(x, y):
    """Cup, bracket, and the square-zero operator on model generators.

    Returns (x cup y, [x, y], delta of x); None encodes zero. The model:
    M_i cup M_j = M_{i+j}, M and L cup to L, L cup L = 0;
    [L_i, L_j] = (i - j) L_{i+j}, [L_i, M_j] = -j M_{i+j}, [M, M] = 0;
    delta kills M and sends L_i to -i M_i.
    """
    if x.variant != y.variant:
        raise UsageError("cannot mix model variants")
    variant = x.variant
    c = x.coeff * y.coeff
    i, j = x.index, y.index

    def mk(family, index, coeff):
        if not coeff:
            return None
        return MWElement(family, index, coeff, variant)

    if x.family == "M" and y.family == "M":
        cup = mk("M", i + j, c)
        brk = None
    elif x.family == "L" and y.family == "L":
        cup = None
        brk = mk("L", i + j, c * (i - j))
    elif x.family == "L":
        cup = mk("L", i + j, c)
        brk = mk("M", i + j, c * (-j))
    else:
        cup = mk("L", i + j, c)
        brk = mk("M", i + j, c * i)
    if x.family == "L":
        delta_x = mk("M", i, x.coeff * (-i))
    else:
        delta_x = None
    return cup, brk, delta_x
