"""Finite-dimensional PROP instances and the star bracket built on them.

Four instances: linear maps on tensor powers of a vector space, the
block-diagonal instance on direct-sum powers, the two-block instance for
loop quivers, and the parallel-pair instance of an arbitrary quiver. The
same star construction runs on each of them, together with the
two-dimensional tensor model and the matrix-padding Lie bracket used by
the verification suites.
"""

import itertools

from .errors import UsageError
from .gerst import PropElement
from .quiver import ParallelPair, Path, compose


class PropVec:
    """An element of one PROP space: arity pair plus sparse coefficients."""

    __slots__ = ("m", "n", "terms")

    def __init__(self, m, n, terms=None):
        self.m = m
        self.n = n
        self.terms = {k: v for (k, v) in (terms or {}).items() if v}

    def is_zero(self):
        return not self.terms

    def scaled(self, coeff):
        return PropVec(self.m, self.n, {k: coeff * v for k, v in self.terms.items()})

    def __add__(self, other):
        if self.m != other.m or self.n != other.n:
            raise UsageError("cannot add elements of different arities")
        out = dict(self.terms)
        for k, v in other.terms.items():
            cur = out.get(k)
            cur = v if cur is None else cur + v
            if cur:
                out[k] = cur
            else:
                out.pop(k, None)
        return PropVec(self.m, self.n, out)

    def __sub__(self, other):
        if self.m != other.m or self.n != other.n:
            raise UsageError("cannot subtract elements of different arities")
        out = dict(self.terms)
        for k, v in other.terms.items():
            cur = out.get(k)
            cur = -v if cur is None else cur - v
            if cur:
                out[k] = cur
            else:
                out.pop(k, None)
        return PropVec(self.m, self.n, out)

    def __eq__(self, other):
        return (
            isinstance(other, PropVec)
            and self.m == other.m
            and self.n == other.n
            and self.terms == other.terms
        )

    def __repr__(self):
        return "PropVec(%d, %d, %d terms)" % (self.m, self.n, len(self.terms))


class PropInstance:
    """Base for the concrete instances; subclasses provide basis products."""

    label = "abstract"
    per_key_products = True

    def __init__(self, field):
        self.field = field
        self._id_powers = {}

    # subclass hooks ---------------------------------------------------
    def dim(self, m, n):
        raise NotImplementedError

    def basis(self, m, n):
        """Ordered list of basis keys of P(m, n)."""
        raise NotImplementedError

    def bracket_basis(self, m, n):
        """Basis keys of the part where the star bracket laws are certified.

        Instances whose spaces carry an extra short block override this:
        composing after a short-block element gives zero, which breaks the
        right identity law there, so the bracket laws are only claimed on
        the span of the full-length keys.
        """
        return self.basis(m, n)

    def basis_label(self, key):
        return str(key)

    def _mul_h(self, a1, k1, a2, k2):
        """Horizontal product of two basis keys: dict key -> coeff or None."""
        raise NotImplementedError

    def _mul_v(self, a1, k1, a2, k2):
        """Vertical product (first k1, then k2): dict key -> coeff or None."""
        raise NotImplementedError

    def identity(self):
        raise NotImplementedError

    # generic bilinear extensions ---------------------------------------
    def unit(self, m, n, key, coeff=None):
        c = self.field.one() if coeff is None else coeff
        return PropVec(m, n, {key: c})

    def zero(self, m, n):
        return PropVec(m, n, {})

    def horizontal(self, f, g):
        out = {}
        arity = (f.m + g.m, f.n + g.n)
        for k1, c1 in f.terms.items():
            for k2, c2 in g.terms.items():
                prod = self._mul_h((f.m, f.n), k1, (g.m, g.n), k2)
                if not prod:
                    continue
                c = c1 * c2
                for key, coeff in prod.items():
                    cur = out.get(key)
                    cur = coeff * c if cur is None else cur + coeff * c
                    if cur:
                        out[key] = cur
                    else:
                        out.pop(key, None)
        return PropVec(arity[0], arity[1], out)

    def vertical(self, f, g):
        """Compose f: m -> n with g: n -> p into an element m -> p."""
        if f.n != g.m:
            raise UsageError(
                "vertical arity mismatch: (%d,%d) then (%d,%d)"
                % (f.m, f.n, g.m, g.n)
            )
        out = {}
        for k1, c1 in f.terms.items():
            for k2, c2 in g.terms.items():
                prod = self._mul_v((f.m, f.n), k1, (g.m, g.n), k2)
                if not prod:
                    continue
                c = c1 * c2
                for key, coeff in prod.items():
                    cur = out.get(key)
                    cur = coeff * c if cur is None else cur + coeff * c
                    if cur:
                        out[key] = cur
                    else:
                        out.pop(key, None)
        return PropVec(f.m, g.n, out)

    def id_power(self, k):
        if k == 0:
            return None
        cached = self._id_powers.get(k)
        if cached is None:
            cached = self.identity()
            for _ in range(k - 1):
                cached = self.horizontal(cached, self.identity())
            self._id_powers[k] = cached
        return cached

    def hconcat(self, *parts):
        out = None
        for part in parts:
            if part is None:
                continue
            out = part if out is None else self.horizontal(out, part)
        return out


class EndProp(PropInstance):
    """Linear maps between tensor powers of a d-dimensional space."""

    def __init__(self, d, field):
        super().__init__(field)
        if d < 1:
            raise UsageError("the tensor-power instance needs dimension >= 1")
        self.d = d
        self.label = "end_v(%d)" % d

    def dim(self, m, n):
        return self.d ** (m + n)

    def _strings(self, length):
        return list(itertools.product(range(self.d), repeat=length))

    def basis(self, m, n):
        return [
            (s, t) for s in self._strings(m) for t in self._strings(n)
        ]

    def basis_label(self, key):
        s, t = key
        def show(w):
            return "".join(str(x + 1) for x in w) or "()"
        return "%s->%s" % (show(s), show(t))

    def _mul_h(self, a1, k1, a2, k2):
        (s1, t1), (s2, t2) = k1, k2
        return {(s1 + s2, t1 + t2): self.field.one()}

    def _mul_v(self, a1, k1, a2, k2):
        (s1, t1), (s2, t2) = k1, k2
        if t1 != s2:
            return None
        return {(s1, t2): self.field.one()}

    def identity(self):
        one = self.field.one()
        return PropVec(1, 1, {(( x,), (x,)): one for x in range(self.d)})


class DirectSumProp(PropInstance):
    """Maps between direct-sum powers; horizontal composition is block
    placement, so it is an operation on whole elements rather than a
    bilinear product of basis vectors."""

    per_key_products = False

    def __init__(self, d, field):
        super().__init__(field)
        if d < 1:
            raise UsageError("the direct-sum instance needs dimension >= 1")
        self.d = d
        self.label = "direct_sum(%d)" % d

    def dim(self, m, n):
        if m == 0 or n == 0:
            return 0
        return (self.d * m) * (self.d * n)

    def basis(self, m, n):
        return [
            (r, c) for r in range(self.d * n) for c in range(self.d * m)
        ]

    def basis_label(self, key):
        return "E[%d,%d]" % key

    def horizontal(self, f, g):
        row_off = self.d * f.n
        col_off = self.d * f.m
        out = dict(f.terms)
        for (r, c), v in g.terms.items():
            out[(r + row_off, c + col_off)] = v
        return PropVec(f.m + g.m, f.n + g.n, out)

    def _mul_v(self, a1, k1, a2, k2):
        (r1, c1), (r2, c2) = k1, k2
        if c2 != r1:
            return None
        return {(r2, c1): self.field.one()}

    def identity(self):
        one = self.field.one()
        return PropVec(1, 1, {(x, x): one for x in range(self.d)})


class RLoopsProp(PropInstance):
    """Two-block instance modelled on tensor powers of an r-dimensional
    space: the short block is silent under horizontal products of two
    short elements and under vertical composition from the short side."""

    def __init__(self, r, field):
        super().__init__(field)
        if r < 1:
            raise UsageError("the loops instance needs r >= 1")
        self.r = r
        self.label = "r_loops(%d)" % r

    def dim(self, m, n):
        if n == 0:
            return self.r ** m
        return self.r ** (m + n - 1) + self.r ** (m + n)

    def _strings(self, length):
        if length < 0:
            return []
        return list(itertools.product(range(self.r), repeat=length))

    def basis(self, m, n):
        low = [
            ("lo", s, t)
            for s in self._strings(m)
            for t in self._strings(n - 1)
        ]
        high = [
            ("hi", s, t) for s in self._strings(m) for t in self._strings(n)
        ]
        return low + high if n >= 1 else high

    def bracket_basis(self, m, n):
        return [key for key in self.basis(m, n) if key[0] == "hi"]

    def basis_label(self, key):
        block, s, t = key
        def show(w):
            return "".join(str(x + 1) for x in w) or "()"
        return "%s:%s->%s" % (block, show(s), show(t))

    def _mul_h(self, a1, k1, a2, k2):
        b1, s1, t1 = k1
        b2, s2, t2 = k2
        if b1 == "lo" and b2 == "lo":
            return None
        block = "hi" if (b1, b2) == ("hi", "hi") else "lo"
        return {(block, s1 + s2, t1 + t2): self.field.one()}

    def _mul_v(self, a1, k1, a2, k2):
        b1, s1, t1 = k1
        b2, s2, t2 = k2
        if t1 != s2:
            return None
        return {(b2, s1, t2): self.field.one()}

    def identity(self):
        one = self.field.one()
        return PropVec(1, 1, {("hi", (x,), (x,)): one for x in range(self.r)})


class QuiverProp(PropInstance):
    """Parallel-pair instance of a quiver; the second-word length sorts a
    pair into the short or long block of each arity."""

    def __init__(self, quiver, field, guard=None):
        super().__init__(field)
        self.quiver = quiver
        self.guard = guard
        self.label = "quiver(%s)" % ",".join(a.name for a in quiver.arrows)

    def dim(self, m, n):
        if n == 0:
            return self.quiver.pair_count(m, 0)
        return self.quiver.pair_count(m, n - 1) + self.quiver.pair_count(m, n)

    def basis(self, m, n):
        low = (
            [("lo", pr) for pr in self.quiver.parallel_pairs(m, n - 1, self.guard)]
            if n >= 1
            else []
        )
        high = [("hi", pr) for pr in self.quiver.parallel_pairs(m, n, self.guard)]
        return low + high

    def bracket_basis(self, m, n):
        return [key for key in self.basis(m, n) if key[0] == "hi"]

    def basis_label(self, key):
        from .expr import format_pair

        return "%s:%s" % (key[0], format_pair(key[1]))

    def _mul_h(self, a1, k1, a2, k2):
        b1, p1 = k1
        b2, p2 = k2
        if b1 == "lo" and b2 == "lo":
            return None
        first = compose(p1.first, p2.first)
        second = compose(p1.second, p2.second)
        if first is None or second is None:
            return None
        block = "hi" if (b1, b2) == ("hi", "hi") else "lo"
        return {(block, ParallelPair(first, second)): self.field.one()}

    def _mul_v(self, a1, k1, a2, k2):
        b1, p1 = k1
        b2, p2 = k2
        if p1.second != p2.first:
            return None
        return {(b2, ParallelPair(p1.first, p2.second)): self.field.one()}

    def identity(self):
        one = self.field.one()
        q = self.quiver
        return PropVec(
            1,
            1,
            {
                ("hi", ParallelPair(q.arrow_path(a.name), q.arrow_path(a.name))): one
                for a in q.arrows
            },
        )


def make_prop(kind, field, quiver=None):
    """Build a PROP instance from a kind string such as end_v(2)."""
    import re

    m = re.match(r"(end_v|direct_sum|r_loops)\((\d+)\)\Z", kind)
    if m:
        n = int(m.group(2))
        cls = {
            "end_v": EndProp,
            "direct_sum": DirectSumProp,
            "r_loops": RLoopsProp,
        }[m.group(1)]
        return cls(n, field)
    if kind == "quiver":
        if quiver is None:
            raise UsageError("kind 'quiver' needs a quiver")
        return QuiverProp(quiver, field)
    raise UsageError("unknown PROP kind %r" % kind)


def star(prop, f, g):
    """The substitution sum: g into f's inputs, f into g's outputs."""
    m, p, n, q = f.m, f.n, g.m, g.n
    if min(m, p, n, q) < 1:
        raise UsageError("star needs arities at least (1,1)")
    field = prop.field
    total = prop.zero(m + n - 1, p + q - 1)
    for i in range(1, m + 1):
        inner = prop.hconcat(prop.id_power(i - 1), g, prop.id_power(m - i))
        term = prop.vertical(inner, prop.hconcat(f, prop.id_power(q - 1)))
        if ((i - 1) * (q - n)) % 2:
            term = term.scaled(-field.one())
        total = total + term
    for i in range(1, q):
        inner = prop.vertical(
            prop.hconcat(g, prop.id_power(m - 1)),
            prop.hconcat(prop.id_power(i), f, prop.id_power(q - 1 - i)),
        )
        if (i * (p - m)) % 2:
            inner = inner.scaled(-field.one())
        total = total + inner
    return total


def prop_bracket(prop, f, g):
    """Graded bracket from star with the arity-degree sign."""
    field = prop.field
    first = star(prop, f, g)
    second = star(prop, g, f)
    sign = field.one()
    if ((f.m - f.n) * (g.m - g.n)) % 2:
        sign = -sign
    return first - second.scaled(sign)


def _combine(prop, mul, a1, d1, a2, d2):
    """Bilinear combination of two small key -> coeff dicts."""
    out = {}
    if not d1 or not d2:
        return out
    for k1, c1 in d1.items():
        for k2, c2 in d2.items():
            prod = mul(a1, k1, a2, k2)
            if not prod:
                continue
            c = c1 * c2
            for key, coeff in prod.items():
                cur = out.get(key)
                cur = coeff * c if cur is None else cur + coeff * c
                if cur:
                    out[key] = cur
                else:
                    out.pop(key, None)
    return out


def interchange_failures(prop, max_size, cap=None):
    """All interchange-law violations on basis quadruples up to a size.

    Instances whose products are key-by-key run on raw key dicts; the
    direct-sum instance places blocks at the element level and takes the
    slower element route.
    """
    if not prop.per_key_products:
        return _interchange_on_elements(prop, max_size, cap)
    sizes = range(1, max_size + 1)
    bad = []
    checked = 0
    for m1, n1, p1, m2, n2, p2 in itertools.product(sizes, repeat=6):
        bf1 = prop.basis(m1, n1)
        bg1 = prop.basis(n1, p1)
        bf2 = prop.basis(m2, n2)
        bg2 = prop.basis(n2, p2)
        af1, ag1, af2, ag2 = (m1, n1), (n1, p1), (m2, n2), (n2, p2)
        av1, av2 = (m1, p1), (m2, p2)
        ahf, ahg = (m1 + m2, n1 + n2), (n1 + n2, p1 + p2)
        for kf1 in bf1:
            for kg1 in bg1:
                v1 = prop._mul_v(af1, kf1, ag1, kg1) or {}
                for kf2 in bf2:
                    hf = prop._mul_h(af1, kf1, af2, kf2) or {}
                    if not v1 and not hf:
                        # both sides are zero for every fourth key
                        checked += len(bg2)
                        continue
                    for kg2 in bg2:
                        checked += 1
                        if cap and checked > cap:
                            return bad, checked - 1
                        v2 = prop._mul_v(af2, kf2, ag2, kg2) or {}
                        lhs = _combine(prop, prop._mul_h, av1, v1, av2, v2)
                        hg = prop._mul_h(ag1, kg1, ag2, kg2) or {}
                        rhs = _combine(prop, prop._mul_v, ahf, hf, ahg, hg)
                        if lhs != rhs:
                            bad.append(
                                (
                                    prop.basis_label(kf1),
                                    prop.basis_label(kg1),
                                    prop.basis_label(kf2),
                                    prop.basis_label(kg2),
                                )
                            )
    return bad, checked


def _interchange_on_elements(prop, max_size, cap=None):
    sizes = range(1, max_size + 1)
    bad = []
    checked = 0
    for m1, n1, p1, m2, n2, p2 in itertools.product(sizes, repeat=6):
        for kf1 in prop.basis(m1, n1):
            f1 = prop.unit(m1, n1, kf1)
            for kg1 in prop.basis(n1, p1):
                g1 = prop.unit(n1, p1, kg1)
                v1 = prop.vertical(f1, g1)
                for kf2 in prop.basis(m2, n2):
                    f2 = prop.unit(m2, n2, kf2)
                    hf = prop.horizontal(f1, f2)
                    for kg2 in prop.basis(n2, p2):
                        g2 = prop.unit(n2, p2, kg2)
                        checked += 1
                        if cap and checked > cap:
                            return bad, checked - 1
                        lhs = prop.horizontal(v1, prop.vertical(f2, g2))
                        rhs = prop.vertical(hf, prop.horizontal(g1, g2))
                        if not (lhs == rhs):
                            bad.append(
                                (
                                    prop.basis_label(kf1),
                                    prop.basis_label(kg1),
                                    prop.basis_label(kf2),
                                    prop.basis_label(kg2),
                                )
                            )
    return bad, checked


# ---- bridges between the quiver instance and chain elements ----


def from_chain(prop, element):
    """View a chain element as a vector of the quiver instance."""
    if not isinstance(prop, QuiverProp) or prop.quiver is not element.quiver:
        raise UsageError("element and instance live on different quivers")
    terms = {}
    for pr, c in element.low.items():
        terms[("lo", pr)] = c
    for pr, c in element.high.items():
        terms[("hi", pr)] = c
    return PropVec(element.m, element.p, terms)


def to_chain(prop, vec):
    low = {}
    high = {}
    for (block, pr), c in vec.terms.items():
        (low if block == "lo" else high)[pr] = c
    return PropElement(prop.quiver, vec.m, vec.n, low, high)


# ---- the two-dimensional tensor model ----


def _bits(length):
    return list(itertools.product((0, 1), repeat=length))


class TensorModel:
    """Matrix model on tensor powers of a fixed 2-dimensional space."""

    def __init__(self, field):
        self.field = field

    def basis(self, m, p):
        """Ordered matrix-unit keys (in-string, out-string) for maps
        from the m-th to the p-th tensor power."""
        return [(s, t) for s in _bits(m) for t in _bits(p)]

    def phi_pairs(self, m, p):
        """Images of phi on matrix units: key -> dict of image keys."""
        sign = 1 if (p + m + 1) % 2 == 0 else -1
        one = self.field.one()
        out = {}
        for s, t in self.basis(m, p):
            img = {}
            for x in (0, 1):
                key = ((x,) + s, (x,) + t)
                img[key] = img.get(key, self.field.zero()) + one
            for x in (0, 1):
                key = (s + (x,), t + (x,))
                val = one if sign == 1 else -one
                img[key] = img.get(key, self.field.zero()) + val
            out[(s, t)] = {k: v for k, v in img.items() if v}
        return out

    def phi_matrix(self, m, p):
        from .exactla import ExactMatrix

        cols = self.basis(m, p)
        rows = self.basis(m + 1, p + 1)
        row_pos = {k: i for i, k in enumerate(rows)}
        mat = ExactMatrix(len(rows), len(cols))
        images = self.phi_pairs(m, p)
        for j, key in enumerate(cols):
            for img_key, val in images[key].items():
                mat.add_to(row_pos[img_key], j, val)
        return mat

    def theta_matrix(self, m, p):
        from .exactla import ExactMatrix

        cols = self.basis(m, p)
        rows = self.basis(m + 1, p + 1)
        row_pos = {k: i for i, k in enumerate(rows)}
        mat = ExactMatrix(len(rows), len(cols))
        minus = -self.field.one()
        for j, (s, t) in enumerate(cols):
            for x in (0, 1):
                mat.add_to(row_pos[(s + (x,), t + (x,))], j, minus)
        return mat

    def k_group(self, m, p):
        """Kernel block and quotient data mirroring the cohomology split."""
        from .exactla import Subspace, kernel_image

        kernel, _ = kernel_image(self.phi_matrix(m, p), self.field)
        prev = self.phi_matrix(m - 1, p) if m >= 1 else None
        rows = self.basis(m, p + 1)
        if prev is None:
            image = Subspace.from_vectors(self.field, [])
        else:
            image = Subspace.from_vectors(self.field, prev.columns())
        reps = [i for i in range(len(rows)) if i not in image.pivots]
        return kernel, image, reps


def tensor_model(m, p, field):
    """Matrices and group data of the tensor model at one bidegree."""
    if m < 0 or p < 0:
        raise UsageError("tensor model bidegrees must be nonnegative")
    model = TensorModel(field)
    return model.phi_matrix(m, p), model.theta_matrix(m, p), model.k_group(m, p)


class TwoLoopsCorrespondence:
    """Dictionary between parallel pairs of the two-loops quiver and
    matrix units on tensor powers of the 2-dimensional space."""

    def __init__(self, quiver, field):
        if (
            len(quiver.vertices) != 1
            or len(quiver.arrows) != 2
            or any(a.source != a.target for a in quiver.arrows)
        ):
            raise UsageError(
                "the correspondence needs the quiver with two loops on one vertex"
            )
        self.quiver = quiver
        self.field = field
        self.model = TensorModel(field)

    def string_of(self, path):
        return tuple(path.arrows)

    def path_of(self, bits):
        if not bits:
            return Path(self.quiver, (), self.quiver.vertices[0])
        return Path(self.quiver, tuple(bits))

    def map_block(self, vec):
        """Send a dict pair -> coeff to a dict matrix-unit -> coeff."""
        out = {}
        for pr, c in vec.items():
            key = (self.string_of(pr.first), self.string_of(pr.second))
            out[key] = out.get(key, self.field.zero()) + c
        return {k: v for k, v in out.items() if v}

    def unmap_block(self, units):
        out = {}
        for (s, t), c in units.items():
            pr = ParallelPair(self.path_of(s), self.path_of(t))
            out[pr] = out.get(pr, self.field.zero()) + c
        return {k: v for k, v in out.items() if v}

    def map_element(self, element):
        """Chain element at arity (m, p+1) to tensor blocks at (m, p)."""
        return (
            element.m,
            element.p - 1,
            self.map_block(element.low),
            self.map_block(element.high),
        )


def _t_sign(field, exponent):
    return field.one() if exponent % 2 == 0 else -field.one()


def _t_star_high(f_terms, M, P, g_terms, N, Q, field):
    """String-level transliteration of the long-block substitution sum."""
    out = {}
    for (sf, tf), cf in f_terms.items():
        for (sg, tg), cg in g_terms.items():
            c0 = cf * cg
            for i in range(1, M + 1):
                sgn = _t_sign(field, (i - 1) * (Q - N)) * c0
                for z in _bits(Q - 1):
                    S = sf + z
                    if S[i - 1 : i - 1 + Q] != tg:
                        continue
                    key = (S[: i - 1] + sg + S[i - 1 + Q :], tf + z)
                    cur = out.get(key)
                    cur = sgn if cur is None else cur + sgn
                    if cur:
                        out[key] = cur
                    else:
                        out.pop(key, None)
            for i in range(1, Q):
                sgn = _t_sign(field, i * (P - M)) * c0
                for v in _bits(M - 1):
                    S = tg + v
                    if S[i : i + M] != sf:
                        continue
                    key = (sg + v, S[:i] + tf + S[i + M :])
                    cur = out.get(key)
                    cur = sgn if cur is None else cur + sgn
                    if cur:
                        out[key] = cur
                    else:
                        out.pop(key, None)
    return out


def _t_low_high(f_terms, M, P, g_terms, N, Q, field):
    """String-level transliteration of the short-block substitution sum."""
    out = {}
    for (sf, tf), cf in f_terms.items():
        for (sg, tg), cg in g_terms.items():
            c0 = cf * cg
            for i in range(1, M + 1):
                sgn = _t_sign(field, i * (Q - N)) * c0
                for z in _bits(Q - 1):
                    S = sf + z
                    if S[i - 1 : i - 1 + Q] != tg:
                        continue
                    key = (S[: i - 1] + sg + S[i - 1 + Q :], tf + z)
                    cur = out.get(key)
                    cur = sgn if cur is None else cur + sgn
                    if cur:
                        out[key] = cur
                    else:
                        out.pop(key, None)
            for i in range(0, P - 1):
                sgn = -_t_sign(field, (Q - N) * (i + M + P)) * c0
                for v in _bits(N - 1):
                    S = tf + v
                    if S[i : i + N] != sg:
                        continue
                    key = (sf + v, S[:i] + tg + S[i + N :])
                    cur = out.get(key)
                    cur = sgn if cur is None else cur + sgn
                    if cur:
                        out[key] = cur
                    else:
                        out.pop(key, None)
    return out


def t_bracket(a, b, field):
    """Bracket on tensor blocks; inputs are (m, p, t0, t1) tuples."""
    m1, p1, lo1, hi1 = a
    m2, p2, lo2, hi2 = b
    M, P, N, Q = m1, p1 + 1, m2, p2 + 1
    eps = 1 if ((M - P) * (N - Q)) % 2 == 0 else -1
    high = _t_star_high(hi1, M, P, hi2, N, Q, field)
    back = _t_star_high(hi2, N, Q, hi1, M, P, field)
    for k, v in back.items():
        cur = high.get(k)
        delta = -v if eps == 1 else v
        cur = delta if cur is None else cur + delta
        if cur:
            high[k] = cur
        else:
            high.pop(k, None)
    low = _t_low_high(lo1, M, P, hi2, N, Q, field)
    back_low = _t_low_high(lo2, N, Q, hi1, M, P, field)
    for k, v in back_low.items():
        cur = low.get(k)
        delta = -v if eps == 1 else v
        cur = delta if cur is None else cur + delta
        if cur:
            low[k] = cur
        else:
            low.pop(k, None)
    return (M + N - 1, P + Q - 2, low, high)


def t_theta(a, field):
    """Right-append shift on tensor blocks: x maps to minus x tensor id."""
    m, p, lo, hi = a
    out_lo = {}
    out_hi = {}
    for src, dst in ((lo, out_lo), (hi, out_hi)):
        for (s, t), c in src.items():
            for x in (0, 1):
                key = (s + (x,), t + (x,))
                cur = dst.get(key)
                cur = -c if cur is None else cur - c
                if cur:
                    dst[key] = cur
                else:
                    dst.pop(key, None)
    return (m + 1, p + 1, out_lo, out_hi)


# ---- the matrix-padding bracket ----


def gl_zero(n, field):
    z = field.zero()
    return [[z for _ in range(n)] for _ in range(n)]


def _gl_embed(A, size, offset, field):
    out = gl_zero(size, field)
    m = len(A)
    for i in range(m):
        for j in range(m):
            out[offset + i][offset + j] = A[i][j]
    return out


def _gl_mul(X, Y, field):
    n = len(X)
    z = field.zero()
    out = [[z for _ in range(n)] for _ in range(n)]
    for i in range(n):
        row = X[i]
        for k in range(n):
            c = row[k]
            if not c:
                continue
            yk = Y[k]
            oi = out[i]
            for j in range(n):
                if yk[j]:
                    oi[j] = oi[j] + c * yk[j]
    return out


def _gl_sub(X, Y):
    return [
        [X[i][j] - Y[i][j] for j in range(len(X))] for i in range(len(X))
    ]


def _gl_add(X, Y):
    return [
        [X[i][j] + Y[i][j] for j in range(len(X))] for i in range(len(X))
    ]


def _gl_comm(X, Y, field):
    return _gl_sub(_gl_mul(X, Y, field), _gl_mul(Y, X, field))


def gl_bracket(A, B, field):
    """Padding bracket of an m-square and an n-square matrix."""
    m = len(A)
    n = len(B)
    if m < 1 or n < 1:
        raise UsageError("matrices must be nonempty")
    size = m + n - 1
    total = gl_zero(size, field)
    padB = _gl_embed(B, size, 0, field)
    for i in range(0, n):
        total = _gl_add(total, _gl_comm(_gl_embed(A, size, i, field), padB, field))
    padA = _gl_embed(A, size, 0, field)
    for i in range(1, m):
        total = _gl_add(total, _gl_comm(padA, _gl_embed(B, size, i, field), field))
    return total


def gl_theta(A, field):
    """Corner embedding of a matrix into the next size up."""
    return _gl_embed(A, len(A) + 1, 0, field)
