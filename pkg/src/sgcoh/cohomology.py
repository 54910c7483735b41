"""Hochschild cohomology cells of a radical square zero quiver algebra.

A cell at bidegree (m, p) is modelled on parallel pairs of paths: the low
block is spanned by pairs of lengths (m, p), the high block by pairs of
lengths (m, p + 1). Cohomology splits as high block modulo the image of
the incoming differential, plus the kernel of the outgoing differential
inside the low block. The connecting map shifts both indices by one and
stays block diagonal, which is what the stabilized colimit dimension
report exploits.
"""

from .errors import HypothesisRefusal, UsageError
from .exactla import ExactMatrix, Subspace, kernel_image, rank_of, vec_add_scaled


def build_D(quiver, m, p, field, guard=None):
    """The differential from pairs of lengths (m, p) to lengths (m+1, p+1).

    A pair (g, b) is sent to the sum of (a*g, a*b) over arrows a composable
    on the left, plus (-1)**(p+m+1) times the sum of (g*a, b*a) over arrows
    composable on the right. Summands whose endpoints fail to match are
    dropped. Negative m or p gives the zero map from an empty basis.
    """
    if m < 0 or p < 0:
        return ExactMatrix(max(quiver.pair_count(m + 1, p + 1), 0), 0)
    from .quiver import ParallelPair, Path

    cols = quiver.parallel_pairs(m, p, guard=guard)
    rows = quiver.parallel_pairs(m + 1, p + 1, guard=guard)
    mat = ExactMatrix(len(rows), len(cols))
    one = field.one()
    sign = one if (p + m + 1) % 2 == 0 else -one
    for j, (g, b) in enumerate(cols):
        for ai in quiver.arrows_by_source[g.target]:
            pair = ParallelPair(
                Path(quiver, (ai,) + g.arrows), Path(quiver, (ai,) + b.arrows)
            )
            pos = quiver.pair_position(m + 1, p + 1, pair)
            if pos is not None:
                mat.add_to(pos, j, one)
        for bi in quiver.arrows_by_target[g.source]:
            pair = ParallelPair(
                Path(quiver, g.arrows + (bi,)), Path(quiver, b.arrows + (bi,))
            )
            pos = quiver.pair_position(m + 1, p + 1, pair)
            if pos is not None:
                mat.add_to(pos, j, sign)
    return mat


def _rank_D(quiver, m, p, field, guard=None):
    key = ("rankD", m, p, field.key)
    if key not in quiver.cache:
        if m < 0 or p < 0:
            quiver.cache[key] = 0
        else:
            mat = _cached_D(quiver, m, p, field, guard)
            quiver.cache[key] = rank_of(mat.columns(), field)
    return quiver.cache[key]


def _cached_D(quiver, m, p, field, guard=None):
    key = ("D", m, p, field.key)
    if key not in quiver.cache:
        quiver.cache[key] = build_D(quiver, m, p, field, guard=guard)
    return quiver.cache[key]


class CohomologyGroup:
    """A single cohomology cell with explicit bases for both blocks."""

    def __init__(self, quiver, m, p, field, guard=None):
        if p < 0:
            raise UsageError("stages start at 0; got p=%d" % p)
        self.quiver = quiver
        self.m = m
        self.p = p
        self.field = field
        if m < 0:
            self.high_pairs = []
            self.low_pairs = []
            self.image = Subspace(field)
            self.quotient_reps = []
            self.kernel_basis = []
        else:
            self.high_pairs = quiver.parallel_pairs(m, p + 1, guard=guard)
            self.low_pairs = quiver.parallel_pairs(m, p, guard=guard)
            incoming = _cached_D(quiver, m - 1, p, field, guard=guard)
            self.image = Subspace.from_vectors(field, incoming.columns())
            pivots = self.image.pivots
            one = field.one()
            self.quotient_reps = [
                {j: one} for j in range(len(self.high_pairs)) if j not in pivots
            ]
            outgoing = _cached_D(quiver, m, p, field, guard=guard)
            self.kernel_basis, _ = _kernel_only(outgoing, field)
        self.dim_quotient = len(self.quotient_reps)
        self.dim_kernel = len(self.kernel_basis)
        self.dimension = self.dim_quotient + self.dim_kernel

    def reduce_high(self, vec):
        """Canonical representative of a high-block vector modulo the image."""
        return self.image.reduce(vec)

    def __repr__(self):
        return "CohomologyGroup(m=%d, p=%d, dim=%d)" % (
            self.m,
            self.p,
            self.dimension,
        )


def _kernel_only(matrix, field):
    kernel, _image = kernel_image(matrix, field)
    return kernel, None


def cohomology(quiver, m, p, field, guard=None):
    return CohomologyGroup(quiver, m, p, field, guard=guard)


# ---- connecting map ----


def append_shift(quiver, lengths, vec, field, guard=None):
    """The connecting map on one block: minus the sum of right extensions.

    `lengths` gives the (first, second) path lengths of the domain pairs;
    the result lives on pairs one longer in both coordinates.
    """
    m, s = lengths
    src = quiver.parallel_pairs(m, s, guard=guard)
    quiver.parallel_pairs(m + 1, s + 1, guard=guard)
    out = {}
    from .quiver import ParallelPair, Path

    for j, coeff in vec.items():
        g, b = src[j]
        for bi in quiver.arrows_by_target[g.source]:
            ga = Path(quiver, g.arrows + (bi,))
            ba = Path(quiver, b.arrows + (bi,))
            pos = quiver.pair_position(m + 1, s + 1, ParallelPair(ga, ba))
            if pos is not None:
                cur = out.get(pos)
                cur = -coeff if cur is None else cur - coeff
                if cur:
                    out[pos] = cur
                else:
                    out.pop(pos, None)
    return out


def apply_theta(quiver, m, p, vec, block, field, reduce=True, guard=None):
    """Connecting map on a cohomology element at bidegree (m, p).

    block 'high': vec lives on pairs (m, p+1); the image is returned
    modulo the target image subspace when reduce is set.
    block 'low': vec lives on pairs (m, p); kernel vectors land in the
    target kernel, no reduction applies.
    """
    if block == "high":
        img = append_shift(quiver, (m, p + 1), vec, field, guard=guard)
        if reduce:
            target = cohomology_cached(quiver, m + 1, p + 1, field, guard=guard)
            return target.reduce_high(img)
        return img
    if block == "low":
        return append_shift(quiver, (m, p), vec, field, guard=guard)
    raise UsageError("block must be 'high' or 'low', got %r" % block)


def cohomology_cached(quiver, m, p, field, guard=None):
    key = ("cohgroup", m, p, field.key)
    if key not in quiver.cache:
        quiver.cache[key] = CohomologyGroup(quiver, m, p, field, guard=guard)
    return quiver.cache[key]


# ---- stabilized colimit dimension ----


class StabilizationReport:
    def __init__(self, quiver, degree, window, p_max, stages, stabilized, value, notes):
        self.quiver = quiver
        self.degree = degree
        self.window = window
        self.p_max = p_max
        self.stages = stages
        self.stabilized = stabilized
        self.value = value
        self.notes = notes

    def to_dict(self):
        return {
            "degree": self.degree,
            "stages": [
                {"p": p, "dim": d, "window_rank": w} for (p, d, w) in self.stages
            ],
            "stabilized": self.stabilized,
            "dim": self.value,
        }


def _dims_at(quiver, n, p, field, guard):
    m = n + p
    if m < 0:
        return 0, 0
    hi = quiver.pair_count(m, p + 1) - _rank_D(quiver, m - 1, p, field, guard)
    lo = quiver.pair_count(m, p) - _rank_D(quiver, m, p, field, guard)
    return hi, lo


def _window_rank(quiver, n, p, width, field, guard):
    """Rank of the width-fold connecting composite leaving stage p.

    The quotient part pushes canonical representatives through the chain
    level composite and counts their rank relative to the target image;
    block diagonality makes the total the sum of the two block ranks.
    """
    m = n + p
    group = cohomology_cached(quiver, m, p, field, guard=guard)
    if width == 0:
        return group.dimension
    quot_imgs = []
    for rep in group.quotient_reps:
        cur = dict(rep)
        for k in range(width):
            cur = append_shift(quiver, (m + k, p + k + 1), cur, field, guard=guard)
            if not cur:
                break
        if cur:
            quot_imgs.append(cur)
    quot_rank = 0
    if quot_imgs:
        target_D = _cached_D(quiver, m + width - 1, p + width, field, guard=guard)
        d_cols = [c for c in target_D.columns() if c]
        base = rank_of(d_cols, field)
        quot_rank = rank_of(d_cols + quot_imgs, field) - base
    ker_imgs = []
    for kv in group.kernel_basis:
        cur = dict(kv)
        for k in range(width):
            cur = append_shift(quiver, (m + k, p + k), cur, field, guard=guard)
            if not cur:
                break
        if cur:
            ker_imgs.append(cur)
    ker_rank = rank_of(ker_imgs, field) if ker_imgs else 0
    return quot_rank + ker_rank


def sg_dimension(quiver, degree, field, p_max=16, window=3, guard=200000):
    """Stabilized dimension of the degree `degree` singular group.

    Stage p holds the cohomology cell at bidegree (degree + p, p), starting
    at p = max(1, 1 - degree) so the first index is at least one. Each
    stage reports the rank of the `window`-fold connecting composite;
    stages too close to p_max get a truncated composite. The dimension
    counts as stabilized when at least `window` full-width ranks exist and
    the last `window` of them agree.
    """
    if window < 1:
        raise UsageError("window must be at least 1")
    p0 = max(1, 1 - degree)
    if p_max < p0:
        raise UsageError(
            "p_max=%d is below the first stage %d for degree %d"
            % (p_max, p0, degree)
        )
    stages = []
    full_ranks = []
    for p in range(p0, p_max + 1):
        hi, lo = _dims_at(quiver, degree, p, field, guard)
        dim = hi + lo
        width = min(window, p_max - p)
        wrank = _window_rank(quiver, degree, p, width, field, guard)
        stages.append((p, dim, wrank))
        if width == window:
            full_ranks.append(wrank)
    stabilized = len(full_ranks) >= window and len(set(full_ranks[-window:])) == 1
    value = full_ranks[-1] if stabilized else None
    notes = []
    if quiver.source_vertices() or quiver.sink_vertices():
        notes.append("quiver has sources or sinks; all singular groups vanish")
    if not stabilized:
        notes.append("not stabilized at p_max=%d; raise --pmax" % p_max)
    return StabilizationReport(
        quiver, degree, window, p_max, stages, stabilized, value, notes
    )


# ---- structural checks used by the verification suites ----


def require_standing_hypotheses(quiver):
    """Connected, no sources, no sinks, and not a crown; else refuse."""
    info = quiver.classify()
    if not info["connected"]:
        raise HypothesisRefusal("quiver is not connected")
    if info["sources"]:
        raise HypothesisRefusal(
            "quiver has source vertices: %s" % ", ".join(info["sources"])
        )
    if info["sinks"]:
        raise HypothesisRefusal(
            "quiver has sink vertices: %s" % ", ".join(info["sinks"])
        )
    if info["crown"]:
        raise HypothesisRefusal("quiver is a crown; the kernel law does not apply")
    return info


def kernel_checks(quiver, field, bound=4, guard=200000):
    """Kernel of the outgoing differential on the low block, bidegrees up
    to the bound: one dimensional spanned by the diagonal sum when the two
    lengths agree, zero otherwise."""
    require_standing_hypotheses(quiver)
    results = []
    one = field.one()
    for m in range(1, bound + 1):
        for p in range(1, bound + 1):
            mat = _cached_D(quiver, m, p, field, guard=guard)
            kernel, _ = kernel_image(mat, field)
            if m != p:
                ok = not kernel
                detail = "kernel dimension %d (expected 0)" % len(kernel)
            else:
                diag = {}
                for j, (g, b) in enumerate(quiver.parallel_pairs(m, p)):
                    if g == b:
                        diag[j] = one
                span = Subspace.from_vectors(field, kernel)
                ok = len(kernel) == 1 and span.contains(diag)
                detail = "kernel dimension %d (expected 1, diagonal)" % len(kernel)
            results.append(("kernel m=%d p=%d" % (m, p), ok, detail))
    return results


def injectivity_checks(quiver, field, bound=4, guard=200000):
    """The connecting map is injective on cohomology at bidegrees up to
    the bound, checked blockwise."""
    require_standing_hypotheses(quiver)
    results = []
    for m in range(1, bound + 1):
        for p in range(1, bound + 1):
            group = cohomology_cached(quiver, m, p, field, guard=guard)
            imgs = []
            for rep in group.quotient_reps:
                imgs.append(
                    apply_theta(quiver, m, p, rep, "high", field, reduce=False, guard=guard)
                )
            quot_ok = True
            if imgs:
                target_D = _cached_D(quiver, m, p + 1, field, guard=guard)
                d_cols = [c for c in target_D.columns() if c]
                base = rank_of(d_cols, field)
                quot_ok = rank_of(d_cols + imgs, field) - base == len(imgs)
            ker_imgs = [
                apply_theta(quiver, m, p, kv, "low", field, guard=guard)
                for kv in group.kernel_basis
            ]
            ker_ok = rank_of(ker_imgs, field) == len(ker_imgs)
            ok = quot_ok and ker_ok
            results.append(
                (
                    "injectivity m=%d p=%d" % (m, p),
                    ok,
                    "quotient %s, kernel %s"
                    % ("injective" if quot_ok else "NOT injective",
                       "injective" if ker_ok else "NOT injective"),
                )
            )
    return results
