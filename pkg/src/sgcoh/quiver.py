"""Finite quivers, paths, and parallel-pair bookkeeping.

Paths are written words a1*...*am whose arrows compose right to left: the
rightmost arrow is applied first, so the source of a path is the source of
its last written arrow and the target is the target of its first.
"""

import re
from collections import namedtuple

from .errors import QuiverSyntaxError, ResourceGuardError, UsageError

Arrow = namedtuple("Arrow", ["name", "source", "target"])

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class Path:
    """A directed path, stored as a tuple of arrow indices in written order.

    A length-zero path is the lazy path e(v) at a vertex and stores the
    vertex name instead; its source and target are both that vertex.
    """

    __slots__ = ("quiver", "arrows", "vertex", "_hash")

    def __init__(self, quiver, arrows=(), vertex=None):
        self.quiver = quiver
        self.arrows = tuple(arrows)
        self._hash = None
        if self.arrows:
            self.vertex = None
        else:
            if vertex is None:
                raise ValueError("a length-zero path needs a vertex")
            self.vertex = vertex

    def __len__(self):
        return len(self.arrows)

    @property
    def source(self):
        if not self.arrows:
            return self.vertex
        return self.quiver.arrows[self.arrows[-1]].source

    @property
    def target(self):
        if not self.arrows:
            return self.vertex
        return self.quiver.arrows[self.arrows[0]].target

    def __eq__(self, other):
        return (
            isinstance(other, Path)
            and self.arrows == other.arrows
            and self.vertex == other.vertex
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.arrows, self.vertex))
        return self._hash

    def __repr__(self):
        return "Path(%s)" % format_path(self)

    def arrow_names(self):
        return tuple(self.quiver.arrows[i].name for i in self.arrows)


def format_path(path):
    if not path.arrows:
        return "e(%s)" % path.vertex
    return "*".join(path.arrow_names())


def compose(first, second):
    """Concatenate written words: first after second.

    Requires first.source == second.target (the output of `second` feeds
    `first`). Returns None when the endpoints do not match, which doubles
    as the zero of the path algebra in sparse accumulations.
    """
    if first.quiver is not second.quiver:
        raise UsageError("cannot compose paths over different quivers")
    if first.source != second.target:
        return None
    if not first.arrows:
        return second
    if not second.arrows:
        return first
    return Path(first.quiver, first.arrows + second.arrows)


ParallelPair = namedtuple("ParallelPair", ["first", "second"])


class Quiver:
    """A finite quiver with deterministic enumeration caches.

    Vertices and arrows keep their declaration order; every enumeration
    below is derived from that order, so identical input files yield
    byte-identical downstream output.
    """

    def __init__(self, vertices, arrows, name="quiver"):
        self.name = name
        self.vertices = tuple(vertices)
        if not self.vertices:
            raise UsageError("a quiver needs at least one vertex")
        self.vertex_index = {}
        for v in self.vertices:
            if v in self.vertex_index:
                raise UsageError("duplicate vertex %r" % v)
            self.vertex_index[v] = len(self.vertex_index)
        self.arrows = tuple(arrows)
        self.arrow_index = {}
        for i, a in enumerate(self.arrows):
            if a.name in self.arrow_index:
                raise UsageError("duplicate arrow %r" % a.name)
            if a.source not in self.vertex_index or a.target not in self.vertex_index:
                raise UsageError("arrow %r uses an undeclared vertex" % a.name)
            self.arrow_index[a.name] = i
        # arrows grouped by endpoint, in declaration order
        self.arrows_by_source = {v: [] for v in self.vertices}
        self.arrows_by_target = {v: [] for v in self.vertices}
        for i, a in enumerate(self.arrows):
            self.arrows_by_source[a.source].append(i)
            self.arrows_by_target[a.target].append(i)
        self._paths = {}
        self._path_index = {}
        self._pairs = {}
        self._pair_index = {}
        self._counts = {}
        self.cache = {}

    # ---- enumeration ----

    def trivial_path(self, vertex):
        if vertex not in self.vertex_index:
            raise UsageError("unknown vertex %r" % vertex)
        return Path(self, (), vertex)

    def arrow_path(self, name):
        if name not in self.arrow_index:
            raise UsageError("unknown arrow %r" % name)
        return Path(self, (self.arrow_index[name],))

    def paths(self, length):
        """All paths of the given length, in prefix-major lexicographic order.

        The order extends a word on the right (earlier letters are more
        significant), with letters compared by arrow declaration index.
        """
        if length < 0:
            return []
        if length not in self._paths:
            if length == 0:
                level = [Path(self, (), v) for v in self.vertices]
            else:
                level = []
                for p in self.paths(length - 1):
                    for i in self.arrows_by_target[p.source]:
                        level.append(Path(self, p.arrows + (i,)))
            self._paths[length] = level
            self._path_index[length] = {p: k for k, p in enumerate(level)}
        return self._paths[length]

    def path_position(self, path):
        return self._path_index[len(path)][path]

    def path_count(self, length):
        """Number of paths of the given length, computed without enumeration."""
        return sum(sum(row) for row in self._power(length))

    def _power(self, length):
        key = ("power", length)
        if key not in self._counts:
            n = len(self.vertices)
            if length == 0:
                mat = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
            else:
                prev = self._power(length - 1)
                step = [[0] * n for _ in range(n)]
                for a in self.arrows:
                    step[self.vertex_index[a.source]][self.vertex_index[a.target]] += 1
                mat = [[0] * n for _ in range(n)]
                for i in range(n):
                    for k in range(n):
                        if prev[i][k]:
                            for j in range(n):
                                if step[k][j]:
                                    mat[i][j] += prev[i][k] * step[k][j]
            self._counts[key] = mat
        return self._counts[key]

    def pair_count(self, m, p):
        """Number of parallel pairs (path of length m, path of length p)."""
        if m < 0 or p < 0:
            return 0
        a = self._power(m)
        b = self._power(p)
        n = len(self.vertices)
        return sum(a[i][j] * b[i][j] for i in range(n) for j in range(n))

    def parallel_pairs(self, m, p, guard=None):
        """All pairs (gamma, beta) with len m and p sharing source and target.

        Ordered lexicographically by (position of gamma in paths(m),
        position of beta in paths(p)). The optional guard bounds the pair
        count before anything is materialized.
        """
        if m < 0 or p < 0:
            return []
        key = (m, p)
        if key not in self._pairs:
            if guard is not None:
                count = self.pair_count(m, p)
                if count > guard:
                    raise ResourceGuardError(
                        "parallel pair basis for lengths (%d, %d) has %d elements, "
                        "over the guard of %d" % (m, p, count, guard)
                    )
            by_ends = {}
            for q in self.paths(p):
                by_ends.setdefault((q.source, q.target), []).append(q)
            pairs = []
            for g in self.paths(m):
                for q in by_ends.get((g.source, g.target), ()):
                    pairs.append(ParallelPair(g, q))
            self._pairs[key] = pairs
            self._pair_index[key] = {pr: k for k, pr in enumerate(pairs)}
        return self._pairs[key]

    def pair_position(self, m, p, pair):
        self.parallel_pairs(m, p)
        return self._pair_index[(m, p)].get(pair)

    # ---- structural classification ----

    def out_degree(self, vertex):
        return len(self.arrows_by_source[vertex])

    def in_degree(self, vertex):
        return len(self.arrows_by_target[vertex])

    def is_connected(self):
        """Connectivity of the underlying undirected graph."""
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            v = stack.pop()
            for i in self.arrows_by_source[v]:
                w = self.arrows[i].target
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
            for i in self.arrows_by_target[v]:
                w = self.arrows[i].source
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def source_vertices(self):
        return [v for v in self.vertices if self.in_degree(v) == 0]

    def sink_vertices(self):
        return [v for v in self.vertices if self.out_degree(v) == 0]

    def is_crown(self):
        """True when the arrows form one directed cycle through every vertex.

        Equivalently every vertex has in and out degree one and the quiver
        is connected; the single loop counts as the one-vertex crown.
        """
        if len(self.arrows) != len(self.vertices):
            return False
        for v in self.vertices:
            if self.out_degree(v) != 1 or self.in_degree(v) != 1:
                return False
        return self.is_connected()

    def is_acyclic(self):
        return self.path_count(len(self.vertices)) == 0

    def classify(self):
        return {
            "connected": self.is_connected(),
            "sources": self.source_vertices(),
            "sinks": self.sink_vertices(),
            "crown": self.is_crown(),
            "acyclic": self.is_acyclic(),
        }


# ---- parsing ----


def parse_quiver(text, source_name="<quiver>"):
    """Parse the plain-text quiver format.

    The format is line based: full-line comments start with '#', the first
    significant line is 'vertices: v1 v2 ...', and every following
    significant line is 'arrow name: src -> tgt'. Identifiers match
    [A-Za-z_][A-Za-z0-9_]*. Errors carry the offending line number.
    """
    vertices = None
    arrows = []
    seen_arrows = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if vertices is None:
            if not line.startswith("vertices:"):
                raise QuiverSyntaxError(
                    "expected a 'vertices:' line first", source_name, lineno
                )
            names = line[len("vertices:"):].split()
            if not names:
                raise QuiverSyntaxError(
                    "the vertices line names no vertices", source_name, lineno
                )
            for v in names:
                if not _IDENT.match(v):
                    raise QuiverSyntaxError(
                        "bad vertex identifier %r" % v, source_name, lineno
                    )
            if len(set(names)) != len(names):
                raise QuiverSyntaxError(
                    "duplicate vertex in vertices line", source_name, lineno
                )
            vertices = names
            continue
        m = re.match(
            r"arrow\s+([A-Za-z_][A-Za-z0-9_]*)\s*:\s*"
            r"([A-Za-z_][A-Za-z0-9_]*)\s*->\s*([A-Za-z_][A-Za-z0-9_]*)\s*\Z",
            line,
        )
        if not m:
            raise QuiverSyntaxError(
                "expected 'arrow name: src -> tgt', got %r" % line,
                source_name,
                lineno,
            )
        name, src, tgt = m.groups()
        if name in seen_arrows:
            raise QuiverSyntaxError(
                "duplicate arrow %r" % name, source_name, lineno
            )
        if src not in vertices:
            raise QuiverSyntaxError("unknown vertex %r" % src, source_name, lineno)
        if tgt not in vertices:
            raise QuiverSyntaxError("unknown vertex %r" % tgt, source_name, lineno)
        seen_arrows.add(name)
        arrows.append(Arrow(name, src, tgt))
    if vertices is None:
        raise QuiverSyntaxError("no vertices line found", source_name, None)
    return Quiver(vertices, arrows, name=source_name)


def load_quiver(path):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return parse_quiver(text, source_name=str(path))


# ---- builders for common shapes ----

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def _arrow_names(count):
    names = []
    for i in range(count):
        if i < len(_LETTERS):
            names.append(_LETTERS[i])
        else:
            names.append("a%d" % i)
    return names


def one_loop():
    return Quiver(["v"], [Arrow("a", "v", "v")], name="one-loop")


def multi_loop(r):
    """One vertex carrying r loops named a, b, c, ..."""
    if r < 1:
        raise UsageError("need at least one loop")
    names = _arrow_names(r)
    return Quiver(["v"], [Arrow(n, "v", "v") for n in names], name="%d-loops" % r)


def crown(c):
    """The directed cycle on c vertices v1 -> v2 -> ... -> vc -> v1."""
    if c < 1:
        raise UsageError("a crown needs at least one vertex")
    if c == 1:
        return one_loop()
    vs = ["v%d" % (i + 1) for i in range(c)]
    names = _arrow_names(c)
    arrows = [Arrow(names[i], vs[i], vs[(i + 1) % c]) for i in range(c)]
    return Quiver(vs, arrows, name="%d-crown" % c)


def line_quiver(n):
    """The linear quiver with n vertices and n-1 arrows v1 -> ... -> vn."""
    if n < 1:
        raise UsageError("a line quiver needs at least one vertex")
    vs = ["v%d" % (i + 1) for i in range(n)]
    names = _arrow_names(max(n - 1, 0))
    arrows = [Arrow(names[i], vs[i], vs[i + 1]) for i in range(n - 1)]
    return Quiver(vs, arrows, name="line-%d" % n)
