"""Exact sparse linear algebra over the rationals and prime fields.

Vectors are dicts mapping basis positions to nonzero scalars. Scalars are
either Fraction or PrimeFieldElement; both support the usual operators, so
callers never branch on the field.
"""

from fractions import Fraction

from .errors import UsageError


class PrimeFieldElement:
    __slots__ = ("p", "v")

    def __init__(self, p, v):
        self.p = p
        self.v = v % p

    def _lift(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.p != self.p:
                raise UsageError("mixed prime fields p=%d and p=%d" % (self.p, other.p))
            return other.v
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        w = self._lift(other)
        if w is NotImplemented:
            return NotImplemented
        return PrimeFieldElement(self.p, self.v + w)

    __radd__ = __add__

    def __sub__(self, other):
        w = self._lift(other)
        if w is NotImplemented:
            return NotImplemented
        return PrimeFieldElement(self.p, self.v - w)

    def __rsub__(self, other):
        w = self._lift(other)
        if w is NotImplemented:
            return NotImplemented
        return PrimeFieldElement(self.p, w - self.v)

    def __mul__(self, other):
        w = self._lift(other)
        if w is NotImplemented:
            return NotImplemented
        return PrimeFieldElement(self.p, self.v * w)

    __rmul__ = __mul__

    def __truediv__(self, other):
        w = self._lift(other)
        if w is NotImplemented:
            return NotImplemented
        if w % self.p == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return PrimeFieldElement(self.p, self.v * pow(w, self.p - 2, self.p))

    def __rtruediv__(self, other):
        w = self._lift(other)
        if w is NotImplemented:
            return NotImplemented
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return PrimeFieldElement(self.p, w * pow(self.v, self.p - 2, self.p))

    def __neg__(self):
        return PrimeFieldElement(self.p, -self.v)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElement):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.v))

    def __repr__(self):
        return "F%d(%d)" % (self.p, self.v)


class RationalField:
    characteristic = 0
    key = "rational"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def scalar(self, x):
        """Coerce an int, Fraction, or fraction string to a field scalar."""
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise UsageError("cannot coerce %r to a rational scalar" % (x,))

    def format(self, s):
        return str(s)

    def __repr__(self):
        return "RationalField()"


class PrimeField:
    def __init__(self, p):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise UsageError("field order %d is not prime" % p)
        self.p = p
        self.characteristic = p
        self.key = "fp:%d" % p

    def zero(self):
        return PrimeFieldElement(self.p, 0)

    def one(self):
        return PrimeFieldElement(self.p, 1)

    def scalar(self, x):
        if isinstance(x, PrimeFieldElement):
            if x.p != self.p:
                raise UsageError("scalar from F_%d used in F_%d" % (x.p, self.p))
            return x
        if isinstance(x, int):
            return PrimeFieldElement(self.p, x)
        if isinstance(x, (Fraction, str)):
            f = Fraction(x)
            if f.denominator % self.p == 0:
                raise UsageError(
                    "denominator of %s vanishes in F_%d" % (f, self.p)
                )
            inv = pow(f.denominator % self.p, self.p - 2, self.p)
            return PrimeFieldElement(self.p, f.numerator * inv)
        raise UsageError("cannot coerce %r to an F_%d scalar" % (x, self.p))

    def format(self, s):
        return str(s.v)

    def __repr__(self):
        return "PrimeField(%d)" % self.p


def parse_field_spec(spec):
    """Turn 'rational' or 'fp:P' into a field object."""
    if spec == "rational":
        return RationalField()
    if spec.startswith("fp:"):
        try:
            p = int(spec[3:])
        except ValueError:
            raise UsageError("bad field spec %r" % spec) from None
        return PrimeField(p)
    raise UsageError("bad field spec %r (expected 'rational' or 'fp:P')" % spec)


# ---- sparse vectors ----


def vec_add_scaled(target, vec, coeff):
    """target += coeff * vec, in place, dropping entries that cancel."""
    if not coeff:
        return target
    for k, v in vec.items():
        s = target.get(k)
        s = coeff * v if s is None else s + coeff * v
        if s:
            target[k] = s
        else:
            target.pop(k, None)
    return target


def vec_scale(vec, coeff):
    if not coeff:
        return {}
    return {k: coeff * v for k, v in vec.items()}


class ExactMatrix:
    """A sparse matrix with dict storage, addressed as (row, col)."""

    def __init__(self, nrows, ncols, entries=None):
        self.nrows = nrows
        self.ncols = ncols
        self.entries = dict(entries) if entries else {}

    def set(self, i, j, value):
        if value:
            self.entries[(i, j)] = value
        else:
            self.entries.pop((i, j), None)

    def add_to(self, i, j, value):
        if not value:
            return
        s = self.entries.get((i, j))
        s = value if s is None else s + value
        if s:
            self.entries[(i, j)] = s
        else:
            self.entries.pop((i, j), None)

    def get(self, i, j):
        return self.entries.get((i, j))

    def apply(self, vec):
        """Matrix times column vector; vec maps col index to scalar."""
        out = {}
        for (i, j), v in self.entries.items():
            c = vec.get(j)
            if c is None:
                continue
            s = out.get(i)
            s = v * c if s is None else s + v * c
            if s:
                out[i] = s
            else:
                out.pop(i, None)
        return out

    def columns(self):
        cols = {}
        for (i, j), v in self.entries.items():
            cols.setdefault(j, {})[i] = v
        return [cols.get(j, {}) for j in range(self.ncols)]

    def rows(self):
        rows = {}
        for (i, j), v in self.entries.items():
            rows.setdefault(i, {})[j] = v
        return [rows.get(i, {}) for i in range(self.nrows)]

    def __repr__(self):
        return "ExactMatrix(%dx%d, %d entries)" % (
            self.nrows,
            self.ncols,
            len(self.entries),
        )


class Echelon:
    """Incremental reduced row echelon form over an ordered sparse basis.

    Rows are kept fully reduced: each row's minimum column is its pivot,
    pivots carry coefficient one, and no row meets another row's pivot.
    Insertion cost stays near the support size thanks to a reverse index
    from columns to the rows using them.
    """

    def __init__(self, field):
        self.field = field
        self.rows = []
        self.pivots = []
        self.pivot_to_row = {}
        self._uses = {}

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, vec):
        """Canonical residue of vec modulo the current row space."""
        residue = dict(vec)
        for c in [c for c in residue if c in self.pivot_to_row]:
            coeff = residue.get(c)
            if coeff:
                vec_add_scaled(residue, self.rows[self.pivot_to_row[c]], -coeff)
        return residue

    def insert(self, vec):
        """Reduce vec and grow the row space when a residue survives.

        Returns True when the rank increased.
        """
        residue = self.reduce(vec)
        if not residue:
            return False
        pivot = min(residue)
        lead = residue[pivot]
        row = {k: v / lead for k, v in residue.items()}
        rid = len(self.rows)
        for other_id in list(self._uses.get(pivot, ())):
            other = self.rows[other_id]
            coeff = other.get(pivot)
            if coeff:
                self._unindex(other_id, other)
                vec_add_scaled(other, row, -coeff)
                self._index(other_id, other)
        self.rows.append(row)
        self.pivots.append(pivot)
        self.pivot_to_row[pivot] = rid
        self._index(rid, row)
        return True

    def _index(self, rid, row):
        for c in row:
            self._uses.setdefault(c, set()).add(rid)

    def _unindex(self, rid, row):
        for c in row:
            users = self._uses.get(c)
            if users:
                users.discard(rid)

    def contains(self, vec):
        return not self.reduce(vec)


class Subspace:
    """A subspace presented by its reduced row echelon basis."""

    def __init__(self, field):
        self.field = field
        self.echelon = Echelon(field)

    @classmethod
    def from_vectors(cls, field, vectors):
        space = cls(field)
        for v in vectors:
            space.echelon.insert(v)
        return space

    @property
    def rank(self):
        return self.echelon.rank

    @property
    def pivots(self):
        return set(self.echelon.pivots)

    def reduce(self, vec):
        return self.echelon.reduce(vec)

    def contains(self, vec):
        return self.echelon.contains(vec)

    def basis(self):
        return [dict(r) for r in self.echelon.rows]


def coset_reduce(vec, subspace):
    """Canonical representative of vec + subspace."""
    return subspace.reduce(vec)


def rank_of(vectors, field):
    """Rank via forward-only elimination, cheaper than full echelon.

    Each incoming vector repeatedly cancels its minimum column against the
    stored row with that pivot; survivors become new pivot rows. Minimum
    columns grow strictly during cancellation, so this terminates.
    """
    by_pivot = {}
    rank = 0
    for vec in vectors:
        work = dict(vec)
        while work:
            c = min(work)
            row = by_pivot.get(c)
            if row is None:
                lead = work[c]
                by_pivot[c] = {k: v / lead for k, v in work.items()}
                rank += 1
                break
            vec_add_scaled(work, row, -work[c])
        # an exhausted vector was dependent
    return rank


def kernel_image(matrix, field):
    """Kernel basis and image subspace of a sparse matrix.

    The image is spanned by the columns. The kernel comes from the reduced
    echelon form of the rows: each non-pivot column f yields the basis
    vector with 1 at f and minus the pivot-row entries elsewhere.
    """
    image = Subspace.from_vectors(field, matrix.columns())
    row_ech = Echelon(field)
    for row in matrix.rows():
        row_ech.insert(row)
    pivot_cols = set(row_ech.pivots)
    kernel = []
    one = field.one()
    for f in range(matrix.ncols):
        if f in pivot_cols:
            continue
        vec = {f: one}
        for rid, pivot in enumerate(row_ech.pivots):
            coeff = row_ech.rows[rid].get(f)
            if coeff:
                vec[pivot] = -coeff
        kernel.append(vec)
    return kernel, image
