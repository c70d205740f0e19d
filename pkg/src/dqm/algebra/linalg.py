"""Dense matrices over K and fraction-free row reduction."""

from dqm import kernels as kn
from dqm.algebra.kfield import ONE, KElem


class KMatrix:
    """A dense rows x cols matrix of ``KElem`` entries."""

    def __init__(self, F, rows):
        self.F = F
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, F, n):
        one, zero = KElem.from_int(F, 1), KElem.from_int(F, 0)
        return cls(F, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, F, r, c):
        zero = KElem.from_int(F, 0)
        return cls(F, [[zero] * c for _ in range(r)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        F = self.F
        out = []
        for r in self.rows:
            row = []
            for j in range(other.ncols):
                acc = KElem.from_int(F, 0)
                for k, a in enumerate(r):
                    if a:
                        b = other.rows[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return KMatrix(F, out)

    def __eq__(self, other):
        return isinstance(other, KMatrix) and self.rows == other.rows

    def rank(self):
        return len(row_reduce_fraction_free(self)[2])

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self.rows)
        return f"KMatrix[{body}]"


def _lcm(ctx, a, b):
    if a == ONE:
        return b
    if b == ONE:
        return a
    g = kn.pgcd(ctx, a, b)
    return kn.pmul(ctx, kn.pdivexact(ctx, a, g), b)


def reduce_polynomial_rows(ctx, rows, ncols):
    """Bareiss elimination on rows of polynomials (bytes), in place.

    Each row is a list of length ``ncols`` and may carry extra trailing
    columns (an augmented transform) that are updated but never pivoted on.
    Returns the pivot columns; rows are permuted so that row i holds pivot i.
    """
    nrows = len(rows)
    width = len(rows[0]) if rows else 0
    prev = ONE
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        best = None
        for i in range(r, nrows):
            x = rows[i][c]
            if x and (best is None or len(x) < best):
                piv, best = i, len(x)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        a = prow[c]
        for i in range(r + 1, nrows):
            row = rows[i]
            b = row[c]
            for j in range(c + 1, width):
                v = kn.pmul(ctx, a, row[j])
                if b and prow[j]:
                    v = kn.psub(ctx, v, kn.pmul(ctx, b, prow[j]))
                if prev != ONE and v:
                    v = kn.pdivexact(ctx, v, prev)
                row[j] = v
            row[c] = b""
        # rows above r are already final; later ones were divided by prev
        prev = a
        pivots.append(c)
        r += 1
    return pivots


def row_reduce_fraction_free(m):
    """Return ``(echelon, transform, pivots)`` with echelon = transform * m.

    Each row is first multiplied by the lcm of its denominators, then the
    polynomial matrix is reduced by Bareiss elimination with the identity
    appended, so every intermediate entry is a minor and stays in F_q[T].
    """
    F, ctx = m.F, m.F.ctx
    nr, nc = m.nrows, m.ncols
    rows = []
    for i, r in enumerate(m.rows):
        den = ONE
        for x in r:
            if x.n:
                den = _lcm(ctx, den, x.d)
        poly = [kn.pmul(ctx, x.n, kn.pdivexact(ctx, den, x.d)) if x.n else b"" for x in r]
        tail = [b""] * nr
        tail[i] = den
        rows.append(poly + tail)
    pivots = reduce_polynomial_rows(ctx, rows, nc)
    ech = KMatrix(F, [[KElem.raw(F, x, ONE) for x in row[:nc]] for row in rows])
    tr = KMatrix(F, [[KElem.raw(F, x, ONE) for x in row[nc:]] for row in rows])
    return ech, tr, pivots


def naive_row_space_basis(m):
    """Reduced row echelon form by textbook elimination over K (oracle)."""
    F = m.F
    rows = [list(r) for r in m.rows]
    out = []
    r = 0
    for c in range(m.ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    for row in rows[:r]:
        out.append(row)
    return KMatrix(F, out) if out else KMatrix(F, [])
