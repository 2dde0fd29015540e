"""Dense exact linear algebra over an abstract field.

Matrices carry their shape explicitly so zero-dimensional vertex spaces
(which occur constantly in module computations) never get ambiguous.
Subspaces are kept in reduced row echelon form, which makes membership,
equality and canonical keys exact.
"""

from __future__ import annotations


class Matrix:
    """An immutable-by-convention nrows x ncols matrix over a field."""

    __slots__ = ("rows", "nrows", "ncols", "field")

    def __init__(self, rows, nrows, ncols, field):
        self.rows = rows
        self.nrows = nrows
        self.ncols = ncols
        self.field = field

    @staticmethod
    def zeros(nrows, ncols, field):
        z = field.zero
        return Matrix([[z] * ncols for _ in range(nrows)], nrows, ncols, field)

    @staticmethod
    def identity(n, field):
        m = Matrix.zeros(n, n, field)
        for i in range(n):
            m.rows[i][i] = field.one
        return m

    @staticmethod
    def from_rows(rows, ncols, field):
        return Matrix([list(r) for r in rows], len(rows), ncols, field)

    @staticmethod
    def from_cols(cols, nrows, field):
        m = Matrix.zeros(nrows, len(cols), field)
        for j, col in enumerate(cols):
            for i in range(nrows):
                m.rows[i][j] = col[i]
        return m

    def col(self, j):
        return [self.rows[i][j] for i in range(self.nrows)]

    def cols(self):
        return [self.col(j) for j in range(self.ncols)]

    def mul(self, other: "Matrix") -> "Matrix":
        assert self.ncols == other.nrows, (self.ncols, other.nrows)
        out = Matrix.zeros(self.nrows, other.ncols, self.field)
        for i in range(self.nrows):
            ri = self.rows[i]
            oi = out.rows[i]
            for k in range(self.ncols):
                a = ri[k]
                if not a:
                    continue
                rk = other.rows[k]
                for j in range(other.ncols):
                    b = rk[j]
                    if b:
                        oi[j] = oi[j] + a * b
        return out

    def vec(self, v):
        """Matrix-vector product (column convention)."""
        assert len(v) == self.ncols, (len(v), self.ncols)
        z = self.field.zero
        out = [z] * self.nrows
        for i in range(self.nrows):
            ri = self.rows[i]
            acc = z
            for j, x in enumerate(v):
                if x:
                    acc = acc + ri[j] * x
            out[i] = acc
        return out

    def transpose(self) -> "Matrix":
        out = Matrix.zeros(self.ncols, self.nrows, self.field)
        for i in range(self.nrows):
            for j in range(self.ncols):
                out.rows[j][i] = self.rows[i][j]
        return out

    def add(self, other: "Matrix") -> "Matrix":
        assert self.nrows == other.nrows and self.ncols == other.ncols
        return Matrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)],
            self.nrows, self.ncols, self.field)

    def scale(self, c) -> "Matrix":
        return Matrix([[c * a for a in r] for r in self.rows],
                      self.nrows, self.ncols, self.field)

    def is_zero(self) -> bool:
        return all(not a for r in self.rows for a in r)

    def key(self):
        return tuple(tuple(r) for r in self.rows)

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols})"


def block_matrix(blocks, row_dims, col_dims, field) -> Matrix:
    """Assemble a matrix from a grid of blocks (``None`` means zero)."""
    nrows = sum(row_dims)
    ncols = sum(col_dims)
    out = Matrix.zeros(nrows, ncols, field)
    r0 = 0
    for bi, rd in enumerate(row_dims):
        c0 = 0
        for bj, cd in enumerate(col_dims):
            blk = blocks[bi][bj]
            if blk is not None:
                assert blk.nrows == rd and blk.ncols == cd
                for i in range(rd):
                    out.rows[r0 + i][c0:c0 + cd] = list(blk.rows[i])
            c0 += cd
        r0 += rd
    return out


def rref(rows, ncols, field):
    """Reduced row echelon form.  Returns (rows, pivot_columns).

    Zero rows are dropped; pivots are monic and their columns cleared,
    so the output is the canonical basis of the row span."""
    work = [list(r) for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(work)):
            if work[i][c]:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        lead = work[r][c]
        if lead != field.one:
            work[r] = [a / lead for a in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = work[i][c]
                wr = work[r]
                work[i] = [a - f * b for a, b in zip(work[i], wr)]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    out = [work[i] for i in range(r)]
    return out, pivots


def mat_rank(m: Matrix) -> int:
    _, pivots = rref(m.rows, m.ncols, m.field)
    return len(pivots)


def nullspace(m: Matrix):
    """Basis of {v : m @ v = 0}, as a list of length-ncols vectors."""
    rows, pivots = rref(m.rows, m.ncols, m.field)
    field = m.field
    pivset = set(pivots)
    free = [c for c in range(m.ncols) if c not in pivset]
    basis = []
    for fc in free:
        v = [field.zero] * m.ncols
        v[fc] = field.one
        for r, pc in zip(rows, pivots):
            v[pc] = -r[fc]
        basis.append(v)
    return basis


def solve_matrix(a: Matrix, b: Matrix):
    """One solution X of a @ X = b, or None if inconsistent."""
    n = a.ncols
    k = b.ncols
    aug = [list(ar) + list(br) for ar, br in zip(a.rows, b.rows)]
    rows, pivots = rref(aug, n + k, a.field)
    for r, pc in zip(rows, pivots):
        if pc >= n:
            return None
    x = Matrix.zeros(n, k, a.field)
    for r, pc in zip(rows, pivots):
        for j in range(k):
            x.rows[pc][j] = r[n + j]
    return x


class Subspace:
    """A subspace of field^ambient maintained in reduced row echelon form."""

    def __init__(self, ambient: int, field):
        self.ambient = ambient
        self.field = field
        self.rows = []
        self.pivots = []

    @staticmethod
    def span(vectors, ambient, field) -> "Subspace":
        s = Subspace(ambient, field)
        for v in vectors:
            s.add(v)
        return s

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vec):
        """Residue of vec modulo the subspace (pivot coordinates cleared)."""
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        return v

    def contains(self, vec) -> bool:
        return not any(self.reduce(vec))

    def add(self, vec) -> bool:
        """Insert vec; returns True if the dimension grew."""
        v = self.reduce(vec)
        lead = None
        for c, a in enumerate(v):
            if a:
                lead = c
                break
        if lead is None:
            return False
        la = v[lead]
        if la != self.field.one:
            v = [a / la for a in v]
        # clear the new pivot column in the existing rows
        for i, row in enumerate(self.rows):
            c = row[lead]
            if c:
                self.rows[i] = [a - c * b for a, b in zip(row, v)]
        pos = 0
        while pos < len(self.pivots) and self.pivots[pos] < lead:
            pos += 1
        self.rows.insert(pos, v)
        self.pivots.insert(pos, lead)
        return True

    def extend(self, vectors) -> bool:
        grew = False
        for v in vectors:
            grew = self.add(v) or grew
        return grew

    def express(self, vec):
        """Coefficients of vec over the echelon rows, or None."""
        v = list(vec)
        coeffs = []
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            coeffs.append(c)
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        if any(v):
            return None
        return coeffs

    def key(self):
        return tuple(tuple(r) for r in self.rows)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient == other.ambient
                and self.rows == other.rows)

    def __hash__(self):
        return hash(self.key())

    def copy(self) -> "Subspace":
        s = Subspace(self.ambient, self.field)
        s.rows = [list(r) for r in self.rows]
        s.pivots = list(self.pivots)
        return s

    def quotient(self):
        """Projection onto a complement: (proj(vec)->coords, dim, lifts)."""
        pivset = set(self.pivots)
        free = [c for c in range(self.ambient) if c not in pivset]

        def proj(vec):
            r = self.reduce(vec)
            return [r[c] for c in free]

        lifts = []
        for c in free:
            v = [self.field.zero] * self.ambient
            v[c] = self.field.one
            lifts.append(v)
        return proj, len(free), lifts

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"
