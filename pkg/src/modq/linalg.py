"""Exact linear algebra over a GF: sparse echelon forms and small dense matrices.

Sparse vectors are dicts ``column -> nonzero encoded coefficient``. Columns
can be any hashable; their ordering comes from a ``key`` function and the
pivot of a row is its largest column under that key.
"""

from __future__ import annotations

from .errors import NotInvertible


def _axpy(field, target, c, row):
    """target -= c * row, in place, dropping zeros."""
    if field.k == 1:
        p = field.p
        for col, v in row.items():
            val = (target.get(col, 0) - c * v) % p
            if val:
                target[col] = val
            else:
                target.pop(col, None)
    else:
        for col, v in row.items():
            val = field.sub(target.get(col, 0), field.mul(c, v))
            if val:
                target[col] = val
            else:
                target.pop(col, None)


def _scale(field, row, c):
    return {col: field.mul(c, v) for col, v in row.items()}


class Echelon:
    """Incrementally maintained reduced row echelon form.

    Every stored row is monic at its pivot and no stored row contains
    another row's pivot column, so reducing a vector is a single pass.
    Each row may carry a payload vector that undergoes the same operations
    (used to track linear combinations).
    """

    def __init__(self, field, key=None):
        self.field = field
        self.key = key if key is not None else (lambda c: c)
        self.rows = {}      # pivot column -> row
        self.payloads = {}  # pivot column -> payload

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec, payload=None):
        """Return (remainder, payload) of vec modulo the span of the rows."""
        vec = dict(vec)
        payload = dict(payload) if payload is not None else None
        for col in [c for c in vec if c in self.rows]:
            c = vec.get(col)
            if not c:
                continue
            _axpy(self.field, vec, c, self.rows[col])
            if payload is not None:
                _axpy(self.field, payload, c, self.payloads[col])
        return vec, payload

    def add(self, vec, payload=None):
        """Insert vec; return True if it enlarged the span."""
        vec, payload = self.reduce(vec, payload)
        if not vec:
            return False
        self._insert(vec, payload)
        return True

    def _insert(self, vec, payload):
        field = self.field
        piv = max(vec, key=self.key)
        inv = field.inv(vec[piv])
        vec = _scale(field, vec, inv)
        payload = _scale(field, payload, inv) if payload is not None else None
        for col, row in self.rows.items():
            c = row.get(piv)
            if c:
                _axpy(field, row, c, vec)
                if payload is not None:
                    _axpy(field, self.payloads[col], c, payload)
        self.rows[piv] = vec
        if payload is not None:
            self.payloads[piv] = payload

    def contains(self, vec):
        return not self.reduce(vec)[0]

    def basis(self):
        """Rows sorted by decreasing pivot."""
        return [self.rows[c] for c in sorted(self.rows, key=self.key, reverse=True)]


def kernel(field, vectors):
    """All combinations sum(c_j * vectors[j]) = 0, as sparse dicts over j."""
    ech = Echelon(field)
    out = Echelon(field)
    for j, v in enumerate(vectors):
        rem, combo = ech.reduce(v, {j: 1})
        if rem:
            ech._insert(rem, combo)
        else:
            out.add(combo)
    return out.basis()


# ---------- dense matrices: lists of rows of encoded ints ----------

def identity(field, n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(field, a, b):
    n, m, r = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * r for _ in range(n)]
    for i in range(n):
        for k in range(m):
            aik = a[i][k]
            if aik:
                rowb = b[k]
                outi = out[i]
                for j in range(r):
                    if rowb[j]:
                        outi[j] = field.add(outi[j], field.mul(aik, rowb[j]))
    return out


def mat_pow(field, a, e):
    result = identity(field, len(a))
    base = a
    while e:
        if e & 1:
            result = mat_mul(field, result, base)
        base = mat_mul(field, base, base)
        e >>= 1
    return result


def mat_sub(field, a, b):
    return [[field.sub(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_eq(a, b):
    return all(list(ra) == list(rb) for ra, rb in zip(a, b)) and len(a) == len(b)


def _row_reduce(field, a):
    """Gauss-Jordan on a copy; returns (rows, pivot columns)."""
    m = [list(r) for r in a]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(inv, x) for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(field, a):
    if not a or not a[0]:
        return 0
    return len(_row_reduce(field, a)[1])


def mat_inv(field, a):
    n = len(a)
    aug = [list(row) + identity(field, n)[i] for i, row in enumerate(a)]
    m, pivots = _row_reduce(field, aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise NotInvertible("matrix is singular")
    return [row[n:] for row in m]


def det(field, a):
    n = len(a)
    m = [list(r) for r in a]
    result = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = field.neg(result)
        result = field.mul(result, m[c][c])
        inv = field.inv(m[c][c])
        for i in range(c + 1, n):
            if m[i][c]:
                f = field.mul(m[i][c], inv)
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[c])]
    return result


def block_diagonal(field, blocks):
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, v in enumerate(row):
                out[off + i][off + j] = v
        off += len(b)
    return out


def mat_order(field, a, bound):
    """Smallest e in 1..bound with a^e = I, or None."""
    n = len(a)
    ident = identity(field, n)
    cur = a
    for e in range(1, bound + 1):
        if mat_eq(cur, ident):
            return e
        cur = mat_mul(field, cur, a)
    return None
