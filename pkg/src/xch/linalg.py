"""Exact sparse linear algebra over Q and F_p.

Matrices are immutable sparse collections of (row, col, value) entries.
Rank, kernel, image, quotient presentations and linear solves all run
on one elimination core:

* over Q, rows are cleared to primitive integer vectors and eliminated
  division-free (cross-multiplication followed by a gcd renormalization
  of the updated row), which bounds coefficient growth without dense
  bookkeeping;
* over F_p, rows are eliminated with modular inverses.

Pivots are selected by Markowitz count (least fill-in first); ties are
broken lexicographically by (row, col) so recomputation is structurally
reproducible.  `alternate_pivot_order` flips the tie-break, which must
not change any result (reduced echelon forms are unique) and is used by
the test suite to demonstrate pivot independence.  Matrices smaller
than 64x64 take a dense elimination path; sparse bookkeeping costs more
than it saves at that size.

Subspace bases are kept in reduced row echelon form, so equal subspaces
compare structurally equal.
"""

from __future__ import annotations

import contextlib
import contextvars
from fractions import Fraction
from math import gcd

from .scalars import QQ, Field

_DENSE_LIMIT = 64

pivot_order: contextvars.ContextVar[str] = contextvars.ContextVar(
    "pivot_order", default="lex"
)


@contextlib.contextmanager
def alternate_pivot_order():
    """Flip the Markowitz tie-break; results must be unchanged."""
    token = pivot_order.set("revlex")
    try:
        yield
    finally:
        pivot_order.reset(token)


class ShapeError(ValueError):
    pass


class SparseMatrix:
    """Immutable sparse matrix; entries sorted row-major, no zeros."""

    __slots__ = ("nrows", "ncols", "field", "entries", "_rows", "_cols")

    def __init__(self, nrows: int, ncols: int, entries, field: Field = QQ):
        if nrows < 0 or ncols < 0:
            raise ShapeError("negative dimension")
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        seen = {}
        for i, j, v in entries:
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise ShapeError(f"entry ({i},{j}) outside {nrows}x{ncols}")
            if (i, j) in seen:
                raise ShapeError(f"duplicate entry at ({i},{j})")
            if not field.is_zero(v):
                seen[(i, j)] = v
        self.entries = tuple(
            (i, j, seen[(i, j)]) for (i, j) in sorted(seen)
        )
        self._rows = None
        self._cols = None

    # -- constructors -------------------------------------------------

    @classmethod
    def from_dense(cls, rows, field: Field = QQ, ncols: int | None = None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        entries = []
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise ShapeError("ragged dense rows")
            for j, v in enumerate(r):
                v = field.parse(v)
                if not field.is_zero(v):
                    entries.append((i, j, v))
        return cls(len(rows), ncols, entries, field)

    @classmethod
    def zero(cls, nrows: int, ncols: int, field: Field = QQ):
        return cls(nrows, ncols, (), field)

    @classmethod
    def identity(cls, n: int, field: Field = QQ):
        one = field.one()
        return cls(n, n, [(i, i, one) for i in range(n)], field)

    @classmethod
    def from_columns(cls, ncols_ambient: int, columns, field: Field = QQ):
        """Matrix whose j-th column is columns[j] (sparse dicts or dense)."""
        entries = []
        for j, col in enumerate(columns):
            if isinstance(col, dict):
                items = col.items()
            else:
                items = enumerate(col)
            for i, v in items:
                if not field.is_zero(v):
                    entries.append((i, j, v))
        return cls(ncols_ambient, len(columns), entries, field)

    # -- views ---------------------------------------------------------

    def rows(self) -> dict[int, dict]:
        if self._rows is None:
            rows: dict[int, dict] = {}
            for i, j, v in self.entries:
                rows.setdefault(i, {})[j] = v
            self._rows = rows
        return self._rows

    def cols(self) -> dict[int, dict]:
        if self._cols is None:
            cols: dict[int, dict] = {}
            for i, j, v in self.entries:
                cols.setdefault(j, {})[i] = v
            self._cols = cols
        return self._cols

    def column(self, j: int) -> dict:
        return dict(self.cols().get(j, {}))

    def to_dense(self):
        zero = self.field.zero()
        out = [[zero] * self.ncols for _ in range(self.nrows)]
        for i, j, v in self.entries:
            out[i][j] = v
        return out

    def nnz(self) -> int:
        return len(self.entries)

    # -- arithmetic ----------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, SparseMatrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.field is other.field
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, self.entries))

    def __add__(self, other):
        self._check_same_shape(other)
        f = self.field
        acc = {(i, j): v for i, j, v in self.entries}
        for i, j, v in other.entries:
            acc[(i, j)] = f.add(acc.get((i, j), f.zero()), v)
        return SparseMatrix(
            self.nrows, self.ncols, [(i, j, v) for (i, j), v in acc.items()], f
        )

    def __sub__(self, other):
        return self + other.scale(self.field.neg(self.field.one()))

    def __neg__(self):
        return self.scale(self.field.neg(self.field.one()))

    def scale(self, c):
        f = self.field
        return SparseMatrix(
            self.nrows,
            self.ncols,
            [(i, j, f.mul(c, v)) for i, j, v in self.entries],
            f,
        )

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ShapeError(
                f"cannot multiply {self.nrows}x{self.ncols} by "
                f"{other.nrows}x{other.ncols}"
            )
        f = self.field
        brows = other.rows()
        acc: dict[tuple[int, int], object] = {}
        for i, arow in self.rows().items():
            out: dict[int, object] = {}
            for j, a in arow.items():
                brow = brows.get(j)
                if not brow:
                    continue
                for k, b in brow.items():
                    prod = f.mul(a, b)
                    if k in out:
                        out[k] = f.add(out[k], prod)
                    else:
                        out[k] = prod
            for k, v in out.items():
                if not f.is_zero(v):
                    acc[(i, k)] = v
        return SparseMatrix(
            self.nrows, other.ncols, [(i, k, v) for (i, k), v in acc.items()], f
        )

    def apply(self, vec: dict) -> dict:
        """Matrix times sparse column vector (dict col -> value)."""
        f = self.field
        out: dict[int, object] = {}
        cols = self.cols()
        for j, x in vec.items():
            col = cols.get(j)
            if not col or f.is_zero(x):
                continue
            for i, a in col.items():
                v = f.mul(a, x)
                if i in out:
                    out[i] = f.add(out[i], v)
                else:
                    out[i] = v
        return {i: v for i, v in out.items() if not f.is_zero(v)}

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(
            self.ncols,
            self.nrows,
            [(j, i, v) for i, j, v in self.entries],
            self.field,
        )

    def is_zero_matrix(self) -> bool:
        return not self.entries

    def vstack(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.ncols or self.field is not other.field:
            raise ShapeError("vstack shape mismatch")
        shifted = [(i + self.nrows, j, v) for i, j, v in other.entries]
        return SparseMatrix(
            self.nrows + other.nrows,
            self.ncols,
            list(self.entries) + shifted,
            self.field,
        )

    def hstack(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.nrows != other.nrows or self.field is not other.field:
            raise ShapeError("hstack shape mismatch")
        shifted = [(i, j + self.ncols, v) for i, j, v in other.entries]
        return SparseMatrix(
            self.nrows,
            self.ncols + other.ncols,
            list(self.entries) + shifted,
            self.field,
        )

    def _check_same_shape(self, other):
        if (
            self.nrows != other.nrows
            or self.ncols != other.ncols
            or self.field is not other.field
        ):
            raise ShapeError("shape or field mismatch")

    def __repr__(self):
        return (
            f"SparseMatrix({self.nrows}x{self.ncols}, "
            f"nnz={len(self.entries)}, {self.field})"
        )


# -- elimination core ---------------------------------------------------


def _row_to_int(row: dict, field: Field) -> dict[int, int]:
    """Clear denominators and divide by content; F_p rows pass through."""
    if field is not QQ:
        return {j: v for j, v in row.items() if v % field.char}
    lcm = 1
    for v in row.values():
        d = v.denominator
        lcm = lcm * d // gcd(lcm, d)
    ints = {j: int(v * lcm) for j, v in row.items() if v != 0}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    if g > 1:
        ints = {j: v // g for j, v in ints.items()}
    return ints


def _eliminate(rows: list[dict], field: Field, pivot_cols: int | None = None):
    """Forward elimination; returns (pivots, pivot_rows, leftover_rows).

    `rows` are sparse integer dicts (Q mode: primitive integer vectors).
    `pivot_cols` restricts pivot selection to columns < pivot_cols (used
    by solve on augmented matrices).  pivots is a list of column indices
    in the order rows were retired; pivot_rows[k] is the retired row for
    pivots[k].  leftover_rows are nonzero rows with support entirely in
    non-eligible columns.
    """
    rational = field is QQ
    p = None if rational else field.char
    active: dict[int, dict[int, int]] = {}
    col_index: dict[int, set[int]] = {}
    for idx, row in enumerate(rows):
        row = dict(row)
        if row:
            active[idx] = row
            for j in row:
                col_index.setdefault(j, set()).add(idx)
    reverse = pivot_order.get() == "revlex"
    pivots: list[int] = []
    pivot_rows: list[dict[int, int]] = []

    def eligible(j):
        return pivot_cols is None or j < pivot_cols

    def select_pivot():
        rows_order = sorted(active, reverse=reverse)
        # cost-zero fast path: a singleton row or a singleton column
        # cannot be beaten, and the first row owning one wins the
        # lexicographic tie-break
        for ridx in rows_order:
            row = active[ridx]
            cands = []
            if len(row) == 1:
                (c,) = row
                if eligible(c):
                    cands.append(c)
            cands.extend(
                c
                for c in row
                if eligible(c) and len(col_index[c]) == 1
            )
            if cands:
                return ridx, (max(cands) if reverse else min(cands))
        best = None
        best_cost = None
        for ridx in rows_order:
            row = active[ridx]
            rlen = len(row)
            for j in row:
                if not eligible(j):
                    continue
                cost = (rlen - 1) * (len(col_index[j]) - 1)
                key = (ridx, j)
                if (
                    best is None
                    or cost < best_cost
                    or (
                        cost == best_cost
                        and ((key > best) if reverse else (key < best))
                    )
                ):
                    best = key
                    best_cost = cost
        return best

    while True:
        best = select_pivot()
        if best is None:
            break
        ridx, pc = best
        prow = active.pop(ridx)
        for j in prow:
            col_index[j].discard(ridx)
        pv = prow[pc]
        touched = [t for t in col_index.get(pc, ()) if t in active]
        for t in sorted(touched):
            trow = active[t]
            tv = trow[pc]
            for j in trow:
                col_index[j].discard(t)
            if rational:
                new = {}
                for j, v in trow.items():
                    new[j] = pv * v
                for j, v in prow.items():
                    w = new.get(j, 0) - tv * v
                    if w:
                        new[j] = w
                    elif j in new:
                        del new[j]
                g = 0
                for v in new.values():
                    g = gcd(g, v)
                if g > 1:
                    new = {j: v // g for j, v in new.items()}
            else:
                factor = (tv * pow(pv, -1, p)) % p
                new = dict(trow)
                for j, v in prow.items():
                    w = (new.get(j, 0) - factor * v) % p
                    if w:
                        new[j] = w
                    elif j in new:
                        del new[j]
            if new:
                active[t] = new
                for j in new:
                    col_index.setdefault(j, set()).add(t)
            else:
                del active[t]
        pivots.append(pc)
        pivot_rows.append(prow)
    leftover = [active[k] for k in sorted(active)]
    return pivots, pivot_rows, leftover


def _rref_rows(pivots, pivot_rows, field: Field):
    """Back-substitute the forward-eliminated rows into reduced form.

    Returns rows as sparse dicts of field values, sorted by pivot col,
    with pivot entries 1 and zeros elsewhere in every pivot column.
    Forward elimination picks pivots by fill cost, not left to right, so
    a pivot row can still hold entries in pivot columns chosen after it;
    the sweep therefore has to clear the pivot column from all other
    rows, not just the ones above.
    """
    order = sorted(range(len(pivots)), key=lambda k: pivots[k])
    cols = [pivots[k] for k in order]
    if field is QQ:
        rows = [
            {j: Fraction(v) for j, v in pivot_rows[k].items()} for k in order
        ]
    else:
        rows = [dict(pivot_rows[k]) for k in order]
    for r in range(len(rows) - 1, -1, -1):
        pc = cols[r]
        pv = rows[r][pc]
        inv = field.invert(pv)
        rows[r] = {j: field.mul(inv, v) for j, v in rows[r].items()}
        for s in range(len(rows)):
            if s == r:
                continue
            c = rows[s].get(pc)
            if c is None or field.is_zero(c):
                continue
            new = dict(rows[s])
            for j, v in rows[r].items():
                w = field.sub(new.get(j, field.zero()), field.mul(c, v))
                if field.is_zero(w):
                    new.pop(j, None)
                else:
                    new[j] = w
            rows[s] = new
    return cols, rows


def _dense_rref(m: SparseMatrix):
    """Reduced echelon of a small matrix by dense elimination."""
    f = m.field
    rows = m.to_dense()
    nrows, ncols = m.nrows, m.ncols
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if not f.is_zero(rows[i][c]):
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = f.invert(rows[r][c])
        rows[r] = [f.mul(inv, v) for v in rows[r]]
        for i in range(nrows):
            if i != r and not f.is_zero(rows[i][c]):
                coef = rows[i][c]
                rows[i] = [
                    f.sub(v, f.mul(coef, w)) for v, w in zip(rows[i], rows[r])
                ]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    out = []
    for i in range(r):
        out.append(
            {j: v for j, v in enumerate(rows[i]) if not f.is_zero(v)}
        )
    return pivots, out


def row_space_rref(m: SparseMatrix):
    """(pivot cols, RREF rows as sparse dicts of field values)."""
    if m.nrows < _DENSE_LIMIT and m.ncols < _DENSE_LIMIT:
        return _dense_rref(m)
    rows = [
        _row_to_int(row, m.field)
        for _, row in sorted(m.rows().items())
    ]
    pivots, pivot_rows, leftover = _eliminate(rows, m.field)
    assert not leftover
    return _rref_rows(pivots, pivot_rows, m.field)


def rank(m: SparseMatrix) -> int:
    if m.nrows < _DENSE_LIMIT and m.ncols < _DENSE_LIMIT:
        return len(_dense_rref(m)[0])
    rows = [
        _row_to_int(row, m.field)
        for _, row in sorted(m.rows().items())
    ]
    pivots, _, leftover = _eliminate(rows, m.field)
    assert not leftover
    return len(pivots)


class Subspace:
    """Subspace of a coordinate space, basis in reduced echelon form."""

    __slots__ = ("ambient_dim", "field", "basis", "pivots")

    def __init__(self, ambient_dim: int, basis, pivots, field: Field = QQ):
        self.ambient_dim = ambient_dim
        self.field = field
        self.basis = tuple(dict(b) for b in basis)
        self.pivots = tuple(pivots)
        if len(self.basis) != len(self.pivots):
            raise ShapeError("basis/pivot length mismatch")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def zero(cls, ambient_dim: int, field: Field = QQ):
        return cls(ambient_dim, (), (), field)

    @classmethod
    def full(cls, ambient_dim: int, field: Field = QQ):
        one = field.one()
        return cls(
            ambient_dim,
            [{i: one} for i in range(ambient_dim)],
            range(ambient_dim),
            field,
        )

    @classmethod
    def from_vectors(cls, ambient_dim: int, vectors, field: Field = QQ):
        """Span of the given vectors (sparse dicts or dense sequences)."""
        cleaned = []
        for v in vectors:
            if not isinstance(v, dict):
                v = {j: x for j, x in enumerate(v)}
            v = {j: field.parse(x) for j, x in v.items()}
            v = {j: x for j, x in v.items() if not field.is_zero(x)}
            for j in v:
                if not 0 <= j < ambient_dim:
                    raise ShapeError(f"coordinate {j} outside ambient")
            cleaned.append(v)
        m = SparseMatrix(
            len(cleaned),
            ambient_dim,
            [(i, j, v) for i, row in enumerate(cleaned) for j, v in row.items()],
            field,
        )
        pivots, rows = row_space_rref(m)
        return cls(ambient_dim, rows, pivots, field)

    def reduce(self, vec: dict) -> dict:
        """Residue of vec after subtracting its projection to the span."""
        f = self.field
        vec = {j: v for j, v in vec.items() if not f.is_zero(v)}
        for pc, row in zip(self.pivots, self.basis):
            c = vec.get(pc)
            if c is None:
                continue
            for j, v in row.items():
                w = f.sub(vec.get(j, f.zero()), f.mul(c, v))
                if f.is_zero(w):
                    vec.pop(j, None)
                else:
                    vec[j] = w
        return vec

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def coords(self, vec: dict):
        """Coefficients of vec in the echelon basis; error if outside."""
        f = self.field
        vec = {j: v for j, v in vec.items() if not f.is_zero(v)}
        out = {}
        for k, (pc, row) in enumerate(zip(self.pivots, self.basis)):
            c = vec.get(pc)
            if c is None:
                continue
            out[k] = c
            for j, v in row.items():
                w = f.sub(vec.get(j, f.zero()), f.mul(c, v))
                if f.is_zero(w):
                    vec.pop(j, None)
                else:
                    vec[j] = w
        if vec:
            raise ValueError("vector not contained in subspace")
        return out

    def inclusion_matrix(self) -> SparseMatrix:
        """ambient_dim x dim matrix whose columns are the basis."""
        entries = [
            (j, k, v)
            for k, row in enumerate(self.basis)
            for j, v in row.items()
        ]
        return SparseMatrix(self.ambient_dim, self.dim, entries, self.field)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.pivots))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def kernel(m: SparseMatrix) -> Subspace:
    """Kernel of m as a subspace of the domain, reduced echelon basis."""
    pivots, rows = row_space_rref(m)
    pivset = set(pivots)
    free = [j for j in range(m.ncols) if j not in pivset]
    f = m.field
    vectors = []
    for fc in free:
        vec = {fc: f.one()}
        for pc, row in zip(pivots, rows):
            c = row.get(fc)
            if c is not None and not f.is_zero(c):
                vec[pc] = f.neg(c)
        vectors.append(vec)
    return Subspace.from_vectors(m.ncols, vectors, f)


def kernel_vectors(m: SparseMatrix) -> list[dict]:
    """Kernel basis in free-column form (not re-echeloned); deterministic."""
    pivots, rows = row_space_rref(m)
    pivset = set(pivots)
    f = m.field
    out = []
    for fc in range(m.ncols):
        if fc in pivset:
            continue
        vec = {fc: f.one()}
        for pc, row in zip(pivots, rows):
            c = row.get(fc)
            if c is not None and not f.is_zero(c):
                vec[pc] = f.neg(c)
        out.append(vec)
    return out


def image(m: SparseMatrix) -> Subspace:
    """Column span of m."""
    return Subspace.from_vectors(
        m.nrows, [m.column(j) for j in range(m.ncols)], m.field
    )


def quotient_presentation(ambient_dim: int, sub: Subspace):
    """(dim, projection, section) for ambient/sub.

    The quotient basis is indexed by the non-pivot (free) coordinates of
    sub's echelon basis; section sends quotient basis vector k to the
    free coordinate vector e_{f_k}, and projection is the complementary
    reduction, so projection @ section = identity and
    projection @ (inclusion of sub) = 0.
    """
    if sub.ambient_dim != ambient_dim:
        raise ShapeError("subspace ambient mismatch")
    f = sub.field
    pivset = set(sub.pivots)
    free = [j for j in range(ambient_dim) if j not in pivset]
    dim = len(free)
    section = SparseMatrix(
        ambient_dim, dim, [(fc, k, f.one()) for k, fc in enumerate(free)], f
    )
    entries = []
    for k, fc in enumerate(free):
        entries.append((k, fc, f.one()))
        for pc, row in zip(sub.pivots, sub.basis):
            c = row.get(fc)
            if c is not None and not f.is_zero(c):
                entries.append((k, pc, f.neg(c)))
    projection = SparseMatrix(dim, ambient_dim, entries, f)
    return dim, projection, section


def solve(m: SparseMatrix, rhs: SparseMatrix):
    """X with m @ X = rhs, free variables set to zero; None if unsolvable.

    Deterministic: the solution is read off the reduced echelon form of
    the augmented matrix, so it does not depend on elimination order.
    """
    if m.nrows != rhs.nrows:
        raise ShapeError("rhs row count mismatch")
    f = m.field
    aug = m.hstack(rhs)
    if aug.nrows < _DENSE_LIMIT and aug.ncols < _DENSE_LIMIT:
        pivots, rows = _dense_rref_restricted(aug, m.ncols)
        if rows is None:
            return None
    else:
        int_rows = [
            _row_to_int(row, f) for _, row in sorted(aug.rows().items())
        ]
        piv, piv_rows, leftover = _eliminate(int_rows, f, pivot_cols=m.ncols)
        if leftover:
            return None
        pivots, rows = _rref_rows(piv, piv_rows, f)
    entries = []
    for pc, row in zip(pivots, rows):
        for j, v in row.items():
            if j >= m.ncols and not f.is_zero(v):
                entries.append((pc, j - m.ncols, v))
    return SparseMatrix(m.ncols, rhs.ncols, entries, f)


def _dense_rref_restricted(m: SparseMatrix, pivot_cols: int):
    f = m.field
    rows = m.to_dense()
    nrows = m.nrows
    pivots = []
    r = 0
    for c in range(pivot_cols):
        pr = None
        for i in range(r, nrows):
            if not f.is_zero(rows[i][c]):
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = f.invert(rows[r][c])
        rows[r] = [f.mul(inv, v) for v in rows[r]]
        for i in range(nrows):
            if i != r and not f.is_zero(rows[i][c]):
                coef = rows[i][c]
                rows[i] = [
                    f.sub(v, f.mul(coef, w)) for v, w in zip(rows[i], rows[r])
                ]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if any(not f.is_zero(v) for v in rows[i]):
            return pivots, None
    out = [
        {j: v for j, v in enumerate(rows[i]) if not f.is_zero(v)}
        for i in range(r)
    ]
    return pivots, out


class IncrementalSpan:
    """Grow a span one vector at a time; add() reports independence."""

    def __init__(self, field: Field = QQ):
        self.field = field
        self._rows: dict[int, dict[int, int]] = {}

    @property
    def dim(self) -> int:
        return len(self._rows)

    def add(self, vec: dict) -> bool:
        f = self.field
        row = _row_to_int(
            {j: f.parse(v) for j, v in vec.items() if not f.is_zero(v)}, f
        )
        rational = f is QQ
        p = None if rational else f.char
        while row:
            c = min(row)
            piv = self._rows.get(c)
            if piv is None:
                self._rows[c] = row
                return True
            if rational:
                pv, rv = piv[c], row[c]
                new = {j: pv * v for j, v in row.items()}
                for j, v in piv.items():
                    w = new.get(j, 0) - rv * v
                    if w:
                        new[j] = w
                    elif j in new:
                        del new[j]
                g = 0
                for v in new.values():
                    g = gcd(g, v)
                if g > 1:
                    new = {j: v // g for j, v in new.items()}
                row = new
            else:
                factor = (row[c] * pow(piv[c], -1, p)) % p
                new = dict(row)
                for j, v in piv.items():
                    w = (new.get(j, 0) - factor * v) % p
                    if w:
                        new[j] = w
                    elif j in new:
                        del new[j]
                row = new
        return False


def span_rank(vectors, field: Field = QQ) -> int:
    span = IncrementalSpan(field)
    n = 0
    for v in vectors:
        if span.add(v):
            n += 1
    return n


def modular_rank_matches(m: SparseMatrix, p: int) -> bool:
    """Compare rank over Q with rank of the reduction mod p.

    Entries whose denominator vanishes mod p make the reduction
    undefined; the caller should redraw the prime (signalled by
    ValueError).
    """
    from .scalars import GF

    if m.field is not QQ:
        raise ValueError("modular cross-check starts from a Q matrix")
    gf = GF(p)
    entries = []
    for i, j, v in m.entries:
        if v.denominator % p == 0:
            raise ValueError("denominator vanishes mod p; redraw the prime")
        w = gf.parse(v)
        if w:
            entries.append((i, j, w))
    mp = SparseMatrix(m.nrows, m.ncols, entries, gf)
    return rank(m) == rank(mp)
