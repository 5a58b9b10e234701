"""Homology of windowed complexes and exactness bookkeeping.

Representatives are chosen deterministically: the span of the boundary
columns is seeded first, then kernel vectors (in free-column order) are
added; those that enlarge the span represent a homology basis.  Induced
and connecting maps express images in that basis by solving against
[representatives | boundaries]; the class coordinates are unique even
though the boundary part is not.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import ChainComplex, ChainMap, ComplexSES
from .linalg import IncrementalSpan, SparseMatrix, kernel_vectors, rank, solve


def homology(c: ChainComplex, n: int):
    """(dim, representative cycles) of H_n; results are cached on c."""
    cache = c.meta.setdefault("_homology", {})
    if n in cache:
        return cache[n]
    lo, hi = c.window
    if not lo <= n <= hi:
        raise ValueError(f"degree {n} outside window {c.window}")
    if n + 1 > hi:
        raise ValueError(
            f"homology at degree {n} needs the window to reach {n + 1}"
        )
    f = c.field
    if n == lo:
        if not c.bounded_below:
            raise ValueError(
                f"homology at degree {n} needs the window to reach {n - 1}"
            )
        ker = [{i: f.one()} for i in range(c.dims[n])]
    else:
        ker = kernel_vectors(c.diff[n])
    span = IncrementalSpan(f)
    nxt = c.diff[n + 1]
    for j in range(nxt.ncols):
        span.add(nxt.column(j))
    reps = tuple(v for v in ker if span.add(v))
    expected = c.dims[n] - c.rank_d(n) - c.rank_d(n + 1)
    if len(reps) != expected:
        raise RuntimeError(
            f"homology rank mismatch at degree {n}: {len(reps)} != {expected}"
        )
    cache[n] = (len(reps), reps)
    return cache[n]


@dataclass(frozen=True)
class HomologyReport:
    name: str
    entries: dict  # n -> (dim, representatives)
    labels: dict  # n -> coordinate labels of degree n

    def dim(self, n: int) -> int:
        return self.entries[n][0]


def homology_report(c: ChainComplex, degrees) -> HomologyReport:
    entries = {n: homology(c, n) for n in degrees}
    labels = {n: c.labels.get(n, ()) for n in degrees}
    return HomologyReport(c.meta.get("name", ""), entries, labels)


def _class_coordinates(c: ChainComplex, n: int, vectors: SparseMatrix):
    """Coordinates of cycle columns in the chosen H_n(c) basis."""
    dim, reps = homology(c, n)
    mat = SparseMatrix.from_columns(c.dims[n], list(reps), c.field)
    solved = solve(mat.hstack(c.diff[n + 1]), vectors)
    if solved is None:
        raise RuntimeError("vector is not a cycle class (internal)")
    ent = [(r, col, v) for r, col, v in solved.entries if r < dim]
    return SparseMatrix(dim, vectors.ncols, ent, c.field)


def induced_on_homology(f: ChainMap, n: int) -> SparseMatrix:
    sdim, sreps = homology(f.source, n)
    tdim, _ = homology(f.target, n)
    if sdim == 0:
        return SparseMatrix.zero(tdim, 0, f.source.field)
    mapped = SparseMatrix.from_columns(
        f.target.dims[n],
        [f.maps[n].apply(r) for r in sreps],
        f.source.field,
    )
    return _class_coordinates(f.target, n, mapped)


def connecting_map(ses: ComplexSES, n: int) -> SparseMatrix:
    """Snake map H_n(right) -> H_{n-1}(left): lift, differentiate, pull back."""
    f = ses.mid.field
    rdim, rreps = homology(ses.right, n)
    ldim, _ = homology(ses.left, n - 1)
    if rdim == 0:
        return SparseMatrix.zero(ldim, 0, f)
    cycles = SparseMatrix.from_columns(ses.right.dims[n], list(rreps), f)
    lifts = solve(ses.proj.maps[n], cycles)
    if lifts is None:
        raise RuntimeError("projection lift failed (internal)")
    walls = ses.mid.diff[n] @ lifts
    pulled = solve(ses.inj.maps[n - 1], walls)
    if pulled is None:
        raise RuntimeError("connecting pullback failed (internal)")
    return _class_coordinates(ses.left, n - 1, pulled)


@dataclass(frozen=True)
class Position:
    index: int
    label: str
    dim: int
    comp_zero: bool
    ker_dim: int
    im_dim: int

    @property
    def exact(self) -> bool:
        return self.comp_zero and self.ker_dim == self.im_dim


@dataclass(frozen=True)
class ExactnessReport:
    name: str
    positions: tuple
    notes: tuple = ()

    @property
    def exact(self) -> bool:
        return all(p.exact for p in self.positions)

    def failures(self) -> list[str]:
        out = []
        for p in self.positions:
            if not p.exact:
                out.append(
                    f"{self.name}: not exact at {p.label} "
                    f"(ker {p.ker_dim}, im {p.im_dim}, "
                    f"composition zero: {p.comp_zero})"
                )
        return out


def verify_exact(spaces, maps, labels=None, name="sequence") -> ExactnessReport:
    """Exactness at every interior position of
    spaces[0] -> spaces[1] -> ... -> spaces[-1] along maps[i]."""
    if len(maps) != len(spaces) - 1:
        raise ValueError("need one map per adjacent pair")
    if labels is None:
        labels = [f"position {i}" for i in range(len(spaces))]
    for i, m in enumerate(maps):
        if m.ncols != spaces[i] or m.nrows != spaces[i + 1]:
            raise ValueError(
                f"map {i} has shape {m.nrows}x{m.ncols}, expected "
                f"{spaces[i + 1]}x{spaces[i]}"
            )
    positions = []
    for i in range(1, len(spaces) - 1):
        comp = maps[i] @ maps[i - 1]
        im = rank(maps[i - 1])
        ker = spaces[i] - rank(maps[i])
        positions.append(
            Position(
                index=i,
                label=labels[i],
                dim=spaces[i],
                comp_zero=comp.is_zero_matrix(),
                ker_dim=ker,
                im_dim=im,
            )
        )
    return ExactnessReport(name, tuple(positions))


def les_from_ses(
    ses: ComplexSES,
    n_top: int,
    labeler=None,
    top_connecting=False,
    name="long exact sequence",
) -> ExactnessReport:
    """Assemble and check the homology LES of a degree-wise exact SES.

    Runs from H_{n_top}(left) down to H_0(right) followed by 0; with
    top_connecting, starts one step higher at H_{n_top+1}(right)."""
    if labeler is None:
        labeler = lambda which, n: f"H_{n}({which})"
    spaces, labels, maps = [], [], []
    if top_connecting:
        spaces.append(homology(ses.right, n_top + 1)[0])
        labels.append(labeler("R", n_top + 1))
        maps.append(connecting_map(ses, n_top + 1))
    for n in range(n_top, -1, -1):
        spaces.append(homology(ses.left, n)[0])
        labels.append(labeler("L", n))
        maps.append(induced_on_homology(ses.inj, n))
        spaces.append(homology(ses.mid, n)[0])
        labels.append(labeler("M", n))
        maps.append(induced_on_homology(ses.proj, n))
        spaces.append(homology(ses.right, n)[0])
        labels.append(labeler("R", n))
        if n >= 1:
            maps.append(connecting_map(ses, n))
    spaces.append(0)
    labels.append("0")
    maps.append(SparseMatrix.zero(0, spaces[-2], ses.mid.field))
    return verify_exact(spaces, maps, labels, name=name)


def euler_characteristic_check(c: ChainComplex, n_top: int) -> bool:
    """Alternating dims minus alternating homology dims telescopes to
    the rank of the first differential beyond the checked range."""
    lo = c.lo
    lhs = 0
    rhs = 0
    for n in range(lo, n_top + 1):
        sign = -1 if (n - lo) % 2 else 1
        lhs += sign * c.dims[n]
        rhs += sign * homology(c, n)[0]
    correction = c.rank_d(n_top + 1)
    sign = -1 if (n_top - lo) % 2 else 1
    return lhs - rhs == sign * correction
