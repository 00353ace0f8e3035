"""Exact integer linear algebra on sparse matrices.

Everything is plain Python ``int``; no fixed-width arithmetic anywhere.
"""
from __future__ import annotations

import math
import os
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

INFINITE = math.inf


class IntMatrix:
    """Sparse integer matrix stored as ``{row: {col: value}}``.

    Optional row/column labels name the basis vectors of codomain and
    domain.
    """

    __slots__ = ("nrows", "ncols", "_rows", "row_labels", "col_labels", "_cols")

    def __init__(self, nrows: int, ncols: int, entries=None, row_labels=None, col_labels=None):
        self.nrows = nrows
        self.ncols = ncols
        self._rows: dict = {}
        self._cols = None
        if entries:
            items = entries.items() if isinstance(entries, dict) else entries
            for key, v in items:
                i, j = key
                if not (0 <= i < nrows and 0 <= j < ncols):
                    raise IndexError(f"entry ({i}, {j}) outside {nrows}x{ncols}")
                if v:
                    row = self._rows.setdefault(i, {})
                    row[j] = row.get(j, 0) + v
                    if not row[j]:
                        del row[j]
                        if not row:
                            del self._rows[i]
        if row_labels is not None:
            row_labels = list(row_labels)
            if len(row_labels) != nrows or len(set(row_labels)) != nrows:
                raise ValueError("row labels must be distinct and match the row count")
        if col_labels is not None:
            col_labels = list(col_labels)
            if len(col_labels) != ncols or len(set(col_labels)) != ncols:
                raise ValueError("column labels must be distinct and match the column count")
        self.row_labels = row_labels
        self.col_labels = col_labels

    # -- construction / access ------------------------------------------------

    @classmethod
    def from_rows(cls, rows: dict, nrows: int, ncols: int, **labels) -> "IntMatrix":
        out = cls(nrows, ncols, **labels)
        out._rows = {i: dict(r) for i, r in rows.items() if r}
        return out

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]], ncols: int | None = None, **labels) -> "IntMatrix":
        dense = [list(r) for r in dense]
        if ncols is None:
            ncols = len(dense[0]) if dense else 0
        if any(len(r) != ncols for r in dense):
            raise ValueError("ragged matrix")
        entries = {(i, j): v for i, r in enumerate(dense) for j, v in enumerate(r) if v}
        return cls(len(dense), ncols, entries, **labels)

    @classmethod
    def identity(cls, k: int) -> "IntMatrix":
        return cls(k, k, {(i, i): 1 for i in range(k)})

    @property
    def shape(self):
        return self.nrows, self.ncols

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._rows.values())

    def __getitem__(self, key) -> int:
        i, j = key
        return self._rows.get(i, {}).get(j, 0)

    def row(self, i: int) -> dict:
        return dict(self._rows.get(i, {}))

    def rows_dict(self) -> dict:
        return {i: dict(r) for i, r in self._rows.items()}

    def column(self, j: int) -> dict:
        return dict(self._columns().get(j, {}))

    def _columns(self) -> dict:
        if self._cols is None:
            cols: dict = {}
            for i, r in self._rows.items():
                for j, v in r.items():
                    cols.setdefault(j, {})[i] = v
            self._cols = cols
        return self._cols

    def triplets(self) -> list:
        return [(i, j, self._rows[i][j]) for i in sorted(self._rows) for j in sorted(self._rows[i])]

    def to_dense(self) -> list:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, j, v in self.triplets():
            out[i][j] = v
        return out

    def is_zero(self) -> bool:
        return not self._rows

    # -- algebra ----------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __neg__(self):
        return IntMatrix.from_rows(
            {i: {j: -v for j, v in r.items()} for i, r in self._rows.items()},
            self.nrows, self.ncols, row_labels=self.row_labels, col_labels=self.col_labels,
        )

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(self._columns(), self.ncols, self.nrows,
                                   row_labels=self.col_labels, col_labels=self.row_labels)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out: dict = {}
        for i, r in self._rows.items():
            acc: dict = {}
            for k, v in r.items():
                for j, w in other._rows.get(k, {}).items():
                    acc[j] = acc.get(j, 0) + v * w
            acc = {j: x for j, x in acc.items() if x}
            if acc:
                out[i] = acc
        return IntMatrix.from_rows(out, self.nrows, other.ncols)

    def apply(self, x: Sequence[int]) -> list:
        """Matrix-vector product A x."""
        if len(x) != self.ncols:
            raise ValueError("vector length does not match column count")
        return [sum(v * x[j] for j, v in self._rows.get(i, {}).items()) for i in range(self.nrows)]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
        rpos = {i: p for p, i in enumerate(rows)}
        cpos = {j: q for q, j in enumerate(cols)}
        out: dict = {}
        for i in rows:
            r = self._rows.get(i)
            if not r:
                continue
            sub = {cpos[j]: v for j, v in r.items() if j in cpos}
            if sub:
                out[rpos[i]] = sub
        rl = [self.row_labels[i] for i in rows] if self.row_labels is not None else None
        cl = [self.col_labels[j] for j in cols] if self.col_labels is not None else None
        return IntMatrix.from_rows(out, len(rows), len(cols), row_labels=rl, col_labels=cl)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.nrows != other.nrows:
            raise ValueError("row counts differ")
        out = self.rows_dict()
        for i, r in other._rows.items():
            row = out.setdefault(i, {})
            for j, v in r.items():
                row[self.ncols + j] = v
        return IntMatrix.from_rows(out, self.nrows, self.ncols + other.ncols)

    def __repr__(self):
        return f"IntMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"


def column_vector(v: Sequence[int]) -> IntMatrix:
    return IntMatrix(len(v), 1, {(i, 0): x for i, x in enumerate(v) if x})


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank (+) Z_{d1} (+) ... with d1 | d2 | ... and every d >= 2."""

    free_rank: int = 0
    invariant_factors: tuple = field(default_factory=tuple)

    def __post_init__(self):
        factors = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", factors)
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        if any(d < 2 for d in factors):
            raise ValueError(f"invariant factors must be >= 2, got {factors}")
        if any(factors[t + 1] % factors[t] for t in range(len(factors) - 1)):
            raise ValueError(f"{factors} is not a divisibility chain")

    @classmethod
    def from_orders(cls, orders: Iterable[int], free_rank: int = 0) -> "AbelianGroup":
        """Normalize a direct sum of cyclic groups of the given orders."""
        factors = [d for d in divisor_chain(abs(x) for x in orders if x) if d > 1]
        return cls(free_rank, tuple(factors))

    @classmethod
    def cyclic(cls, m: int) -> "AbelianGroup":
        return cls.from_orders([m])

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def torsion_order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z_{d}" for d in self.invariant_factors]
        return " (+) ".join(parts) if parts else "0"


def divisor_chain(diag: Iterable[int]) -> list:
    """Invariant factors of a diagonal matrix, smallest first."""
    ds = sorted(diag)
    for p in range(len(ds)):
        for q in range(p + 1, len(ds)):
            g = math.gcd(ds[p], ds[q])
            if g != ds[p]:
                ds[p], ds[q] = g, ds[p] * ds[q] // g
    return ds


# -- Smith normal form ----------------------------------------------------------

def _nearest_quotient(x: int, v: int) -> int:
    q, r = divmod(x, v)
    if 2 * abs(r) > abs(v):
        q += 1
    return q


def _diagonalize(A: IntMatrix, track: bool = False):
    """Reduce A to a diagonal by unimodular row and column operations.

    Returns ``(pivots, uinv)``: ``pivots`` lists ``(row, |d|)`` and, when
    ``track`` is set, ``uinv`` holds the columns of U^-1 where U collects
    the row operations (so U^-1 e_row generates the matching summand of
    the cokernel).
    """
    rows = A.rows_dict()
    colidx: dict = {}
    for i, r in rows.items():
        for j in r:
            colidx.setdefault(j, set()).add(i)
    uinv = {i: {i: 1} for i in range(A.nrows)} if track else None
    pivots = []

    def row_op(target: int, source: int, q: int):
        # row_target -= q * row_source
        tr = rows[target]
        for j, v in rows[source].items():
            new = tr.get(j, 0) - q * v
            if new:
                if j not in tr:
                    colidx[j].add(target)
                tr[j] = new
            else:
                del tr[j]
                colidx[j].discard(target)
        if uinv is not None:
            col = uinv[source]
            for k, v in uinv[target].items():
                new = col.get(k, 0) + q * v
                if new:
                    col[k] = new
                else:
                    del col[k]
        if not tr:
            del rows[target]

    while rows:
        best = None
        for i, r in rows.items():
            lr = len(r)
            for j, v in r.items():
                key = (abs(v), lr * len(colidx[j]))
                if best is None or key < best[0]:
                    best = (key, i, j)
            if best[0] == (1, 1):
                break
        _, i, j = best
        v = rows[i][j]
        clean = True
        for i2 in list(colidx[j]):
            if i2 == i:
                continue
            q = _nearest_quotient(rows[i2][j], v)
            if q:
                row_op(i2, i, q)
            if i2 in rows and rows[i2].get(j):
                clean = False
        if not clean:
            continue
        row = rows[i]
        leftover = False
        for j2 in list(row):
            if j2 == j:
                continue
            rem = row[j2] - _nearest_quotient(row[j2], v) * v
            if rem:
                row[j2] = rem
                leftover = True
            else:
                del row[j2]
                colidx[j2].discard(i)
        if leftover:
            continue
        pivots.append((i, abs(v)))
        del rows[i]
        del colidx[j]
    return pivots, uinv


def smith_normal_form(A: IntMatrix):
    """Nonzero invariant factors d1 | d2 | ... of A and its rank."""
    pivots, _ = _diagonalize(A)
    factors = divisor_chain(d for _, d in pivots)
    return factors, len(factors)


def rank(A: IntMatrix) -> int:
    return smith_normal_form(A)[1]


def cokernel(A: IntMatrix, ambient: int | None = None) -> AbelianGroup:
    if ambient is None:
        ambient = A.nrows
    if ambient != A.nrows:
        raise ValueError(f"ambient rank {ambient} != {A.nrows} rows")
    factors, r = smith_normal_form(A)
    return AbelianGroup(ambient - r, tuple(d for d in factors if d > 1))


def cokernel_generators(A: IntMatrix):
    """Cokernel together with one generator (as a dense vector) per cyclic piece.

    Returns ``(group, torsion_gens, free_gens)`` where ``torsion_gens`` is a
    list of ``(order, vector)`` for the diagonal pieces of order > 1.
    """
    pivots, uinv = _diagonalize(A, track=True)
    pivot_rows = {i for i, _ in pivots}

    def dense(i):
        v = [0] * A.nrows
        for k, x in uinv[i].items():
            v[k] = x
        return v

    torsion = [(d, dense(i)) for i, d in pivots if d > 1]
    free = [dense(i) for i in range(A.nrows) if i not in pivot_rows]
    group = AbelianGroup.from_orders([d for d, _ in torsion], free_rank=len(free))
    return group, torsion, free


def coset_order(A: IntMatrix, v: Sequence[int]):
    """Order of v in Z^rows / (column lattice of A); ``INFINITE`` if unbounded.

    Computed as the index of the lattice in the lattice enlarged by v,
    i.e. a ratio of products of invariant factors.
    """
    if len(v) != A.nrows:
        raise ValueError("vector length does not match row count")
    fa, ra = smith_normal_form(A)
    fb, rb = smith_normal_form(A.hstack(column_vector(v)))
    if rb > ra:
        return INFINITE
    return math.prod(fa) // math.prod(fb)


# -- Hermite form / lattice membership --------------------------------------------

class Lattice:
    """Column lattice of an integer matrix in lower echelon (Hermite-style) form.

    Column operations are tracked so that membership queries return an
    explicit preimage.
    """

    def __init__(self, A: IntMatrix):
        self.matrix = A
        cols = {j: dict(c) for j, c in A._columns().items()}
        trans = {j: {j: 1} for j in cols}
        remaining = set(cols)
        basis = []

        def col_op(target, source, q):
            for dst, src in ((cols, cols), (trans, trans)):
                t, s = dst[target], src[source]
                for k, x in s.items():
                    new = t.get(k, 0) - q * x
                    if new:
                        t[k] = new
                    else:
                        del t[k]

        active = sorted({i for c in cols.values() for i in c})
        for r in active:
            cand = [j for j in remaining if cols[j].get(r)]
            while len(cand) > 1:
                j0 = min(cand, key=lambda j: (abs(cols[j][r]), len(cols[j]), j))
                for j in cand:
                    if j != j0:
                        col_op(j, j0, _nearest_quotient(cols[j][r], cols[j0][r]))
                cand = [j for j in cand if cols[j].get(r)]
            if cand:
                j0 = cand[0]
                basis.append((r, cols[j0], trans[j0]))
                remaining.discard(j0)
            remaining = {j for j in remaining if cols[j]}
        self.basis = basis
        self.rank = len(basis)

    def _coordinates(self, v: Sequence[int], exact: bool):
        w = {i: x for i, x in enumerate(v) if x}
        coords = []
        for r, h, _ in self.basis:
            # every earlier row of h is zero; rows of w above r must be cleared
            if any(i < r for i in w):
                return None
            x = w.get(r, 0)
            if exact:
                if x % h[r]:
                    return None
                y = x // h[r]
            else:
                y = Fraction(x, h[r])
            if y:
                for i, t in h.items():
                    new = w.get(i, 0) - y * t
                    if new:
                        w[i] = new
                    else:
                        w.pop(i, None)
            coords.append(y)
        if w:
            return None
        return coords

    def solve(self, v: Sequence[int]):
        """Some integer x with A x = v, or ``None`` when v is not in the lattice."""
        if len(v) != self.matrix.nrows:
            raise ValueError("vector length does not match row count")
        coords = self._coordinates(v, exact=True)
        if coords is None:
            return None
        x = [0] * self.matrix.ncols
        for y, (_, _, t) in zip(coords, self.basis):
            for j, c in t.items():
                x[j] += y * c
        return x

    def contains(self, v: Sequence[int]) -> bool:
        return self._coordinates(v, exact=True) is not None

    def order(self, v: Sequence[int]):
        """Least m >= 1 with m v in the lattice, or ``INFINITE``."""
        coords = self._coordinates(v, exact=False)
        if coords is None:
            return INFINITE
        return math.lcm(1, *(Fraction(y).denominator for y in coords))


def hermite_solve(A: IntMatrix, v: Sequence[int]):
    """Integer solution of A x = v, or ``None`` (v not in the column lattice)."""
    return Lattice(A).solve(v)


# -- modular rank -------------------------------------------------------------------

def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, math.isqrt(p) + 1))


def rank_mod_p(A: IntMatrix, p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    pending = []
    for r in A.rows_dict().values():
        red = {j: v % p for j, v in r.items() if v % p}
        if red:
            pending.append(red)
    pivots: dict = {}
    for row in pending:
        while row:
            j = min(row)
            if j not in pivots:
                inv = pow(row[j], -1, p)
                pivots[j] = {k: x * inv % p for k, x in row.items()}
                break
            piv = pivots[j]
            f = row[j]
            for k, x in piv.items():
                new = (row.get(k, 0) - f * x) % p
                if new:
                    row[k] = new
                else:
                    row.pop(k, None)
    return len(pivots)


# -- sparse triplet files ------------------------------------------------------------

def format_triplets(A: IntMatrix) -> str:
    lines = [f"{A.nrows} {A.ncols}"]
    lines += [f"{i} {j} {v}" for i, j, v in A.triplets()]
    return "\n".join(lines) + "\n"


def parse_triplets(text: str) -> IntMatrix:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 2:
        raise ValueError("missing 'rows cols' header")
    nrows, ncols = map(int, lines[0])
    entries = {}
    for parts in lines[1:]:
        if len(parts) != 3:
            raise ValueError(f"bad triplet line {' '.join(parts)!r}")
        i, j, v = map(int, parts)
        entries[(i, j)] = v
    return IntMatrix(nrows, ncols, entries)


def write_triplets(A: IntMatrix, path) -> None:
    """Write A atomically: readers never see a half-written file."""
    path = os.fspath(path)
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".txt")
    try:
        with os.fdopen(fd, "w", encoding="ascii", newline="\n") as fh:
            fh.write(format_triplets(A))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_triplets(path) -> IntMatrix:
    with open(path, encoding="ascii") as fh:
        return parse_triplets(fh.read())
