"""Hom-complex differentials Hom(P_*(a,b), M) and their block structure.

A label of a Hom-complex basis is ``(weight, basis_vector)``; blocks are
listed in the global weight order and, inside a weight, in the order of
the coefficient module's weight basis.
"""
from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from .combinatorics import merge, resolution_compositions
from .tableaux import CoefficientModule, FreeVector, Skew, SkewElement, Weyl
from .zlinalg import IntMatrix, read_triplets, write_triplets

log = logging.getLogger(__name__)

CACHE_FORMAT_VERSION = 1


@dataclass
class Report:
    """Outcome of a self-check; ``details`` holds human-readable lines."""

    name: str
    ok: bool = True
    details: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def fail(self, message: str) -> None:
        self.ok = False
        self.details.append(message)

    def note(self, message: str) -> None:
        self.details.append(message)

    def __bool__(self):
        return self.ok

    def __str__(self):
        head = f"{'PASS' if self.ok else 'FAIL'} {self.name}"
        return "\n".join([head] + [f"  {d}" for d in self.details])


@dataclass(frozen=True)
class HomBasis:
    degree: int
    blocks: tuple  # ((weight, (basis vectors...)), ...)

    @property
    def labels(self) -> list:
        return [(mu, x) for mu, xs in self.blocks for x in xs]

    def __len__(self):
        return sum(len(xs) for _, xs in self.blocks)

    @property
    def weights(self) -> list:
        return [mu for mu, _ in self.blocks]


@lru_cache(maxsize=None)
def hom_basis(a: int, b: int, i: int, M: CoefficientModule) -> HomBasis:
    """Standard basis of Hom(P_i(a,b), M) as weight-space blocks."""
    if M.degree != a + b:
        raise ValueError(f"{M} has degree {M.degree}, expected {a + b}")
    blocks = tuple((mu, tuple(M.weight_basis(mu))) for mu in resolution_compositions(a, b, i))
    return HomBasis(i, blocks)


@lru_cache(maxsize=None)
def _label_index(a: int, b: int, i: int, M: CoefficientModule) -> dict:
    return {lab: p for p, lab in enumerate(hom_basis(a, b, i, M).labels)}


def label_index(a: int, b: int, i: int, M: CoefficientModule) -> dict:
    return _label_index(a, b, i, M)


def cochain_image(mu: tuple, x, M: CoefficientModule, targets) -> FreeVector:
    """Image of one basis vector under sum_s (-1)^(s-1) theta_s, kept to ``targets``."""
    out = FreeVector()
    for s in range(1, len(mu)):
        nu = merge(mu, s)
        if nu not in targets:
            continue
        sign = 1 if s % 2 else -1
        for y, c in M.theta_element(s, x).items():
            out.add_term((nu, y), sign * c)
    return out


def apply_differential(a: int, b: int, i: int, M: CoefficientModule, v) -> FreeVector:
    """Apply Hom(Theta_i(a,b), M) to a labelled cochain of degree i-1."""
    targets = set(resolution_compositions(a, b, i))
    out = FreeVector()
    for (mu, x), c in v.items():
        out.add(cochain_image(mu, x, M, targets), c)
    return out


class MatrixCache:
    """One sparse-triplet file per differential matrix."""

    def __init__(self, directory):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def path(self, a: int, b: int, i: int, M: CoefficientModule, n: int) -> Path:
        name = f"v{CACHE_FORMAT_VERSION}_e{i}_a{a}_b{b}_{M.descriptor}_n{n}.txt"
        return self.directory / name

    def get(self, a, b, i, M, n):
        p = self.path(a, b, i, M, n)
        if not p.exists():
            return None
        try:
            return read_triplets(p)
        except (OSError, ValueError):
            log.warning("ignoring unreadable cache file %s", p)
            return None

    def put(self, A: IntMatrix, a, b, i, M, n) -> None:
        write_triplets(A, self.path(a, b, i, M, n))


def default_cache():
    path = os.environ.get("WEYLEXT_CACHE")
    return MatrixCache(path) if path else None


@lru_cache(maxsize=512)
def _build_differential(a: int, b: int, i: int, M: CoefficientModule) -> IntMatrix:
    src = hom_basis(a, b, i - 1, M)
    dst = hom_basis(a, b, i, M)
    rows = label_index(a, b, i, M)
    targets = set(dst.weights)
    entries: dict = {}
    for q, (mu, x) in enumerate(src.labels):
        for lab, c in cochain_image(mu, x, M, targets).items():
            entries[(rows[lab], q)] = c
    return IntMatrix(len(dst), len(src), entries)


def differential_matrix(a: int, b: int, i: int, M: CoefficientModule,
                        cache: MatrixCache | None = None, n: int | None = None) -> IntMatrix:
    """Matrix e^(i)(a,b,M) of Hom(Theta_i(a,b), M).

    Columns are indexed by hom_basis(a,b,i-1,M), rows by hom_basis(a,b,i,M).
    """
    if not 1 <= i <= b:
        raise ValueError(f"degree {i} outside 1..{b}")
    if n is None:
        n = b + 1
    if n < b + 1:
        raise ValueError(f"n = {n} is too small for b = {b}")
    A = cache.get(a, b, i, M, n) if cache is not None else None
    if A is None:
        A = _build_differential(a, b, i, M)
        if cache is not None:
            cache.put(A, a, b, i, M, n)
    src = hom_basis(a, b, i - 1, M)
    dst = hom_basis(a, b, i, M)
    if A.shape != (len(dst), len(src)):
        raise ValueError(f"cached matrix has shape {A.shape}, expected {(len(dst), len(src))}")
    return IntMatrix.from_rows(A.rows_dict(), A.nrows, A.ncols,
                               row_labels=dst.labels, col_labels=src.labels)


def verify_complex(a: int, b: int, M: CoefficientModule, up_to: int | None = None) -> Report:
    """Check e^(i+1) e^(i) = 0 for 1 <= i < up_to."""
    if up_to is None:
        up_to = b
    rep = Report(f"complex a={a} b={b} M={M}")
    for i in range(1, up_to):
        prod = differential_matrix(a, b, i + 1, M) @ differential_matrix(a, b, i, M)
        if not prod.is_zero():
            i0, j0, v = prod.triplets()[0]
            col = hom_basis(a, b, i - 1, M).labels[j0]
            rep.fail(f"e^({i + 1}) e^({i}) != 0: entry ({i0}, {j0}) = {v}, column {col}")
    return rep


# -- block structure ----------------------------------------------------------------

def restricted_summands(M: CoefficientModule, a: int) -> list:
    """M_a as a sum of modules on the letters 2..n, shifted down by one.

    Each entry is ``(module, ones_in_exterior)`` for skew coefficients and
    ``(module, 0)`` for a hook Weyl module (where M_a is D_{A-a} (x) Lambda^B).
    """
    if isinstance(M, Skew):
        out = []
        if M.m >= a:
            out.append((Skew(M.m - a, M.l), 0))
        if M.l >= 1 and M.m >= a - 1:
            out.append((Skew(M.m - a + 1, M.l - 1), 1))
        return out
    h = M.hook
    if a < 1 or a > h.a:
        return []
    return [(Skew(h.a - a, h.b), 0)]


def shift_down(x) -> tuple:
    """Subtract 1 from every letter of a (divided, exterior) pair, dropping 1s."""
    first, second = x
    d = tuple((y - 1, c) for y, c in first if y != 1)
    e = tuple(y - 1 for y in second if y != 1)
    return d, e


def _compare(name: str, rep: Report, got: IntMatrix, want: IntMatrix, rows=None, cols=None):
    if got.shape != want.shape:
        rep.fail(f"{name}: shape {got.shape} != {want.shape}")
        return
    if got == want:
        return
    for i in range(got.nrows):
        for j in range(got.ncols):
            if got[i, j] != want[i, j]:
                where = ""
                if rows is not None and cols is not None:
                    where = f" (row {rows[i]}, column {cols[j]})"
                rep.fail(f"{name}: entry ({i}, {j}){where} is {got[i, j]}, expected {want[i, j]}")
                return


def _restricted_block(a: int, b: int, i: int, M: CoefficientModule, E: IntMatrix,
                      rows: list, cols: list, rep: Report, name: str):
    """Compare E[rows, cols] (weights starting with a) against -e^(i)(1,b-1,M_a)."""
    summands = restricted_summands(M, a)
    blocks = {}
    for S, ones in summands:
        if S.degree != b:
            continue
        if i <= b - 1:
            blocks[ones] = (differential_matrix(1, b - 1, i, S),
                            label_index(1, b - 1, i, S), label_index(1, b - 1, i - 1, S))

    def locate(label):
        mu, x = label
        ones = 0 if isinstance(M, Weyl) else sum(1 for y in x.e if y == 1)
        d, e = shift_down(x)
        return ones, (mu[1:], SkewElement(d, e))

    for p, r in enumerate(rows):
        ro, rl = locate(E.row_labels[r])
        for q, c in enumerate(cols):
            co, cl = locate(E.col_labels[c])
            want = 0
            if ro == co and ro in blocks:
                S_mat, S_rows, S_cols = blocks[ro]
                want = -S_mat[S_rows[rl], S_cols[cl]]
            if E[r, c] != want:
                rep.fail(f"{name}: entry at row {E.row_labels[r]}, column {E.col_labels[c]} "
                         f"is {E[r, c]}, expected {want}")
                return


def block_check(a: int, b: int, i: int, M: CoefficientModule, variant: str = "recursion") -> Report:
    """Reassemble e^(i)(a,b,M) from smaller differentials.

    ``variant="recursion"`` checks the split by first weight part
    (top-left e^(i-1)(a+1,b-1,M), zero bottom-left, bottom-right
    -e^(i)(1,b-1,M_a)); ``variant="skew"`` checks the three-way split of a
    skew coefficient module by the number of 1s in the exterior part.
    """
    if variant == "recursion":
        return _check_recursion(a, b, i, M)
    if variant == "skew":
        return _check_skew_blocks(a, b, i, M)
    raise ValueError(f"unknown block variant {variant!r}")


def _split_by_first(labels, a):
    top = [p for p, (mu, _) in enumerate(labels) if mu[0] > a]
    bottom = [p for p, (mu, _) in enumerate(labels) if mu[0] == a]
    return top, bottom


def _check_recursion(a: int, b: int, i: int, M: CoefficientModule) -> Report:
    rep = Report(f"block recursion a={a} b={b} i={i} M={M}")
    if b < 1 or not 1 <= i <= b:
        rep.fail(f"degree {i} outside 1..{b}")
        return rep
    E = differential_matrix(a, b, i, M)
    rtop, rbot = _split_by_first(E.row_labels, a)
    ctop, cbot = _split_by_first(E.col_labels, a)
    if i == 1 and ctop:
        rep.fail("degree-1 domain has weights with first part > a")
    if i > 1:
        want = differential_matrix(a + 1, b - 1, i - 1, M) if b - 1 >= i - 1 else None
        got = E.submatrix(rtop, ctop)
        if want is None:
            if not got.is_zero():
                rep.fail("top-left block should be empty")
        else:
            if [E.row_labels[p] for p in rtop] != want.row_labels:
                rep.fail("top-left row labels differ from e^(i-1)(a+1,b-1,M)")
            if [E.col_labels[p] for p in ctop] != want.col_labels:
                rep.fail("top-left column labels differ from e^(i-1)(a+1,b-1,M)")
            _compare("top-left", rep, got, want)
    if not E.submatrix(rbot, ctop).is_zero():
        rep.fail("bottom-left block is not zero")
    _restricted_block(a, b, i, M, E, rbot, cbot, rep, "bottom-right")
    diag = E.submatrix(rtop, cbot)
    rep.data["diagonal_block"] = diag
    return rep


def _check_skew_blocks(a: int, b: int, i: int, M: CoefficientModule) -> Report:
    rep = Report(f"skew blocks a={a} b={b} i={i} M={M}")
    if not isinstance(M, Skew) or i < 2:
        rep.fail("the three-way split needs skew coefficients and i >= 2")
        return rep
    k = M.m - a
    E = differential_matrix(a, b, i, M)

    def split(labels):
        first, one, zero = [], [], []
        for p, (mu, x) in enumerate(labels):
            if mu[0] > a:
                first.append(p)
            elif 1 in x.e:
                one.append(p)
            else:
                zero.append(p)
        return first, one, zero

    r0, r1, r2 = split(E.row_labels)
    c0, c1, c2 = split(E.col_labels)
    order_r, order_c = r0 + r1 + r2, c0 + c1 + c2
    P = E.submatrix(order_r, order_c)
    n0r, n1r = len(r0), len(r1)
    n0c, n1c = len(c0), len(c1)
    R = [range(0, n0r), range(n0r, n0r + n1r), range(n0r + n1r, P.nrows)]
    C = [range(0, n0c), range(n0c, n0c + n1c), range(n0c + n1c, P.ncols)]

    def block(p, q):
        return P.submatrix(list(R[p]), list(C[q]))

    A_want = differential_matrix(a + 1, b - 1, i - 1, M) if b - 1 >= i - 1 else None
    if A_want is not None:
        _compare("A", rep, block(0, 0), A_want)
    for p, q in ((1, 0), (2, 0), (1, 2), (2, 1)):
        if not block(p, q).is_zero():
            rep.fail(f"block ({p}, {q}) is not zero")
    for p, (m, l) in ((1, (k + 1, b - k - 1)), (2, (k, b - k))):
        got = block(p, p)
        if l < 0 or m < 0 or i > b - 1:
            if got.nrows and got.ncols and not got.is_zero():
                rep.fail(f"block ({p}, {p}) should vanish")
            continue
        want = -differential_matrix(1, b - 1, i, Skew(m, l))
        rows = [shift_label(P.row_labels[t]) for t in R[p]]
        cols = [shift_label(P.col_labels[t]) for t in C[p]]
        if rows != want.row_labels or cols != want.col_labels:
            rep.fail(f"block ({p}, {p}): relabelled bases differ")
            continue
        _compare(f"block ({p}, {p})", rep, got, want, rows, cols)
    rep.data["blocks"] = {"A": block(0, 0)}
    return rep


def shift_label(label):
    mu, x = label
    d, e = shift_down(x)
    return mu[1:], SkewElement(d, e)
