"""Verification suites shared by the command line and the acceptance tests.

Each suite returns a list of :class:`~weylext.resolution.Report`; cells are
independent and may be evaluated by a process pool.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .combinatorics import Hook
from .extcalc import (
    ExtQuery,
    check_generators,
    predicted_modular_dim,
    expected_ext2,
    expected_skew_ext,
    ext,
    modular_ext1_dim,
    phi_check,
    relations_check,
    dichotomy_check,
)
from .resolution import Report, block_check, differential_matrix, hom_basis, verify_complex
from .tableaux import Skew, Weyl
from .zlinalg import AbelianGroup, IntMatrix, rank, smith_normal_form


@dataclass(frozen=True)
class Ranges:
    amin: int = 1
    amax: int = 4
    bmin: int = 2
    bmax: int = 6
    primes: tuple = (2, 3, 5)

    def cells(self):
        for a in range(self.amin, self.amax + 1):
            for b in range(self.bmin, self.bmax + 1):
                yield a, b


DEFAULTS = {
    "fixtures": Ranges(),
    "ext2": Ranges(1, 4, 2, 6),
    "skew": Ranges(1, 4, 2, 6),
    "complex": Ranges(1, 4, 2, 6),
    "blocks": Ranges(1, 3, 3, 5),
    "generators": Ranges(1, 3, 3, 6),
    "phi": Ranges(1, 3, 3, 6),
    "relations": Ranges(1, 3, 3, 6),
    "dichotomy": Ranges(1, 4, 3, 6),
    "modular": Ranges(1, 4, 2, 6),
}


def _run(fn, cells, jobs: int):
    if jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, cells))
    return [fn(c) for c in cells]


def _matrix_report(name: str, got: IntMatrix, want) -> Report:
    rep = Report(name)
    if got.to_dense() != want:
        rep.fail(f"got {got.to_dense()}, expected {want}")
    return rep


def fixtures_suite(ranges: Ranges | None = None, jobs: int = 1) -> list:
    out = []
    for k in range(1, 7):
        want = [[2 * (-1) ** s] for s in range(k)]
        out.append(_matrix_report(f"e1(1,{k},D{k + 1})", differential_matrix(1, k, 1, Skew(k + 1, 0)), want))
    e2 = differential_matrix(1, 2, 2, Skew(3, 0))
    out.append(_matrix_report("e2(1,2,D3)", e2, [[3, 3]]))
    e3 = differential_matrix(1, 3, 2, Skew(4, 0))
    out.append(_matrix_report("e2(1,3,D4)", e3, [[3, 3, 0], [-2, 0, 2], [0, -3, -3]]))
    for name, A, want in (("e2(1,2,D3)", e2, [3]), ("e2(1,3,D4)", e3, [1, 3])):
        rep = Report(f"invariant factors {name}")
        factors, _ = smith_normal_form(A)
        if factors != want:
            rep.fail(f"got {factors}, expected {want}")
        out.append(rep)
    for k in range(2, 7):
        rep = block_check(1, k, 2, Skew(k + 1, 0))
        diag = rep.data.get("diagonal_block")
        want = [[(3 if p == 0 else 2) if p == q else 0 for q in range(k - 1)] for p in range(k - 1)]
        if diag is None or diag.to_dense() != want:
            rep.fail(f"B^2(1,{k},D{k + 1}) is not diag(3,2,...,2)")
        top = differential_matrix(2, k - 1, 1, Skew(k + 1, 0)).to_dense()
        want_top = [[3]] + [[2 * (-1) ** s] for s in range(1, k - 1)]
        if top != want_top:
            rep.fail(f"e1(2,{k - 1},D{k + 1}) = {top}, expected {want_top}")
        rep.name = f"recursion e2(1,{k},D{k + 1})"
        out.append(rep)
    return out


def _ext2_cell(cell):
    a, b = cell
    out = []
    for k in range(0, b + 1):
        got = ext(ExtQuery(a, b, k, 2)).group
        want = expected_ext2(a, b, k)
        rep = Report(f"Ext2 a={a} b={b} k={k}")
        rep.data.update(got=str(got), want=str(want))
        if got != want:
            rep.fail(f"computed {got}, expected {want}")
        out.append(rep)
    return out


def ext2_suite(ranges: Ranges, jobs: int = 1) -> list:
    return [r for rs in _run(_ext2_cell, list(ranges.cells()), jobs) for r in rs]


def _skew_cell(cell):
    a, b = cell
    out = []
    for k in range(0, b):
        for i in (1, 2):
            got = ext(ExtQuery(a, b, k, i, skew=True)).group
            want = expected_skew_ext(k, i)
            rep = Report(f"skew Ext{i} a={a} b={b} k={k}")
            rep.data.update(k=k, i=i, got=got)
            if got != want:
                rep.fail(f"computed {got}, expected {want}")
            out.append(rep)
    return out


def skew_suite(ranges: Ranges, jobs: int = 1) -> list:
    reports = [r for rs in _run(_skew_cell, list(ranges.cells()), jobs) for r in rs]
    seen: dict = {}
    stable = Report("skew Ext independent of (a, b)")
    for r in reports:
        key = (r.data["k"], r.data["i"])
        seen.setdefault(key, set()).add(r.data["got"])
    for key, groups in sorted(seen.items()):
        if len(groups) != 1:
            stable.fail(f"k={key[0]} degree {key[1]}: {sorted(map(str, groups))}")
    return reports + [stable]


def sweep_modules(a: int, b: int) -> list:
    h = Hook(a, b)
    return [Weyl(h.shift(k)) for k in range(b + 1)] + [Skew(a + k, b - k) for k in range(b)]


def exactness_report(a: int, b: int, M) -> Report:
    rep = Report(f"rational exactness a={a} b={b} M={M}")
    ranks = {i: rank(differential_matrix(a, b, i, M)) for i in range(1, b + 1)}
    ranks[b + 1] = 0
    for i in range(1, b + 1):
        dim = len(hom_basis(a, b, i, M))
        if ranks[i] + ranks[i + 1] != dim:
            rep.fail(f"degree {i}: rank {ranks[i]} + {ranks[i + 1]} != {dim}")
    return rep


def _complex_cell(cell):
    a, b = cell
    out = []
    for M in sweep_modules(a, b):
        out.append(verify_complex(a, b, M))
        out.append(exactness_report(a, b, M))
    return out


def complex_suite(ranges: Ranges, jobs: int = 1) -> list:
    return [r for rs in _run(_complex_cell, list(ranges.cells()), jobs) for r in rs]


def _blocks_cell(cell):
    a, b = cell
    out = []
    for M in sweep_modules(a, b):
        rep = block_check(a, b, 2, M, "recursion")
        rep.data.clear()
        out.append(rep)
    for k in range(0, b + 1):
        rep = block_check(a, b, 2, Skew(a + k, b - k), "skew")
        rep.data.clear()
        out.append(rep)
    return out


def blocks_suite(ranges: Ranges, jobs: int = 1) -> list:
    return [r for rs in _run(_blocks_cell, list(ranges.cells()), jobs) for r in rs]


def _cells_fn(fn):
    def wrapped(ranges: Ranges, jobs: int = 1) -> list:
        cells = [c for c in ranges.cells() if c[1] >= 3]
        return _run(fn, cells, jobs)
    return wrapped


def _generators_cell(cell):
    return check_generators(*cell)


def _phi_cell(cell):
    return phi_check(*cell)


def _relations_cell(cell):
    return relations_check(*cell)


generators_suite = _cells_fn(_generators_cell)
phi_suite = _cells_fn(_phi_cell)
relations_suite = _cells_fn(_relations_cell)


def _dichotomy_cell(cell):
    a, b = cell
    return [dichotomy_check(a, b, k) for k in range(2, b)]


def dichotomy_suite(ranges: Ranges, jobs: int = 1) -> list:
    return [r for rs in _run(_dichotomy_cell, list(ranges.cells()), jobs) for r in rs]


def _modular_cell(args):
    a, b, primes = args
    out = []
    for k in range(1, b + 1):
        for p in primes:
            rep = Report(f"modular Ext1 a={a} b={b} k={k} p={p}")
            try:
                got = modular_ext1_dim(a, b, k, p)
            except RuntimeError as exc:
                rep.fail(str(exc))
                out.append(rep)
                continue
            want = predicted_modular_dim(a, b, k, p)
            if got != want:
                rep.fail(f"dimension {got}, predicted {want}")
            out.append(rep)
    return out


def modular_suite(ranges: Ranges, jobs: int = 1) -> list:
    cells = [(a, b, tuple(ranges.primes)) for a, b in ranges.cells()]
    return [r for rs in _run(_modular_cell, cells, jobs) for r in rs]


SUITES = {
    "fixtures": fixtures_suite,
    "ext2": ext2_suite,
    "skew": skew_suite,
    "complex": complex_suite,
    "blocks": blocks_suite,
    "generators": generators_suite,
    "phi": phi_suite,
    "relations": relations_suite,
    "dichotomy": dichotomy_suite,
    "modular": modular_suite,
}


def run_suite(name: str, ranges: Ranges | None = None, jobs: int = 1) -> list:
    if ranges is None:
        ranges = DEFAULTS[name]
    return SUITES[name](ranges, jobs)


__all__ = ["AbelianGroup", "DEFAULTS", "Ranges", "SUITES", "run_suite"]
