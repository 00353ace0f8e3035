import itertools
import math
import random
from functools import reduce

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_unimodular
from weylext.zlinalg import (
    INFINITE,
    AbelianGroup,
    IntMatrix,
    Lattice,
    cokernel,
    cokernel_generators,
    coset_order,
    format_triplets,
    hermite_solve,
    parse_triplets,
    rank,
    rank_mod_p,
    read_triplets,
    smith_normal_form,
    write_triplets,
)


def det(rows):
    """Integer determinant by cofactor expansion (small matrices only)."""
    if not rows:
        return 1
    return sum((-1) ** j * rows[0][j] * det([r[:j] + r[j + 1:] for r in rows[1:]])
               for j in range(len(rows)) if rows[0][j])


def determinantal_factors(dense, nrows, ncols):
    """Invariant factors from gcds of k x k minors."""
    divisors = [1]
    for k in range(1, min(nrows, ncols) + 1):
        g = 0
        for rs in itertools.combinations(range(nrows), k):
            for cs in itertools.combinations(range(ncols), k):
                g = math.gcd(g, det([[dense[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        divisors.append(g)
    return [divisors[i] // divisors[i - 1] for i in range(1, len(divisors))]


small_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=150, deadline=None)
@given(small_matrices)
def test_snf_matches_determinantal_divisors(dense):
    A = IntMatrix.from_dense(dense)
    factors, r = smith_normal_form(A)
    assert factors == determinantal_factors(dense, A.nrows, A.ncols)
    assert r == len(factors)


def test_snf_examples():
    assert smith_normal_form(IntMatrix.from_dense([[3, 3]]))[0] == [3]
    assert smith_normal_form(IntMatrix.from_dense([[3, 3, 0], [-2, 0, 2], [0, -3, -3]]))[0] == [1, 3]
    assert smith_normal_form(IntMatrix.from_dense([[2, 0], [0, 3]]))[0] == [1, 6]
    assert smith_normal_form(IntMatrix(3, 2))[0] == []
    assert smith_normal_form(IntMatrix(0, 0)) == ([], 0)


def test_snf_unimodular_invariance(rng):
    for _ in range(200):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        dense = [[rng.choice([0, 0, 1, -1, 2, 3, -4, 6]) for _ in range(n)] for _ in range(m)]
        A = IntMatrix.from_dense(dense, ncols=n)
        B = random_unimodular(rng, m) @ A @ random_unimodular(rng, n)
        assert smith_normal_form(A) == smith_normal_form(B)


def test_cokernel():
    A = IntMatrix.from_dense([[2, 0], [0, 6], [0, 0]])
    assert cokernel(A) == AbelianGroup(1, (2, 6))
    assert str(cokernel(A)) == "Z (+) Z_2 (+) Z_6"
    group, torsion, free = cokernel_generators(A)
    assert group == cokernel(A)
    for d, v in torsion:
        assert coset_order(A, v) == d
    for v in free:
        assert coset_order(A, v) == INFINITE


def diagonal_case(rng):
    """A = U D V with known D, and v = U w; returns (A, v, expected order)."""
    m, n = rng.randint(1, 5), rng.randint(1, 5)
    r = rng.randint(0, min(m, n))
    d = sorted(rng.choice([1, 2, 3, 4, 6, 12]) for _ in range(r))
    d = reduce(lambda acc, x: acc + [math.lcm(acc[-1], x)] if acc else [x], d, [])
    D = IntMatrix.from_dense([[d[i] if i == j and i < r else 0 for j in range(n)] for i in range(m)], ncols=n)
    U = random_unimodular(rng, m)
    A = U @ D @ random_unimodular(rng, n)
    w = [rng.randint(-5, 5) for _ in range(m)]
    if any(w[i] for i in range(r, m)):
        want = INFINITE
    else:
        want = math.lcm(1, *(d[i] // math.gcd(d[i], w[i]) for i in range(r)))
    return A, U.apply(w), want


def test_coset_order_and_lattice_against_diagonal_oracle(rng):
    for _ in range(300):
        A, v, want = diagonal_case(rng)
        assert coset_order(A, v) == want
        L = Lattice(A)
        assert L.order(v) == want
        x = L.solve(v)
        if want == 1:
            assert A.apply(x) == list(v)
        else:
            assert x is None
        if want != INFINITE:
            y = hermite_solve(A, [want * t for t in v])
            assert A.apply(y) == [want * t for t in v]


def dense_rank_mod_p(dense, p):
    rows = [[x % p for x in r] for r in dense]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c] * inv % p
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def test_rank_mod_p(rng):
    for _ in range(200):
        m, n = rng.randint(1, 7), rng.randint(1, 7)
        dense = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        A = IntMatrix.from_dense(dense, ncols=n)
        for p in (2, 3, 5, 7):
            assert rank_mod_p(A, p) == dense_rank_mod_p(dense, p)
            factors, _ = smith_normal_form(A)
            assert rank_mod_p(A, p) == sum(1 for d in factors if d % p)
    with pytest.raises(ValueError):
        rank_mod_p(IntMatrix(1, 1), 4)


def test_rank_and_products():
    A = IntMatrix.from_dense([[1, 2], [2, 4]])
    assert rank(A) == 1
    assert (A @ IntMatrix.identity(2)) == A
    assert A.transpose().to_dense() == [[1, 2], [2, 4]]
    assert (-A).to_dense() == [[-1, -2], [-2, -4]]
    assert A.submatrix([1], [0, 1]).to_dense() == [[2, 4]]


def test_triplet_round_trip(tmp_path, rng):
    for _ in range(20):
        m, n = rng.randint(0, 6), rng.randint(0, 6)
        A = IntMatrix.from_dense([[rng.choice([0, 0, 1, -7, 10**20]) for _ in range(n)] for _ in range(m)], ncols=n)
        assert parse_triplets(format_triplets(A)) == A
        path = tmp_path / "m.txt"
        write_triplets(A, path)
        assert read_triplets(path) == A
    text = format_triplets(IntMatrix.from_dense([[0, 5], [-1, 0]]))
    assert text.splitlines() == ["2 2", "0 1 5", "1 0 -1"]


def test_abelian_group_rendering_and_validation():
    assert str(AbelianGroup()) == "0"
    assert str(AbelianGroup(2)) == "Z^2"
    assert str(AbelianGroup.cyclic(5)) == "Z_5"
    assert AbelianGroup.cyclic(1) == AbelianGroup()
    assert AbelianGroup.from_orders([2, 3]) == AbelianGroup.cyclic(6)
    assert AbelianGroup.from_orders([2, 4, 1]).invariant_factors == (2, 4)
    with pytest.raises(ValueError):
        AbelianGroup(0, (4, 2))
    with pytest.raises(ValueError):
        AbelianGroup(0, (1,))
