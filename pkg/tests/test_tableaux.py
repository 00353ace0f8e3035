import itertools
import random
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weylext.combinatorics import Hook, binomial, compositions
from weylext.tableaux import (
    FreeVector,
    Skew,
    SkewElement,
    Weyl,
    WeylElement,
    content,
    divided_word,
    is_standard,
    lower_map,
    normalize_exterior,
    render,
    skew_weight_basis,
    straighten,
    theta,
    weyl_weight_basis,
)
from weylext.zlinalg import IntMatrix, rank


def W(top, col):
    return WeylElement(divided_word(top), tuple(col))


def S(d, e):
    return SkewElement(divided_word(d), tuple(e))


def f_image(top, col) -> FreeVector:
    """Image of top/col under the lower map into D_{a-1} (x) Lambda^{b+1}.

    This map is injective on the hook Weyl module, so it is an independent
    oracle for straightening.
    """
    norm = normalize_exterior(col)
    if norm is None:
        return FreeVector()
    sign, c = norm
    return lower_map(SkewElement(top, c)) * sign


def random_tableau(rng, r_max=7):
    r = rng.randint(2, r_max)
    b = rng.randint(0, r - 1)
    n = rng.randint(1, r)
    letters = [rng.randint(1, n) for _ in range(r)]
    return divided_word(letters[: r - b]), tuple(letters[r - b:])


def test_render():
    assert render(W([1, 1], [2, 3])) == "1^(2)/23"
    assert render(S([1, 1, 2, 3], [4, 5])) == "1^(2)23 ⊗ 45"
    assert render(S([12], [])) == "(12) ⊗ ∅"


def test_normalize_exterior():
    assert normalize_exterior((3, 1, 2)) == (1, (1, 2, 3))
    assert normalize_exterior((2, 1)) == (-1, (1, 2))
    assert normalize_exterior((1, 2, 1)) is None


def brute_skew_count(mu, l):
    # choose which letters go to the exterior part: one copy of each chosen letter
    letters = [j for j, x in enumerate(mu) if x > 0]
    return sum(1 for e in itertools.combinations(letters, l))


@pytest.mark.parametrize("m,l", [(3, 0), (2, 2), (1, 3), (3, 2), (0, 3)])
def test_skew_basis_size(m, l):
    for n in range(1, 5):
        for mu in itertools.product(range(m + l + 1), repeat=n):
            if sum(mu) != m + l:
                continue
            basis = skew_weight_basis(mu, m, l)
            assert len(basis) == brute_skew_count(mu, l)
            for x in basis:
                assert content(x.d, x.e, n) == mu


def brute_hook_count(r, a, b):
    """Standard hook tableaux of weight (1^r), by direct enumeration of fillings."""
    count = 0
    for col in itertools.combinations(range(1, r + 1), b):
        top = [x for x in range(1, r + 1) if x not in col]
        if len(top) == a and (not col or min(top) < min(col)):
            count += 1
    return count


@pytest.mark.parametrize("r", range(1, 10))
def test_hook_multiplicity_of_weight_one(r):
    for b in range(0, r):
        h = Hook(r - b, b)
        got = len(weyl_weight_basis((1,) * r, h))
        assert got == brute_hook_count(r, r - b, b) == binomial(r - 1, b)


def test_hook_dimension_formula():
    # the rank of Delta(a,1^b) over GL_n is C(a+n-1, a+b) C(a+b-1, b) (hook content formula)
    for a in range(1, 4):
        for b in range(0, 3):
            for n in range(b + 1, b + 3):
                total = sum(len(weyl_weight_basis(mu, Hook(a, b)))
                            for mu in itertools.product(range(a + b + 1), repeat=n)
                            if sum(mu) == a + b)
                assert total == binomial(a + n - 1, a + b) * binomial(a + b - 1, b)


def test_straighten_examples():
    assert straighten(divided_word([1, 2]), (1, 3)) == FreeVector({W([1, 1], [2, 3]): -1})
    assert straighten(divided_word([2, 3]), (1, 4)) == FreeVector({W([1, 3], [2, 4]): -1, W([1, 2], [3, 4]): -1})
    assert straighten(divided_word([1, 2]), (3, 1)) == FreeVector({W([1, 1], [2, 3]): 1})
    assert straighten(divided_word([1, 2]), (1, 1)) == FreeVector()
    # standard input is returned unchanged
    assert straighten(divided_word([1, 2]), (2, 3)) == FreeVector({W([1, 2], [2, 3]): 1})
    # a one-letter top row and an equal letter below it
    assert straighten(divided_word([2]), (2,)) == FreeVector()


def test_straighten_properties_random(rng):
    for _ in range(500):
        top, col = random_tableau(rng)
        out = straighten(top, col)
        n = max([x for x, _ in top] + list(col))
        mu = content(top, [x for x in col], n)
        for x, c in out.items():
            assert is_standard(x.top, x.col)
            assert content(x.top, x.col, n) == mu
            assert c != 0
        again = FreeVector()
        for x, c in out.items():
            again.add(straighten(x.top, x.col), c)
        assert again == out
        rhs = FreeVector()
        for x, c in out.items():
            rhs.add(f_image(x.top, x.col), c)
        assert rhs == f_image(top, col)


def test_lower_map_injective_on_weyl_weight_spaces():
    for a in range(1, 4):
        for b in range(0, 4):
            for mu in compositions(a + b, b + 1):
                basis = weyl_weight_basis(mu, Hook(a, b))
                images = [f_image(x.top, x.col) for x in basis]
                keys = sorted({k for v in images for k in v})
                A = IntMatrix.from_dense([[v.get(k, 0) for v in images] for k in keys], ncols=len(basis))
                assert rank(A) == len(basis)


def test_theta_skew():
    M = Skew(3, 1)
    v = FreeVector({S([1, 1, 2], [3]): 1})
    assert theta(1, v, M) == FreeVector({S([1, 1, 1], [2]): 3})
    assert theta(2, v, M) == FreeVector({S([1, 1, 2], [2]): 1})
    # collision in the exterior part
    assert theta(1, FreeVector({S([3], [1, 2]): 1}), Skew(1, 2)) == FreeVector()
    # s outside 1..parts-1 is zero
    assert theta(3, v, M) == FreeVector()


def test_theta_weyl_straightens():
    M = Weyl(Hook(2, 1))
    v = FreeVector({W([2, 3], [1]): 1})
    # merging 1,2 gives 12/1; merging 2,3 gives 2*(2^(2)/1)
    assert theta(1, v, M) == straighten(divided_word([1, 2]), (1,)) == FreeVector({W([1, 1], [2]): -1})
    assert theta(2, v, M) == straighten(divided_word([2, 2]), (1,)) * 2


def test_lower_map_examples():
    assert lower_map(S([1, 1, 2], [])) == FreeVector({S([1, 2], [1]): 1, S([1, 1], [2]): 1})
    assert lower_map(S([2], [1])) == FreeVector({S([], [1, 2]): -1})
    assert lower_map(S([1], [1])) == FreeVector()


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(0, 3), st.data())
def test_lower_map_squares_to_zero(m, l, data):
    letters = data.draw(st.lists(st.integers(1, 4), min_size=m + l, max_size=m + l))
    e = tuple(sorted(set(letters[m:])))
    x = SkewElement(divided_word(letters[:m]), e)
    twice = FreeVector()
    for y, c in lower_map(x).items():
        twice.add(lower_map(y), c)
    assert twice == FreeVector()


def test_free_vector_arithmetic():
    u = FreeVector({"x": 2, "y": -1})
    v = FreeVector({"x": -2, "z": 5})
    assert u + v == FreeVector({"y": -1, "z": 5})
    assert u - u == FreeVector()
    assert 3 * u == FreeVector({"x": 6, "y": -3})
    assert -u == u * -1
    assert u * 0 == FreeVector()
