import itertools
import random

import pytest

from weylext.zlinalg import IntMatrix


def brute_compositions(total, length):
    return [c for c in itertools.product(range(1, total + 1), repeat=length) if sum(c) == total]


def random_unimodular(rng: random.Random, n: int, steps: int = 12) -> IntMatrix:
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            rows[i] = [-x for x in rows[i]]
            continue
        q = rng.randint(-3, 3)
        rows[i] = [x + q * y for x, y in zip(rows[i], rows[j])]
        if rng.random() < 0.3:
            rows[i], rows[j] = rows[j], rows[i]
    return IntMatrix.from_dense(rows, ncols=n)


@pytest.fixture
def rng():
    return random.Random(20261016)
