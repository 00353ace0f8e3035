"""Weight-space bases of D_m (x) Lambda^l and of hook Weyl modules.

Letters are the integers 1..n.  A divided word is a tuple of
``(letter, exponent)`` pairs with strictly increasing letters; an exterior
word is a strictly increasing tuple of letters.  Basis vectors of a weight
space are sorted by their flattened letter sequence (divided part expanded,
then the exterior or column part).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence, Union

from .combinatorics import Hook, binomial


class StraighteningError(RuntimeError):
    """Raised when the straightening recursion runs out of fuel."""


class FreeVector(dict):
    """A finite integer combination of hashable labels; zeros are dropped."""

    def add_term(self, key, coeff: int) -> None:
        if not coeff:
            return
        new = self.get(key, 0) + coeff
        if new:
            self[key] = new
        else:
            del self[key]

    def add(self, other, scale: int = 1) -> "FreeVector":
        for key, coeff in other.items():
            self.add_term(key, scale * coeff)
        return self

    def __add__(self, other):
        return FreeVector(self).add(other)

    def __sub__(self, other):
        return FreeVector(self).add(other, -1)

    def __mul__(self, scale: int):
        if not scale:
            return FreeVector()
        return FreeVector({k: scale * v for k, v in self.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1


class SkewElement(NamedTuple):
    """Basis vector d (x) e of D_m (x) Lambda^l."""

    d: tuple
    e: tuple


class WeylElement(NamedTuple):
    """Basis vector top/col of a hook Weyl module (standard when top < col)."""

    top: tuple
    col: tuple


# -- words -------------------------------------------------------------------

def divided_word(letters: Iterable[int]) -> tuple:
    counts: dict = {}
    for x in letters:
        counts[x] = counts.get(x, 0) + 1
    return tuple(sorted(counts.items()))


def expand(d: tuple) -> tuple:
    return tuple(x for x, c in d for _ in range(c))


def word_degree(d: tuple) -> int:
    return sum(c for _, c in d)


def normalize_exterior(letters: Sequence[int]):
    """Sort an exterior monomial.

    Returns ``(sign, word)`` or ``None`` when a letter repeats (the
    monomial is zero).
    """
    letters = tuple(letters)
    if len(set(letters)) != len(letters):
        return None
    inversions = sum(
        1
        for p in range(len(letters))
        for q in range(p + 1, len(letters))
        if letters[p] > letters[q]
    )
    return (-1 if inversions % 2 else 1), tuple(sorted(letters))


def content(d: tuple, e: Sequence[int], length: int) -> tuple:
    mult = [0] * length
    for x, c in d:
        mult[x - 1] += c
    for x in e:
        mult[x - 1] += 1
    return tuple(mult)


def _flat(elem) -> tuple:
    return expand(elem[0]) + tuple(elem[1])


def render_divided(d: tuple) -> str:
    if not d:
        return "∅"
    out = []
    for x, c in d:
        s = str(x) if x < 10 else f"({x})"
        out.append(s if c == 1 else f"{s}^({c})")
    return "".join(out)


def render_exterior(e: Sequence[int]) -> str:
    if not e:
        return "∅"
    return "".join(str(x) if x < 10 else f"({x})" for x in e)


def render(elem) -> str:
    """Text form of a basis vector, e.g. ``1^(2)23 ⊗ 45`` or ``1^(2)/23``."""
    if isinstance(elem, WeylElement):
        return f"{render_divided(elem.top)}/{render_exterior(elem.col)}"
    return f"{render_divided(elem.d)} ⊗ {render_exterior(elem.e)}"


# -- weight bases ------------------------------------------------------------

def _splittings(mu: tuple, l: int):
    """Pairs (divided word, exterior word) of total content mu, |e| = l."""
    letters = [j + 1 for j, x in enumerate(mu) if x > 0]
    for e in combinations(letters, l):
        mult = list(mu)
        for x in e:
            mult[x - 1] -= 1
        d = tuple((j + 1, c) for j, c in enumerate(mult) if c > 0)
        yield d, e


@lru_cache(maxsize=None)
def _skew_basis(mu: tuple, m: int, l: int) -> tuple:
    out = [SkewElement(d, e) for d, e in _splittings(mu, l)]
    return tuple(sorted(out, key=_flat))


def skew_weight_basis(mu: Sequence[int], m: int, l: int) -> list:
    mu = tuple(mu)
    if sum(mu) != m + l or m < 0 or l < 0:
        raise ValueError(f"weight {mu} does not have degree {m}+{l}")
    return list(_skew_basis(mu, m, l))


@lru_cache(maxsize=None)
def _weyl_basis(mu: tuple, a: int, b: int) -> tuple:
    out = []
    for d, e in _splittings(mu, b):
        if not d:
            continue
        if e and d[0][0] >= e[0]:
            continue
        out.append(WeylElement(d, e))
    return tuple(sorted(out, key=_flat))


def weyl_weight_basis(mu: Sequence[int], h: Hook) -> list:
    mu = tuple(mu)
    if sum(mu) != h.degree:
        raise ValueError(f"weight {mu} does not have degree {h.degree}")
    return list(_weyl_basis(mu, h.a, h.b))


# -- straightening -----------------------------------------------------------

def is_standard(top: tuple, col: tuple) -> bool:
    return bool(top) and (not col or top[0][0] < col[0])


def _bump(top: tuple, letter: int, delta: int) -> tuple:
    counts = dict(top)
    counts[letter] = counts.get(letter, 0) + delta
    return tuple(sorted((x, c) for x, c in counts.items() if c))


def _rewrite(top: tuple, col: tuple):
    """One application of the hook straightening rule (col sorted, col[0] <= top[0])."""
    j1, rest = col[0], col[1:]
    i1 = top[0][0]
    if j1 == i1:
        for i_s, _ in top[1:]:
            yield -1, _bump(_bump(top, i1, 1), i_s, -1), (i_s,) + rest
    else:
        for i_s, _ in top:
            yield -1, _bump(_bump(top, j1, 1), i_s, -1), (i_s,) + rest


@lru_cache(maxsize=None)
def _straighten_sorted(top: tuple, col: tuple) -> tuple:
    fuel = 4 ** (word_degree(top) + len(col))
    result = FreeVector()
    pending = FreeVector({(top, col): 1})
    steps = 0
    while pending:
        (t, c), coeff = pending.popitem()
        if is_standard(t, c):
            result.add_term(WeylElement(t, c), coeff)
            continue
        steps += 1
        if steps > fuel:
            raise StraighteningError(f"no normal form for {render_divided(top)}/{col}")
        for k, t2, c2 in _rewrite(t, c):
            norm = normalize_exterior(c2)
            if norm is None:
                continue
            sign, c2 = norm
            pending.add_term((t2, c2), k * sign * coeff)
    return tuple(result.items())


def straighten(top: tuple, col: Sequence[int]) -> FreeVector:
    """Expand top/col in the standard basis of the hook Weyl module."""
    norm = normalize_exterior(col)
    if norm is None:
        return FreeVector()
    sign, col = norm
    return FreeVector(_straighten_sorted(tuple(top), col)) * sign


# -- letter merges -----------------------------------------------------------

def merge_divided(d: tuple, s: int):
    """Replace letters j > s by j - 1; returns (coefficient, word)."""
    coeff = 1
    out: dict = {}
    for x, c in d:
        y = x if x <= s else x - 1
        if y in out:
            coeff *= binomial(out[y] + c, c)
            out[y] += c
        else:
            out[y] = c
    return coeff, tuple(sorted(out.items()))


def merge_exterior(e: tuple, s: int):
    if s in e and s + 1 in e:
        return None
    return tuple(x if x <= s else x - 1 for x in e)


@dataclass(frozen=True)
class Skew:
    """The coefficient module D_m (x) Lambda^l."""

    m: int
    l: int

    def __post_init__(self):
        if self.m < 0 or self.l < 0:
            raise ValueError(f"invalid skew module D_{self.m} ⊗ Λ^{self.l}")

    @property
    def degree(self) -> int:
        return self.m + self.l

    @property
    def descriptor(self) -> str:
        return f"D{self.m}L{self.l}"

    def __str__(self):
        return f"D_{self.m}⊗Λ^{self.l}"

    def weight_basis(self, mu) -> list:
        return skew_weight_basis(mu, self.m, self.l)

    def theta_element(self, s: int, x: SkewElement) -> FreeVector:
        e = merge_exterior(x.e, s)
        if e is None:
            return FreeVector()
        coeff, d = merge_divided(x.d, s)
        return FreeVector({SkewElement(d, e): coeff})


@dataclass(frozen=True)
class Weyl:
    """The hook Weyl module Delta(hook)."""

    hook: Hook

    @property
    def degree(self) -> int:
        return self.hook.degree

    @property
    def descriptor(self) -> str:
        return f"W{self.hook.a}x{self.hook.b}"

    def __str__(self):
        return f"Δ{self.hook}"

    def weight_basis(self, mu) -> list:
        return weyl_weight_basis(mu, self.hook)

    def theta_element(self, s: int, x: WeylElement) -> FreeVector:
        col = merge_exterior(x.col, s)
        if col is None:
            return FreeVector()
        coeff, top = merge_divided(x.top, s)
        return straighten(top, col) * coeff


CoefficientModule = Union[Skew, Weyl]


def _max_letter(elem) -> int:
    first, second = elem
    return max([x for x, _ in first] + list(second), default=0)


def theta(s: int, v, module: CoefficientModule, parts: int | None = None) -> FreeVector:
    """Merge letters s and s+1 in a homogeneous weight vector.

    ``parts`` is the number of parts of the weight of ``v``; by default it
    is read off the largest letter occurring in ``v``.
    """
    out = FreeVector()
    if not v:
        return out
    if parts is None:
        parts = max(_max_letter(x) for x in v)
    if s < 1 or s >= parts:
        return out
    for x, coeff in v.items():
        out.add(module.theta_element(s, x), coeff)
    return out


def lower_map(x: SkewElement) -> FreeVector:
    """Comultiply one letter out of the divided part and wedge it in front."""
    out = FreeVector()
    for letter, _ in x.d:
        norm = normalize_exterior((letter,) + tuple(x.e))
        if norm is None:
            continue
        sign, e = norm
        out.add_term(SkewElement(_bump(x.d, letter, -1), e), sign)
    return out


def lower_vector(v) -> FreeVector:
    out = FreeVector()
    for x, coeff in v.items():
        out.add(lower_map(x), coeff)
    return out
