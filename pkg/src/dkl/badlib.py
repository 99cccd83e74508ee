"""
Bad and weakly bad elements of W(D_n) and the special elements x_n, v_n, u_n.

An element is *weakly bad* when no reduced word begins or ends with two
noncommuting generators; it is *bad* when in addition it is not a product
of commuting generators. Detection works directly on the window::

    >>> D4 = CoxeterSystem("D", 4)
    >>> classify_bad(build_wn(D4, 4))
    BadClassification(tag=<BadTag.Bad: 'Bad'>, m=4, u=())
    >>> classify_bad(from_word(D4, [1, 2, 4])).tag
    <BadTag.WeaklyBadCommuting: 'WeaklyBadCommuting'>
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .coxgroup import (
    CoxeterSystem, SignedPermutation, Side, Word, _inverse, canonical_word,
    compose, expand_intervals, from_word, is_commuting_product, length,
    mul_gen,
)

__all__ = [
    "BadTag", "BadClassification", "SpecialElements", "ends_in_noncommuting",
    "classify_bad", "build_wn", "wn_length", "wn_intervals", "wn_reduced_word",
    "x_n", "v_n", "u_n", "special_elements", "enumerate_bad",
]


class BadTag(Enum):
    NotBad = "NotBad"
    WeaklyBadCommuting = "WeaklyBadCommuting"
    Bad = "Bad"


@dataclass(frozen=True)
class BadClassification:
    tag: BadTag
    m: Optional[int] = None
    u: Word = ()


def _require_d(system: CoxeterSystem):
    if system.family != "D":
        raise ValueError("bad elements are only defined here for type D")


def _window_ends_noncommuting(win) -> bool:
    for a, b, c in zip(win, win[1:], win[2:]):
        # consecutive 321, 231 or 312
        if (a > b > c) or (b > a > c) or (a > c > b):
            return True
    return -win[0] > win[2]


def ends_in_noncommuting(w: SignedPermutation, side: Side = Side.Right) -> bool:
    """Whether some reduced word of ``w`` ends (Right) or begins (Left)
    with two noncommuting generators."""
    _require_d(w.system)
    win = w.window if side is Side.Right else _inverse(w.window)
    return _window_ends_noncommuting(win)


def classify_bad(w: SignedPermutation) -> BadClassification:
    _require_d(w.system)
    if ends_in_noncommuting(w, Side.Right) or ends_in_noncommuting(w, Side.Left):
        return BadClassification(BadTag.NotBad)
    if is_commuting_product(w):
        return BadClassification(BadTag.WeaklyBadCommuting)
    # w = w_m u where m is the last position holding a negative entry
    m = max(i for i, x in enumerate(w.window, 1) if x < 0)
    wm = build_wn(w.system, m)
    u = canonical_word(compose(wm, w))  # w_m is an involution
    if length(w) != length(wm) + len(u) or any(s < m + 2 for s in u):
        raise AssertionError(f"unexpected bad element shape {w}")
    return BadClassification(BadTag.Bad, m, u)


def build_wn(system: CoxeterSystem, m: int) -> SignedPermutation:
    """The window of ``w_m`` inside ``D_n`` (odd ``m`` gives ``w_{m-1}``)."""
    _require_d(system)
    n = system.n
    if not 4 <= m <= n:
        raise ValueError(f"need 4 <= m <= {n}, got {m}")
    if m % 2:
        m -= 1
    win = list(range(1, n + 1))
    win[0] = (-1) ** (m // 2)
    for i in range(2, m + 1):
        win[i - 1] = i if i % 2 else -(m + 2 - i)
    return SignedPermutation(tuple(win), system)


def wn_length(n: int) -> int:
    if n < 4:
        raise ValueError("n must be at least 4")
    if n % 2:
        n -= 1
    return (3 * n * n + 2 * n) // 8


def wn_intervals(n: int) -> list[tuple[int, int]]:
    """The bracket list of the reduced word of ``w_n``."""
    if n < 4:
        raise ValueError("n must be at least 4")
    if n % 2:
        n -= 1
    k = max(n // 2 - 2, 0)
    pairs = [(i, 0) for i in range(2, n + 1, 2)]
    pairs += [(n - k + t, n - 2 * k + 2 * t) for t in range(k + 1)]
    return pairs


def wn_reduced_word(n: int) -> Word:
    return expand_intervals(wn_intervals(n))


def x_n(system: CoxeterSystem) -> SignedPermutation:
    """``s_1 s_2 s_4 s_6 ...`` up to the largest even index."""
    _require_d(system)
    top = system.n - system.n % 2
    return from_word(system, (1,) + tuple(range(2, top + 1, 2)))


def v_n(system: CoxeterSystem) -> SignedPermutation:
    """``s_n s_{n-1} s_n w_{n-2}`` for even ``n >= 6``."""
    n = system.n
    if n % 2 or n < 6:
        raise ValueError("v_n needs even n >= 6")
    w = build_wn(system, n - 2)
    for s in (n, n - 1, n):
        w = mul_gen(w, s, Side.Left)
    return w


def u_n(system: CoxeterSystem) -> SignedPermutation:
    """``w_{n-4} s_n s_{n-1} s_n`` for even ``n >= 8``."""
    n = system.n
    if n % 2 or n < 8:
        raise ValueError("u_n needs even n >= 8")
    w = build_wn(system, n - 4)
    for s in (n, n - 1, n):
        w = mul_gen(w, s, Side.Right)
    return w


@dataclass(frozen=True)
class SpecialElements:
    w_n: SignedPermutation
    x_n: SignedPermutation
    v_n: Optional[SignedPermutation]
    u_n: Optional[SignedPermutation]


def special_elements(n: int) -> SpecialElements:
    if n % 2 or n < 4:
        raise ValueError("special elements need even n >= 4")
    D = CoxeterSystem("D", n)
    return SpecialElements(
        build_wn(D, n), x_n(D),
        v_n(D) if n >= 6 else None,
        u_n(D) if n >= 8 else None,
    )


def _commuting_subsets(gens: list[int]):
    # indices >= 3 commute exactly when they are not adjacent
    for r in range(len(gens) + 1):
        for sub in itertools.combinations(gens, r):
            if all(b - a >= 2 for a, b in zip(sub, sub[1:])):
                yield sub


def enumerate_bad(system: CoxeterSystem) -> list[SignedPermutation]:
    """All bad elements, generated from the classification ``w_k u``."""
    _require_d(system)
    n = system.n
    found = set()
    for k in range(4, n + 1, 2):
        wk = build_wn(system, k)
        for sub in _commuting_subsets(list(range(k + 2, n + 1))):
            found.add(compose(wk, from_word(system, sub)))
    return sorted(found, key=lambda w: w.window)
