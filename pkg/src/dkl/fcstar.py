"""
Full commutativity and Kazhdan-Lusztig star operations.

    >>> from dkl.coxgroup import CoxeterSystem, from_word
    >>> D6 = CoxeterSystem("D", 6)
    >>> is_fully_commutative(from_word(D6, [1, 2, 4, 3, 4]))
    False
    >>> is_fully_commutative(from_word(D6, [1, 2, 6, 3, 5, 4]))
    True
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .badlib import BadTag, classify_bad
from .coxgroup import (
    SignedPermutation, Side, canonical_word, descents, is_commuting_product,
    length, mul_gen,
)

__all__ = [
    "StarContext", "TerminalClass", "StarReductionTrace", "is_fully_commutative",
    "star", "star_reduce", "star_contexts", "has_commutative_descents",
]


@dataclass(frozen=True)
class StarContext:
    s: int
    t: int
    side: Side = Side.Left

    def __post_init__(self):
        if self.s > self.t:
            a, b = self.t, self.s
            object.__setattr__(self, "s", a)
            object.__setattr__(self, "t", b)


def star_contexts(system, side: Side):
    """Every noncommuting pair, in ascending order."""
    gens = list(system.generators)
    return [StarContext(s, t, side) for s in gens for t in gens
            if s < t and system.m(s, t) == 3]


def _has_braid(word, system) -> bool:
    return any(a == c and system.m(a, b) == 3
               for a, b, c in zip(word, word[1:], word[2:]))


def is_fully_commutative(w: SignedPermutation) -> bool:
    """Search the commutation class of one reduced word for a factor ``sts``."""
    system = w.system
    start = canonical_word(w)
    seen = {start}
    queue = deque([start])
    while queue:
        word = queue.popleft()
        if _has_braid(word, system):
            return False
        for i in range(len(word) - 1):
            a, b = word[i], word[i + 1]
            if system.m(a, b) == 2:
                nxt = word[:i] + (b, a) + word[i + 2:]
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return True


def star(w: SignedPermutation, ctx: StarContext) -> Optional[SignedPermutation]:
    """The star operation on ``D_L(s,t)`` or ``D_R(s,t)``; ``None`` off the domain."""
    pair = {ctx.s, ctx.t}
    if len(descents(w, ctx.side) & pair) != 1:
        return None
    for g in (ctx.s, ctx.t):
        y = mul_gen(w, g, ctx.side)
        if len(descents(y, ctx.side) & pair) == 1:
            return y
    raise AssertionError("star operation has no image")


def has_commutative_descents(w: SignedPermutation) -> bool:
    system = w.system
    for side in (Side.Left, Side.Right):
        des = sorted(descents(w, side))
        if any(not system.commutes(a, b) for i, a in enumerate(des) for b in des[i + 1:]):
            return False
    return True


class TerminalClass(Enum):
    CommutingProduct = "CommutingProduct"
    Bad = "Bad"
    NoncommutativeDescent = "NoncommutativeDescent"


@dataclass(frozen=True)
class StarReductionTrace:
    start: SignedPermutation
    steps: tuple[tuple[SignedPermutation, StarContext], ...] = field(default=())
    tag: TerminalClass = TerminalClass.CommutingProduct

    @property
    def end(self) -> SignedPermutation:
        return self.steps[-1][0] if self.steps else self.start


def _terminal(w: SignedPermutation) -> Optional[TerminalClass]:
    if is_commuting_product(w):
        return TerminalClass.CommutingProduct
    if not has_commutative_descents(w):
        return TerminalClass.NoncommutativeDescent
    if w.system.family == "D" and classify_bad(w).tag is BadTag.Bad:
        return TerminalClass.Bad
    return None


def star_reduce(w: SignedPermutation) -> StarReductionTrace:
    """Apply length-decreasing star operations until a terminal class is hit.

    Left pairs are tried before right pairs, each in ascending order.
    """
    contexts = (star_contexts(w.system, Side.Left)
                + star_contexts(w.system, Side.Right))
    steps = []
    cur = w
    while (tag := _terminal(cur)) is None:
        lc = length(cur)
        for ctx in contexts:
            y = star(cur, ctx)
            if y is not None and length(y) == lc - 1:
                steps.append((y, ctx))
                cur = y
                break
        else:
            raise AssertionError(f"{cur} admits no length-decreasing star move")
    return StarReductionTrace(w, tuple(steps), tag)
