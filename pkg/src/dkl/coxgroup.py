"""
Coxeter groups of types A and D realized as (signed) permutations.

Elements are stored in window notation ``(w(1), ..., w(n))``. For type D
the generators act as follows (right multiplication acts on positions,
left multiplication on values)::

    s_1      swaps positions 1 and 2 and negates both
    s_i      swaps positions i-1 and i        (i >= 2)

so that ``s_1 s_2 s_4 s_3 s_1 s_2 s_4`` is the window ``(1,-4,3,-2)``::

    >>> D4 = CoxeterSystem("D", 4)
    >>> from_word(D4, [1, 2, 4, 3, 1, 2, 4])
    SignedPermutation(D4: 1,-4,3,-2)
    >>> length(_)
    7

Type A_{n-1} uses ordinary permutations of ``{1..n}`` with s_i = (i, i+1).
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from enum import Enum
from functools import cache
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Side", "CoxeterSystem", "SignedPermutation", "Word",
    "identity", "mul_gen", "from_word", "length", "descents", "inverse",
    "canonical_word", "bruhat_leq", "parabolic_decompose", "expand_interval",
    "expand_intervals", "iota_embed", "compose", "parse_window", "parse_word",
    "parse_intervals", "format_window", "format_word", "parse_group",
    "is_commuting_product", "longest_element",
]

Word = tuple[int, ...]


class Side(Enum):
    Left = "L"
    Right = "R"


@dataclass(frozen=True, order=True)
class CoxeterSystem:
    """A Coxeter system of type ``A_rank`` or ``D_rank``."""

    family: str
    rank: int

    def __post_init__(self):
        if self.family not in ("A", "D"):
            raise ValueError(f"unsupported family {self.family!r}")
        if self.family == "D" and self.rank < 4:
            raise ValueError("type D requires rank >= 4")
        if self.family == "A" and self.rank < 1:
            raise ValueError("type A requires rank >= 1")

    def __str__(self):
        return f"{self.family}{self.rank}"

    @property
    def n(self) -> int:
        """Size of the window."""
        return self.rank + 1 if self.family == "A" else self.rank

    @property
    def generators(self) -> range:
        return range(1, self.rank + 1)

    def m(self, s: int, t: int) -> int:
        """Order of ``s t``."""
        self.check_generator(s)
        self.check_generator(t)
        if s == t:
            return 1
        a, b = min(s, t), max(s, t)
        if self.family == "D":
            if a == 1:
                return 3 if b == 3 else 2
            return 3 if b == a + 1 else 2
        return 3 if b == a + 1 else 2

    def commutes(self, s: int, t: int) -> bool:
        return self.m(s, t) <= 2

    def check_generator(self, i: int) -> None:
        if not isinstance(i, int) or not 1 <= i <= self.rank:
            raise ValueError(f"invalid generator index {i!r} for {self}")

    def order(self) -> int:
        f = 1
        for k in range(2, self.n + 1):
            f *= k
        return f if self.family == "A" else f * 2 ** (self.n - 1)

    def elements(self) -> Iterator["SignedPermutation"]:
        """All elements, in lexicographic window order."""
        n = self.n
        if self.family == "A":
            for p in itertools.permutations(range(1, n + 1)):
                yield SignedPermutation(p, self)
            return
        signs = [sg for sg in itertools.product((-1, 1), repeat=n)
                 if sg.count(-1) % 2 == 0]
        out = []
        for p in itertools.permutations(range(1, n + 1)):
            for sg in signs:
                out.append(tuple(a * b for a, b in zip(p, sg)))
        for win in sorted(out):
            yield SignedPermutation(win, self)


@dataclass(frozen=True, order=True)
class SignedPermutation:
    window: tuple[int, ...]
    system: CoxeterSystem = field(compare=True)

    def __post_init__(self):
        win = tuple(int(x) for x in self.window)
        object.__setattr__(self, "window", win)
        n = self.system.n
        if len(win) != n or sorted(abs(x) for x in win) != list(range(1, n + 1)):
            raise ValueError(f"{win} is not a window for {self.system}")
        neg = sum(1 for x in win if x < 0)
        if self.system.family == "A" and neg:
            raise ValueError("type A windows are unsigned")
        if self.system.family == "D" and neg % 2:
            raise ValueError(f"{win} has an odd number of sign changes")

    def __repr__(self):
        return f"SignedPermutation({self.system}: {format_window(self)})"

    def __str__(self):
        return format_window(self)

    def __call__(self, i: int) -> int:
        """``w(i)`` for ``i`` in ``±{1..n}``."""
        return self.window[i - 1] if i > 0 else -self.window[-i - 1]

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        return compose(self, other)


def identity(system: CoxeterSystem) -> SignedPermutation:
    return SignedPermutation(tuple(range(1, system.n + 1)), system)


# -- raw window kernels (no validation) --------------------------------------

def _right_gen(win: tuple, i: int, family: str) -> tuple:
    w = list(win)
    if family == "A":
        w[i - 1], w[i] = w[i], w[i - 1]
    elif i == 1:
        w[0], w[1] = -w[1], -w[0]
    else:
        w[i - 2], w[i - 1] = w[i - 1], w[i - 2]
    return tuple(w)


def _left_gen(win: tuple, i: int, family: str) -> tuple:
    if family == "A":
        a, b = i, i + 1
        return tuple(b if x == a else a if x == b else x for x in win)
    if i == 1:
        swap = {1: -2, 2: -1, -1: 2, -2: 1}
        return tuple(swap.get(x, x) for x in win)
    a, b = i - 1, i
    out = []
    for x in win:
        y = abs(x)
        if y == a:
            out.append(b if x > 0 else -b)
        elif y == b:
            out.append(a if x > 0 else -a)
        else:
            out.append(x)
    return tuple(out)


def _inverse(win: tuple) -> tuple:
    inv = [0] * len(win)
    for i, x in enumerate(win, 1):
        inv[abs(x) - 1] = i if x > 0 else -i
    return tuple(inv)


def _length(win: tuple, family: str) -> int:
    n = len(win)
    total = 0
    for i in range(n):
        a = win[i]
        for j in range(i + 1, n):
            b = win[j]
            if a > b:
                total += 1
            if family == "D" and a + b < 0:
                total += 1
    return total


def _right_descents(win: tuple, family: str) -> frozenset:
    n = len(win)
    if family == "A":
        return frozenset(i for i in range(1, n) if win[i - 1] > win[i])
    des = {i for i in range(2, n + 1) if win[i - 2] > win[i - 1]}
    if -win[1] > win[0]:
        des.add(1)
    return frozenset(des)


# -- public operations --------------------------------------------------------

def mul_gen(w: SignedPermutation, i: int, side: Side = Side.Right) -> SignedPermutation:
    """Multiply ``w`` by the generator ``s_i`` on the given side."""
    sys_ = w.system
    sys_.check_generator(i)
    if side is Side.Right:
        return SignedPermutation(_right_gen(w.window, i, sys_.family), sys_)
    return SignedPermutation(_left_gen(w.window, i, sys_.family), sys_)


def from_word(system: CoxeterSystem, word: Iterable[int]) -> SignedPermutation:
    win = tuple(range(1, system.n + 1))
    for i in word:
        system.check_generator(i)
        win = _right_gen(win, i, system.family)
    return SignedPermutation(win, system)


def compose(x: SignedPermutation, y: SignedPermutation) -> SignedPermutation:
    """The product ``x y`` (apply ``y`` first, as maps of ``±{1..n}``)."""
    if x.system != y.system:
        raise ValueError("elements belong to different systems")
    return SignedPermutation(tuple(x(v) for v in y.window), x.system)


def length(w: SignedPermutation) -> int:
    return _length(w.window, w.system.family)


def inverse(w: SignedPermutation) -> SignedPermutation:
    return SignedPermutation(_inverse(w.window), w.system)


def descents(w: SignedPermutation, side: Side = Side.Right) -> frozenset[int]:
    win = w.window if side is Side.Right else _inverse(w.window)
    return _right_descents(win, w.system.family)


def canonical_word(w: SignedPermutation) -> Word:
    """Reduced word obtained by stripping the smallest right descent."""
    fam = w.system.family
    win = w.window
    letters = []
    while True:
        des = _right_descents(win, fam)
        if not des:
            break
        s = min(des)
        letters.append(s)
        win = _right_gen(win, s, fam)
    return tuple(reversed(letters))


def longest_element(system: CoxeterSystem) -> SignedPermutation:
    n = system.n
    if system.family == "A":
        return SignedPermutation(tuple(range(n, 0, -1)), system)
    win = [-i for i in range(1, n + 1)]
    if n % 2:
        win[0] = 1
    return SignedPermutation(tuple(win), system)


def is_commuting_product(w: SignedPermutation) -> bool:
    """True if ``w`` is a product of distinct, pairwise commuting generators."""
    word = canonical_word(w)
    if len(set(word)) != len(word):
        return False
    return all(w.system.commutes(a, b) for a, b in itertools.combinations(word, 2))


@cache
def _bruhat(x: tuple, w: tuple, family: str) -> bool:
    lx, lw = _length(x, family), _length(w, family)
    if lx > lw:
        return False
    if lx == lw:
        return x == w
    if lx == 0:
        return True
    s = min(_right_descents(_inverse(w), family))
    sw = _left_gen(w, s, family)
    if s in _right_descents(_inverse(x), family):
        return _bruhat(_left_gen(x, s, family), sw, family)
    return _bruhat(x, sw, family)


def bruhat_leq(x: SignedPermutation, w: SignedPermutation) -> bool:
    """Bruhat order test by the descent lifting recursion."""
    if x.system != w.system:
        raise ValueError("elements belong to different systems")
    return _bruhat(x.window, w.window, w.system.family)


def parabolic_decompose(w: SignedPermutation, I: Iterable[int]):
    """Return ``(w^I, w_I)`` with ``w = w^I w_I`` and ``w^I`` minimal in ``w W_I``."""
    I = frozenset(I)
    for i in I:
        w.system.check_generator(i)
    fam = w.system.family
    win = w.window
    tail = []
    while True:
        hit = sorted(_right_descents(win, fam) & I)
        if not hit:
            break
        tail.append(hit[0])
        win = _right_gen(win, hit[0], fam)
    head = SignedPermutation(win, w.system)
    return head, from_word(w.system, reversed(tail))


def iota_embed(w: SignedPermutation) -> SignedPermutation:
    """Embed ``A_{n-1}`` into ``D_n`` (``s_i -> s_{i+1}``)."""
    if w.system.family != "A":
        raise ValueError("iota_embed expects a type A element")
    return SignedPermutation(w.window, CoxeterSystem("D", w.system.n))


# -- interval notation --------------------------------------------------------

def expand_interval(a: int, b: int) -> Word:
    """Expand one bracket ``[a,b]`` of interval notation into a word.

    >>> expand_interval(1, 4), expand_interval(0, 3), expand_interval(4, 0)
    ((1, 3, 4), (1, 2, 3), (4, 3, 2, 1))
    """
    if a < 0 or b < 0:
        raise ValueError(f"[{a},{b}]: negative interval forms are unsupported")
    if a > b:
        return tuple(reversed(expand_interval(b, a)))
    if a == b:
        if a < 1:
            raise ValueError(f"[{a},{b}] is not a legal interval")
        return (a,)
    if a >= 2:
        return tuple(range(a, b + 1))
    if a == 1 and b >= 3:
        return (1,) + tuple(range(3, b + 1))
    if a == 0 and b >= 2:
        return tuple(range(1, b + 1))
    raise ValueError(f"[{a},{b}] is not a legal interval")


def expand_intervals(pairs: Iterable[tuple[int, int]]) -> Word:
    return tuple(itertools.chain.from_iterable(expand_interval(a, b) for a, b in pairs))


# -- text formats -------------------------------------------------------------

_GROUP_RE = re.compile(r"^\s*([ADad])\s*(\d+)\s*$")


def parse_group(text: str) -> CoxeterSystem:
    m = _GROUP_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse group {text!r} (expected e.g. D6 or A3)")
    return CoxeterSystem(m.group(1).upper(), int(m.group(2)))


def format_window(w: SignedPermutation) -> str:
    return ",".join(str(x) for x in w.window)


def parse_window(system: CoxeterSystem, text: str) -> SignedPermutation:
    parts = [p for p in re.split(r"[,\s]+", text.strip().strip("()")) if p]
    try:
        return SignedPermutation(tuple(int(p) for p in parts), system)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"cannot parse window {text!r}: {exc}") from None


def format_word(word: Sequence[int]) -> str:
    return " ".join(f"s{i}" for i in word)


def parse_word(text: str) -> Word:
    tokens = re.findall(r"\S+", text.replace(",", " "))
    out = []
    for tok in tokens:
        m = re.fullmatch(r"[sS]?(\d+)", tok)
        if not m:
            raise ValueError(f"cannot parse word letter {tok!r}")
        out.append(int(m.group(1)))
    return tuple(out)


def parse_intervals(text: str) -> list[tuple[int, int]]:
    compact = re.sub(r"\s+", "", text)
    pairs = re.findall(r"\[(-?\d+),(-?\d+)\]", compact)
    if not pairs or "".join(f"[{a},{b}]" for a, b in pairs) != compact:
        raise ValueError(f"cannot parse interval notation {text!r}")
    return [(int(a), int(b)) for a, b in pairs]
