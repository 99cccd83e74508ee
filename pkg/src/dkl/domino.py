"""
Domino tableaux for W(D_n): insertion, cycles and cycle moves.

Squares are ``(row, column)`` pairs, 1-based. A square is *fixed* when
``row + column`` is even. ``tableau(w, Side.Left)`` inserts, for
``j = 1..n``, the label ``|w^-1(j)|`` as a horizontal (sign +) or vertical
(sign -) domino::

    >>> from dkl.badlib import build_wn
    >>> T = tableau(build_wn(CoxeterSystem("D", 4), 4), Side.Left)
    >>> print(T.render())
    1 1 3 3
    2 4
    2 4
    >>> [(sorted(c.labels), c.is_open) for c in cycles(T)]
    [([1, 2, 3], True), ([4], True)]
"""
from __future__ import annotations

import json
import os
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence, Union

from .coxgroup import CoxeterSystem, SignedPermutation, Side, inverse, length
from .klpoly import CellKind, CellPartition, _sorted_blocks

__all__ = [
    "Square", "Domino", "DominoTableau", "Cycle", "INF", "rho", "kappa",
    "shuffle_A", "alpha_insert", "delta", "tableau", "p_prime", "cycles",
    "move_through", "orbit", "canonical_form", "equivalent", "tableau_cells",
]

Square = tuple[int, int]
Domino = tuple[Square, Square]

INF = float("inf")


def _domino(a: Square, b: Square) -> Domino:
    a, b = tuple(a), tuple(b)
    if abs(a[0] - b[0]) + abs(a[1] - b[1]) != 1:
        raise ValueError(f"{a} and {b} are not adjacent")
    if min(a + b) < 1:
        raise ValueError("dominoes live in rows and columns >= 1")
    return (a, b) if a <= b else (b, a)


def is_fixed(sq: Square) -> bool:
    return (sq[0] + sq[1]) % 2 == 0


class DominoTableau:
    """Immutable labelled domino tiling of a Young diagram."""

    __slots__ = ("_dom", "_grid", "_key")

    def __init__(self, dominoes: Mapping[int, Iterable[Square]] = None):
        dom = {}
        grid = {}
        for k, sqs in (dominoes or {}).items():
            a, b = list(sqs)
            d = _domino(a, b)
            for sq in d:
                if sq in grid:
                    raise ValueError(f"square {sq} is covered twice")
                grid[sq] = k
            dom[int(k)] = d
        self._dom = dom
        self._grid = grid
        self._key = tuple(sorted(dom.items()))

    # -- basic access ---------------------------------------------------------

    @property
    def labels(self) -> list[int]:
        return sorted(self._dom)

    def position(self, k: int) -> Domino:
        """``P(T, k)``."""
        try:
            return self._dom[k]
        except KeyError:
            raise KeyError(f"label {k} is not in the tableau") from None

    def squares(self) -> frozenset:
        return frozenset(self._grid)

    def label_at(self, sq: Square) -> Optional[int]:
        return self._grid.get(tuple(sq))

    def N(self, sq: Square):
        """Label at ``sq``; 0 on the boundary row/column, ``INF`` off the diagram."""
        i, j = sq
        if i == 0 or j == 0:
            return 0
        return self._grid.get((i, j), INF)

    def restrict(self, keep) -> "DominoTableau":
        return DominoTableau({k: d for k, d in self._dom.items() if keep(k)})

    def with_domino(self, k: int, d: Domino) -> "DominoTableau":
        if k in self._dom:
            raise ValueError(f"label {k} already present")
        out = dict(self._dom)
        out[k] = d
        return DominoTableau(out)

    def items(self):
        return list(self._key)

    def shape(self) -> tuple[int, ...]:
        rows: dict[int, int] = {}
        for i, _j in self._grid:
            rows[i] = rows.get(i, 0) + 1
        return tuple(rows[i] for i in sorted(rows))

    def __eq__(self, other):
        return isinstance(other, DominoTableau) and self._key == other._key

    def __lt__(self, other):
        return self._key < other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        body = ", ".join(f"{k}:{list(d)}" for k, d in self._key)
        return f"DominoTableau({{{body}}})"

    # -- validation / output --------------------------------------------------

    def validate(self) -> None:
        """Raise ``ValueError`` unless this is a valid domino tableau."""
        grid = self._grid
        for (i, j) in grid:
            if i > 1 and (i - 1, j) not in grid:
                raise ValueError(f"square {(i, j)} has no square above it")
            if j > 1 and (i, j - 1) not in grid:
                raise ValueError(f"square {(i, j)} has no square to its left")
        for (i, j), k in grid.items():
            for nb in ((i, j + 1), (i + 1, j)):
                k2 = grid.get(nb)
                if k2 is not None and k2 < k:
                    raise ValueError(f"labels decrease from {(i, j)} to {nb}")

    def to_json(self) -> dict:
        return {"labels": [{"k": k, "squares": [list(sq) for sq in d]}
                           for k, d in self._key]}

    @classmethod
    def from_json(cls, data) -> "DominoTableau":
        if isinstance(data, str):
            data = json.loads(data)
        return cls({int(e["k"]): [tuple(sq) for sq in e["squares"]] for e in data["labels"]})

    def render(self) -> str:
        if not self._grid:
            return "(empty)"
        width = max(len(str(k)) for k in self._dom)
        lines = []
        for i, r in enumerate(self.shape(), 1):
            lines.append(" ".join(str(self._grid[(i, j)]).rjust(width)
                                  for j in range(1, r + 1)))
        return "\n".join(lines)


def rho(J: Union[DominoTableau, Iterable[Square]], i: int) -> int:
    """Number of squares in row ``i``."""
    sqs = J.squares() if isinstance(J, DominoTableau) else J
    return sum(1 for (a, _b) in sqs if a == i)


def kappa(J: Union[DominoTableau, Iterable[Square]], j: int) -> int:
    """Number of squares in column ``j``."""
    sqs = J.squares() if isinstance(J, DominoTableau) else J
    return sum(1 for (_a, b) in sqs if b == j)


def shuffle_A(J: Union[DominoTableau, Iterable[Square]], P: Domino) -> Domino:
    """Where the domino ``P`` goes once ``J`` has grown underneath it."""
    (i, j), (i2, j2) = sorted(P)
    sqs = J.squares() if isinstance(J, DominoTableau) else frozenset(J)
    if i == i2:  # horizontal
        r0, r1 = rho(sqs, i), rho(sqs, i + 1)
        if j == r0 + 1:
            return _domino((i, j), (i, j + 1))
        if j == r0 - 1 and r1 < j:
            return _domino((i + 1, r1 + 1), (i + 1, r1 + 2))
        if j == r0 and r1 == j:
            return _domino((i, j + 1), (i + 1, j + 1))
    else:  # vertical
        c0, c1 = kappa(sqs, j), kappa(sqs, j + 1)
        if i == c0 + 1:
            return _domino((i, j), (i + 1, j))
        if i == c0 - 1 and c1 < i:
            return _domino((c1 + 1, j + 1), (c1 + 2, j + 1))
        if i == c0 and c1 == i:
            return _domino((i + 1, j), (i + 1, j + 1))
    raise ValueError(f"domino {P} is not in a shuffle configuration")


def alpha_insert(T: DominoTableau, v: int, eps: int) -> DominoTableau:
    """Insert label ``v`` (horizontal if ``eps > 0``, vertical otherwise)."""
    if v in T._dom:
        raise ValueError(f"label {v} already present")
    J = T.restrict(lambda k: k < v)
    if eps > 0:
        r = rho(J, 1)
        J = J.with_domino(v, _domino((1, r + 1), (1, r + 2)))
    else:
        c = kappa(J, 1)
        J = J.with_domino(v, _domino((c + 1, 1), (c + 2, 1)))
    for k in sorted(k for k in T._dom if k > v):
        J = J.with_domino(k, shuffle_A(J, T._dom[k]))
    return J


def delta(w: SignedPermutation) -> frozenset[tuple[int, int, int]]:
    """``{(i, |w(i)|, sign w(i))}``."""
    return frozenset((i, abs(x), 1 if x > 0 else -1) for i, x in enumerate(w.window, 1))


def tableau(w: SignedPermutation, side: Side = Side.Left) -> DominoTableau:
    if w.system.family != "D":
        raise ValueError("domino tableaux are implemented for type D")
    if side is Side.Right:
        w = inverse(w)
    winv = inverse(w).window
    T = DominoTableau()
    for x in winv:
        T = alpha_insert(T, abs(x), 1 if x > 0 else -1)
    return T


def p_prime(T: DominoTableau, k: int) -> Domino:
    """``P'(T, k)``: the other domino through the fixed square of ``P(T, k)``."""
    a, b = T.position(k)
    (i, j), (l, m) = (a, b) if is_fixed(a) else (b, a)
    if l > i or m < j:
        r = T.N((i - 1, j + 1))
        other = (i - 1, j) if r > k else (i, j + 1)
    else:
        r = T.N((i + 1, j - 1))
        other = (i + 1, j) if r < k else (i, j - 1)
    return _domino((i, j), other)


def _r_value(T: DominoTableau, k: int):
    a, b = T.position(k)
    (i, j), (l, m) = (a, b) if is_fixed(a) else (b, a)
    if l > i or m < j:
        return T.N((i - 1, j + 1))
    return T.N((i + 1, j - 1))


@dataclass(frozen=True)
class Cycle:
    labels: frozenset[int]
    is_open: bool

    def __iter__(self):
        return iter(sorted(self.labels))


def cycles(T: DominoTableau) -> list[Cycle]:
    parent = {k: k for k in T.labels}

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    primes = {k: p_prime(T, k) for k in T.labels}
    for b, d in primes.items():
        for sq in d:
            a = T.label_at(sq)
            if a is not None:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, set] = {}
    for k in T.labels:
        groups.setdefault(find(k), set()).add(k)
    out = []
    for members in groups.values():
        closed = True
        for k in members:
            var = next(sq for sq in primes[k] if not is_fixed(sq))
            if T.N(var) not in members:
                closed = False
                break
        out.append(Cycle(frozenset(members), not closed))
    out.sort(key=lambda c: min(c.labels))
    return out


def _as_labels(c) -> frozenset[int]:
    return c.labels if isinstance(c, Cycle) else frozenset(c)


def move_through(T: DominoTableau, *cs) -> DominoTableau:
    """``E(T, C_1, ..., C_r)``: move through each cycle in turn."""
    for c in cs:
        labels = _as_labels(c)
        if labels not in {cy.labels for cy in cycles(T)}:
            raise ValueError(f"{sorted(labels)} is not a cycle of the tableau")
        T = DominoTableau({k: (p_prime(T, k) if k in labels else T.position(k))
                           for k in T.labels})
    return T


def orbit(T: DominoTableau) -> frozenset[DominoTableau]:
    """All tableaux reachable by moving through open cycles."""
    seen = {T}
    queue = deque([T])
    while queue:
        cur = queue.popleft()
        for c in cycles(cur):
            if c.is_open:
                nxt = move_through(cur, c)
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return frozenset(seen)


def canonical_form(T: DominoTableau) -> DominoTableau:
    """The least member of the open-cycle orbit (by sorted serialization)."""
    return min(orbit(T))


def equivalent(T1: DominoTableau, T2: DominoTableau) -> bool:
    return canonical_form(T1) == canonical_form(T2)


def _threads(threads: Optional[int]) -> int:
    if threads is None:
        threads = int(os.environ.get("DKL_THREADS", "1") or 1)
    return max(1, threads)


def tableau_cells(elements: Sequence[SignedPermutation], side: CellKind = CellKind.Left,
                  threads: Optional[int] = None) -> CellPartition:
    """Cells from tableau equivalence: ``T_L`` for left, ``T_R`` for right,
    and the join of both relations for two-sided cells."""
    elements = list(elements)
    if not elements:
        return CellPartition(side, ())
    systems = {w.system for w in elements}
    if len(systems) != 1:
        raise ValueError("elements must come from one group")

    def key(w, s):
        return canonical_form(tableau(w, s))

    sides = {CellKind.Left: [Side.Left], CellKind.Right: [Side.Right],
             CellKind.TwoSided: [Side.Left, Side.Right]}[side]
    parent = list(range(len(elements)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    workers = _threads(threads)
    for s in sides:
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as ex:
                keys = list(ex.map(lambda w: key(w, s), elements))
        else:
            keys = [key(w, s) for w in elements]
        first: dict = {}
        for idx, k in enumerate(keys):
            if k in first:
                ra, rb = find(idx), find(first[k])
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
            else:
                first[k] = idx
    groups: dict[int, list] = {}
    for idx, w in enumerate(elements):
        groups.setdefault(find(idx), []).append(w)
    return CellPartition(side, _sorted_blocks(groups.values()))
