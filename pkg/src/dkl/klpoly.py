"""
Kazhdan-Lusztig polynomials, mu-values, cells and a-values.

A :class:`KLContext` owns a lazily built integer table of group elements
(ids are handed out the first time an element is touched) together with the
memo tables for ``P_{x,w}``, Bruhat comparisons and lower intervals::

    >>> from dkl.badlib import build_wn, x_n
    >>> D4 = CoxeterSystem("D", 4)
    >>> ctx = KLContext(D4)
    >>> w4, x4 = build_wn(D4, 4), x_n(D4)
    >>> str(kl_poly(ctx, x4, w4)), mu(ctx, x4, w4)
    ('1 + 2q', 0)

Polynomials are computed with the standard recurrence on a left descent
``s`` of ``w``; ``x`` is first pushed up along the descents of ``w`` (which
leaves ``P_{x,w}`` unchanged) so memo keys are canonical.
"""
from __future__ import annotations

import sys
import threading
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import networkx as nx
import numpy as np
from scipy import sparse

from .coxgroup import (
    CoxeterSystem, SignedPermutation, Side, _inverse, _left_gen, _length,
    _right_descents, _right_gen, canonical_word, from_word, identity, length, mul_gen,
)
from .badlib import wn_length
from .polynomial import HalfLaurent, IntPolynomial

__all__ = [
    "KLContext", "ResourceLimitError", "CellKind", "CellPartition",
    "HeckeElement", "MuVerdict", "kl_poly", "mu", "inverse_kl", "cells",
    "hecke_mul", "c_basis", "bar", "c_structure_constants",
    "a_value_bruteforce", "a_values", "a_wn", "mu_upper_bound_check",
]

_ONE = (1,)
_ZERO = ()


class ResourceLimitError(RuntimeError):
    """A computation would exceed a configured size ceiling."""


# -- dense coefficient tuples -------------------------------------------------

def _padd(a, b):
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _psub_scaled(a, b, m, k):
    """``a - m q^k b``"""
    out = list(a) + [0] * max(0, len(b) + k - len(a))
    for i, c in enumerate(b):
        out[i + k] -= m * c
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _lowbit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


class _Table:
    """Lazily indexed elements with cached generator multiplication."""

    def __init__(self, system: CoxeterSystem, gens: frozenset[int]):
        self.system = system
        self.family = system.family
        self.gens = tuple(sorted(gens))
        self.gmask = sum(1 << s for s in gens)
        self.win: list[tuple] = []
        self.idx: dict[tuple, int] = {}
        self.len: list[int] = []
        self.ldes: list[int] = []
        self.rdes: list[int] = []
        self.lm: list[list[int]] = []
        self.rm: list[list[int]] = []
        self._lock = threading.Lock()
        self.e = self.id(tuple(range(1, system.n + 1)))

    def id(self, win: tuple) -> int:
        i = self.idx.get(win)
        if i is not None:
            return i
        with self._lock:
            i = self.idx.get(win)
            if i is not None:
                return i
            fam = self.family
            rd = sum(1 << s for s in _right_descents(win, fam)) & self.gmask
            ld = sum(1 << s for s in _right_descents(_inverse(win), fam)) & self.gmask
            i = len(self.win)
            self.win.append(win)
            self.len.append(_length(win, fam))
            self.ldes.append(ld)
            self.rdes.append(rd)
            self.lm.append([-1] * (self.system.rank + 1))
            self.rm.append([-1] * (self.system.rank + 1))
            self.idx[win] = i
            return i

    def lmul(self, x: int, s: int) -> int:
        y = self.lm[x][s]
        if y < 0:
            y = self.id(_left_gen(self.win[x], s, self.family))
            self.lm[x][s] = y
            self.lm[y][s] = x
        return y

    def rmul(self, x: int, s: int) -> int:
        y = self.rm[x][s]
        if y < 0:
            y = self.id(_right_gen(self.win[x], s, self.family))
            self.rm[x][s] = y
            self.rm[y][s] = x
        return y


class KLContext:
    """Memoized Kazhdan-Lusztig data for ``W`` or a parabolic subgroup ``W_I``."""

    def __init__(self, system: CoxeterSystem, generators: Optional[Iterable[int]] = None,
                 max_elements: int = 10 ** 4, max_cells: int = 10 ** 5,
                 max_memo: Optional[int] = None):
        gens = frozenset(system.generators if generators is None else generators)
        for s in gens:
            system.check_generator(s)
        self.system = system
        self.generators = gens
        self.max_elements = max_elements
        self.max_cells = max_cells
        self.max_memo = max_memo
        self.T = _Table(system, gens)
        self._pmemo: dict[tuple[int, int], tuple] = {}
        self._leqmemo: dict[tuple[int, int], bool] = {}
        self._ivmemo: dict[int, frozenset] = {}
        self._mumemo: dict[int, tuple] = {}
        self._qmemo: dict[tuple[int, int], tuple] = {}
        self._all: Optional[list[int]] = None
        self._avalues: Optional[dict[int, int]] = None
        if sys.getrecursionlimit() < 20000:
            sys.setrecursionlimit(20000)

    # -- conversion -----------------------------------------------------------

    def _id(self, w: SignedPermutation) -> int:
        if w.system != self.system:
            raise ValueError(f"element of {w.system} used with a {self.system} context")
        if self.generators != frozenset(self.system.generators):
            if not set(canonical_word(w)) <= self.generators:
                raise ValueError(f"{w} is not in the parabolic subgroup")
        return self.T.id(w.window)

    def _el(self, i: int) -> SignedPermutation:
        return SignedPermutation(self.T.win[i], self.system)

    def memo_size(self) -> int:
        return len(self._pmemo)

    def order(self) -> int:
        """Size of ``W_I`` computed from the Coxeter structure."""
        if self._all is not None:
            return len(self._all)
        if self.generators == frozenset(self.system.generators):
            return self.system.order()
        return len(self._enumerate_ids())

    def _enumerate_ids(self) -> list[int]:
        if self._all is None:
            T = self.T
            seen = {T.e}
            frontier = [T.e]
            while frontier:
                nxt = []
                for x in frontier:
                    for s in T.gens:
                        y = T.lmul(x, s)
                        if y not in seen:
                            seen.add(y)
                            nxt.append(y)
                frontier = nxt
            self._all = sorted(seen, key=lambda i: (T.len[i], T.win[i]))
        return self._all

    def elements(self) -> list[SignedPermutation]:
        """All elements of the (parabolic) group ordered by length then window."""
        return [self._el(i) for i in self._enumerate_ids()]

    # -- Bruhat order ---------------------------------------------------------

    def _leq(self, x: int, w: int) -> bool:
        if x == w:
            return True
        T = self.T
        lx, lw = T.len[x], T.len[w]
        if lx >= lw:
            return False
        if lx == 0:
            return True
        iv = self._ivmemo.get(w)
        if iv is not None:
            return x in iv
        key = (x, w)
        r = self._leqmemo.get(key)
        if r is None:
            s = _lowbit(T.ldes[w])
            sw = T.lmul(w, s)
            if T.ldes[x] >> s & 1:
                r = self._leq(T.lmul(x, s), sw)
            else:
                r = self._leq(x, sw)
            self._leqmemo[key] = r
        return r

    def _interval(self, w: int) -> frozenset:
        r = self._ivmemo.get(w)
        if r is None:
            T = self.T
            if T.len[w] == 0:
                r = frozenset((w,))
            else:
                s = _lowbit(T.ldes[w])
                base = self._interval(T.lmul(w, s))
                r = base | {T.lmul(z, s) for z in base}
            self._ivmemo[w] = r
        return r

    def bruhat_leq(self, x: SignedPermutation, w: SignedPermutation) -> bool:
        return self._leq(self._id(x), self._id(w))

    def interval(self, w: SignedPermutation) -> list[SignedPermutation]:
        """The lower Bruhat interval ``[e, w]`` sorted by length then window."""
        T = self.T
        ids = sorted(self._interval(self._id(w)), key=lambda i: (T.len[i], T.win[i]))
        return [self._el(i) for i in ids]

    # -- KL polynomials -------------------------------------------------------

    def _normalize(self, x: int, w: int) -> int:
        T = self.T
        lw, rw = T.ldes[w], T.rdes[w]
        while True:
            m = lw & ~T.ldes[x]
            if m:
                x = T.lmul(x, _lowbit(m))
                continue
            m = rw & ~T.rdes[x]
            if m:
                x = T.rmul(x, _lowbit(m))
                continue
            return x

    def _p(self, x: int, w: int) -> tuple:
        if x == w:
            return _ONE
        T = self.T
        x = self._normalize(x, w)
        if x == w:
            return _ONE
        lx, lw = T.len[x], T.len[w]
        if lx >= lw or not self._leq(x, w):
            return _ZERO
        if lw - lx <= 2:
            return _ONE
        key = (x, w)
        res = self._pmemo.get(key)
        if res is not None:
            return res
        s = _lowbit(T.ldes[w])
        sw = T.lmul(w, s)
        # s lies in L(x) after normalization, so c = 1
        res = _padd(self._p(T.lmul(x, s), sw), (0,) + self._p(x, sw))
        for z, m in self._mulist(sw):
            if T.ldes[z] >> s & 1 and T.len[z] >= lx:
                pz = self._p(x, z)
                if pz:
                    res = _psub_scaled(res, pz, m, (lw - T.len[z]) // 2)
        if self.max_memo is not None and len(self._pmemo) >= self.max_memo:
            raise ResourceLimitError(f"KL memo exceeded {self.max_memo} entries")
        self._pmemo[key] = res
        return res

    def _mu(self, z: int, v: int) -> int:
        T = self.T
        d = T.len[v] - T.len[z]
        if d <= 0 or d % 2 == 0:
            return 0
        if d == 1:
            return 1 if self._leq(z, v) else 0
        if (T.ldes[v] & ~T.ldes[z]) or (T.rdes[v] & ~T.rdes[z]):
            return 0  # only a cover can contribute then
        p = self._p(z, v)
        k = (d - 1) // 2
        return p[k] if k < len(p) else 0

    def _mulist(self, v: int) -> tuple:
        """Pairs ``(z, mu(z,v))`` with ``z < v`` and nonzero mu."""
        r = self._mumemo.get(v)
        if r is None:
            T = self.T
            out = []
            lv = T.len[v]
            for z in self._interval(v):
                d = lv - T.len[z]
                if d % 2 == 0:
                    continue
                m = self._mu(z, v)
                if m:
                    out.append((z, m))
            out.sort()
            r = tuple(out)
            self._mumemo[v] = r
        return r

    def kl_poly(self, x: SignedPermutation, w: SignedPermutation) -> IntPolynomial:
        return IntPolynomial(self._p(self._id(x), self._id(w)))

    def mu(self, x: SignedPermutation, w: SignedPermutation) -> int:
        return self._mu(self._id(x), self._id(w))

    def mu_list(self, w: SignedPermutation) -> list[tuple[SignedPermutation, int]]:
        return [(self._el(z), m) for z, m in self._mulist(self._id(w))]

    # -- inverse KL polynomials -----------------------------------------------

    def _q(self, x: int, w: int) -> tuple:
        if x == w:
            return _ONE
        if not self._leq(x, w):
            return _ZERO
        key = (x, w)
        res = self._qmemo.get(key)
        if res is None:
            T = self.T
            lx, lw = T.len[x], T.len[w]
            acc = _ZERO
            for z in self._interval(w):
                if z == w or T.len[z] < lx or not self._leq(x, z):
                    continue
                qz = self._q(x, z)
                pz = IntPolynomial(qz) * IntPolynomial(self._p(z, w))
                sign = -1 if (T.len[z] - lx) % 2 else 1
                acc = _psub_scaled(acc, pz.coeffs, -sign, 0)
            # the z = w term carries sign (-1)^(lw - lx)
            sign_w = -1 if (lw - lx) % 2 else 1
            res = tuple(-sign_w * c for c in acc)
            self._qmemo[key] = res
        return res

    def inverse_kl(self, x: SignedPermutation, w: SignedPermutation) -> IntPolynomial:
        xi, wi = self._id(x), self._id(w)
        if not self._leq(xi, wi):
            raise ValueError(f"{x} is not below {w} in the Bruhat order")
        return IntPolynomial(self._q(xi, wi))


# -- functional front end -----------------------------------------------------

def kl_poly(ctx: KLContext, x: SignedPermutation, w: SignedPermutation) -> IntPolynomial:
    return ctx.kl_poly(x, w)


def mu(ctx: KLContext, x: SignedPermutation, w: SignedPermutation) -> int:
    return ctx.mu(x, w)


def inverse_kl(ctx: KLContext, x: SignedPermutation, w: SignedPermutation) -> IntPolynomial:
    return ctx.inverse_kl(x, w)


# -- cells --------------------------------------------------------------------

class CellKind(Enum):
    Left = "L"
    Right = "R"
    TwoSided = "LR"


@dataclass(frozen=True)
class CellPartition:
    kind: CellKind
    blocks: tuple[tuple[SignedPermutation, ...], ...]
    edges: tuple[tuple[SignedPermutation, SignedPermutation], ...] = field(default=(), repr=False)

    def block_of(self, w: SignedPermutation) -> tuple[SignedPermutation, ...]:
        for b in self.blocks:
            if w in b:
                return b
        raise KeyError(f"{w} is not covered by this partition")

    def same_block(self, x: SignedPermutation, w: SignedPermutation) -> bool:
        return w in self.block_of(x)

    def as_sets(self) -> frozenset[frozenset[SignedPermutation]]:
        return frozenset(frozenset(b) for b in self.blocks)


def _sorted_blocks(groups) -> tuple:
    blocks = [tuple(sorted(g, key=lambda w: (length(w), w.window))) for g in groups]
    blocks.sort(key=lambda b: (length(b[0]), b[0].window))
    return tuple(blocks)


def cells(ctx: KLContext, elements: Optional[Sequence[SignedPermutation]] = None,
          kind: CellKind = CellKind.Left) -> CellPartition:
    """Cells as strongly connected components of the mu-graph preorder."""
    if elements is None:
        if ctx.order() > ctx.max_cells:
            raise ResourceLimitError(
                f"group has {ctx.order()} elements, above the cell ceiling {ctx.max_cells}")
        ids = ctx._enumerate_ids()
    else:
        if len(elements) > ctx.max_cells:
            raise ResourceLimitError(f"{len(elements)} elements exceed {ctx.max_cells}")
        ids = [ctx._id(w) for w in elements]
    T = ctx.T
    members = set(ids)
    use_left = kind in (CellKind.Left, CellKind.TwoSided)
    use_right = kind in (CellKind.Right, CellKind.TwoSided)
    g = nx.DiGraph()
    g.add_nodes_from(ids)
    for y in ids:
        for z, _m in ctx._mulist(y):
            if z not in members:
                continue
            for a, b in ((z, y), (y, z)):
                if (use_left and T.ldes[a] & ~T.ldes[b]) or \
                        (use_right and T.rdes[a] & ~T.rdes[b]):
                    g.add_edge(a, b)
    groups = [[ctx._el(i) for i in comp] for comp in nx.strongly_connected_components(g)]
    edges = tuple(sorted((ctx._el(a), ctx._el(b)) for a, b in g.edges))
    return CellPartition(kind, _sorted_blocks(groups), edges)


# -- Hecke algebra ------------------------------------------------------------

_V = HalfLaurent({1: 1})
_Q = HalfLaurent({2: 1})


class HeckeElement:
    """Element of the Hecke algebra in the standard basis ``T_w``."""

    __slots__ = ("system", "_c")

    def __init__(self, system: CoxeterSystem, coeffs=None):
        self.system = system
        clean = {}
        for w, c in (coeffs or {}).items():
            if isinstance(c, int):
                c = HalfLaurent({0: c})
            if not c.is_zero():
                clean[w] = c
        self._c = clean

    @classmethod
    def T(cls, w: SignedPermutation) -> "HeckeElement":
        return cls(w.system, {w: HalfLaurent({0: 1})})

    def items(self):
        return sorted(self._c.items(), key=lambda kv: (length(kv[0]), kv[0].window))

    def coefficient(self, w: SignedPermutation) -> HalfLaurent:
        return self._c.get(w, HalfLaurent())

    def support(self):
        return [w for w, _ in self.items()]

    def __eq__(self, other):
        return isinstance(other, HeckeElement) and self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def _combine(self, other, sign):
        out = dict(self._c)
        for w, c in other._c.items():
            out[w] = out.get(w, HalfLaurent()) + (c if sign > 0 else -c)
        return HeckeElement(self.system, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return HeckeElement(self.system, {w: -c for w, c in self._c.items()})

    def scale(self, c) -> "HeckeElement":
        return HeckeElement(self.system, {w: a * c for w, a in self._c.items()})

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return hecke_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __str__(self):
        if not self._c:
            return "0"
        return " + ".join(f"({c})T[{w}]" for w, c in self.items())

    __repr__ = __str__


def _ts_left(s: int, h: HeckeElement) -> HeckeElement:
    out: dict = {}
    for w, c in h._c.items():
        sw = mul_gen(w, s, Side.Left)
        if length(sw) > length(w):
            out[sw] = out.get(sw, HalfLaurent()) + c
        else:
            out[w] = out.get(w, HalfLaurent()) + c * (_Q - 1)
            out[sw] = out.get(sw, HalfLaurent()) + c * _Q
    return HeckeElement(h.system, out)


def hecke_mul(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    if a.system != b.system:
        raise ValueError("Hecke elements over different systems")
    result = HeckeElement(a.system)
    for u, cu in a._c.items():
        x = b
        for s in reversed(canonical_word(u)):
            x = _ts_left(s, x)
        result = result + x.scale(cu)
    return result


@lru_cache(maxsize=None)
def _inverse_T(x: SignedPermutation) -> HeckeElement:
    """``T_{x^{-1}}^{-1}`` expanded in the T-basis."""
    h = HeckeElement.T(identity(x.system))
    q_inv = HalfLaurent({-2: 1})
    for s in reversed(canonical_word(x)):
        h = _ts_left(s, h).scale(q_inv) + h.scale(q_inv - 1)
    return h


def bar(h: HeckeElement) -> HeckeElement:
    """The ring involution ``v -> v^-1``, ``T_w -> T_{w^{-1}}^{-1}``."""
    out = HeckeElement(h.system)
    for x, c in h._c.items():
        out = out + _inverse_T(x).scale(c.bar())
    return out


def c_basis(ctx: KLContext, w: SignedPermutation) -> HeckeElement:
    """``C_w = sum_x (-1)^(l(w)+l(x)) v^(l(w)-2l(x)) P_{x,w}(v^-2) T_x``."""
    lw = length(w)
    coeffs = {}
    for x in ctx.interval(w):
        lx = length(x)
        p = ctx.kl_poly(x, w).to_laurent(invert=True)
        sign = -1 if (lw + lx) % 2 else 1
        coeffs[x] = p * HalfLaurent({lw - 2 * lx: sign})
    return HeckeElement(w.system, coeffs)


def c_structure_constants(ctx: KLContext, x: SignedPermutation,
                          y: SignedPermutation) -> dict[SignedPermutation, HalfLaurent]:
    """``h_{x,y,z}`` with ``C_x C_y = sum_z h_{x,y,z} C_z`` by direct expansion."""
    rest = hecke_mul(c_basis(ctx, x), c_basis(ctx, y))
    out = {}
    while rest._c:
        z = max(rest._c, key=lambda w: (length(w), w.window))
        # C_z has leading term v^{-l(z)} T_z
        h = rest._c[z] * HalfLaurent({length(z): 1})
        out[z] = h
        rest = rest - c_basis(ctx, z).scale(h)
    return out


# -- a-values -----------------------------------------------------------------

def a_values(ctx: KLContext) -> dict[SignedPermutation, int]:
    """Lusztig's a-function on the whole (parabolic) group.

    Structure constants are produced in the positive basis ``C'_w`` by the
    multiplication rule for ``C'_s`` and the recursion
    ``C'_x = C'_s C'_{sx} - sum mu(z,sx) C'_z``. They agree with those of
    ``C_w`` up to sign, so the maximal v-degrees coincide.
    """
    if ctx._avalues is None:
        n_el = ctx.order()
        if n_el > ctx.max_elements:
            raise ResourceLimitError(
                f"group has {n_el} elements, above the a-value ceiling {ctx.max_elements}")
        T = ctx.T
        ids = ctx._enumerate_ids()
        N = len(ids)
        pos = {i: k for k, i in enumerate(ids)}
        lmax = max(T.len[i] for i in ids)
        off = lmax + 1
        D = 2 * lmax + 3
        mul = {i: ctx._mulist(i) for i in ids}
        act = {}
        for s in T.gens:
            rows, cols, vals = [], [], []
            desc = np.zeros(N, dtype=bool)
            for k, z in enumerate(ids):
                if T.ldes[z] >> s & 1:
                    desc[k] = True
                    continue
                rows.append(pos[T.lmul(z, s)])
                cols.append(k)
                vals.append(1)
                for z2, m in mul[z]:
                    if T.ldes[z2] >> s & 1:
                        rows.append(pos[z2])
                        cols.append(k)
                        vals.append(m)
            mat = sparse.csr_matrix((vals, (rows, cols)), shape=(N, N), dtype=np.int64)
            act[s] = (mat, desc)

        def apply(s, vec):
            mat, desc = act[s]
            out = mat @ vec
            d = vec * desc[:, None]
            if d[:, 0].any() or d[:, -1].any():
                raise AssertionError("degree window overflow")
            out[:, 1:] += d[:, :-1]
            out[:, :-1] += d[:, 1:]
            return out

        # recipe[k] = (s, index of sx, [(index of z, mu)])
        recipe = []
        for k, x in enumerate(ids):
            if k == 0:
                recipe.append(None)
                continue
            s = _lowbit(T.ldes[x])
            sx = T.lmul(x, s)
            corr = [(pos[z], m) for z, m in mul[sx] if T.ldes[z] >> s & 1]
            recipe.append((s, pos[sx], corr))

        best = np.full(N, -1, dtype=np.int64)
        degs = np.arange(D) - off
        for ky in range(N):
            R = np.zeros((N, N, D), dtype=np.int64)
            R[0, ky, off] = 1
            for k in range(1, N):
                s, ksx, corr = recipe[k]
                v = apply(s, R[ksx])
                for kz, m in corr:
                    v -= m * R[kz]
                R[k] = v
            nz = (R != 0).any(axis=0)
            top = np.where(nz, degs[None, :], -10 ** 6).max(axis=1)
            np.maximum(best, top, out=best)
        ctx._avalues = {ids[k]: int(best[k]) for k in range(N)}
    return {ctx._el(i): a for i, a in ctx._avalues.items()}


def a_value_bruteforce(ctx: KLContext, z: SignedPermutation) -> int:
    zi = ctx._id(z)
    a_values(ctx)
    return ctx._avalues[zi]


def a_wn(n: int) -> int:
    """Closed form for ``a(w_n)``, ``n`` even."""
    if n % 2 or n < 4:
        raise ValueError("a_wn expects an even n >= 4")
    return 3 * n // 4 if n % 4 == 0 else (3 * n + 2) // 4


class MuVerdict(Enum):
    MuForcedZero = "MuForcedZero"
    ParityZero = "ParityZero"
    Inconclusive = "Inconclusive"


def mu_upper_bound_check(ctx: Optional[KLContext], n: int) -> MuVerdict:
    """Decide ``mu(x_n, w_n) = 0`` from ``deg P_{e,w} <= (l(w) - a(w))/2`` when possible."""
    if n % 2 or n < 4:
        raise ValueError("n must be even and at least 4")
    lw = wn_length(n)
    lx = n // 2 + 1
    # compare doubled quantities to stay in integers
    if lw - a_wn(n) < lw - lx - 1:
        return MuVerdict.MuForcedZero
    if (lw - lx) % 2 == 0:
        return MuVerdict.ParityZero
    return MuVerdict.Inconclusive
