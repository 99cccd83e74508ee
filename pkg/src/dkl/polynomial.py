"""
Exact integer polynomials in q and Laurent polynomials in v = q^(1/2).

    >>> p = IntPolynomial.parse("1 + q + 3q^2")
    >>> p.coeffs, str(p), p.to_json()
    ((1, 1, 3), '1 + q + 3q^2', [1, 1, 3])
    >>> str(HalfLaurent({-1: 1}) * HalfLaurent({1: 1, -1: -1}))
    '1 - v^-2'
"""
from __future__ import annotations

import re
from typing import Iterable, Mapping

__all__ = ["IntPolynomial", "HalfLaurent", "NEG_INF"]

NEG_INF = float("-inf")


def _trim(coeffs) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _fmt_terms(terms, var: str) -> str:
    out = []
    for exp, c in terms:
        if c == 0:
            continue
        mag = abs(c)
        if exp == 0:
            body = str(mag)
        else:
            pw = var if exp == 1 else f"{var}^{exp}"
            body = pw if mag == 1 else f"{mag}{pw}"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(out) if out else "0"


_TERM = re.compile(r"([+-]?)(\d*)(?:([a-z])(?:\^(-?\d+))?)?")


def _parse_terms(text: str, var: str) -> dict[int, int]:
    if re.search(r"[\w^]\s+[\w^]", text):
        raise ValueError(f"cannot parse polynomial {text!r}")
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ValueError("empty polynomial")
    terms: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r}")
        sign, num, sym, exp = m.groups()
        if pos > 0 and not sign:
            raise ValueError(f"cannot parse polynomial {text!r}")
        if sym is not None and sym != var:
            raise ValueError(f"unexpected variable {sym!r} in {text!r}")
        if not num and sym is None:
            raise ValueError(f"cannot parse polynomial {text!r}")
        c = int(num) if num else 1
        e = (int(exp) if exp is not None else 1) if sym else 0
        if sign == "-":
            c = -c
        terms[e] = terms.get(e, 0) + c
        pos = m.end()
    return terms


class IntPolynomial:
    """Dense integer polynomial in ``q``; the zero polynomial has degree ``-inf``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _trim(int(c) for c in coeffs))

    def __setattr__(self, *_):
        raise AttributeError("IntPolynomial is immutable")

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, _as_poly(other).coeffs
        n = max(len(a), len(b))
        return IntPolynomial((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                             for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        a, b = self.coeffs, _as_poly(other).coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "IntPolynomial":
        """Multiply by ``q^k`` (``k >= 0``)."""
        return IntPolynomial((0,) * k + self.coeffs) if self.coeffs else self

    def __call__(self, q):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def __str__(self):
        return _fmt_terms(enumerate(self.coeffs), "q")

    def __repr__(self):
        return f"IntPolynomial({str(self)!r})"

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    @classmethod
    def from_json(cls, data) -> "IntPolynomial":
        if not isinstance(data, list) or not all(isinstance(c, int) for c in data):
            raise ValueError("expected a list of integer coefficients")
        return cls(data)

    @classmethod
    def parse(cls, text: str) -> "IntPolynomial":
        terms = _parse_terms(text, "q")
        if any(e < 0 for e in terms):
            raise ValueError("negative powers of q are not polynomial")
        top = max(terms, default=0)
        return cls(terms.get(i, 0) for i in range(top + 1))

    def to_laurent(self, invert: bool = False) -> "HalfLaurent":
        """Substitute ``q = v^2`` (or ``q = v^-2`` when ``invert``)."""
        step = -2 if invert else 2
        return HalfLaurent({step * i: c for i, c in enumerate(self.coeffs)})


def _as_poly(x) -> IntPolynomial:
    if isinstance(x, IntPolynomial):
        return x
    if isinstance(x, int):
        return IntPolynomial.constant(x)
    raise TypeError(f"cannot combine IntPolynomial with {type(x).__name__}")


class HalfLaurent:
    """Sparse Laurent polynomial in ``v`` with integer coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean = {int(e): int(c) for e, c in (terms or {}).items() if c}
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *_):
        raise AttributeError("HalfLaurent is immutable")

    @classmethod
    def v_power(cls, k: int, c: int = 1) -> "HalfLaurent":
        return cls({k: c})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self):
        return max(self._terms) if self._terms else NEG_INF

    @property
    def min_degree(self):
        return min(self._terms) if self._terms else float("inf")

    def coefficient(self, k: int) -> int:
        return self._terms.get(k, 0)

    def __eq__(self, other):
        if isinstance(other, int):
            other = HalfLaurent({0: other})
        return isinstance(other, HalfLaurent) and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other):
        other = _as_laurent(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return HalfLaurent(out)

    __radd__ = __add__

    def __neg__(self):
        return HalfLaurent({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_as_laurent(other))

    def __rsub__(self, other):
        return _as_laurent(other) - self

    def __mul__(self, other):
        other = _as_laurent(other)
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return HalfLaurent(out)

    __rmul__ = __mul__

    def bar(self) -> "HalfLaurent":
        """The involution ``v -> v^-1``."""
        return HalfLaurent({-e: c for e, c in self._terms.items()})

    def __str__(self):
        return _fmt_terms(sorted(self._terms.items(), reverse=True), "v")

    def __repr__(self):
        return f"HalfLaurent({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "HalfLaurent":
        return cls(_parse_terms(text, "v"))


def _as_laurent(x) -> HalfLaurent:
    if isinstance(x, HalfLaurent):
        return x
    if isinstance(x, int):
        return HalfLaurent({0: x})
    raise TypeError(f"cannot combine HalfLaurent with {type(x).__name__}")
