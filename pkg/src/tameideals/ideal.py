"""Monomial ideals represented by their minimal exponent sets ("clouds").

A :class:`MonomialIdeal` is the pair ``(n, cloud)`` where ``cloud`` is the
unique antichain of exponent vectors generating the ideal, kept sorted
lexicographically so that equal ideals compare and serialise identically.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .exactmath import DimensionError

ExponentVector = tuple[int, ...]


class ParseError(ValueError):
    """Malformed ideal text.  ``pos`` is the 0-based offset of the problem."""

    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at column {pos + 1}: {text!r}")
        self.text = text
        self.pos = pos
        self.column = pos + 1


@dataclass(frozen=True)
class MonomialIdeal:
    n: int
    cloud: tuple[ExponentVector, ...]

    def __post_init__(self):
        if not self.cloud:
            raise ValueError("the zero ideal is not representable")
        for a in self.cloud:
            if len(a) != self.n:
                raise DimensionError(f"exponent {a} does not have length {self.n}")

    @classmethod
    def from_points(cls, points: Iterable[Sequence[int]], n: Optional[int] = None) -> "MonomialIdeal":
        return minimalize(points, n)

    @classmethod
    def unit(cls, n: int) -> "MonomialIdeal":
        return cls(n, ((0,) * n,))

    def is_unit(self) -> bool:
        return self.cloud == ((0,) * self.n,)

    def variables(self) -> frozenset[int]:
        """0-based indices of the variables occurring in some generator."""
        return frozenset(i for a in self.cloud for i, e in enumerate(a) if e)

    def embed(self, n: int) -> "MonomialIdeal":
        """The same ideal in ``n >= self.n`` variables (trailing variables unused)."""
        if n < self.n:
            raise DimensionError(f"cannot embed {self.n} variables into {n}")
        pad = (0,) * (n - self.n)
        return MonomialIdeal(n, tuple(a + pad for a in self.cloud))

    def __mul__(self, other):
        return product(self, other)

    def __add__(self, other):
        return ideal_sum(self, other)

    def __and__(self, other):
        return intersect(self, other)

    def __pow__(self, k):
        return power(self, k)

    def __contains__(self, c):
        return support_contains(self, c)

    def __str__(self):
        return format_ideal(self)

    def to_json(self) -> dict:
        return {"n": self.n, "cloud": [list(a) for a in self.cloud]}

    @classmethod
    def from_json(cls, data) -> "MonomialIdeal":
        if isinstance(data, str):
            data = json.loads(data)
        return minimalize([tuple(a) for a in data["cloud"]], int(data["n"]))


@dataclass(frozen=True)
class CoordinateCloud:
    """The coordinate ideal ``(x_i : i in indices)``; indices are 1-based."""
    n: int
    indices: frozenset[int]

    def __init__(self, n: int, indices: Iterable[int]):
        idx = frozenset(int(i) for i in indices)
        if not idx:
            raise ValueError("a coordinate cloud needs at least one index")
        if min(idx) < 1 or max(idx) > n:
            raise ValueError(f"indices {sorted(idx)} out of range 1..{n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "indices", idx)

    def ideal(self) -> MonomialIdeal:
        return MonomialIdeal(self.n, tuple(sorted(
            tuple(int(j == i) for j in range(1, self.n + 1)) for i in self.indices)))

    def __repr__(self):
        return f"CoordinateCloud({self.n}, {sorted(self.indices)})"


def _same_n(I: MonomialIdeal, J: MonomialIdeal) -> int:
    if I.n != J.n:
        raise DimensionError(f"ideals live in {I.n} and {J.n} variables")
    return I.n


def minimalize(points: Iterable[Sequence[int]], n: Optional[int] = None) -> MonomialIdeal:
    """Drop every point that componentwise dominates another one."""
    pts = sorted({tuple(int(x) for x in p) for p in points}, key=lambda p: (sum(p), p))
    if not pts:
        raise ValueError("cannot build an ideal from an empty point set")
    if n is None:
        n = len(pts[0])
    for p in pts:
        if len(p) != n:
            raise DimensionError(f"point {p} does not have length {n}")
        if min(p, default=0) < 0:
            raise ValueError(f"negative exponent in {p}")
    # a point can only be dominated by a kept point of strictly smaller degree
    kept: list[ExponentVector] = []
    kept_arr = np.empty((0, n), dtype=np.int64)
    level = None
    level_start = 0
    for p in pts:
        d = sum(p)
        if d != level:
            level = d
            level_start = len(kept)
            kept_arr = np.array(kept, dtype=np.int64).reshape(len(kept), n)
        if level_start and (kept_arr[:level_start] <= np.array(p)).all(axis=1).any():
            continue
        kept.append(p)
    return MonomialIdeal(n, tuple(sorted(kept)))


def product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    n = _same_n(I, J)
    return minimalize((tuple(x + y for x, y in zip(a, b)) for a in I.cloud for b in J.cloud), n)


def intersect(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    n = _same_n(I, J)
    return minimalize((tuple(max(x, y) for x, y in zip(a, b)) for a in I.cloud for b in J.cloud), n)


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    n = _same_n(I, J)
    return minimalize(I.cloud + J.cloud, n)


def power(I: MonomialIdeal, k: int) -> MonomialIdeal:
    """``I**k``; ``k == 0`` gives the unit ideal."""
    if k < 0:
        raise ValueError("negative power")
    result = MonomialIdeal.unit(I.n)
    for _ in range(k):
        result = product(result, I)
    return result


def product_all(ideals: Sequence[MonomialIdeal], n: Optional[int] = None) -> MonomialIdeal:
    """Product of several ideals, minimalising after every factor."""
    if not ideals:
        if n is None:
            raise ValueError("empty product needs n")
        return MonomialIdeal.unit(n)
    result = ideals[0]
    for J in ideals[1:]:
        result = product(result, J)
    return result


def radical(I: MonomialIdeal) -> MonomialIdeal:
    return minimalize((tuple(min(x, 1) for x in a) for a in I.cloud), I.n)


def equals(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    _same_n(I, J)
    return I.cloud == J.cloud


def support_contains(I: MonomialIdeal, c: Sequence[int]) -> bool:
    """Is ``x^c`` in I, i.e. does some cloud point divide c?"""
    if len(c) != I.n:
        raise DimensionError(f"point {tuple(c)} does not have length {I.n}")
    return any(all(x <= y for x, y in zip(a, c)) for a in I.cloud)


def maximal_ideal(n: int) -> MonomialIdeal:
    return CoordinateCloud(n, range(1, n + 1)).ideal()


# ---------------------------------------------------------------------------
# text form: (x1^2, x1*x2, x3)
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<var>x(?P<idx>\d+))|(?P<num>\d+)|(?P<sym>[(),*^])|(?P<bad>\S))")


def _tokens(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        start = m.start(m.lastgroup)
        if m.group("bad") is not None:
            raise ParseError(f"unexpected character {m.group('bad')!r}", text, start)
        if m.group("var") is not None:
            out.append(("var", int(m.group("idx")), start))
        elif m.group("num") is not None:
            out.append(("num", int(m.group("num")), start))
        else:
            out.append((m.group("sym"), None, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


def parse_ideal(text: str, n: Optional[int] = None) -> MonomialIdeal:
    """Parse ``"(x1^2, x1*x2, x2^3)"``.  The monomial ``1`` denotes the unit ideal.

    Without ``n`` the dimension is the largest variable index used.
    """
    toks = _tokens(text)
    i = 0

    def expect(kind):
        nonlocal i
        tok = toks[i]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(text[tok[2]])
            raise ParseError(f"expected {kind!r}, found {what}", text, tok[2])
        i += 1
        return tok

    def monomial():
        nonlocal i
        if toks[i][0] == "num":
            tok = toks[i]
            if tok[1] != 1:
                raise ParseError("the only constant monomial is 1", text, tok[2])
            i += 1
            return {}
        exps: dict[int, int] = {}
        while True:
            tok = toks[i]
            if tok[0] != "var":
                raise ParseError("expected a variable x<index>", text, tok[2])
            if tok[1] < 1:
                raise ParseError("variable indices start at 1", text, tok[2])
            i += 1
            e = 1
            if toks[i][0] == "^":
                i += 1
                etok = toks[i]
                if etok[0] != "num":
                    raise ParseError("expected an exponent", text, etok[2])
                if etok[1] < 1:
                    raise ParseError("exponents must be at least 1", text, etok[2])
                e = etok[1]
                i += 1
            exps[tok[1]] = exps.get(tok[1], 0) + e
            if toks[i][0] != "*":
                return exps
            i += 1

    expect("(")
    monos = [monomial()]
    while toks[i][0] == ",":
        i += 1
        monos.append(monomial())
    expect(")")
    expect("end")

    used = max((v for m in monos for v in m), default=0)
    if n is None:
        n = max(used, 1)
    elif used > n:
        raise ParseError(f"variable x{used} exceeds n={n}", text, 0)
    return minimalize((tuple(m.get(v, 0) for v in range(1, n + 1)) for m in monos), n)


def format_monomial(a: Sequence[int]) -> str:
    parts = [f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(a, 1) if e]
    return "*".join(parts) if parts else "1"


def format_ideal(I: MonomialIdeal) -> str:
    return "(" + ", ".join(format_monomial(a) for a in reversed(I.cloud)) + ")"
