"""Suslin symbols, Milnor K-theory symbols, and formal dlog forms.

``<a_1, ..., a_m>`` is the class of the orbit ``(e_1, ..., e_m, sum a_i e_i)``
and maps to the Milnor symbol ``{a_1, ..., a_m}``.  Over ``Q`` and in degree
2 symbol sums are compared through Tate's description of ``K_2(Q)``: the real
symbol together with the tame symbols at odd primes.

``LogForm`` is a formal exterior algebra on ``dlog`` of irreducible
polynomials: ``dlog`` of a rational function is expanded over its
irreducible factors and constants have ``dlog c = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import sympy

from .chains import Chain
from .configurations import Configuration, OrbitPoint, chart_change, normalize
from .fields import Scalar, scalar_from_json


class DegenerateSymbolError(ValueError):
    pass


# --------------------------------------------------------------------------
# symbols


@dataclass(frozen=True)
class SuslinSymbol:
    entries: tuple

    def __post_init__(self):
        if not self.entries or not all(self.entries):
            raise DegenerateSymbolError("Suslin symbols need nonzero entries")

    @property
    def m(self) -> int:
        return len(self.entries)

    def to_json(self) -> dict:
        return {"m": self.m, "entries": [_entry_json(x) for x in self.entries]}

    @classmethod
    def from_json(cls, obj) -> "SuslinSymbol":
        entries = tuple(scalar_from_json(x) for x in obj["entries"])
        if len(entries) != int(obj["m"]):
            raise ValueError("entry count does not match m")
        return cls(entries)

    def __str__(self):
        return "<" + ", ".join(map(str, self.entries)) + ">"


def _entry_json(x):
    if isinstance(x, Scalar):
        return x.to_json()
    if isinstance(x, (int, Fraction)):
        q = Fraction(x)
        return f"{q.numerator}/{q.denominator}"
    return str(x)


def suslin_class(p: OrbitPoint | Configuration) -> SuslinSymbol:
    point = normalize(p)
    if point.n != 0:
        raise ValueError(f"expected an (m+1)-tuple, got {len(point)} vectors in dimension {point.m}")
    return SuslinSymbol(tuple(point.coordinates()))


class MilnorSymbolSum:
    """Formal integer combination of symbols ``{f_1, ..., f_m}``."""

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms=None):
        self.m = m
        self.terms: dict[tuple, int] = {}
        for entries, coeff in (terms.items() if isinstance(terms, dict) else terms or ()):
            self.add(entries, coeff)

    def add(self, entries: Sequence, coeff: int = 1):
        entries = tuple(entries)
        if len(entries) != self.m:
            raise ValueError(f"symbol of length {len(entries)} in degree {self.m}")
        if any(_is_zero(x) for x in entries):
            raise DegenerateSymbolError("Milnor symbols need nonzero entries")
        new = self.terms.get(entries, 0) + coeff
        if new:
            self.terms[entries] = new
        else:
            self.terms.pop(entries, None)

    @classmethod
    def symbol(cls, *entries, coeff: int = 1) -> "MilnorSymbolSum":
        return cls(len(entries), [(entries, coeff)])

    def items(self):
        return self.terms.items()

    def __add__(self, other: "MilnorSymbolSum") -> "MilnorSymbolSum":
        if self.m != other.m:
            raise ValueError("degree mismatch")
        out = MilnorSymbolSum(self.m, self.terms)
        for e, c in other.items():
            out.add(e, c)
        return out

    def __neg__(self):
        return MilnorSymbolSum(self.m, {e: -c for e, c in self.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k: int):
        return MilnorSymbolSum(self.m, {e: k * c for e, c in self.items()})

    def __eq__(self, other):
        if not isinstance(other, MilnorSymbolSum):
            return NotImplemented
        return self.m == other.m and self.terms == other.terms

    def __repr__(self):
        parts = [f"{c}*{{{', '.join(map(str, e))}}}" for e, c in self.items()]
        return " + ".join(parts) or "0"

    def to_json(self) -> dict:
        return {"m": self.m, "terms": [{"entries": [_entry_json(x) for x in e], "coeff": c} for e, c in self.items()]}


def _is_zero(x) -> bool:
    if isinstance(x, sympy.Basic):
        return sympy.simplify(x) == 0
    return not x


def to_milnor(s: SuslinSymbol) -> MilnorSymbolSum:
    return MilnorSymbolSum.symbol(*s.entries)


def milnor_image(chain: Chain) -> MilnorSymbolSum:
    """Image of a chain of (m+1)-tuples under ``<a> -> {a}``."""
    m = None
    out = None
    for basis, coeff in chain.items():
        s = suslin_class(basis)
        if out is None:
            m = s.m
            out = MilnorSymbolSum(m)
        out.add(s.entries, int(coeff))
    return out if out is not None else MilnorSymbolSum(0)


def phi_on_products(a: Sequence) -> MilnorSymbolSum:
    """``(-1)^(m-1) (m-1)! {a_1, ..., a_m}``: expected image of the product class."""
    m = len(a)
    return MilnorSymbolSum.symbol(*a, coeff=(-1) ** (m - 1) * math.factorial(m - 1))


# --------------------------------------------------------------------------
# K_2(Q) equality oracle


@dataclass(frozen=True)
class K2Class:
    """Invariants of a class in ``K_2(Q)``: real symbol and nontrivial tame symbols."""

    real: int
    tame: tuple[tuple[int, int], ...]

    @property
    def is_trivial(self) -> bool:
        return self.real == 1 and not self.tame

    def to_json(self) -> dict:
        return {"real": self.real, "tame": [{"p": p, "value": v} for p, v in self.tame]}


def _rational(x) -> Fraction:
    if isinstance(x, Scalar):
        return x.to_fraction()
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, sympy.Rational):
        return Fraction(int(x.p), int(x.q))
    raise TypeError(f"km2_reduce needs rational entries, got {x!r}")


def _valuations(q: Fraction) -> dict[int, int]:
    out = dict(sympy.factorint(abs(q.numerator)))
    for p, e in sympy.factorint(q.denominator).items():
        out[p] = out.get(p, 0) - e
    out.pop(1, None)
    return out


def tame_symbol(a: Fraction, b: Fraction, p: int) -> int:
    """``(-1)^(v(a)v(b)) a^v(b) / b^v(a) mod p``."""
    va, vb = _valuations(a).get(p, 0), _valuations(b).get(p, 0)
    u = Fraction((-1) ** (va * vb)) * a ** vb / b ** va
    return u.numerator % p * pow(u.denominator, -1, p) % p


def km2_reduce(s: MilnorSymbolSum) -> K2Class:
    if s.m != 2:
        raise ValueError("the K_2 oracle only handles degree 2")
    pairs = [((_rational(a), _rational(b)), c) for (a, b), c in s.items()]
    primes = set()
    for (a, b), _ in pairs:
        primes |= {p for p in _valuations(a) if p != 2}
        primes |= {p for p in _valuations(b) if p != 2}
    real = 1
    tame = {p: 1 for p in primes}
    for (a, b), c in pairs:
        if a < 0 and b < 0 and c % 2:
            real = -real
        for p in primes:
            tame[p] = tame[p] * pow(tame_symbol(a, b, p), c, p) % p
    return K2Class(real, tuple(sorted((p, v) for p, v in tame.items() if v != 1)))


# --------------------------------------------------------------------------
# formal logarithmic forms


def _sort_key(expr):
    return sympy.default_sort_key(expr)


def _irreducible_dlog(f, variables: Sequence[sympy.Symbol]) -> dict:
    """``dlog f`` as ``{irreducible factor: multiplicity}``; constants vanish."""
    if isinstance(f, Scalar):
        if not f:
            raise DegenerateSymbolError("dlog of zero")
        return {}
    f = sympy.sympify(f)
    if f == 0:
        raise DegenerateSymbolError("dlog of zero")
    num, den = sympy.fraction(sympy.cancel(sympy.together(f)))
    out: dict = {}
    for part, sign in ((num, 1), (den, -1)):
        if not part.free_symbols & set(variables):
            continue
        _, factors = sympy.factor_list(part, *variables)
        for p, e in factors:
            poly = sympy.Poly(p, *variables)
            if poly.is_ground:
                continue
            if poly.LC() < 0:
                p = sympy.expand(-p)
            else:
                p = sympy.expand(p)
            out[p] = out.get(p, 0) + sign * e
    return {k: v for k, v in out.items() if v}


class LogForm:
    """Sum of ``coeff * dlog(p_1) ^ ... ^ dlog(p_r)`` over sorted irreducibles ``p_i``."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms=None):
        self.degree = degree
        self.terms: dict[tuple, object] = {}
        for key, coeff in (terms.items() if isinstance(terms, dict) else terms or ()):
            self._add(key, coeff)

    def _add(self, factors: tuple, coeff):
        if len(factors) != self.degree:
            raise ValueError("wedge length does not match degree")
        if len(set(factors)) < len(factors):
            return
        order = sorted(range(len(factors)), key=lambda i: _sort_key(factors[i]))
        sign = _perm_sign(order)
        key = tuple(factors[i] for i in order)
        new = sympy.cancel(self.terms.get(key, 0) + sign * sympy.sympify(coeff))
        if new == 0:
            self.terms.pop(key, None)
        else:
            self.terms[key] = new

    @classmethod
    def dlog(cls, f, variables: Sequence[sympy.Symbol]) -> "LogForm":
        return cls(1, [((p,), e) for p, e in _irreducible_dlog(f, variables).items()])

    def wedge(self, other: "LogForm") -> "LogForm":
        out = LogForm(self.degree + other.degree)
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                out._add(k1 + k2, c1 * c2)
        return out

    __xor__ = wedge

    def __add__(self, other: "LogForm") -> "LogForm":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        out = LogForm(self.degree, self.terms)
        for k, c in other.terms.items():
            out._add(k, c)
        return out

    def __neg__(self):
        return LogForm(self.degree, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k):
        return LogForm(self.degree, {key: k * c for key, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, LogForm):
            return NotImplemented
        return self.degree == other.degree and not (self - other).terms

    def __bool__(self):
        return bool(self.terms)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, key=lambda k: tuple(map(_sort_key, k))):
            wedge = "^".join(f"dlog({sympy.sstr(p)})" for p in key)
            parts.append(f"({sympy.sstr(self.terms[key])})*{wedge}")
        return " + ".join(parts)

    __str__ = to_text

    def __repr__(self):
        return f"LogForm({self.to_text()})"


def _perm_sign(order: Sequence[int]) -> int:
    sign = 1
    order = list(order)
    for i in range(len(order)):
        while order[i] != i:
            j = order[i]
            order[i], order[j] = order[j], order[i]
            sign = -sign
    return sign


def wedge_dlogs(functions: Iterable, variables: Sequence[sympy.Symbol]) -> LogForm:
    form = LogForm(0, [((), 1)])
    for f in functions:
        form = form.wedge(LogForm.dlog(f, variables))
    return form


def psi(s: MilnorSymbolSum, variables: Sequence[sympy.Symbol]) -> LogForm:
    """``{f_1, ..., f_m} -> dlog f_1 ^ ... ^ dlog f_m``, extended additively."""
    out = LogForm(s.m)
    for entries, coeff in s.items():
        out = out + coeff * wedge_dlogs(entries, variables)
    return out


def x_symbols(m: int):
    return sympy.symbols(f"x1:{m + 1}", nonzero=True)


def a_symbols(m: int):
    return sympy.symbols(f"a1:{m + 1}", nonzero=True)


def vol_form(m: int) -> LogForm:
    """``dx_1/x_1 ^ ... ^ dx_m/x_m`` in the projective chart."""
    xs = x_symbols(m)
    return wedge_dlogs(xs, xs)


def volume_pullback(m: int) -> LogForm:
    """``vol_m`` pulled back to the coordinates ``(a_1, ..., a_m)`` through :func:`chart_change`."""
    a = a_symbols(m)
    return wedge_dlogs(chart_change(a), a)


def volume_calibration(m: int) -> int:
    """The sign ``eps`` with ``pullback(vol_m) = eps * dlog a_1 ^ ... ^ dlog a_m``."""
    if not 1 <= m <= 4:
        raise ValueError("volume calibration is provided for 1 <= m <= 4")
    a = a_symbols(m)
    target = wedge_dlogs(a, a)
    pulled = volume_pullback(m)
    if pulled == target:
        return 1
    if pulled == -target:
        return -1
    raise ArithmeticError(f"pullback {pulled} is not a multiple of {target}")
