"""Chains on configurations, the boundary map, Alt, and Grassmann homology.

A tuple of length ``l`` sits in chain degree ``l - 1``.  In *equivariant*
mode the basis is the set of configurations themselves (the complex
``C_n(k^m)``); in *coinvariant* mode the basis is the set of
``GL_m``-orbits, each stored by its canonical representative.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .configurations import Configuration, OrbitPoint, Permutation, normalize
from .fields import FieldDescriptor, det, rank, unit_vector
from . import smith

EQUIVARIANT = "equivariant"
COINVARIANT = "coinvariant"


class GenericVectorExhausted(RuntimeError):
    """No vector keeps every configuration in general position."""


class HomologySizeError(ValueError):
    pass


class Chain:
    """A finite linear combination of configurations (or orbit points)."""

    __slots__ = ("terms", "mode", "rational")

    def __init__(self, terms=None, mode: str = EQUIVARIANT, rational: bool = False):
        if mode not in (EQUIVARIANT, COINVARIANT):
            raise ValueError(f"unknown mode {mode!r}")
        self.mode = mode
        self.rational = rational
        self.terms: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for basis, coeff in items:
                self._add_term(basis, coeff)

    def _key(self, basis):
        if self.mode == COINVARIANT:
            return normalize(basis)
        if isinstance(basis, OrbitPoint):
            return basis.canonical
        return basis

    def _add_term(self, basis, coeff):
        coeff = Fraction(coeff) if self.rational else _as_int(coeff)
        if not coeff:
            return
        key = self._key(basis)
        new = self.terms.get(key, 0) + coeff
        if new:
            self.terms[key] = new
        else:
            self.terms.pop(key, None)

    @classmethod
    def single(cls, basis, coeff=1, mode: str = EQUIVARIANT, rational: bool = False) -> "Chain":
        return cls([(basis, coeff)], mode, rational)

    def _empty(self) -> "Chain":
        return Chain(mode=self.mode, rational=self.rational)

    @property
    def degree(self) -> int | None:
        lengths = {len(b) for b in self.terms}
        if not lengths:
            return None
        if len(lengths) > 1:
            raise ValueError("chain mixes degrees")
        return lengths.pop() - 1

    def items(self):
        return self.terms.items()

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        return self.mode == other.mode and self.terms == other.terms

    def __add__(self, other: "Chain") -> "Chain":
        if self.mode != other.mode:
            raise ValueError("cannot add chains in different modes")
        out = Chain(self.terms, self.mode, self.rational or other.rational)
        for b, c in other.items():
            out._add_term(b, c)
        return out

    def __neg__(self) -> "Chain":
        return Chain({b: -c for b, c in self.items()}, self.mode, self.rational)

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __rmul__(self, k) -> "Chain":
        rational = self.rational or isinstance(k, Fraction)
        return Chain({b: k * c for b, c in self.items()}, self.mode, rational)

    def to_rational(self) -> "Chain":
        return Chain(self.terms, self.mode, True)

    def map_basis(self, fn) -> "Chain":
        out = self._empty()
        for b, c in self.items():
            out._add_term(fn(b), c)
        return out

    def act(self, sigma: Permutation) -> "Chain":
        return self.map_basis(lambda b: b.act(sigma))

    def transform(self, g) -> "Chain":
        """Diagonal GL_m action on an equivariant chain."""
        if self.mode != EQUIVARIANT:
            return Chain(self.terms, self.mode, self.rational)
        return self.map_basis(lambda b: b.transform(g))

    def coinvariants(self) -> "Chain":
        return Chain(self.terms, COINVARIANT, self.rational)

    def __repr__(self):
        body = " + ".join(f"{c}*{list(map(list, b.vectors))}" for b, c in self.items()) or "0"
        return f"Chain[{self.mode}]({body})"


def _as_int(c):
    if isinstance(c, Fraction):
        if c.denominator != 1:
            raise ValueError("non-integral coefficient in an integer chain")
        return c.numerator
    return int(c)


def boundary(c: Chain) -> Chain:
    """``sum_j (-1)^j face_j`` applied termwise."""
    out = c._empty()
    for basis, coeff in c.items():
        if len(basis) < 2:
            continue
        for j in range(len(basis)):
            out._add_term(basis.face(j), coeff if j % 2 == 0 else -coeff)
    return out


def alt(c: Chain) -> Chain:
    """Projection ``(1/l!) sum sgn(s) s`` onto the alternating part (``l`` = tuple length)."""
    if not c.rational:
        raise TypeError("alt needs rational coefficients; call to_rational() first")
    out = c._empty()
    cache: dict[int, list[Permutation]] = {}
    for basis, coeff in c.items():
        ell = len(basis)
        if ell == 1:
            out._add_term(basis, coeff)
            continue
        perms = cache.setdefault(ell, Permutation.all(ell))
        w = Fraction(coeff) / math.factorial(ell)
        for s in perms:
            out._add_term(basis.act(s), w * s.sign)
    return out


# --------------------------------------------------------------------------
# contracting homotopy


def _extends(v, conf: Configuration) -> bool:
    """Is ``(v, v_0, ..., v_n)`` still in general position (given the tuple already is)?"""
    m = conf.m
    vecs = conf.vectors
    if len(vecs) + 1 <= m:
        return rank((v,) + vecs) == len(vecs) + 1
    if m == 1:
        return bool(v[0])
    return all(det((v,) + sub) for sub in itertools.combinations(vecs, m - 1))


def _height_order(h: int):
    yield 0
    for k in range(1, h + 1):
        yield k
        yield -k


def _candidates(field: FieldDescriptor, m: int, max_height: int):
    if field.is_finite:
        order = list(_height_order(field.p // 2))
        order = [x % field.p for x in order][: field.p]
        for tup in itertools.product(order, repeat=m):
            if any(tup):
                yield tuple(field(x) for x in reversed(tup))
        return
    for h in range(1, max_height + 1):
        order = list(_height_order(h))
        for tup in itertools.product(order, repeat=m):
            if max(abs(x) for x in tup) == h:
                yield tuple(field(x) for x in reversed(tup))


def find_generic_vector(
    configurations: Sequence[Configuration], m: int | None = None, field: FieldDescriptor | None = None,
    max_height: int = 64,
):
    """First vector, in height order, that can be prepended to every configuration.

    Integer vectors are enumerated by max-norm and, within a height, in a
    fixed order that starts with ``e_1``.  Over a finite field every
    nonzero vector is tried once and exhaustion is reported.
    """
    configurations = list(configurations)
    if configurations:
        m = configurations[0].m
        field = configurations[0].field
    if m is None or field is None:
        raise ValueError("need m and field when no configurations are given")
    for v in _candidates(field, m, max_height):
        if all(_extends(v, c) for c in configurations):
            return v
    raise GenericVectorExhausted(f"no generic vector found in {field}^{m}")


def cone_homotopy(z: Chain) -> Chain:
    """A chain ``w`` with ``boundary(w) == z`` for a cycle ``z`` of positive degree.

    Prepends one generic vector ``v`` to every term: since
    ``d(v, x) = x - (v, dx)`` and ``dz = 0`` the correction terms cancel.
    """
    if z.mode != EQUIVARIANT:
        raise ValueError("cone_homotopy works on equivariant chains")
    if not z:
        return z._empty()
    if z.degree < 1:
        raise ValueError("cone_homotopy needs a cycle of positive degree")
    if boundary(z):
        raise ValueError("input is not a cycle")
    confs = [b for b in z]
    v = find_generic_vector(confs)
    return Chain([(b.prepend(v), c) for b, c in z.items()], EQUIVARIANT, z.rational)


# --------------------------------------------------------------------------
# Grassmann homology over finite fields


@dataclass
class DegreeHomology:
    n: int
    chain_rank: int
    rank: int
    torsion: list[int]


@dataclass
class HomologyReport:
    field: FieldDescriptor
    m: int
    degrees: list[DegreeHomology]
    boundary_squared_zero: bool
    boundary_ranks: dict[int, int] = dc_field(default_factory=dict)
    suslin_cokernel_rank: int | None = None
    backend: str = ""

    def to_json(self) -> dict:
        out = {
            "degrees": [
                {"n": d.n, "rank": d.rank, "torsion": list(d.torsion), "chain_rank": d.chain_rank}
                for d in self.degrees
            ],
            "field": self.field.to_json(),
            "m": self.m,
            "boundary_squared_zero": self.boundary_squared_zero,
        }
        if self.suslin_cokernel_rank is not None:
            out["suslin_cokernel_rank"] = self.suslin_cokernel_rank
        return out


def enumerate_orbit_points(field: FieldDescriptor, m: int, length: int, limit: int | None = None) -> list[OrbitPoint]:
    """All canonical orbit points of general-position ``length``-tuples in ``F_p^m``."""
    if not field.is_finite:
        raise ValueError("enumeration needs a finite field")
    basis = tuple(unit_vector(field, m, i) for i in range(m))
    if length <= m:
        return [OrbitPoint(Configuration(m, basis[:length]))]
    nonzero = [v for v in itertools.product(list(field.elements()), repeat=m) if any(v)]
    level = [Configuration(m, basis)]
    for _ in range(length - m):
        nxt = []
        for conf in level:
            for v in nonzero:
                if m == 1 or all(det((v,) + sub) for sub in itertools.combinations(conf.vectors, m - 1)):
                    nxt.append(Configuration(m, conf.vectors + (v,)))
            if limit is not None and len(nxt) > limit:
                raise HomologySizeError(f"more than {limit} orbit points of length {length}")
        level = nxt
    return [OrbitPoint(c) for c in level]


def boundary_matrix(sources: list[OrbitPoint], targets: list[OrbitPoint]) -> list[list[int]]:
    index = {p: i for i, p in enumerate(targets)}
    mat = [[0] * len(sources) for _ in targets]
    for col, p in enumerate(sources):
        for j in range(len(p)):
            mat[index[p.face(j)]][col] += 1 if j % 2 == 0 else -1
    return mat


def _composite_vanishes(a: list[list[int]], b: list[list[int]]) -> bool:
    if not a or not b or not b[0]:
        return True
    return not np.any(np.array(a, dtype=np.int64) @ np.array(b, dtype=np.int64))


def grassmann_homology(
    field: FieldDescriptor, m: int, n_max: int, max_generators: int = 2000, backend: str | None = None
) -> HomologyReport:
    """Homology of the coinvariant complex ``C_n(F_p^m)_{GL_m}`` in degrees ``0..n_max``."""
    if not field.is_finite:
        raise ValueError("grassmann_homology enumerates, so it needs a prime field")
    if not 1 <= m <= 2:
        raise HomologySizeError("only m <= 2 is supported")
    if not 0 <= n_max <= m + 2:
        raise HomologySizeError(f"n_max must lie in [0, m + 2] = [0, {m + 2}]")
    points = [enumerate_orbit_points(field, m, n + 1, max_generators) for n in range(n_max + 2)]
    for n, pts in enumerate(points):
        if len(pts) > max_generators:
            raise HomologySizeError(f"degree {n} has {len(pts)} generators (> {max_generators})")
    mats = {n: boundary_matrix(points[n], points[n - 1]) for n in range(1, n_max + 2)}
    ranks = {0: 0}
    invariants = {}
    for n, mat in mats.items():
        if not points[n] or not points[n - 1]:
            ranks[n], invariants[n] = 0, []
            continue
        inv = smith.smith_invariants(mat, backend)
        ranks[n], invariants[n] = len(inv), inv
    sq_zero = all(_composite_vanishes(mats[n], mats[n + 1]) for n in range(1, n_max + 1))
    degrees = []
    for n in range(n_max + 1):
        dim = len(points[n])
        degrees.append(
            DegreeHomology(
                n=n,
                chain_rank=dim,
                rank=dim - ranks[n] - ranks[n + 1],
                torsion=[d for d in invariants[n + 1] if d > 1],
            )
        )
    coker = None
    if n_max >= m:
        # GH_m = ker d_m / im d_{m+1} inside S_m = C_m / im d_{m+1}
        s_rank = len(points[m]) - ranks[m + 1]
        coker = s_rank - degrees[m].rank
    return HomologyReport(field, m, degrees, sq_zero, ranks, coker, backend or smith.BACKEND)
