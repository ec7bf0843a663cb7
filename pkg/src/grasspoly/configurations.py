"""Tuples of vectors in general position and their GL_m-orbits.

A :class:`Configuration` is an ordered tuple ``(v_0, ..., v_n)`` of vectors in
``k^m``.  An :class:`OrbitPoint` is the same data modulo the diagonal
``GL_m(k)`` action, stored through a canonical representative: when there are
at least ``m + 1`` vectors the first ``m`` are moved to the standard basis
(the stabiliser of a general-position frame is trivial, so this is unique).
Tuples with at most ``m`` independent vectors form a single orbit and are
represented by ``(e_1, ..., e_l)``; these are the extra points used to
complete the truncated simplicial space in low degrees.

The symmetric group acts on the left: ``act(sigma, c)`` moves the vector in
slot ``i`` to slot ``sigma(i)``.
"""

from __future__ import annotations

import functools
import itertools
import json
import math
import random
from fractions import Fraction
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .fields import (
    FieldDescriptor,
    Matrix,
    Scalar,
    SingularMatrixError,
    det,
    inverse,
    mat_vec,
    rank,
    scalar_from_json,
    solve_many,
    transpose,
    unit_vector,
)


class NotGeneralPositionError(ValueError):
    pass


# --------------------------------------------------------------------------
# permutations


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        im = list(range(n))
        im[i], im[j] = im[j], im[i]
        return cls(tuple(im))

    @classmethod
    def cycle(cls, n: int) -> "Permutation":
        """The cycle i -> i + 1 mod n."""
        return cls(tuple((i + 1) % n for i in range(n)))

    @classmethod
    def all(cls, n: int):
        return [cls(p) for p in itertools.permutations(range(n))]

    @property
    def degree(self) -> int:
        return len(self.images)

    @cached_property
    def sign(self) -> int:
        seen = [False] * len(self.images)
        s = 1
        for i in range(len(self.images)):
            if seen[i]:
                continue
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = self.images[j]
                length += 1
            if length % 2 == 0:
                s = -s
        return s

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: ``(s * t)(i) = s(t(i))``."""
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return Permutation(tuple(self.images[k] for k in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, k in enumerate(self.images):
            inv[k] = i
        return Permutation(tuple(inv))

    def permute(self, items: Sequence):
        if len(items) != self.degree:
            raise ValueError(f"permutation of degree {self.degree} applied to {len(items)} items")
        out = [None] * self.degree
        for i, x in enumerate(items):
            out[self.images[i]] = x
        return tuple(out)


# --------------------------------------------------------------------------
# configurations


@dataclass(frozen=True)
class Configuration:
    m: int
    vectors: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self):
        for v in self.vectors:
            if len(v) != self.m:
                raise ValueError(f"vector {v} does not lie in k^{self.m}")

    @classmethod
    def of(cls, field: FieldDescriptor, rows) -> "Configuration":
        vecs = tuple(tuple(field(x) for x in row) for row in rows)
        return cls(len(vecs[0]), vecs)

    def __len__(self):
        return len(self.vectors)

    @property
    def field(self) -> FieldDescriptor:
        return self.vectors[0][0].field

    def face(self, j: int) -> "Configuration":
        if not 0 <= j < len(self.vectors):
            raise IndexError(f"face index {j} out of range for {len(self.vectors)} vectors")
        return Configuration(self.m, self.vectors[:j] + self.vectors[j + 1:])

    def act(self, sigma: Permutation) -> "Configuration":
        return Configuration(self.m, sigma.permute(self.vectors))

    def transform(self, g: Matrix) -> "Configuration":
        """Diagonal left action of a matrix."""
        return Configuration(self.m, tuple(mat_vec(g, v) for v in self.vectors))

    def prepend(self, v) -> "Configuration":
        return Configuration(self.m, (tuple(v),) + self.vectors)

    def is_general_position(self) -> bool:
        return is_general_position(self)

    def to_json(self) -> dict:
        return {"m": self.m, "vectors": [[x.to_json() for x in v] for v in self.vectors]}

    @classmethod
    def from_json(cls, obj, field: FieldDescriptor | None = None) -> "Configuration":
        if isinstance(obj, str):
            obj = json.loads(obj)
        vecs = tuple(tuple(scalar_from_json(x, field) for x in v) for v in obj["vectors"])
        conf = cls(int(obj["m"]), vecs)
        if len({x.field for v in vecs for x in v}) > 1:
            raise ValueError("configuration mixes fields")
        return conf

    def __repr__(self):
        return f"Configuration(m={self.m}, {list(map(list, self.vectors))})"


def is_general_position(c: Configuration) -> bool:
    """Every ``min(m, len)`` of the vectors are linearly independent."""
    vecs = c.vectors
    m = c.m
    if any(len(v) != m for v in vecs):
        raise ValueError("dimension mismatch")
    if len(vecs) <= m:
        return rank(vecs) == len(vecs)
    if m == 1:
        return all(v[0] for v in vecs)
    if c.field.kind == "rational":
        # rescaling a vector does not change which minors vanish
        ints = [_integer_vector(v)[0] for v in vecs]
        return all(_int_det(sub) for sub in itertools.combinations(ints, m))
    return all(det(sub) for sub in itertools.combinations(vecs, m))


def _integer_vector(v) -> tuple[tuple[int, ...], int]:
    """``(L v, L)`` with ``L`` the least common denominator of the entries."""
    fracs = [x.value for x in v]
    scale = 1
    for q in fracs:
        scale = scale * q.denominator // math.gcd(scale, q.denominator)
    return tuple(q.numerator * (scale // q.denominator) for q in fracs), scale


def _int_det(rows) -> int:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    # Bareiss elimination stays in the integers
    a = [list(r) for r in rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _rational_coordinates(c: "Configuration") -> tuple:
    """``g v_k`` for ``k >= m``, where ``g`` sends the frame to the standard basis (Cramer's rule)."""
    m = c.m
    field = c.field
    frame = [_integer_vector(v) for v in c.vectors[:m]]
    cols = [v for v, _ in frame]
    d = _int_det(cols)
    if d == 0:
        raise NotGeneralPositionError(f"{c} is not in general position")
    out = []
    for v in c.vectors[m:]:
        iv, scale = _integer_vector(v)
        coords = []
        for i in range(m):
            # rows of the transposed frame are the frame vectors themselves
            di = _int_det(cols[:i] + [iv] + cols[i + 1:])
            coords.append(Scalar(field, Fraction(di * frame[i][1], d * scale)))
        out.append(tuple(coords))
    return tuple(out)


def random_configuration(
    field: FieldDescriptor, m: int, length: int, rng: random.Random, height: int = 4, attempts: int = 1000
) -> Configuration:
    for _ in range(attempts):
        vecs = tuple(tuple(field.random(rng, height) for _ in range(m)) for _ in range(length))
        c = Configuration(m, vecs)
        if is_general_position(c):
            return c
    raise NotGeneralPositionError(f"no general-position {length}-tuple found in {field}^{m}")


# --------------------------------------------------------------------------
# orbit points


@dataclass(frozen=True)
class OrbitPoint:
    """A point of ``G^m_n`` (or one of the completion points in low degree)."""

    canonical: Configuration

    @property
    def m(self) -> int:
        return self.canonical.m

    @property
    def n(self) -> int:
        return len(self.canonical) - self.m - 1

    @property
    def vectors(self):
        return self.canonical.vectors

    def __len__(self):
        return len(self.canonical)

    def face(self, j: int) -> "OrbitPoint":
        return normalize(self.canonical.face(j), check=False)

    def act(self, sigma: Permutation) -> "OrbitPoint":
        return normalize(self.canonical.act(sigma), check=False)

    def coordinates(self) -> tuple[Scalar, ...]:
        """``(a_1, ..., a_m)`` for a point ``(e_1, ..., e_m, sum a_i e_i)`` of ``G^m_0``."""
        if self.n != 0:
            raise ValueError("coordinates are defined for (m+1)-tuples only")
        return self.canonical.vectors[-1]

    def to_json(self) -> dict:
        return self.canonical.to_json()


def frame_inverse(c: Configuration) -> Matrix:
    """``g`` with ``g v_i = e_{i+1}`` for the first ``m`` vectors."""
    frame = transpose(c.vectors[: c.m])
    return inverse(frame)


@functools.lru_cache(maxsize=None)
def _standard_frame(field: FieldDescriptor, m: int) -> tuple:
    return tuple(unit_vector(field, m, i) for i in range(m))


def normalize(c: Configuration | OrbitPoint, check: bool = True) -> OrbitPoint:
    """Canonical representative ``(e_1, ..., e_m, g v_m, ...)`` of the orbit of ``c``.

    ``check=False`` skips the general-position test for inputs already
    known to be generic (faces and reorderings of generic tuples).
    """
    if isinstance(c, OrbitPoint):
        return c
    m = c.m
    field = c.field
    if check and not is_general_position(c):
        raise NotGeneralPositionError(f"{c} is not in general position")
    frame = _standard_frame(field, m)[: len(c)]
    if len(c) <= m:
        return OrbitPoint(Configuration(m, frame))
    if field.kind == "rational":
        rest = _rational_coordinates(c)
    else:
        try:
            rest = solve_many(transpose(c.vectors[:m]), c.vectors[m:])
        except SingularMatrixError:
            raise NotGeneralPositionError(f"{c} is not in general position") from None
    return OrbitPoint(Configuration(m, frame + tuple(rest)))


def orbit_equal(c1: Configuration, c2: Configuration) -> bool:
    if c1.m != c2.m or len(c1) != len(c2):
        raise ValueError("configurations of different shape")
    return normalize(c1) == normalize(c2)


def face(c, j: int):
    return c.face(j)


def act(sigma: Permutation, c):
    return c.act(sigma)


def suslin_point(field: FieldDescriptor, coords: Sequence) -> OrbitPoint:
    """The orbit of ``(e_1, ..., e_m, sum a_i e_i)``."""
    m = len(coords)
    a = tuple(field(x) for x in coords)
    if not all(a):
        raise NotGeneralPositionError("all coordinates must be nonzero")
    return OrbitPoint(Configuration(m, tuple(unit_vector(field, m, i) for i in range(m)) + (a,)))


# --------------------------------------------------------------------------
# cross-ratio and the two charts on G^m_0


def _det2(u, v):
    return u[0] * v[1] - u[1] * v[0]


def cross_ratio(p) -> object:
    """Cross-ratio of four vectors in ``k^2`` viewed as points of ``P^1``.

    Convention: ``r = [02][13] / ([03][12])`` with ``[ij] = det(v_i, v_j)``,
    i.e. ``(p0-p2)(p1-p3) / ((p0-p3)(p1-p2))`` on slopes.  Works on exact
    scalars and on mpmath numbers alike.
    """
    vecs = p.vectors if isinstance(p, (Configuration, OrbitPoint)) else tuple(p)
    if len(vecs) != 4 or any(len(v) != 2 for v in vecs):
        raise ValueError("cross_ratio needs four vectors in k^2")
    v0, v1, v2, v3 = vecs
    num = _det2(v0, v2) * _det2(v1, v3)
    den = _det2(v0, v3) * _det2(v1, v2)
    if num == 0 or den == 0:
        raise NotGeneralPositionError("degenerate configuration")
    return num / den


def cross_ratio_orbit(r) -> set:
    """The six values ``r, 1/r, 1-r, 1/(1-r), (r-1)/r, r/(r-1)``."""
    one = r * 0 + 1
    return {r, one / r, one - r, one / (one - r), (r - one) / r, r / (r - one)}


def _kernel_line(columns, one, zero):
    """A nonzero vector ``t`` with ``sum t_i columns[i] = 0`` for ``m + 1`` columns spanning ``k^m``.

    Fixes ``t_m = -1`` and solves for the rest by Gauss-Jordan elimination;
    works on exact scalars and on sympy expressions.
    """
    m = len(columns) - 1
    a = [[columns[j][i] for j in range(m)] + [columns[m][i]] for i in range(m)]
    for k in range(m):
        piv = next((i for i in range(k, m) if a[i][k] != zero), None)
        if piv is None:
            raise NotGeneralPositionError("first m vectors are dependent")
        a[k], a[piv] = a[piv], a[k]
        inv = one / a[k][k]
        a[k] = [x * inv for x in a[k]]
        for i in range(m):
            if i != k and a[i][k] != zero:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return [a[i][m] for i in range(m)] + [-one]


def chart_change(a: Sequence) -> tuple:
    """Projective coordinates ``(x_1, ..., x_m)`` of the orbit ``(e_1, ..., e_m, sum a_i e_i)``.

    The orbit of ``(v_0, ..., v_m)`` corresponds to the kernel line of
    ``k^{m+1} -> k^m, e_i -> v_i`` (the target is ``k^m`` since the ``v_i``
    live there), normalised so that its 0-th coordinate is 1.  Accepts exact
    scalars or sympy expressions.
    """
    a = tuple(a)
    m = len(a)
    if m == 0:
        raise ValueError("empty coordinate tuple")
    if isinstance(a[0], Scalar):
        one, zero = a[0].field.one(), a[0].field.zero()
    else:
        import sympy

        one, zero = sympy.Integer(1), sympy.Integer(0)
    if any(x == zero for x in a):
        raise NotGeneralPositionError("chart_change needs nonzero coordinates")
    columns = [tuple(one if i == j else zero for i in range(m)) for j in range(m)] + [a]
    t = _kernel_line(columns, one, zero)
    return tuple(_simplify(t[i] / t[0]) for i in range(1, m + 1))


def _simplify(x):
    if isinstance(x, Scalar):
        return x
    import sympy

    return sympy.cancel(x)
