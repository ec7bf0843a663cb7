"""Exact arithmetic over Q, Q(sqrt d) and F_p, plus small dense linear algebra.

Scalars are immutable and always stored in canonical form, so ``==`` and
``hash`` compare representations directly.  Vectors are plain tuples of
scalars and matrices are tuples of row tuples.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class FieldMismatchError(ValueError):
    """Raised when scalars from different fields are combined."""


class SingularMatrixError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _is_squarefree(n: int) -> bool:
    n = abs(n)
    f = 2
    while f * f <= n:
        if n % (f * f) == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class FieldDescriptor:
    """Names a base field: ``rational``, ``quadratic`` (with ``d``) or ``prime`` (with ``p``)."""

    kind: str
    d: int | None = None
    p: int | None = None

    def __post_init__(self):
        if self.kind == "rational":
            if self.d is not None or self.p is not None:
                raise ValueError("rational field takes no parameters")
        elif self.kind == "quadratic":
            d = self.d
            if not isinstance(d, int) or d in (0, 1) or not _is_squarefree(d):
                raise ValueError(f"quadratic field needs squarefree d != 0, 1, got {d!r}")
        elif self.kind == "prime":
            if not isinstance(self.p, int) or not _is_prime(self.p):
                raise ValueError(f"prime field needs a prime p, got {self.p!r}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @property
    def is_finite(self) -> bool:
        return self.kind == "prime"

    def __call__(self, value=0, b=0) -> "Scalar":
        """Build a scalar. For quadratic fields ``F(a, b)`` is ``a + b*sqrt(d)``."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatchError(f"{value.field} vs {self}")
            return value
        if self.kind == "rational":
            return Scalar(self, Fraction(value))
        if self.kind == "quadratic":
            return Scalar(self, (Fraction(value), Fraction(b)))
        value = Fraction(value)
        r = value.numerator * pow(value.denominator, -1, self.p) % self.p
        return Scalar(self, r)

    def zero(self) -> "Scalar":
        return self(0)

    def one(self) -> "Scalar":
        return self(1)

    def elements(self) -> Iterable["Scalar"]:
        """All elements of a finite field, 0 first."""
        if not self.is_finite:
            raise ValueError("only finite fields can be enumerated")
        return (Scalar(self, r) for r in range(self.p))

    def random(self, rng: random.Random, height: int = 5) -> "Scalar":
        """A random element; rational parts are n/d with |n|, d <= height."""
        if self.kind == "prime":
            return Scalar(self, rng.randrange(self.p))

        def q():
            return Fraction(rng.randint(-height, height), rng.randint(1, height))

        if self.kind == "rational":
            return Scalar(self, q())
        return Scalar(self, (q(), q()))

    def __str__(self):
        if self.kind == "rational":
            return "Q"
        if self.kind == "quadratic":
            return f"Q(sqrt({self.d}))"
        return f"F_{self.p}"

    def to_json(self):
        if self.kind == "rational":
            return "q"
        if self.kind == "quadratic":
            return f"q({self.d})"
        return f"fp:{self.p}"

    @classmethod
    def parse(cls, text: str) -> "FieldDescriptor":
        """Parse ``q``, ``q(d)`` / ``sqrt:d`` or ``fp:p``."""
        t = text.strip().lower()
        if t in ("q", "qq", "rational"):
            return QQ
        if t.startswith("fp:"):
            return cls("prime", p=int(t[3:]))
        if t.startswith("sqrt:"):
            return cls("quadratic", d=int(t[5:]))
        if t.startswith("q(") and t.endswith(")"):
            return cls("quadratic", d=int(t[2:-1]))
        raise ValueError(f"cannot parse field {text!r}")


QQ = FieldDescriptor("rational")


def quadratic_field(d: int) -> FieldDescriptor:
    return FieldDescriptor("quadratic", d=d)


def prime_field(p: int) -> FieldDescriptor:
    return FieldDescriptor("prime", p=p)


class Scalar:
    """An exact field element tied to its :class:`FieldDescriptor`."""

    __slots__ = ("field", "value", "_hash")

    def __init__(self, field: FieldDescriptor, value):
        self.field = field
        self.value = value
        self._hash = None

    # coercion ---------------------------------------------------------
    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatchError(f"cannot combine {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        k = self.field.kind
        if k == "rational":
            return Scalar(self.field, self.value + o.value)
        if k == "quadratic":
            return Scalar(self.field, (self.value[0] + o.value[0], self.value[1] + o.value[1]))
        return Scalar(self.field, (self.value + o.value) % self.field.p)

    __radd__ = __add__

    def __neg__(self):
        k = self.field.kind
        if k == "rational":
            return Scalar(self.field, -self.value)
        if k == "quadratic":
            return Scalar(self.field, (-self.value[0], -self.value[1]))
        return Scalar(self.field, -self.value % self.field.p)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        k = self.field.kind
        if k == "rational":
            return Scalar(self.field, self.value - o.value)
        if k == "quadratic":
            return Scalar(self.field, (self.value[0] - o.value[0], self.value[1] - o.value[1]))
        return Scalar(self.field, (self.value - o.value) % self.field.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        k = self.field.kind
        if k == "rational":
            return Scalar(self.field, self.value * o.value)
        if k == "quadratic":
            a, b = self.value
            c, e = o.value
            return Scalar(self.field, (a * c + b * e * self.field.d, a * e + b * c))
        return Scalar(self.field, self.value * o.value % self.field.p)

    __rmul__ = __mul__

    def inv(self) -> "Scalar":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        k = self.field.kind
        if k == "rational":
            return Scalar(self.field, 1 / self.value)
        if k == "quadratic":
            a, b = self.value
            norm = a * a - self.field.d * b * b
            return Scalar(self.field, (a / norm, -b / norm))
        return Scalar(self.field, pow(self.value, -1, self.field.p))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparison -------------------------------------------------------
    def __bool__(self):
        if self.field.kind == "quadratic":
            return bool(self.value[0] or self.value[1])
        return bool(self.value)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.value))
        return self._hash

    def is_rational(self) -> bool:
        return self.field.kind == "rational" or (self.field.kind == "quadratic" and not self.value[1])

    def to_fraction(self) -> Fraction:
        if self.field.kind == "rational":
            return self.value
        if self.field.kind == "quadratic" and not self.value[1]:
            return self.value[0]
        raise ValueError(f"{self!r} is not a rational number")

    def to_complex(self) -> complex:
        """Embedding into C (principal square root for quadratic fields)."""
        k = self.field.kind
        if k == "rational":
            return complex(self.value)
        if k == "quadratic":
            return complex(self.value[0]) + complex(self.value[1]) * complex(self.field.d) ** 0.5
        raise ValueError("finite field elements have no complex embedding")

    def __repr__(self):
        k = self.field.kind
        if k == "rational":
            return str(self.value)
        if k == "quadratic":
            a, b = self.value
            return f"({a} + {b}*sqrt({self.field.d}))"
        return f"{self.value} mod {self.field.p}"

    # serialization ----------------------------------------------------
    def to_json(self):
        k = self.field.kind
        if k == "rational":
            return _frac_str(self.value)
        if k == "quadratic":
            return {"a": _frac_str(self.value[0]), "b": _frac_str(self.value[1]), "d": self.field.d}
        return {"r": self.value, "p": self.field.p}


def _frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def scalar_from_json(obj, field: FieldDescriptor | None = None) -> Scalar:
    """Inverse of :meth:`Scalar.to_json`; ints and ``"p/q"`` strings are rational."""
    if isinstance(obj, dict):
        if "r" in obj:
            return prime_field(int(obj["p"]))(int(obj["r"]))
        return quadratic_field(int(obj["d"]))(Fraction(obj["a"]), Fraction(obj["b"]))
    if isinstance(obj, (int, str)):
        value = Fraction(obj)
        return (field or QQ)(value)
    raise ValueError(f"cannot decode scalar {obj!r}")


# --------------------------------------------------------------------------
# vectors and matrices

Vector = tuple
Matrix = tuple


def _field_of(rows: Sequence[Sequence[Scalar]]) -> FieldDescriptor:
    fields = {x.field for row in rows for x in row}
    if len(fields) != 1:
        raise FieldMismatchError(f"entries from several fields: {fields}")
    return fields.pop()


def vector(field: FieldDescriptor, values) -> Vector:
    return tuple(field(v) for v in values)


def matrix(field: FieldDescriptor, rows) -> Matrix:
    return tuple(tuple(field(v) for v in row) for row in rows)


def identity(field: FieldDescriptor, n: int) -> Matrix:
    return tuple(tuple(field(int(i == j)) for j in range(n)) for i in range(n))


def unit_vector(field: FieldDescriptor, m: int, i: int) -> Vector:
    return tuple(field(int(j == i)) for j in range(m))


def mat_vec(M: Matrix, v: Vector) -> Vector:
    if any(len(row) != len(v) for row in M):
        raise ValueError("dimension mismatch")
    out = []
    for row in M:
        acc = row[0] * v[0]
        for a, b in zip(row[1:], v[1:]):
            acc = acc + a * b
        out.append(acc)
    return tuple(out)


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    cols = list(zip(*B))
    return tuple(tuple(_dot(row, col) for col in cols) for row in A)


def _dot(u, v):
    acc = u[0] * v[0]
    for a, b in zip(u[1:], v[1:]):
        acc = acc + a * b
    return acc


def transpose(M: Matrix) -> Matrix:
    return tuple(zip(*M))


def det(M: Matrix) -> Scalar:
    """Determinant by Bareiss fraction-free elimination."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("det needs a square matrix")
    if n == 0:
        raise ValueError("empty matrix")
    field = _field_of(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = M
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    a = [list(row) for row in M]
    sign = 1
    prev = field.one()
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return field.zero()
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) / prev
        prev = akk
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def solve(M: Matrix, b: Vector) -> Vector:
    """The unique x with M x = b (Gauss-Jordan with exact pivots)."""
    return solve_many(M, [b])[0]


def solve_many(M: Matrix, bs: Sequence[Vector]) -> list[Vector]:
    """Solve ``M x = b`` for several right-hand sides with one elimination."""
    n = len(M)
    bs = list(bs)
    if any(len(row) != n for row in M) or any(len(b) != n for b in bs):
        raise ValueError("solve needs a square system")
    _field_of(list(M) + bs)
    a = [list(row) + [b[i] for b in bs] for i, row in enumerate(M)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        a[k], a[piv] = a[piv], a[k]
        inv = a[k][k].inv()
        a[k] = [x * inv for x in a[k]]
        for i in range(n):
            if i != k and a[i][k]:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return [tuple(a[i][n + j] for i in range(n)) for j in range(len(bs))]


def inverse(M: Matrix) -> Matrix:
    field = _field_of(M)
    n = len(M)
    return transpose(solve_many(M, [unit_vector(field, n, j) for j in range(n)]))


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    """Row rank by elimination; ``rows`` need not be square."""
    a = [list(r) for r in rows]
    if not a:
        return 0
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c].inv()
        for i in range(r + 1, len(a)):
            if a[i][c]:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return r


def random_invertible(field: FieldDescriptor, n: int, rng: random.Random, height: int = 5) -> Matrix:
    while True:
        M = tuple(tuple(field.random(rng, height) for _ in range(n)) for _ in range(n))
        if det(M):
            return M
