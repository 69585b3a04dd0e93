"""Exact arithmetic in R_N = Q[t]/(t^N).

R_N stands in for the centre C[[t]] of the boundary algebra.  Coefficients
are :class:`fractions.Fraction`, so nothing ever rounds.  Small dense 2x2
matrices over R_N live here too since every module map is one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import NotAUnit, NotDivisible, TruncationMismatch

DEFAULT_TRUNCATION = 16

Scalar = Union[int, Fraction]


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


@dataclass(frozen=True)
class SeriesRing:
    """The ring Q[t]/(t^N)."""

    truncation_order: int = DEFAULT_TRUNCATION

    def __post_init__(self):
        if not isinstance(self.truncation_order, int) or self.truncation_order < 2:
            raise ValueError("truncation order must be an integer >= 2")

    @property
    def N(self) -> int:
        return self.truncation_order

    def __call__(self, value) -> "TruncatedSeries":
        """Coerce a scalar, a coefficient list or a series into this ring."""
        if isinstance(value, TruncatedSeries):
            if value.order != self.N:
                raise TruncationMismatch(f"series has order {value.order}, ring has {self.N}")
            return value
        if isinstance(value, (int, Fraction, str)):
            return self.poly([value])
        return self.poly(value)

    def poly(self, coeffs: Iterable) -> "TruncatedSeries":
        """Series from coefficients, constant term first; excess terms are dropped."""
        cs = [_frac(c) for c in coeffs][: self.N]
        cs.extend([Fraction(0)] * (self.N - len(cs)))
        return TruncatedSeries(cs)

    @property
    def zero(self) -> "TruncatedSeries":
        return self.poly([])

    @property
    def one(self) -> "TruncatedSeries":
        return self.poly([1])

    @property
    def t(self) -> "TruncatedSeries":
        return self.monomial(1)

    def monomial(self, degree: int, coeff: Scalar = 1) -> "TruncatedSeries":
        cs = [0] * self.N
        if degree < self.N:
            cs[degree] = coeff
        return self.poly(cs)


class TruncatedSeries:
    """An element of Q[t]/(t^N) stored as exactly N coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Fraction]):
        self.coeffs = tuple(coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @property
    def ring(self) -> SeriesRing:
        return SeriesRing(self.order)

    @property
    def constant(self) -> Fraction:
        return self.coeffs[0]

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            if other.order != self.order:
                raise TruncationMismatch(
                    f"cannot combine orders {self.order} and {other.order}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.poly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return TruncatedSeries([a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return TruncatedSeries([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([a * other for a in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = self.order
        a, b = self.coeffs, other.coeffs
        out = [0] * n
        bnz = [(j, bj) for j, bj in enumerate(b) if bj]
        for i, ai in enumerate(a):
            if not ai:
                continue
            lim = n - i
            for j, bj in bnz:
                if j >= lim:
                    break
                out[i + j] += ai * bj
        return TruncatedSeries([Fraction(c) for c in out])

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        if isinstance(other, TruncatedSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def valuation(self):
        """Index of the first nonzero coefficient, or None for zero."""
        for d, c in enumerate(self.coeffs):
            if c:
                return d
        return None

    def divisible_by_t(self) -> bool:
        return self.coeffs[0] == 0

    def is_unit(self) -> bool:
        return self.coeffs[0] != 0

    def invert(self) -> "TruncatedSeries":
        a = self.coeffs
        if a[0] == 0:
            raise NotAUnit(f"{self} has zero constant term")
        inv0 = 1 / a[0]
        u = [inv0]
        for d in range(1, self.order):
            s = sum(a[e] * u[d - e] for e in range(1, d + 1) if a[e])
            u.append(-s * inv0)
        return TruncatedSeries([Fraction(c) for c in u])

    def shift_down(self, d: int = 1) -> "TruncatedSeries":
        """Return v with t^d * v == self; the top d coefficients of v are zero.

        Coefficients of v above t^(N-d-1) are not determined by self, so
        exactness needs callers to work with enough guard precision.
        """
        if d < 0:
            raise ValueError("shift must be nonnegative")
        if any(self.coeffs[:d]):
            raise NotDivisible(f"{self} is not divisible by t^{d}")
        return TruncatedSeries(self.coeffs[d:] + (Fraction(0),) * d)

    def shift_up(self, d: int = 1) -> "TruncatedSeries":
        """Multiply by t^d."""
        return TruncatedSeries(((Fraction(0),) * d + self.coeffs)[: self.order])

    def with_order(self, order: int) -> "TruncatedSeries":
        """Truncate, or zero-pad to the polynomial lift, to another order."""
        if order <= self.order:
            return TruncatedSeries(self.coeffs[:order])
        return TruncatedSeries(self.coeffs + (Fraction(0),) * (order - self.order))

    def degree(self):
        for d in range(self.order - 1, -1, -1):
            if self.coeffs[d]:
                return d
        return None

    def to_strings(self) -> list[str]:
        deg = self.degree()
        if deg is None:
            return ["0"]
        return [str(c) for c in self.coeffs[: deg + 1]]

    def __repr__(self):
        return f"TruncatedSeries({self}, N={self.order})"

    def __str__(self):
        terms = []
        for d, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = abs(c)
            if d == 0:
                body = str(mag)
            else:
                mono = "t" if d == 1 else f"t^{d}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def series_sum(items: Iterable[TruncatedSeries], ring: SeriesRing) -> TruncatedSeries:
    total = ring.zero
    for s in items:
        total = total + s
    return total


Vector = tuple  # of TruncatedSeries


class Matrix:
    """Small dense matrix over R_N, immutable."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[TruncatedSeries]]):
        self.rows = tuple(tuple(r) for r in rows)

    @classmethod
    def identity(cls, ring: SeriesRing, size: int = 2) -> "Matrix":
        return cls.scalar(ring.one, size)

    @classmethod
    def scalar(cls, s: TruncatedSeries, size: int = 2) -> "Matrix":
        zero = s.ring.zero
        return cls([[s if i == j else zero for j in range(size)] for i in range(size)])

    @classmethod
    def zeros(cls, ring: SeriesRing, nrows: int, ncols: int) -> "Matrix":
        return cls([[ring.zero] * ncols for _ in range(nrows)])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    @property
    def ring(self) -> SeriesRing:
        return self.rows[0][0].ring

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            n, m = self.shape
            m2, p = other.shape
            if m != m2:
                raise ValueError("shape mismatch")
            out = []
            for i in range(n):
                row = []
                for j in range(p):
                    acc = None
                    for l in range(m):
                        a, b = self.rows[i][l], other.rows[l][j]
                        if a.is_zero() or b.is_zero():
                            continue
                        term = a * b
                        acc = term if acc is None else acc + term
                    row.append(acc if acc is not None else self.rows[0][0].ring.zero)
                out.append(row)
            return Matrix(out)
        if isinstance(other, tuple):
            return tuple(
                series_sum((a * v for a, v in zip(row, other)), other[0].ring)
                for row in self.rows
            )
        return NotImplemented

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in r] for r in self.rows])

    def scale(self, s) -> "Matrix":
        return Matrix([[a * s for a in r] for r in self.rows])

    def map(self, fn) -> "Matrix":
        return Matrix([[fn(a) for a in r] for r in self.rows])

    def with_order(self, order: int) -> "Matrix":
        return self.map(lambda a: a.with_order(order))

    def det(self) -> TruncatedSeries:
        if self.shape == (1, 1):
            return self.rows[0][0]
        if self.shape != (2, 2):
            raise ValueError("det implemented for 1x1 and 2x2 only")
        (a, b), (c, d) = self.rows
        return a * d - b * c

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(", ".join(str(a) for a in r) for r in self.rows)
        return f"Matrix[{body}]"
