"""Quiver representations of B_{k,n} over R_N: L_I and the rank-2 modules M(I, J).

Basis convention for rank 2: matrices are upper triangular, so the first
basis vector spans the submodule L_J and the second maps onto the quotient
L_I.  Hence x at an I-only label has diagonal (t, 1) and at a J-only label
diagonal (1, t).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .combinat import ModelReduction, Rim, model_reduction, model_rims
from .errors import BadParameters
from .series import Matrix, SeriesRing, TruncatedSeries, series_sum


@dataclass(frozen=True)
class QuiverRep:
    """Free R_N-modules of a common rank at vertices 0..n-1, with edge maps.

    ``x[i-1]`` is x_i : V_{i-1} -> V_i and ``y[i-1]`` is y_i : V_i -> V_{i-1}.
    """

    n: int
    k: int
    rank: int
    x: tuple[Matrix, ...]
    y: tuple[Matrix, ...]

    def __post_init__(self):
        if len(self.x) != self.n or len(self.y) != self.n:
            raise BadParameters("need one x and one y matrix per edge")
        for m in self.x + self.y:
            if m.shape != (self.rank, self.rank):
                raise BadParameters(f"edge matrix of shape {m.shape}, rank is {self.rank}")

    @property
    def ring(self) -> SeriesRing:
        return self.x[0].ring

    def x_at(self, i: int) -> Matrix:
        return self.x[(i - 1) % self.n]

    def y_at(self, i: int) -> Matrix:
        return self.y[(i - 1) % self.n]

    def restrict(self, coords: Sequence[int]) -> "QuiverRep":
        """Sub-representation on a subset of basis coordinates (block-diagonal reps only)."""
        coords = list(coords)

        def cut(m):
            return Matrix([[m[i, j] for j in coords] for i in coords])

        return QuiverRep(self.n, self.k, len(coords),
                         tuple(map(cut, self.x)), tuple(map(cut, self.y)))


def build_rank1(I: Rim, ring: SeriesRing | None = None) -> QuiverRep:
    ring = ring or SeriesRing()
    one, t = Matrix([[ring.one]]), Matrix([[ring.t]])
    xs = tuple(one if i in I else t for i in range(1, I.n + 1))
    ys = tuple(t if i in I else one for i in range(1, I.n + 1))
    return QuiverRep(I.n, I.k, 1, xs, ys)


@dataclass(frozen=True)
class RankTwoSpec:
    """Parameters of M(I, J): a tight pair and b_1..b_{2r} along model positions."""

    I: Rim
    J: Rim
    b: tuple[TruncatedSeries, ...]

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(self.b))
        red = self.reduction  # raises NotTight
        if len(self.b) != 2 * red.r:
            raise BadParameters(f"expected {2 * red.r} parameters b, got {len(self.b)}")
        orders = {s.order for s in self.b}
        if len(orders) != 1:
            raise BadParameters("parameters b have mixed truncation orders")
        if not series_sum(self.b, self.ring).is_zero():
            raise BadParameters("parameters b must sum to zero")

    @classmethod
    def model(cls, b: Sequence[TruncatedSeries]) -> "RankTwoSpec":
        """Spec on the (r, 2r) model profile {1,3,..,2r-1} | {2,4,..,2r}."""
        if len(b) % 2 or not b:
            raise BadParameters("model spec needs an even, positive number of parameters")
        I, J = model_rims(len(b) // 2)
        return cls(I, J, tuple(b))

    @cached_property
    def reduction(self) -> ModelReduction:
        return model_reduction(self.I, self.J)

    @property
    def ring(self) -> SeriesRing:
        return self.b[0].ring

    @property
    def r(self) -> int:
        return self.reduction.r

    @property
    def n(self) -> int:
        return self.I.n

    @property
    def k(self) -> int:
        return self.I.k

    def pair_sums(self) -> tuple[TruncatedSeries, ...]:
        return tuple(self.b[2 * j] + self.b[2 * j + 1] for j in range(self.r))

    def partial_sums(self) -> tuple[TruncatedSeries, ...]:
        """B_1..B_{2r} with B_l = b_1 + ... + b_l."""
        out, acc = [], self.ring.zero
        for s in self.b:
            acc = acc + s
            out.append(acc)
        return tuple(out)

    def with_order(self, order: int) -> "RankTwoSpec":
        return RankTwoSpec(self.I, self.J, tuple(s.with_order(order) for s in self.b))

    def rotated(self, shift: int) -> "RankTwoSpec":
        """Model spec with b cyclically shifted left by ``2*shift`` positions."""
        m = 2 * self.r
        s = (2 * shift) % m
        return RankTwoSpec.model(self.b[s:] + self.b[:s])


def build_rank2(spec: RankTwoSpec) -> QuiverRep:
    ring = spec.ring
    red = spec.reduction
    zero, one, t = ring.zero, ring.one, ring.t
    xs, ys = [], []
    for i in range(1, spec.n + 1):
        p = red.position_of(i)
        if p is not None:
            b = spec.b[p - 1]
            if p % 2:  # i in I \ J
                xs.append(Matrix([[t, b], [zero, one]]))
                ys.append(Matrix([[one, -b], [zero, t]]))
            else:  # i in J \ I
                xs.append(Matrix([[one, b], [zero, t]]))
                ys.append(Matrix([[t, -b], [zero, one]]))
        elif i in spec.I:  # common label
            xs.append(Matrix.identity(ring))
            ys.append(Matrix.scalar(t))
        else:
            xs.append(Matrix.scalar(t))
            ys.append(Matrix.identity(ring))
    return QuiverRep(spec.n, spec.k, 2, tuple(xs), tuple(ys))


def x_path(M: QuiverRep, vertex: int, length: int) -> Matrix:
    """Composite of x along ``length`` edges starting at ``vertex``."""
    acc = Matrix.identity(M.ring, M.rank)
    for step in range(1, length + 1):
        acc = M.x_at(vertex + step) @ acc
    return acc


def y_path(M: QuiverRep, vertex: int, length: int) -> Matrix:
    """Composite of y along ``length`` edges going backwards from ``vertex``."""
    acc = Matrix.identity(M.ring, M.rank)
    for step in range(length):
        acc = M.y_at(vertex - step) @ acc
    return acc


def verify_relations(M: QuiverRep) -> bool:
    """Check x_i y_i = y_i x_i = t and x^k = y^(n-k) at every vertex, exactly."""
    tid = Matrix.scalar(M.ring.t, M.rank)
    for xi, yi in zip(M.x, M.y):
        if xi @ yi != tid or yi @ xi != tid:
            return False
    for v in range(M.n):
        if x_path(M, v, M.k) != y_path(M, v, M.n - M.k):
            return False
    return True


def direct_sum(A: QuiverRep, B: QuiverRep) -> QuiverRep:
    if A.n != B.n:
        raise BadParameters(f"cannot add representations on n={A.n} and n={B.n}")
    if A.k != B.k:
        raise BadParameters(f"cannot add B_{{{A.k},n}}- and B_{{{B.k},n}}-modules")
    ring = A.ring
    zero = ring.zero

    def block(p: Matrix, q: Matrix) -> Matrix:
        a, b = p.shape[0], q.shape[0]
        rows = [list(p.rows[i]) + [zero] * b for i in range(a)]
        rows += [[zero] * a + list(q.rows[i]) for i in range(b)]
        return Matrix(rows)

    return QuiverRep(A.n, A.k, A.rank + B.rank,
                     tuple(map(block, A.x, B.x)), tuple(map(block, A.y, B.y)))
