"""Indecomposability and explicit splittings of M(I, J) for tight pairs.

Everything is decided by the pair sums p_j = b_{2j+1} + b_{2j+2} (model
positions, j = 0..r-1) and only through their constant terms.  Pair j sits
between the model peaks 2j and 2j+2 of I, where peak 2r is peak 0.

Witness matrices contain t^-1 of expressions involving the inverse of a pair
sum.  Those are evaluated with ``GUARD`` extra coefficients on the zero-padded
lift of the input and truncated at the end, so every returned matrix is
exact in R_N.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .cmmod import RankTwoSpec, build_rank2
from .combinat import ModelReduction, Rim, model_reduction
from .errors import (
    ConditionsViolated,
    CornerNotAdmissible,
    InvariantViolation,
    OddFlipParity,
)
from .series import Matrix, SeriesRing, TruncatedSeries

GUARD = 4


@dataclass(frozen=True)
class EndoCorner:
    """Entries of phi at the vertex j_r (model vertex 0)."""

    a: TruncatedSeries
    b: TruncatedSeries
    c: TruncatedSeries
    d: TruncatedSeries

    def matrix(self) -> Matrix:
        return Matrix([[self.a, self.b], [self.c, self.d]])

    def with_order(self, order: int) -> "EndoCorner":
        return EndoCorner(*(s.with_order(order) for s in (self.a, self.b, self.c, self.d)))


@dataclass(frozen=True)
class EndoFamily:
    phis: tuple[Matrix, ...]
    partial_sums: tuple[TruncatedSeries, ...] = field(default=(), compare=False)

    def __getitem__(self, vertex: int) -> Matrix:
        return self.phis[vertex % len(self.phis)]

    def __len__(self):
        return len(self.phis)


def _partial_sums(b: Sequence[TruncatedSeries]) -> list[TruncatedSeries]:
    out, acc = [], b[0].ring.zero
    for s in b:
        acc = acc + s
        out.append(acc)
    return out


def _model_family(b: Sequence[TruncatedSeries], corner: EndoCorner) -> list[Matrix]:
    """phi at model vertices 0..2r-1 from its value at vertex 0 (closed form)."""
    a, bb, c, d = corner.a, corner.b, corner.c, corner.d
    if not c.divisible_by_t():
        raise CornerNotAdmissible(f"corner entry c = {c} is not divisible by t")
    t = c.ring.t
    cp = c.shift_down(1)
    B = _partial_sums(b)
    r = len(b) // 2
    for l in range(1, r):
        P = B[2 * l - 1]
        if not ((d - a) * P - P * P * cp).divisible_by_t():
            raise ConditionsViolated(l, f"t does not divide (d-a)B_{2*l} - B_{2*l}^2 c/t")
    phis: list[Optional[Matrix]] = [None] * (2 * r)
    phis[0] = corner.matrix()
    for l in range(1, r + 1):
        Bo = B[2 * l - 2]
        phis[2 * l - 1] = Matrix([
            [a + Bo * cp, t * bb + (d - a) * Bo - Bo * Bo * cp],
            [cp, d - Bo * cp],
        ])
        if l < r:
            Be = B[2 * l - 1]
            phis[2 * l] = Matrix([
                [a + Be * cp, bb + ((d - a) * Be - Be * Be * cp).shift_down(1)],
                [c, d - Be * cp],
            ])
    return phis


def endo_from_corner(spec: RankTwoSpec, corner: EndoCorner) -> EndoFamily:
    """The endomorphism of M(I, J) whose value at vertex j_r is ``corner``."""
    N = spec.ring.N
    lifted = [s.with_order(N + GUARD) for s in spec.b]
    model = _model_family(lifted, corner.with_order(N + GUARD))
    red = spec.reduction
    phis = tuple(model[red.model_vertex(v)].with_order(N) for v in range(spec.n))
    return EndoFamily(phis, spec.partial_sums())


@dataclass(frozen=True)
class PairPattern:
    pair_sums: tuple[TruncatedSeries, ...]
    flags: tuple[bool, ...]  # True where t divides the pair sum

    @property
    def S(self) -> tuple[int, ...]:
        """Indices of the pair sums not divisible by t, in cyclic order."""
        return tuple(j for j, f in enumerate(self.flags) if not f)


def pair_pattern(spec: RankTwoSpec) -> PairPattern:
    sums = spec.pair_sums()
    return PairPattern(sums, tuple(p.divisible_by_t() for p in sums))


def failing_pair(pattern: PairPattern) -> Optional[tuple[int, int]]:
    """First cyclically consecutive (s, s') in S with t not dividing p_s + p_s'."""
    S = pattern.S
    for idx, s in enumerate(S):
        s2 = S[(idx + 1) % len(S)]
        if not (pattern.pair_sums[s] + pattern.pair_sums[s2]).divisible_by_t():
            return (s, s2)
    return None


def is_indecomposable(spec: RankTwoSpec) -> bool:
    return failing_pair(pair_pattern(spec)) is not None


@dataclass(frozen=True)
class PeakSubset:
    """A set of model peaks of I, drawn from {0, 2, .., 2r-2}."""

    r: int
    members: frozenset

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        bad = self.members - set(range(0, 2 * self.r, 2))
        if bad:
            raise ValueError(f"not model peaks for r={self.r}: {sorted(bad)}")

    def complement(self) -> "PeakSubset":
        return PeakSubset(self.r, frozenset(range(0, 2 * self.r, 2)) - self.members)

    def __contains__(self, peak: int) -> bool:
        return peak % (2 * self.r) in self.members

    def shifted(self, by: int) -> "PeakSubset":
        return PeakSubset(self.r, {(p + by) % (2 * self.r) for p in self.members})


def pattern_for_peaks(peaks: PeakSubset) -> tuple[bool, ...]:
    """Divisibility flags forced by a peak subset: flip exactly where sides change."""
    return tuple((2 * j in peaks) == (2 * j + 2 in peaks) for j in range(peaks.r))


def peaks_for_pattern(flags: Sequence[bool], start_in: bool = True) -> PeakSubset:
    r = len(flags)
    if sum(1 for f in flags if not f) % 2:
        raise OddFlipParity("odd number of pair sums not divisible by t")
    inside, members = start_in, set()
    for j, divisible in enumerate(flags):
        if inside:
            members.add(2 * j)
        if not divisible:
            inside = not inside
    return PeakSubset(r, members)


def model_rims_from_peaks(peaks: PeakSubset) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Labels of X and Y in the (r, 2r) model, one step pair at a time."""
    X = []
    for j in range(peaks.r):
        here, nxt = 2 * j in peaks, 2 * j + 2 in peaks
        if here and nxt:  # peak to peak: down then up
            X.append(2 * j + 1)
        elif here:  # peak to valley: down, down
            X += [2 * j + 1, 2 * j + 2]
        elif not nxt:  # valley to valley: up then down
            X.append(2 * j + 2)
        # valley to peak: up, up; nothing in X
    Y = [p for p in range(1, 2 * peaks.r + 1) if p not in X]
    return tuple(X), tuple(Y)


def rims_from_peaks(peaks: PeakSubset, reduction: ModelReduction) -> tuple[Rim, Rim]:
    X, Y = model_rims_from_peaks(peaks)
    common = reduction.common
    n = reduction.n
    return (Rim(n, reduction.to_full(X) + common), Rim(n, reduction.to_full(Y) + common))


def sample_b(flags: Sequence[bool], ring: SeriesRing | None = None) -> tuple[TruncatedSeries, ...]:
    """Concrete b realising a divisibility pattern; mass sits on odd positions.

    Non-divisible pair sums alternate +1, -1 and divisible ones +t, -t, with a
    trailing 0 when the divisible count is odd.
    """
    ring = ring or SeriesRing()
    if sum(1 for f in flags if not f) % 2:
        raise OddFlipParity("odd number of pair sums not divisible by t")
    n_div = sum(1 for f in flags if f)
    seen_div = seen_nondiv = 0
    b = []
    for f in flags:
        if f:
            if seen_div == n_div - 1 and n_div % 2:
                p = ring.zero
            else:
                p = ring.t if seen_div % 2 == 0 else -ring.t
            seen_div += 1
        else:
            p = ring.one if seen_nondiv % 2 == 0 else -ring.one
            seen_nondiv += 1
        b += [p, ring.zero]
    return tuple(b)


@dataclass(frozen=True)
class DecompositionResult:
    verdict: str  # "indecomposable" or "split"
    S: tuple[int, ...]
    failing_pair: Optional[tuple[int, int]] = None
    X: Optional[Rim] = None
    Y: Optional[Rim] = None
    peaks: Optional[PeakSubset] = None
    phi: Optional[EndoFamily] = None
    phi_tilde: Optional[tuple[Matrix, ...]] = None
    w: Optional[tuple[tuple[TruncatedSeries, TruncatedSeries], ...]] = field(default=None, repr=False)
    v: Optional[tuple[tuple[TruncatedSeries, TruncatedSeries], ...]] = field(default=None, repr=False)

    @property
    def is_split(self) -> bool:
        return self.verdict == "split"

    def summands(self) -> frozenset:
        return frozenset((self.X, self.Y)) if self.is_split else frozenset()


def _eigenvectors(b, flags, u):
    """w (spanning L_X) and v (spanning L_Y) at model vertices 0..2r-1.

    ``u`` is the inverse of the first pair sum, or None when all pair sums
    are divisible (then M = L_I + L_J and v is the submodule direction).
    """
    ring = b[0].ring
    one, zero, t = ring.one, ring.zero, ring.t
    B = _partial_sums(b)
    ws, vs = [], []
    for m in range(len(b)):
        Bm = B[m - 1] if m else zero
        if m % 2:
            w = (Bm, one)
            v = (one - Bm * u, -u) if u is not None else (one, zero)
        else:
            g = sum(1 for f in flags[: m // 2] if not f)
            if u is None:
                w, v = (Bm.shift_down(1), one), (one, zero)
            elif g % 2 == 0:
                w, v = (Bm.shift_down(1), one), (one - Bm * u, -(t * u))
            else:
                w, v = (Bm, t), ((one - Bm * u).shift_down(1), -u)
        ws.append(w)
        vs.append(v)
    return ws, vs


def decompose(spec: RankTwoSpec, verify: bool = True) -> DecompositionResult:
    """Decide M(I, J) and, when it splits as L_X + L_Y, build the witness."""
    pattern = pair_pattern(spec)
    fp = failing_pair(pattern)
    if fp is not None:
        return DecompositionResult("indecomposable", pattern.S, failing_pair=fp)

    red = spec.reduction
    r, N = red.r, spec.ring.N
    P = N + GUARD
    shift = pattern.S[0] if pattern.S else 0
    flags = pattern.flags[shift:] + pattern.flags[:shift]
    b = [s.with_order(P) for s in spec.rotated(shift).b]

    peaks_rot = peaks_for_pattern(flags)
    X_rot, Y_rot = model_rims_from_peaks(peaks_rot)

    def unrotate(labels):
        return tuple((p - 1 + 2 * shift) % (2 * r) + 1 for p in labels)

    X = Rim(spec.n, red.to_full(unrotate(X_rot)) + red.common)
    Y = Rim(spec.n, red.to_full(unrotate(Y_rot)) + red.common)

    pring = SeriesRing(P)
    if pattern.S:
        u = (b[0] + b[1]).invert()
        corner = EndoCorner(pring.one, pring.zero, -(pring.t * u), pring.zero)
    else:
        u = None
        corner = EndoCorner(pring.one, pring.zero, pring.zero, pring.zero)
    model_phi = _model_family(b, corner)
    model_w, model_v = _eigenvectors(b, flags, u)

    ident = Matrix.identity(spec.ring)
    phis, tildes, ws, vs = [], [], [], []
    for vert in range(spec.n):
        m = (red.model_vertex(vert) - 2 * shift) % (2 * r)
        phi = model_phi[m].with_order(N)
        phis.append(phi)
        tildes.append(ident - phi)
        ws.append(tuple(s.with_order(N) for s in model_w[m]))
        vs.append(tuple(s.with_order(N) for s in model_v[m]))

    result = DecompositionResult(
        "split", pattern.S, X=X, Y=Y, peaks=peaks_rot.shifted(2 * shift),
        phi=EndoFamily(tuple(phis), spec.partial_sums()), phi_tilde=tuple(tildes),
        w=tuple(ws), v=tuple(vs),
    )
    if verify:
        problems = check_witness(spec, result)
        if problems:
            raise InvariantViolation("; ".join(problems))
    return result


def check_witness(spec: RankTwoSpec, result: DecompositionResult) -> list[str]:
    """Every failed property of a split witness; empty means the witness is sound."""
    M = build_rank2(spec)
    ring = spec.ring
    t = ring.t
    problems = []
    phi, tilde, w, v = result.phi.phis, result.phi_tilde, result.w, result.v
    zero2 = Matrix.zeros(ring, 2, 2)
    ident = Matrix.identity(ring)
    n = spec.n
    for i in range(n):
        p, q = phi[i], tilde[i]
        if p @ p != p:
            problems.append(f"phi_{i} not idempotent")
        if q != ident - p or q @ q != q or p @ q != zero2:
            problems.append(f"phi~_{i} not the complementary idempotent")
        if q @ w[i] != w[i]:
            problems.append(f"w_{i} not fixed by phi~_{i}")
        if p @ v[i] != v[i]:
            problems.append(f"v_{i} not fixed by phi_{i}")
        if not Matrix([[w[i][0], v[i][0]], [w[i][1], v[i][1]]]).det().is_unit():
            problems.append(f"w_{i}, v_{i} do not form a basis")
    for i in range(1, n + 1):
        xi, yi = M.x_at(i), M.y_at(i)
        if xi @ phi[i - 1] != phi[i % n] @ xi or yi @ phi[i % n] != phi[i - 1] @ yi:
            problems.append(f"phi does not commute with edge {i}")
        for vecs, rim, name in ((w, result.X, "X"), (v, result.Y, "Y")):
            image, target = xi @ vecs[i - 1], vecs[i % n]
            if image == target:
                member = True
            elif image == tuple(t * s for s in target):
                member = False
            else:
                problems.append(f"x_{i} does not map the {name} basis to a basis multiple")
                continue
            if member != (i in rim):
                problems.append(f"x_{i} action disagrees with membership of {i} in {name}")
    return problems


@dataclass(frozen=True)
class DecomposableCase:
    peaks: PeakSubset
    pattern: tuple[bool, ...]
    b: tuple[TruncatedSeries, ...]
    X: Rim
    Y: Rim

    def spec(self, I: Rim, J: Rim) -> RankTwoSpec:
        return RankTwoSpec(I, J, self.b)


def enumerate_decomposables(I: Rim, J: Rim, ring: SeriesRing | None = None) -> list[DecomposableCase]:
    """One decomposable extension per complementary pair of peak subsets (2^(r-1) cases)."""
    ring = ring or SeriesRing()
    red = model_reduction(I, J)
    r = red.r
    cases = []
    for mask in range(1, 2 ** r, 2):  # subsets containing peak 0, by binary encoding
        peaks = PeakSubset(r, {2 * j for j in range(r) if mask >> j & 1})
        flags = pattern_for_peaks(peaks)
        b = sample_b(flags, ring)
        X, Y = rims_from_peaks(peaks, red)
        got = decompose(RankTwoSpec(I, J, b))
        if got.summands() != frozenset((X, Y)):
            raise InvariantViolation(f"peaks {sorted(peaks.members)}: decompose gave {got.X}, {got.Y}")
        cases.append(DecomposableCase(peaks, flags, b, X, Y))
    return cases

