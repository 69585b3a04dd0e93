"""Brute-force homomorphism spaces, independent of the classification theorems.

Hom(A, B) is cut out by linear equations over Q: every coefficient of every
entry of h_0..h_{n-1} is an unknown, and both x- and y-commutation are
imposed coefficient by coefficient.

Over R_N itself that system is too big: t is a zero divisor, so maps that
exist only modulo t^N (nonzero just in the top degrees) also solve it.  We
therefore solve over R_{N+n} using the polynomial lifts of the
representations and keep the image of truncation to R_N.  That image is
Hom over Q[[t]] reduced mod t^N, so Hom(L_I, L_J) has dimension exactly N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .cmmod import QuiverRep, build_rank1, verify_relations
from .combinat import Rim
from .errors import BadParameters, GuardExceeded, InvariantViolation
from .linsolve import Nullspace, nullspace, row_basis
from .series import Matrix, SeriesRing, TruncatedSeries

CANDIDATE_LIMIT = 100_000


def lift_margin(rep: QuiverRep) -> int:
    """Extra precision used when solving; one full turn of the cycle."""
    return rep.n


@dataclass(frozen=True)
class HomSpace:
    source: QuiverRep
    target: QuiverRep
    basis: tuple[tuple[Matrix, ...], ...]  # each element: h_0..h_{n-1}

    @property
    def dimension(self) -> int:
        return len(self.basis)


def _lift(rep: QuiverRep, order: int) -> QuiverRep:
    return QuiverRep(rep.n, rep.k, rep.rank,
                     tuple(m.with_order(order) for m in rep.x),
                     tuple(m.with_order(order) for m in rep.y))


def lift(rep: QuiverRep, order: int) -> QuiverRep:
    """Zero-padded lift of a representation, checked to still satisfy the relations."""
    up = _lift(rep, order)
    if not verify_relations(up):
        raise BadParameters("representation has no polynomial lift satisfying the relations")
    return up


def _sparse(m: Matrix):
    """Nonzero coefficients of each entry: {(i, j): [(degree, coeff), ...]}."""
    out = {}
    for i, row in enumerate(m.rows):
        for j, s in enumerate(row):
            nz = [(e, c.numerator if c.denominator == 1 else c)
                  for e, c in enumerate(s.coeffs) if c]
            if nz:
                out[i, j] = nz
    return out


class _Layout:
    """Column numbering of the unknown coefficients of h_0..h_{n-1}."""

    def __init__(self, n, rb, ra, N):
        self.n, self.rb, self.ra, self.N = n, rb, ra, N

    def __call__(self, v, p, q, d):
        return ((v * self.rb + p) * self.ra + q) * self.N + d

    @property
    def size(self):
        return self.n * self.rb * self.ra * self.N


def _equations(A: QuiverRep, B: QuiverRep):
    """Rows ({unknown: coeff}) of the commutation system for Hom(A, B)."""
    lay = _Layout(A.n, B.rank, A.rank, A.ring.N)
    N, ra, rb = lay.N, A.rank, B.rank
    rows = []

    def relation(left, lv, right, rv):
        # left @ h_lv - h_rv @ right == 0, entrywise and per coefficient
        L, R = _sparse(left), _sparse(right)
        for p in range(rb):
            for q in range(ra):
                for d in range(N):
                    row = {}
                    for m in range(rb):
                        for e, c in L.get((p, m), ()):
                            if e > d:
                                break
                            key = lay(lv, m, q, d - e)
                            row[key] = row.get(key, 0) + c
                    for m in range(ra):
                        for e, c in R.get((m, q), ()):
                            if e > d:
                                break
                            key = lay(rv, p, m, d - e)
                            row[key] = row.get(key, 0) - c
                    if any(row.values()):
                        rows.append(row)

    for i in range(1, A.n + 1):
        src, dst = i - 1, i % A.n
        relation(B.x_at(i), src, A.x_at(i), dst)
        relation(B.y_at(i), dst, A.y_at(i), src)
    return rows, lay


def _solve(A: QuiverRep, B: QuiverRep) -> tuple[Nullspace, _Layout]:
    rows, lay = _equations(A, B)
    return nullspace(rows, lay.size), lay


def _to_maps(vec, lay: _Layout, N: int) -> tuple[Matrix, ...]:
    """Per-vertex matrices from a solution vector, truncated to order N."""
    out = []
    for v in range(lay.n):
        rows = []
        for p in range(lay.rb):
            row = []
            for q in range(lay.ra):
                base = lay(v, p, q, 0)
                row.append(TruncatedSeries(vec[base:base + N]))
            rows.append(row)
        out.append(Matrix(rows))
    return tuple(out)


def is_homomorphism(h: tuple[Matrix, ...], A: QuiverRep, B: QuiverRep) -> bool:
    n = A.n
    for i in range(1, n + 1):
        src, dst = h[i - 1], h[i % n]
        if B.x_at(i) @ src != dst @ A.x_at(i) or B.y_at(i) @ dst != src @ A.y_at(i):
            return False
    return True


def hom_space(A: QuiverRep, B: QuiverRep, check: bool = True) -> HomSpace:
    if A.n != B.n:
        raise BadParameters(f"representations on n={A.n} and n={B.n}")
    if A.ring != B.ring:
        raise BadParameters("representations over different truncations")
    N = A.ring.N
    order = N + lift_margin(A)
    ns, lay = _solve(lift(A, order), lift(B, order))
    low = [c for c in range(lay.size) if c % order < N]
    full = ns.basis()
    projected = [[vec[c] for c in low] for vec in full]
    basis = tuple(_to_maps(full[i], lay, N) for i in row_basis(projected))
    if check:
        for h in basis:
            if not is_homomorphism(h, A, B):
                raise InvariantViolation("solution vector is not a homomorphism")
    return HomSpace(A, B, basis)


def composition_constants(into: HomSpace, out_of: HomSpace, vertex: int = 0) -> list[list[Fraction]]:
    """Constant terms of pi o iota at a vertex, for all basis pairs (rank-1 middle)."""
    return [[(pi[vertex] @ iota[vertex])[0, 0].constant for pi in out_of.basis]
            for iota in into.basis]


def _constant_columns(ns: Nullspace, lay: _Layout, vertex: int, rows_then_cols: bool):
    """Values of the degree-0 unknowns at a vertex, as expressions in the free columns."""
    if rows_then_cols:  # maps M -> L: a 1 x rank row
        return [ns.value(lay(vertex, 0, q, 0)) for q in range(lay.ra)]
    return [ns.value(lay(vertex, p, 0, 0)) for p in range(lay.rb)]


def _split_lifted(L: QuiverRep, M: QuiverRep) -> bool:
    ns_in, lay_in = _solve(L, M)
    ns_out, lay_out = _solve(M, L)
    iota0 = _constant_columns(ns_in, lay_in, 0, False)
    pi0 = _constant_columns(ns_out, lay_out, 0, True)
    # constant term of pi o iota is sum_m pi0[m] * iota0[m], bilinear in the
    # free parameters; it vanishes identically iff every coefficient does
    for m in range(M.rank):
        if iota0[m] and pi0[m]:
            break
    else:
        return False
    form: dict = {}
    for m in range(M.rank):
        for fi, ci in iota0[m].items():
            for fp, cp in pi0[m].items():
                form[fi, fp] = form.get((fi, fp), 0) + ci * cp
    return any(form.values())


def is_split_summand(X: Rim, M: QuiverRep) -> bool:
    """Whether L_X is a direct summand of M.

    Compositions L_X -> M -> L_X are scalars on L_X; their constant terms
    form a bilinear image, so a unit composition exists iff the bilinear
    form in the free parameters of the two Hom spaces is nonzero.
    """
    if X.n != M.n or X.k != M.k:
        raise BadParameters(f"L_{X} is not a B_{{{M.k},{M.n}}}-module")
    order = M.ring.N + lift_margin(M)
    return _split_lifted(build_rank1(X, SeriesRing(order)), lift(M, order))


def _interval_invariants(M: QuiverRep):
    """Valuations (e1, e2) of the invariant factors of every x-path of length 1..n-1.

    Computed at just enough precision for the valuations to be visible;
    intervals whose determinant vanishes at that precision are skipped.
    """
    P = min(M.ring.N, 2 * M.n + 1)
    low = _lift(M, P)
    out = {}
    for v in range(M.n):
        acc = None
        for length in range(1, M.n):
            step = low.x_at(v + length)
            acc = step if acc is None else step @ acc
            det_val = acc.det().valuation() if M.rank == 2 else acc[0, 0].valuation()
            if det_val is None:
                continue
            e1 = min(s.valuation() for row in acc.rows for s in row if not s.is_zero())
            out[v, length] = (e1, det_val - e1)
    return out


def _screen_ok(X: Rim, invariants) -> bool:
    """Necessary condition: each x-path of L_X has a valuation among M's invariant factors."""
    n = X.n
    for (v, length), factors in invariants.items():
        a = sum(1 for s in range(1, length + 1) if ((v + s - 1) % n + 1) not in X)
        if a not in factors:
            return False
    return True


def decompose_exhaustive(M: QuiverRep, k: Optional[int] = None, screen: bool = True) -> list[Rim]:
    """All k-subsets X for which L_X is a split summand of M.

    With ``screen`` the candidates whose x-path valuations contradict the
    invariant factors of M are skipped.  This never drops a genuine summand:
    if M = L_X + L_Y then every x-path of M is equivalent to a diagonal
    matrix carrying L_X's valuation.
    """
    k = M.k if k is None else k
    if M.rank != 2:
        raise BadParameters("exhaustive decomposition is for rank-2 modules")
    total = math.comb(M.n, k)
    if total > CANDIDATE_LIMIT:
        raise GuardExceeded(f"C({M.n},{k}) = {total} candidates exceeds {CANDIDATE_LIMIT}")
    order = M.ring.N + lift_margin(M)
    M_up = lift(M, order)
    ring_up = SeriesRing(order)
    invariants = _interval_invariants(M) if screen else {}
    found = []
    for labels in combinations(range(1, M.n + 1), k):
        X = Rim(M.n, labels)
        if screen and not _screen_ok(X, invariants):
            continue
        if _split_lifted(build_rank1(X, ring_up), M_up):
            found.append(X)
    return found
