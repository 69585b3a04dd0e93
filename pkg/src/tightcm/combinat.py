"""Cyclic combinatorics of k-subsets of {1..n}.

Labels are 1-based and cyclic: the successor of n is 1.  Vertices of the
n-cycle are 0..n-1, edge i joins vertex i-1 to vertex i, and vertex n is
vertex 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional

from .errors import BadParameters, NotTight


def succ(i: int, n: int) -> int:
    """Cyclic successor of a label in 1..n."""
    return i % n + 1


@dataclass(frozen=True)
class Rim:
    """A k-subset of {1..n}, viewed as the rim of the rank-1 module L_I."""

    n: int
    members: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise BadParameters(f"n must be a positive integer, got {self.n!r}")
        members = tuple(sorted(self.members))
        if len(set(members)) != len(members):
            raise BadParameters(f"repeated labels in {list(self.members)}")
        if members and (members[0] < 1 or members[-1] > self.n):
            raise BadParameters(f"labels {list(members)} not within 1..{self.n}")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, n: int, labels: Iterable[int]) -> "Rim":
        return cls(n, tuple(labels))

    @property
    def k(self) -> int:
        return len(self.members)

    def __contains__(self, label: int) -> bool:
        return label in self._set

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.members)

    def complement(self) -> "Rim":
        return Rim(self.n, tuple(i for i in range(1, self.n + 1) if i not in self._set))

    def __str__(self):
        return "{" + ",".join(map(str, self.members)) + "}"


def peaks(rim: Rim) -> frozenset[int]:
    n = rim.n
    return frozenset(i for i in range(1, n + 1) if i not in rim and succ(i, n) in rim)


def valleys(rim: Rim) -> frozenset[int]:
    n = rim.n
    return frozenset(i for i in range(1, n + 1) if i in rim and succ(i, n) not in rim)


def height_profile(rim: Rim) -> tuple[int, ...]:
    """Heights of the rim at vertices 0..n: down one step on members, up otherwise."""
    h = [0]
    for i in range(1, rim.n + 1):
        h.append(h[-1] - 1 if i in rim else h[-1] + 1)
    return tuple(h)


@dataclass(frozen=True)
class InterlacingReport:
    r: int
    tight: bool
    i_positions: tuple[int, ...]
    j_positions: tuple[int, ...]


def _check_pair(I: Rim, J: Rim) -> None:
    if I.n != J.n:
        raise BadParameters(f"rims live on different cycles (n={I.n} vs n={J.n})")
    if I.k != J.k:
        raise BadParameters(f"rims have different sizes (k={I.k} vs k={J.k})")


def interlacing(I: Rim, J: Rim) -> InterlacingReport:
    """Interlacing degree r of I and J and whether the pair is tight.

    r is half the number of maximal cyclic blocks in the merged word of I\\J
    and J\\I; the pair is tight when every block has length one.
    """
    _check_pair(I, J)
    only_i = sorted(set(I.members) - set(J.members))
    only_j = sorted(set(J.members) - set(I.members))
    if not only_i:
        return InterlacingReport(0, True, (), ())
    word = sorted([(x, 0) for x in only_i] + [(x, 1) for x in only_j])
    origins = [o for _, o in word]
    blocks = sum(1 for m in range(len(origins)) if origins[m] != origins[m - 1])
    r = blocks // 2
    anchor = only_i[0]
    n = I.n
    j_cyclic = tuple(sorted(only_j, key=lambda x: (x - anchor) % n))
    return InterlacingReport(r, len(only_i) == r, tuple(only_i), j_cyclic)


@dataclass(frozen=True)
class ModelReduction:
    """Relabelling of a tight pair onto the (r, 2r) model {1,3,..}|{2,4,..}.

    ``position_map[p-1]`` is the label sent to model position p: odd
    positions 2l-1 carry i_l, even positions 2l carry j_l.  Labels in
    ``common`` (I and J) or ``empty`` (neither) carry scalar matrices.
    """

    I: Rim
    J: Rim
    r: int
    position_map: tuple[int, ...]
    common: tuple[int, ...]
    empty: tuple[int, ...]
    _vertex_table: tuple[int, ...] = field(repr=False, compare=False, default=())

    @property
    def n(self) -> int:
        return self.I.n

    def position_of(self, label: int) -> Optional[int]:
        try:
            return self.position_map.index(label) + 1
        except ValueError:
            return None

    def label_of(self, position: int) -> int:
        return self.position_map[(position - 1) % (2 * self.r)]

    def model_vertex(self, vertex: int) -> int:
        """Model vertex (0..2r-1) that a full-quiver vertex collapses to."""
        return self._vertex_table[vertex % self.n]

    def model_rims(self) -> tuple[Rim, Rim]:
        return model_rims(self.r)

    def to_full(self, model_labels: Iterable[int]) -> tuple[int, ...]:
        """Map model labels back to the original labels (common ones not added)."""
        return tuple(sorted(self.label_of(p) for p in model_labels))


def model_rims(r: int) -> tuple[Rim, Rim]:
    n = 2 * r
    return Rim(n, tuple(range(1, n, 2))), Rim(n, tuple(range(2, n + 1, 2)))


def model_reduction(I: Rim, J: Rim) -> ModelReduction:
    rep = interlacing(I, J)
    if not rep.tight or rep.r < 1:
        raise NotTight(f"{I} | {J} is not tightly r-interlacing with r >= 1 (r={rep.r})")
    n = I.n
    pmap = []
    for il, jl in zip(rep.i_positions, rep.j_positions):
        pmap += [il, jl]
    common = tuple(sorted(set(I.members) & set(J.members)))
    empty = tuple(i for i in range(1, n + 1) if i not in I and i not in J)
    # vertex v sits after the labels i_1, i_1+1, ..., v (cyclically); count the
    # model positions among them
    start = pmap[0]
    pos = set(pmap)
    table = []
    for v in range(n):
        steps = (v - (start - 1)) % n
        count = 0
        label = start
        for _ in range(steps):
            if label in pos:
                count += 1
            label = succ(label, n)
        table.append(count % (2 * rep.r))
    return ModelReduction(I, J, rep.r, tuple(pmap), common, empty, tuple(table))
