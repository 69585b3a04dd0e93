"""Lattice diagrams of rims and profiles, as 7-bit ASCII or SVG 1.1.

Only the rims are drawn, plus one row of lattice dots two levels below the
lowest rim.  Heights follow :func:`height_profile`: a member label is a
down-step.  Columns 0 and n are both drawn and are the same vertex.

For a profile I|J the lower rim J is lowered by ``offset`` lattice rows
(two height units each) so that it touches I from below and is nowhere
above it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional
from xml.sax.saxutils import escape

from .combinat import Rim, height_profile
from .errors import BadParameters

GRID = 40  # SVG pixels per lattice step
MARGIN = 40


@dataclass(frozen=True)
class RimTrack:
    rim: Rim
    heights: tuple[int, ...]  # n+1 values, already shifted
    dashed: bool = False


@dataclass(frozen=True)
class LatticeLayout:
    tracks: tuple[RimTrack, ...]
    meet_points: tuple[int, ...] = ()  # vertices 0..n-1 where the two rims touch
    offset: int = 0  # rows the second rim was lowered by
    title: str = ""

    @property
    def n(self) -> int:
        return self.tracks[0].rim.n

    @property
    def rims(self) -> tuple[Rim, ...]:
        return tuple(tr.rim for tr in self.tracks)

    @property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tr.heights for tr in self.tracks)

    @property
    def boxes(self) -> int:
        """Maximal cyclic runs of vertices where the two rims differ."""
        if len(self.tracks) < 2:
            return 0
        n = self.n
        meets = set(self.meet_points)
        if not meets:
            return 1
        return sum(1 for v in range(n) if v not in meets and (v - 1) % n in meets)


def layout_rim(rim: Rim) -> LatticeLayout:
    return LatticeLayout((RimTrack(rim, height_profile(rim)),), title=f"L_{rim}, n={rim.n}")


def profile_offset(I: Rim, J: Rim) -> int:
    """Lattice rows by which J must be lowered to sit just below I."""
    hI, hJ = height_profile(I), height_profile(J)
    return max(b - a for a, b in zip(hI, hJ)) // 2


def layout_profile(I: Rim, J: Rim) -> LatticeLayout:
    if I.n != J.n or I.k != J.k:
        raise BadParameters(f"profile needs rims with equal (k, n): {I} and {J}")
    off = profile_offset(I, J)
    hI = height_profile(I)
    hJ = tuple(h - 2 * off for h in height_profile(J))
    meets = tuple(v for v in range(I.n) if hI[v] == hJ[v])
    return LatticeLayout(
        (RimTrack(I, hI, dashed=True), RimTrack(J, hJ)),
        meets, off, f"profile {I} | {J}, n={I.n}",
    )


def _fit_between(rim: Rim, upper, lower) -> Optional[tuple[int, ...]]:
    """Heights of ``rim`` shifted to lie between two height sequences, if possible."""
    h = height_profile(rim)
    lo = max(l - x for l, x in zip(lower, h))
    hi = min(u - x for u, x in zip(upper, h))
    for s in range(hi, lo - 1, -1):
        if s % 2 == 0:
            return tuple(x + s for x in h)
    return None


def layout_pair_in_profile(I: Rim, J: Rim, X: Rim, Y: Rim) -> LatticeLayout:
    """Rims X and Y placed inside the profile I|J (X dashed, as the upper path)."""
    prof = layout_profile(I, J)
    upper, lower = prof.tracks[0].heights, prof.tracks[1].heights
    hX, hY = _fit_between(X, upper, lower), _fit_between(Y, upper, lower)
    if hX is None or hY is None:
        pair = layout_profile(X, Y)
        return LatticeLayout(pair.tracks, pair.meet_points, pair.offset, f"pair {X} + {Y}")
    meets = tuple(v for v in range(X.n) if hX[v] == hY[v])
    return LatticeLayout((RimTrack(X, hX, dashed=True), RimTrack(Y, hY)), meets, 0,
                         f"pair L_{X} + L_{Y}")


def layout_decomposition(I: Rim, J: Rim, X: Rim, Y: Rim) -> tuple[LatticeLayout, LatticeLayout]:
    return layout_profile(I, J), layout_pair_in_profile(I, J, X, Y)


# -- ASCII ---------------------------------------------------------------------

def _ascii(layout: LatticeLayout) -> str:
    n = layout.n
    w = max(2, len(str(n)) + 1)
    width = n * w + 1
    lowest = [min(tr.heights[v] for tr in layout.tracks) for v in range(n + 1)]
    top = max(max(tr.heights) for tr in layout.tracks) - 1
    bottom = min(lowest) - 2
    grid = {lvl: [" "] * width for lvl in range(bottom, top + 1)}
    for tr in layout.tracks:
        h = tr.heights
        for i in range(1, n + 1):
            up = h[i] > h[i - 1]
            lvl = min(h[i - 1], h[i])
            col = (i - 1) * w + w // 2
            ch = "/" if up else "\\"
            cur = grid[lvl][col]
            grid[lvl][col] = ch if cur in (" ", ch) else "X"
    for v in range(n + 1):
        grid[lowest[v] - 2][v * w] = "."
    lines = [layout.title] if layout.title else []
    for lvl in range(top, bottom - 1, -1):
        lines.append("".join(grid[lvl]).rstrip())
    labels = [" "] * width
    for i in range(1, n + 1):
        text = str(i).rjust(w - 1)
        start = (i - 1) * w + 1
        labels[start:start + len(text)] = text
    lines.append("".join(labels).rstrip())
    if len(layout.tracks) == 2:
        first, second = layout.rims
        lines.append(f"first rim {first} (dashed in SVG), second rim {second}")
        lines.append(f"offset {layout.offset}, meets at {list(layout.meet_points)}, "
                     f"boxes {layout.boxes}")
    lines.append(f"columns 0 and {n} are the same vertex")
    return "\n".join(lines) + "\n"


# -- SVG -------------------------------------------------------------------------

def _svg_body(layout: LatticeLayout, y0: int) -> tuple[list[str], int]:
    n = layout.n
    top = max(max(tr.heights) for tr in layout.tracks)
    lowest = [min(tr.heights[v] for tr in layout.tracks) for v in range(n + 1)]
    bottom = min(lowest) - 2

    def xy(v, h):
        return MARGIN + GRID * v, y0 + GRID * (top - h)

    out = []
    if layout.title:
        out.append(f'<text x="{MARGIN}" y="{y0 - 12}" font-family="monospace" '
                   f'font-size="14">{escape(layout.title)}</text>')
    for v in range(n + 1):
        x, y = xy(v, lowest[v] - 2)
        out.append(f'<circle cx="{x}" cy="{y}" r="2" fill="black"/>')
    for tr in layout.tracks:
        pts = " ".join("%d,%d" % xy(v, h) for v, h in enumerate(tr.heights))
        dash = ' stroke-dasharray="6,4"' if tr.dashed else ""
        out.append(f'<polyline points="{pts}" fill="none" stroke="black" stroke-width="2"{dash}/>')
        for i in range(1, n + 1):
            x1, y1 = xy(i - 1, tr.heights[i - 1])
            x2, y2 = xy(i, tr.heights[i])
            lx, ly = (x1 + x2) // 2, min(y1, y2) + GRID // 2 - 6
            out.append(f'<text x="{lx}" y="{ly}" font-family="monospace" font-size="11" '
                       f'text-anchor="middle">{i}</text>')
    foot = y0 + GRID * (top - bottom) + 24
    out.append(f'<text x="{MARGIN}" y="{foot}" font-family="monospace" font-size="11">'
               f'columns 0 and {n} are the same vertex</text>')
    return out, foot + 40


def _svg(layouts: tuple[LatticeLayout, ...]) -> str:
    body, y = [], MARGIN
    for layout in layouts:
        part, y = _svg_body(layout, y)
        body += part
    width = 2 * MARGIN + GRID * max(l.n for l in layouts)
    head = (f'<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{width}" height="{y}" viewBox="0 0 {width} {y}">')
    return "\n".join([head] + ["  " + line for line in body] + ["</svg>"]) + "\n"


def emit(layout, fmt: str = "ascii") -> str:
    """Render one layout, or a sequence of layouts stacked top to bottom."""
    layouts = (layout,) if isinstance(layout, LatticeLayout) else tuple(layout)
    if not layouts:
        raise BadParameters("nothing to render")
    if fmt == "ascii":
        return "\n".join(_ascii(l) for l in layouts)
    if fmt == "svg":
        return _svg(layouts)
    raise BadParameters(f"unknown format {fmt!r}; use 'ascii' or 'svg'")
