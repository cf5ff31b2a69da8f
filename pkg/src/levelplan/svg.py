"""Schematic SVG of a torus embedding drawn on the unit square with opposite sides identified.

Level j is the vertical line x = (j-1)/k. A vertex sits at y = rank/|V_j|,
its rank taken in the level's circular order read from the smallest name.
Edges of layer i run from level i to the next line (x = 1 for the wrapping
layer) and are cut into pieces wherever they cross the horizontal seam.
"""

from __future__ import annotations

import math
from collections.abc import Iterable
from fractions import Fraction
from xml.sax.saxutils import escape

from .level_graph import Edge, LevelGraph
from .orders import CircularOrder
from .torus import EmbeddingError, TorusEmbedding, check_embedding

SIZE = 400


def _fmt(v: Fraction | float) -> str:
    return f"{float(v) * SIZE:.3f}".rstrip("0").rstrip(".")


def _ranks(order: CircularOrder) -> dict[str, Fraction]:
    n = len(order)
    return {x: Fraction(r, n) for r, x in enumerate(order)}


def _lifted_targets(edges: list[Edge], order: CircularOrder, y: dict[str, Fraction]) -> dict[str, Fraction]:
    """Heights of the upper endpoints lifted to the real line so the layer is crossing-free."""
    by_id = {e.id: e for e in edges}
    seq = [by_id[x] for x in order]
    # start at the first edge of the lowest active lower vertex
    low = min(seq, key=lambda e: y[e.u]).u
    starts = [i for i, e in enumerate(seq) if e.u == low and seq[i - 1].u != low] or [0]
    seq = seq[starts[0]:] + seq[: starts[0]]
    lifted: dict[str, Fraction] = {}
    turn, prev = 0, None
    for e in seq:
        if prev is not None and y[e.v] < prev:
            turn += 1
        prev = y[e.v]
        lifted[e.id] = y[e.v] + turn
    # pick the integer shift that keeps edges shortest (ties: smaller shift)
    def cost(c: int) -> Fraction:
        return sum(abs(lifted[e.id] + c - y[e.u]) for e in seq)

    lo = -turn - 2
    best = min(range(lo, 3), key=lambda c: (cost(c), c))
    return {eid: h + best for eid, h in lifted.items()}


def _pieces(x0: Fraction, y0: Fraction, x1: Fraction, y1: Fraction) -> list[tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]]:
    """Split a segment at every integer height and fold each piece into [0, 1]."""
    lo, hi = sorted((y0, y1))
    cuts = [Fraction(m) for m in range(math.floor(lo) + 1, math.ceil(hi))]
    if y1 < y0:
        cuts.reverse()
    pts = [(x0, y0)]
    for c in cuts:
        t = (c - y0) / (y1 - y0)
        pts.append((x0 + t * (x1 - x0), c))
    pts.append((x1, y1))
    out = []
    for (ax, ay), (bx, by) in zip(pts, pts[1:]):
        shift = math.floor(min(ay, by))
        out.append(((ax, ay - shift), (bx, by - shift)))
    return out


def restrict(g: LevelGraph, emb: TorusEmbedding, drop: Iterable[str]) -> tuple[LevelGraph, TorusEmbedding]:
    """Remove vertices (and their edges) from a graph and its embedding."""
    drop = set(drop)
    if not drop:
        return g, emb
    keep_v = [(n, l) for n, l in g.levels if n not in drop]
    keep_e = [e for e in g.edges if e.u not in drop and e.v not in drop]
    h = LevelGraph(g.k, tuple(keep_v), tuple(keep_e))
    ids = {e.id for e in keep_e}
    levels = {i: o.restrict({n for n, _ in keep_v}) for i, o in emb.levels.items()}
    layers = {i: o.restrict(ids) for i, o in emb.layers.items()}
    return h, TorusEmbedding(levels, {i: o for i, o in layers.items() if len(o)})


def render_svg(g: LevelGraph, emb: TorusEmbedding, labelled: Iterable[str] | None = None) -> str:
    """SVG text for a checked embedding; only vertices in `labelled` get names (default: all)."""
    if not check_embedding(g, emb):
        raise EmbeddingError("embedding is not valid for this graph")
    labelled = set(g.level_of) if labelled is None else set(labelled)
    k = g.k
    xs = {j: Fraction(j - 1, k) for j in range(1, k + 1)}
    y: dict[str, Fraction] = {}
    for j in range(1, k + 1):
        y.update(_ranks(emb.levels[j]))

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE + 40}" height="{SIZE + 40}" '
        f'viewBox="-20 -20 {SIZE + 40} {SIZE + 40}">',
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="none" stroke="#999" stroke-dasharray="4 3"/>',
    ]
    for j in range(1, k + 1):
        x = _fmt(xs[j])
        out.append(f'<line class="level" x1="{x}" y1="0" x2="{x}" y2="{SIZE}" stroke="#444"/>')
    for layer in g.layers():
        if not layer.edges:
            continue
        i = layer.index
        x0, x1 = xs[i], (xs[i + 1] if i < k else Fraction(1))
        lifted = _lifted_targets(list(layer.edges), emb.layers[i], y)
        for eid in emb.layers[i]:
            e = next(e for e in layer.edges if e.id == eid)
            for (ax, ay), (bx, by) in _pieces(x0, y[e.u], x1, lifted[eid]):
                out.append(
                    f'<polyline class="edge" data-edge="{escape(eid)}" fill="none" stroke="#1f5fa8" '
                    f'points="{_fmt(ax)},{_fmt(ay)} {_fmt(bx)},{_fmt(by)}"/>'
                )
    for name, lvl in g.levels:
        cx, cy = _fmt(xs[lvl]), _fmt(y[name])
        r = 4 if name in labelled else 2
        out.append(f'<circle class="vertex" cx="{cx}" cy="{cy}" r="{r}" fill="#c0392b"/>')
        if name in labelled:
            out.append(f'<text x="{cx}" y="{cy}" dx="5" dy="-5" font-size="11">{escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
