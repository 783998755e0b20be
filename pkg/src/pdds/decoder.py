"""Syndrome decoding: nearest device lookup in constant time.

For a construction whose tile maps bijectively onto its group, every grid or
torus vertex x determines a syndrome phi(x), and the unique tile vertex v
with the same syndrome satisfies x = v + z for a kernel element z.  The
tile's label at v already knows v's component and nearest device, and kernel
translation preserves all distances — so decoding x is one table lookup plus
a translation, no search.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from .abelian import Homomorphism, check_bijection, phi_eval, torus_periods
from .constructions import Tile
from .lattice import Point, lee_distance


class DecodeResult(NamedTuple):
    """Nearest device, that component's translated anchor, and the distance."""

    device: Point
    component_anchor: Point
    distance: int

    def to_json(self) -> dict:
        return {"device": list(self.device),
                "component_anchor": list(self.component_anchor),
                "distance": self.distance}


@dataclass
class SyndromeTable:
    """Precomputed syndrome-rank index over a tile's labels.

    ``entries`` maps the mixed-radix rank of each group element to the tile
    vertex carrying that syndrome together with its component id and device;
    ``components`` holds each tile component's vertices, used to report the
    canonical anchor of the component (translate) that served a query.
    """

    hom: Homomorphism
    entries: dict[int, tuple[Point, int, Point]]
    components: tuple[tuple[Point, ...], ...]


def build_syndrome_table(tile: Tile, hom: Homomorphism) -> SyndromeTable:
    """Index a tile's labels by syndrome rank.

    Requires the tile-to-group bijection to hold (raises ValueError
    otherwise); the table then has exactly one entry per group element.
    """
    res = check_bijection(hom, tile.shape.vertices)
    if not res.ok:
        raise ValueError(f"tile does not map bijectively onto the group: {res}")
    group = hom.group
    entries: dict[int, tuple[Point, int, Point]] = {}
    for v in tile.shape.vertices:
        cid, device = tile.labels[v]
        entries[group.element_rank(phi_eval(hom, v))] = (v, cid, device)
    assert len(entries) == group.order
    components = tuple(comp.vertices for comp in tile.components())
    return SyndromeTable(hom, entries, components)


def decode(table: SyndromeTable, x: Sequence[int],
           torus: Optional[Sequence[int]] = None) -> DecodeResult:
    """Nearest device to x on the torus (default: the period torus).

    The torus dimensions must be annihilated by the generator images, so
    that syndromes — and hence the decoding — descend to the torus.  The
    returned distance never exceeds the construction's radius t on a valid
    table, since translation by the kernel preserves the tile-local
    distance.
    """
    hom = table.hom
    group = hom.group
    dims = torus_periods(hom) if torus is None else tuple(int(d) for d in torus)
    if len(dims) != hom.dim:
        raise ValueError(f"torus has {len(dims)} axes, homomorphism has {hom.dim}")
    for i, (d, g) in enumerate(zip(dims, hom.generators)):
        if d < 1 or group.scale(d, g) != group.identity():
            raise ValueError(
                f"torus axis {i + 1} ({d}) is not a period of the homomorphism; "
                f"periods are {torus_periods(hom)}")
    x = tuple(int(c) for c in x)
    if len(x) != hom.dim:
        raise ValueError(f"vertex has {len(x)} coordinates, expected {hom.dim}")
    v, cid, device = table.entries[group.element_rank(phi_eval(hom, x))]
    z = tuple(a - b for a, b in zip(x, v))
    dev = tuple((a + b) % d for a, b, d in zip(device, z, dims))
    # The anchor is the least vertex of the component *after* torus reduction
    # (reduction can reorder vertices, e.g. when a component straddles 0).
    anchor = min(tuple((a + b) % d for a, b, d in zip(u, z, dims))
                 for u in table.components[cid])
    x_red = tuple(a % d for a, d in zip(x, dims))
    return DecodeResult(dev, anchor, lee_distance(x_red, dev, dims))
