"""Lee-metric geometry on the integer grid and on finite tori.

The grid graph on Z^n connects vertices that differ by +-1 in exactly one
coordinate; its path metric is the l1 (Lee) distance.  Everything in this
package runs either on the infinite grid (``torus=None``) or on a finite
torus ``Z_{d_1} x ... x Z_{d_n}``, where each axis contributes the circular
distance ``min(|a|, d_i - |a|)``.

Vertex sets are kept in a single canonical form throughout: dimension plus a
lexicographically sorted, duplicate-free vertex tuple.  All functions that
return sets of vertices return them in this form, so equality of shapes is
plain equality of the dataclass.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product as _cartesian
from math import prod
from typing import Iterable, Iterator, Optional, Sequence

Point = tuple[int, ...]
TorusDims = tuple[int, ...]


def _as_point(p: Sequence[int]) -> Point:
    return tuple(int(c) for c in p)


def check_torus(dim: int, torus: Optional[TorusDims]) -> Optional[TorusDims]:
    """Validate torus dimensions against a vertex dimension.

    Returns the dims as a tuple, or None for the infinite grid.  Raises
    ValueError on a length mismatch or a non-positive modulus.
    """
    if torus is None:
        return None
    dims = tuple(int(d) for d in torus)
    if len(dims) != dim:
        raise ValueError(f"torus has {len(dims)} axes, vertices have {dim}")
    if any(d < 1 for d in dims):
        raise ValueError(f"torus dimensions must be positive, got {dims}")
    return dims


def reduce_point(p: Sequence[int], torus: Optional[TorusDims]) -> Point:
    """Reduce a vertex modulo the torus (identity on the infinite grid)."""
    if torus is None:
        return _as_point(p)
    return tuple(int(c) % d for c, d in zip(p, torus))


def unit_vector(dim: int, axis: int) -> Point:
    """The standard basis vector e_axis (0-indexed) in Z^dim."""
    return tuple(1 if i == axis else 0 for i in range(dim))


def lee_distance(u: Sequence[int], v: Sequence[int],
                 torus: Optional[TorusDims] = None) -> int:
    """Lee (l1) distance between two vertices.

    On a torus each axis contributes the circular distance
    ``min(|a|, d - |a|)``; on the infinite grid it is plain l1.

    >>> lee_distance((0, 0), (2, -1))
    3
    >>> lee_distance((0, 0), (5, 0), torus=(6, 6))
    1
    """
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    dims = check_torus(len(u), torus)
    if dims is None:
        return sum(abs(a - b) for a, b in zip(u, v))
    total = 0
    for a, b, d in zip(u, v, dims):
        r = (a - b) % d
        total += min(r, d - r)
    return total


@dataclass(frozen=True)
class BoxSpec:
    """Axis-aligned box given by per-axis extents (k_1, ..., k_n).

    The box anchored at the origin is {0..k_1-1} x ... x {0..k_n-1}; it
    induces a Cartesian product of paths P_{k_1} x ... x P_{k_n} in the grid
    graph.  Extents must be positive.
    """

    extents: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "extents", tuple(int(k) for k in self.extents))
        if not self.extents or any(k < 1 for k in self.extents):
            raise ValueError(f"box extents must be positive, got {self.extents}")

    @property
    def dim(self) -> int:
        return len(self.extents)

    @property
    def volume(self) -> int:
        return prod(self.extents)

    def to_json(self) -> dict:
        return {"extents": list(self.extents)}

    @classmethod
    def from_json(cls, obj: dict) -> "BoxSpec":
        return cls(tuple(obj["extents"]))


@dataclass(frozen=True)
class Shape:
    """A finite set of grid vertices in canonical form.

    ``vertices`` is lexicographically sorted and duplicate-free, so two
    shapes are equal exactly when they contain the same vertices of the same
    dimension.  Build instances with :meth:`of`, which canonicalizes.
    """

    dim: int
    vertices: tuple[Point, ...]

    @classmethod
    def of(cls, vertices: Iterable[Sequence[int]], dim: Optional[int] = None) -> "Shape":
        verts = sorted({_as_point(v) for v in vertices})
        if verts:
            d = len(verts[0])
            if any(len(v) != d for v in verts):
                raise ValueError("vertices of mixed dimension")
            if dim is not None and dim != d:
                raise ValueError(f"declared dim {dim} != vertex dim {d}")
            dim = d
        elif dim is None:
            raise ValueError("empty shape needs an explicit dim")
        return cls(dim, tuple(verts))

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.vertices)

    def __contains__(self, p: object) -> bool:
        return p in set(self.vertices)

    def as_set(self) -> frozenset[Point]:
        return frozenset(self.vertices)

    def to_json(self) -> dict:
        return {"dim": self.dim, "vertices": [list(v) for v in self.vertices]}

    @classmethod
    def from_json(cls, obj: dict) -> "Shape":
        return cls.of((tuple(v) for v in obj["vertices"]), dim=obj["dim"])

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def box_shape(spec: BoxSpec) -> Shape:
    """All lattice points of the origin-anchored box, canonically ordered.

    >>> box_shape(BoxSpec((2, 2))).vertices
    ((0, 0), (0, 1), (1, 0), (1, 1))
    """
    return Shape.of(_cartesian(*(range(k) for k in spec.extents)), dim=spec.dim)


def translate(shape: Shape, z: Sequence[int],
              torus: Optional[TorusDims] = None) -> Shape:
    """Translate every vertex by z (reducing modulo the torus if given)."""
    if len(z) != shape.dim:
        raise ValueError(f"offset dim {len(z)} != shape dim {shape.dim}")
    dims = check_torus(shape.dim, torus)
    moved = (tuple(a + b for a, b in zip(v, z)) for v in shape.vertices)
    if dims is None:
        return Shape.of(moved, dim=shape.dim)
    return Shape.of((reduce_point(v, dims) for v in moved), dim=shape.dim)


def _neighbors(v: Point, dims: Optional[TorusDims]) -> Iterator[Point]:
    for i in range(len(v)):
        for step in (1, -1):
            w = list(v)
            w[i] += step
            if dims is not None:
                w[i] %= dims[i]
            yield tuple(w)


def t_neighborhood(shape: Shape, t: int,
                   torus: Optional[TorusDims] = None) -> Shape:
    """All vertices within Lee distance t of the shape (a set union).

    Computed as a multi-source breadth-first search from the shape's
    vertices, so each vertex appears once however many sources reach it.
    ``t = 0`` returns the (torus-reduced) shape itself.

    >>> len(t_neighborhood(Shape.of([(0, 0)]), 2))
    13
    """
    if t < 0:
        raise ValueError(f"radius must be nonnegative, got {t}")
    dims = check_torus(shape.dim, torus)
    seen = {reduce_point(v, dims) for v in shape.vertices}
    frontier = set(seen)
    for _ in range(t):
        nxt = set()
        for v in frontier:
            for w in _neighbors(v, dims):
                if w not in seen:
                    seen.add(w)
                    nxt.add(w)
        frontier = nxt
        if not frontier:
            break
    return Shape.of(seen, dim=shape.dim)


def components_of(shape: Shape, torus: Optional[TorusDims] = None) -> list[Shape]:
    """Connected components of the induced grid subgraph on the shape.

    Components are returned ordered by their lexicographically smallest
    member, each in canonical form.
    """
    dims = check_torus(shape.dim, torus)
    remaining = set(reduce_point(v, dims) for v in shape.vertices)
    out: list[Shape] = []
    for start in sorted(remaining):
        if start not in remaining:
            continue
        comp = {start}
        frontier = [start]
        remaining.discard(start)
        while frontier:
            v = frontier.pop()
            for w in _neighbors(v, dims):
                if w in remaining:
                    remaining.discard(w)
                    comp.add(w)
                    frontier.append(w)
        out.append(Shape.of(comp, dim=shape.dim))
    return out


def is_box(shape: Shape) -> Optional[BoxSpec]:
    """Extents of the shape if it is exactly an axis-aligned box, else None.

    The box may be anchored anywhere: the test is that the shape fills its
    own bounding box.  Torus vertex sets must be unwrapped to plain integer
    coordinates before calling this (see the verifier's component lift).

    >>> is_box(Shape.of([(3, 1), (4, 1)]))
    BoxSpec(extents=(2, 1))
    >>> is_box(Shape.of([(0, 0), (1, 1)])) is None
    True
    """
    if not shape.vertices:
        return None
    lows = [min(v[i] for v in shape.vertices) for i in range(shape.dim)]
    highs = [max(v[i] for v in shape.vertices) for i in range(shape.dim)]
    extents = tuple(h - l + 1 for l, h in zip(lows, highs))
    if prod(extents) != len(shape.vertices):
        return None
    # Sorted and duplicate-free with the right cardinality and bounding box
    # is already conclusive, but membership is cheap insurance against a
    # multiset slipping in through from_json.
    members = shape.as_set()
    for cell in _cartesian(*(range(l, h + 1) for l, h in zip(lows, highs))):
        if cell not in members:
            return None
    return BoxSpec(extents)
