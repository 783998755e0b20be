"""Instantiating constructions on tori and verifying the domination property.

A :class:`PDDSInstance` is a concrete candidate set on a finite torus: the
torus dimensions, the domination radius t, the component box shape, and the
list of components.  :func:`instantiate_on_torus` produces one from a
construction by translating the tile's components by every kernel element of
the homomorphism; :func:`verify_pdds` checks the defining property vertex by
vertex:

  * every vertex is within distance t of exactly one component, and
  * within that component it has a unique nearest vertex (its device), and
  * every component is an axis-aligned box (unwrapped on the torus).

Verification has two independent code paths — a plain scan over all
(vertex, component) pairs and a neighborhood expansion outward from each
component — that must agree; the expansion is the fast path used by
default, the scan is the reference oracle.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product as _cartesian
from math import prod
from typing import Iterator, Optional, Sequence

from .abelian import Homomorphism,phi_eval, torus_periods
from .constructions import Construction, Tile
from .lattice import (BoxSpec, Point, Shape, is_box, lee_distance,
                      reduce_point, unit_vector)


@dataclass
class PDDSInstance:
    """A candidate perfect distance-dominating set on a finite torus."""

    torus: tuple[int, ...]
    t: int
    h_spec: BoxSpec
    components: list[Shape]

    @property
    def dim(self) -> int:
        return len(self.torus)

    @property
    def volume(self) -> int:
        return prod(self.torus)

    def to_json(self) -> dict:
        return {
            "torus": list(self.torus),
            "t": self.t,
            "h": self.h_spec.to_json(),
            "components": [[list(v) for v in comp.vertices] for comp in self.components],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PDDSInstance":
        torus = tuple(int(d) for d in obj["torus"])
        if any(d < 1 for d in torus):
            raise ValueError(f"torus dimensions must be positive, got {torus}")
        comps = [Shape.of((tuple(v) for v in comp), dim=len(torus))
                 for comp in obj["components"]]
        comps.sort(key=lambda s: s.vertices)
        return cls(torus, int(obj["t"]), BoxSpec.from_json(obj["h"]), comps)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def loads(cls, text: str) -> "PDDSInstance":
        return cls.from_json(json.loads(text))


@dataclass
class Violation:
    vertex: Point
    kind: str
    detail: str

    def to_json(self) -> dict:
        return {"vertex": list(self.vertex), "kind": self.kind, "detail": self.detail}


@dataclass
class VerificationReport:
    passed: bool
    violations: list[Violation] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"pass": self.passed,
                "violations": [v.to_json() for v in self.violations]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


# --------------------------------------------------------------------------
# Flat indexing and syndrome iteration over a torus.
# --------------------------------------------------------------------------

def _strides(dims: Sequence[int]) -> tuple[int, ...]:
    """Row-major strides: flat order equals lexicographic vertex order."""
    out = [1] * len(dims)
    for i in range(len(dims) - 2, -1, -1):
        out[i] = out[i + 1] * dims[i + 1]
    return tuple(out)


def _unflatten(idx: int, dims: Sequence[int]) -> Point:
    out = [0] * len(dims)
    for i in range(len(dims) - 1, -1, -1):
        idx, out[i] = divmod(idx, dims[i])
    return tuple(out)


def _check_annihilates(hom: Homomorphism, dims: Sequence[int]) -> None:
    group = hom.group
    for i, (d, g) in enumerate(zip(dims, hom.generators)):
        if group.scale(d, g) != group.identity():
            raise ValueError(
                f"torus axis {i + 1} ({d}) is not a period of the homomorphism: "
                f"{d} * {g} != 0; periods are {torus_periods(hom)}")


def _kernel_elements(hom: Homomorphism, dims: tuple[int, ...]) -> Iterator[Point]:
    """All torus vertices mapping to the identity, in lexicographic order.

    Walks the torus in odometer order keeping the group image as a
    mixed-radix rank; each step re-ranks through precomputed per-axis
    addition tables, so the scan is a table lookup per changed axis rather
    than a fresh evaluation per vertex.
    """
    group = hom.group
    order = group.order
    n = len(dims)
    # add_table[i][r] = rank of (element_from_rank(r) + g_i)
    add_table = []
    for g in hom.generators:
        table = [0] * order
        for r, elem in enumerate(group.elements()):
            table[r] = group.element_rank(group.add(elem, g))
        add_table.append(table)
    coords = [0] * n
    rank = 0
    total = prod(dims)
    for _ in range(total):
        if rank == 0:
            yield tuple(coords)
        # Odometer increment, last axis fastest.  Wrapping an axis leaves a
        # net d_i * g_i = 0 added over the full cycle, so updating the rank
        # once per changed axis keeps it consistent.
        i = n - 1
        while i >= 0:
            rank = add_table[i][rank]
            coords[i] += 1
            if coords[i] < dims[i]:
                break
            coords[i] = 0
            i -= 1


def instantiate_on_torus(construction: Construction,
                         torus: Optional[Sequence[int]] = None) -> PDDSInstance:
    """Roll a construction out onto a torus by its kernel translations.

    With no torus given, the per-axis periods of the homomorphism are used
    (the smallest torus it descends to).  Every supplied dimension must be
    annihilated by the corresponding generator image.  The instance's
    components are the kernel-translates of the tile's components,
    deduplicated and canonically ordered.
    """
    hom = construction.hom
    group = hom.group
    dims = torus_periods(hom) if torus is None else tuple(int(d) for d in torus)
    if len(dims) != hom.dim:
        raise ValueError(f"torus has {len(dims)} axes, construction has {hom.dim}")
    _check_annihilates(hom, dims)

    # The inverse syndrome map doubles as a corruption check: a tile that no
    # longer maps bijectively cannot tile anything.
    seen: dict[int, Point] = {}
    for v in construction.tile.shape.vertices:
        r = group.element_rank(phi_eval(hom, v))
        if r in seen:
            raise ValueError(f"construction corrupt: {seen[r]} and {v} share a syndrome")
        seen[r] = v
    if len(seen) != group.order:
        raise ValueError(f"construction corrupt: tile covers {len(seen)} of "
                         f"{group.order} syndromes")

    comp_vertex_lists = [comp.vertices for comp in construction.tile.components()]
    placed: set[frozenset[Point]] = set()
    for z in _kernel_elements(hom, dims):
        for verts in comp_vertex_lists:
            placed.add(frozenset(
                tuple((a + b) % d for a, b, d in zip(v, z, dims)) for v in verts))
    components = sorted((Shape.of(c, dim=len(dims)) for c in placed),
                        key=lambda s: s.vertices)
    return PDDSInstance(dims, construction.t, construction.h_spec, components)


# --------------------------------------------------------------------------
# Verification.
# --------------------------------------------------------------------------

def _circular_offsets(dims: tuple[int, ...], t: int) -> list[tuple[Point, int]]:
    """Distinct torus offsets within distance t, with their circular distance.

    Generated by reducing the infinite-grid Lee ball of radius t modulo the
    torus; on small tori several grid offsets collapse to one torus offset,
    which must be deduplicated so nearest-vertex counts stay correct.
    """
    n = len(dims)
    out: dict[Point, int] = {}
    frontier = {(0,) * n}
    ball = {(0,) * n}
    out[reduce_point((0,) * n, dims)] = 0
    for _ in range(t):
        nxt = set()
        for v in frontier:
            for i in range(n):
                for step in (1, -1):
                    w = list(v)
                    w[i] += step
                    w = tuple(w)
                    if w not in ball:
                        ball.add(w)
                        nxt.add(w)
        frontier = nxt
    for delta in ball:
        circ = sum(min(c % d, d - c % d) for c, d in zip(delta, dims))
        red = reduce_point(delta, dims)
        if red not in out or circ < out[red]:
            out[red] = circ
    return sorted(out.items())


def _lift_component(comp: Shape, dims: tuple[int, ...]) -> Optional[Shape]:
    """Unwrap a torus component to plain grid coordinates, if possible.

    Walks the component's induced torus subgraph assigning consistent
    integer coordinates.  Returns None when the walk is inconsistent (the
    component wraps an axis into a cycle) or does not reach every vertex
    (the set is disconnected) — neither can be a box.
    """
    members = comp.as_set()
    seed = comp.vertices[0]
    lifted: dict[Point, Point] = {seed: seed}
    frontier = [seed]
    while frontier:
        v = frontier.pop()
        lift_v = lifted[v]
        for i in range(len(dims)):
            for step in (1, -1):
                w = list(v)
                w[i] = (w[i] + step) % dims[i]
                w = tuple(w)
                if w not in members:
                    continue
                cand = list(lift_v)
                cand[i] += step
                cand = tuple(cand)
                if w in lifted:
                    if lifted[w] != cand:
                        return None
                else:
                    lifted[w] = cand
                    frontier.append(w)
    if len(lifted) != len(members):
        return None
    return Shape.of(lifted.values(), dim=comp.dim)


def _box_violations(inst: PDDSInstance) -> list[Violation]:
    want = tuple(sorted(inst.h_spec.extents))
    out = []
    for cid, comp in enumerate(inst.components):
        lifted = _lift_component(comp, inst.torus)
        spec = None if lifted is None else is_box(lifted)
        if spec is None:
            out.append(Violation(
                comp.vertices[0], "component_not_box",
                f"component {cid} ({len(comp)} vertices) does not induce an "
                f"axis-aligned box on the torus"))
        elif tuple(sorted(spec.extents)) != want:
            out.append(Violation(
                comp.vertices[0], "component_not_box",
                f"component {cid} is a box of extents {spec.extents}, not an "
                f"axis permutation of {inst.h_spec.extents}"))
    return out


def _coverage_scan(inst: PDDSInstance):
    """Reference path: distances by brute force over (vertex, component) pairs.

    Yields (vertex, covering) where covering lists
    (component_id, min_distance, minimizer_count, device) for every
    component within distance t, in component order.
    """
    dims = inst.torus
    for x in _cartesian(*(range(d) for d in dims)):
        covering = []
        for cid, comp in enumerate(inst.components):
            best = None
            count = 0
            dev = None
            for w in comp.vertices:
                d = lee_distance(x, w, dims)
                if best is None or d < best:
                    best, count, dev = d, 1, w
                elif d == best:
                    count += 1
            if best is not None and best <= inst.t:
                covering.append((cid, best, count, dev))
        yield x, covering


def _verify_by_scan(inst: PDDSInstance) -> list[Violation]:
    violations = []
    for x, covering in _coverage_scan(inst):
        if not covering:
            violations.append(Violation(
                x, "uncovered", f"no component within distance {inst.t}"))
        elif len(covering) > 1:
            ids = ", ".join(str(c[0]) for c in covering)
            violations.append(Violation(
                x, "multi_component", f"components {ids} all within distance {inst.t}"))
        else:
            cid, d, count, _ = covering[0]
            if count > 1:
                violations.append(Violation(
                    x, "ambiguous_nearest",
                    f"{count} nearest vertices in component {cid} at distance {d}"))
    return violations


def _verify_by_expansion(inst: PDDSInstance) -> list[Violation]:
    """Fast path: expand each component's t-neighborhood into flat arrays."""
    dims = inst.torus
    n = len(dims)
    volume = inst.volume
    strides = _strides(dims)
    offsets = _circular_offsets(dims, inst.t)

    cover = bytearray(volume)          # 0, 1, or 2 components saturating
    comp_of = [-1] * volume
    dist_of = bytearray([255]) * volume
    count_of = bytearray(volume)       # minimizer count within the covering component
    multi: dict[int, list[int]] = {}   # flat -> list of covering component ids

    for cid, comp in enumerate(inst.components):
        local: dict[int, list[int]] = {}
        for w in comp.vertices:
            for delta, d in offsets:
                flat = 0
                for a, b, dim, s in zip(w, delta, dims, strides):
                    flat += ((a + b) % dim) * s
                entry = local.get(flat)
                if entry is None:
                    local[flat] = [d, 1]
                elif d < entry[0]:
                    entry[0] = d
                    entry[1] = 1
                elif d == entry[0]:
                    entry[1] += 1
        for flat, (d, cnt) in local.items():
            if cover[flat] == 0:
                cover[flat] = 1
                comp_of[flat] = cid
                dist_of[flat] = d
                count_of[flat] = min(cnt, 255)
            else:
                if cover[flat] == 1:
                    multi[flat] = [comp_of[flat]]
                    cover[flat] = 2
                multi[flat].append(cid)

    violations = []
    for flat in range(volume):
        state = cover[flat]
        if state == 1 and count_of[flat] == 1:
            continue
        x = _unflatten(flat, dims)
        if state == 0:
            violations.append(Violation(
                x, "uncovered", f"no component within distance {inst.t}"))
        elif state == 1:
            violations.append(Violation(
                x, "ambiguous_nearest",
                f"{count_of[flat]} nearest vertices in component {comp_of[flat]} "
                f"at distance {dist_of[flat]}"))
        else:
            ids = ", ".join(str(c) for c in multi[flat])
            violations.append(Violation(
                x, "multi_component", f"components {ids} all within distance {inst.t}"))
    return violations


def verify_pdds(inst: PDDSInstance, *, strict_box: bool = True,
                method: str = "auto") -> VerificationReport:
    """Check the perfect domination property vertex by vertex.

    Reports every violating vertex in canonical order, classified as
    uncovered / multi_component / ambiguous_nearest, plus (under
    ``strict_box``, the default) component_not_box for components that do
    not induce an axis-aligned box.  ``method`` selects the code path:
    "expansion" (component neighborhoods outward; the default under "auto"),
    or "scan" (the brute-force reference).  The report passes exactly when
    no violations are found.
    """
    if method not in ("auto", "expansion", "scan"):
        raise ValueError(f"unknown method {method!r}")
    for comp in inst.components:
        if comp.dim != inst.dim:
            raise ValueError("component dimension differs from torus dimension")
        if not comp.vertices:
            raise ValueError("empty component")
    if method == "scan":
        violations = _verify_by_scan(inst)
    else:
        violations = _verify_by_expansion(inst)
    if strict_box:
        violations.extend(_box_violations(inst))
    violations.sort(key=lambda v: (v.vertex, v.kind))
    return VerificationReport(not violations, violations)


def verify_partition(inst: PDDSInstance, tile: Tile, hom: Homomorphism) -> bool:
    """Do the kernel-translates of the tile partition the instance's torus?

    True exactly when every torus vertex lands in exactly one translate of
    ``tile.shape`` by a kernel element.  This is the geometric face of the
    tile-to-group bijection: it holds iff check_bijection reports ok.
    """
    dims = inst.torus
    _check_annihilates(hom, dims)
    volume = prod(dims)
    tile_verts = tile.shape.vertices
    if not tile_verts or volume % len(tile_verts):
        return False
    strides = _strides(dims)
    covered = bytearray(volume)
    total = 0
    for z in _kernel_elements(hom, dims):
        for v in tile_verts:
            flat = 0
            for a, b, dim, s in zip(v, z, dims, strides):
                flat += ((a + b) % dim) * s
            if covered[flat]:
                return False
            covered[flat] = 1
            total += 1
    return total == volume


def is_lattice_like(inst: PDDSInstance) -> bool:
    """Is the instance a lattice of translates of a single component?

    True when every component is a torus-translate of the first and the set
    of translation offsets is closed under subtraction (i.e. forms a
    subgroup of the torus).  Intended for instances that already passed
    verification.
    """
    if not inst.components:
        return True
    dims = inst.torus
    base = inst.components[0]
    base_set = base.as_set()
    base_anchor = base.vertices[0]
    offsets: set[Point] = set()
    for comp in inst.components:
        if len(comp) != len(base):
            return False
        found = None
        for u in comp.vertices:
            z = tuple((a - b) % d for a, b, d in zip(u, base_anchor, dims))
            shifted = {tuple((a + b) % d for a, b, d in zip(v, z, dims))
                       for v in base_set}
            if shifted == comp.as_set():
                found = z
                break
        if found is None:
            return False
        offsets.add(found)

    # Subgroup test by incremental closure: grow the subgroup generated by
    # the offsets, bailing out as soon as it leaves the offset set.
    subgroup: set[Point] = {(0,) * len(dims)}
    if (0,) * len(dims) not in offsets:
        return False
    for z in sorted(offsets):
        if z in subgroup:
            continue
        # Join <subgroup, z>: add cosets subgroup + k*z until they cycle.
        current = list(subgroup)
        shift = z
        while shift not in subgroup:
            coset = [tuple((a + b) % d for a, b, d in zip(v, shift, dims))
                     for v in current]
            for w in coset:
                if w not in offsets:
                    return False
                subgroup.add(w)
            shift = tuple((a + b) % d for a, b, d in zip(shift, z, dims))
    return len(subgroup) == len(offsets)
