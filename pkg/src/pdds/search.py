"""Exhaustive search for perfect distance-dominating sets on small tori.

The defining property partitions the torus into the t-neighborhoods of the
components, so existence of a t-PDDS[H] is an exact-cover question: choose
box placements whose neighborhoods tile the vertex set.  The search
enumerates every allowed placement, then runs a deterministic destructive
backtracker over bit-vector cell sets, always branching on the lowest
uncovered vertex in canonical order.  A "found" result carries a verified
instance; "exhausted" means the enumeration completed and is a proof of
nonexistence on that torus (for the given orientation set).
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import permutations, product as _cartesian
from math import prod
from typing import NamedTuple, Optional, Sequence

from .lattice import BoxSpec, Shape, box_shape, t_neighborhood, translate
from .verifier import PDDSInstance, verify_pdds

DEFAULT_MAX_CELLS = 4096
MAX_CELLS_ENV = "PDDS_MAX_CELLS"


@dataclass(frozen=True)
class SearchProblem:
    """A torus, a radius, a component box, and which orientations to allow.

    ``orientations`` is "all_axis_permutations" (components may be any axis
    permutation of the box) or "fixed" (exactly the given extents).
    """

    torus: tuple[int, ...]
    t: int
    h_spec: BoxSpec
    orientations: str = "all_axis_permutations"

    def __post_init__(self) -> None:
        object.__setattr__(self, "torus", tuple(int(d) for d in self.torus))
        if any(d < 1 for d in self.torus):
            raise ValueError(f"torus dimensions must be positive, got {self.torus}")
        if len(self.torus) != self.h_spec.dim:
            raise ValueError(
                f"torus has {len(self.torus)} axes, box has {self.h_spec.dim}")
        if self.t < 0:
            raise ValueError(f"radius must be nonnegative, got {self.t}")
        if self.orientations not in ("all_axis_permutations", "fixed"):
            raise ValueError(f"unknown orientation mode {self.orientations!r}")

    @property
    def volume(self) -> int:
        return prod(self.torus)


class Placement(NamedTuple):
    """One candidate component and the cell set its neighborhood claims."""

    cells: Shape
    component: Shape


@dataclass
class SearchResult:
    outcome: str                       # "found" | "exhausted"
    instance: Optional[PDDSInstance]
    nodes_explored: int
    wall_time_ms: int
    nodes_per_subproblem: Optional[list[int]] = None

    def to_json(self) -> dict:
        out = {
            "outcome": self.outcome,
            "nodes_explored": self.nodes_explored,
            "wall_time_ms": self.wall_time_ms,
            "instance": None if self.instance is None else self.instance.to_json(),
        }
        if self.nodes_per_subproblem is not None:
            out["nodes_per_subproblem"] = self.nodes_per_subproblem
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _allowed_orientations(problem: SearchProblem) -> list[tuple[int, ...]]:
    """Distinct extent orderings that fit on the torus without wrapping.

    An extent equal to its torus dimension (above 1) would wrap the axis
    into a ring, so the component could not be unwrapped to a grid box;
    such orientations are dropped entirely.
    """
    if problem.orientations == "fixed":
        candidates = [problem.h_spec.extents]
    else:
        candidates = sorted(set(permutations(problem.h_spec.extents)))
    out = []
    for exts in candidates:
        ok = all(e < d or (e == d == 1) for e, d in zip(exts, problem.torus))
        if ok:
            out.append(exts)
    return out


def enumerate_placements(problem: SearchProblem) -> list[Placement]:
    """Every allowed (cells, component) pair, deduplicated, in canonical order.

    Components are box translates over all torus anchors and allowed
    orientations; cells are their t-neighborhoods on the torus.  Each
    placement appears once, ordered by (cells, component).
    """
    dims = problem.torus
    seen = set()
    out: list[Placement] = []
    for exts in _allowed_orientations(problem):
        base = box_shape(BoxSpec(exts))
        for anchor in _cartesian(*(range(d) for d in dims)):
            comp = translate(base, anchor, dims)
            cells = t_neighborhood(comp, problem.t, dims)
            key = (cells.vertices, comp.vertices)
            if key not in seen:
                seen.add(key)
                out.append(Placement(cells, comp))
    out.sort(key=lambda p: (p.cells.vertices, p.component.vertices))
    return out


def _resolve_max_cells(max_cells: Optional[int]) -> int:
    if max_cells is not None:
        return int(max_cells)
    env = os.environ.get(MAX_CELLS_ENV)
    if env:
        return int(env)
    return DEFAULT_MAX_CELLS


def _flat(point: Sequence[int], strides: Sequence[int]) -> int:
    f = 0
    for c, s in zip(point, strides):
        f += c * s
    return f


def _dfs(masks: list[int], by_vertex: list[list[int]], full: int,
         covered: int, chosen: list[int]) -> tuple[Optional[list[int]], int]:
    """Deterministic backtracker from a given partial cover.

    Branches on the lowest uncovered vertex; placements are tried in
    canonical (index) order.  Returns (solution or None, nodes), where nodes
    counts every placement tried; the count is a pure function of the
    problem, independent of timing or thread count.  Iterative so that deep
    covers (thousands of small placements) cannot hit the recursion limit.
    """
    nodes = 0
    if covered == full:
        return list(chosen), nodes
    path = list(chosen)
    covers = [covered]
    v = ((~covered & full) & -(~covered & full)).bit_length() - 1
    # Each frame is [candidate placement list, cursor] for one branch vertex.
    stack: list[list] = [[by_vertex[v], 0]]
    while stack:
        frame = stack[-1]
        candidates, idx = frame
        placed = False
        while idx < len(candidates):
            p = candidates[idx]
            idx += 1
            if masks[p] & covers[-1]:
                continue
            frame[1] = idx
            nodes += 1
            path.append(p)
            nxt = covers[-1] | masks[p]
            if nxt == full:
                return path, nodes
            covers.append(nxt)
            uncovered = ~nxt & full
            v = (uncovered & -uncovered).bit_length() - 1
            stack.append([by_vertex[v], 0])
            placed = True
            break
        if not placed:
            stack.pop()
            if stack:
                path.pop()
                covers.pop()
    return None, nodes


def exact_cover_search(problem: SearchProblem, *, max_cells: Optional[int] = None,
                       jobs: int = 1) -> SearchResult:
    """Decide existence of a t-PDDS[H] on the torus by exhaustive exact cover.

    Deterministic: node counts and any found instance depend only on the
    problem, not on thread count.  With ``jobs > 1`` the branches of the
    root vertex are searched in worker threads, but results are consumed in
    canonical branch order and branches past the first solution are
    discarded, reproducing the sequential outcome; per-branch node counts
    are then reported in ``nodes_per_subproblem``.

    The torus volume is capped (default 4096 cells; override with the
    ``max_cells`` argument or the PDDS_MAX_CELLS environment variable) since
    the cell bit-vectors and the exhaustive tree grow with volume.

    A found instance is re-verified before being returned.  When the
    neighborhood size |H*| does not divide the torus volume — and no allowed
    orientation can wrap-compress its neighborhood (every extent + 2t fits
    within its axis) — the cover is impossible by counting and the search
    reports exhausted without enumerating.
    """
    start = time.perf_counter()
    volume = problem.volume
    cap = _resolve_max_cells(max_cells)
    if volume > cap:
        raise ValueError(
            f"torus volume {volume} exceeds the cell cap {cap}; raise it via "
            f"max_cells or the {MAX_CELLS_ENV} environment variable if you "
            f"really want an exhaustive search this large")

    def _elapsed_ms() -> int:
        return int((time.perf_counter() - start) * 1000)

    hstar = len(t_neighborhood(box_shape(problem.h_spec), problem.t))
    orientations = _allowed_orientations(problem)
    never_compresses = all(
        e + 2 * problem.t <= d
        for exts in orientations for e, d in zip(exts, problem.torus))
    if volume % hstar and never_compresses:
        return SearchResult("exhausted", None, 0, _elapsed_ms())

    placements = enumerate_placements(problem)
    dims = problem.torus
    strides = [1] * len(dims)
    for i in range(len(dims) - 2, -1, -1):
        strides[i] = strides[i + 1] * dims[i + 1]
    masks = []
    for pl in placements:
        m = 0
        for cell in pl.cells.vertices:
            m |= 1 << _flat(cell, strides)
        masks.append(m)
    by_vertex: list[list[int]] = [[] for _ in range(volume)]
    for idx, m in enumerate(masks):
        b = m
        while b:
            low = b & -b
            by_vertex[low.bit_length() - 1].append(idx)
            b &= b - 1
    full = (1 << volume) - 1

    def finish(chosen: Optional[list[int]], nodes: int,
               per_branch: Optional[list[int]]) -> SearchResult:
        if chosen is None:
            return SearchResult("exhausted", None, nodes, _elapsed_ms(), per_branch)
        comps = sorted((placements[p].component for p in chosen),
                       key=lambda s: s.vertices)
        inst = PDDSInstance(dims, problem.t, problem.h_spec, comps)
        report = verify_pdds(inst)
        if not report.passed:
            raise RuntimeError(
                "internal error: exact cover produced an instance that fails "
                f"verification: {report.to_json()['violations'][:3]}")
        return SearchResult("found", inst, nodes, _elapsed_ms(), per_branch)

    # The first branch vertex is the lowest cell, i.e. the origin, so fixing
    # the first placement to one covering it is the only symmetry breaking.
    if jobs <= 1:
        chosen, nodes = _dfs(masks, by_vertex, full, 0, [])
        return finish(chosen, nodes, None)

    root_candidates = [p for p in by_vertex[0]]
    per_branch: list[int] = []
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_dfs, masks, by_vertex, full, masks[p], [p])
                   for p in root_candidates]
        for fut in futures:
            sol, nodes = fut.result()
            per_branch.append(nodes + 1)     # +1: trying the root placement
            if sol is not None:
                for later in futures:
                    later.cancel()
                return finish(sol, sum(per_branch), per_branch)
    return finish(None, sum(per_branch), per_branch)
