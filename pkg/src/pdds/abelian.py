"""Finite abelian groups, grid homomorphisms, and integer quotients.

A finite abelian group is represented as a product of cyclic groups
``Z_{m_1} x ... x Z_{m_r}`` with elements stored as reduced residue tuples.
A homomorphism from the grid ``Z^n`` into such a group is determined by the
images of the standard basis vectors; evaluating it at a vertex is a
residue-weighted sum of those generators.

The central test this module provides is :func:`check_bijection`: whether a
homomorphism restricted to a finite vertex set hits every group element
exactly once.  When the vertex set is a candidate tile, that bijection is
exactly the algebraic condition for the tile's translates under the
homomorphism's kernel to partition the grid.

:func:`smith_quotient` computes the quotient ``Z^n / L`` for a full-rank
sublattice ``L`` via Smith normal form, and
:func:`enumerate_abelian_groups` lists the isomorphism classes of a given
order, both in invariant-factor canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm, prod
from typing import Iterator, Optional, Sequence

from .lattice import Point, TorusDims

GroupElement = tuple[int, ...]


@dataclass(frozen=True)
class AbelianGroup:
    """Product of cyclic groups given by positive moduli.

    Moduli of 1 are legal (trivial factors) but are dropped by
    :meth:`canonical`, which rewrites the group in invariant-factor form
    ``d_1 | d_2 | ... | d_r``.
    """

    moduli: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "moduli", tuple(int(m) for m in self.moduli))
        if any(m < 1 for m in self.moduli):
            raise ValueError(f"moduli must be positive, got {self.moduli}")

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def order(self) -> int:
        return prod(self.moduli)

    def identity(self) -> GroupElement:
        return (0,) * len(self.moduli)

    def reduce(self, a: Sequence[int]) -> GroupElement:
        if len(a) != len(self.moduli):
            raise ValueError(f"element has {len(a)} residues, group rank is {len(self.moduli)}")
        return tuple(int(x) % m for x, m in zip(a, self.moduli))

    def add(self, a: GroupElement, b: GroupElement) -> GroupElement:
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def neg(self, a: GroupElement) -> GroupElement:
        return tuple((-x) % m for x, m in zip(a, self.moduli))

    def scale(self, c: int, a: GroupElement) -> GroupElement:
        return tuple((c * x) % m for x, m in zip(a, self.moduli))

    def elements(self) -> Iterator[GroupElement]:
        """All elements in lexicographic residue order."""
        if not self.moduli:
            yield ()
            return
        cur = [0] * len(self.moduli)
        while True:
            yield tuple(cur)
            i = len(cur) - 1
            while i >= 0:
                cur[i] += 1
                if cur[i] < self.moduli[i]:
                    break
                cur[i] = 0
                i -= 1
            else:
                return

    def element_rank(self, a: GroupElement) -> int:
        """Position of a in lexicographic residue order (mixed-radix rank)."""
        r = 0
        for x, m in zip(a, self.moduli):
            r = r * m + (x % m)
        return r

    def element_from_rank(self, r: int) -> GroupElement:
        out = [0] * len(self.moduli)
        for i in range(len(self.moduli) - 1, -1, -1):
            r, out[i] = divmod(r, self.moduli[i])
        return tuple(out)

    def element_order(self, a: GroupElement) -> int:
        return lcm(1, *(m // gcd(x, m) for x, m in zip(a, self.moduli)))

    def canonical(self) -> "AbelianGroup":
        """Isomorphic group in invariant-factor form d_1 | d_2 | ... .

        >>> AbelianGroup((4, 6)).canonical()
        AbelianGroup(moduli=(2, 12))
        """
        powers: dict[int, list[int]] = {}
        for m in self.moduli:
            for p, e in _factorize(m).items():
                powers.setdefault(p, []).append(e)
        for exps in powers.values():
            exps.sort(reverse=True)
        depth = max((len(v) for v in powers.values()), default=0)
        factors = []
        for j in range(depth):
            d = prod(p ** exps[j] for p, exps in powers.items() if j < len(exps))
            factors.append(d)
        return AbelianGroup(tuple(reversed(factors)))

    def to_json(self) -> dict:
        return {"moduli": list(self.moduli)}

    @classmethod
    def from_json(cls, obj: dict) -> "AbelianGroup":
        return cls(tuple(obj["moduli"]))

    def __str__(self) -> str:
        if not self.moduli:
            return "Z1"
        return " x ".join(f"Z{m}" for m in self.moduli)


@dataclass(frozen=True)
class Homomorphism:
    """Grid homomorphism Z^n -> G fixed by the images of e_1 ... e_n."""

    group: AbelianGroup
    generators: tuple[GroupElement, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "generators",
            tuple(self.group.reduce(g) for g in self.generators))

    @property
    def dim(self) -> int:
        return len(self.generators)

    def to_json(self) -> dict:
        return {"moduli": list(self.group.moduli),
                "generators": [list(g) for g in self.generators]}

    @classmethod
    def from_json(cls, obj: dict) -> "Homomorphism":
        return cls(AbelianGroup(tuple(obj["moduli"])),
                   tuple(tuple(g) for g in obj["generators"]))


def phi_eval(hom: Homomorphism, p: Sequence[int]) -> GroupElement:
    """Image of a grid vertex: the residue-weighted sum of the generators."""
    if len(p) != hom.dim:
        raise ValueError(f"vertex dim {len(p)} != homomorphism dim {hom.dim}")
    g = hom.group
    acc = g.identity()
    for c, gen in zip(p, hom.generators):
        if c:
            acc = g.add(acc, g.scale(c, gen))
    return acc


def kernel_member(hom: Homomorphism, p: Sequence[int]) -> bool:
    """Whether a vertex maps to the identity."""
    return phi_eval(hom, p) == hom.group.identity()


@dataclass(frozen=True)
class BijectionResult:
    """Outcome of check_bijection.

    status is "ok", "collision" (with the first colliding vertex pair in
    canonical scan order), or "not_surjective" (with the first missing group
    element in lexicographic residue order).
    """

    status: str
    collision: Optional[tuple[Point, Point]] = None
    missing: Optional[GroupElement] = None

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def check_bijection(hom: Homomorphism, vertices: Sequence[Point]) -> BijectionResult:
    """Test whether the homomorphism restricted to a vertex set is a bijection onto the group.

    The scan runs in canonical (lexicographically sorted) vertex order, so
    the collision witness is deterministic: the reported pair is the earlier
    preimage together with the first vertex that repeats an image.

    >>> G = AbelianGroup((5,))
    >>> h = Homomorphism(G, ((1,), (2,)))
    >>> check_bijection(h, [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)]).ok
    True
    >>> check_bijection(h, [(0, 0), (2, 0), (0, 1), (1, 1), (2, 2)]).status
    'collision'
    """
    g = hom.group
    seen: dict[GroupElement, Point] = {}
    for v in sorted(tuple(p) for p in vertices):
        img = phi_eval(hom, v)
        if img in seen:
            return BijectionResult("collision", collision=(seen[img], v))
        seen[img] = v
    if len(seen) == g.order:
        return BijectionResult("ok")
    for elem in g.elements():
        if elem not in seen:
            return BijectionResult("not_surjective", missing=elem)
    raise AssertionError("unreachable: fewer images than order but none missing")


def torus_periods(hom: Homomorphism) -> TorusDims:
    """Per-axis element orders: the smallest torus the homomorphism descends to.

    Axis i of the returned tuple is the order of the image of e_i, i.e. the
    least positive d with d * g_i = 0.  The homomorphism is well defined on
    any torus whose dims are positive multiples of these.
    """
    return tuple(hom.group.element_order(g) for g in hom.generators)


def molnar_k_set(group: AbelianGroup) -> tuple[GroupElement, ...]:
    """One representative from each {g, -g} pair of nonidentity elements.

    Requires odd group order (an element equal to its own negative would
    leave a pair unrepresentable).  Scanning in lexicographic residue order,
    an element is taken exactly when its negative has not been taken, which
    makes the choice deterministic.  Returns (order - 1) / 2 elements.

    >>> molnar_k_set(AbelianGroup((5,)))
    ((1,), (2,))
    """
    if group.order % 2 == 0:
        raise ValueError(f"group order must be odd, got {group.order}")
    chosen: list[GroupElement] = []
    taken: set[GroupElement] = set()
    for elem in group.elements():
        if elem == group.identity():
            continue
        if group.neg(elem) in taken:
            continue
        chosen.append(elem)
        taken.add(elem)
    return tuple(chosen)


def _factorize(m: int) -> dict[int, int]:
    """Prime factorization by trial division (orders here are small)."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def _partitions(n: int) -> list[tuple[int, ...]]:
    """Partitions of n as non-increasing tuples, largest-first order.

    >>> _partitions(3)
    [(3,), (2, 1), (1, 1, 1)]
    """
    if n == 0:
        return [()]
    out = []
    for first in range(n, 0, -1):
        for rest in _partitions(n - first):
            if not rest or rest[0] <= first:
                out.append((first,) + rest)
    return out


def enumerate_abelian_groups(m: int) -> list[AbelianGroup]:
    """All isomorphism classes of abelian groups of order m, canonical form.

    One group per class, in a deterministic order with the cyclic group
    first: per prime p^a dividing m the partitions of a are taken
    largest-part-first, and classes are combined across primes in product
    order.

    >>> [g.moduli for g in enumerate_abelian_groups(9)]
    [(9,), (3, 3)]
    """
    if m < 1:
        raise ValueError(f"order must be positive, got {m}")
    if m == 1:
        return [AbelianGroup(())]
    factors = _factorize(m)
    primes = sorted(factors)
    per_prime = [[tuple(p ** e for e in part) for part in _partitions(factors[p])]
                 for p in primes]
    out = []
    idx = [0] * len(primes)
    while True:
        moduli: list[int] = []
        for choice, options in zip(idx, per_prime):
            moduli.extend(options[choice])
        out.append(AbelianGroup(tuple(moduli)).canonical())
        i = len(idx) - 1
        while i >= 0:
            idx[i] += 1
            if idx[i] < len(per_prime[i]):
                break
            idx[i] = 0
            i -= 1
        else:
            return out


def smith_quotient(basis: Sequence[Sequence[int]]) -> AbelianGroup:
    """Quotient Z^n / L for the full-rank lattice L spanned by the basis rows.

    Diagonalizes the basis matrix by integer row/column operations (Smith
    normal form); the quotient is the product of Z_{d_i} over the diagonal,
    with trivial factors dropped and the group returned in invariant-factor
    form.  The quotient's order equals |det(basis)|.  Raises ValueError if
    the rows do not span a full-rank lattice.

    >>> smith_quotient([(3, 2), (-2, 3)])
    AbelianGroup(moduli=(13,))
    >>> smith_quotient([(13, 0), (3, 2)])
    AbelianGroup(moduli=(26,))
    """
    rows = [list(map(int, r)) for r in basis]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("basis must be a square matrix")
    a = [r[:] for r in rows]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]

    for k in range(n):
        while True:
            # Find the entry of least nonzero magnitude in the submatrix and
            # pivot it to (k, k).
            best = None
            for i in range(k, n):
                for j in range(k, n):
                    if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                raise ValueError("basis is singular: rows do not span a full-rank lattice")
            swap_rows(k, best[0])
            swap_cols(k, best[1])
            pivot = a[k][k]
            done = True
            for i in range(k + 1, n):
                q = a[i][k] // pivot
                if q:
                    for j in range(k, n):
                        a[i][j] -= q * a[k][j]
                if a[i][k]:
                    done = False
            for j in range(k + 1, n):
                q = a[k][j] // pivot
                if q:
                    for i in range(k, n):
                        a[i][j] -= q * a[i][k]
                if a[k][j]:
                    done = False
            if done:
                break
        # The rest of the row and column are zero; normalize the pivot sign.
        if a[k][k] < 0:
            for j in range(k, n):
                a[k][j] = -a[k][j]

    diag = [a[i][i] for i in range(n)]
    if any(d == 0 for d in diag):
        raise ValueError("basis is singular: rows do not span a full-rank lattice")
    # Enforce the divisibility chain d_1 | d_2 | ... by gcd/lcm on pairs.
    for i in range(n):
        for j in range(i + 1, n):
            if diag[j] % diag[i]:
                g = gcd(diag[i], diag[j])
                diag[j] = diag[i] * diag[j] // g
                diag[i] = g
    nontrivial = tuple(d for d in diag if d > 1)
    return AbelianGroup(nontrivial).canonical()
