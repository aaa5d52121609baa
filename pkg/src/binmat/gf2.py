"""Linear algebra over F_2 on an explicit ambient geometry.

Points of the ambient geometry PG(n-1, 2) are the nonzero vectors of
F_2^n, encoded as integer bitmasks (coordinate i of the vector is bit i,
so the standard basis is 1, 2, 4, ..., 2^(n-1)).  Point sets are plain
``frozenset[int]``; flats carry both a member set and a reduced-echelon
basis so that membership tests and re-coordinatization are both cheap.

All values are immutable and all functions are pure.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator

DEFAULT_MAX_DIM = 24


def max_dim() -> int:
    """Hard cap on the ambient dimension (overridable via BINMAT_MAX_DIM)."""
    return int(os.environ.get("BINMAT_MAX_DIM", DEFAULT_MAX_DIM))


def check_dim(n: int) -> int:
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"dimension must be a non-negative integer, got {n!r}")
    if n > max_dim():
        raise ValueError(f"dimension {n} exceeds the cap {max_dim()} (set BINMAT_MAX_DIM to raise it)")
    return n


def check_points(points: Iterable[int], n: int) -> frozenset[int]:
    pts = frozenset(points)
    for v in pts:
        if not isinstance(v, int) or not 1 <= v < (1 << n):
            raise ValueError(f"point {v!r} out of range [1, 2^{n} - 1]")
    return pts


def all_points(n: int) -> range:
    """The points of the ambient geometry of dimension n, in increasing order."""
    return range(1, 1 << n)


def points_to_mask(points: Iterable[int]) -> int:
    m = 0
    for v in points:
        m |= 1 << v
    return m


def mask_to_points(mask: int) -> frozenset[int]:
    out = []
    v = mask >> 1
    i = 1
    while v:
        if v & 1:
            out.append(i)
        v >>= 1
        i += 1
    return frozenset(out)


def echelonize(points: Iterable[int]) -> tuple[int, ...]:
    """Reduced-echelon basis of the span of the given vectors.

    The result is unique per subspace: leading (highest set) bits are
    distinct, each leading bit occurs in exactly one basis vector, and
    vectors are sorted by increasing leading bit.
    """
    pivots: dict[int, int] = {}
    for v in points:
        while v:
            h = v.bit_length() - 1
            if h in pivots:
                v ^= pivots[h]
            else:
                pivots[h] = v
                break
    # Back-substitute so every pivot bit appears in one vector only.
    for h in sorted(pivots, reverse=True):
        for g in pivots:
            if g != h and (pivots[g] >> h) & 1:
                pivots[g] ^= pivots[h]
    return tuple(pivots[h] for h in sorted(pivots))


def span_points(basis: Iterable[int]) -> frozenset[int]:
    """All nonzero combinations of the basis vectors."""
    acc = [0]
    for b in basis:
        acc += [x ^ b for x in acc]
    return frozenset(acc[1:])


@dataclass(frozen=True)
class Flat:
    """A flat of the ambient geometry: a subspace minus the zero vector."""

    n: int
    k: int
    basis: tuple[int, ...]
    members: frozenset[int]

    @property
    def member_mask(self) -> int:
        return points_to_mask(self.members)

    def __contains__(self, point: int) -> bool:
        return point in self.members

    def __len__(self) -> int:
        return len(self.members)


def flat_from_basis(n: int, basis: Iterable[int]) -> Flat:
    b = echelonize(basis)
    return Flat(n=n, k=len(b), basis=b, members=span_points(b))


def closure(points: Iterable[int], n: int) -> Flat:
    """Smallest flat containing the given points (the empty flat for no points)."""
    check_dim(n)
    return flat_from_basis(n, check_points(points, n))


def rank_of(points: Iterable[int]) -> int:
    """Rank over F_2 of a set of points viewed as vectors."""
    return len(echelonize(points))


def in_span(point: int, basis: tuple[int, ...]) -> bool:
    """Membership of a vector in the span of an echelonized basis."""
    v = point
    for b in reversed(basis):
        h = b.bit_length() - 1
        if (v >> h) & 1:
            v ^= b
    return v == 0


def coords_in_basis(point: int, basis: tuple[int, ...]) -> int:
    """Coefficient bitmask of a vector in an echelonized basis.

    Bit i of the result is the coefficient of ``basis[i]``.  Raises if
    the vector is not in the span.
    """
    v = point
    out = 0
    for i in range(len(basis) - 1, -1, -1):
        b = basis[i]
        h = b.bit_length() - 1
        if (v >> h) & 1:
            v ^= b
            out |= 1 << i
    if v:
        raise ValueError(f"point {point} is not in the span of the basis")
    return out


def solve_coords(point: int, basis: tuple[int, ...]) -> int:
    """Coefficient bitmask of a vector in an arbitrary independent basis.

    Unlike :func:`coords_in_basis` the basis need not be echelonized; a
    tracked Gaussian elimination recovers coefficients in the original
    order.  Raises if the basis is dependent or the vector outside it.
    """
    pivots: dict[int, tuple[int, int]] = {}
    for i, b in enumerate(basis):
        v, c = b, 1 << i
        while v:
            h = v.bit_length() - 1
            if h in pivots:
                pv, pc = pivots[h]
                v ^= pv
                c ^= pc
            else:
                pivots[h] = (v, c)
                break
        else:
            raise ValueError("basis vectors are dependent")
    v, c = point, 0
    while v:
        h = v.bit_length() - 1
        if h not in pivots:
            raise ValueError(f"point {point} is not in the span of the basis")
        pv, pc = pivots[h]
        v ^= pv
        c ^= pc
    return c


def complete_basis(n: int, basis: tuple[int, ...]) -> tuple[int, ...]:
    """Standard vectors extending an independent set to a basis of F_2^n."""
    ext = []
    acc = list(basis)
    for i in range(n):
        e = 1 << i
        if not in_span(e, echelonize(acc)):
            ext.append(e)
            acc.append(e)
    return tuple(ext)


@lru_cache(maxsize=None)
def gaussian_binomial(n: int, k: int) -> int:
    """Number of k-dimensional subspaces of an n-dimensional F_2 space.

    Exact big-integer arithmetic via the product formula; 0 when k is
    outside [0, n].
    """
    if k < 0 or k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= (1 << (n - i)) - 1
        den *= (1 << (i + 1)) - 1
    assert num % den == 0
    return num // den


def enumerate_flats(n: int, k: int) -> Iterator[Flat]:
    """All k-dimensional flats of the ambient geometry, each exactly once.

    Flats are produced via reduced-echelon bases: choose the k pivot bit
    positions, then every assignment of the free entries.  The order is
    deterministic (pivot combinations in ascending order, free entries in
    increasing numeric value).
    """
    check_dim(n)
    if not 0 <= k <= n:
        raise ValueError(f"flat dimension {k} out of range [0, {n}]")
    if k == 0:
        yield Flat(n=n, k=0, basis=(), members=frozenset())
        return
    for pivots in combinations(range(n), k):
        # Free cells: row i may have any bits at non-pivot positions below its pivot.
        free_cells = []  # (row, bit)
        pivot_set = set(pivots)
        for i, p in enumerate(pivots):
            for b in range(p):
                if b not in pivot_set:
                    free_cells.append((i, b))
        rows0 = [1 << p for p in pivots]
        for assign in range(1 << len(free_cells)):
            rows = rows0[:]
            for j, (i, b) in enumerate(free_cells):
                if (assign >> j) & 1:
                    rows[i] |= 1 << b
            basis = tuple(rows)
            yield Flat(n=n, k=k, basis=basis, members=span_points(basis))


def enumerate_flats_avoiding(n: int, l: int, avoid: Flat) -> Iterator[Flat]:
    """l-dimensional flats meeting a given flat only in the zero vector.

    Exactly 2^(k*l) * gaussian_binomial(n-k, l) flats are produced, where
    k is the dimension of the avoided flat.
    """
    if avoid.n != n:
        raise ValueError("avoided flat has a different ambient dimension")
    if not 0 <= l <= n - avoid.k:
        raise ValueError(f"flat dimension {l} out of range [0, {n - avoid.k}]")
    avoid_members = avoid.members
    for flat in enumerate_flats(n, l):
        if not (flat.members & avoid_members):
            yield flat


def cosets(flat: Flat, n: int) -> Iterator[frozenset[int]]:
    """The 2^(n-k) - 1 cosets of a flat, partitioning the points outside it.

    The flat itself is not a coset.  Cosets are produced in increasing
    order of their smallest representative.
    """
    if flat.n != n:
        raise ValueError("flat has a different ambient dimension")
    vs = [0] + sorted(flat.members)
    seen = points_to_mask(flat.members)
    for x in all_points(n):
        if (seen >> x) & 1:
            continue
        coset = frozenset(x ^ m for m in vs)
        seen |= points_to_mask(coset)
        yield coset


def coset_of(point: int, flat: Flat) -> frozenset[int]:
    """The coset of a flat containing a given outside point."""
    if point in flat.members:
        raise ValueError(f"point {point} lies in the flat")
    return frozenset(point ^ m for m in [0, *flat.members])


def stabilizer(points: frozenset[int], within: Flat) -> Flat:
    """Translations inside a flat that fix a point set: {w : w + S = S}.

    Always a subflat of ``within``.  For an empty set every translation
    works, so the whole flat is returned (vacuous stabilization).
    """
    if not points:
        return within
    stab = []
    for w in within.members:
        if all((s ^ w) in points for s in points):
            stab.append(w)
    flat = flat_from_basis(within.n, stab)
    assert flat.members == frozenset(stab)
    return flat
