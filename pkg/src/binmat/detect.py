"""Induced-restriction detection, isomorphism testing and canonical forms.

Detection of a pattern N in M asks for a flat F with (E ∩ F, F)
isomorphic to N.  Specialized detectors cover triangles, independent
flats I_k, circuits C_k, two disjoint triangles, and affine geometries;
everything else goes through flat enumeration plus isomorphism.

Detectors return ``None`` when the matroid is pattern-free and a
:class:`Witness` otherwise, so results are truthy exactly when a copy of
the pattern exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, islice
from typing import Iterator, Optional

import numpy as np

from . import catalog, gf2
from .catalog import PatternId, build
from .gf2 import Flat
from .matroid import Matroid, restrict


@dataclass(frozen=True)
class LinearMap:
    """A linear map given by the images of the standard basis vectors.

    Images are independent, so the map is injective; it is invertible
    when ``n_in == n_out``.
    """

    n_in: int
    n_out: int
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != self.n_in:
            raise ValueError("need one image per standard basis vector")
        if gf2.rank_of(self.images) != self.n_in:
            raise ValueError("images must be linearly independent")

    def apply(self, point: int) -> int:
        out = 0
        i = 0
        v = point
        while v:
            if v & 1:
                out ^= self.images[i]
            v >>= 1
            i += 1
        return out

    def apply_matroid(self, m: Matroid) -> Matroid:
        if m.n != self.n_in:
            raise ValueError("matroid dimension does not match the map")
        return Matroid(self.n_out, frozenset(self.apply(p) for p in m.points))


@dataclass(frozen=True)
class Witness:
    """Certificate that a pattern occurs: the flat plus the embedding map."""

    flat: Flat
    map: LinearMap

    def to_json_dict(self) -> dict:
        return {"flat_basis": list(self.flat.basis), "map": list(self.map.images)}


@dataclass(frozen=True)
class CanonicalForm:
    """Invariant representative: equal forms exactly when isomorphic."""

    n: int
    rank: int
    points: tuple[int, ...]
    fingerprint: tuple

    def to_json_dict(self) -> dict:
        return {"dim": self.n, "rank": self.rank, "points": list(self.points)}


# ---------------------------------------------------------------------------
# Cheap invariants
# ---------------------------------------------------------------------------


def tri_degree(m: Matroid, x: int) -> int:
    """Number of ground-set elements y with x + y also in the ground set."""
    return sum(1 for y in m.points if y != x and (x ^ y) in m.points)


def tri_degree_multiset(m: Matroid) -> tuple[int, ...]:
    return tuple(sorted(tri_degree(m, x) for x in m.points))


def triangles(m: Matroid) -> list[tuple[int, int, int]]:
    """All triangles inside the ground set, each once, lexicographically."""
    pts = sorted(m.points)
    out = []
    for i, x in enumerate(pts):
        for y in pts[i + 1 :]:
            z = x ^ y
            if z > y and z in m.points:
                out.append((x, y, z))
    return out


def fingerprint(m: Matroid) -> tuple:
    return (m.n, len(m.points), m.rank, tri_degree_multiset(m))


# ---------------------------------------------------------------------------
# Triangle / affine / odd circuits
# ---------------------------------------------------------------------------


def find_triangle(m: Matroid) -> Optional[tuple[int, int, int]]:
    """First triangle in lexicographic order, or None."""
    pts = sorted(m.points)
    for i, x in enumerate(pts):
        for y in pts[i + 1 :]:
            z = x ^ y
            if z > y and z in m.points:
                return (x, y, z)
    return None


def is_triangle_free(m: Matroid) -> bool:
    return find_triangle(m) is None


def is_affine(m: Matroid) -> bool:
    """Whether some hyperplane avoids the whole ground set.

    The hyperplane with normal h consists of the points x with <h, x> = 0,
    so the ground set avoids it exactly when every inner product is 1.
    """
    if not m.points:
        return True
    pts = list(m.points)
    for h in gf2.all_points(m.n):
        if all((h & x).bit_count() & 1 for x in pts):
            return True
    return False


def odd_circuit_free(m: Matroid) -> bool:
    """No induced odd circuit C_3, C_5, ... up to length n + 1."""
    k = 3
    while k <= m.n + 1:
        if find_induced_circuit(m, k) is not None:
            return False
        k += 2
    return True


# ---------------------------------------------------------------------------
# Specialized pattern searches.  Both walk sorted ground-set prefixes with
# all subset XOR sums tracked, which prunes hard on dense ground sets.
# ---------------------------------------------------------------------------


def iter_induced_independent(m: Matroid, k: int, through: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """All k-element independent sets Z with no subset sum in the ground set.

    Each certifies an induced I_k: E meets the closure of Z in exactly Z,
    i.e. the XOR of every subset of size >= 2 avoids E.  The DFS walks
    sorted prefixes and tracks all subset XORs, so dense ground sets prune
    fast.  With ``through`` set, only sets containing that point are
    produced (the point must lie in the ground set).
    """
    if k < 1 or k > m.n:
        return
    points = m.points
    if through is None:
        pts = sorted(points)
        seed: list[int] = []
    else:
        pts = sorted(points - {through})
        seed = [through]
        if k == 1:
            yield (through,)
            return

    def rec(start: int, prefix: list[int], xors: list[int], sizes: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if len(prefix) == k:
            yield tuple(prefix)
            return
        xor_set = set(xors)
        for i in range(start, len(pts)):
            z = pts[i]
            if z in xor_set:  # dependent on the prefix
                continue
            # Every new subset sum of size >= 2 must avoid E.
            if any(sz >= 1 and (s ^ z) in points for s, sz in zip(xors, sizes)):
                continue
            prefix.append(z)
            yield from rec(i + 1, prefix, xors + [s ^ z for s in xors], _subset_sizes(len(prefix)))
            prefix.pop()

    xors0 = [0]
    for z in seed:
        xors0 += [s ^ z for s in xors0]
    yield from rec(0, list(seed), xors0, _subset_sizes(len(seed)))


def find_induced_independent(m: Matroid, k: int) -> Optional[tuple[int, ...]]:
    return next(iter_induced_independent(m, k), None)


def iter_induced_circuit(m: Matroid, k: int, through: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """All induced k-circuits, as tuples of k points (possibly repeated per
    circuit in different orders when ``through`` is set; deduplicate by set
    if needed).

    The certificate is k points of rank k-1 that sum to zero with the XOR
    of every subset of size 2..k-2 outside the ground set (size-(k-1)
    subsets sum to circuit elements, which are present by definition).
    The DFS builds k-1 independent points; the last one is forced.  With
    ``through``, only circuits containing the point are produced: any
    circuit element can play the forced role, so seeding the prefix with
    the point loses nothing.
    """
    if k < 3 or k - 1 > m.n:
        return
    points = m.points
    if through is None:
        pts = sorted(points)
        seed: list[int] = []
    else:
        pts = sorted(points - {through})
        seed = [through]

    def rec(start: int, prefix: list[int], xors: list[int], sizes: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if len(prefix) == k - 1:
            last = xors[-1]  # XOR of the whole prefix
            if last in points:
                yield tuple(prefix) + (last,)
            return
        for i in range(start, len(pts)):
            z = pts[i]
            if z in xors:
                continue
            # New sums of size 2..k-2 must avoid E; a sum reaches size k-1
            # only when the prefix completes, which the base case handles.
            if any(1 <= sz <= k - 3 and (s ^ z) in points for s, sz in zip(xors, sizes)):
                continue
            prefix.append(z)
            yield from rec(i + 1, prefix, xors + [s ^ z for s in xors], _subset_sizes(len(prefix)))
            prefix.pop()

    xors0 = [0]
    for z in seed:
        xors0 += [s ^ z for s in xors0]
    yield from rec(0, list(seed), xors0, _subset_sizes(len(seed)))


def find_induced_circuit(m: Matroid, k: int) -> Optional[tuple[int, ...]]:
    return next(iter_induced_circuit(m, k), None)


# ---------------------------------------------------------------------------
# Vectorized variants.  The prefix DFS prunes poorly on triangle-free ground
# sets (no pair sum ever lands in E), so bulk candidate filtering over all
# combinations pays off there; results agree exactly with the DFS.
# ---------------------------------------------------------------------------


def _subset_xor_table(values: np.ndarray) -> np.ndarray:
    """(rows, j) values -> (rows, 2^j) XORs of every subset, doubling order."""
    rows, j = values.shape
    out = np.zeros((rows, 1 << j), dtype=values.dtype)
    for b in range(j):
        half = 1 << b
        out[:, half : 2 * half] = out[:, :half] ^ values[:, b : b + 1]
    return out


_BULK_CHUNK = 65536


def _np_candidate_sets(m: Matroid, k: int, through: Optional[int], for_circuit: bool) -> Iterator[tuple[int, ...]]:
    """Candidate point tuples passing the subset-sum membership filter.

    For independent-flat patterns the filter demands every subset XOR of
    size >= 2 outside E; for circuits, sizes 2..k-2 outside E and the full
    prefix XOR inside E.  Independence still needs an exact check.
    Combinations are processed in bounded chunks to cap peak memory.
    """
    pts = sorted(m.points if through is None else m.points - {through})
    width = (k - 1 if through is not None else k) if not for_circuit else (k - 2 if through is not None else k - 1)
    if width < 0 or len(pts) < width:
        return
    memb = np.zeros(1 << m.n, dtype=bool)
    if m.points:
        memb[np.fromiter(m.points, dtype=np.int64, count=len(m.points))] = True
    pts_arr = np.asarray(pts, dtype=np.int64)
    combo_iter = combinations(range(len(pts)), width)
    while True:
        chunk = list(islice(combo_iter, _BULK_CHUNK))
        if not chunk:
            return
        idx = np.array(chunk, dtype=np.int64).reshape(len(chunk), width)
        vals = pts_arr[idx] if width else np.zeros((len(chunk), 0), dtype=np.int64)
        if through is not None:
            vals = np.concatenate([np.full((vals.shape[0], 1), through, dtype=np.int64), vals], axis=1)
        xors = _subset_xor_table(vals)
        sizes = np.asarray(_subset_sizes(vals.shape[1]), dtype=np.int64)
        if not for_circuit:
            bad = sizes >= 2
            ok = ~memb[xors[:, bad]].any(axis=1) if bad.any() else np.ones(len(vals), dtype=bool)
        else:
            mid = (sizes >= 2) & (sizes <= k - 2)
            ok = ~memb[xors[:, mid]].any(axis=1) if mid.any() else np.ones(len(vals), dtype=bool)
            ok &= memb[xors[:, -1]]
        for row in vals[ok]:
            yield tuple(int(v) for v in row)


def iter_induced_independent_bulk(m: Matroid, k: int, through: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """Vectorized equivalent of :func:`iter_induced_independent`."""
    if k < 1 or k > m.n:
        return
    for cand in _np_candidate_sets(m, k, through, for_circuit=False):
        if len(gf2.echelonize(cand)) == k:
            yield cand


def iter_induced_circuit_bulk(m: Matroid, k: int, through: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """Vectorized equivalent of :func:`iter_induced_circuit`."""
    if k < 3 or k - 1 > m.n:
        return
    for cand in _np_candidate_sets(m, k, through, for_circuit=True):
        if len(gf2.echelonize(cand)) == k - 1:
            last = 0
            for z in cand:
                last ^= z
            yield tuple(cand) + (last,)


_BULK_THRESHOLD = 3000


def _use_bulk(m: Matroid, width: int) -> bool:
    from math import comb

    return comb(len(m.points), width) >= _BULK_THRESHOLD and len(m.points) >= width


def iter_independent_auto(m: Matroid, k: int, through: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    width = k if through is None else k - 1
    if _use_bulk(m, width):
        return iter_induced_independent_bulk(m, k, through)
    return iter_induced_independent(m, k, through)


def iter_circuit_auto(m: Matroid, k: int, through: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    width = (k - 1) if through is None else (k - 2)
    if _use_bulk(m, width):
        return iter_induced_circuit_bulk(m, k, through)
    return iter_induced_circuit(m, k, through)


@lru_cache(maxsize=None)
def _subset_sizes(j: int) -> tuple[int, ...]:
    """Subset sizes in the doubling order used by the DFS helpers: entry i
    is the popcount of i, matching xors[i] = XOR of the subset coded by i."""
    sizes = [0]
    for _ in range(j):
        sizes += [s + 1 for s in sizes]
    return tuple(sizes)


def iter_induced_two_triangles(m: Matroid) -> Iterator[tuple[tuple[int, int, int], tuple[int, int, int]]]:
    """Pairs of triangles with trivially intersecting spans and nothing else
    of E in the closure of their union (induced direct sums of two triangles)."""
    tris = triangles(m)
    emask = m.mask
    for i, t1 in enumerate(tris):
        for t2 in tris[i + 1 :]:
            basis = gf2.echelonize(t1[:2] + t2[:2])
            if len(basis) != 4:
                continue
            span_mask = gf2.points_to_mask(gf2.span_points(basis))
            six = gf2.points_to_mask(t1 + t2)
            if emask & span_mask == six:
                yield (t1, t2)


def find_induced_two_triangles(m: Matroid) -> Optional[tuple[tuple[int, int, int], tuple[int, int, int]]]:
    return next(iter_induced_two_triangles(m), None)


def induced_ag_flat(m: Matroid, d: int) -> Optional[Flat]:
    """First d-flat whose restriction is a full affine geometry, or None.

    A restriction is an affine geometry exactly when it has 2^(d-1) points
    and some hyperplane of the flat avoids them all; a vectorized popcount
    sweep prefilters the flats by intersection size.
    """
    target = 1 << (d - 1)
    for basis in _flats_intersecting_in(m, d, target):
        flat = Flat(m.n, d, basis, gf2.span_points(basis))
        if is_affine(restrict(m, flat)):
            return flat
    return None


def max_induced_ag_dim(m: Matroid) -> int:
    """Largest d with an induced affine geometry of dimension d (0 if none)."""
    best = 0
    for d in range(1, m.n + 1):
        if induced_ag_flat(m, d) is not None:
            best = d
    return best


@lru_cache(maxsize=64)
def _flat_mask_matrix(n: int, k: int):
    """All k-flats as packed member bitmasks plus their bases.

    Returns (words, bases): a numpy array of shape (num_flats, num_words)
    holding each flat's member mask in little-endian 64-bit words, and a
    parallel uint16 array of basis vectors (points fit in 16 bits for the
    supported sweep dimensions).
    """
    nwords = max(1, ((1 << n) + 63) // 64)
    masks = []
    bases = []
    for flat in gf2.enumerate_flats(n, k):
        mask = flat.member_mask
        masks.append([(mask >> (64 * w)) & 0xFFFFFFFFFFFFFFFF for w in range(nwords)])
        bases.append(flat.basis)
    words = np.array(masks, dtype=np.uint64).reshape(len(masks), nwords)
    basis_arr = np.array(bases, dtype=np.uint16).reshape(len(bases), k) if k else np.zeros((len(bases), 0), np.uint16)
    return words, basis_arr


def _flats_intersecting_in(m: Matroid, k: int, size: int) -> Iterator[tuple[int, ...]]:
    """Bases of the k-flats whose member set meets the ground set in exactly
    `size` points, via a vectorized popcount prefilter."""
    words, bases = _flat_mask_matrix(m.n, k)
    nwords = words.shape[1]
    emask = m.mask
    erow = np.array(
        [(emask >> (64 * w)) & 0xFFFFFFFFFFFFFFFF for w in range(nwords)], dtype=np.uint64
    )
    counts = np.bitwise_count(words & erow).sum(axis=1)
    for idx in np.nonzero(counts == size)[0]:
        yield tuple(int(v) for v in bases[idx])


def _flat_mask_list(n: int, k: int) -> Iterator[tuple[int, tuple[int, ...]]]:
    """Light (member mask, basis) view of all k-flats."""
    words, bases = _flat_mask_matrix(n, k)
    nwords = words.shape[1]
    for i in range(words.shape[0]):
        mask = 0
        for w in range(nwords):
            mask |= int(words[i, w]) << (64 * w)
        yield mask, tuple(int(v) for v in bases[i])


# ---------------------------------------------------------------------------
# Pattern dispatch
# ---------------------------------------------------------------------------


def _as_pattern_matroid(p: PatternId | Matroid) -> Matroid:
    return build(p) if isinstance(p, PatternId) else p


def has_induced(m: Matroid, p: PatternId | Matroid, want_map: bool = True) -> Optional[Witness]:
    """Witness for an induced restriction isomorphic to the pattern, or None.

    Specialized paths: triangles (pair scan), I_k and C_k (prefix DFS with
    subset-sum pruning), two disjoint triangles, affine geometries.  Other
    patterns use flat enumeration plus isomorphism testing.
    """
    kind = p.kind if isinstance(p, PatternId) else None
    if kind == "triangle" or (kind == "C" and p.params[0] == 3):
        tri = find_triangle(m)
        if tri is None:
            return None
        return _witness_from_points(m, tri[:2], pattern_dim=2)
    if kind == "I":
        z = find_induced_independent(m, p.params[0])
        if z is None:
            return None
        return _witness_from_points(m, z, pattern_dim=p.params[0])
    if kind == "C":
        z = find_induced_circuit(m, p.params[0])
        if z is None:
            return None
        return _witness_from_points(m, z[:-1], pattern_dim=p.params[0] - 1)
    if kind == "2T":
        tt = find_induced_two_triangles(m)
        if tt is None:
            return None
        (x1, y1, _), (x2, y2, _) = tt
        return _witness_from_points(m, (x1, y1, x2, y2), pattern_dim=4)
    if kind == "AG":
        d = p.params[0]
        flat = induced_ag_flat(m, d)
        if flat is None:
            return None
        if not want_map:
            return Witness(flat, LinearMap(d, m.n, flat.basis))
        iso = isomorphism(build(p), restrict(m, flat))
        assert iso is not None
        images = tuple(_lift_through_flat(iso.images[i], flat) for i in range(d))
        return Witness(flat, LinearMap(d, m.n, images))
    return has_induced_generic(m, _as_pattern_matroid(p))


def _lift_through_flat(coords: int, flat: Flat) -> int:
    out = 0
    for i, b in enumerate(flat.basis):
        if (coords >> i) & 1:
            out ^= b
    return out


def _witness_from_points(m: Matroid, independent: tuple[int, ...], pattern_dim: int) -> Witness:
    flat = gf2.closure(independent, m.n)
    assert flat.k == pattern_dim
    return Witness(flat, LinearMap(pattern_dim, m.n, tuple(independent)))


def has_induced_generic(m: Matroid, pattern: Matroid) -> Optional[Witness]:
    """Flat enumeration plus isomorphism: the slow but fully general route.

    A vectorized intersection-size prefilter keeps the per-flat work to the
    rare size matches.
    """
    d = pattern.n
    if d > m.n:
        return None
    size = len(pattern.points)
    for basis in _flats_intersecting_in(m, d, size):
        flat = Flat(m.n, d, basis, gf2.span_points(basis))
        iso = isomorphism(pattern, restrict(m, flat))
        if iso is not None:
            images = tuple(_lift_through_flat(iso.images[i], flat) for i in range(d))
            return Witness(flat, LinearMap(d, m.n, images))
    return None


def is_free_of(m: Matroid, patterns: list[PatternId | Matroid]) -> bool:
    return all(has_induced(m, p, want_map=False) is None for p in patterns)


# ---------------------------------------------------------------------------
# Isomorphism
# ---------------------------------------------------------------------------


def isomorphism(m1: Matroid, m2: Matroid) -> Optional[LinearMap]:
    """An invertible map of the ambient spaces carrying one ground set onto
    the other, or None.  Complete: no false negatives.

    Rank-deficient inputs are compared through their full-rank cores
    (restrictions to the closures of the ground sets); any core
    isomorphism extends to the ambient spaces.
    """
    if m1.n != m2.n or len(m1.points) != len(m2.points):
        return None
    r1, r2 = m1.rank, m2.rank
    if r1 != r2:
        return None
    if r1 < m1.n:
        c1 = gf2.closure(m1.points, m1.n)
        c2 = gf2.closure(m2.points, m2.n)
        core = _isomorphism_full_rank(restrict(m1, c1), restrict(m2, c2))
        if core is None:
            return None
        # Map c1's basis through the core isomorphism, then send the
        # standard completion of c1 to the standard completion of c2.
        images_core = [_lift_through_flat(core.images[i], c2) for i in range(r1)]
        comp1 = gf2.complete_basis(m1.n, c1.basis)
        comp2 = gf2.complete_basis(m2.n, c2.basis)
        ordered_from = c1.basis + comp1
        ordered_to = images_core + list(comp2)
        std_images = []
        for i in range(m1.n):
            coeffs = gf2.solve_coords(1 << i, ordered_from)
            img = 0
            for j in range(len(ordered_from)):
                if (coeffs >> j) & 1:
                    img ^= ordered_to[j]
            std_images.append(img)
        return LinearMap(m1.n, m1.n, tuple(std_images))
    return _isomorphism_full_rank(m1, m2)


def _isomorphism_full_rank(m1: Matroid, m2: Matroid) -> Optional[LinearMap]:
    if fingerprint(m1) != fingerprint(m2):
        return None
    n = m1.n
    if n == 0:
        return LinearMap(0, 0, ())
    deg1 = {x: tri_degree(m1, x) for x in m1.points}
    deg2 = {x: tri_degree(m2, x) for x in m2.points}
    # Greedy source basis from the ground set, rare degrees first.
    freq = {d: sum(1 for v in deg1.values() if v == d) for d in set(deg1.values())}
    ordered = sorted(m1.points, key=lambda x: (freq[deg1[x]], deg1[x], x))
    basis: list[int] = []
    for x in ordered:
        if not gf2.in_span(x, gf2.echelonize(basis)):
            basis.append(x)
            if len(basis) == n:
                break
    assert len(basis) == n
    pts2 = sorted(m2.points)
    e1 = m1.points
    e2 = m2.points

    span_pts = [0]
    span_imgs = [0]

    def rec(depth: int) -> bool:
        if depth == n:
            return True
        b = basis[depth]
        img_span = set(span_imgs)
        for c in pts2:
            if deg2[c] != deg1[b] or c in img_span:
                continue
            k = len(span_pts)
            ok = True
            for idx in range(k):
                s, t = span_pts[idx], span_imgs[idx]
                if ((s ^ b) in e1) != ((t ^ c) in e2):
                    ok = False
                    break
            if not ok:
                continue
            for idx in range(k):
                span_pts.append(span_pts[idx] ^ b)
                span_imgs.append(span_imgs[idx] ^ c)
            if rec(depth + 1):
                return True
            del span_pts[k:]
            del span_imgs[k:]
        return False

    if not rec(0):
        return None
    image_of = dict(zip(span_pts, span_imgs))
    std_images = tuple(image_of[p] for p in (1 << i for i in range(n)))
    # Express e_i in the found basis implicitly: span_pts covers everything.
    return LinearMap(n, n, std_images)


def is_isomorphic(m1: Matroid, m2: Matroid) -> bool:
    return isomorphism(m1, m2) is not None


# ---------------------------------------------------------------------------
# Canonical forms: the minimum ground-set image over a fingerprint-guided,
# isomorphism-invariant family of basis re-coordinatizations.
# ---------------------------------------------------------------------------


def canonical_form(m: Matroid) -> CanonicalForm:
    """Canonical representative; equal forms exactly for isomorphic matroids.

    Rank-deficient ground sets are canonicalized inside their closure, so
    the form records the ambient dimension, the rank, and the canonical
    point list of the full-rank core.
    """
    r = m.rank
    if r < m.n:
        core = restrict(m, gf2.closure(m.points, m.n))
    else:
        core = m
    pts = _canonical_points(core)
    fp = (len(m.points), r, tri_degree_multiset(m))
    return CanonicalForm(n=m.n, rank=r, points=pts, fingerprint=fp)


def _canonical_points(m: Matroid) -> tuple[int, ...]:
    """Lexicographically least image of a full-rank ground set over all
    re-coordinatizations through bases chosen by invariant fingerprints.

    Every locally fingerprint-minimal ordered basis inside the ground set
    is explored; the candidate set is isomorphism-invariant, so the
    minimum image is too, and any image certifies its own class.
    """
    n = m.n
    if n == 0 or not m.points:
        return ()
    deg = {x: tri_degree(m, x) for x in m.points}
    e1 = m.points
    best: Optional[tuple[int, ...]] = None

    def rec(depth: int, span_pts: list[int], span_imgs: list[int]) -> None:
        nonlocal best
        if depth == n:
            img = tuple(sorted(t for s, t in zip(span_pts, span_imgs) if s in e1))
            if best is None or img < best:
                best = img
            return
        span_set = set(span_pts)
        cands = [x for x in m.points if x not in span_set]
        keyed = []
        for x in cands:
            inter = sum(1 for s in span_pts if (s ^ x) in e1)
            keyed.append(((deg[x], inter), x))
        kmin = min(k for k, _ in keyed)
        e_new = 1 << depth
        for k, x in keyed:
            if k != kmin:
                continue
            new_pts = span_pts + [s ^ x for s in span_pts]
            new_imgs = span_imgs + [t ^ e_new for t in span_imgs]
            if best is not None:
                part = sorted(t for s, t in zip(new_pts, new_imgs) if s in e1)
                bp = [p for p in best if p < (1 << (depth + 1))]
                verdict = _compare_prefix(part, bp)
                if verdict > 0:
                    continue
            rec(depth + 1, new_pts, new_imgs)

    rec(0, [0], [0])
    assert best is not None
    return best


def _compare_prefix(part: list[int], bp: list[int]) -> int:
    """-1/0/+1: will a completion of `part` beat / tie / lose to the best?

    Both lists hold the image points below the same power of two.  A
    shorter list continues with larger values, so a strict prefix loses.
    """
    for a, b in zip(part, bp):
        if a != b:
            return -1 if a < b else 1
    if len(part) == len(bp):
        return 0
    return 1 if len(part) < len(bp) else -1


# ---------------------------------------------------------------------------
# Random invertible maps (used by generators and invariance tests)
# ---------------------------------------------------------------------------


def random_invertible_map(n: int, rng) -> LinearMap:
    """Uniform-ish random element of GL(n, 2) by rejection sampling rows."""
    images: list[int] = []
    while len(images) < n:
        v = rng.randrange(1, 1 << n)
        if not gf2.in_span(v, gf2.echelonize(images)):
            images.append(v)
    return LinearMap(n, n, tuple(images))
