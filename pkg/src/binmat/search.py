"""Extremal search: minimum ground-set size under forbidden induced
restrictions, classification of the extremal examples, and constrained
random generation for property checks.

Two engines share the work.  The primary engine ("repair search") drives
full-rank searches: every full-rank matroid is isomorphic to one whose
ground set contains the standard basis, so the search starts from the
basis and, whenever a forbidden pattern is induced on a flat F, branches
over the points of F outside the current ground set (any valid superset
must contain one).  Terminals are exactly the pattern-free states, which
makes the engine complete for the minimum size and for classification at
the minimum.  A plain increasing-point-order enumeration ("orderly
search") covers rank-deficient searches, classification above the
minimum, and micro-scale cross-validation.

Reported witnesses are re-validated from scratch with the detectors;
nothing is trusted from pruning state.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Iterator, Optional, Sequence

import numpy as np

from . import detect, gf2
from .catalog import PatternId, build
from .detect import CanonicalForm
from .matroid import Matroid

REPAIR_KINDS = {"triangle", "I", "C", "2T"}


@dataclass(frozen=True)
class SearchSpec:
    """What to search for: ambient dimension, forbidden induced patterns,
    rank requirement, optional size cap, classification flag and seed."""

    dim: int
    forbidden: tuple[PatternId, ...]
    require_full_rank: bool = True
    max_size: Optional[int] = None
    classify: bool = False
    seed: int = 0

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be at least 1")
        object.__setattr__(self, "forbidden", tuple(self.forbidden))


@dataclass
class SearchReport:
    min_size: Optional[int]
    extremal: list[CanonicalForm] = field(default_factory=list)
    extremal_witnesses: list[Matroid] = field(default_factory=list)
    nodes_explored: int = 0
    elapsed_s: float = 0.0
    exhaustive: bool = True
    size_cap: Optional[int] = None

    def to_json_dict(self) -> dict:
        return {
            "min_size": self.min_size,
            "extremal": [c.to_json_dict() for c in self.extremal],
            "nodes": self.nodes_explored,
            "elapsed_ms": round(self.elapsed_s * 1000.0, 3),
            "exhaustive": self.exhaustive,
            "size_cap": self.size_cap,
        }


class _Budget:
    def __init__(self, node_budget: Optional[int], time_budget_s: Optional[float]):
        self.node_budget = node_budget
        self.deadline = time.monotonic() + time_budget_s if time_budget_s else None
        self.nodes = 0
        self.exceeded = False

    def tick(self) -> bool:
        self.nodes += 1
        if self.node_budget is not None and self.nodes > self.node_budget:
            self.exceeded = True
        elif self.deadline is not None and (self.nodes & 0x3FF) == 0 and time.monotonic() > self.deadline:
            self.exceeded = True
        return self.exceeded


def _split_forbidden(forbidden: Sequence[PatternId]) -> tuple[bool, list[int], list[int], bool, list[Matroid]]:
    """(triangle?, I-orders, C-orders, two-triangles?, generic patterns)."""
    tri = False
    i_ks: list[int] = []
    c_ks: list[int] = []
    two_t = False
    generic: list[Matroid] = []
    for p in forbidden:
        if p.kind == "triangle" or (p.kind == "C" and p.params[0] == 3):
            tri = True
        elif p.kind == "I":
            i_ks.append(p.params[0])
        elif p.kind == "C":
            c_ks.append(p.params[0])
        elif p.kind == "2T":
            two_t = True
        else:
            generic.append(build(p))
    return tri, sorted(set(i_ks)), sorted(set(c_ks)), two_t, generic


def _pair_sum_mask(points: frozenset[int]) -> int:
    """Bitmask of all pairwise XOR sums: adding any of these creates a triangle."""
    pts = list(points)
    acc = 0
    for i, a in enumerate(pts):
        for b in pts[i + 1 :]:
            acc |= 1 << (a ^ b)
    return acc


def _active_patterns(m: Matroid, i_ks: list[int], c_ks: list[int], two_t: bool, limit: int = 64) -> list[tuple[int, ...]]:
    """Flats (as sorted member tuples) carrying a forbidden induced pattern.

    Collection stops at `limit` flats; an empty result therefore certifies
    pattern-freeness, a non-empty one just feeds victim selection and the
    lower bound.
    """
    flats: list[tuple[int, ...]] = []
    seen: set[frozenset[int]] = set()

    def add(points: tuple[int, ...]) -> bool:
        members = gf2.span_points(gf2.echelonize(points))
        if members not in seen:
            seen.add(members)
            flats.append(tuple(sorted(members)))
        return len(flats) >= limit

    for k in i_ks:
        for z in detect.iter_independent_auto(m, k):
            if add(z):
                return flats
    for k in c_ks:
        for z in detect.iter_circuit_auto(m, k):
            if add(z[:-1]):
                return flats
    if two_t:
        for t1, t2 in detect.iter_induced_two_triangles(m):
            if add(t1[:2] + t2[:2]):
                return flats
    return flats


def _greedy_disjoint_lower_bound(repair_masks: list[int]) -> int:
    taken = 0
    count = 0
    for rm in sorted(repair_masks):
        if rm & taken == 0:
            taken |= rm
            count += 1
    return count


@lru_cache(maxsize=8)
def _perm_point_table(n: int) -> np.ndarray:
    """PERM[i, v] = image of point v under the i-th coordinate permutation."""
    perms = list(permutations(range(n)))
    tbl = np.zeros((len(perms), 1 << n), dtype=np.int32)
    for i, pm in enumerate(perms):
        for v in range(1 << n):
            w = 0
            for b in range(n):
                if (v >> b) & 1:
                    w |= 1 << pm[b]
            tbl[i, v] = w
    return tbl


def _orbit_key(points: frozenset[int], n: int) -> bytes:
    """Lexicographically least coordinate-permutation image of a point set."""
    tbl = _perm_point_table(n)
    arr = np.fromiter(points, dtype=np.int32, count=len(points))
    images = tbl[:, arr]
    images.sort(axis=1)
    idx = np.lexsort(images.T[::-1])
    return images[idx[0]].tobytes()


class _RepairEngine:
    """Pattern-repair DFS over ground sets containing the standard basis."""

    def __init__(self, spec: SearchSpec, cap: int, budget: _Budget, use_orbit_dedup: bool):
        self.spec = spec
        self.cap = cap
        self.budget = budget
        tri, i_ks, c_ks, two_t, generic = _split_forbidden(spec.forbidden)
        if generic:
            raise ValueError("repair engine handles triangle/I/C/2T patterns only")
        self.tri = tri
        self.i_ks = i_ks
        self.c_ks = c_ks
        self.two_t = two_t
        self.use_orbit_dedup = use_orbit_dedup and spec.dim <= 7
        self.visited: set = set()
        self.terminals: dict[int, list[frozenset[int]]] = {}

    def run(self) -> None:
        base = frozenset(1 << i for i in range(self.spec.dim))
        self._dfs(base)

    def _key(self, points: frozenset[int]):
        if self.use_orbit_dedup:
            return _orbit_key(points, self.spec.dim)
        return points

    def _dfs(self, points: frozenset[int]) -> None:
        if self.budget.tick():
            return
        key = self._key(points)
        if key in self.visited:
            return
        self.visited.add(key)
        m = Matroid(self.spec.dim, points)
        if self.tri and detect.find_triangle(m) is not None:
            return
        flats = _active_patterns(m, self.i_ks, self.c_ks, self.two_t)
        if not flats:
            self.terminals.setdefault(len(points), []).append(points)
            return
        if len(points) >= self.cap:
            return
        forbidden_adds = _pair_sum_mask(points) if self.tri else 0
        live_lists: list[list[int]] = []
        repair_masks: list[int] = []
        for members in flats:
            live = [v for v in members if v not in points and not (forbidden_adds >> v) & 1]
            if not live:
                return  # unfixable pattern
            live_lists.append(live)
            repair_masks.append(gf2.points_to_mask(live))
        if len(points) + _greedy_disjoint_lower_bound(repair_masks) > self.cap:
            return
        victim = min(range(len(flats)), key=lambda i: (len(live_lists[i]), flats[i]))
        for r in sorted(live_lists[victim]):
            self._dfs(points | {r})


class _OrderlyEngine:
    """Increasing-point-order enumeration of ground sets, optionally above a
    fixed standard basis with coordinate-permutation canonicity pruning.

    Records every pattern-free state of size at most the cap; prunes
    branches whose induced patterns can no longer be repaired by points
    above the frontier, and triangle-containing branches outright when
    triangles are forbidden.
    """

    def __init__(self, spec: SearchSpec, cap: int, budget: _Budget, use_symmetry: bool = True):
        self.spec = spec
        self.cap = cap
        self.budget = budget
        tri, i_ks, c_ks, two_t, generic = _split_forbidden(spec.forbidden)
        self.tri = tri
        self.i_ks = i_ks
        self.c_ks = c_ks
        self.two_t = two_t
        self.generic = generic
        self.use_symmetry = use_symmetry and spec.require_full_rank and spec.dim <= 7
        self.terminals: dict[int, list[frozenset[int]]] = {}

    def run(self) -> None:
        n = self.spec.dim
        if self.spec.require_full_rank:
            base = frozenset(1 << i for i in range(n))
            cands = [v for v in gf2.all_points(n) if v not in base]
        else:
            base = frozenset()
            cands = list(gf2.all_points(n))
        self._dfs(base, tuple(), cands)

    def _canonical(self, extras: tuple[int, ...]) -> bool:
        if not self.use_symmetry or not extras:
            return True
        tbl = _perm_point_table(self.spec.dim)
        arr = np.fromiter(extras, dtype=np.int32, count=len(extras))
        images = tbl[:, arr]
        images.sort(axis=1)
        own = np.array(sorted(extras), dtype=np.int32)
        idx = np.lexsort(images.T[::-1])
        return bool((images[idx[0]] == own).all())

    def _valid(self, m: Matroid) -> bool:
        if self.tri and detect.find_triangle(m) is not None:
            return False
        if _active_patterns(m, self.i_ks, self.c_ks, self.two_t, limit=1):
            return False
        for pat in self.generic:
            if detect.has_induced_generic(m, pat) is not None:
                return False
        return True

    def _prunable(self, m: Matroid, frontier: int) -> bool:
        """A pattern none of whose repair points lies above the frontier can
        never be fixed by later additions."""
        for members in _active_patterns(m, self.i_ks, self.c_ks, self.two_t, limit=16):
            if not any(v > frontier and v not in m.points for v in members):
                return True
        for pat in self.generic:
            w = detect.has_induced_generic(m, pat)
            if w is not None and not any(v > frontier and v not in m.points for v in w.flat.members):
                return True
        return False

    def _dfs(self, points: frozenset[int], extras: tuple[int, ...], cands: list[int]) -> None:
        if self.budget.tick():
            return
        if not self._canonical(extras):
            return
        m = Matroid(self.spec.dim, points)
        if self.tri and detect.find_triangle(m) is not None:
            return
        frontier = extras[-1] if extras else 0
        if self._valid(m):
            self.terminals.setdefault(len(points), []).append(points)
        if len(points) >= self.cap:
            return
        if self._prunable(m, frontier):
            return
        for i, v in enumerate(cands):
            if v <= frontier:
                continue
            self._dfs(points | {v}, extras + (v,), cands[i + 1 :])


def _dedupe_classes(witnesses: list[frozenset[int]], dim: int) -> tuple[list[CanonicalForm], list[Matroid]]:
    """Group candidate ground sets into isomorphism classes."""
    mats = [Matroid(dim, w) for w in sorted(witnesses, key=sorted)]
    reps: list[Matroid] = []
    for m in mats:
        if not any(detect.fingerprint(m) == detect.fingerprint(r) and detect.is_isomorphic(m, r) for r in reps):
            reps.append(m)
    forms = [detect.canonical_form(r) for r in reps]
    order = sorted(range(len(reps)), key=lambda i: forms[i].points)
    return [forms[i] for i in order], [reps[i] for i in order]


def _revalidate(points: frozenset[int], spec: SearchSpec) -> None:
    m = Matroid(spec.dim, points)
    if spec.require_full_rank and not m.full_rank:
        raise AssertionError("search produced a rank-deficient witness")
    if not detect.is_free_of(m, list(spec.forbidden)):
        raise AssertionError("search produced a witness violating a forbidden pattern")


def _run_engine(spec: SearchSpec, cap: int, budget: _Budget, use_orbit_dedup: bool):
    _, _, _, _, generic = _split_forbidden(spec.forbidden)
    if spec.require_full_rank and not generic:
        eng = _RepairEngine(spec, cap, budget, use_orbit_dedup)
        eng.run()
        return eng.terminals
    eng = _OrderlyEngine(spec, cap, budget)
    eng.run()
    return eng.terminals


def minimum_size_search(
    spec: SearchSpec,
    node_budget: Optional[int] = 20_000_000,
    time_budget_s: Optional[float] = None,
    use_orbit_dedup: bool = True,
) -> SearchReport:
    """Exact minimum ground-set size under the spec's constraints.

    With ``max_size`` set, a single exhaustive pass refutes every smaller
    size and returns the minimum if it is within the cap (min_size is None
    when nothing exists up to the cap).  Without it, caps grow until a
    valid matroid appears.  Reported witnesses are re-validated with the
    detectors; budget overruns are flagged with ``exhaustive=False``.
    """
    if not spec.forbidden:
        raise ValueError("extremal search needs at least one forbidden pattern")
    start = time.monotonic()
    lo = spec.dim if spec.require_full_rank else 0
    caps = [spec.max_size] if spec.max_size is not None else list(range(lo, (1 << spec.dim)))
    budget = _Budget(node_budget, time_budget_s)
    terminals: dict[int, list[frozenset[int]]] = {}
    cap_used = caps[-1]
    for cap in caps:
        terminals = _run_engine(spec, cap, budget, use_orbit_dedup)
        cap_used = cap
        if terminals or budget.exceeded:
            break
    report = SearchReport(
        min_size=None,
        nodes_explored=budget.nodes,
        exhaustive=not budget.exceeded,
        size_cap=cap_used,
    )
    if terminals:
        best = min(terminals)
        report.min_size = best
        for w in terminals[best]:
            _revalidate(w, spec)
        if spec.classify:
            forms, reps = _dedupe_classes(terminals[best], spec.dim)
            report.extremal = forms
            report.extremal_witnesses = reps
    report.elapsed_s = time.monotonic() - start
    return report


def classify_extremal(
    spec: SearchSpec,
    size: int,
    node_budget: Optional[int] = 20_000_000,
    time_budget_s: Optional[float] = None,
) -> list[CanonicalForm]:
    """All isomorphism classes at exactly the given size satisfying the spec.

    At the minimum size the repair engine is complete; above it (or for
    rank-deficient searches) the orderly enumeration takes over.
    """
    budget = _Budget(node_budget, time_budget_s)
    _, _, _, _, generic = _split_forbidden(spec.forbidden)
    if spec.require_full_rank and not generic:
        terminals = _run_engine(spec, size, budget, use_orbit_dedup=True)
        if budget.exceeded:
            raise RuntimeError("classification budget exceeded")
        if terminals and min(terminals) < size:
            # The repair engine only guarantees completeness at the minimum.
            eng = _OrderlyEngine(spec, size, budget)
            eng.run()
            terminals = eng.terminals
            if budget.exceeded:
                raise RuntimeError("classification budget exceeded")
    else:
        eng = _OrderlyEngine(spec, size, budget)
        eng.run()
        terminals = eng.terminals
        if budget.exceeded:
            raise RuntimeError("classification budget exceeded")
    witnesses = terminals.get(size, [])
    for w in witnesses:
        _revalidate(w, spec)
    forms, _ = _dedupe_classes(witnesses, spec.dim)
    return forms


def naive_minimum_size(spec: SearchSpec) -> Optional[int]:
    """Brute-force oracle: scan every ground set (feasible for dim <= 3)."""
    n = spec.dim
    if n > 4:
        raise ValueError("naive enumeration is for micro dimensions only")
    best: Optional[int] = None
    pats = list(spec.forbidden)
    for mask in range(1 << ((1 << n) - 1)):
        points = frozenset(i + 1 for i in range((1 << n) - 1) if (mask >> i) & 1)
        if best is not None and len(points) >= best:
            continue
        m = Matroid(n, points)
        if spec.require_full_rank and not m.full_rank:
            continue
        if detect.is_free_of(m, pats):
            best = len(points)
    return best


# ---------------------------------------------------------------------------
# Constrained random generation
# ---------------------------------------------------------------------------


def _creates_pattern(m: Matroid, new_point: int, tri: bool, i_ks: list[int], c_ks: list[int], two_t: bool) -> bool:
    """Whether the newest point completes any forbidden pattern.

    Any pattern induced in E + p but not in E must use p, so checking
    through the new point keeps an always-free ground set free.
    """
    if tri:
        for e in m.points:
            if e != new_point and (e ^ new_point) in m.points:
                return True
    for k in i_ks:
        if next(detect.iter_independent_auto(m, k, through=new_point), None) is not None:
            return True
    for k in c_ks:
        if next(detect.iter_circuit_auto(m, k, through=new_point), None) is not None:
            return True
    if two_t:
        for t1, t2 in detect.iter_induced_two_triangles(m):
            if new_point in t1 or new_point in t2:
                return True
    return False


def random_constrained(
    spec: SearchSpec,
    target_size: int,
    contains: Optional[Matroid] = None,
    rng=None,
    max_restarts: int = 40,
) -> Optional[Matroid]:
    """A random matroid satisfying the freeness constraints, of size at
    least ``target_size`` when reachable by greedy augmentation.

    With ``contains`` set, the pattern is placed on the flat spanned by
    the first standard basis vectors and kept induced: no further point of
    that flat is ever added.  Returns None after bounded restarts; raises
    when the forced pattern itself violates a constraint.
    """
    import random as _random

    if rng is None:
        rng = _random.Random(spec.seed)
    tri, i_ks, c_ks, two_t, generic = _split_forbidden(spec.forbidden)
    if generic:
        raise ValueError("random generation handles triangle/I/C/2T patterns only")
    n = spec.dim
    blocked: frozenset[int] = frozenset()
    base: frozenset[int] = frozenset()
    if contains is not None:
        if contains.n > n:
            raise ValueError("forced pattern does not fit the ambient dimension")
        flat = gf2.flat_from_basis(n, tuple(1 << i for i in range(contains.n)))
        base = frozenset(contains.points)
        blocked = flat.members - base
        m0 = Matroid(n, base)
        if not detect.is_free_of(m0, list(spec.forbidden)):
            raise ValueError("forced pattern violates a forbidden-pattern constraint")

    pool = [v for v in gf2.all_points(n) if v not in base and v not in blocked]
    for _ in range(max_restarts):
        points = set(base)
        order = pool[:]
        rng.shuffle(order)
        for v in order:
            if len(points) >= target_size and (not spec.require_full_rank or gf2.rank_of(points) == n):
                break
            cand = Matroid(n, frozenset(points | {v}))
            if not _creates_pattern(cand, v, tri, i_ks, c_ks, two_t):
                points.add(v)
        m = Matroid(n, frozenset(points))
        if len(points) >= target_size and (not spec.require_full_rank or m.full_rank):
            assert detect.is_free_of(m, list(spec.forbidden))
            return m
    return None
