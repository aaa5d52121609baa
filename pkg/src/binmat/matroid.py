"""The central matroid value and its structural operations.

A simple binary matroid is a pair (E, G) with G an ambient binary
projective geometry of dimension n and E a set of its points.  The
ground set need not span the ambient space.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from . import gf2
from .gf2 import Flat


@dataclass(frozen=True)
class Matroid:
    """Ambient dimension plus a ground set of points."""

    n: int
    points: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        gf2.check_dim(self.n)
        object.__setattr__(self, "points", gf2.check_points(self.points, self.n))

    @property
    def size(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def rank(self) -> int:
        return gf2.rank_of(self.points)

    @property
    def full_rank(self) -> bool:
        return self.rank == self.n

    @property
    def mask(self) -> int:
        return gf2.points_to_mask(self.points)

    def sorted_points(self) -> list[int]:
        return sorted(self.points)


def restrict(m: Matroid, flat: Flat) -> Matroid:
    """Induced restriction M | F, re-coordinatized through the flat's basis.

    The i-th basis vector of the flat maps to the i-th standard basis
    vector of the new ambient space of dimension flat.k.
    """
    if flat.n != m.n:
        raise ValueError("flat has a different ambient dimension")
    inside = m.points & flat.members
    new_points = frozenset(gf2.coords_in_basis(p, flat.basis) for p in inside)
    return Matroid(flat.k, new_points)


def contraction_map(m: Matroid, flat: Flat) -> tuple[Matroid, dict[int, frozenset[int]]]:
    """Contraction M / F together with the coset each new point represents.

    The complementary flat is spanned by the standard-vector completion of
    the flat's basis, which makes the result deterministic.  Returns the
    contracted matroid and a map from its points to the cosets of F they
    came from.
    """
    if flat.n != m.n:
        raise ValueError("flat has a different ambient dimension")
    if flat.k == m.n:
        raise ValueError("contracting entire geometry")
    comp = gf2.complete_basis(m.n, flat.basis)
    ordered = tuple(flat.basis) + comp
    comp_flat = gf2.flat_from_basis(m.n, comp)
    assert comp_flat.k == m.n - flat.k

    new_points: set[int] = set()
    reps: dict[int, frozenset[int]] = {}
    vs_flat = [0, *flat.members]
    for e in m.points:
        if e in flat.members:
            continue
        # Unique representative of e's coset inside the complementary flat:
        # the complementary component of e over basis(F) + basis(F').
        coeffs = gf2.solve_coords(e, ordered)
        rep = 0
        for i in range(flat.k, len(ordered)):
            if (coeffs >> i) & 1:
                rep ^= ordered[i]
        q = gf2.coords_in_basis(rep, comp_flat.basis)
        if q not in new_points:
            new_points.add(q)
            reps[q] = frozenset(rep ^ v for v in vs_flat)
    return Matroid(m.n - flat.k, frozenset(new_points)), reps


def contract(m: Matroid, flat: Flat) -> Matroid:
    """Contraction M / F: one point per coset of F that meets the ground set."""
    return contraction_map(m, flat)[0]


def double(m: Matroid) -> Matroid:
    """Doubling: one more dimension, ground set {x, x + a} for the new apex a.

    The apex itself is not a ground-set element, so the size doubles.
    """
    a = 1 << m.n
    pts = set()
    for x in m.points:
        pts.add(x)
        pts.add(x ^ a)
    return Matroid(m.n + 1, frozenset(pts))


def double_k(m: Matroid, k: int) -> Matroid:
    """k-fold doubling (k >= 0)."""
    if k < 0:
        raise ValueError("doubling order must be non-negative")
    out = m
    for _ in range(k):
        out = double(out)
    return out


def direct_sum(m1: Matroid, m2: Matroid) -> Matroid:
    """Direct sum: the second ground set is shifted onto the high bits."""
    shifted = frozenset(p << m1.n for p in m2.points)
    return Matroid(m1.n + m2.n, m1.points | shifted)


def apex_flat_of_double_k(m: Matroid, k: int) -> Flat:
    """The k-dimensional apex flat of double_k(m, k) inside its ambient space."""
    n = m.n + k
    return gf2.flat_from_basis(n, tuple(1 << (m.n + i) for i in range(k)))


# ---------------------------------------------------------------------------
# Serialization.  Text format:
#     dim <n>
#     points <p1> <p2> ...
# with strictly increasing decimal points in [1, 2^n - 1]; '#' lines are
# comments.  JSON format: {"dim": n, "points": [...]} with the same bounds.
# ---------------------------------------------------------------------------


class MatroidParseError(ValueError):
    pass


def serialize(m: Matroid) -> str:
    pts = " ".join(str(p) for p in m.sorted_points())
    return f"dim {m.n}\npoints {pts}\n" if pts else f"dim {m.n}\npoints\n"


def serialize_json(m: Matroid) -> str:
    return json.dumps({"dim": m.n, "points": m.sorted_points()})


def parse(text: str) -> Matroid:
    """Parse the text format, naming the offending line or field on error."""
    lines = [
        (i + 1, line.strip())
        for i, line in enumerate(text.splitlines())
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if len(lines) < 2:
        raise MatroidParseError("expected a 'dim' line and a 'points' line")
    (ln_dim, dim_line), (ln_pts, pts_line) = lines[0], lines[1]
    if len(lines) > 2:
        raise MatroidParseError(f"line {lines[2][0]}: unexpected extra content")
    parts = dim_line.split()
    if len(parts) != 2 or parts[0] != "dim":
        raise MatroidParseError(f"line {ln_dim}: expected 'dim <n>'")
    try:
        n = int(parts[1])
    except ValueError:
        raise MatroidParseError(f"line {ln_dim}: dimension {parts[1]!r} is not an integer") from None
    if n < 0:
        raise MatroidParseError(f"line {ln_dim}: dimension must be non-negative")
    toks = pts_line.split()
    if not toks or toks[0] != "points":
        raise MatroidParseError(f"line {ln_pts}: expected 'points <p1> <p2> ...'")
    pts: list[int] = []
    for tok in toks[1:]:
        try:
            v = int(tok)
        except ValueError:
            raise MatroidParseError(f"line {ln_pts}: point {tok!r} is not an integer") from None
        pts.append(v)
    return _build_checked(n, pts, where=f"line {ln_pts}")


def parse_json(text: str) -> Matroid:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise MatroidParseError(f"invalid JSON: {e}") from None
    if not isinstance(obj, dict) or "dim" not in obj or "points" not in obj:
        raise MatroidParseError("expected fields 'dim' and 'points'")
    n = obj["dim"]
    if not isinstance(n, int) or n < 0:
        raise MatroidParseError(f"field 'dim': {n!r} is not a non-negative integer")
    pts = obj["points"]
    if not isinstance(pts, list) or not all(isinstance(p, int) for p in pts):
        raise MatroidParseError("field 'points': expected a list of integers")
    return _build_checked(n, pts, where="field 'points'")


def _build_checked(n: int, pts: list[int], where: str) -> Matroid:
    seen = set()
    for v in pts:
        if not 1 <= v < (1 << n):
            raise MatroidParseError(f"{where}: point {v} out of range [1, 2^{n} - 1]")
        if v in seen:
            raise MatroidParseError(f"{where}: duplicate point {v}")
        seen.add(v)
    return Matroid(n, frozenset(pts))


def load(path: str) -> Matroid:
    with open(path) as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return parse_json(text)
    return parse(text)


def save(m: Matroid, path: str, fmt: str = "text") -> None:
    with open(path, "w") as fh:
        fh.write(serialize_json(m) + "\n" if fmt == "json" else serialize(m))
