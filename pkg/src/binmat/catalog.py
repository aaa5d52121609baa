"""Constructors for the named matroids, addressable by symbolic pattern id.

CLI grammar for pattern names: ``I5``, ``C5``, ``triangle``, ``AG4``,
``PG3``, ``PGS1,3``, ``kite``, ``dkite2``, ``2T``, ``M6,2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .matroid import Matroid, direct_sum, double_k


@dataclass(frozen=True)
class PatternId:
    kind: str
    params: tuple[int, ...] = ()

    def __str__(self) -> str:
        k = self.kind
        if k == "I":
            return f"I{self.params[0]}"
        if k == "C":
            return f"C{self.params[0]}"
        if k == "triangle":
            return "triangle"
        if k == "AG":
            return f"AG{self.params[0]}"
        if k == "PG":
            return f"PG{self.params[0]}"
        if k == "PGS":
            return f"PGS{self.params[0]},{self.params[1]}"
        if k == "kite":
            return "kite"
        if k == "dkite":
            return f"dkite{self.params[0]}"
        if k == "2T":
            return "2T"
        if k == "M":
            return f"M{self.params[0]},{self.params[1]}"
        raise ValueError(f"unknown pattern kind {k!r}")


def I(k: int) -> PatternId:  # noqa: E743 - standard name
    return PatternId("I", (k,))


def C(k: int) -> PatternId:
    return PatternId("C", (k,))


def Triangle() -> PatternId:
    return PatternId("triangle")


def AG(d: int) -> PatternId:
    return PatternId("AG", (d,))


def PG(d: int) -> PatternId:
    return PatternId("PG", (d,))


def PGS(t1: int, t2: int) -> PatternId:
    return PatternId("PGS", (t1, t2))


def Kite() -> PatternId:
    return PatternId("kite")


def DoubledKite(k: int) -> PatternId:
    return PatternId("dkite", (k,))


def TwoT() -> PatternId:
    return PatternId("2T")


def Mrt(r: int, t: int) -> PatternId:
    return PatternId("M", (r, t))


def _need(cond: bool, constraint: str) -> None:
    if not cond:
        raise ValueError(f"invalid pattern parameters: requires {constraint}")


def build(p: PatternId) -> Matroid:
    """The concrete matroid for a pattern id, on the standard basis."""
    k = p.kind
    if k == "I":
        (m,) = p.params
        _need(m >= 1, "k >= 1")
        return Matroid(m, [1 << i for i in range(m)])
    if k == "C":
        (m,) = p.params
        _need(m >= 3, "k >= 3")
        basis = [1 << i for i in range(m - 1)]
        total = 0
        for b in basis:
            total ^= b
        return Matroid(m - 1, basis + [total])
    if k == "triangle":
        return Matroid(2, [1, 2, 3])
    if k == "AG":
        (d,) = p.params
        _need(d >= 1, "d >= 1")
        top = 1 << (d - 1)
        return Matroid(d, [v for v in range(1, 1 << d) if v & top])
    if k == "PG":
        (d,) = p.params
        _need(d >= 1, "d >= 1")
        return Matroid(d, range(1, 1 << d))
    if k == "PGS":
        t1, t2 = p.params
        _need(t1 >= 1 and t2 >= 1, "t1, t2 >= 1")
        return direct_sum(build(PG(t1)), build(PG(t2)))
    if k == "kite":
        x = [1 << i for i in range(6)]
        extras = [
            x[0] ^ x[1] ^ x[2],
            x[1] ^ x[2] ^ x[3],
            x[0] ^ x[2] ^ x[4],
            x[0] ^ x[1] ^ x[5],
        ]
        return Matroid(6, x + extras)
    if k == "dkite":
        (j,) = p.params
        _need(j >= 0, "k >= 0")
        return double_k(build(Kite()), j)
    if k == "2T":
        return direct_sum(build(Triangle()), build(Triangle()))
    if k == "M":
        r, t = p.params
        _need(t >= 1 and r >= t, "r >= t >= 1")
        q, rem = divmod(r, t)
        parts = [q + 1] * rem + [q] * (t - rem)
        out = build(PG(parts[0]))
        for part in parts[1:]:
            out = direct_sum(out, build(PG(part)))
        return out
    raise ValueError(f"unknown pattern kind {k!r}")


_REGISTRY: list[tuple[PatternId, str]] = [
    (I(1), "single point"),
    (I(2), "two independent points"),
    (I(3), "claw: independent basis of a 3-flat, no other flat point present"),
    (I(4), "independent basis of a 4-flat, no other flat point present"),
    (I(5), "independent basis of a 5-flat, no other flat point present"),
    (Triangle(), "full 2-flat, three points summing to zero"),
    (C(4), "four points of rank 3 summing to zero"),
    (C(5), "five points of rank 4 summing to zero"),
    (C(6), "six points of rank 5 summing to zero"),
    (AG(2), "affine geometry of dimension 2 (2 points)"),
    (AG(3), "affine geometry of dimension 3 (4 points)"),
    (AG(4), "affine geometry of dimension 4 (8 points)"),
    (PG(2), "full projective geometry of dimension 2 (7 points)"),
    (PG(3), "full projective geometry of dimension 3 (15 points)"),
    (PGS(1, 2), "PG-sum of dimensions 1 and 2 (4 points)"),
    (PGS(1, 3), "PG-sum of dimensions 1 and 3 (8 points)"),
    (PGS(2, 2), "PG-sum of dimensions 2 and 2 (two triangles, 6 points)"),
    (Kite(), "the 6-dimensional 10-element kite"),
    (DoubledKite(1), "kite doubled once (7-dimensional, 20 points)"),
    (TwoT(), "direct sum of two triangles (6 points, dimension 4)"),
    (Mrt(2, 1), "one projective geometry of rank 2"),
    (Mrt(4, 2), "two projective geometries of rank 2 each"),
    (Mrt(5, 2), "projective geometries of ranks 3 and 2"),
]


def list_patterns() -> list[tuple[PatternId, str]]:
    """The pattern registry, in a stable order."""
    return list(_REGISTRY)


_NAME_RULES = [
    (re.compile(r"^I(\d+)$"), lambda m: I(int(m.group(1)))),
    (re.compile(r"^C(\d+)$"), lambda m: C(int(m.group(1)))),
    (re.compile(r"^triangle$"), lambda m: Triangle()),
    (re.compile(r"^AG(\d+)$"), lambda m: AG(int(m.group(1)))),
    (re.compile(r"^PG(\d+)$"), lambda m: PG(int(m.group(1)))),
    (re.compile(r"^PGS(\d+),(\d+)$"), lambda m: PGS(int(m.group(1)), int(m.group(2)))),
    (re.compile(r"^kite$"), lambda m: Kite()),
    (re.compile(r"^dkite(\d+)$"), lambda m: DoubledKite(int(m.group(1)))),
    (re.compile(r"^2T$"), lambda m: TwoT()),
    (re.compile(r"^M(\d+),(\d+)$"), lambda m: Mrt(int(m.group(1)), int(m.group(2)))),
]


def parse_pattern(name: str) -> PatternId:
    """Parse a CLI pattern name such as 'I5', 'PGS1,3' or 'dkite2'."""
    for rx, mk in _NAME_RULES:
        m = rx.match(name)
        if m:
            return mk(m)
    raise ValueError(f"unknown pattern name {name!r}")


def parse_pattern_list(names: str) -> list[PatternId]:
    """Parse a comma-separated pattern list.

    Two-parameter names carry an internal comma, so 'PGS1,3' style tokens
    are re-joined greedily.
    """
    raw = names.split(",")
    out: list[PatternId] = []
    i = 0
    while i < len(raw):
        tok = raw[i].strip()
        if i + 1 < len(raw):
            merged = tok + "," + raw[i + 1].strip()
            try:
                out.append(parse_pattern(merged))
                i += 2
                continue
            except ValueError:
                pass
        out.append(parse_pattern(tok))
        i += 1
    return out
