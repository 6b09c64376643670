"""Finite search for basic-class candidates of a b+ = 1 rational blowdown.

A basic class k is pinned down by its pairings with classes of embedded
surfaces in the complement of the configuration.  Each surface of genus g and
square s gives |k.S| <= b - s with k.S = s (mod 2), where b = 2g - 2 for
g >= 1 and b = 0 for spheres by default.  Candidates must also have an
integral square, at least 3 sign + 2 e and congruent to it mod 8.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .blowdown import LiftNotFound
from .lattice import (
    ClassVector,
    QuadraticSolver,
    SingularMatrixError,
    determinant,
    gram_of,
    pair,
)
from .ring import dimension


class InconsistentConstraint(ValueError):
    """The adjunction bound leaves no admissible pairing."""


class OnWallError(ValueError):
    pass


@dataclass(frozen=True)
class SurfaceConstraint:
    label: str
    genus: int
    square: int
    cls: ClassVector | None = None
    sphere_bound: int = 0

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be nonnegative")
        if self.sphere_bound not in (0, -2):
            raise ValueError("sphere bound must be 0 or -2")
        if self.cls is not None and self.cls.square() != self.square:
            raise ValueError(f"{self.label}: stated square {self.square} != computed {self.cls.square()}")

    @classmethod
    def of(cls, label: str, k: ClassVector, genus: int, sphere_bound: int = 0) -> "SurfaceConstraint":
        return cls(label, genus, k.square(), k, sphere_bound)

    @property
    def bound(self) -> int:
        return 2 * self.genus - 2 if self.genus >= 1 else self.sphere_bound


def square_floor(b_plus: int, b_minus: int) -> int:
    """3 sign + 2 e for b+ = 1, the least square of a class with d >= 0."""
    if b_plus != 1:
        raise ValueError("only b+ = 1 is supported")
    if b_minus < 0:
        raise ValueError("b- must be nonnegative")
    sign = b_plus - b_minus
    euler = 2 + b_plus + b_minus
    return 3 * sign + 2 * euler


def allowed_pairings(c: SurfaceConstraint) -> list[int]:
    room = c.bound - c.square
    if room < 0:
        raise InconsistentConstraint(f"{c.label}: square {c.square} exceeds adjunction bound {c.bound}")
    return [x for x in range(-room, room + 1) if (x - c.square) % 2 == 0]


@dataclass(frozen=True, order=True)
class CandidateClass:
    pairings: tuple[int, ...]
    square: int = field(compare=False)
    dimension: int = field(compare=False)
    coords: tuple[Fraction, ...] = field(compare=False, repr=False)

    @property
    def integral(self) -> bool:
        """Dual coordinates in the constraint basis are integers."""
        return all(c.denominator == 1 for c in self.coords)

    def negate(self) -> tuple[int, ...]:
        return tuple(-x for x in self.pairings)


def independent_prefix(classes: Sequence[ClassVector]) -> list[int]:
    """Indices of a greedy maximal independent subset, in order."""
    chosen: list[int] = []
    for i, k in enumerate(classes):
        trial = [classes[j] for j in chosen] + [k]
        if determinant(gram_of(trial)) != 0:
            chosen.append(i)
    return chosen


def enumerate_candidates(
    constraints: Sequence[SurfaceConstraint],
    b_minus: int,
    strict: bool = False,
) -> list[CandidateClass]:
    """All pairing vectors meeting the adjunction, square and congruence filters.

    The Cartesian product runs over a maximal independent prefix of the
    constraint classes; any further constraint class lies in their rational
    span and is checked through the reconstructed pairing, which must then be
    integral and admissible.  With ``strict`` the dual coordinates must be
    integral as well.
    """
    if not constraints:
        raise ValueError("need at least one constraint")
    if any(c.cls is None for c in constraints):
        raise ValueError("enumeration needs an ambient class for every constraint")
    classes = [c.cls for c in constraints]
    basis = independent_prefix(classes)
    if not basis:
        raise SingularMatrixError("constraint classes span nothing")
    extra = [i for i in range(len(constraints)) if i not in basis]
    gram = gram_of([classes[i] for i in basis])
    solver = QuadraticSolver(gram)
    det = solver.det
    floor = square_floor(1, b_minus)
    sign, euler = 1 - b_minus, 3 + b_minus
    extra_cols = [[pair(classes[b], classes[i]) for b in basis] for i in extra]
    extra_allowed = [set(allowed_pairings(constraints[i])) for i in extra]
    ranges = [allowed_pairings(constraints[i]) for i in basis]

    out = []
    for v in itertools.product(*ranges):
        w = solver.scaled_coords(v)
        num = sum(a * b for a, b in zip(v, w))
        if num % det:
            continue
        q = num // det
        if q < floor or (q - floor) % 8:
            continue
        if strict and any(x % det for x in w):
            continue
        full = [0] * len(constraints)
        for pos, i in enumerate(basis):
            full[i] = v[pos]
        ok = True
        for col, i, allowed in zip(extra_cols, extra, extra_allowed):
            s = sum(a * b for a, b in zip(col, w))
            if s % det or s // det not in allowed:
                ok = False
                break
            full[i] = s // det
        if not ok:
            continue
        coords = tuple(Fraction(x, det) for x in w)
        out.append(CandidateClass(tuple(full), q, dimension(q, sign, euler), coords))
    out.sort()
    return out


def orbit_count(candidates: Iterable[CandidateClass]) -> int:
    """Number of +-pairs (a self-conjugate vector counts once)."""
    seen = set()
    n = 0
    for c in candidates:
        if c.pairings in seen:
            continue
        seen.add(c.pairings)
        seen.add(c.negate())
        n += 1
    return n


class ChamberResult(enum.IntEnum):
    VANISHES = 0
    WALL_CROSSED = 1  # |SW| = 1, sign not tracked


def chamber_sign_test(k_lift: ClassVector, H: ClassVector, period_point: ClassVector) -> ChamberResult:
    """SW of k_lift in the chamber of period_point, given SW = 0 in the chamber of H."""
    if period_point.square() <= 0:
        raise ValueError(f"period point has square {period_point.square()} <= 0")
    if pair(period_point, H) <= 0:
        raise ValueError("period point and H lie in opposite components of the positive cone")
    kh = pair(k_lift, H)
    kp = pair(k_lift, period_point)
    if kh == 0 or kp == 0:
        raise OnWallError(f"k.H = {kh}, k.period = {kp}")
    return ChamberResult.VANISHES if (kh > 0) == (kp > 0) else ChamberResult.WALL_CROSSED


VANISHES = "VANISHES"
SURVIVES = "SURVIVES"
LIFT_NOT_FOUND = "LIFT-NOT-FOUND"
ON_WALL = "ON-WALL"


@dataclass
class VanishingRow:
    pairings: tuple[int, ...]
    status: str
    lift: ClassVector | None = None
    k_dot_H: int | None = None
    k_dot_period: int | None = None


@dataclass
class VanishingReport:
    rows: list[VanishingRow]

    @property
    def vanishes(self) -> bool:
        return all(r.status == VANISHES for r in self.rows)

    @property
    def verdict(self) -> str:
        return "SW = 0" if self.vanishes else "SW not shown to vanish"

    def counts(self) -> dict[str, int]:
        out = {VANISHES: 0, SURVIVES: 0, LIFT_NOT_FOUND: 0, ON_WALL: 0}
        for r in self.rows:
            out[r.status] += 1
        return out


def verify_vanishing(
    candidates: Sequence[CandidateClass] | Sequence[Sequence[int]],
    lifter: Callable[[Sequence[int]], ClassVector],
    H: ClassVector,
    period_point: ClassVector,
) -> VanishingReport:
    rows = []
    for cand in candidates:
        v = tuple(cand.pairings if isinstance(cand, CandidateClass) else cand)
        try:
            k = lifter(v)
        except LiftNotFound:
            rows.append(VanishingRow(v, LIFT_NOT_FOUND))
            continue
        kh, kp = pair(k, H), pair(k, period_point)
        try:
            res = chamber_sign_test(k, H, period_point)
        except OnWallError:
            rows.append(VanishingRow(v, ON_WALL, k, kh, kp))
            continue
        rows.append(VanishingRow(v, VANISHES if res == ChamberResult.VANISHES else SURVIVES, k, kh, kp))
    return VanishingReport(rows)


def find_period_point(
    generators: Sequence[ClassVector],
    H: ClassVector,
    avoid: Sequence[ClassVector] = (),
    box: int = 1,
) -> tuple[tuple[int, ...], ClassVector] | None:
    """Smallest positive-square combination of ``generators`` in H's cone component.

    Coefficients range over [-box, box]; the point must pair nonzero with every
    class in ``avoid`` so it sits off their walls.  Ties are broken by
    (square, pairing with H, coefficient tuple).
    """
    best = None
    for coeffs in itertools.product(range(-box, box + 1), repeat=len(generators)):
        x = H.lattice.zero()
        for c, g in zip(coeffs, generators):
            if c:
                x = x + c * g
        s = x.square()
        if s <= 0:
            continue
        h = pair(x, H)
        if h <= 0:
            continue
        if any(pair(k, x) == 0 for k in avoid):
            continue
        key = (s, h, coeffs)
        if best is None or key < best[0]:
            best = (key, x)
    if best is None:
        return None
    return best[0][2], best[1]
