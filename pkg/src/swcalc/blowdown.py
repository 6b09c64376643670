"""Rational blowdown configurations C_p and the descent/lift bookkeeping.

A class k of the blowdown X_(p) lifts to a characteristic class k~ of X with
the same moduli dimension.  Blowing down C_p raises the signature by p - 1
and lowers the Euler characteristic by p - 1, so 3 sign + 2 e grows by p - 1
and equal dimensions force k~^2 = k^2 - (p - 1).  Splitting k~ orthogonally
along the span of C_p, the restriction to that span must therefore be a
characteristic vector of square -(p - 1).  That restriction is recorded by
the pairing vector (k~.u_0, ..., k~.u_{p-2}).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .lattice import (
    ClassVector,
    Lattice,
    LatticeError,
    gram_of,
    is_characteristic,
    is_characteristic_pairings,
    pair,
    rational_inverse,
    solve_linear,
    solve_pairings,
)
from .ring import SWElement


class LiftNotFound(LookupError):
    pass


def cp_gram(p: int) -> list[list[int]]:
    """Linear plumbing -(p+2), -2, ..., -2 with p - 1 vertices."""
    if p < 2:
        raise ValueError(f"C_p needs p >= 2, got {p}")
    n = p - 1
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = -(p + 2) if i == 0 else -2
        if i + 1 < n:
            g[i][i + 1] = g[i + 1][i] = 1
    return g


@dataclass(frozen=True)
class LensBoundary:
    p_squared: int
    twisting: int

    @classmethod
    def of(cls, p: int) -> "LensBoundary":
        return cls(p * p, 1 - p)

    def __str__(self):
        return f"L({self.p_squared}, {self.twisting})"


@dataclass(frozen=True)
class CpConfig:
    p: int
    classes: tuple[ClassVector, ...]

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(self.classes))
        if len(self.classes) != self.p - 1:
            raise LatticeError(f"C_{self.p} needs {self.p - 1} classes, got {len(self.classes)}")
        actual = gram_of(self.classes)
        expected = cp_gram(self.p)
        if actual != expected:
            raise LatticeError(f"classes do not form C_{self.p}: gram {actual}, expected {expected}")

    @property
    def gram(self) -> list[list[int]]:
        return cp_gram(self.p)

    @property
    def lattice(self) -> Lattice:
        return self.classes[0].lattice

    @property
    def boundary(self) -> LensBoundary:
        return LensBoundary.of(self.p)

    def pairings(self, k: ClassVector) -> tuple[int, ...]:
        return tuple(pair(k, u) for u in self.classes)


def short_vectors(form: Sequence[Sequence[Fraction]], bound: Fraction) -> list[tuple[int, ...]]:
    """All integer x with x^T form x <= bound, form positive definite (exact).

    Fincke-Pohst enumeration on the exact LDL^T decomposition.
    """
    n = len(form)
    q = [[Fraction(x) for x in row] for row in form]
    # Cohen, algorithm 2.7.6 layout: q[i][i] diagonal, q[i][j] (j > i) coefficients
    for i in range(n):
        if q[i][i] <= 0:
            raise ValueError("form is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    out: list[tuple[int, ...]] = []
    x = [0] * n

    def rec(i: int, remaining: Fraction):
        center = -sum((q[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        radius2 = remaining / q[i][i]
        r = math.isqrt(int(radius2)) + 1
        lo = math.floor(center) - r
        hi = math.ceil(center) + r
        for xi in range(lo, hi + 1):
            d = xi - center
            used = q[i][i] * d * d
            if used > remaining:
                continue
            x[i] = xi
            if i == 0:
                out.append(tuple(x))
            else:
                rec(i - 1, remaining - used)
        x[i] = 0

    rec(n - 1, Fraction(bound))
    return sorted(out)


@lru_cache(maxsize=None)
def _allowed(p: int) -> tuple[tuple[int, ...], ...]:
    g = cp_gram(p)
    neg_inv = [[-x for x in row] for row in rational_inverse(g)]
    target = Fraction(p - 1)
    found = []
    for v in short_vectors(neg_inv, target):
        if not is_characteristic_pairings(v, g):
            continue
        if solve_pairings(g, v)[1] == -target:
            found.append(v)
    return tuple(sorted(found))


def allowed_restrictions(p: int) -> list[tuple[int, ...]]:
    """Pairing vectors with C_p that are characteristic of square -(p - 1)."""
    if p < 2:
        raise ValueError(f"C_p needs p >= 2, got {p}")
    return list(_allowed(p))


def descends(k_pairings: Sequence[int], p: int) -> bool:
    if len(k_pairings) != p - 1:
        raise ValueError(f"expected {p - 1} pairings for C_{p}, got {len(k_pairings)}")
    return tuple(int(x) for x in k_pairings) in _allowed(p)


class Lifter:
    """Reconstructs ambient lifts k~ from pairings with complement generators.

    The complement generators together with the C_p classes must span the
    ambient lattice rationally (square, invertible pairing system).
    """

    def __init__(self, ambient: Lattice, config: CpConfig, complement_generators: Sequence[ClassVector]):
        self.ambient = ambient
        self.config = config
        self.generators = tuple(complement_generators)
        rows = list(self.generators) + list(config.classes)
        if len(rows) != ambient.rank:
            raise LatticeError(
                f"{len(self.generators)} complement generators + {len(config.classes)} config classes "
                f"do not match ambient rank {ambient.rank}"
            )
        for g in self.generators:
            if any(pair(g, u) for u in config.classes):
                raise LatticeError(f"complement generator {g} is not orthogonal to C_{config.p}")
        gram = ambient.gram
        self._system = [
            [sum(c * gram[i][j] for i, c in enumerate(r.coords)) for j in range(ambient.rank)] for r in rows
        ]
        self.complement_gram = gram_of(self.generators)

    def candidate_square(self, candidate: Sequence[int]) -> Fraction:
        return solve_pairings(self.complement_gram, candidate)[1]

    def lifts(self, candidate: Sequence[int]) -> list[ClassVector]:
        candidate = [int(x) for x in candidate]
        if len(candidate) != len(self.generators):
            raise ValueError(f"expected {len(self.generators)} pairings, got {len(candidate)}")
        if not is_characteristic_pairings(candidate, self.complement_gram):
            raise ValueError(f"candidate {tuple(candidate)} is not characteristic on the complement")
        q = self.candidate_square(candidate)
        p = self.config.p
        found = []
        for r in allowed_restrictions(p):
            coords = solve_linear(self._system, candidate + list(r))
            if any(c.denominator != 1 for c in coords):
                continue
            k = self.ambient.vector(int(c) for c in coords)
            if not is_characteristic(k):
                continue
            if k.square() != q - (p - 1):
                raise AssertionError("dimension matching failed for a lift")
            found.append(k)
        return found

    def lift(self, candidate: Sequence[int]) -> ClassVector:
        found = self.lifts(candidate)
        if not found:
            raise LiftNotFound(f"no integral characteristic lift for {tuple(candidate)}")
        return found[0]


def lift(
    candidate_pairings: Sequence[int],
    ambient: Lattice,
    config: CpConfig,
    complement_generators: Sequence[ClassVector],
) -> ClassVector:
    return Lifter(ambient, config, complement_generators).lift(candidate_pairings)


@dataclass(frozen=True)
class DescentRow:
    exponent: tuple[int, ...]
    coefficient: int
    ambient_class: ClassVector
    pairings: tuple[int, ...]
    descends: bool


def descend_element(
    sw: SWElement,
    var_classes: Mapping[str, ClassVector],
    config: CpConfig,
    targets: Mapping[str, ClassVector],
) -> tuple[SWElement, list[DescentRow]]:
    """Keep the basic classes of ``sw`` that descend through C_p.

    Each monomial is read as the class sum(exp_v * var_classes[v]).  Surviving
    classes are rewritten as integer combinations of ``targets``, whose
    variables form the group ring of the blowdown.
    """
    missing = [v for v in sw.variables if v not in var_classes]
    if missing:
        raise ValueError(f"no class given for variables {missing}")
    tnames = list(targets)
    tclasses = [targets[n] for n in tnames]
    tgram = gram_of(tclasses)
    rows = []
    out = SWElement.zero(tnames)
    for exp, c in sw.sorted_terms():
        k = config.lattice.zero()
        for v, e in zip(sw.variables, exp):
            k = k + e * var_classes[v]
        prs = config.pairings(k)
        ok = descends(prs, config.p)
        rows.append(DescentRow(exp, c, k, prs, ok))
        if not ok:
            continue
        coeffs, _ = solve_pairings(tgram, [pair(k, t) for t in tclasses])
        if any(x.denominator != 1 for x in coeffs):
            raise LatticeError(f"descended class {k} is not an integral combination of the targets")
        rebuilt = config.lattice.zero()
        for x, t in zip(coeffs, tclasses):
            rebuilt = rebuilt + int(x) * t
        if rebuilt != k:
            raise LatticeError(f"descended class {k} is not in the span of the targets")
        out = out + SWElement.monomial(tnames, {n: int(x) for n, x in zip(tnames, coeffs)}, c)
    return out, rows
