"""Exact intersection lattices, named classes and pairing reconstruction.

Everything here is integer or :class:`fractions.Fraction` arithmetic; there is
no floating point anywhere.  Classes live in homology, cohomology classes are
identified with them by Poincare duality.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence


class LatticeError(ValueError):
    pass


class SingularMatrixError(LatticeError):
    pass


@dataclass(frozen=True)
class Lattice:
    """Free abelian group with an integral symmetric bilinear form."""

    name: str
    gram: tuple[tuple[int, ...], ...]
    basis_labels: tuple[str, ...]

    def __post_init__(self):
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "basis_labels", tuple(self.basis_labels))
        n = len(gram)
        if n == 0:
            raise LatticeError("lattice must have positive rank")
        if any(len(row) != n for row in gram):
            raise LatticeError("gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if gram[i][j] != gram[j][i]:
                    raise LatticeError(f"gram matrix not symmetric at ({i}, {j})")
        if len(self.basis_labels) != n:
            raise LatticeError("need one basis label per rank")
        if len(set(self.basis_labels)) != n:
            raise LatticeError("basis labels must be distinct")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def index(self, label: str) -> int:
        try:
            return self.basis_labels.index(label)
        except ValueError:
            raise LatticeError(f"{label!r} is not a basis label of {self.name}") from None

    def vector(self, coords: Iterable[int]) -> "ClassVector":
        return ClassVector(self, tuple(coords))

    def basis_vector(self, label: str) -> "ClassVector":
        coords = [0] * self.rank
        coords[self.index(label)] = 1
        return ClassVector(self, tuple(coords))

    def zero(self) -> "ClassVector":
        return ClassVector(self, (0,) * self.rank)

    def basis(self) -> list["ClassVector"]:
        return [self.basis_vector(lab) for lab in self.basis_labels]


def standard_lattice(m: int) -> Lattice:
    """H_2 of P_m = CP^2 # m(-CP^2), basis H, E1..Em, form diag(1, -1, ..., -1)."""
    if m < 0:
        raise LatticeError("m must be nonnegative")
    n = m + 1
    gram = tuple(tuple((1 if i == 0 else -1) if i == j else 0 for j in range(n)) for i in range(n))
    labels = ("H",) + tuple(f"E{i}" for i in range(1, m + 1))
    return Lattice(f"P{m}", gram, labels)


@dataclass(frozen=True)
class ClassVector:
    lattice: Lattice
    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        if len(coords) != self.lattice.rank:
            raise LatticeError(
                f"class has {len(coords)} coordinates, lattice {self.lattice.name} has rank {self.lattice.rank}"
            )

    def _check(self, other: "ClassVector"):
        if not isinstance(other, ClassVector):
            return NotImplemented
        if other.lattice != self.lattice:
            raise LatticeError(f"classes live in different lattices ({self.lattice.name}, {other.lattice.name})")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return ClassVector(self.lattice, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return ClassVector(self.lattice, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return ClassVector(self.lattice, tuple(-a for a in self.coords))

    def __mul__(self, k: int):
        return ClassVector(self.lattice, tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def __matmul__(self, other: "ClassVector") -> int:
        return pair(self, other)

    def square(self) -> int:
        return pair(self, self)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self):
        return format_class(self)


def format_class(k: ClassVector) -> str:
    parts = []
    for c, lab in zip(k.coords, k.lattice.basis_labels):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else str(abs(c))
        parts.append(f"{sign}{mag}{lab}")
    if not parts:
        return "0"
    s = "".join(parts)
    return s[1:] if s[0] == "+" else s


def pair(a: ClassVector, b: ClassVector) -> int:
    if a.lattice != b.lattice:
        raise LatticeError(f"classes live in different lattices ({a.lattice.name}, {b.lattice.name})")
    g = a.lattice.gram
    total = 0
    for i, x in enumerate(a.coords):
        if x:
            row = g[i]
            total += x * sum(row[j] * y for j, y in enumerate(b.coords) if y)
    return total


def is_characteristic(k: ClassVector) -> bool:
    """k.x = x.x (mod 2) for every basis vector x."""
    g = k.lattice.gram
    for i in range(k.lattice.rank):
        kx = sum(g[i][j] * c for j, c in enumerate(k.coords))
        if (kx - g[i][i]) % 2:
            return False
    return True


def is_characteristic_pairings(pairings: Sequence[int], gram: Sequence[Sequence[int]]) -> bool:
    """Parity check of a pairing vector against the diagonal of a Gram matrix."""
    if len(pairings) != len(gram):
        raise LatticeError("pairing vector and gram have different sizes")
    return all((int(v) - int(gram[i][i])) % 2 == 0 for i, v in enumerate(pairings))


def gram_of(classes: Sequence[ClassVector]) -> list[list[int]]:
    if not classes:
        raise LatticeError("gram_of needs at least one class")
    return [[pair(a, b) for b in classes] for a in classes]


def orthogonal_check(k: ClassVector, config_classes: Iterable[ClassVector]) -> bool:
    return all(pair(k, u) == 0 for u in config_classes)


# -- exact linear algebra ---------------------------------------------------


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free elimination."""
    a = [[int(x) for x in row] for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def solve_linear(m: Sequence[Sequence[int]], rhs: Sequence) -> list[Fraction]:
    """Solve m x = rhs exactly. Raises SingularMatrixError."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise LatticeError("matrix must be square")
    if len(rhs) != n:
        raise LatticeError(f"right-hand side has length {len(rhs)}, expected {n}")
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(m, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular over the rationals")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col] / p
                row_r, row_c = a[r], a[col]
                for j in range(col, n + 1):
                    row_r[j] -= f * row_c[j]
    return [a[i][n] / a[i][i] for i in range(n)]


def rational_inverse(m: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(m)
    cols = [solve_linear(m, [1 if i == j else 0 for i in range(n)]) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def solve_pairings(gram: Sequence[Sequence[int]], v: Sequence[int]) -> tuple[list[Fraction], Fraction]:
    """Reconstruct a class from its pairing vector.

    Returns the rational coordinates ``c`` with ``gram @ c == v`` and the
    square ``v . c`` of the reconstructed class.
    """
    c = solve_linear(gram, v)
    q = sum((Fraction(x) * y for x, y in zip(v, c)), Fraction(0))
    return c, q


@dataclass(frozen=True)
class QuadraticSolver:
    """Precomputed integral adjugate so q(v) = v^T adj v / det stays in integers.

    Used by the enumeration loops, where ``solve_pairings`` per vector would
    dominate the run time.
    """

    gram: tuple[tuple[int, ...], ...]
    det: int = field(init=False)
    adj: tuple[tuple[int, ...], ...] = field(init=False)

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        d = determinant(g)
        if d == 0:
            raise SingularMatrixError("gram matrix is singular over the rationals")
        inv = rational_inverse(g)
        adj = []
        for row in inv:
            out = []
            for x in row:
                y = x * d
                if y.denominator != 1:
                    raise AssertionError("adjugate must be integral")
                out.append(int(y))
            adj.append(tuple(out))
        object.__setattr__(self, "det", d)
        object.__setattr__(self, "adj", tuple(adj))

    def scaled_coords(self, v: Sequence[int]) -> list[int]:
        """det * G^{-1} v, an integer vector."""
        return [sum(a * x for a, x in zip(row, v)) for row in self.adj]

    def square(self, v: Sequence[int]) -> Fraction:
        w = self.scaled_coords(v)
        return Fraction(sum(x * y for x, y in zip(v, w)), self.det)

    def coords(self, v: Sequence[int]) -> list[Fraction]:
        return [Fraction(x, self.det) for x in self.scaled_coords(v)]


# -- named classes ----------------------------------------------------------

_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+)\s*\*?\s*)?([A-Za-z_][A-Za-z0-9_']*)\s*")


def parse_class_expression(expr: str) -> list[tuple[int, str]]:
    """Split ``"2F+H-E3"`` into ``[(2, 'F'), (1, 'H'), (-1, 'E3')]``."""
    text = expr.strip()
    if text in ("", "0"):
        return []
    out = []
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if m is None or m.end() == pos:
            raise LatticeError(f"cannot parse class expression {expr!r} at position {pos}")
        if m.group(1) is None and out:
            raise LatticeError(f"missing sign between terms in {expr!r}")
        sign = -1 if m.group(1) == "-" else 1
        coef = int(m.group(2)) if m.group(2) else 1
        out.append((sign * coef, m.group(3)))
        pos = m.end()
    return out


class ClassTable:
    """Per-scenario map from labels to classes. Basis labels are always defined."""

    def __init__(self, lattice: Lattice, definitions: Mapping[str, object] | None = None):
        self.lattice = lattice
        self._named: dict[str, ClassVector] = {}
        for label, spec in (definitions or {}).items():
            self.define(label, spec)

    def define(self, label: str, spec) -> ClassVector:
        if label in self.lattice.basis_labels:
            raise LatticeError(f"{label!r} shadows a basis label")
        if label in self._named:
            raise LatticeError(f"{label!r} defined twice")
        if isinstance(spec, ClassVector):
            k = spec
        elif isinstance(spec, str):
            k = self.evaluate(spec)
        else:
            k = self.lattice.vector(int(x) for x in spec)
        self._named[label] = k
        return k

    def __contains__(self, label: str) -> bool:
        return label in self._named or label in self.lattice.basis_labels

    def __getitem__(self, label: str) -> ClassVector:
        if label in self._named:
            return self._named[label]
        if label in self.lattice.basis_labels:
            return self.lattice.basis_vector(label)
        raise KeyError(label)

    def names(self) -> list[str]:
        return list(self._named)

    def evaluate(self, expr: str) -> ClassVector:
        total = self.lattice.zero()
        for coef, label in parse_class_expression(expr):
            if label not in self:
                raise LatticeError(f"undefined class label {label!r} in {expr!r}")
            total = total + coef * self[label]
        return total
