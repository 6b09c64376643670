"""Seiberg-Witten invariants as elements of an integral group ring.

An :class:`SWElement` is a Laurent polynomial with integer coefficients over a
fixed, ordered list of variables (``t``, ``e``, ``t1``...), each variable
standing for the group-ring generator of one homology class.  Formal inverses
such as ``(t - t^-1)^-1`` are carried as :class:`SWFraction`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

Exponent = tuple[int, ...]


class RingError(ValueError):
    pass


class VariableMismatch(RingError):
    pass


class NonPolynomialError(RingError):
    """A fraction did not reduce to a Laurent polynomial."""


class SWElement:
    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, int] | None = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise RingError(f"repeated variable in {variables}")
        self.variables = variables
        clean: dict[Exponent, int] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(variables):
                raise RingError(f"exponent {exp} does not match variables {variables}")
            c = int(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
                if clean[exp] == 0:
                    del clean[exp]
        self.terms = clean

    # construction

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "SWElement":
        return cls(variables)

    @classmethod
    def constant(cls, c: int, variables: Sequence[str]) -> "SWElement":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def one(cls, variables: Sequence[str]) -> "SWElement":
        return cls.constant(1, variables)

    @classmethod
    def monomial(cls, variables: Sequence[str], exps: Mapping[str, int], c: int = 1) -> "SWElement":
        variables = tuple(variables)
        unknown = set(exps) - set(variables)
        if unknown:
            raise VariableMismatch(f"unknown variables {sorted(unknown)}")
        return cls(variables, {tuple(int(exps.get(v, 0)) for v in variables): c})

    @classmethod
    def parse(cls, text: str, variables: Sequence[str]) -> "SWElement":
        return parse_element(text, variables)

    # structure

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _same(self, other: "SWElement"):
        if other.variables != self.variables:
            raise VariableMismatch(f"variable lists differ: {self.variables} vs {other.variables}")

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        return sorted(self.terms.items())

    def __eq__(self, other):
        if isinstance(other, int):
            return self == SWElement.constant(other, self.variables)
        if isinstance(other, SWFraction):
            return other == self
        if not isinstance(other, SWElement):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, tuple(self.sorted_terms())))

    def __repr__(self):
        return f"SWElement({self.variables}, {str(self)!r})"

    def __str__(self):
        return format_element(self)

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, int):
            return SWElement.constant(other, self.variables)
        if isinstance(other, SWElement):
            self._same(other)
            return other
        return None

    def __add__(self, other):
        if isinstance(other, SWFraction):
            return SWFraction(self) + other
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, 0) + c
        return SWElement(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return SWElement(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, SWFraction):
            return SWFraction(self) - other
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, SWFraction):
            return SWFraction(self) * other
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[Exponent, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return SWElement(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise RingError("only monomials have inverses in the group ring")
            (e, c), = self.terms.items()
            if c not in (1, -1):
                raise RingError("monomial with non-unit coefficient is not invertible")
            return SWElement(self.variables, {tuple(x * k for x in e): c ** (-k)})
        result = SWElement.one(self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (SWElement, int)):
            return SWFraction(self, self._coerce(other))
        if isinstance(other, SWFraction):
            return SWFraction(self) / other
        return NotImplemented

    # variable bookkeeping

    def extend(self, new_vars: Iterable[str]) -> "SWElement":
        """Append fresh variables (exponent 0)."""
        new_vars = tuple(new_vars)
        clash = set(new_vars) & set(self.variables)
        if clash:
            raise VariableMismatch(f"variables already present: {sorted(clash)}")
        pad = (0,) * len(new_vars)
        return SWElement(self.variables + new_vars, {e + pad: c for e, c in self.terms.items()})

    def embed(self, variables: Sequence[str]) -> "SWElement":
        """The same element over a superset of its variables, in the given order."""
        variables = tuple(variables)
        missing = [v for v in self.variables if v not in variables]
        if missing:
            raise VariableMismatch(f"target variables lack {missing}")
        matrix = [[1 if w == v else 0 for w in self.variables] for v in variables]
        return self.map_exponents(variables, matrix)

    def rename(self, mapping: Mapping[str, str]) -> "SWElement":
        return SWElement(tuple(mapping.get(v, v) for v in self.variables), self.terms)

    def map_exponents(self, variables: Sequence[str], matrix: Sequence[Sequence[int]]) -> "SWElement":
        """Apply the linear map new_exp = matrix @ old_exp (group-ring homomorphism)."""
        variables = tuple(variables)
        if len(matrix) != len(variables) or any(len(row) != len(self.variables) for row in matrix):
            raise RingError("exponent map has the wrong shape")
        out: dict[Exponent, int] = {}
        for e, c in self.terms.items():
            ne = tuple(sum(a * x for a, x in zip(row, e)) for row in matrix)
            out[ne] = out.get(ne, 0) + c
        return SWElement(variables, out)

    def substitute_power(self, var: str, k: int) -> "SWElement":
        """var -> var^k."""
        i = self.index(var)
        return SWElement(
            self.variables,
            {e[:i] + (e[i] * k,) + e[i + 1:]: c for e, c in self.terms.items()},
        )

    def index(self, var: str) -> int:
        try:
            return self.variables.index(var)
        except ValueError:
            raise VariableMismatch(f"{var!r} not among {self.variables}") from None

    def is_symmetric(self, var: str) -> bool:
        """Invariant under var -> var^-1."""
        return self.substitute_power(var, -1) == self

    def coefficient(self, exps: Mapping[str, int]) -> int:
        e = tuple(int(exps.get(v, 0)) for v in self.variables)
        return self.terms.get(e, 0)

    def evaluate_at_one(self) -> int:
        return sum(self.terms.values())

    # serialization

    def to_json(self) -> list[dict]:
        return [
            {"exp": {v: x for v, x in zip(self.variables, e) if x}, "c": c}
            for e, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data: Sequence[Mapping], variables: Sequence[str]) -> "SWElement":
        out = SWElement.zero(variables)
        for t in data:
            out = out + SWElement.monomial(variables, t["exp"], int(t["c"]))
        return out


Ringlike = Union[SWElement, "SWFraction"]


class SWFraction:
    """numerator / denominator, reduced only on request."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: SWElement, denominator: SWElement | None = None):
        if denominator is None:
            denominator = SWElement.one(numerator.variables)
        numerator._same(denominator)
        if denominator.is_zero():
            raise ZeroDivisionError("SWFraction with zero denominator")
        self.numerator = numerator
        self.denominator = denominator

    @property
    def variables(self):
        return self.numerator.variables

    def _coerce(self, other) -> "SWFraction | None":
        if isinstance(other, SWFraction):
            self.numerator._same(other.numerator)
            return other
        if isinstance(other, int):
            return SWFraction(SWElement.constant(other, self.variables))
        if isinstance(other, SWElement):
            self.numerator._same(other)
            return SWFraction(other)
        return None

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.numerator * o.denominator == o.numerator * self.denominator

    def __hash__(self):
        # equal fractions need not share a representation
        raise TypeError("SWFraction is unhashable")

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return SWFraction(
            self.numerator * o.denominator + o.numerator * self.denominator,
            self.denominator * o.denominator,
        )

    __radd__ = __add__

    def __neg__(self):
        return SWFraction(-self.numerator, self.denominator)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return SWFraction(self.numerator * o.numerator, self.denominator * o.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return SWFraction(self.numerator * o.denominator, self.denominator * o.numerator)

    def inverse(self) -> "SWFraction":
        return SWFraction(self.denominator, self.numerator)

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def reduce(self) -> SWElement:
        q = exact_divide(self.numerator, self.denominator)
        if q is None:
            raise NonPolynomialError(f"({self.numerator}) / ({self.denominator}) is not a Laurent polynomial")
        return q

    def map(self, fn) -> "SWFraction":
        return SWFraction(fn(self.numerator), fn(self.denominator))

    def __repr__(self):
        return f"SWFraction({str(self)!r})"

    def __str__(self):
        return f"({self.numerator}) / ({self.denominator})"

    def to_json(self) -> dict:
        return {"num": self.numerator.to_json(), "den": self.denominator.to_json()}


def exact_divide(f: SWElement, g: SWElement) -> SWElement | None:
    """f / g in the Laurent ring, or None if g does not divide f.

    Both sides are shifted by monomials into ordinary polynomials; since the
    shifted divisor has no monomial factor, Laurent divisibility is ordinary
    divisibility, which lex-order division by a single polynomial decides.
    """
    f._same(g)
    if g.is_zero():
        raise ZeroDivisionError("division by zero element")
    if f.is_zero():
        return SWElement.zero(f.variables)
    n = len(f.variables)
    gmin = tuple(min(e[i] for e in g.terms) for i in range(n))
    fmin = tuple(min(e[i] for e in f.terms) for i in range(n))
    gp = {tuple(a - b for a, b in zip(e, gmin)): c for e, c in g.terms.items()}
    rem = {tuple(a - b for a, b in zip(e, fmin)): c for e, c in f.terms.items()}
    glead = max(gp)
    gc = gp[glead]
    quotient: dict[Exponent, int] = {}
    while rem:
        lead = max(rem)
        shift = tuple(a - b for a, b in zip(lead, glead))
        if any(s < 0 for s in shift) or rem[lead] % gc:
            return None
        qc = rem[lead] // gc
        quotient[shift] = qc
        for e, c in gp.items():
            key = tuple(a + b for a, b in zip(e, shift))
            v = rem.get(key, 0) - qc * c
            if v:
                rem[key] = v
            else:
                rem.pop(key, None)
    offset = tuple(a - b for a, b in zip(fmin, gmin))
    return SWElement(f.variables, {tuple(a + b for a, b in zip(e, offset)): c for e, c in quotient.items()})


# -- text form --------------------------------------------------------------


def _format_monomial(variables, exp) -> str:
    parts = []
    for v, x in zip(variables, exp):
        if x == 0:
            continue
        parts.append(v if x == 1 else f"{v}^{x}")
    return "*".join(parts)


def format_element(x: SWElement) -> str:
    if x.is_zero():
        return "0"
    out = []
    for i, (e, c) in enumerate(x.sorted_terms()):
        mono = _format_monomial(x.variables, e)
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\^)|(\*)|([+-]))")


def parse_element(text: str, variables: Sequence[str]) -> SWElement:
    """Parse sums of monomials such as ``"t^-1 - t"`` or ``"3*t1^-1*t2"``."""
    variables = tuple(variables)
    src = text.strip()
    if src == "":
        raise RingError("empty element text")
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            if src[pos:].strip() == "":
                break
            raise RingError(f"cannot parse {text!r} at position {pos}")
        pos = m.end()
        num, name, caret, star, sign = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            tokens.append(("var", name))
        elif caret:
            tokens.append(("^", None))
        elif star:
            tokens.append(("*", None))
        else:
            tokens.append(("sign", sign))
    result = SWElement.zero(variables)
    i = 0

    def peek(k=0):
        return tokens[i + k] if i + k < len(tokens) else (None, None)

    first = True
    while i < len(tokens):
        sgn = 1
        if peek()[0] == "sign":
            sgn = -1 if peek()[1] == "-" else 1
            i += 1
        elif not first:
            raise RingError(f"missing + or - in {text!r}")
        first = False
        coef = 1
        exps: dict[str, int] = {}
        seen_factor = False
        while True:
            kind, val = peek()
            if kind == "num":
                coef *= val
                i += 1
            elif kind == "var":
                if val not in variables:
                    raise VariableMismatch(f"unknown variable {val!r} in {text!r}")
                i += 1
                power = 1
                if peek()[0] == "^":
                    i += 1
                    psign = 1
                    if peek()[0] == "sign":
                        psign = -1 if peek()[1] == "-" else 1
                        i += 1
                    if peek()[0] != "num":
                        raise RingError(f"bad exponent in {text!r}")
                    power = psign * peek()[1]
                    i += 1
                exps[val] = exps.get(val, 0) + power
            else:
                raise RingError(f"expected a factor in {text!r}")
            seen_factor = True
            if peek()[0] == "*":
                i += 1
                continue
            if peek()[0] == "var":
                continue
            break
        if not seen_factor:
            raise RingError(f"empty term in {text!r}")
        result = result + SWElement.monomial(variables, exps, sgn * coef)
    return result


# -- Alexander polynomials --------------------------------------------------


@dataclass(frozen=True)
class AlexanderPolynomial:
    """Symmetrized Alexander polynomial, stored as {degree: coefficient}."""

    coefficients: tuple[tuple[int, int], ...]

    def __init__(self, coefficients: Mapping[int, int] | Sequence[int]):
        if isinstance(coefficients, Mapping):
            items = {int(k): int(v) for k, v in coefficients.items() if int(v)}
        else:
            coeffs = [int(c) for c in coefficients]
            if len(coeffs) % 2 == 0:
                raise RingError("a symmetrized coefficient list must have odd length")
            half = len(coeffs) // 2
            items = {i - half: c for i, c in enumerate(coeffs) if c}
        for k, v in items.items():
            if items.get(-k, 0) != v:
                raise RingError("Alexander polynomial is not symmetrized (coefficient of t^i must equal t^-i)")
        if sum(items.values()) not in (1, -1):
            raise RingError("Alexander polynomial must satisfy Delta(1) = +-1")
        object.__setattr__(self, "coefficients", tuple(sorted(items.items())))

    @classmethod
    def unknot(cls) -> "AlexanderPolynomial":
        return cls({0: 1})

    def as_element(self, var: str, variables: Sequence[str], power: int = 1) -> SWElement:
        """Delta(var^power) as an element over ``variables``."""
        out = SWElement.zero(variables)
        for k, c in self.coefficients:
            out = out + SWElement.monomial(variables, {var: k * power}, c)
        return out


# -- manifold records -------------------------------------------------------

VANISHING_AXIOMS = {
    "positive-scalar-curvature": "a metric of positive scalar curvature forces SW = 0",
    "positive-sphere": "an embedded sphere of positive square (or essential square-zero sphere) forces SW = 0",
}


@dataclass
class ManifoldInvariantRecord:
    name: str
    b_plus: int | None
    b_minus: int | None
    sw: SWElement | SWFraction
    vanishing_axiom: str | None = None

    def __post_init__(self):
        if self.vanishing_axiom is not None:
            if self.vanishing_axiom not in VANISHING_AXIOMS:
                raise RingError(f"unknown vanishing axiom {self.vanishing_axiom!r}")
            if not self.sw.is_zero():
                raise RingError(f"{self.name}: vanishing axiom {self.vanishing_axiom!r} requires SW = 0")

    def _betti(self):
        if self.b_plus is None or self.b_minus is None:
            raise RingError(f"{self.name}: Betti numbers not recorded")
        return self.b_plus, self.b_minus

    @property
    def signature(self) -> int:
        bp, bm = self._betti()
        return bp - bm

    @property
    def euler(self) -> int:
        bp, bm = self._betti()
        return 2 + bp + bm


# -- formulas ---------------------------------------------------------------


def dimension(k_square: int, sign: int, euler: int) -> int:
    """Formal dimension (k^2 - (3 sign + 2 e)) / 4 of the SW moduli space."""
    num = int(k_square) - (3 * int(sign) + 2 * int(euler))
    if num % 4:
        raise RingError(f"k^2 = {k_square} gives non-integral dimension {num}/4; k cannot be characteristic")
    return num // 4


def wall_cross(sw_minus_value: int, d: int) -> int:
    """Value on the far side of the wall: SW^- + (-1)^(1 + d/2)."""
    if d < 0 or d % 2:
        raise RingError(f"wall crossing needs an even nonnegative dimension, got {d}")
    return sw_minus_value + (-1) ** (1 + d // 2)


def _check_fresh(x: Ringlike, var: str):
    if var in x.variables:
        raise VariableMismatch(f"variable {var!r} already in use")


def knot_surgery(sw: Ringlike, delta: AlexanderPolynomial, torus_var: str) -> Ringlike:
    """Multiply by Delta(t^2), t the group-ring variable of the surgered torus."""
    if torus_var not in sw.variables:
        raise VariableMismatch(f"{torus_var!r} not among {sw.variables}")
    return sw * delta.as_element(torus_var, sw.variables, power=2)


def blowup(sw: Ringlike, exceptional_var: str) -> Ringlike:
    _check_fresh(sw, exceptional_var)
    if isinstance(sw, SWFraction):
        sw = sw.map(lambda x: x.extend([exceptional_var]))
    else:
        sw = sw.extend([exceptional_var])
    e = SWElement.monomial(sw.variables, {exceptional_var: 1})
    return sw * (e + e ** -1)


def skein_E1L(sw_unlink: SWElement, sw_minus_unknot: Ringlike, torus_var: str) -> SWElement:
    """SW of E(1)_L from the unlink term and the SW^- of E(1)_{K0}.

    Raises NonPolynomialError when the denominators fail to cancel.
    """
    if sw_unlink.variables != sw_minus_unknot.variables:
        raise VariableMismatch("skein inputs must share one variable list")
    t = SWElement.monomial(sw_unlink.variables, {torus_var: 1})
    d = t - t ** -1
    out = sw_unlink - d * d * sw_minus_unknot
    if isinstance(out, SWFraction):
        return out.reduce()
    return out


def torus_surgery(sw_R: SWElement, sw_Q: SWElement, n: int, collapse: Mapping[str, str | None]) -> SWElement:
    """SW of 1/n surgery on a nullhomologous torus: SW_R + n * collapse(SW_Q).

    ``collapse`` sends each variable of Q to a variable of R, or to None for
    the surgery-dual class, whose i-summation becomes erasure of the variable.
    """
    if n < 0:
        raise RingError("n must be nonnegative")
    missing = [v for v in sw_Q.variables if v not in collapse]
    if missing:
        raise RingError(f"collapse map does not cover Q variables {missing}")
    matrix = []
    for rv in sw_R.variables:
        matrix.append([1 if collapse[qv] == rv else 0 for qv in sw_Q.variables])
    bad = [qv for qv in sw_Q.variables if collapse[qv] is not None and collapse[qv] not in sw_R.variables]
    if bad:
        raise VariableMismatch(f"collapse targets not among R variables: {bad}")
    return sw_R + n * sw_Q.map_exponents(sw_R.variables, matrix)


def sewn_up_h1(n: int, linking: int) -> tuple[int, int]:
    """H_1 of the sewn-up link exterior s(L; A_n): Z + Z/|n - 2 lk|.

    Returns (free rank contributed by the first summand, torsion order), where
    torsion order 0 means the second summand is a free Z.
    """
    return 1, abs(n - 2 * linking)


def describe_h1(free_rank: int, torsion: int) -> str:
    parts = ["Z"] * free_rank
    if torsion == 0:
        parts.append("Z")
    elif torsion > 1:
        parts.append(f"Z/{torsion}")
    return " + ".join(parts) if parts else "0"
