"""Exact algebra of finite power-log sums.

A counting function is represented as a finite sum

    N(u) = sum over (lam, m) of  c(lam, m) * u^lam * (log u)^m

with rational exponents lam, nonnegative integer log powers m and
rational coefficients c.  All algebra (addition, multiplication,
duality u -> 1/u, functional-equation detection) is exact; floating
point enters only through :meth:`PowerLogSum.evaluate`.
"""

from __future__ import annotations

import cmath
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import ParseError, PreconditionError

Rational = Union[int, Fraction]

# internal term layout: (exponent lam, log power m, coefficient c)
Term = tuple[Fraction, int, Fraction]


def _frac(x: Rational) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _canonical(terms: Mapping[tuple[Fraction, int], Fraction]) -> tuple[Term, ...]:
    items = [(lam, m, c) for (lam, m), c in terms.items() if c != 0]
    items.sort(key=lambda t: (t[0], t[1]))
    return tuple(items)


@dataclass(frozen=True)
class PowerLogSum:
    """Immutable finite sum of u^lam (log u)^m terms with exact coefficients."""

    terms: tuple[Term, ...] = ()

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_dict(d: Mapping[tuple[Rational, int], Rational]) -> "PowerLogSum":
        acc: dict[tuple[Fraction, int], Fraction] = {}
        for (lam, m), c in d.items():
            if m < 0:
                raise PreconditionError("log power m must be nonnegative")
            key = (_frac(lam), int(m))
            acc[key] = acc.get(key, Fraction(0)) + _frac(c)
        return PowerLogSum(_canonical(acc))

    @staticmethod
    def zero() -> "PowerLogSum":
        return PowerLogSum()

    @staticmethod
    def constant(c: Rational) -> "PowerLogSum":
        return PowerLogSum.from_dict({(Fraction(0), 0): c})

    @staticmethod
    def power(alpha: Rational, coeff: Rational = 1) -> "PowerLogSum":
        """c * u^alpha."""
        return PowerLogSum.from_dict({(_frac(alpha), 0): coeff})

    @staticmethod
    def log_power(m: int = 1, coeff: Rational = 1, alpha: Rational = 0) -> "PowerLogSum":
        """c * u^alpha * (log u)^m."""
        return PowerLogSum.from_dict({(_frac(alpha), int(m)): coeff})

    # -- inspection ----------------------------------------------------

    def as_dict(self) -> dict[tuple[Fraction, int], Fraction]:
        return {(lam, m): c for lam, m, c in self.terms}

    def coefficient(self, lam: Rational, m: int = 0) -> Fraction:
        return self.as_dict().get((_frac(lam), m), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_pure_power(self) -> bool:
        return all(m == 0 for _, m, _ in self.terms)

    def support(self) -> list[Fraction]:
        """Sorted distinct exponents lam occurring in the sum."""
        return sorted({lam for lam, _, _ in self.terms})

    @property
    def degree(self) -> Fraction:
        """Largest exponent in the support.

        For sums whose top exponent carries a log power the value is
        still that exponent; boundary behaviour (e.g. convergence tests
        at Re(s) = degree) must treat that case as divergent.
        """
        if self.is_zero:
            raise PreconditionError("degree of the zero sum is undefined")
        return self.terms[-1][0]

    @property
    def min_exponent(self) -> Fraction:
        if self.is_zero:
            raise PreconditionError("min exponent of the zero sum is undefined")
        return self.terms[0][0]

    def value_at_one(self) -> Fraction:
        """N(1): log-carrying terms vanish at u = 1."""
        return sum((c for lam, m, c in self.terms if m == 0), Fraction(0))

    # -- algebra -------------------------------------------------------

    def __add__(self, other: "PowerLogSum") -> "PowerLogSum":
        acc = dict(self.as_dict())
        for (lam, m), c in other.as_dict().items():
            acc[(lam, m)] = acc.get((lam, m), Fraction(0)) + c
        return PowerLogSum(_canonical(acc))

    def __neg__(self) -> "PowerLogSum":
        return self.scale(-1)

    def __sub__(self, other: "PowerLogSum") -> "PowerLogSum":
        return self + (-other)

    def scale(self, k: Rational) -> "PowerLogSum":
        kk = _frac(k)
        if kk == 0:
            return PowerLogSum()
        return PowerLogSum(tuple((lam, m, c * kk) for lam, m, c in self.terms))

    def __mul__(self, other: "PowerLogSum") -> "PowerLogSum":
        # u^a (log u)^i * u^b (log u)^j = u^(a+b) (log u)^(i+j)
        acc: dict[tuple[Fraction, int], Fraction] = {}
        for la, ma, ca in self.terms:
            for lb, mb, cb in other.terms:
                key = (la + lb, ma + mb)
                acc[key] = acc.get(key, Fraction(0)) + ca * cb
        return PowerLogSum(_canonical(acc))

    def shift_exponents(self, delta: Rational) -> "PowerLogSum":
        """Multiply by u^delta."""
        dd = _frac(delta)
        return PowerLogSum(tuple((lam + dd, m, c) for lam, m, c in self.terms))

    def dual(self) -> "PowerLogSum":
        """N*(u) = N(1/u): each term maps to (-lam, m, (-1)^m c)."""
        acc = {(-lam, m): (-c if m % 2 else c) for lam, m, c in self.terms}
        return PowerLogSum(_canonical(acc))

    # -- numeric -------------------------------------------------------

    def evaluate(self, u: complex) -> complex:
        """Numeric value with the principal logarithm; u must be nonzero."""
        uu = complex(u)
        if uu == 0:
            raise PreconditionError("counting functions are not defined at u = 0")
        lu = cmath.log(uu)
        total = 0j
        for lam, m, c in self.terms:
            total += float(c) * cmath.exp(float(lam) * lu) * lu**m
        return total

    # -- display -------------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts: list[str] = []
        for lam, m, c in sorted(self.terms, key=lambda t: (-t[0], t[1])):
            factors: list[str] = []
            if lam != 0:
                factors.append("u" if lam == 1 else f"u^{_fmt_exp(lam)}")
            if m:
                factors.append("log(u)" if m == 1 else f"log(u)^{m}")
            if not factors or abs(c) != 1:
                factors.insert(0, str(abs(c)))
            body = "*".join(factors)
            parts.append(("- " if c < 0 else "+ ") + body)
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]


def _fmt_exp(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"({x})"


@dataclass(frozen=True)
class FunctionalEquationWitness:
    """Witness of N(1/u) = c * u^(-omega) * N(u) with c in {+1, -1}."""

    c: int
    omega: Fraction


def witness_holds(n: PowerLogSum, witness: FunctionalEquationWitness) -> bool:
    """Exact term-algebra check of the witnessed identity."""
    shifted = n.shift_exponents(-witness.omega).scale(witness.c)
    return n.dual() == shifted


def detect_functional_equation(
    n: PowerLogSum, restrict_to_powers: bool = False
) -> FunctionalEquationWitness | None:
    """Find (c, omega) with N(1/u) = c u^(-omega) N(u), or None.

    The candidate omega is forced: the exponent support must map onto
    itself under lam -> omega - lam, so omega = min + max of the
    support (for a single exponent alpha this degenerates to 2*alpha).
    The sign c is read off one matched coefficient pair and then the
    whole identity is verified by exact term algebra.
    """
    if n.is_zero:
        raise PreconditionError("functional equations of the zero sum are vacuous")
    if restrict_to_powers and not n.is_pure_power:
        raise PreconditionError("restrict_to_powers requires all log powers m = 0")
    sup = n.support()
    omega = sup[0] + sup[-1]
    shifted = n.shift_exponents(-omega)
    lam, m, coeff = shifted.terms[0]
    target = n.dual().coefficient(lam, m)
    if target == coeff:
        c = 1
    elif target == -coeff:
        c = -1
    else:
        return None
    witness = FunctionalEquationWitness(c, omega)
    return witness if witness_holds(n, witness) else None


def product_of_reciprocal_powers(omegas: Sequence[Rational]) -> PowerLogSum:
    """Expand prod_i (1 - u^(-omega_i)) exactly."""
    out = PowerLogSum.constant(1)
    for w in omegas:
        out = out * (PowerLogSum.constant(1) - PowerLogSum.power(-_frac(w)))
    return out


# -- file format: list of records [lam_num, lam_den, m, c_num, c_den] --


def to_records(n: PowerLogSum) -> list[list[int]]:
    return [
        [lam.numerator, lam.denominator, m, c.numerator, c.denominator]
        for lam, m, c in n.terms
    ]


def from_records(records: Iterable[Sequence[int]]) -> PowerLogSum:
    acc: dict[tuple[Fraction, int], Fraction] = {}
    for rec in records:
        try:
            ln, ld, m, cn, cd = (int(v) for v in rec)
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad power-log record {rec!r}") from exc
        if m < 0:
            raise ParseError(f"negative log power in record {rec!r}")
        if ld == 0 or cd == 0:
            raise ParseError(f"zero denominator in record {rec!r}")
        key = (Fraction(ln, ld), m)
        acc[key] = acc.get(key, Fraction(0)) + Fraction(cn, cd)
    return PowerLogSum(_canonical(acc))


def load_power_log(path: str) -> PowerLogSum:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from exc
    if not isinstance(data, list):
        raise ParseError(f"{path}: expected a list of records")
    return from_records(data)


# -- inline expression syntax: terms  c*u^{a/b}*log^m  joined by +/- --


def _strip_braces(s: str) -> str:
    if s.startswith("{") and s.endswith("}") or s.startswith("(") and s.endswith(")"):
        return s[1:-1]
    return s


def _parse_rational(s: str) -> Fraction:
    try:
        return Fraction(_strip_braces(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {s!r}") from exc


def _split_terms(s: str) -> list[str]:
    parts: list[str] = []
    cur = ""
    depth = 0
    for i, ch in enumerate(s):
        if ch in "{(":
            depth += 1
        elif ch in "})":
            depth -= 1
        if ch in "+-" and depth == 0 and i > 0 and s[i - 1] not in "^*/+-":
            parts.append(cur)
            cur = ch
        else:
            cur += ch
    parts.append(cur)
    return [p for p in parts if p not in ("", "+")]


def parse_power_log(text: str) -> PowerLogSum:
    """Parse inline syntax like "2*u^{3/2} - u^-1*log^2 + 1"."""
    s = text.replace(" ", "")
    terms = _split_terms(s) if s else []
    if not terms:
        raise ParseError("empty power-log expression")
    acc: dict[tuple[Fraction, int], Fraction] = {}
    for term in terms:
        sign = 1
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:]
        if not term:
            raise ParseError(f"dangling sign in {text!r}")
        coeff = Fraction(1)
        lam = Fraction(0)
        m = 0
        for part in term.split("*"):
            if part == "u":
                lam += 1
            elif part.startswith("u^"):
                lam += _parse_rational(part[2:])
            elif part == "log":
                m += 1
            elif part.startswith("log^"):
                try:
                    m += int(_strip_braces(part[4:]))
                except ValueError as exc:
                    raise ParseError(f"bad log power in {part!r}") from exc
            elif part:
                coeff *= _parse_rational(part)
            else:
                raise ParseError(f"empty factor in term {term!r}")
        if m < 0:
            raise ParseError(f"negative log power in term {term!r}")
        key = (lam, m)
        acc[key] = acc.get(key, Fraction(0)) + sign * coeff
    return PowerLogSum(_canonical(acc))
