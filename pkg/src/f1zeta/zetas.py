"""Factored zeta functions and exact functional-equation bookkeeping.

A zeta function is stored as a finite product

    zeta(s) = prod over (lam, m) of  phi_m(s - lam) ^ e(lam, m)

with phi_0(s) = 1/s and phi_m(s) = exp((m-1)! s^-m) for m >= 1.

Exponent orientation: an m = 0 factor with exponent e contributes
(s - lam)^(-e), so e > 0 is a pole at lam of order e and e < 0 a zero
of order -e.  All identity checks (multiplicativity, duality, reflected
functional equations) are performed on the exact factor data; complex
evaluation is a secondary numeric check.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from scipy.integrate import quad

from .errors import ParseError, PreconditionError, SingularityError
from .powerlog import (
    FunctionalEquationWitness,
    PowerLogSum,
    Rational,
    _frac,
    witness_holds,
)

Factor = tuple[Fraction, int, Fraction]


def _canonical(factors: Mapping[tuple[Fraction, int], Fraction]) -> tuple[Factor, ...]:
    items = [(lam, m, e) for (lam, m), e in factors.items() if e != 0]
    items.sort(key=lambda f: (f[0], f[1]))
    return tuple(items)


@dataclass(frozen=True)
class FactoredZeta:
    factors: tuple[Factor, ...] = ()

    @staticmethod
    def from_dict(d: Mapping[tuple[Rational, int], Rational]) -> "FactoredZeta":
        acc: dict[tuple[Fraction, int], Fraction] = {}
        for (lam, m), e in d.items():
            if m < 0:
                raise PreconditionError("factor log-index m must be nonnegative")
            key = (_frac(lam), int(m))
            acc[key] = acc.get(key, Fraction(0)) + _frac(e)
        return FactoredZeta(_canonical(acc))

    @staticmethod
    def one() -> "FactoredZeta":
        return FactoredZeta()

    def as_dict(self) -> dict[tuple[Fraction, int], Fraction]:
        return {(lam, m): e for lam, m, e in self.factors}

    def exponent(self, lam: Rational, m: int = 0) -> Fraction:
        return self.as_dict().get((_frac(lam), m), Fraction(0))

    def poles(self) -> list[tuple[Fraction, Fraction]]:
        return [(lam, e) for lam, m, e in self.factors if m == 0 and e > 0]

    def zeros(self) -> list[tuple[Fraction, Fraction]]:
        return [(lam, -e) for lam, m, e in self.factors if m == 0 and e < 0]


def zeta_of(n: PowerLogSum) -> FactoredZeta:
    """Zeta function of a finite power-log sum: each term (lam, m, c)
    contributes the factor phi_m(s - lam)^c."""
    return FactoredZeta(tuple(n.terms))


def multiply_zeta(z1: FactoredZeta, z2: FactoredZeta) -> FactoredZeta:
    acc = dict(z1.as_dict())
    for key, e in z2.as_dict().items():
        acc[key] = acc.get(key, Fraction(0)) + e
    return FactoredZeta(_canonical(acc))


def power_zeta(z: FactoredZeta, k: Rational) -> FactoredZeta:
    kk = _frac(k)
    if kk == 0:
        return FactoredZeta()
    return FactoredZeta(tuple((lam, m, e * kk) for lam, m, e in z.factors))


def shift_zeta(z: FactoredZeta, a: Rational) -> FactoredZeta:
    """Factors of s |-> zeta(s + a)."""
    aa = _frac(a)
    return FactoredZeta(_canonical({(lam - aa, m): e for lam, m, e in z.factors}))


def reflect_zeta(z: FactoredZeta, omega: Rational) -> tuple[int, FactoredZeta]:
    """Factors of s |-> zeta(omega - s), returned as (sign, factors).

    Uses phi_0(-s) = -phi_0(s) and phi_m(-s) = phi_m(s)^((-1)^m), so
    the reflected function is (-1)^(sum of m = 0 exponents) times a
    genuine factored zeta.  The total m = 0 exponent must be an integer
    for the sign to be defined.
    """
    ww = _frac(omega)
    total = sum((e for lam, m, e in z.factors if m == 0), Fraction(0))
    if total.denominator != 1:
        raise PreconditionError(
            "reflection sign undefined: total order-zero exponent is not an integer"
        )
    sign = -1 if total.numerator % 2 else 1
    acc: dict[tuple[Fraction, int], Fraction] = {}
    for lam, m, e in z.factors:
        key = (ww - lam, m)
        val = -e if m % 2 else e
        acc[key] = acc.get(key, Fraction(0)) + val
    return sign, FactoredZeta(_canonical(acc))


def evaluate_zeta(z: FactoredZeta, s: complex) -> complex:
    """Numeric value at s using principal powers for rational exponents."""
    ss = complex(s)
    total = 1.0 + 0j
    for lam, m, e in z.factors:
        base = ss - complex(float(lam))
        if m == 0:
            if base == 0:
                if e > 0:
                    raise SingularityError(f"pole of order {e} at s = {lam}")
                total *= 0.0
                continue
            k = -e  # (s - lam)^(-e)
            if k.denominator == 1:
                total *= base ** k.numerator
            else:
                total *= cmath.exp(float(k) * cmath.log(base))
        else:
            if base == 0:
                raise SingularityError(
                    f"essential singularity at s = {lam} (log index m = {m})"
                )
            total *= cmath.exp(float(e) * math.factorial(m - 1) * base ** (-m))
    return total


# -- epsilon factor ----------------------------------------------------


@dataclass(frozen=True)
class EpsilonFactor:
    sign: int
    numeric_residual: float
    sample_points: tuple[complex, ...]


def epsilon_factor(n: PowerLogSum) -> EpsilonFactor:
    """The constant zeta_{N*}(-s) / zeta_N(s) = (-1)^N(1).

    The sign is computed exactly from N(1); the numeric residual is the
    maximal deviation of the evaluated ratio from it at three sample
    points chosen away from all singularities.
    """
    n1 = n.value_at_one()
    if n1.denominator != 1:
        raise PreconditionError(f"epsilon sign undefined: N(1) = {n1} is not an integer")
    sign = -1 if n1.numerator % 2 else 1
    z = zeta_of(n)
    zd = zeta_of(n.dual())
    radius = max((abs(float(lam)) for lam, _, _ in n.terms), default=0.0)
    samples = tuple(radius + 1.5 + k + 0.7j * (k + 1) for k in range(3))
    residual = 0.0
    for s in samples:
        ratio = evaluate_zeta(zd, -s) / evaluate_zeta(z, s)
        residual = max(residual, abs(ratio - sign))
    return EpsilonFactor(sign, residual, samples)


# -- functional equation at the zeta level -----------------------------


@dataclass(frozen=True)
class ZetaFEReport:
    holds: bool
    center: Fraction
    exponent_sign: int
    prefactor_sign: int
    mismatches: tuple[tuple[Fraction, Fraction, Fraction], ...]

    def __str__(self) -> str:
        status = "holds" if self.holds else "FAILS"
        pre = "" if self.prefactor_sign == 1 else "-"
        expo = "" if self.exponent_sign == 1 else "^(-1)"
        out = f"zeta({self.center} - s) = {pre}zeta(s){expo}: {status}"
        for lam, le, re in self.mismatches:
            out += f"\n  factor mismatch at lam = {lam}: {le} vs {re}"
        return out


def verify_functional_equation(
    n: PowerLogSum, witness: FunctionalEquationWitness
) -> ZetaFEReport:
    """Exact factor-multiset check of zeta_N(omega - s) = (-1)^N(1) zeta_N(s)^c.

    Requires a pure-power N (all m = 0) and a valid witness; the check
    compares the reflected factor multiset {(omega - lam, e)} against
    {(lam, c*e)} and reads the prefactor sign off N(1).
    """
    if n.is_zero:
        raise PreconditionError("functional equation of the zero sum is vacuous")
    if not n.is_pure_power:
        raise PreconditionError("zeta functional equations are checked for pure powers")
    if not witness_holds(n, witness):
        raise PreconditionError("witness does not satisfy the counting identity")
    n1 = n.value_at_one()
    if n1.denominator != 1:
        raise PreconditionError(f"N(1) = {n1} is not an integer")
    prefactor = -1 if n1.numerator % 2 else 1
    z = zeta_of(n)
    sign, reflected = reflect_zeta(z, witness.omega)
    rhs = power_zeta(z, witness.c)
    mismatches: list[tuple[Fraction, Fraction, Fraction]] = []
    keys = sorted(set(reflected.as_dict()) | set(rhs.as_dict()))
    for key in keys:
        le = reflected.exponent(key[0], key[1])
        re = rhs.exponent(key[0], key[1])
        if le != re:
            mismatches.append((key[0], le, re))
    holds = not mismatches and sign == prefactor
    return ZetaFEReport(holds, witness.omega, witness.c, prefactor, tuple(mismatches))


# -- log-integral representation for N(1) = 0 --------------------------


@dataclass(frozen=True)
class LogZetaIntegral:
    value: complex
    region: str
    abscissa: float


def log_zeta_integral(n: PowerLogSum, s: complex, region: str = "upper") -> LogZetaIntegral:
    """The integral of N(u) / (u^(s+1) log u) over (1, oo) or (0, 1).

    Both integrals exist only for N(1) = 0 (the integrand is otherwise
    non-integrable at u = 1).  The upper form converges for
    Re(s) > max exponent and satisfies exp(-I) = zeta_N(s)^(-1); the
    lower form converges for Re(s) < min exponent and yields
    exp(-I) = zeta_{N*}(-s).
    """
    if n.value_at_one() != 0:
        raise PreconditionError("log-integral form requires N(1) = 0")
    ss = complex(s)
    if n.is_zero:
        return LogZetaIntegral(0j, region, 0.0)
    if region == "upper":
        edge = float(n.degree)
        if ss.real <= edge:
            raise PreconditionError(
                f"upper integral diverges: need Re(s) > {edge}, got {ss.real}"
            )
        shape = n
        rate = ss
    elif region == "lower":
        edge = float(n.min_exponent)
        if ss.real >= edge:
            raise PreconditionError(
                f"lower integral diverges: need Re(s) < {edge}, got {ss.real}"
            )
        shape = n.dual()
        rate = -ss
    else:
        raise PreconditionError(f"unknown region {region!r}")

    # substitution u = e^t maps both forms to +-int_0^oo shape(e^t) e^(-rate*t) / t dt
    lin = sum((c * lam for lam, m, c in shape.terms if m == 0), Fraction(0))
    lin += sum((c for lam, m, c in shape.terms if m == 1), Fraction(0))
    limit0 = float(lin)
    terms = [(float(lam), m, float(c)) for lam, m, c in shape.terms]

    def integrand(t: float) -> complex:
        if t == 0.0:
            return complex(limit0)
        total = 0j
        for lam, m, c in terms:
            expo = (lam - rate) * t
            if expo.real < -745.0:
                continue
            total += c * cmath.exp(expo) * t ** (m - 1)
        return total

    re, _ = quad(lambda t: integrand(t).real, 0, math.inf, epsabs=1e-13, epsrel=1e-12, limit=400)
    im, _ = quad(lambda t: integrand(t).imag, 0, math.inf, epsabs=1e-13, epsrel=1e-12, limit=400)
    value = complex(re, im)
    if region == "lower":
        value = -value
    return LogZetaIntegral(value, region, edge)


# -- display and serialization ------------------------------------------


def _fmt_power(k: Fraction) -> str:
    if k == 1:
        return ""
    return f"^{k.numerator}" if k.denominator == 1 else f"^({k})"


def _fmt_linear(lam: Fraction) -> str:
    if lam == 0:
        return "s"
    return f"(s-{lam})" if lam > 0 else f"(s+{-lam})"


def pretty_zeta(z: FactoredZeta) -> str:
    """Human-readable form, e.g. (s-3)(s-2)/((s-4)(s-1)) or exp(1/s)."""
    numerator: list[str] = []
    denominator: list[str] = []
    exponentials: list[str] = []
    for lam, m, e in sorted(z.factors, key=lambda f: (-f[0], f[1])):
        if m == 0:
            target = denominator if e > 0 else numerator
            target.append(_fmt_linear(lam) + _fmt_power(abs(e)))
        else:
            coeff = e * math.factorial(m - 1)
            inner = _fmt_linear(lam) + ("" if m == 1 else f"^{m}")
            if coeff == 1:
                exponentials.append(f"exp(1/{inner})")
            elif coeff == -1:
                exponentials.append(f"exp(-1/{inner})")
            else:
                cs = str(coeff) if coeff.denominator == 1 else f"({coeff})"
                exponentials.append(f"exp({cs}/{inner})")
    num = "".join(numerator) or "1"
    if denominator:
        den = "".join(denominator)
        rational = f"{num}/({den})" if len(denominator) > 1 else f"{num}/{den}"
    else:
        rational = num
    parts = ([rational] if rational != "1" or not exponentials else []) + exponentials
    return "*".join(parts) if parts else "1"


def zeta_to_records(z: FactoredZeta) -> list[list[int]]:
    return [
        [lam.numerator, lam.denominator, m, e.numerator, e.denominator]
        for lam, m, e in z.factors
    ]


def zeta_from_records(records: Iterable[Sequence[int]]) -> FactoredZeta:
    acc: dict[tuple[Fraction, int], Fraction] = {}
    for rec in records:
        try:
            ln, ld, m, en, ed = (int(v) for v in rec)
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad zeta record {rec!r}") from exc
        if m < 0 or ld == 0 or ed == 0:
            raise ParseError(f"bad zeta record {rec!r}")
        key = (Fraction(ln, ld), m)
        acc[key] = acc.get(key, Fraction(0)) + Fraction(en, ed)
    return FactoredZeta(_canonical(acc))
