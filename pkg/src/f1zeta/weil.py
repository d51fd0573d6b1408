"""Local zeta series and the torsion-smoothed local zeta.

The local zeta of a scheme at p is exp(sum_n #X(F_{p^n}) T^n / n); its
torsion-smoothed companion replaces gcd(t, p^n - 1) by t throughout
and factors exactly as

    Z~(p, T) = prod_x prod_{r=0}^{R(x)} (1 - p^r T)^(T(x) C(R(x),r) (-1)^(R(x)-r-1)).

Multiplying by (p-1)^N with N the pole order at p = 1 and letting
p -> 1 along reals produces the scheme's global zeta; both the limit
probe and the exact functional-equation check in T operate on the
factored form.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import PreconditionError, SingularityError
from .schemes import MonoidScheme, exact_count


def _parity(n: int) -> int:
    return -1 if n % 2 else 1


@dataclass(frozen=True)
class TruncatedSeries:
    """Exact power-series jet in T with constant term 1."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "coefficients", tuple(Fraction(c) for c in self.coefficients)
        )
        if not self.coefficients or self.coefficients[0] != 1:
            raise PreconditionError("zeta series start with constant coefficient 1")

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1


def local_zeta_series(scheme: MonoidScheme, p: int, order: int) -> TruncatedSeries:
    """exp(sum_{n=1}^{order} #X(F_{p^n}) T^n / n), truncated, exact."""
    if order < 1:
        raise PreconditionError("series order must be >= 1")
    if not isinstance(p, int) or p < 2:
        raise PreconditionError(f"need an integer base p >= 2, got {p!r}")
    a = [Fraction(0)] + [
        Fraction(exact_count(scheme, p**n), n) for n in range(1, order + 1)
    ]
    # E = exp(A) via E' = A' E
    e = [Fraction(1)] + [Fraction(0)] * order
    for n in range(1, order + 1):
        acc = Fraction(0)
        for k in range(1, n + 1):
            acc += k * a[k] * e[n - k]
        e[n] = acc / n
    return TruncatedSeries(tuple(e))


# -- factored smoothed local zeta ----------------------------------------


@dataclass(frozen=True)
class LocalZetaFactors:
    """prod_r (1 - base^r T)^(e_r) for a real base > 1."""

    base: Union[int, float]
    factors: tuple[tuple[int, int], ...]  # (level r, exponent e_r), e_r != 0

    def exponents(self) -> dict[int, int]:
        return dict(self.factors)

    def evaluate_t(self, t: complex) -> complex:
        """Value at the series variable T = t."""
        total = 1.0 + 0j
        for r, e in self.factors:
            base = 1 - (self.base**r) * complex(t)
            if abs(base) < 1e-13:
                raise SingularityError(
                    f"factor (1 - {self.base}^{r} T)^{e} vanishes at T = {t}"
                )
            total *= base**e
        return total

    def evaluate_s(self, s: complex) -> complex:
        """Value at T = base^(-s)."""
        lb = math.log(self.base)
        total = 1.0 + 0j
        for r, e in self.factors:
            factor = 1 - cmath.exp((r - complex(s)) * lb)
            if abs(factor) < 1e-13:
                raise SingularityError(
                    f"factor (1 - p^({r}-s))^{e} vanishes at s = {s}"
                )
            total *= factor**e
        return total

    def series(self, order: int) -> TruncatedSeries:
        """Exact expansion in T; requires an integer base."""
        if not isinstance(self.base, int):
            raise PreconditionError("exact expansion needs an integer base")
        out = [Fraction(1)] + [Fraction(0)] * order
        for r, e in self.factors:
            fac = _binomial_factor_series(self.base**r, e, order)
            out = _mul_trunc(out, fac, order)
        return TruncatedSeries(tuple(out))


def _binomial_factor_series(a: int, e: int, order: int) -> list[Fraction]:
    # (1 - a T)^e for any integer e via the generalized binomial series
    coeffs = [Fraction(1)]
    c = Fraction(1)
    for n in range(1, order + 1):
        c *= Fraction(e - n + 1, n)
        coeffs.append(c * (-a) ** n)
    return coeffs


def _mul_trunc(a: Sequence[Fraction], b: Sequence[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, ai in enumerate(a):
        if ai == 0 or i > order:
            continue
        for j in range(0, order - i + 1):
            if b[j] != 0:
                out[i + j] += ai * b[j]
    return out


def smoothed_local_zeta(scheme: MonoidScheme, p: Union[int, float]) -> LocalZetaFactors:
    """Factored form of the torsion-smoothed local zeta at base p > 1."""
    if p <= 1:
        raise PreconditionError(f"smoothed local zeta needs p > 1, got {p!r}")
    exps: dict[int, int] = {}
    for pt in scheme.points:
        t_card = pt.torsion_cardinality
        for r in range(pt.rank + 1):
            e = t_card * math.comb(pt.rank, r) * _parity(pt.rank - r - 1)
            exps[r] = exps.get(r, 0) + e
    factors = tuple(sorted((r, e) for r, e in exps.items() if e != 0))
    return LocalZetaFactors(p, factors)


def pole_order(scheme: MonoidScheme) -> int:
    """Order of the pole of the smoothed local zeta at p = 1."""
    total = 0
    for pt in scheme.points:
        t_card = pt.torsion_cardinality
        for r in range(pt.rank + 1):
            total += t_card * math.comb(pt.rank, r) * _parity(r - pt.rank)
    return total


def default_base_sequence(count: int = 6) -> list[float]:
    """p = 1 + 10^-k for k = 1..count."""
    return [1 + 10.0**-k for k in range(1, count + 1)]


def limit_toward_one(
    scheme: MonoidScheme,
    s: complex,
    base_sequence: Sequence[float] | None = None,
) -> list[complex]:
    """(p-1)^N Z~(p, p^-s) along a sequence of real p decreasing to 1.

    The values converge to the scheme's global zeta at s; singular s
    propagate as evaluation errors.
    """
    seq = list(base_sequence) if base_sequence is not None else default_base_sequence()
    if any(p <= 1 for p in seq) or any(a <= b for a, b in zip(seq, seq[1:])):
        raise PreconditionError("base sequence must decrease strictly toward 1")
    n = pole_order(scheme)
    out = []
    for p in seq:
        z = smoothed_local_zeta(scheme, p)
        out.append((p - 1) ** n * z.evaluate_s(s))
    return out


# -- local functional equation -------------------------------------------


@dataclass(frozen=True)
class LocalFEReport:
    holds: bool
    chi: int
    dimension: int
    base: int
    mismatches: tuple[tuple[int, int, int], ...]  # (r, e_r, e_{d-r})
    exponent_ok: bool
    squared_form: bool
    numeric_residual: float

    def __str__(self) -> str:
        status = "holds" if self.holds else "FAILS"
        out = (
            f"Z(p, 1/(p^{self.dimension} T)) vs (-1)^{self.chi} "
            f"p^({self.dimension}*{self.chi}/2) T^{self.chi} Z(p, T): {status}"
        )
        for r, er, em in self.mismatches:
            out += f"\n  exponent mismatch: e_{r} = {er} but e_{self.dimension - r} = {em}"
        if not self.exponent_ok:
            out += "\n  p-power bookkeeping fails"
        return out


def local_functional_equation(scheme: MonoidScheme, p: int) -> LocalFEReport:
    """Exact check of Z(p, 1/(p^d T)) = (-1)^chi p^(d chi/2) T^chi Z(p, T).

    Performed on the factored smoothed zeta: substituting T -> 1/(p^d T)
    sends each (1 - p^r T)^e to (1 - p^(d-r) T)^e up to monomial
    factors, so the identity reduces to exponent symmetry e_r = e_{d-r}
    together with integer bookkeeping 2 sum_r r e_r = -d chi.  When
    d*chi is odd the p^(d chi/2) prefactor is irrational; the doubled
    (squared) identity is then checked exactly and the sign separately
    by one floating-point evaluation.
    """
    if not scheme.smooth_projective:
        raise PreconditionError("local functional equation requires smooth_projective")
    if not isinstance(p, int) or p < 2:
        raise PreconditionError(f"need an integer prime base >= 2, got {p!r}")
    z = smoothed_local_zeta(scheme, p)
    exps = z.exponents()
    d = scheme.dim
    chi = -sum(exps.values())
    mismatches = []
    for r in sorted(set(exps) | {d - r for r in exps}):
        er = exps.get(r, 0)
        em = exps.get(d - r, 0)
        if er != em and r <= d - r:
            mismatches.append((r, er, em))
    exponent_ok = 2 * sum(r * e for r, e in exps.items()) == -d * chi
    squared = (d * chi) % 2 == 1

    residual = math.inf
    try:
        t0 = 0.23 / p**d
        lhs = z.evaluate_t(1 / (p**d * t0))
        rhs = (-1) ** chi * p ** (d * chi / 2) * t0**chi * z.evaluate_t(t0)
        residual = abs(lhs / rhs - 1)
    except (SingularityError, ZeroDivisionError, OverflowError):
        pass

    holds = not mismatches and exponent_ok
    return LocalFEReport(
        holds, chi, d, p, tuple(mismatches), exponent_ok, squared, residual
    )
