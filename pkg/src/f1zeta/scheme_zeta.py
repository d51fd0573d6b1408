"""Global zeta functions of monoid schemes over the one-element base.

The p -> 1 limit of the smoothed local zeta is the rational function

    zeta(s) = prod_{r=0}^{R} (s - r)^(E_r),
    E_r = sum_x T(x) C(R(x), r) (-1)^(R(x)-r-1),

equivalently prod_l (s - l)^(-b_{2l}) with the even Betti numbers
b_{2l} = sum_x (-1)^(l+R(x)) C(R(x), l) T(x) (odd ones vanish in this
class).  The global functional equation zeta(d-s) = (-1)^chi zeta(s)
holds exactly iff the Betti profile is palindromic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .powerlog import PowerLogSum
from .schemes import MonoidScheme
from .zetas import FactoredZeta, reflect_zeta


def _parity(n: int) -> int:
    return -1 if n % 2 else 1


@dataclass(frozen=True)
class BettiProfile:
    """Even Betti numbers b_{2l}, l = 0..d, with their Euler characteristic.

    For inputs that are not asserted smooth projective the formula can
    produce negative values; these are returned with a warning rather
    than rejected, since the zeta formula stays valid regardless.
    """

    values: tuple[int, ...]
    dimension: int
    warning: str | None = None

    @property
    def euler_characteristic(self) -> int:
        return sum(self.values)

    @property
    def is_symmetric(self) -> bool:
        return self.values == self.values[::-1]

    def asymmetries(self) -> tuple[tuple[int, int, int], ...]:
        d = self.dimension
        out = []
        for l in range(d // 2 + 1):
            if self.values[l] != self.values[d - l]:
                out.append((l, self.values[l], self.values[d - l]))
        return tuple(out)


def betti_profile(scheme: MonoidScheme) -> BettiProfile:
    """b_{2l} = sum_x (-1)^(l+R(x)) C(R(x), l) T(x) for l = 0..dim."""
    d = scheme.dim
    values = []
    for l in range(d + 1):
        b = sum(
            _parity(l + pt.rank) * math.comb(pt.rank, l) * pt.torsion_cardinality
            for pt in scheme.points
        )
        values.append(b)
    warning = None
    if not scheme.smooth_projective:
        warning = "smooth_projective not asserted; values are formal"
        if any(v < 0 for v in values):
            warning += " (negative entries are not Betti numbers)"
    return BettiProfile(tuple(values), d, warning)


def zeta_of_scheme(scheme: MonoidScheme) -> FactoredZeta:
    """The scheme's zeta as an exactly factored rational function.

    Exponents are accumulated point by point from the defining product,
    prod_x prod_r (s - r)^(T(x) C(R(x),r) (-1)^(R(x)-r-1)); for
    torsion-free schemes this reproduces the counting-polynomial zeta
    s^(-a_0) (s-1)^(-a_1) ... with N(q) = sum_j a_j q^j.
    """
    exps: dict[tuple[Fraction, int], Fraction] = {}
    for pt in scheme.points:
        t_card = pt.torsion_cardinality
        for r in range(pt.rank + 1):
            e_r = t_card * math.comb(pt.rank, r) * _parity(pt.rank - r - 1)
            key = (Fraction(r), 0)
            # factored-zeta orientation stores -E_r so that exponent e > 0
            # marks a pole of order e
            exps[key] = exps.get(key, Fraction(0)) - e_r
    return FactoredZeta.from_dict(exps)


def scheme_counting_function(scheme: MonoidScheme) -> PowerLogSum:
    """Smoothed counting function sum_x T(x) (u - 1)^R(x) as an exact sum."""
    u_minus_1 = PowerLogSum.power(1) - PowerLogSum.constant(1)
    out = PowerLogSum.zero()
    for pt in scheme.points:
        term = PowerLogSum.constant(pt.torsion_cardinality)
        for _ in range(pt.rank):
            term = term * u_minus_1
        out = out + term
    return out


@dataclass(frozen=True)
class GlobalFEReport:
    holds: bool
    chi: int
    dimension: int
    asymmetries: tuple[tuple[int, int, int], ...]

    def __str__(self) -> str:
        status = "holds" if self.holds else "FAILS"
        out = f"zeta({self.dimension} - s) = (-1)^{self.chi} zeta(s): {status}"
        for l, bl, bm in self.asymmetries:
            out += f"\n  Betti asymmetry: b_{2 * l} = {bl} but b_{2 * (self.dimension - l)} = {bm}"
        return out


def global_functional_equation(scheme: MonoidScheme) -> GlobalFEReport:
    """Exact factored check of zeta(d - s) = (-1)^chi zeta(s).

    Requires the smooth_projective assertion; a failing check is
    diagnosed through the Betti asymmetry that causes it.
    """
    if not scheme.smooth_projective:
        raise PreconditionError("global functional equation requires smooth_projective")
    z = zeta_of_scheme(scheme)
    profile = betti_profile(scheme)
    chi = profile.euler_characteristic
    sign, reflected = reflect_zeta(z, scheme.dim)
    expected_sign = _parity(chi)
    holds = reflected == z and sign == expected_sign
    return GlobalFEReport(holds, chi, scheme.dim, profile.asymmetries())
