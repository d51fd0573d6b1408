"""Counting polynomials and zeta functions of split reductive groups.

A group is described by its rank r, dimension d, positive-root count
p = (d - r)/2 and the (palindromic) Betti numbers of its flag variety;
the counting polynomial is

    N_G(q) = (q - 1)^r q^p sum_l b_{2l} q^l.

Coefficient symmetry a_k = (-1)^r a_{d+p-k} gives the functional
equation N_G(1/q) = (-1)^r q^(-d-p) N_G(q), equivalently
zeta(d+p-s) = (-1)^chi zeta(s)^((-1)^r) with chi = N_G(1) = 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError, PreconditionError
from .powerlog import (
    FunctionalEquationWitness,
    PowerLogSum,
    detect_functional_equation,
    product_of_reciprocal_powers,
)
from .zetas import FactoredZeta, power_zeta, reflect_zeta, shift_zeta, zeta_of


def _parity(n: int) -> int:
    return -1 if n % 2 else 1


@dataclass(frozen=True)
class ReductiveGroupData:
    """Rank, dimension and flag Betti numbers of a split reductive group.

    The palindrome condition b_{2l} = b_{2(p-l)} is validated by the
    operations that rely on it, not by the constructor, so that broken
    inputs can be diagnosed rather than silently rejected.
    """

    rank: int
    dimension: int
    flag_betti: tuple[int, ...]
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "flag_betti", tuple(int(b) for b in self.flag_betti))
        if self.rank < 1:
            raise PreconditionError("rank must be >= 1")
        if self.dimension < 1:
            raise PreconditionError("dimension must be >= 1")
        if (self.dimension - self.rank) % 2 or self.dimension < self.rank:
            raise PreconditionError(
                f"dimension - rank must be even and nonnegative, got d={self.dimension}, r={self.rank}"
            )
        if len(self.flag_betti) != self.positive_roots + 1:
            raise PreconditionError(
                f"flag Betti list must have length p + 1 = {self.positive_roots + 1}"
            )
        if any(b < 0 for b in self.flag_betti):
            raise PreconditionError("flag Betti numbers must be nonnegative")

    @property
    def positive_roots(self) -> int:
        return (self.dimension - self.rank) // 2

    def validate_palindrome(self) -> None:
        if self.flag_betti != self.flag_betti[::-1]:
            raise PreconditionError(
                f"flag Betti numbers {self.flag_betti} are not palindromic"
            )


def torus_counting(r: int) -> PowerLogSum:
    """(u - 1)^r, the counting polynomial of the r-fold torus."""
    if r < 0:
        raise PreconditionError("torus rank must be >= 0")
    base = PowerLogSum.power(1) - PowerLogSum.constant(1)
    out = PowerLogSum.constant(1)
    for _ in range(r):
        out = out * base
    return out


def group_counting(group: ReductiveGroupData) -> PowerLogSum:
    """(q-1)^r q^p sum_l b_{2l} q^l expanded exactly."""
    group.validate_palindrome()
    flag = PowerLogSum.from_dict(
        {(Fraction(l), 0): b for l, b in enumerate(group.flag_betti)}
    )
    return (
        torus_counting(group.rank)
        * PowerLogSum.power(group.positive_roots)
        * flag
    )


def gl_group_data(r: int) -> ReductiveGroupData:
    """GL(r): dimension r^2, with flag Betti numbers from the Gaussian
    q-factorial prod_{i=1}^{r} (1 + q + ... + q^(i-1))."""
    if r < 1:
        raise PreconditionError("GL rank must be >= 1")
    poly = [1]
    for i in range(1, r + 1):
        nxt = [0] * (len(poly) + i - 1)
        for a, ca in enumerate(poly):
            for b in range(i):
                nxt[a + b] += ca
        poly = nxt
    return ReductiveGroupData(r, r * r, tuple(poly), name=f"GL({r})")


def torus_group_data(r: int) -> ReductiveGroupData:
    if r < 1:
        raise PreconditionError("torus rank must be >= 1")
    return ReductiveGroupData(r, r, (1,), name=f"Gm^{r}" if r > 1 else "Gm")


def sl2_group_data() -> ReductiveGroupData:
    return ReductiveGroupData(1, 3, (1, 1), name="SL(2)")


def group_from_name(name: str) -> ReductiveGroupData:
    """Catalog lookup: "GL:r", "Gm:r", "SL2"."""
    key = name.strip()
    if key.lower() == "sl2":
        return sl2_group_data()
    if ":" in key:
        family, _, arg = key.partition(":")
        try:
            r = int(arg)
        except ValueError as exc:
            raise ParseError(f"bad group rank in {name!r}") from exc
        if family.lower() == "gl":
            return gl_group_data(r)
        if family.lower() == "gm":
            return torus_group_data(r)
    raise ParseError(f"unknown group {name!r} (expected GL:r, Gm:r or SL2)")


def group_from_dict(data: object) -> ReductiveGroupData:
    if not isinstance(data, dict):
        raise ParseError("group file must contain a JSON object")
    try:
        rank = int(data["rank"])
        dimension = int(data["dimension"])
        flag = tuple(int(b) for b in data["flag_betti"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"group file needs integer rank, dimension, flag_betti: {exc}") from exc
    name = data.get("name", "")
    if not isinstance(name, str):
        raise ParseError("group name must be a string")
    return ReductiveGroupData(rank, dimension, flag, name=name)


def load_group(path: str) -> ReductiveGroupData:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from exc
    return group_from_dict(data)


def group_zeta(group: ReductiveGroupData) -> FactoredZeta:
    return zeta_of(group_counting(group))


# -- functional equation ---------------------------------------------------


@dataclass(frozen=True)
class GroupFEReport:
    holds: bool
    witness: FunctionalEquationWitness | None
    chi: int
    expected_center: Fraction
    expected_sign: int
    bad_pair: tuple[Fraction, Fraction, Fraction] | None  # (k, a_k, a_{d+p-k})

    def __str__(self) -> str:
        status = "holds" if self.holds else "FAILS"
        out = (
            f"N(1/q) = ({self.expected_sign})*q^(-{self.expected_center}) N(q) and "
            f"zeta({self.expected_center}-s) = zeta(s)^({self.expected_sign}): {status}"
        )
        if self.bad_pair is not None:
            k, ak, am = self.bad_pair
            out += f"\n  coefficient pair a_{k} = {ak} vs a_{self.expected_center - k} = {am}"
        return out


def group_functional_equation(group: ReductiveGroupData) -> GroupFEReport:
    """Verify the counting and zeta functional equations of a group.

    The witness must be ((-1)^r, d + p); the zeta identity
    zeta(d+p-s) = (-1)^chi zeta(s)^((-1)^r) is checked on exact factor
    data with chi computed as N_G(1) (zero whenever (q-1)^r divides).
    """
    n = group_counting(group)
    center = Fraction(group.dimension + group.positive_roots)
    sign = _parity(group.rank)
    witness = detect_functional_equation(n)
    chi_frac = n.value_at_one()
    chi = chi_frac.numerator  # integer: counting polynomials have integer coefficients

    witness_ok = witness is not None and witness.c == sign and witness.omega == center
    bad_pair = None
    if not witness_ok:
        for lam, m, c in n.terms:
            mirror = n.coefficient(center - lam, m)
            if mirror != sign * c:
                bad_pair = (lam, c, mirror)
                break

    z = group_zeta(group)
    refl_sign, reflected = reflect_zeta(z, center)
    zeta_ok = reflected == power_zeta(z, sign) and refl_sign == _parity(chi)

    return GroupFEReport(witness_ok and zeta_ok, witness, chi, center, sign, bad_pair)


# -- shift / duality / reflection identity families -------------------------


@dataclass(frozen=True)
class FamilyIdentityReport:
    family: str
    rank: int
    results: tuple[tuple[str, bool], ...]

    @property
    def holds(self) -> bool:
        return all(ok for _, ok in self.results)

    @property
    def first_failure(self) -> str | None:
        for label, ok in self.results:
            if not ok:
                return label
        return None

    def __str__(self) -> str:
        lines = [f"{self.family} identities at rank {self.rank}:"]
        for label, ok in self.results:
            lines.append(f"  {label}: {'holds' if ok else 'FAILS'}")
        return "\n".join(lines)


def verify_family_identities(r: int, family: str) -> FamilyIdentityReport:
    """Exact factored verification of the shift, duality and reflection
    identities tying prod (1 - u^-omega_i) to the torus-power and
    general-linear zeta functions.

    family "gm_power": N = (1 - 1/u)^r against zeta of the r-fold torus:
      (a) zeta_N(s) = zeta_T(s + r)
      (b) zeta_{N*}(s) = zeta_T(s)^((-1)^r)
      (c) zeta_T(r - s) = zeta_T(s)^((-1)^r)

    family "gl": N = prod_{i<=r} (1 - u^-i) against zeta of GL(r):
      (a) zeta_N(s) = zeta_GL(s + r^2)
      (b) zeta_{N*}(s) = zeta_GL(s + r(r-1)/2)^((-1)^r)
      (c) zeta_GL(r(3r-1)/2 - s) = zeta_GL(s)^((-1)^r)
    """
    if r < 1:
        raise PreconditionError("family identities need rank >= 1")
    sign = _parity(r)
    results: list[tuple[str, bool]] = []
    if family == "gm_power":
        n = product_of_reciprocal_powers([1] * r)
        zg = zeta_of(torus_counting(r))
        results.append(("shift: zeta_N(s) = zeta_T(s+r)", zeta_of(n) == shift_zeta(zg, r)))
        results.append(
            (
                "dual: zeta_{N*}(s) = zeta_T(s)^((-1)^r)",
                zeta_of(n.dual()) == power_zeta(zg, sign),
            )
        )
        refl_sign, reflected = reflect_zeta(zg, r)
        results.append(
            (
                "reflection: zeta_T(r-s) = zeta_T(s)^((-1)^r)",
                reflected == power_zeta(zg, sign) and refl_sign == 1,
            )
        )
    elif family == "gl":
        n = product_of_reciprocal_powers(range(1, r + 1))
        zgl = group_zeta(gl_group_data(r))
        results.append(
            ("shift: zeta_N(s) = zeta_GL(s+r^2)", zeta_of(n) == shift_zeta(zgl, r * r))
        )
        half = Fraction(r * (r - 1), 2)
        results.append(
            (
                "dual: zeta_{N*}(s) = zeta_GL(s+r(r-1)/2)^((-1)^r)",
                zeta_of(n.dual()) == power_zeta(shift_zeta(zgl, half), sign),
            )
        )
        center = Fraction(r * (3 * r - 1), 2)
        refl_sign, reflected = reflect_zeta(zgl, center)
        results.append(
            (
                "reflection: zeta_GL(r(3r-1)/2-s) = zeta_GL(s)^((-1)^r)",
                reflected == power_zeta(zgl, sign) and refl_sign == 1,
            )
        )
    else:
        raise PreconditionError(f"unknown family {family!r} (gm_power or gl)")
    return FamilyIdentityReport(family, r, tuple(results))
