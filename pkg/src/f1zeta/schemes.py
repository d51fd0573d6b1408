"""Monoid-scheme point data and its counting functions.

A scheme is encoded purely by its finite point set: at each point the
unit group contributes a free rank R(x) and a list of torsion orders
t_{x,j} >= 2 (the torsion cardinality T(x) is their product).  Over the
field with q elements the point count is

    #X(F_q) = sum_x (q-1)^R(x) * prod_j gcd(t_{x,j}, q-1),

and the torsion-smoothed variant replaces each gcd by t_{x,j}.  The
Fourier machinery expands n |-> gcd(t, p^n - 1), which is periodic of
period phi(t), into its discrete Fourier series.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .errors import ParseError, PreconditionError

COMPLEX_TOLERANCE = 1e-10  # declared tolerance for Fourier reconstruction


def totient(n: int) -> int:
    """Euler's phi via trial-division factorization."""
    if n < 1:
        raise PreconditionError("totient requires n >= 1")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1 if p == 2 else 2
    if m > 1:
        result -= result // m
    return result


@dataclass(frozen=True)
class TorsionPoint:
    """One scheme point: unit-group rank and torsion orders."""

    rank: int
    torsion_orders: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise PreconditionError(f"rank must be nonnegative, got {self.rank}")
        object.__setattr__(self, "torsion_orders", tuple(int(t) for t in self.torsion_orders))
        for t in self.torsion_orders:
            if t < 2:
                raise PreconditionError(f"torsion orders must be >= 2, got {t}")

    @property
    def torsion_cardinality(self) -> int:
        return math.prod(self.torsion_orders)


@dataclass(frozen=True)
class MonoidScheme:
    """Finite point list plus asserted dimension / projectivity metadata.

    `smooth_projective` is a caller assertion: it cannot be decided from
    point data, and its observable consequence (Betti symmetry) is
    verified by the functional-equation checks rather than assumed.
    """

    points: tuple[TorsionPoint, ...]
    dimension: int | None = None
    smooth_projective: bool = False
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(self.points))
        if not self.points:
            raise PreconditionError("a scheme needs at least one point")
        if self.dimension is not None and self.dimension < 0:
            raise PreconditionError("dimension must be nonnegative")

    @property
    def max_rank(self) -> int:
        return max(p.rank for p in self.points)

    @property
    def dim(self) -> int:
        """Declared dimension, defaulting to the maximal rank."""
        return self.max_rank if self.dimension is None else self.dimension


# -- counting ----------------------------------------------------------


def exact_count(scheme: MonoidScheme, q: int) -> int:
    """#X(F_q) = sum_x (q-1)^R(x) prod_j gcd(t_{x,j}, q-1).

    The caller is responsible for q being a prime power when modelling
    an actual finite field; any integer q >= 2 is accepted.
    """
    if not isinstance(q, int) or q < 2:
        raise PreconditionError(f"exact counts need an integer q >= 2, got {q!r}")
    total = 0
    for pt in scheme.points:
        term = (q - 1) ** pt.rank
        for t in pt.torsion_orders:
            term *= math.gcd(t, q - 1)
        total += term
    return total


def smoothed_count(scheme: MonoidScheme, q: Union[int, Fraction, float]) -> Fraction:
    """Torsion-smoothed count sum_x T(x) (q-1)^R(x), exact in q.

    Agrees with `exact_count` at integers q = 1 mod every torsion order.
    """
    qq = Fraction(q)
    if qq <= 0:
        raise PreconditionError(f"smoothed counts need q > 0, got {q!r}")
    return sum(
        (pt.torsion_cardinality * (qq - 1) ** pt.rank for pt in scheme.points),
        Fraction(0),
    )


# -- Fourier expansion of n |-> gcd(t, p^n - 1) -------------------------


def fourier_period(scheme: MonoidScheme) -> int:
    """lcm of phi(t) over all torsion orders; 1 for torsion-free schemes.

    phi(t) is always a multiple of the minimal period, and is used as-is
    (no minimal-period reduction) because it is independent of p.
    """
    period = 1
    for pt in scheme.points:
        for t in pt.torsion_orders:
            period = math.lcm(period, totient(t))
    return period


def _gcd_sequence(t: int, p: int, length: int) -> list[int]:
    # gcd(t, p^n - 1) only depends on p^n mod t
    out = []
    for n in range(1, length + 1):
        out.append(math.gcd(t, (pow(p, n, t) - 1) % t) if t > 1 else 1)
    return out


def gcd_fourier_coefficients(t: int, p: int, n0: int) -> tuple[complex, ...]:
    """Coefficients c_nu, nu = 1..n0, of gcd(t, p^n - 1) as a Fourier
    series sum_nu c_nu xi^(n nu) in n, where xi = e^(2 pi i / n0).

    n0 must be a multiple of the actual period of the sequence (phi(t)
    always works); other values are rejected since reconstruction would
    fail.
    """
    if t < 2:
        raise PreconditionError(f"torsion order must be >= 2, got {t}")
    if p < 2:
        raise PreconditionError(f"base prime must be >= 2, got {p}")
    if n0 < 1:
        raise PreconditionError(f"period length must be >= 1, got {n0}")
    seq = _gcd_sequence(t, p, 2 * n0)
    if any(seq[i] != seq[i + n0] for i in range(n0)):
        raise PreconditionError(
            f"{n0} is not a multiple of the period of gcd({t}, {p}^n - 1)"
        )
    coeffs = []
    for nu in range(1, n0 + 1):
        acc = 0j
        for n in range(1, n0 + 1):
            acc += seq[n - 1] * cmath.exp(-2j * cmath.pi * n * nu / n0)
        coeffs.append(acc / n0)
    return tuple(coeffs)


def gcd_inner_fourier(t: int) -> tuple[Fraction, ...]:
    """Fourier coefficients d_alpha of m |-> gcd(t, m) on Z/tZ.

    gcd(t, .) is even mod t, so the coefficients are real; writing
    gcd(t, m) = sum_{e | t, e | m} phi(e) and using orthogonality gives
    the exact rational form d_alpha = sum over e | t with (t/e) | alpha
    of phi(e)/e.  In particular sum_alpha d_alpha = sum_{e|t} phi(e) = t
    holds exactly in rational arithmetic.
    """
    if t < 1:
        raise PreconditionError(f"modulus must be >= 1, got {t}")
    divisors = [e for e in range(1, t + 1) if t % e == 0]
    pieces = [(t // e, Fraction(totient(e), e)) for e in divisors]
    out = []
    for alpha in range(1, t + 1):
        out.append(sum((v for q, v in pieces if alpha % q == 0), Fraction(0)))
    return tuple(out)


@dataclass(frozen=True)
class FourierData:
    """Per-(point, torsion index) Fourier coefficients at a fixed prime."""

    prime: int
    period: int
    root: complex
    entries: tuple[tuple[int, int, int, tuple[complex, ...]], ...] = field(default=())
    # entry layout: (point index, torsion index, torsion order, coefficient vector)

    def reconstruction_error(self, n_max: int | None = None) -> float:
        """Max |sum_nu c_nu xi^(n nu) - gcd(t, p^n - 1)| over n = 1..n_max."""
        limit = 3 * self.period if n_max is None else n_max
        worst = 0.0
        for _, _, t, coeffs in self.entries:
            seq = _gcd_sequence(t, self.prime, limit)
            for n in range(1, limit + 1):
                val = sum(
                    c * self.root ** (n * nu) for nu, c in enumerate(coeffs, start=1)
                )
                worst = max(worst, abs(val - seq[n - 1]))
        return worst

    def verify(self) -> bool:
        """Reconstruction holds within the declared complex tolerance."""
        return self.reconstruction_error() <= COMPLEX_TOLERANCE


def fourier_data(scheme: MonoidScheme, p: int) -> FourierData:
    """Assemble the full coefficient table c_{x,j,nu}(p) for a scheme."""
    n0 = fourier_period(scheme)
    root = cmath.exp(2j * cmath.pi / n0)
    entries = []
    for i, pt in enumerate(scheme.points):
        for j, t in enumerate(pt.torsion_orders):
            entries.append((i, j, t, gcd_fourier_coefficients(t, p, n0)))
    return FourierData(p, n0, root, tuple(entries))


# -- ready-made models --------------------------------------------------


def f1_point() -> MonoidScheme:
    """The terminal point: one rank-0 torsion-free point."""
    return MonoidScheme((TorsionPoint(0),), dimension=0, smooth_projective=True, name="point")


def torus_model(r: int = 1) -> MonoidScheme:
    """The r-fold multiplicative group: one point of rank r."""
    if r < 1:
        raise PreconditionError("torus rank must be >= 1")
    return MonoidScheme((TorsionPoint(r),), name=f"Gm^{r}" if r > 1 else "Gm")


def projective_space_model(n: int) -> MonoidScheme:
    """n-dimensional projective space: C(n+1, r+1) points of rank r.

    The counts reproduce 1 + q + ... + q^n.
    """
    if n < 0:
        raise PreconditionError("projective dimension must be >= 0")
    pts = []
    for r in range(n + 1):
        pts.extend([TorsionPoint(r)] * math.comb(n + 1, r + 1))
    return MonoidScheme(tuple(pts), dimension=n, smooth_projective=True, name=f"P{n}")


def torsion_point_model(torsion_orders: Sequence[int], rank: int = 0) -> MonoidScheme:
    """A single point with prescribed rank and torsion."""
    return MonoidScheme(
        (TorsionPoint(rank, tuple(torsion_orders)),),
        name="torsion-point",
    )


# -- scheme file format --------------------------------------------------


def scheme_from_dict(data: object) -> MonoidScheme:
    if not isinstance(data, dict):
        raise ParseError("scheme file must contain a JSON object")
    raw_points = data.get("points")
    if not isinstance(raw_points, list) or not raw_points:
        raise ParseError("scheme file needs a nonempty 'points' list")
    points = []
    for rec in raw_points:
        if not isinstance(rec, dict):
            raise ParseError(f"bad point record {rec!r}")
        rank = rec.get("rank")
        torsion = rec.get("torsion", [])
        if not isinstance(rank, int) or rank < 0:
            raise ParseError(f"point rank must be a nonnegative integer, got {rank!r}")
        if not isinstance(torsion, list) or any(
            not isinstance(t, int) or t < 2 for t in torsion
        ):
            raise ParseError(f"torsion entries must be integers >= 2, got {torsion!r}")
        points.append(TorsionPoint(rank, tuple(torsion)))
    dimension = data.get("dimension")
    if dimension is not None and (not isinstance(dimension, int) or dimension < 0):
        raise ParseError(f"dimension must be a nonnegative integer, got {dimension!r}")
    smooth = data.get("smooth_projective", False)
    if not isinstance(smooth, bool):
        raise ParseError("smooth_projective must be a boolean")
    name = data.get("name", "")
    if not isinstance(name, str):
        raise ParseError("name must be a string")
    return MonoidScheme(tuple(points), dimension=dimension, smooth_projective=smooth, name=name)


def scheme_to_dict(scheme: MonoidScheme) -> dict:
    out: dict = {
        "name": scheme.name,
        "points": [
            {"rank": pt.rank, "torsion": list(pt.torsion_orders)}
            for pt in scheme.points
        ],
    }
    if scheme.dimension is not None:
        out["dimension"] = scheme.dimension
    if scheme.smooth_projective:
        out["smooth_projective"] = True
    return out


def load_scheme(path: str) -> MonoidScheme:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from exc
    return scheme_from_dict(data)
