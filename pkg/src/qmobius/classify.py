"""Per-place verdicts for rational fixed points and adelic summaries.

A fixed point of f(x) = (ax+b)/(cx+d) is an attractor, repeller or
indifferent at a place according to whether |f'(xi)|_v is below, above
or equal to 1.  Since f'(xi) = 1/(c*xi+d)**2, the finite places with a
non-indifferent verdict are exactly the primes dividing the numerator
or denominator of c*xi + d, so the full adelic picture is one real
verdict plus a finite exceptional list obtained by factoring a single
rational.  No scan over primes ever happens.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .mobius import Infinity, IrrationalPair, MobiusMap, RationalDouble
from .padic import NormValue, Place, format_rational, norm, principal_profile, vp

__all__ = [
    "AdelicReport",
    "PlaceReport",
    "SiegelRadius",
    "Verdict",
    "adelic_report",
    "check_adelic_image",
    "classify_at",
    "exceptional_primes",
    "in_named_family",
    "siegel_radius",
]


class Verdict(Enum):
    ATTRACTOR = "attractor"
    REPELLER = "repeller"
    INDIFFERENT = "indifferent"

    def dual(self) -> "Verdict":
        """The partner fixed point's verdict, from f'(xi1)*f'(xi2) = 1."""
        if self is Verdict.ATTRACTOR:
            return Verdict.REPELLER
        if self is Verdict.REPELLER:
            return Verdict.ATTRACTOR
        return Verdict.INDIFFERENT

    def __str__(self) -> str:
        return self.value


def _verdict_of(derivative_norm: NormValue) -> Verdict:
    cmp = derivative_norm.cmp_one()
    if cmp < 0:
        return Verdict.ATTRACTOR
    if cmp > 0:
        return Verdict.REPELLER
    return Verdict.INDIFFERENT


@dataclass(frozen=True)
class PlaceReport:
    """Verdict at one place together with the exact derivative norm."""

    place: Place
    derivative_norm: NormValue
    verdict: Verdict


@dataclass(frozen=True)
class AdelicReport:
    """One rational fixed point across every place at once.

    Only the real place and the finitely many exceptional primes are
    enumerated; every prime absent from ``exceptional`` is Indifferent.
    That default is symbolic and exhaustive, not a truncation.
    """

    fixed_point: Fraction
    real_report: PlaceReport
    exceptional: tuple[PlaceReport, ...]

    def verdict_at(self, place: Place) -> Verdict:
        if place.is_real:
            return self.real_report.verdict
        for report in self.exceptional:
            if report.place == place:
                return report.verdict
        return Verdict.INDIFFERENT

    def to_json_dict(self) -> dict:
        return {
            "fixed_point": format_rational(self.fixed_point),
            "real": str(self.real_report.verdict),
            "exceptional": [
                {
                    "p": report.place.prime,
                    "verdict": str(report.verdict),
                    "deriv_norm_exp": report.derivative_norm.exponent,
                }
                for report in self.exceptional
            ],
            "default": str(Verdict.INDIFFERENT),
        }


@dataclass(frozen=True)
class SiegelRadius:
    """Invariant-sphere radius |a|_p / |c|_p = p**radius_exponent.

    The formula is established for the named families (see
    in_named_family); for any other map the number is still computed
    but ``caveat`` is set to flag the extrapolation.
    """

    prime: int
    radius_exponent: int
    caveat: bool

    @property
    def radius(self) -> Fraction:
        e = self.radius_exponent
        return Fraction(self.prime**e) if e >= 0 else Fraction(1, self.prime**-e)


def classify_at(f: MobiusMap, xi: Fraction, place: Place) -> PlaceReport:
    """Exact verdict for the fixed point xi of f at one place.

    >>> from .mobius import MobiusMap
    >>> f = MobiusMap.make(2, 0, 1, Fraction(1, 2))
    >>> classify_at(f, Fraction(0), Place.real()).verdict.value
    'repeller'
    >>> classify_at(f, Fraction(0), Place.finite(2)).verdict.value
    'attractor'
    """
    if not f.is_fixed(xi):
        raise ValueError(f"not a fixed point: f({format_rational(xi)}) != {format_rational(xi)}")
    derivative_norm = norm(f.derivative_at(xi), place)
    return PlaceReport(place, derivative_norm, _verdict_of(derivative_norm))


def exceptional_primes(f: MobiusMap, xi: Fraction) -> list[PlaceReport]:
    """All finite places where xi is not indifferent, smallest prime first.

    |f'(xi)|_p = p**(2*vp(c*xi+d)) is 1 unless p divides the numerator
    or denominator of c*xi + d, so factoring that rational delivers the
    complete list.  A fixed point is never the pole, hence c*xi + d is
    never zero here.
    """
    if not f.is_fixed(xi):
        raise ValueError(f"not a fixed point: f({format_rational(xi)}) != {format_rational(xi)}")
    profile = principal_profile(f.c * xi + f.d, nonzero=True)
    reports = []
    for p in sorted(profile):
        derivative_norm = NormValue.p_power(p, 2 * profile[p])
        reports.append(PlaceReport(Place.finite(p), derivative_norm, _verdict_of(derivative_norm)))
    return reports


def adelic_report(f: MobiusMap) -> tuple[AdelicReport, ...]:
    """One AdelicReport per rational fixed point (two, or one if fused).

    Maps whose fixed points are irrational are out of scope and raise.
    """
    result = f.fixed_points()
    if isinstance(result, IrrationalPair):
        raise ValueError("fixed points not rational; out of scope")
    if isinstance(result, RationalDouble):
        points: tuple[Fraction, ...] = (result.point,)
    else:
        points = (result.point1, result.point2)
    return tuple(
        AdelicReport(
            fixed_point=xi,
            real_report=classify_at(f, xi, Place.real()),
            exceptional=tuple(exceptional_primes(f, xi)),
        )
        for xi in points
    )


def in_named_family(f: MobiusMap) -> bool:
    """True when f belongs to one of the constructor families.

    b = 0 (case A), b = c with d = a (case B), or trace +-2 (cases C
    and D with their subcases, i.e. the fused-fixed-point maps).
    """
    if f.b == 0:
        return True
    if f.b == f.c and f.d == f.a:
        return True
    return f.a + f.d == 2 or f.a + f.d == -2


def siegel_radius(f: MobiusMap, p: int) -> SiegelRadius:
    """Radius exponent vp(c) - vp(a) of the invariant-sphere ball at p."""
    place = Place.finite(p)
    if f.a == 0:
        raise ValueError("radius undefined (|a|_p = 0)")
    exponent = vp(f.c, p) - vp(f.a, p)
    assert isinstance(exponent, int)
    return SiegelRadius(prime=place.prime, radius_exponent=exponent, caveat=not in_named_family(f))


def check_adelic_image(f: MobiusMap, x: Fraction) -> list[int]:
    """Primes p with |f(x)|_p > 1: finite for every rational input.

    A principal point (the same rational at every place) stays adelic
    under f exactly because this list is finite.

    >>> from .mobius import MobiusMap
    >>> f = MobiusMap.make(2, 0, 1, Fraction(1, 2))
    >>> check_adelic_image(f, Fraction(1))
    [3]
    """
    image = f.apply(x)
    if isinstance(image, Infinity):
        raise ValueError(f"image of the pole x = {format_rational(x)} is the point at infinity")
    if image == 0:
        return []
    return sorted(p for p, v in principal_profile(image).items() if v < 0)
