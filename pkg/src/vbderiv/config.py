"""Run-time limits and suite settings."""

from __future__ import annotations

from dataclasses import dataclass, field


class CapError(ValueError):
    """A configured safety cap was exceeded."""


class DegreeCapError(CapError):
    pass


class PolyCapError(CapError):
    pass


@dataclass(frozen=True)
class Limits:
    degree_cap: int = 4
    poly_cap: int = 16

    def check_degree(self, degree: int):
        if degree > self.degree_cap:
            raise DegreeCapError(f"cochain degree {degree} exceeds the cap {self.degree_cap}")

    def check_poly(self, degree: int, what: str = "polynomial"):
        if degree > self.poly_cap:
            raise PolyCapError(f"{what} of total degree {degree} exceeds the cap {self.poly_cap}")


DEFAULT_LIMITS = Limits()


@dataclass
class SuiteConfig:
    seed: int = 0
    fixtures: tuple = ()
    random_cochains: int = 200
    cocycle_candidates: int = 50
    linearity_samples: int = 100
    round_trip_candidates: int = 20
    equivalence_candidates: int = 100
    limits: Limits = field(default_factory=Limits)
