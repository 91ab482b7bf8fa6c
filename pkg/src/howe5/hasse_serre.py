"""Hasse polynomial machinery, Serre-bound arithmetic, and the three
attainment predicates for twisted Legendre curves
y^2 = theta * x (x - 1) (x - lambda) over F_p.

The predicates decide attainment over F_p (p >= 17), maximality over
F_{p^2}, and attainment over F_{p^3} (p >= 11) from congruences alone;
no point counting is involved.  The zeta-recursion lift turns an exact
count over F_p into counts over F_{p^2} and F_{p^3}.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from . import curve_models
from .errors import HasseViolation, HypothesisViolated
from .field_arith import FieldElement, PrimeModulus, prime_modulus

SERRE_FP_MIN_PRIME = 17
SERRE_FP3_MIN_PRIME = 11


@dataclass(frozen=True)
class LegendreCurve:
    """y^2 = theta * x (x - 1) (x - lam) with theta != 0 and lam not in {0, 1}."""

    mod: PrimeModulus
    theta: FieldElement
    lam: FieldElement

    def __post_init__(self) -> None:
        if self.theta.mod.p != self.mod.p or self.lam.mod.p != self.mod.p:
            raise ValueError("parameter has the wrong modulus")
        if self.theta.value == 0:
            raise ValueError("theta must be nonzero")
        if self.lam.value in (0, 1):
            raise ValueError(f"lambda must avoid 0 and 1, got {self.lam.value}")

    @classmethod
    def from_ints(cls, p: int, theta: int, lam: int) -> "LegendreCurve":
        mod = prime_modulus(p)
        return cls(mod=mod, theta=mod(theta), lam=mod(lam))

    def model(self) -> curve_models.HyperellipticModel:
        zero = FieldElement(0, self.mod)
        one = FieldElement(1, self.mod)
        return curve_models.HyperellipticModel(
            mod=self.mod, alpha=self.theta, roots=(zero, one, self.lam)
        )


@functools.lru_cache(maxsize=None)
def hasse_poly_coeffs(p: int) -> tuple[int, ...]:
    """Coefficients of sum_i binom(m, i)^2 t^i mod p, with m = (p - 1) / 2.

    binom(m, i) is built by the multiplicative recurrence; every inverse
    taken is of some i <= m < p, so it exists.
    """
    m = (p - 1) // 2
    coeffs = [1]
    b = 1
    for i in range(1, m + 1):
        b = b * (m - i + 1) % p * pow(i, p - 2, p) % p
        coeffs.append(b * b % p)
    return tuple(coeffs)


def hasse_poly_eval(mod: PrimeModulus, lam: FieldElement) -> FieldElement:
    """The Hasse polynomial evaluated at lam, as a canonical residue."""
    p = mod.p
    acc = 0
    x = lam.value % p
    for c in reversed(hasse_poly_coeffs(p)):
        acc = (acc * x + c) % p
    return FieldElement(acc, mod)


@functools.lru_cache(maxsize=None)
def hasse_poly_table(p: int) -> np.ndarray:
    """H_p evaluated at every residue, H[v] for v in [0, p)."""
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(hasse_poly_coeffs(p)):
        acc = (acc * xs + c) % p
    return acc


def floor_two_sqrt(q: int) -> int:
    """floor(2 * sqrt(q)) computed exactly, no floating point."""
    if q < 0:
        raise ValueError("q must be nonnegative")
    return math.isqrt(4 * q)


def serre_bound(q: int, genus: int) -> int:
    """q + 1 + genus * floor(2 sqrt(q)), the Serre upper bound on #C(F_q)."""
    if genus < 0:
        raise ValueError("genus must be nonnegative")
    return q + 1 + genus * floor_two_sqrt(q)


def trace_mod_p(curve: LegendreCurve) -> FieldElement:
    """(-theta)^m * H_p(lambda) as a canonical residue; this is congruent to
    the Frobenius trace of the curve mod p."""
    p = curve.mod.p
    m = curve.mod.m
    h = hasse_poly_eval(curve.mod, curve.lam).value
    t = pow(p - curve.theta.value, m, p) * h % p
    return FieldElement(t, curve.mod)


def attains_serre_fp(curve: LegendreCurve) -> bool:
    """Serre-bound attainment over F_p, decided by congruence.  Needs p >= 17,
    where the Hasse interval pins the trace down uniquely."""
    p = curve.mod.p
    if p < SERRE_FP_MIN_PRIME:
        raise HypothesisViolated(f"predicate needs p >= {SERRE_FP_MIN_PRIME}, got {p}")
    return trace_mod_p(curve).value == (-floor_two_sqrt(p)) % p


def maximal_fp2(curve: LegendreCurve) -> bool:
    """Maximality over F_{p^2}; holds iff H_p(lambda) = 0, independent of theta."""
    return hasse_poly_eval(curve.mod, curve.lam).value == 0


def attains_serre_fp3(curve: LegendreCurve) -> bool:
    """Serre-bound attainment over F_{p^3}, for p >= 11: the canonical residue
    h of the trace must satisfy h^3 - 3ph = -floor(2 p sqrt(p)) exactly."""
    p = curve.mod.p
    if p < SERRE_FP3_MIN_PRIME:
        raise HypothesisViolated(f"predicate needs p >= {SERRE_FP3_MIN_PRIME}, got {p}")
    h = trace_mod_p(curve).value
    return h * h * h - 3 * p * h == -floor_two_sqrt(p ** 3)


@dataclass(frozen=True)
class TraceSequence:
    """Frobenius traces a_1, a_2, a_3 of an elliptic curve over F_p, built
    from the exact count n_1 over F_p."""

    p: int
    n1: int
    a: tuple[int, int, int]

    @classmethod
    def from_count(cls, p: int, n1: int) -> "TraceSequence":
        a1 = p + 1 - n1
        if a1 * a1 > 4 * p:
            raise HasseViolation(f"count {n1} violates the Hasse bound for p={p}")
        a2 = a1 * a1 - 2 * p
        a3 = a1 * a2 - p * a1
        return cls(p=p, n1=n1, a=(a1, a2, a3))

    def count(self, j: int) -> int:
        if j not in (1, 2, 3):
            raise ValueError(f"j must be 1, 2 or 3, got {j}")
        return self.p ** j + 1 - self.a[j - 1]


def zeta_lift(n1: int, p: int, j: int) -> int:
    """Exact count over F_{p^j} from the count over F_p, j in {1, 2, 3}."""
    return TraceSequence.from_count(p, n1).count(j)


def legendre_count_fp(curve: LegendreCurve) -> int:
    """Brute-force count of the curve over F_p."""
    return curve_models.count_points(curve.model(), 1).count


def mod4_check(curve: LegendreCurve, j: int) -> bool:
    """The group order over F_{p^j} is divisible by 4; the full 2-torsion is
    rational, so this holds for every valid curve.  Counted over F_p and
    lifted for j > 1."""
    n1 = legendre_count_fp(curve)
    return zeta_lift(n1, curve.mod.p, j) % 4 == 0
