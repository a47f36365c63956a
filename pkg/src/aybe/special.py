"""Elliptic and modular special functions on the lattice Z + Z*tau.

Everything in this module is built out of the odd Jacobi theta function

    theta11(u, tau) = sum_{n in Z} (-1)^n exp(pi*i*(n+1/2)^2*tau
                                              + 2*pi*i*(n+1/2)*u)

together with the Eisenstein q-series

    G_k(tau) = -B_k/(2k) + sum_{m,n>=1} m^(k-1) * q^(m*n),  q = exp(2*pi*i*tau).

The Kronecker function

    F(u, v) = theta11'(0) / (2*pi*i) * theta11(u+v) / (theta11(u)*theta11(v))

and its twists by a rational characteristic (p, q),

    F_pq(u, v) = exp(2*pi*i*(p*q*tau + p*v + q*u)) * F(u + p*tau, v + q*tau),

are the scalar building blocks of every solution family in this package.
The Weierstrass functions are evaluated through the logarithmic derivative
of theta11,

    zeta(x) = eta1*x + theta11'(x)/theta11(x),
    wp(x)   = -zeta'(x),
    eta1    = -theta11'''(0) / (3*theta11'(0)),     eta2 = eta1*tau - 2*pi*i,

which converges spectrally fast for any tau in the upper half plane.  Slow
defining-series implementations used to cross-check all of these paths live
in ``aybe.bruteforce``.

Inputs are reduced modulo the lattice before series evaluation (the exact
quasi-periodicity factors are restored afterwards), so accuracy is uniform
across the plane.  Evaluation within ``POLE_GUARD`` of a pole raises
:class:`~aybe.errors.PoleProximityError`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

import numpy as np

from .errors import PoleProximityError

TWO_PI_I = 2j * math.pi

#: minimum allowed (lattice-reduced) distance from a pole
POLE_GUARD = 1e-6

#: largest characteristic denominator accepted by :class:`Characteristic`
MAX_DENOMINATOR = 64

#: Bernoulli numbers used by the Eisenstein series, kept exact so the test
#: suite can confirm them against the defining recurrence.
BERNOULLI = {
    0: Fraction(1),
    1: Fraction(-1, 2),
    2: Fraction(1, 6),
    3: Fraction(0),
    4: Fraction(-1, 30),
    5: Fraction(0),
    6: Fraction(1, 42),
}


# ---------------------------------------------------------------------------
# lattice bookkeeping


def split_lattice(x: complex, tau: complex) -> tuple[complex, int, int]:
    """Write ``x = x0 + a + b*tau`` with ``x0`` in the centred unit cell.

    Returns ``(x0, a, b)`` where ``a``, ``b`` are integers and the real
    coordinates of ``x0`` with respect to the basis ``(1, tau)`` both lie in
    ``[-1/2, 1/2]``.
    """
    beta = x.imag / tau.imag
    alpha = x.real - beta * tau.real
    a = round(alpha)
    b = round(beta)
    return x - a - b * tau, a, b


def lattice_distance(x: complex, tau: complex) -> float:
    """Distance from ``x`` to the nearest point of Z + Z*tau."""
    x0, _, _ = split_lattice(x, tau)
    best = abs(x0)
    for da in (-1, 0, 1):
        for db in (-1, 0, 1):
            best = min(best, abs(x0 - da - db * tau))
    return best


def _check_finite(*values: complex) -> None:
    for z in values:
        if not (cmath.isfinite(complex(z))):
            raise ValueError(f"non-finite input {z!r}")


# ---------------------------------------------------------------------------
# theta series core


def _theta_cutoff(tau: complex) -> int:
    # |n|-range needed for a relative tail below ~1e-18 after reduction
    c = (18.0 * math.log(10.0) + 4.0) / (math.pi * tau.imag)
    x = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * c))
    return int(math.ceil(x)) + 3


@lru_cache(maxsize=256)
def _theta_index_range(tau: complex) -> np.ndarray:
    n = _theta_cutoff(tau)
    return np.arange(-n, n, dtype=float)


@lru_cache(maxsize=1 << 16)
def _theta_raw(u0: complex, tau: complex, orders: tuple[int, ...]) -> tuple[complex, ...]:
    """Termwise u-derivatives of theta11 at a lattice-reduced point ``u0``."""
    n = _theta_index_range(tau)
    half = n + 0.5
    signs = np.where(np.mod(n, 2.0) == 0.0, 1.0, -1.0)
    base = signs * np.exp(1j * math.pi * half * half * tau + TWO_PI_I * half * u0)
    weight = TWO_PI_I * half
    out = []
    for k in orders:
        out.append(complex(np.sum(base * weight**k)))
    return tuple(out)


def _quasi_factor(u0: complex, tau: complex, a: int, b: int) -> complex:
    # theta11(u0 + a + b*tau) = (-1)^(a+b) exp(-pi*i*b^2*tau - 2*pi*i*b*u0) theta11(u0)
    sign = -1.0 if (a + b) % 2 else 1.0
    return sign * cmath.exp(-1j * math.pi * b * b * tau - TWO_PI_I * b * u0)


def theta11(u: complex, m: "ModularParam") -> complex:
    """Odd Jacobi theta function theta11(u, tau)."""
    _check_finite(u)
    u0, a, b = split_lattice(u, m.tau)
    (val,) = _theta_raw(u0, m.tau, (0,))
    return _quasi_factor(u0, m.tau, a, b) * val


def theta11_derivative_at_zero(m: "ModularParam", order: int = 1) -> complex:
    """Termwise u-derivative of theta11 at u = 0 (orders 1 and 3 cached)."""
    if order == 1:
        return m.theta_prime0
    if order == 3:
        return m.theta_triple0
    (val,) = _theta_raw(0.0, m.tau, (order,))
    return val


# ---------------------------------------------------------------------------
# modular parameter bundle


@dataclass(frozen=True, eq=False)
class ModularParam:
    """Lattice constants for Z + Z*tau, precomputed once per tau.

    ``eta1`` is obtained from the theta route
    ``eta1 = -theta11'''(0)/(3*theta11'(0))`` and ``eta2`` from the Legendre
    relation ``eta1*tau - eta2 = 2*pi*i``; ``eisenstein`` maps weight k in
    {2, 4, 6} to G_k(tau).
    """

    tau: complex
    q: complex
    eta1: complex
    eta2: complex
    eisenstein: Mapping[int, complex]
    theta_prime0: complex
    theta_triple0: complex

    @classmethod
    def from_tau(cls, tau: complex) -> "ModularParam":
        tau = complex(tau)
        _check_finite(tau)
        if tau.imag <= 0.0:
            raise ValueError(f"tau must lie in the upper half plane, got {tau!r}")
        q = cmath.exp(TWO_PI_I * tau)
        tp, tppp = _theta_raw(0.0, tau, (1, 3))
        eta1 = -tppp / (3.0 * tp)
        eta2 = eta1 * tau - TWO_PI_I
        eis = {k: _eisenstein_series(k, q) for k in (2, 4, 6)}
        return cls(tau=tau, q=q, eta1=eta1, eta2=eta2, eisenstein=eis,
                   theta_prime0=tp, theta_triple0=tppp)


@lru_cache(maxsize=512)
def modular_param(tau: complex) -> ModularParam:
    """Cached :meth:`ModularParam.from_tau`."""
    return ModularParam.from_tau(complex(tau))


def _eisenstein_series(k: int, q: complex) -> complex:
    b = float(BERNOULLI[k])
    total = complex(-b / (2 * k))
    aq = abs(q)
    if aq == 0.0:
        return total
    m_max = max(1, math.ceil(-18.0 * math.log(10.0) / math.log(aq)))
    for mm in range(1, m_max + 1):
        qm = q**mm
        coeff = mm ** (k - 1)
        acc = 0.0 + 0.0j
        power = 1.0 + 0.0j
        for _ in range(m_max // mm):
            power *= qm
            acc += power
        total += coeff * acc
    return total


def eisenstein_G(k: int, m: ModularParam) -> complex:
    """Eisenstein series G_k(tau) for k in {2, 4, 6}."""
    try:
        return m.eisenstein[k]
    except KeyError:
        raise ValueError(f"Eisenstein weight must be one of 2, 4, 6, got {k}") from None


def j_invariant(m: ModularParam) -> complex:
    """Classical j-invariant, normalised so that j(i) = 1728.

    Computed from g2 = 20*(2*pi)^4*G4 and g3 = -(7/3)*(2*pi)^6*G6 as
    j = 1728*g2^3 / (g2^3 - 27*g3^2).
    """
    g2 = 20.0 * (2.0 * math.pi) ** 4 * m.eisenstein[4]
    g3 = -(7.0 / 3.0) * (2.0 * math.pi) ** 6 * m.eisenstein[6]
    num = g2**3
    disc = num - 27.0 * g3**2
    if abs(disc) <= 1e-30 * max(abs(num), abs(27.0 * g3**2), 1e-300):
        raise ValueError("discriminant vanishes numerically; tau too extreme")
    return 1728.0 * num / disc


# ---------------------------------------------------------------------------
# rational characteristics


@dataclass(frozen=True)
class Characteristic:
    """A rational characteristic pair (p, q), stored in lowest terms."""

    p: Fraction
    q: Fraction

    def __post_init__(self) -> None:
        for r in (self.p, self.q):
            if not isinstance(r, Fraction):
                raise TypeError("characteristic entries must be Fractions")
            if r.denominator > MAX_DENOMINATOR:
                raise ValueError(
                    f"characteristic denominator {r.denominator} exceeds "
                    f"the supported bound {MAX_DENOMINATOR}"
                )

    @classmethod
    def of(cls, p, q) -> "Characteristic":
        return cls(Fraction(p), Fraction(q))

    def reduced(self) -> "Characteristic":
        """Representative with both entries in [0, 1)."""
        return Characteristic(self.p - (self.p // 1), self.q - (self.q // 1))


# ---------------------------------------------------------------------------
# Kronecker function and characteristic twists


def kronecker_F(u: complex, v: complex, m: ModularParam, *, guard: float = POLE_GUARD) -> complex:
    """Kronecker's elliptic function F(u, v) on the lattice of ``m``.

    Raises :class:`PoleProximityError` when u, v or u+v falls within
    ``guard`` of a lattice point (u+v on the lattice is a zero rather than a
    pole, but is excluded too so callers always sit at regular, nonzero
    values).
    """
    _check_finite(u, v)
    for label, z in (("u", u), ("v", v), ("u+v", u + v)):
        if lattice_distance(z, m.tau) < guard:
            raise PoleProximityError(
                f"{label} = {z!r} is within {guard} of the lattice for tau = {m.tau!r}"
            )
    tu = theta11(u, m)
    tv = theta11(v, m)
    tuv = theta11(u + v, m)
    return m.theta_prime0 / TWO_PI_I * tuv / (tu * tv)


def kronecker_F_char(
    char: Characteristic,
    u: complex,
    v: complex,
    m: ModularParam,
    *,
    guard: float = POLE_GUARD,
) -> complex:
    """Characteristic twist F_pq(u, v); exactly 1-periodic in p and in q."""
    red = char.reduced()
    p = float(red.p)
    q = float(red.q)
    shift_u = u + p * m.tau
    shift_v = v + q * m.tau
    prefactor = cmath.exp(TWO_PI_I * (p * q * m.tau + p * v + q * u))
    return prefactor * kronecker_F(shift_u, shift_v, m, guard=guard)


def kronecker_weierstrass_limit(y: complex, m: ModularParam, x: complex = 1e-5) -> complex:
    """Residual of the small-x limit [2*pi*i*F(x, y) - 1/x] -> zeta(y) - y*eta1."""
    lhs = TWO_PI_I * kronecker_F(x, y, m) - 1.0 / x
    rhs = weierstrass_zeta(y, m) - y * m.eta1
    return lhs - rhs


# ---------------------------------------------------------------------------
# Weierstrass functions


def weierstrass_zeta(x: complex, m: ModularParam, *, guard: float = POLE_GUARD) -> complex:
    """Weierstrass zeta function for the lattice Z + Z*tau."""
    _check_finite(x)
    x0, a, b = split_lattice(x, m.tau)
    if lattice_distance(x, m.tau) < guard:
        raise PoleProximityError(f"x = {x!r} is within {guard} of the lattice")
    t0, t1 = _theta_raw(x0, m.tau, (0, 1))
    return m.eta1 * x0 + t1 / t0 + a * m.eta1 + b * m.eta2


def weierstrass_p(x: complex, m: ModularParam, *, guard: float = POLE_GUARD) -> complex:
    """Weierstrass elliptic function wp(x) = -zeta'(x); doubly periodic."""
    _check_finite(x)
    x0, _, _ = split_lattice(x, m.tau)
    if lattice_distance(x, m.tau) < guard:
        raise PoleProximityError(f"x = {x!r} is within {guard} of the lattice")
    t0, t1, t2 = _theta_raw(x0, m.tau, (0, 1, 2))
    ratio = t1 / t0
    return -m.eta1 - t2 / t0 + ratio * ratio


def zeta_char(char: Characteristic, x: complex, m: ModularParam, *, guard: float = POLE_GUARD) -> complex:
    """Characteristic-shifted zeta: zeta(x + r1 + r2*tau) - r1*eta1 - r2*eta2.

    Exactly 1-periodic in both characteristic entries.
    """
    red = char.reduced()
    r1 = float(red.p)
    r2 = float(red.q)
    return weierstrass_zeta(x + r1 + r2 * m.tau, m, guard=guard) - r1 * m.eta1 - r2 * m.eta2


# ---------------------------------------------------------------------------
# distribution / isogeny identities (returned as residuals)


def identity_zeta_distribution(d: int, x: complex, m: ModularParam) -> complex:
    """zeta(d*x, d*tau) - (1/d)*sum_i zeta_{i/d,0}(x, tau)
    - (x/d)*sum_{i != 0} wp(i/d, tau)."""
    if d < 1:
        raise ValueError("d must be a positive integer")
    md = modular_param(d * m.tau)
    lhs = weierstrass_zeta(d * x, md)
    rhs = sum(
        zeta_char(Characteristic.of(Fraction(i, d), 0), x, m) for i in range(d)
    ) / d
    rhs += x / d * sum(weierstrass_p(i / d, m) for i in range(1, d))
    return lhs - rhs


def identity_zeta_distribution_char(d: int, j: int, x: complex, m: ModularParam) -> complex:
    """Characteristic version: zeta_{0,j/d}(d*x, d*tau) vs the same average
    with second characteristic j/d on every summand."""
    if d < 1:
        raise ValueError("d must be a positive integer")
    md = modular_param(d * m.tau)
    lhs = zeta_char(Characteristic.of(0, Fraction(j, d)), d * x, md)
    rhs = sum(
        zeta_char(Characteristic.of(Fraction(i, d), Fraction(j, d)), x, m)
        for i in range(d)
    ) / d
    rhs += x / d * sum(weierstrass_p(i / d, m) for i in range(1, d))
    return lhs - rhs


def identity_p_distribution(d: int, x: complex, m: ModularParam) -> complex:
    """wp(d*x, d*tau) - (1/d^2)*sum_i wp(x + i/d, tau)
    + (1/d^2)*sum_{i != 0} wp(i/d, tau)."""
    if d < 1:
        raise ValueError("d must be a positive integer")
    md = modular_param(d * m.tau)
    lhs = weierstrass_p(d * x, md)
    rhs = sum(weierstrass_p(x + i / d, m) for i in range(d)) / d**2
    rhs -= sum(weierstrass_p(i / d, m) for i in range(1, d)) / d**2
    return lhs - rhs


def identity_eta2_isogeny(d: int, m: ModularParam) -> complex:
    """eta2(d*tau) - eta2(tau) - (tau/d)*sum_{i != 0} wp(i/d, tau)."""
    if d < 1:
        raise ValueError("d must be a positive integer")
    md = modular_param(d * m.tau)
    correction = m.tau / d * sum(weierstrass_p(i / d, m) for i in range(1, d))
    return md.eta2 - m.eta2 - correction


def identity_F_zeta(d: int, k: int, ell: int, x: complex, m: ModularParam) -> complex:
    """d*2*pi*i*F_{k/d, l/d}(0, d*x, d*tau) minus its zeta_char expansion.

    The expansion reads sum_j exp(-2*pi*i*k*j/d) * [zeta_{j/d, l/d}(x, tau)
    - zeta_{j/d, 0}(-k*tau/d, tau)] and requires k not divisible by d (the
    left side has a pole otherwise).  The factor d in front of F is pinned
    by the pole data: in x, the left side has residue exp(2*pi*i*k*m/d)/d
    at x = m/d - l*tau/d before scaling, while the expansion's zeta terms
    contribute residue exp(2*pi*i*k*m/d) there; without the factor the two
    sides differ by a non-constant doubly periodic function.
    """
    if d < 1:
        raise ValueError("d must be a positive integer")
    if k % d == 0:
        raise ValueError("k must not be divisible by d")
    md = modular_param(d * m.tau)
    char = Characteristic.of(Fraction(k, d), Fraction(ell, d))
    lhs = d * TWO_PI_I * kronecker_F_char(char, 0.0, d * x, md)
    rhs = 0.0 + 0.0j
    for jj in range(d):
        phase = cmath.exp(-TWO_PI_I * k * jj / d)
        term = zeta_char(Characteristic.of(Fraction(jj, d), Fraction(ell, d)), x, m)
        term -= zeta_char(Characteristic.of(Fraction(jj, d), 0), -k * m.tau / d, m)
        rhs += phase * term
    return lhs - rhs
