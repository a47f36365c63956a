"""Laurent/Taylor analysis of the solution families.

Coefficients of r(u, v) around u = 0 are extracted by trapezoidal contour
quadrature (spectrally accurate for analytic integrands), starting at 64
nodes and doubling until two successive node counts agree.  On top of the
extraction sit:

* the scalar normal form r0(v) = 1/v + c3*v^3 + c5*v^5 + ... and the
  classification invariant C = c5^2 / c3^3,
* the first-order relation r1 = (r0' + r0^2)/2 for scalar families,
* the scalar functional equation in r0 alone ("aux4" below),
* the tensor coefficient identity relating r0 and r1 ("aux5"),
* the degree-2 reconstruction relations that pin r2 in terms of r-1..r1.

The reconstruction relations come from expanding the two-variable identity
in powers of (u, u'); after clearing the denominators u*u'*(u+u') the
coefficient of each monomial must vanish.  With the pole coefficient
normalized to the identity, total degree 3 yields the r0/r1 identity and
total degree 4 yields two independent bilinear relations involving r2,
which is what check_reconstruction_chain verifies.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import DomainError, NonConvergenceError, PoleProximityError
from .solutions import SolutionHandle, eval_aybe, in_domain
from .tensors import MatrixTensor2, MatrixTensor3, from_pair
from .verify import ResidualReport, _make_report

__all__ = [
    "INFINITY",
    "LaurentSeries",
    "ScalarClassification",
    "extract_u_series",
    "scalar_r0",
    "scalar_r0_series",
    "normalize_scalar_r0",
    "classify_scalar",
    "pole_normalized_handle",
    "check_r1_relation",
    "check_aux4",
    "check_aux5",
    "check_reconstruction_chain",
]

INFINITY = float("inf")

Coefficient = Union[complex, MatrixTensor2]


@dataclass(frozen=True)
class LaurentSeries:
    """Contour-extracted coefficients; index k holds the coefficient of
    (variable)^(leading_order + k)."""

    leading_order: int
    coeffs: tuple
    radius: float

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("extraction radius must be positive")

    def coefficient(self, power: int) -> Coefficient:
        idx = power - self.leading_order
        if idx < 0 or idx >= len(self.coeffs):
            raise IndexError(f"power {power} not extracted")
        return self.coeffs[idx]

    @property
    def top_power(self) -> int:
        return self.leading_order + len(self.coeffs) - 1


@dataclass(frozen=True)
class ScalarClassification:
    """Normal-form data of a scalar family.

    ``C`` is c5^2/c3^3, the INFINITY marker when c3 vanishes but c5 does
    not, and None in the rational case where both vanish.
    """

    c3: complex
    c5: complex
    C: Optional[Union[complex, float]]
    family_verdict: str

    def to_dict(self) -> dict:
        if self.C is None:
            c_val = None
        elif self.C == INFINITY:
            c_val = "infinity"
        else:
            c_val = [complex(self.C).real, complex(self.C).imag]
        return {
            "c3": [self.c3.real, self.c3.imag],
            "c5": [self.c5.real, self.c5.imag],
            "C": c_val,
            "family_verdict": self.family_verdict,
        }


# ---------------------------------------------------------------------------
# contour extraction
# ---------------------------------------------------------------------------

_N_START = 64
_N_MAX = 4096
_TRIG_POINT = -20.0 / 49.0


def _contour_coefficients(
    fn: Callable[[complex], np.ndarray],
    powers: Sequence[int],
    radius: float,
    tol: float = 1e-10,
) -> List[np.ndarray]:
    """Coefficients of fn at the given powers, doubling the node count
    until two successive estimates agree to ``tol`` (relative)."""
    previous = None
    n = _N_START
    while n <= _N_MAX:
        theta = 2.0 * math.pi * np.arange(n) / n
        nodes = radius * np.exp(1j * theta)
        values = np.stack([np.asarray(fn(z), dtype=complex) for z in nodes])
        current = []
        for m in powers:
            weights = np.exp(-1j * m * theta) * radius ** (-m) / n
            current.append(np.tensordot(weights, values, axes=(0, 0)))
        if previous is not None:
            # compare successive estimates in the sup metric on the circle
            # (weight c_m by radius^m) so the test is radius-independent
            scale = max(float(np.max(np.abs(values))), 1.0)
            gap = max(
                float(np.max(np.abs(c - p))) * radius ** m
                for m, c, p in zip(powers, current, previous)
            )
            if gap <= tol * scale:
                return current
        previous = current
        n *= 2
    raise NonConvergenceError(
        f"contour quadrature did not settle below {tol} with {_N_MAX} nodes"
    )


def extract_u_series(
    h: SolutionHandle,
    v: complex,
    order: int,
    radius: float = 0.05,
    self_check: bool = False,
) -> LaurentSeries:
    """Laurent coefficients r_{-1}, r_0(v), ..., r_order(v) of u -> r(u, v).

    A preliminary coefficient at u^(-2) guards against a higher-order pole
    or a stray pole inside the circle; with ``self_check`` the extraction
    is repeated at half the radius and compared.
    """
    if order < -1:
        raise ValueError("order must be at least -1")
    n = h.n

    def fn(z: complex) -> np.ndarray:
        return eval_aybe(h, z, v).coeffs

    powers = list(range(-2, order + 1))
    raw = _contour_coefficients(fn, powers, radius)
    scale = max(max(np.max(np.abs(c)) for c in raw), 1.0)
    if np.max(np.abs(raw[0])) > 1e-9 * scale:
        raise PoleProximityError(
            "u-expansion is not a simple pole at 0 on this circle "
            f"(|c_-2| = {np.max(np.abs(raw[0])):.3e})"
        )
    coeffs = raw[1:]
    if self_check:
        again = _contour_coefficients(fn, powers, radius / 2.0)[1:]
        gap = max(np.max(np.abs(c - p)) for c, p in zip(coeffs, again))
        if gap > 1e-9 * scale:
            raise PoleProximityError(
                f"radius self-check failed (gap {gap:.3e}); stray pole inside circle"
            )

    def wrap(c: np.ndarray) -> Coefficient:
        if n == 1:
            return complex(c.reshape(-1)[0])
        return MatrixTensor2(c)

    return LaurentSeries(
        leading_order=-1, coeffs=tuple(wrap(c) for c in coeffs), radius=radius
    )


# ---------------------------------------------------------------------------
# scalar coefficient functions of v
# ---------------------------------------------------------------------------

def _require_scalar(h: SolutionHandle) -> None:
    if h.n != 1:
        raise DomainError(f"{h.family} is not a scalar family")


def _scalar_u_coeff(h: SolutionHandle, v: complex, power: int, radius: float) -> complex:
    def fn(z: complex) -> np.ndarray:
        return eval_aybe(h, z, v).coeffs

    return complex(_contour_coefficients(fn, [power], radius)[0].reshape(-1)[0])


def _u_radius_for(v: complex) -> float:
    return min(0.02, abs(v) / 4.0) if v != 0 else 0.02


def scalar_r0(h: SolutionHandle, v: complex) -> complex:
    """The u^0 coefficient of a scalar family at fixed v."""
    _require_scalar(h)
    return _scalar_u_coeff(h, v, 0, _u_radius_for(v))


def scalar_r1(h: SolutionHandle, v: complex) -> complex:
    """The u^1 coefficient of a scalar family at fixed v."""
    _require_scalar(h)
    return _scalar_u_coeff(h, v, 1, _u_radius_for(v))


def scalar_r0_derivative(h: SolutionHandle, v: complex) -> complex:
    """d/dv of the u^0 coefficient, by a second contour around v."""
    _require_scalar(h)
    rad = min(0.02, abs(v) / 3.0)

    def fn(w: complex) -> np.ndarray:
        return np.array(scalar_r0(h, v + w))

    return complex(_contour_coefficients(fn, [1], rad)[0].reshape(-1)[0])


def scalar_r0_series(
    h: SolutionHandle, order: int, radius: float = 0.05
) -> LaurentSeries:
    """Laurent coefficients of v -> r0(v) around v = 0, powers -1..order."""
    _require_scalar(h)

    def fn(x: complex) -> np.ndarray:
        return np.array(scalar_r0(h, x))

    powers = list(range(-2, order + 1))
    raw = _contour_coefficients(fn, powers, radius)
    scale = max(max(abs(complex(c)) for c in raw), 1.0)
    if abs(complex(raw[0])) > 1e-8 * scale:
        raise PoleProximityError("r0 does not have a simple pole at v = 0")
    return LaurentSeries(
        leading_order=-1,
        coeffs=tuple(complex(c) for c in raw[1:]),
        radius=radius,
    )


# ---------------------------------------------------------------------------
# scalar normal form and classification
# ---------------------------------------------------------------------------

def normalize_scalar_r0(
    h: SolutionHandle, order: int = 5, radius: float = 0.05
) -> Tuple[LaurentSeries, tuple]:
    """Normal form of r0: kill the v^1 coefficient and set the residue to 1.

    The group action r(u,v) -> c*exp(c2*u*v)*r(c*u, c4*v) sends
    r0(v) -> c*r0(c4*v) + rho*c2*v, where rho is the u-pole coefficient.
    We keep c4 = 1 (the invariant C is insensitive to that freedom) and
    return the transformed coefficients together with the rescale
    quadruple (c1, c2, c3, c4) realizing them on the handle.
    """
    _require_scalar(h)
    series = scalar_r0_series(h, order, radius)
    a = {k: series.coefficient(k) for k in range(-1, order + 1)}
    if abs(a[-1]) < 1e-12:
        raise DomainError("r0 has no simple pole at v = 0; cannot normalize")
    rho = _scalar_u_coeff(h, 0.31 + 0.07j, -1, _u_radius_for(0.31))
    c = 1.0 / a[-1]
    c2 = -c * a[1] / rho
    normalized = []
    for k in range(-1, order + 1):
        value = c * a[k]
        if k == 1:
            value += rho * c2
        normalized.append(complex(value))
    c1, old_c2, c3, c4 = h.rescale
    # The transform is r(u,v) -> c*exp(c2*u*v)*r(c*u, v); pushing the u
    # rescale through an existing exp factor multiplies its exponent by c.
    rescale = (c1 * c, c * old_c2 + c2, c3 * c, c4)
    return (
        LaurentSeries(leading_order=-1, coeffs=tuple(normalized), radius=radius),
        rescale,
    )


def classify_scalar(h: SolutionHandle, radius: float = 0.3) -> ScalarClassification:
    """Normal-form invariants (c3, c5) and the classification parameter C.

    The default circle is wide (all shipped scalar families have their
    nearest r0 pole at distance >= 1) because the v^5 coefficient controls
    the invariant and benefits from the extra headroom.
    """
    series, _ = normalize_scalar_r0(h, order=5, radius=radius)
    c3 = series.coefficient(3)
    c5 = series.coefficient(5)
    if abs(c3) < 1e-12:
        if abs(c5) > 1e-10:
            return ScalarClassification(c3, c5, INFINITY, "elliptic-like")
        return ScalarClassification(c3, c5, None, "rational-like")
    big_c = c5 * c5 / (c3 * c3 * c3)
    if abs(big_c - _TRIG_POINT) < 1e-8 * max(1.0, abs(big_c)):
        verdict = "trigonometric-like"
    else:
        verdict = "elliptic-like"
    return ScalarClassification(c3, c5, big_c, verdict)


# ---------------------------------------------------------------------------
# pole normalization for matrix families
# ---------------------------------------------------------------------------

def pole_normalized_handle(
    h: SolutionHandle, v_probe: complex = 0.31 + 0.07j, radius: float = 0.04
) -> SolutionHandle:
    """Rescale so the u-pole coefficient becomes exactly 1 (x) 1.

    The coefficient is extracted numerically (not read from a table) and
    required to be a scalar multiple of 1 (x) 1.
    """
    series = extract_u_series(h, v_probe, -1, radius=radius)
    rm1 = series.coefficient(-1)
    if h.n == 1:
        rho = complex(rm1)
    else:
        rho = complex(rm1.coeffs[0, 0, 0, 0])
        one_one = from_pair(np.eye(h.n), np.eye(h.n))
        gap = (rm1 - one_one * rho).max_abs()
        if gap > 1e-8 * max(1.0, abs(rho)):
            raise DomainError(
                f"u-pole coefficient is not proportional to 1 (x) 1 (gap {gap:.3e})"
            )
    if abs(rho) < 1e-14:
        raise DomainError("u-pole coefficient vanishes; nothing to normalize")
    c1, c2, c3, c4 = h.rescale
    return replace(h, rescale=(c1 / rho, c2, c3, c4))


def _normal_form_handle(h: SolutionHandle) -> SolutionHandle:
    """Scalar handle rescaled to 1/u + 1/v + c3*v^3 + c5*v^5 + ... form.

    Composes the r0 normalization (unit v-residue, no v^1 term) with a
    final u-rescale that makes the u-pole coefficient exactly 1.  The
    Laurent identities below hold in this normal form, not for arbitrary
    members of the rescale orbit: e.g. for raw r0(v) = coth(v/2)/2 the
    aux4 combination is identically 1/4, and the -v/12 correction from
    killing the v^1 term is exactly what cancels it.
    """
    _require_scalar(h)
    _, rescale = normalize_scalar_r0(h)
    hn = replace(h, rescale=rescale)
    rho = _scalar_u_coeff(hn, 0.31 + 0.07j, -1, _u_radius_for(0.31))
    if abs(rho) < 1e-14:
        raise DomainError("u-pole coefficient vanishes; cannot normalize")
    c1, c2, c3, c4 = hn.rescale
    # u -> rho*u on the realized handle: both the base argument and the
    # exp(c2*u*v) exponent see the rescaled u, so c2 scales with c3.  This
    # leaves r0 untouched and divides the u-pole coefficient by rho.
    return replace(hn, rescale=(c1, c2 * rho, c3 * rho, c4))


# ---------------------------------------------------------------------------
# identity checks
# ---------------------------------------------------------------------------

def check_r1_relation(
    h: SolutionHandle, pts: Sequence[complex]
) -> ResidualReport:
    """Residual of r1(v) = (r0'(v) + r0(v)^2) / 2 for scalar families.

    Evaluated in the normal form (see _normal_form_handle); the relation
    is not invariant under the exp(c2*u*v) part of the rescale group.
    """
    hn = _normal_form_handle(h)
    abs_res, rel_res, samples = [], [], []
    for v in pts:
        r0 = scalar_r0(hn, v)
        r1 = scalar_r1(hn, v)
        r0p = scalar_r0_derivative(hn, v)
        expected = 0.5 * (r0p + r0 * r0)
        res = abs(r1 - expected)
        scale = max(abs(r1), abs(expected), 1.0)
        samples.append((v,))
        abs_res.append(res)
        rel_res.append(res / scale)
    return _make_report("r1-relation", samples, abs_res, rel_res, 1e-8, 0)


def check_aux4(h: SolutionHandle, v: complex, vp: complex) -> complex:
    """(r0(v)+r0(v')-r0(v+v'))^2 + r0'(v) + r0'(v') + r0'(v+v').

    Evaluated on the normal-form r0 (unit residue, no v^1 term) — the
    combination shifts by 3*kappa when r0 shifts by kappa*v, so it only
    vanishes in that gauge.
    """
    hn = _normal_form_handle(h)
    points = (v, vp, v + vp)
    r0 = [scalar_r0(hn, x) for x in points]
    r0p = [scalar_r0_derivative(hn, x) for x in points]
    return (r0[0] + r0[1] - r0[2]) ** 2 + r0p[0] + r0p[1] + r0p[2]


def _legged_coeffs(
    h: SolutionHandle, v: complex, vp: complex, order: int, radius: float
) -> dict:
    """r_k tensors at v, v', v+v' embedded into legs 12, 23, 13."""
    n = h.n

    def tensor(c: Coefficient) -> MatrixTensor2:
        if n == 1:
            return MatrixTensor2(np.array(complex(c)).reshape(1, 1, 1, 1))
        return c

    s_v = extract_u_series(h, v, order, radius=radius)
    s_vp = extract_u_series(h, vp, order, radius=radius)
    s_sum = extract_u_series(h, v + vp, order, radius=radius)
    out = {}
    for k in range(0, order + 1):
        out[("12", k)] = tensor(s_v.coefficient(k)).embed("12")
        out[("23", k)] = tensor(s_vp.coefficient(k)).embed("23")
        out[("13", k)] = tensor(s_sum.coefficient(k)).embed("13")
    out["pole"] = (
        tensor(s_v.coefficient(-1)),
        tensor(s_vp.coefficient(-1)),
        tensor(s_sum.coefficient(-1)),
    )
    return out


def check_aux5(
    h: SolutionHandle, v: complex, vp: complex, radius: float = 0.04
) -> MatrixTensor3:
    """Residual of the degree-3 coefficient identity

        r0_12(v) r0_13(v+v') - r0_23(v') r0_12(v) + r0_13(v+v') r0_23(v')
            = r1_12(v) + r1_23(v') + r1_13(v+v')

    on the pole-normalized handle (for n = 1 this is the scalar identity
    with all leg embeddings trivial)."""
    hn = pole_normalized_handle(h)
    c = _legged_coeffs(hn, v, vp, 1, radius)
    lhs = (
        c[("12", 0)].mul(c[("13", 0)])
        - c[("23", 0)].mul(c[("12", 0)])
        + c[("13", 0)].mul(c[("23", 0)])
    )
    rhs = c[("12", 1)] + c[("23", 1)] + c[("13", 1)]
    return lhs - rhs


def reconstruction_residuals(
    h: SolutionHandle, v: complex, vp: complex, radius: float = 0.04
) -> Tuple[MatrixTensor3, MatrixTensor3, MatrixTensor3]:
    """The three degree-4 coefficient relations pinning r2.

    Expanding the two-variable identity with the pole coefficient equal to
    the identity and clearing u*u'*(u+u'), the coefficients of u^3*u',
    u*u'^3 and u^2*u'^2 give (legs: A=12 at v, B=13 at v+v', C=23 at v'):

        2*B2 + C2 + A2 = A0*B1 - C1*A0 - C0*A1 + B1*C0
        A2 - B2 - 2*C2 = -(A0*B1 - A1*B0 - C1*A0 + B0*C1)
        3*B2 + 3*C2    = 2*A0*B1 - A1*B0 - 2*C1*A0 - C0*A1 + B1*C0 + B0*C1

    where the third is the sum of the first two.  All three residuals
    (LHS - RHS) are returned.
    """
    hn = pole_normalized_handle(h)
    c = _legged_coeffs(hn, v, vp, 2, radius)
    residuals, _ = _reconstruction_from_coeffs(c)
    return residuals


def _reconstruction_from_coeffs(c: dict) -> Tuple[tuple, float]:
    a0, a1, a2 = c[("12", 0)], c[("12", 1)], c[("12", 2)]
    b0, b1, b2 = c[("13", 0)], c[("13", 1)], c[("13", 2)]
    c0, c1, c2 = c[("23", 0)], c[("23", 1)], c[("23", 2)]

    lhs1 = b2 * 2.0 + c2 + a2
    rhs1 = a0.mul(b1) - c1.mul(a0) - c0.mul(a1) + b1.mul(c0)
    lhs2 = a2 - b2 - c2 * 2.0
    rhs2 = -(a0.mul(b1) - a1.mul(b0) - c1.mul(a0) + b0.mul(c1))
    lhs3 = (b2 + c2) * 3.0
    rhs3 = (
        a0.mul(b1) * 2.0
        - a1.mul(b0)
        - c1.mul(a0) * 2.0
        - c0.mul(a1)
        + b1.mul(c0)
        + b0.mul(c1)
    )
    scale = max(rhs1.frobenius(), rhs3.frobenius(), a2.frobenius(), 1.0)
    return (lhs1 - rhs1, lhs2 - rhs2, lhs3 - rhs3), scale


def check_reconstruction_chain(
    h: SolutionHandle,
    pts: Sequence[Tuple[complex, complex]],
    tolerance: float = 1e-6,
    radius: float = 0.04,
) -> ResidualReport:
    """Evaluate the degree-2 reconstruction relations at (v, v') pairs."""
    hn = pole_normalized_handle(h)
    abs_res, rel_res, samples = [], [], []
    for v, vp in pts:
        coeffs = _legged_coeffs(hn, v, vp, 2, radius)
        residuals, scale = _reconstruction_from_coeffs(coeffs)
        worst = max(res.max_abs() for res in residuals)
        samples.append((v, vp))
        abs_res.append(worst)
        rel_res.append(worst / scale)
    return _make_report("reconstruction", samples, abs_res, rel_res, tolerance, 0)
