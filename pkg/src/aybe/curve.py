"""Residue/evaluation linear algebra for rank-2 bundles on a nodal curve.

The curve has two rational components glued at 0 and at infinity.  A
rank-2 bundle V^lambda is trivial on the first component, O + O(1) on the
second, glued by the identity at 0 and by S_lambda = [[0, lambda], [1, 0]]
at infinity.  A morphism V^{lambda1} -> V^{lambda2}(y) is encoded by four
coefficients of a matrix-valued section; this module builds the residue
map Res_{y1} and the evaluation map ev_{y2} on that coefficient space as
explicit 4x4 matrices, forms the composite ev_{y2} o Res_{y1}^{-1}
numerically (by a linear solve, never from a transcribed closed form),
and converts composites to ``MatrixTensor2`` via the trace pairing.

Conventions
-----------
* Flat basis order for Mat(2) is (e11, e12, e21, e22); a LinearMap4
  matrix column ``flat(i, j)`` holds the image of e_{ij} (for residue and
  evaluation maps the input space is the section-coefficient space, in
  the documented order (a, b, c, d)).
* The point at infinity is never evaluated numerically: a section's
  value there is read off from the coefficient of the degree-1 part of
  its parametrization.
* The local trivialization of the dualizing sheaf is dz/z; residues and
  golden values depend on this choice.
* Square roots in the "exp-sqrt" trivialization come from principal
  logarithms (f = exp((log(lambda) - log(y)) / 2)), never from raw
  square roots.  Composites depend only on (lambda1/lambda2, y1/y2)
  provided the parameters stay clear of the negative real axis so the
  principal logs do not wrap.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import DomainError
from .solutions import SolutionHandle, custom_handle
from .tensors import MatrixTensor2

__all__ = [
    "BundleParams",
    "LinearMap4",
    "FLAT_BASIS",
    "TRIVIALIZATIONS",
    "residue_map_case1",
    "ev_map_case1",
    "composite_case1",
    "residue_map_case2",
    "ev_map_case2",
    "composite_case2",
    "composite_map",
    "tensor_from_linear_map",
    "linear_map_from_tensor",
    "aybe_handle_from_curve",
]

FLAT_BASIS = ("e11", "e12", "e21", "e22")
TRIVIALIZATIONS = ("exp-sqrt", "constant")

_E12 = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)


@dataclass(frozen=True)
class BundleParams:
    """Gluing constants and marked points for a pair of rank-2 bundles.

    ``case`` records which component the marked points y1, y2 lie on
    (1: the component where both bundles are trivial; 2: the component
    carrying the degree-1 summand).
    """

    lambda1: complex
    lambda2: complex
    y1: complex
    y2: complex
    case: int

    def __post_init__(self) -> None:
        if self.case not in (1, 2):
            raise DomainError(f"case must be 1 or 2, got {self.case!r}")
        for name in ("lambda1", "lambda2", "y1", "y2"):
            value = complex(getattr(self, name))
            if value == 0:
                raise DomainError(f"{name} must be nonzero")
            if not (cmath.isfinite(value.real) and cmath.isfinite(value.imag)):
                raise DomainError(f"{name} must be finite")
        if complex(self.y1) == complex(self.y2):
            raise DomainError("y1 and y2 must be distinct")

    @property
    def lam(self) -> complex:
        """The gluing ratio lambda1/lambda2."""
        return complex(self.lambda1) / complex(self.lambda2)

    @property
    def mu(self) -> complex:
        """The point ratio y1/y2."""
        return complex(self.y1) / complex(self.y2)


@dataclass(frozen=True)
class LinearMap4:
    """A linear map on a 4-dimensional coefficient space, as a 4x4 matrix."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (4, 4):
            raise DomainError(f"expected a 4x4 matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise DomainError("matrix entries must be finite")
        object.__setattr__(self, "matrix", m)

    def apply(self, x: np.ndarray) -> np.ndarray:
        """Apply to a 2x2 matrix (or flat 4-vector); returns a 2x2 matrix."""
        vec = np.asarray(x, dtype=complex).reshape(4)
        return (self.matrix @ vec).reshape(2, 2)

    def rank(self, tol: float = 1e-9) -> int:
        return int(np.linalg.matrix_rank(self.matrix, tol=tol))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.matrix)))

    def __sub__(self, other: "LinearMap4") -> "LinearMap4":
        return LinearMap4(self.matrix - other.matrix)


def _flat(i: int, j: int) -> int:
    return 2 * i + j


def _s_matrix(lam: complex) -> np.ndarray:
    return np.array([[0.0, lam], [1.0, 0.0]], dtype=complex)


def _f_factor(lam: complex, y: complex, trivialization: str) -> complex:
    """Trivialization factor of the degree-1 summand at the point y."""
    if trivialization == "constant":
        return 1.0
    if trivialization == "exp-sqrt":
        return cmath.exp((cmath.log(lam) - cmath.log(y)) / 2.0)
    raise DomainError(
        f"unknown trivialization {trivialization!r}; expected one of {TRIVIALIZATIONS}"
    )


def _frame(raw: np.ndarray, p: BundleParams, y: complex, trivialization: str) -> np.ndarray:
    """Conjugate a raw value into the chosen fiber frames at y."""
    f1 = _f_factor(p.lambda1, y, trivialization)
    f2 = _f_factor(p.lambda2, y, trivialization)
    framed = raw.copy()
    framed[0, 1] = raw[0, 1] / f1
    framed[1, 0] = raw[1, 0] * f2
    return framed


def _columns_to_map(columns) -> LinearMap4:
    return LinearMap4(np.stack([c.reshape(4) for c in columns], axis=1))


# ---------------------------------------------------------------------------
# Case 1: marked points on the component where both bundles are trivial
# ---------------------------------------------------------------------------

def _case1_endpoint_values(k: int) -> Tuple[np.ndarray, np.ndarray]:
    """Values at 0 and infinity of the k-th basis section (a, b, c, d).

    The section is [[a, 0], [b*z0 + c*z1, d]]: the lower-left entry has a
    constant part b and a degree-1 part c, so the value at 0 keeps b and
    the value at infinity keeps c.
    """
    a, b, c, d = (1.0 if k == m else 0.0 for m in range(4))
    at_zero = np.array([[a, 0.0], [b, d]], dtype=complex)
    at_inf = np.array([[a, 0.0], [c, d]], dtype=complex)
    return at_zero, at_inf


def residue_map_case1(p: BundleParams) -> LinearMap4:
    """Residue at y1 on the (a, b, c, d) coefficient space, case 1.

    Built from the endpoint data as S2^{-1} B_inf S1 - B_0 (dz/z
    trivialization); independent of y1 itself.
    """
    s1 = _s_matrix(p.lambda1)
    s2_inv = np.linalg.inv(_s_matrix(p.lambda2))
    cols = []
    for k in range(4):
        b0, binf = _case1_endpoint_values(k)
        cols.append(s2_inv @ binf @ s1 - b0)
    return _columns_to_map(cols)


def ev_map_case1(p: BundleParams) -> LinearMap4:
    """Evaluation at y2 of the section with a first-order pole at y1."""
    s1 = _s_matrix(p.lambda1)
    s2_inv = np.linalg.inv(_s_matrix(p.lambda2))
    w0 = p.y1 / (p.y1 - p.y2)
    w_inf = p.y2 / (p.y2 - p.y1)
    cols = []
    for k in range(4):
        b0, binf = _case1_endpoint_values(k)
        cols.append(w0 * b0 + w_inf * (s2_inv @ binf @ s1))
    return _columns_to_map(cols)


# ---------------------------------------------------------------------------
# Case 2: marked points on the component carrying the degree-1 summand
# ---------------------------------------------------------------------------

def _case2_parts(p: BundleParams, k: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray, complex]:
    """Pole-part data of the k-th basis section (a'', b'', c'', d'').

    A section with a first-order pole at y1 decomposes as
    B'(z)/(z - y1) + z B''(z)/(z - y1) + t(z) e12 with B' constant (its
    value at infinity is forced diagonal), B'' = [[a'', 0],
    [b''*z0 + c''*z1, d'']], and the scalar t fixed by matching the
    endpoint values through the gluings:
        B'_0 + t e12 = -y1 S2^{-1} (B''_inf + t e12) S1.
    Returns (B', B''_at_0_coeffs, B''_at_inf_coeffs, t).
    """
    a2, b2, c2, d2 = (1.0 if k == m else 0.0 for m in range(4))
    lam = p.lam
    y = p.y1
    t = -y * p.lambda1 * c2
    b_prime = np.array(
        [[-y * d2, 0.0], [y * y * lam * c2, -y * lam * a2]], dtype=complex
    )
    at_zero = np.array([[a2, 0.0], [b2, d2]], dtype=complex)
    at_inf = np.array([[a2, 0.0], [c2, d2]], dtype=complex)
    return b_prime, at_zero, at_inf, t


def _case2_affine(at_zero: np.ndarray, at_inf: np.ndarray, z: complex) -> np.ndarray:
    """Value of [[a, 0], [b*z0 + c*z1, d]] at the affine point z."""
    value = at_zero.copy()
    value[1, 0] = at_zero[1, 0] + at_inf[1, 0] * z
    return value


def residue_map_case2(p: BundleParams, trivialization: str = "exp-sqrt") -> LinearMap4:
    """Residue at y1 on the (a'', b'', c'', d'') coefficient space, case 2."""
    y = p.y1
    cols = []
    for k in range(4):
        b_prime, at_zero, at_inf, t = _case2_parts(p, k)
        raw = b_prime / y + _case2_affine(at_zero, at_inf, y) + (t / y) * _E12
        cols.append(_frame(raw, p, y, trivialization))
    return _columns_to_map(cols)


def ev_map_case2(p: BundleParams, trivialization: str = "exp-sqrt") -> LinearMap4:
    """Evaluation at y2 of the case-2 section with a pole at y1."""
    y2 = p.y2
    denom = y2 - p.y1
    cols = []
    for k in range(4):
        b_prime, at_zero, at_inf, t = _case2_parts(p, k)
        raw = (b_prime + y2 * _case2_affine(at_zero, at_inf, y2) + t * _E12) / denom
        cols.append(_frame(raw, p, y2, trivialization))
    return _columns_to_map(cols)


# ---------------------------------------------------------------------------
# composites
# ---------------------------------------------------------------------------

def _compose(ev: LinearMap4, res: LinearMap4, p: BundleParams) -> LinearMap4:
    if abs(p.lam - 1.0) < 1e-12:
        raise DomainError(
            "residue map is singular when lambda1/lambda2 = 1; cannot invert"
        )
    # M = EV @ RES^{-1}, via a solve on the transposed system.
    m = np.linalg.solve(res.matrix.T, ev.matrix.T).T
    return LinearMap4(m)


def composite_case1(p: BundleParams) -> LinearMap4:
    """ev_{y2} o Res_{y1}^{-1} on Mat(2), case 1 (numeric inverse)."""
    return _compose(ev_map_case1(p), residue_map_case1(p), p)


def composite_case2(p: BundleParams, trivialization: str = "exp-sqrt") -> LinearMap4:
    """ev_{y2} o Res_{y1}^{-1} on Mat(2), case 2 (numeric inverse)."""
    return _compose(
        ev_map_case2(p, trivialization), residue_map_case2(p, trivialization), p
    )


def composite_map(p: BundleParams, trivialization: str = "exp-sqrt") -> LinearMap4:
    """Case-dispatching composite ev_{y2} o Res_{y1}^{-1}."""
    if p.case == 1:
        return composite_case1(p)
    return composite_case2(p, trivialization)


# ---------------------------------------------------------------------------
# trace-pairing dictionary between End(Mat(2)) and Mat(2) (x) Mat(2)
# ---------------------------------------------------------------------------

def tensor_from_linear_map(m: LinearMap4) -> MatrixTensor2:
    """The tensor r with M(X) = sum over legs of tr(A_k X) B_k.

    For r = sum A_k (x) B_k the matrix element reads
    coeffs[i, j, k, l] = matrix[flat(k, l), flat(j, i)].
    """
    coeffs = np.zeros((2, 2, 2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    coeffs[i, j, k, l] = m.matrix[_flat(k, l), _flat(j, i)]
    return MatrixTensor2(coeffs)


def linear_map_from_tensor(t: MatrixTensor2) -> LinearMap4:
    """Inverse of :func:`tensor_from_linear_map` (2x2 legs only)."""
    coeffs = t.coeffs
    if coeffs.shape != (2, 2, 2, 2):
        raise DomainError(f"expected 2x2 tensor legs, got shape {coeffs.shape}")
    matrix = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    matrix[_flat(k, l), _flat(j, i)] = coeffs[i, j, k, l]
    return LinearMap4(matrix)


# ---------------------------------------------------------------------------
# two-variable assembly
# ---------------------------------------------------------------------------

def aybe_handle_from_curve(case: int, trivialization: str = "exp-sqrt") -> SolutionHandle:
    """Wrap the composite as a two-variable solution candidate.

    The multiplicative parameters are exponentials of the additive
    variables: lambda = exp(u) (gluing ratio) and mu = exp(v) (point
    ratio), realized with lambda2 = y2 = 1 so the principal logs agree
    with (u, v) for |Im u|, |Im v| < pi.
    """
    if case not in (1, 2):
        raise DomainError(f"case must be 1 or 2, got {case!r}")

    def fn(u: complex, v: complex) -> MatrixTensor2:
        p = BundleParams(
            lambda1=cmath.exp(u), lambda2=1.0, y1=cmath.exp(v), y2=1.0, case=case
        )
        return tensor_from_linear_map(composite_map(p, trivialization))

    return custom_handle(fn, 2)
