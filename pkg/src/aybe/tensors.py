"""Dense tensor algebra for two- and three-leg operators on C^n.

A two-leg tensor stores coefficients r[i, j, k, l] for the element
``sum r[i,j,k,l] e_ij (x) e_kl`` of End(C^n) (x) End(C^n); a three-leg
tensor extends this with one more matrix factor.  Products contract the
matrix units factorwise: (e_ab)(e_cd) = delta_bc e_ad on every leg.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

import numpy as np

__all__ = [
    "MatrixTensor2",
    "MatrixTensor3",
    "from_pair",
    "identity2",
]


def _as_coeffs(data: np.ndarray, legs: int) -> np.ndarray:
    arr = np.asarray(data, dtype=complex)
    if arr.ndim != 2 * legs:
        raise ValueError(f"expected a {2 * legs}-dimensional array, got {arr.ndim}")
    n = arr.shape[0]
    if arr.shape != (n,) * (2 * legs):
        raise ValueError(f"expected shape {(n,) * (2 * legs)}, got {arr.shape}")
    return arr


@dataclass(frozen=True)
class MatrixTensor2:
    """Element of End(C^n) (x) End(C^n) with dense coefficients."""

    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _as_coeffs(self.coeffs, 2))

    @property
    def n(self) -> int:
        return self.coeffs.shape[0]

    # --- algebra -----------------------------------------------------
    def __add__(self, other: "MatrixTensor2") -> "MatrixTensor2":
        return MatrixTensor2(self.coeffs + other.coeffs)

    def __sub__(self, other: "MatrixTensor2") -> "MatrixTensor2":
        return MatrixTensor2(self.coeffs - other.coeffs)

    def __neg__(self) -> "MatrixTensor2":
        return MatrixTensor2(-self.coeffs)

    def __mul__(self, scalar: complex) -> "MatrixTensor2":
        return MatrixTensor2(self.coeffs * scalar)

    __rmul__ = __mul__

    def mul(self, other: "MatrixTensor2") -> "MatrixTensor2":
        """Factorwise product: both matrix legs multiply independently."""
        out = np.einsum("iakb,ajbl->ijkl", self.coeffs, other.coeffs)
        return MatrixTensor2(out)

    def swap_legs(self) -> "MatrixTensor2":
        """Exchange the two tensor factors (r -> r^21)."""
        return MatrixTensor2(self.coeffs.transpose(2, 3, 0, 1))

    def sandwich(
        self,
        g1: np.ndarray,
        g2: np.ndarray,
        h1: np.ndarray,
        h2: np.ndarray,
    ) -> "MatrixTensor2":
        """Apply (g1 (x) g2) . r . (h1 (x) h2)^-1."""
        h1i = np.linalg.inv(np.asarray(h1, dtype=complex))
        h2i = np.linalg.inv(np.asarray(h2, dtype=complex))
        out = np.einsum(
            "ia,kc,abcd,bj,dl->ijkl",
            np.asarray(g1, dtype=complex),
            np.asarray(g2, dtype=complex),
            self.coeffs,
            h1i,
            h2i,
        )
        return MatrixTensor2(out)

    def conjugate_legs(self, g1: np.ndarray, g2: np.ndarray) -> "MatrixTensor2":
        """Apply (g1 (x) g2) . r . (g1 (x) g2)^-1."""
        return self.sandwich(g1, g2, g1, g2)

    # --- projections and maps ----------------------------------------
    def project_sl(self) -> "MatrixTensor2":
        """Project both legs onto trace-free matrices (sl_n (x) sl_n part)."""
        n = self.n
        c = self.coeffs
        eye = np.eye(n)
        tr1 = np.einsum("iikl->kl", c)
        tr2 = np.einsum("ijkk->ij", c)
        tr12 = np.einsum("iikk->", c)
        out = (
            c
            - np.einsum("ij,kl->ijkl", eye, tr1) / n
            - np.einsum("ij,kl->ijkl", tr2, eye) / n
            + tr12 * np.einsum("ij,kl->ijkl", eye, eye) / n**2
        )
        return MatrixTensor2(out)

    def as_map(self) -> np.ndarray:
        """Matrix of the induced linear map on n x n matrices.

        Column index flattens the input matrix unit e_ji (row j, col i);
        the map sends M to sum_{i j} r[i,j,:,:] M[j,i] read off the second
        leg, so entry [(k,l), (i,j)] multiplies M[i,j].
        """
        n = self.n
        # Phi(M)_{k l} = sum_{i j} coeffs[i, j, k, l] M[j, i]
        mat = self.coeffs.transpose(2, 3, 1, 0).reshape(n * n, n * n)
        return mat

    def rank_as_map(self) -> int:
        """Numerical rank of the induced map End(C^n) -> End(C^n)."""
        mat = self.as_map()
        sigma = np.linalg.svd(mat, compute_uv=False)
        if sigma.size == 0 or sigma[0] == 0.0:
            return 0
        cutoff = self.n**2 * np.finfo(float).eps * sigma[0]
        return int(np.count_nonzero(sigma > cutoff))

    def frobenius(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    # --- embeddings ---------------------------------------------------
    def embed(self, legs: str) -> "MatrixTensor3":
        """Embed into three legs; ``legs`` names the two occupied slots."""
        n = self.n
        eye = np.eye(n, dtype=complex)
        if legs == "12":
            out = np.einsum("ijkl,mn->ijklmn", self.coeffs, eye)
        elif legs == "13":
            out = np.einsum("ijkl,mn->ijmnkl", self.coeffs, eye)
        elif legs == "23":
            out = np.einsum("ijkl,mn->mnijkl", self.coeffs, eye)
        else:
            raise ValueError(f"legs must be '12', '13' or '23', got {legs!r}")
        return MatrixTensor3(out)

    # --- serialization -------------------------------------------------
    def to_dict(self) -> dict:
        flat = self.coeffs.reshape(-1)
        return {
            "n": self.n,
            "legs": 2,
            "coeffs": [[z.real, z.imag] for z in flat],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MatrixTensor2":
        n = int(data["n"])
        if data.get("legs", 2) != 2:
            raise ValueError("not a two-leg tensor record")
        flat = np.array([complex(re, im) for re, im in data["coeffs"]])
        return cls(flat.reshape((n,) * 4))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "MatrixTensor2":
        return cls.from_dict(json.loads(text))

    @classmethod
    def zeros(cls, n: int) -> "MatrixTensor2":
        return cls(np.zeros((n,) * 4, dtype=complex))


@dataclass(frozen=True)
class MatrixTensor3:
    """Element of End(C^n)^(x3) with dense coefficients."""

    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _as_coeffs(self.coeffs, 3))

    @property
    def n(self) -> int:
        return self.coeffs.shape[0]

    def __add__(self, other: "MatrixTensor3") -> "MatrixTensor3":
        return MatrixTensor3(self.coeffs + other.coeffs)

    def __sub__(self, other: "MatrixTensor3") -> "MatrixTensor3":
        return MatrixTensor3(self.coeffs - other.coeffs)

    def __neg__(self) -> "MatrixTensor3":
        return MatrixTensor3(-self.coeffs)

    def __mul__(self, scalar: complex) -> "MatrixTensor3":
        return MatrixTensor3(self.coeffs * scalar)

    __rmul__ = __mul__

    def mul(self, other: "MatrixTensor3") -> "MatrixTensor3":
        out = np.einsum("iakbmc,ajblcn->ijklmn", self.coeffs, other.coeffs)
        return MatrixTensor3(out)

    def frobenius(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    @classmethod
    def zeros(cls, n: int) -> "MatrixTensor3":
        return cls(np.zeros((n,) * 6, dtype=complex))


def from_pair(a: np.ndarray, b: np.ndarray) -> MatrixTensor2:
    """Pure tensor a (x) b of two n x n matrices."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    return MatrixTensor2(np.einsum("ij,kl->ijkl", a, b))


def identity2(n: int) -> MatrixTensor2:
    """The tensor 1 (x) 1."""
    eye = np.eye(n, dtype=complex)
    return from_pair(eye, eye)


def matrix_unit(n: int, i: int, j: int) -> np.ndarray:
    m = np.zeros((n, n), dtype=complex)
    m[i, j] = 1.0
    return m
