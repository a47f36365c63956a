"""Laurent data of scalar families: extraction, classification, identities."""

import cmath
import math

import numpy as np
import pytest

from aybe.errors import DomainError
from aybe.series import (
    INFINITY,
    check_aux4,
    check_aux5,
    check_r1_relation,
    check_reconstruction_chain,
    classify_scalar,
    extract_u_series,
    normalize_scalar_r0,
    scalar_r0,
    scalar_r0_series,
    scalar_r1,
)
from aybe.solutions import (
    custom_handle,
    elliptic_aybe,
    scalar_kronecker,
    scalar_rational,
    scalar_trig,
    trig_aybe,
)
from aybe.special import modular_param, weierstrass_zeta
from aybe.tensors import MatrixTensor2

TWO_PI_I = 2j * math.pi
TRIG_POINT = -20.0 / 49.0

SCALARS = [
    scalar_kronecker(1j),
    scalar_kronecker(2j),
    scalar_trig(),
    scalar_rational(1.0, 1.0),
    scalar_rational(2.0, 3.0),
]


# ---------------------------------------------------------------------------
# extraction
# ---------------------------------------------------------------------------

def test_extract_radius_independence():
    h = scalar_kronecker(1j)
    s_a = extract_u_series(h, 0.31, 2, radius=0.05)
    s_b = extract_u_series(h, 0.31, 2, radius=0.025)
    gaps = [
        abs(complex(s_a.coefficient(k)) - complex(s_b.coefficient(k)))
        for k in range(-1, 3)
    ]
    assert max(gaps) < 1e-9


def test_scalar_r0_closed_forms(m_square):
    v = 0.37 - 0.12j
    assert abs(
        scalar_r0(scalar_trig(), v) - 0.5 / cmath.tanh(v / 2.0)
    ) < 1e-11
    zeta = weierstrass_zeta(v, m_square)
    expected = (zeta - v * m_square.eta1) / TWO_PI_I
    assert abs(scalar_r0(scalar_kronecker(1j), v) - expected) < 1e-11
    assert abs(scalar_r0(scalar_rational(2.0, -0.7j), v) - (-0.7j) / v) < 1e-11


def test_scalar_r1_rational_vanishes():
    for v in (0.3, 0.21 + 0.13j):
        assert abs(scalar_r1(scalar_rational(1.0, 1.0), v)) < 1e-11
        assert abs(scalar_r1(scalar_rational(2.0, 3.0), v)) < 1e-11


def test_matrix_families_rejected_by_scalar_extraction():
    with pytest.raises(DomainError):
        scalar_r0(elliptic_aybe(2, 1, 1j), 0.3)


def test_extract_u_series_matrix_pole(m_square):
    h = elliptic_aybe(2, 1, 1j)
    series = extract_u_series(h, 0.29, 1, radius=0.04)
    pole = series.coefficient(-1)
    assert isinstance(pole, MatrixTensor2)
    off = pole.coeffs[0, 1, 1, 0]
    assert abs(off) < 1e-10  # the u-pole is a multiple of 1 (x) 1


def test_normalize_scalar_r0_postconditions():
    from dataclasses import replace

    for h in (scalar_kronecker(1j), scalar_trig(), scalar_rational(2.0, 3.0)):
        _, rescale = normalize_scalar_r0(h)
        hn = replace(h, rescale=rescale)
        series = scalar_r0_series(hn, 1, radius=0.05)
        assert abs(series.coefficient(-1) - 1.0) < 1e-10
        assert abs(series.coefficient(1)) < 1e-10


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

def test_classify_kronecker_square_lattice():
    # G6 vanishes on the square lattice, so C does too.
    result = classify_scalar(scalar_kronecker(1j))
    assert result.family_verdict == "elliptic-like"
    assert abs(result.c3 + 3.151212002153904) < 1e-8
    assert abs(result.C) < 1e-12


def test_classify_kronecker_tall_lattice():
    result = classify_scalar(scalar_kronecker(2j))
    assert result.family_verdict == "elliptic-like"
    assert abs(result.c3 + 2.16645825148081) < 1e-8
    assert abs(result.c5 + 2.0311095062610804) < 1e-8
    assert abs(result.C + 0.40570999248687883) < 1e-9


def test_classify_trig():
    result = classify_scalar(scalar_trig(), radius=1.5)
    assert result.family_verdict == "trigonometric-like"
    assert abs(result.c3 + 1.0 / 720.0) < 1e-12
    assert abs(result.c5 - 1.0 / 30240.0) < 1e-12
    assert abs(result.C - TRIG_POINT) < 1e-10


def test_classify_rational():
    for h in (scalar_rational(1.0, 1.0), scalar_rational(2.0, 3.0)):
        result = classify_scalar(h)
        assert result.family_verdict == "rational-like"
        assert result.C is None
        assert abs(result.c3) < 1e-10
        assert abs(result.c5) < 1e-10


def test_classify_infinity_marker():
    # c3 = 0 with c5 != 0 marks the degenerate direction.
    def fn(u, v):
        val = 1.0 / u + 1.0 / v + 0.3 * v**5
        return MatrixTensor2(np.array(complex(val)).reshape(1, 1, 1, 1))

    result = classify_scalar(custom_handle(fn, 1))
    assert result.C == INFINITY


def test_classify_rejects_matrix_families():
    with pytest.raises(DomainError):
        classify_scalar(elliptic_aybe(2, 1, 1j))


# ---------------------------------------------------------------------------
# Laurent-coefficient identities (normal form)
# ---------------------------------------------------------------------------

def test_r1_relation_all_scalars():
    pts = (0.31, 0.22 - 0.11j)
    for h in SCALARS:
        rep = check_r1_relation(h, pts)
        assert rep.passed, rep.summary_line()
        assert rep.max_abs_residual < 1e-10


def test_aux4_pinned_points():
    assert abs(check_aux4(scalar_kronecker(2j), 0.2, 0.35)) < 1e-8
    assert abs(check_aux4(scalar_trig(), 0.4j, 0.3)) < 1e-9
    assert abs(check_aux4(scalar_rational(1.0, 1.0), 0.3, 0.2)) < 1e-10


def test_aux4_requires_normal_form_internally():
    # The raw combination for coth(v/2)/2 equals 1/4 identically; the check
    # must normalize away the v-linear term to see zero.
    h = scalar_trig()
    v, vp = 0.25, 0.4
    r0 = lambda x: 0.5 / cmath.tanh(x / 2.0)
    r0p = lambda x: -0.25 / cmath.sinh(x / 2.0) ** 2
    raw = (r0(v) + r0(vp) - r0(v + vp)) ** 2 + r0p(v) + r0p(vp) + r0p(v + vp)
    assert abs(raw - 0.25) < 1e-12
    assert abs(check_aux4(h, v, vp)) < 1e-9


def test_aux5_matrix_and_scalar():
    res = check_aux5(elliptic_aybe(2, 1, 1j), 0.2, 0.31)
    assert res.max_abs() < 1e-7
    # for one-dimensional families the same residual is the scalar identity
    assert check_aux5(scalar_kronecker(1j), 0.2, 0.31).max_abs() < 1e-9
    assert check_aux5(elliptic_aybe(1, 1, 1j), 0.2, 0.31).max_abs() < 1e-9


def test_reconstruction_chain():
    pts = [(0.2, 0.31), (0.15, -0.23)]
    for h in (elliptic_aybe(2, 1, 1j), scalar_kronecker(1j), scalar_rational(1, 1)):
        rep = check_reconstruction_chain(h, pts)
        assert rep.tag == "reconstruction"
        assert rep.passed, rep.summary_line()


# ---------------------------------------------------------------------------
# parity under the unitarity symmetry
# ---------------------------------------------------------------------------

@pytest.mark.parametrize(
    "h", [scalar_kronecker(1j), scalar_trig(), scalar_rational(1.0, 1.0)], ids=str
)
def test_r0_odd_r1_even(h):
    for v in (0.29, 0.17 + 0.21j):
        assert abs(scalar_r0(h, -v) + scalar_r0(h, v)) < 1e-9
        assert abs(scalar_r1(h, -v) - scalar_r1(h, v)) < 1e-9
