"""Solution families: golden values, closed forms, domains, transforms.

Golden numbers below were frozen from the theta/Kronecker layer, which is
itself pinned against defining-series summation in test_special.py.
"""

import cmath
import math

import numpy as np
import pytest

from aybe.errors import DomainError
from aybe.series import extract_u_series
from aybe.solutions import (
    GaugeSpec,
    custom_handle,
    cybe_limit_of_aybe,
    elliptic_aybe,
    elliptic_cybe,
    equivalence_transform,
    eval_aybe,
    eval_cybe,
    eval_cybe_alt,
    handle_from_dict,
    handle_to_dict,
    in_domain,
    paired_cybe_handle,
    rho_theoretical,
    scalar_kronecker,
    scalar_rational,
    scalar_trig,
    trig_aybe,
    trig_cybe,
)
from aybe.special import kronecker_F, modular_param
from aybe.tensors import identity2

from conftest import draw_disc


# ---------------------------------------------------------------------------
# golden regression values
# ---------------------------------------------------------------------------

def test_elliptic_d2_golden_entries():
    t = eval_aybe(elliptic_aybe(2, 1, 1j), 0.2, 0.3)
    assert t.coeffs[0, 0, 0, 0] == pytest.approx(-0.3249130629598267j, abs=1e-12)
    assert t.coeffs[0, 1, 1, 0] == pytest.approx(0.523535809157473j, abs=1e-12)
    assert t.coeffs[1, 1, 1, 1] == pytest.approx(-0.3249130629598267j, abs=1e-12)


def test_elliptic_d3_golden_entries():
    t31 = eval_aybe(elliptic_aybe(3, 1, 1j), 0.2, 0.3)
    t32 = eval_aybe(elliptic_aybe(3, 2, 1j), 0.2, 0.3)
    assert t31.coeffs[0, 0, 0, 0] == pytest.approx(-1.3763819080838278j, abs=1e-11)
    assert t32.coeffs[0, 0, 0, 0] == pytest.approx(-2.227032728823211j, abs=1e-11)
    # r = 1 and r = 2 are genuinely different solutions
    assert np.max(np.abs(t31.coeffs - t32.coeffs)) > 1.0


def test_elliptic_cybe_golden_entries():
    t = eval_cybe(elliptic_cybe(2, 1, 1j), 0.23)
    assert t.coeffs[0, 0, 0, 0] == pytest.approx(0.03112047172584463j, abs=1e-12)
    assert t.coeffs[0, 1, 1, 0] == pytest.approx(0.507686340704027j, abs=1e-12)


def test_trig_golden_entries():
    t1 = eval_aybe(trig_aybe(1), 0.31, -0.22)
    assert t1.coeffs[0, 0, 0, 0] == pytest.approx(7.815371609924392, abs=1e-12)
    assert t1.coeffs[1, 0, 0, 1] == pytest.approx(5.063773106920828, abs=1e-12)
    t2 = eval_aybe(trig_aybe(2), 0.31, -0.22)
    assert t2.coeffs[0, 0, 0, 0] == pytest.approx(1.312174603917264, abs=1e-12)
    assert t2.coeffs[1, 0, 1, 0] == pytest.approx(0.09003037807561698, abs=1e-12)
    c1 = eval_cybe(trig_cybe(1), 0.37)
    assert c1.coeffs[0, 0, 0, 0] == pytest.approx(-1.3667329565885284, abs=1e-12)
    c2 = eval_cybe(trig_cybe(2), 0.37)
    assert c2.coeffs[1, 0, 1, 0] == pytest.approx(0.37211415627556954, abs=1e-12)


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------

def test_elliptic_d1_is_kronecker_with_negated_v(m_square):
    h = elliptic_aybe(1, 1, 1j)
    for u, v in [(0.2, 0.3), (0.13 + 0.07j, -0.22 + 0.11j)]:
        val = eval_aybe(h, u, v).coeffs[0, 0, 0, 0]
        assert abs(val - kronecker_F(u, -v, m_square)) < 1e-12


def test_scalar_kronecker_is_F(m_square):
    h = scalar_kronecker(1j)
    u, v = 0.21 - 0.06j, 0.17 + 0.12j
    val = eval_aybe(h, u, v).coeffs[0, 0, 0, 0]
    assert abs(val - kronecker_F(u, v, m_square)) < 1e-13


def test_scalar_trig_closed_form():
    h = scalar_trig()
    u, v = 0.4 + 0.1j, -0.7 + 0.2j
    val = eval_aybe(h, u, v).coeffs[0, 0, 0, 0]
    expected = (cmath.exp(u + v) - 1.0) / ((cmath.exp(u) - 1.0) * (cmath.exp(v) - 1.0))
    assert abs(val - expected) < 1e-13


def test_scalar_rational_closed_form():
    h = scalar_rational(2.0, -1.5j)
    val = eval_aybe(h, 0.5, 0.25).coeffs[0, 0, 0, 0]
    assert abs(val - (2.0 / 0.5 + (-1.5j) / 0.25)) < 1e-14


def test_trig1_coefficient_table():
    # at (u, v) = (ln 2, ln 3): lam = 2, mu = 3
    t = eval_aybe(trig_aybe(1), math.log(2.0), math.log(3.0))
    c = t.coeffs
    assert c[0, 0, 0, 0] == pytest.approx((3 - 2) / ((1 - 2) * (1 - 3)), abs=1e-12)
    assert c[1, 1, 1, 1] == pytest.approx(0.5, abs=1e-12)
    assert c[0, 0, 1, 1] == pytest.approx(-2 / (1 - 2), abs=1e-12)
    assert c[1, 1, 0, 0] == pytest.approx(-1 / (1 - 2), abs=1e-12)
    assert c[1, 0, 0, 1] == pytest.approx(1 / (1 - 3), abs=1e-12)
    assert c[0, 1, 1, 0] == pytest.approx(3 / (1 - 3), abs=1e-12)


def test_trig2_coefficient_table():
    u, v = math.log(2.0), math.log(3.0)
    t = eval_aybe(trig_aybe(2), u, v)
    c = t.coeffs
    k = (1 - 6) / ((1 - 2) * (1 - 3))
    assert c[0, 0, 0, 0] == pytest.approx(k, abs=1e-12)
    assert c[1, 1, 1, 1] == pytest.approx(k, abs=1e-12)
    assert c[0, 0, 1, 1] == pytest.approx(2 / (1 - 2), abs=1e-12)
    assert c[1, 1, 0, 0] == pytest.approx(1 / (1 - 2), abs=1e-12)
    assert c[1, 0, 0, 1] == pytest.approx(math.sqrt(3.0) / (1 - 3), abs=1e-12)
    assert c[0, 1, 1, 0] == pytest.approx(math.sqrt(3.0) / (1 - 3), abs=1e-12)
    assert c[1, 0, 1, 0] == pytest.approx(
        math.sqrt(6.0) - 1.0 / math.sqrt(6.0), abs=1e-12
    )


def test_trig_cybe_coefficient_table():
    v = math.log(2.0)
    c1 = eval_cybe(trig_cybe(1), v).coeffs
    assert c1[0, 0, 0, 0] == pytest.approx((1 + 2) / (4 * (1 - 2)), abs=1e-12)
    assert c1[1, 0, 0, 1] == pytest.approx(1 / (1 - 2), abs=1e-12)
    assert c1[0, 1, 1, 0] == pytest.approx(2 / (1 - 2), abs=1e-12)
    c2 = eval_cybe(trig_cybe(2), v).coeffs
    s = math.sqrt(2.0)
    assert c2[1, 0, 0, 1] == pytest.approx(s / (1 - 2), abs=1e-12)
    assert c2[1, 0, 1, 0] == pytest.approx(s - 1.0 / s, abs=1e-12)


# ---------------------------------------------------------------------------
# pole structure and domains
# ---------------------------------------------------------------------------

def test_u_pole_coefficient_matches_theory():
    handles = [
        elliptic_aybe(2, 1, 1j),
        elliptic_aybe(3, 1, 1j),
        trig_aybe(1),
        trig_aybe(2),
        scalar_kronecker(1j),
        scalar_trig(),
        scalar_rational(1.7, 0.4),
    ]
    for h in handles:
        rho = rho_theoretical(h)
        series = extract_u_series(h, 0.29, 0, radius=0.05)
        pole = series.coefficient(-1)
        if h.n == 1:
            gap = abs(complex(pole) - rho)
        else:
            gap = (pole - rho * identity2(h.n)).max_abs()
        assert gap < 1e-9 * max(1.0, abs(rho))


def test_in_domain_guards():
    h2 = elliptic_aybe(2, 1, 1j)
    # the d-refined half lattice is a genuine v-pole for d = 2
    assert not in_domain(h2, 0.1, 0.5)
    assert in_domain(h2, 0.1, 0.31)
    assert not in_domain(h2, 0.0, 0.31)
    t = trig_aybe(1)
    assert not in_domain(t, 2j * math.pi, 0.4)
    assert in_domain(t, 0.5, 0.4)
    k = scalar_kronecker(1j)
    assert not in_domain(k, 0.2, -0.2)  # u + v on the lattice
    assert in_domain(k, 0.2, 0.3)
    c = trig_cybe(1)
    assert not in_domain(c, None, 0.0)
    assert in_domain(c, None, 0.7)


def test_eval_on_pole_raises(m_square):
    with pytest.raises(Exception):
        eval_aybe(elliptic_aybe(1, 1, 1j), 1e-14, 0.3)


# ---------------------------------------------------------------------------
# alternative one-variable formula
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("d,r", [(2, 1), (3, 1), (3, 2)])
def test_cybe_alt_formula_agrees(d, r, rng):
    h = elliptic_cybe(d, r, 1j)
    count = 0
    for v in draw_disc(rng, 0.35, 40):
        if not in_domain(h, None, v, guard=1e-2):
            continue
        gap = (eval_cybe(h, v) - eval_cybe_alt(h, v)).max_abs()
        scale = eval_cybe(h, v).max_abs()
        assert gap < 1e-9 * max(1.0, scale)
        count += 1
        if count == 10:
            break
    assert count == 10


# ---------------------------------------------------------------------------
# u -> 0 limits
# ---------------------------------------------------------------------------

@pytest.mark.parametrize(
    "h", [elliptic_aybe(2, 1, 1j), trig_aybe(1), trig_aybe(2)], ids=str
)
def test_limit_matches_paired_cybe(h):
    partner = paired_cybe_handle(h)
    for v in (0.31, 0.27 + 0.06j):
        res = cybe_limit_of_aybe(h, v)
        target = eval_cybe(partner, v).project_sl()
        gap = (res.value - target).max_abs()
        assert gap < 1e-7 * max(1.0, target.max_abs())


def test_paired_cybe_handle_rejects_scalars():
    with pytest.raises(DomainError):
        paired_cybe_handle(scalar_trig())


# ---------------------------------------------------------------------------
# transforms and serialization
# ---------------------------------------------------------------------------

def test_constant_gauge_keeps_aybe(rng):
    from aybe.verify import aybe_residual

    g = np.array([[1.0, 0.3], [-0.2, 1.1]], dtype=complex)
    h = equivalence_transform(trig_aybe(1), g)
    res = aybe_residual(h, 0.31, -0.22, 0.41, 0.27)
    assert res.max_abs() < 1e-12


def test_scalar_exp_gauge_keeps_aybe():
    from aybe.verify import aybe_residual

    h = equivalence_transform(
        elliptic_aybe(2, 1, 1j), GaugeSpec(kind="scalar_exp", c=0.37 - 0.11j)
    )
    res = aybe_residual(h, 0.21, -0.12, 0.31, 0.17)
    assert res.max_abs() < 1e-12


def test_equivalence_transform_validates():
    with pytest.raises(ValueError):
        equivalence_transform(trig_aybe(1), np.zeros((2, 2)))
    with pytest.raises(ValueError):
        equivalence_transform(trig_aybe(1), np.eye(3))
    g = equivalence_transform(trig_aybe(1), np.eye(2))
    with pytest.raises(ValueError):
        equivalence_transform(g, np.eye(2))


def test_handle_serialization_roundtrip():
    handles = [
        elliptic_aybe(3, 2, 0.5 + 0.9j),
        equivalence_transform(trig_aybe(1), np.array([[1.0, 0.2], [0.0, 0.9]])),
        equivalence_transform(
            scalar_kronecker(2j), GaugeSpec(kind="scalar_exp", c=0.3j)
        ),
        scalar_rational(2.0, -0.5j),
    ]
    for h in handles:
        back = handle_from_dict(handle_to_dict(h))
        if h.is_cybe:
            gap = (eval_cybe(back, 0.37) - eval_cybe(h, 0.37)).max_abs()
        else:
            gap = (eval_aybe(back, 0.21, 0.33) - eval_aybe(h, 0.21, 0.33)).max_abs()
        assert gap < 1e-14


def test_custom_handles_not_serializable():
    h = custom_handle(lambda u, v: identity2(2), 2)
    with pytest.raises(ValueError):
        handle_to_dict(h)


def test_handle_validation():
    with pytest.raises(ValueError):
        elliptic_aybe(2, 2, 1j)  # gcd(r, d) != 1
    with pytest.raises(ValueError):
        elliptic_aybe(2, 1, -1j)  # lower half plane
    with pytest.raises(ValueError):
        trig_aybe(3)
