"""Residual checks for the functional equations the solution families satisfy.

Four checks are implemented on top of :mod:`aybe.solutions`:

* the two-variable associative identity (three product terms),
* the one-variable classical identity (three commutators),
* unitarity (leg swap at the negated point),
* non-degeneracy (full rank of the tensor viewed as a map).

Each check comes in a pointwise flavour returning the raw residual tensor
and a sampled flavour returning a :class:`ResidualReport`.  Sampling is
seeded and deterministic; points that fall inside a pole guard are redrawn
and counted in the report's ``skipped`` field.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DomainError, NonConvergenceError
from .solutions import (
    ELLIPTIC_FAMILIES,
    SolutionHandle,
    cybe_limit_of_aybe,
    eval_aybe,
    eval_cybe,
    in_domain,
    paired_cybe_handle,
)
from .tensors import MatrixTensor2, MatrixTensor3

__all__ = [
    "ResidualReport",
    "SuiteConfig",
    "aybe_residual",
    "aybe_terms",
    "aybe_commutator_residual",
    "cybe_residual",
    "cybe_terms",
    "unitarity_residual",
    "limit_consistency_residual",
    "nondegeneracy_check",
    "check_aybe",
    "check_aybe_commutator",
    "check_cybe",
    "check_unitarity",
    "check_limit_consistency",
    "run_suite",
]


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ResidualReport:
    """Outcome of one sampled check.

    ``passed`` is defined as ``max_rel_residual < tolerance``; ``skipped``
    counts draws rejected by the domain guard before ``len(points)``
    accepted samples were found.
    """

    tag: str
    points: tuple
    max_abs_residual: float
    max_rel_residual: float
    tolerance: float
    passed: bool
    skipped: int = 0

    def __post_init__(self):
        if self.max_abs_residual < 0 or self.max_rel_residual < 0:
            raise ValueError("residuals must be non-negative")
        if self.passed != (self.max_rel_residual < self.tolerance):
            raise ValueError("pass flag inconsistent with residual/tolerance")

    def summary_line(self) -> str:
        word = "PASS" if self.passed else "FAIL"
        return (
            f"{word} {self.tag}: max_abs={self.max_abs_residual:.3e} "
            f"max_rel={self.max_rel_residual:.3e} tol={self.tolerance:.1e} "
            f"points={len(self.points)} skipped={self.skipped}"
        )

    def to_dict(self) -> dict:
        def _pt(p) -> list:
            return [[complex(z).real, complex(z).imag] for z in p]

        return {
            "tag": self.tag,
            "points": [_pt(p) for p in self.points],
            "max_abs_residual": self.max_abs_residual,
            "max_rel_residual": self.max_rel_residual,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "skipped": self.skipped,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ResidualReport":
        points = tuple(
            tuple(complex(re, im) for re, im in pt) for pt in data["points"]
        )
        return cls(
            tag=data["tag"],
            points=points,
            max_abs_residual=data["max_abs_residual"],
            max_rel_residual=data["max_rel_residual"],
            tolerance=data["tolerance"],
            passed=data["passed"],
            skipped=data.get("skipped", 0),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _make_report(
    tag: str,
    samples: Sequence[tuple],
    abs_residuals: Sequence[float],
    rel_residuals: Sequence[float],
    tolerance: float,
    skipped: int,
) -> ResidualReport:
    max_abs = max(abs_residuals) if abs_residuals else 0.0
    max_rel = max(rel_residuals) if rel_residuals else 0.0
    return ResidualReport(
        tag=tag,
        points=tuple(samples),
        max_abs_residual=float(max_abs),
        max_rel_residual=float(max_rel),
        tolerance=float(tolerance),
        passed=bool(max_rel < tolerance),
        skipped=skipped,
    )


# ---------------------------------------------------------------------------
# pointwise residuals
# ---------------------------------------------------------------------------

def aybe_terms(
    h: SolutionHandle, u: complex, up: complex, v: complex, vp: complex
) -> Tuple[MatrixTensor3, MatrixTensor3, MatrixTensor3]:
    """The three product terms of the two-variable identity.

    The identity is ``T1 - T2 + T3 = 0`` with::

        T1 = r12(-u', v)      r13(u+u', v+v')
        T2 = r23(u+u', v')    r12(u, v)
        T3 = r13(u, v+v')     r23(u', v')
    """
    t1 = eval_aybe(h, -up, v).embed("12").mul(eval_aybe(h, u + up, v + vp).embed("13"))
    t2 = eval_aybe(h, u + up, vp).embed("23").mul(eval_aybe(h, u, v).embed("12"))
    t3 = eval_aybe(h, u, v + vp).embed("13").mul(eval_aybe(h, up, vp).embed("23"))
    return t1, t2, t3


def aybe_residual(
    h: SolutionHandle, u: complex, up: complex, v: complex, vp: complex
) -> MatrixTensor3:
    """Residual tensor ``T1 - T2 + T3`` (zero for genuine solutions)."""
    _require_aybe_domain(h, u, up, v, vp)
    t1, t2, t3 = aybe_terms(h, u, up, v, vp)
    return t1 - t2 + t3


def aybe_commutator_residual(
    h: SolutionHandle, u: complex, up: complex, v: complex, vp: complex
) -> MatrixTensor3:
    """Commutator form of the two-variable identity.

    For unitary solutions the identity also holds with every product
    replaced by a commutator,

        [r12(-u',v), r13(u+u',v+v')] - [r23(u+u',v'), r12(u,v)]
            + [r13(u,v+v'), r23(u',v')],

    which is the mechanical step behind the classical limit.
    """
    _require_aybe_domain(h, u, up, v, vp)
    a = eval_aybe(h, -up, v).embed("12")
    b = eval_aybe(h, u + up, v + vp).embed("13")
    c = eval_aybe(h, u + up, vp).embed("23")
    d = eval_aybe(h, u, v).embed("12")
    e = eval_aybe(h, u, v + vp).embed("13")
    f = eval_aybe(h, up, vp).embed("23")
    return _comm(a, b) - _comm(c, d) + _comm(e, f)


def cybe_terms(
    h: SolutionHandle, v: complex, vp: complex
) -> Tuple[MatrixTensor3, MatrixTensor3, MatrixTensor3]:
    """The three commutators of the one-variable identity at (x, y) = (v, v')."""
    r12 = eval_cybe(h, v).embed("12")
    r13 = eval_cybe(h, v + vp).embed("13")
    r23 = eval_cybe(h, vp).embed("23")
    return _comm(r12, r13), _comm(r12, r23), _comm(r13, r23)


def cybe_residual(h: SolutionHandle, v: complex, vp: complex) -> MatrixTensor3:
    """Residual [r12(v), r13(v+v')] + [r12(v), r23(v')] + [r13(v+v'), r23(v')]."""
    for point in (v, vp, v + vp):
        if not in_domain(h, None, point, guard=1e-9):
            raise DomainError(f"point {point} is outside the domain of {h.family}")
    c1, c2, c3 = cybe_terms(h, v, vp)
    return c1 + c2 + c3


def unitarity_residual(h: SolutionHandle, u: complex, v: complex) -> MatrixTensor2:
    """swap_legs(r(-u, -v)) + r(u, v); for one-variable families u is ignored
    and the check is swap_legs(r(-v)) + r(v)."""
    if h.is_cybe:
        for point in (v, -v):
            if not in_domain(h, None, point, guard=1e-9):
                raise DomainError(f"point {point} is outside the domain of {h.family}")
        return eval_cybe(h, -v).swap_legs() + eval_cybe(h, v)
    if not (in_domain(h, u, v, guard=1e-9) and in_domain(h, -u, -v, guard=1e-9)):
        raise DomainError("evaluation point or its negative hits a pole")
    return eval_aybe(h, -u, -v).swap_legs() + eval_aybe(h, u, v)


def limit_consistency_residual(
    h: SolutionHandle, v: complex, u_seq: Optional[Sequence[complex]] = None
) -> MatrixTensor2:
    """Difference between the u -> 0 limit of a two-variable family and its
    paired one-variable solution at the same v."""
    limit = cybe_limit_of_aybe(h, v, u_seq=u_seq).value
    target = eval_cybe(paired_cybe_handle(h), v)
    return limit - target


def _comm(x: MatrixTensor3, y: MatrixTensor3) -> MatrixTensor3:
    return x.mul(y) - y.mul(x)


def _require_aybe_domain(
    h: SolutionHandle, u: complex, up: complex, v: complex, vp: complex
) -> None:
    for a, b in _aybe_points(u, up, v, vp):
        if not in_domain(h, a, b, guard=1e-9):
            raise DomainError(f"evaluation point ({a}, {b}) hits a pole of {h.family}")


def _aybe_points(u: complex, up: complex, v: complex, vp: complex) -> tuple:
    return (
        (-up, v),
        (u + up, v + vp),
        (u + up, vp),
        (u, v),
        (u, v + vp),
        (up, vp),
    )


# ---------------------------------------------------------------------------
# seeded sampling
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SuiteConfig:
    """Sampling plan for :func:`run_suite`; the seed fixes every draw."""

    seed: int = 0
    n_aybe: int = 25
    n_cybe: int = 25
    n_unitarity: int = 20
    n_rank: int = 5
    n_limit: int = 5
    tol_aybe: float = 1e-8
    tol_cybe: Optional[float] = None  # default: 1e-10 trig, 1e-8 elliptic
    tol_unitarity: float = 1e-10
    tol_limit: float = 1e-7
    guard: float = 1e-3
    max_draws: int = 10_000
    checks: Optional[Tuple[str, ...]] = None  # subset of CHECK_NAMES


CHECK_NAMES = ("aybe", "commutator", "cybe", "unitarity", "rank", "limit")


def _sample_radius(h: SolutionHandle) -> float:
    return 0.4 if h.family in ELLIPTIC_FAMILIES else 1.0


def _draw_point(rng: np.random.Generator, radius: float) -> complex:
    r = radius * math.sqrt(rng.uniform())
    phi = 2.0 * math.pi * rng.uniform()
    return complex(r * math.cos(phi), r * math.sin(phi))


def _accept(
    rng: np.random.Generator,
    radius: float,
    count: int,
    width: int,
    ok: Callable[..., bool],
    max_draws: int,
) -> Tuple[List[tuple], int]:
    """Draw `count` tuples of `width` disc points satisfying `ok`; count rejects."""
    accepted: List[tuple] = []
    skipped = 0
    draws = 0
    while len(accepted) < count:
        if draws >= max_draws:
            raise NonConvergenceError(
                f"rejection sampling exhausted {max_draws} draws"
            )
        draws += 1
        candidate = tuple(_draw_point(rng, radius) for _ in range(width))
        if ok(*candidate):
            accepted.append(candidate)
        else:
            skipped += 1
    return accepted, skipped


def check_aybe(h: SolutionHandle, config: SuiteConfig = SuiteConfig()) -> ResidualReport:
    """Sampled two-variable identity residual, relative to the product terms."""
    rng = np.random.default_rng(config.seed)
    radius = _sample_radius(h)

    def ok(u, up, v, vp):
        return all(
            in_domain(h, a, b, guard=config.guard)
            for a, b in _aybe_points(u, up, v, vp)
        )

    samples, skipped = _accept(rng, radius, config.n_aybe, 4, ok, config.max_draws)
    abs_res, rel_res = [], []
    for u, up, v, vp in samples:
        t1, t2, t3 = aybe_terms(h, u, up, v, vp)
        res = t1 - t2 + t3
        scale = max(t1.frobenius(), t2.frobenius(), t3.frobenius(), 1e-300)
        abs_res.append(res.max_abs())
        rel_res.append(res.frobenius() / scale)
    return _make_report("aybe", samples, abs_res, rel_res, config.tol_aybe, skipped)


def check_aybe_commutator(
    h: SolutionHandle, config: SuiteConfig = SuiteConfig()
) -> ResidualReport:
    """Sampled commutator form of the two-variable identity."""
    rng = np.random.default_rng(config.seed)
    radius = _sample_radius(h)

    def ok(u, up, v, vp):
        return all(
            in_domain(h, a, b, guard=config.guard)
            for a, b in _aybe_points(u, up, v, vp)
        )

    samples, skipped = _accept(rng, radius, config.n_aybe, 4, ok, config.max_draws)
    abs_res, rel_res = [], []
    for u, up, v, vp in samples:
        t1, t2, t3 = aybe_terms(h, u, up, v, vp)
        res = aybe_commutator_residual(h, u, up, v, vp)
        scale = max(t1.frobenius(), t2.frobenius(), t3.frobenius(), 1e-300)
        abs_res.append(res.max_abs())
        rel_res.append(res.frobenius() / scale)
    return _make_report(
        "commutator", samples, abs_res, rel_res, config.tol_aybe, skipped
    )


def check_cybe(h: SolutionHandle, config: SuiteConfig = SuiteConfig()) -> ResidualReport:
    """Sampled one-variable identity residual, relative to the commutator
    operands (the six products making up the three commutators)."""
    rng = np.random.default_rng(config.seed)
    radius = _sample_radius(h)
    tol = config.tol_cybe
    if tol is None:
        tol = 1e-8 if h.family == "elliptic_cybe" else 1e-10

    def ok(v, vp):
        return all(
            in_domain(h, None, p, guard=config.guard) for p in (v, vp, v + vp)
        )

    samples, skipped = _accept(rng, radius, config.n_cybe, 2, ok, config.max_draws)
    abs_res, rel_res = [], []
    for v, vp in samples:
        r12 = eval_cybe(h, v).embed("12")
        r13 = eval_cybe(h, v + vp).embed("13")
        r23 = eval_cybe(h, vp).embed("23")
        products = [
            r12.mul(r13), r13.mul(r12),
            r12.mul(r23), r23.mul(r12),
            r13.mul(r23), r23.mul(r13),
        ]
        res = (products[0] - products[1]) + (products[2] - products[3]) + (
            products[4] - products[5]
        )
        scale = max([p.frobenius() for p in products] + [1e-300])
        abs_res.append(res.max_abs())
        rel_res.append(res.frobenius() / scale)
    return _make_report("cybe", samples, abs_res, rel_res, tol, skipped)


def check_unitarity(
    h: SolutionHandle, config: SuiteConfig = SuiteConfig()
) -> ResidualReport:
    """Sampled unitarity residual, relative to the operand norms."""
    rng = np.random.default_rng(config.seed)
    radius = _sample_radius(h)

    if h.is_cybe:
        def ok(v):
            return in_domain(h, None, v, guard=config.guard) and in_domain(
                h, None, -v, guard=config.guard
            )

        samples, skipped = _accept(
            rng, radius, config.n_unitarity, 1, ok, config.max_draws
        )
        pairs = [(None, v) for (v,) in samples]
    else:
        def ok(u, v):
            return in_domain(h, u, v, guard=config.guard) and in_domain(
                h, -u, -v, guard=config.guard
            )

        samples, skipped = _accept(
            rng, radius, config.n_unitarity, 2, ok, config.max_draws
        )
        pairs = samples

    abs_res, rel_res = [], []
    for u, v in pairs:
        if h.is_cybe:
            direct = eval_cybe(h, v)
            swapped = eval_cybe(h, -v).swap_legs()
        else:
            direct = eval_aybe(h, u, v)
            swapped = eval_aybe(h, -u, -v).swap_legs()
        res = swapped + direct
        scale = max(direct.frobenius(), swapped.frobenius(), 1e-300)
        abs_res.append(res.max_abs())
        rel_res.append(res.frobenius() / scale)
    return _make_report(
        "unitarity", samples, abs_res, rel_res, config.tol_unitarity, skipped
    )


def nondegeneracy_check(
    h: SolutionHandle,
    pts: Iterable,
    tolerance: float = 0.5,
) -> ResidualReport:
    """Full-rank check of the tensor as a map at the given points.

    ``pts`` holds (u, v) pairs for two-variable families or bare v values
    for one-variable families.  The recorded residual is the rank deficit
    n^2 - rank, so a report passes exactly when every point has full rank.
    """
    samples = []
    deficits = []
    target = h.n * h.n
    for p in pts:
        if isinstance(p, tuple):
            u, v = p
        else:
            u, v = None, p
        if h.is_cybe:
            value = eval_cybe(h, v)
            samples.append((v,))
        else:
            if u is None:
                raise DomainError("two-variable families need (u, v) points")
            value = eval_aybe(h, u, v)
            samples.append((u, v))
        deficits.append(float(target - value.rank_as_map()))
    return _make_report("rank", samples, deficits, deficits, tolerance, 0)


def check_rank(h: SolutionHandle, config: SuiteConfig = SuiteConfig()) -> ResidualReport:
    """Seeded wrapper around :func:`nondegeneracy_check`."""
    rng = np.random.default_rng(config.seed)
    radius = _sample_radius(h)
    if h.is_cybe:
        def ok(v):
            return in_domain(h, None, v, guard=config.guard)

        samples, _ = _accept(rng, radius, config.n_rank, 1, ok, config.max_draws)
        pts = [v for (v,) in samples]
    else:
        def ok(u, v):
            return in_domain(h, u, v, guard=config.guard)

        samples, _ = _accept(rng, radius, config.n_rank, 2, ok, config.max_draws)
        pts = samples
    return nondegeneracy_check(h, pts)


def check_limit_consistency(
    h: SolutionHandle, config: SuiteConfig = SuiteConfig()
) -> ResidualReport:
    """Sampled comparison of the u -> 0 limit against the paired family."""
    rng = np.random.default_rng(config.seed)
    radius = _sample_radius(h)
    paired = paired_cybe_handle(h)
    # keep samples a comfortable distance from the pole set: the Laurent
    # coefficients that control the extrapolation error blow up at the guard
    guard = max(config.guard, 1e-2)

    def _u_seq(v):
        s = 2.5e-3 * max(abs(v), 1e-2)
        return (s, s / 2.0, s / 4.0)

    def ok(v):
        if not in_domain(paired, None, v, guard=guard):
            return False
        return all(in_domain(h, uk, v, guard=1e-6) for uk in _u_seq(v))

    samples, skipped = _accept(rng, radius, config.n_limit, 1, ok, config.max_draws)
    abs_res, rel_res = [], []
    for (v,) in samples:
        res = limit_consistency_residual(h, v, u_seq=_u_seq(v))
        target = eval_cybe(paired, v)
        scale = max(target.frobenius(), 1e-300)
        abs_res.append(res.max_abs())
        rel_res.append(res.frobenius() / scale)
    return _make_report("limit", samples, abs_res, rel_res, config.tol_limit, skipped)


_CHECK_FNS = {
    "aybe": check_aybe,
    "commutator": check_aybe_commutator,
    "cybe": check_cybe,
    "unitarity": check_unitarity,
    "rank": check_rank,
    "limit": check_limit_consistency,
}


def _applicable_checks(h: SolutionHandle) -> Tuple[str, ...]:
    if h.is_cybe:
        return ("cybe", "unitarity")
    checks = ["aybe", "commutator", "unitarity", "rank"]
    has_pair = h.family in ("trig_aybe1", "trig_aybe2") or (
        h.family == "elliptic_aybe" and h.d > 1
    )
    if has_pair:
        checks.append("limit")
    return tuple(checks)


def run_suite(h: SolutionHandle, config: SuiteConfig = SuiteConfig()) -> List[ResidualReport]:
    """Run every applicable check; deterministic given (handle, config)."""
    names = _applicable_checks(h)
    if config.checks is not None:
        unknown = set(config.checks) - set(CHECK_NAMES)
        if unknown:
            raise ValueError(f"unknown checks: {sorted(unknown)}")
        names = tuple(c for c in names if c in config.checks)
    return [_CHECK_FNS[name](h, config) for name in names]
