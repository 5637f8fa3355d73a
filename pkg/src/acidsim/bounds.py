"""Closed-form constants of the a-priori L-infinity estimate for ``u``.

Exponents containing ``1/s`` are evaluated with ``1/s = 0`` when ``s`` is
infinite (the one-dimensional case).  Quantities that overflow a double are
computed in log space; the ``log_*`` variants expose those logarithms.

The Sobolev constant uses one formula for every ``d >= 2``, with exponent
groupings ``(p+2)d/(2p)``, ``(p+2)d/(4p)`` and ``(p-2)d/(4p)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .errors import ExponentDomainError, InvalidExponentRange

__all__ = [
    "DomainGeometry",
    "BoundParams",
    "sobolev_constant",
    "log_sobolev_constant",
    "poincare_constant",
    "exponent_denominator",
    "growth_constant_C3",
    "log_growth_constant_C3",
    "verify_moser_exponents",
    "apriori_sup_bound",
    "log_apriori_sup_bound",
    "sup_bound_report",
]


@dataclass(frozen=True)
class DomainGeometry:
    d: int
    measure: float
    diameter: float
    V_measure: float

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("dimension must be >= 1")
        if not (self.measure > 0 and self.diameter > 0 and self.V_measure > 0):
            raise ValueError("measure, diameter and |V| must be positive")

    @classmethod
    def interval(cls, a: float, b: float) -> "DomainGeometry":
        L = b - a
        if not L > 0:
            raise ValueError("empty interval")
        return cls(1, L, L, 2.0 * L)

    @classmethod
    def box(cls, *sides: float) -> "DomainGeometry":
        """Axis-aligned box; its difference body is the box with doubled sides."""
        sides = tuple(float(s) for s in sides)
        vol = math.prod(sides)
        return cls(len(sides), vol, math.hypot(*sides), 2.0 ** len(sides) * vol)


@dataclass(frozen=True)
class BoundParams:
    alpha: float
    beta: float
    mu1: float
    mu3_tilde_sup: float
    delta: float
    eta: float
    s: float = math.inf
    K: float = 1.5

    @property
    def C1(self) -> float:
        return self.mu1 + self.mu3_tilde_sup

    @property
    def inv_s(self) -> float:
        return 0.0 if math.isinf(self.s) else 1.0 / self.s


def _inv(s: float) -> float:
    return 0.0 if math.isinf(s) else 1.0 / s


def log_sobolev_constant(geom: DomainGeometry, p: float = math.inf) -> float:
    d = geom.d
    if d == 1:
        if not math.isinf(p):
            raise InvalidExponentRange("d = 1 takes p = inf")
        return math.log(sobolev_constant(geom, p))
    if d == 2:
        if not (2 < p < math.inf):
            raise InvalidExponentRange("d = 2 needs 2 < p < inf")
    elif not (2 < p <= 2 * d / (d - 2)):
        raise InvalidExponentRange(f"d = {d} needs 2 < p <= {2 * d / (d - 2)}")
    ln_omega = math.log(geom.measure)
    first = (1.0 / p - 0.5) * ln_omega
    second = (
        (1 + (p + 2) * d / (2 * p)) * math.log(geom.diameter)
        + (p + 2) * d / (4 * p) * math.log(math.pi)
        - math.log(d)
        - ln_omega
        + gammaln((p - 2) * d / (4 * p))
        - gammaln((p + 2) * d / (4 * p))
    )
    tail = 0.5 * (gammaln(d / p) - gammaln((p - 1) * d / p)) + (p - 2) / (2 * p) * (
        gammaln(d) - gammaln(d / 2)
    )
    return 0.5 * math.log(2.0) + max(first, second) + tail


def sobolev_constant(geom: DomainGeometry, p: float = math.inf) -> float:
    """Embedding constant of ``W^{1,2}`` into ``L^p`` on a bounded convex domain."""
    if geom.d == 1:
        if not math.isinf(p):
            raise InvalidExponentRange("d = 1 takes p = inf")
        return max(1.0, geom.diameter * geom.V_measure / geom.measure)
    return math.exp(log_sobolev_constant(geom, p))


def poincare_constant(geom: DomainGeometry) -> float:
    """Default ``diam / pi`` (sharp Neumann constant of an interval)."""
    return geom.diameter / math.pi


def exponent_denominator(params: BoundParams) -> float:
    """``beta + 1 - alpha - 2 beta / s``; must be positive for any bound below."""
    return params.beta + 1 - params.alpha - 2 * params.beta * params.inv_s


def _require_positive(value: float, what: str):
    if not value > 0:
        raise ExponentDomainError(f"{what} = {value!r} is not positive")


def log_growth_constant_C3(
    q: float,
    K1: float,
    K2: float,
    params: BoundParams,
    geom: DomainGeometry,
    poincare: float | None = None,
) -> float:
    a, b = params.alpha, params.beta
    inv_s = params.inv_s
    if q < max(1.0, a + b - 1) or not q > 1:
        raise ExponentDomainError(f"q = {q!r} is below max(1, alpha + beta - 1) or not > 1")
    if not (K1 > 0 and K2 > 0):
        raise ValueError("K1 and K2 must be positive")
    D0 = exponent_denominator(params)
    Da = q - a + 1 + b - 2 * (q + a - 1 + b) * inv_s
    Db = q - (q + a - 1 + b) * inv_s
    _require_positive(D0, "beta + 1 - alpha - 2 beta/s")
    _require_positive(Da, "q - alpha + 1 + beta - 2(q + alpha - 1 + beta)/s")
    _require_positive(Db, "q - (q + alpha - 1 + beta)/s")

    ln_cs = log_sobolev_constant(geom, params.s)
    cp = poincare_constant(geom) if poincare is None else poincare
    ln_c5 = math.log(2.0) + ln_cs + math.log(1 + 2 * cp)
    ln_c6 = math.log(4.0) + ln_cs + (0.5 - q / (q + a - 1 + b)) * math.log(geom.measure)

    ln_a = 2 * ln_c5 + 2 * math.log(q) + math.log(K1) - math.log(q - 1)
    e1 = (q + a - 1 - b) / Da
    e2 = (q + a - b - 1) / Db
    e3 = Da / D0
    e4 = (q - 2 * (q + a - 1) * inv_s) / D0
    ln_inner = np.logaddexp(math.log(2.0) + e1 * ln_a, e2 * ln_c6)
    return float(np.logaddexp(e3 * ln_inner + e4 * math.log(K2), e2 * ln_c6))


def growth_constant_C3(q, K1, K2, params, geom, poincare=None) -> float:
    """Additive constant of the interpolation estimate for ``int u^(q+alpha-1)``.

    ``C5 = 2 C_S (1 + 2 C_P)``, ``C6(q) = 4 C_S |Omega|^(1/2 - q/(q+alpha-1+beta))``;
    ``C_P`` defaults to :func:`poincare_constant`.  May return ``inf``.
    """
    ln = log_growth_constant_C3(q, K1, K2, params, geom, poincare)
    return math.exp(ln) if ln < 709.0 else math.inf


def verify_moser_exponents(k: int, alpha: float, s: float) -> tuple[float, float, float]:
    """The three exponent expressions of the Moser step ``q_{k-1} -> p_k``.

    With ``h = 2(s-1)(alpha-1)/(s-2)``, ``q_{k-1} = 2^(k-1) + h`` and
    ``p_k = 2^k + h`` the expected values are ``1``, ``s/(s-2)`` and a value
    ``<= alpha + 1``.  The second denominator is written with ``2/s - 1``, the
    sign that makes the identity hold.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    if not s > 2:
        raise ValueError("s must exceed 2")
    inv_s = _inv(s)
    h = 2 * (1 - inv_s) * (alpha - 1) / (1 - 2 * inv_s)
    q_prev = 2.0 ** (k - 1) + h
    p = 2.0**k + h
    lower = 2 * q_prev * (2 * inv_s - 1) + 2 * (alpha - 1)
    e1 = (2 * (p + alpha - 1) * inv_s - p) / lower
    e2 = (2 * q_prev - 2 * (p + alpha - 1)) / lower
    e3 = (2 * q_prev - 2 * (p + alpha - 1)) / (2 * q_prev * inv_s - p)
    return e1, e2, e3


def _log_bound_branch(params: BoundParams, geom: DomainGeometry) -> float:
    """Logarithm of the non-trivial branch of the max in the sup bound."""
    D0 = exponent_denominator(params)
    _require_positive(D0, "beta + 1 - alpha - 2 beta/s")
    if not params.K > 1:
        raise ValueError("K must exceed 1")
    if not (params.eta > 0 and params.mu1 > 0):
        raise ValueError("eta and mu1 must be positive")
    inv_s = params.inv_s
    e_geom = (1 - 2 * inv_s) / ((1 - inv_s) * D0)
    e_rate = (1 - 2 * inv_s) / D0
    ln_geom = math.log(4.0) + log_sobolev_constant(geom, params.s) - 0.5 * math.log(geom.measure)
    ln_rate = math.log(2 * params.C1 / (params.mu1 * params.eta))
    return e_geom * ln_geom + e_rate * ln_rate


def log_apriori_sup_bound(params: BoundParams, geom: DomainGeometry) -> float:
    return math.log(params.K) + max(0.0, _log_bound_branch(params, geom))


def apriori_sup_bound(params: BoundParams, geom: DomainGeometry) -> float:
    """``K * max(1, (4 C_S |Omega|^-1/2)^a (2 C1/(mu1 eta))^b)``, ``C1 = mu1 + sup mu3t``.

    Only meaningful under the parameter smallness condition of the quasi-maximum
    principle; may return ``inf``.
    """
    branch = _log_bound_branch(params, geom)
    if branch <= 0:
        return params.K
    return params.K * math.exp(branch) if branch < 709.0 else math.inf


def sup_bound_report(observed_sup: float, params: BoundParams, geom: DomainGeometry) -> dict:
    """Compare a simulated supremum against the bound without asserting anything."""
    try:
        bound = apriori_sup_bound(params, geom)
    except ExponentDomainError as exc:
        return {"observed": observed_sup, "bound": None, "applicable": False, "reason": str(exc)}
    return {
        "observed": observed_sup,
        "bound": bound,
        "applicable": True,
        "violated": observed_sup > bound,
    }
