"""Closed-form CHSH bounds, violation thresholds and compatibility checks.

Every bound here is a function of the measurement strengths, the relative
angles on each side, and the singular values of the spin correlation
matrix. Evaluation routes are doubled where cheap: the 2x2 strength/angle
matrix is decomposed both in closed form and by SVD, and the two must
agree or an internal-consistency error is raised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .chsh import chsh, n_matrix
from .errors import DomainError, InternalConsistencyError, InvalidInputError
from .linalg import singular_values, svd
from .model import FanoState, Observable, Scenario, StrengthQuad, correlation_singular_values

# Slack used when classifying boundary cases of the compatibility
# conditions, so that exactly-saturating pairs count as compatible.
COMPAT_SLACK = 1e-10

_CRITERIA = (
    "horodecki",
    "thm1",
    "thm2",
    "cor1",
    "cor2",
    "cor3",
    "cor4",
    "cor6",
    "thm3",
    "thm4",
    "sgen",
)


@dataclass(frozen=True)
class WBundle:
    """The 2x2 strength/angle matrix with its derived spectral data.

    ``i_plus``/``i_minus`` are the sum and difference of the two singular
    values; ``w_eig_plus``/``w_eig_minus`` are the eigenvalues of W^T W.
    ``coeff_a`` .. ``coeff_d`` are the four strength combinations that fill
    the matrix entries.
    """

    w: np.ndarray
    coeff_a: float
    coeff_b: float
    coeff_c: float
    coeff_d: float
    i_plus: float
    i_minus: float
    w_eig_plus: float
    w_eig_minus: float


@dataclass(frozen=True)
class BoundReport:
    """A computed bound with its criterion label and optional optimal angles."""

    value: float
    criterion_id: str
    violated: bool = field(init=False)
    optimal_angles: tuple[float, float] | None = None
    notes: str = ""

    def __post_init__(self):
        if self.criterion_id not in _CRITERIA:
            raise InvalidInputError(f"unknown criterion_id {self.criterion_id!r}")
        # Strict comparison by design: near-threshold margins stay visible
        # in `value` instead of being absorbed by a tolerance.
        object.__setattr__(self, "violated", self.value > 2.0)


def _check_angle(angle: float, name: str) -> float:
    angle = float(angle)
    if not (math.isfinite(angle) and -1e-12 <= angle <= math.pi + 1e-12):
        raise InvalidInputError(f"{name} must lie in [0, pi] (radians), got {angle}")
    return min(max(angle, 0.0), math.pi)


def _require_tstate(state: FanoState, criterion: str) -> None:
    if not state.is_tstate():
        raise DomainError(
            f"{criterion} requires a T-state (|a| and |b| below 1e-10); "
            f"got |a| = {float(np.max(np.abs(state.a))):.3e}, "
            f"|b| = {float(np.max(np.abs(state.b))):.3e}"
        )


def horodecki(t) -> float:
    """2 sqrt(s1^2 + s2^2) for a 3x3 correlation matrix, in [0, 2 sqrt(2)]."""
    s = singular_values(np.asarray(t, dtype=float))
    return 2.0 * math.hypot(float(s[0]), float(s[1]))


def coefficients_abcd(q: StrengthQuad) -> tuple[float, float, float, float]:
    """The four signed strength combinations filling the 2x2 matrix."""
    sx, sxp, sy, syp = q.as_tuple()
    return (
        sx * sy + sx * syp + sxp * sy - sxp * syp,
        sx * sy - sx * syp + sxp * sy + sxp * syp,
        sx * sy + sx * syp - sxp * sy + sxp * syp,
        -sx * sy + sx * syp + sxp * sy + sxp * syp,
    )


def _i_pm_squared(q: StrengthQuad, theta: float, phi: float, absolute: bool) -> tuple[float, float]:
    sx, sxp, sy, syp = q.as_tuple()
    base = (sx * sx + sxp * sxp) * (sy * sy + syp * syp)
    term_theta = 2.0 * sx * sxp * (sy * sy - syp * syp) * math.cos(theta)
    term_phi = 2.0 * sy * syp * (sx * sx - sxp * sxp) * math.cos(phi)
    if absolute:
        term_theta = abs(term_theta)
        term_phi = abs(term_phi)
    cross = 4.0 * sx * sxp * sy * syp * math.sin(theta) * math.sin(phi)
    plus = base + term_theta + term_phi + cross
    minus = base + term_theta + term_phi - cross
    return (max(plus, 0.0), max(minus, 0.0))


def w_bundle(q: StrengthQuad, theta: float, phi: float) -> WBundle:
    """Strength/angle matrix W with both spectral routes cross-checked.

    The singular-value sum and difference are computed from the SVD of W
    and validated against the explicit closed form (compared on squares,
    which avoids square-root noise when the difference is near zero).
    """
    theta = _check_angle(theta, "theta")
    phi = _check_angle(phi, "phi")
    ca, cb, cc, cd = coefficients_abcd(q)
    cth, sth = math.cos(0.5 * theta), math.sin(0.5 * theta)
    cph, sph = math.cos(0.5 * phi), math.sin(0.5 * phi)
    w = np.array(
        [
            [ca * cth * cph, cb * cth * sph],
            [cc * sth * cph, -cd * sth * sph],
        ]
    )
    s = svd(w).s
    i_plus = float(s[0] + s[1])
    i_minus = float(s[0] - s[1])
    plus_sq, minus_sq = _i_pm_squared(q, theta, phi, absolute=False)
    if abs(i_plus * i_plus - plus_sq) > 1e-8 or abs(i_minus * i_minus - minus_sq) > 1e-8:
        raise InternalConsistencyError(
            "closed-form and SVD routes for the strength/angle matrix disagree: "
            f"sum^2 {i_plus * i_plus:.15g} vs {plus_sq:.15g}, "
            f"diff^2 {i_minus * i_minus:.15g} vs {minus_sq:.15g}"
        )
    return WBundle(
        w=w,
        coeff_a=ca,
        coeff_b=cb,
        coeff_c=cc,
        coeff_d=cd,
        i_plus=i_plus,
        i_minus=i_minus,
        w_eig_plus=float(s[0] * s[0]),
        w_eig_minus=float(s[1] * s[1]),
    )


def s0_bound(state: FanoState, q: StrengthQuad, theta: float, phi: float) -> BoundReport:
    """Tight CHSH bound for unbiased observables with fixed strengths and angles.

    Equals s1(T) s1(W) + s2(T) s2(W) for the strength/angle matrix W.
    """
    bundle = w_bundle(q, theta, phi)
    s1, s2, _ = correlation_singular_values(state)
    value = 0.5 * (s1 + s2) * bundle.i_plus + 0.5 * (s1 - s2) * bundle.i_minus
    return BoundReport(value=value, criterion_id="thm1")


def s0_tilde(state: FanoState, q: StrengthQuad, theta: float, phi: float) -> BoundReport:
    """Best bound over the four CHSH relabelings (absolute-value form).

    Exceeds the canonical bound unless the strengths are equal on each
    side, in which case the two coincide.
    """
    theta = _check_angle(theta, "theta")
    phi = _check_angle(phi, "phi")
    plus_sq, minus_sq = _i_pm_squared(q, theta, phi, absolute=True)
    s1, s2, _ = correlation_singular_values(state)
    value = 0.5 * (s1 + s2) * math.sqrt(plus_sq) + 0.5 * (s1 - s2) * math.sqrt(minus_sq)
    return BoundReport(value=value, criterion_id="cor3")


def j_max(q: StrengthQuad) -> float:
    """Largest bias-only CHSH contribution permitted by strength + |bias| <= 1."""
    sx, sxp, sy, syp = q.as_tuple()
    return (2.0 - sx - sxp) * (2.0 - sy - syp) - 2.0 * (1.0 - max(sx, sxp)) * (
        1.0 - max(sy, syp)
    )


def st_bound(state: FanoState, q: StrengthQuad, theta: float, phi: float) -> BoundReport:
    """Tight CHSH bound for arbitrary (possibly biased) observables on a T-state."""
    _require_tstate(state, "thm2")
    base = s0_bound(state, q, theta, phi)
    return BoundReport(value=base.value + j_max(q), criterion_id="thm2")


def st_tilde(state: FanoState, q: StrengthQuad, theta: float, phi: float) -> BoundReport:
    """Relabeling-maximized T-state bound (add the bias term to the tilde bound)."""
    _require_tstate(state, "cor6")
    base = s0_tilde(state, q, theta, phi)
    return BoundReport(value=base.value + j_max(q), criterion_id="cor6")


def _equal_angle_choice(s1: float, s2: float) -> tuple[float, float]:
    rsq = s1 * s1 + s2 * s2
    if rsq <= 0.0:
        return (0.0, 0.0)
    arg = min(1.0, 2.0 * s1 * s2 / rsq)
    angle = math.asin(math.sqrt(arg))
    return (angle, angle)


def cor1_bound(state: FanoState, s_a: float, s_b: float) -> BoundReport:
    """Tight bound for equal strengths per side: 2 s_a s_b sqrt(s1^2 + s2^2).

    The reported angles are the equal-angle member of the optimal family
    sin(theta) sin(phi) = 2 s1 s2 / (s1^2 + s2^2), taken in [0, pi/2].
    """
    s1, s2, _ = correlation_singular_values(state)
    value = 2.0 * float(s_a) * float(s_b) * math.hypot(s1, s2)
    return BoundReport(value=value, criterion_id="cor1", optimal_angles=_equal_angle_choice(s1, s2))


def cor2_sufficient(state: FanoState, q: StrengthQuad) -> BoundReport:
    """Right-angle bound, a strengths-only sufficient condition for violation."""
    sx, sxp, sy, syp = q.as_tuple()
    i_plus = math.hypot(sx * sy + sxp * syp, sx * syp + sxp * sy)
    i_minus = math.hypot(sx * sy - sxp * syp, sx * syp - sxp * sy)
    s1, s2, _ = correlation_singular_values(state)
    value = 0.5 * (i_plus + i_minus) * s1 + 0.5 * (i_plus - i_minus) * s2
    return BoundReport(
        value=value,
        criterion_id="cor2",
        optimal_angles=(0.5 * math.pi, 0.5 * math.pi),
    )


def cor4_bound(state: FanoState, s_a: float, s_b: float) -> BoundReport:
    """T-state analogue of the equal-strengths bound, with the bias term added."""
    _require_tstate(state, "cor4")
    base = cor1_bound(state, s_a, s_b)
    value = base.value + 2.0 * (1.0 - float(s_a)) * (1.0 - float(s_b))
    return BoundReport(value=value, criterion_id="cor4", optimal_angles=base.optimal_angles)


def strength_thresholds(radius_r: float) -> tuple[float, float]:
    """Critical common strengths (unbiased, biased) for violation on a T-state.

    ``radius_r`` is sqrt(s1^2 + s2^2) of the correlation matrix. Violation
    requires strength > 1/sqrt(r) unbiased and > 2/(1 + r) biased; the
    biased threshold is the smaller one exactly when r > 1.
    """
    radius_r = float(radius_r)
    if not (math.isfinite(radius_r) and radius_r > 0.0):
        raise InvalidInputError("radius_r must be positive")
    return (1.0 / math.sqrt(radius_r), 2.0 / (1.0 + radius_r))


def thm3_bound(
    state: FanoState,
    s_a: float,
    sy: float,
    syp: float,
    biased_tstate: bool = False,
) -> BoundReport:
    """Tight bound for equal strengths s_a on side A and sy >= syp on side B.

    Unbiased: 2 s_a sqrt(s1^2 sy^2 + s2^2 syp^2). With ``biased_tstate``
    the state must be a T-state and 2 (1 - s_a)(1 - syp) is added. The
    optimal angles are unique for sy != syp: tan(theta/2) = syp s2 / (sy s1)
    and phi = pi/2.
    """
    s_a, sy, syp = float(s_a), float(sy), float(syp)
    if sy < syp:
        raise InvalidInputError("requires sy >= syp; swap the B-side observables")
    if biased_tstate:
        _require_tstate(state, "thm3 (biased T-state form)")
    s1, s2, _ = correlation_singular_values(state)
    value = 2.0 * s_a * math.hypot(s1 * sy, s2 * syp)
    if biased_tstate:
        value += 2.0 * (1.0 - s_a) * (1.0 - syp)
    theta = 2.0 * math.atan2(syp * s2, sy * s1)
    return BoundReport(value=value, criterion_id="thm3", optimal_angles=(theta, 0.5 * math.pi))


def thm4_branch(q: StrengthQuad) -> tuple[bool, float, float, float]:
    """Branch data for the equal-singular-value bound.

    Returns (first_branch, a, b, c) with a, b, c the stationary-point
    coefficients. The first (interior-angle) branch applies when c > 0 and
    |a b| <= c^2; written division-free so zero strengths fall through to
    the extremal-angle branch.
    """
    sx, sxp, sy, syp = q.as_tuple()
    a = sx * sxp * (sy * sy - syp * syp)
    b = sy * syp * (sx * sx - sxp * sxp)
    c = 2.0 * sx * sxp * sy * syp
    return (c > 0.0 and abs(a * b) <= c * c, a, b, c)


def thm4_bound(state: FanoState, q: StrengthQuad, biased_tstate: bool = False) -> BoundReport:
    """Tight bound and optimal angles for states with s1(T) = s2(T).

    First branch: s1 sqrt(2 (sx^2 + sxp^2)(sy^2 + syp^2)) at interior
    angles. Otherwise s1 max(|A|, |B|, |C|, |D|) at extremal angles
    cos(theta) = sign(sy - syp), cos(phi) = sign(sx - sxp).
    """
    if biased_tstate:
        _require_tstate(state, "thm4 (biased T-state form)")
    s1, s2, _ = correlation_singular_values(state)
    if abs(s1 - s2) > 1e-8:
        raise DomainError(
            f"requires s1(T) = s2(T) within 1e-8, got s1 = {s1:.12g}, s2 = {s2:.12g}"
        )
    sx, sxp, sy, syp = q.as_tuple()
    first, _, _, _ = thm4_branch(q)
    if first:
        value = s1 * math.sqrt(2.0 * (sx * sx + sxp * sxp) * (sy * sy + syp * syp))
        cos_theta = (sx * sx + sxp * sxp) * (sy * sy - syp * syp) / (
            2.0 * sx * sxp * (sy * sy + syp * syp)
        )
        cos_phi = (sx * sx - sxp * sxp) * (sy * sy + syp * syp) / (
            2.0 * sy * syp * (sx * sx + sxp * sxp)
        )
        angles = (
            math.acos(max(-1.0, min(1.0, cos_theta))),
            math.acos(max(-1.0, min(1.0, cos_phi))),
        )
        note = "interior-angle branch"
    else:
        ca, cb, cc, cd = coefficients_abcd(q)
        value = s1 * max(abs(ca), abs(cb), abs(cc), abs(cd))
        angles = (
            0.0 if sy >= syp else math.pi,
            0.0 if sx >= sxp else math.pi,
        )
        note = "extremal-angle branch"
    if biased_tstate:
        value += j_max(q)
    return BoundReport(value=value, criterion_id="thm4", optimal_angles=angles, notes=note)


def sgen_bound(scenario: Scenario, state: FanoState) -> BoundReport:
    """Necessary bound for arbitrary scenarios: sum_j s_j(Theta) s_j(N)."""
    s_theta = singular_values(state.theta_matrix())
    s_n = singular_values(n_matrix(scenario))
    return BoundReport(value=float(s_theta @ s_n), criterion_id="sgen")


# ---------------------------------------------------------------------------
# Compatibility (joint measurability) of two observables on one side


def compat_busch(x: Observable, xp: Observable) -> bool:
    """Joint-measurability verdict for two unbiased observables.

    Evaluates |S x + S' x'| + |S x - S' x'| <= 2 together with the
    equivalent sine form; the two must agree up to boundary slack, and the
    vector-norm verdict is returned.
    """
    if abs(x.bias) >= 1e-12 or abs(xp.bias) >= 1e-12:
        raise DomainError("both observables must be unbiased; use compat_full instead")
    lhs = _busch_lhs(x, xp)
    verdict = lhs <= 2.0 + COMPAT_SLACK
    # Division-free sine form: S S' sin(theta) <= sqrt((1 - S^2)(1 - S'^2)).
    cross = np.cross(x.direction, xp.direction)
    left = x.strength * xp.strength * float(np.sqrt(cross @ cross))
    right = math.sqrt(max(0.0, (1.0 - x.strength**2) * (1.0 - xp.strength**2)))
    verdict_sine = left <= right + COMPAT_SLACK
    if verdict != verdict_sine and abs(lhs - 2.0) > 1e-9 and abs(left - right) > 1e-9:
        raise InternalConsistencyError(
            f"compatibility forms disagree away from the boundary: "
            f"norm form {lhs:.15g} vs 2, sine form {left:.15g} vs {right:.15g}"
        )
    return verdict


def _busch_lhs(x: Observable, xp: Observable) -> float:
    v_sum = x.strength * x.direction + xp.strength * xp.direction
    v_diff = x.strength * x.direction - xp.strength * xp.direction
    return float(np.sqrt(v_sum @ v_sum) + np.sqrt(v_diff @ v_diff))


def compat_necessary(x: Observable, xp: Observable) -> bool:
    """Simple necessary compatibility condition for arbitrary observables.

    max(|S x + S' x'|, |B + B'|) + max(|S x - S' x'|, |B - B'|) <= 2.
    Reduces to the unbiased condition when both biases vanish.
    """
    v_sum = x.strength * x.direction + xp.strength * xp.direction
    v_diff = x.strength * x.direction - xp.strength * xp.direction
    lhs = max(float(np.sqrt(v_sum @ v_sum)), abs(x.bias + xp.bias)) + max(
        float(np.sqrt(v_diff @ v_diff)), abs(x.bias - xp.bias)
    )
    return lhs <= 2.0 + COMPAT_SLACK


def max_reversibility(x: Observable) -> float:
    """Strength/bias functional entering the full compatibility condition."""
    up = (1.0 + x.bias) ** 2 - x.strength**2
    dn = (1.0 - x.bias) ** 2 - x.strength**2
    if up < -1e-12 or dn < -1e-12:
        raise InvalidInputError("strength + |bias| exceeds 1; no valid reversibility")
    return 0.5 * math.sqrt(max(up, 0.0)) + 0.5 * math.sqrt(max(dn, 0.0))


def compat_full(x: Observable, xp: Observable) -> bool:
    """Known necessary-and-sufficient compatibility condition.

    (1 - R^2 - R'^2)(1 - B^2/R^2 - B'^2/R'^2) <= (S S' cos(theta) - |B B'|)^2
    with R the maximum reversibility of each observable. A vanishing R
    (projective observable) contributes 0 to the bias sum when its bias is
    zero and makes the condition depend on the sign of the first factor
    otherwise.
    """
    rx = max_reversibility(x)
    rxp = max_reversibility(xp)
    cos_theta = float(x.direction @ xp.direction)
    rhs = (x.strength * xp.strength * cos_theta - abs(x.bias * xp.bias)) ** 2
    first = 1.0 - rx * rx - rxp * rxp
    bias_sum = 0.0
    infinite_bias = False
    for bias, rev in ((x.bias, rx), (xp.bias, rxp)):
        if rev > 1e-15:
            bias_sum += (bias / rev) ** 2
        elif abs(bias) > 1e-15:
            infinite_bias = True
    if infinite_bias:
        # Limit of the left side is -inf * sign(first); compatible unless
        # the first factor is strictly negative. Unreachable for valid
        # observables (R = 0 forces bias = 0) but kept for safety.
        return first >= -COMPAT_SLACK
    lhs = first * (1.0 - bias_sum)
    return lhs <= rhs + COMPAT_SLACK
