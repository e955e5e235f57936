import math

import numpy as np
import pytest

from bellbound import (
    DomainError,
    InvalidInputError,
    StrengthQuad,
    bell_diagonal,
    cor1_bound,
    cor2_sufficient,
    cor4_bound,
    correlation_singular_values,
    horodecki,
    j_max,
    random_state,
    s0_bound,
    s0_tilde,
    singlet,
    st_bound,
    st_tilde,
    state_from_fano,
    strength_thresholds,
    svd,
    thm3_bound,
    thm4_bound,
    thm4_branch,
    w_bundle,
    werner,
)

SQ2 = math.sqrt(2.0)
PI2 = math.pi / 2


def _i_pm_closed_form(q, theta, phi):
    # Explicit singular-value sum/difference of the strength/angle matrix,
    # recomputed here as an independent check of the SVD route.
    sx, sxp, sy, syp = q.as_tuple()
    base = (sx**2 + sxp**2) * (sy**2 + syp**2)
    tth = 2 * sx * sxp * (sy**2 - syp**2) * math.cos(theta)
    tph = 2 * sy * syp * (sx**2 - sxp**2) * math.cos(phi)
    cross = 4 * sx * sxp * sy * syp * math.sin(theta) * math.sin(phi)
    return (
        math.sqrt(max(0.0, base + tth + tph + cross)),
        math.sqrt(max(0.0, base + tth + tph - cross)),
    )


def _random_quad(rng):
    return StrengthQuad(*rng.uniform(0.0, 1.0, 4))


def test_horodecki_examples():
    assert abs(horodecki(singlet().t) - 2 * SQ2) < 1e-14
    assert abs(horodecki(werner(0.5).t) - SQ2) < 1e-14
    assert horodecki(np.zeros((3, 3))) == 0.0


def test_w_bundle_projective_right_angles():
    wb = w_bundle(StrengthQuad(1, 1, 1, 1), PI2, PI2)
    assert np.allclose(wb.w, [[1, 1], [1, -1]], atol=1e-14)
    assert (wb.coeff_a, wb.coeff_b, wb.coeff_c, wb.coeff_d) == (2, 2, 2, 2)
    assert abs(wb.i_plus - 2 * SQ2) < 1e-12
    assert abs(wb.i_minus) < 1e-12


def test_w_bundle_zero_strengths():
    wb = w_bundle(StrengthQuad(0, 0, 0, 0), 1.0, 2.0)
    assert wb.i_plus == 0.0 and wb.i_minus == 0.0


def test_w_bundle_routes_agree():
    rng = np.random.default_rng(11)
    for _ in range(300):
        q = _random_quad(rng)
        theta, phi = rng.uniform(0, math.pi, 2)
        wb = w_bundle(q, theta, phi)
        ip, im = _i_pm_closed_form(q, theta, phi)
        assert abs(wb.i_plus**2 - ip**2) < 1e-10
        assert abs(wb.i_minus**2 - im**2) < 1e-10
        # sum^2 - diff^2 = 4 |det W|
        det = abs(np.linalg.det(wb.w))
        assert abs(wb.i_plus**2 - wb.i_minus**2 - 4 * det) < 1e-10
        s = svd(wb.w).s
        assert abs(wb.i_plus - (s[0] + s[1])) < 1e-10
        assert abs(wb.i_minus - (s[0] - s[1])) < 1e-10


def test_w_bundle_equal_strengths_eigenvalues():
    # Equal strengths per side: eigenvalues of W^T W collapse to
    # 2 sx^2 sy^2 (1 +- sqrt(1 - sin^2 theta sin^2 phi)).
    rng = np.random.default_rng(12)
    for _ in range(200):
        sa, sb = rng.uniform(0, 1, 2)
        theta, phi = rng.uniform(0, math.pi, 2)
        wb = w_bundle(StrengthQuad(sa, sa, sb, sb), theta, phi)
        root = math.sqrt(max(0.0, 1 - math.sin(theta) ** 2 * math.sin(phi) ** 2))
        assert abs(wb.w_eig_plus - 2 * sa**2 * sb**2 * (1 + root)) < 1e-10
        assert abs(wb.w_eig_minus - 2 * sa**2 * sb**2 * (1 - root)) < 1e-10


def test_w_bundle_rejects_bad_angles():
    with pytest.raises(InvalidInputError):
        w_bundle(StrengthQuad(1, 1, 1, 1), -0.1, 1.0)
    with pytest.raises(InvalidInputError):
        w_bundle(StrengthQuad(1, 1, 1, 1), 1.0, 3.5)


def test_s0_examples():
    q1 = StrengthQuad(1, 1, 1, 1)
    assert abs(s0_bound(singlet(), q1, PI2, PI2).value - 2 * SQ2) < 1e-12
    qs = StrengthQuad(0.9, 0.9, 0.9, 0.9)
    assert abs(s0_bound(singlet(), qs, PI2, PI2).value - 2 * 0.81 * SQ2) < 1e-12
    assert s0_bound(singlet(), StrengthQuad(0, 0, 0, 0), PI2, PI2).value == 0.0


def test_s0_two_forms_agree():
    rng = np.random.default_rng(13)
    kinds = ("tstate", "general", "pure")
    for trial in range(200):
        state = random_state(rng, kinds[trial % 3])
        q = _random_quad(rng)
        theta, phi = rng.uniform(0, math.pi, 2)
        s1, s2, _ = correlation_singular_values(state)
        wb = w_bundle(q, theta, phi)
        product_form = s1 * 0.5 * (wb.i_plus + wb.i_minus) + s2 * 0.5 * (wb.i_plus - wb.i_minus)
        split_form = 0.5 * (s1 + s2) * wb.i_plus + 0.5 * (s1 - s2) * wb.i_minus
        value = s0_bound(state, q, theta, phi).value
        assert abs(value - product_form) < 1e-10
        assert abs(value - split_form) < 1e-10


def test_s0_tilde_relabeling_maximum():
    rng = np.random.default_rng(14)
    for trial in range(200):
        state = random_state(rng, "tstate" if trial % 2 else "general")
        q = _random_quad(rng)
        theta, phi = rng.uniform(0, math.pi, 2)
        tilde = s0_tilde(state, q, theta, phi).value
        variants = [
            s0_bound(state, quad, theta, phi).value
            for quad in (
                q,
                StrengthQuad(q.sxp, q.sx, q.sy, q.syp),
                StrengthQuad(q.sx, q.sxp, q.syp, q.sy),
                StrengthQuad(q.sxp, q.sx, q.syp, q.sy),
            )
        ]
        assert abs(tilde - max(variants)) < 1e-10
        assert tilde >= s0_bound(state, q, theta, phi).value - 1e-12


def test_s0_tilde_equal_strengths_collapse():
    rng = np.random.default_rng(15)
    for _ in range(50):
        sa, sb = rng.uniform(0, 1, 2)
        theta, phi = rng.uniform(0, math.pi, 2)
        state = random_state(rng, "general")
        q = StrengthQuad(sa, sa, sb, sb)
        assert abs(s0_tilde(state, q, theta, phi).value - s0_bound(state, q, theta, phi).value) < 1e-12


def test_s0_tilde_specific_example():
    q = StrengthQuad(1, 0.5, 1, 0.5)
    theta = 2 * math.pi / 3
    tilde = s0_tilde(singlet(), q, theta, PI2).value
    plain = s0_bound(singlet(), q, theta, PI2).value
    assert tilde >= plain + 1e-6  # |cos theta| strictly helps here


def test_j_max_examples():
    assert j_max(StrengthQuad(1, 1, 1, 1)) == 0.0
    assert j_max(StrengthQuad(0, 0, 0, 0)) == 2.0
    assert abs(j_max(StrengthQuad(1, 0.5, 1, 0.5)) - 0.25) < 1e-15


def test_j_max_monotone_nonincreasing_in_strengths():
    rng = np.random.default_rng(16)
    for _ in range(200):
        q = _random_quad(rng)
        base = j_max(q)
        for idx in range(4):
            vals = list(q.as_tuple())
            vals[idx] = min(1.0, vals[idx] + rng.uniform(0, 1 - vals[idx]) if vals[idx] < 1 else 1.0)
            assert j_max(StrengthQuad(*vals)) <= base + 1e-12


def test_st_examples():
    q = StrengthQuad(0.835, 0.835, 0.835, 0.835)
    report = st_bound(singlet(), q, PI2, PI2)
    expected = 2 * 0.835**2 * SQ2 + 2 * 0.165**2
    assert abs(report.value - expected) < 1e-12
    assert report.violated
    unbiased = s0_bound(singlet(), q, PI2, PI2)
    assert not unbiased.violated and unbiased.value < 2.0
    # Unit strengths: no bias contribution left.
    q1 = StrengthQuad(1, 1, 1, 1)
    assert st_bound(singlet(), q1, PI2, PI2).value == s0_bound(singlet(), q1, PI2, PI2).value


def test_st_requires_tstate():
    bloch = state_from_fano([0, 0, 0.4], np.zeros(3), np.zeros((3, 3)))
    with pytest.raises(DomainError):
        st_bound(bloch, StrengthQuad(1, 1, 1, 1), PI2, PI2)
    with pytest.raises(DomainError):
        st_tilde(bloch, StrengthQuad(1, 1, 1, 1), PI2, PI2)


def test_st_tilde_examples():
    rng = np.random.default_rng(17)
    state = random_state(rng, "tstate")
    q1 = StrengthQuad(1, 1, 1, 1)
    theta, phi = rng.uniform(0, math.pi, 2)
    assert abs(st_tilde(state, q1, theta, phi).value - s0_tilde(state, q1, theta, phi).value) < 1e-14
    zero = StrengthQuad(0, 0, 0, 0)
    report = st_tilde(state, zero, theta, phi)
    assert report.value == 2.0 and not report.violated


def test_cor1_examples():
    report = cor1_bound(singlet(), 1.0, 1.0)
    assert abs(report.value - 2 * SQ2) < 1e-14
    assert np.allclose(report.optimal_angles, [PI2, PI2], atol=1e-12)
    # s1 = 0.9, s2 = 0.3 diagonal T-state (signs chosen to stay inside
    # the Bell tetrahedron).
    state = bell_diagonal(0.9, -0.3, 0.3)
    report = cor1_bound(state, 1.0, 1.0)
    assert abs(report.value - 2 * math.sqrt(0.90)) < 1e-12
    expected_sin = math.sqrt(0.54 / 0.90)
    assert abs(math.sin(report.optimal_angles[0]) - expected_sin) < 1e-12
    attained = s0_bound(state, StrengthQuad(1, 1, 1, 1), *report.optimal_angles).value
    assert abs(attained - report.value) < 1e-10


def test_cor1_degenerate_optimal_family():
    rng = np.random.default_rng(18)
    for _ in range(100):
        state = random_state(rng, "tstate")
        s1, s2, _ = correlation_singular_values(state)
        if s1 < 1e-6:
            continue
        sa, sb = rng.uniform(0.1, 1.0, 2)
        target = 2 * sa * sb * math.hypot(s1, s2)
        product = 2 * s1 * s2 / (s1**2 + s2**2) if s1 > 0 else 0.0
        # Any angle pair with sin(theta) sin(phi) = product is optimal.
        sin_theta = rng.uniform(max(product, 1e-9), 1.0)
        sin_phi = product / sin_theta
        theta = math.asin(min(1.0, sin_theta))
        if rng.uniform() < 0.5:
            theta = math.pi - theta
        phi = math.asin(min(1.0, sin_phi))
        value = s0_bound(state, StrengthQuad(sa, sa, sb, sb), theta, phi).value
        assert abs(value - target) < 1e-10


def test_cor2_examples():
    assert abs(cor2_sufficient(singlet(), StrengthQuad(1, 1, 1, 1)).value - 2 * SQ2) < 1e-12
    rng = np.random.default_rng(19)
    for _ in range(100):
        sa, sb = rng.uniform(0, 1, 2)
        state = random_state(rng, "general")
        s1, s2, _ = correlation_singular_values(state)
        value = cor2_sufficient(state, StrengthQuad(sa, sa, sb, sb)).value
        # Equal strengths per side: the right-angle bound collapses to
        # sqrt(2) sa sb (s1 + s2).
        assert abs(value - SQ2 * sa * sb * (s1 + s2)) < 1e-12
    assert cor2_sufficient(singlet(), StrengthQuad(0, 0, 0, 0)).value == 0.0


def test_cor2_matches_right_angle_bound():
    rng = np.random.default_rng(20)
    for trial in range(200):
        state = random_state(rng, "tstate" if trial % 2 else "general")
        q = _random_quad(rng)
        assert abs(cor2_sufficient(state, q).value - s0_bound(state, q, PI2, PI2).value) < 1e-10


def test_cor4_examples():
    assert abs(cor4_bound(singlet(), 1.0, 1.0).value - cor1_bound(singlet(), 1.0, 1.0).value) < 1e-14
    report = cor4_bound(singlet(), 0.835, 0.835)
    assert abs(report.value - (2 * 0.835**2 * SQ2 + 2 * 0.165**2)) < 1e-12
    assert cor4_bound(singlet(), 1.0, 0.0).value == 0.0
    bloch = state_from_fano([0, 0, 0.4], np.zeros(3), np.zeros((3, 3)))
    with pytest.raises(DomainError):
        cor4_bound(bloch, 0.5, 0.5)


def test_strength_thresholds():
    unb, bia = strength_thresholds(SQ2)
    assert abs(unb - 2 ** (-0.25)) < 1e-14
    assert abs(bia - 2 / (1 + SQ2)) < 1e-14
    assert strength_thresholds(1.0) == (1.0, 1.0)
    unb, bia = strength_thresholds(1.2)
    assert abs(unb - 1 / math.sqrt(1.2)) < 1e-14
    assert abs(bia - 2 / 2.2) < 1e-14
    assert bia < unb
    with pytest.raises(InvalidInputError):
        strength_thresholds(0.0)


def test_thm3_examples():
    report = thm3_bound(singlet(), 1.0, 1.0, 0.5)
    assert abs(report.value - 2 * math.sqrt(1.25)) < 1e-12
    assert abs(report.optimal_angles[0] - 2 * math.atan(0.5)) < 1e-12
    assert abs(report.optimal_angles[1] - PI2) < 1e-15
    #

    # sin(theta) matches the stated closed form.
    s1 = s2 = 1.0
    sy, syp = 1.0, 0.5
    sin_theta = 2 * s1 * s2 * sy * syp / (s1**2 * sy**2 + s2**2 * syp**2)
    assert abs(math.sin(report.optimal_angles[0]) - sin_theta) < 1e-12


def test_thm3_reduces_to_cor1():
    rng = np.random.default_rng(23)
    for _ in range(100):
        state = random_state(rng, "general")
        sa, sb = rng.uniform(0, 1, 2)
        assert abs(thm3_bound(state, sa, sb, sb).value - cor1_bound(state, sa, sb).value) < 1e-12


def test_thm3_weak_arm_limit():
    state = bell_diagonal(0.95, -0.2, 0.2)
    report = thm3_bound(state, 1.0, 1.0, 0.0)
    assert abs(report.value - 2 * 0.95) < 1e-12
    # Rank-one correlations with a vanishing arm never violate.
    from bellbound import product_state

    prod = product_state([0, 0, 1.0], [1.0, 0, 0])
    assert thm3_bound(prod, 1.0, 1.0, 0.0).value <= 2.0 + 1e-12


def test_thm3_biased_tstate_variant():
    report = thm3_bound(singlet(), 0.9, 0.8, 0.5, biased_tstate=True)
    base = 2 * 0.9 * math.hypot(0.8, 0.5)
    assert abs(report.value - (base + 2 * 0.1 * 0.5)) < 1e-12
    bloch = state_from_fano([0, 0, 0.4], np.zeros(3), np.zeros((3, 3)))
    with pytest.raises(DomainError):
        thm3_bound(bloch, 0.9, 0.8, 0.5, biased_tstate=True)


def test_thm3_requires_ordered_strengths():
    with pytest.raises(InvalidInputError):
        thm3_bound(singlet(), 1.0, 0.4, 0.6)


def test_thm4_interior_example():
    q = StrengthQuad(1, 0.8, 1, 0.9)
    first, a, b, c = thm4_branch(q)
    assert first and abs(a * b) / c**2 < 0.03
    report = thm4_bound(singlet(), q)
    assert abs(report.value - math.sqrt(2 * 1.64 * 1.81)) < 1e-12
    assert abs(math.cos(report.optimal_angles[0]) - 1.64 * 0.19 / (2 * 0.8 * 1.81)) < 1e-12
    assert abs(math.cos(report.optimal_angles[1]) - 0.36 * 1.81 / (2 * 0.9 * 1.64)) < 1e-12


def test_thm4_unit_strengths():
    report = thm4_bound(singlet(), StrengthQuad(1, 1, 1, 1))
    assert abs(report.value - 2 * SQ2) < 1e-12
    assert np.allclose(report.optimal_angles, [PI2, PI2], atol=1e-12)


def test_thm4_zero_strength_uses_extremal_branch():
    q = StrengthQuad(0.9, 0.7, 0.8, 0.0)
    first, _, _, c = thm4_branch(q)
    assert c == 0.0 and not first
    report = thm4_bound(werner(0.9), q, biased_tstate=True)
    assert report.value <= 2.0 + 1e-12
    assert "extremal" in report.notes


def test_thm4_branch_dominance():
    rng = np.random.default_rng(24)
    checked = 0
    while checked < 200:
        q = _random_quad(rng)
        first, a, b, c = thm4_branch(q)
        if not first:
            continue
        s1 = 0.8
        interior = s1 * math.sqrt(2 * (q.sx**2 + q.sxp**2) * (q.sy**2 + q.syp**2))
        from bellbound.bounds import coefficients_abcd

        extremal = s1 * max(abs(v) for v in coefficients_abcd(q))
        assert interior >= extremal - 1e-12
        checked += 1


def test_thm4_requires_equal_singular_values():
    with pytest.raises(DomainError):
        thm4_bound(bell_diagonal(0.9, -0.3, 0.3), StrengthQuad(1, 1, 1, 1))


def test_thm4_biased_requires_tstate():
    bloch = state_from_fano([0, 0, 0.4], np.zeros(3), np.zeros((3, 3)))
    with pytest.raises(DomainError):
        thm4_bound(bloch, StrengthQuad(1, 1, 1, 1), biased_tstate=True)


def test_schwarz_chain():
    rng = np.random.default_rng(25)
    for trial in range(200):
        state = random_state(rng, "tstate" if trial % 2 else "general")
        q = _random_quad(rng)
        theta, phi = rng.uniform(0, math.pi, 2)
        s1, s2, _ = correlation_singular_values(state)
        wb = w_bundle(q, theta, phi)
        middle = math.sqrt(np.trace(wb.w.T @ wb.w)) * math.hypot(s1, s2)
        value = s0_bound(state, q, theta, phi).value
        assert value <= middle + 1e-10
        assert middle <= horodecki(state.t) + 1e-10


def test_s0_monotone_in_strengths_at_right_angles():
    # Monotonicity in each strength holds at orthogonal relative angles.
    # It does NOT hold at arbitrary fixed angles: see the counterexample
    # test below, where a stronger observable cancels its partner.
    rng = np.random.default_rng(26)
    for _ in range(100):
        state = random_state(rng, "general")
        q = _random_quad(rng)
        base = s0_bound(state, q, PI2, PI2).value
        for idx in range(4):
            vals = list(q.as_tuple())
            vals[idx] = min(1.0, vals[idx] * 1.2 + 0.05)
            assert s0_bound(state, StrengthQuad(*vals), PI2, PI2).value >= base - 1e-12


def test_s0_not_monotone_at_antipodal_angles():
    # With x' forced antiparallel to x and a dead Y' arm, the X and X'
    # contributions cancel as their strengths approach each other.
    low = s0_bound(singlet(), StrengthQuad(0.0, 1.0, 1.0, 0.0), math.pi, 1.0).value
    high = s0_bound(singlet(), StrengthQuad(0.9, 1.0, 1.0, 0.0), math.pi, 1.0).value
    assert abs(low - 1.0) < 1e-12
    assert abs(high - 0.1) < 1e-12


def test_s0_side_exchange_symmetry():
    rng = np.random.default_rng(27)
    for _ in range(100):
        state = random_state(rng, "tstate")
        q = _random_quad(rng)
        theta, phi = rng.uniform(0, math.pi, 2)
        swapped = StrengthQuad(q.sy, q.syp, q.sx, q.sxp)
        assert abs(
            s0_bound(state, q, theta, phi).value - s0_bound(state, swapped, phi, theta).value
        ) < 1e-10
