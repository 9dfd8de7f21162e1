"""Euclidean kernels: closed form, spectral sum, partial-wave assembly,
composition rule, and trace.

Independent oracles used here: the Mehler closed form of the flat 2D
oscillator kernel (a Gaussian path-integral identity that never touches the
partial-wave code), the free-particle kernel limit, explicit spectral sums,
and trapezoid/ladder identities.
"""

import math

import pytest

from coneqm.geometry import ConeGeometry, PhysicalConstants
from coneqm.grids import RadialGrid
from coneqm.propagator import (KernelQuery, full_kernel, partial_wave_trace,
                               partial_wave_trace_exact, radial_kernel_closed,
                               radial_kernel_spectral, semigroup_defect,
                               spectral_vs_closed_relative_error)
from coneqm.spectrum import OscillatorModel

NAT = PhysicalConstants()


def model(sigma=0.5, kappa=1.0, omega=1.0, consts=NAT):
    return OscillatorModel(geom=ConeGeometry(sigma), consts=consts,
                           omega=omega, kappa=kappa)


def mehler_kernel(omega, r1, r2, dtheta, beta, consts=NAT):
    """Flat 2D oscillator heat kernel (Mehler form), the m-sum oracle."""
    a = consts.mass * omega / consts.hbar
    sh = math.sinh(omega * beta)
    ch = math.cosh(omega * beta)
    return (a / (2.0 * math.pi * sh)) * math.exp(
        -(a / (2.0 * sh)) * ((r1 * r1 + r2 * r2) * ch
                             - 2.0 * r1 * r2 * math.cos(dtheta)))


# ------------------------------------------------------------- closed form


def test_free_flat_limit():
    # omega -> 0 at sigma=1, kappa=0, m=0: kernel -> (M/hbar beta)
    # * exp(-M(r1^2+r2^2)/(2 hbar beta)) I_0(M r1 r2/(hbar beta));
    # at r1=r2=beta=1 that is e^{-1} I_0(1), frozen from the series oracle.
    m = model(sigma=1.0, kappa=0.0, omega=1e-8)
    val = radial_kernel_closed(m, 0, 1.0, 1.0, 1.0)
    assert val == pytest.approx(0.46575960759364043, rel=1e-8)


def test_closed_symmetry_exact():
    m = model()
    for mm in (0, 1, 3):
        assert radial_kernel_closed(m, mm, 0.7, 1.3, 0.9) \
            == radial_kernel_closed(m, mm, 1.3, 0.7, 0.9)


def test_closed_positivity():
    m = model(sigma=0.8, kappa=2.0)
    for mm in (0, 1, 4):
        for r1, r2, b in [(0.1, 0.1, 0.3), (1.0, 2.5, 1.0), (4.0, 0.2, 2.0)]:
            assert radial_kernel_closed(m, mm, r1, r2, b) > 0.0


def test_closed_matches_spectral_example():
    m = model(sigma=0.5, kappa=1.0)
    closed = radial_kernel_closed(m, 0, 1.0, 1.0, 2.0)
    spectral = radial_kernel_spectral(m, 0, 1.0, 1.0, 2.0, 40).value
    assert spectral == pytest.approx(closed, rel=1e-8)


def test_closed_domain_errors():
    m = model()
    with pytest.raises(ValueError):
        radial_kernel_closed(m, 0, 0.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        radial_kernel_closed(m, 0, 1.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        radial_kernel_closed(m, 0, 1.0, 1.0, -2.0)


def test_sigma_one_order_equals_flat_index():
    # at sigma = 1 the kernel order is sqrt(4m^2 + kappa)/2 exactly
    m = model(sigma=1.0, kappa=2.0)
    for mm in range(5):
        assert m.nu(mm) == pytest.approx(
            0.5 * math.sqrt(4.0 * mm * mm + 2.0), rel=1e-15)


def test_no_overflow_deep_in_tails():
    # scaled Bessel keeps the kernel finite for extreme arguments
    m = model(omega=1.0)
    val = radial_kernel_closed(m, 0, 0.01, 0.01, 1e-6)
    assert math.isfinite(val)
    val = radial_kernel_closed(m, 0, 8.0, 8.0, 1e-5)
    assert math.isfinite(val)


# ------------------------------------------------------------ spectral sum


def test_spectral_ground_state_dominance():
    # at large beta the n_max = 0 sum carries the whole kernel
    m = model(sigma=0.5, kappa=1.0)
    ratios = []
    for beta in (2.0, 4.0, 6.0):
        closed = radial_kernel_closed(m, 0, 1.0, 1.0, beta)
        one = radial_kernel_spectral(m, 0, 1.0, 1.0, beta, 0).value
        ratios.append(one / closed)
    assert all(ratios[i + 1] > ratios[i] for i in range(len(ratios) - 1))
    assert ratios[-1] == pytest.approx(1.0, abs=1e-4)


def test_spectral_partial_sum_structure():
    m = model(sigma=0.8, kappa=2.0)
    s0 = radial_kernel_spectral(m, 1, 0.9, 1.1, 1.0, 0)
    s1 = radial_kernel_spectral(m, 1, 0.9, 1.1, 1.0, 1)
    # difference of consecutive partial sums is the explicit n=1 term
    assert abs(s1.value - s0.value) == pytest.approx(s1.last_term, rel=1e-12)
    assert s1.n_max == 1


def test_spectral_flat_agreement():
    m = model(sigma=1.0, kappa=0.0)
    err = spectral_vs_closed_relative_error(m, 1, 1.0, 1.0, 1.0, 40)
    assert err < 1e-10


def test_spectral_convergence_grid():
    # the propagator-wide invariant at its stated tolerance
    worst = 0.0
    for sigma in (0.5, 0.8, 1.0):
        for kappa in (1.0, 2.0):
            m = model(sigma=sigma, kappa=kappa)
            for mm in range(5):
                for r1 in (0.5, 1.0, 2.0):
                    for r2 in (0.5, 1.0, 2.0):
                        worst = max(worst, spectral_vs_closed_relative_error(
                            m, mm, r1, r2, 0.5, 40))
    assert worst < 1e-6


# ------------------------------------------------------------- full kernel


def test_full_kernel_matches_mehler():
    m = model(sigma=1.0, kappa=0.0)
    for dth in (0.0, math.pi / 3, math.pi):
        q = KernelQuery(r1=1.0, r2=1.0, beta=1.0, m_max=60)
        got = full_kernel(m, q, dth)
        assert got.value == pytest.approx(
            mehler_kernel(1.0, 1.0, 1.0, dth, 1.0), rel=1e-8)


def test_full_kernel_dtheta_independence_near_apex():
    # as r1 -> 0 only the m = 0 channel survives: the relative dtheta
    # variation shrinks linearly with r1 (the m=1 channel is O(r1))
    m = model(sigma=1.0, kappa=0.0)

    def spread(r1):
        vals = [full_kernel(m, KernelQuery(r1=r1, r2=1.0, beta=1.0, m_max=30),
                            dth).value for dth in (0.0, 1.0, math.pi)]
        return (max(vals) - min(vals)) / max(vals)

    assert spread(1e-6) < 5e-6
    assert spread(1e-8) < 5e-8


def test_full_kernel_dtheta_ordering():
    m = model(sigma=0.5, kappa=1.0)
    q = KernelQuery(r1=1.0, r2=1.0, beta=1.0, m_max=40)
    assert full_kernel(m, q, 0.0).value >= full_kernel(m, q, math.pi).value


def test_full_kernel_m0_isotropic_term():
    m = model()
    q = KernelQuery(r1=1.0, r2=1.2, beta=0.8, m_max=0)
    got = full_kernel(m, q, 2.1)
    expect = radial_kernel_closed(m, 0, 1.0, 1.2, 0.8) / (2.0 * math.pi)
    assert got.value == pytest.approx(expect, rel=1e-15)


def test_full_kernel_truncation_within_tail_bound():
    m = model(sigma=0.5, kappa=1.0)
    for m_max in (2, 5, 10, 20):
        q_small = KernelQuery(r1=1.0, r2=1.0, beta=0.5, m_max=m_max)
        q_big = KernelQuery(r1=1.0, r2=1.0, beta=0.5, m_max=m_max + 25)
        small = full_kernel(m, q_small, 0.9)
        big = full_kernel(m, q_big, 0.9)
        # the certified bound holds in exact arithmetic; allow the summation
        # rounding floor on top of it
        assert abs(big.value - small.value) \
            <= small.tail_bound + 1e-15 * abs(small.value)


def test_full_kernel_bit_reproducible():
    m = model(sigma=0.7, kappa=1.1)
    q = KernelQuery(r1=0.9, r2=1.4, beta=0.7, m_max=35)
    a = full_kernel(m, q, 1.234)
    b = full_kernel(m, q, 1.234)
    assert a.value == b.value and a.tail_bound == b.tail_bound


# --------------------------------------------------------------- semigroup


def test_semigroup_defect_small():
    m = model(sigma=0.5, kappa=1.0)
    grid = RadialGrid(1e-4, 12.0, 2000)
    for mm in (0, 1, 2):
        res = semigroup_defect(m, mm, 0.7, 1.3, 0.5, 0.5, grid)
        assert res.defect < 1e-8
        assert res.grid_adequate


def test_semigroup_short_second_leg_grows_defect():
    # beta2 -> 0 degenerates toward the identity; once the short-time kernel
    # width sqrt(hbar beta2/M) falls below the grid spacing the quadrature
    # cannot resolve the near-delta factor and the defect becomes O(kernel)
    m = model()
    grid = RadialGrid(1e-4, 12.0, 2000)
    wide = semigroup_defect(m, 1, 0.7, 1.3, 0.5, 0.5, grid).defect
    narrow = semigroup_defect(m, 1, 0.7, 1.3, 0.5, 1e-6, grid).defect
    assert wide < 1e-12
    assert narrow > 1e6 * max(wide, 1e-18)
    target = radial_kernel_closed(m, 1, 1.3, 0.7, 0.5 + 1e-6)
    assert narrow > 0.1 * target


def test_semigroup_truncated_grid_fires_diagnostic():
    m = model()
    good = semigroup_defect(m, 1, 0.7, 1.3, 0.5, 0.5,
                            RadialGrid(1e-4, 12.0, 2000))
    bad = semigroup_defect(m, 1, 0.7, 1.3, 0.5, 0.5,
                           RadialGrid(1e-4, 2.0, 2000))
    assert good.grid_adequate
    assert not bad.grid_adequate
    assert bad.defect > good.defect
    assert bad.boundary_fraction > 1e-3


# ------------------------------------------------------------------- trace


@pytest.mark.parametrize("beta", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("mm", [0, 1, 2])
def test_trace_matches_geometric_ladder(beta, mm):
    m = model(sigma=0.5, kappa=1.0)
    grid = RadialGrid(1e-4, 12.0, 2000)
    num = partial_wave_trace(m, mm, beta, grid)
    exact = partial_wave_trace_exact(m, mm, beta)
    assert abs(num - exact) < 1e-7


def test_trace_exact_is_ladder_sum():
    # the closed form equals the literal sum over e^{-beta E_n}
    m = model(sigma=0.8, kappa=2.0, omega=1.3)
    beta = 0.9
    nu = m.nu(1)
    ladder = sum(math.exp(-beta * m.omega * (2 * n + 1 + nu))
                 for n in range(400))
    assert partial_wave_trace_exact(m, 1, beta) == pytest.approx(
        ladder, rel=1e-12)
