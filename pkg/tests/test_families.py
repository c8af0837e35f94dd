import math

import numpy as np
import pytest

from spinsq.dicke import moments
from spinsq.errors import ParameterError
from spinsq.families import (
    FamilySpec,
    build,
    closed_form_moments,
    family_specs,
    mu,
    phi_grid,
    printed_jz2,
    theta_grid,
)


def test_bell_type_state():
    s = build(FamilySpec("even-pair", 2, 0, theta=math.pi / 4))
    assert np.allclose(s.amplitudes, [1 / math.sqrt(2), 0, 1 / math.sqrt(2)], atol=1e-15)


def test_adjacent_pair_degenerates_to_w():
    s = build(FamilySpec("adjacent-pair", 3, 0, theta=math.pi / 2))
    assert np.allclose(np.abs(s.amplitudes), [0, 1, 0, 0], atol=1e-15)


def test_theta_zero_is_coherent():
    s = build(FamilySpec("even-pair", 3, 0, theta=0.0))
    assert np.array_equal(s.amplitudes, [1, 0, 0, 0])


def test_general_pair_and_single_dicke():
    s = build(FamilySpec("general-pair", 6, 1, 4, theta=0.5, phi=1.0))
    assert np.count_nonzero(s.amplitudes) == 2
    assert s.amplitudes[5] == pytest.approx(np.exp(1j) * math.sin(0.5))
    assert build(FamilySpec("single-dicke", 4, 3)).amplitudes[3] == 1.0


def test_mu_example():
    assert mu(3, 0) == 12


@pytest.mark.parametrize(
    "spec",
    [
        FamilySpec("even-pair", 3, 2),
        FamilySpec("even-pair", 3, 0, theta=math.pi),
        FamilySpec("even-pair", 3, 0, theta=-0.1),
        FamilySpec("even-pair", 3, 0, phi=2 * math.pi),
        FamilySpec("general-pair", 5, 0, 2),
        FamilySpec("general-pair", 5, 3, 3),
        FamilySpec("adjacent-pair", 3, 0, 2),
        FamilySpec("single-dicke", 1, 0),
        FamilySpec("nope", 3, 0),
        FamilySpec("custom-file", 3),
    ],
)
def test_invalid_specs(spec):
    with pytest.raises(ParameterError):
        build(spec)


def test_grids():
    assert theta_grid(4) == [0.0, math.pi / 4, math.pi / 2, 3 * math.pi / 4]
    assert phi_grid(2) == [0.0, math.pi]
    assert [s.n for s in family_specs("even-pair", 5)] == [0, 1, 2, 3]
    assert [s.n for s in family_specs("general-pair", 4, 3)] == [0, 1]
    assert family_specs("general-pair", 3, 4) == []


def test_closed_form_simple_points():
    jz, jz2, jm2 = closed_form_moments(FamilySpec("even-pair", 5, 1))
    assert (jz, jz2, jm2) == (-1.5, 2.25, 0)
    jz, jz2, jm2 = closed_form_moments(FamilySpec("even-pair", 3, 0, theta=math.pi / 3))
    assert jz == pytest.approx(0, abs=1e-15)
    assert jz2 == pytest.approx(0.75)
    assert abs(jm2) == pytest.approx(1.5)


def test_closed_forms_match_ladder_moments():
    for N in range(2, 11):
        for spec in family_specs("even-pair", N):
            for phi in (0.0, math.pi / 3, math.pi):
                for theta in theta_grid(64):
                    s = spec.with_angles(theta, phi)
                    jz, jz2, jm2 = closed_form_moments(s)
                    m = moments(build(s))
                    assert abs(m.j1[2] - jz) <= 1e-12
                    assert abs(m.G[2, 2] - jz2) <= 1e-12
                    assert abs(m.jminus2 - jm2) <= 1e-12


def test_printed_variant_differs_off_axis():
    s = FamilySpec("even-pair", 4, 1, theta=0.8)
    assert printed_jz2(s) - closed_form_moments(s)[1] == pytest.approx(-3 * math.sin(0.8) ** 2)
    assert printed_jz2(s.with_angles(0.0)) == closed_form_moments(s.with_angles(0.0))[1]


def test_parity_conditions_hold_for_even_pair():
    for N in (2, 5, 8):
        for spec in family_specs("even-pair", N):
            for theta in theta_grid(16):
                m = moments(build(spec.with_angles(theta, 1.3)))
                assert max(abs(m.j1[0]), abs(m.j1[1]), abs(m.G[0, 2]), abs(m.G[1, 2])) <= 1e-12


def test_adjacent_pair_breaks_parity():
    m = moments(build(FamilySpec("adjacent-pair", 4, 1, theta=0.6)))
    assert not m.has_parity_symmetry()
    assert build(FamilySpec("adjacent-pair", 4, 1, theta=0.6)).support_parity() == "none"
