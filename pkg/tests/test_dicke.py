import json
import math

import numpy as np
import pytest

from spinsq.dicke import (
    CollectiveMoments,
    SymmetricState,
    apply_jminus,
    apply_jplus,
    apply_jz,
    dump_state,
    expect_jminus2,
    expect_jplus2,
    load_state_file,
    mean_spin_direction,
    moments,
)
from spinsq.errors import ParameterError, PreconditionError
from spinsq.families import FamilySpec, build
from spinsq.oracle import expand, oracle_moments


def random_state(rng, N):
    return SymmetricState.from_amplitudes(rng.normal(size=N + 1) + 1j * rng.normal(size=N + 1))


def test_construction_checks():
    with pytest.raises(ParameterError):
        SymmetricState(1, [1.0, 0.0])
    with pytest.raises(ParameterError):
        SymmetricState(3, [1.0, 0.0])
    with pytest.raises(PreconditionError):
        SymmetricState(2, [1.0, 1.0, 0.0])
    with pytest.raises(ParameterError):
        SymmetricState.dicke(3, 4)
    s = SymmetricState.dicke(3, 1)
    with pytest.raises(ValueError):
        s.amplitudes[0] = 1.0


def test_jz_action():
    assert np.allclose(apply_jz(SymmetricState.dicke(4, 0)), -2.0 * SymmetricState.dicke(4, 0).amplitudes)
    assert np.allclose(apply_jz(SymmetricState.dicke(4, 2)), 0.0)


def test_ladder_actions():
    N = 5
    assert np.allclose(apply_jminus(SymmetricState.dicke(N, 0)), 0.0)
    assert np.allclose(apply_jplus(SymmetricState.dicke(N, N)), 0.0)
    up = apply_jplus(SymmetricState.dicke(N, 2))
    assert up[3] == pytest.approx(math.sqrt(3 * 3))
    down = apply_jminus(SymmetricState.dicke(N, 2))
    assert down[1] == pytest.approx(math.sqrt(2 * 4))


@pytest.mark.parametrize("theta", [0.0, 0.3, math.pi / 3, 2.0])
def test_even_pair_mean_z(theta):
    m = moments(build(FamilySpec("even-pair", 3, 0, theta=theta)))
    assert m.j1[2] == pytest.approx(-1.5 + 2 * math.sin(theta) ** 2, abs=1e-14)


@pytest.mark.parametrize("phi", [0.0, 0.7, 3.0])
def test_jminus2_closed_form_and_conjugate(phi):
    theta, N, n = 0.4, 6, 1
    s = build(FamilySpec("even-pair", N, n, theta=theta, phi=phi))
    mu = (n + 1) * (n + 2) * (N - n) * (N - n - 1)
    expected = 0.5 * np.exp(1j * phi) * math.sin(2 * theta) * math.sqrt(mu)
    assert abs(expect_jminus2(s) - expected) <= 1e-12
    # <J_+^2> is the conjugate, equal to <J_-^2> only when phi = 0
    assert abs(expect_jplus2(s) - np.conj(expected)) <= 1e-12
    assert abs(moments(s).jminus2 - expected) <= 1e-12


def test_w_state_moments():
    m = moments(SymmetricState.dicke(3, 1))
    assert m.j1 == pytest.approx([0, 0, -0.5], abs=1e-15)
    assert m.G[0, 0] == pytest.approx(1.75)
    assert m.G[1, 1] == pytest.approx(1.75)
    assert m.G[2, 2] == pytest.approx(0.25)
    assert m.j_squared == pytest.approx(15 / 4)


@pytest.mark.parametrize("N", [2, 5, 9])
def test_coherent_state_moments(N):
    m = moments(SymmetricState.dicke(N, 0))
    assert m.j1 == pytest.approx([0, 0, -N / 2])
    assert np.allclose(m.G, np.diag([N / 4, N / 4, N * N / 4]), atol=1e-13)
    assert mean_spin_direction(m) == pytest.approx([0, 0, -1])


def test_even_pair_crossing_moments():
    m = moments(build(FamilySpec("even-pair", 3, 0, theta=math.pi / 3)))
    assert abs(m.j1[2]) <= 1e-15
    assert m.G[2, 2] == pytest.approx(0.75, abs=1e-14)


def test_mean_spin_direction_cases():
    m = moments(build(FamilySpec("even-pair", 6, 1, theta=0.3)))
    assert mean_spin_direction(m) == pytest.approx([0, 0, -1])
    assert mean_spin_direction(moments(SymmetricState.dicke(4, 2))) is None


def test_trace_identity_and_ladder_consistency():
    rng = np.random.default_rng(1)
    for N in range(2, 13):
        for _ in range(5):
            s = random_state(rng, N)
            m = moments(s)
            assert abs(m.j_squared - N / 2 * (N / 2 + 1)) <= 1e-10
            assert abs(expect_jplus2(s) - np.conj(expect_jminus2(s))) <= 1e-12
            # J+J- + J-J+ + 2 Jz^2 = 2 J^2
            jp, jm = apply_jplus(s), apply_jminus(s)
            sym = np.vdot(jm, jm) + np.vdot(jp, jp) + 2 * m.G[2, 2]
            assert abs(sym - 2 * m.j_squared) <= 1e-10


def test_oracle_agreement_random_states():
    rng = np.random.default_rng(2024)
    for k in range(200):
        N = 2 + k % 11
        s = random_state(rng, N)
        m = moments(s)
        ref = oracle_moments(expand(s))
        assert np.max(np.abs(m.j1 - ref.j1)) <= 1e-10
        assert np.max(np.abs(m.G - ref.G)) <= 1e-10
        assert np.max(np.abs(np.array(m.populations()) - ref.populations())) <= 1e-12


def test_population_fallback_matches_exact():
    rng = np.random.default_rng(4)
    m = moments(random_state(rng, 7))
    bare = CollectiveMoments(m.n_particles, m.j1, m.G)
    assert np.allclose(bare.populations(), m.populations(), atol=1e-13)
    assert sum(m.populations()) + m.populations()[1] == pytest.approx(1.0)


def test_state_file_round_trip(tmp_path):
    s = build(FamilySpec("even-pair", 4, 1, theta=0.4, phi=1.0))
    p = tmp_path / "s.json"
    p.write_text(json.dumps(dump_state(s)))
    t = load_state_file(p)
    assert np.allclose(t.amplitudes, s.amplitudes, atol=1e-15)


def test_state_file_renormalizes_small_error(tmp_path):
    p = tmp_path / "s.json"
    p.write_text(json.dumps({"N": 1 + 1, "amplitudes": [[1.0000001, 0], [0, 0], [0, 0]]}))
    assert abs(np.linalg.norm(load_state_file(p).amplitudes) - 1) < 1e-15


@pytest.mark.parametrize(
    "payload",
    [
        {"N": 2, "amplitudes": [[0.5, 0], [0, 0], [0, 0]]},
        {"N": 3, "amplitudes": [[1, 0], [0, 0], [0, 0]]},
        {"N": "two", "amplitudes": [[1, 0], [0, 0], [0, 0]]},
        {"amplitudes": [[1, 0]]},
        {"N": 2, "amplitudes": [[1], [0], [0]]},
    ],
)
def test_state_file_rejects(tmp_path, payload):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(payload))
    with pytest.raises(ParameterError):
        load_state_file(p)


def test_state_file_missing(tmp_path):
    with pytest.raises(ParameterError):
        load_state_file(tmp_path / "nope.json")
