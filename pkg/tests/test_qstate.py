import numpy as np
import pytest

from discordkit.errors import DomainError, InputError
from discordkit.qstate import (
    BlochForm,
    apply_local_unitary,
    bell_state,
    bloch_compose,
    bloch_decompose,
    cond_entropy,
    mutual_info,
    partial_trace,
    product_state,
    pure,
    random_unitary,
    require_valid,
    sample_random,
    spectrum,
    swap_qubits,
    transform_bloch,
    validate,
    vn_entropy,
    xstate,
)
from discordkit.entangle import ghz_state, w_state
from discordkit.smalllin import unitary_to_rotation

MIXED = np.eye(4) / 4


def test_validate_examples():
    assert validate(MIXED).ok
    bad = validate(np.diag([2.0, -1.0, 0.0, 0.0]))
    assert not bad.unit_trace or not bad.psd
    assert not bad.psd
    assert bad.failures()


def test_validate_flags_trace():
    report = validate(np.diag([2.0, -1.0, 0.5, 0.0]))
    assert not report.unit_trace and not report.psd


def test_validate_xstate_coherence_bound():
    report = validate(xstate(0.1, 0.4, 0.4, 0.1, 0.2, 0.0))
    assert report.hermitian and report.unit_trace and not report.psd


def test_require_valid_raises():
    with pytest.raises(DomainError):
        require_valid(np.diag([0.5, 0.6, 0.0, -0.1]))
    with pytest.raises(InputError):
        require_valid(np.eye(3) / 3)


def test_bloch_of_maximally_mixed():
    b = bloch_decompose(MIXED)
    assert np.allclose(b.m, 0) and np.allclose(b.n, 0) and np.allclose(b.T, 0)


def test_bloch_of_xstate():
    x1, x2, x3, x4, y1, y2 = 0.4, 0.1, 0.2, 0.3, 0.15, -0.05
    b = bloch_decompose(xstate(x1, x2, x3, x4, y1, y2))
    assert np.allclose(b.T, np.diag([2 * (y1 + y2), 2 * (-y1 + y2), x1 - x2 - x3 + x4]))
    assert np.allclose(b.m, [0, 0, x1 + x2 - x3 - x4])
    assert np.allclose(b.n, [0, 0, x1 - x2 + x3 - x4])


def test_bloch_of_product_state():
    b = bloch_decompose(product_state([0, 0, 1], [1, 0, 0]))
    assert np.allclose(b.m, [0, 0, 1])
    assert np.allclose(b.n, [1, 0, 0])
    expect = np.zeros((3, 3))
    expect[2] = [1, 0, 0]
    assert np.allclose(b.T, expect)


def test_compose_examples():
    zero = BlochForm(m=np.zeros(3), n=np.zeros(3), T=np.zeros((3, 3)))
    assert np.allclose(bloch_compose(zero), MIXED)
    bell = BlochForm(m=np.zeros(3), n=np.zeros(3), T=np.diag([1.0, -1.0, 1.0]))
    assert np.allclose(bloch_compose(bell), bell_state("phi+"))


def test_round_trip():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        rho = sample_random("ginibre2q", rng)
        assert np.abs(bloch_compose(bloch_decompose(rho)) - rho).max() <= 1e-12


def test_swapped_bloch_matches_swap():
    rho = sample_random("ginibre2q", 3)
    b = bloch_decompose(rho).swapped()
    assert np.allclose(bloch_compose(b), swap_qubits(rho))


def test_partial_trace_examples():
    assert np.allclose(partial_trace(bell_state("phi+"), [0]), np.eye(2) / 2)
    ac = partial_trace(w_state(np.pi / 2, np.pi / 4), "AC")
    assert np.allclose(ac, np.kron(np.eye(2) / 2, np.diag([1.0, 0.0])))
    z = 0.4
    ab = partial_trace(ghz_state(z), [0, 1])
    assert np.allclose(ab, np.diag([np.cos(z) ** 2, 0, 0, np.sin(z) ** 2]))


def test_partial_trace_is_linear_and_trace_preserving():
    rho = sample_random("pure3q", 4)
    for keep in ([0], [1], [2], [0, 1], [0, 2], [1, 2]):
        assert np.isclose(np.trace(partial_trace(rho, keep)).real, 1.0)


def test_entropy_examples():
    assert np.isclose(vn_entropy(pure([1, 0, 0, 0])), 0)
    assert np.isclose(vn_entropy(np.eye(2) / 2), 1)
    assert np.isclose(vn_entropy(np.diag([0.75, 0.25])), 0.8112781244591328)


def test_mutual_info_examples():
    assert np.isclose(mutual_info(product_state([0, 0, 0.3], [0.2, 0, 0])), 0, atol=1e-12)
    assert np.isclose(mutual_info(bell_state("phi+")), 2)
    assert np.isclose(mutual_info(MIXED), 0, atol=1e-12)


def test_cond_entropy_examples():
    assert np.isclose(cond_entropy(bell_state("phi+")), -1)
    assert np.isclose(cond_entropy(MIXED), 1)
    assert np.isclose(cond_entropy(product_state([0, 0, 1], [1, 0, 0])), 0, atol=1e-12)


def test_local_unitary_identity_and_spectrum():
    rng = np.random.default_rng(8)
    rho = sample_random("ginibre2q", rng)
    assert np.allclose(apply_local_unitary(rho, np.eye(2), np.eye(2)), rho)
    rho2 = apply_local_unitary(rho, random_unitary(rng), random_unitary(rng))
    assert np.allclose(spectrum(rho2), spectrum(rho), atol=1e-12)


def test_local_unitary_bloch_action():
    rng = np.random.default_rng(9)
    for _ in range(50):
        rho = sample_random("ginibre2q", rng)
        ua, ub = random_unitary(rng), random_unitary(rng)
        lhs = bloch_decompose(apply_local_unitary(rho, ua, ub))
        b = bloch_decompose(rho)
        qa = np.array([[0.5 * np.trace(s_i @ ua @ s_j @ ua.conj().T).real
                        for s_j in _paulis()] for s_i in _paulis()])
        assert np.allclose(qa, unitary_to_rotation(ua), atol=1e-12)
        assert np.allclose(lhs.m, qa @ b.m, atol=1e-8)
        rhs = transform_bloch(b, ua, ub)
        assert np.allclose(lhs.n, rhs.n, atol=1e-8)
        assert np.allclose(lhs.T, rhs.T, atol=1e-8)


def _paulis():
    return (np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.diag([1, -1]))


@pytest.mark.parametrize("kind", ["pure2q", "ginibre2q", "pure3q"])
def test_sampling_valid_and_deterministic(kind):
    a = sample_random(kind, 42)
    assert validate(a).ok
    assert np.array_equal(a, sample_random(kind, 42))


def test_ginibre_traces():
    rng = np.random.default_rng(0)
    traces = [np.trace(sample_random("ginibre2q", rng)).real for _ in range(1000)]
    assert np.allclose(traces, 1.0, atol=1e-14)


def test_unknown_sample_kind():
    with pytest.raises(InputError):
        sample_random("qutrit", 0)


def test_random_unitary_is_unitary():
    u = random_unitary(np.random.default_rng(1))
    assert np.allclose(u @ u.conj().T, np.eye(2))
