import itertools
import math

import numpy as np
import pytest

from dimwit import combinatorics as comb
from dimwit.errors import DegenerateSettingError, InfeasibleValueError, PreconditionError
from dimwit.linalg import herm_eig, max_entangled, pauli
from dimwit.observables import ObservableSet, anticommuting_family, paper_bob_set, random_observable_set
from dimwit.witness import (
    alice_parity_residual,
    alice_states,
    build_operator,
    certify_dimension,
    derive_alice,
    local_bound,
    omega,
    omegas,
    optimal_bound,
    parity_residuals,
    pnc_bound,
    quantum_value,
    sos_upper_bound,
    state_parity_residual,
    success_probability,
    witness_report,
)
import oracles

X, Y, Z = pauli("x"), pauli("y"), pauli("z")


def test_bound_examples():
    assert (local_bound(2), pnc_bound(2), optimal_bound(2)) == (2, 2, pytest.approx(2 * math.sqrt(2)))
    assert (local_bound(3), pnc_bound(3), optimal_bound(3)) == (6, 4, pytest.approx(4 * math.sqrt(3)))
    assert (local_bound(4), pnc_bound(4), optimal_bound(4)) == (12, 8, pytest.approx(16.0))


@pytest.mark.parametrize("n", range(2, 6))
def test_bounds_match_brute_force(n):
    assert local_bound(n) == oracles.local_bound_brute_force(n)
    assert pnc_bound(n) == oracles.pnc_bound_brute_force(n)


@pytest.mark.parametrize("n", range(2, 17))
def test_bound_ordering(n):
    assert pnc_bound(n) <= local_bound(n) < optimal_bound(n)
    if n >= 3:
        assert pnc_bound(n) < local_bound(n)


def test_bounds_reject_small_n():
    for f in (local_bound, pnc_bound, optimal_bound):
        with pytest.raises(ValueError):
            f(1)


def test_success_probability():
    assert success_probability(4, 3) == pytest.approx(2 / 3)
    assert success_probability(2 * math.sqrt(2), 2) == pytest.approx(0.5 + math.sqrt(2) / 4)
    with pytest.raises(ValueError):
        success_probability(100, 3)


@pytest.mark.parametrize("n", range(2, 9))
def test_success_probability_at_pnc(n):
    assert abs(success_probability(pnc_bound(n), n) - (0.5 + 1 / (2 * n))) <= 1e-12


def test_chsh_value():
    bob = paper_bob_set(2, 2)
    inst = build_operator(2, derive_alice(2, bob), bob)
    assert quantum_value(inst, max_entangled(2)) == pytest.approx(2 * math.sqrt(2), abs=1e-12)


def test_n3_optimal_value():
    bob = paper_bob_set(3, 2)
    inst = build_operator(3, derive_alice(3, bob), bob)
    assert herm_eig(inst.operator)[0][0] == pytest.approx(4 * math.sqrt(3), abs=1e-10)
    assert quantum_value(inst, max_entangled(2)) == pytest.approx(4 * math.sqrt(3), abs=1e-10)


@pytest.mark.parametrize("n, dim", [(2, 2), (3, 2), (4, 2), (4, 4), (5, 4)])
def test_operator_matches_loop_oracle(n, dim, rng):
    bob = random_observable_set(n, dim, rng)
    alice = random_observable_set(2 ** (n - 1), dim, rng)
    ref = oracles.bell_operator_loops([np.asarray(a) for a in alice], [np.asarray(b) for b in bob])
    assert np.max(np.abs(build_operator(n, alice, bob).operator - ref)) <= 1e-10


def test_quantum_value_rejects_unnormalized():
    bob = paper_bob_set(2, 2)
    inst = build_operator(2, derive_alice(2, bob), bob)
    with pytest.raises(PreconditionError):
        quantum_value(inst, np.ones(4))


def test_omega_examples():
    assert omega(1, paper_bob_set(3, 2)) == pytest.approx(math.sqrt(3))
    assert omegas(paper_bob_set(4, 4)) == pytest.approx([2.0] * 8)
    bob = ObservableSet((X, X, X))
    assert omegas(bob) == pytest.approx([3, 1, 1, 1])


@pytest.mark.parametrize("n", range(2, 8))
def test_anticommuting_omegas_equal_root_n(n):
    assert np.allclose(omegas(anticommuting_family(n)), math.sqrt(n))
    assert sos_upper_bound(n, anticommuting_family(n)) == pytest.approx(optimal_bound(n))


@pytest.mark.parametrize("n, dim", [(3, 2), (3, 4), (4, 2), (4, 4), (5, 2)])
def test_sos_dominates_top_eigenvalue(n, dim, rng):
    for _ in range(20):
        bob = random_observable_set(n, dim, rng)
        alice = random_observable_set(2 ** (n - 1), dim, rng)
        top = herm_eig(build_operator(n, alice, bob).operator)[0][0]
        assert top <= sos_upper_bound(n, bob) + 1e-9


def test_derive_alice_degenerate():
    with pytest.raises(DegenerateSettingError):
        derive_alice(2, ObservableSet((X, X)))


@pytest.mark.parametrize("key", [(2, 2), (3, 2), (4, 4), (5, 4), (6, 8)])
def test_optimal_sets_attain_sos_on_max_entangled(key):
    n, dim = key
    bob = paper_bob_set(n, dim)
    inst = build_operator(n, derive_alice(n, bob), bob)
    assert quantum_value(inst, max_entangled(dim)) == pytest.approx(sos_upper_bound(n, bob), abs=1e-9)


def test_n4_two_qubit_parity_obliviousness():
    bob = paper_bob_set(4, 4)
    res = parity_residuals(4, derive_alice(4, bob))
    assert set(res) == {"1110", "1101", "1011", "0111"}
    assert max(res.values()) < 1e-8


def test_n4_qubit_residuals_are_exact():
    # only s=1110 and s=1101 hold; the other two fail by 4(1/sqrt2 - 1/sqrt6)
    res = parity_residuals(4, derive_alice(4, paper_bob_set(4, 2, "qubit_max")))
    assert res["1110"] < 1e-12 and res["1101"] < 1e-12
    gap = 4 * (1 / math.sqrt(2) - 1 / math.sqrt(6))
    assert res["0111"] == pytest.approx(gap, abs=1e-12)
    assert res["1011"] == pytest.approx(gap, abs=1e-12)


def test_parity_residual_independent_of_labeling():
    bob = paper_bob_set(5, 2, "qubit_max")
    a = parity_residuals(5, derive_alice(5, bob, "binary"), "binary")
    b = parity_residuals(5, derive_alice(5, bob, "weight"), "weight")
    assert a.keys() == b.keys()
    assert all(a[k] == pytest.approx(b[k], abs=1e-12) for k in a)


def test_n2_has_no_parity_constraints():
    assert alice_parity_residual(2, derive_alice(2, paper_bob_set(2, 2))) == 0.0


def test_n3_weight_labeling_sum():
    # A1 - A2 - A3 - A4 with the weight labeling equals the only nontrivial constraint
    alice = derive_alice(3, paper_bob_set(3, 2), "weight")
    total = alice[0] - alice[1] - alice[2] - alice[3]
    assert np.max(np.abs(total)) < 1e-12


def test_encoded_states_parity_n3():
    bob = paper_bob_set(3, 2)
    enc = alice_states(3, max_entangled(2), derive_alice(3, bob))
    assert np.allclose(enc.probabilities, 0.5)
    assert state_parity_residual(3, enc.states, 0b111) < 1e-9
    for rho in enc.states:
        assert abs(np.trace(rho) - 1) < 1e-12


@pytest.mark.parametrize("seed", range(5))
def test_encoded_states_sum_to_half_identity(seed):
    rng = np.random.default_rng(seed)
    axes = rng.standard_normal((4, 3))
    axes /= np.linalg.norm(axes, axis=1, keepdims=True)
    alice = ObservableSet(tuple(a[0] * X + a[1] * Y + a[2] * Z for a in axes))
    # traceless observables give 1/2 probabilities on the maximally entangled state
    enc = alice_states(3, max_entangled(2), alice)
    for pair in comb.gen_domain(3):
        mix = (enc.probabilities[pair.x_i] * enc.states[pair.x_i]
               + enc.probabilities[pair.x_j] * enc.states[pair.x_j])
        assert np.allclose(mix, np.eye(2) / 2)


def test_state_parity_residual_checks_inputs():
    with pytest.raises(ValueError):
        state_parity_residual(3, [np.eye(2) / 2] * 4, 0b111)
    with pytest.raises(PreconditionError):
        state_parity_residual(2, [np.eye(2)] * 4, 0b11)


def test_certify_dimension():
    table = {1: 15.4548, 2: 16.0}
    assert certify_dimension(4, 15.9, table).dim == 4
    assert certify_dimension(4, 15.0, table).dim == 2
    assert certify_dimension(4, 15.0, table).contextual
    assert not certify_dimension(4, 7.5, table).contextual
    with pytest.raises(InfeasibleValueError):
        certify_dimension(4, 16.5, table)
    with pytest.raises(ValueError):
        certify_dimension(4, 15.0, {1: 15.4548})


def test_witness_report_chsh():
    rep = witness_report(2, paper_bob_set(2, 2))
    assert rep.achieved_value == pytest.approx(2 * math.sqrt(2))
    assert rep.sos_bound == pytest.approx(rep.achieved_value)
    assert rep.parity_residual == 0.0 and rep.certified_min_dim is None


def test_brute_force_value_never_exceeds_local_bound():
    # deterministic commuting observables reproduce classical strategies
    n = 3
    best = 0
    for b in itertools.product((1, -1), repeat=n):
        bob = ObservableSet(tuple(np.array([[v]]) for v in b))
        inst = build_operator(n, derive_alice(n, bob), bob)
        best = max(best, inst.operator[0, 0].real)
    assert best == local_bound(n)


@pytest.mark.parametrize("n", range(2, 12))
def test_success_probability_at_optimum(n):
    assert success_probability(optimal_bound(n), n) == pytest.approx(0.5 + math.sqrt(n) / (2 * n), abs=1e-14)
    assert success_probability(0.0, n) == 0.5


@pytest.mark.parametrize("n", [3, 4, 5])
def test_identity_alice_is_parity_oblivious(n):
    # every nontrivial character sums to zero over the pair representatives
    alice = ObservableSet(tuple(np.eye(2) for _ in range(2 ** (n - 1))))
    assert alice_parity_residual(n, alice) == 0.0


def test_state_parity_negative_control():
    # encoding only the first bit leaks the weight-1 parity s = 1000
    ket = [np.diag([1.0, 0.0]), np.diag([0.0, 1.0])]
    states = [ket[x >> 3] for x in range(16)]
    assert state_parity_residual(4, states, 0b1000) == pytest.approx(1.0)
    assert state_parity_residual(4, states, 0b0111) == pytest.approx(0.0)


@pytest.mark.parametrize("key", [(3, 2), (4, 4), (5, 4)])
def test_optimal_sets_parity_residual_tight(key):
    n, dim = key
    assert alice_parity_residual(n, derive_alice(n, paper_bob_set(n, dim))) < 1e-9
