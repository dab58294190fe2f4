import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from symtangle.harmonics import expansion_state, registry_names
from symtangle.permgroup import GroupAlgebraElement, Permutation, group_elements
from symtangle.qstate import (
    ExactState,
    FloatState,
    apply_algebra_element,
    apply_permutation,
    display_values,
    dot_int,
    inner_product,
    jz_support,
    overlap_squared_exact,
    pauli_apply,
    pauli_string_apply,
    proportionality_factor,
    spin_flip_conjugate,
    spin_labels,
    state_from_json,
    state_to_json,
    states_equal_up_to_sign,
    t_operator,
    total_spin,
    x_parity_terms,
    z_pair_average_terms,
    z_parity_terms,
)

F = Fraction


def _random_exact(rng, n):
    amps = tuple(int(x) for x in rng.integers(-3, 4, size=2**n))
    if not any(amps):
        amps = (1,) + amps[1:]
    return ExactState(n, amps)


def test_ket_and_display_order():
    k = ExactState.ket(3, "001")
    assert k.amps[1] == 1 and k.norm2 == 1
    assert list(display_values(2)) == [3, 2, 1, 0]
    assert k.ket_string() == "|001>"


def test_apply_permutation_swap_and_identity():
    swap = Permutation.transposition(2, 0, 1)
    assert apply_permutation(swap, ExactState.ket(2, "01")).amps == ExactState.ket(2, "10").amps
    state = ExactState.from_terms(2, {"00": 2, "11": -1})
    assert apply_permutation(Permutation.identity(2), state).amps == state.amps


def test_cycle_action_convention():
    # (abc) moves the bit at position k to position p(k): |001> -> |100>
    cycle = Permutation((1, 2, 0))
    assert apply_permutation(cycle, ExactState.ket(3, "001")).amps == ExactState.ket(3, "100").amps


@pytest.mark.parametrize("n", [2, 3, 4])
def test_action_is_homomorphism_and_norm_preserving(n):
    rng = np.random.default_rng(7 + n)
    state = _random_exact(rng, n)
    for p, q in itertools.product(group_elements(n), repeat=2):
        via_compose = apply_permutation(p.compose(q), state)
        stepwise = apply_permutation(p, apply_permutation(q, state))
        assert via_compose.amps == stepwise.amps
        assert via_compose.norm2 == state.norm2


def test_apply_algebra_fixtures():
    e2 = GroupAlgebraElement.parse("e + (ab) - (ac) - (cba)", 3)
    image = apply_algebra_element(e2, ExactState.ket(3, "001"))
    assert image.amps == ExactState.from_terms(3, {"001": 2, "100": -1, "010": -1}).amps
    e4 = GroupAlgebraElement.parse("e - (ab) - (bc) - (ac) + (abc) + (cba)", 3)
    for v in range(8):
        assert apply_algebra_element(e4, ExactState.ket(3, v)).is_zero()
    e1 = GroupAlgebraElement.parse("e + (ab)", 2)
    assert apply_algebra_element(e1, ExactState.ket(2, "00")).canonical().amps == ExactState.ket(2, "00").amps


def test_pauli_x_z():
    s = ExactState.ket(2, "01")
    assert pauli_apply("x", 0, s).amps == ExactState.ket(2, "11").amps
    t = ExactState.from_terms(3, {"100": 1})
    assert pauli_apply("z", 0, t).amps == (0, 0, 0, 0, -1, 0, 0, 0)
    rng = np.random.default_rng(3)
    state = _random_exact(rng, 3)
    for axis in ("x", "z"):
        twice = pauli_apply(axis, 1, pauli_apply(axis, 1, state))
        assert twice.amps == state.amps


def test_pauli_y_exact_lane():
    s = ExactState.ket(1, "0")
    y = pauli_apply("y", 0, s)
    assert y.amps == (0, 1) and y.i_power == 1  # i|1>
    y2 = pauli_apply("y", 0, y)
    assert y2.amps == (-1, 0) and y2.i_power == 2  # i * -i|0> restores |0>
    assert proportionality_factor(y2, s) == 1


def test_pauli_string_phase_and_parity():
    phi_plus = expansion_state("Phi+")
    psi_plus = expansion_state("Psi+")
    for state, sign in ((phi_plus, 1), (psi_plus, 1)):
        out = pauli_string_apply(x_parity_terms(2), state)
        assert proportionality_factor(out, state) == sign
    phi_minus = expansion_state("Phi-")
    out = pauli_string_apply(x_parity_terms(2), phi_minus)
    assert proportionality_factor(out, phi_minus) == -1
    out = pauli_string_apply(z_parity_terms(2), expansion_state("Psi-"))
    assert proportionality_factor(out, expansion_state("Psi-")) == -1


def test_pauli_string_average_weights():
    w3 = expansion_state("W3+")
    out = pauli_string_apply(z_pair_average_terms(3), w3)
    assert proportionality_factor(out, w3) == F(-1, 3)
    psi3 = expansion_state("Psi3+")
    out = pauli_string_apply(z_pair_average_terms(3), psi3)
    assert proportionality_factor(out, psi3) == 1


def test_t_operator_bell_cases():
    a_plus = ExactState.ket(2, "00")
    b_plus = expansion_state("B+")
    b_minus = expansion_state("B-")
    assert states_equal_up_to_sign(t_operator(1, a_plus), expansion_state("Phi+"))
    assert states_equal_up_to_sign(t_operator(-1, a_plus), expansion_state("Phi-"))
    assert states_equal_up_to_sign(t_operator(1, b_plus), expansion_state("Psi+"))
    assert t_operator(-1, b_plus).is_zero()
    assert t_operator(1, b_minus).is_zero()
    assert states_equal_up_to_sign(t_operator(-1, b_minus), expansion_state("Psi-"))


def test_t_operator_x_eigenstate_fixed():
    c1 = expansion_state("C1+")  # X^{⊗4} eigenvalue +1
    assert proportionality_factor(t_operator(1, c1), c1) == 2
    assert t_operator(-1, c1).is_zero()


def test_t_images_orthogonal_and_norm():
    rng = np.random.default_rng(11)
    for n in (2, 3, 4):
        for _ in range(20):
            state = _random_exact(rng, n)
            plus, minus = t_operator(1, state), t_operator(-1, state)
            assert dot_int(plus, minus) == 0
    # J_z eigenstates with m != 0 keep their norm (factor 2 absorbs the 1/sqrt2)
    q2 = expansion_state("Q2+")
    assert t_operator(1, q2).norm2 == 2 * q2.norm2


def test_spin_labels_fixtures():
    b_minus = expansion_state("B-")
    labels = spin_labels(b_minus)
    assert labels.j == 0 and labels.m_j == 0
    q1 = expansion_state("Q1+")
    assert spin_labels(q1).m_j == F(3, 2)
    psi3 = expansion_state("Psi3+")
    lab3 = spin_labels(psi3)
    assert lab3.m_j is None and lab3.j == F(3, 2)
    assert jz_support(psi3) == {F(3, 2), F(-3, 2)}
    c2 = expansion_state("C2+")
    lab = spin_labels(c2, [(0, 1), (2, 3), (0, 2)])
    assert lab.partial_spins[(0, 1)] == 1 and lab.partial_spins[(2, 3)] == 1
    assert lab.partial_spins[(0, 2)] is None
    assert lab.j == 0
    with pytest.raises(ValueError):
        spin_labels(ExactState.zero(2))


def test_total_spin_subset():
    f_plus = expansion_state("F+")
    assert total_spin(f_plus, (0, 1)) == 0
    assert total_spin(f_plus, (1, 2)) is None
    assert total_spin(f_plus) == F(1, 2)


def test_inner_products():
    phi = expansion_state("Phi+")
    psi = expansion_state("Psi+")
    assert inner_product(phi, phi) == pytest.approx(1)
    assert inner_product(phi, psi) == 0
    d1, d2 = expansion_state("D1+"), expansion_state("D2+")
    value = inner_product(d1, d2)
    assert value == pytest.approx(-0.5, abs=1e-12)
    assert overlap_squared_exact(d1, d2) == F(1, 4)
    assert dot_int(d1, d2) < 0


def test_exact_and_float_lanes_agree():
    states = [expansion_state(name) for name in registry_names(3)]
    for x in states:
        for y in states:
            exact = inner_product(x, y)
            floaty = inner_product(x.to_float(), y.to_float())
            assert abs(exact - floaty) < 1e-12


def test_spin_flip_conjugate():
    phi = expansion_state("Phi+")
    tilde = spin_flip_conjugate(phi)
    # sigma_y⊗sigma_y (|00>+|11>) = -(|11>+|00>)
    assert proportionality_factor(tilde, phi) == -1
    r = expansion_state("R")
    assert proportionality_factor(spin_flip_conjugate(r), r) == 1


def test_json_roundtrip_exact():
    for name in ("Phi+", "W3+", "C2+", "R", "U3-"):
        state = expansion_state(name)
        data = state_to_json(state)
        back = state_from_json(data)
        assert isinstance(back, ExactState)
        assert back.amps == state.amps and back.n == state.n
    imag = pauli_apply("y", 0, ExactState.ket(1, "0"))
    back = state_from_json(state_to_json(imag))
    assert back.i_power == 1 and back.amps == (0, 1)


def test_json_roundtrip_float():
    rng = np.random.default_rng(5)
    vec = rng.normal(size=8) + 1j * rng.normal(size=8)
    state = FloatState(3, vec / np.linalg.norm(vec))
    back = state_from_json(state_to_json(state))
    assert isinstance(back, FloatState)
    assert np.allclose(back.vec, state.vec)


def test_json_norm2_mismatch_rejected():
    state = expansion_state("W3+")
    data = state_to_json(state)
    data["norm2"] = 5
    with pytest.raises(ValueError):
        state_from_json(data)


def test_size_mismatch_errors():
    with pytest.raises(ValueError):
        apply_permutation(Permutation.identity(3), ExactState.ket(2, "00"))
    with pytest.raises(ValueError):
        pauli_apply("x", 5, ExactState.ket(2, "00"))
    with pytest.raises(ValueError):
        inner_product(ExactState.ket(2, "00"), ExactState.ket(3, "000"))
