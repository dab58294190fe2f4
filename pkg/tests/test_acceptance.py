"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Tolerances are pinned here: exact integer/rational comparison where a value
is exact, 1e-9 for spectral quantities, 1e-10 for the tau2/concurrence
identity, -1e-9 for the monogamy floor.  Claims from the source tables that
are computationally false are split out as strict xfails with the
counterexample in the reason; see the companion truth tests next to them.
"""

import itertools
from fractions import Fraction

import numpy as np
import pytest

from symtangle import cli
from symtangle.density import (
    DensityMatrix,
    bipartite_splits,
    density_from_pure,
    partial_trace,
    partial_transpose,
    purity,
)
from symtangle.harmonics import (
    EXPANSIONS,
    expansion_state,
    gram_rank,
    named_state,
    symmetric_basis,
    tableau_basis,
)
from symtangle.measures import (
    concurrence_pair,
    n_tangle,
    ph_test,
    pm_test,
    remainder_test,
    three_tangle,
)
from symtangle.permgroup import Permutation, standard_tableaux
from symtangle.qstate import (
    ExactState,
    FloatState,
    apply_permutation,
    dot_int,
    overlap_squared_exact,
    pauli_apply,
    pauli_string_apply,
    proportionality_factor,
    states_equal_up_to_sign,
    t_operator,
    x_parity_terms,
    z_pair_average_terms,
    z_parity_terms,
)
from symtangle.tables import verify_tables

F = Fraction

TABLEAU_NAMES = {
    (2, 1): ["A+", "B+", "A-"],
    (2, 2): ["B-"],
    (3, 1): ["Q1+", "Q2+", "Q2-", "Q1-"],
    (3, 2): ["D1+", "D1-"],
    (3, 3): ["D2+", "D2-"],
    (4, 1): ["E+", "G+", "C1+", "G-", "E-"],
    (4, 2): ["L+", "C1-", "L-"],
    (4, 3): ["M+", "C2-", "M-"],
    (4, 4): ["N+", "C3-", "N-"],
    (4, 5): ["C2+"],
    (4, 6): ["C3+"],
}
SYMMETRIC_NAMES = {
    2: ["Phi+", "Phi-", "Psi+", "Psi-"],
    3: ["Psi3+", "Psi3-", "W3+", "W3-", "U3+", "U3-", "V3+", "V3-"],
    4: [
        "Psi4+", "Psi4-", "W4+", "W4-", "C1+", "X4+", "X4-", "C1-",
        "Y4+", "Y4-", "C2-", "Z4+", "Z4-", "C3-", "C2+", "C3+",
    ],
}


def _report(criterion: str, description: str):
    print(f"ACCEPTANCE {criterion}: PASS - {description}")


def _fail_report(criterion: str, description: str):
    print(f"ACCEPTANCE {criterion}: FAIL - {description}")


class _Criterion:
    def __init__(self, key: str, description: str):
        self.key = key
        self.description = description

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc_type is None:
            _report(self.key, self.description)
        else:
            _fail_report(self.key, self.description)
        return False


def test_criterion_1_basis_reproduction_exact():
    with _Criterion("1", "every printed expansion regenerated exactly (up to global sign)"):
        for (n, lam), names in TABLEAU_NAMES.items():
            generated = tableau_basis(n, lam)
            assert [ls.name for ls in generated] == names
            for ls in generated:
                assert states_equal_up_to_sign(ls.state, expansion_state(ls.name))
        assert tableau_basis(3, 4) == []
        for lam in (7, 8, 9, 10):  # the two tall n=4 diagrams
            assert tableau_basis(4, lam) == []
        for n, names in SYMMETRIC_NAMES.items():
            generated = symmetric_basis(n)
            assert [ls.name for ls in generated] == names
            for ls in generated:
                assert states_equal_up_to_sign(ls.state, expansion_state(ls.name))


def test_criterion_2_counts_and_completeness():
    with _Criterion("2", "|symmetric_basis(n)| = 2^n and exact Gram rank = 2^n for n=2,3,4"):
        for n in (2, 3, 4):
            basis = symmetric_basis(n)
            assert len(basis) == 2**n
            assert gram_rank(basis) == 2**n


def test_criterion_3_table_ii():
    with _Criterion("3", "Table II cells reproduced (exact rationals, 1e-9 spectral)"):
        results, ok = verify_tables(["II"], tolerance=1e-9)
        primary = [r for r in results if not r.advisory]
        assert ok and all(r.ok for r in primary)
        assert len(primary) >= 300


def test_criterion_4_table_iv():
    with _Criterion("4", "Table IV traces, det signs, and remainder structure reproduced"):
        results, ok = verify_tables(["IV"], tolerance=1e-9)
        assert ok
        # the remainder-equality claim, asserted exactly where it is true
        for name in ("Psi4+", "Psi4-", "W4+"):
            state = named_state(name)
            for qubit in "abcd":
                kept = [q for q in range(4) if q != "abcd".index(qubit)]
                for j in kept:
                    rem = remainder_test(state, qubit, j)
                    assert rem.equals and rem.det == 0


@pytest.mark.xfail(
    strict=True,
    reason="Table IV prints rho_I^T_J = rho_I for the W4± row, but only the + "
    "branch satisfies it: for W4- = (G+ - G-)/sqrt2 the leftover matrix after "
    "tracing qubit a has rho[110,000] = -1/8 while its T_b image carries +1/8 "
    "there (entries differ by 1/4); verified exactly and by an independent "
    "numpy reshape oracle.",
)
def test_criterion_4_w4_minus_literal_remainder_claim():
    state = named_state("W4-")
    for qubit in "abcd":
        for j in [q for q in range(4) if q != "abcd".index(qubit)]:
            assert remainder_test(state, qubit, j).equals


def test_criterion_4_w4_minus_computed_truth():
    state = named_state("W4-")
    for qubit in "abcd":
        for j in [q for q in range(4) if q != "abcd".index(qubit)]:
            rem = remainder_test(state, qubit, j)
            assert not rem.equals and rem.det == 0


def test_criterion_5_table_v():
    with _Criterion("5", "Table V concurrences (surds squared, exact) and 4-tangles reproduced"):
        results, ok = verify_tables(["V"], tolerance=1e-9)
        assert ok
        r = named_state("R")
        for pair in ((0, 3), (1, 2), (0, 1), (2, 3)):
            assert concurrence_pair(r, *pair) == pytest.approx(0, abs=1e-9)
        for pair in ((0, 2), (1, 3)):
            assert concurrence_pair(r, *pair) == pytest.approx(1, abs=1e-9)
        assert n_tangle(r) == F(1)


def literal_state(name: str) -> ExactState:
    """Printed integer expansion without the canonical sign flip, so that
    cross-state identities keep their printed ± factors."""
    terms = EXPANSIONS[name]
    n = len(next(iter(terms)))
    return ExactState.from_terms(n, terms)


def _prop(op_terms, state_name, expected_name, factor):
    out = pauli_string_apply(op_terms, literal_state(state_name))
    assert proportionality_factor(out, literal_state(expected_name)) == factor


def test_criterion_6_operator_identities_exact():
    with _Criterion("6", "operator identities hold exactly on the named states"):
        # two-qubit phase bit and parity
        for name, sign in (("Phi+", 1), ("Phi-", -1), ("Psi+", 1), ("Psi-", -1)):
            _prop(x_parity_terms(2), name, name, sign)
        for name, sign in (("Phi+", 1), ("Phi-", 1), ("Psi+", -1), ("Psi-", -1)):
            _prop(z_parity_terms(2), name, name, sign)
        # single-qubit spin flips between Bell states
        for qubit, pairs in ((0, (("Phi+", "Psi+", 1), ("Phi-", "Psi-", -1),
                                  ("Psi+", "Phi+", 1), ("Psi-", "Phi-", -1))),
                             (1, (("Phi+", "Psi+", 1), ("Phi-", "Psi-", 1),
                                  ("Psi+", "Phi+", 1), ("Psi-", "Phi-", 1)))):
            for src, dst, factor in pairs:
                out = pauli_apply("x", qubit, literal_state(src))
                assert proportionality_factor(out, literal_state(dst)) == factor
        # three-qubit phase bit: P_x Psi3± = ±Psi3±, P_x Phi3± = ±Phi3±
        for base in ("Psi3", "W3", "U3", "V3"):
            _prop(x_parity_terms(3), f"{base}+", f"{base}+", 1)
            _prop(x_parity_terms(3), f"{base}-", f"{base}-", -1)
        # averaged pair parity: +1 on Psi3±, negative eigenvalue on Phi3±
        _prop(z_pair_average_terms(3), "Psi3+", "Psi3+", 1)
        _prop(z_pair_average_terms(3), "Psi3-", "Psi3-", 1)
        for base in ("W3", "U3", "V3"):
            for sign in "+-":
                _prop(z_pair_average_terms(3), f"{base}{sign}", f"{base}{sign}", F(-1, 3))
        # combined parity/phase flip: P_z3 Psi3± = Psi3∓, P_z3 Phi3± = -Phi3∓
        _prop(z_parity_terms(3), "Psi3+", "Psi3-", 1)
        _prop(z_parity_terms(3), "Psi3-", "Psi3+", 1)
        for base in ("W3", "U3", "V3"):
            _prop(z_parity_terms(3), f"{base}+", f"{base}-", -1)
            _prop(z_parity_terms(3), f"{base}-", f"{base}+", -1)
        # single- and double-flip ladders from Psi3 to W3
        single = [(1, (("x", j),)) for j in range(3)]
        _prop(single, "Psi3+", "W3+", 1)
        _prop(single, "Psi3-", "W3-", 1)
        double = [(1, (("x", i), ("x", j))) for i in range(3) for j in range(i + 1, 3)]
        _prop(double, "Psi3+", "W3+", 1)
        _prop(double, "Psi3-", "W3-", -1)
        # qubit exchange (b c) maps U3± <-> V3± exactly
        swap_bc = Permutation.transposition(3, 1, 2)
        for sign in "+-":
            out = apply_permutation(swap_bc, literal_state(f"U3{sign}"))
            assert proportionality_factor(out, literal_state(f"V3{sign}")) == 1
            back = apply_permutation(swap_bc, literal_state(f"V3{sign}"))
            assert proportionality_factor(back, literal_state(f"U3{sign}")) == 1
        # four-qubit phase bit and parity
        for base in ("Psi4", "W4", "X4", "Y4", "Z4"):
            _prop(x_parity_terms(4), f"{base}+", f"{base}+", 1)
            _prop(x_parity_terms(4), f"{base}-", f"{base}-", -1)
        for name in ("C1+", "C2+", "C3+"):
            _prop(x_parity_terms(4), name, name, 1)
        for name in ("C1-", "C2-", "C3-"):
            _prop(x_parity_terms(4), name, name, -1)
        _prop(z_parity_terms(4), "Psi4+", "Psi4+", 1)
        _prop(z_parity_terms(4), "Psi4-", "Psi4-", 1)
        for base in ("W4", "X4", "Y4", "Z4"):
            for sign in "+-":
                _prop(z_parity_terms(4), f"{base}{sign}", f"{base}{sign}", -1)
        for name in ("C1+", "C1-", "C2+", "C2-", "C3+", "C3-"):
            _prop(z_parity_terms(4), name, name, 1)


@pytest.mark.xfail(
    strict=True,
    reason="the printed identity P_z^(2) Phi3± = -Phi3± does not hold with "
    "P_z^(2) = (1/3)(sum of pairwise sigma_z sigma_z): every ket of W3/U3/V3 "
    "has mixed pair parities summing to -1, so the exact eigenvalue is -1/3; "
    "the companion test pins the -1/3.",
)
def test_criterion_6_pairwise_parity_literal_claim():
    out = pauli_string_apply(z_pair_average_terms(3), literal_state("W3+"))
    assert proportionality_factor(out, literal_state("W3+")) == -1


@pytest.mark.xfail(
    strict=True,
    reason="the printed identity sigma_xb sigma_xc U3± = V3± fails exactly: "
    "the bit-flip image of U3+ carries -|000> - |111> where V3+ carries "
    "-|100> - |011>; the exchange (b c) of the qubit labels does map U3± to "
    "V3± exactly, which the main identity test asserts.",
)
def test_criterion_6_sigma_flip_u3_v3_literal_claim():
    out = pauli_string_apply([(1, (("x", 1), ("x", 2)))], literal_state("U3+"))
    assert proportionality_factor(out, literal_state("V3+")) is not None


def test_criterion_7_bound_entanglement_bookkeeping():
    with _Criterion(
        "7",
        "all symmetrized n=3,4 states: PM-entangled, det-form PH silent "
        "(bound-entangled label); Bell states PH-negative at -1/2",
    ):
        for n in (3, 4):
            for ls in symmetric_basis(n):
                assert pm_test(ls).entangled
                ph = ph_test(ls)
                assert not ph.any_negative_det
                assert all(sp.det >= 0 for sp in ph.per_split)
        for name in SYMMETRIC_NAMES[2]:
            ph = ph_test(named_state(name))
            assert ph.any_negative and ph.any_negative_det
            assert min(sp.min_eig for sp in ph.per_split) == pytest.approx(-0.5, abs=1e-10)


@pytest.mark.xfail(
    strict=True,
    reason="no entangled pure state can have positive partial transposes: "
    "rho^T_a of Psi3+ = (|000>+|111>)/sqrt2 has the eigenvalue -1/2 on the "
    "|100>,|011> coherence block (and likewise for every entangled split of "
    "every symmetrized state), so the spectral reading 'no single negative "
    "eigenvalue' is unattainable; only the determinant-form test is silent "
    "(all dets >= 0), which criterion 7's main test asserts.",
)
def test_criterion_7_spectral_ph_literal_claim():
    for ls in symmetric_basis(3):
        assert not ph_test(ls).any_negative


def _random_exact(rng, n):
    amps = tuple(int(x) for x in rng.integers(-4, 5, size=2**n))
    return ExactState(n, amps) if any(amps) else ExactState.ket(n, 0)


def _random_pure(rng, n):
    vec = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return FloatState(n, vec / np.linalg.norm(vec))


def _random_density(rng, n):
    dim = 2**n
    rho = np.zeros((dim, dim), dtype=complex)
    for w in rng.dirichlet(np.ones(2)):
        vec = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        vec /= np.linalg.norm(vec)
        rho += w * np.outer(vec, vec.conj())
    return DensityMatrix(n, rho, exact=False)


def test_criterion_8_property_suites():
    with _Criterion(
        "8",
        "monogamy floor (500 states), transpose scheme equivalence (1000/n), "
        "involution, trace preservation, tau4 relabeling invariance (200), "
        "tau2 = C^2 (200)",
    ):
        rng = np.random.default_rng(2024)
        for _ in range(500):
            assert three_tangle(_random_pure(rng, 3), clamp=False) >= -1e-9
        for n in (2, 3, 4):
            masks = bipartite_splits(n)
            for i in range(1000):
                rho = _random_density(rng, n)
                mask = masks[i % len(masks)]
                general = partial_transpose(rho, mask, scheme="general")
                block = partial_transpose(rho, mask, scheme="block")
                assert np.array_equal(general.mat, block.mat)
                if i % 100 == 0:
                    assert partial_transpose(general, mask).equals(rho, tol=1e-13)
                    assert abs(np.trace(general.mat) - 1) < 1e-12
        perms = [Permutation(m) for m in itertools.permutations(range(4))]
        for i in range(200):
            state = _random_pure(rng, 4)
            tau = n_tangle(state)
            shuffled = apply_permutation(perms[i % 24], state)
            assert abs(n_tangle(shuffled) - tau) < 1e-10
            flipped = pauli_string_apply(x_parity_terms(4), state)
            assert abs(n_tangle(FloatState(4, flipped.vec)) - tau) < 1e-10
        for _ in range(200):
            state = _random_pure(rng, 2)
            assert abs(float(n_tangle(state)) - concurrence_pair(state, 0, 1) ** 2) < 1e-10


def test_criterion_9_derived_oracles():
    with _Criterion(
        "9",
        "F± = Bell singlet ⊗ spectator (exact); <D1+|D2+> = -1/2 (exact); "
        "R vs C2+-C3+ split discrepancy verified on both sides",
    ):
        f_plus = named_state("F+").state
        assert states_equal_up_to_sign(
            f_plus, ExactState.from_terms(3, {"010": 1, "100": -1})
        )
        f_minus = named_state("F-").state
        assert states_equal_up_to_sign(
            f_minus, ExactState.from_terms(3, {"101": 1, "011": -1})
        )
        d1, d2 = expansion_state("D1+"), expansion_state("D2+")
        assert overlap_squared_exact(d1, d2) == F(1, 4) and dot_int(d1, d2) < 0
        # the literal R and the algebraic C2+ - C3+ differ; each is separable
        # across its own two-pair split, and both carry 4-tangle 1
        diff = named_state("C2+-C3+").state
        assert states_equal_up_to_sign(
            diff, ExactState.from_terms(4, {"0011": 1, "1100": 1, "0101": -1, "1010": -1})
        )
        r = named_state("R").state
        assert not states_equal_up_to_sign(r, diff)
        rho_r = density_from_pure(r)
        assert purity(partial_trace(rho_r, "bd")).tr_rho2 == 1  # (ac)-(bd) split
        rho_diff = density_from_pure(diff)
        assert purity(partial_trace(rho_diff, "bc")).tr_rho2 == 1  # (ad)-(bc) split
        assert purity(partial_trace(rho_r, "bc")).tr_rho2 < 1
        assert n_tangle(r) == F(1) and n_tangle(diff) == F(1)


def test_criterion_10_verify_exit_codes(monkeypatch, capsys):
    with _Criterion("10", "verify exits 0 on the clean build, 1 under an injected sign fault"):
        assert cli.main(["verify"]) == 0
        from symtangle.tables import FIXTURES, Exact, TableFixture

        original = FIXTURES["II"]
        rows = [dict(r) for r in original.rows]
        groups = [dict(g) for g in rows[3]["groups"]]  # W3 row
        groups[0] = dict(groups[0], C_JK=Exact(F(-1, 3)))  # flip the sign
        rows[3]["groups"] = tuple(groups)
        monkeypatch.setitem(
            FIXTURES, "II", TableFixture("II", tuple(rows), original.notes)
        )
        assert cli.main(["verify", "--tables", "II"]) == 1
        out = capsys.readouterr().out
        assert any("MISMATCH" in line and "C_JK" in line for line in out.splitlines())
