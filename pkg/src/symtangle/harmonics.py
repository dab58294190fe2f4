"""Generation pipeline: tableau -> idempotent -> harmonic basis -> T±-symmetrized set."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .permgroup import YoungTableau, standard_tableaux, young_idempotent
from .qstate import (
    ExactState,
    SpinLabels,
    apply_algebra_element,
    display_values,
    dot_int,
    spin_labels,
    t_operator,
)

DEFAULT_MAX_N = 6


@dataclass(frozen=True)
class LabeledState:
    """One basis state with its |n, λ, t> address, optional name and spin labels."""

    state: ExactState
    n: int
    tableau: int | None
    t: int | None
    name: str | None
    labels: SpinLabels


# Integer ket expansions as printed in the source equations; the pipeline is
# expected to regenerate each of these up to a global sign.
EXPANSIONS: dict[str, dict[str, int]] = {
    # n=2 tableau states and Bell states
    "A+": {"00": 1},
    "A-": {"11": 1},
    "B+": {"01": 1, "10": 1},
    "B-": {"01": 1, "10": -1},
    "Phi+": {"00": 1, "11": 1},
    "Phi-": {"00": 1, "11": -1},
    "Psi+": {"01": 1, "10": 1},
    "Psi-": {"01": 1, "10": -1},
    # n=3 tableau states
    "Q1+": {"000": 1},
    "Q1-": {"111": 1},
    "Q2+": {"001": 1, "010": 1, "100": 1},
    "Q2-": {"110": 1, "101": 1, "011": 1},
    "D1+": {"001": 2, "100": -1, "010": -1},
    "D1-": {"110": 2, "011": -1, "101": -1},
    "D2+": {"010": 2, "100": -1, "001": -1},
    "D2-": {"101": 2, "011": -1, "110": -1},
    # n=3 symmetrized states
    "Psi3+": {"000": 1, "111": 1},
    "Psi3-": {"000": 1, "111": -1},
    "W3+": {"001": 1, "010": 1, "100": 1, "110": 1, "101": 1, "011": 1},
    "W3-": {"001": 1, "010": 1, "100": 1, "110": -1, "101": -1, "011": -1},
    "U3+": {"001": 2, "100": -1, "010": -1, "110": 2, "011": -1, "101": -1},
    "U3-": {"001": 2, "100": -1, "010": -1, "110": -2, "011": 1, "101": 1},
    "V3+": {"010": 2, "100": -1, "001": -1, "101": 2, "011": -1, "110": -1},
    "V3-": {"010": 2, "100": -1, "001": -1, "101": -2, "011": 1, "110": 1},
    # n=4 tableau states
    "E+": {"0000": 1},
    "E-": {"1111": 1},
    "G+": {"0001": 1, "0100": 1, "0010": 1, "1000": 1},
    "G-": {"1110": 1, "1011": 1, "1101": 1, "0111": 1},
    "C1+": {"0101": 1, "1001": 1, "0011": 1, "0110": 1, "1100": 1, "1010": 1},
    "L+": {"0001": 3, "1000": -1, "0010": -1, "0100": -1},
    "L-": {"1110": 3, "0111": -1, "1101": -1, "1011": -1},
    "C1-": {"0101": 1, "1001": 1, "0011": 1, "1010": -1, "0110": -1, "1100": -1},
    "M+": {"0010": 3, "1000": -1, "0001": -1, "0100": -1},
    "M-": {"1101": 3, "0111": -1, "1110": -1, "1011": -1},
    "C2-": {"0110": 1, "1010": 1, "0011": 1, "1001": -1, "0101": -1, "1100": -1},
    "N+": {"0100": 3, "1000": -1, "0001": -1, "0010": -1},
    "N-": {"1011": 3, "0111": -1, "1110": -1, "1101": -1},
    "C3-": {"0110": 1, "1100": 1, "0101": 1, "1001": -1, "0011": -1, "1010": -1},
    "C2+": {"0011": 2, "1100": 2, "1001": -1, "0110": -1, "0101": -1, "1010": -1},
    "C3+": {"0101": 2, "1010": 2, "1001": -1, "0110": -1, "0011": -1, "1100": -1},
    # n=4 symmetrized states
    "Psi4+": {"0000": 1, "1111": 1},
    "Psi4-": {"0000": 1, "1111": -1},
    "W4+": {"0001": 1, "0100": 1, "0010": 1, "1000": 1, "1110": 1, "1011": 1, "1101": 1, "0111": 1},
    "W4-": {"0001": 1, "0100": 1, "0010": 1, "1000": 1, "1110": -1, "1011": -1, "1101": -1, "0111": -1},
    "X4+": {"0001": 3, "1000": -1, "0010": -1, "0100": -1, "1110": 3, "0111": -1, "1101": -1, "1011": -1},
    "X4-": {"0001": 3, "1000": -1, "0010": -1, "0100": -1, "1110": -3, "0111": 1, "1101": 1, "1011": 1},
    "Y4+": {"0010": 3, "1000": -1, "0001": -1, "0100": -1, "1101": 3, "0111": -1, "1110": -1, "1011": -1},
    "Y4-": {"0010": 3, "1000": -1, "0001": -1, "0100": -1, "1101": -3, "0111": 1, "1110": 1, "1011": 1},
    "Z4+": {"0100": 3, "1000": -1, "0001": -1, "0010": -1, "1011": 3, "0111": -1, "1110": -1, "1101": -1},
    "Z4-": {"0100": 3, "1000": -1, "0001": -1, "0010": -1, "1011": -3, "0111": 1, "1110": 1, "1101": 1},
    # named combinations; F± is (D1± + 2 D2±) reduced, R is the literal printed form
    "F+": {"010": 1, "100": -1},
    "F-": {"101": 1, "011": -1},
    "R": {"0011": 1, "1100": 1, "1001": -1, "0110": -1},
    "C2+-C3+": {"0011": 1, "1100": 1, "0101": -1, "1010": -1},
}

ALIASES = {
    "PhiBell+": "Phi+",
    "PhiBell-": "Phi-",
    "PsiBell+": "Psi+",
    "PsiBell-": "Psi-",
    "Psi3GHZ+": "Psi3+",
    "Psi3GHZ-": "Psi3-",
    "Psi4GHZ+": "Psi4+",
    "Psi4GHZ-": "Psi4-",
}

# Tableau states keep their own letters; B± and the C's double as post-T names
# because T± maps them to themselves.
_PRE_T_NAMES = [
    "A+", "A-", "B+", "B-",
    "Q1+", "Q1-", "Q2+", "Q2-", "D1+", "D1-", "D2+", "D2-",
    "E+", "E-", "G+", "G-", "L+", "L-", "M+", "M-", "N+", "N-",
    "C1+", "C1-", "C2+", "C2-", "C3+", "C3-",
]
_POST_T_NAMES = [
    "Phi+", "Phi-", "Psi+", "Psi-",
    "Psi3+", "Psi3-", "W3+", "W3-", "U3+", "U3-", "V3+", "V3-",
    "Psi4+", "Psi4-", "W4+", "W4-", "X4+", "X4-", "Y4+", "Y4-", "Z4+", "Z4-",
    "C1+", "C1-", "C2+", "C2-", "C3+", "C3-",
]


def expansion_state(name: str) -> ExactState:
    """The printed integer expansion of a named state, canonicalized."""
    name = ALIASES.get(name, name)
    if name not in EXPANSIONS:
        raise KeyError(f"unknown state name {name!r}")
    terms = EXPANSIONS[name]
    n = len(next(iter(terms)))
    return ExactState.from_terms(n, terms).canonical()


@lru_cache(maxsize=None)
def _name_map(pre: bool) -> dict[tuple[int, tuple[int, ...]], str]:
    names = _PRE_T_NAMES if pre else _POST_T_NAMES
    out = {}
    for name in names:
        st = expansion_state(name)
        out[(st.n, st.amps)] = name
    return out


def _default_subsets(n: int) -> list[tuple[int, ...]]:
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    triples = [(i, j, k) for i in range(n) for j in range(i + 1, n) for k in range(j + 1, n)]
    if n <= 2:
        return []
    if n == 3:
        return pairs
    return pairs + (triples if n == 4 else [])


def _label(state: ExactState, n: int, tableau: int | None, t: int | None, pre: bool) -> LabeledState:
    name = _name_map(pre).get((n, state.amps))
    if name is None and not pre:
        name = _name_map(True).get((n, state.amps))
    labels = spin_labels(state, _default_subsets(n))
    return LabeledState(state=state, n=n, tableau=tableau, t=t, name=name, labels=labels)


def tableau_basis(n: int, tableau: int | YoungTableau) -> list[LabeledState]:
    """Distinct states from applying one tableau's idempotent to every ket.

    Kets are visited in display order, proportional duplicates keep the first
    hit, and the survivors are ordered by descending m_J.
    """
    all_tableaux = standard_tableaux(n)
    if isinstance(tableau, YoungTableau):
        index = all_tableaux.index(tableau) + 1
    else:
        index = tableau
        if not 1 <= index <= len(all_tableaux):
            raise ValueError(f"tableau index {index} out of range for n={n}")
        tableau = all_tableaux[index - 1]
    idem = young_idempotent(tableau)
    states: list[ExactState] = []
    seen: set[tuple[int, ...]] = set()
    for v in display_values(n):
        image = apply_algebra_element(idem, ExactState.ket(n, v))
        if image.is_zero():
            continue
        canon = image.canonical()
        if canon.amps in seen:
            continue
        seen.add(canon.amps)
        states.append(canon)
    # every harmonic is a J_z eigenstate (permutations preserve excitation count)
    states.sort(key=lambda s: -_m_j_exact(s))
    return [_label(s, n, index, t + 1, pre=True) for t, s in enumerate(states)]


def _m_j_exact(state: ExactState) -> Fraction:
    ms = {Fraction(state.n - 2 * bin(v).count("1"), 2) for v in state.support()}
    if len(ms) != 1:
        raise AssertionError("tableau harmonic is not a J_z eigenstate")
    return ms.pop()


def symmetric_basis(n: int, *, max_n: int = DEFAULT_MAX_N) -> list[LabeledState]:
    """The full T±-symmetrized state set; 2^n states for n = 2, 3, 4.

    Per tableau state the nonzero T+ and T- images are emitted in that order;
    m_J = 0 states survive on exactly one branch and so appear once.
    """
    if not 2 <= n <= max_n:
        raise ValueError(f"n must be in 2..{max_n}, got {n}")
    out: list[LabeledState] = []
    seen: set[tuple[int, ...]] = set()
    for index, tableau in enumerate(standard_tableaux(n), start=1):
        t_counter = 0
        for pre_state in tableau_basis(n, tableau):
            for sign in (1, -1):
                image = t_operator(sign, pre_state.state)
                if image.is_zero():
                    continue
                canon = image.canonical()
                if canon.amps in seen:
                    continue
                seen.add(canon.amps)
                t_counter += 1
                out.append(_label(canon, n, index, t_counter, pre=False))
    return out


def named_state(name: str) -> LabeledState:
    """Look up a state from the registry of printed names (plus aliases)."""
    canonical_name = ALIASES.get(name, name)
    if canonical_name not in EXPANSIONS:
        raise KeyError(f"unknown state name {name!r}")
    st = expansion_state(canonical_name)
    if canonical_name in _POST_T_NAMES:
        for entry in symmetric_basis(st.n):
            if entry.state.amps == st.amps:
                return LabeledState(
                    entry.state, entry.n, entry.tableau, entry.t, canonical_name, entry.labels
                )
    if canonical_name in _PRE_T_NAMES:
        for index in range(1, len(standard_tableaux(st.n)) + 1):
            for entry in tableau_basis(st.n, index):
                if entry.state.amps == st.amps:
                    return entry
    labels = spin_labels(st, _default_subsets(st.n))
    return LabeledState(state=st, n=st.n, tableau=None, t=None, name=canonical_name, labels=labels)


def registry_names(n: int | None = None) -> list[str]:
    names = sorted(EXPANSIONS)
    if n is None:
        return names
    return [name for name in names if len(next(iter(EXPANSIONS[name]))) == n]


def gram_rank(states: list[LabeledState | ExactState]) -> int:
    """Rank of the Gram matrix over the rationals (exact elimination)."""
    if not states:
        raise ValueError("gram_rank needs at least one state")
    exact = [s.state if isinstance(s, LabeledState) else s for s in states]
    sizes = {s.n for s in exact}
    if len(sizes) != 1:
        raise ValueError(f"states live on different qubit counts: {sorted(sizes)}")
    gram = [[Fraction(dot_int(a, b)) for b in exact] for a in exact]
    return _rational_rank(gram)


def _rational_rank(matrix: list[list[Fraction]]) -> int:
    m = [row[:] for row in matrix]
    rows, cols = len(m), len(m[0])
    rank = 0
    for col in range(cols):
        pivot = next((r for r in range(rank, rows) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(rows):
            if r != rank and m[r][col]:
                factor = m[r][col]
                m[r] = [x - factor * y for x, y in zip(m[r], m[rank])]
        rank += 1
        if rank == rows:
            break
    return rank
