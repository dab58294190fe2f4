"""n-qubit pure states: exact integer amplitudes, Pauli action, T± symmetrization.

Ket index convention: big-endian with qubit a as the most significant bit, so
bit of qubit j in index v is ``(v >> (n-1-j)) & 1``.  Display order (used for
printing, JSON term order and sign canonicalization) runs through ket values
in descending order, matching the standard-basis convention of the density
machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .permgroup import GroupAlgebraElement, Permutation

PauliTerm = tuple[Fraction | int, tuple[tuple[str, int], ...]]


def bit_of(value: int, qubit: int, n: int) -> int:
    return (value >> (n - 1 - qubit)) & 1


def ket_value(bits: str) -> int:
    return int(bits, 2)


def ket_text(value: int, n: int) -> str:
    return format(value, f"0{n}b")


def display_values(n: int) -> range:
    """Ket values in display order: descending, |1..1> first."""
    return range(2**n - 1, -1, -1)


@dataclass(frozen=True)
class ExactState:
    """Integer-amplitude state with implicit normalization.

    The physical ray is ``amps / sqrt(norm2)``; ``scale`` and ``i_power`` keep
    an exact rational * i^k prefactor so that operator identities can be
    checked without leaving integer arithmetic (sigma_y contributes one power
    of i per application, everything else stays real).
    """

    n: int
    amps: tuple[int, ...]
    i_power: int = 0
    scale: Fraction = field(default_factory=lambda: Fraction(1))

    def __post_init__(self) -> None:
        if len(self.amps) != 2**self.n:
            raise ValueError(f"need {2 ** self.n} amplitudes for n={self.n}, got {len(self.amps)}")
        object.__setattr__(self, "i_power", self.i_power % 4)
        object.__setattr__(self, "scale", Fraction(self.scale))

    @classmethod
    def zero(cls, n: int) -> ExactState:
        return cls(n, (0,) * 2**n)

    @classmethod
    def ket(cls, n: int, value: int | str) -> ExactState:
        if isinstance(value, str):
            if len(value) != n:
                raise ValueError(f"ket {value!r} is not {n} bits")
            value = ket_value(value)
        amps = [0] * 2**n
        amps[value] = 1
        return cls(n, tuple(amps))

    @classmethod
    def from_terms(cls, n: int, terms: dict[str | int, int]) -> ExactState:
        amps = [0] * 2**n
        for ket, coeff in terms.items():
            v = ket_value(ket) if isinstance(ket, str) else ket
            amps[v] += coeff
        return cls(n, tuple(amps))

    @property
    def norm2(self) -> int:
        return sum(a * a for a in self.amps)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.amps)

    def support(self) -> list[int]:
        return [v for v, a in enumerate(self.amps) if a]

    def primitive(self) -> ExactState:
        """Drop the exact prefactor and divide out the amplitude gcd."""
        if self.is_zero():
            return ExactState.zero(self.n)
        g = 0
        for a in self.amps:
            g = math.gcd(g, a)
        return ExactState(self.n, tuple(a // g for a in self.amps))

    def canonical(self) -> ExactState:
        """Primitive form with the first display-order amplitude positive."""
        prim = self.primitive()
        for v in display_values(self.n):
            if prim.amps[v]:
                if prim.amps[v] < 0:
                    return ExactState(self.n, tuple(-a for a in prim.amps))
                break
        return prim

    def to_float(self) -> FloatState:
        norm = math.sqrt(self.norm2)
        phase = 1j**self.i_power * (1 if self.scale >= 0 else -1)
        vec = np.array(self.amps, dtype=complex) * (phase / norm)
        return FloatState(self.n, vec)

    def exact_entries(self) -> list[tuple[Fraction, Fraction]]:
        """Per-ket (re, im) of scale * i^i_power * amps."""
        re_k = {0: 1, 1: 0, 2: -1, 3: 0}[self.i_power]
        im_k = {0: 0, 1: 1, 2: 0, 3: -1}[self.i_power]
        return [(self.scale * re_k * a, self.scale * im_k * a) for a in self.amps]

    def ket_string(self) -> str:
        """Human-readable expansion like ``2|001> - |100> - |010>``."""
        parts = []
        for v in display_values(self.n):
            a = self.amps[v]
            if not a:
                continue
            mag = "" if abs(a) == 1 else str(abs(a))
            body = f"{mag}|{ket_text(v, self.n)}>"
            if not parts:
                parts.append(body if a > 0 else f"-{body}")
            else:
                parts.append(f"{'+' if a > 0 else '-'} {body}")
        return " ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.ket_string()


@dataclass(frozen=True)
class FloatState:
    """Complex-amplitude lane for spectral work; normalized on demand."""

    n: int
    vec: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.vec, dtype=complex)
        if v.shape != (2**self.n,):
            raise ValueError(f"need shape ({2 ** self.n},), got {v.shape}")
        object.__setattr__(self, "vec", v)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.vec))

    def is_zero(self, tol: float = 1e-12) -> bool:
        return self.norm < tol

    def normalized(self) -> FloatState:
        nrm = self.norm
        if nrm < 1e-12:
            raise ValueError("cannot normalize the zero state")
        return FloatState(self.n, self.vec / nrm)


State = ExactState | FloatState


def as_vector(state: State) -> np.ndarray:
    """Normalized complex vector for either lane."""
    if isinstance(state, ExactState):
        return state.to_float().vec
    return state.normalized().vec


def permuted_value(p: Permutation, v: int, n: int) -> int:
    """Index of the ket obtained by moving the bit at position k to p(k)."""
    w = 0
    for k in range(n):
        if bit_of(v, k, n):
            w |= 1 << (n - 1 - p(k))
    return w


def apply_permutation(p: Permutation, state: State) -> State:
    """Permute tensor factors: position p(k) of the image carries bit k."""
    n = state.n
    if p.n != n:
        raise ValueError(f"size mismatch: permutation on {p.n}, state on {n}")
    table = [permuted_value(p, v, n) for v in range(2**n)]
    if isinstance(state, ExactState):
        amps = [0] * 2**n
        for v, a in enumerate(state.amps):
            amps[table[v]] = a
        return ExactState(n, tuple(amps), state.i_power, state.scale)
    vec = np.zeros_like(state.vec)
    vec[table] = state.vec
    return FloatState(n, vec)


def apply_algebra_element(x: GroupAlgebraElement, state: ExactState) -> ExactState:
    """Apply a group-algebra element termwise; the result may be zero."""
    if x.n != state.n:
        raise ValueError(f"size mismatch: algebra on {x.n}, state on {state.n}")
    amps = [0] * 2**state.n
    for perm, coeff in x.terms.items():
        for v, a in enumerate(state.amps):
            if a:
                amps[permuted_value(perm, v, state.n)] += coeff * a
    return ExactState(state.n, tuple(amps), state.i_power, state.scale)


def pauli_apply(axis: str, qubit: int, state: State) -> State:
    """Single-qubit Pauli action; sigma_y on the exact lane adds one i_power."""
    n = state.n
    if not 0 <= qubit < n:
        raise ValueError(f"qubit index {qubit} out of range for n={n}")
    if axis not in ("x", "y", "z"):
        raise ValueError(f"axis must be x, y or z, got {axis!r}")
    flip = 1 << (n - 1 - qubit)
    if isinstance(state, ExactState):
        amps = [0] * 2**n
        for v, a in enumerate(state.amps):
            if not a:
                continue
            b = bit_of(v, qubit, n)
            if axis == "x":
                amps[v ^ flip] += a
            elif axis == "z":
                amps[v] += -a if b else a
            else:  # sigma_y |b> = i(-1)^b |1-b>
                amps[v ^ flip] += -a if b else a
        return ExactState(n, tuple(amps), state.i_power + (1 if axis == "y" else 0), state.scale)
    vec = np.zeros_like(state.vec)
    for v, a in enumerate(state.vec):
        b = bit_of(v, qubit, n)
        if axis == "x":
            vec[v ^ flip] += a
        elif axis == "z":
            vec[v] += -a if b else a
        else:
            vec[v ^ flip] += 1j * (-a if b else a)
    return FloatState(n, vec)


def _apply_pauli_chain(paulis: tuple[tuple[str, int], ...], state: State) -> State:
    out = state
    for axis, qubit in reversed(paulis):
        out = pauli_apply(axis, qubit, out)
    return out


def pauli_string_apply(terms: list[PauliTerm], state: State) -> State:
    """Weighted sum of Pauli strings.

    Exact inputs stay exact when every string carries the same i^k phase
    (true for all the phase-bit/parity operators used here); the rational
    weights fold into ``scale``.  Mixed phases fall back to the float lane.
    """
    if isinstance(state, FloatState):
        vec = np.zeros_like(state.vec)
        for weight, paulis in terms:
            vec = vec + complex(Fraction(weight)) * _apply_pauli_chain(paulis, state).vec
        return FloatState(state.n, vec)

    partials: list[tuple[Fraction, ExactState]] = []
    for weight, paulis in terms:
        res = _apply_pauli_chain(paulis, state)
        assert isinstance(res, ExactState)
        partials.append((Fraction(weight), res))
    phases = {st.i_power for _, st in partials if not st.is_zero()}
    if len(phases) > 1:
        return pauli_string_apply(terms, state.to_float())
    i_power = phases.pop() if phases else state.i_power
    denom = math.lcm(*(w.denominator for w, _ in partials)) if partials else 1
    amps = [0] * 2**state.n
    for weight, st in partials:
        c = int(weight * denom)
        for v, a in enumerate(st.amps):
            amps[v] += c * a
    out = ExactState(state.n, tuple(amps), i_power, state.scale / denom)
    g = 0
    for a in out.amps:
        g = math.gcd(g, a)
    if g > 1:
        out = ExactState(state.n, tuple(a // g for a in out.amps), i_power, out.scale * g)
    return out


def x_parity_terms(n: int) -> list[PauliTerm]:
    """P_x^(n): the product of sigma_x over all qubits (phase-bit operator)."""
    return [(1, tuple(("x", j) for j in range(n)))]


def z_parity_terms(n: int) -> list[PauliTerm]:
    """P_z^(n): the product of sigma_z over all qubits."""
    return [(1, tuple(("z", j) for j in range(n)))]


def z_pair_average_terms(n: int) -> list[PauliTerm]:
    """Averaged pairwise sigma_z sigma_z parity operator."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    w = Fraction(1, len(pairs))
    return [(w, (("z", i), ("z", j))) for i, j in pairs]


def t_operator(sign: int, state: ExactState) -> ExactState:
    """T±: state ± X^{⊗n} state, with the 1/sqrt(2) left to normalization."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    n = state.n
    mask = 2**n - 1
    amps = tuple(state.amps[v] + sign * state.amps[v ^ mask] for v in range(2**n))
    return ExactState(n, amps, state.i_power, state.scale)


def spin_flip_conjugate(state: ExactState) -> ExactState:
    """|psi~> = sigma_y^{⊗n} |psi*>, the spin-flipped conjugate of Eq.-37 type."""
    conj = ExactState(state.n, state.amps, -state.i_power, state.scale)
    out: State = conj
    for j in range(state.n):
        out = pauli_apply("y", j, out)
    assert isinstance(out, ExactState)
    return out


def dot_int(x: ExactState, y: ExactState) -> int:
    """Raw integer amplitude dot product (prefactors ignored)."""
    if x.n != y.n:
        raise ValueError(f"size mismatch: {x.n} vs {y.n}")
    return sum(a * b for a, b in zip(x.amps, y.amps))


def inner_product(x: State, y: State) -> complex:
    """<x|y> of the normalized states, conjugate-linear in x."""
    if x.n != y.n:
        raise ValueError(f"size mismatch: {x.n} vs {y.n}")
    if isinstance(x, ExactState) and isinstance(y, ExactState):
        if x.is_zero() or y.is_zero():
            return 0j
        phase = 1j ** ((y.i_power - x.i_power) % 4)
        sgn = (1 if x.scale > 0 else -1) * (1 if y.scale > 0 else -1)
        return phase * sgn * dot_int(x, y) / math.sqrt(x.norm2 * y.norm2)
    return complex(np.vdot(as_vector(x), as_vector(y)))


def overlap_squared_exact(x: ExactState, y: ExactState) -> Fraction:
    """|<x|y>|^2 of the normalized states as an exact rational."""
    if x.is_zero() or y.is_zero():
        return Fraction(0)
    return Fraction(dot_int(x, y) ** 2, x.norm2 * y.norm2)


def states_equal_up_to_sign(x: ExactState, y: ExactState) -> bool:
    return x.canonical().amps == y.canonical().amps


def proportionality_factor(x: ExactState, y: ExactState) -> Fraction | None:
    """Exact rational c with x = c*y (including scale), or None.

    Requires matching i_power; a pure-imaginary ratio has no rational c.
    """
    if x.n != y.n:
        raise ValueError(f"size mismatch: {x.n} vs {y.n}")
    if x.is_zero():
        return Fraction(0)
    if y.is_zero() or (x.i_power - y.i_power) % 2:
        return None
    flip = -1 if (x.i_power - y.i_power) % 4 == 2 else 1
    ratio: Fraction | None = None
    for a, b in zip(x.amps, y.amps):
        if (a == 0) != (b == 0):
            return None
        if a:
            r = Fraction(a, b)
            if ratio is None:
                ratio = r
            elif r != ratio:
                return None
    assert ratio is not None
    return flip * ratio * x.scale / y.scale


@dataclass(frozen=True)
class SpinLabels:
    """Angular-momentum labels; None marks 'not an eigenstate'."""

    m_j: Fraction | None
    j: Fraction | None
    partial_spins: dict[tuple[int, ...], Fraction | None]


def jz_support(state: ExactState) -> set[Fraction]:
    """J_z eigenvalues appearing in the ket expansion."""
    n = state.n
    return {Fraction(n - 2 * bin(v).count("1"), 2) for v in state.support()}


def _swap_sum_apply(state: ExactState, qubits: tuple[int, ...]) -> ExactState:
    amps = [0] * 2**state.n
    for i_pos in range(len(qubits)):
        for j_pos in range(i_pos + 1, len(qubits)):
            p = Permutation.transposition(state.n, qubits[i_pos], qubits[j_pos])
            swapped = apply_permutation(p, state)
            for v, a in enumerate(swapped.amps):
                amps[v] += a
    return ExactState(state.n, tuple(amps))


def _eigen_ratio(applied: ExactState, state: ExactState) -> Fraction | None:
    ratio: Fraction | None = None
    for a, b in zip(applied.amps, state.amps):
        if b == 0:
            if a != 0:
                return None
            continue
        r = Fraction(a, b)
        if ratio is None:
            ratio = r
        elif r != ratio:
            return None
    return ratio


def total_spin(state: ExactState, qubits: tuple[int, ...] | None = None) -> Fraction | None:
    """Spin s of (sum of spin vectors over qubits)^2, or None if not an eigenstate.

    Uses 4*(sum s_i)^2 = 3k - k(k-1) + 4*sum of SWAPs (k qubits), which acts
    by label permutation and therefore stays in integer arithmetic.
    """
    if state.is_zero():
        raise ValueError("zero state has no spin labels")
    qubits = tuple(range(state.n)) if qubits is None else tuple(qubits)
    k = len(qubits)
    swap_part = _swap_sum_apply(state, qubits)
    base = 3 * k - k * (k - 1)
    applied = ExactState(
        state.n, tuple(base * a + 4 * b for a, b in zip(state.amps, swap_part.amps))
    )
    ratio = _eigen_ratio(applied, state)
    if ratio is None:
        return None
    # ratio = 4 s(s+1) = (2s)(2s+2); solve for integer 2s
    c = ratio
    if c.denominator != 1 or c < 0:
        return None
    twice = math.isqrt(c.numerator + 1) - 1
    if twice * (twice + 2) != c.numerator:
        return None
    return Fraction(twice, 2)


def spin_labels(
    state: ExactState, subsets: list[tuple[int, ...]] | None = None
) -> SpinLabels:
    """m_J, total J and per-subset pair spins of an exact state."""
    if state.is_zero():
        raise ValueError("zero state has no spin labels")
    support_ms = jz_support(state)
    m_j = support_ms.pop() if len(support_ms) == 1 else None
    j = total_spin(state)
    partials = {}
    for subset in subsets or []:
        partials[tuple(subset)] = total_spin(state, tuple(subset))
    return SpinLabels(m_j=m_j, j=j, partial_spins=partials)


def state_to_json(state: State) -> dict:
    """JSON form; exact integer terms round-trip bit-exactly."""
    if isinstance(state, ExactState) and state.scale == 1:
        entries = state.exact_entries()
        terms = [
            {"ket": ket_text(v, state.n), "re": int(entries[v][0]), "im": int(entries[v][1])}
            for v in display_values(state.n)
            if state.amps[v]
        ]
        return {"n": state.n, "terms": terms, "exact": True, "norm2": state.norm2}
    vec = state.to_float().vec if isinstance(state, ExactState) else state.vec
    terms = [
        {"ket": ket_text(v, state.n), "re": float(vec[v].real), "im": float(vec[v].imag)}
        for v in display_values(state.n)
        if abs(vec[v]) > 0
    ]
    return {"n": state.n, "terms": terms, "exact": False}


def state_from_json(data: dict) -> State:
    n = int(data["n"])
    if data.get("exact"):
        re_amps = [0] * 2**n
        im_amps = [0] * 2**n
        for term in data["terms"]:
            v = ket_value(term["ket"])
            re_amps[v] = int(term["re"])
            im_amps[v] = int(term["im"])
        if not any(im_amps):
            state = ExactState(n, tuple(re_amps))
        elif not any(re_amps):
            state = ExactState(n, tuple(im_amps), i_power=1)
        else:
            raise ValueError("exact states carry a single global i^k phase")
        if "norm2" in data and data["norm2"] != state.norm2:
            raise ValueError(f"norm2 mismatch: stored {data['norm2']}, computed {state.norm2}")
        return state
    vec = np.zeros(2**n, dtype=complex)
    for term in data["terms"]:
        vec[ket_value(term["ket"])] = complex(float(term["re"]), float(term["im"]))
    return FloatState(n, vec)
