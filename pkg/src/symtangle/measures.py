"""Entanglement measures and separability tests over the generated states."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .density import (
    DensityMatrix,
    bipartite_splits,
    density_from_pure,
    exact_det,
    mask_text,
    parse_mask,
    partial_trace,
    partial_transpose,
    purity,
    spectral_summary,
)
from .harmonics import LabeledState
from .qstate import (
    ExactState,
    FloatState,
    State,
    as_vector,
    dot_int,
    spin_flip_conjugate,
)

NEGATIVITY_TOL = 1e-10
PM_MARGIN = 1e-10
OVERLAP_TOL = 1e-9


def _unwrap(state: State | LabeledState) -> State:
    return state.state if isinstance(state, LabeledState) else state


def _sqrtm_psd(m: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(m)
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


_YY = np.array(
    [[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=complex
)


def wootters_concurrence(rho4: np.ndarray) -> float:
    """Two-qubit concurrence via the Hermitian route sqrt(rho) rho~ sqrt(rho)."""
    rho_tilde = _YY @ rho4.conj() @ _YY
    sq = _sqrtm_psd(rho4)
    lam = np.linalg.eigvalsh(sq @ rho_tilde @ sq)
    # flush numerically-zero eigenvalues: sqrt would turn 1e-17 noise into 3e-9
    cutoff = 1e-13 * max(lam.max(), 1e-300)
    lam = np.sqrt(np.where(lam > cutoff, lam, 0.0))[::-1]
    return float(max(0.0, lam[0] - lam[1:].sum()))


def concurrence_pair(state: State | LabeledState, j: int, k: int) -> float:
    """C_jk of the reduced two-qubit matrix on qubits j and k."""
    s = _unwrap(state)
    if j == k:
        raise ValueError("concurrence_pair needs two distinct qubits")
    if s.n < 2:
        raise ValueError("need at least two qubits")
    rho = density_from_pure(s)
    if s.n > 2:
        others = tuple(q for q in range(s.n) if q not in (j, k))
        rho = partial_trace(rho, others)
    return wootters_concurrence(rho.to_numpy())


def concurrence_split_squared(state: State | LabeledState, qubit: int) -> Fraction | float:
    """C^2 between one qubit and the rest: 4 det of its reduced matrix."""
    s = _unwrap(state)
    rho_q = partial_trace(density_from_pure(s), tuple(q for q in range(s.n) if q != qubit))
    if rho_q.exact:
        return 4 * exact_det(rho_q)
    m = rho_q.mat
    return float(4 * (m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]).real)


def concurrence_split(state: State | LabeledState, qubit: int) -> float:
    """C_{I(rest)} for a pure state and single qubit I.

    Cross-checked against the Schmidt route (singular values of the reshaped
    amplitude matrix): C = 2 s1 s2.
    """
    s = _unwrap(state)
    csq = float(concurrence_split_squared(state, qubit))
    value = math.sqrt(max(csq, 0.0))
    vec = as_vector(s)
    rows = np.zeros((2, 2 ** (s.n - 1)), dtype=complex)
    for v, a in enumerate(vec):
        bit = (v >> (s.n - 1 - qubit)) & 1
        rest = _drop_bit(v, s.n, qubit)
        rows[bit, rest] = a
    sv = np.linalg.svd(rows, compute_uv=False)
    schmidt = float(2 * sv[0] * sv[1]) if len(sv) > 1 else 0.0
    if abs(schmidt - value) > 1e-10:
        raise AssertionError(f"split concurrence routes disagree: {value} vs {schmidt}")
    return value


def _drop_bit(v: int, n: int, qubit: int) -> int:
    pos = n - 1 - qubit
    high = v >> (pos + 1)
    low = v & ((1 << pos) - 1)
    return (high << pos) | low


def three_tangle(state: State | LabeledState, clamp: bool = True) -> float:
    """tau_3 = C^2_{a(bc)} - C^2_ab - C^2_ac, checked over all focus choices."""
    s = _unwrap(state)
    if s.n != 3:
        raise ValueError("three_tangle is defined for three qubits")
    values = []
    for focus in range(3):
        others = [q for q in range(3) if q != focus]
        tau = float(concurrence_split_squared(s, focus))
        for other in others:
            tau -= concurrence_pair(s, focus, other) ** 2
        values.append(tau)
    spread = max(values) - min(values)
    if spread > 1e-10:
        raise AssertionError(f"three_tangle focus choices disagree: {values}")
    raw = sum(values) / 3
    return min(max(raw, 0.0), 1.0) if clamp else raw


def e_tau(state: State | LabeledState) -> float:
    """Sum of squared pairwise concurrences for a three-qubit state."""
    s = _unwrap(state)
    if s.n != 3:
        raise ValueError("e_tau is defined for three qubits")
    return sum(
        concurrence_pair(s, j, k) ** 2 for j in range(3) for k in range(j + 1, 3)
    )


def n_tangle(state: State | LabeledState) -> Fraction | float:
    """tau_n = |<psi|psi~>|^2 with psi~ the sigma_y^{⊗n} spin-flipped conjugate.

    Exact inputs give an exact rational; n = 3 routes to the 3-tangle and odd
    n > 3 has no accepted definition.
    """
    s = _unwrap(state)
    if s.n == 3:
        return three_tangle(s)
    if s.n % 2:
        raise ValueError(f"n-tangle undefined for odd n = {s.n}")
    if isinstance(s, ExactState):
        tilde = spin_flip_conjugate(s)
        if tilde.i_power % 2:
            raise AssertionError("even-n spin flip must stay real")
        return Fraction(dot_int(s, tilde) ** 2, s.norm2 * tilde.norm2)
    vec = as_vector(s)
    tilde = vec.conj()
    n = s.n
    phase = 1j**n
    out = np.zeros_like(tilde)
    for v, a in enumerate(tilde):
        ones = bin(v).count("1")
        out[v ^ (2**n - 1)] = phase * (-1) ** (n - ones) * a
    return float(abs(np.vdot(vec, out)) ** 2)


@dataclass(frozen=True)
class PhSplit:
    qubits: tuple[int, ...]
    min_eig: float
    det: Fraction | float
    equals_rho: bool


@dataclass(frozen=True)
class PhResult:
    any_negative: bool
    any_negative_det: bool
    per_split: tuple[PhSplit, ...]


def ph_test(state: State | LabeledState) -> PhResult:
    """Peres-Horodecki scan over every 2-split of the system.

    ``any_negative`` follows the spectrum (min eigenvalue below -1e-10);
    ``any_negative_det`` follows the determinant-sign form of the criterion,
    which is the quantity the source tables tabulate (large transposed
    matrices are rank-deficient, so their determinant is 0 even when the
    spectrum dips negative).
    """
    s = _unwrap(state)
    rho = density_from_pure(s)
    splits = []
    for qubits in bipartite_splits(s.n):
        transposed = partial_transpose(rho, qubits)
        summary = spectral_summary(transposed)
        splits.append(
            PhSplit(
                qubits=qubits,
                min_eig=summary.min_eig,
                det=summary.det,
                equals_rho=transposed.equals(rho),
            )
        )
    negative = any(sp.min_eig < -NEGATIVITY_TOL for sp in splits)
    negative_det = any(
        (sp.det < 0 if isinstance(sp.det, Fraction) else sp.det < -NEGATIVITY_TOL)
        for sp in splits
    )
    return PhResult(any_negative=negative, any_negative_det=negative_det, per_split=tuple(splits))


@dataclass(frozen=True)
class PmSplit:
    traced: tuple[int, ...]
    tr_rho2: Fraction | float
    separable_boundary: bool


@dataclass(frozen=True)
class PmResult:
    entangled: bool
    per_split: tuple[PmSplit, ...]


def pm_test(state: State | LabeledState) -> PmResult:
    """Pope-Milburn purity scan: Tr rho_Q^2 < 1 for every proper subsystem Q."""
    s = _unwrap(state)
    rho = density_from_pure(s)
    records = []
    for bits in range(1, 2**s.n - 1):
        traced = tuple(j for j in range(s.n) if bits >> j & 1)
        tr2 = purity(partial_trace(rho, traced)).tr_rho2
        if isinstance(tr2, Fraction):
            boundary = tr2 >= 1
        else:
            boundary = tr2 >= 1 - PM_MARGIN
        records.append(PmSplit(traced=traced, tr_rho2=tr2, separable_boundary=boundary))
    entangled = all(not r.separable_boundary for r in records)
    return PmResult(entangled=entangled, per_split=tuple(records))


@dataclass(frozen=True)
class Classification:
    label: str
    separable_splits: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]


def classify(state: State | LabeledState) -> Classification:
    """Pure-state verdict: product, separable splits, NPT- or bound-entangled.

    The NPT/bound distinction follows the determinant form of the PH test
    (the convention the source tables use); the spectral min eigenvalue is
    still available per split through ph_test.
    """
    s = _unwrap(state)
    rho = density_from_pure(s)
    separable = []
    for qubits in bipartite_splits(s.n):
        tr2 = purity(partial_trace(rho, qubits)).tr_rho2
        is_sep = tr2 == 1 if isinstance(tr2, Fraction) else tr2 >= 1 - PM_MARGIN
        if is_sep:
            complement = tuple(j for j in range(s.n) if j not in qubits)
            separable.append((qubits, complement))
    if separable:
        label = "product" if len(separable) == len(bipartite_splits(s.n)) else "separable"
        return Classification(label=label, separable_splits=tuple(separable))
    if ph_test(s).any_negative_det:
        return Classification(label="NPT-entangled", separable_splits=())
    if pm_test(s).entangled:
        return Classification(label="bound-entangled", separable_splits=())
    return Classification(label="separable", separable_splits=())


@dataclass(frozen=True)
class RemainderResult:
    equals: bool
    det: Fraction | float


def remainder_test(state: State | LabeledState, traced, j: int) -> RemainderResult:
    """After tracing out I, transpose the leftover matrix at qubit j.

    Equality with the untransposed remainder signals a fragile/separable
    leftover (the Table-II/IV rho_I^{T_J} column).
    """
    s = _unwrap(state)
    traced_q = parse_mask(traced, s.n)
    if j in traced_q:
        raise ValueError(f"qubit {j} was traced out")
    kept = [q for q in range(s.n) if q not in traced_q]
    if len(kept) < 2:
        raise ValueError("remainder needs at least two leftover qubits")
    rho_i = partial_trace(density_from_pure(s), traced_q)
    transposed = partial_transpose(rho_i, (kept.index(j),))
    det = exact_det(transposed) if transposed.exact else spectral_summary(transposed).det
    return RemainderResult(equals=transposed.equals(rho_i), det=det)


@dataclass(frozen=True)
class CompatibilityResult:
    per_qubit: dict[int, tuple[str, ...]]
    union: tuple[str, ...]
    overlaps: dict[tuple[int, str], Fraction | float]


def compatibility(
    big: State | LabeledState, candidates: list[LabeledState]
) -> CompatibilityResult:
    """Overlap screen Tr(rho_I sigma) > 1e-9 for each single-qubit trace of big.

    The union over traced qubits is the compatibility set; per-qubit hits are
    kept because the source tables select finer subsets than the union.
    """
    b = _unwrap(big)
    if not candidates:
        raise ValueError("need at least one candidate")
    names = []
    for idx, cand in enumerate(candidates):
        if cand.state.n != b.n - 1:
            raise ValueError("candidates must have one qubit fewer than the big state")
        names.append(cand.name or f"state{idx}")
    rho_big = density_from_pure(b)
    per_qubit: dict[int, tuple[str, ...]] = {}
    overlaps: dict[tuple[int, str], Fraction | float] = {}
    union: list[str] = []
    for q in range(b.n):
        reduced = partial_trace(rho_big, (q,))
        hits = []
        for name, cand in zip(names, candidates):
            value = _overlap(reduced, cand.state)
            overlaps[(q, name)] = value
            passes = value > Fraction(1, 10**9) if isinstance(value, Fraction) else value > OVERLAP_TOL
            if passes:
                hits.append(name)
                if name not in union:
                    union.append(name)
        per_qubit[q] = tuple(hits)
    return CompatibilityResult(per_qubit=per_qubit, union=tuple(union), overlaps=overlaps)


def _overlap(rho: DensityMatrix, state: ExactState | FloatState) -> Fraction | float:
    if rho.exact and isinstance(state, ExactState):
        amps = state.amps
        total = Fraction(0)
        for r, a in enumerate(amps):
            if not a:
                continue
            for c, bmp in enumerate(amps):
                if bmp:
                    total += a * bmp * rho.mat[r][c]
        return total / state.norm2
    vec = as_vector(state)
    return float((vec.conj() @ rho.to_numpy() @ vec).real)


@dataclass(frozen=True)
class SplitRecord:
    qubits: tuple[int, ...]
    rhoT_equals_rho: bool
    det_rhoT: Fraction | float
    min_eig_rhoT: float
    tr_rhoI2: Fraction | float
    rhoI_pure: bool
    remainders: dict[int, RemainderResult]


@dataclass(frozen=True)
class EntanglementReport:
    state_id: str
    n: int
    is_pure: bool
    per_split: tuple[SplitRecord, ...]
    pairwise: dict[tuple[int, int], float]
    split_concurrence: dict[int, float]
    e_tau: float | None
    tangle_kind: str
    tangle: float
    classification: Classification


def build_report(state: State | LabeledState, state_id: str | None = None) -> EntanglementReport:
    """Assemble the full Table-row bundle of diagnostics for one state."""
    s = _unwrap(state)
    name = state_id or (state.name if isinstance(state, LabeledState) else None) or "state"
    rho = density_from_pure(s)
    records = []
    for qubits in bipartite_splits(s.n):
        transposed = partial_transpose(rho, qubits)
        summary = spectral_summary(transposed)
        reduced = partial_trace(rho, qubits)
        pur = purity(reduced)
        kept = [q for q in range(s.n) if q not in qubits]
        remainders = {}
        if len(kept) >= 2:
            for j in kept:
                remainders[j] = remainder_test(s, qubits, j)
        records.append(
            SplitRecord(
                qubits=qubits,
                rhoT_equals_rho=transposed.equals(rho),
                det_rhoT=summary.det,
                min_eig_rhoT=summary.min_eig,
                tr_rhoI2=pur.tr_rho2,
                rhoI_pure=pur.is_pure,
                remainders=remainders,
            )
        )
    pairwise = {
        (j, k): concurrence_pair(s, j, k) for j in range(s.n) for k in range(j + 1, s.n)
    }
    split_conc = {q: concurrence_split(s, q) for q in range(s.n)}
    if s.n == 2:
        kind, tangle = "tau2", float(n_tangle(s))
        etau = None
    elif s.n == 3:
        kind, tangle = "tau3", three_tangle(s)
        etau = e_tau(s)
    elif s.n % 2 == 0:
        kind, tangle = f"tau{s.n}", float(n_tangle(s))
        etau = None
    else:
        kind, tangle = "undefined", float("nan")
        etau = None
    return EntanglementReport(
        state_id=name,
        n=s.n,
        is_pure=purity(rho).is_pure,
        per_split=tuple(records),
        pairwise=pairwise,
        split_concurrence=split_conc,
        e_tau=etau,
        tangle_kind=kind,
        tangle=tangle,
        classification=classify(s),
    )


def _num(value: Fraction | float) -> float:
    return float(value)


def _exact_str(value: Fraction | float) -> str | None:
    return str(value) if isinstance(value, Fraction) else None


def report_to_dict(report: EntanglementReport) -> dict:
    """JSON-ready dict with stable field names."""
    splits = []
    for rec in report.per_split:
        entry = {
            "subsystem": mask_text(rec.qubits),
            "rhoT_equals_rho": rec.rhoT_equals_rho,
            "det_rhoT": _num(rec.det_rhoT),
            "det_rhoT_exact": _exact_str(rec.det_rhoT),
            "min_eig_rhoT": rec.min_eig_rhoT,
            "tr_rhoI2": _num(rec.tr_rhoI2),
            "tr_rhoI2_exact": _exact_str(rec.tr_rhoI2),
            "rhoI_pure": rec.rhoI_pure,
            "remainders": {
                mask_text((j,)): {
                    "equals_rhoI": rem.equals,
                    "det": _num(rem.det),
                    "det_exact": _exact_str(rem.det),
                }
                for j, rem in sorted(rec.remainders.items())
            },
        }
        splits.append(entry)
    return {
        "state": report.state_id,
        "n": report.n,
        "is_pure": report.is_pure,
        "splits": splits,
        "concurrence_pairs": {
            mask_text(pair): value for pair, value in sorted(report.pairwise.items())
        },
        "concurrence_splits": {
            mask_text((q,)): value for q, value in sorted(report.split_concurrence.items())
        },
        "e_tau": report.e_tau,
        "tangle_kind": report.tangle_kind,
        "tangle": report.tangle,
        "classification": report.classification.label,
        "separable_splits": [
            f"{mask_text(a)}|{mask_text(b)}" for a, b in report.classification.separable_splits
        ],
    }
