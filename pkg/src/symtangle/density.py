"""Density matrices with an exact rational lane: partial trace/transpose, spectra.

Matrices are stored in ascending ket-value order (qubit a = most significant
bit); display/dump helpers reverse both axes to the descending standard-basis
order used for the block-transpose scheme.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .qstate import ExactState, FloatState, State, as_vector

HERMITICITY_TOL = 1e-10


def parse_mask(spec: int | str | Iterable[int], n: int) -> tuple[int, ...]:
    """Subsystem mask from qubit letters ('ac'), an index iterable, or a bitmask."""
    if isinstance(spec, str):
        qubits = sorted("abcdefgh".index(ch) for ch in spec)
    elif isinstance(spec, int):
        qubits = [j for j in range(n) if spec >> j & 1]
    else:
        qubits = sorted(set(int(j) for j in spec))
    if any(not 0 <= j < n for j in qubits):
        raise ValueError(f"mask {spec!r} out of range for n={n}")
    if len(set(qubits)) != len(qubits):
        raise ValueError(f"mask {spec!r} repeats a qubit")
    return tuple(qubits)


def mask_text(qubits: Iterable[int]) -> str:
    return "".join("abcdefgh"[j] for j in sorted(qubits))


def bipartite_splits(n: int) -> list[tuple[int, ...]]:
    """One mask per bipartite split (2^(n-1) - 1 of them); complements omitted."""
    out = []
    for bits in range(1, 2**n - 1):
        qubits = tuple(j for j in range(n) if bits >> j & 1)
        k = len(qubits)
        if k < n - k or (k == n - k and 0 in qubits):
            out.append(qubits)
    return sorted(out, key=lambda q: (len(q), q))


class DensityMatrix:
    """Hermitian 2^n x 2^n matrix; exact lane holds Fractions, float lane complex."""

    __slots__ = ("n", "mat", "exact", "transposed")

    def __init__(self, n: int, mat, exact: bool, transposed: bool = False, validate: bool = True):
        self.n = n
        self.exact = exact
        self.transposed = transposed
        dim = 2**n
        if exact:
            self.mat = [[Fraction(x) for x in row] for row in mat]
            if len(self.mat) != dim or any(len(r) != dim for r in self.mat):
                raise ValueError(f"need a {dim}x{dim} matrix")
            if validate:
                if any(self.mat[i][j] != self.mat[j][i] for i in range(dim) for j in range(i)):
                    raise ValueError("exact lane requires a real symmetric matrix")
                if sum(self.mat[i][i] for i in range(dim)) != 1:
                    raise ValueError("trace must be 1")
        else:
            self.mat = np.array(mat, dtype=complex)
            if self.mat.shape != (dim, dim):
                raise ValueError(f"need a {dim}x{dim} matrix")
            if validate:
                if np.abs(self.mat - self.mat.conj().T).max() > HERMITICITY_TOL:
                    raise ValueError("matrix is not Hermitian within 1e-10")
                if abs(self.mat.trace() - 1) > HERMITICITY_TOL:
                    raise ValueError("trace must be 1")

    @property
    def dim(self) -> int:
        return 2**self.n

    def to_numpy(self) -> np.ndarray:
        if self.exact:
            return np.array([[float(x) for x in row] for row in self.mat], dtype=complex)
        return self.mat.copy()

    def entry(self, i: int, j: int) -> Fraction | complex:
        return self.mat[i][j] if self.exact else complex(self.mat[i, j])

    def equals(self, other: DensityMatrix, tol: float = 1e-12) -> bool:
        if self.n != other.n:
            return False
        if self.exact and other.exact:
            return self.mat == other.mat
        return bool(np.abs(self.to_numpy() - other.to_numpy()).max() <= tol)

    def to_display(self) -> np.ndarray:
        """Matrix in descending-binary basis order (|1..1> first)."""
        return self.to_numpy()[::-1, ::-1]


def density_from_pure(state: State) -> DensityMatrix:
    """rho = |s><s| / <s|s>; exact Fractions when the state is exact."""
    if isinstance(state, ExactState):
        if state.is_zero():
            raise ValueError("zero state has no density matrix")
        norm2 = state.norm2
        # the global i^k prefactor cancels in the outer product
        mat = [[Fraction(a * b, norm2) for b in state.amps] for a in state.amps]
        return DensityMatrix(state.n, mat, exact=True)
    vec = as_vector(state)
    return DensityMatrix(state.n, np.outer(vec, vec.conj()), exact=False)


def _index_split(n: int, kept: tuple[int, ...]) -> tuple[list[int], list[int]]:
    """Bit positions (in ket-value order) of kept and traced qubits."""
    kept_pos = [n - 1 - j for j in kept]
    traced_pos = [n - 1 - j for j in range(n) if j not in kept]
    return kept_pos, traced_pos


def _assemble(positions: list[int], bits: int) -> int:
    value = 0
    for slot, pos in enumerate(reversed(positions)):
        if bits >> slot & 1:
            value |= 1 << pos
    return value


def partial_trace(rho: DensityMatrix, traced: int | str | Iterable[int]) -> DensityMatrix:
    """Trace out the given qubits; remaining qubits keep their order."""
    traced_q = parse_mask(traced, rho.n)
    if not traced_q or len(traced_q) == rho.n:
        raise ValueError("traced subsystem must be a nonempty proper subset")
    kept_q = tuple(j for j in range(rho.n) if j not in traced_q)
    kept_pos, traced_pos = _index_split(rho.n, kept_q)
    m = len(kept_q)
    dim = 2**m
    if rho.exact:
        out = [[Fraction(0)] * dim for _ in range(dim)]
    else:
        out = np.zeros((dim, dim), dtype=complex)
    for r in range(dim):
        rv = _assemble(kept_pos, r)
        for c in range(dim):
            cv = _assemble(kept_pos, c)
            acc = Fraction(0) if rho.exact else 0j
            for t in range(2 ** len(traced_pos)):
                tv = _assemble(traced_pos, t)
                acc += rho.mat[rv | tv][cv | tv] if rho.exact else rho.mat[rv | tv, cv | tv]
            if rho.exact:
                out[r][c] = acc
            else:
                out[r, c] = acc
    return DensityMatrix(m, out, exact=rho.exact)


def partial_transpose(
    rho: DensityMatrix, subsystem: int | str | Iterable[int], scheme: str = "general"
) -> DensityMatrix:
    """Transpose the indices of one subsystem.

    ``general`` swaps the subsystem's index bits between row and column in one
    shot; ``block`` iterates the per-qubit sub-matrix interchange on the
    display-ordered matrix (the composition rule rho^{T_k1 k2...}).  The two
    must agree entrywise.
    """
    qubits = parse_mask(subsystem, rho.n)
    if not qubits:
        raise ValueError("transpose subsystem must be nonempty")
    if scheme == "general":
        im = 0
        for j in qubits:
            im |= 1 << (rho.n - 1 - j)
        dim = rho.dim
        if rho.exact:
            out = [
                [rho.mat[(r & ~im) | (c & im)][(c & ~im) | (r & im)] for c in range(dim)]
                for r in range(dim)
            ]
        else:
            out = np.empty((dim, dim), dtype=complex)
            for r in range(dim):
                for c in range(dim):
                    out[r, c] = rho.mat[(r & ~im) | (c & im), (c & ~im) | (r & im)]
        return DensityMatrix(rho.n, out, exact=rho.exact, transposed=True, validate=False)
    if scheme == "block":
        disp = rho.to_display() if not rho.exact else None
        if rho.exact:
            dim = rho.dim
            disp_obj = [[rho.mat[dim - 1 - r][dim - 1 - c] for c in range(dim)] for r in range(dim)]
            for j in qubits:
                _block_interchange_exact(disp_obj, rho.n, j)
            out = [[disp_obj[dim - 1 - r][dim - 1 - c] for c in range(dim)] for r in range(dim)]
            return DensityMatrix(rho.n, out, exact=True, transposed=True, validate=False)
        for j in qubits:
            disp = _block_interchange_float(disp, rho.n, j)
        return DensityMatrix(rho.n, disp[::-1, ::-1], exact=False, transposed=True, validate=False)
    raise ValueError(f"scheme must be 'general' or 'block', got {scheme!r}")


def _block_interchange_float(disp: np.ndarray, n: int, qubit: int) -> np.ndarray:
    """Swap the off-diagonal sub-blocks at qubit granularity (display order)."""
    s = 2 ** (n - 1 - qubit)
    dim = 2**n
    out = disp.copy()
    for row0 in range(0, dim, 2 * s):
        for col0 in range(0, dim, 2 * s):
            upper = disp[row0 : row0 + s, col0 + s : col0 + 2 * s].copy()
            lower = disp[row0 + s : row0 + 2 * s, col0 : col0 + s].copy()
            out[row0 : row0 + s, col0 + s : col0 + 2 * s] = lower
            out[row0 + s : row0 + 2 * s, col0 : col0 + s] = upper
    return out


def _block_interchange_exact(disp: list[list[Fraction]], n: int, qubit: int) -> None:
    s = 2 ** (n - 1 - qubit)
    dim = 2**n
    for row0 in range(0, dim, 2 * s):
        for col0 in range(0, dim, 2 * s):
            for dr in range(s):
                for dc in range(s):
                    r_up, c_up = row0 + dr, col0 + s + dc
                    r_lo, c_lo = row0 + s + dr, col0 + dc
                    disp[r_up][c_up], disp[r_lo][c_lo] = disp[r_lo][c_lo], disp[r_up][c_up]


@dataclass(frozen=True)
class PurityResult:
    is_pure: bool
    tr_rho2: Fraction | float


def purity(rho: DensityMatrix) -> PurityResult:
    """is_pure tests rho^2 = rho (exactly on the exact lane)."""
    dim = rho.dim
    if rho.exact:
        tr2 = sum(rho.mat[i][j] * rho.mat[j][i] for i in range(dim) for j in range(dim))
        sq_equals = all(
            sum(rho.mat[i][k] * rho.mat[k][j] for k in range(dim)) == rho.mat[i][j]
            for i in range(dim)
            for j in range(dim)
        )
        return PurityResult(is_pure=sq_equals, tr_rho2=tr2)
    m = rho.mat
    tr2 = float(np.trace(m @ m).real)
    sq_equals = bool(np.abs(m @ m - m).max() < 1e-10)
    return PurityResult(is_pure=sq_equals, tr_rho2=tr2)


def exact_det(rho: DensityMatrix) -> Fraction:
    """Determinant by exact Gaussian elimination (exact lane only)."""
    if not rho.exact:
        raise ValueError("exact_det needs the exact lane")
    m = [row[:] for row in rho.mat]
    dim = len(m)
    det = Fraction(1)
    for col in range(dim):
        pivot = next((r for r in range(col, dim) if m[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, dim):
            if m[r][col]:
                factor = m[r][col] * inv
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return det


@dataclass(frozen=True)
class SpectralSummary:
    eigenvalues: tuple[float, ...]
    det: Fraction | float
    trace: Fraction | float
    min_eig: float


def spectral_summary(rho: DensityMatrix) -> SpectralSummary:
    """Real spectrum of a Hermitian matrix plus determinant and trace.

    On the exact lane the determinant is the exact rational, cross-checked
    against the eigenvalue product.
    """
    m = rho.to_numpy()
    if np.abs(m - m.conj().T).max() > HERMITICITY_TOL:
        raise ValueError("matrix is not Hermitian within 1e-10")
    eigs = np.linalg.eigvalsh(m)
    prod = float(np.prod(eigs)) if len(eigs) else 1.0
    if rho.exact:
        det: Fraction | float = exact_det(rho)
        if abs(prod - float(det)) > 1e-8 * max(1.0, abs(prod)):
            raise AssertionError(f"eigenvalue product {prod} disagrees with exact det {det}")
        trace: Fraction | float = sum(rho.mat[i][i] for i in range(rho.dim))
    else:
        det = prod
        trace = float(m.trace().real)
    return SpectralSummary(
        eigenvalues=tuple(float(x) for x in eigs),
        det=det,
        trace=trace,
        min_eig=float(eigs[0]),
    )


def matrix_to_tsv(rho: DensityMatrix) -> str:
    """Display-order TSV of complex entries 're+imj'."""
    disp = rho.to_display()
    lines = []
    for row in disp:
        lines.append("\t".join(f"{float(x.real)!r}+{float(x.imag)!r}j" for x in row))
    return "\n".join(lines) + "\n"


def matrix_from_tsv(text: str, n: int) -> DensityMatrix:
    rows = []
    for line in text.strip().splitlines():
        entries = []
        for cell in line.split("\t"):
            re_part, im_part = cell.rsplit("+", 1)
            entries.append(complex(float(re_part), float(im_part[:-1])))
        rows.append(entries)
    disp = np.array(rows, dtype=complex)
    return DensityMatrix(n, disp[::-1, ::-1], exact=False, validate=False)


def matrix_to_json(rho: DensityMatrix) -> str:
    disp = rho.to_display()
    payload = {
        "n": rho.n,
        "rows": [[[x.real, x.imag] for x in row] for row in disp],
    }
    return json.dumps(payload, sort_keys=True)


def matrix_from_json(text: str) -> DensityMatrix:
    payload = json.loads(text)
    n = int(payload["n"])
    disp = np.array(
        [[complex(re, im) for re, im in row] for row in payload["rows"]], dtype=complex
    )
    return DensityMatrix(n, disp[::-1, ::-1], exact=False, validate=False)
