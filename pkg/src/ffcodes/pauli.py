"""Finite GF(2) representation of Pauli Hamiltonians.

An n-qubit Pauli (signs are never tracked) is a pair of n-bit strings
(x_bits, z_bits); two Paulis anticommute iff the symplectic form
x.z' + z.x' is 1 mod 2.  A Hamiltonian of t terms is encoded as a
t x 3n matrix B over GF(2) where each qubit of each term contributes a
3-tuple: 000 for I, 011 for X, 101 for Y, 110 for Z.  Dotting two rows
mod 2 reproduces the symplectic form, so B B^T is the adjacency matrix
of the frustration graph.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gf2
from .errors import DimensionError, EncodingError

PAULI_TO_TUPLE3 = {
    "I": (0, 0, 0),
    "X": (0, 1, 1),
    "Y": (1, 0, 1),
    "Z": (1, 1, 0),
}
TUPLE3_TO_PAULI = {v: k for k, v in PAULI_TO_TUPLE3.items()}

# (b1, b2, b3) = T @ (j_x, j_z) mod 2
_TUPLE3_FROM_XZ = np.array([[0, 1], [1, 1], [1, 0]], dtype=np.uint8)


def pauli_to_tuple3(label: str) -> tuple[int, int, int]:
    """3-tuple encoding of a single-qubit Pauli label."""
    try:
        return PAULI_TO_TUPLE3[label]
    except KeyError:
        raise EncodingError(f"unknown Pauli label {label!r}") from None


def tuple3_to_pauli(group) -> str:
    """Inverse of pauli_to_tuple3; rejects groups outside the alphabet."""
    try:
        return TUPLE3_TO_PAULI[tuple(int(b) for b in group)]
    except KeyError:
        raise EncodingError(f"{tuple(group)} is not a valid Pauli 3-tuple") from None


def tuple3_from_xz(jx: int, jz: int) -> tuple[int, int, int]:
    """3-tuple from the two-bit (j_x, j_z) labeling."""
    return tuple((_TUPLE3_FROM_XZ @ np.array([jx & 1, jz & 1])) % 2)


class PauliTerm:
    """Unsigned n-qubit Pauli as x/z bit strings; immutable after construction."""

    __slots__ = ("n_qubits", "x_bits", "z_bits")

    def __init__(self, x_bits, z_bits):
        x = np.asarray(x_bits, dtype=np.uint8) & 1
        z = np.asarray(z_bits, dtype=np.uint8) & 1
        if x.ndim != 1 or x.shape != z.shape:
            raise DimensionError("x_bits and z_bits must be equal-length bit vectors")
        self.n_qubits = int(x.size)
        self.x_bits = x
        self.z_bits = z
        x.setflags(write=False)
        z.setflags(write=False)

    @classmethod
    def from_label(cls, label: str) -> "PauliTerm":
        x = [1 if c in "XY" else 0 for c in label]
        z = [1 if c in "ZY" else 0 for c in label]
        if any(c not in "IXYZ" for c in label):
            raise EncodingError(f"bad Pauli string {label!r}")
        return cls(x, z)

    @classmethod
    def from_support(cls, n_qubits: int, support) -> "PauliTerm":
        """Build from {qubit index: label} for the non-identity factors."""
        x = np.zeros(n_qubits, dtype=np.uint8)
        z = np.zeros(n_qubits, dtype=np.uint8)
        for q, label in support.items():
            if label in ("X", "Y"):
                x[q] ^= 1
            if label in ("Z", "Y"):
                z[q] ^= 1
            if label not in "XYZ":
                raise EncodingError(f"bad Pauli label {label!r}")
        return cls(x, z)

    def label(self) -> str:
        return "".join("IXZY"[jx + 2 * jz] for jx, jz in zip(self.x_bits, self.z_bits))

    def symplectic(self) -> np.ndarray:
        """Concatenated (x | z) bit vector of length 2n."""
        return np.concatenate([self.x_bits, self.z_bits])

    def weight(self) -> int:
        return int(np.count_nonzero(self.x_bits | self.z_bits))

    def is_identity(self) -> bool:
        return self.weight() == 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PauliTerm)
            and self.n_qubits == other.n_qubits
            and np.array_equal(self.x_bits, other.x_bits)
            and np.array_equal(self.z_bits, other.z_bits)
        )

    def __hash__(self):
        return hash((self.x_bits.tobytes(), self.z_bits.tobytes()))

    def __repr__(self) -> str:
        return f"PauliTerm({self.label()!r})"


def symplectic_form(a: PauliTerm, b: PauliTerm) -> int:
    """1 iff the two terms anticommute: a_x.b_z + a_z.b_x mod 2."""
    if a.n_qubits != b.n_qubits:
        raise DimensionError(f"qubit counts differ: {a.n_qubits} vs {b.n_qubits}")
    return int(a.x_bits @ b.z_bits + a.z_bits @ b.x_bits) % 2


class EncodingMatrix:
    """3-tuple encoding B of a term sequence, one row per Hamiltonian term."""

    __slots__ = ("n_terms", "n_qubits", "rows")

    def __init__(self, n_qubits: int, rows):
        rows = gf2.asbits(rows) if np.size(rows) else np.zeros((0, 3 * n_qubits), np.uint8)
        if rows.shape[1] != 3 * n_qubits:
            raise DimensionError("encoding rows must have 3 bits per qubit")
        for i, row in enumerate(rows):
            for q in range(n_qubits):
                tuple3_to_pauli(row[3 * q : 3 * q + 3])
        self.n_qubits = n_qubits
        self.n_terms = rows.shape[0]
        self.rows = rows
        rows.setflags(write=False)

    def term(self, i: int) -> PauliTerm:
        support = {}
        for q in range(self.n_qubits):
            label = tuple3_to_pauli(self.rows[i, 3 * q : 3 * q + 3])
            if label != "I":
                support[q] = label
        return PauliTerm.from_support(self.n_qubits, support)


def build_encoding(terms) -> EncodingMatrix:
    """Encode a sequence of PauliTerm sharing one qubit count."""
    terms = list(terms)
    if not terms:
        return EncodingMatrix(1, np.zeros((0, 3), dtype=np.uint8))
    n = terms[0].n_qubits
    rows = np.zeros((len(terms), 3 * n), dtype=np.uint8)
    for i, t in enumerate(terms):
        if t.n_qubits != n:
            raise DimensionError("terms act on different qubit counts")
        for q in range(n):
            rows[i, 3 * q : 3 * q + 3] = tuple3_from_xz(t.x_bits[q], t.z_bits[q])
    return EncodingMatrix(n, rows)


def constraint_matrix(n_qubits: int) -> np.ndarray:
    """E with one all-ones 3-block per qubit; ker(E) = valid encodings."""
    e = np.zeros((n_qubits, 3 * n_qubits), dtype=np.uint8)
    for q in range(n_qubits):
        e[q, 3 * q : 3 * q + 3] = 1
    return e


def frustration_matrix(b: EncodingMatrix) -> np.ndarray:
    """A = B B^T mod 2; A[i, j] = symplectic form of terms i and j."""
    return gf2.mat_mul(b.rows, b.rows.T)


@dataclass(frozen=True)
class GF2Solution:
    kernel: np.ndarray
    image: np.ndarray
    rank: int


def gf2_solve(m) -> GF2Solution:
    """Kernel basis, image (column-space) basis, and rank of a bit matrix."""
    m = gf2.asbits(m)
    ker = gf2.kernel(m)
    img = gf2.row_space(m.T)
    return GF2Solution(kernel=ker, image=img, rank=len(img))


@dataclass(frozen=True)
class SymmetryStructure:
    dim_ker_A: int
    dim_identity_products: int
    dim_pauli_symmetries: int
    dim_logicals: int


def symmetry_structure(b: EncodingMatrix) -> SymmetryStructure:
    """Kernel decomposition of the frustration matrix A = B B^T.

    Products of terms giving the identity are ker(B^T); products giving a
    nontrivial Pauli symmetry are im(B^T) ∩ ker(B); their dimensions add up
    to dim ker(A).  Logical operators are centralizer encodings modulo
    products of terms: (ker B ∩ ker E) / im(B^T).
    """
    bm = b.rows
    e = constraint_matrix(b.n_qubits)
    dim_identity = len(gf2.kernel(bm.T))
    row_b = gf2.row_space(bm)  # im(B^T) as row vectors
    ker_b = gf2.kernel(bm)
    dim_sym = len(gf2.intersect_row_spaces(row_b, ker_b))
    dim_ker_a = len(gf2.kernel(frustration_matrix(b)))
    if dim_ker_a != dim_identity + dim_sym:
        raise AssertionError("kernel decomposition dimensions are inconsistent")
    cent = gf2.kernel(np.vstack([bm, e]))  # ker B ∩ ker E
    dim_logicals = len(cent) - len(gf2.intersect_row_spaces(row_b, cent))
    return SymmetryStructure(
        dim_ker_A=dim_ker_a,
        dim_identity_products=dim_identity,
        dim_pauli_symmetries=dim_sym,
        dim_logicals=dim_logicals,
    )
