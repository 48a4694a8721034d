"""Subsystem-code layer: bosonizations, torus instantiation, and logical extraction.

A translation-invariant spin model is a CompactHamiltonian: term classes made
of (qubit class, cell offset, Pauli) factors.  Compiling it to the compact
encoding matrix and multiplying by the adjoint gives the frustration graph;
instantiating all translates on a finite torus gives concrete Pauli terms whose
commutant is computed by GF(2) linear algebra.  The commutant basis is then
reorganized into central elements plus canonically anticommuting pairs; pairs
surviving outside the span of the Hamiltonian and stabilizer terms are the
logical qubits.
"""
from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from importlib import resources

import numpy as np

from . import gf2
from .errors import DimensionError, EncodingError, ScaleError
from .laurent import (
    CompactMatrix,
    LaurentPoly,
    compact_frustration,
    edge_classes,
    format_monomial,
    mono_inv,
    mono_is_positive,
    mono_one,
    parse_monomial,
    validate_adjacency,
)
from .linegraph import line_graph
from .pauli import PauliTerm, pauli_to_tuple3

MAX_TORUS_QUBITS = 512


@dataclass(frozen=True)
class CompactHamiltonian:
    """Translation-invariant spin model: term classes of (qubit, offset, Pauli)."""

    dim: int
    qubits_per_cell: int
    terms: tuple  # tuple of term classes; each a tuple of (qubit, offset, label)

    def __post_init__(self):
        if self.qubits_per_cell < 1:
            raise DimensionError("need at least one qubit per cell")
        for term in self.terms:
            seen = set()
            for q, off, label in term:
                off = tuple(off)
                if not 0 <= q < self.qubits_per_cell:
                    raise DimensionError(f"qubit index {q} out of range")
                if len(off) != self.dim:
                    raise DimensionError(f"offset {off} has wrong dimension")
                if label not in "XYZ":
                    raise EncodingError(f"bad Pauli label {label!r}")
                if (q, off) in seen:
                    raise EncodingError(f"qubit {(q, off)} repeated within a term")
                seen.add((q, off))

    @property
    def n_classes(self) -> int:
        return len(self.terms)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "qubits_per_cell": self.qubits_per_cell,
            "terms": [
                [{"q": q, "cell": list(off), "p": label} for q, off, label in term]
                for term in self.terms
            ],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "CompactHamiltonian":
        dim = int(doc["dim"])
        terms = tuple(
            tuple((int(f["q"]), tuple(int(c) for c in f["cell"]), f["p"]) for f in term)
            for term in doc["terms"]
        )
        return cls(dim, int(doc["qubits_per_cell"]), terms)

    def merged_with(self, other: "CompactHamiltonian") -> "CompactHamiltonian":
        if (self.dim, self.qubits_per_cell) != (other.dim, other.qubits_per_cell):
            raise DimensionError("Hamiltonians live on different qubit lattices")
        return CompactHamiltonian(self.dim, self.qubits_per_cell, self.terms + other.terms)


def compile_encoding(h: CompactHamiltonian) -> CompactMatrix:
    """Compact 3-tuple encoding matrix (one row per term class, 3 columns per qubit)."""
    rows = []
    for term in h.terms:
        row = [LaurentPoly.zero(h.dim, 2) for _ in range(3 * h.qubits_per_cell)]
        for q, off, label in term:
            for k, bit in enumerate(pauli_to_tuple3(label)):
                if bit:
                    row[3 * q + k] = row[3 * q + k] + LaurentPoly.monomial(h.dim, off, 1, 2)
        rows.append(row)
    return CompactMatrix(h.dim, rows, 2)


def frustration_graph(h: CompactHamiltonian) -> CompactMatrix:
    """Compact adjacency of the frustration graph of the term classes."""
    return compact_frustration(compile_encoding(h))


# ---------------------------------------------------------------------------
# bosonizations


def fiducial_bosonization(a: CompactMatrix) -> CompactHamiltonian:
    """One qubit per frustration-graph edge class; X at the lexicographically
    smaller (vertex, offset) end of each edge and Z at the other.

    The frustration graph of the result equals `a` entry for entry.
    """
    validate_adjacency(a)
    classes = edge_classes(a)
    n = a.n_cell
    zero = mono_one(a.dim)
    terms = []
    degenerate = False
    for u in range(n):
        factors = []
        for qubit, (eu, ev, mono) in enumerate(classes):
            # X sits at the (eu, 0) end, Z at the (ev, mono) end
            if eu == u:
                factors.append((qubit, zero, "X"))
            if ev == u:
                factors.append((qubit, mono_inv(mono), "Z"))
        if not factors:
            degenerate = True
        terms.append(tuple(sorted(factors)))
    if degenerate:
        warnings.warn("edgeless frustration vertex: its fiducial term is the identity")
    h = CompactHamiltonian(a.dim, max(len(classes), 1), tuple(terms))
    if classes and frustration_graph(h) != a:
        raise AssertionError("fiducial bosonization failed to reproduce its frustration graph")
    return h


def pauli_flip(h: CompactHamiltonian) -> CompactHamiltonian:
    """Exchange X and Z on every factor (the second fiducial copy)."""
    flip = {"X": "Z", "Z": "X", "Y": "Y"}
    return CompactHamiltonian(
        h.dim,
        h.qubits_per_cell,
        tuple(tuple((q, off, flip[p]) for q, off, p in term) for term in h.terms),
    )


def vertex_end_labels(r: CompactMatrix) -> dict:
    """Deterministic per-vertex labels for the edge ends of a degree-<=3 root.

    Keys are (vertex, end key) with end key = (neighbor vertex, offset);
    values are X, Y, Z assigned in sorted end-key order.
    """
    validate_adjacency(r)
    classes = edge_classes(r)
    ends: dict[int, list] = {u: [] for u in range(r.n_cell)}
    for (u, v, mono) in classes:
        ends[u].append((v, mono))
        ends[v].append((u, mono_inv(mono)))
    labels = {}
    for u, lst in ends.items():
        if len(lst) > 3:
            raise ScaleError(f"vertex {u} has degree {len(lst)} > 3")
        for label, key in zip("XYZ", sorted(lst)):
            labels[(u, key)] = label
    return labels


def honeycomb_bosonization(r: CompactMatrix, assignment: dict | None = None) -> CompactHamiltonian:
    """One qubit per root vertex; each edge becomes the two-qubit term made of
    the labels assigned to its two ends.

    `assignment` maps (vertex, (neighbor, offset)) to a label in X/Y/Z and
    must give distinct labels to the ends at each vertex; by default labels
    are assigned in sorted end order.  The frustration graph of the result is
    line_graph(r).
    """
    validate_adjacency(r)
    labels = vertex_end_labels(r) if assignment is None else dict(assignment)
    classes = edge_classes(r)
    zero = mono_one(r.dim)
    terms = []
    for (u, v, mono) in classes:
        lu = labels.get((u, (v, mono)))
        lv = labels.get((v, (u, mono_inv(mono))))
        if lu is None or lv is None:
            raise EncodingError(f"no end label for edge ({u}, {v}, {format_monomial(mono)})")
        factors = [(u, zero, lu), (v, mono, lv)]
        terms.append(tuple(sorted(factors)))
    # distinct labels per vertex
    per_vertex: dict[int, list] = {}
    for (vert, key), lab in labels.items():
        per_vertex.setdefault(vert, []).append(lab)
    for vert, labs in per_vertex.items():
        if len(labs) != len(set(labs)):
            raise EncodingError(f"vertex {vert} assigns one Pauli to two edge ends")
    h = CompactHamiltonian(r.dim, r.n_cell, tuple(terms))
    if frustration_graph(h) != line_graph(r):
        raise AssertionError("honeycomb bosonization frustration mismatch")
    return h


# ---------------------------------------------------------------------------
# torus instantiation and the commutant


def enlarge_hamiltonian_cell(h: CompactHamiltonian, factors) -> CompactHamiltonian:
    """Re-express the model on a unit cell enlarged by the given factors.

    Qubit (subcell r, q) of the enlarged cell gets index rank(r) * M + q with
    row-major subcells, matching laurent.enlarge_cell; each term class becomes
    one class per subcell anchor.
    """
    factors = tuple(int(f) for f in factors)
    if len(factors) != h.dim:
        raise DimensionError(f"need {h.dim} factors")
    subcells = list(np.ndindex(*factors)) if factors else [()]
    rank = {sc: i for i, sc in enumerate(subcells)}
    terms = []
    for sc in subcells:
        for term in h.terms:
            factors_out = []
            for q, off, label in term:
                tgt = tuple(c + o for c, o in zip(sc, off))
                wrap = tuple(t // f for t, f in zip(tgt, factors))
                sub = tuple(t % f for t, f in zip(tgt, factors))
                factors_out.append((rank[sub] * h.qubits_per_cell + q, wrap, label))
            terms.append(tuple(sorted(factors_out)))
    return CompactHamiltonian(h.dim, h.qubits_per_cell * len(subcells), tuple(terms))


def instantiate_torus(h: CompactHamiltonian, sides) -> list[PauliTerm]:
    """All translates of every term class on a torus, cell-major.

    Qubit (cell, q) gets index rank(cell) * M + q and term (cell, class i)
    position rank(cell) * t + i, with row-major cell ranks; this matches the
    block order of torus_truncate so frustration matrices align entry by entry.
    """
    sides = tuple(int(s) for s in sides)
    if len(sides) != h.dim:
        raise DimensionError(f"need {h.dim} side lengths")
    cells = list(np.ndindex(*sides)) if sides else [()]
    n_qubits = h.qubits_per_cell * len(cells)
    if n_qubits > MAX_TORUS_QUBITS:
        raise ScaleError(f"{n_qubits} qubits exceed the {MAX_TORUS_QUBITS}-qubit torus bound")

    def rank(cell):
        r = 0
        for c, s in zip(cell, sides):
            r = r * s + (c % s)
        return r

    out = []
    for cell in cells:
        for term in h.terms:
            support = {}
            for q, off, label in term:
                tgt = tuple(c + o for c, o in zip(cell, off))
                support[rank(tgt) * h.qubits_per_cell + q] = label
            out.append(PauliTerm.from_support(n_qubits, support))
    return out


def _term_matrix(terms) -> np.ndarray:
    if not terms:
        return np.zeros((0, 0), dtype=np.uint8)
    return np.array([t.symplectic() for t in terms], dtype=np.uint8)


def _symplectic_swap(vectors: np.ndarray) -> np.ndarray:
    """Swap the x and z halves, turning the dot product into the symplectic form."""
    n = vectors.shape[1] // 2
    return np.hstack([vectors[:, n:], vectors[:, :n]])


def symplectic_products(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Pairwise symplectic forms of two stacks of (x|z) vectors, mod 2."""
    return gf2.mat_mul(a, _symplectic_swap(b).T)


def centralizer(terms) -> np.ndarray:
    """Basis of all Pauli (x|z) vectors commuting with every given term."""
    t = _term_matrix(terms)
    if t.shape[0] == 0:
        raise DimensionError("centralizer of an empty term list is everything")
    return gf2.kernel(_symplectic_swap(t))


@dataclass
class CodeAnalysis:
    """Commutant of the term set split into stabilizers and logical pairs."""

    n_qubits: int
    sides: tuple
    stabilizers: np.ndarray  # central commutant elements (all products of terms)
    logical_x: np.ndarray
    logical_z: np.ndarray

    @property
    def n_logical_pairs(self) -> int:
        return self.logical_x.shape[0]

    def to_json(self) -> dict:
        def bits(rows):
            return ["".join(str(int(b)) for b in row) for row in rows]

        return {
            "n_qubits": self.n_qubits,
            "torus": list(self.sides),
            "logical_pairs": self.n_logical_pairs,
            "stabilizer_count": int(self.stabilizers.shape[0]),
            "stabilizers_xz": bits(self.stabilizers),
            "logical_x_xz": bits(self.logical_x),
            "logical_z_xz": bits(self.logical_z),
        }


def monogamize(c0: np.ndarray, term_span: np.ndarray, sides=(), n_qubits=None) -> CodeAnalysis:
    """Split a commutant basis into central elements and anticommuting pairs.

    Walks the basis in order: an element commuting with all remaining ones is
    central; otherwise it is paired with the first element it anticommutes
    with, and the rest are multiplied by one or both pair members to restore
    commutation.  Pairs are the logical qubits; central elements must lie in
    the span of the terms, and pairs outside it, both of which are verified.
    """
    c0 = gf2.asbits(c0)
    if n_qubits is None:
        n_qubits = c0.shape[1] // 2
    work = [row.copy() for row in c0]
    central, xs, zs = [], [], []
    while work:
        cn = work.pop(0)
        partner = None
        for i, cm in enumerate(work):
            if int(cn @ _symplectic_swap(cm[None, :])[0]) % 2:
                partner = i
                break
        if partner is None:
            central.append(cn)
            continue
        cm = work.pop(partner)
        xs.append(cn)
        zs.append(cm)
        for c in work:
            bn = int(c @ _symplectic_swap(cn[None, :])[0]) % 2
            bm = int(c @ _symplectic_swap(cm[None, :])[0]) % 2
            if bn:
                c ^= cm
            if bm:
                c ^= cn

    width = 2 * n_qubits
    stab = np.array(central, dtype=np.uint8).reshape(len(central), width)
    lx = np.array(xs, dtype=np.uint8).reshape(len(xs), width)
    lz = np.array(zs, dtype=np.uint8).reshape(len(zs), width)
    if stab.size and not all(gf2.in_row_space(term_span, s) for s in stab):
        raise AssertionError("central commutant element outside the term span")
    span_rank = gf2.rank(term_span)
    logicals = np.vstack([lx, lz]) if len(xs) else np.zeros((0, 2 * n_qubits), np.uint8)
    if logicals.size:
        joint = gf2.rank(np.vstack([gf2.asbits(term_span), logicals]))
        if joint != span_rank + logicals.shape[0]:
            raise AssertionError("logical operators not independent of the term span")
        _check_canonical_pairs(stab, lx, lz)
    return CodeAnalysis(
        n_qubits=n_qubits, sides=tuple(sides), stabilizers=stab, logical_x=lx, logical_z=lz
    )


def _check_canonical_pairs(stab, lx, lz):
    """Pairwise symplectic pattern: central stabilizers, X_i/Z_i canonical pairs."""
    everything = np.vstack([stab, lx, lz]) if stab.size else np.vstack([lx, lz])
    gram = symplectic_products(everything, everything)
    ns, k = stab.shape[0], lx.shape[0]
    want = np.zeros_like(gram)
    for i in range(k):
        want[ns + i, ns + k + i] = 1
        want[ns + k + i, ns + i] = 1
    if not np.array_equal(gram, want):
        raise AssertionError("monogamization produced a non-canonical symplectic pattern")


def analyze_code(h: CompactHamiltonian, sides) -> CodeAnalysis:
    """Instantiate a model on a torus and extract its stabilizers and logicals."""
    terms = instantiate_torus(h, sides)
    c0 = centralizer(terms)
    return monogamize(c0, _term_matrix(terms), sides=sides, n_qubits=terms[0].n_qubits)


# ---------------------------------------------------------------------------
# checkerboard-lattice code fixture


def _fixture_path():
    return resources.files("ffcodes").joinpath("data/checkerboard_code.json")


def load_checkerboard_fixture() -> dict:
    """Named part models of the checkerboard-lattice code (versioned fixture)."""
    doc = json.loads(_fixture_path().read_text())
    return {
        "version": doc["version"],
        "groups": {name: CompactHamiltonian.from_json(part) for name, part in doc["groups"].items()},
    }


def checkerboard_model(seed: str = "y-cycles") -> tuple[CompactHamiltonian, tuple]:
    """The checkerboard-lattice code on a torus, with its cell size in geometric cells.

    seed="y-cycles" gives H0 + H1 + the four Y-cycle stabilizer classes on the
    geometric cell (factors (1, 1)).  seed="dimers" gives the control model,
    H0 + the commuting dimer seed, which lives on a y-doubled cell (factors
    (1, 2)): divide torus side lengths accordingly.
    """
    groups = load_checkerboard_fixture()["groups"]
    if seed == "y-cycles":
        model = groups["h0"].merged_with(groups["h1"]).merged_with(groups["y_cycles"])
        return model, (1, 1)
    if seed == "dimers":
        return groups["h0_doubled"].merged_with(groups["dimers"]), (1, 2)
    raise ValueError(f"unknown stabilizer seed {seed!r}")


def checkerboard_analysis(seed: str, geometric_sides) -> CodeAnalysis:
    """Analyze the checkerboard-lattice code on a geometric torus (e.g. (4, 4))."""
    model, factors = checkerboard_model(seed)
    sides = []
    for L, f in zip(geometric_sides, factors):
        if L % f:
            raise DimensionError(f"torus side {L} must be divisible by the cell factor {f}")
        sides.append(L // f)
    return analyze_code(model, tuple(sides))
