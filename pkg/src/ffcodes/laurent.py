"""Multivariate Laurent polynomials and compact matrices for translation-invariant graphs.

A translation-invariant graph on d lattice dimensions with n vertices per unit
cell is stored as an n x n matrix of Laurent polynomials in the variables
x, y, z (one per dimension) and their inverses: the coefficient of x^v in
entry (u, w) records an edge from vertex u of the origin cell to vertex w of
the cell displaced by v.  Three variants share the representation:

* unoriented adjacency: GF(2) coefficients, M† = M, zero constant diagonal;
* oriented adjacency:   integer coefficients in {-1, +1}, M† = -M;
* bosonization:         GF(2), shape t x 3M, every per-monomial 3-bit column
                        group drawn from {000, 011, 101, 110}.

Here † is entrywise adjoint (x^v -> x^-v) followed by transposition.
"""
from __future__ import annotations

import numpy as np

from .errors import (
    DimensionError,
    ExponentOverflowError,
    InvariantError,
    TruncationError,
)

#: Largest |exponent| accepted in any monomial (configurable input bound).
MAX_EXPONENT = 8

_VARS = ("x", "y", "z")

Monomial = tuple  # integer exponent vector, length == lattice dimension


def mono_one(dim: int) -> Monomial:
    return (0,) * dim

def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(i + j for i, j in zip(a, b))

def mono_inv(a: Monomial) -> Monomial:
    return tuple(-i for i in a)

def mono_is_positive(a: Monomial) -> bool:
    """True if the first nonzero exponent is positive (canonical rep of a +/- pair)."""
    for e in a:
        if e:
            return e > 0
    return False


def check_exponents(mono: Monomial) -> Monomial:
    if any(abs(e) > MAX_EXPONENT for e in mono):
        raise ExponentOverflowError(f"monomial {mono} exceeds |exponent| <= {MAX_EXPONENT}")
    return mono


def format_monomial(mono: Monomial) -> str:
    if len(mono) > len(_VARS):
        raise DimensionError(f"at most {len(_VARS)} lattice dimensions supported")
    parts = []
    for var, e in zip(_VARS, mono):
        if e == 0:
            continue
        parts.append(var if e == 1 else f"{var}^{e}")
    return " ".join(parts) if parts else "1"


def parse_monomial(text: str, dim: int) -> Monomial:
    """Parse the file syntax: "1", "x", "x^-1", "x y^-1" (space-separated factors)."""
    text = text.strip()
    if text == "1":
        return mono_one(dim)
    exps = [0] * dim
    seen = set()
    for tok in text.split():
        var, _, power = tok.partition("^")
        if var not in _VARS[:dim] or var in seen:
            raise ValueError(f"bad monomial {text!r} for dimension {dim}")
        if power:
            try:
                e = int(power)
            except ValueError:
                raise ValueError(f"bad exponent in monomial {text!r}") from None
            if e == 0 or e == 1:
                raise ValueError(f"non-canonical exponent in monomial {text!r}")
        else:
            e = 1
        seen.add(var)
        exps[_VARS.index(var)] = e
    return check_exponents(tuple(exps))


class LaurentPoly:
    """Laurent polynomial with integer (modulus=0) or GF(2) (modulus=2) coefficients."""

    __slots__ = ("dim", "modulus", "terms")

    def __init__(self, dim: int, terms=None, modulus: int = 2):
        self.dim = dim
        self.modulus = modulus
        out = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != dim:
                raise DimensionError(f"monomial {mono} has wrong dimension (expected {dim})")
            check_exponents(mono)
            c = int(coeff) % 2 if modulus == 2 else int(coeff)
            if c:
                out[mono] = c
        self.terms = out

    @classmethod
    def zero(cls, dim: int, modulus: int = 2) -> "LaurentPoly":
        return cls(dim, {}, modulus)

    @classmethod
    def one(cls, dim: int, modulus: int = 2) -> "LaurentPoly":
        return cls(dim, {mono_one(dim): 1}, modulus)

    @classmethod
    def monomial(cls, dim: int, mono: Monomial, coeff: int = 1, modulus: int = 2) -> "LaurentPoly":
        return cls(dim, {tuple(mono): coeff}, modulus)

    def _check_compatible(self, other: "LaurentPoly") -> None:
        if self.dim != other.dim or self.modulus != other.modulus:
            raise DimensionError("polynomials live in different rings")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check_compatible(other)
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            terms[mono] = terms.get(mono, 0) + c
        return LaurentPoly(self.dim, terms, self.modulus)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.dim, {m: -c for m, c in self.terms.items()}, self.modulus)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check_compatible(other)
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                terms[m] = terms.get(m, 0) + c1 * c2
        return LaurentPoly(self.dim, terms, self.modulus)

    def adjoint(self) -> "LaurentPoly":
        """x^v -> x^-v, coefficients unchanged."""
        return LaurentPoly(self.dim, {mono_inv(m): c for m, c in self.terms.items()}, self.modulus)

    def shift(self, mono: Monomial) -> "LaurentPoly":
        return LaurentPoly(
            self.dim, {mono_mul(m, mono): c for m, c in self.terms.items()}, self.modulus
        )

    def coeff(self, mono: Monomial) -> int:
        return self.terms.get(tuple(mono), 0)

    def evaluate(self, k) -> complex:
        """Substitute x_j -> exp(i k_j) for the hypercubic lattice vectors."""
        k = np.asarray(k, dtype=float)
        return sum(c * np.exp(1j * float(np.dot(k, m))) for m, c in self.terms.items())

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentPoly)
            and self.dim == other.dim
            and self.modulus == other.modulus
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.dim, self.modulus, tuple(self.sorted_terms())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            ms = format_monomial(mono)
            if c == 1:
                parts.append(ms)
            elif c == -1:
                parts.append(f"-{ms}")
            else:
                parts.append(f"{c}*{ms}")
        return " + ".join(parts).replace("+ -", "- ")


class CompactMatrix:
    """Matrix of Laurent polynomials over a shared ring."""

    __slots__ = ("dim", "modulus", "rows")

    def __init__(self, dim: int, rows, modulus: int = 2):
        self.dim = dim
        self.modulus = modulus
        self.rows = [list(r) for r in rows]
        ncols = {len(r) for r in self.rows}
        if len(ncols) > 1:
            raise DimensionError("ragged compact matrix")
        for r in self.rows:
            for p in r:
                if not isinstance(p, LaurentPoly) or p.dim != dim or p.modulus != modulus:
                    raise DimensionError("entry ring mismatch")

    @classmethod
    def zeros(cls, dim: int, n_rows: int, n_cols: int, modulus: int = 2) -> "CompactMatrix":
        return cls(
            dim,
            [[LaurentPoly.zero(dim, modulus) for _ in range(n_cols)] for _ in range(n_rows)],
            modulus,
        )

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def n_cell(self) -> int:
        if self.n_rows != self.n_cols:
            raise DimensionError("n_cell is only defined for square matrices")
        return self.n_rows

    def entry(self, i: int, j: int) -> LaurentPoly:
        return self.rows[i][j]

    def dagger(self) -> "CompactMatrix":
        return CompactMatrix(
            self.dim,
            [[self.rows[j][i].adjoint() for j in range(self.n_rows)] for i in range(self.n_cols)],
            self.modulus,
        )

    def __neg__(self) -> "CompactMatrix":
        return CompactMatrix(self.dim, [[-p for p in r] for r in self.rows], self.modulus)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CompactMatrix)
            and self.dim == other.dim
            and self.modulus == other.modulus
            and self.rows == other.rows
        )

    def monomials(self) -> list:
        """Sorted list of every monomial appearing in any entry."""
        monos = set()
        for r in self.rows:
            for p in r:
                monos.update(p.terms)
        return sorted(monos)

    def blocks(self) -> dict:
        """Map monomial -> dense coefficient block (int64 array)."""
        out = {}
        for mono in self.monomials():
            blk = np.zeros((self.n_rows, self.n_cols), dtype=np.int64)
            for i, r in enumerate(self.rows):
                for j, p in enumerate(r):
                    blk[i, j] = p.coeff(mono)
            out[mono] = blk
        return out

    @classmethod
    def from_blocks(cls, dim: int, n_rows: int, n_cols: int, blocks: dict, modulus: int = 2):
        rows = [[dict() for _ in range(n_cols)] for _ in range(n_rows)]
        for mono, blk in blocks.items():
            blk = np.asarray(blk)
            if blk.shape != (n_rows, n_cols):
                raise DimensionError(f"block {mono} has shape {blk.shape}")
            for i, j in zip(*np.nonzero(blk)):
                rows[i][j][tuple(mono)] = int(blk[i, j])
        return cls(
            dim,
            [[LaurentPoly(dim, rows[i][j], modulus) for j in range(n_cols)] for i in range(n_rows)],
            modulus,
        )

    def max_abs_exponent(self) -> list[int]:
        """Per-dimension maximum |exponent| over all entries."""
        out = [0] * self.dim
        for mono in self.monomials():
            for a, e in enumerate(mono):
                out[a] = max(out[a], abs(e))
        return out

    def __repr__(self) -> str:
        body = "\n".join("  [" + ", ".join(map(str, r)) + "]" for r in self.rows)
        return f"CompactMatrix(dim={self.dim}, mod={self.modulus},\n{body})"


# ---------------------------------------------------------------------------
# variant validators

def validate_adjacency(m: CompactMatrix) -> CompactMatrix:
    """Unoriented compact adjacency: GF(2), self-adjoint, zero constant diagonal."""
    if m.modulus != 2:
        raise InvariantError("unoriented adjacency must be over GF(2)")
    if m.n_rows != m.n_cols:
        raise InvariantError("adjacency matrix must be square")
    if m.dagger() != m:
        raise InvariantError("adjacency matrix is not self-adjoint")
    one = mono_one(m.dim)
    for i in range(m.n_rows):
        if m.entry(i, i).coeff(one):
            raise InvariantError(f"constant diagonal term at vertex {i}")
    return m


def validate_oriented(m: CompactMatrix) -> CompactMatrix:
    """Oriented compact adjacency: signed {-1,+1} coefficients, skew-adjoint."""
    if m.modulus != 0:
        raise InvariantError("oriented adjacency must have signed integer coefficients")
    if m.n_rows != m.n_cols:
        raise InvariantError("oriented matrix must be square")
    if m.dagger() != -m:
        raise InvariantError("oriented matrix is not skew-adjoint")
    for r in m.rows:
        for p in r:
            if any(c not in (-1, 1) for c in p.terms.values()):
                raise InvariantError("oriented coefficients must be -1 or +1")
    return m


_TUPLE_ALPHABET = {(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)}


def validate_bosonization(m: CompactMatrix) -> CompactMatrix:
    """Compact encoding matrix: GF(2), 3M columns, 3-tuple alphabet per monomial block."""
    if m.modulus != 2:
        raise InvariantError("bosonization matrix must be over GF(2)")
    if m.n_cols % 3:
        raise InvariantError("bosonization matrix needs 3 columns per qubit")
    for i, row in enumerate(m.rows):
        monos = set()
        for p in row:
            monos.update(p.terms)
        for mono in monos:
            for q in range(m.n_cols // 3):
                group = tuple(row[3 * q + k].coeff(mono) for k in range(3))
                if group not in _TUPLE_ALPHABET:
                    raise InvariantError(
                        f"row {i}, qubit {q}, monomial {format_monomial(mono)}: "
                        f"group {group} not a Pauli 3-tuple"
                    )
    return m


# ---------------------------------------------------------------------------
# construction and core operations

def adjacency_from_edge_classes(dim: int, n: int, edges, signs=None) -> CompactMatrix:
    """Build a compact adjacency from edge classes (u, v, monomial).

    With signs (a parallel sequence of +/-1), builds the oriented variant where
    sign +1 means the arc points from u of the origin cell to v of cell +m.
    """
    modulus = 2 if signs is None else 0
    m = CompactMatrix.zeros(dim, n, n, modulus)
    for idx, (u, v, mono) in enumerate(edges):
        mono = tuple(mono)
        s = 1 if signs is None else signs[idx]
        fwd = LaurentPoly.monomial(dim, mono, s, modulus)
        bwd = LaurentPoly.monomial(dim, mono_inv(mono), s if signs is None else -s, modulus)
        if u == v:
            m.rows[u][u] = m.rows[u][u] + fwd + bwd
        else:
            m.rows[u][v] = m.rows[u][v] + fwd
            m.rows[v][u] = m.rows[v][u] + bwd
    return m


def edge_classes(m: CompactMatrix) -> list:
    """Canonical edge classes (u, v, monomial) of a compact adjacency.

    Off-diagonal classes are listed once with u < v; diagonal (same vertex
    class) entries come in +/- monomial pairs and are listed with the
    lexicographically positive representative.
    """
    validate_adjacency(m)
    out = []
    for u in range(m.n_cell):
        for mono in sorted(m.entry(u, u).terms):
            if mono_is_positive(mono):
                out.append((u, u, mono))
        for v in range(u + 1, m.n_cell):
            for mono in sorted(m.entry(u, v).terms):
                out.append((u, v, mono))
    return sorted(out)


def compact_frustration(b: CompactMatrix) -> CompactMatrix:
    """Frustration-graph adjacency of a compact bosonization: A = B B† mod 2."""
    validate_bosonization(b)
    t = b.n_rows
    a = CompactMatrix.zeros(b.dim, t, t, 2)
    for i in range(t):
        for j in range(t):
            acc = LaurentPoly.zero(b.dim, 2)
            for c in range(b.n_cols):
                acc = acc + b.entry(i, c) * b.entry(j, c).adjoint()
            a.rows[i][j] = acc
    one = mono_one(b.dim)
    for i in range(t):
        if a.entry(i, i).coeff(one):
            raise InvariantError("nonzero constant diagonal: input violates the tuple alphabet")
    return validate_adjacency(a)


def _cell_ranks(sides):
    """Row-major enumeration of cells of a torus with the given side lengths."""
    return list(np.ndindex(*sides))


def cell_index(cell, sides, n: int, v: int) -> int:
    """Site index of intra-cell vertex v in the given cell (row-major cells)."""
    rank = 0
    for c, s in zip(cell, sides):
        rank = rank * s + (c % s)
    return rank * n + v


def torus_truncate(m: CompactMatrix, sides) -> np.ndarray:
    """Finite block-circulant matrix of m on a torus with the given side lengths.

    Requires each side L_i >= 3 * max|exponent| along that axis so that
    distinct translates cannot collide after wrapping.
    """
    sides = tuple(int(s) for s in sides)
    if len(sides) != m.dim:
        raise DimensionError(f"need {m.dim} side lengths, got {len(sides)}")
    maxexp = m.max_abs_exponent()
    for ax, (L, e) in enumerate(zip(sides, maxexp)):
        if L < 1 or L < 3 * e:
            raise TruncationError(
                f"side {L} along axis {ax} violates L >= 3*max|exponent| = {3 * e}"
            )
    n = m.n_rows
    total = n * int(np.prod(sides)) if sides else n
    dtype = np.uint8 if m.modulus == 2 else np.int8
    out = np.zeros((total, total), dtype=dtype)
    cells = _cell_ranks(sides) if sides else [()]
    for cell in cells:
        for i in range(n):
            src = cell_index(cell, sides, n, i)
            for j in range(n):
                for mono, coeff in m.entry(i, j).terms.items():
                    tgt_cell = tuple(c + e for c, e in zip(cell, mono))
                    tgt = cell_index(tgt_cell, sides, n, j)
                    if m.modulus == 2:
                        out[src, tgt] ^= 1
                    else:
                        out[src, tgt] += coeff
    return out


def bloch_evaluate(m: CompactMatrix, k) -> np.ndarray:
    """Bloch Hamiltonian H(k) = i * m(k) of an oriented compact matrix.

    Substitutes x_j -> exp(i k_j) (hypercubic lattice vectors) and checks the
    result is Hermitian to 1e-12.
    """
    validate_oriented(m)
    k = np.asarray(k, dtype=float).reshape(-1)
    if k.size != m.dim:
        raise DimensionError(f"k has {k.size} components, matrix has dim {m.dim}")
    n = m.n_cell
    h = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            h[i, j] = 1j * m.entry(i, j).evaluate(k)
    if np.abs(h - h.conj().T).max() > 1e-12:
        raise InvariantError("Bloch Hamiltonian is not Hermitian")
    return h


def bloch_batch(m: CompactMatrix, ks) -> np.ndarray:
    """Vectorized bloch_evaluate over an array of k-points (n_k, dim)."""
    validate_oriented(m)
    ks = np.asarray(ks, dtype=float).reshape(-1, m.dim)
    blocks = m.blocks()
    monos = np.array(list(blocks.keys()), dtype=float).reshape(len(blocks), m.dim)
    stack = np.array([blocks[mono] for mono in blocks], dtype=float)
    phases = np.exp(1j * (ks @ monos.T))
    return 1j * np.einsum("km,mij->kij", phases, stack)


def enlarge_cell(m: CompactMatrix, factors) -> CompactMatrix:
    """Replicate the unit cell by the given per-axis factors.

    The enlarged matrix describes the same infinite graph; enlarged vertex
    (subcell r, v) gets index rank(r) * n + v with row-major subcells.
    """
    factors = tuple(int(f) for f in factors)
    if len(factors) != m.dim:
        raise DimensionError(f"need {m.dim} factors, got {len(factors)}")
    if any(f < 1 for f in factors):
        raise DimensionError("cell factors must be positive")
    n = m.n_cell
    subcells = list(np.ndindex(*factors)) if factors else [()]
    rank = {sc: i for i, sc in enumerate(subcells)}
    big = CompactMatrix.zeros(m.dim, n * len(subcells), n * len(subcells), m.modulus)
    for i in range(n):
        for j in range(n):
            for mono, coeff in m.entry(i, j).terms.items():
                for sc in subcells:
                    tgt = tuple(c + e for c, e in zip(sc, mono))
                    wrap = tuple(t // f for t, f in zip(tgt, factors))
                    sub = tuple(t % f for t, f in zip(tgt, factors))
                    src_idx = rank[sc] * n + i
                    tgt_idx = rank[sub] * n + j
                    big.rows[src_idx][tgt_idx] = big.rows[src_idx][tgt_idx] + LaurentPoly.monomial(
                        m.dim, wrap, coeff, m.modulus
                    )
    return big


# ---------------------------------------------------------------------------
# JSON graph format

def to_graph_json(m: CompactMatrix) -> dict:
    """{"dim", "cell_vertices", "blocks"} for GF(2); oriented adds "sign_blocks"."""
    doc = {"dim": m.dim, "cell_vertices": m.n_rows}
    key = "blocks" if m.modulus == 2 else "sign_blocks"
    doc[key] = {
        format_monomial(mono): np.asarray(blk).astype(int).tolist()
        for mono, blk in m.blocks().items()
    }
    return doc


def from_graph_json(doc: dict) -> CompactMatrix:
    """Parse the JSON graph format, filling adjoint blocks symmetrically.

    For each +/- monomial pair only one block need be given; if both are
    present they must agree with the (skew-)symmetry, else this is an error.
    """
    dim = int(doc["dim"])
    n = int(doc["cell_vertices"])
    oriented = "sign_blocks" in doc
    raw = doc["sign_blocks"] if oriented else doc["blocks"]
    sign = -1 if oriented else 1
    blocks: dict = {}
    for mono_s, blk in raw.items():
        mono = parse_monomial(mono_s, dim)
        arr = np.asarray(blk, dtype=np.int64)
        if arr.shape != (n, n):
            raise DimensionError(f"block {mono_s} has shape {arr.shape}, expected ({n}, {n})")
        blocks[mono] = arr
    for mono in list(blocks):
        inv = mono_inv(mono)
        expect = sign * blocks[mono].T
        if inv in blocks:
            if mono != inv and not np.array_equal(blocks[inv], expect):
                raise InvariantError(f"blocks {format_monomial(mono)} and its adjoint conflict")
            if mono == inv and not np.array_equal(blocks[mono], expect):
                raise InvariantError(f"constant block violates (skew-)symmetry")
        else:
            blocks[inv] = expect
    modulus = 0 if oriented else 2
    m = CompactMatrix.from_blocks(dim, n, n, blocks, modulus)
    return validate_oriented(m) if oriented else validate_adjacency(m)
