"""Root-graph generation and orientation (flux-sector) enumeration.

Orientations assign a sign to every edge instance of a magnetic unit cell (an
integer multiple of the geometric cell).  Two sign patterns are physically
equivalent when they give the same flux through every finite cycle of the
infinite lattice; enumeration fixes a spanning tree of the magnetic cell's
quotient multigraph to +1, runs over the non-tree signs, and deduplicates by
the flux signature over an integer basis of the zero-winding cycle sublattice,
canonicalized over magnetic-cell translations.  Configurations already
obtainable at a divisor multiplier are dropped.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import gf2
from .errors import OrientationError, ScaleError
from .laurent import (
    CompactMatrix,
    LaurentPoly,
    adjacency_from_edge_classes,
    edge_classes,
    enlarge_cell,
    format_monomial,
    mono_inv,
    mono_is_positive,
    mono_one,
    parse_monomial,
    torus_truncate,
    validate_adjacency,
)
from .linegraph import line_graph

MAX_NONTREE_EDGES = 20


@dataclass(frozen=True)
class BaseGraph:
    """Finite multigraph with monomial edge weights; the seed of an Abelian cover."""

    n_vertices: int
    dim: int
    edges: tuple  # (u, v, monomial) with u <= v

    def __post_init__(self):
        seen = set()
        for u, v, mono in self.edges:
            mono = tuple(mono)
            if not (0 <= u <= v < self.n_vertices):
                raise ValueError(f"bad edge endpoints ({u}, {v})")
            if len(mono) != self.dim:
                raise ValueError(f"edge monomial {mono} has wrong dimension")
            if u == v and not any(mono):
                raise ValueError("self-loop must carry a non-constant monomial")
            key = (u, v, mono if u != v or mono_is_positive(mono) else mono_inv(mono))
            if key in seen:
                raise ValueError(f"duplicate labeled edge {key}: cover would not be simple")
            seen.add(key)

    def to_json(self) -> dict:
        return {
            "vertices": self.n_vertices,
            "dim": self.dim,
            "edges": [[u, v, format_monomial(tuple(m))] for u, v, m in self.edges],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "BaseGraph":
        dim = int(doc.get("dim", 1))
        edges = tuple(
            (int(u), int(v), parse_monomial(m, dim)) for u, v, m in doc["edges"]
        )
        return cls(int(doc["vertices"]), dim, edges)


def abelian_cover(base: BaseGraph) -> CompactMatrix:
    """Infinite periodic graph with one vertex class per base vertex."""
    edges = [(u, v, tuple(m)) for u, v, m in base.edges]
    return validate_adjacency(
        adjacency_from_edge_classes(base.dim, base.n_vertices, edges)
    )


# ---------------------------------------------------------------------------
# built-in example library


def _poly(dim, monos):
    return LaurentPoly(dim, {tuple(m): 1 for m in monos}, 2)


def _builtin_comb():
    return CompactMatrix(1, [
        [_poly(1, [(1,), (-1,)]), _poly(1, [(0,)])],
        [_poly(1, [(0,)]), _poly(1, [])],
    ])


def _builtin_triangle_path():
    return CompactMatrix(1, [
        [_poly(1, [(1,), (-1,)]), _poly(1, [(0,), (1,)])],
        [_poly(1, [(0,), (-1,)]), _poly(1, [])],
    ])


def _builtin_square():
    return CompactMatrix(2, [[_poly(2, [(1, 0), (-1, 0), (0, 1), (0, -1)])]])


def _builtin_honeycomb():
    return CompactMatrix(2, [
        [_poly(2, []), _poly(2, [(0, 0), (-1, 0), (0, -1)])],
        [_poly(2, [(0, 0), (1, 0), (0, 1)]), _poly(2, [])],
    ])


def _builtin_kagome():
    x, xb, y, yb, one = (1, 0), (-1, 0), (0, 1), (0, -1), (0, 0)
    return CompactMatrix(2, [
        [_poly(2, []), _poly(2, [one, xb]), _poly(2, [xb, y])],
        [_poly(2, [one, x]), _poly(2, []), _poly(2, [one, y])],
        [_poly(2, [x, yb]), _poly(2, [one, yb]), _poly(2, [])],
    ])


def _builtin_ladder():
    # (1,1)-nanotube in its reduced two-rung (4 vertices per cell) form
    edges = [
        (0, 1, (0,)), (2, 3, (0,)),
        (0, 2, (0,)), (0, 2, (-1,)),
        (1, 3, (0,)), (1, 3, (-1,)),
    ]
    return abelian_cover(BaseGraph(4, 1, tuple(edges)))


def _builtin_hourglass():
    # (2,0)-nanotube: honeycomb wrapped to circumference two (4 vertices per cell)
    edges = [
        (0, 2, (0,)), (0, 3, (0,)), (0, 2, (-1,)),
        (1, 2, (0,)), (1, 3, (0,)), (1, 3, (-1,)),
    ]
    return abelian_cover(BaseGraph(4, 1, tuple(edges)))


_BUILTINS = {
    "comb": _builtin_comb,
    "triangle_path": _builtin_triangle_path,
    "square": _builtin_square,
    "honeycomb": _builtin_honeycomb,
    "kagome": _builtin_kagome,
    "checkerboard": lambda: line_graph(_builtin_square()),
    "ladder_11": _builtin_ladder,
    "nanotube_11": _builtin_ladder,
    "hourglass_20": _builtin_hourglass,
    "nanotube_20": _builtin_hourglass,
}


def builtin_names() -> list[str]:
    return sorted(_BUILTINS)


def builtin(name: str) -> CompactMatrix:
    """Documented example lattices (checkerboard = line graph of the square)."""
    try:
        return _BUILTINS[name]()
    except KeyError:
        raise ValueError(f"unknown builtin {name!r}; choose from {builtin_names()}") from None


# ---------------------------------------------------------------------------
# magnetic cells and orientations


class MagneticEdge(NamedTuple):
    """One edge instance of the magnetic cell, directed from its stored u end."""

    iu: int  # enlarged-cell vertex index of the u end
    iv: int  # enlarged-cell vertex index of the v end
    mono: tuple  # enlarged-cell displacement of the v end
    base: int  # index into the base edge-class list
    subcell: tuple  # geometric subcell of the u end

    def key(self) -> str:
        return f"{self.iu},{self.iv},{format_monomial(self.mono)}"


def magnetic_edges(m: CompactMatrix, multiplier) -> list[MagneticEdge]:
    """Edge instances of the magnetic cell, in (base class, subcell) order."""
    multiplier = tuple(int(f) for f in multiplier)
    n = m.n_cell
    classes = edge_classes(m)
    subcells = list(np.ndindex(*multiplier)) if multiplier else [()]
    rank = {sc: i for i, sc in enumerate(subcells)}
    out = []
    for b, (u, v, mono) in enumerate(classes):
        for sc in subcells:
            tgt = tuple(c + e for c, e in zip(sc, mono))
            wrap = tuple(t // f for t, f in zip(tgt, multiplier))
            sub = tuple(t % f for t, f in zip(tgt, multiplier))
            out.append(MagneticEdge(rank[sc] * n + u, rank[sub] * n + v, wrap, b, sc))
    return out


@dataclass
class OrientationConfig:
    """Sign assignment on the magnetic cell's edge instances.

    signs[i] = +1 orients edges[i] from its u end to its v end (h_uv > 0).
    flux_signature holds the cycle eigenvalues (-1)^(tau+len/2) as bits over
    the canonical zero-winding cycle basis, minimized over translations.
    """

    multiplier: tuple
    edges: tuple
    signs: tuple
    flux_signature: tuple = ()

    def sign_map(self) -> dict:
        return {e.key(): s for e, s in zip(self.edges, self.signs)}

    def to_json(self) -> dict:
        return {
            "multiplier": list(self.multiplier),
            "signs": {e.key(): int(s) for e, s in zip(self.edges, self.signs)},
            "flux_signature": list(self.flux_signature),
        }


def config_from_json(m: CompactMatrix, doc: dict) -> OrientationConfig:
    multiplier = tuple(int(f) for f in doc["multiplier"])
    edges = magnetic_edges(m, multiplier)
    sign_doc = doc["signs"]
    signs = []
    for e in edges:
        if e.key() not in sign_doc:
            raise OrientationError(f"missing sign for edge {e.key()}")
        s = int(sign_doc[e.key()])
        if s not in (-1, 1):
            raise OrientationError(f"sign for edge {e.key()} must be +1 or -1")
        signs.append(s)
    cfg = OrientationConfig(multiplier, tuple(edges), tuple(signs))
    return OrientationConfig(multiplier, tuple(edges), tuple(signs),
                             flux_signature=_signature(m, cfg))


def orient(m: CompactMatrix, config: OrientationConfig) -> CompactMatrix:
    """Oriented (skew-adjoint, signed) compact matrix of the magnetic cell."""
    n_big = m.n_cell * int(np.prod(config.multiplier)) if config.multiplier else m.n_cell
    out = CompactMatrix.zeros(m.dim, n_big, n_big, 0)
    for e, s in zip(config.edges, config.signs):
        fwd = LaurentPoly.monomial(m.dim, e.mono, s, 0)
        bwd = LaurentPoly.monomial(m.dim, mono_inv(e.mono), -s, 0)
        if e.iu == e.iv:
            out.rows[e.iu][e.iu] = out.rows[e.iu][e.iu] + fwd + bwd
        else:
            out.rows[e.iu][e.iv] = out.rows[e.iu][e.iv] + fwd
            out.rows[e.iv][e.iu] = out.rows[e.iv][e.iu] + bwd
    return out


# -- spanning tree, fundamental cycles, zero-winding basis -------------------


def _spanning_tree(n_vertices: int, edges) -> tuple[list[int], dict]:
    """BFS tree from vertex 0 with lexicographic neighbor order.

    Returns (tree edge indices, parent map vertex -> (parent, edge index, forward)).
    Raises OrientationError if the quotient graph is disconnected.
    """
    adj: dict[int, list] = {v: [] for v in range(n_vertices)}
    for i, e in enumerate(edges):
        if e.iu != e.iv:
            adj[e.iu].append((e.iv, i, True))
            adj[e.iv].append((e.iu, i, False))
    for v in adj:
        adj[v].sort()
    parent: dict[int, tuple] = {0: None}
    tree: list[int] = []
    queue = [0]
    while queue:
        u = queue.pop(0)
        for (w, i, fwd) in adj[u]:
            if w not in parent:
                parent[w] = (u, i, fwd)
                tree.append(i)
                queue.append(w)
    if len(parent) != n_vertices:
        raise OrientationError("magnetic unit cell is not connected")
    return sorted(tree), parent


def _tree_path_vector(parent, n_edges: int, frm: int, to: int) -> np.ndarray:
    """Integer edge-coefficient vector of the tree path frm -> to."""
    def root_path(v):
        out = []
        while parent[v] is not None:
            p, i, fwd = parent[v]
            out.append((i, 1 if not fwd else -1, v))  # traversing child -> parent
            v = p
        return out

    vec = np.zeros(n_edges, dtype=np.int64)
    up_f = {i: s for i, s, _ in root_path(frm)}
    up_t = {i: s for i, s, _ in root_path(to)}
    # frm -> root -> to; shared tail cancels automatically
    for i, s in up_f.items():
        vec[i] += s
    for i, s in up_t.items():
        vec[i] -= s
    return vec


def _fundamental_cycles(edges, tree, parent) -> list[np.ndarray]:
    """One integer cycle vector per non-tree edge: the edge plus its tree path."""
    n_edges = len(edges)
    cycles = []
    for i, e in enumerate(edges):
        if i in tree:
            continue
        vec = np.zeros(n_edges, dtype=np.int64)
        vec[i] = 1  # traverse iu -> iv
        if e.iu != e.iv:
            vec += _tree_path_vector(parent, n_edges, e.iv, e.iu)
        cycles.append(vec)
    return cycles


def _integer_kernel(mat: np.ndarray) -> np.ndarray:
    """Saturated integer kernel basis of mat (rows x cols), by column reduction."""
    a = mat.astype(np.int64).copy()
    rows, cols = a.shape
    v = np.eye(cols, dtype=np.int64)
    r = 0
    for i in range(rows):
        piv = None
        for j in range(r, cols):
            if a[i, j]:
                piv = j
                break
        if piv is None:
            continue
        a[:, [r, piv]] = a[:, [piv, r]]
        v[:, [r, piv]] = v[:, [piv, r]]
        changed = True
        while changed:
            changed = False
            for j in range(r + 1, cols):
                if a[i, j]:
                    q = a[i, j] // a[i, r]
                    a[:, j] -= q * a[:, r]
                    v[:, j] -= q * v[:, r]
                    if a[i, j]:  # euclidean swap to shrink the pivot
                        a[:, [r, j]] = a[:, [j, r]]
                        v[:, [r, j]] = v[:, [j, r]]
                        changed = True
        r += 1
    return v[:, r:].T.copy()


def _zero_winding_basis(edges, cycles) -> list[np.ndarray]:
    """Integer basis of the cycle sublattice with zero net Z^d winding."""
    if not cycles:
        return []
    dim = len(edges[0].mono)
    winding = np.zeros((len(cycles), dim), dtype=np.int64)
    for r, z in enumerate(cycles):
        for i, e in enumerate(edges):
            if z[i]:
                winding[r] += z[i] * np.asarray(e.mono, dtype=np.int64)
    if dim == 0:
        combo = np.eye(len(cycles), dtype=np.int64)
    else:
        combo = _integer_kernel(winding.T)
    return [sum(int(c) * cycles[i] for i, c in enumerate(row)) for row in combo]


class _FluxMap:
    """Affine GF(2) form of the flux signature: sig(s) = offs + mask @ sbit mod 2.

    For an integer cycle vector z with edge multiplicities |z| and sign bits
    sbit (1 where the edge sign is -1), the reversal count satisfies
    tau(z) = sum |z_e| * (zneg_e XOR sbit_e) = const + (|z| mod 2) . sbit (mod 2),
    so each basis cycle's eigenvalue bit is affine in the sign bits.
    """

    __slots__ = ("offs", "mask", "n_bits")

    def __init__(self, basis):
        self.n_bits = len(basis)
        if not basis:
            self.offs = np.zeros(0, dtype=np.uint8)
            self.mask = np.zeros((0, 0), dtype=np.uint8)
            return
        z = np.array(basis, dtype=np.int64)
        absz = np.abs(z)
        zneg = (z < 0).astype(np.int64)
        length = absz.sum(axis=1)
        self.offs = (((absz * zneg).sum(axis=1) + length // 2) % 2).astype(np.uint8)
        self.mask = (absz % 2).astype(np.uint8)

    def signatures(self, sbits: np.ndarray) -> np.ndarray:
        """Packed signature integers for sign-bit rows (n_cfg, n_edges)."""
        if self.n_bits == 0:
            return np.zeros(sbits.shape[0], dtype=np.uint64)
        bits = (sbits.astype(np.int64) @ self.mask.T.astype(np.int64) + self.offs) % 2
        weights = (1 << np.arange(self.n_bits - 1, -1, -1, dtype=np.uint64))
        return bits.astype(np.uint64) @ weights

    def signature_tuple(self, sbit: np.ndarray) -> tuple:
        if self.n_bits == 0:
            return ()
        bits = (sbit.astype(np.int64) @ self.mask.T.astype(np.int64) + self.offs) % 2
        return tuple(int(b) for b in bits)


def _translations(multiplier) -> list[tuple]:
    return list(np.ndindex(*multiplier)) if multiplier else [()]


def _translation_perms(edges, multiplier, index_of) -> list[np.ndarray]:
    """perm[t][e] = index of edge e translated by t geometric cells."""
    perms = []
    for t in _translations(multiplier):
        perm = np.array(
            [
                index_of[(e.base, tuple((c + s) % f for c, s, f in
                                        zip(e.subcell, t, multiplier)))]
                for e in edges
            ],
            dtype=np.int64,
        )
        perms.append(perm)
    return perms


def _flux_data(m: CompactMatrix, multiplier):
    """(edges, tree, flux map) for one magnetic cell size."""
    edges = magnetic_edges(m, multiplier)
    n_big = m.n_cell * int(np.prod(multiplier)) if multiplier else m.n_cell
    tree, parent = _spanning_tree(n_big, edges)
    basis = _zero_winding_basis(edges, _fundamental_cycles(edges, tree, parent))
    return edges, tree, _FluxMap(basis)


def _signature(m: CompactMatrix, config: OrientationConfig) -> tuple:
    _, _, flux = _flux_data(m, config.multiplier)
    sbit = np.array([1 if s < 0 else 0 for s in config.signs], dtype=np.uint8)
    return flux.signature_tuple(sbit)


def _divisors_of(multiplier) -> list[tuple]:
    axes = []
    for f in multiplier:
        axes.append([d for d in range(1, f + 1) if f % d == 0])
    return [t for t in itertools.product(*axes) if t != tuple(multiplier)]


def enumerate_orientations(m: CompactMatrix, max_multiplier: int = 4) -> list[OrientationConfig]:
    """Deduplicated flux configurations for all magnetic cells up to max_multiplier.

    Tree edges are fixed to +1 and all 2^c non-tree sign patterns are scanned;
    within each flux class (canonicalized over magnetic-cell translations, with
    divisor-cell configurations subsumed) the lexicographically smallest sign
    pattern is kept.
    """
    validate_adjacency(m)
    configs: list[OrientationConfig] = []
    emitted: dict[tuple, list] = {}  # multiplier -> list of sign vectors (np arrays)
    edge_lists: dict[tuple, list] = {}
    for multiplier in itertools.product(range(1, max_multiplier + 1), repeat=m.dim):
        edges, tree, flux = _flux_data(m, multiplier)
        nontree = [i for i in range(len(edges)) if i not in tree]
        if len(nontree) > MAX_NONTREE_EDGES:
            raise ScaleError(
                f"{len(nontree)} non-tree edge instances exceed the "
                f"{MAX_NONTREE_EDGES}-edge enumeration bound"
            )
        index_of = {(e.base, e.subcell): i for i, e in enumerate(edges)}
        perms = _translation_perms(edges, multiplier, index_of)

        # all 2^c sign-bit rows, lexicographically (all +1 first)
        c = len(nontree)
        counts = np.arange(1 << c, dtype=np.uint64)
        bit_cols = [(counts >> np.uint64(c - 1 - k)) & np.uint64(1) for k in range(c)]
        sbits = np.zeros((1 << c, len(edges)), dtype=np.uint8)
        for k, col in enumerate(bit_cols):
            sbits[:, nontree[k]] = col.astype(np.uint8)

        canon = None
        for perm in perms:
            translated = np.zeros_like(sbits)
            translated[:, perm] = sbits
            sig = flux.signatures(translated)
            canon = sig if canon is None else np.minimum(canon, sig)

        seen: set = set()
        for dmult in _divisors_of(multiplier):
            d_index = {(e.base, e.subcell): i for i, e in enumerate(edge_lists.get(dmult, []))}
            for d_sbit in emitted.get(dmult, []):
                lifted = np.array(
                    [
                        d_sbit[d_index[(e.base, tuple(cc % f for cc, f in zip(e.subcell, dmult)))]]
                        for e in edges
                    ],
                    dtype=np.uint8,
                )
                best = None
                for perm in perms:
                    tr = np.zeros_like(lifted)
                    tr[perm] = lifted
                    val = int(flux.signatures(tr[None, :])[0])
                    best = val if best is None else min(best, val)
                seen.add(best)

        kept: list = []
        order = np.argsort(canon, kind="stable")
        taken: set = set(seen)
        for idx in order:
            key = int(canon[idx])
            if key in taken:
                continue
            taken.add(key)
            kept.append(idx)
        kept.sort()  # restore lexicographic emission order
        my_sbits = []
        for idx in kept:
            sbit = sbits[idx]
            signs = tuple(-1 if b else 1 for b in sbit)
            configs.append(
                OrientationConfig(
                    tuple(multiplier), tuple(edges), signs,
                    flux_signature=flux.signature_tuple(sbit),
                )
            )
            my_sbits.append(sbit)
        emitted[tuple(multiplier)] = my_sbits
        edge_lists[tuple(multiplier)] = edges
    return configs


def elementary_orientation(m: CompactMatrix) -> OrientationConfig:
    """All arcs from one sublattice to the other; exists iff the lattice is bipartite."""
    validate_adjacency(m)
    n = m.n_cell
    classes = edge_classes(m)
    # chi_u + chi_v + a . (mono mod 2) = 1 for every edge class
    rows = []
    rhs = []
    for (u, v, mono) in classes:
        row = np.zeros(n + m.dim, dtype=np.uint8)
        row[u] ^= 1
        row[v] ^= 1
        for ax, e in enumerate(mono):
            row[n + ax] ^= e % 2
        rows.append(row)
        rhs.append(1)
    solution = gf2.solve(np.array(rows, dtype=np.uint8), np.array(rhs, dtype=np.uint8))
    if solution is None:
        raise OrientationError("graph is not bipartite: no elementary orientation")
    chi = solution[:n]
    ones = tuple([1] * m.dim)
    edges = magnetic_edges(m, ones)
    signs = tuple(1 if chi[e.iu % n] == 0 else -1 for e in edges)
    cfg = OrientationConfig(ones, tuple(edges), signs)
    sig = _signature(m, cfg)
    if any(sig):
        raise AssertionError("elementary orientation produced nonzero flux")
    return OrientationConfig(ones, tuple(edges), signs, flux_signature=sig)


def gauge_transform(config: OrientationConfig, flip_vertices) -> OrientationConfig:
    """Flip the sign of every edge incident to the given magnetic-cell vertices."""
    flips = set(flip_vertices)
    signs = []
    for e, s in zip(config.edges, config.signs):
        factor = (-1) ** ((e.iu in flips) + (e.iv in flips))
        signs.append(s * factor)
    return OrientationConfig(config.multiplier, config.edges, tuple(signs),
                             flux_signature=config.flux_signature)


# ---------------------------------------------------------------------------
# cycle eigenvalues on finite tori and the skew-energy-maximizing condition


def _finite_cycspace(h: np.ndarray):
    """Spanning tree and fundamental cycles (as vertex paths) of |h| on a finite graph."""
    n = h.shape[0]
    adjacency = (h != 0)
    parent = {0: None}
    order = [0]
    queue = [0]
    tree_edges = set()
    while queue:
        u = queue.pop(0)
        for v in np.nonzero(adjacency[u])[0]:
            v = int(v)
            if v not in parent:
                parent[v] = u
                tree_edges.add((min(u, v), max(u, v)))
                queue.append(v)
                order.append(v)
    if len(parent) != n:
        raise OrientationError("torus graph is not connected")

    def path_to_root(v):
        out = [v]
        while parent[v] is not None:
            v = parent[v]
            out.append(v)
        return out

    cycles = []
    for u in range(n):
        for v in range(u + 1, n):
            if adjacency[u, v] and (u, v) not in tree_edges:
                pu, pv = path_to_root(u), path_to_root(v)
                su, sv = set(pu), set(pv)
                meet = next(w for w in pu if w in sv)
                walk = pu[: pu.index(meet) + 1] + list(reversed(pv[: pv.index(meet)]))
                cycles.append(tuple(walk))  # closed: walk[-1] -> walk[0] is edge (v, u)
    return cycles


def cycle_eigenvalue(h: np.ndarray, cycle) -> int:
    """(-1)^(tau(C) + |C|/2) for a vertex cycle on a signed antisymmetric h."""
    length = len(cycle)
    tau = 0
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        if h[a, b] == 0:
            raise OrientationError(f"cycle uses a non-edge ({a}, {b})")
        if h[a, b] < 0:
            tau += 1
    return 1 if (tau + length // 2) % 2 == 0 else -1


def cycle_eigenvalues(m: CompactMatrix, config: OrientationConfig, sides) -> dict:
    """Map basis cycle (vertex tuple) -> +/-1 cycle eigenvalue on a finite torus."""
    h = torus_truncate(orient(m, config), sides).astype(np.int64)
    return {cyc: cycle_eigenvalue(h, cyc) for cyc in _finite_cycspace_sorted(h)}


def _finite_cycspace_sorted(h):
    return sorted(_finite_cycspace(h))


def check_skew_max_condition(m: CompactMatrix, config: OrientationConfig, sides,
                             max_composite_length: int = 12) -> bool:
    """Every checked even cycle oddly oriented (length = 2 mod 4 -> eigenvalue +1,
    length = 0 mod 4 -> eigenvalue -1).

    Checks the fundamental cycle basis of the torus plus all pairwise GF(2)
    compositions up to the given length that form a single cycle; a full check
    over all cycles would be exponential, so this is a documented partial check.
    """
    h = torus_truncate(orient(m, config), sides).astype(np.int64)
    basis = _finite_cycspace_sorted(h)
    if not all(_even_cycle_ok(h, c) for c in basis):
        return False
    for c1, c2 in itertools.combinations(basis, 2):
        comp = _compose_cycles(h, c1, c2)
        if comp is not None and len(comp) <= max_composite_length:
            if not _even_cycle_ok(h, comp):
                return False
    return True


def _even_cycle_ok(h, cycle) -> bool:
    if len(cycle) % 2:
        return True  # the condition constrains even cycles only
    want = 1 if len(cycle) % 4 == 2 else -1
    return cycle_eigenvalue(h, cycle) == want


def _cycle_edge_set(cycle) -> frozenset:
    return frozenset(
        (min(a, b), max(a, b)) for a, b in zip(cycle, cycle[1:] + cycle[:1])
    )


def _compose_cycles(h, c1, c2):
    """Symmetric difference of two cycles if it forms a single simple cycle."""
    edges = _cycle_edge_set(c1) ^ _cycle_edge_set(c2)
    if not edges:
        return None
    return _trace_single_cycle(edges)


def _trace_single_cycle(edges):
    degree: dict[int, list] = {}
    for a, b in edges:
        degree.setdefault(a, []).append(b)
        degree.setdefault(b, []).append(a)
    if any(len(nb) != 2 for nb in degree.values()):
        return None
    start = min(degree)
    walk = [start]
    prev = None
    while True:
        nxt = [w for w in degree[walk[-1]] if w != prev]
        cand = nxt[0] if nxt else prev
        prev = walk[-1]
        if cand == start:
            break
        walk.append(cand)
    return tuple(walk) if len(walk) == len(degree) else None


# ---------------------------------------------------------------------------
# finite-graph helpers (dimension-0 inputs such as C4, C6, the cube)


def finite_simple_cycles(adj: np.ndarray, max_cycle_space: int = 16) -> list[tuple]:
    """All simple cycles of a small finite graph, via its GF(2) cycle space."""
    a = np.asarray(adj) != 0
    n = a.shape[0]
    edges = sorted((u, v) for u in range(n) for v in range(u + 1, n) if a[u, v])
    n_edges = len(edges)
    c = n_edges - n + _n_components(a)
    if c > max_cycle_space:
        raise ScaleError(f"cycle space dimension {c} too large for full enumeration")
    # fundamental cycles of a BFS forest
    tree = set()
    parent: dict[int, int | None] = {}
    for root in range(n):
        if root in parent:
            continue
        parent[root] = None
        queue = [root]
        while queue:
            u = queue.pop(0)
            for v in np.nonzero(a[u])[0]:
                v = int(v)
                if v not in parent:
                    parent[v] = u
                    tree.add((min(u, v), max(u, v)))
                    queue.append(v)
    fund = [e for e in edges if e not in tree]
    basis = []
    eidx = {e: i for i, e in enumerate(edges)}
    for (u, v) in fund:
        vec = np.zeros(n_edges, dtype=np.uint8)
        vec[eidx[(u, v)]] = 1
        pu = _root_path(parent, u)
        pv = _root_path(parent, v)
        for path in (pu, pv):
            for x, y in zip(path, path[1:]):
                vec[eidx[(min(x, y), max(x, y))]] ^= 1
        basis.append(vec)
    out = []
    for bits in itertools.product((0, 1), repeat=len(basis)):
        if not any(bits):
            continue
        vec = np.zeros(n_edges, dtype=np.uint8)
        for b, z in zip(bits, basis):
            if b:
                vec ^= z
        cyc = _trace_single_cycle({edges[i] for i in np.nonzero(vec)[0]})
        if cyc is not None:
            out.append(cyc)
    return sorted(set(out))


def _root_path(parent, v):
    out = [v]
    while parent[out[-1]] is not None:
        out.append(parent[out[-1]])
    return out


def _n_components(a) -> int:
    n = a.shape[0]
    seen = [False] * n
    comps = 0
    for root in range(n):
        if seen[root]:
            continue
        comps += 1
        queue = [root]
        seen[root] = True
        while queue:
            u = queue.pop(0)
            for v in np.nonzero(a[u])[0]:
                if not seen[v]:
                    seen[int(v)] = True
                    queue.append(int(v))
    return comps


def every_even_cycle_oddly_oriented(h: np.ndarray) -> bool:
    """Skew-energy-maximizing premise on a finite signed antisymmetric matrix."""
    h = np.asarray(h, dtype=np.int64)
    cycles = finite_simple_cycles(h != 0)
    for cyc in cycles:
        if len(cyc) % 2 == 0:
            tau = sum(1 for a, b in zip(cyc, cyc[1:] + cyc[:1]) if h[a, b] < 0)
            if tau % 2 == 0:
                return False
    return True
