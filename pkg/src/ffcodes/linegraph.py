"""Line-graph recognition for translation-invariant graphs.

The unit-cell subgraph (constant monomial block) is Krausz-decomposed into
edge-disjoint cliques with every vertex in exactly two cliques (empty cliques
are materialized so this is checkable).  Edges between displaced cells must
then join whole cliques pairwise-completely; consistent cliques are identified
by a union-find over clique ids tagged with cell offsets.  Identified clique
classes become the vertices of the root graph, and each frustration vertex
maps to the pair of clique instances containing it (its root edge).  Every
successful recognition is verified by rebuilding the line graph of the root
and checking canonical isomorphism with the input.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import AmbiguousAfterCoarsening, DimensionError, ScaleError
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
    validate_adjacency,
)

MAX_CELL_VERTICES = 64
MAX_ISO_VERTICES = 16


@dataclass(frozen=True)
class NotLineGraph:
    """Failure certificate: why the input cannot be the line graph of any root."""

    reason: str
    certificate: tuple = ()

    def __bool__(self) -> bool:  # lets callers write `if not result:`
        return False


@dataclass(frozen=True)
class KrauszDecomposition:
    """Edge partition into cliques with every vertex in exactly two cliques."""

    cliques: tuple  # tuple of frozensets of vertex indices; singletons carry no edges
    vertex_to_cliques: dict  # vertex -> (clique id, clique id)
    ambiguous: bool = False


@dataclass(frozen=True)
class RootGraphResult:
    root: CompactMatrix
    phi: dict  # frustration vertex -> ((root vertex, offset), (root vertex, offset))
    cliques: tuple = ()  # identified clique classes as frozensets of (vertex, offset)
    coarsening: tuple = ()  # cell factors applied before recognition succeeded


# ---------------------------------------------------------------------------
# finite Krausz decomposition


def _neighbor_sets(adj) -> list[frozenset]:
    a = np.asarray(adj)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError("adjacency matrix must be square")
    if (a != a.T).any() or a.diagonal().any():
        raise DimensionError("adjacency matrix must be symmetric with zero diagonal")
    return [frozenset(int(j) for j in np.nonzero(a[v])[0]) for v in range(a.shape[0])]


def _find_claw(nbrs) -> tuple | None:
    """A vertex with three pairwise non-adjacent neighbors, if one exists."""
    for v, nb in enumerate(nbrs):
        cand = sorted(nb)
        for trio in itertools.combinations(cand, 3):
            a, b, c = trio
            if b not in nbrs[a] and c not in nbrs[a] and c not in nbrs[b]:
                return (v, a, b, c)
    return None


def _edge_partitions(nbrs, limit: int = 2) -> list[list[frozenset]]:
    """Up to `limit` distinct partitions of the edges into cliques.

    Cliques are assigned whole: the clique containing the first unassigned
    edge is enumerated over all cliques through that edge, in lexicographic
    vertex order, so the first solution found is canonical.
    """
    n = len(nbrs)
    edges = sorted((u, v) for u in range(n) for v in nbrs[u] if u < v)
    edge_ids = {e: i for i, e in enumerate(edges)}
    assigned = [False] * len(edges)
    count = [0] * n
    solutions: list[list[frozenset]] = []
    seen: set = set()
    current: list[frozenset] = []

    def clique_extensions(u, v):
        """All cliques through edge (u, v) usable now, in lex order."""
        base = [w for w in sorted(nbrs[u] & nbrs[v]) if count[w] < 2
                and not assigned[edge_ids[(min(u, w), max(u, w))]]
                and not assigned[edge_ids[(min(v, w), max(v, w))]]]

        def extend(chosen, pool):
            yield frozenset({u, v} | set(chosen))
            for i, w in enumerate(pool):
                if all(w in nbrs[c] and not assigned[edge_ids[(min(c, w), max(c, w))]]
                       for c in chosen):
                    yield from extend(chosen + [w], pool[i + 1:])

        yield from extend([], base)

    def search():
        if len(solutions) >= limit:
            return
        try:
            next_edge = edges[assigned.index(False)]
        except ValueError:
            key = frozenset(current)
            if key not in seen:
                seen.add(key)
                solutions.append(sorted(current, key=sorted))
            return
        u, v = next_edge
        if count[u] >= 2 or count[v] >= 2:
            return
        for clique in clique_extensions(u, v):
            members = sorted(clique)
            inside = [edge_ids[e] for e in itertools.combinations(members, 2)]
            for e in inside:
                assigned[e] = True
            for w in members:
                count[w] += 1
            # a vertex that just used its second clique may not have loose edges left
            ok = all(
                count[w] < 2
                or all(assigned[edge_ids[(min(w, z), max(w, z))]] for z in nbrs[w])
                for w in members
            )
            if ok:
                current.append(clique)
                search()
                current.pop()
            for e in inside:
                assigned[e] = False
            for w in members:
                count[w] -= 1

    search()
    return solutions


def krausz_finite(adj):
    """Krausz decomposition of a finite simple graph, or NotLineGraph.

    Returns a KrauszDecomposition whose `ambiguous` flag is set when more than
    one edge partition exists (the classic K3-type exceptions).
    """
    nbrs = _neighbor_sets(adj)
    n = len(nbrs)
    if n > MAX_CELL_VERTICES:
        raise ScaleError(f"unit-cell graph has {n} > {MAX_CELL_VERTICES} vertices")
    claw = _find_claw(nbrs)
    if claw is not None:
        return NotLineGraph("claw (K_{1,3}) induced at vertex %d" % claw[0], claw)
    partitions = _edge_partitions(nbrs, limit=2)
    if not partitions:
        return NotLineGraph(
            "edges admit no clique partition with two cliques per vertex",
            _minimal_witness(np.asarray(adj)),
        )
    cliques = list(partitions[0])
    count = {v: 0 for v in range(n)}
    for c in cliques:
        for v in c:
            count[v] += 1
    for v in range(n):  # materialize empty cliques so every vertex sits in exactly two
        for _ in range(2 - count[v]):
            cliques.append(frozenset([v]))
    v2c: dict[int, tuple[int, int]] = {}
    for v in range(n):
        owner = [i for i, c in enumerate(cliques) if v in c]
        edgefirst = [i for i in owner if len(cliques[i]) > 1]
        edgefirst += [i for i in owner if len(cliques[i]) == 1]
        v2c[v] = tuple(edgefirst)
    return KrauszDecomposition(tuple(cliques), v2c, ambiguous=len(partitions) > 1)


def _minimal_witness(adj) -> tuple:
    """Greedy-minimal induced subgraph that still has no Krausz decomposition."""
    keep = list(range(adj.shape[0]))
    if len(keep) > 24:
        return tuple(keep)
    for v in list(keep):
        trial = [w for w in keep if w != v]
        sub = adj[np.ix_(trial, trial)]
        if not _edge_partitions(_neighbor_sets(sub), limit=1):
            keep = trial
    return tuple(keep)


def check_krausz(adj, dec: KrauszDecomposition) -> bool:
    """Assertable decomposition invariants: edge partition + two cliques per vertex."""
    nbrs = _neighbor_sets(adj)
    n = len(nbrs)
    edges = {(u, v) for u in range(n) for v in nbrs[u] if u < v}
    covered: dict = {}
    for i, c in enumerate(dec.cliques):
        for u, v in itertools.combinations(sorted(c), 2):
            if v not in nbrs[u] or (u, v) in covered:
                return False
            covered[(u, v)] = i
    if set(covered) != edges:
        return False
    for v in range(n):
        owner = [i for i, c in enumerate(dec.cliques) if v in c]
        if len(owner) != 2 or set(dec.vertex_to_cliques[v]) != set(owner):
            return False
    return True


# ---------------------------------------------------------------------------
# forward line-graph operation


def line_graph(r: CompactMatrix) -> CompactMatrix:
    """Compact adjacency on the edge classes of a root graph."""
    validate_adjacency(r)
    classes = edge_classes(r)
    m = len(classes)
    lg = CompactMatrix.zeros(r.dim, m, m, 2)
    zero = mono_one(r.dim)
    for a in range(m):
        u1, v1, m1 = classes[a]
        ends_a = [(u1, zero), (v1, m1)]
        for b in range(a, m):
            u2, v2, m2 = classes[b]
            ends_b = [(u2, zero), (v2, m2)]
            offsets = set()
            for (w1, o1) in ends_a:
                for (w2, o2) in ends_b:
                    if w1 == w2:
                        offsets.add(tuple(x - y for x, y in zip(o1, o2)))
            if a == b:
                offsets.discard(zero)
            entry = LaurentPoly(r.dim, {t: 1 for t in offsets}, 2)
            lg.rows[a][b] = lg.rows[a][b] + entry
            if a != b:
                lg.rows[b][a] = lg.rows[b][a] + entry.adjoint()
    return validate_adjacency(lg)


# ---------------------------------------------------------------------------
# canonical isomorphism of compact adjacencies


def _entry_shape(p: LaurentPoly):
    """Shift-invariant shape of an entry: exponents relative to the lex-min monomial."""
    if not p.terms:
        return ()
    monos = sorted(p.terms)
    base = monos[0]
    return tuple(tuple(e - b for e, b in zip(m, base)) for m in monos)


def _vertex_signatures(m: CompactMatrix):
    sigs = []
    for u in range(m.n_cell):
        row = sorted(_entry_shape(m.entry(u, v)) for v in range(m.n_cell))
        sigs.append((_entry_shape(m.entry(u, u)), tuple(row)))
    return sigs


def canonical_isomorphic(a: CompactMatrix, b: CompactMatrix) -> bool:
    """True iff related by a vertex permutation plus per-vertex cell-origin shifts."""
    validate_adjacency(a)
    validate_adjacency(b)
    if a.dim != b.dim:
        raise DimensionError("compact matrices have different lattice dimensions")
    n = a.n_cell
    if n != b.n_cell:
        return False
    if n > MAX_ISO_VERTICES:
        raise ScaleError(f"canonical isomorphism limited to {MAX_ISO_VERTICES} vertices")
    sig_a = _vertex_signatures(a)
    sig_b = _vertex_signatures(b)
    if sorted(sig_a) != sorted(sig_b):
        return False

    # BFS order over a's nonzero-entry quotient graph so shifts propagate
    order: list[int] = []
    seen = [False] * n
    for root in range(n):
        if seen[root]:
            continue
        queue = [root]
        seen[root] = True
        while queue:
            u = queue.pop(0)
            order.append(u)
            for v in range(n):
                if not seen[v] and a.entry(u, v):
                    seen[v] = True
                    queue.append(v)

    zero = mono_one(a.dim)
    perm: dict[int, int] = {}
    shift: dict[int, tuple] = {}
    used = [False] * n

    def extend(pos: int) -> bool:
        if pos == len(order):
            return True
        u = order[pos]
        anchors = [w for w in order[:pos] if a.entry(w, u)]
        for target in range(n):
            if used[target] or sig_b[target] != sig_a[u]:
                continue
            if anchors:
                w = anchors[0]
                pa, pb = a.entry(w, u), b.entry(perm[w], target)
                if not pb or len(pa.terms) != len(pb.terms):
                    continue
                # shift delta is pinned by the lex-min monomials
                base_a = sorted(pa.terms)[0]
                base_b = sorted(pb.terms)[0]
                delta = tuple(
                    y - x + s for x, y, s in zip(base_a, base_b, shift[w])
                )
            else:
                delta = zero
            ok = True
            for w in order[:pos]:
                want = a.entry(w, u).shift(tuple(d - s for d, s in zip(delta, shift[w])))
                if want != b.entry(perm[w], target):
                    ok = False
                    break
            if ok and a.entry(u, u) != b.entry(target, target):
                ok = False
            if not ok:
                continue
            perm[u] = target
            shift[u] = delta
            used[target] = True
            if extend(pos + 1):
                return True
            used[target] = False
            del perm[u], shift[u]
        return False

    return extend(0)


# ---------------------------------------------------------------------------
# translation-invariant recognition


def _uf_find(parent, offset, e):
    """(root, total offset) with e@0 identified to root@total."""
    total = offset[e]
    while parent[e] != e:
        e = parent[e]
        total = tuple(a + b for a, b in zip(total, offset[e]))
    return e, total


def _merge(m: CompactMatrix, parent, offset, members, e1, e2, delta):
    """Identify clique e1@0 with clique e2@delta; None on any inconsistency."""
    r1, o1 = _uf_find(parent, offset, e1)
    r2, o2 = _uf_find(parent, offset, e2)
    tgt2 = tuple(d + o for d, o in zip(delta, o2))  # e2@delta == r2@tgt2
    if r1 == r2:
        return (parent, offset, members) if o1 == tgt2 else None
    # r2@tgt2 must equal r1@o1, so r2@0 == r1@(o1 - tgt2)
    shift = tuple(a - b for a, b in zip(o1, tgt2))
    # members of r2@0 sit in r1@shift; relative to r1@0 they shift by -shift
    moved = {(v, tuple(o - s for o, s in zip(off, shift))) for v, off in members[r2]}
    for v1, of1 in members[r1]:
        for v2, of2 in moved:
            if (v1, of1) == (v2, of2):
                return None  # same vertex instance twice: root loop
            rel = tuple(a - b for a, b in zip(of2, of1))
            if not m.entry(v1, v2).coeff(rel):
                return None  # identified cliques are not pairwise complete
    parent[r2] = r1
    offset[r2] = shift
    members[r1] = members[r1] | moved
    del members[r2]
    return parent, offset, members


def _identify(m: CompactMatrix, dec: KrauszDecomposition):
    """Resolve cross-cell clique identifications; return RootGraphResult or NotLineGraph."""
    n = m.n_cell
    dim = m.dim
    zero = mono_one(dim)
    cliques = dec.cliques
    v2c = dec.vertex_to_cliques

    monos = [mono for mono in m.monomials() if mono != zero and mono_is_positive(mono)]
    queue = []
    for mono in monos:
        for u in range(n):
            for v in range(n):
                if m.entry(u, v).coeff(mono):
                    queue.append((mono, u, v))  # u@0 adjacent to v@mono

    def solve(idx, parent, offset, members):
        if idx == len(queue):
            return _build_root(m, cliques, v2c, parent, offset, members)
        mono, u, v = queue[idx]
        for ci in v2c[u]:
            for cj in v2c[v]:
                st = _merge(m, list(parent), list(offset), {k: set(s) for k, s in members.items()},
                            ci, cj, mono)
                if st is None:
                    continue
                res = solve(idx + 1, *st)
                if not isinstance(res, NotLineGraph):
                    return res
        return NotLineGraph(
            "no consistent clique identification across unit cells",
            (format_monomial(mono), u, v),
        )

    parent = list(range(len(cliques)))
    offset = [zero] * len(cliques)
    members = {i: {(v, zero) for v in c} for i, c in enumerate(cliques)}
    return solve(0, parent, offset, members)


def _build_root(m, cliques, v2c, parent, offset, members):
    n = m.n_cell
    dim = m.dim
    zero = mono_one(dim)

    # each vertex's two clique instances must stay distinct (no root self-loops)
    inst = {}
    for u in range(n):
        pair = [_uf_find(parent, offset, c) for c in v2c[u]]
        if pair[0] == pair[1]:
            return NotLineGraph("a vertex's two cliques collapse to one instance", (u,))
        inst[u] = pair

    # every edge must lie in exactly one identified clique
    for u in range(n):
        for v in range(n):
            for mono in m.entry(u, v).terms:
                if u == v and not mono_is_positive(mono):
                    continue
                if u > v:
                    continue
                shifted = {(r, tuple(a + b for a, b in zip(mono, o))) for r, o in inst[v]}
                common = set(inst[u]) & shifted
                if len(common) != 1:
                    return NotLineGraph(
                        "edge lies in %d identified cliques instead of one" % len(common),
                        (u, v, format_monomial(mono)),
                    )

    roots = sorted(members, key=lambda r: tuple(sorted(members[r])))
    index = {r: i for i, r in enumerate(roots)}

    # frustration vertex -> unordered pair of root-vertex instances -> root edge class
    phi = {}
    root_edges = {}
    for u in range(n):
        (ra, oa), (rb, ob) = sorted(inst[u], key=lambda t: (index[t[0]], t[1]))
        phi[u] = ((index[ra], oa), (index[rb], ob))
        delta = tuple(b - a for a, b in zip(oa, ob))
        if ra == rb and not mono_is_positive(delta):
            delta = mono_inv(delta)
        key = (index[ra], index[rb], delta)
        if key in root_edges:
            return NotLineGraph("two vertices map to the same root edge", (root_edges[key], u))
        root_edges[key] = u

    try:
        root = adjacency_from_edge_classes(dim, len(roots), sorted(root_edges))
        validate_adjacency(root)
        root = _normalize_root(root)
    except Exception as exc:  # exponent overflow or malformed root
        return NotLineGraph(f"root construction failed: {exc}", ())

    clique_sets = tuple(
        frozenset(members[r]) for r in roots
    )
    return RootGraphResult(root=root, phi=phi, cliques=clique_sets)


def _normalize_root(root: CompactMatrix) -> CompactMatrix:
    """Shift cell origins so BFS-tree edges carry the constant monomial."""
    n = root.n_cell
    zero = mono_one(root.dim)
    shift = {0: zero}
    order = []
    seen = [False] * n
    for start in range(n):
        if seen[start]:
            continue
        shift[start] = zero
        seen[start] = True
        queue = [start]
        while queue:
            u = queue.pop(0)
            order.append(u)
            for v in range(n):
                if not seen[v] and root.entry(u, v):
                    # entry.shift(s_v - s_u) must contain the constant monomial
                    base = sorted(root.entry(u, v).terms)[0]
                    shift[v] = tuple(s - b for s, b in zip(shift[u], base))
                    seen[v] = True
                    queue.append(v)
    out = CompactMatrix.zeros(root.dim, n, n, 2)
    for i in range(n):
        for j in range(n):
            out.rows[i][j] = root.entry(i, j).shift(
                tuple(sj - si for si, sj in zip(shift[i], shift[j]))
            )
    return validate_adjacency(out)


def constant_block(m: CompactMatrix) -> np.ndarray:
    """Unit-cell subgraph: the constant-monomial coefficient block."""
    n = m.n_cell
    out = np.zeros((n, n), dtype=np.uint8)
    zero = mono_one(m.dim)
    for i in range(n):
        for j in range(n):
            out[i, j] = m.entry(i, j).coeff(zero)
    return out


def recognize(a: CompactMatrix, max_blowup: int = 8):
    """Root graph of a translation-invariant line graph, or NotLineGraph.

    Krausz-decomposes the unit cell; on a non-unique decomposition the cell is
    doubled along alternating axes (total blow-up capped at `max_blowup`,
    raising AmbiguousAfterCoarsening beyond it).  Every success is verified by
    the forward construction: line_graph(root) is canonically isomorphic to
    the (possibly coarsened) input.
    """
    validate_adjacency(a)
    m = a
    blowup = 1
    axis = 0
    factors_total = tuple([1] * a.dim)
    while True:
        dec = krausz_finite(constant_block(m))
        if isinstance(dec, NotLineGraph):
            return dec
        if not dec.ambiguous:
            res = _identify(m, dec)
            if isinstance(res, NotLineGraph):
                return res
            check = line_graph(res.root)
            if not canonical_isomorphic(check, m):
                return NotLineGraph(
                    "forward verification failed: line graph of the root "
                    "is not isomorphic to the input",
                    (),
                )
            return RootGraphResult(
                root=res.root, phi=res.phi, cliques=res.cliques, coarsening=factors_total
            )
        if a.dim == 0 or blowup * 2 > max_blowup:
            raise AmbiguousAfterCoarsening(
                f"Krausz decomposition still ambiguous at blow-up {blowup}"
            )
        factors = [1] * a.dim
        factors[axis] = 2
        m = enlarge_cell(m, factors)
        factors_total = tuple(
            f * g for f, g in zip(factors_total, factors)
        )
        blowup *= 2
        axis = (axis + 1) % a.dim
