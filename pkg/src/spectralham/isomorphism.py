"""Canonical labeling by equitable refinement with backtracking.

The canonical form of a graph is the lexicographically smallest adjacency
encoding reachable through the individualization-refinement search tree.
Subtrees are skipped when a probe leaf proves an automorphism maps them
onto an already-explored sibling (equal leaf encoding with equal prefix
positions), which collapses the search to a single path on the highly
symmetric graphs this package deals in.

Intended for small graphs (tests, orbit-soundness audits); the family
recognizers in :mod:`spectralham.conditions` handle the large named
graphs structurally instead.
"""

from __future__ import annotations

from .graphs import Graph, iter_bits

VERTEX_CAP = 128


def _refine(adj: tuple[int, ...], cells: list[int]) -> list[int]:
    """Equitable refinement; cell order depends only on structure."""
    changed = True
    while changed:
        changed = False
        for splitter in list(cells):
            new_cells: list[int] = []
            for cell in cells:
                if cell.bit_count() <= 1:
                    new_cells.append(cell)
                    continue
                groups: dict[int, int] = {}
                for v in iter_bits(cell):
                    cnt = (adj[v] & splitter).bit_count()
                    groups[cnt] = groups.get(cnt, 0) | (1 << v)
                if len(groups) == 1:
                    new_cells.append(cell)
                else:
                    changed = True
                    for cnt in sorted(groups):
                        new_cells.append(groups[cnt])
            cells = new_cells
    return cells


def _target_index(cells: list[int]) -> int | None:
    best = None
    best_size = None
    for i, cell in enumerate(cells):
        size = cell.bit_count()
        if size > 1 and (best_size is None or size < best_size):
            best, best_size = i, size
    return best


def _individualize(cells: list[int], t: int, v: int) -> list[int]:
    bit = 1 << v
    return cells[:t] + [bit, cells[t] & ~bit] + cells[t + 1:]


def _leaf_order(cells: list[int]) -> list[int]:
    return [(c & -c).bit_length() - 1 for c in cells]


def _encode(adj: tuple[int, ...], order: list[int]) -> bytes:
    n = len(order)
    out = bytearray()
    acc = 0
    nb = 0
    for i in range(n):
        ai = adj[order[i]]
        for j in range(i + 1, n):
            acc = (acc << 1) | ((ai >> order[j]) & 1)
            nb += 1
            if nb == 8:
                out.append(acc)
                acc = nb = 0
    if nb:
        out.append(acc << (8 - nb))
    return bytes(out)


def _first_leaf(adj, cells):
    while True:
        t = _target_index(cells)
        if t is None:
            order = _leaf_order(cells)
            return _encode(adj, order), order
        v = (cells[t] & -cells[t]).bit_length() - 1
        cells = _refine(adj, _individualize(cells, t, v))


def canonical_labeling(g: Graph) -> tuple[int, ...]:
    """order[i] = original vertex receiving canonical label i."""
    n = g.n
    if n > VERTEX_CAP:
        raise ValueError(f"canonical labeling capped at {VERTEX_CAP} vertices")
    if n == 0:
        return ()
    adj = g.adj
    best: dict = {"enc": None, "order": None}

    def explore(cells: list[int], prefix: list[int]) -> None:
        t = _target_index(cells)
        if t is None:
            order = _leaf_order(cells)
            enc = _encode(adj, order)
            if best["enc"] is None or enc < best["enc"]:
                best["enc"] = enc
                best["order"] = order
            return
        seen: list[tuple] = []
        for v in iter_bits(cells[t]):
            child = _refine(adj, _individualize(cells, t, v))
            enc, order = _first_leaf(adj, child)
            index = {w: i for i, w in enumerate(order)}
            sig = (enc, tuple(index[w] for w in prefix), index[v])
            if sig in seen:
                continue  # automorphic image of an explored sibling
            seen.append(sig)
            explore(child, prefix + [v])

    explore(_refine(adj, [(1 << n) - 1]), [])
    return tuple(best["order"])


def canonical_form(g: Graph) -> bytes:
    """Isomorphism-invariant encoding: equal forms iff isomorphic graphs."""
    order = canonical_labeling(g)
    return bytes([len(order) % 256]) + _encode(g.adj, list(order))


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.e != h.e:
        return False
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_form(g) == canonical_form(h)
