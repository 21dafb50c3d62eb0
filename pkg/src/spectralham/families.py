"""Generators for the extremal graph families and their deletion variants.

Three base graphs, each with a fixed label layout so identical parameters
always produce identical graphs:

* ``M``: K_k joined to (K_{n-2k} + edgeless K_k). Labels: Y = 0..k-1
  (the join clique), Z = k..n-k-1, X = n-k..n-1.
* ``L``: K_1 joined to (K_{n-k-1} + K_k). Labels: Y = {0}, Z = 1..n-k-1,
  X = n-k..n-1.
* ``B``: balanced bipartite on 2n vertices, K_{n,n} minus a complete
  K_{k,n-k} between X and W. Labels: S-side X = 0..k-1, Z = k..n-1;
  T-side Y = n..n+k-1, W = n+k..2n-1.

Deletion families remove up to a budget of edges whose endpoints lie in
Y∪Z (M, L) or Y∪W∪Z (B). Family-1 allows any size up to the budget,
family-2 requires exactly budget+1. Enumeration modes: ``orbit`` (one
representative per symmetry class of deleted-edge configurations),
``exhaustive`` (every subset, capped), ``sample`` (seeded random draws).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field, replace

from .graphs import (
    Edge,
    Graph,
    GraphError,
    add_edges,
    complete,
    complete_bipartite,
    delete_edges,
    disjoint_union,
    edgeless,
    join,
    norm_edge,
)

FAMILY_TAGS = ("M1", "M2", "L1", "L2", "B1", "B2")

DEFAULT_EXHAUSTIVE_CAP = 200_000


class FamilyParameterError(GraphError):
    """Family parameters outside the admissible range."""


class EnumerationCapError(GraphError):
    """Exhaustive enumeration would exceed the configured cap."""


@dataclass(frozen=True)
class VertexClassification:
    X: frozenset[int]
    Y: frozenset[int]
    Z: frozenset[int]
    W: frozenset[int] = frozenset()

    def as_dict(self) -> dict[str, list[int]]:
        return {
            "X": sorted(self.X),
            "Y": sorted(self.Y),
            "Z": sorted(self.Z),
            "W": sorted(self.W),
        }


@dataclass(frozen=True)
class FamilyMember:
    graph: Graph
    base: str  # "M" | "L" | "B"
    kind: str  # "intact" | "F1" | "F2" | "variant"
    k: int
    n: int
    deleted: frozenset[Edge]
    classification: VertexClassification
    added: frozenset[Edge] = frozenset()

    @property
    def family_tag(self) -> str:
        return f"{self.base}:{self.kind}"

    @property
    def is_intact(self) -> bool:
        return not self.deleted and not self.added

    def sort_key(self) -> tuple:
        return (self.base, self.kind, self.k, self.n, tuple(sorted(self.deleted)))

    def refined_classes(self) -> dict[str, frozenset[int]]:
        """Degree refinements Y1/Y2, Z1/Z2 (and W1/W2 for B) of this member."""
        g = self.graph
        k, n = self.k, self.n
        if self.base in ("M", "L"):
            y_full, z_full = n - 1, n - k - 1
        else:
            y_full, z_full = n, n
        out = {
            "Y1": frozenset(v for v in self.classification.Y if g.degree(v) == y_full),
            "Y2": frozenset(v for v in self.classification.Y if g.degree(v) < y_full),
            "Z1": frozenset(v for v in self.classification.Z if g.degree(v) == z_full),
            "Z2": frozenset(v for v in self.classification.Z if g.degree(v) < z_full),
        }
        if self.base == "B":
            w_full = n - k
            out["W1"] = frozenset(
                v for v in self.classification.W if g.degree(v) == w_full
            )
            out["W2"] = frozenset(
                v for v in self.classification.W if g.degree(v) < w_full
            )
        else:
            out["W1"] = frozenset()
            out["W2"] = frozenset()
        return out

    def to_sidecar(self) -> dict:
        return {
            "family_tag": self.family_tag,
            "k": self.k,
            "n": self.n,
            "deleted": sorted(list(e) for e in self.deleted),
            "added": sorted(list(e) for e in self.added),
            "classification": self.classification.as_dict(),
        }


# -- intact base graphs ---------------------------------------------------


def make_M(k: int, n: int) -> FamilyMember:
    """K_k ∨ (K_{n-2k} + edgeless K_k); X has degree k, Y n-1, Z n-k-1."""
    if k < 1 or n < 2 * k + 1:
        raise FamilyParameterError(f"M needs k >= 1 and n >= 2k+1, got k={k} n={n}")
    g = join(complete(k), disjoint_union(complete(n - 2 * k), edgeless(k)))
    cls = VertexClassification(
        X=frozenset(range(n - k, n)),
        Y=frozenset(range(k)),
        Z=frozenset(range(k, n - k)),
    )
    return FamilyMember(g, "M", "intact", k, n, frozenset(), cls)


def make_L(k: int, n: int) -> FamilyMember:
    """K_1 ∨ (K_{n-k-1} + K_k); the single Y vertex is a cut vertex."""
    if k < 1 or n < k + 2:
        raise FamilyParameterError(f"L needs k >= 1 and n >= k+2, got k={k} n={n}")
    g = join(complete(1), disjoint_union(complete(n - k - 1), complete(k)))
    cls = VertexClassification(
        X=frozenset(range(n - k, n)),
        Y=frozenset([0]),
        Z=frozenset(range(1, n - k)),
    )
    return FamilyMember(g, "L", "intact", k, n, frozenset(), cls)


def make_B(k: int, n: int) -> FamilyMember:
    """K_{n,n} minus all X-W edges; balanced bipartite on 2n vertices."""
    if k < 1 or n < 2 * k:
        raise FamilyParameterError(f"B needs k >= 1 and n >= 2k, got k={k} n={n}")
    full = complete_bipartite(n, n)
    gone = [(x, w) for x in range(k) for w in range(n + k, 2 * n)]
    g = delete_edges(full, gone)
    cls = VertexClassification(
        X=frozenset(range(k)),
        Y=frozenset(range(n, n + k)),
        Z=frozenset(range(k, n)),
        W=frozenset(range(n + k, 2 * n)),
    )
    return FamilyMember(g, "B", "intact", k, n, frozenset(), cls)


def e1_edges(member: FamilyMember) -> frozenset[Edge]:
    """Deletable edge pool: both endpoints in Y∪Z (M, L) or Y∪W∪Z (B)."""
    if not member.is_intact:
        raise FamilyParameterError("e1_edges requires an intact member")
    cls = member.classification
    if member.base in ("M", "L"):
        pool = sorted(cls.Y | cls.Z)
        return frozenset(
            (u, v)
            for u, v in itertools.combinations(pool, 2)
            if member.graph.has_edge(u, v)
        )
    out = set()
    for z in sorted(cls.Z):
        for t in sorted(cls.Y | cls.W):
            if member.graph.has_edge(z, t):
                out.add(norm_edge(z, t))
    return frozenset(out)


def deletion_sizes(tag: str, k: int) -> tuple[int, ...]:
    """Allowed |E'| values for a family tag."""
    if tag in ("M1", "B1"):
        return tuple(range(0, k * k // 4 + 1))
    if tag in ("M2", "B2"):
        return (k * k // 4 + 1,)
    if tag == "L1":
        return tuple(range(0, k // 4 + 1))
    if tag == "L2":
        return (k // 4 + 1,)
    raise FamilyParameterError(f"unknown family tag {tag!r}")


def _base_member(tag: str, k: int, n: int) -> FamilyMember:
    base = tag[0]
    if base == "M":
        return make_M(k, n)
    if base == "L":
        return make_L(k, n)
    return make_B(k, n)


def _with_deletions(intact: FamilyMember, kind: str, deleted: frozenset[Edge]) -> FamilyMember:
    g = delete_edges(intact.graph, sorted(deleted))
    return replace(intact, graph=g, kind=kind, deleted=deleted)


# -- symmetry-reduced configuration enumeration ---------------------------
#
# A deleted-edge set is abstracted to a colored graph: vertices carry the
# class color ("Y", "Z", "W") and only the classes matter, because the
# intact graph's automorphism group permutes each class freely. Two edge
# sets give isomorphic members exactly when their colored configurations
# match, so one representative per canonical configuration suffices.
# Configurations are grown one edge at a time with canonical deduplication
# at every level; support per color is bounded by the class sizes.

Vertex = tuple[str, int]
Config = frozenset[tuple[Vertex, Vertex]]


def _canonical_component(vertices: list[Vertex], edges: list[tuple[Vertex, Vertex]]):
    by_color: dict[str, list[Vertex]] = {}
    for v in sorted(vertices):
        by_color.setdefault(v[0], []).append(v)
    colors = sorted(by_color)
    groups = [by_color[c] for c in colors]
    best = None
    for perms in itertools.product(*(itertools.permutations(range(len(g))) for g in groups)):
        relabel: dict[Vertex, Vertex] = {}
        for color, group, perm in zip(colors, groups, perms):
            for i, v in enumerate(group):
                relabel[v] = (color, perm[i])
        enc = tuple(
            sorted(tuple(sorted((relabel[a], relabel[b]))) for a, b in edges)
        )
        if best is None or enc < best:
            best = enc
    counts = tuple((c, len(by_color[c])) for c in colors)
    return (counts, best)


def canonical_config(config: Config):
    """Canonical key: sorted multiset of canonically-labelled components."""
    adj: dict[Vertex, set[Vertex]] = {}
    for a, b in config:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    seen: set[Vertex] = set()
    comps = []
    for start in sorted(adj):
        if start in seen:
            continue
        stack, comp = [start], set()
        while stack:
            v = stack.pop()
            if v in comp:
                continue
            comp.add(v)
            stack.extend(adj[v] - comp)
        seen |= comp
        comp_edges = [e for e in config if e[0] in comp]
        comps.append(_canonical_component(sorted(comp), comp_edges))
    return tuple(sorted(comps))


def _config_color_counts(config: Config) -> dict[str, int]:
    used: set[Vertex] = set()
    for a, b in config:
        used.add(a)
        used.add(b)
    counts: dict[str, int] = {}
    for color, _ in used:
        counts[color] = counts.get(color, 0) + 1
    return counts


def _grow_configs(
    reps: dict[tuple, Config],
    allowed_pairs: list[tuple[str, str]],
    caps: dict[str, int],
) -> dict[tuple, Config]:
    out: dict[tuple, Config] = {}
    for config in reps.values():
        used: set[Vertex] = set()
        for a, b in config:
            used.add(a)
            used.add(b)
        counts = _config_color_counts(config)
        candidates: set[tuple[Vertex, Vertex]] = set()
        for c1, c2 in allowed_pairs:
            ends1 = [v for v in used if v[0] == c1]
            ends2 = [v for v in used if v[0] == c2]
            fresh1 = (c1, counts.get(c1, 0))
            fresh2_offset = 1 if c1 == c2 else 0
            fresh2 = (c2, counts.get(c2, 0) + fresh2_offset)
            can_fresh1 = counts.get(c1, 0) < caps.get(c1, 0)
            can_fresh2 = counts.get(c2, 0) + fresh2_offset < caps.get(c2, 0)
            for a in ends1:
                for b in ends2:
                    if a != b:
                        candidates.add(tuple(sorted((a, b))))
            if can_fresh1:
                for b in ends2:
                    candidates.add(tuple(sorted((fresh1, b))))
            if can_fresh2:
                for a in ends1:
                    candidates.add(tuple(sorted((a, fresh2))))
            if can_fresh1 and can_fresh2:
                candidates.add(tuple(sorted((fresh1, fresh2))))
        for cand in candidates:
            if cand in config:
                continue
            grown = frozenset(config | {cand})
            key = canonical_config(grown)
            if key not in out:
                out[key] = grown
    return out


def _orbit_configs(tag: str, k: int, n: int, size: int) -> list[Config]:
    base = tag[0]
    if base == "M":
        allowed = [("Y", "Y"), ("Y", "Z"), ("Z", "Z")]
        caps = {"Y": k, "Z": n - 2 * k}
    elif base == "L":
        allowed = [("Y", "Z"), ("Z", "Z")]
        caps = {"Y": 1, "Z": n - k - 1}
    else:
        allowed = [("Z", "Y"), ("Z", "W")]
        caps = {"Y": k, "W": n - k, "Z": n - k}
    reps: dict[tuple, Config] = {(): frozenset()}
    for _ in range(size):
        reps = _grow_configs(reps, allowed, caps)
    return [reps[key] for key in sorted(reps)]


def _embed_config(config: Config, cls: VertexClassification) -> frozenset[Edge]:
    labels = {
        "X": sorted(cls.X),
        "Y": sorted(cls.Y),
        "Z": sorted(cls.Z),
        "W": sorted(cls.W),
    }
    out = set()
    for (c1, i1), (c2, i2) in config:
        out.add(norm_edge(labels[c1][i1], labels[c2][i2]))
    return frozenset(out)


def enumerate_family(
    tag: str,
    k: int,
    n: int,
    mode: str = "orbit",
    samples: int | None = None,
    seed: int | None = None,
    cap: int = DEFAULT_EXHAUSTIVE_CAP,
):
    """Yield family members for one of M1/M2/L1/L2/B1/B2.

    ``orbit``: one member per symmetry class of deleted-edge configurations.
    ``exhaustive``: every admissible E' (total count must stay under ``cap``).
    ``sample``: ``samples`` members drawn with the seeded generator; the
    deletion size is chosen uniformly over the allowed sizes, then a
    uniform subset of that size.
    """
    if tag not in FAMILY_TAGS:
        raise FamilyParameterError(f"unknown family tag {tag!r}")
    intact = _base_member(tag, k, n)
    kind = "F1" if tag.endswith("1") else "F2"
    pool = sorted(e1_edges(intact))
    sizes = [s for s in deletion_sizes(tag, k) if s <= len(pool)]
    if not sizes:
        raise FamilyParameterError(
            f"{tag}({n},{k}): deletion budget exceeds |E1|={len(pool)}"
        )
    if mode == "orbit":
        for size in sizes:
            for config in _orbit_configs(tag, k, n, size):
                deleted = _embed_config(config, intact.classification)
                if len(deleted) != size:
                    continue
                yield _with_deletions(intact, kind, deleted)
    elif mode == "exhaustive":
        total = sum(_ncr(len(pool), s) for s in sizes)
        if total > cap:
            raise EnumerationCapError(
                f"{tag}({n},{k}) exhaustive mode would yield {total} members (cap {cap})"
            )
        for size in sizes:
            for combo in itertools.combinations(pool, size):
                yield _with_deletions(intact, kind, frozenset(combo))
    elif mode == "sample":
        if samples is None or seed is None:
            raise FamilyParameterError("sample mode needs samples and seed")
        rng = random.Random(seed)
        for _ in range(samples):
            size = rng.choice(sizes)
            deleted = frozenset(rng.sample(pool, size))
            yield _with_deletions(intact, kind, deleted)
    else:
        raise FamilyParameterError(f"unknown mode {mode!r}")


def _ncr(n: int, r: int) -> int:
    import math

    return math.comb(n, r)


# -- section-5 variants ---------------------------------------------------


def make_M_prime(k: int, n: int) -> FamilyMember:
    """M_k(n) plus one X-X edge, minus two vertex-disjoint Z-Z edges."""
    if k < 3:
        raise FamilyParameterError(f"M' needs k >= 3, got k={k}")
    if n < 2 * k + 4:
        raise FamilyParameterError(
            f"M' needs n >= 2k+4 for two vertex-disjoint Z-Z deletions, got n={n}"
        )
    intact = make_M(k, n)
    x = sorted(intact.classification.X)
    z = sorted(intact.classification.Z)
    added = frozenset({norm_edge(x[0], x[1])})
    deleted = frozenset({norm_edge(z[0], z[1]), norm_edge(z[2], z[3])})
    g = add_edges(delete_edges(intact.graph, sorted(deleted)), sorted(added))
    return replace(intact, graph=g, kind="variant", deleted=deleted, added=added)


def make_B_prime(k: int, n: int) -> FamilyMember:
    """B_k(n) plus one X-X edge, minus two vertex-disjoint Z-W edges.

    The added edge joins two S-side vertices, so the result is not
    bipartite even though every other edge still crosses the original
    sides; the classification sets are kept.
    """
    if k < 3:
        raise FamilyParameterError(f"B' needs k >= 3, got k={k}")
    if n < 2 * k:
        raise FamilyParameterError(f"B' needs n >= 2k, got n={n}")
    intact = make_B(k, n)
    x = sorted(intact.classification.X)
    z = sorted(intact.classification.Z)
    w = sorted(intact.classification.W)
    added = frozenset({norm_edge(x[0], x[1])})
    deleted = frozenset({norm_edge(z[0], w[0]), norm_edge(z[1], w[1])})
    g = add_edges(delete_edges(intact.graph, sorted(deleted)), sorted(added))
    return replace(intact, graph=g, kind="variant", deleted=deleted, added=added)
