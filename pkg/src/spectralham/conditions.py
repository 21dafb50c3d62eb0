"""Decision procedures for the spectral and edge-count Hamiltonicity theorems.

Each checker evaluates the hypotheses of one sufficient condition, decides
the spectral/edge inequality (exactly, wherever the threshold is rational),
recognizes membership in the exception families, and reports a structured
verdict: ``hamiltonian_guaranteed``, ``exception_member`` or
``not_applicable``. A ``hamiltonian_guaranteed`` verdict is only emitted
when every hypothesis holds, the inequality is certified and no exception
recognizer fires.
"""

from __future__ import annotations

import itertools
import json
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

from .families import FamilyMember, VertexClassification, make_B, deletion_sizes
from .graphs import (
    Graph,
    add_edges,
    balanced_bipartition,
    is_connected,
    iter_bits,
    mask_of,
    min_degree,
    norm_edge,
)
from .spectral import (
    DEFAULT_TOL,
    FLOAT_MARGIN,
    EigenEstimate,
    ThresholdVerdict,
    UndecidableComparisonError,
    compare_estimates,
    compare_threshold,
    lambda_max,
    q_max,
)

THM_NI16 = "THM_NI16"
THM_1 = "THM_1"
THM_LN_ADJ = "THM_LN_ADJ"
THM_LN_Q = "THM_LN_Q"
THM_2 = "THM_2"
EDGE_THM = "EDGE_THM"
EDGE_THM_BIP = "EDGE_THM_BIP"


def thm1_min_n(k: int) -> int:
    return k**4 + k**3 + 4 * k**2 + k + 6

def thm2_min_n(k: int) -> int:
    return k**4 + 3 * k**3 + 5 * k**2 + 5 * k + 4

def ni16_min_n(k: int) -> int:
    return k**3 + k + 4


@dataclass(frozen=True)
class Hypothesis:
    name: str
    holds: bool
    detail: str

    def as_dict(self) -> dict:
        return {"name": self.name, "holds": self.holds, "detail": self.detail}


@dataclass(frozen=True)
class ComparisonVerdict:
    """Graph-vs-graph spectral comparison (irrational reference)."""

    relation: str  # "<" | "=" | ">"
    reference: str
    method: str  # "certified-interval" | "isomorphism"
    margin: float | None = None

    def satisfies_geq(self) -> bool:
        return self.relation in (">", "=")

    def as_dict(self) -> dict:
        return {
            "relation": self.relation,
            "reference": self.reference,
            "method": self.method,
            "margin": self.margin,
        }


@dataclass(frozen=True)
class ExceptionInfo:
    kind: str  # e.g. "M1", "L1", "B1", "M", "L", "B", "subgraph-M", ...
    detail: str
    member: FamilyMember | None = None

    def as_dict(self) -> dict:
        out = {"kind": self.kind, "detail": self.detail}
        if self.member is not None:
            out["member"] = self.member.to_sidecar()
        return out


@dataclass(frozen=True)
class TheoremReport:
    theorem_id: str
    hypotheses: tuple[Hypothesis, ...]
    condition: ThresholdVerdict | ComparisonVerdict | None
    exception: ExceptionInfo | None
    conclusion: str  # "hamiltonian_guaranteed" | "exception_member" | "not_applicable"
    notes: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "hypotheses": [h.as_dict() for h in self.hypotheses],
            "condition": self.condition.as_dict() if self.condition else None,
            "exception": self.exception.as_dict() if self.exception else None,
            "conclusion": self.conclusion,
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)


def _conclude(
    hypotheses: list[Hypothesis],
    condition,
    exception: ExceptionInfo | None,
) -> str:
    if not all(h.holds for h in hypotheses):
        return "not_applicable"
    if condition is None or not condition.satisfies_geq():
        return "not_applicable"
    return "exception_member" if exception else "hamiltonian_guaranteed"


# -- family recognizers ----------------------------------------------------


@dataclass(frozen=True)
class RecognitionResult:
    member: FamilyMember | None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.member is not None


def _absent(reason: str) -> RecognitionResult:
    return RecognitionResult(None, reason)


def _degree_k_candidates(g: Graph, k: int) -> list[tuple[int, ...]] | None:
    """Candidate X-sets among the degree-k vertices, at most C(2k,k) of them."""
    deg_k = [v for v in range(g.n) if g.degree(v) == k]
    if len(deg_k) < k:
        return None
    if len(deg_k) == k:
        return [tuple(deg_k)]
    pool = deg_k[: 2 * k]
    return [tuple(c) for c in itertools.combinations(pool, k)]


def _missing_inside(g: Graph, vertices: list[int]) -> list[tuple[int, int]]:
    return [
        (u, v)
        for u, v in itertools.combinations(sorted(vertices), 2)
        if not g.has_edge(u, v)
    ]


def recognize_M1(g: Graph, k: int, budget: int | None = None) -> RecognitionResult:
    """Is g = M_k(n) - E' with E' inside Y∪Z and |E'| within budget?

    X is located as an independent k-set of degree-k vertices sharing one
    neighborhood Y; deletions never touch X's edges, so the fingerprint is
    exact whenever degree-k identification is unambiguous.
    """
    n = g.n
    if budget is None:
        budget = k * k // 4
    if k < 1 or n < 2 * k + 1:
        return _absent("parameters inadmissible")
    candidates = _degree_k_candidates(g, k)
    if candidates is None:
        return _absent("fewer than k vertices of degree k")
    for xs in candidates:
        x_mask = mask_of(xs)
        if any(g.adj[v] & x_mask for v in xs):
            continue  # X must be independent
        y_mask = g.adj[xs[0]]
        if any(g.adj[v] != y_mask for v in xs[1:]):
            continue
        if y_mask.bit_count() != k or y_mask & x_mask:
            continue
        ys = sorted(iter_bits(y_mask))
        zs = sorted(set(range(n)) - set(xs) - set(ys))
        missing = _missing_inside(g, ys + zs)
        if len(missing) > budget:
            return _absent(
                f"exceeds deletion budget: |E'|={len(missing)} > {budget}"
            )
        cls = VertexClassification(
            X=frozenset(xs), Y=frozenset(ys), Z=frozenset(zs)
        )
        kind = "intact" if not missing else "F1"
        member = FamilyMember(
            g, "M", kind, k, n, frozenset(norm_edge(*e) for e in missing), cls
        )
        return RecognitionResult(member)
    return _absent("no independent degree-k set with a common k-neighborhood")


def recognize_L1(g: Graph, k: int, budget: int | None = None) -> RecognitionResult:
    """Is g = L_k(n) - E'? X is a degree-k k-clique with one outside neighbor."""
    n = g.n
    if budget is None:
        budget = k // 4
    if k < 1 or n < k + 2:
        return _absent("parameters inadmissible")
    candidates = _degree_k_candidates(g, k)
    if candidates is None:
        return _absent("fewer than k vertices of degree k")
    for xs in candidates:
        x_mask = mask_of(xs)
        if any((g.adj[v] & x_mask) != (x_mask ^ (1 << v)) for v in xs):
            continue  # X must induce a clique
        outside = [g.adj[v] & ~x_mask for v in xs]
        if any(o != outside[0] or o.bit_count() != 1 for o in outside):
            continue
        y = outside[0].bit_length() - 1
        zs = sorted(set(range(n)) - set(xs) - {y})
        missing = _missing_inside(g, [y] + zs)
        if len(missing) > budget:
            return _absent(
                f"exceeds deletion budget: |E'|={len(missing)} > {budget}"
            )
        cls = VertexClassification(
            X=frozenset(xs), Y=frozenset([y]), Z=frozenset(zs)
        )
        kind = "intact" if not missing else "F1"
        member = FamilyMember(
            g, "L", kind, k, n, frozenset(norm_edge(*e) for e in missing), cls
        )
        return RecognitionResult(member)
    return _absent("no degree-k clique with a single shared outside neighbor")


def recognize_B1(g: Graph, k: int, budget: int | None = None) -> RecognitionResult:
    """Is g = B_k(n) - E' with E' inside Z x (Y∪W)?"""
    if budget is None:
        budget = k * k // 4
    if g.n % 2:
        return _absent("odd order cannot be balanced bipartite")
    n = g.n // 2
    if k < 1 or n < 2 * k:
        return _absent("parameters inadmissible")
    part = balanced_bipartition(g)
    if part is None:
        return _absent("not balanced bipartite")
    side_s = sorted(part)
    side_t = sorted(set(range(g.n)) - part)
    for s_side, t_side in ((side_s, side_t), (side_t, side_s)):
        xs = [v for v in s_side if g.degree(v) == k]
        if len(xs) != k:
            continue
        y_mask = g.adj[xs[0]]
        if any(g.adj[v] != y_mask for v in xs[1:]) or y_mask.bit_count() != k:
            continue
        ys = sorted(iter_bits(y_mask))
        if any(y not in t_side for y in ys):
            continue
        ws = sorted(set(t_side) - set(ys))
        zs = sorted(set(s_side) - set(xs))
        missing = [
            (z, t)
            for z in zs
            for t in ys + ws
            if not g.has_edge(z, t)
        ]
        if len(missing) > budget:
            return _absent(
                f"exceeds deletion budget: |E'|={len(missing)} > {budget}"
            )
        cls = VertexClassification(
            X=frozenset(xs), Y=frozenset(ys), Z=frozenset(zs), W=frozenset(ws)
        )
        kind = "intact" if not missing else "F1"
        member = FamilyMember(
            g, "B", kind, k, n, frozenset(norm_edge(*e) for e in missing), cls
        )
        return RecognitionResult(member)
    return _absent("no side has a degree-k X-set with a common k-neighborhood")


def reconstruct_intact(member: FamilyMember) -> Graph:
    """Add the recognized E' back; delete_edges of the result returns member.graph."""
    return add_edges(member.graph, sorted(member.deleted))


# -- subgraph-mode recognizers (for the edge theorems) ---------------------


def _bounded_cover_search(
    g: Graph,
    k: int,
    allowed_outside: int,
    require_independent: bool,
    candidates: list[int],
    node_cap: int = 200_000,
) -> tuple[int, ...] | None:
    """Find a k-set X with |N(X)\\X| <= allowed_outside by bounded DFS."""
    nodes = 0

    def dfs(chosen: list[int], start: int) -> tuple[int, ...] | None:
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            return None
        if len(chosen) == k:
            return tuple(chosen)
        chosen_mask = mask_of(chosen)
        union = 0
        for c in chosen:
            union |= g.adj[c]
        union &= ~chosen_mask
        for i in range(start, len(candidates)):
            v = candidates[i]
            if chosen_mask & (1 << v):
                continue
            if require_independent and (union | chosen_mask) & (1 << v) and (
                any((g.adj[v] >> c) & 1 for c in chosen)
            ):
                continue
            new_union = (union | g.adj[v]) & ~(chosen_mask | (1 << v))
            if new_union.bit_count() > allowed_outside:
                continue
            found = dfs(chosen + [v], i + 1)
            if found:
                return found
        return None

    return dfs([], 0)


def embeds_in_M(g: Graph, k: int) -> tuple[int, ...] | None:
    """Spanning embedding test g ⊆ M_k(n): an independent k-set whose
    joint outside neighborhood fits in k vertices."""
    if g.n < 2 * k + 1:
        return None
    candidates = sorted((v for v in range(g.n) if g.degree(v) <= k), key=g.degree)
    return _bounded_cover_search(g, k, k, True, candidates)


def embeds_in_L(g: Graph, k: int) -> tuple[int, ...] | None:
    """g ⊆ L_k(n): a k-set with at most one neighbor outside itself."""
    if g.n < k + 2:
        return None
    candidates = sorted((v for v in range(g.n) if g.degree(v) <= k), key=g.degree)
    return _bounded_cover_search(g, k, 1, False, candidates)


def embeds_in_B(g: Graph, k: int) -> tuple[int, ...] | None:
    """g ⊆ B_k(n): on one side, a k-set with at most k joint neighbors."""
    if g.n % 2:
        return None
    part = balanced_bipartition(g)
    if part is None:
        return None
    for side in (part, frozenset(range(g.n)) - part):
        candidates = sorted(
            (v for v in side if g.degree(v) <= k), key=g.degree
        )
        found = _bounded_cover_search(g, k, k, False, candidates)
        if found:
            return found
    return None


# -- reference spectra cache ------------------------------------------------

_REF_CACHE: dict[tuple, EigenEstimate] = {}

CACHE_ENV = "SPECTRALHAM_CACHE_DIR"


def _cache_path() -> str | None:
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    os.makedirs(root, exist_ok=True)
    return os.path.join(root, "reference_spectra.json")


def reference_spectrum(k: int, n: int, matrix: str, tol: float = DEFAULT_TOL) -> EigenEstimate:
    """Memoized spectral radius estimate of the bipartite reference B_k(n)."""
    key = ("B", k, n, matrix, f"{tol:.3e}")
    if key in _REF_CACHE:
        return _REF_CACHE[key]
    path = _cache_path()
    skey = "|".join(map(str, key))
    if path and os.path.exists(path):
        with open(path) as fh:
            stored = json.load(fh)
        if skey in stored:
            d = stored[skey]
            est = EigenEstimate(
                value=d["value"],
                lo=d["lo"],
                hi=d["hi"],
                residual=d["residual"],
                vector=None,
                converged=d["converged"],
                iterations=d["iterations"],
                engine=d["engine"],
            )
            _REF_CACHE[key] = est
            return est
    graph = make_B(k, n).graph
    est = q_max(graph, tol) if matrix == "Q" else lambda_max(graph, tol)
    _REF_CACHE[key] = est
    if path:
        stored = {}
        if os.path.exists(path):
            with open(path) as fh:
                stored = json.load(fh)
        stored[skey] = {
            "value": est.value,
            "lo": est.lo,
            "hi": est.hi,
            "residual": est.residual,
            "converged": est.converged,
            "iterations": est.iterations,
            "engine": est.engine,
        }
        with open(path, "w") as fh:
            json.dump(stored, fh, sort_keys=True)
    return est


# -- theorem checkers -------------------------------------------------------


def check_thm1(g: Graph, k: int, tol: float = DEFAULT_TOL) -> TheoremReport:
    """q(G) >= 2(n-k-1) forces a Hamilton cycle (exceptions: M1/L1 families)."""
    n = g.n
    delta = min_degree(g) if n else 0
    hyps = [
        Hypothesis("k > 1", k > 1, f"k={k}"),
        Hypothesis(
            "n >= k^4+k^3+4k^2+k+6",
            n >= thm1_min_n(k),
            f"n={n}, bound={thm1_min_n(k)}",
        ),
        Hypothesis("connected", is_connected(g), f"components counted on {n} vertices"),
        Hypothesis("min degree >= k", delta >= k, f"delta={delta}"),
    ]
    condition = compare_threshold(g, 2 * (n - k - 1), matrix="Q", tol=tol)
    exception = None
    notes = []
    rec = recognize_M1(g, k)
    if rec:
        exception = ExceptionInfo("M1", f"|E'|={len(rec.member.deleted)}", rec.member)
    else:
        notes.append(f"M1 recognizer: {rec.reason}")
        rec = recognize_L1(g, k)
        if rec:
            exception = ExceptionInfo("L1", f"|E'|={len(rec.member.deleted)}", rec.member)
        else:
            notes.append(f"L1 recognizer: {rec.reason}")
    return TheoremReport(
        THM_1,
        tuple(hyps),
        condition,
        exception,
        _conclude(hyps, condition, exception),
        tuple(notes),
    )


def check_thm2(g: Graph, k: int, tol: float = DEFAULT_TOL) -> TheoremReport:
    """q(G) >= 2n-k forces a Hamilton cycle in balanced bipartite graphs."""
    n = g.n // 2
    part = balanced_bipartition(g)
    delta = min_degree(g) if g.n else 0
    hyps = [
        Hypothesis("k > 1", k > 1, f"k={k}"),
        Hypothesis(
            "balanced bipartite on 2n vertices",
            g.n % 2 == 0 and part is not None,
            f"order={g.n}" + ("" if part is not None else ", no balanced bipartition"),
        ),
        Hypothesis(
            "n >= k^4+3k^3+5k^2+5k+4",
            n >= thm2_min_n(k),
            f"n={n}, bound={thm2_min_n(k)}",
        ),
        Hypothesis("min degree >= k", delta >= k, f"delta={delta}"),
    ]
    condition = compare_threshold(g, 2 * n - k, matrix="Q", tol=tol)
    exception = None
    notes = []
    rec = recognize_B1(g, k)
    if rec:
        exception = ExceptionInfo("B1", f"|E'|={len(rec.member.deleted)}", rec.member)
    else:
        notes.append(f"B1 recognizer: {rec.reason}")
    return TheoremReport(
        THM_2,
        tuple(hyps),
        condition,
        exception,
        _conclude(hyps, condition, exception),
        tuple(notes),
    )


def check_nikiforov(g: Graph, k: int, tol: float = DEFAULT_TOL) -> TheoremReport:
    """lambda(G) >= n-k-1 forces a Hamilton cycle (exceptions: M_k(n), L_k(n))."""
    n = g.n
    delta = min_degree(g) if n else 0
    hyps = [
        Hypothesis("k > 1", k > 1, f"k={k}"),
        Hypothesis(
            "n >= k^3+k+4", n >= ni16_min_n(k), f"n={n}, bound={ni16_min_n(k)}"
        ),
        Hypothesis("min degree >= k", delta >= k, f"delta={delta}"),
    ]
    notes = []
    if not is_connected(g):
        notes.append(
            "input is disconnected; the statement does not require connectivity"
        )
    condition = compare_threshold(g, n - k - 1, matrix="A", tol=tol)
    exception = None
    rec = recognize_M1(g, k, budget=0)
    if rec:
        exception = ExceptionInfo("M", "isomorphic to the intact M graph", rec.member)
    else:
        rec = recognize_L1(g, k, budget=0)
        if rec:
            exception = ExceptionInfo("L", "isomorphic to the intact L graph", rec.member)
    return TheoremReport(
        THM_NI16,
        tuple(hyps),
        condition,
        exception,
        _conclude(hyps, condition, exception),
        tuple(notes),
    )


def check_li_ning(
    g: Graph,
    k: int,
    variant: str = "signless",
    tol: float = DEFAULT_TOL,
    margin: float = FLOAT_MARGIN,
) -> TheoremReport:
    """Spectral radius at least that of B_k(n) forces a Hamilton cycle."""
    if variant not in ("adjacency", "signless"):
        raise ValueError(f"unknown variant {variant!r}")
    matrix = "A" if variant == "adjacency" else "Q"
    theorem_id = THM_LN_ADJ if variant == "adjacency" else THM_LN_Q
    n = g.n // 2
    part = balanced_bipartition(g)
    delta = min_degree(g) if g.n else 0
    hyps = [
        Hypothesis("k > 1", k > 1, f"k={k}"),
        Hypothesis(
            "balanced bipartite on 2n vertices",
            g.n % 2 == 0 and part is not None,
            f"order={g.n}",
        ),
        Hypothesis("n >= (k+1)^2", n >= (k + 1) ** 2, f"n={n}, bound={(k+1)**2}"),
        Hypothesis("min degree >= k", delta >= k, f"delta={delta}"),
    ]
    name = ("lambda" if matrix == "A" else "q") + f"(B_{k}({n}))"
    exception = None
    notes = []
    rec = recognize_B1(g, k, budget=0)
    if rec:
        exception = ExceptionInfo("B", "isomorphic to the reference B graph", rec.member)
        condition = ComparisonVerdict("=", name, "isomorphism", None)
    else:
        notes.append(f"B recognizer: {rec.reason}")
        condition = None
        if n >= 2 * k:
            current_tol = tol
            for _ in range(3):
                est_g = (lambda_max if matrix == "A" else q_max)(g, current_tol)
                est_ref = reference_spectrum(k, n, matrix, current_tol)
                try:
                    rel = compare_estimates(est_g, est_ref, margin)
                except UndecidableComparisonError:
                    current_tol /= 100
                    continue
                gap = (
                    est_g.lo - est_ref.hi if rel == ">" else est_ref.lo - est_g.hi
                )
                condition = ComparisonVerdict(rel, name, "certified-interval", gap)
                break
            if condition is None:
                raise UndecidableComparisonError(
                    f"{name} comparison undecidable down to tol={current_tol}"
                )
        else:
            notes.append(f"reference B_{k}({n}) undefined (n < 2k)")
    return TheoremReport(
        theorem_id,
        tuple(hyps),
        condition,
        exception,
        _conclude(hyps, condition, exception),
        tuple(notes),
    )


def check_edge_theorem(g: Graph, k: int) -> TheoremReport:
    """e(G) > C(n-k-1, 2) + (k+1)^2 forces a Hamilton cycle."""
    n = g.n
    delta = min_degree(g) if n else 0
    hyps = [
        Hypothesis("k >= 1", k >= 1, f"k={k}"),
        Hypothesis("n >= 6k+5", n >= 6 * k + 5, f"n={n}, bound={6 * k + 5}"),
        Hypothesis("min degree >= k", delta >= k, f"delta={delta}"),
    ]
    bound = math.comb(n - k - 1, 2) + (k + 1) ** 2
    relation = ">" if g.e > bound else ("=" if g.e == bound else "<")
    condition = ThresholdVerdict(relation, Fraction(bound), "exact-count", None)
    exception = None
    xs = embeds_in_L(g, k)
    if xs:
        exception = ExceptionInfo("subgraph-L", f"X-set {sorted(xs)}")
    else:
        xs = embeds_in_M(g, k)
        if xs:
            exception = ExceptionInfo("subgraph-M", f"X-set {sorted(xs)}")
    conclusion = "not_applicable"
    if all(h.holds for h in hyps) and relation == ">":
        conclusion = "exception_member" if exception else "hamiltonian_guaranteed"
    return TheoremReport(EDGE_THM, tuple(hyps), condition, exception, conclusion)


def check_edge_theorem_bip(g: Graph, k: int) -> TheoremReport:
    """e(G) > n(n-k-1) + (k+1)^2 forces a Hamilton cycle (balanced bipartite)."""
    n = g.n // 2
    part = balanced_bipartition(g)
    delta = min_degree(g) if g.n else 0
    hyps = [
        Hypothesis("k >= 1", k >= 1, f"k={k}"),
        Hypothesis(
            "balanced bipartite on 2n vertices",
            g.n % 2 == 0 and part is not None,
            f"order={g.n}",
        ),
        Hypothesis("n >= 2k+1", n >= 2 * k + 1, f"n={n}, bound={2 * k + 1}"),
        Hypothesis("min degree >= k", delta >= k, f"delta={delta}"),
    ]
    bound = n * (n - k - 1) + (k + 1) ** 2
    relation = ">" if g.e > bound else ("=" if g.e == bound else "<")
    condition = ThresholdVerdict(relation, Fraction(bound), "exact-count", None)
    xs = embeds_in_B(g, k)
    exception = ExceptionInfo("subgraph-B", f"X-set {sorted(xs)}") if xs else None
    conclusion = "not_applicable"
    if all(h.holds for h in hyps) and relation == ">":
        conclusion = "exception_member" if exception else "hamiltonian_guaranteed"
    return TheoremReport(EDGE_THM_BIP, tuple(hyps), condition, exception, conclusion)


ALL_CHECKERS = {
    THM_NI16: lambda g, k: check_nikiforov(g, k),
    THM_1: lambda g, k: check_thm1(g, k),
    THM_LN_ADJ: lambda g, k: check_li_ning(g, k, "adjacency"),
    THM_LN_Q: lambda g, k: check_li_ning(g, k, "signless"),
    THM_2: lambda g, k: check_thm2(g, k),
    EDGE_THM: lambda g, k: check_edge_theorem(g, k),
    EDGE_THM_BIP: lambda g, k: check_edge_theorem_bip(g, k),
}


# -- eigenvector structure propositions -------------------------------------


@dataclass(frozen=True)
class PropCheck:
    prop_id: str
    status: str  # "holds" | "fails" | "inconclusive" | "vacuous"
    witness: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool | None:
        if self.status in ("holds", "vacuous"):
            return True
        if self.status == "fails":
            return False
        return None

    def as_dict(self) -> dict:
        return {"prop_id": self.prop_id, "status": self.status, "witness": self.witness}


def _margin_status(margin: float, width: float) -> str:
    if margin > 10 * width:
        return "holds"
    if margin < -10 * width:
        return "fails"
    return "inconclusive"


def _strict_less(prop_id, lhs, rhs, width, extra=None) -> PropCheck:
    margin = rhs - lhs
    witness = {"lhs": lhs, "rhs": rhs, "margin": margin}
    if extra:
        witness.update(extra)
    return PropCheck(prop_id, _margin_status(margin, width), witness)


def _vacuous(prop_id, why) -> PropCheck:
    return PropCheck(prop_id, "vacuous", {"reason": why})


def eigvec_structure_report(
    member: FamilyMember, tol: float = DEFAULT_TOL
) -> list[PropCheck]:
    """Numeric checks of the Perron-vector structure statements for a
    maximal-deletion (F2) member.

    Strict inequalities need a margin above 10x the certified interval
    width; near-ties come back ``inconclusive`` rather than pass/fail.
    The two-sided location bounds with integer endpoints are decided by
    exact inertia instead of floats.
    """
    if member.kind != "F2":
        raise ValueError("structure report applies to F2 (maximal deletion) members")
    g = member.graph
    k, n = member.k, member.n
    est = q_max(g, tol)
    if not est.converged or est.vector is None:
        raise ValueError("eigenvector estimate did not converge to the needed width")
    width = est.width
    f = est.vector
    q_lo, q_hi = est.lo, est.hi
    ref = member.refined_classes()
    cls = member.classification
    checks: list[PropCheck] = []

    def fmax(vs):
        return max(f[v] for v in vs)

    def fmin(vs):
        return min(f[v] for v in vs)

    if member.base in ("M", "L"):
        rel = compare_threshold(g, 2 * n - 2 * k - 3, matrix="Q")
        checks.append(
            PropCheck(
                "prop_3_1",
                "holds" if rel.relation == ">" else "fails",
                {"relation": rel.relation, "threshold": 2 * n - 2 * k - 3},
            )
        )
    if member.base == "M":
        checks.append(
            _strict_less("prop_3_2", fmax(cls.X), k / (q_hi - k), width)
        )
        if ref["Y2"] and ref["Z1"]:
            checks.append(
                _strict_less("prop_3_3", fmax(ref["Y2"]), fmin(ref["Z1"]), width)
            )
        else:
            checks.append(_vacuous("prop_3_3", "Y2 empty"))
        if ref["Z2"] and ref["Z1"]:
            checks.append(
                _strict_less("prop_3_4", fmax(ref["Z2"]), fmin(ref["Z1"]), width)
            )
        else:
            checks.append(_vacuous("prop_3_4", "Z2 empty"))
        if ref["Y1"] and ref["Y2"]:
            checks.append(
                _strict_less("prop_3_5_p1", fmax(ref["Y2"]), fmin(ref["Y1"]), width)
            )
        else:
            checks.append(_vacuous("prop_3_5_p1", "Y1 or Y2 empty"))
        if ref["Y1"] and ref["Z1"]:
            checks.append(
                _strict_less("prop_3_5_p2", fmax(ref["Z1"]), fmin(ref["Y1"]), width)
            )
        else:
            checks.append(_vacuous("prop_3_5_p2", "Y1 empty"))
        spread = max(f) - fmin(cls.Y | cls.Z)
        bound = (k * k + 2 * k + 6) / (2 * (q_lo - n + 1))
        checks.append(
            _strict_less("prop_3_6", spread, bound, width, {"spread": spread})
        )
    elif member.base == "L":
        y = next(iter(cls.Y))
        checks.append(
            _strict_less("prop_3_7_p1", fmax(cls.X), k / (q_hi - k), width)
        )
        if ref["Z2"] and ref["Z1"]:
            checks.append(
                _strict_less("prop_3_7_p2", fmax(ref["Z2"]), fmin(ref["Z1"]), width)
            )
        else:
            checks.append(_vacuous("prop_3_7_p2", "Z2 empty"))
        if g.degree(y) <= n - 2 and ref["Z1"]:
            checks.append(
                _strict_less("prop_3_7_p3", f[y], fmin(ref["Z1"]), width)
            )
            checks.append(_vacuous("prop_3_7_p4", "d(y) <= n-2"))
        else:
            checks.append(_vacuous("prop_3_7_p3", "d(y) = n-1"))
            if ref["Z1"]:
                checks.append(
                    _strict_less("prop_3_7_p4", fmax(ref["Z1"]), f[y], width)
                )
            else:
                checks.append(_vacuous("prop_3_7_p4", "Z1 empty"))
        spread = max(f) - fmin(cls.Y | cls.Z)
        bound = (k * k + 2 * k + 6) / (2 * (q_lo - n + 1))
        checks.append(
            _strict_less("prop_3_7_p5", spread, bound, width, {"spread": spread})
        )
    else:  # B
        rel_lo = compare_threshold(g, 2 * n - k - 1, matrix="Q")
        rel_hi = compare_threshold(g, 2 * n - k + 1, matrix="Q")
        ok = rel_lo.relation in (">", "=") and rel_hi.relation in ("<", "=")
        checks.append(
            PropCheck(
                "prop_4_1_p1",
                "holds" if ok else "fails",
                {
                    "vs_2n-k-1": rel_lo.relation,
                    "vs_2n-k+1": rel_hi.relation,
                },
            )
        )
        checks.append(
            _strict_less("prop_4_1_p2", fmax(cls.X), k / (q_hi - k), width)
        )
        if ref["Y2"] and ref["W1"]:
            checks.append(
                _strict_less("prop_4_1_p3", fmax(ref["Y2"]), fmin(ref["W1"]), width)
            )
        else:
            checks.append(_vacuous("prop_4_1_p3", "Y2 empty"))
        if ref["Y1"] and cls.W:
            checks.append(
                _strict_less("prop_4_1_p4", fmax(cls.W), fmin(ref["Y1"]), width)
            )
        else:
            checks.append(_vacuous("prop_4_1_p4", "Y1 empty"))
        if ref["Y1"] and ref["Y2"]:
            checks.append(
                _strict_less("prop_4_1_p5", fmax(ref["Y2"]), fmin(ref["Y1"]), width)
            )
        else:
            checks.append(_vacuous("prop_4_1_p5", "Y1 or Y2 empty"))
        if ref["W2"] and ref["W1"]:
            checks.append(
                _strict_less("prop_4_1_p6", fmax(ref["W2"]), fmin(ref["W1"]), width)
            )
        else:
            checks.append(_vacuous("prop_4_1_p6", "W2 empty"))
        if ref["Z2"] and ref["Z1"]:
            checks.append(
                _strict_less("prop_4_1_p7", fmax(ref["Z2"]), fmin(ref["Z1"]), width)
            )
        else:
            checks.append(_vacuous("prop_4_1_p7", "Z2 empty"))
        spread = max(f) - fmin(cls.Y | cls.Z | cls.W)
        bound = (3 * k * k + 8 * k + 20) / (4 * (q_lo - n))
        checks.append(
            _strict_less("prop_4_1_p8", spread, bound, width, {"spread": spread})
        )
    return checks


def extremal_f2_member(
    tag: str, k: int, n: int, tol: float = DEFAULT_TOL
) -> tuple[FamilyMember, EigenEstimate, list]:
    """The orbit representative maximizing q (ties broken the way the
    structure statements assume: most surviving edges among Y, or the
    largest d(y) for the L family)."""
    from .families import enumerate_family

    scored = []
    for member in enumerate_family(tag, k, n, mode="orbit"):
        est = q_max(member.graph, tol)
        if tag.startswith("M"):
            tie = sum(
                1 for u, v in member.deleted
                if u in member.classification.Y and v in member.classification.Y
            )
            tie = -tie
        elif tag.startswith("L"):
            y = next(iter(member.classification.Y))
            tie = member.graph.degree(y)
        else:
            tie = -sum(
                1 for u, v in member.deleted
                if u in member.classification.Y or v in member.classification.Y
            )
        scored.append((est.value, tie, member.sort_key(), member, est))
    scored.sort(key=lambda t: (t[0], t[1], t[2]), reverse=True)
    best = scored[0]
    return best[3], best[4], scored
