"""Spectral radii of adjacency and signless-Laplacian matrices.

Two comparison routes, kept deliberately independent:

* a float engine (shifted power iteration with a dense-eigensolver
  fallback) that returns an interval [lo, hi] with lo the Rayleigh
  quotient of the returned vector and hi = value + residual;
* an exact route that decides the position of the top eigenvalue
  relative to any rational threshold by computing the inertia of
  M - t*I with fraction-free integer elimination (Sylvester's law),
  so strict/non-strict verdicts at the integer thresholds used by the
  Hamiltonicity conditions never rest on floating point.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

try:
    from gmpy2 import mpz, divexact as _divexact
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    mpz = int

    def _divexact(a, b):
        return a // b

from .graphs import Graph, component_masks, iter_bits, balanced_bipartition

DEFAULT_TOL = 1e-9
DEFAULT_ITERATION_CAP = 1_000_000
EXACT_N_CAP = 600
FLOAT_MARGIN = 1e-6  # below this, float verdicts defer to the exact path


class SpectralError(ValueError):
    pass


class UndecidableComparisonError(SpectralError):
    """A float interval straddles the threshold and no exact path applies."""


class TimeBudgetExceededError(SpectralError):
    """The exact elimination ran past its deadline."""


@dataclass(frozen=True)
class EigenEstimate:
    value: float
    lo: float
    hi: float
    residual: float
    vector: tuple[float, ...] | None
    converged: bool
    iterations: int
    engine: str  # "power" | "dense" | "closed"

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class ThresholdVerdict:
    relation: str  # "<" | "=" | ">"
    threshold: Fraction
    method: str  # "exact-inertia" | "certified-interval"
    margin: float | None = None

    def satisfies_geq(self) -> bool:
        return self.relation in (">", "=")

    def as_dict(self) -> dict:
        return {
            "relation": self.relation,
            "threshold": str(self.threshold),
            "method": self.method,
            "margin": self.margin,
        }


# -- matrices -------------------------------------------------------------


def _row_bits(mask: int, n: int) -> np.ndarray:
    raw = mask.to_bytes((n + 7) // 8, "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:n]


def adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=np.int64)
    for v in range(g.n):
        a[v] = _row_bits(g.adj[v], g.n)
    return a


def signless_laplacian(g: Graph) -> np.ndarray:
    q = adjacency_matrix(g)
    q[np.arange(g.n), np.arange(g.n)] = q.sum(axis=1)
    return q


# -- float engine ---------------------------------------------------------


def _power_top(mat: np.ndarray, shift: float, tol: float, itcap: int):
    """Power iteration on mat + shift*I from a positive start.

    Returns (rayleigh, unit vector, residual, iterations, converged).
    """
    n = mat.shape[0]
    m = mat.astype(np.float64)
    if shift:
        m = m + shift * np.eye(n)
    x = np.ones(n) + 1e-3 * (m.sum(axis=1) / max(1.0, m.sum()))
    x /= np.linalg.norm(x)
    rho = 0.0
    res = math.inf
    it = 0
    while it < itcap:
        y = m @ x
        it += 1
        norm_y = np.linalg.norm(y)
        if norm_y == 0.0:  # zero matrix block
            return 0.0 - shift, x, 0.0, it, True
        rho = float(x @ y)
        res = float(np.linalg.norm(y - rho * x))
        if res <= tol * 0.5:
            return rho - shift, x, res, it, True
        x = y / norm_y
        if it >= max(256, 4 * n):
            # slow convergence: tiny spectral gap -> dense fallback
            break
    return rho - shift, x, res, it, False


def _dense_top(mat: np.ndarray):
    vals, vecs = np.linalg.eigh(mat.astype(np.float64))
    idx = int(np.argmax(vals))
    x = vecs[:, idx]
    if x.sum() < 0:
        x = -x
    y = mat.astype(np.float64) @ x
    rho = float(x @ y)
    res = float(np.linalg.norm(y - rho * x))
    return rho, x, res


def _component_estimate(mat: np.ndarray, shift: float, tol: float, itcap: int):
    value, x, res, it, ok = _power_top(mat, shift, tol, itcap)
    engine = "power"
    if not ok:
        value, x, res = _dense_top(mat)
        engine = "dense"
        ok = res <= tol
        it += mat.shape[0]
    return value, x, res, it, ok, engine


def _extreme_eigen(g: Graph, matrix: str, tol: float, itcap: int) -> EigenEstimate:
    if g.n == 0:
        raise SpectralError("empty graph")
    full = signless_laplacian(g) if matrix == "Q" else adjacency_matrix(g)
    # adjacency matrices of bipartite components have -lambda_max in the
    # spectrum; the shift keeps power iteration from oscillating
    shift = float(max(g.degrees(), default=0) + 1) if matrix == "A" else 0.0
    best = None
    vec_full = np.zeros(g.n)
    total_it = 0
    all_ok = True
    for comp in component_masks(g):
        verts = list(iter_bits(comp))
        sub = full[np.ix_(verts, verts)]
        if sub.shape[0] == 1 and sub[0, 0] == 0:
            cand = (0.0, np.ones(1), 0.0, "closed")
        else:
            value, x, res, it, ok, engine = _component_estimate(sub, shift, tol, itcap)
            total_it += it
            all_ok = all_ok and ok
            cand = (value, x, res, engine)
        if best is None or cand[0] > best[0]:
            best = cand
            vec_full = np.zeros(g.n)
            vec_full[verts] = cand[1]
    engine = best[3]
    x = vec_full / np.linalg.norm(vec_full)
    y = full.astype(np.float64) @ x
    value = float(x @ y)
    res = float(np.linalg.norm(y - value * x))
    # pad for the rounding error of the float dot products themselves
    rowmax = float(np.max(np.abs(full).sum(axis=1)))
    pad = g.n * np.finfo(np.float64).eps * (abs(value) + rowmax)
    top = float(np.max(np.abs(vec_full)))
    vector = tuple(float(t) for t in vec_full / top) if top > 0 else None
    lo, hi = value - pad, value + res + pad
    return EigenEstimate(
        value=value,
        lo=lo,
        hi=hi,
        residual=res,
        vector=vector,
        converged=all_ok and (hi - lo) <= tol,
        iterations=total_it,
        engine=engine,
    )


def q_max(g: Graph, tol: float = DEFAULT_TOL, itcap: int = DEFAULT_ITERATION_CAP) -> EigenEstimate:
    """Certified interval around the largest signless-Laplacian eigenvalue."""
    return _extreme_eigen(g, "Q", tol, itcap)


def lambda_max(g: Graph, tol: float = DEFAULT_TOL, itcap: int = DEFAULT_ITERATION_CAP) -> EigenEstimate:
    """Certified interval around the largest adjacency eigenvalue."""
    return _extreme_eigen(g, "A", tol, itcap)


# -- quadratic forms ------------------------------------------------------


def rayleigh(g: Graph, x: Sequence) -> float | Fraction:
    """<Qx,x>/<x,x>; exact (Fraction) when every entry is int/Fraction."""
    if len(x) != g.n:
        raise SpectralError("vector length mismatch")
    exact = all(isinstance(t, (int, Fraction)) for t in x)
    if not any(x):
        raise SpectralError("zero vector")
    num = _q_form(g, x)
    den = sum(t * t for t in x)
    if exact:
        return Fraction(num, 1) / Fraction(den, 1)
    return num / den


def _q_form(g: Graph, x: Sequence):
    total = sum(g.degree(v) * x[v] * x[v] for v in range(g.n))
    for u, v in g.edges():
        total += 2 * x[u] * x[v]
    return total


def quadratic_form_delta(g1: Graph, g2: Graph, x: Sequence):
    """<Q(g1)x,x> - <Q(g2)x,x>; exact for int/Fraction vectors."""
    if g1.n != g2.n:
        raise SpectralError("graphs must share a vertex set")
    if len(x) != g1.n:
        raise SpectralError("vector length mismatch")
    return _q_form(g1, x) - _q_form(g2, x)


def fy_bound(g: Graph) -> Fraction:
    """Upper bound 2e/(n-1) + n - 2 for q of any graph on n >= 2 vertices."""
    if g.n < 2:
        raise SpectralError("bound needs n >= 2")
    return Fraction(2 * g.e, g.n - 1) + (g.n - 2)


def ln_bipartite_bound(g: Graph) -> Fraction:
    """Upper bound e/n + n for q of a balanced bipartite graph on 2n vertices."""
    part = balanced_bipartition(g)
    if part is None:
        raise SpectralError("bound applies to balanced bipartite graphs only")
    half = g.n // 2
    return Fraction(g.e, half) + half


def eigen_identity_residual(g: Graph, est: EigenEstimate) -> float:
    """max_v |(q - d(v)) f_v - sum_{u~v} f_u| for the estimate's vector."""
    if est.vector is None:
        raise SpectralError("estimate carries no vector")
    f = est.vector
    worst = 0.0
    for v in range(g.n):
        s = sum(f[u] for u in iter_bits(g.adj[v]))
        worst = max(worst, abs((est.value - g.degree(v)) * f[v] - s))
    return worst


def eigvec_difference_check(g: Graph, est: EigenEstimate, u: int, v: int) -> float:
    """Residual of the two-vertex eigenvector identity

    (q - d(u)) (f_u - f_v) = (d(u) - d(v)) f_v
        + sum_{s in N(u)\\N(v)} f_s - sum_{t in N(v)\\N(u)} f_t
    """
    if est.vector is None:
        raise SpectralError("estimate carries no vector")
    if u == v:
        raise SpectralError("u and v must differ")
    f = est.vector
    du, dv = g.degree(u), g.degree(v)
    only_u = g.adj[u] & ~g.adj[v]
    only_v = g.adj[v] & ~g.adj[u]
    rhs = (du - dv) * f[v]
    rhs += sum(f[s] for s in iter_bits(only_u))
    rhs -= sum(f[t] for t in iter_bits(only_v))
    lhs = (est.value - du) * (f[u] - f[v])
    return abs(lhs - rhs)


# -- exact rational inertia ----------------------------------------------


def _shifted_integer_matrix(mat: np.ndarray, t: Fraction) -> list[list]:
    """den*(mat - t*I) as arbitrary-precision integers (same inertia)."""
    n = mat.shape[0]
    num, den = t.numerator, t.denominator
    rows = [[mpz(int(mat[i, j])) * den for j in range(n)] for i in range(n)]
    for i in range(n):
        rows[i][i] -= num
    return rows


def inertia(rows: list[list], deadline: float | None = None) -> tuple[int, int, int]:
    """Signature (pos, zero, neg) of a symmetric integer matrix.

    Fraction-free symmetric elimination: entries stay integers (each is a
    minor of the permuted input), pivots are chosen on the diagonal, and a
    fully zero diagonal with a nonzero off-diagonal entry is handled as a
    hyperbolic 2x2 block contributing one positive and one negative
    eigenvalue. Eigenvalue signs come from the sign chain of successive
    leading principal minors.
    """
    n = len(rows)
    a = [row[:] for row in rows]
    active = list(range(n))
    pos = neg = zero = 0
    prev = mpz(1)
    while active:
        if deadline is not None and time.monotonic() > deadline:
            raise TimeBudgetExceededError("exact inertia ran past its time budget")
        pivot_idx = None
        best_bits = None
        for idx, r in enumerate(active):
            d = a[r][r]
            if d:
                bits = abs(d).bit_length()
                if best_bits is None or bits < best_bits:
                    best_bits = bits
                    pivot_idx = idx
        if pivot_idx is not None:
            r = active.pop(pivot_idx)
            p = a[r][r]
            if (p > 0) == (prev > 0):
                pos += 1
            else:
                neg += 1
            ar = a[r]
            for ii, i in enumerate(active):
                ai = a[i]
                air = ai[r]
                if air:
                    for j in active[ii:]:
                        val = _divexact(p * ai[j] - air * ar[j], prev)
                        ai[j] = val
                        a[j][i] = val
                else:
                    for j in active[ii:]:
                        val = _divexact(p * ai[j], prev)
                        ai[j] = val
                        a[j][i] = val
            prev = p
            continue
        # diagonal is all zero on the active set
        off = None
        for ii, r in enumerate(active):
            for s in active[ii + 1:]:
                if a[r][s]:
                    off = (r, s)
                    break
            if off:
                break
        if off is None:
            zero += len(active)
            break
        r, s = off
        active.remove(r)
        active.remove(s)
        pos += 1
        neg += 1
        b = a[r][s]
        prev2 = prev * prev
        for ii, i in enumerate(active):
            ai = a[i]
            air, ais = ai[r], ai[s]
            for j in active[ii:]:
                val = _divexact(
                    b * (air * a[s][j] + ais * a[r][j]) - b * b * ai[j], prev2
                )
                ai[j] = val
                a[j][i] = val
        prev = _divexact(-b * b, prev)
    return pos, zero, neg


def eig_counts_vs_threshold(
    g: Graph,
    t: Fraction | int,
    matrix: str = "Q",
    deadline: float | None = None,
) -> tuple[int, int, int]:
    """(above, equal, below) eigenvalue counts of Q or A against t, exactly."""
    t = Fraction(t)
    mat = signless_laplacian(g) if matrix == "Q" else adjacency_matrix(g)
    return inertia(_shifted_integer_matrix(mat, t), deadline)


def _interval_verdict(est: EigenEstimate, t: Fraction) -> ThresholdVerdict:
    tf = float(t)
    if est.lo > tf:
        return ThresholdVerdict(">", t, "certified-interval", est.lo - tf)
    if est.hi < tf:
        return ThresholdVerdict("<", t, "certified-interval", tf - est.hi)
    raise UndecidableComparisonError(
        f"interval [{est.lo}, {est.hi}] straddles threshold {t}"
    )


def compare_threshold(
    g: Graph,
    t: Fraction | int,
    matrix: str = "Q",
    exact_cap: int = EXACT_N_CAP,
    tol: float = DEFAULT_TOL,
    time_budget: float | None = None,
) -> ThresholdVerdict:
    """Relation of the top eigenvalue to a rational threshold.

    Within the size cap the verdict is exact (inertia of the shifted
    matrix); beyond it the certified float interval is used, and an
    interval that straddles the threshold raises rather than guessing.
    """
    t = Fraction(t)
    if g.n <= exact_cap:
        deadline = time.monotonic() + time_budget if time_budget else None
        try:
            above, equal, _ = eig_counts_vs_threshold(g, t, matrix, deadline)
        except TimeBudgetExceededError:
            pass
        else:
            if above:
                relation = ">"
            elif equal:
                relation = "="
            else:
                relation = "<"
            return ThresholdVerdict(relation, t, "exact-inertia", None)
    est = _extreme_eigen(g, matrix, tol, DEFAULT_ITERATION_CAP)
    return _interval_verdict(est, t)


def compare_q_threshold(g: Graph, t: Fraction | int, **kw) -> ThresholdVerdict:
    return compare_threshold(g, t, matrix="Q", **kw)


def compare_lambda_threshold(g: Graph, t: Fraction | int, **kw) -> ThresholdVerdict:
    return compare_threshold(g, t, matrix="A", **kw)


def bisect_extreme_eigenvalue(
    g: Graph,
    matrix: str = "Q",
    width: Fraction = Fraction(1, 10**10),
) -> tuple[Fraction, Fraction]:
    """Exact rational bracket of the top eigenvalue, to the given width.

    Independent of the float engine: pure bisection on the count of
    eigenvalues above the midpoint.
    """
    dmax = max(g.degrees(), default=0)
    if matrix == "Q":
        lo, hi = Fraction(0), Fraction(2 * max(dmax, 1))
    else:
        lo, hi = Fraction(-max(dmax, 1)), Fraction(max(dmax, 1))
    # ensure the bracket is valid: top eigenvalue <= hi by Gershgorin
    while hi - lo > width:
        mid = (lo + hi) / 2
        above, equal, _ = eig_counts_vs_threshold(g, mid, matrix)
        if above:
            lo = mid
        elif equal:
            return mid, mid
        else:
            hi = mid
    return lo, hi


def compare_estimates(
    a: EigenEstimate, b: EigenEstimate, margin: float = FLOAT_MARGIN
) -> str:
    """Certified relation between two float intervals: '<', '>' or raises."""
    if a.hi < b.lo and b.lo - a.hi > margin:
        return "<"
    if a.lo > b.hi and a.lo - b.hi > margin:
        return ">"
    raise UndecidableComparisonError(
        f"intervals [{a.lo},{a.hi}] and [{b.lo},{b.hi}] are not separated by {margin}"
    )
