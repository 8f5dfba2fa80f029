"""A_alpha matrices, their spectra, and closed-form spectral-radius bounds."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .graph import Graph, is_connected

RESIDUAL_TOL = 1e-10
TRACE_TOL = 1e-10
JACOBI_MAX_SWEEPS = 100


class SpectralError(ArithmeticError):
    """Eigensolver failed its convergence or accuracy contract."""


@dataclass(frozen=True)
class AlphaValue:
    """A point of [0, 1); ``label`` keeps the exact text (e.g. ``"7/9"``) for reports."""

    value: float
    label: Optional[str] = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.value < 1.0:
            raise ValueError(f"alpha {self.value} outside [0, 1)")

    @classmethod
    def parse(cls, text: Union[str, float, Fraction, "AlphaValue"]) -> "AlphaValue":
        if isinstance(text, AlphaValue):
            return text
        if isinstance(text, str):
            frac = Fraction(text.strip())
            return cls(float(frac), text.strip())
        if isinstance(text, Fraction):
            return cls(float(text), str(text))
        return cls(float(text), None)

    def __str__(self) -> str:
        return self.label if self.label is not None else repr(self.value)

    def __float__(self) -> float:
        return self.value


AlphaLike = Union[float, AlphaValue, Fraction, str]


def _alpha(alpha: AlphaLike) -> float:
    if isinstance(alpha, (AlphaValue, str)):
        return AlphaValue.parse(alpha).value
    return float(alpha)


def adjacency_matrix(g: Graph) -> np.ndarray:
    m = np.zeros((g.n, g.n))
    for u, v in g.edges():
        m[u, v] = m[v, u] = 1.0
    return m


def a_alpha(g: Graph, alpha: AlphaLike) -> np.ndarray:
    """Dense ``alpha*D + (1-alpha)*A``."""
    a = _alpha(alpha)
    m = (1.0 - a) * adjacency_matrix(g)
    m[np.diag_indices(g.n)] = [a * d for d in g.degrees()]
    return m


# --------------------------------------------------------------------------
# eigensolvers
# --------------------------------------------------------------------------


def eigen_symmetric(m: np.ndarray, vectors: bool = False):
    """All eigenvalues of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps until the off-diagonal Frobenius mass drops below
    ``1e-14 * ||m||_F`` (at most 100 sweeps). Eigenvalues come back in
    descending order; with ``vectors=True`` the matching eigenvectors are the
    columns of the second return value.
    """
    a = np.array(m, dtype=float, copy=True)
    n = a.shape[0]
    if a.shape != (n, n) or not np.allclose(a, a.T, rtol=0.0, atol=1e-12 * max(1.0, float(np.abs(a).max(initial=0.0)))):
        raise SpectralError("matrix is not square and symmetric")
    v = np.eye(n)
    target = 1e-14 * np.linalg.norm(a)

    def off_mass() -> float:
        # summed directly: ||a||^2 - ||diag||^2 cancels down to sqrt(eps)*||a||
        return math.sqrt(2.0 * float(np.sum(np.triu(a, 1) ** 2)))

    sweeps = 0
    while off_mass() > target:
        if sweeps == JACOBI_MAX_SWEEPS:
            raise SpectralError(f"Jacobi did not converge; off-diagonal mass {off_mass():.3e}")
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                diff = a[q, q] - a[p, p]
                if abs(diff) > 1e150 * abs(apq):
                    t = apq / diff  # tau huge: t ~ 1/(2 tau) without overflow
                else:
                    tau = diff / (2.0 * apq)
                    t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                colp, colq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * colp - s * colq
                a[:, q] = s * colp + c * colq
                rowp, rowq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rowp - s * rowq
                a[q, :] = s * rowp + c * rowq
                a[p, q] = a[q, p] = 0.0
                colp, colq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * colp - s * colq
                v[:, q] = s * colp + c * colq
    vals = np.diag(a).copy()
    order = np.argsort(-vals, kind="stable")
    if vectors:
        return vals[order], v[:, order]
    return vals[order]


@dataclass(frozen=True)
class SpectralResult:
    lam: float
    perron: tuple[float, ...]
    residual: float
    eigenvalues: tuple[float, ...]
    alpha: float
    connected: bool


def spectral_radius(g: Graph, alpha: AlphaLike, method: str = "lapack") -> SpectralResult:
    """lambda_alpha(g) with its unit Perron vector.

    ``method="lapack"`` uses ``numpy.linalg.eigh``; ``"jacobi"`` uses
    :func:`eigen_symmetric`. Either way the residual ``||Mx - lam x||_inf``
    must be at most 1e-10 and the eigenvalues must sum to ``2*alpha*m``
    within 1e-10, else :class:`SpectralError`. The vector's sign is fixed so
    its entries sum positive; positivity itself only holds for connected g.
    """
    a = _alpha(alpha)
    m = a_alpha(g, a)
    if method == "lapack":
        vals, vecs = np.linalg.eigh(m)
        vals, vecs = vals[::-1], vecs[:, ::-1]
    elif method == "jacobi":
        vals, vecs = eigen_symmetric(m, vectors=True)
    else:
        raise ValueError(f"unknown eigensolver {method!r}")
    lam = float(vals[0])
    x = vecs[:, 0]
    x = x / np.linalg.norm(x)
    if x.sum() < 0:
        x = -x
    residual = float(np.max(np.abs(m @ x - lam * x)))
    if residual > RESIDUAL_TOL:
        raise SpectralError(f"residual {residual:.3e} exceeds {RESIDUAL_TOL}")
    trace_gap = abs(float(np.sum(vals)) - 2.0 * a * g.edge_count)
    if trace_gap > TRACE_TOL:
        raise SpectralError(f"eigenvalue sum off the trace by {trace_gap:.3e}")
    return SpectralResult(lam, tuple(float(t) for t in x), residual, tuple(float(t) for t in vals), a, is_connected(g))


def lam(g: Graph, alpha: AlphaLike) -> float:
    """Shorthand for ``spectral_radius(g, alpha).lam``."""
    return spectral_radius(g, alpha).lam


# --------------------------------------------------------------------------
# bounds
# --------------------------------------------------------------------------


def bound_lower_star(delta_max: int, alpha: AlphaLike) -> float:
    """Lower bound on lambda_alpha from the maximum degree; tight on K_{1,Delta}."""
    a = _alpha(alpha)
    d = delta_max
    return 0.5 * (a * (d + 1) + math.sqrt(a * a * (d + 1) ** 2 + 4 * d * (1 - 2 * a)))


def bound_lower_star_piecewise(delta_max: int, alpha: AlphaLike) -> float:
    """Weaker closed form: ``alpha(Delta+1)`` below 1/2, ``alpha*Delta + (1-alpha)^2/alpha`` from 1/2."""
    a = _alpha(alpha)
    if a <= 0.5:
        return a * (delta_max + 1)
    return a * delta_max + (1 - a) ** 2 / a


def bound_sandwich(g: Graph, alpha: AlphaLike) -> tuple[float, float]:
    """``(2m/n, max over edges uv of alpha d(u) + (1-alpha) d(v))``, both orientations."""
    a = _alpha(alpha)
    deg = g.degrees()
    upper = 0.0
    for u, v in g.edges():
        upper = max(upper, a * deg[u] + (1 - a) * deg[v], a * deg[v] + (1 - a) * deg[u])
    return 2.0 * g.edge_count / g.n, upper


# --------------------------------------------------------------------------
# eigenvector ratio on the G12 caterpillar
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class RatioTerms:
    lam: float
    a: tuple[float, float, float, float]
    b: float
    predicted_ratio: float  # b / (lam - alpha(m1+1) - a1 - b)
    observed_ratio: float  # x_{u1} / x_{u2} from the refined Perron vector


def _alpha_exact(alpha: AlphaLike) -> Fraction:
    if isinstance(alpha, (str, AlphaValue)):
        al = AlphaValue.parse(alpha)
        if al.label is not None:
            return Fraction(al.label)
        return Fraction(al.value)
    return Fraction(alpha)


def rayleigh_exact(g: Graph, alpha: AlphaLike, x) -> Fraction:
    """``x^T A_alpha x / x^T x`` in exact arithmetic for a float vector x.

    Off by only O(|x - v|^2) from the eigenvalue of the eigenvector v near x,
    so it pins lambda far below float64 spacing.
    """
    a = _alpha_exact(alpha)
    xs = [Fraction(t) for t in x]
    num = sum(a * g.degree(v) * xs[v] * xs[v] for v in range(g.n))
    num += 2 * (1 - a) * sum(xs[u] * xs[v] for u, v in g.edges())
    return num / sum(t * t for t in xs)


def _tree_shift_solve(g: Graph, a: Fraction, sigma: Fraction, rhs) -> list[Fraction]:
    """Exact solution of ``(A_alpha - sigma I) y = rhs`` on a tree, leaves first."""
    from .graph import is_tree

    if not is_tree(g):
        raise ValueError("exact shifted solve needs a tree")
    off = 1 - a
    parent = [-1] * g.n
    order = [0]
    for v in order:
        for w in g.neighbors(v):
            if w != parent[v] and w != 0:
                parent[w] = v
                order.append(w)
    piv = [a * g.degree(v) - sigma for v in range(g.n)]
    r = [Fraction(t) for t in rhs]
    for v in reversed(order[1:]):
        p = parent[v]
        piv[p] -= off * off / piv[v]
        r[p] -= off * r[v] / piv[v]
    y = [Fraction(0)] * g.n
    y[0] = r[0] / piv[0]
    for v in order[1:]:
        y[v] = (r[v] - off * y[parent[v]]) / piv[v]
    return y


def refine_perron_exact(g: Graph, alpha: AlphaLike, x) -> tuple[Fraction, list[Fraction]]:
    """One exact inverse-iteration step on a tree's Perron vector.

    The shift is the exact Rayleigh quotient of ``x``. Contamination by a
    nearly degenerate second eigenvector shrinks by |shift - lam1| / gap,
    which float64 solvers cannot deliver when the gap is around 1e-8.
    Returns the Rayleigh quotient of the refined vector and the vector,
    scaled so its entries sum to 1.
    """
    a = _alpha_exact(alpha)
    sigma = rayleigh_exact(g, alpha, x)
    y = _tree_shift_solve(g, a, sigma, x)
    total = sum(y)
    y = [t / total for t in y]
    return rayleigh_exact(g, alpha, y), y


def eigen_ratio_terms(spec, alpha: AlphaLike) -> RatioTerms:
    """Pendant and spine terms of the G12 eigen-equations and the u1/u2 ratio.

    ``a_i = (1-alpha)^2 m_i / (lam - alpha)`` and
    ``b = (1-alpha)^2 / (lam - 2 alpha)``. Eliminating the pendant and the
    spine vertex ``w1`` from the eigen-equation at ``u1`` gives
    ``x_{u1}/x_{u2} = b / (lam - alpha(m1+1) - a1 - b)``, returned next to
    the ratio read off the Perron vector.

    The denominator nearly cancels when u1 dominates (ratios in the
    hundreds), which magnifies a float64 error in lam by about
    ratio^2 / b, and symmetric instances have a second eigenvalue within
    1e-8 of lam, which spoils float64 eigenvectors. Both sides are therefore
    taken from :func:`refine_perron_exact` and evaluated exactly.
    """
    from .families import FamilySpec, make

    if not isinstance(spec, FamilySpec):
        spec = FamilySpec.parse(spec)
    if spec.kind != "g12":
        raise ValueError(f"ratio terms are defined for g12 only, got {spec.kind}")
    g = make(spec)
    res = spectral_radius(g, alpha)
    a = _alpha_exact(alpha)
    lam_, y = refine_perron_exact(g, alpha, res.perron)
    if lam_ <= 2 * a:
        raise SpectralError("lambda must exceed 2*alpha for the ratio terms")
    m = spec.params
    coef = (1 - a) ** 2
    ai = tuple(coef * mi / (lam_ - a) for mi in m)
    b = coef / (lam_ - 2 * a)
    predicted = b / (lam_ - a * (m[0] + 1) - ai[0] - b)
    observed = y[0] / y[1]
    return RatioTerms(float(lam_), tuple(float(t) for t in ai), float(b), float(predicted), float(observed))


def perron_positive(res: SpectralResult) -> bool:
    return all(x > 0 for x in res.perron)

