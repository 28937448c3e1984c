"""Finite-section eigensolvers for the pencil L u = lambda W u.

The section truncates to indices 1..N with u(0) = u(N+1) = 0, which makes L
a symmetric positive-definite tridiagonal matrix (p > 0, q >= 0) while the
diagonal weight W may be indefinite.  Two independent solvers cross-validate:
a shooting method on the recurrence and a Cholesky reduction of the reciprocal
pencil W u = mu L u to an ordinary symmetric eigenproblem.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import cholesky, eigh, solve_triangular

from .coeffs import CoefficientSet
from .errors import SolverOverflowError, ValidationError, WindowError
from .operators import InitKind, solve_recurrence

__all__ = [
    "FiniteSection",
    "SpectralResult",
    "finite_section",
    "shooting_function",
    "shooting_range",
    "eigen_shooting",
    "eigen_pencil",
    "DENSE_CAP",
]

DENSE_CAP = 512


@dataclass(frozen=True)
class FiniteSection:
    """Tridiagonal L and diagonal W of the Dirichlet truncation on 1..N."""

    N: int
    L_diag: np.ndarray      # p(n-1) + p(n) + q(n), n = 1..N
    L_offdiag: np.ndarray   # -p(n), n = 1..N-1
    W_diag: np.ndarray      # w(n), n = 1..N

    def L_matrix(self) -> np.ndarray:
        L = np.diag(self.L_diag)
        idx = np.arange(self.N - 1)
        L[idx, idx + 1] = self.L_offdiag
        L[idx + 1, idx] = self.L_offdiag
        return L

    def apply_L(self, u: np.ndarray) -> np.ndarray:
        out = self.L_diag * u
        out[:-1] += self.L_offdiag * u[1:]
        out[1:] += self.L_offdiag * u[:-1]
        return out


@dataclass(frozen=True)
class SpectralResult:
    """Sorted real eigenvalues with per-method diagnostics."""

    eigenvalues: list
    method: str
    residuals: list = field(default_factory=list)
    brackets: list = field(default_factory=list)
    no_finite_count: int = 0


def finite_section(coeffs: CoefficientSet, N: int) -> FiniteSection:
    """Assemble the N-by-N Dirichlet section matrices."""
    if N < 1:
        raise WindowError("need N >= 1")
    coeffs.p.require(0, N, "p")
    coeffs.q.require(1, N, "q")
    coeffs.w.require(1, N, "w")
    pv = coeffs.p.real_window(0, N)
    qv = coeffs.q.real_window(1, N)
    wv = coeffs.w.real_window(1, N)
    return FiniteSection(
        N=N,
        L_diag=pv[:-1] + pv[1:] + qv,
        L_offdiag=-pv[1:N],
        W_diag=wv.copy(),
    )


def shooting_function(coeffs: CoefficientSet, lam: float, N: int) -> float:
    """u_lam(N+1) for the solution with u(0) = 0, u(1) = 1; zeros are eigenvalues."""
    sol = solve_recurrence(coeffs, float(lam), InitKind.VALUE_PAIR, 0.0, 1.0, N)
    return sol.values.at(N + 1).real


def _scan_endpoint(coeffs: CoefficientSet, lams: np.ndarray, N: int) -> np.ndarray:
    """Sign-preserving rescaled u_lam(N+1) for a whole array of real lambdas.

    Rescaling by positive factors keeps the signs of the shooting function
    while avoiding overflow for growing solutions.
    """
    pv = coeffs.p.real_window(0, N)
    qv = coeffs.q.real_window(1, N)
    wv = coeffs.w.real_window(1, N)
    lams = np.asarray(lams, dtype=float)
    u_prev = np.zeros_like(lams)
    u_cur = np.ones_like(lams)
    for n in range(1, N + 1):
        u_next = ((pv[n] + pv[n - 1] + qv[n - 1] - lams * wv[n - 1]) * u_cur
                  - pv[n - 1] * u_prev) / pv[n]
        s = np.maximum(np.abs(u_next), np.abs(u_cur))
        s = np.where((s > 1e100) | ((s > 0) & (s < 1e-100)), s, 1.0)
        u_prev = u_cur / s
        u_cur = u_next / s
    if not np.all(np.isfinite(u_cur)):
        raise SolverOverflowError("shooting scan overflowed")
    return u_cur


def shooting_range(coeffs: CoefficientSet, N: int, margin: float = 1.05) -> tuple:
    """A symmetric lambda range containing every finite section eigenvalue.

    Gershgorin applied to the pencil row with the largest eigenvector entry:
    |lambda| |w(i)| <= |L_ii| + sum of |offdiagonals|, so the maximum of the
    row sums over |w| bounds the spectrum whenever w has no zero entries.
    """
    fs = finite_section(coeffs, N)
    rowsum = np.abs(fs.L_diag).astype(float)
    rowsum[:-1] += np.abs(fs.L_offdiag)
    rowsum[1:] += np.abs(fs.L_offdiag)
    wabs = np.abs(fs.W_diag)
    if np.any(wabs == 0):
        raise ValidationError("shooting range bound needs w without zero entries")
    B = float(np.max(rowsum / wabs)) * margin
    return (-B, B)


def _sturm_count(fs: FiniteSection, lams) -> np.ndarray:
    """Negative-pivot count of L - lam W, vectorized over real lam.

    The LDL^T pivots of the tridiagonal L - lam W follow a scalar recurrence;
    the number of negative pivots is the number of eigenvalues of L - lam W
    below zero.  Tiny pivots are pushed away from zero, sign-preserving.
    """
    lams = np.atleast_1d(np.asarray(lams, dtype=float))
    a, b, w = fs.L_diag, fs.L_offdiag, fs.W_diag
    pivmin = 1e-290

    def clamp(d):
        return np.where(np.abs(d) < pivmin, np.where(d < 0, -pivmin, pivmin), d)

    d = clamp(a[0] - lams * w[0])
    cnt = (d < 0).astype(np.int64)
    with np.errstate(over="ignore"):
        for i in range(1, fs.N):
            d = clamp(a[i] - lams * w[i] - b[i - 1] ** 2 / d)
            cnt += d < 0
    return cnt


def _signed_count(fs: FiniteSection, lams) -> np.ndarray:
    """Monotone root counter: counts pencil eigenvalues between 0 and lam.

    For lam > 0 this is the number of eigenvalues in (0, lam); for lam < 0,
    minus the number in (lam, 0).  Differences of this function count the
    eigenvalues in any interval, which catches roots a sign scan straddles.
    """
    lams = np.atleast_1d(np.asarray(lams, dtype=float))
    return np.where(lams >= 0, 1, -1) * _sturm_count(fs, lams)


def eigen_shooting(coeffs: CoefficientSet, N: int, lambda_min: float | None = None,
                   lambda_max: float | None = None, grid: int | None = None,
                   tol: float = 1e-12) -> SpectralResult:
    """Scan the shooting function for sign changes and bisect each bracket.

    The bisection stops at width tol * max(1, |lambda|); roots closer than
    10 * tol are merged.  Defaults: the Gershgorin-derived range and a grid
    of 512 * N points.  Grid cells holding an even number of roots produce
    no sign change; those are detected by the pivot count of L - lam W and
    split by count bisection until each bracket isolates one root.
    """
    if lambda_min is None or lambda_max is None:
        lambda_min, lambda_max = shooting_range(coeffs, N)
    if not lambda_min < lambda_max:
        raise ValidationError("need lambda_min < lambda_max")
    if grid is None:
        grid = 512 * N
    if grid < 2:
        raise ValidationError("need grid >= 2")
    if tol <= 0:
        raise ValidationError("need tol > 0")

    fs = finite_section(coeffs, N)
    xs = np.linspace(lambda_min, lambda_max, grid)
    fvals = _scan_endpoint(coeffs, xs, N)
    counts = _signed_count(fs, xs)

    exact = xs[fvals == 0.0]
    cells = np.nonzero(np.diff(counts) > 0)[0]

    def count_one(x):
        return int(_signed_count(fs, x)[0])

    # Split multi-root cells until each bracket isolates exactly one root.
    unit = []
    stack = [(float(xs[i]), float(xs[i + 1]), int(counts[i]), int(counts[i + 1]))
             for i in cells]
    while stack:
        lo, hi, clo, chi = stack.pop()
        if chi - clo == 1 or hi - lo <= tol * max(1.0, abs(lo), abs(hi)):
            unit.append((lo, hi, clo, chi))
            continue
        mid = 0.5 * (lo + hi)
        cmid = count_one(mid)
        if cmid > clo:
            stack.append((lo, mid, clo, cmid))
        if chi > cmid:
            stack.append((mid, hi, cmid, chi))

    brackets = [(lo, hi) for lo, hi, _, _ in sorted(unit)]
    if unit:
        lo = np.array([b[0] for b in unit])
        hi = np.array([b[1] for b in unit])
        clo = np.array([b[2] for b in unit])
        flo = _scan_endpoint(coeffs, lo, N)
        fhi = _scan_endpoint(coeffs, hi, N)
        # Sign bisection where the endpoint signs differ, count bisection
        # in brackets recovered from straddled cells.
        use_sign = flo * fhi < 0
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if np.all(hi - lo <= tol * np.maximum(1.0, np.abs(mid))):
                break
            fm = _scan_endpoint(coeffs, mid, N)
            cm = _signed_count(fs, mid)
            left = np.where(use_sign, flo * fm < 0, cm > clo)
            hit = use_sign & (fm == 0.0)
            hi = np.where(left | hit, mid, hi)
            flo = np.where(left | hit, flo, fm)
            lo = np.where(hit, mid, np.where(left, lo, mid))
        roots = 0.5 * (lo + hi)
    else:
        roots = np.empty(0)

    roots = np.sort(np.concatenate([roots, exact]))
    dedup = []
    for r in roots:
        if not dedup or r - dedup[-1] > 10 * tol * max(1.0, abs(r)):
            dedup.append(float(r))
    return SpectralResult(eigenvalues=dedup, method="shooting", brackets=brackets)


def eigen_pencil(coeffs: CoefficientSet, N: int, dense_cap: int = DENSE_CAP,
                 mu_cutoff: float | None = None) -> SpectralResult:
    """All finite eigenvalues of (L, W) via Cholesky reduction.

    Solves the reciprocal problem W u = mu L u: with L = C C^T the matrix
    C^-1 W C^-T is symmetric, its eigenvalues mu are real, and lambda = 1/mu
    for every |mu| above the cutoff (structural zeros of W give mu ~ 0 and
    no finite lambda).
    """
    if N > dense_cap:
        raise ValidationError(f"N={N} above the dense solver cap {dense_cap}")
    fs = finite_section(coeffs, N)
    if mu_cutoff is None:
        mu_cutoff = 1e-12 * float(np.max(np.abs(fs.W_diag), initial=0.0))

    C = cholesky(fs.L_matrix(), lower=True)  # fails iff L is not positive definite
    A = solve_triangular(C, np.diag(fs.W_diag), lower=True)
    M = solve_triangular(C, A.T, lower=True).T
    M = 0.5 * (M + M.T)
    mu, Y = eigh(M)

    finite = np.abs(mu) > mu_cutoff
    no_finite = int(np.sum(~finite))
    lam = 1.0 / mu[finite]
    U = solve_triangular(C.T, Y[:, finite], lower=False)

    order = np.argsort(lam)
    lam = lam[order]
    U = U[:, order]
    residuals = []
    for k in range(lam.size):
        u = U[:, k]
        res = np.linalg.norm(fs.apply_L(u) - lam[k] * fs.W_diag * u)
        residuals.append(float(res / np.linalg.norm(u)))
    return SpectralResult(eigenvalues=lam.tolist(), method="pencil",
                          residuals=residuals, no_finite_count=no_finite)
