"""The difference operator L, the recurrence solver, and the Wronskian.

L acts by (Lu)(n) = -D(p Du)(n-1) + q(n) u(n) for n >= 1, mapping a sequence
on 0..N+1 to one on 1..N.  Solutions of L u = lambda w u are produced by the
forward recurrence

    u(n+1) = [(p(n) + p(n-1) + q(n) - lambda w(n)) u(n) - p(n-1) u(n-1)] / p(n)

which is well defined because p is strictly positive.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .coeffs import CoefficientSet, Sequence
from .errors import SolverOverflowError, ValidationError, WindowError
from .space import BoundReport, inequality_report

__all__ = [
    "InitKind",
    "Solution",
    "WronskianValue",
    "apply_L",
    "solve_recurrence",
    "wronskian",
    "wronskian_sequence",
    "wronskian_constancy_report",
]


class InitKind(enum.Enum):
    """How the two initial data are interpreted."""

    VALUE_PAIR = "value_pair"                    # (u(0), u(1))
    VALUE_AND_QUASIDERIVATIVE = "value_and_quasiderivative"  # (u(1), (p Du)(0))


@dataclass(frozen=True)
class Solution:
    """A recurrence solution on 0..N+1, carrying its eigenparameter and seed data."""

    lam: complex
    init_kind: InitKind
    init: tuple
    values: Sequence


@dataclass(frozen=True)
class WronskianValue:
    at_index: int
    value: complex


def apply_L(coeffs: CoefficientSet, u: Sequence) -> Sequence:
    """Evaluate (Lu)(n) = -[p(n) Du(n) - p(n-1) Du(n-1)] + q(n) u(n) for n = 1..N.

    N is the largest interior index the windows of u, p and q allow.
    """
    if u.offset != 0:
        raise WindowError("u must start at index 0")
    N = min(u.end - 2, coeffs.p.end - 1, coeffs.q.end - 1)
    if N < 1:
        raise WindowError("insufficient window to apply L at any interior index")
    uv = u.window(0, N + 1)
    pv = coeffs.p.real_window(0, N)
    qv = coeffs.q.real_window(1, N)
    pdu = pv * np.diff(uv)  # (p Du)(n), n = 0..N
    out = -np.diff(pdu) + qv * uv[1 : N + 1]
    return Sequence(1, out)


def solve_recurrence(coeffs: CoefficientSet, lam: complex, init_kind: InitKind,
                     a: complex, b: complex, N: int) -> Solution:
    """Solve L u = lam w u forward up to index N+1 from two initial data.

    For VALUE_PAIR the data are (a, b) = (u(0), u(1)); for
    VALUE_AND_QUASIDERIVATIVE they are (a, b) = (u(1), (p Du)(0)), so
    u(0) = u(1) - b / p(0).  No rescaling is applied; non-finite growth
    raises SolverOverflowError.
    """
    if not np.isfinite(complex(lam).real) or not np.isfinite(complex(lam).imag):
        raise ValidationError("lambda must be finite")
    if N < 1:
        raise WindowError("need N >= 1")
    coeffs.p.require(0, N, "p")
    coeffs.q.require(1, N, "q")
    coeffs.w.require(1, N, "w")

    init_kind = InitKind(init_kind)
    if init_kind is InitKind.VALUE_PAIR:
        u0, u1 = complex(a), complex(b)
    else:
        u1 = complex(a)
        u0 = u1 - complex(b) / coeffs.p_at(0)

    pv = coeffs.p.real_window(0, N)
    qv = coeffs.q.real_window(1, N)
    wv = coeffs.w.real_window(1, N)

    u = np.empty(N + 2, dtype=np.complex128)
    u[0], u[1] = u0, u1
    with np.errstate(over="ignore", invalid="ignore"):
        for n in range(1, N + 1):
            u[n + 1] = ((pv[n] + pv[n - 1] + qv[n - 1] - lam * wv[n - 1]) * u[n]
                        - pv[n - 1] * u[n - 1]) / pv[n]
    if not np.all(np.isfinite(u.real)) or not np.all(np.isfinite(u.imag)):
        raise SolverOverflowError(
            f"recurrence overflowed before index {N + 1} (lambda={lam})"
        )
    return Solution(lam=complex(lam), init_kind=init_kind,
                    init=(complex(a), complex(b)), values=Sequence(0, u))


def _cross(f0, f1, t0, t1):
    """f0*t1 - f1*t0 with componentwise products, so swapping (f, t) flips
    the sign bitwise (complex a*b is not bitwise commutative in numpy)."""
    re = (f0.real * t1.real - f0.imag * t1.imag) - (f1.real * t0.real - f1.imag * t0.imag)
    im = (f0.real * t1.imag + f0.imag * t1.real) - (f1.real * t0.imag + f1.imag * t0.real)
    return re + 1j * im


def wronskian(coeffs: CoefficientSet, phi: Sequence, theta: Sequence,
              n: int) -> WronskianValue:
    """W(n) = p(n) (phi(n) Dtheta(n) - Dphi(n) theta(n)).

    Evaluated in the algebraically equal cross form
    p(n) (phi(n) theta(n+1) - phi(n+1) theta(n)), which is exactly
    antisymmetric in floating point.
    """
    phi.require(n, n + 1, "phi")
    theta.require(n, n + 1, "theta")
    pn = coeffs.p_at(n)
    f0, f1 = phi.at(n), phi.at(n + 1)
    t0, t1 = theta.at(n), theta.at(n + 1)
    return WronskianValue(n, complex(pn * _cross(f0, f1, t0, t1)))


def wronskian_sequence(coeffs: CoefficientSet, phi: Sequence,
                       theta: Sequence) -> Sequence:
    """W(n) over the largest shared window (vectorized)."""
    lo = max(phi.offset, theta.offset, coeffs.p.offset)
    hi = min(phi.end, theta.end) - 2
    hi = min(hi, coeffs.p.end - 1)
    if hi < lo:
        raise WindowError("no shared window for the Wronskian")
    fv = phi.window(lo, hi + 1)
    tv = theta.window(lo, hi + 1)
    pv = coeffs.p.real_window(lo, hi)
    w = pv * _cross(fv[:-1], fv[1:], tv[:-1], tv[1:])
    return Sequence(lo, w)


def wronskian_constancy_report(coeffs: CoefficientSet, phi: Solution,
                               theta: Solution) -> BoundReport:
    """Check max_n |W(n) - W(0)| against 1e-9 times the working magnitude.

    The magnitude scale includes the individual products inside W, which is
    where the cancellation error of growing solutions lives.
    """
    if phi.lam != theta.lam:
        raise ValidationError("Wronskian constancy needs a shared lambda")
    w = wronskian_sequence(coeffs, phi.values, theta.values)
    lo = w.offset
    fv = phi.values.window(lo, w.end)
    tv = theta.values.window(lo, w.end)
    pv = coeffs.p.real_window(lo, w.end - 1)
    term1 = np.abs(pv * fv[:-1] * tv[1:])
    term2 = np.abs(pv * fv[1:] * tv[:-1])
    w0 = w.values[0]
    lhs = float(np.max(np.abs(w.values - w0)))
    scale = max(1.0, abs(w0), float(np.max(term1)), float(np.max(term2)))
    return inequality_report(lhs, 1e-9 * scale, tolerance=0.0)
