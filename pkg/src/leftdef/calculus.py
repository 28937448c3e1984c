"""Forward-difference calculus and its summation identities as residual checks.

Each residual function evaluates both sides of an identity independently and
returns the worst absolute discrepancy; the contract is that the result stays
below 1e-12 times the magnitude scale of the data.
"""

from __future__ import annotations

import numpy as np

from .coeffs import Sequence
from .errors import WindowError

__all__ = [
    "forward_difference",
    "product_rule_residual",
    "summation_by_parts_residual",
    "greens_identity_residual",
    "RESIDUAL_TOL",
]

RESIDUAL_TOL = 1e-12


def forward_difference(u: Sequence) -> Sequence:
    """(Du)(n) = u(n+1) - u(n), on the same offset, one entry shorter."""
    if len(u) < 2:
        raise WindowError("forward difference needs length >= 2")
    return Sequence(u.offset, np.diff(u.values))


def _check_aligned(f: Sequence, g: Sequence):
    if f.offset != g.offset or len(f) != len(g):
        raise WindowError("sequences must share offset and length")


def product_rule_residual(f: Sequence, g: Sequence) -> float:
    """Max deviation in D(fg)(n) = g(n+1) Df(n) + f(n) Dg(n) over the window."""
    _check_aligned(f, g)
    if len(f) < 2:
        raise WindowError("product rule needs length >= 2")
    fv, gv = f.values, g.values
    lhs = np.diff(fv * gv)
    rhs = gv[1:] * np.diff(fv) + fv[:-1] * np.diff(gv)
    return float(np.max(np.abs(lhs - rhs)))


def summation_by_parts_residual(f: Sequence, g: Sequence, j: int, N: int) -> float:
    """Residual of the summation-by-parts formula over n = j..N.

    Compares sum g(n+1) Df(n) against (fg)(N+1) - (fg)(j) - sum f(n) Dg(n).
    """
    _check_aligned(f, g)
    if j > N:
        raise WindowError("need j <= N")
    f.require(j, N + 1, "f")
    g.require(j, N + 1, "g")
    fv = f.window(j, N + 1)
    gv = g.window(j, N + 1)
    lhs = np.sum(gv[1:] * np.diff(fv))
    rhs = fv[-1] * gv[-1] - fv[0] * gv[0] - np.sum(fv[:-1] * np.diff(gv))
    return float(abs(lhs - rhs))


def greens_identity_residual(p: Sequence, u: Sequence, v: Sequence, N: int) -> float:
    """Residual of the discrete Green identity over n = 1..N.

    Compares sum (p Du)(n) conj(Dv(n)) against the boundary terms
    (p Du)(N) conj(v(N+1)) - (p Du)(0) conj(v(1)) minus
    sum D(p Du)(n-1) conj(v(n)).  Conjugation sits on the second argument.
    """
    if N < 1:
        raise WindowError("need N >= 1")
    p.require(0, N, "p")
    u.require(0, N + 1, "u")
    v.require(0, N + 1, "v")
    pv = p.window(0, N)
    uv = u.window(0, N + 1)
    vv = v.window(0, N + 1)
    pdu = pv * np.diff(uv)          # (p Du)(n), n = 0..N
    lhs = np.sum(pdu[1:] * np.conj(np.diff(vv)[1:]))
    rhs = (
        pdu[-1] * np.conj(vv[-1])
        - pdu[0] * np.conj(vv[1])
        - np.sum(np.diff(pdu) * np.conj(vv[1 : N + 1]))
    )
    return float(abs(lhs - rhs))
