"""Batched log-barrier Newton method for the per-piece weight problem.

Each row of the batch is one problem

    minimize    c @ x
    subject to  log(2^(-A_j @ x) + 2^(-B_j @ x)) <= 0   for every j
                0 < x < upper

All rows share A, B and the bound; only the cost vector differs. Iterates
stay strictly feasible, so whatever comes back satisfies every branching
constraint with slack <= 1.
"""
from __future__ import annotations

import numpy as np

LN2 = float(np.log(2.0))


def _constraint_values(x, A, B):
    z1 = -LN2 * (x @ A.T)
    z2 = -LN2 * (x @ B.T)
    hi = np.maximum(z1, z2)
    h = hi + np.log(np.exp(z1 - hi) + np.exp(z2 - hi))
    return h, z1, z2


def _barrier_value(x, t, cost, A, B, upper):
    h, _, _ = _constraint_values(x, A, B)
    bad = (h >= 0).any(1) | (x <= 0).any(1) | (x >= upper).any(1)
    with np.errstate(invalid="ignore", divide="ignore"):
        val = t * (cost * x).sum(1) - np.log(-h).sum(1) - np.log(x).sum(1) - np.log(upper - x).sum(1)
    val[bad] = np.inf
    return val


def solve(
    cost: np.ndarray,
    A: np.ndarray,
    B: np.ndarray,
    upper: float = 50.0,
    t_final: float = 1e9,
    growth: float = 15.0,
    start: float = 5.0,
    newton_tol: float = 1e-9,
    max_newton: int = 100,
) -> np.ndarray:
    """Minimize each row's linear cost; returns the (P, nv) minimizers.

    The duality gap at exit is at most (m + 2 nv) / t_final per row.
    """
    cost = np.atleast_2d(np.asarray(cost, dtype=float))
    P, nv = cost.shape
    x = np.full((P, nv), float(start))
    if P == 0:
        return x
    D = A - B
    DD = np.einsum("mi,mj->mij", D, D).reshape(len(D), nv * nv)
    eye = np.eye(nv)
    t = 1.0
    while True:
        for _ in range(max_newton):
            h, z1, z2 = _constraint_values(x, A, B)
            p1 = 1.0 / (1.0 + np.exp(z2 - z1))
            p2 = 1.0 - p1
            s = -h
            gh = -LN2 * (p1[..., None] * A + p2[..., None] * B) / s[..., None]
            grad = t * cost + gh.sum(1) - 1.0 / x + 1.0 / (upper - x)
            curv = (LN2 * LN2) * p1 * p2 / s
            H = (curv @ DD).reshape(P, nv, nv)
            H += np.matmul(gh.transpose(0, 2, 1), gh)
            H += (1.0 / x**2 + 1.0 / (upper - x) ** 2)[:, :, None] * eye
            dx = -np.linalg.solve(H, grad[..., None])[..., 0]
            dec = -(grad * dx).sum(1)
            done = dec < newton_tol
            if done.all():
                break
            f0 = _barrier_value(x, t, cost, A, B, upper)
            step = np.where(done, 0.0, 1.0)
            for _ in range(60):
                trial = _barrier_value(x + step[:, None] * dx, t, cost, A, B, upper)
                ok = done | (trial <= f0 - 0.25 * step * dec)
                if ok.all():
                    break
                step = np.where(ok, step, 0.5 * step)
            else:
                step = np.where(ok, step, 0.0)
            x = x + step[:, None] * dx
        if t >= t_final:
            return x
        t = min(t * growth, t_final)
