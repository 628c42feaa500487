"""Small convex solvers shared by the measure implementations.

The weight and robustness measures reduce, in oblique coordinates, to
linear objectives over spectrahedra with diagonal decision variables:

    weight:      maximize sum(w)  s.t.  0 <= diag(w) <= R
    robustness:  minimize sum(y)  s.t.  diag(y) >= R   (value = sum(y) - 1)

Both are solved by a damped-Newton log-det barrier method with barrier
continuation, which converges to well below the test tolerances for the
d <= 8 instances this package targets.  The relative-entropy projection
onto the free simplex uses exponentiated-gradient (mirror) descent.
"""

import numpy as np

BARRIER_T0 = 1.0
BARRIER_TMIN = 1e-9
BARRIER_SHRINK = 0.12
NEWTON_MAX = 60


def _newton_stage(x, grad_hess, feasible, t):
    """Damped Newton on f_t at fixed barrier weight t."""
    iters = 0
    for _ in range(NEWTON_MAX):
        g, H = grad_hess(x, t)
        try:
            dx = np.linalg.solve(H, -g)
        except np.linalg.LinAlgError:
            dx = -g
        decrement = float(-g @ dx)
        if decrement < 1e-14:
            break
        alpha = 1.0
        while alpha > 1e-12:
            trial = x + alpha * dx
            if feasible(trial):
                break
            alpha *= 0.5
        else:
            break
        x = x + alpha * dx
        iters += 1
        if decrement * alpha < 1e-13:
            break
    return x, iters


def max_weight_diagonal(R: np.ndarray, eps: float = 1e-9):
    """Maximize sum(w) subject to w >= 0 and diag(w) <= R + eps*I.

    Returns (w, iterations).  The eps ridge guarantees a strictly feasible
    interior even for rank-deficient R; it perturbs the optimum by O(d*eps).
    """
    d = R.shape[0]
    Re = R + eps * np.eye(d)
    lam_min = float(np.linalg.eigvalsh(Re).min())
    w = np.full(d, max(lam_min, eps) * 0.5)

    def feasible(w):
        if np.min(w) <= 0:
            return False
        return float(np.linalg.eigvalsh(Re - np.diag(w)).min()) > 0

    def grad_hess(w, t):
        Minv = np.linalg.inv(Re - np.diag(w))
        g = -1.0 + t * np.diag(Minv).real - t / w
        H = t * (np.abs(Minv) ** 2) + np.diag(t / w**2)
        return g, H

    total = 0
    t = BARRIER_T0
    while t >= BARRIER_TMIN:
        w, it = _newton_stage(w, grad_hess, feasible, t)
        total += it
        t *= BARRIER_SHRINK
    return w, total


def min_dominating_diagonal(R: np.ndarray):
    """Minimize sum(y) subject to diag(y) >= R.  Returns (y, iterations)."""
    d = R.shape[0]
    lam_max = float(np.linalg.eigvalsh(R).max())
    y = np.full(d, lam_max + 1.0)

    def feasible(y):
        return float(np.linalg.eigvalsh(np.diag(y) - R).min()) > 0

    def grad_hess(y, t):
        Ninv = np.linalg.inv(np.diag(y) - R)
        g = 1.0 - t * np.diag(Ninv).real
        H = t * (np.abs(Ninv) ** 2)
        return g, H

    total = 0
    t = BARRIER_T0
    while t >= BARRIER_TMIN:
        y, it = _newton_stage(y, grad_hess, feasible, t)
        total += it
        t *= BARRIER_SHRINK
    return y, total


def mirror_descent_simplex(f_grad, d: int, max_iter: int = 2000,
                           tol: float = 1e-11, floor: float = 1e-12):
    """Minimize a smooth convex function over the probability simplex by
    exponentiated-gradient descent with backtracking.

    f_grad(q) returns (value, gradient).  Returns (q, value, iterations,
    converged).
    """
    q = np.full(d, 1.0 / d)
    val, g = f_grad(q)
    eta = 1.0
    stall = 0
    it = 0
    for it in range(1, max_iter + 1):
        step = g - g.min()  # shift for numerical stability of exp
        accepted = False
        while eta > 1e-14:
            trial = q * np.exp(-eta * step)
            trial = np.maximum(trial, floor)
            trial /= trial.sum()
            tval, tg = f_grad(trial)
            if tval <= val + 1e-15:
                accepted = True
                break
            eta *= 0.5
        if not accepted:
            break
        improvement = val - tval
        q, val, g = trial, tval, tg
        eta = min(eta * 2.0, 1e3)
        if improvement < tol:
            stall += 1
            if stall >= 5:
                return q, val, it, True
        else:
            stall = 0
    return q, val, it, stall >= 5


def barrier_descent(x0, f_grad, feasible, t_schedule, max_iter: int = 2000,
                    gtol: float = 1e-9):
    """Barzilai-Borwein gradient descent with barrier continuation, for the
    block-structured (matrix-variable) problems where a dense Newton system
    is not worth assembling.

    The spectral step length gives quasi-Newton-like progress on these
    smooth barriers while staying robust to the hard feasibility boundary
    (infeasible trials are simply backtracked).  f_grad(x, t) returns
    (value, gradient).  Returns (x, iterations).
    """
    x = np.asarray(x0, dtype=float)
    total = 0
    for t in t_schedule:
        val, g = f_grad(x, t)
        prev_x = prev_g = None
        recent = [val]
        best = val
        stall = 0
        for _ in range(max_iter):
            total += 1
            gn2 = float(g @ g)
            if np.sqrt(gn2) < gtol * (1.0 + abs(val)):
                break
            if stall >= 40:
                break
            step = 1.0
            if prev_x is not None:
                s = x - prev_x
                y = g - prev_g
                sy = float(s @ y)
                if sy > 1e-30:
                    step = float(np.clip(float(s @ s) / sy, 1e-12, 1e6))
            # nonmonotone Armijo: accept against the worst recent value so
            # the spectral step is rarely cut
            ref = max(recent)
            accepted = False
            while step > 1e-16:
                trial = x - step * g
                if feasible(trial):
                    tval, tg = f_grad(trial, t)
                    if tval < ref - 1e-4 * step * gn2:
                        accepted = True
                        break
                step *= 0.5
            if not accepted:
                break
            prev_x, prev_g = x, g
            x, val, g = trial, tval, tg
            recent.append(val)
            if len(recent) > 10:
                recent.pop(0)
            if val < best - 1e-11 * (1.0 + abs(best)):
                best = val
                stall = 0
            else:
                stall += 1
    return x, total
