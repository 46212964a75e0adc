"""Pure-Python reference versions of the hot loops in ``_kernels.pyx``.

Both modules expose the same two functions with the same arguments and the
same arithmetic order, so either backend gives the same answers up to
floating-point rounding.
"""

import math

import numpy as np

LINEAR, SQRT_COMPLEMENT, QUADRATIC, ONE_MINUS_SQRT, NEG_LOG = range(5)


def _fn(fn_id, t):
    if callable(fn_id):
        return float(fn_id(t))
    if fn_id == LINEAR:
        return 1.0 - t
    if fn_id == SQRT_COMPLEMENT:
        return math.sqrt(1.0 - t)
    if fn_id == QUADRATIC:
        return 1.0 - t * t
    if fn_id == ONE_MINUS_SQRT:
        return 1.0 - math.sqrt(t)
    if fn_id == NEG_LOG:
        return math.inf if t <= 0.0 else -math.log(t)
    raise ValueError(f"unknown function id {fn_id}")


def roof_objective(lam, c, fn_id, x):
    """Ensemble average of fn(|<f|psi_i>|^2) for the ensemble encoded by ``x``.

    ``fn_id`` is a library function id or, in this module only, any callable.

    ``x`` (m x r) is orthonormalized column-wise by modified Gram-Schmidt
    into an isometry U; member i has weight sum_k lam_k |U_ik|^2 and
    unnormalized overlap sum_k U_ik c_k with |f>.
    """
    m, r = x.shape
    u = np.array(x, dtype=np.complex128)
    for j in range(r):
        for i in range(j):
            u[:, j] -= np.vdot(u[:, i], u[:, j]) * u[:, i]
        nrm = math.sqrt(np.vdot(u[:, j], u[:, j]).real)
        if nrm < 1e-14:
            return math.inf
        u[:, j] /= nrm
    total = 0.0
    for i in range(m):
        p = 0.0
        a = 0j
        for k in range(r):
            uk = u[i, k]
            p += lam[k] * (uk.real * uk.real + uk.imag * uk.imag)
            a += uk * c[k]
        if p <= 1e-300:
            continue
        t = (a.real * a.real + a.imag * a.imag) / p
        t = min(max(t, 0.0), 1.0)
        total += p * _fn(fn_id, t)
    return total


def roof_search(lam, c, fn_id, x0, idx, noise, step0, shrink, grow, tol):
    """Accept-if-better coordinate search from ``x0``.

    Iteration ``it`` perturbs real coordinate ``idx[it]`` of the flattened
    (re, im) parameter array by ``step * noise[it]``. The step grows by
    ``grow`` (capped at ``step0``) on success and shrinks by ``shrink`` on
    failure; the search stops once it falls below ``tol``.

    Returns ``(best_value, best_x, iterations_run)``.
    """
    x = np.array(x0, dtype=np.complex128)
    r = x.shape[1]
    best = roof_objective(lam, c, fn_id, x)
    step = step0
    n = 0
    for it in range(len(idx)):
        n = it + 1
        k = int(idx[it])
        entry, part = divmod(k, 2)
        i, j = divmod(entry, r)
        old = x[i, j]
        delta = step * noise[it]
        x[i, j] = old + (delta if part == 0 else 1j * delta)
        val = roof_objective(lam, c, fn_id, x)
        if val < best:
            best = val
            step = min(step * grow, step0)
        else:
            x[i, j] = old
            step *= shrink
        if step < tol:
            break
    return best, x, n


def _sigma_max_sq(a, b, c):
    fro = abs(a) ** 2 + abs(b) ** 2 + abs(c) ** 2
    det = abs(a * c) ** 2
    disc = max(fro * fro - 4.0 * det, 0.0)
    return 0.5 * (fro + math.sqrt(disc))


def _triangle(alpha, beta, mu, nu, z, free_b):
    if free_b:
        return (mu - z * beta) / alpha, z, nu / beta
    return z, (mu - z * alpha) / beta, nu / beta


def maxprob_grid(alpha, beta, mu, nu, resolution, rounds, jx, jy):
    """Largest ||K psi||^2 over upper-triangular contractions with K psi ~ phi.

    Inputs are f-basis amplitudes. Writing K = s K' with K' psi = phi, the
    probability is s^2 = 1 / sigma_max(K')^2; one entry of K' is free and
    is searched on a grid that is re-centred and halved each round.
    """
    if abs(beta) < 1e-12:
        return 0.0
    free_b = abs(alpha) >= abs(beta)
    best = _sigma_max_sq(*_triangle(alpha, beta, mu, nu, 0j, free_b))
    center = 0j
    half = math.sqrt(best)
    for _ in range(rounds):
        best_z = center
        for i in range(resolution):
            re = center.real + half * (-1.0 + 2.0 * (i + jx) / resolution)
            for j in range(resolution):
                im = center.imag + half * (-1.0 + 2.0 * (j + jy) / resolution)
                z = complex(re, im)
                v = _sigma_max_sq(*_triangle(alpha, beta, mu, nu, z, free_b))
                if v < best:
                    best = v
                    best_z = z
        center = best_z
        half *= 0.5
    return min(1.0, 1.0 / best)
