"""Pure-Python stationary-point kernels for the classical ground-state surface.

Mirrors ``_ckernels.pyx`` function for function. The surface along a fixed
phi-section is

    E(theta) = wt*c + (J/2)*c**2 + dt*s*cos_phi - R/2,
    R = sqrt((w + Jc*c)**2 + d**2),  c = cos(theta), s = sin(theta)

and all arguments are passed positionally as
``(omega, delta, omega_t, delta_t, j_chain, j_couple, cos_phi)``.
"""

import math

import numpy as np

TWO_PI = 2.0 * math.pi


def surface_energy(w, d, wt, dt, j, jc, cphi, theta):
    c = math.cos(theta)
    s = math.sin(theta)
    return wt * c + 0.5 * j * c * c + dt * s * cphi - 0.5 * math.hypot(w + jc * c, d)


def surface_d1(w, d, wt, dt, j, jc, cphi, theta):
    c = math.cos(theta)
    s = math.sin(theta)
    a = w + jc * c
    r = math.hypot(a, d)
    val = -wt * s - j * s * c + dt * c * cphi
    if r > 0.0:
        val += 0.5 * jc * s * a / r
    return val


def surface_d2(w, d, wt, dt, j, jc, cphi, theta):
    c = math.cos(theta)
    s = math.sin(theta)
    a = w + jc * c
    r = math.hypot(a, d)
    val = -wt * c - j * (c * c - s * s) - dt * s * cphi
    if r > 0.0:
        val += 0.5 * jc * c * a / r - 0.5 * jc * jc * s * s * d * d / (r * r * r)
    return val


def _reduced(w, d, wt, j, jc, theta):
    # d1 / sin(theta) at dt == 0; finite at both poles
    c = math.cos(theta)
    a = w + jc * c
    r = math.hypot(a, d)
    val = -wt - j * c
    if r > 0.0:
        val += 0.5 * jc * a / r
    return val


def _reduced_dtheta(w, d, wt, j, jc, theta):
    c = math.cos(theta)
    s = math.sin(theta)
    a = w + jc * c
    r = math.hypot(a, d)
    dg_dc = -j
    if r > 0.0:
        dg_dc += 0.5 * jc * jc * d * d / (r * r * r)
    return -s * dg_dc


def _reduced_grid(w, d, wt, j, jc, theta):
    c = np.cos(theta)
    a = w + jc * c
    r = np.hypot(a, d)
    with np.errstate(invalid="ignore", divide="ignore"):
        term = np.where(r > 0.0, 0.5 * jc * a / r, 0.0)
    return -wt - j * c + term


def _d1_grid(w, d, wt, dt, j, jc, cphi, theta):
    c = np.cos(theta)
    s = np.sin(theta)
    a = w + jc * c
    r = np.hypot(a, d)
    with np.errstate(invalid="ignore", divide="ignore"):
        term = np.where(r > 0.0, 0.5 * jc * s * a / r, 0.0)
    return -wt * s - j * s * c + dt * c * cphi + term


def _refine(f, fp, a, b, fa, tol):
    for _ in range(200):
        if b - a <= tol:
            break
        m = 0.5 * (a + b)
        fm = f(m)
        if fm == 0.0:
            return m
        if (fa < 0.0) == (fm < 0.0):
            a, fa = m, fm
        else:
            b = m
    x = 0.5 * (a + b)
    fx = f(x)
    slope = fp(x)
    if slope != 0.0 and fx != 0.0:
        xn = x - fx / slope
        if a <= xn <= b and abs(f(xn)) <= abs(fx):
            x = xn
    return x


def scan_roots(w, d, wt, dt, j, jc, cphi, resolution, tol=1e-12):
    """Stationary angles of the surface on [0, 2pi), sorted ascending.

    With ``dt == 0`` the poles 0 and pi are exact stationary points and are
    always included; intermediate roots come from the reduced derivative on
    (0, pi) and are mirrored to (pi, 2pi).
    """
    resolution = int(resolution)
    if dt == 0.0:
        n = max(resolution // 2, 2)
        grid = np.linspace(0.0, math.pi, n + 1)
        vals = _reduced_grid(w, d, wt, j, jc, grid)

        def f(t):
            return _reduced(w, d, wt, j, jc, t)

        def fp(t):
            return _reduced_dtheta(w, d, wt, j, jc, t)

        inner = []
        for i in range(n):
            fa = float(vals[i])
            fb = float(vals[i + 1])
            if i > 0 and fa == 0.0:
                inner.append(float(grid[i]))
            elif fa * fb < 0.0:
                inner.append(_refine(f, fp, float(grid[i]), float(grid[i + 1]), fa, tol))
        roots = [0.0, math.pi]
        roots.extend(inner)
        roots.extend(TWO_PI - t for t in inner)
        return sorted(roots)

    n = max(resolution, 4)
    grid = np.arange(n + 1) * (TWO_PI / n)
    vals = _d1_grid(w, d, wt, dt, j, jc, cphi, grid)
    vals[n] = vals[0]

    def f(t):
        return surface_d1(w, d, wt, dt, j, jc, cphi, t)

    def fp(t):
        return surface_d2(w, d, wt, dt, j, jc, cphi, t)

    roots = []
    for i in range(n):
        fa = float(vals[i])
        fb = float(vals[i + 1])
        if fa == 0.0:
            roots.append(float(grid[i]))
        elif fa * fb < 0.0:
            roots.append(_refine(f, fp, float(grid[i]), float(grid[i + 1]), fa, tol))
    return _dedup_periodic(roots)


def _dedup_periodic(roots, eps=1e-8):
    out = []
    for t in sorted(t % TWO_PI for t in roots):
        if out and t - out[-1] < eps:
            continue
        out.append(t)
    if len(out) > 1 and out[0] + TWO_PI - out[-1] < eps:
        out.pop()
    return out
