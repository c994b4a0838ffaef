# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled stationary-point kernels; same contract as ``_pykernels``."""

from libc.math cimport sin, cos, hypot, fabs, M_PI
from libc.stdlib cimport malloc, free

from spinlab._pykernels import _dedup_periodic

cdef double TWO_PI = 2.0 * M_PI


cdef struct Surf:
    double w
    double d
    double wt
    double dt
    double j
    double jc
    double cphi


cdef inline double _d1(const Surf* p, double t) noexcept nogil:
    cdef double c = cos(t)
    cdef double s = sin(t)
    cdef double a = p.w + p.jc * c
    cdef double r = hypot(a, p.d)
    cdef double val = -p.wt * s - p.j * s * c + p.dt * c * p.cphi
    if r > 0.0:
        val += 0.5 * p.jc * s * a / r
    return val


cdef inline double _d2(const Surf* p, double t) noexcept nogil:
    cdef double c = cos(t)
    cdef double s = sin(t)
    cdef double a = p.w + p.jc * c
    cdef double r = hypot(a, p.d)
    cdef double val = -p.wt * c - p.j * (c * c - s * s) - p.dt * s * p.cphi
    if r > 0.0:
        val += 0.5 * p.jc * c * a / r - 0.5 * p.jc * p.jc * s * s * p.d * p.d / (r * r * r)
    return val


cdef inline double _red(const Surf* p, double t) noexcept nogil:
    cdef double c = cos(t)
    cdef double a = p.w + p.jc * c
    cdef double r = hypot(a, p.d)
    cdef double val = -p.wt - p.j * c
    if r > 0.0:
        val += 0.5 * p.jc * a / r
    return val


cdef inline double _red_dt(const Surf* p, double t) noexcept nogil:
    cdef double c = cos(t)
    cdef double s = sin(t)
    cdef double a = p.w + p.jc * c
    cdef double r = hypot(a, p.d)
    cdef double dg_dc = -p.j
    if r > 0.0:
        dg_dc += 0.5 * p.jc * p.jc * p.d * p.d / (r * r * r)
    return -s * dg_dc


cdef inline double _f(const Surf* p, double t, bint reduced) noexcept nogil:
    if reduced:
        return _red(p, t)
    return _d1(p, t)


cdef inline double _fp(const Surf* p, double t, bint reduced) noexcept nogil:
    if reduced:
        return _red_dt(p, t)
    return _d2(p, t)


cdef double _refine(const Surf* p, bint reduced, double a, double b,
                    double fa, double tol) noexcept nogil:
    cdef int it
    cdef double m, fm, x, fx, slope, xn
    for it in range(200):
        if b - a <= tol:
            break
        m = 0.5 * (a + b)
        fm = _f(p, m, reduced)
        if fm == 0.0:
            return m
        if (fa < 0.0) == (fm < 0.0):
            a = m
            fa = fm
        else:
            b = m
    x = 0.5 * (a + b)
    fx = _f(p, x, reduced)
    slope = _fp(p, x, reduced)
    if slope != 0.0 and fx != 0.0:
        xn = x - fx / slope
        if a <= xn <= b and fabs(_f(p, xn, reduced)) <= fabs(fx):
            x = xn
    return x


cdef int _scan(const Surf* p, bint reduced, int n, double lo, double step,
               bint periodic, double tol, double* out) noexcept nogil:
    cdef int i, k = 0
    cdef double fa, fb, ta
    fb = _f(p, lo, reduced)
    cdef double f0 = fb
    for i in range(n):
        fa = fb
        ta = lo + i * step
        if periodic and i + 1 == n:
            fb = f0
        else:
            fb = _f(p, lo + (i + 1) * step, reduced)
        if fa == 0.0:
            if periodic or i > 0:
                out[k] = ta
                k += 1
        elif fa * fb < 0.0:
            out[k] = _refine(p, reduced, ta, lo + (i + 1) * step, fa, tol)
            k += 1
    return k


def surface_energy(double w, double d, double wt, double dt, double j,
                   double jc, double cphi, double theta):
    cdef double c = cos(theta)
    cdef double s = sin(theta)
    return wt * c + 0.5 * j * c * c + dt * s * cphi - 0.5 * hypot(w + jc * c, d)


def surface_d1(double w, double d, double wt, double dt, double j,
               double jc, double cphi, double theta):
    cdef Surf p = Surf(w, d, wt, dt, j, jc, cphi)
    return _d1(&p, theta)


def surface_d2(double w, double d, double wt, double dt, double j,
               double jc, double cphi, double theta):
    cdef Surf p = Surf(w, d, wt, dt, j, jc, cphi)
    return _d2(&p, theta)


def scan_roots(double w, double d, double wt, double dt, double j, double jc,
               double cphi, int resolution, double tol=1e-12):
    cdef Surf p = Surf(w, d, wt, dt, j, jc, cphi)
    cdef int n, k, i
    cdef double* buf
    cdef list inner, roots
    if dt == 0.0:
        n = max(resolution // 2, 2)
        buf = <double*>malloc((n + 1) * sizeof(double))
        if buf == NULL:
            raise MemoryError()
        try:
            with nogil:
                k = _scan(&p, True, n, 0.0, M_PI / n, False, tol, buf)
            inner = [buf[i] for i in range(k)]
        finally:
            free(buf)
        roots = [0.0, M_PI]
        roots.extend(inner)
        roots.extend([TWO_PI - t for t in inner])
        return sorted(roots)

    n = max(resolution, 4)
    buf = <double*>malloc((n + 1) * sizeof(double))
    if buf == NULL:
        raise MemoryError()
    try:
        with nogil:
            k = _scan(&p, False, n, 0.0, TWO_PI / n, True, tol, buf)
        roots = [buf[i] for i in range(k)]
    finally:
        free(buf)
    return _dedup_periodic(roots)
