"""Hot numeric kernels: generalized-trig evaluation, return-map integration
and Cartesian trajectory integration.

Every routine here is written in nopython-compatible Python over plain
floats and numpy arrays.  When numba is importable the module compiles them
with ``@njit``; otherwise the same functions run as pure Python/numpy.  Set

    WHVF_BACKEND=numpy   force the fallback (no compilation)
    WHVF_BACKEND=numba   require numba (raise if missing)
    WHVF_BACKEND=auto    default: numba if available

The selected backend is reported in ``BACKEND``.  Numerical results agree
between backends to floating-point roundoff; the benchmark under
``benchmarks/`` measures the speed gap.

Integrator: a self-contained Dormand-Prince 5(4) embedded pair with PI-free
step control (error ** -1/5 with clamped growth), relative tolerance down to
1e-12.  Polynomials arrive as exponent/coefficient arrays.
"""

import os

import numpy as np

_choice = os.environ.get("WHVF_BACKEND", "auto").strip().lower() or "auto"
if _choice not in ("auto", "numba", "numpy"):
    raise RuntimeError(f"WHVF_BACKEND must be auto, numba or numpy (got {_choice!r})")

NUMBA_ENABLED = False
if _choice in ("auto", "numba"):
    try:
        from numba import njit

        NUMBA_ENABLED = True
    except ImportError:
        if _choice == "numba":
            raise RuntimeError("WHVF_BACKEND=numba but numba is not installed")

if not NUMBA_ENABLED:
    def njit(*args, **kwargs):  # no-op stand-in with the same call shapes
        if args and callable(args[0]):
            return args[0]

        def wrap(fn):
            return fn

        return wrap

BACKEND = "numba" if NUMBA_ENABLED else "numpy"

# Return-map / trajectory status codes
OK = 0
STALL = 1
ESCAPE = 2
STEP_BUDGET = 3
STEP_UNDERFLOW = 4
WINDING_REACHED = 5


@njit(cache=True)
def poly_eval(us, vs, cs, x, y):
    acc = 0.0
    for i in range(us.shape[0]):
        acc += cs[i] * x ** us[i] * y ** vs[i]
    return acc


@njit(cache=True)
def _rigid_rk4(x, y, h, m):
    """One RK4 step of the generator flow x' = -y, y' = x**m (m = 2n-1)."""
    k1x = -y
    k1y = x**m
    x2 = x + 0.5 * h * k1x
    y2 = y + 0.5 * h * k1y
    k2x = -y2
    k2y = x2**m
    x3 = x + 0.5 * h * k2x
    y3 = y + 0.5 * h * k2y
    k3x = -y3
    k3y = x3**m
    x4 = x + h * k3x
    y4 = y + h * k3y
    k4x = -y4
    k4y = x4**m
    nx = x + h * (k1x + 2.0 * k2x + 2.0 * k3x + k4x) / 6.0
    ny = y + h * (k1y + 2.0 * k2y + 2.0 * k3y + k4y) / 6.0
    return nx, ny


@njit(cache=True)
def cs_sn_eval(xs, ys, T, n, theta):
    """(Cs, Sn) at theta from a dense one-period checkpoint table.

    Walks from the nearest checkpoint at or below theta with two RK4
    substeps of the generator flow, then projects onto the invariant curve
    x**(2n) + n y**2 = 1 if the drift exceeds 1e-12.
    """
    if n == 1:
        return np.cos(theta), np.sin(theta)
    t = theta % T
    if t < 0.0:
        t += T
    K = xs.shape[0] - 1
    h = T / K
    idx = int(t / h)
    if idx >= K:
        idx = K - 1
    dt = t - idx * h
    x = xs[idx]
    y = ys[idx]
    m = 2 * n - 1
    if dt != 0.0:
        x, y = _rigid_rk4(x, y, 0.5 * dt, m)
        x, y = _rigid_rk4(x, y, 0.5 * dt, m)
    e = x ** (2 * n) + n * y * y
    if abs(e - 1.0) > 1e-12:
        r = e ** (1.0 / (2 * n))
        x /= r
        y /= r**n
    return x, y


@njit(cache=True)
def cs_sn_many(xs, ys, T, n, thetas):
    out_c = np.empty(thetas.shape[0])
    out_s = np.empty(thetas.shape[0])
    for i in range(thetas.shape[0]):
        c, s = cs_sn_eval(xs, ys, T, n, thetas[i])
        out_c[i] = c
        out_s[i] = s
    return out_c, out_s


@njit(cache=True)
def radial_rhs(pu, pv, pc, qu, qv, qc, n, xs, ys, T, r, theta):
    """dr/dtheta and the angular-velocity data at (r, theta).

    Returns (drdtheta, den, scale) where den is the numerator of theta'
    (x*Q - n*y*P) and scale its magnitude estimate; the caller decides
    whether den is a stall.
    """
    cs, sn = cs_sn_eval(xs, ys, T, n, theta)
    x = r * cs
    y = r**n * sn
    pval = poly_eval(pu, pv, pc, x, y)
    qval = poly_eval(qu, qv, qc, x, y)
    num = x ** (2 * n - 1) * pval + y * qval
    den = x * qval - n * y * pval
    scale = abs(x * qval) + n * abs(y * pval) + 1e-300
    rfac = r * r / r**n
    if den == 0.0:
        return 0.0, 0.0, scale
    return num * rfac / den, den, scale


# Dormand-Prince 5(4) coefficients
_A21 = 1.0 / 5.0
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = 19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0
_A61, _A62, _A63, _A64, _A65 = (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0,
                                49.0 / 176.0, -5103.0 / 18656.0)
_B1, _B3, _B4, _B5, _B6 = 35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0
_E1, _E3, _E4, _E5, _E6, _E7 = (71.0 / 57600.0, -71.0 / 16695.0, 71.0 / 1920.0,
                                -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0)


@njit(cache=True)
def return_map_integrate(pu, pv, pc, qu, qv, qc, n, xs, ys, T, rho,
                         rtol, atol, max_steps):
    """Integrate dr/dtheta over one full angular period from r(0) = rho.

    The angular direction is taken from the sign of theta' at the start
    point; a sign change or near-vanishing of theta' anywhere along the way
    aborts with STALL.  Leaving [rho/100, 100*rho] aborts with ESCAPE.

    Returns (r_final, status, steps).
    """
    drd0, den0, scale0 = radial_rhs(pu, pv, pc, qu, qv, qc, n, xs, ys, T, rho, 0.0)
    if abs(den0) <= 1e-14 * scale0:
        return rho, STALL, 0
    direction = 1.0 if den0 > 0.0 else -1.0

    s = 0.0
    r = rho
    h = T / 200.0
    steps = 0
    f_prev = direction * drd0  # FSAL-style reuse of the first stage
    while s < T:
        if steps >= max_steps:
            return r, STEP_BUDGET, steps
        if h < 1e-14 * T:
            # the step collapsed because theta' loses its sign along the
            # orbit itself: angular stall
            return r, STALL, steps
        if s + h > T:
            h = T - s
        k1 = f_prev

        # a sign flip of theta' at a trial stage first forces a smaller
        # step; only an unshrinkable flip is a genuine stall (handled above)
        bad = False
        k2 = k3 = k4 = k5 = k6 = k7 = 0.0
        r_new = r
        r2 = r + h * _A21 * k1
        d, den, sc = radial_rhs(pu, pv, pc, qu, qv, qc, n, xs, ys, T,
                                r2, direction * (s + 0.2 * h))
        bad = abs(den) <= 1e-14 * sc or den * den0 < 0.0
        if not bad:
            k2 = direction * d
            r3 = r + h * (_A31 * k1 + _A32 * k2)
            d, den, sc = radial_rhs(pu, pv, pc, qu, qv, qc, n, xs, ys, T,
                                    r3, direction * (s + 0.3 * h))
            bad = abs(den) <= 1e-14 * sc or den * den0 < 0.0
        if not bad:
            k3 = direction * d
            r4 = r + h * (_A41 * k1 + _A42 * k2 + _A43 * k3)
            d, den, sc = radial_rhs(pu, pv, pc, qu, qv, qc, n, xs, ys, T,
                                    r4, direction * (s + 0.8 * h))
            bad = abs(den) <= 1e-14 * sc or den * den0 < 0.0
        if not bad:
            k4 = direction * d
            r5 = r + h * (_A51 * k1 + _A52 * k2 + _A53 * k3 + _A54 * k4)
            d, den, sc = radial_rhs(pu, pv, pc, qu, qv, qc, n, xs, ys, T,
                                    r5, direction * (s + 8.0 / 9.0 * h))
            bad = abs(den) <= 1e-14 * sc or den * den0 < 0.0
        if not bad:
            k5 = direction * d
            r6 = r + h * (_A61 * k1 + _A62 * k2 + _A63 * k3 + _A64 * k4 + _A65 * k5)
            d, den, sc = radial_rhs(pu, pv, pc, qu, qv, qc, n, xs, ys, T,
                                    r6, direction * (s + h))
            bad = abs(den) <= 1e-14 * sc or den * den0 < 0.0
        if not bad:
            k6 = direction * d
            r_new = r + h * (_B1 * k1 + _B3 * k3 + _B4 * k4 + _B5 * k5 + _B6 * k6)
            d, den, sc = radial_rhs(pu, pv, pc, qu, qv, qc, n, xs, ys, T,
                                    r_new, direction * (s + h))
            bad = abs(den) <= 1e-14 * sc or den * den0 < 0.0
        if bad:
            steps += 1
            h *= 0.25
            continue
        k7 = direction * d

        err = h * (_E1 * k1 + _E3 * k3 + _E4 * k4 + _E5 * k5 + _E6 * k6 + _E7 * k7)
        tol = atol + rtol * max(abs(r), abs(r_new))
        enorm = abs(err) / tol
        steps += 1
        if enorm <= 1.0:
            s += h
            r = r_new
            f_prev = k7
            if r <= rho / 100.0 or r >= rho * 100.0 or not np.isfinite(r):
                return r, ESCAPE, steps
            fac = 5.0 if enorm == 0.0 else min(5.0, max(0.2, 0.9 * enorm ** (-0.2)))
            h *= fac
        else:
            h *= max(0.2, 0.9 * enorm ** (-0.2))
    return r, OK, steps


@njit(cache=True)
def trajectory_integrate(pu, pv, pc, qu, qv, qc, x0, y0, t_end,
                         rtol, atol, r_escape, max_steps, winding_stop,
                         rec_ts, rec_xs, rec_ys, rec_ws):
    """Cartesian integration of (x', y') = (P, Q) with winding bookkeeping.

    Winding is the cumulative polar angle around the origin in revolutions.
    Recording decimates to the capacity of rec_* (filled from index 0).
    Returns (status, t_final, x, y, winding, n_recorded).
    """
    cap = rec_ts.shape[0]
    t = 0.0
    x = x0
    y = y0
    wind = 0.0
    nrec = 0
    if cap > 0:
        rec_ts[0] = 0.0
        rec_xs[0] = x
        rec_ys[0] = y
        rec_ws[0] = 0.0
        nrec = 1
    stride = max(1, int(max_steps // max(cap - 1, 1)))

    h = t_end / 1000.0
    if h <= 0.0:
        return OK, t, x, y, wind, nrec
    steps = 0
    while t < t_end:
        if steps >= max_steps:
            return STEP_BUDGET, t, x, y, wind, nrec
        if h < 1e-15 * t_end:
            return STEP_UNDERFLOW, t, x, y, wind, nrec
        if t + h > t_end:
            h = t_end - t

        k1x = poly_eval(pu, pv, pc, x, y)
        k1y = poly_eval(qu, qv, qc, x, y)
        x2 = x + h * _A21 * k1x
        y2 = y + h * _A21 * k1y
        k2x = poly_eval(pu, pv, pc, x2, y2)
        k2y = poly_eval(qu, qv, qc, x2, y2)
        x3 = x + h * (_A31 * k1x + _A32 * k2x)
        y3 = y + h * (_A31 * k1y + _A32 * k2y)
        k3x = poly_eval(pu, pv, pc, x3, y3)
        k3y = poly_eval(qu, qv, qc, x3, y3)
        x4 = x + h * (_A41 * k1x + _A42 * k2x + _A43 * k3x)
        y4 = y + h * (_A41 * k1y + _A42 * k2y + _A43 * k3y)
        k4x = poly_eval(pu, pv, pc, x4, y4)
        k4y = poly_eval(qu, qv, qc, x4, y4)
        x5 = x + h * (_A51 * k1x + _A52 * k2x + _A53 * k3x + _A54 * k4x)
        y5 = y + h * (_A51 * k1y + _A52 * k2y + _A53 * k3y + _A54 * k4y)
        k5x = poly_eval(pu, pv, pc, x5, y5)
        k5y = poly_eval(qu, qv, qc, x5, y5)
        x6 = x + h * (_A61 * k1x + _A62 * k2x + _A63 * k3x + _A64 * k4x + _A65 * k5x)
        y6 = y + h * (_A61 * k1y + _A62 * k2y + _A63 * k3y + _A64 * k4y + _A65 * k5y)
        k6x = poly_eval(pu, pv, pc, x6, y6)
        k6y = poly_eval(qu, qv, qc, x6, y6)
        xn = x + h * (_B1 * k1x + _B3 * k3x + _B4 * k4x + _B5 * k5x + _B6 * k6x)
        yn = y + h * (_B1 * k1y + _B3 * k3y + _B4 * k4y + _B5 * k5y + _B6 * k6y)
        k7x = poly_eval(pu, pv, pc, xn, yn)
        k7y = poly_eval(qu, qv, qc, xn, yn)

        ex = h * (_E1 * k1x + _E3 * k3x + _E4 * k4x + _E5 * k5x + _E6 * k6x + _E7 * k7x)
        ey = h * (_E1 * k1y + _E3 * k3y + _E4 * k4y + _E5 * k5y + _E6 * k6y + _E7 * k7y)
        tolx = atol + rtol * max(abs(x), abs(xn))
        toly = atol + rtol * max(abs(y), abs(yn))
        enorm = max(abs(ex) / tolx, abs(ey) / toly)
        steps += 1
        if enorm <= 1.0:
            t += h
            dw = np.arctan2(x * yn - y * xn, x * xn + y * yn) / (2.0 * np.pi)
            wind += dw
            x = xn
            y = yn
            if steps % stride == 0 and nrec < cap:
                rec_ts[nrec] = t
                rec_xs[nrec] = x
                rec_ys[nrec] = y
                rec_ws[nrec] = wind
                nrec += 1
            if not (np.isfinite(x) and np.isfinite(y)):
                return ESCAPE, t, x, y, wind, nrec
            if x * x + y * y > r_escape * r_escape:
                return ESCAPE, t, x, y, wind, nrec
            if winding_stop > 0.0 and abs(wind) >= winding_stop:
                return WINDING_REACHED, t, x, y, wind, nrec
            fac = 5.0 if enorm == 0.0 else min(5.0, max(0.2, 0.9 * enorm ** (-0.2)))
            h *= fac
        else:
            h *= max(0.2, 0.9 * enorm ** (-0.2))
    return OK, t, x, y, wind, nrec
