# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled hot loops; mirrors _py_core.py operation-for-operation.

Built with -ffp-contract=off so trajectories are bit-identical to the
pure-Python fallback.
"""

from libc.math cimport cos, isfinite, pow, sin, fabs

cdef double _INV53 = 1.0 / 9007199254740992.0  # exactly 2**-53
cdef double _TWO_PI = 6.283185307179586


def rng_fill(unsigned long long[::1] state, double[::1] out):
    """Fill ``out`` with uniforms in [0,1); advance xoshiro256** ``state``."""
    cdef unsigned long long s0 = state[0]
    cdef unsigned long long s1 = state[1]
    cdef unsigned long long s2 = state[2]
    cdef unsigned long long s3 = state[3]
    cdef unsigned long long r, t, m
    cdef Py_ssize_t i, n = out.shape[0]
    for i in range(n):
        m = s1 * 5ULL
        r = ((m << 7) | (m >> 57)) * 9ULL
        t = s1 << 17
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = (s3 << 45) | (s3 >> 19)
        out[i] = <double>(r >> 11) * _INV53
    state[0] = s0
    state[1] = s1
    state[2] = s2
    state[3] = s3


cdef inline double _km_accel(double R, double V, double t, double amp,
                             double R0, double f, double rho, double mu,
                             double sigma, double p0, double kgas,
                             double c) noexcept nogil:
    cdef double pg0 = p0 + 2.0 * sigma / R0
    cdef double expo = 3.0 * kgas
    cdef double ratio = pow(R0 / R, expo)
    cdef double p_gas = pg0 * ratio
    cdef double p_s = p_gas - 2.0 * sigma / R - 4.0 * mu * V / R
    cdef double p_inf = p0 + amp * sin(_TWO_PI * f * t)
    cdef double dp_inf = amp * _TWO_PI * f * cos(_TWO_PI * f * t)
    cdef double dp_s = (-expo * p_gas * V / R) + 2.0 * sigma * V / (R * R) \
        + 4.0 * mu * V * V / (R * R)
    cdef double num = (1.0 + V / c) * (p_s - p_inf) / rho \
        + (R / (rho * c)) * (dp_s - dp_inf) \
        - 1.5 * V * V * (1.0 - V / (3.0 * c))
    cdef double den = (1.0 - V / c) * R + 4.0 * mu / (rho * c)
    return num / den


def km_run(double[::1] params, double[::1] amps, long sub_per_record,
           double dt, double t0, double[::1] y, double[::1] r_out,
           double[::1] v_out):
    cdef double R0 = params[0]
    cdef double f = params[1]
    cdef double rho = params[2]
    cdef double mu = params[3]
    cdef double sigma = params[4]
    cdef double p0 = params[5]
    cdef double kgas = params[6]
    cdef double c = params[7]
    cdef double R = y[0]
    cdef double V = y[1]
    cdef double r_lo = 0.02 * R0
    cdef double r_hi = 50.0 * R0
    cdef long cnt = 0
    cdef Py_ssize_t rec, s, n_rec = amps.shape[0]
    cdef double amp, t
    cdef double k1r, k1v, k2r, k2v, k3r, k3v, k4r, k4v, R2, V2, R3, V3, R4, V4
    cdef int status = 0
    with nogil:
        for rec in range(n_rec):
            amp = amps[rec]
            for s in range(sub_per_record):
                t = t0 + cnt * dt
                k1r = V
                k1v = _km_accel(R, V, t, amp, R0, f, rho, mu, sigma, p0, kgas, c)
                R2 = R + 0.5 * dt * k1r
                V2 = V + 0.5 * dt * k1v
                k2r = V2
                k2v = _km_accel(R2, V2, t + 0.5 * dt, amp, R0, f, rho, mu, sigma, p0, kgas, c)
                R3 = R + 0.5 * dt * k2r
                V3 = V + 0.5 * dt * k2v
                k3r = V3
                k3v = _km_accel(R3, V3, t + 0.5 * dt, amp, R0, f, rho, mu, sigma, p0, kgas, c)
                R4 = R + dt * k3r
                V4 = V + dt * k3v
                k4r = V4
                k4v = _km_accel(R4, V4, t + dt, amp, R0, f, rho, mu, sigma, p0, kgas, c)
                R = R + (dt / 6.0) * (k1r + 2.0 * k2r + 2.0 * k3r + k4r)
                V = V + (dt / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
                cnt += 1
                if not (isfinite(R) and isfinite(V)) or R < r_lo or R > r_hi:
                    status = 1
                    break
            if status:
                break
            r_out[rec] = R
            v_out[rec] = V
    y[0] = R
    y[1] = V
    return status


cdef void _km_cluster_rhs(Py_ssize_t n, double* xs, double* vs, double t,
                          double amp, double[::1] r0s, double f, double rho,
                          double mu, double sigma, double p0, double kgas,
                          double c, double[:, ::1] invdist, double* acc,
                          double* a, double* b) noexcept nogil:
    cdef Py_ssize_t i, j, k
    cdef double R, V, R0, pg0, ratio, p_gas, p_s, dp_s, num, den, w, factor, s
    cdef double p_inf = p0 + amp * sin(_TWO_PI * f * t)
    cdef double dp_inf = amp * _TWO_PI * f * cos(_TWO_PI * f * t)
    cdef double expo = 3.0 * kgas
    for i in range(n):
        R = xs[i]
        V = vs[i]
        R0 = r0s[i]
        pg0 = p0 + 2.0 * sigma / R0
        ratio = pow(R0 / R, expo)
        p_gas = pg0 * ratio
        p_s = p_gas - 2.0 * sigma / R - 4.0 * mu * V / R
        dp_s = (-expo * p_gas * V / R) + 2.0 * sigma * V / (R * R) \
            + 4.0 * mu * V * V / (R * R)
        num = (1.0 + V / c) * (p_s - p_inf) / rho \
            + (R / (rho * c)) * (dp_s - dp_inf) \
            - 1.5 * V * V * (1.0 - V / (3.0 * c))
        den = (1.0 - V / c) * R + 4.0 * mu / (rho * c)
        a[i * n + i] = den
        for j in range(n):
            if j != i:
                w = invdist[i, j]
                a[i * n + j] = xs[j] * xs[j] * w
                num = num - 2.0 * xs[j] * vs[j] * vs[j] * w
        b[i] = num
    for k in range(n - 1):
        for i in range(k + 1, n):
            factor = a[i * n + k] / a[k * n + k]
            for j in range(k + 1, n):
                a[i * n + j] = a[i * n + j] - factor * a[k * n + j]
            b[i] = b[i] - factor * b[k]
    for i in range(n - 1, -1, -1):
        s = b[i]
        for j in range(i + 1, n):
            s = s - a[i * n + j] * acc[j]
        acc[i] = s / a[i * n + i]


def km_cluster_run(double[::1] r0s, double[::1] shared,
                   double[:, ::1] invdist, double[::1] amps,
                   long sub_per_record, double dt, double t0,
                   double[:, ::1] y, double[:, ::1] r_out,
                   double[:, ::1] v_out):
    cdef double f = shared[0]
    cdef double rho = shared[1]
    cdef double mu = shared[2]
    cdef double sigma = shared[3]
    cdef double p0 = shared[4]
    cdef double kgas = shared[5]
    cdef double c = shared[6]
    cdef Py_ssize_t n = r0s.shape[0]
    # fixed-size scratch: cluster capped well below 16 bubbles
    cdef double xs[16]
    cdef double vs[16]
    cdef double x2[16]
    cdef double v2[16]
    cdef double x3[16]
    cdef double v3[16]
    cdef double x4[16]
    cdef double v4[16]
    cdef double k1a[16]
    cdef double k2a[16]
    cdef double k3a[16]
    cdef double k4a[16]
    cdef double amat[256]
    cdef double bvec[16]
    cdef Py_ssize_t i, rec, s
    cdef long cnt = 0
    cdef double amp, t
    cdef bint ok
    cdef int status = 0
    cdef Py_ssize_t n_rec = amps.shape[0]
    if n > 16:
        raise ValueError("cluster kernel supports at most 16 bubbles")
    for i in range(n):
        xs[i] = y[i, 0]
        vs[i] = y[i, 1]
    with nogil:
        for rec in range(n_rec):
            amp = amps[rec]
            for s in range(sub_per_record):
                t = t0 + cnt * dt
                _km_cluster_rhs(n, xs, vs, t, amp, r0s, f, rho, mu, sigma,
                                p0, kgas, c, invdist, k1a, amat, bvec)
                for i in range(n):
                    x2[i] = xs[i] + 0.5 * dt * vs[i]
                    v2[i] = vs[i] + 0.5 * dt * k1a[i]
                _km_cluster_rhs(n, x2, v2, t + 0.5 * dt, amp, r0s, f, rho,
                                mu, sigma, p0, kgas, c, invdist, k2a, amat, bvec)
                for i in range(n):
                    x3[i] = xs[i] + 0.5 * dt * v2[i]
                    v3[i] = vs[i] + 0.5 * dt * k2a[i]
                _km_cluster_rhs(n, x3, v3, t + 0.5 * dt, amp, r0s, f, rho,
                                mu, sigma, p0, kgas, c, invdist, k3a, amat, bvec)
                for i in range(n):
                    x4[i] = xs[i] + dt * v3[i]
                    v4[i] = vs[i] + dt * k3a[i]
                _km_cluster_rhs(n, x4, v4, t + dt, amp, r0s, f, rho, mu,
                                sigma, p0, kgas, c, invdist, k4a, amat, bvec)
                ok = True
                for i in range(n):
                    xs[i] = xs[i] + (dt / 6.0) * (vs[i] + 2.0 * v2[i] + 2.0 * v3[i] + v4[i])
                    vs[i] = vs[i] + (dt / 6.0) * (k1a[i] + 2.0 * k2a[i] + 2.0 * k3a[i] + k4a[i])
                    if not (isfinite(xs[i]) and isfinite(vs[i])) \
                            or xs[i] < 0.02 * r0s[i] or xs[i] > 50.0 * r0s[i]:
                        ok = False
                cnt += 1
                if not ok:
                    status = 1
                    break
            if status:
                break
            for i in range(n):
                r_out[rec, i] = xs[i]
                v_out[rec, i] = vs[i]
    for i in range(n):
        y[i, 0] = xs[i]
        y[i, 1] = vs[i]
    return status


cdef void _whisker_rhs(Py_ssize_t n, double* xs, double* vs, double base,
                       double[::1] k_lin, double[::1] k3, double mass,
                       double damping, double* acc) noexcept nogil:
    cdef double t_prev = 0.0
    cdef double left, d, t_i
    cdef Py_ssize_t i
    for i in range(n - 1, -1, -1):
        left = xs[i - 1] if i > 0 else base
        d = xs[i] - left
        t_i = k_lin[i] * d + k3[i] * d * d * d
        acc[i] = (-t_i + t_prev - damping * vs[i]) / mass
        t_prev = t_i


def whisker_run(double[::1] k_lin, double[::1] k3, double mass,
                double damping, double[::1] base, long sub_per_record,
                double dt, double[:, ::1] y, double[:, ::1] x_out,
                double[:, ::1] v_out):
    cdef Py_ssize_t n = k_lin.shape[0]
    cdef double xs[64]
    cdef double vs[64]
    cdef double x2[64]
    cdef double v2[64]
    cdef double x3[64]
    cdef double v3[64]
    cdef double x4[64]
    cdef double v4[64]
    cdef double k1a[64]
    cdef double k2a[64]
    cdef double k3a[64]
    cdef double k4a[64]
    cdef Py_ssize_t i, rec, s
    cdef double b
    cdef bint ok
    cdef int status = 0
    cdef Py_ssize_t n_rec = base.shape[0]
    if n > 64:
        raise ValueError("whisker kernel supports at most 64 masses")
    for i in range(n):
        xs[i] = y[i, 0]
        vs[i] = y[i, 1]
    with nogil:
        for rec in range(n_rec):
            b = base[rec]
            for s in range(sub_per_record):
                _whisker_rhs(n, xs, vs, b, k_lin, k3, mass, damping, k1a)
                for i in range(n):
                    x2[i] = xs[i] + 0.5 * dt * vs[i]
                    v2[i] = vs[i] + 0.5 * dt * k1a[i]
                _whisker_rhs(n, x2, v2, b, k_lin, k3, mass, damping, k2a)
                for i in range(n):
                    x3[i] = xs[i] + 0.5 * dt * v2[i]
                    v3[i] = vs[i] + 0.5 * dt * k2a[i]
                _whisker_rhs(n, x3, v3, b, k_lin, k3, mass, damping, k3a)
                for i in range(n):
                    x4[i] = xs[i] + dt * v3[i]
                    v4[i] = vs[i] + dt * k3a[i]
                _whisker_rhs(n, x4, v4, b, k_lin, k3, mass, damping, k4a)
                ok = True
                for i in range(n):
                    xs[i] = xs[i] + (dt / 6.0) * (vs[i] + 2.0 * v2[i] + 2.0 * v3[i] + v4[i])
                    vs[i] = vs[i] + (dt / 6.0) * (k1a[i] + 2.0 * k2a[i] + 2.0 * k3a[i] + k4a[i])
                    if not (isfinite(xs[i]) and isfinite(vs[i])) or fabs(xs[i]) > 1e6:
                        ok = False
                if not ok:
                    status = 1
                    break
            if status:
                break
            for i in range(n):
                x_out[rec, i] = xs[i]
                v_out[rec, i] = vs[i]
    for i in range(n):
        y[i, 0] = xs[i]
        y[i, 1] = vs[i]
    return status
