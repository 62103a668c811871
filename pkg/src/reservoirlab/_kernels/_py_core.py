"""Pure-Python reference implementation of the hot loops.

Mirrors ``_core.pyx`` operation-for-operation so both backends produce
bit-identical trajectories (the compiled extension is built with
floating-point contraction disabled).  Used automatically when the
compiled module is unavailable, and by the backend-equivalence tests.
"""

from __future__ import annotations

from math import cos, isfinite, sin

_MASK64 = (1 << 64) - 1
_INV53 = 1.0 / 9007199254740992.0  # exactly 2**-53
_TWO_PI = 6.283185307179586


def rng_fill(state, out):
    """Fill ``out`` with uniforms in [0,1); advance xoshiro256** ``state``."""
    s0 = int(state[0])
    s1 = int(state[1])
    s2 = int(state[2])
    s3 = int(state[3])
    n = out.shape[0]
    for i in range(n):
        r = ((((s1 * 5) & _MASK64) << 7 | ((s1 * 5) & _MASK64) >> 57) * 9) & _MASK64
        t = (s1 << 17) & _MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = ((s3 << 45) | (s3 >> 19)) & _MASK64
        out[i] = (r >> 11) * _INV53
    state[0] = s0
    state[1] = s1
    state[2] = s2
    state[3] = s3


def _km_accel(R, V, t, amp, R0, f, rho, mu, sigma, p0, kgas, c):
    # Keller-Miksis radial acceleration, viscous R-double-dot term moved
    # to the left-hand side.
    pg0 = p0 + 2.0 * sigma / R0
    expo = 3.0 * kgas
    ratio = (R0 / R) ** expo
    p_gas = pg0 * ratio
    p_s = p_gas - 2.0 * sigma / R - 4.0 * mu * V / R
    p_inf = p0 + amp * sin(_TWO_PI * f * t)
    dp_inf = amp * _TWO_PI * f * cos(_TWO_PI * f * t)
    dp_s = (-expo * p_gas * V / R) + 2.0 * sigma * V / (R * R) \
        + 4.0 * mu * V * V / (R * R)
    num = (1.0 + V / c) * (p_s - p_inf) / rho \
        + (R / (rho * c)) * (dp_s - dp_inf) \
        - 1.5 * V * V * (1.0 - V / (3.0 * c))
    den = (1.0 - V / c) * R + 4.0 * mu / (rho * c)
    return num / den


def km_run(params, amps, sub_per_record, dt, t0, y, r_out, v_out):
    """Integrate one bubble; record (R, V) after each amplitude block.

    Returns 0 on success, 1 on collapse/overflow/non-finite state.
    """
    R0 = params[0]
    f = params[1]
    rho = params[2]
    mu = params[3]
    sigma = params[4]
    p0 = params[5]
    kgas = params[6]
    c = params[7]
    R = y[0]
    V = y[1]
    r_lo = 0.02 * R0
    r_hi = 50.0 * R0
    cnt = 0
    n_rec = amps.shape[0]
    for rec in range(n_rec):
        amp = amps[rec]
        for _ in range(sub_per_record):
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
                y[0] = R
                y[1] = V
                return 1
        r_out[rec] = R
        v_out[rec] = V
    y[0] = R
    y[1] = V
    return 0


def _km_cluster_rhs(n, xs, vs, t, amp, r0s, f, rho, mu, sigma, p0, kgas, c,
                    invdist, acc):
    # Rows of the implicit system: den_i*A_i + sum_j (R_j^2/d_ij)*A_j = b_i.
    a = [[0.0] * n for _ in range(n)]
    b = [0.0] * n
    p_inf = p0 + amp * sin(_TWO_PI * f * t)
    dp_inf = amp * _TWO_PI * f * cos(_TWO_PI * f * t)
    expo = 3.0 * kgas
    for i in range(n):
        R = xs[i]
        V = vs[i]
        R0 = r0s[i]
        pg0 = p0 + 2.0 * sigma / R0
        ratio = (R0 / R) ** expo
        p_gas = pg0 * ratio
        p_s = p_gas - 2.0 * sigma / R - 4.0 * mu * V / R
        dp_s = (-expo * p_gas * V / R) + 2.0 * sigma * V / (R * R) \
            + 4.0 * mu * V * V / (R * R)
        num = (1.0 + V / c) * (p_s - p_inf) / rho \
            + (R / (rho * c)) * (dp_s - dp_inf) \
            - 1.5 * V * V * (1.0 - V / (3.0 * c))
        den = (1.0 - V / c) * R + 4.0 * mu / (rho * c)
        a[i][i] = den
        for j in range(n):
            if j != i:
                w = invdist[i, j]
                a[i][j] = xs[j] * xs[j] * w
                num = num - 2.0 * xs[j] * vs[j] * vs[j] * w
        b[i] = num
    # Gaussian elimination without pivoting; diagonally dominant system.
    for k in range(n - 1):
        for i in range(k + 1, n):
            factor = a[i][k] / a[k][k]
            for j in range(k + 1, n):
                a[i][j] = a[i][j] - factor * a[k][j]
            b[i] = b[i] - factor * b[k]
    for i in range(n - 1, -1, -1):
        s = b[i]
        for j in range(i + 1, n):
            s = s - a[i][j] * acc[j]
        acc[i] = s / a[i][i]


def km_cluster_run(r0s, shared, invdist, amps, sub_per_record, dt, t0, y,
                   r_out, v_out):
    """Integrate a radiatively coupled bubble cluster.

    ``shared`` packs (f, rho, mu, sigma, p0, kgas, c); ``invdist[i, j]`` is
    1/distance (0 when coupling is off or i == j).  Returns 0/1 like km_run.
    """
    f = shared[0]
    rho = shared[1]
    mu = shared[2]
    sigma = shared[3]
    p0 = shared[4]
    kgas = shared[5]
    c = shared[6]
    n = r0s.shape[0]
    xs = [y[i, 0] for i in range(n)]
    vs = [y[i, 1] for i in range(n)]
    k1a = [0.0] * n
    k2a = [0.0] * n
    k3a = [0.0] * n
    k4a = [0.0] * n
    cnt = 0
    n_rec = amps.shape[0]
    for rec in range(n_rec):
        amp = amps[rec]
        for _ in range(sub_per_record):
            t = t0 + cnt * dt
            _km_cluster_rhs(n, xs, vs, t, amp, r0s, f, rho, mu, sigma, p0,
                            kgas, c, invdist, k1a)
            x2 = [xs[i] + 0.5 * dt * vs[i] for i in range(n)]
            v2 = [vs[i] + 0.5 * dt * k1a[i] for i in range(n)]
            _km_cluster_rhs(n, x2, v2, t + 0.5 * dt, amp, r0s, f, rho, mu,
                            sigma, p0, kgas, c, invdist, k2a)
            x3 = [xs[i] + 0.5 * dt * v2[i] for i in range(n)]
            v3 = [vs[i] + 0.5 * dt * k2a[i] for i in range(n)]
            _km_cluster_rhs(n, x3, v3, t + 0.5 * dt, amp, r0s, f, rho, mu,
                            sigma, p0, kgas, c, invdist, k3a)
            x4 = [xs[i] + dt * v3[i] for i in range(n)]
            v4 = [vs[i] + dt * k3a[i] for i in range(n)]
            _km_cluster_rhs(n, x4, v4, t + dt, amp, r0s, f, rho, mu, sigma,
                            p0, kgas, c, invdist, k4a)
            ok = True
            for i in range(n):
                xs[i] = xs[i] + (dt / 6.0) * (vs[i] + 2.0 * v2[i] + 2.0 * v3[i] + v4[i])
                vs[i] = vs[i] + (dt / 6.0) * (k1a[i] + 2.0 * k2a[i] + 2.0 * k3a[i] + k4a[i])
                if not (isfinite(xs[i]) and isfinite(vs[i])) \
                        or xs[i] < 0.02 * r0s[i] or xs[i] > 50.0 * r0s[i]:
                    ok = False
            cnt += 1
            if not ok:
                for i in range(n):
                    y[i, 0] = xs[i]
                    y[i, 1] = vs[i]
                return 1
        for i in range(n):
            r_out[rec, i] = xs[i]
            v_out[rec, i] = vs[i]
    for i in range(n):
        y[i, 0] = xs[i]
        y[i, 1] = vs[i]
    return 0


def _whisker_rhs(n, xs, vs, base, k_lin, k3, mass, damping, acc):
    # Element i connects mass i to mass i-1 (element 0 to the driven base).
    t_prev = 0.0
    for i in range(n - 1, -1, -1):
        left = xs[i - 1] if i > 0 else base
        d = xs[i] - left
        t_i = k_lin[i] * d + k3[i] * d * d * d
        acc[i] = (-t_i + t_prev - damping * vs[i]) / mass
        t_prev = t_i


def whisker_run(k_lin, k3, mass, damping, base, sub_per_record, dt, y,
                x_out, v_out):
    """Integrate the tapered mass-spring chain with base drive.

    ``base[rec]`` is the prescribed base displacement held constant over
    each record block.  Returns 0 on success, 1 on instability.
    """
    n = k_lin.shape[0]
    xs = [y[i, 0] for i in range(n)]
    vs = [y[i, 1] for i in range(n)]
    k1a = [0.0] * n
    k2a = [0.0] * n
    k3a = [0.0] * n
    k4a = [0.0] * n
    n_rec = base.shape[0]
    for rec in range(n_rec):
        b = base[rec]
        for _ in range(sub_per_record):
            _whisker_rhs(n, xs, vs, b, k_lin, k3, mass, damping, k1a)
            x2 = [xs[i] + 0.5 * dt * vs[i] for i in range(n)]
            v2 = [vs[i] + 0.5 * dt * k1a[i] for i in range(n)]
            _whisker_rhs(n, x2, v2, b, k_lin, k3, mass, damping, k2a)
            x3 = [xs[i] + 0.5 * dt * v2[i] for i in range(n)]
            v3 = [vs[i] + 0.5 * dt * k2a[i] for i in range(n)]
            _whisker_rhs(n, x3, v3, b, k_lin, k3, mass, damping, k3a)
            x4 = [xs[i] + dt * v3[i] for i in range(n)]
            v4 = [vs[i] + dt * k3a[i] for i in range(n)]
            _whisker_rhs(n, x4, v4, b, k_lin, k3, mass, damping, k4a)
            ok = True
            for i in range(n):
                xs[i] = xs[i] + (dt / 6.0) * (vs[i] + 2.0 * v2[i] + 2.0 * v3[i] + v4[i])
                vs[i] = vs[i] + (dt / 6.0) * (k1a[i] + 2.0 * k2a[i] + 2.0 * k3a[i] + k4a[i])
                if not (isfinite(xs[i]) and isfinite(vs[i])) or abs(xs[i]) > 1e6:
                    ok = False
            if not ok:
                for i in range(n):
                    y[i, 0] = xs[i]
                    y[i, 1] = vs[i]
                return 1
        for i in range(n):
            x_out[rec, i] = xs[i]
            v_out[rec, i] = vs[i]
    for i in range(n):
        y[i, 0] = xs[i]
        y[i, 1] = vs[i]
    return 0
