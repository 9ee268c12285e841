"""Fixed-step switched-network solvers (numba inner loops).

Every storage element is replaced by its trapezoidal companion model
(capacitor: G = 2C/dt with a history current source; inductor:
G = dt/2L with a history source), so each timestep reduces to a small
linear solve whose matrix depends only on the discrete topology state
(gate drives, diode conduction set, relay positions).  The per-topology
matrix inverses are precomputed in numpy and the kernels do nothing but
assemble right-hand sides, multiply, and iterate diode conduction states
to a consistent fixed point.

Charger chain unknowns per step: [i_Lr, v_Cr, i_Lc, v_Cc]
  - bridge mode: 0 blocked (i_Lr = 0), 1 conducting (sees |v_sec|)
  - boost mode:  0 switch on, 1 diode on, 2 idle (discontinuous)
  - relay:       0 battery disconnected, 1 connected through r_bat

Inverter chain unknowns per step: [e, i_a, i_b, i_Lo, v_Co] where e is
the per-half-primary winding voltage, i_a/i_b the leg currents and the
ideal center-tapped transformer imposes i_a - i_b = n * i_Lo.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

# diode/current consistency tolerances (A, V); narrower than any signal
# of interest, wide enough to avoid mode chatter from float rounding
I_TOL = 1e-9
V_TOL = 1e-9

STATUS_OK = 0
STATUS_NO_CONSISTENT_STATE = 1

# output channel order of run_full (engine builds Waveforms from this)
FULL_CHANNELS = (
    "mains_v",
    "mains_i",
    "rectified_v",
    "battery_charge_v",
    "boost_inductor_i",
    "boost_switch_i",
    "boost_diode_i",
    "boost_cap_i",
    "boost_out_i",
    "inverter_in_i",
    "inverter_leg1_i",
    "inverter_leg2_i",
    "load_v",
    "load_i",
    "load_p",
    "transfer_pole",
    "load_connected",
    "charger_connected",
)

BOOST_CHANNELS = (
    "boost_inductor_i",
    "battery_charge_v",
    "boost_inductor_v",
    "boost_cap_i",
    "boost_switch_i",
    "boost_diode_i",
    "boost_out_i",
)


def build_charger_matrices(dt, l_r, c_r, l_c, c_c, r_c, g_bat):
    """Inverse system matrices for all 12 charger topology states.

    Index layout: bridge*6 + boost_mode*2 + relay.
    """
    glr = dt / (2.0 * l_r)
    gcr = 2.0 * c_r / dt
    glc = dt / (2.0 * l_c)
    gcc = 2.0 * c_c / dt
    minv = np.empty((12, 4, 4))
    for bridge in (0, 1):
        for bmode in (0, 1, 2):
            for relay in (0, 1):
                m = np.zeros((4, 4))
                if bridge:
                    m[0, 0] = 1.0
                    m[0, 1] = glr
                else:
                    m[0, 0] = 1.0
                m[1, 0] = -1.0
                m[1, 1] = gcr
                m[1, 2] = 1.0
                if bmode == 0:
                    m[2, 1] = -glc
                    m[2, 2] = 1.0
                elif bmode == 1:
                    m[2, 1] = -glc
                    m[2, 2] = 1.0
                    m[2, 3] = glc
                else:
                    m[2, 2] = 1.0
                if bmode == 1:
                    m[3, 2] = -1.0
                m[3, 3] = gcc + 1.0 / r_c + (g_bat if relay else 0.0)
                minv[bridge * 6 + bmode * 2 + relay] = np.linalg.inv(m)
    return minv, glr, gcr, glc, gcc


def build_inverter_matrices(dt, r_on, r_s, c_s, n, l_o, c_o, r_load, l_load):
    """Inverse matrices for the 8 inverter topology states
    (leg A gate, leg B gate, load attached)."""
    gamma = r_s + dt / (2.0 * c_s)
    alpha_on = gamma * r_on / (gamma + r_on)
    alpha_off = gamma
    glo = dt / (2.0 * l_o)
    gco = 2.0 * c_o / dt
    gld = 1.0 / (r_load + 2.0 * l_load / dt)
    minv = np.empty((8, 5, 5))
    for ga in (0, 1):
        for gb in (0, 1):
            for att in (0, 1):
                a_a = 2.0 * (alpha_on if ga else alpha_off)
                a_b = 2.0 * (alpha_on if gb else alpha_off)
                m = np.zeros((5, 5))
                m[0, 0] = 1.0
                m[0, 1] = a_a
                m[1, 0] = -1.0
                m[1, 2] = a_b
                m[2, 1] = 1.0
                m[2, 2] = -1.0
                m[2, 3] = -n
                m[3, 0] = -glo * n
                m[3, 3] = 1.0
                m[3, 4] = glo
                m[4, 3] = 1.0
                m[4, 4] = -(gco + (gld if att else 0.0))
                minv[ga * 4 + gb * 2 + att] = np.linalg.inv(m)
    return minv, gamma, alpha_on, glo, gco, gld


@njit(cache=True)
def _solve4(minv, idx, r0, r1, r2, r3, w):
    for i in range(4):
        w[i] = (
            minv[idx, i, 0] * r0
            + minv[idx, i, 1] * r1
            + minv[idx, i, 2] * r2
            + minv[idx, i, 3] * r3
        )


@njit(cache=True)
def _solve5(minv, idx, r0, r1, r2, r3, r4, z):
    for i in range(5):
        z[i] = (
            minv[idx, i, 0] * r0
            + minv[idx, i, 1] * r1
            + minv[idx, i, 2] * r2
            + minv[idx, i, 3] * r3
            + minv[idx, i, 4] * r4
        )


@njit(cache=True)
def run_boost(n_steps, dt, v_in, gates, minv, glc, gcc, r_c, out):
    """Boost converter alone from a DC rail into its resistive load."""
    i_l = 0.0
    v_c = 0.0
    v_l_old = 0.0
    i_c_old = 0.0
    mode = 2  # idle at t=0
    w = np.zeros(4)

    out[0, 0] = 0.0
    out[1, 0] = 0.0
    out[2, 0] = 0.0
    out[3, 0] = 0.0
    out[4, 0] = 0.0
    out[5, 0] = 0.0
    out[6, 0] = 0.0

    for k in range(n_steps):
        gate = gates[k]
        if gate:
            mode = 0
        elif mode == 0:
            mode = 1 if i_l > I_TOL else 2
        rhs_l = i_l + glc * v_l_old
        rhs_c = gcc * v_c + i_c_old
        tried_diode_on = False
        i_new = 0.0
        v_new = v_c
        for _ in range(8):
            # 2x2 companion solve: rows are the inductor branch and the
            # output-capacitor node
            if mode == 0:
                a00, a01 = 1.0, 0.0
                b0 = rhs_l + glc * v_in
            elif mode == 1:
                a00, a01 = 1.0, glc
                b0 = rhs_l + glc * v_in
            else:
                a00, a01 = 1.0, 0.0
                b0 = 0.0
            a10 = -1.0 if mode == 1 else 0.0
            a11 = gcc + 1.0 / r_c
            b1 = rhs_c
            det = a00 * a11 - a01 * a10
            i_new = (b0 * a11 - a01 * b1) / det
            v_new = (a00 * b1 - b0 * a10) / det
            if mode == 1 and i_new < -I_TOL:
                mode = 2
                continue
            if (
                mode == 2
                and (not gate)
                and (not tried_diode_on)
                and v_in > v_new + V_TOL
            ):
                mode = 1
                tried_diode_on = True
                continue
            break
        i_l = i_new if mode != 2 else 0.0
        v_c = v_new
        if mode == 0:
            v_l = v_in
        elif mode == 1:
            v_l = v_in - v_c
        else:
            v_l = 0.0
        i_diode = i_l if mode == 1 else 0.0
        i_out = v_c / r_c
        i_c = i_diode - i_out
        v_l_old = v_l
        i_c_old = i_c
        out[0, k + 1] = i_l
        out[1, k + 1] = v_c
        out[2, k + 1] = v_l
        out[3, k + 1] = i_c
        out[4, k + 1] = i_l if mode == 0 else 0.0
        out[5, k + 1] = i_diode
        out[6, k + 1] = i_out
    return STATUS_OK, 0


@njit(cache=True)
def run_full(
    n_steps,
    dt,
    v_grid_peak,
    v_sec_peak,
    w0,
    av_t,
    av_v,
    po_t,
    po_pole,
    po_seated,
    g_boost,
    g_leg_a,
    g_leg_b,
    minv_chg,
    glr,
    gcr,
    glc,
    gcc,
    r_c,
    g_bat,
    battery_v,
    battery_r,
    minv_inv,
    gamma,
    r_on,
    dt2cs,
    n_tx,
    glo,
    gco,
    gld,
    r_load,
    l_load,
    tx1_ratio,
    v_ref,
    hyst,
    out,
):
    """Full system: grid, charger chain, inverter chain, supervised load."""
    # charger states and companion histories
    i_lr = 0.0
    v_cr = 0.0
    i_lc = 0.0
    v_cc = 0.0
    v_lr_old = 0.0
    v_lc_old = 0.0
    i_cr_old = 0.0
    i_cc_old = 0.0
    bridge = 0
    bmode = 2
    relay = 0
    i_chg = 0.0

    # inverter states
    v_s = np.zeros(4)  # per-switch snubber capacitor voltages
    i_sn = np.zeros(4)  # per-switch snubber currents (companion history)
    i_lo = 0.0
    v_co = 0.0
    v_lo_old = 0.0
    i_co_old = 0.0
    i_ild = 0.0  # load current when fed from the inverter
    v_ild_old = 0.0

    # load branch when fed from the grid
    i_gld = 0.0
    v_gld_old = 0.0

    two_l_dt = 2.0 * l_load / dt

    w = np.zeros(4)
    z = np.zeros(5)

    ia = 0
    ip = 0
    na = av_t.shape[0]
    npo = po_t.shape[0]

    # initial sample (all states zero, grid sine starts at its zero crossing)
    for ch in range(15):
        out[ch, 0] = 0.0
    out[15, 0] = po_pole[0]
    out[16, 0] = po_seated[0]
    out[17, 0] = 0.0

    for k in range(n_steps):
        t0 = k * dt
        t1 = (k + 1) * dt
        while ia + 1 < na and t0 >= av_t[ia + 1]:
            ia += 1
        while ip + 1 < npo and t0 >= po_t[ip + 1]:
            ip += 1
        avail = av_v[ia]
        pole = po_pole[ip]
        seated = po_seated[ip]

        # charge-controller relay from the battery terminal voltage seen
        # at the end of the previous step
        v_meas = battery_v + i_chg * battery_r
        if hyst == 0.0:
            relay = 1 if v_meas < v_ref else 0
        elif v_meas >= v_ref + hyst:
            relay = 0
        elif v_meas < v_ref - hyst:
            relay = 1

        # ---- charger chain -------------------------------------------
        if avail:
            vs1 = v_sec_peak * math.sin(w0 * t1)
        else:
            vs1 = 0.0
        u_new = abs(vs1)

        gate_b = g_boost[k]
        if gate_b:
            bmode = 0
        elif bmode == 0:
            bmode = 1 if i_lc > I_TOL else 2

        rhs1 = gcr * v_cr + i_cr_old
        ih_r = i_lr + glr * v_lr_old
        ih_c = i_lc + glc * v_lc_old
        rhs3_base = gcc * v_cc + i_cc_old + (g_bat * battery_v if relay else 0.0)

        ok = False
        tried_bridge_on = False
        tried_diode_on = False
        for _ in range(32):
            idx = bridge * 6 + bmode * 2 + relay
            r0 = glr * u_new + ih_r if bridge else 0.0
            r2 = ih_c if bmode != 2 else 0.0
            _solve4(minv_chg, idx, r0, rhs1, r2, rhs3_base, w)
            if bridge == 1 and w[0] < -I_TOL:
                # current crossed zero within the step: commutate off
                bridge = 0
                continue
            if bridge == 0 and (not tried_bridge_on) and u_new > w[1] + V_TOL:
                bridge = 1
                tried_bridge_on = True
                continue
            if not gate_b:
                if bmode == 1 and w[2] < -I_TOL:
                    bmode = 2
                    continue
                if bmode == 2 and (not tried_diode_on) and w[1] > w[3] + V_TOL:
                    bmode = 1
                    tried_diode_on = True
                    continue
            ok = True
            break
        if not ok:
            return STATUS_NO_CONSISTENT_STATE, k

        i_lr = w[0] if bridge else 0.0
        v_cr = w[1]
        i_lc = w[2] if bmode != 2 else 0.0
        v_cc = w[3]
        v_lr_old = (u_new - v_cr) if bridge else 0.0
        if bmode == 0:
            v_lc_old = v_cr
        elif bmode == 1:
            v_lc_old = v_cr - v_cc
        else:
            v_lc_old = 0.0
        i_cr_old = i_lr - i_lc
        i_chg = (v_cc - battery_v) * g_bat if relay else 0.0
        i_out_boost = v_cc / r_c + i_chg
        i_diode = i_lc if bmode == 1 else 0.0
        i_cc_old = i_diode - i_out_boost

        # ---- inverter chain ------------------------------------------
        ga = g_leg_a[k]
        gb = g_leg_b[k]
        att = 1 if (seated and pole == 0) else 0
        d1 = v_s[0] + dt2cs * i_sn[0]
        d2 = v_s[1] + dt2cs * i_sn[1]
        d3 = v_s[2] + dt2cs * i_sn[2]
        d4 = v_s[3] + dt2cs * i_sn[3]
        if ga:
            b_a = r_on * (d1 + d2) / (gamma + r_on)
        else:
            b_a = d1 + d2
        if gb:
            b_b = r_on * (d3 + d4) / (gamma + r_on)
        else:
            b_b = d3 + d4
        ih_lo = i_lo + glo * v_lo_old
        if att:
            h_load = (two_l_dt - r_load) * i_ild + v_ild_old
            rhs4 = -gco * v_co - i_co_old + gld * h_load
        else:
            h_load = 0.0
            rhs4 = -gco * v_co - i_co_old
        idx = ga * 4 + gb * 2 + att
        _solve5(
            minv_inv,
            idx,
            battery_v - b_a,
            battery_v - b_b,
            0.0,
            ih_lo,
            rhs4,
            z,
        )
        e = z[0]
        i_a = z[1]
        i_b = z[2]
        i_lo = z[3]
        v_co_new = z[4]

        # snubber capacitor updates (both units of a leg carry the leg
        # current; their states stay pairwise identical)
        if ga:
            v_u = (gamma * r_on * i_a + r_on * d1) / (gamma + r_on)
            isn_a = (v_u - d1) / gamma
        else:
            isn_a = i_a
        if gb:
            v_u = (gamma * r_on * i_b + r_on * d3) / (gamma + r_on)
            isn_b = (v_u - d3) / gamma
        else:
            isn_b = i_b
        hcs = dt2cs
        v_s[0] += hcs * (isn_a + i_sn[0])
        v_s[1] += hcs * (isn_a + i_sn[1])
        v_s[2] += hcs * (isn_b + i_sn[2])
        v_s[3] += hcs * (isn_b + i_sn[3])
        i_sn[0] = isn_a
        i_sn[1] = isn_a
        i_sn[2] = isn_b
        i_sn[3] = isn_b

        v_lo_old = n_tx * e - v_co_new
        if att:
            i_ild = gld * (v_co_new + h_load)
            v_ild_old = v_co_new
        else:
            i_ild = 0.0
            v_ild_old = 0.0
        i_co_old = i_lo - i_ild
        v_co = v_co_new

        # ---- load branch on the grid side ----------------------------
        vg1 = v_grid_peak * math.sin(w0 * t1) if avail else 0.0
        if seated and pole == 1 and avail:
            h_g = (two_l_dt - r_load) * i_gld + v_gld_old
            i_gld = (vg1 + h_g) / (r_load + two_l_dt)
            v_gld_old = vg1
        else:
            i_gld = 0.0
            v_gld_old = 0.0

        # ---- record ---------------------------------------------------
        sgn = 1.0 if vs1 > 0.0 else (-1.0 if vs1 < 0.0 else 0.0)
        mains_i = (sgn * i_lr / tx1_ratio + i_gld) if avail else 0.0
        if seated and pole == 0:
            load_v = v_co
            load_i = i_ild
        elif seated and pole == 1 and avail:
            load_v = vg1
            load_i = i_gld
        else:
            load_v = 0.0
            load_i = 0.0

        out[0, k + 1] = vg1
        out[1, k + 1] = mains_i
        out[2, k + 1] = v_cr
        out[3, k + 1] = v_cc
        out[4, k + 1] = i_lc
        out[5, k + 1] = i_lc if bmode == 0 else 0.0
        out[6, k + 1] = i_diode
        out[7, k + 1] = i_cc_old
        out[8, k + 1] = i_out_boost
        out[9, k + 1] = i_a + i_b
        out[10, k + 1] = i_a
        out[11, k + 1] = i_b
        out[12, k + 1] = load_v
        out[13, k + 1] = load_i
        out[14, k + 1] = load_v * load_i
        out[15, k + 1] = pole
        out[16, k + 1] = seated
        out[17, k + 1] = relay

    return STATUS_OK, 0
