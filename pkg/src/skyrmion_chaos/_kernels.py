"""Compiled RK4 inner loop for the k=1 lattice equations of motion.

Same arithmetic as lattice.lattice_acceleration with Density(k=1, gamma6, sb);
tests pin the two together.
"""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def accel_k1(F, G, h, gamma6, sb, out):
    N = F.shape[0] - 1
    flux = np.empty(N)
    curv = np.empty(N)
    for e in range(N):
        xe = (e + 0.5) * h
        Fe = 0.5 * (F[e] + F[e + 1])
        D = (F[e + 1] - F[e]) / h
        s = np.sin(Fe)
        s2 = s * s
        sin2 = np.sin(2.0 * Fe)
        Me = xe * xe / 4 + 2.0 * s2 + (gamma6 / 4) * s2 * s2 / (xe * xe)
        MFe = 2.0 * sin2 + (gamma6 / 2) * s2 * sin2 / (xe * xe)
        flux[e] = Me * D
        curv[e] = 0.25 * MFe * D * D
    out[0] = 0.0
    out[N] = 0.0
    for i in range(1, N):
        x = i * h
        f = F[i]
        s = np.sin(f)
        s2 = s * s
        sin2 = np.sin(2.0 * f)
        UF = 2.0 * sin2 / 8 + s2 * sin2 / (x * x) + sb * x * x * s
        R = (flux[i] - flux[i - 1]) / h - (curv[i] + curv[i - 1]) - UF
        M = x * x / 4 + 2.0 * s2 + (gamma6 / 4) * s2 * s2 / (x * x)
        MF = 2.0 * sin2 + (gamma6 / 2) * s2 * sin2 / (x * x)
        out[i] = (R - 0.5 * MF * G[i] * G[i]) / M


@njit(cache=True)
def rk4_k1(F, G, dt, nsteps, h, gamma6, sb):
    """Advance (F, G) in place by nsteps; boundary nodes untouched."""
    n = F.shape[0]
    a1 = np.empty(n)
    a2 = np.empty(n)
    a3 = np.empty(n)
    a4 = np.empty(n)
    F2 = np.empty(n)
    G2 = np.empty(n)
    F3 = np.empty(n)
    G3 = np.empty(n)
    F4 = np.empty(n)
    G4 = np.empty(n)
    for _ in range(nsteps):
        accel_k1(F, G, h, gamma6, sb, a1)
        for i in range(n):
            F2[i] = F[i] + 0.5 * dt * G[i]
            G2[i] = G[i] + 0.5 * dt * a1[i]
        accel_k1(F2, G2, h, gamma6, sb, a2)
        for i in range(n):
            F3[i] = F[i] + 0.5 * dt * G2[i]
            G3[i] = G[i] + 0.5 * dt * a2[i]
        accel_k1(F3, G3, h, gamma6, sb, a3)
        for i in range(n):
            F4[i] = F[i] + dt * G3[i]
            G4[i] = G[i] + dt * a3[i]
        accel_k1(F4, G4, h, gamma6, sb, a4)
        for i in range(1, n - 1):
            F[i] = F[i] + (dt / 6) * (G[i] + 2 * G2[i] + 2 * G3[i] + G4[i])
            G[i] = G[i] + (dt / 6) * (a1[i] + 2 * a2[i] + 2 * a3[i] + a4[i])
