"""Writes the bundled benchmark model files under data/benchmarks/.

Prints the largest real eigenvalue part over the domain vertices of each case
as a stability sanity check.
"""
import itertools
import json
import os

import numpy as np

out = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "data", "benchmarks") + os.sep
def Z(n): return np.zeros((n, n))
def E(n, i, j, v=1.0):
    m = Z(n); m[i, j] = v; return m
def lst(m): return [[float(x) for x in r] for r in m]
def write(name, dim, vars_, terms, domain, theta, horizon, proj, prov, stand_in, learn, notes=(), step=0.01):
    d = {"name": name, "dim": dim, "vars": vars_,
         "terms": [{"monomial": mono, "matrix": lst(m)} for mono, m in terms],
         "domain": domain, "distribution": "uniform",
         "theta": theta, "horizon": horizon, "step_size": step, "projection": proj,
         "provenance": prov, "stand_in": stand_in, "learn": learn}
    if notes: d["notes"] = list(notes)
    # sanity: eigenvalues at domain vertices
    names = vars_
    worst = -1e9
    for vals in itertools.product(*[domain[v] for v in names]):
        A = Z(dim)
        for mono, m in terms:
            c = 1.0
            for k, p in mono.items(): c *= vals[names.index(k)] ** p
            A = A + c * m
        worst = max(worst, max(np.linalg.eigvals(A).real))
    print(name, dim, "max Re(lambda) =", round(worst, 4))
    json.dump(d, open(out + name + ".json", "w"), indent=1)

# flight collision: x' = d, d1' = -w d2, d2' = w d1
n = 4
M0 = E(n, 0, 2) + E(n, 1, 3)
M1 = E(n, 2, 3, -1) + E(n, 3, 2, 1)
write("flight-collision", 4, ["omega"], [({}, M0), ({"omega": 1}, M1)], {"omega": [1, 3]},
      [[-1, 1], [-1, 1], [20, 30], [20, 30]], 2000, [0, 1],
      "Two-aircraft relative motion (positions x, velocities d) with uncertain turning rate omega in [1,3].",
      False, {"N": 100, "O": 100})

# platoon stand-in: 5 vehicles x (gap error, velocity, acceleration)
n = 15
A = Z(n)
for v in range(5):
    e, vel, acc = 3 * v, 3 * v + 1, 3 * v + 2
    A[e, vel] = -1.0
    if v > 0: A[e, 3 * (v - 1) + 1] = 1.0
    A[vel, acc] = 1.0
    A[acc, acc] = -2.0
    A[acc, vel] = -3.0
    A[acc, e] = 1.5
    if v > 0: A[acc, 3 * (v - 1) + 1] = 0.3
# 1-based cells [3,4] and [4,5] -> 0-based (2,3), (3,4)
A[2, 3] = 0.2
a34, a45 = A[2, 3], A[3, 4]
M0 = A.copy(); M0[2, 3] = 0; M0[3, 4] = 0
write("platoon", 15, ["p34", "p45"], [({}, M0), ({"p34": 1}, E(n, 2, 3)), ({"p45": 1}, E(n, 3, 4))],
      {"p34": sorted([a34 * 0.98, a34 * 1.02]), "p45": sorted([a45 * 0.98, a45 * 1.02])},
      [[-1, 1]] * 15, 2000, [0, 1],
      "stand-in: 15-state five-vehicle platoon chain (gap error, velocity, acceleration per vehicle) built locally; the ARCH platoon matrices were not available. Entries at 1-based cells [3,4] and [4,5] carry a +-2% perturbation.",
      True, {"N": 300, "O": 300})

# rendezvous stand-in: Clohessy-Wiltshire relative motion with feedback.
n = 6
Mp = Z(n); Mp[0, 3] = Mp[1, 4] = Mp[2, 5] = 1.0
s = 1e-5  # omega = s * n_param
Mw2 = E(n, 3, 0, 3 * s * s) + E(n, 5, 2, -s * s)
Mw = E(n, 3, 4, 2 * s) + E(n, 4, 3, -2 * s)
kv, kp = 1000.0, 1500.0
Mq = -kv * (E(n, 3, 3) + E(n, 4, 4) + E(n, 5, 5)) - kp * (E(n, 3, 0) + E(n, 4, 1) + E(n, 5, 2))
write("rendezvous", 6, ["inv_mc", "n_param"],
      [({}, Mp), ({"n_param": 2}, Mw2), ({"n_param": 1}, Mw), ({"inv_mc": 1}, Mq)],
      {"inv_mc": [1 / 525, 1 / 475], "n_param": [97200, 97250]},
      [[-1, 1]] * 3 + [[-0.1, 0.1]] * 3, 1901, [0, 1],
      "stand-in: Clohessy-Wiltshire relative motion with orbital rate omega = 1e-5 * n_param and velocity/position feedback scaled by 1/m_c (inv_mc in [1/525, 1/475]); the original linearization was not available.",
      True, {"N": 200, "O": 200},
      notes=["reported at step 1901, where Flow* stops producing flowpipes for this case"])

# ACC stand-in: gap, lead velocity, ego velocity, ego acceleration.
n = 4
A = np.array([[0, 1, -1, 0], [0, -0.1, 0, 0], [0, 0, 0, 1], [1.2, 0.5, -2.0, 0]], float)
M0 = A.copy(); M0[3, 3] = 0
write("acc", 4, ["inv_tau"], [({}, M0), ({"inv_tau": 1}, E(n, 3, 3, -1))], {"inv_tau": [1.5, 2.5]},
      [[9, 11], [-1, 1], [-1, 1], [-0.1, 0.1]], 2000, [0, 2],
      "stand-in: linear adaptive cruise control loop with uncertain actuator lag 1/tau; the original model was not available.",
      True, {"N": 100, "O": 100})

# anaesthesia stand-in: 3-compartment PK + effect site + filtered infusion state.
n = 5
k10, k12, k21, k13, k31, ke0 = 0.12, 0.11, 0.055, 0.04, 0.0033, 0.46
A = np.array([[-(k10 + k12 + k13), k21, k31, 0, 1],
              [k12, -k21, 0, 0, 0],
              [k13, 0, -k31, 0, 0],
              [ke0, 0, 0, -ke0, 0],
              [0, 0, 0, 0, -0.5]], float)
M0 = A.copy(); M0[0, 0] = -(k12 + k13)
write("anaesthesia", 5, ["k10"], [({}, M0), ({"k10": 1}, E(n, 0, 0, -1))], {"k10": [0.1, 0.14]},
      [[1, 2], [0, 1], [0, 1], [0, 0.5], [0, 1]], 2000, [0, 3],
      "stand-in: three-compartment pharmacokinetic model with effect site and infusion filter, uncertain elimination rate k10; the original benchmark matrices were not available.",
      True, {"N": 100, "O": 100})

# motor-transmission stand-in.
n = 5
A = np.array([[0, 1, 0, 0, 0],
              [-4, -0.8, 2, 0, 0],
              [0, 0, 0, 1, 0],
              [1, 0, -3, -0.6, 0.5],
              [0, 0, 0, -1, -1.5]], float)
M0 = A.copy(); M0[1, 0] = 0; M0[3, 3] = 0
write("motor-transmission", 5, ["stiffness", "damping"],
      [({}, M0), ({"stiffness": 1}, E(n, 1, 0, -1)), ({"damping": 1}, E(n, 3, 3, -1))],
      {"stiffness": [3.5, 4.5], "damping": [0.5, 0.7]},
      [[-0.1, 0.1], [-0.1, 0.1], [-0.1, 0.1], [-0.1, 0.1], [0.9, 1.1]], 2000, [0, 2],
      "stand-in: two-inertia drive train with uncertain shaft stiffness and damping; the original model was not available.",
      True, {"N": 100, "O": 100})

# two-wheeled robot stand-in: 10 states.
n = 10
A = -np.eye(n) * 1.2
for i in range(n - 1):
    A[i, i + 1] = 0.6
    A[i + 1, i] = -0.4
A[4, 0] = 0.3; A[9, 5] = -0.3
M0 = A.copy(); M0[1, 1] = 0
write("robot", 10, ["friction"], [({}, M0), ({"friction": 1}, E(n, 1, 1, -1))], {"friction": [1.0, 1.4]},
      [[-0.5, 0.5]] * 10, 2000, [0, 1],
      "stand-in: ten-state linearized two-wheeled robot with uncertain wheel friction, built locally; the original model was not available.",
      True, {"N": 100, "O": 100})

# quadrotor stand-in: 16 states (4 axes x position, velocity, attitude, rate).
n = 16
A = Z(n)
for ax in range(4):
    p, v, th, w = 4 * ax, 4 * ax + 1, 4 * ax + 2, 4 * ax + 3
    A[p, v] = 1; A[v, th] = 1.0 if ax < 3 else 0.0
    A[v, v] = -0.3; A[v, p] = -0.5
    A[th, w] = 1; A[w, th] = -6; A[w, w] = -3
    A[w, v] = -0.8; A[w, p] = -0.2
M0 = A.copy(); M0[1, 1] = 0; M0[5, 5] = 0
write("quadrotor", 16, ["drag"], [({}, M0), ({"drag": 1}, E(n, 1, 1, -1) + E(n, 5, 5, -1))], {"drag": [0.2, 0.4]},
      [[-0.2, 0.2]] * 16, 2000, [0, 4],
      "stand-in: sixteen-state linearized quadrotor (position, velocity, attitude, rate per axis) with uncertain drag; the original model was not available.",
      True, {"N": 100, "O": 100})
