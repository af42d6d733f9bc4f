"""Frozen reference values for the test suite.

Every literal below was computed independently of the package, from the
defining formulas, with 30-digit arbitrary-precision arithmetic (mpmath),
then rounded to double precision.  Tests compare library output against
these constants so that a regression in any formula cannot hide behind a
matching bug in the test.
"""

import math

# bright stability fixture: J=1, A=3, S=1, k=0.015708, L=10, N=1000
A_J, A_A, A_S, A_K, A_L, A_N = 1.0, 3.0, 1.0, 0.015708, 10.0, 1000
A_PHI0 = 0.0816429427842272670
A_OMEGA0 = 6.00024673619060411
A_OMEGA_B = 5.99024796987155713
A_VG = 0.0314147080786803140
A_T = 318.322232215378441
A_NORM = 0.133311402129372143  # 2 L phi0^2

# dark stability fixture: J=1, A=1, S=1, k=pi-0.015708, L=10, N=1000
D_J, D_A, D_S, D_L, D_N = 1.0, 1.0, 1.0, 10.0, 1000
D_K = math.pi - 0.015708
D_PHI0 = 0.0816463002313777114
D_OMEGA0 = 5.99975326380939589
D_OMEGA_D = 5.97975573117130193

# resonant-switching fixture: J=1, A=10, S=10, k=pi/30, L=10, eta=1.372
F2_J, F2_A, F2_S, F2_L, F2_N = 1.0, 10.0, 10.0, 10.0, 1000
F2_K = math.pi / 30.0
F2_ETA = 1.372
F2_PHI0 = 0.0445864863867310158
F2_JT = 4.78338611675281307
F2_OMEGA_B = 200.010109903097706
F2_DZ0_T = 95.6725582920681896
F2_DZ1_T = 0.0505191072739490047
F2_DXY_T = 2.24283203508406760
F2_OMEGA_B0 = -0.209056926535306943

# sech model at unit pulse area and unit detuning area:
# sin^2(pi/2 sech-area) sech^2(pi/2 detuning-area) with W T = 1, D T = 1
RZ_1_1 = 0.158831593180063325

# zero-mode giving final probability 0.3 on the principal branch, + sign
ZM_03 = 1.15927948072740860

# uniform deviation alpha_n = 0.1 on an A=3, S=1 chain precesses at
# 2 A S sqrt(1 - 0.01)
PRECESSION_OMEGA = 5.96992462263971973

# reduced time s(T) = (1/2) Integral_0^T Omega dt and s(inf) for the
# centred model pulses
S_AT_T_SECH = -0.432884741619829312  # amplitude*T = -1: (1/2)(-1) gd(1)
S_INF_SECH = -0.785398163397448310  # (1/2)(-1)(pi/2)
S_AT_T_TANH = 0.216890415241513594  # amplitude*T = +1: (1/2) ln cosh 1
