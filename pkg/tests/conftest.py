import pytest

import oracles as orc
from solitonqubit import ChainParams, QubitParams, make_soliton, solve_dxy_for_target, tune_dz


@pytest.fixture(scope="session")
def bright_setup():
    """Bright stability fixture: chain params and mid-chain soliton."""
    params = ChainParams(J=orc.A_J, A=orc.A_A, S=orc.A_S, N=orc.A_N)
    spec = make_soliton(params, "bright", k=orc.A_K, L=orc.A_L, x0=orc.A_N / 2.0)
    return params, spec


@pytest.fixture(scope="session")
def dark_setup():
    params = ChainParams(J=orc.D_J, A=orc.D_A, S=orc.D_S, N=orc.D_N)
    spec = make_soliton(params, "dark", k=orc.D_K, L=orc.D_L, x0=orc.D_N / 2.0)
    return params, spec


@pytest.fixture(scope="session")
def switching_setup():
    """Resonant-switching fixture: soliton crossing a tuned qubit at the origin."""
    params = ChainParams(J=orc.F2_J, A=orc.F2_A, S=orc.F2_S, N=orc.F2_N)
    spec = make_soliton(params, "bright", k=orc.F2_K, L=orc.F2_L, x0=0.0)
    base = QubitParams(dxy=0.0, dz=0.0, mu=1.0, nu=1.0, H0=0.0, xq=0.0)
    tr = tune_dz(spec, params, base, eta=orc.F2_ETA)
    dxy = solve_dxy_for_target(1.0, 0, -1, spec, params.S)
    q = QubitParams(dxy=dxy, dz=tr.dz, mu=1.0, nu=1.0, H0=0.0, xq=0.0)
    return params, spec, q, base, tr
