import math

import pytest

from heralded_mode import FieldSpec, FilterSpec, SpatialScenario, dp_to_kappa_p

# 790 nm pulsed homodyne setup: 2 rho = 50 um pinhole, F = 80 mm, d_p = 0.34 mm
RHO = 25e-6
FOCAL = 0.08
LAMBDA_T = 790e-9
D_P = 0.34e-3
W_T_QUOTED = 1.2e12
TAU_FUND = 1.6e-12


@pytest.fixture
def pinhole_scenario():
    pump = FieldSpec(0.0, 1.0, kappa=dp_to_kappa_p(D_P))
    return SpatialScenario(pump, FilterSpec.pinhole(RHO, FOCAL, LAMBDA_T))


@pytest.fixture
def tau_p_sqrt2():
    return TAU_FUND / math.sqrt(2.0)
