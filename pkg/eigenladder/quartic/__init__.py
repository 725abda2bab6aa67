from .elliptic import agm, elliptic_K, elliptic_K_complementary, elliptic_F, elliptic_F_agm
from .closed_form import (
    EllipticParams,
    lambda_of_xi,
    angular_integral,
    e_max_negative,
    elliptic_amplitude_negative,
    elliptic_amplitude_positive,
    lambda_sc_quartic,
    lambda_sc_quartic_negative,
    lambda_sc_series,
    xi_of,
)
from .perturbative import groundstate_pert, lambda_pert, energy_pert, energy_sc_series, first_order_spacing
from .wkb import GAMMA_QUARTER, k_one_over_root_two, wkb_energy, wkb_spacing
from . import perturbative, wkb

REGIME = {
    "pert": perturbative.REGIME,
    "wkb": wkb.REGIME,
}
