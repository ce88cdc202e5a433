"""Radar detection probability under aircraft and radar state uncertainty."""
from .detection import (BOLTZMANN, DetectionPoint, RadarParams, RadarState, erfc, evaluate_detection,
                        pd_from_snr, radar_constant_surveillance, snr)
from .geometry import (AircraftState, GeometryError, RcsAngles, d_angles_d_rho, d_range_d_radar_pos,
                       d_rho_d_aircraft_state, d_rho_d_radar_pos, dcm_attitude_partials, dcm_ned_to_body,
                       rcs_angles, relative_position_body, slant_range)
from .linearization import (PRESETS, ErrorBudget, PdSensitivity, UncertaintyModel, d_pd_d_snr, error_budget,
                            jacobian_aircraft, jacobian_radar, linearize, sigma_pd)
from .montecarlo import McEnsemble, SweepSpec, nominal_states, run_monte_carlo, sample_perturbed, \
    sensitivity_sweep
from .rcs import ConstantRcs, EllipsoidRcs, RcsModel, ellipsoid_grad, ellipsoid_sigma, rcs_from_config
from .scenario import Scenario, ScenarioError, load_scenario, parse_uncertainty, scenario_from_dict

__version__ = "0.1.0"
