from pricetail.spectral.sigma_grid import SigmaGrid
from pricetail.spectral.homogeneous import HomogeneousPair, homogeneous_solutions, series_coefficients
from pricetail.spectral.resolvent import ResolventSample, resolvent_apply, resolvent_sweep
from pricetail.spectral.zero_energy import StaticSolution, ZeroEnergySolution, static_solve, zero_energy_solve
from pricetail.spectral.expansion import ExpansionState, expansion_iterate
from pricetail.spectral.model import ModelSolution, model_bracket, model_solution, near_zero_deviation, \
    operator_residual
from pricetail.spectral.fourier import Window, inverse_ft_log, profile_closed_form, profile_integral
from pricetail.spectral.fitting import SigmaFit, fit_sigma_series

__all__ = [
    "SigmaGrid",
    "HomogeneousPair", "homogeneous_solutions", "series_coefficients",
    "ResolventSample", "resolvent_apply", "resolvent_sweep",
    "StaticSolution", "ZeroEnergySolution", "static_solve", "zero_energy_solve",
    "ExpansionState", "expansion_iterate",
    "ModelSolution", "model_bracket", "model_solution", "near_zero_deviation", "operator_residual",
    "Window", "inverse_ft_log", "profile_closed_form", "profile_integral",
    "SigmaFit", "fit_sigma_series",
]
