from pricetail.background.specs import BackgroundKind, BackgroundSpec, Mode, PotentialProfile, PotentialSpec
from pricetail.background.chart import RadialChart, inverse_tortoise, tortoise
from pricetail.background.potentials import EffectivePotential, effective_mass, effective_potential
from pricetail.background.extended_state import (ExtendedState, solve_extended_state, static_kernel_order,
                                                 static_kernel_residual)
from pricetail.background.kerr import kerr_tail_constant

__all__ = [
    "BackgroundKind", "BackgroundSpec", "Mode", "PotentialProfile", "PotentialSpec",
    "RadialChart", "inverse_tortoise", "tortoise",
    "EffectivePotential", "effective_mass", "effective_potential",
    "ExtendedState", "solve_extended_state", "static_kernel_order", "static_kernel_residual",
    "kerr_tail_constant",
]
