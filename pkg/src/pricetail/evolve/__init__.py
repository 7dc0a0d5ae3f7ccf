from pricetail.evolve.grids import Boundary, CauchyGrid, NullGrid
from pricetail.evolve.data import CauchyData, CharacteristicData, ForcingSpec
from pricetail.evolve.observers import Observer, ObserverKind
from pricetail.evolve.result import EvolutionResult, energy_is_monotone
from pricetail.evolve.sources import ModeSource, reduce_to_mode
from pricetail.evolve.leapfrog import evolve_leapfrog
from pricetail.evolve.double_null import evolve_double_null
from pricetail.evolve.constants import PredictedConstant, predicted_constant, tail_pairing

__all__ = [
    "Boundary", "CauchyGrid", "NullGrid",
    "CauchyData", "CharacteristicData", "ForcingSpec",
    "Observer", "ObserverKind",
    "EvolutionResult", "energy_is_monotone",
    "ModeSource", "reduce_to_mode",
    "evolve_leapfrog", "evolve_double_null",
    "PredictedConstant", "predicted_constant", "tail_pairing",
]
