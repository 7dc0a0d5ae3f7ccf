from pricetail.tails.series import TimeSeries
from pricetail.tails.power_index import local_power_index, last_zero_crossing
from pricetail.tails.fitting import TailReport, expected_exponent, tail_fit
from pricetail.tails.ray_profile import RayRatio, ray_profile_check, u_plus
from pricetail.tails.convergence import richardson_order

__all__ = [
    "TimeSeries",
    "local_power_index", "last_zero_crossing",
    "TailReport", "expected_exponent", "tail_fit",
    "RayRatio", "ray_profile_check", "u_plus",
    "richardson_order",
]
