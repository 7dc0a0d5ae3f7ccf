"""
The acceptance suite: each criterion runs a small experiment from its section of the acceptance config, checks
the measured numbers against the predicted ones and writes them to <out>/acceptance/<criterion>.csv.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from pricetail.api.experiment_api import ExperimentApi, separable_data
from pricetail.background.extended_state import static_kernel_order, static_kernel_residual
from pricetail.background.kerr import kerr_tail_constant
from pricetail.background.potentials import EffectivePotential
from pricetail.background.specs import BackgroundKind, BackgroundSpec, Mode, PotentialProfile, PotentialSpec
from pricetail.evolve.constants import predicted_constant
from pricetail.evolve.data import CauchyData, CharacteristicData, ForcingSpec
from pricetail.evolve.double_null import evolve_double_null
from pricetail.evolve.grids import Boundary, CauchyGrid, NullGrid
from pricetail.evolve.leapfrog import evolve_leapfrog
from pricetail.evolve.observers import Observer, ObserverKind
from pricetail.evolve.sources import reduce_to_mode
from pricetail.exceptions import ConfigurationError, PriceTailException
from pricetail.generators.table_generator import TableGenerator, compare_tables, read_csv_table
from pricetail.parsers.config_parser import AngularFactor, ConfigParser
from pricetail.profiles import RadialProfile, TemporalProfile
from pricetail.settings import ACCEPTANCE_CONFIG
from pricetail.spectral.expansion import expansion_iterate
from pricetail.spectral.fitting import fit_sigma_series
from pricetail.spectral.fourier import Window, inverse_ft_log, profile_closed_form, profile_integral
from pricetail.spectral.model import model_bracket, model_solution, near_zero_deviation
from pricetail.spectral.resolvent import resolvent_sweep
from pricetail.spectral.sigma_grid import SigmaGrid
from pricetail.tails.fitting import HALF_DECADE, tail_fit
from pricetail.tails.power_index import local_power_index
from pricetail.tails.ray_profile import ray_profile_check
from pricetail.tails.series import TimeSeries
from pricetail.type_aliases import CellType, RawConfigType, SectionType
from pricetail.utils import config_hash, parse_float_list, parse_list, read_config_file

logger = logging.getLogger(__name__)

PASS = "PASS"
FAIL = "FAIL"
SKIP = "SKIP"
ERROR = "ERROR"

DESCRIPTIONS = {
    "A1": "Schwarzschild l=0 generic data: t^-3 and predicted coefficient",
    "A2": "Schwarzschild l=0 static data: t^-4",
    "A3": "l=1 generic t^-5, static t^-6, l=2 trend to t^-7",
    "A4": "double null radiation field: u^-2 and c_M/4",
    "A5": "ray profile phi t*^3 / (c_M u+(v))",
    "A6": "flat background with r^-3 potential: t^-3 and c u0(r)",
    "A7": "singular coefficient of the resolvent",
    "A8": "model solution: quadrature against ODE, near zero, no pole",
    "A9": "oscillatory profile integral",
    "A10": "expansion iterates and constants",
    "A11": "windowed inverse Fourier transform of sigma^2 log sigma",
    "A12": "static kernel residuals and stencil order",
    "A13": "Kerr tail constant at a = 0 and its refinement stability",
}
QUICK = ("A7", "A8", "A9", "A10", "A11", "A12", "A13")


@dataclass(frozen=True)
class CriterionResult:
    """ Outcome of one criterion; measured and expected are short human readable summaries """
    criterion: str
    status: str
    measured: str = ""
    expected: str = ""
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status in (PASS, SKIP)

    def as_row(self) -> Dict[str, str]:
        return {"criterion": self.criterion, "status": self.status, "measured": self.measured,
                "expected": self.expected, "detail": self.detail}


@dataclass
class Checks:
    """ Collects the comparisons of one criterion and the numbers written to its CSV """
    values: Dict[str, CellType] = field(default_factory=dict)
    measured: List[str] = field(default_factory=list)
    expected: List[str] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)

    def record(self, name: str, value: CellType) -> None:
        self.values[name] = value

    def within(self, name: str, value: float, target: float, tolerance: float) -> bool:
        """ |value - target| <= tolerance """
        self.record(name, value)
        self.measured.append(f"{name}={value:.6g}")
        self.expected.append(f"{target:g}±{tolerance:g}")
        if not abs(value - target) <= tolerance:
            self.failures.append(f"{name} = {value:.6g} outside {target:g} ± {tolerance:g}")
            return False
        return True

    def below(self, name: str, value: float, limit: float) -> bool:
        self.record(name, value)
        self.measured.append(f"{name}={value:.3g}")
        self.expected.append(f"<{limit:g}")
        if not value < limit:
            self.failures.append(f"{name} = {value:.3g} not below {limit:g}")
            return False
        return True

    def holds(self, name: str, condition: bool, text: str) -> bool:
        self.record(name, bool(condition))
        self.measured.append(f"{name}={'yes' if condition else 'no'}")
        self.expected.append(text)
        if not condition:
            self.failures.append(f"{name}: expected {text}")
        return bool(condition)

    def result(self, criterion: str) -> CriterionResult:
        return CriterionResult(criterion, FAIL if self.failures else PASS, "; ".join(self.measured),
                               "; ".join(self.expected), "; ".join(self.failures))


def _float(section: SectionType, key: str, default: Optional[float] = None) -> float:
    if key not in section:
        if default is None:
            raise ConfigurationError(f"Acceptance parameter '{key}' is missing")
        return default
    return float(section[key])


def _pair(section: SectionType, key: str) -> Tuple[float, float]:
    values = parse_float_list(section[key])
    if len(values) != 2:
        raise ConfigurationError(f"Acceptance parameter '{key}' needs two values")
    return values[0], values[1]


def schwarzschild(section: SectionType) -> BackgroundSpec:
    return BackgroundSpec(mass=_float(section, "mass", 1.0))


def flat_inverse_cubic(section: SectionType) -> BackgroundSpec:
    potential = PotentialSpec(amplitude=_float(section, "amplitude"), profile=PotentialProfile.INVERSE_CUBIC)
    return BackgroundSpec(kind=BackgroundKind.FLAT_POTENTIAL, mass=0.0, potential=potential)


def cauchy_grid(section: SectionType, step: float, left: Boundary = Boundary.SOMMERFELD) -> CauchyGrid:
    return CauchyGrid(x_min=_float(section, "x_min"), x_max=_float(section, "x_max"), step=step,
                      cfl=_float(section, "cfl", 0.5), t_end=_float(section, "t_end"), left=left)


def null_grid(section: SectionType) -> NullGrid:
    return NullGrid(u0=_float(section, "u0"), v0=_float(section, "v0"), h=_float(section, "h"),
                    nu=int(section["nu"]), nv=int(section["nv"]))


def forcing(section: SectionType) -> ForcingSpec:
    return ForcingSpec(chi=ConfigParser.temporal_profile(section, "chi"),
                       fr=ConfigParser.radial_profile(section, "f"))


def fixed_radius(radius: float) -> Observer:
    return Observer(kind=ObserverKind.FIXED_RADIUS, radius=radius)


def fixture_profile(text: str) -> RadialProfile:
    """ 'kind:center:width' """
    kind, center, width = text.split(":")
    return RadialProfile(kind=kind, center=float(center), width=float(width))


def run_leapfrog(spec: BackgroundSpec, mode: Mode, data: CauchyData, grid: CauchyGrid,
                 radii: List[float]) -> Dict[float, TimeSeries]:
    observers = [fixed_radius(radius) for radius in radii]
    result = evolve_leapfrog(grid, data, EffectivePotential(spec, mode), None, observers)
    return {radius: result[observer.name] for radius, observer in zip(radii, observers)}


def run_forced_double_null(section: SectionType, observers: List[Observer]) -> Dict[str, TimeSeries]:
    spec = schwarzschild(section)
    mode = Mode()
    result = evolve_double_null(null_grid(section), CharacteristicData(), EffectivePotential(spec, mode),
                                reduce_to_mode(spec, mode, forcing(section)), observers)
    return result.series


class AcceptanceCriteria:
    """ The criteria, one method per criterion taking its config section """

    @staticmethod
    def a1(section: SectionType, checks: Checks) -> None:
        spec = schwarzschild(section)
        data = CauchyData(phi1=ConfigParser.radial_profile(section, "phi1"))
        radii = parse_float_list(section["radii"])
        window = _pair(section, "window")
        steps = parse_float_list(section["steps"])
        constant = predicted_constant(spec, data).value
        checks.record("predicted", constant)
        errors: Dict[float, List[float]] = {radius: [] for radius in radii}
        for index, step in enumerate(steps):
            finest = index == len(steps) - 1
            series = run_leapfrog(spec, Mode(), data, cauchy_grid(section, step), radii)
            for radius in radii:
                report = tail_fit(series[radius], 3.0, constant, window)
                label = f"r={radius:g} dr*={step:g}"
                errors[radius].append(abs(float(report.ratio) - 1.0))  # type: ignore
                if finest:
                    checks.within(f"exponent {label}", report.exponent, 3.0, _float(section, "exponent_tolerance"))
                    checks.within(f"ratio {label}", float(report.ratio), 1.0,  # type: ignore
                                  _float(section, "coefficient_tolerance"))
                else:
                    checks.record(f"exponent {label}", report.exponent)
                    checks.record(f"ratio {label}", float(report.ratio))  # type: ignore
        if len(steps) > 1:
            for radius in radii:
                checks.holds(f"refinement r={radius:g}", errors[radius][-1] < errors[radius][0],
                             "coefficient error decreasing under refinement")

    @staticmethod
    def a2(section: SectionType, checks: Checks) -> None:
        spec = schwarzschild(section)
        data = CauchyData(phi0=ConfigParser.radial_profile(section, "phi0"))
        radii = parse_float_list(section["radii"])
        window = _pair(section, "window")
        step = parse_float_list(section["steps"])[-1]
        series = run_leapfrog(spec, Mode(), data, cauchy_grid(section, step), radii)
        for radius in radii:
            report = tail_fit(series[radius], 4.0, None, window)
            checks.within(f"exponent r={radius:g}", report.exponent, 4.0, _float(section, "exponent_tolerance"))

    @staticmethod
    def a3(section: SectionType, checks: Checks) -> None:
        spec = schwarzschild(section)
        radius = _float(section, "radius")
        window = _pair(section, "window")
        grid = cauchy_grid(section, parse_float_list(section["steps"])[-1])
        generic = CauchyData(phi1=ConfigParser.radial_profile(section, "phi1"))
        static = CauchyData(phi0=ConfigParser.radial_profile(section, "phi0"))

        for label, data, exponent, tolerance in (("l=1 generic", generic, 5.0, "generic_tolerance"),
                                                 ("l=1 static", static, 6.0, "static_tolerance")):
            series = run_leapfrog(spec, Mode(l=1), data, grid, [radius])[radius]
            report = tail_fit(series, exponent, None, window)
            checks.within(f"exponent {label}", report.exponent, exponent, _float(section, tolerance))

        series = run_leapfrog(spec, Mode(l=2), generic, grid, [radius])[radius]
        start, end = AcceptanceCriteria.clean_window(series, _float(section, "noise_floor"))
        lpi = local_power_index(series, start, end, points=64)
        smoothed = np.convolve(lpi.values, np.ones(8) / 8.0, mode="valid")
        checks.holds("l=2 increasing", bool(np.all(np.diff(smoothed) > -1e-3)), "LPI increasing in the clean window")
        checks.below("l=2 distance to 7", 7.0 - float(smoothed[-1]), 7.0 - _float(section, "l2_minimum"))
        checks.record("l=2 window end", end)

    @staticmethod
    def clean_window(series: TimeSeries, noise_floor: float) -> Tuple[float, float]:
        """ The last half decade before |phi| drops below noise_floor * max|phi| (or the series ends) """
        scale = float(np.max(np.abs(series.values)))
        above = np.flatnonzero(np.abs(series.values) > noise_floor * scale)
        end = float(series.x[above[-1]]) if above.size else float(series.x[-1])
        return end / HALF_DECADE, end

    @staticmethod
    def a4(section: SectionType, checks: Checks) -> None:
        grid = null_grid(section)
        observer = Observer(kind=ObserverKind.RADIATION_FIELD, v_far=grid.v_end)
        series = run_forced_double_null(section, [observer])[observer.name]
        constant = predicted_constant(schwarzschild(section), None, forcing(section)).value
        checks.record("c_M", constant)
        report = tail_fit(series, 2.0, 0.25 * constant, _pair(section, "window"))
        checks.within("exponent", report.exponent, 2.0, _float(section, "exponent_tolerance"))
        checks.within("ratio", float(report.ratio), 1.0, _float(section, "coefficient_tolerance"))  # type: ignore

    @staticmethod
    def a5(section: SectionType, checks: Checks) -> None:
        ratios = parse_float_list(section["ratios"])
        observers = [Observer(kind=ObserverKind.RAY, ratio=ratio) for ratio in ratios]
        series = run_forced_double_null(section, observers)
        constant = predicted_constant(schwarzschild(section), None, forcing(section)).value
        checks.record("c_M", constant)
        results = ray_profile_check({ratio: series[observer.name] for ratio, observer in zip(ratios, observers)},
                                    constant)
        for result in results:
            checks.within(f"R(v={result.ratio:g})", result.estimate, 1.0, _float(section, "tolerance"))

    @staticmethod
    def a6(section: SectionType, checks: Checks) -> None:
        spec = flat_inverse_cubic(section)
        data = CauchyData(phi1=ConfigParser.radial_profile(section, "phi1"))
        radius = _float(section, "radius")
        grid = cauchy_grid(section, parse_float_list(section["steps"])[-1], Boundary.ORIGIN)
        predicted = predicted_constant(spec, data, r_obs=radius).profile_value
        checks.record("predicted", predicted)  # type: ignore
        series = run_leapfrog(spec, Mode(), data, grid, [radius])[radius]
        report = tail_fit(series, 3.0, predicted, _pair(section, "window"))
        checks.within("exponent", report.exponent, 3.0, _float(section, "exponent_tolerance"))
        checks.within("ratio", float(report.ratio), 1.0, _float(section, "coefficient_tolerance"))  # type: ignore

    @staticmethod
    def a7(section: SectionType, checks: Checks) -> None:
        spec = schwarzschild(section)
        profile = ConfigParser.radial_profile(section, "f")
        grid = SigmaGrid(sigma_min=_float(section, "sigma_min"), sigma_max=_float(section, "sigma_max"),
                         count=int(section["count"]))
        samples = resolvent_sweep(spec, Mode(), grid, profile, _float(section, "r_obs"))
        fit = fit_sigma_series([sample.sigma for sample in samples], [sample.value for sample in samples])
        expected = ExperimentApi.expected_singular_coefficient(spec, profile)
        tolerance = _float(section, "tolerance")
        checks.record("expected b", expected)
        checks.record("condition", fit.condition)
        checks.within("Re b / expected", fit.b.real / expected, 1.0, tolerance)
        checks.within("Im a2 / (-pi/2 Re b)", fit.a2.imag / (-0.5 * np.pi * fit.b.real), 1.0, tolerance)

    @staticmethod
    def a8(section: SectionType, checks: Checks) -> None:
        points = np.geomspace(_float(section, "r_min"), _float(section, "r_max"), int(section["points"]))
        quadrature = model_solution(points, "quadrature")
        ode = model_solution(points, "ode")
        checks.below("quadrature vs ode", quadrature.agreement(ode), _float(section, "agreement"))
        near = _float(section, "near_zero_point")
        checks.below(f"|Im(u + log rr) - pi/2| at {near:g}", near_zero_deviation(near),
                     _float(section, "near_zero_tolerance"))
        remainder = _float(section, "remainder_point")
        checks.below(f"|Im(u + log rr) - pi/2| at {remainder:g}", near_zero_deviation(remainder),
                     2.0 * remainder * np.log(1.0 / remainder))
        point = _float(section, "bracket_point")
        checks.below(f"|bracket({point:g})|", abs(model_bracket(point)), _float(section, "bracket_tolerance"))

    @staticmethod
    def a9(section: SectionType, checks: Checks) -> None:
        tolerance = _float(section, "tolerance")
        for v in parse_float_list(section["v"]):
            checks.within(f"I({v:g}) - closed form", profile_integral(v) - profile_closed_form(v), 0.0, tolerance)

    @staticmethod
    def a10(section: SectionType, checks: Checks) -> None:
        spec = schwarzschild(section)
        profile = ConfigParser.radial_profile(section, "f")
        state = expansion_iterate(spec, profile, Mode(), _float(section, "outer_radius"))
        radius = _float(section, "ratio_radius")
        checks.record(f"f2 ratio at r={radius:g}", state.f2_ratio(radius).real)
        checks.within("f2 r^2 / (4 m c0) limit", state.f2_limit().real, 1.0, _float(section, "ratio_tolerance"))
        checks.within("c0 tail / c0", state.zero.c0_tail / state.c0, 1.0, _float(section, "c0_tolerance"))
        unit = ForcingSpec(chi=TemporalProfile(), fr=profile)
        predicted = predicted_constant(spec, None, unit).value / unit.chi.integral
        checks.record("c_M", state.c_m)
        checks.below("|c_M / predicted - 1|", abs(state.c_m / predicted - 1.0), _float(section, "constant_tolerance"))

    @staticmethod
    def a11(section: SectionType, checks: Checks) -> None:
        window = Window(section.get("window", Window.GAUSSIAN.value))
        width = _float(section, "width")
        time = _float(section, "time")
        forward = inverse_ft_log(2, time, window, width)
        backward = inverse_ft_log(2, -time, window, width)
        checks.within(f"F(t={time:g}) t^3 / 2", forward * time ** 3 / 2.0, 1.0, _float(section, "tolerance"))
        checks.below(f"|F(-{time:g})| / |F({time:g})|", abs(backward) / abs(forward), _float(section, "causality"))

    @staticmethod
    def a12(section: SectionType, checks: Checks) -> None:
        limit = _float(section, "residual")
        order = _float(section, "order")
        tolerance = _float(section, "order_tolerance")
        for label, spec, mode in (("l=0", schwarzschild(section), Mode()),
                                  ("l=1", schwarzschild(section), Mode(l=1)),
                                  ("flat", flat_inverse_cubic(section), Mode())):
            checks.below(f"residual {label}", static_kernel_residual(spec, mode), limit)
            checks.within(f"stencil order {label}", static_kernel_order(spec, mode), order, tolerance)

    @staticmethod
    def a13(section: SectionType, checks: Checks) -> None:
        spec = schwarzschild(section)
        mass = spec.mass
        r_min, r_max = _float(section, "r_min"), _float(section, "r_max")
        tolerance = _float(section, "tolerance")
        fixtures = [fixture_profile(text) for text in parse_list(section["fixtures"])]

        def support(profile: RadialProfile) -> Tuple[float, float]:
            return max(profile.support[0], r_min), min(profile.support[1], r_max)

        for profile in fixtures:
            value = kerr_tail_constant(separable_data(profile, AngularFactor.COS_THETA),
                                       separable_data(profile, AngularFactor.UNIFORM), mass, 0.0, support(profile))
            reference = predicted_constant(spec, CauchyData(phi1=profile)).value
            checks.below(f"a=0 {profile.describe()}", abs(value / reference - 1.0), tolerance)

        a = _float(section, "spinning_a")
        profile = fixtures[0]
        phi0 = separable_data(profile, AngularFactor.SIN_THETA_COS_PHI)
        phi1 = separable_data(profile, AngularFactor.UNIFORM)
        nodes = (48, 24, 32)
        coarse = kerr_tail_constant(phi0, phi1, mass, a, support(profile), nodes, refine=False)
        fine = kerr_tail_constant(phi0, phi1, mass, a, support(profile), tuple(2 * n for n in nodes),  # type: ignore
                                  refine=False)
        checks.record(f"a={a:g}", fine)
        checks.below(f"a={a:g} refinement change", abs(fine - coarse) / abs(fine), _float(section, "stability"))


CRITERIA: Dict[str, Callable[[SectionType, Checks], None]] = {
    "A1": AcceptanceCriteria.a1, "A2": AcceptanceCriteria.a2, "A3": AcceptanceCriteria.a3,
    "A4": AcceptanceCriteria.a4, "A5": AcceptanceCriteria.a5, "A6": AcceptanceCriteria.a6,
    "A7": AcceptanceCriteria.a7, "A8": AcceptanceCriteria.a8, "A9": AcceptanceCriteria.a9,
    "A10": AcceptanceCriteria.a10, "A11": AcceptanceCriteria.a11, "A12": AcceptanceCriteria.a12,
    "A13": AcceptanceCriteria.a13,
}


def run_criterion(name: str, section: SectionType, directory: Path) -> CriterionResult:
    """
    Evaluate one criterion and write its numbers. Compute failures are reported as ERROR, not raised.

    Args:
        name: 'A1' ... 'A13'
        section: its section of the acceptance config
        directory: where <name>.csv goes

    Returns:
        CriterionResult
    """
    checks = Checks()
    logger.info("Acceptance %s: %s", name, DESCRIPTIONS[name])
    try:
        CRITERIA[name](section, checks)
        result = checks.result(name)
    except PriceTailException as exception:
        result = CriterionResult(name, ERROR, "; ".join(checks.measured), "; ".join(checks.expected),
                                 f"{type(exception).__name__}: {exception}")
    footer = {"config_hash": config_hash({name: section}), "scheme": name, "grid": DESCRIPTIONS[name]}
    if checks.values:
        TableGenerator.named_values(checks.values, footer).write(directory / f"{name}.csv")
    logger.info("Acceptance %s: %s", name, result.status)
    return result


class AcceptanceApi:
    """
    Runs the acceptance criteria.

    Args:
        config_path: the acceptance config (default: the one shipped with the package)
    """
    def __init__(self, config_path: Path = ACCEPTANCE_CONFIG) -> None:
        self.__config_path = config_path
        self.__config: Optional[RawConfigType] = None

    @property
    def config(self) -> RawConfigType:
        if self.__config is None:
            self.__config = read_config_file(self.__config_path)
        return self.__config

    @staticmethod
    def select(criteria: List[str], scale: str) -> Tuple[List[str], List[str]]:
        """
        Split the requested criteria into the ones to run and the ones skipped at this scale

        Args:
            criteria: names, empty for all
            scale: 'full' runs everything, 'quick' skips the time domain criteria A1 - A6

        Returns:
            (to run, skipped), both in suite order
        """
        requested = [name.upper() for name in criteria] or list(CRITERIA)
        unknown = [name for name in requested if name not in CRITERIA]
        if unknown:
            raise ConfigurationError(f"Unknown acceptance criteria: {', '.join(unknown)}")
        if scale not in ("full", "quick"):
            raise ConfigurationError(f"Unknown acceptance scale '{scale}', use 'full' or 'quick'")
        ordered = [name for name in CRITERIA if name in requested]
        if scale == "quick":
            return [name for name in ordered if name in QUICK], [name for name in ordered if name not in QUICK]
        return ordered, []

    def run(self, out_dir: Path, criteria: Optional[List[str]] = None, scale: str = "full", jobs: int = 1,
            baseline: Optional[Path] = None) -> List[CriterionResult]:
        """
        Run the suite

        Args:
            out_dir: CSVs go to out_dir / 'acceptance'
            criteria: names to run (default: all)
            scale: 'full' or 'quick'
            jobs: number of worker processes
            baseline: a directory of earlier acceptance CSVs to compare with

        Returns:
            One CriterionResult per requested criterion, in suite order

        Raises:
            ConfigHashMismatch when a baseline artifact comes from different parameters
        """
        to_run, skipped = self.select(criteria or [], scale)
        missing = [name for name in to_run if name not in self.config]
        if missing:
            raise ConfigurationError(f"The acceptance config has no section for {', '.join(missing)}")
        directory = out_dir / "acceptance"
        directory.mkdir(parents=True, exist_ok=True)

        if jobs > 1 and len(to_run) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as executor:
                futures = {name: executor.submit(run_criterion, name, self.config[name], directory)
                           for name in to_run}
                outcomes = {name: future.result() for name, future in futures.items()}
        else:
            outcomes = {name: run_criterion(name, self.config[name], directory) for name in to_run}
        for name in skipped:
            outcomes[name] = CriterionResult(name, SKIP, detail=f"not run at {scale} scale")

        if baseline is not None:
            outcomes = {name: self.compare(outcome, directory, baseline) for name, outcome in outcomes.items()}
        return [outcomes[name] for name in CRITERIA if name in outcomes]

    @staticmethod
    def compare(outcome: CriterionResult, directory: Path, baseline: Path) -> CriterionResult:
        """ Compare a produced criterion CSV with the stored one; a difference turns the criterion into FAIL """
        file_name = f"{outcome.criterion}.csv"
        produced_file = directory / file_name
        if outcome.status == SKIP or not produced_file.is_file():
            return outcome
        stored_file = baseline / file_name
        if not stored_file.is_file():
            logger.warning("No baseline for %s in %s", outcome.criterion, baseline)
            return outcome
        differences = compare_tables(read_csv_table(produced_file), read_csv_table(stored_file), file_name)
        if not differences:
            return outcome
        detail = "; ".join(([outcome.detail] if outcome.detail else []) + differences)
        return CriterionResult(outcome.criterion, FAIL, outcome.measured, outcome.expected, detail)
