import logging
import time
from pathlib import Path
from typing import Callable, Dict, List, Optional

import numpy as np

from pricetail.background.extended_state import solve_extended_state
from pricetail.background.kerr import AngularProfile, kerr_tail_constant
from pricetail.background.potentials import EffectivePotential, effective_mass
from pricetail.background.specs import BackgroundSpec
from pricetail.evolve.constants import PredictedConstant, predicted_constant, tail_pairing
from pricetail.evolve.data import CauchyData
from pricetail.evolve.double_null import evolve_double_null
from pricetail.evolve.leapfrog import evolve_leapfrog
from pricetail.evolve.observers import Observer, ObserverKind
from pricetail.evolve.result import EvolutionResult, energy_is_monotone
from pricetail.evolve.sources import reduce_to_mode
from pricetail.exceptions import ConfigurationError
from pricetail.generators.table_generator import CsvTable, TableGenerator, read_csv_table
from pricetail.parsers.config_parser import AngularFactor, ExperimentConfig, ExperimentKind, Scheme
from pricetail.profiles import RadialProfile
from pricetail.spectral.expansion import expansion_iterate
from pricetail.spectral.fitting import fit_sigma_series
from pricetail.spectral.model import model_bracket, model_quadrature, model_solution, near_zero_deviation, \
    operator_residual
from pricetail.spectral.resolvent import resolvent_sweep
from pricetail.tails.fitting import TailReport, expected_exponent, tail_fit
from pricetail.tails.ray_profile import ray_profile_check
from pricetail.tails.series import TimeSeries
from pricetail.type_aliases import FooterType, SummaryType
from pricetail.utils import file_safe_name, parse_list

logger = logging.getLogger(__name__)

MODEL_NEAR_ZERO = 1e-6
BRACKET_POINT = 1e-10
EXPANSION_RADII = (10.0, 1e5, 41)

ANGULAR_FACTORS: Dict[AngularFactor, Callable[[np.ndarray, np.ndarray], np.ndarray]] = {
    AngularFactor.UNIFORM: lambda theta, phi: np.ones_like(theta),
    AngularFactor.COS_THETA: lambda theta, phi: np.cos(theta),
    AngularFactor.SIN_THETA_COS_PHI: lambda theta, phi: np.sin(theta) * np.cos(phi),
}


def separable_data(radial: RadialProfile, angular: AngularFactor) -> Optional[AngularProfile]:
    """ phi(r, theta, phi) = f(r) Y(theta, phi) as a vectorised callable, None for zero data """
    if radial.is_zero:
        return None
    factor = ANGULAR_FACTORS[angular]
    return lambda r, theta, phi: radial(r) * factor(theta, phi)


class ExperimentApi:
    """
    Runs the experiments of a config and writes their CSV artifacts. Every run returns a flat summary, used for
    the console line and as the row of a sweep.
    """
    def __init__(self) -> None:
        self.__handlers: Dict[ExperimentKind, Callable[[ExperimentConfig, Path], SummaryType]] = {
            ExperimentKind.EVOLVE: self.run_evolve,
            ExperimentKind.SPECTRAL: self.run_spectral,
            ExperimentKind.MODEL: self.run_model,
            ExperimentKind.EXPANSION: self.run_expansion,
            ExperimentKind.FIT_TAIL: self.run_fit_tail,
            ExperimentKind.RAY_PROFILE: self.run_ray_profile,
            ExperimentKind.KERR_CONSTANT: self.run_kerr_constant,
        }

    def run(self, experiment: ExperimentConfig, out_dir: Path) -> SummaryType:
        """
        Run the experiment

        Args:
            experiment: the validated config
            out_dir: artifacts are written to out_dir / <output or name>

        Returns:
            The summary of the run
        """
        if experiment.kind not in self.__handlers:
            raise ConfigurationError(f"Experiment kind '{experiment.kind.value}' is run with the verify command")
        directory = out_dir / (experiment.output or experiment.name)
        directory.mkdir(parents=True, exist_ok=True)
        started = time.perf_counter()
        logger.info("Running %s experiment '%s'", experiment.kind.value, experiment.name)
        summary = self.__handlers[experiment.kind](experiment, directory)
        logger.info("Experiment '%s' finished in %.1f s, artifacts in %s", experiment.name,
                    time.perf_counter() - started, directory)
        return summary

    @staticmethod
    def footer(experiment: ExperimentConfig, scheme: str, grid: str) -> FooterType:
        return {"config_hash": experiment.config_hash, "scheme": scheme, "grid": grid}

    # evolve

    @staticmethod
    def evolve(experiment: ExperimentConfig) -> EvolutionResult:
        """ Run the configured scheme on the background, data and forcing of the experiment """
        potential = EffectivePotential(experiment.background, experiment.mode)
        source = None
        if experiment.forcing is not None and not experiment.forcing.is_zero:
            source = reduce_to_mode(experiment.background, experiment.mode, experiment.forcing)
        if experiment.scheme == Scheme.LEAPFROG:
            return evolve_leapfrog(experiment.cauchy_grid, experiment.data, potential, source, experiment.observers)
        return evolve_double_null(experiment.null_grid, experiment.characteristic, potential, source,
                                  experiment.observers)

    @staticmethod
    def tail_constant(experiment: ExperimentConfig, r_obs: Optional[float] = None) -> Optional[PredictedConstant]:
        """ The predicted t^-3 constant of the data and forcing of the run, when the pairing defines one """
        if experiment.mode.l != 0:
            return None
        data: Optional[CauchyData] = experiment.data if experiment.scheme == Scheme.LEAPFROG else None
        if experiment.scheme == Scheme.DOUBLE_NULL and not experiment.characteristic.is_zero:
            return None
        has_forcing = experiment.forcing is not None and not experiment.forcing.is_zero
        if not has_forcing and (data is None or data.phi1.is_zero):
            return None
        return predicted_constant(experiment.background, data, experiment.forcing, experiment.mode, r_obs)

    @staticmethod
    def is_static(experiment: ExperimentConfig) -> bool:
        if experiment.tail.static:
            return True
        return experiment.scheme == Scheme.LEAPFROG and experiment.forcing is None \
            and experiment.data.phi1.is_zero and not experiment.data.phi0.is_zero

    def predicted_coefficient(self, experiment: ExperimentConfig, observer: Observer) -> Optional[float]:
        """
        fixed radius: c (Schwarzschild) or c u0(r) (flat backgrounds)
        radiation field: c / 4 on Schwarzschild
        """
        if self.is_static(experiment):
            return None
        if observer.kind == ObserverKind.FIXED_RADIUS:
            constant = self.tail_constant(experiment, observer.radius)
            if constant is None:
                return None
            return constant.value if experiment.background.is_schwarzschild else constant.profile_value
        if observer.kind == ObserverKind.RADIATION_FIELD and experiment.background.is_schwarzschild:
            constant = self.tail_constant(experiment)
            return None if constant is None else 0.25 * constant.value
        return None

    def run_evolve(self, experiment: ExperimentConfig, directory: Path) -> SummaryType:
        tail = experiment.tail
        names = [observer.name for observer in experiment.observers]
        if tail.observer is not None and tail.observer not in names:
            raise ConfigurationError(f"[tail] observer '{tail.observer}' is not recorded; recorded: {', '.join(names)}")
        result = self.evolve(experiment)
        footer = self.footer(experiment, result.scheme, result.grid)
        static = self.is_static(experiment)

        reports: Dict[str, TailReport] = {}
        rays: Dict[float, TimeSeries] = {}
        for observer in experiment.observers:
            series = result[observer.name]
            lpi = None
            if observer.kind == ObserverKind.RAY:
                rays[float(observer.ratio)] = series  # type: ignore
            elif tail.observer is None or tail.observer == observer.name:
                target = tail.target_exponent
                if target is None:
                    target = expected_exponent(experiment.mode.l, observer.kind.value, static)
                report = tail_fit(series, target, self.predicted_coefficient(experiment, observer), tail.window,
                                  tail.tolerance, tail.residual_limit)
                reports[observer.name] = report
                lpi = report.lpi
            TableGenerator.series(series, footer, lpi).write(directory / f"{file_safe_name(observer.name)}.csv")
        if reports:
            TableGenerator.tail_reports(reports, footer).write(directory / "tail.csv")

        summary: SummaryType = {"steps": result.steps}
        if reports:
            name, report = next(iter(reports.items()))
            summary.update(self.report_summary(name, report))
        if rays:
            constant = self.tail_constant(experiment)
            if constant is None or constant.value == 0.0:
                logger.warning("No predicted constant for this run, ray ratios are not computed")
            else:
                ratios = ray_profile_check(rays, constant.value)
                TableGenerator.ray_ratios(ratios, footer).write(directory / "ray_ratios.csv")
                summary["ray_ratio_spread"] = max(abs(ratio.estimate - 1.0) for ratio in ratios)
        if result.energy is not None:
            TableGenerator.series(result.energy, footer).write(directory / "energy.csv")
            if experiment.forcing is None:
                summary["energy_monotone"] = energy_is_monotone(result.energy)
        return summary

    @staticmethod
    def report_summary(name: str, report: TailReport) -> SummaryType:
        summary: SummaryType = {"observer": name, "exponent": report.exponent,
                                "exponent_error": report.exponent_error}
        if report.coefficient is not None:
            summary["coefficient"] = report.coefficient
        if report.ratio is not None:
            summary["ratio"] = report.ratio
        if report.exponent_mismatch:
            summary["exponent_mismatch"] = True
        return summary

    # frequency domain

    @staticmethod
    def expected_singular_coefficient(spec: BackgroundSpec, profile: RadialProfile) -> float:
        """ b = -4 m_eff int f u0 r^2 dr """
        return -4.0 * effective_mass(spec) * tail_pairing(spec, solve_extended_state(spec), profile, False)

    def run_spectral(self, experiment: ExperimentConfig, directory: Path) -> SummaryType:
        settings = experiment.spectral
        profile = experiment.forcing.fr  # type: ignore
        grid = settings.grid
        samples = resolvent_sweep(experiment.background, experiment.mode, grid, profile, settings.r_obs,
                                  settings.check_residual)
        fit = fit_sigma_series([sample.sigma for sample in samples], [sample.value for sample in samples])
        footer = self.footer(experiment, "resolvent",
                             f"sigma in [{grid.sigma_min:g}, {grid.sigma_max:g}], {grid.count} samples, "
                             f"r_obs={settings.r_obs:g}")

        table = CsvTable(footer=footer)
        table.add_column("sigma", [sample.sigma for sample in samples])
        table.add_column("u", [sample.value for sample in samples])
        table.add_column("wronskian", [sample.wronskian for sample in samples])
        table.add_column("drift", [sample.drift for sample in samples])
        table.add_column("series_error", [sample.series_error for sample in samples])
        table.add_column("residual", [sample.residual for sample in samples])
        table.add_column("outer_radius", [sample.outer_radius for sample in samples])
        table.write(directory / "resolvent.csv")

        summary: SummaryType = {"b_re": fit.b.real, "b_im": fit.b.imag, "a2_im": fit.a2.imag,
                                "condition": fit.condition, "stability": fit.stability}
        values = dict(fit.coefficients)
        if experiment.mode.l == 0:
            expected = self.expected_singular_coefficient(experiment.background, profile)
            values["expected_b"] = expected
            if expected != 0.0:
                summary["b_ratio"] = fit.b.real / expected
                summary["a2_ratio"] = fit.a2.imag / (-0.5 * np.pi * fit.b.real)
        values.update({"condition": fit.condition, "residual": fit.residual, "stability": fit.stability})
        TableGenerator.named_values(values, footer).write(directory / "fit.csv")
        return summary

    def run_model(self, experiment: ExperimentConfig, directory: Path) -> SummaryType:
        settings = experiment.model
        points = np.geomspace(settings.r_min, settings.r_max, settings.points)
        methods = ["quadrature", "ode"] if settings.method == "both" else [settings.method]
        solutions = [model_solution(points, method) for method in methods]
        footer = self.footer(experiment, "+".join(methods),
                             f"rr in [{settings.r_min:g}, {settings.r_max:g}], {settings.points} points")

        table = CsvTable(footer=footer)
        table.add_column("rr", list(points))
        table.add_column("u", list(solutions[0].values))
        if len(solutions) > 1:
            table.add_column("u_ode", list(solutions[1].values))
        table.write(directory / "model.csv")

        summary: SummaryType = {
            "near_zero_deviation": near_zero_deviation(MODEL_NEAR_ZERO),
            "bracket": abs(model_bracket(BRACKET_POINT)),
        }
        if len(solutions) > 1:
            summary["agreement"] = solutions[0].agreement(solutions[1])
        if "quadrature" in methods:
            summary["operator_residual"] = float(np.max(operator_residual(model_quadrature, points)))
        return summary

    def run_expansion(self, experiment: ExperimentConfig, directory: Path) -> SummaryType:
        forcing = experiment.forcing
        spec = experiment.background
        state = expansion_iterate(spec, forcing.fr, experiment.mode,  # type: ignore
                                  experiment.spectral.outer_radius)
        # predicted_constant carries int chi dt, the expansion does not
        predicted = predicted_constant(spec, None, forcing, experiment.mode).value \
            / forcing.chi.integral  # type: ignore
        footer = self.footer(experiment, "static iteration", f"outer radius {experiment.spectral.outer_radius:g}")

        start, end, count = EXPANSION_RADII
        radii = np.geomspace(max(start, 2.0 * spec.horizon + 1.0), min(end, 0.1 * experiment.spectral.outer_radius),
                             count)
        table = CsvTable(footer=footer)
        table.add_column("r", list(radii))
        table.add_column("f1", list(state.f1(radii)))
        table.add_column("u1", list(state.u1(radii)))
        table.add_column("f2", list(state.f2(radii)))
        table.add_column("f2_ratio", [state.f2_ratio(float(r)) for r in radii])
        table.write(directory / "expansion.csv")

        constants = {"c0": state.c0, "c0_tail": state.zero.c0_tail, "c_x": state.c_x, "c_m": state.c_m,
                     "c_m_predicted": predicted, "f2_limit": state.f2_limit(),
                     "log_coefficient": state.log_coefficient()}
        TableGenerator.named_values(constants, footer).write(directory / "constants.csv")
        return {"c0": state.c0, "c_m": state.c_m,
                "c_m_difference": abs(state.c_m - predicted) / max(abs(predicted), np.finfo(float).tiny),
                "f2_ratio": state.f2_ratio(1e3).real, "f2_limit": state.f2_limit().real}

    # artifacts as input

    @staticmethod
    def input_series(experiment: ExperimentConfig) -> List[TimeSeries]:
        """
        Series from CSV artifacts: several paths give one series each (column 'value' or the first listed
        column), a single path gives one series per listed column (default: every column but the abscissa)
        """
        settings = experiment.input
        paths = parse_list(settings.path or "")
        series = []
        for path in paths:
            table = read_csv_table(Path(path))
            x_column = settings.x_column if settings.x_column in table.columns else table.header[0]
            if len(paths) > 1:
                columns = settings.columns[:1] or ["value"]
            else:
                columns = settings.columns or [name for name in table.header if name != x_column]
            for column in columns:
                if column not in table.columns:
                    raise ConfigurationError(f"Column '{column}' is not in {path}; columns: "
                                             f"{', '.join(table.header)}")
                series.append(TimeSeries(x_column, table.column(x_column), table.column(column),
                                         observer=f"{Path(path).stem}:{column}"))
        return series

    def run_fit_tail(self, experiment: ExperimentConfig, directory: Path) -> SummaryType:
        tail = experiment.tail
        reports = {series.observer: tail_fit(series, tail.target_exponent, None, tail.window, tail.tolerance,
                                             tail.residual_limit)
                   for series in self.input_series(experiment)}
        footer = self.footer(experiment, "fit-tail", experiment.input.path or "")
        TableGenerator.tail_reports(reports, footer).write(directory / "tail.csv")
        name, report = next(iter(reports.items()))
        return self.report_summary(name, report)

    def run_ray_profile(self, experiment: ExperimentConfig, directory: Path) -> SummaryType:
        settings = experiment.input
        if settings.c_m is None:
            raise ConfigurationError("A ray-profile experiment needs [input] c_m")
        series = self.input_series(experiment)
        if len(settings.ratios) != len(series):
            raise ConfigurationError(f"[input] lists {len(settings.ratios)} ratios for {len(series)} series")
        ratios = ray_profile_check(dict(zip(settings.ratios, series)), settings.c_m, experiment.tail.window)
        footer = self.footer(experiment, "ray-profile", settings.path or "")
        TableGenerator.ray_ratios(ratios, footer).write(directory / "ray_ratios.csv")
        return {"rays": len(ratios), "ray_ratio_spread": max(abs(ratio.estimate - 1.0) for ratio in ratios)}

    # Kerr

    def run_kerr_constant(self, experiment: ExperimentConfig, directory: Path) -> SummaryType:
        settings = experiment.kerr
        spec = experiment.background
        a = settings.a or spec.kerr_a
        support = (settings.r_min, settings.r_max)
        value = kerr_tail_constant(separable_data(settings.phi0, settings.phi0_angular),
                                   separable_data(settings.phi1, settings.phi1_angular), spec.mass, a, support,
                                   settings.nodes, refine=settings.refine)
        summary: SummaryType = {"a": a, "constant": value}
        constants: Dict[str, float] = {"a": a, "constant": value}
        uniform = settings.phi1_angular == AngularFactor.UNIFORM
        if a == 0.0 and uniform and not settings.phi1.is_zero:
            reference = predicted_constant(spec, CauchyData(phi1=settings.phi1)).value
            constants["schwarzschild"] = reference
            summary["relative_difference"] = abs(value - reference) / max(abs(reference), np.finfo(float).tiny)
        footer = self.footer(experiment, "kerr quadrature", f"r in [{settings.r_min:g}, {settings.r_max:g}], "
                                                            f"nodes {settings.nodes}")
        TableGenerator.named_values(constants, footer).write(directory / "kerr.csv")  # type: ignore
        return summary
