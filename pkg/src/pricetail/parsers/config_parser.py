"""
Conversion of a schema-validated {section: {key: string}} mapping into the typed ExperimentConfig.

The schema guarantees the string forms; pydantic does the coercion and the cross-field checks. Any failure
at this stage is reported as a ConfigurationError.
"""
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from pricetail.background.specs import BackgroundKind, BackgroundSpec, Mode, PotentialProfile, PotentialSpec
from pricetail.evolve.data import CauchyData, CharacteristicData, ForcingSpec
from pricetail.evolve.grids import CauchyGrid, NullGrid
from pricetail.evolve.observers import Observer, ObserverKind
from pricetail.exceptions import ConfigurationError
from pricetail.profiles import RadialProfile, TemporalProfile
from pricetail.spectral.sigma_grid import SigmaGrid
from pricetail.type_aliases import RawConfigType, SectionType
from pricetail.utils import parse_float_list, parse_list

PROFILE_FIELDS = ("kind", "amplitude", "center", "width", "power")
TEMPORAL_FIELDS = ("kind", "amplitude", "center", "width")
TRUE_VALUES = ("true", "yes", "on", "1")


class ExperimentKind(str, Enum):
    EVOLVE = "evolve"
    SPECTRAL = "spectral"
    MODEL = "model"
    EXPANSION = "expansion"
    FIT_TAIL = "fit-tail"
    RAY_PROFILE = "ray-profile"
    KERR_CONSTANT = "kerr-constant"
    VERIFY = "verify"


class Scheme(str, Enum):
    LEAPFROG = "leapfrog"
    DOUBLE_NULL = "double_null"


class AngularFactor(str, Enum):
    UNIFORM = "uniform"
    COS_THETA = "cos_theta"
    SIN_THETA_COS_PHI = "sin_theta_cos_phi"


class TailSettings(BaseModel):
    """ Which series is fitted and how

    observer: name of the recorded series (default: the first one)
    window_start, window_end: the fit window (default: chosen from the last zero crossing)
    target_exponent: the exponent the coefficient is extracted at (default: the expected one)
    static: whether the data are initially static
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    observer: Optional[str] = None
    window_start: Optional[float] = None
    window_end: Optional[float] = None
    target_exponent: Optional[float] = None
    tolerance: float = Field(default=0.1, gt=0.0)
    residual_limit: float = Field(default=0.1, gt=0.0)
    static: bool = False

    @property
    def window(self) -> Optional[Tuple[float, float]]:
        if self.window_start is None or self.window_end is None:
            return None
        return self.window_start, self.window_end


class SpectralSettings(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    grid: SigmaGrid = SigmaGrid()
    r_obs: float = Field(default=20.0, gt=0.0)
    outer_radius: float = Field(default=1e6, gt=0.0)
    check_residual: bool = False


class ModelSettings(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    r_min: float = Field(default=0.1, gt=0.0)
    r_max: float = Field(default=10.0, gt=0.0)
    points: int = Field(default=50, ge=2)
    method: str = "both"

    @model_validator(mode="after")
    def check_range(self) -> "ModelSettings":
        if self.r_max <= self.r_min:
            raise ValueError("model r_max must exceed r_min")
        return self


class KerrSettings(BaseModel):
    """ Separable data phi_k(r, theta, phi) = f_k(r) Y_k(theta, phi) for the Kerr tail constant """
    model_config = ConfigDict(frozen=True, extra="forbid")

    a: float = 0.0
    r_min: float = 4.0
    r_max: float = 20.0
    phi0: RadialProfile = RadialProfile()
    phi0_angular: AngularFactor = AngularFactor.UNIFORM
    phi1: RadialProfile = RadialProfile()
    phi1_angular: AngularFactor = AngularFactor.UNIFORM
    nodes: Tuple[int, int, int] = (48, 24, 32)
    refine: bool = True


class InputSettings(BaseModel):
    """ A CSV artifact analysed by the fit-tail and ray-profile experiments """
    model_config = ConfigDict(frozen=True, extra="forbid")

    path: Optional[str] = None
    x_column: str = "x"
    columns: List[str] = []
    ratios: List[float] = []
    c_m: Optional[float] = None


class SweepSettings(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    section: str
    key: str
    values: List[str]

    @property
    def parameter(self) -> str:
        return f"{self.section}.{self.key}"


class VerifySettings(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    criteria: List[str] = []
    scale: str = "full"


class ExperimentConfig(BaseModel):
    """ A validated experiment """
    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: ExperimentKind
    name: str = "experiment"
    output: Optional[str] = None
    background: BackgroundSpec = BackgroundSpec()
    mode: Mode = Mode()
    scheme: Scheme = Scheme.LEAPFROG
    cauchy_grid: CauchyGrid = CauchyGrid()
    null_grid: NullGrid = NullGrid()
    data: CauchyData = CauchyData()
    characteristic: CharacteristicData = CharacteristicData()
    forcing: Optional[ForcingSpec] = None
    observers: List[Observer] = []
    tail: TailSettings = TailSettings()
    spectral: SpectralSettings = SpectralSettings()
    model: ModelSettings = ModelSettings()
    kerr: KerrSettings = KerrSettings()
    input: InputSettings = InputSettings()
    sweep: Optional[SweepSettings] = None
    verify: VerifySettings = VerifySettings()
    config_hash: str = ""

    @model_validator(mode="after")
    def check_experiment(self) -> "ExperimentConfig":
        if self.kind == ExperimentKind.EVOLVE:
            if not self.observers:
                raise ValueError("an evolve experiment needs at least one observer")
            if self.scheme == Scheme.LEAPFROG and self.data.support[1] == float("inf"):
                raise ValueError("leapfrog data must be compactly supported (power profiles are not)")
        if self.kind in (ExperimentKind.SPECTRAL, ExperimentKind.EXPANSION):
            if self.forcing is None or self.forcing.fr.is_zero:
                raise ValueError(f"a {self.kind.value} experiment needs a radial source f in [forcing]")
        if self.kind in (ExperimentKind.FIT_TAIL, ExperimentKind.RAY_PROFILE) and self.input.path is None:
            raise ValueError(f"a {self.kind.value} experiment needs [input] path")
        return self


def _is_true(value: str) -> bool:
    return value.strip().lower() in TRUE_VALUES


def _prefixed(section: SectionType, prefix: str, fields: Tuple[str, ...]) -> Dict[str, str]:
    return {field: section[f"{prefix}_{field}"] for field in fields if f"{prefix}_{field}" in section}


class ConfigParser:
    """
    Builds an ExperimentConfig from a raw (schema-validated) config mapping.

    Args:
        raw_config: {section: {key: value}} with string values
        config_hash: the hash recorded with every artifact of this config
    """
    def __init__(self, raw_config: RawConfigType, config_hash: str = "") -> None:
        self.__raw = raw_config
        self.__hash = config_hash

    def section(self, name: str) -> SectionType:
        return self.__raw.get(name, {})

    def parse(self) -> ExperimentConfig:
        """
        Coerce every section and build the experiment.

        Returns:
            The typed, frozen ExperimentConfig

        Raises:
            ConfigurationError when a value or a combination of values is invalid
        """
        try:
            return self._build()
        except ValidationError as validation_error:
            messages = "; ".join(f"{'.'.join(str(part) for part in error['loc']) or 'config'}: {error['msg']}"
                                 for error in validation_error.errors())
            raise ConfigurationError(f"Invalid configuration: {messages}") from None
        except (ValueError, KeyError) as error:
            raise ConfigurationError(f"Invalid configuration: {error}") from None

    def _build(self) -> ExperimentConfig:
        experiment = self.section("experiment")
        fields: Dict[str, Any] = {
            "kind": experiment["kind"],
            "background": self._background(),
            "mode": Mode(**self.section("mode")),
            "scheme": self.section("scheme").get("name", Scheme.LEAPFROG.value),
            "cauchy_grid": CauchyGrid(**self.section("cauchy_grid")),
            "null_grid": NullGrid(**self.section("null_grid")),
            "data": self._data(),
            "characteristic": CharacteristicData(ingoing=self.radial_profile(self.section("data"), "ingoing")),
            "forcing": self._forcing(),
            "observers": self._observers(),
            "tail": self._tail(),
            "spectral": self._spectral(),
            "model": ModelSettings(**self.section("model")),
            "kerr": self._kerr(),
            "input": self._input(),
            "sweep": self._sweep(),
            "verify": self._verify(),
            "config_hash": self.__hash,
        }
        for key in ("name", "output"):
            if key in experiment:
                fields[key] = experiment[key]
        return ExperimentConfig(**fields)

    def _background(self) -> BackgroundSpec:
        section = dict(self.section("background"))
        potential_name = section.pop("potential", "none")
        amplitude = section.pop("amplitude", "0")
        radii = section.pop("radii", None)
        values = section.pop("values", None)
        decay_order = section.pop("decay_order", None)
        potential = None
        if potential_name != "none":
            potential = PotentialSpec(
                amplitude=float(amplitude), profile=PotentialProfile(potential_name),
                radii=parse_float_list(radii) if radii else None,
                values=parse_float_list(values) if values else None,
                decay_order=int(decay_order) if decay_order else None)
        if section.get("kind") == BackgroundKind.FLAT_POTENTIAL.value:
            section.setdefault("mass", "0")
        return BackgroundSpec(potential=potential, **section)

    @staticmethod
    def radial_profile(section: SectionType, prefix: str) -> RadialProfile:
        return RadialProfile(**_prefixed(section, prefix, PROFILE_FIELDS))

    @staticmethod
    def temporal_profile(section: SectionType, prefix: str) -> TemporalProfile:
        return TemporalProfile(**_prefixed(section, prefix, TEMPORAL_FIELDS))

    def _data(self) -> CauchyData:
        section = self.section("data")
        return CauchyData(phi0=self.radial_profile(section, "phi0"), phi1=self.radial_profile(section, "phi1"))

    def _forcing(self) -> Optional[ForcingSpec]:
        section = self.section("forcing")
        if not section:
            return None
        chi = self.temporal_profile(section, "chi")
        return ForcingSpec(chi=chi, fr=self.radial_profile(section, "f"))

    def _observers(self) -> List[Observer]:
        section = self.section("observers")
        stride = int(section.get("stride", "1"))
        observers = [Observer(kind=ObserverKind.FIXED_RADIUS, radius=radius, stride=stride)
                     for radius in parse_float_list(section.get("radii", ""))]
        observers += [Observer(kind=ObserverKind.RADIATION_FIELD, v_far=v_far, stride=stride)
                      for v_far in parse_float_list(section.get("v_far", ""))]
        observers += [Observer(kind=ObserverKind.RAY, ratio=ratio, stride=stride)
                      for ratio in parse_float_list(section.get("ratios", ""))]
        return observers

    def _tail(self) -> TailSettings:
        section = dict(self.section("tail"))
        if "static" in section:
            section["static"] = str(_is_true(section["static"]))
        return TailSettings(**section)

    def _spectral(self) -> SpectralSettings:
        section = dict(self.section("spectral"))
        grid_keys = ("sigma_min", "sigma_max", "count", "product", "min_radius")
        grid = SigmaGrid(**{key: section.pop(key) for key in grid_keys if key in section})
        if "check_residual" in section:
            section["check_residual"] = str(_is_true(section["check_residual"]))
        return SpectralSettings(grid=grid, **section)

    def _kerr(self) -> KerrSettings:
        section = self.section("kerr")
        fields: Dict[str, Any] = {key: section[key] for key in ("a", "r_min", "r_max", "phi0_angular", "phi1_angular")
                                  if key in section}
        fields["phi0"] = self.radial_profile(section, "phi0")
        fields["phi1"] = self.radial_profile(section, "phi1")
        default = KerrSettings().nodes
        fields["nodes"] = tuple(int(section.get(f"nodes_{axis}", default[index]))
                                for index, axis in enumerate(("r", "theta", "phi")))
        if "refine" in section:
            fields["refine"] = _is_true(section["refine"])
        return KerrSettings(**fields)

    def _input(self) -> InputSettings:
        section = self.section("input")
        fields: Dict[str, Any] = {key: section[key] for key in ("path", "x_column", "c_m") if key in section}
        fields["columns"] = parse_list(section.get("columns", ""))
        fields["ratios"] = parse_float_list(section.get("ratios", ""))
        return InputSettings(**fields)

    def _sweep(self) -> Optional[SweepSettings]:
        section = self.section("sweep")
        if not section:
            return None
        if "parameter" not in section or "values" not in section:
            raise ValueError("[sweep] needs both 'parameter' and 'values'")
        name, key = section["parameter"].split(".", 1)
        values = parse_list(section["values"])
        if len(values) < 1:
            raise ValueError("[sweep] values is empty")
        return SweepSettings(section=name, key=key, values=values)

    def _verify(self) -> VerifySettings:
        section = self.section("verify")
        criteria = parse_list(section.get("criteria", "all"))
        return VerifySettings(criteria=[] if criteria == ["all"] else criteria, scale=section.get("scale", "full"))
