"""Exceptions for pricetail"""


class PriceTailException(Exception):
    """Base exception for pricetail exceptions"""

    exit_code = 1


class ConfigurationError(PriceTailException):
    """Raised when a configuration cannot be read or is not valid"""

    exit_code = 2

    def __init__(self, message: str) -> None:
        super().__init__(f"{message}")


class ConfigFileNotFound(ConfigurationError):
    """Raised when the config file does not exist"""

    def __init__(self, file_name: str) -> None:
        super().__init__(f"Config file '{file_name}' was not found")


class MalformedConfigFile(ConfigurationError):
    """Raised when the config file cannot be parsed as sectioned key = value text"""

    def __init__(self, file_name: str, reason: str) -> None:
        super().__init__(f"Config file '{file_name}' is malformed: {reason}")


class ConfigFailedValidation(ConfigurationError):
    """Raised when the validate command finds errors in a config"""

    def __init__(self, file_name: str, messages: str) -> None:
        super().__init__(f"Config '{file_name}' is not valid:\n{messages}")


class ConfigHashMismatch(ConfigurationError):
    """Raised when artifacts produced from different configurations are compared"""

    def __init__(self, file_name: str, expected: str, found: str) -> None:
        super().__init__(f"Artifact '{file_name}' has config hash '{found}', expected '{expected}'")


class PackageNotComplete(ConfigurationError):
    """Raised when a file that ships with the package (schema, acceptance config) is missing"""

    def __init__(self, file_name: str) -> None:
        super().__init__(f"Package file '{file_name}' is missing. Please reinstall pricetail")


class ArtifactNotFound(ConfigurationError):
    """Raised when a CSV artifact used as input does not exist"""

    def __init__(self, file_name: str) -> None:
        super().__init__(f"Artifact '{file_name}' was not found")


class ComputeError(PriceTailException):
    """Base exception for numerical failures"""

    exit_code = 3

    def __init__(self, message: str) -> None:
        super().__init__(f"{message}")


class ChartDomainError(ComputeError):
    """Raised when a radius lies outside the exterior domain of the chart"""

    def __init__(self, r: float, r_min: float) -> None:
        super().__init__(f"Radius {r} is outside the chart domain r > {r_min}")


class ChartConvergenceError(ComputeError):
    """Raised when the inverse tortoise map does not converge"""

    def __init__(self, x: float, iterations: int) -> None:
        super().__init__(f"Inverse tortoise map did not converge for r* = {x} after {iterations} iterations")


class ChartFloorViolation(ComputeError):
    """Raised when a grid reaches below the floor of the radial chart"""

    def __init__(self, x: float) -> None:
        super().__init__(f"Grid point r* = {x} lies below the chart floor")


class UnsupportedBackground(ComputeError):
    """Raised when an operation is asked for on a background it does not support"""

    def __init__(self, operation: str, background: str) -> None:
        super().__init__(f"Operation '{operation}' is not available for background '{background}'")


class ExtendedStateObstructed(ComputeError):
    """Raised when a zero energy bound state obstructs the extended state solve"""

    def __init__(self, determinant: float) -> None:
        super().__init__(f"Zero energy bound state: matching determinant {determinant:.3e} below tolerance")


class SupportViolation(ComputeError):
    """Raised when data are not supported where an operation requires"""

    def __init__(self, message: str) -> None:
        super().__init__(f"Support violation: {message}")


class QuadratureNotConverged(ComputeError):
    """Raised when a quadrature does not reach the requested tolerance"""

    def __init__(self, what: str, error: float) -> None:
        super().__init__(f"Quadrature for {what} did not converge (error estimate {error:.3e})")


class CflViolation(ComputeError):
    """Raised when the Courant number of a Cauchy grid is outside (0, 1]"""

    def __init__(self, cfl: float) -> None:
        super().__init__(f"Courant number {cfl} is outside (0, 1]")


class GuardViolation(ComputeError):
    """Raised when boundary contamination can reach an observer before the end of the run"""

    def __init__(self, observer: str, boundary: str, steps: int, cells: int) -> None:
        super().__init__(f"Observer '{observer}' is {cells} cells from the {boundary} boundary but the run takes "
                         f"{steps} steps")


class EvolutionDiverged(ComputeError):
    """Raised when the evolved field stops being finite"""

    def __init__(self, scheme: str, step: int) -> None:
        super().__init__(f"Scheme '{scheme}' produced non-finite values at step {step}")


class UnsupportedObserver(ComputeError):
    """Raised when a scheme cannot record a kind of observer"""

    def __init__(self, scheme: str, observer: str) -> None:
        super().__init__(f"Scheme '{scheme}' cannot record observer '{observer}'")


class WronskianDrift(ComputeError):
    """Raised when the Wronskian of a homogeneous pair is not constant"""

    def __init__(self, sigma: float, drift: float) -> None:
        super().__init__(f"Wronskian drift {drift:.3e} at sigma = {sigma} exceeds tolerance")


class ResonanceDetected(ComputeError):
    """Raised when the Wronskian of a homogeneous pair (nearly) vanishes"""

    def __init__(self, sigma: float, wronskian: float) -> None:
        super().__init__(f"Wronskian |W| = {wronskian:.3e} at sigma = {sigma}: resonance")


class ZeroEnergyMismatch(ComputeError):
    """Raised when the zero energy constant from quadrature and from the tail of the solution disagree"""

    def __init__(self, quadrature: float, tail: float) -> None:
        super().__init__(f"Zero energy constant mismatch: quadrature {quadrature:.10g}, tail fit {tail:.10g}")


class IllConditionedFit(ComputeError):
    """Raised when a least squares fit is too badly conditioned"""

    def __init__(self, condition: float) -> None:
        super().__init__(f"Fit is ill-conditioned (condition number {condition:.3e})")


class UnstableFit(ComputeError):
    """Raised when a fitted coefficient changes too much when samples are dropped"""

    def __init__(self, name: str, change: float) -> None:
        super().__init__(f"Coefficient '{name}' changes by {change:.1%} when the two largest samples are dropped")


class ZeroCrossing(ComputeError):
    """Raised when a series changes sign inside an evaluation window"""

    def __init__(self, x: float) -> None:
        super().__init__(f"Series crosses zero near x = {x:.6g}")


class WindowTooShort(ComputeError):
    """Raised when a tail window is shorter than half a decade"""

    def __init__(self, start: float, end: float) -> None:
        super().__init__(f"Tail window [{start:.6g}, {end:.6g}] is shorter than half a decade")


class FitResidualTooLarge(ComputeError):
    """Raised when a tail fit does not describe the series"""

    def __init__(self, residual: float) -> None:
        super().__init__(f"Tail fit relative residual {residual:.3e} is too large")


class DegenerateData(ComputeError):
    """Raised when data or forcing have a vanishing tail constant where one is needed"""

    def __init__(self, message: str) -> None:
        super().__init__(f"{message}")


class SubNoiseDifferences(ComputeError):
    """Raised when grid-to-grid differences are below round-off"""

    def __init__(self) -> None:
        super().__init__("Differences between grid levels are below round-off; order is undefined")


class AcceptanceFailed(PriceTailException):
    """Raised when one or more acceptance criteria or sweep instances failed"""

    exit_code = 4

    def __init__(self, failed: str) -> None:
        super().__init__(f"Failed: {failed}")
