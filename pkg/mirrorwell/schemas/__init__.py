from .potential import PotentialFamily, PotentialSpec, WallSide
from .spectrum import EigenvalueRecord, Method, ParitySector, ScanConfig, SpectrumReport, SplittingRow, WellKind
from .oracle import GridSpec, OracleResult
from .poly import PolynomialEigenstate, PolynomialParameterSet
from .verify import VerificationReport, VerificationRow
from .wavefunction import WavefunctionResponse

__all__ = [
    "PotentialFamily", "PotentialSpec", "WallSide",
    "EigenvalueRecord", "Method", "ParitySector", "ScanConfig", "SpectrumReport", "SplittingRow", "WellKind",
    "GridSpec", "OracleResult",
    "PolynomialEigenstate", "PolynomialParameterSet",
    "VerificationReport", "VerificationRow",
    "WavefunctionResponse",
]
