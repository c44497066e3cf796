from .params import BathParams, DissipationModel, MachineParams, RateSet, WeakCouplingWarning
from .operators import BasisConvention, Liouvillian, WMatrix
from .states import InitialKind, InitialState, ReducedState, SteadySolution, Trajectory
from .thermo import MaxPowerPoint, ThermoReport
from .run import ResultRow, RunConfig, SweepAxis

__all__ = [
    "BathParams",
    "DissipationModel",
    "MachineParams",
    "RateSet",
    "WeakCouplingWarning",
    "BasisConvention",
    "Liouvillian",
    "WMatrix",
    "InitialKind",
    "InitialState",
    "ReducedState",
    "SteadySolution",
    "Trajectory",
    "MaxPowerPoint",
    "ThermoReport",
    "ResultRow",
    "RunConfig",
    "SweepAxis",
]
