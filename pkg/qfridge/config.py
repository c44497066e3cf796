# qfridge/config.py
import os
from dataclasses import dataclass

from dotenv import load_dotenv

load_dotenv()


class Settings:
    """
    Very simple settings holder.
    Reads QFRIDGE_* variables from the environment (or a local .env file),
    otherwise falls back to defaults.
    """

    def __init__(self) -> None:
        self.log_level: str = os.getenv("QFRIDGE_LOG_LEVEL", "INFO").upper()
        self.workers: int = int(os.getenv("QFRIDGE_WORKERS", "1"))
        self.output_dir: str = os.getenv("QFRIDGE_OUTPUT_DIR", "./results")


settings = Settings()


@dataclass
class SolverConfig:
    """Numerical tolerances shared by the solvers."""

    # Relative singular-value threshold for kernel extraction
    KERNEL_RTOL: float = 1e-10

    # Adaptive Runge-Kutta tolerances
    REL_TOL: float = 1e-9
    ABS_TOL: float = 1e-12
    METHOD: str = "DOP853"

    # Projection closure, relative to the generator norm
    CLOSURE_TOL: float = 1e-12

    # Smallest eigenvalue accepted for a steady density matrix
    PSD_TOL: float = 1e-9

    # Steady residual contract ||W p|| <= STEADY_RESIDUAL * ||W||
    STEADY_RESIDUAL: float = 1e-10

    # Integration horizon in units of the inverse spectral gap
    GAP_HORIZON: float = 50.0

    @classmethod
    def from_env(cls) -> "SolverConfig":
        """Load overrides from environment variables."""
        defaults = cls()
        return cls(
            KERNEL_RTOL=float(os.getenv("QFRIDGE_KERNEL_RTOL", defaults.KERNEL_RTOL)),
            REL_TOL=float(os.getenv("QFRIDGE_REL_TOL", defaults.REL_TOL)),
            ABS_TOL=float(os.getenv("QFRIDGE_ABS_TOL", defaults.ABS_TOL)),
            METHOD=os.getenv("QFRIDGE_RK_METHOD", defaults.METHOD),
        )


# Global config instance
_config: SolverConfig = None


def get_config() -> SolverConfig:
    """Get or create global solver config."""
    global _config
    if _config is None:
        _config = SolverConfig.from_env()
    return _config
