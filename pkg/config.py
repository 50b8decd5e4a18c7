"""
Configuration settings for the K-g-frame toolkit.
Centralized configuration management.
"""

import os
from typing import Tuple
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


class Config:
    """Application configuration."""

    # Numerical tolerances
    DEFAULT_TOL: float = float(os.getenv("KGFRAMES_TOL", "1e-9"))
    BISECTION_STEPS: int = 60
    BISECTION_TOL: float = 1e-12        # PSD slack inside the bisection oracle
    ENVELOPE_TOL: float = 1e-7          # claimed-vs-certified slack
    IDENTITY_TOL: float = 1e-9          # operator identities (frame operator additivity, duality)
    CROSS_CHECK_RTOL: float = 1e-7      # bisection vs closed-form lower bound

    # Eigen / SVD kernels
    EIGEN_KERNEL: str = os.getenv("KGFRAMES_EIGEN_KERNEL", "jacobi")  # "jacobi" or "lapack"
    JACOBI_MAX_SWEEPS: int = 60

    # Random instance generation
    MAX_REJECTIONS: int = 1000
    DIM_RANGE: Tuple[int, int] = (1, 4)        # d
    LENGTH_RANGE: Tuple[int, int] = (1, 6)     # n
    ATOM_RANGE: Tuple[int, int] = (1, 8)       # N
    FIBER_RANGE: Tuple[int, int] = (1, 4)      # m_xi

    # Scenario / report files
    SCENARIO_FORMAT_VERSION: int = 1

    # Logging Configuration
    LOG_LEVEL: str = os.getenv("KGFRAMES_LOG_LEVEL", "WARNING")
    LOG_FORMAT: str = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

    @classmethod
    def validate(cls) -> bool:
        """
        Validate configuration.

        Returns:
            True if configuration is valid
        """
        if cls.DEFAULT_TOL <= 0:
            raise ValueError(f"KGFRAMES_TOL must be positive, got {cls.DEFAULT_TOL}")
        if cls.EIGEN_KERNEL not in ("jacobi", "lapack"):
            raise ValueError(f"Unknown eigen kernel: {cls.EIGEN_KERNEL}")
        for name in ("DIM_RANGE", "LENGTH_RANGE", "ATOM_RANGE", "FIBER_RANGE"):
            low, high = getattr(cls, name)
            if low < 1 or high < low:
                raise ValueError(f"{name} must be a nonempty range of positive integers")
        return True

    @classmethod
    def tol(cls, value: float = None) -> float:
        """Resolve an explicit tolerance against the configured default."""
        return cls.DEFAULT_TOL if value is None else float(value)


# Export config instance
config = Config()
