"""
Configuration Management for the Matroid Selection Toolkit
Centralizes budgets, tolerances and logging settings
"""
import math
import os
from fractions import Fraction
from pathlib import Path
from typing import Union

from dotenv import load_dotenv

# Load environment variables
load_dotenv()


def _env_bool(name: str, default: str = "false") -> bool:
    return os.getenv(name, default).strip().lower() in ("1", "true", "yes", "on")


class Config:
    """Central configuration class for all toolkit settings"""

    # ============================================================================
    # PROJECT PATHS
    # ============================================================================
    BASE_DIR = Path(__file__).parent.parent.parent.parent
    LOGS_DIR = Path(os.getenv("MBS_LOGS_DIR", str(BASE_DIR / "logs")))

    # ============================================================================
    # LOGGING CONFIGURATION
    # ============================================================================
    LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()
    LOG_TO_FILE = _env_bool("MBS_LOG_TO_FILE")
    LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    LOG_COLOR_FORMAT = "%(log_color)s%(asctime)s - %(name)s - %(levelname)s%(reset)s - %(message)s"
    LOG_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"
    MAX_LOG_SIZE = int(os.getenv("MBS_MAX_LOG_SIZE", str(10 * 1024 * 1024)))  # 10MB
    LOG_BACKUP_COUNT = int(os.getenv("MBS_LOG_BACKUP_COUNT", "5"))

    # ============================================================================
    # EXACT POLICY BUDGETS
    # ============================================================================
    MAX_DP_STATES = int(os.getenv("MBS_MAX_DP_STATES", "2000000"))
    ENUMERATION_CAP = int(os.getenv("MBS_ENUMERATION_CAP", str(2 ** 20)))
    DISPERSAL_ETA = float(os.getenv("MBS_DISPERSAL_ETA", "1e-9"))

    # ============================================================================
    # LP RELAXATION SETTINGS
    # ============================================================================
    MAX_BIN_STATES = int(os.getenv("MBS_MAX_BIN_STATES", "200000"))
    LP_PRIMAL_TOL = float(os.getenv("MBS_LP_PRIMAL_TOL", "1e-9"))
    LP_VERIFY_TOL = float(os.getenv("MBS_LP_VERIFY_TOL", "1e-7"))
    LP_ZERO_TOL = float(os.getenv("MBS_LP_ZERO_TOL", "1e-12"))

    # ============================================================================
    # DISTRIBUTIONS
    # ============================================================================
    PROB_TOL = float(os.getenv("MBS_PROB_TOL", "1e-12"))  # float-mode mass tolerance

    # ============================================================================
    # MONTE CARLO
    # ============================================================================
    DEFAULT_TRIALS = int(os.getenv("MBS_DEFAULT_TRIALS", "10000"))
    DEFAULT_SEED = int(os.getenv("MBS_DEFAULT_SEED", "0"))

    # ============================================================================
    # HELPER METHODS
    # ============================================================================
    @classmethod
    def get_enumeration_cap(cls) -> int:
        """Cap on the number of joint realizations enumerated exactly"""
        return cls.ENUMERATION_CAP

    @classmethod
    def auto_k(cls, epsilon: Union[Fraction, float]) -> int:
        """
        Default big-bin threshold for a given epsilon

        Args:
            epsilon: Accuracy parameter in (0, 1)

        Returns:
            ceil(epsilon^-4)
        """
        return int(math.ceil(Fraction(epsilon) ** -4))

    @classmethod
    def ensure_logs_dir(cls) -> Path:
        """Create the log directory on demand"""
        cls.LOGS_DIR.mkdir(parents=True, exist_ok=True)
        return cls.LOGS_DIR

    @classmethod
    def validate(cls) -> bool:
        """
        Validate configuration values

        Returns:
            True if valid

        Raises:
            ValueError: If a budget or tolerance is not positive
        """
        if cls.MAX_DP_STATES <= 0 or cls.ENUMERATION_CAP <= 0 or cls.MAX_BIN_STATES <= 0:
            raise ValueError("State and enumeration budgets must be positive")
        if cls.LP_PRIMAL_TOL <= 0 or cls.LP_VERIFY_TOL <= 0:
            raise ValueError("LP tolerances must be positive")
        if cls.DEFAULT_TRIALS < 1:
            raise ValueError("MBS_DEFAULT_TRIALS must be at least 1")
        return True


# Create singleton instance
config = Config()

# Export
__all__ = ['config', 'Config']
