"""
Configuration management using Pydantic Settings.

Defaults for every tolerance live here, grouped the same way the library
modules group them. Settings are built only from explicit keyword arguments
(job config JSON and CLI flags): the environment and dotenv files are never
consulted, so identical configs give identical reports.
"""

from typing import Optional, Tuple, Type

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict

from infodist.core.matrixcore import HERMITICITY_TOL
from infodist.divergence.tradeoff import EXPANSION_DELTA
from infodist.fisher.information import PROB_TOL
from infodist.measurement.povm import COND_TOL
from infodist.models.statistical import FD_STEP
from infodist.tradeoff.certifiers import CLASSICAL_EQUALITY_TOL, EQUALITY_TOL, PSD_TOL


class _InitOnlySettings(BaseSettings):
    model_config = SettingsConfigDict(extra="forbid", validate_default=True)

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        return (init_settings,)


class ToleranceSettings(_InitOnlySettings):
    """Numerical tolerances, overridable per job via "tolerances": {...}."""

    # ===== Linear algebra =====
    hermiticity_tol: float = Field(
        default=HERMITICITY_TOL, gt=0, le=1e-3,
        description="Max-entry deviation allowed between H and H†"
    )
    support_tol: Optional[float] = Field(
        default=None, gt=0, le=1e-3,
        description="Eigenvalues at or below this count as zero; unset means 1e-12 times the largest |λ|"
    )

    # ===== Models and measurements =====
    fd_step: float = Field(
        default=FD_STEP, gt=0, le=1e-2,
        description="Central finite-difference step for models without analytic derivatives"
    )
    prob_tol: float = Field(
        default=PROB_TOL, ge=0, le=1e-6,
        description="Outcomes with probability at or below this are null"
    )
    cond_tol: float = Field(
        default=COND_TOL, gt=0, le=1e-2,
        description="Smallest singular value a reversible Kraus operator must exceed"
    )

    # ===== Certification verdicts =====
    psd_tol: float = Field(
        default=PSD_TOL, gt=0, le=1e-3,
        description="Loewner verdicts pass when the smallest eigenvalue is ≥ −psd_tol"
    )
    equality_tol: float = Field(
        default=EQUALITY_TOL, gt=0, le=1e-3,
        description="Max-entry residual allowed for separating and RLD equalities"
    )
    classical_equality_tol: float = Field(
        default=CLASSICAL_EQUALITY_TOL, gt=0, le=1e-3,
        description="Max-entry residual allowed between classical Fisher matrices"
    )
    ordering_tol: float = Field(
        default=1e-9, gt=0, le=1e-3,
        description="Loewner tolerance for the SLD ≤ BKM ≤ real RLD ordering"
    )
    unitary_tol: float = Field(
        default=1e-9, gt=0, le=1e-3,
        description="|gap| allowed for Fisher information under unitary channels"
    )
    divergence_slack_tol: float = Field(
        default=1e-8, gt=0, le=1e-3,
        description="Divergence tradeoff passes when slack ≥ −divergence_slack_tol"
    )
    derivative_tol: float = Field(
        default=1e-6, gt=0, le=1e-2,
        description="Agreement required between analytic and finite-difference derivatives"
    )
    oracle_tol: float = Field(
        default=1e-8, gt=0, le=1e-3,
        description="Agreement required with closed-form Fisher information values"
    )

    # ===== Local expansions =====
    expansion_delta: float = Field(
        default=EXPANSION_DELTA, gt=0, le=1e-1,
        description="Parameter step δ in 2·D(ρ_θ‖ρ_θ+δ)/δ²"
    )
    expansion_rel_tol: float = Field(
        default=1e-2, gt=0, le=1.0,
        description="Relative agreement required between expansions and Fisher metrics"
    )


class AppConfig(_InitOnlySettings):
    """Process-level settings for the CLI."""

    LOG_LEVEL: str = Field(
        default="WARNING",
        description="Logging level (DEBUG, INFO, WARNING, ERROR)"
    )

    @field_validator("LOG_LEVEL", mode="before")
    @classmethod
    def normalize_level(cls, v):
        if isinstance(v, str):
            v = v.strip().upper()
            if v not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
                raise ValueError(f"Unknown log level {v}")
        return v

    DEFAULT_WORKERS: int = Field(
        default=1, ge=1, le=64,
        description="Thread pool size for independent campaign trials"
    )

    REPORT_INDENT: int = Field(
        default=2, ge=0, le=8,
        description="Indentation of JSON reports"
    )


# Global configuration instance
# Import this in the CLI: from infodist.config import config
config = AppConfig()
