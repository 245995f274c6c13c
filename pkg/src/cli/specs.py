"""
Experiment Specifications.

Pydantic description of one analytic or simulation run, loaded from a YAML
file (``--spec``) and/or built from command-line flags. Every field is
validated before any computation starts; flags override file keys.

Example file:

    name: cascade_poisson
    dist: poisson_shifted:lambda=2
    C: 0.1
    process: contagion
    q: [0.12, 0.15]
    n: 100000
    replicas: 50
    base_seed: 42
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Literal, Mapping, Optional

import yaml
from pydantic import BaseModel, Field, field_validator, model_validator

from src.cli.parsing import DIST_KINDS, parse_distribution_spec, parse_profile, parse_threshold_spec
from src.dist.degree import DegreeDistribution
from src.dist.profiles import ActivationProfile, CliqueProfile
from src.thresh.thresholds import ThresholdDistribution, contagion_thresholds
from src.tuner.tune import TuneResult, tune
from src.utils.errors import ParameterError

logger = logging.getLogger(__name__)


class ExperimentSpec(BaseModel):
    """
    One run: ensemble, process and Monte Carlo plan.

    Attributes:
        name: Label written into the output metadata
        dist: Degree law text (pre-substitution law, or the target law when C is set)
        gamma: Substitution profile text (default 0)
        C: Target global clustering; dist is then tuned to (p, gamma)
        process: diffusion or contagion
        pi: Transmission probabilities (diffusion)
        q: Contagion parameters (contagion)
        thresholds: Threshold text, alternative to q (contagion)
        alpha: Seeding profile text for the activation variants
        n: Vertices before substitution
        replicas: Monte Carlo replicas
        base_seed: Root seed
        simple_policy: Loop/parallel-edge policy
        max_tries: Reject-policy attempt budget
        output: Output CSV path
    """
    name: str = Field("adhoc", min_length=1, description="Run label.")
    dist: str = Field(..., min_length=3, description="Degree law, e.g. regular:3.")
    gamma: Optional[str] = Field(None, description="Substitution profile, e.g. 0.2 or 3=0.5,4=1.")
    C: Optional[float] = Field(None, ge=0.0, le=1.0, description="Target global clustering.")
    process: Literal["diffusion", "contagion"] = Field("diffusion", description="Process to analyze.")
    pi: List[float] = Field(default_factory=list, description="Transmission probabilities.")
    q: List[float] = Field(default_factory=list, description="Contagion parameters.")
    thresholds: Optional[str] = Field(None, description="Threshold law, e.g. constant:k=1.")
    alpha: Optional[str] = Field(None, description="Seeding profile for activation runs.")
    n: int = Field(100_000, ge=1, description="Vertices before substitution.")
    replicas: int = Field(50, ge=2, description="Monte Carlo replicas.")
    base_seed: int = Field(42, ge=0, description="Root seed.")
    simple_policy: Literal["multigraph", "erase", "reject"] = Field("reject", description="Simple-graph policy.")
    max_tries: int = Field(1000, ge=1, description="Reject-policy attempt budget.")
    output: Optional[str] = Field(None, description="Output CSV path.")

    @field_validator("dist")
    @classmethod
    def validate_dist(cls, v: str) -> str:
        v = v.strip()
        kind = v.partition(":")[0].lower()
        if kind not in DIST_KINDS:
            raise ValueError(f"unknown distribution kind {kind!r} (expected one of {', '.join(DIST_KINDS)})")
        return v

    @field_validator("pi")
    @classmethod
    def validate_pi(cls, v: List[float]) -> List[float]:
        for value in v:
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"pi must lie in [0, 1], got {value}")
        return v

    @field_validator("q")
    @classmethod
    def validate_q(cls, v: List[float]) -> List[float]:
        for value in v:
            if not 0.0 < value < 1.0:
                raise ValueError(f"q must lie in (0, 1), got {value}")
        return v

    @model_validator(mode="after")
    def validate_process(self) -> "ExperimentSpec":
        if self.gamma is not None and self.C is not None:
            raise ValueError("gamma and C are mutually exclusive")
        if self.process == "diffusion" and (self.q or self.thresholds):
            raise ValueError("q and thresholds only apply to the contagion process")
        if self.process == "contagion":
            if self.pi:
                raise ValueError("pi only applies to the diffusion process")
            if self.q and self.thresholds:
                raise ValueError("q and thresholds are mutually exclusive")
            if not self.q and not self.thresholds:
                raise ValueError("the contagion process needs q or thresholds")
        return self

    def metadata(self) -> Dict[str, Any]:
        """Resolved parameters for the CSV preamble (fields that are set)."""
        return {k: v for k, v in self.model_dump().items() if v not in (None, [])}


def load_spec_file(path: Path) -> Dict[str, Any]:
    """Raw key/value mapping of a YAML spec file."""
    path = Path(path)
    if not path.exists():
        raise ParameterError(f"Spec file not found: {path}")
    with open(path, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise ParameterError(f"Spec file {path} must contain a mapping")
    return data


def build_spec(file_values: Optional[Mapping[str, Any]], overrides: Mapping[str, Any]) -> ExperimentSpec:
    """Merge file values with flag overrides (None means not given) and validate."""
    merged = dict(file_values or {})
    merged.update({k: v for k, v in overrides.items() if v is not None})
    return ExperimentSpec(**merged)


# ============================================================================
# Resolution
# ============================================================================

@dataclass(frozen=True, eq=False)
class ResolvedModel:
    """
    Ensemble parameters ready for the analytic and simulation modules.

    Attributes:
        p: Pre-substitution degree law
        gamma: Substitution profile
        tuned: Tuner output when a target clustering was given
    """

    p: DegreeDistribution
    gamma: CliqueProfile
    tuned: Optional[TuneResult] = None

    def metadata(self) -> Dict[str, Any]:
        meta: Dict[str, Any] = {"p": self.p.name, "gamma": self.gamma.describe()}
        if self.tuned is not None:
            meta.update(tuned_lambda=self.tuned.lam, achieved_c=self.tuned.achieved_c)
        return meta


def resolve_model(dist: str, gamma: Optional[str] = None, C: Optional[float] = None,
                  max_tail: float = 1e-10) -> ResolvedModel:
    """
    Turn distribution/profile text into model objects, tuning when C is given.

    Raises:
        ParameterError: Malformed text
        InfeasibleError: C is not reachable for the given law
    """
    law = parse_distribution_spec(dist, max_tail=max_tail)
    if C is not None:
        result = tune(law, C)
        return ResolvedModel(p=result.p, gamma=result.profile, tuned=result)
    profile = parse_profile(gamma, CliqueProfile) if gamma is not None else CliqueProfile.constant(0.0)
    return ResolvedModel(p=law, gamma=profile)


def resolve_alpha(alpha: Optional[str]) -> Optional[ActivationProfile]:
    return parse_profile(alpha, ActivationProfile) if alpha is not None else None


def threshold_laws(spec: ExperimentSpec, s_max: int) -> List[tuple[Optional[float], ThresholdDistribution]]:
    """(q, t) pairs of a contagion spec; q is None for explicit thresholds."""
    if spec.thresholds is not None:
        return [(None, parse_threshold_spec(spec.thresholds, s_max))]
    return [(q, contagion_thresholds(q, s_max)) for q in spec.q]
