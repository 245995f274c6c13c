"""
Command-Line Parameter Parsing.

Text forms accepted on the command line and in experiment files:

    Distributions:
        regular:3
        powerlaw:tau=2.5,kappa=50[,r_max=500]
        poisson:lambda=2[,r_max=40]
        poisson_shifted:lambda=2[,r_max=40]
        file:path/to/table.txt

    Thresholds:
        contagion:q=0.15
        constant:k=2
        zero

    Per-degree profiles (gamma, alpha):
        0.2             constant
        3=0.5,4=1       listed degrees, 0 elsewhere
        3=0.5;default=1 listed degrees with an explicit default
"""
from __future__ import annotations

import logging
from pathlib import Path
from typing import Dict, Type, TypeVar

from src.dist.degree import DEFAULT_KAPPA, DegreeDistribution, poisson, poisson_shifted, power_law_cutoff, regular
from src.dist.io import read_distribution
from src.dist.profiles import DegreeProfile
from src.thresh.thresholds import (
    ThresholdDistribution,
    constant_thresholds,
    contagion_thresholds,
    zero_thresholds,
)
from src.utils.errors import ParameterError

logger = logging.getLogger(__name__)

P = TypeVar("P", bound=DegreeProfile)

DIST_KINDS = ("regular", "powerlaw", "poisson", "poisson_shifted", "file")
DEFAULT_R_MAX = 500


def _key_values(text: str, what: str) -> Dict[str, str]:
    out = {}
    for item in filter(None, (part.strip() for part in text.split(","))):
        key, sep, value = item.partition("=")
        if not sep or not key.strip() or not value.strip():
            raise ParameterError(f"Malformed {what} parameter {item!r} (expected key=value)")
        out[key.strip()] = value.strip()
    return out


def _number(params: Dict[str, str], key: str, kind: str, cast=float):
    try:
        return cast(params.pop(key))
    except KeyError:
        raise ParameterError(f"{kind} needs {key}=...") from None
    except ValueError as e:
        raise ParameterError(f"Invalid value for {kind} parameter {key}: {e}") from e


def _optional_int(params: Dict[str, str], key: str, kind: str):
    return _number(params, key, kind, int) if key in params else None


def parse_distribution_spec(spec: str, max_tail: float = 1e-10) -> DegreeDistribution:
    """
    Build a degree distribution from its text form.

    Args:
        spec: Distribution text, e.g. ``powerlaw:tau=2.5,kappa=50``
        max_tail: Largest dropped tail tolerated by the Poisson constructors

    Returns:
        DegreeDistribution

    Raises:
        ParameterError: Unknown kind, missing or unknown keys, bad values
    """
    kind, sep, rest = spec.strip().partition(":")
    kind = kind.strip().lower()
    if not sep or kind not in DIST_KINDS:
        raise ParameterError(f"Unknown distribution {spec!r} (expected one of {', '.join(DIST_KINDS)})")

    if kind == "regular":
        try:
            return regular(int(rest))
        except ValueError:
            raise ParameterError(f"regular needs an integer degree, got {rest!r}") from None
    if kind == "file":
        return read_distribution(Path(rest.strip()))

    params = _key_values(rest, kind)
    if kind == "powerlaw":
        r_max = _optional_int(params, "r_max", kind)
        dist = power_law_cutoff(
            tau=_number(params, "tau", kind),
            kappa=_number(params, "kappa", kind) if "kappa" in params else DEFAULT_KAPPA,
            r_max=DEFAULT_R_MAX if r_max is None else r_max,
        )
    elif kind == "poisson":
        dist = poisson(_number(params, "lambda", kind), r_max=_optional_int(params, "r_max", kind), max_tail=max_tail)
    else:
        dist = poisson_shifted(
            _number(params, "lambda", kind), r_max=_optional_int(params, "r_max", kind), max_tail=max_tail
        )

    if params:
        raise ParameterError(f"Unknown {kind} parameter(s): {', '.join(sorted(params))}")
    return dist


def parse_profile(spec: str, cls: Type[P]) -> P:
    """
    Parse a per-degree profile.

    Args:
        spec: ``0.2``, ``3=0.5,4=1`` or ``3=0.5;default=1``
        cls: CliqueProfile or ActivationProfile

    Returns:
        Profile instance
    """
    text = str(spec).strip()
    if not text:
        raise ParameterError(f"Empty {cls.symbol} profile")
    try:
        constant = float(text)
    except ValueError:
        constant = None
    if constant is not None:
        return cls.constant(constant)

    entries, _, default_part = text.partition(";")
    default = 0.0
    if default_part:
        key, _, value = default_part.partition("=")
        if key.strip() != "default":
            raise ParameterError(f"Malformed {cls.symbol} profile {spec!r}")
        default = _profile_value(value, "default", cls)
    values = {}
    for key, value in _key_values(entries, cls.symbol).items():
        try:
            degree = int(key)
        except ValueError:
            raise ParameterError(f"{cls.symbol} profile keys must be degrees, got {key!r}") from None
        values[degree] = _profile_value(value, key, cls)
    return cls(values=values, default=default)


def _profile_value(value: str, key: str, cls) -> float:
    try:
        return float(value)
    except ValueError:
        raise ParameterError(f"Invalid {cls.symbol} value for {key}: {value!r}") from None


def parse_threshold_spec(spec: str, s_max: int) -> ThresholdDistribution:
    """
    Build a threshold distribution covering degrees 0..s_max.

    Args:
        spec: ``contagion:q=0.15``, ``constant:k=2`` or ``zero``
        s_max: Largest degree to cover

    Returns:
        ThresholdDistribution
    """
    kind, _, rest = spec.strip().partition(":")
    kind = kind.strip().lower()
    params = _key_values(rest, kind)
    if kind == "zero":
        t = zero_thresholds(s_max)
    elif kind == "contagion":
        t = contagion_thresholds(_number(params, "q", kind), s_max)
    elif kind == "constant":
        t = constant_thresholds(_number(params, "k", kind, int), s_max)
    else:
        raise ParameterError(f"Unknown thresholds {spec!r} (expected contagion:q=..., constant:k=... or zero)")
    if params:
        raise ParameterError(f"Unknown {kind} parameter(s): {', '.join(sorted(params))}")
    return t
