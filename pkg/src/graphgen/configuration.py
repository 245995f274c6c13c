"""
Configuration Model.

Uniform matching of half-edges for a degree sequence, with three policies for
loops and parallel edges:
    - multigraph: keep them
    - erase: drop loops and collapse parallel edges (a model deviation,
      flagged in metadata)
    - reject: resample until simple, up to ``max_tries`` attempts
"""
from __future__ import annotations

import logging
from enum import Enum
from typing import Union

import numpy as np
from tenacity import RetryError, Retrying, after_log, retry_if_exception_type, stop_after_attempt

from src.graphgen.graph import GraphInstance
from src.graphgen.sequence import DegreeSequence
from src.utils.errors import NotSimpleError, ParameterError, RetryLimitError

logger = logging.getLogger(__name__)

DEFAULT_MAX_TRIES = 1000


class SimplePolicy(str, Enum):
    """Handling of loops and parallel edges."""

    MULTIGRAPH = "multigraph"
    ERASE = "erase"
    REJECT = "reject"


def _match(degrees: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    stubs = np.repeat(np.arange(degrees.size, dtype=np.int64), degrees)
    stubs = rng.permutation(stubs)
    return stubs.reshape(-1, 2)


def _pair_keys(edges: np.ndarray, n: int) -> np.ndarray:
    lo = edges.min(axis=1)
    hi = edges.max(axis=1)
    return lo * np.int64(max(n, 1)) + hi


def _is_simple(edges: np.ndarray, n: int) -> bool:
    if edges.size == 0:
        return True
    if np.any(edges[:, 0] == edges[:, 1]):
        return False
    keys = _pair_keys(edges, n)
    return np.unique(keys).size == keys.size


def _erase(edges: np.ndarray, n: int) -> np.ndarray:
    edges = edges[edges[:, 0] != edges[:, 1]]
    if edges.size == 0:
        return edges.reshape(0, 2)
    keys = np.unique(_pair_keys(edges, n))
    return np.stack([keys // max(n, 1), keys % max(n, 1)], axis=1)


def configuration_match(
    seq: DegreeSequence,
    rng_seed: int,
    simple_policy: Union[SimplePolicy, str] = SimplePolicy.REJECT,
    max_tries: int = DEFAULT_MAX_TRIES,
) -> GraphInstance:
    """
    Pair half-edges uniformly at random.

    Args:
        seq: Degree sequence with even sum
        rng_seed: Seed
        simple_policy: multigraph, erase or reject
        max_tries: Attempt budget for reject

    Returns:
        GraphInstance with parent[v] = v and no clique members

    Raises:
        RetryLimitError: reject policy found no simple matching in max_tries
    """
    policy = SimplePolicy(simple_policy)
    if max_tries < 1:
        raise ParameterError(f"max_tries must be >= 1, got {max_tries}")
    n = seq.n
    degrees = seq.degrees
    rng = np.random.default_rng(rng_seed)
    metadata = {"simple_policy": policy.value, "attempts": 1, "erase_deviation": False}

    if policy is SimplePolicy.MULTIGRAPH:
        edges = _match(degrees, rng)

    elif policy is SimplePolicy.ERASE:
        raw = _match(degrees, rng)
        edges = _erase(raw, n)
        removed = raw.shape[0] - edges.shape[0]
        metadata["erased_edges"] = int(removed)
        metadata["erase_deviation"] = removed > 0
        if removed:
            logger.warning("Erase policy removed %d loop/parallel edges (model deviation)", removed)

    else:
        attempts = 0

        def attempt() -> np.ndarray:
            nonlocal attempts
            attempts += 1
            candidate = _match(degrees, rng)
            if not _is_simple(candidate, n):
                raise NotSimpleError(f"attempt {attempts} produced loops or parallel edges")
            return candidate

        retrying = Retrying(
            stop=stop_after_attempt(max_tries),
            retry=retry_if_exception_type(NotSimpleError),
            after=after_log(logger, logging.DEBUG),
        )
        try:
            edges = retrying(attempt)
        except RetryError as e:
            raise RetryLimitError(
                f"No simple matching after {attempts} attempts (n={n}, degree total={seq.total})",
                attempts=attempts,
            ) from e
        metadata["attempts"] = attempts
        logger.debug("Reject sampling succeeded after %d attempt(s)", attempts)

    return GraphInstance.from_edges(n, edges, metadata=metadata)
