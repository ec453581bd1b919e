"""Randomized property batches behind ``coherence-nogo verify``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .enhancement import (
    apply_ssio,
    enhancement_ceiling,
    optimal_kraus,
    random_filtered_state,
    random_ssio,
    random_unenhanceable_state,
    enhancement_check,
)
from .errors import VerdictMismatch
from .measures import c_l1, coherent_weight, trivial_measure_counterexample
from .oracle import cb_ensemble_oracle, cw_grid_oracle_qubit
from .states import random_density_matrix

CEILING_SLACK = 1e-8
CHANNELS_PER_STATE = 10


@dataclass
class PropertyResult:
    name: str
    passed: bool
    detail: str
    falsifier: np.ndarray | None = None


def _coherent_state(rng, dims):
    while True:
        rho = random_density_matrix(int(rng.choice(dims)), seed=rng)
        if c_l1(rho) > 1e-6:
            return rho


def check_maximality(rng, trials, dims, ceiling: Callable = enhancement_ceiling) -> PropertyResult:
    worst = -math.inf
    for _ in range(trials):
        rho = _coherent_state(rng, dims)
        top = ceiling(rho)
        d = rho.shape[0]
        for _ in range(CHANNELS_PER_STATE):
            channel = random_ssio(d, int(rng.integers(1, d * d + 1)), rng)
            excess = c_l1(apply_ssio(channel, rho)[0]) - top
            worst = max(worst, excess)
            if excess > CEILING_SLACK:
                return PropertyResult("maximality", False, f"sSIO output exceeds ceiling by {excess:.3e}", rho)
    return PropertyResult("maximality", True, f"max excess over ceiling {worst:.3e}")


def check_attainability(rng, trials, dims, ceiling: Callable = enhancement_ceiling) -> PropertyResult:
    worst = 0.0
    for _ in range(trials):
        rho = _coherent_state(rng, dims)
        reached = c_l1(apply_ssio(optimal_kraus(rho), rho)[0])
        err = abs(reached - ceiling(rho))
        worst = max(worst, err)
        if err > CEILING_SLACK:
            return PropertyResult("attainability", False, f"optimal filter misses ceiling by {err:.3e}", rho)
    return PropertyResult("attainability", True, f"max |reached - ceiling| {worst:.3e}")


def check_no_enhancement_condition(rng, trials, dims) -> PropertyResult:
    worst_exact, least_gap = 0.0, math.inf
    for _ in range(trials):
        rho = random_unenhanceable_state(int(rng.choice(dims)), rng)
        try:
            exact = enhancement_check(rho)
            perturbed_state = random_filtered_state(rho, seed=rng)
            perturbed = enhancement_check(perturbed_state)
        except VerdictMismatch as exc:
            return PropertyResult("no-enhancement condition", False, f"verdict mismatch: {exc}", rho)
        gap = abs(exact.ceiling - exact.c_l1_in)
        worst_exact = max(worst_exact, gap)
        if gap > 1e-10 or exact.enhanceable:
            return PropertyResult("no-enhancement condition", False, f"saturated state has gap {gap:.3e}", rho)
        least_gap = min(least_gap, perturbed.ceiling - perturbed.c_l1_in)
        if not perturbed.ceiling > perturbed.c_l1_in or not perturbed.enhanceable:
            return PropertyResult(
                "no-enhancement condition", False, "filtered state not enhanceable", perturbed_state
            )
    return PropertyResult(
        "no-enhancement condition",
        True,
        f"saturated gap <= {worst_exact:.3e}, filtered gap >= {least_gap:.3e}",
    )


def check_coherent_weight_oracles(rng, trials, dims) -> PropertyResult:
    worst_grid, worst_ens = 0.0, -math.inf
    if 2 in dims:
        for _ in range(max(1, trials // 10)):
            rho = random_density_matrix(2, seed=rng)
            err = abs(coherent_weight(rho).gamma - cw_grid_oracle_qubit(rho, 1e-4))
            worst_grid = max(worst_grid, err)
            if err > 2e-4:
                return PropertyResult("coherent weight oracles", False, f"grid oracle differs by {err:.3e}", rho)
    if 3 in dims:
        for _ in range(max(1, trials // 100)):
            rho = random_density_matrix(3, seed=rng)
            below = coherent_weight(rho).gamma - cb_ensemble_oracle(rho, 1000, rng)
            worst_ens = max(worst_ens, below)
            if below > 1e-6:
                return PropertyResult(
                    "coherent weight oracles", False, f"ensemble beats coherent weight by {below:.3e}", rho
                )
    return PropertyResult(
        "coherent weight oracles", True, f"grid |diff| <= {worst_grid:.3e}, ensemble slack {worst_ens:.3e}"
    )


def check_trivial_counterexample() -> PropertyResult:
    mixed, average = trivial_measure_counterexample()
    ok = (mixed, average) == (1.0, 0.5)
    return PropertyResult("0/1 indicator convexity violation", ok, f"C(rho) = {mixed}, average = {average}")


def run_verify(
    seed: int,
    trials: int,
    dims,
    ceiling: Callable = enhancement_ceiling,
) -> list[PropertyResult]:
    """Run every property batch with independent streams spawned from ``seed``."""
    dims = tuple(dims)
    streams = np.random.SeedSequence(seed).spawn(4)
    rngs = [np.random.default_rng(s) for s in streams]
    return [
        check_maximality(rngs[0], trials, dims, ceiling),
        check_attainability(rngs[1], trials, dims, ceiling),
        check_no_enhancement_condition(rngs[2], trials, dims),
        check_coherent_weight_oracles(rngs[3], trials, dims),
        check_trivial_counterexample(),
    ]
