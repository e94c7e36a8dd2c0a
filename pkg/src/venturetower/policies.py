"""Scripted decision policies for headless simulation runs and sweeps."""

from __future__ import annotations

from .errors import DomainError
from .market import (
    Decision,
    Distribution,
    VentureConfig,
    _deterministic_demand,
    initial_state,
    run_horizon,
)
from .progression import round_half_up


def steady_policy(config: VentureConfig, learning_score: float, turns: int) -> list[Decision]:
    """Price at reference, spend one awareness scale on communication, produce the
    expected (noise-free) demand each turn. A sane baseline venture."""
    template = Decision(
        price=config.reference_price,
        production=0.0,
        communication_spend=config.awareness_scale,
        distribution=Distribution.INTENSIVE,
        pricing_strategy="competitive pricing",
    )
    expected = _deterministic_demand(template, config, learning_score)
    decision = Decision(
        price=template.price,
        production=float(round_half_up(expected)),
        communication_spend=template.communication_spend,
        distribution=template.distribution,
        pricing_strategy=template.pricing_strategy,
    )
    return [decision] * turns


def premium_policy(config: VentureConfig, learning_score: float, turns: int) -> list[Decision]:
    """High-price exclusive play: premium label priced inside its band."""
    template = Decision(
        price=1.5 * config.reference_price,
        production=0.0,
        communication_spend=config.awareness_scale,
        distribution=Distribution.EXCLUSIVE,
        pricing_strategy="premium pricing",
    )
    expected = _deterministic_demand(template, config, learning_score)
    decision = Decision(
        price=template.price,
        production=float(round_half_up(expected)),
        communication_spend=template.communication_spend,
        distribution=template.distribution,
        pricing_strategy=template.pricing_strategy,
    )
    return [decision] * turns


def idle_policy(config: VentureConfig, learning_score: float, turns: int) -> list[Decision]:
    """Produce nothing, spend nothing: pure cost bleed, useful as a failure baseline."""
    decision = Decision(
        price=config.reference_price,
        production=0.0,
        communication_spend=0.0,
        distribution=Distribution.INTENSIVE,
        pricing_strategy="competitive pricing",
    )
    return [decision] * turns


POLICIES = {
    "steady": steady_policy,
    "premium": premium_policy,
    "idle": idle_policy,
}


def get_policy(name: str):
    try:
        return POLICIES[name]
    except KeyError:
        raise DomainError(f"unknown policy '{name}'; choose from {sorted(POLICIES)}") from None


def sweep_learning(
    config: VentureConfig,
    policy_name: str,
    learning_values: list[float],
    trials: int,
    base_seed: int,
) -> list[tuple[float, float]]:
    """Empirical success rate per learning score.

    Trials are paired across learning values (trial i uses seed base_seed+i
    everywhere), so the curve is compared under common random numbers.
    """
    policy = get_policy(policy_name)
    out: list[tuple[float, float]] = []
    for learning in learning_values:
        decisions = policy(config, learning, config.horizon)
        successes = 0
        for trial in range(trials):
            start = initial_state(config, learning, base_seed + trial)
            outcome = run_horizon(start, decisions, config)
            if outcome.success:
                successes += 1
        out.append((learning, successes / trials))
    return out
