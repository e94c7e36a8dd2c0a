"""The virtual market: a seeded, turn-based venture simulation.

Demand each turn is the product of market reach, communication awareness,
price response, the player's preparedness (an affine map of the learning
score), pricing-strategy consistency and lognormal noise. Bookkeeping runs a
full profit & loss statement per turn and keeps the balance sheet identity
(assets = liabilities + equity) exact.

All dynamics are deterministic given (seed, learning score, config, decision
sequence); the RNG stream lives inside the state and survives serialization,
so a simulation replays identically across process restarts.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, replace
from enum import Enum

from .errors import AlreadyBankrupt, DomainError, InvalidDecision, SimulationOver
from .progression import round_half_up


class Distribution(str, Enum):
    INTENSIVE = "intensive"
    SELECTIVE = "selective"
    EXCLUSIVE = "exclusive"


#: The nine pricing strategy labels taught in level 4.
PRICING_STRATEGIES = (
    "penetration pricing",
    "skimming pricing",
    "competitive pricing",
    "bundle pricing",
    "product line pricing",
    "premium pricing",
    "cost basing pricing",
    "psychological pricing",
    "optional pricing",
)

#: Strategies whose label commits the player to a price band.
LOW_BAND_STRATEGIES = ("penetration pricing",)
HIGH_BAND_STRATEGIES = ("skimming pricing", "premium pricing")

LOW_BAND_MAX = 0.8  # penetration: p <= 0.8 x reference price
HIGH_BAND_MIN = 1.3  # premium/skimming: p >= 1.3 x reference price


@dataclass(frozen=True)
class VentureConfig:
    base_population: float = 10_000.0  # potential units per turn
    reference_price: float = 10.0
    unit_cost: float = 6.0
    fixed_costs: float = 8_000.0  # per turn
    awareness_scale: float = 5_000.0  # communication spend for 1-1/e awareness
    elasticity_by_distribution: dict[str, float] = field(
        default_factory=lambda: {"intensive": 1.8, "selective": 1.5, "exclusive": 1.0}
    )
    reach_by_distribution: dict[str, float] = field(
        default_factory=lambda: {"intensive": 1.0, "selective": 0.6, "exclusive": 0.25}
    )
    strategy_consistency_bonus: float = 1.05
    strategy_consistency_penalty: float = 0.95
    initial_cash: float = 50_000.0
    initial_equipment: float = 24_000.0
    initial_debt: float = 20_000.0
    interest_rate: float = 0.01  # per turn, on outstanding debt
    tax_rate: float = 0.25
    horizon: int = 12
    noise_sigma: float = 0.15  # lognormal sigma; 0 disables noise

    def check(self) -> None:
        monetary = (
            self.base_population,
            self.reference_price,
            self.unit_cost,
            self.fixed_costs,
            self.awareness_scale,
            self.initial_cash,
            self.initial_equipment,
            self.initial_debt,
        )
        if any(v < 0 for v in monetary):
            raise DomainError("monetary config values must be >= 0")
        if not (0 <= self.interest_rate < 1) or not (0 <= self.tax_rate < 1):
            raise DomainError("rates must be in [0, 1)")
        if any(not (0 < r <= 1) for r in self.reach_by_distribution.values()):
            raise DomainError("reach values must be in (0, 1]")
        if any(e <= 0 for e in self.elasticity_by_distribution.values()):
            raise DomainError("elasticities must be > 0")
        if self.horizon < 1:
            raise DomainError("horizon must be >= 1")
        if self.noise_sigma < 0:
            raise DomainError("noise sigma must be >= 0")


@dataclass(frozen=True)
class Decision:
    price: float
    production: float  # units, >= 0
    communication_spend: float
    distribution: Distribution
    pricing_strategy: str

    def check(self) -> None:
        if self.price <= 0:
            raise InvalidDecision("price must be > 0")
        if self.production < 0:
            raise InvalidDecision("production must be >= 0")
        if self.communication_spend < 0:
            raise InvalidDecision("communication spend must be >= 0")
        if self.pricing_strategy not in PRICING_STRATEGIES:
            raise InvalidDecision(f"unknown pricing strategy '{self.pricing_strategy}'")


@dataclass(frozen=True)
class ProfitAndLoss:
    sales: float
    cogs: float
    gross_margin: float
    sga: float
    ebitda: float
    depreciation: float
    ebit: float
    interest: float
    income_before_taxes: float
    taxes: float
    net_income: float


@dataclass(frozen=True)
class BalanceSheet:
    cash: float
    inventory_value: float
    equipment_net: float
    total_assets: float
    debt: float
    equity: float
    total_liabilities_and_equity: float


@dataclass(frozen=True)
class MarketState:
    turn: int
    cash: float
    inventory_units: float
    equipment_gross: float
    accumulated_depreciation: float
    debt: float
    equity: float
    learning_score: float
    rng_state: tuple
    bankrupt: bool = False

    def balance_sheet(self, config: VentureConfig) -> BalanceSheet:
        inventory_value = self.inventory_units * config.unit_cost
        equipment_net = self.equipment_gross - self.accumulated_depreciation
        assets = self.cash + inventory_value + equipment_net
        return BalanceSheet(
            cash=self.cash,
            inventory_value=inventory_value,
            equipment_net=equipment_net,
            total_assets=assets,
            debt=self.debt,
            equity=self.equity,
            total_liabilities_and_equity=self.debt + self.equity,
        )


@dataclass(frozen=True)
class TurnResult:
    turn: int
    demand_units: float
    units_sold: int
    pnl: ProfitAndLoss
    balance: BalanceSheet


@dataclass(frozen=True)
class SimulationOutcome:
    final_state: MarketState
    turns: tuple[TurnResult, ...]
    success: bool
    score: int  # final equity, whole currency; leaderboard-relevant only on success


def initial_state(config: VentureConfig, learning_score: float, seed: int) -> MarketState:
    """Fresh venture: cash and equipment funded by debt plus balancing equity."""
    config.check()
    if not (0.0 <= learning_score <= 1.0):
        raise DomainError(f"learning score {learning_score} outside [0, 1]")
    rng = random.Random(seed)
    equity = config.initial_cash + config.initial_equipment - config.initial_debt
    return MarketState(
        turn=0,
        cash=config.initial_cash,
        inventory_units=0.0,
        equipment_gross=config.initial_equipment,
        accumulated_depreciation=0.0,
        debt=config.initial_debt,
        equity=equity,
        learning_score=learning_score,
        rng_state=rng.getstate(),
    )


def preparedness_modifier(learning_score: float) -> float:
    """Map learning score in [0,1] to a demand factor in [0.5, 1.0]."""
    if not (0.0 <= learning_score <= 1.0):
        raise DomainError(f"learning score {learning_score} outside [0, 1]")
    return 0.5 + 0.5 * learning_score


def consistency_factor(decision: Decision, config: VentureConfig) -> float:
    """Bonus when a band-committed strategy label matches the actual price, penalty
    when it contradicts it; label-neutral strategies score 1.0."""
    ratio = decision.price / config.reference_price
    if decision.pricing_strategy in LOW_BAND_STRATEGIES:
        in_band = ratio <= LOW_BAND_MAX
    elif decision.pricing_strategy in HIGH_BAND_STRATEGIES:
        in_band = ratio >= HIGH_BAND_MIN
    else:
        return 1.0
    return config.strategy_consistency_bonus if in_band else config.strategy_consistency_penalty


def _deterministic_demand(decision: Decision, config: VentureConfig, learning_score: float) -> float:
    reach = config.reach_by_distribution[decision.distribution.value]
    elasticity = config.elasticity_by_distribution[decision.distribution.value]
    awareness = 1.0 - math.exp(-decision.communication_spend / config.awareness_scale)
    price_factor = (config.reference_price / decision.price) ** elasticity
    return (
        config.base_population
        * reach
        * awareness
        * price_factor
        * preparedness_modifier(learning_score)
        * consistency_factor(decision, config)
    )


def _draw_noise(rng: random.Random, sigma: float) -> float:
    # Always consume one draw so the stream stays aligned when sigma is 0.
    gauss = rng.normalvariate(0.0, 1.0)
    return math.exp(sigma * gauss)


def demand(state: MarketState, decision: Decision, config: VentureConfig) -> float:
    """Units demanded this turn. Peeks the state's RNG stream without advancing it."""
    if state.bankrupt:
        raise AlreadyBankrupt("venture is bankrupt")
    decision.check()
    rng = random.Random()
    rng.setstate(state.rng_state)
    noise = _draw_noise(rng, config.noise_sigma)
    return _deterministic_demand(decision, config, state.learning_score) * noise


def step_turn(
    state: MarketState, decision: Decision, config: VentureConfig
) -> tuple[MarketState, TurnResult]:
    """Advance one turn: sell into demand, run the P&L, update the balance sheet."""
    if state.turn >= config.horizon:
        raise SimulationOver(f"horizon of {config.horizon} turns reached")
    if state.bankrupt:
        raise AlreadyBankrupt("venture is bankrupt")
    decision.check()
    config.check()

    rng = random.Random()
    rng.setstate(state.rng_state)
    noise = _draw_noise(rng, config.noise_sigma)
    demand_units = _deterministic_demand(decision, config, state.learning_score) * noise

    available = decision.production + state.inventory_units
    units_sold = min(round_half_up(demand_units), int(available))

    sales = units_sold * decision.price
    cogs = units_sold * config.unit_cost
    sga = config.fixed_costs + decision.communication_spend
    depreciation = config.initial_equipment / config.horizon
    interest = config.interest_rate * state.debt
    gross_margin = sales - cogs
    ebitda = gross_margin - sga
    ebit = ebitda - depreciation
    income_before_taxes = ebit - interest
    taxes = config.tax_rate * max(0.0, income_before_taxes)
    net_income = income_before_taxes - taxes
    pnl = ProfitAndLoss(
        sales=sales,
        cogs=cogs,
        gross_margin=gross_margin,
        sga=sga,
        ebitda=ebitda,
        depreciation=depreciation,
        ebit=ebit,
        interest=interest,
        income_before_taxes=income_before_taxes,
        taxes=taxes,
        net_income=net_income,
    )

    cash = (
        state.cash
        + sales
        - decision.production * config.unit_cost
        - config.fixed_costs
        - decision.communication_spend
        - interest
        - taxes
    )
    new_state = replace(
        state,
        turn=state.turn + 1,
        cash=cash,
        inventory_units=state.inventory_units + decision.production - units_sold,
        accumulated_depreciation=state.accumulated_depreciation + depreciation,
        equity=state.equity + net_income,
        rng_state=rng.getstate(),
        bankrupt=state.bankrupt or cash < 0,
    )
    result = TurnResult(
        turn=new_state.turn,
        demand_units=demand_units,
        units_sold=units_sold,
        pnl=pnl,
        balance=new_state.balance_sheet(config),
    )
    return new_state, result


def run_horizon(
    initial: MarketState, decisions: list[Decision], config: VentureConfig
) -> SimulationOutcome:
    """Fold step_turn over the decision list, stopping early on bankruptcy.

    Success means surviving with final equity above starting equity.
    """
    if not decisions:
        raise InvalidDecision("decision list is empty")
    state = initial
    results: list[TurnResult] = []
    for decision in decisions:
        state, result = step_turn(state, decision, config)
        results.append(result)
        if state.bankrupt:
            break
    success = (not state.bankrupt) and state.equity > initial.equity
    return SimulationOutcome(
        final_state=state,
        turns=tuple(results),
        success=success,
        score=round_half_up(state.equity),
    )


# ---------------------------------------------------------------------------
# Serialization (service persistence and CLI output)


def config_to_dict(config: VentureConfig) -> dict:
    return {
        "base_population": config.base_population,
        "reference_price": config.reference_price,
        "unit_cost": config.unit_cost,
        "fixed_costs": config.fixed_costs,
        "awareness_scale": config.awareness_scale,
        "elasticity_by_distribution": dict(config.elasticity_by_distribution),
        "reach_by_distribution": dict(config.reach_by_distribution),
        "strategy_consistency_bonus": config.strategy_consistency_bonus,
        "strategy_consistency_penalty": config.strategy_consistency_penalty,
        "initial_cash": config.initial_cash,
        "initial_equipment": config.initial_equipment,
        "initial_debt": config.initial_debt,
        "interest_rate": config.interest_rate,
        "tax_rate": config.tax_rate,
        "horizon": config.horizon,
        "noise_sigma": config.noise_sigma,
    }


def config_from_dict(data: dict) -> VentureConfig:
    known = set(config_to_dict(VentureConfig()))
    unknown = set(data) - known
    if unknown:
        raise DomainError(f"unknown config field(s): {sorted(unknown)}")
    config = VentureConfig(**data)
    config.check()
    return config


def decision_from_dict(data: dict) -> Decision:
    try:
        decision = Decision(
            price=float(data["price"]),
            production=float(data["production"]),
            communication_spend=float(data["communication_spend"]),
            distribution=Distribution(data["distribution"]),
            pricing_strategy=data["pricing_strategy"],
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidDecision(f"malformed decision: {exc}") from exc
    decision.check()
    return decision


def decision_to_dict(decision: Decision) -> dict:
    return {
        "price": decision.price,
        "production": decision.production,
        "communication_spend": decision.communication_spend,
        "distribution": decision.distribution.value,
        "pricing_strategy": decision.pricing_strategy,
    }


def _rng_state_to_jsonable(state: tuple):
    if isinstance(state, tuple):
        return {"__tuple__": [_rng_state_to_jsonable(x) for x in state]}
    return state


def _rng_state_from_jsonable(data):
    if isinstance(data, dict) and "__tuple__" in data:
        return tuple(_rng_state_from_jsonable(x) for x in data["__tuple__"])
    return data


def state_to_dict(state: MarketState) -> dict:
    return {
        "turn": state.turn,
        "cash": state.cash,
        "inventory_units": state.inventory_units,
        "equipment_gross": state.equipment_gross,
        "accumulated_depreciation": state.accumulated_depreciation,
        "debt": state.debt,
        "equity": state.equity,
        "learning_score": state.learning_score,
        "rng_state": _rng_state_to_jsonable(state.rng_state),
        "bankrupt": state.bankrupt,
    }


def state_from_dict(data: dict) -> MarketState:
    return MarketState(
        turn=data["turn"],
        cash=data["cash"],
        inventory_units=data["inventory_units"],
        equipment_gross=data["equipment_gross"],
        accumulated_depreciation=data["accumulated_depreciation"],
        debt=data["debt"],
        equity=data["equity"],
        learning_score=data["learning_score"],
        rng_state=_rng_state_from_jsonable(data["rng_state"]),
        bankrupt=data["bankrupt"],
    )


def pnl_to_dict(pnl: ProfitAndLoss) -> dict:
    return {
        "sales": pnl.sales,
        "cogs": pnl.cogs,
        "gross_margin": pnl.gross_margin,
        "sga": pnl.sga,
        "ebitda": pnl.ebitda,
        "depreciation": pnl.depreciation,
        "ebit": pnl.ebit,
        "interest": pnl.interest,
        "income_before_taxes": pnl.income_before_taxes,
        "taxes": pnl.taxes,
        "net_income": pnl.net_income,
    }


def balance_to_dict(balance: BalanceSheet) -> dict:
    return {
        "cash": balance.cash,
        "inventory_value": balance.inventory_value,
        "equipment_net": balance.equipment_net,
        "total_assets": balance.total_assets,
        "debt": balance.debt,
        "equity": balance.equity,
        "total_liabilities_and_equity": balance.total_liabilities_and_equity,
    }
