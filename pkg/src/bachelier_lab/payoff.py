"""American call/put payoffs, moneyness states, and discounting conventions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ValidationError

__all__ = [
    "OptionKind",
    "DiscountSign",
    "MoneynessState",
    "Moneyness",
    "PayoffSpec",
    "call_payoff",
    "put_payoff",
    "moneyness",
    "discounted_value",
]


class OptionKind(str, Enum):
    CALL = "call"
    PUT = "put"


class DiscountSign(str, Enum):
    """Sign of the rate in the exponential weight e^{sign * r * t}.

    MINUS is standard present-value discounting; PLUS applies the growth
    factor instead. Both are exposed so every downstream result can record
    which convention produced it.
    """

    PLUS = "plus"
    MINUS = "minus"

    @property
    def factor(self) -> float:
        return 1.0 if self is DiscountSign.PLUS else -1.0


class MoneynessState(str, Enum):
    DEEP_IN_THE_MONEY = "deep_in_the_money"
    AT_THE_MONEY = "at_the_money"
    DEEP_OUT_OF_THE_MONEY = "deep_out_of_the_money"

    @property
    def letter(self) -> str:
        """Conventional three-state label: a above, b at, c below the strike."""
        return {
            MoneynessState.DEEP_IN_THE_MONEY: "a",
            MoneynessState.AT_THE_MONEY: "b",
            MoneynessState.DEEP_OUT_OF_THE_MONEY: "c",
        }[self]


@dataclass(frozen=True)
class Moneyness:
    state: MoneynessState
    tolerance: float


@dataclass(frozen=True)
class PayoffSpec:
    """Contract terms: strike, option kind, and discounting convention."""

    strike: float
    kind: OptionKind
    discount_sign: DiscountSign = DiscountSign.MINUS

    def __post_init__(self):
        if not (self.strike > 0):
            raise ValidationError(f"strike must be > 0, got {self.strike!r}")

    def payoff(self, x):
        if self.kind is OptionKind.CALL:
            return call_payoff(x, self.strike)
        return put_payoff(x, self.strike)


def _check_strike(strike: float) -> None:
    if not (strike > 0):
        raise ValidationError(f"strike must be > 0, got {strike!r}")


def call_payoff(x, strike: float):
    """Exercise value max(x - strike, 0) of a call."""
    _check_strike(strike)
    return np.maximum(x - strike, 0.0)


def put_payoff(x, strike: float):
    """Exercise value max(strike - x, 0) of a put."""
    _check_strike(strike)
    return np.maximum(strike - x, 0.0)


def moneyness(x: float, strike: float, tol: float) -> Moneyness:
    """Classify a price as above, at, or below the strike within ``tol``."""
    _check_strike(strike)
    if not (tol > 0):
        raise ValidationError(f"tol must be > 0, got {tol!r}")
    if x > strike + tol:
        state = MoneynessState.DEEP_IN_THE_MONEY
    elif x < strike - tol:
        state = MoneynessState.DEEP_OUT_OF_THE_MONEY
    else:
        state = MoneynessState.AT_THE_MONEY
    return Moneyness(state=state, tolerance=tol)


def discounted_value(value, r: float, t: float, sign: DiscountSign = DiscountSign.MINUS):
    """Apply the exponential weight e^{sign * r * t} to ``value``."""
    if t < 0:
        raise ValidationError(f"t must be >= 0, got {t!r}")
    return value * math.exp(sign.factor * r * t)
