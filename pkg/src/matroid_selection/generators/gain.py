"""
Closed-Form Gain Accounting
Expected gain of rule-following policies on reduction instances, and the approximation transfer fact
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict

from ..core.errors import ParameterError
from ..utils.rationals import parse_rational, to_jsonable


@dataclass(frozen=True)
class GainEstimate:
    """base + delta with delta in [window_low, window_high]"""
    base: Fraction
    window_low: Fraction
    window_high: Fraction

    @property
    def low(self) -> Fraction:
        return self.base + self.window_low

    @property
    def high(self) -> Fraction:
        return self.base + self.window_high

    def contains(self, value: Fraction) -> bool:
        return self.low <= value <= self.high

    def to_dict(self) -> Dict[str, Any]:
        return to_jsonable({"base": self.base, "window": [self.window_low, self.window_high]})


def gain_formula(n: int, m: int, k: int, P: Any) -> GainEstimate:
    """
    1.25n + 2n(1 - q)^m + (2n + P(m^4/2k - 2)) m q (1 - q)^(m-1) with q = m^-4

    Args:
        n: Variable count
        m: Clause count, at least 1
        k: Occurrence bound
        P: Probability that a uniformly chosen clause is satisfied

    Returns:
        GainEstimate with window [0, 2/m]
    """
    if m < 1:
        raise ParameterError(f"Clause count must be positive, got {m}")
    if k < 1:
        raise ParameterError(f"Occurrence bound must be positive, got {k}")
    P = parse_rational(P)
    if not 0 <= P <= 1:
        raise ParameterError(f"P must lie in [0, 1], got {P}")
    q = Fraction(1, m ** 4)
    base = (Fraction(5, 4) * n
            + 2 * n * (1 - q) ** m
            + (2 * n + P * (Fraction(m ** 4, 2 * k) - 2)) * m * q * (1 - q) ** (m - 1))
    return GainEstimate(base, Fraction(0), Fraction(2, m))


def apx_fact_ratio(alpha: Any, beta: Any) -> Fraction:
    """(alpha + beta) / (1 + beta)"""
    alpha, beta = parse_rational(alpha), parse_rational(beta)
    return (alpha + beta) / (1 + beta)


def apx_fact_holds(Q: Any, Q_extra: Any, V: Any, alpha: Any, beta: Any) -> bool:
    """
    Check that V >= ratio * (Q + Q') implies V - Q' >= alpha * Q

    Cases outside the premise (negative quantities, Q' / Q > beta or V below
    the ratio) hold vacuously.
    """
    Q, Q_extra, V = parse_rational(Q), parse_rational(Q_extra), parse_rational(V)
    alpha, beta = parse_rational(alpha), parse_rational(beta)
    if not 0 <= alpha <= 1 or beta < 0:
        raise ParameterError(f"Need alpha in [0, 1] and beta >= 0, got {alpha}, {beta}")
    if Q <= 0 or Q_extra < 0 or Q_extra > beta * Q:
        return True
    if V < apx_fact_ratio(alpha, beta) * (Q + Q_extra):
        return True
    return V - Q_extra >= alpha * Q


__all__ = ['GainEstimate', 'gain_formula', 'apx_fact_ratio', 'apx_fact_holds']
