"""
Rational number helpers
Parsing "p/q" strings and rendering exact values for reports
"""
from fractions import Fraction
from typing import Any, Dict, Union

RationalLike = Union[Fraction, int, float, str]


def parse_rational(value: RationalLike) -> Fraction:
    """
    Convert a JSON scalar into an exact rational

    Floats go through their decimal repr so 0.1 becomes 1/10.

    Args:
        value: int, float, Fraction or a "p/q" / decimal string

    Returns:
        Fraction

    Raises:
        ValueError: If the value cannot be parsed
    """
    if isinstance(value, bool):
        raise ValueError(f"Not a number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"Not a rational: {value!r}") from e
    raise ValueError(f"Not a number: {value!r}")


def format_rational(value: Union[Fraction, float]) -> Dict[str, Any]:
    """Render a value as {"exact": "p/q", "float": x}"""
    if isinstance(value, Fraction):
        return {"exact": f"{value.numerator}/{value.denominator}", "float": float(value)}
    return {"exact": None, "float": float(value)}


def to_jsonable(value: Any) -> Any:
    """Recursively replace Fractions with "p/q" strings"""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return [to_jsonable(v) for v in sorted(value)]
    return value


__all__ = ['RationalLike', 'parse_rational', 'format_rational', 'to_jsonable']
