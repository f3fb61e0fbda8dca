"""Helper functions and utilities."""

import hashlib
from fractions import Fraction
from typing import Any, Union

import numpy as np

from symframe.errors import InvalidInput

_MASK64 = (1 << 64) - 1


def splitmix64(state: int) -> int:
    """Return the next splitmix64 output for ``state``.

    Examples:
        >>> splitmix64(0)
        16294208416658607535
    """
    z = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, *labels: Any) -> int:
    """Derive an independent sub-seed for a named pipeline stage.

    Args:
        seed: Root seed (the CLI ``--seed``)
        labels: Stage name, trial index and so on

    Returns:
        A 64-bit integer seed; identical arguments give identical seeds
    """
    state = seed & _MASK64
    for label in labels:
        digest = hashlib.sha256(repr(label).encode("utf-8")).digest()
        state = splitmix64(state ^ int.from_bytes(digest[:8], "big"))
    return state


def make_rng(seed: int, *labels: Any) -> np.random.Generator:
    """Create a numpy generator from a root seed and stage labels."""
    return np.random.default_rng(derive_seed(seed, *labels))


def parse_scalar(value: Any) -> Union[Fraction, float]:
    """Parse a JSON scalar: "num/den" strings and ints become Fractions.

    Args:
        value: int, float, or string such as ``"3/4"`` or ``"-2"``

    Returns:
        Fraction for exact input, float for JSON floats

    Raises:
        InvalidInput: If the value cannot be parsed

    Examples:
        >>> parse_scalar("3/4")
        Fraction(3, 4)
        >>> parse_scalar(2)
        Fraction(2, 1)
        >>> parse_scalar(0.5)
        0.5
    """
    if isinstance(value, bool):
        raise InvalidInput(f"Boolean {value!r} is not a coordinate")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return value
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"Cannot parse scalar {value!r}") from exc
    raise InvalidInput(f"Unsupported scalar type {type(value).__name__}")


def format_scalar(value: Any) -> Union[str, float]:
    """Format a scalar for JSON: Fractions as "num/den" strings, floats as floats."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return float(value)


def to_fraction(value: Any) -> Fraction:
    """Convert ints, Fractions and sympy QQ elements to ``Fraction``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    return Fraction(int(value.numerator), int(value.denominator))
