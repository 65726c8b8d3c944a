"""
Exact half-integers - stored as an integer numerator over 2
"""

import math
from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class HalfInteger:
    """A number of the form p/2 with p an integer"""

    twice: int

    @classmethod
    def from_twice(cls, twice: int) -> "HalfInteger":
        return cls(int(twice))

    @classmethod
    def nearest(cls, value: float) -> "HalfInteger":
        """Closest half-integer to a float (ties round half up)"""
        return cls(int(math.floor(2.0 * value + 0.5)))

    @property
    def value(self) -> float:
        return self.twice / 2.0

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __str__(self) -> str:
        if self.is_integer:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __float__(self) -> float:
        return self.value
