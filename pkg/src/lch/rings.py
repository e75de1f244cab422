"""Coefficient rings, grading groups and the degree/dimension formulas.

Ring elements are plain Python values: ``int`` for Z and Z/m (kept in
``[0, m)``), ``fractions.Fraction`` for Q.  Nothing here ever touches a
float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Union

Element = Union[int, Fraction]

INTEGERS = "Z"
RATIONALS = "Q"
INTEGERS_MOD = "Zmod"


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    p = 3
    while p * p <= m:
        if m % p == 0:
            return False
        p += 2
    return True


@dataclass(frozen=True)
class CoefficientRing:
    """One of Z, Q or Z/m (m >= 2)."""

    kind: str
    modulus: int = 0

    def __post_init__(self):
        if self.kind not in (INTEGERS, RATIONALS, INTEGERS_MOD):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == INTEGERS_MOD:
            if self.modulus < 2:
                raise ValueError("Z/m needs m >= 2")
        elif self.modulus != 0:
            raise ValueError(f"{self.kind} takes no modulus")

    @classmethod
    def parse(cls, text: str) -> "CoefficientRing":
        text = text.strip()
        if text == "Z":
            return ZZ
        if text == "Q":
            return QQ
        if text.startswith("Z") and text[1:].isdigit():
            return cls(INTEGERS_MOD, int(text[1:]))
        raise ValueError(f"cannot parse ring {text!r}; expected Z, Q or Z<m>")

    def __str__(self) -> str:
        if self.kind == INTEGERS_MOD:
            return f"Z{self.modulus}"
        return self.kind

    # -- structure -------------------------------------------------------

    def is_field(self) -> bool:
        if self.kind == RATIONALS:
            return True
        return self.kind == INTEGERS_MOD and _is_prime(self.modulus)

    def is_finite(self) -> bool:
        return self.kind == INTEGERS_MOD

    @property
    def characteristic(self) -> int:
        return self.modulus

    def elements(self) -> Iterator[int]:
        if not self.is_finite():
            raise ValueError(f"{self} is infinite")
        return iter(range(self.modulus))

    # -- arithmetic ------------------------------------------------------

    def __call__(self, x) -> Element:
        """Coerce an int or Fraction into the ring."""
        if type(x) is int and self.kind != RATIONALS:
            return x % self.modulus if self.modulus else x
        if self.kind == RATIONALS:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator != 1:
                if self.kind == INTEGERS:
                    raise ValueError(f"{x} is not an integer")
                return self.div(self(x.numerator), self(x.denominator))
            x = x.numerator
        if not isinstance(x, int):
            raise TypeError(f"cannot coerce {x!r} into {self}")
        if self.kind == INTEGERS_MOD:
            return x % self.modulus
        return x

    @property
    def zero(self) -> Element:
        return self(0)

    @property
    def one(self) -> Element:
        return self(1)

    def add(self, a: Element, b: Element) -> Element:
        s = a + b
        return s % self.modulus if self.modulus else s

    def sub(self, a: Element, b: Element) -> Element:
        s = a - b
        return s % self.modulus if self.modulus else s

    def neg(self, a: Element) -> Element:
        return (-a) % self.modulus if self.modulus else -a

    def mul(self, a: Element, b: Element) -> Element:
        s = a * b
        return s % self.modulus if self.modulus else s

    def is_zero(self, a: Element) -> bool:
        return a == 0

    def is_unit(self, a: Element) -> bool:
        if self.kind == RATIONALS:
            return a != 0
        if self.kind == INTEGERS:
            return a in (1, -1)
        return math.gcd(a, self.modulus) == 1

    def inv(self, a: Element) -> Element:
        if not self.is_unit(a):
            raise ZeroDivisionError(f"{a} is not a unit in {self}")
        if self.kind == RATIONALS:
            return 1 / Fraction(a)
        if self.kind == INTEGERS:
            return a
        return pow(a, -1, self.modulus)

    def div(self, a: Element, b: Element) -> Element:
        return self.mul(a, self.inv(b))

    def sign(self, parity: int) -> Element:
        """(-1)^parity as a ring element."""
        return self.one if parity % 2 == 0 else self.neg(self.one)

    def parse_element(self, text: str) -> Element:
        return self(Fraction(text))

    def format(self, a: Element) -> str:
        return str(a)


ZZ = CoefficientRing(INTEGERS)
QQ = CoefficientRing(RATIONALS)
Z2 = CoefficientRing(INTEGERS_MOD, 2)


def integers_mod(m: int) -> CoefficientRing:
    return CoefficientRing(INTEGERS_MOD, m)


def _lcm(a: int, b: int) -> int:
    # lcm(0, x) = x, lcm(x, 0) = x, lcm(0, 0) = 0
    if a == 0:
        return b
    if b == 0:
        return a
    return a * b // math.gcd(a, b)


@dataclass(frozen=True)
class GradingGroup:
    """Z (``order == 0``) or the cyclic group of the given order.

    ``g`` and ``maslov`` optionally record where the order came from:
    the greatest divisor of c_1(P) and the Maslov number of L.
    """

    order: int = 0
    g: Optional[int] = field(default=None, compare=False)
    maslov: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("grading order must be nonnegative")
        if (self.g is None) != (self.maslov is None):
            raise ValueError("give both g and maslov, or neither")
        if self.g is not None:
            if self.g < 0 or self.maslov < 0:
                raise ValueError("g and maslov must be nonnegative")
            if self.order != _lcm(2 * self.g, self.maslov):
                raise ValueError(
                    f"order {self.order} != lcm(2*{self.g}, {self.maslov})")

    @classmethod
    def from_invariants(cls, g: int, maslov: int) -> "GradingGroup":
        return cls(_lcm(2 * g, maslov), g, maslov)

    @classmethod
    def parse(cls, text: str) -> "GradingGroup":
        text = text.strip()
        if text == "Z":
            return cls(0)
        if text.startswith("Z") and text[1:].isdigit() and int(text[1:]) >= 1:
            return cls(int(text[1:]))
        raise ValueError(f"cannot parse grading {text!r}; expected Z or Z<N>")

    def __str__(self) -> str:
        return "Z" if self.order == 0 else f"Z{self.order}"

    @property
    def is_integral(self) -> bool:
        return self.order == 0

    def reduce(self, d: int) -> int:
        return d if self.order == 0 else d % self.order

    def parity_defined(self) -> bool:
        """Whether (-1)^d is well defined on the group."""
        return self.order % 2 == 0

    def degrees(self) -> range:
        if self.order == 0:
            raise ValueError("Z has infinitely many degrees")
        return range(self.order)


@dataclass(frozen=True)
class Degree:
    value: int
    group: GradingGroup

    def __post_init__(self):
        if self.group.reduce(self.value) != self.value:
            raise ValueError(f"{self.value} is not reduced in {self.group}")

    def __add__(self, other) -> "Degree":
        v = other.value if isinstance(other, Degree) else other
        return grading_reduce(self.value + v, self.group)

    def __sub__(self, other) -> "Degree":
        v = other.value if isinstance(other, Degree) else other
        return grading_reduce(self.value - v, self.group)

    def __int__(self) -> int:
        return self.value


def grading_reduce(d: int, group: GradingGroup) -> Degree:
    return Degree(group.reduce(d), group)


# -- degree and dimension formulas ---------------------------------------

def front_grading(down_cusps: int, up_cusps: int, morse_index: int) -> int:
    """Degree of a Reeb chord read off a front diagram.

    The Conley-Zehnder index of the capping path is
    ``down_cusps - up_cusps + morse_index`` and the degree is one less.
    """
    if min(down_cusps, up_cusps, morse_index) < 0:
        raise ValueError("cusp counts and Morse index must be nonnegative")
    return down_cusps - up_cusps + morse_index - 1


def expected_dim_one_positive(deg_a: int, deg_bs: Sequence[int],
                              maslov_mu: int = 0) -> int:
    """Dimension of disks with one positive puncture at ``a``."""
    return deg_a - sum(deg_bs) + maslov_mu - 1


def expected_dim_two_positive(deg_a1: int, deg_a2: int, deg_bs: Sequence[int],
                              deg_cs: Sequence[int], n: int,
                              maslov_mu: int = 0) -> int:
    """Dimension of two-copy disks with positive punctures ``a1`` and ``a2``."""
    return deg_a1 + deg_a2 - sum(deg_bs) - sum(deg_cs) - n + 1 + maslov_mu


def expected_dim_generalized(dim_moduli: int, morse_index: int, n: int,
                             puncture_sign: str) -> int:
    """Formal dimension of a disk with a flow line attached.

    ``morse_index`` is the index of the critical point at the far end of
    the flow line; ``puncture_sign`` is ``"positive"`` or ``"negative"``.
    """
    if puncture_sign == "positive":
        return dim_moduli + 1 + (morse_index - n)
    if puncture_sign == "negative":
        return dim_moduli + 1 - morse_index
    raise ValueError(f"puncture_sign must be positive or negative, "
                     f"not {puncture_sign!r}")
