import sys
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd
from pathlib import Path
from typing import Any, Optional, Union

ROOT = Path(__file__).resolve().parent.parent.parent
if str(ROOT) not in sys.path:
    sys.path.append(str(ROOT))

from sympy import isprime, mod_inverse

from src.brauer.errors import ParseError, SemanticError

RingElem = Union[int, Fraction]


class RingKind(str, Enum):
    INTEGERS = "Z"
    RATIONALS = "Q"
    PRIME_FIELD = "Fp"
    INTEGERS_MOD = "Zmod"


@dataclass(frozen=True)
class RingSpec:
    """Raw ring request: kind, modulus (p or m) and the parameter delta."""

    kind: RingKind
    delta: Any = 0
    modulus: Optional[int] = None


def xgcd(a: int, b: int):
    """Returns (g, x, y) with a*x + b*y == g == gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


@dataclass(frozen=True)
class Ring:
    """
    Exact commutative ring with a distinguished element delta.
    Elements are plain Python values: int for Z, Fraction for Q,
    reduced residues (int) for Fp and Zmod.
    """

    kind: RingKind
    modulus: Optional[int]
    delta: RingElem
    _lift_delta: int = field(default=0, compare=False, repr=False)

    # --- constructors for elements ---
    @property
    def zero(self) -> RingElem:
        return Fraction(0) if self.kind is RingKind.RATIONALS else 0

    @property
    def one(self) -> RingElem:
        return Fraction(1) if self.kind is RingKind.RATIONALS else 1

    @property
    def is_field(self) -> bool:
        return self.kind in (RingKind.RATIONALS, RingKind.PRIME_FIELD)

    @property
    def is_modular(self) -> bool:
        return self.kind in (RingKind.PRIME_FIELD, RingKind.INTEGERS_MOD)

    def canon(self, value: Any) -> RingElem:
        """Canonical reduced form of an int or Fraction."""
        if self.kind is RingKind.INTEGERS:
            value = Fraction(value)
            if value.denominator != 1:
                raise SemanticError(f"{value} is not an integer")
            return int(value)
        if self.kind is RingKind.RATIONALS:
            return Fraction(value)
        value = Fraction(value)
        m = self.modulus
        den = value.denominator % m
        if gcd(den, m) != 1:
            raise SemanticError(f"{value} has no image in Z/{m}")
        return (value.numerator * mod_inverse(den, m)) % m if den != 1 else value.numerator % m

    # --- arithmetic ---
    def add(self, a: RingElem, b: RingElem) -> RingElem:
        return (a + b) % self.modulus if self.is_modular else a + b

    def neg(self, a: RingElem) -> RingElem:
        return (-a) % self.modulus if self.is_modular else -a

    def sub(self, a: RingElem, b: RingElem) -> RingElem:
        return (a - b) % self.modulus if self.is_modular else a - b

    def mul(self, a: RingElem, b: RingElem) -> RingElem:
        return (a * b) % self.modulus if self.is_modular else a * b

    def power(self, a: RingElem, k: int) -> RingElem:
        if self.is_modular:
            return pow(a, k, self.modulus)
        return a ** k

    def delta_power(self, k: int) -> RingElem:
        return self.one if k == 0 else self.power(self.delta, k)

    def is_zero(self, a: RingElem) -> bool:
        return a == 0

    def eq(self, a: RingElem, b: RingElem) -> bool:
        return self.canon(a) == self.canon(b)

    def is_unit(self, r: RingElem) -> bool:
        if self.kind is RingKind.INTEGERS:
            return r in (1, -1)
        if self.is_field:
            return r != 0
        return gcd(int(r), self.modulus) == 1

    def inverse(self, r: RingElem) -> RingElem:
        if not self.is_unit(r):
            raise SemanticError(f"{r} is not a unit in {self.name}")
        if self.kind is RingKind.INTEGERS:
            return r
        if self.kind is RingKind.RATIONALS:
            return 1 / Fraction(r)
        return mod_inverse(int(r), self.modulus)

    def div(self, a: RingElem, b: RingElem) -> RingElem:
        """Exact division a / b where b is a unit."""
        return self.mul(a, self.inverse(b))

    # --- matrices over Z/m are assembled on the integer lift ---
    @property
    def assembly(self) -> "Ring":
        if self.kind is RingKind.INTEGERS_MOD:
            return Ring(RingKind.INTEGERS, None, self._lift_delta)
        return self

    # --- text ---
    @property
    def name(self) -> str:
        if self.kind is RingKind.PRIME_FIELD:
            return f"Fp:{self.modulus}"
        if self.kind is RingKind.INTEGERS_MOD:
            return f"Zmod:{self.modulus}"
        return self.kind.value

    def format(self, a: RingElem) -> str:
        return str(a)

    def parse(self, text: str) -> RingElem:
        try:
            return self.canon(Fraction(str(text).strip()))
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"cannot read {text!r} as an element of {self.name}") from e

    def __str__(self) -> str:
        return f"{self.name}[delta={self.delta}]"


def ring_make(spec: RingSpec) -> Ring:
    """Validates a RingSpec and returns the ring context."""
    kind = RingKind(spec.kind)
    modulus = spec.modulus
    if kind is RingKind.PRIME_FIELD:
        if modulus is None or not isprime(int(modulus)):
            raise SemanticError(f"prime field needs a prime, got {modulus}")
    elif kind is RingKind.INTEGERS_MOD:
        if modulus is None or int(modulus) < 2:
            raise SemanticError(f"Z/m needs m >= 2, got {modulus}")
    else:
        modulus = None
    modulus = int(modulus) if modulus is not None else None

    base = Ring(kind, modulus, 0)
    delta = base.canon(Fraction(spec.delta)) if not isinstance(spec.delta, str) else base.parse(spec.delta)
    lift = int(delta) if kind is RingKind.INTEGERS_MOD else 0
    return Ring(kind, modulus, delta, lift)


def parse_ring(text: str, delta: Any = 0) -> Ring:
    """CLI ring strings: "Z", "Q", "Fp:<p>", "Zmod:<m>"."""
    raw = str(text).strip()
    head, _, tail = raw.partition(":")
    try:
        kind = RingKind(head)
    except ValueError as e:
        raise ParseError(f"unknown ring {raw!r}; expected Z, Q, Fp:<p> or Zmod:<m>") from e
    modulus = None
    if kind in (RingKind.PRIME_FIELD, RingKind.INTEGERS_MOD):
        if not tail.strip().lstrip("-").isdigit():
            raise ParseError(f"ring {raw!r} needs an integer modulus")
        modulus = int(tail)
    elif tail:
        raise ParseError(f"ring {raw!r} takes no modulus")
    return ring_make(RingSpec(kind, delta if isinstance(delta, str) else Fraction(delta), modulus))


def is_unit(ring: Ring, r: RingElem) -> bool:
    return ring.is_unit(r)
