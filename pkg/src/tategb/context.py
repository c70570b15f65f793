"""Algebra contexts and capped-precision p-adic scalars.

Valuations of series and terms are handled as *scaled* integers: a value
``w`` stands for ``w / D`` where ``D`` is the common denominator of the
log-radii.  With integral log-radii ``D == 1`` and scaled valuations are
ordinary p-adic valuations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

ORDERS = ("lex", "grevlex")


class PrecisionError(ArithmeticError):
    """A quantity is indistinguishable from zero at the working precision."""


class NotInvertibleError(ArithmeticError):
    """Raised when asked to invert a non-unit."""


@lru_cache(maxsize=4096)
def ppow(p: int, m: int) -> int:
    return p**m


def vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def split_unit(n: int, p: int) -> tuple[int, int]:
    """Write nonzero ``n`` as ``p**k * u`` with ``u`` prime to p."""
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k, n


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class AtLeast:
    """Valuation only known to be at least ``bound`` (value is zero at precision)."""

    bound: int

    def __str__(self) -> str:
        return f">= {self.bound}"


Valuation = Union[int, AtLeast]


@dataclass(frozen=True)
class AlgebraContext:
    prime: int
    var_names: tuple[str, ...]
    log_radii_num: tuple[int, ...]
    log_radii_den: int
    order: str
    prec_cap: int
    _order_key: object = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if not is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")
        if not self.var_names:
            raise ValueError("at least one variable is required")
        if len(set(self.var_names)) != len(self.var_names):
            raise ValueError("duplicate variable names")
        for name in self.var_names:
            if not name.isidentifier() or name in ("eta", "O"):
                raise ValueError(f"invalid variable name {name!r}")
        if len(self.log_radii_num) != len(self.var_names):
            raise ValueError("one log-radius per variable is required")
        if self.log_radii_den < 1:
            raise ValueError("log-radii denominator must be positive")
        if self.prec_cap < 1:
            raise ValueError("precision cap must be positive")
        if self.order not in ORDERS:
            raise ValueError(f"unknown monomial order {self.order!r}")
        key = _lex_key if self.order == "lex" else _grevlex_key
        object.__setattr__(self, "_order_key", key)

    @property
    def nvars(self) -> int:
        return len(self.var_names)

    @property
    def D(self) -> int:
        return self.log_radii_den

    @property
    def log_radii(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(r, self.D) for r in self.log_radii_num)

    @property
    def cap(self) -> int:
        """Default series cap in scaled units."""
        return self.prec_cap * self.D

    @property
    def radii_zero(self) -> bool:
        return not any(self.log_radii_num)

    def order_key(self, exp: Sequence[int]):
        return self._order_key(tuple(exp))

    def term_key(self, val: int, exp: Sequence[int]):
        """Sort key: a larger key is a larger term."""
        return (-val, self._order_key(tuple(exp)))

    def radius_dot(self, exp: Sequence[int]) -> int:
        """``D * (r . exp)``."""
        return sum(r * e for r, e in zip(self.log_radii_num, exp))

    def replace(self, **changes) -> "AlgebraContext":
        data = dict(
            prime=self.prime,
            var_names=self.var_names,
            log_radii=self.log_radii,
            order=self.order,
            prec_cap=self.prec_cap,
        )
        data.update(changes)
        return new_context(**data)


@lru_cache(maxsize=1 << 16)
def _lex_key(exp):
    return tuple(exp)


@lru_cache(maxsize=1 << 16)
def _grevlex_key(exp):
    return (sum(exp), tuple(-e for e in reversed(exp)))


def new_context(
    prime: int,
    var_names: Iterable[str],
    log_radii: Iterable | None = None,
    order: str = "grevlex",
    prec_cap: int = 20,
) -> AlgebraContext:
    """Build a context, storing the log-radii over their least common denominator."""
    names = tuple(var_names)
    radii = [Fraction(0)] * len(names) if log_radii is None else [Fraction(r) for r in log_radii]
    den = 1
    for r in radii:
        den = den * r.denominator // math.gcd(den, r.denominator)
    nums = tuple(int(r * den) for r in radii)
    return AlgebraContext(prime, names, nums, den, order, prec_cap)


@dataclass(frozen=True)
class Coefficient:
    """An element of Z_p known modulo ``p**cap``."""

    prime: int
    residue: int
    cap: int

    def __post_init__(self):
        if self.cap < 0:
            raise ValueError("negative cap")
        object.__setattr__(self, "residue", self.residue % ppow(self.prime, self.cap))

    def valuation(self) -> Valuation:
        if self.residue == 0:
            return AtLeast(self.cap)
        return vp(self.residue, self.prime)

    def is_zero(self) -> bool:
        return self.residue == 0

    def unit_part(self) -> int:
        if self.residue == 0:
            raise PrecisionError("zero has no unit part")
        return split_unit(self.residue, self.prime)[1]

    def _check(self, other: "Coefficient"):
        if not isinstance(other, Coefficient):
            raise TypeError(f"expected a Coefficient, got {type(other).__name__}")
        if other.prime != self.prime:
            raise ValueError("mismatched primes")

    def __add__(self, other: "Coefficient") -> "Coefficient":
        self._check(other)
        return Coefficient(self.prime, self.residue + other.residue, min(self.cap, other.cap))

    def __sub__(self, other: "Coefficient") -> "Coefficient":
        self._check(other)
        return Coefficient(self.prime, self.residue - other.residue, min(self.cap, other.cap))

    def __mul__(self, other: "Coefficient") -> "Coefficient":
        self._check(other)
        return Coefficient(self.prime, self.residue * other.residue, min(self.cap, other.cap))

    def __neg__(self) -> "Coefficient":
        return Coefficient(self.prime, -self.residue, self.cap)

    def inv_unit(self) -> "Coefficient":
        if self.residue == 0 or self.residue % self.prime == 0:
            raise NotInvertibleError(f"{self.residue} is not a unit mod {self.prime}^{self.cap}")
        return Coefficient(self.prime, pow(self.residue, -1, ppow(self.prime, self.cap)), self.cap)

    def exact_quotient(self, other: "Coefficient") -> "Coefficient":
        """The term ``t`` with ``t * other == self`` modulo ``p**min(caps)``.

        The quotient keeps every digit that the product can certify, so no
        precision is lost beyond the valuation shift.
        """
        self._check(other)
        if other.residue == 0:
            raise PrecisionError("division by a value indistinguishable from zero")
        p = self.prime
        vb, ub = split_unit(other.residue, p)
        cap = max(min(self.cap, other.cap) - vb, 0)
        if self.residue == 0:
            return Coefficient(p, 0, cap)
        va, ua = split_unit(self.residue, p)
        if va < vb:
            raise ArithmeticError("quotient is not integral")
        mod = ppow(p, cap)
        return Coefficient(p, ppow(p, va - vb) * ua * pow(ub, -1, mod), cap)

    def __str__(self) -> str:
        return f"{self.residue} + O({self.prime}^{self.cap})"
