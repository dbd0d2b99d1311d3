"""Exact coefficient fields: the rationals and prime fields F_p.

Scalars are plain Python values (``fractions.Fraction`` over Q, canonical
residues ``0..p-1`` over F_p), so all arithmetic is exact by construction.
Field objects are immutable tags bundling the operations.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import InvalidField


def _is_prime(n: int) -> bool:
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


class Field:
    """Common interface of coefficient fields; instances are value-like tags."""

    kind = "abstract"

    def __repr__(self):
        return self.name

    # scalar helpers ---------------------------------------------------

    def from_int(self, n: int):
        raise NotImplementedError

    def from_fraction(self, num: int, den: int):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def format(self, a) -> str:
        return str(a)

    def elements_sample(self):
        """Small deterministic pool of scalars used by randomized generators."""
        raise NotImplementedError


class RationalField(Field):
    kind = "rational"
    name = "Q"
    zero = Fraction(0)
    one = Fraction(1)

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("kcorr.Q")

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, num, den):
        if den == 0:
            raise InvalidField("zero denominator in rational literal")
        return Fraction(num, den)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of 0 in Q")
        return 1 / a

    def elements_sample(self):
        return (
            Fraction(0), Fraction(1), Fraction(-1), Fraction(2),
            Fraction(-2), Fraction(1, 2), Fraction(-1, 2), Fraction(3),
        )


class PrimeField(Field):
    kind = "prime"

    _instances: dict[int, "PrimeField"] = {}

    def __new__(cls, p: int):
        inst = cls._instances.get(p)
        if inst is None:
            if not _is_prime(p):
                raise InvalidField(f"{p} is not prime")
            inst = super().__new__(cls)
            inst.p = p
            inst.name = f"F{p}"
            inst.zero = 0
            inst.one = 1 % p
            cls._instances[p] = inst
        return inst

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("kcorr.Fp", self.p))

    def from_int(self, n):
        return n % self.p

    def from_fraction(self, num, den):
        return self.mul(self.from_int(num), self.inv(self.from_int(den)))

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of 0 in F{self.p}")
        return pow(a, self.p - 2, self.p)

    def elements_sample(self):
        return tuple(range(self.p)) if self.p <= 7 else tuple(range(-3, 4))


QQ = RationalField()


def parse_field(text: str) -> Field:
    """Parse a field spec: ``Q`` or ``Fp:P`` (also accepts ``F5``-style)."""
    text = text.strip()
    if text == "Q":
        return QQ
    if text.startswith("Fp:"):
        return PrimeField(int(text[3:]))
    if text.startswith("F") and text[1:].isdigit():
        return PrimeField(int(text[1:]))
    raise InvalidField(f"unknown field spec {text!r}")
