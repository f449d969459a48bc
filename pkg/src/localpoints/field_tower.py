"""Exact arithmetic in towers of quadratic extensions of the rationals.

A tower is a chain Q = K_0 < K_1 < ... < K_h where K_{i+1} = K_i[x]/(x^2 + b*x + c)
for b, c in K_i.  Elements are coordinate vectors of length 2^h over Fraction in
the product basis of the adjoined generators; all arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import NamedTuple

from .errors import NotAPrefixError

Coords = tuple[Fraction, ...]


class TowerStep(NamedTuple):
    """One quadratic adjunction: a root of x^2 + b*x + c over the level below.

    b and c are stored as raw coordinate vectors at the height of that level.
    """

    name: str
    b: Coords
    c: Coords


def _coords_add(a: Coords, b: Coords) -> Coords:
    return tuple(x + y for x, y in zip(a, b))


def _coords_sub(a: Coords, b: Coords) -> Coords:
    return tuple(x - y for x, y in zip(a, b))


def _coords_neg(a: Coords) -> Coords:
    return tuple(-x for x in a)


def _coords_mul(a: Coords, b: Coords, steps: tuple[TowerStep, ...]) -> Coords:
    if not steps:
        return (a[0] * b[0],)
    if len(steps) == 1:
        # inlined quadratic multiply: theta^2 = -bq*theta - cq over Q
        bq = steps[0].b[0]
        cq = steps[0].c[0]
        a0, a1 = a
        b0, b1 = b
        hh = a1 * b1
        if bq:
            return (a0 * b0 - cq * hh, a0 * b1 + a1 * b0 - bq * hh)
        return (a0 * b0 - cq * hh, a0 * b1 + a1 * b0)
    half = len(a) // 2
    sub = steps[:-1]
    bq, cq = steps[-1].b, steps[-1].c
    a_lo, a_hi = a[:half], a[half:]
    b_lo, b_hi = b[:half], b[half:]
    lolo = _coords_mul(a_lo, b_lo, sub)
    hihi = _coords_mul(a_hi, b_hi, sub)
    cross = _coords_add(_coords_mul(a_lo, b_hi, sub), _coords_mul(a_hi, b_lo, sub))
    # theta^2 = -b*theta - c
    lo = _coords_sub(lolo, _coords_mul(cq, hihi, sub))
    hi = cross if not any(bq) else _coords_sub(cross, _coords_mul(bq, hihi, sub))
    return lo + hi


def _coords_inv(a: Coords, steps: tuple[TowerStep, ...]) -> Coords:
    if not any(a):
        raise ZeroDivisionError("division by zero field element")
    if not steps:
        return (1 / a[0],)
    half = len(a) // 2
    sub = steps[:-1]
    bq, cq = steps[-1].b, steps[-1].c
    lo, hi = a[:half], a[half:]
    # norm against the conjugate theta' = -b - theta
    norm = _coords_add(
        _coords_sub(_coords_mul(lo, lo, sub), _coords_mul(bq, _coords_mul(lo, hi, sub), sub)),
        _coords_mul(cq, _coords_mul(hi, hi, sub), sub),
    )
    if not any(norm):
        # only reachable through a formally adjoined root that secretly splits
        raise ZeroDivisionError("zero divisor in formal quadratic extension")
    inv_norm = _coords_inv(norm, sub)
    conj_lo = _coords_sub(lo, _coords_mul(bq, hi, sub))
    return _coords_mul(conj_lo, inv_norm, sub) + _coords_mul(_coords_neg(hi), inv_norm, sub)


class FieldTower:
    """Immutable tower of quadratic extensions of Q."""

    __slots__ = ("steps",)

    def __init__(self, steps: tuple[TowerStep, ...] = ()) -> None:
        self.steps = steps

    @property
    def height(self) -> int:
        return len(self.steps)

    @property
    def dim(self) -> int:
        return 1 << len(self.steps)

    @property
    def generator_names(self) -> tuple[str, ...]:
        return tuple(step.name for step in self.steps)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return isinstance(other, FieldTower) and self.steps == other.steps

    def __hash__(self) -> int:
        return hash(self.steps)

    def __repr__(self) -> str:
        if not self.steps:
            return "Q"
        return "Q(" + ", ".join(self.generator_names) + ")"

    def is_prefix_of(self, other: FieldTower) -> bool:
        return self.steps == other.steps[: len(self.steps)]

    # -- element constructors ------------------------------------------------

    def element(self, coords: Coords) -> FieldElement:
        return FieldElement(self, tuple(Fraction(x) for x in coords))

    def rational(self, value: Fraction | int) -> FieldElement:
        coords = [Fraction(0)] * self.dim
        coords[0] = Fraction(value)
        return FieldElement(self, tuple(coords))

    def zero(self) -> FieldElement:
        return self.rational(0)

    def one(self) -> FieldElement:
        return self.rational(1)

    def gen(self, name: str) -> FieldElement:
        for i, step in enumerate(self.steps):
            if step.name == name:
                coords = [Fraction(0)] * self.dim
                coords[1 << i] = Fraction(1)
                return FieldElement(self, tuple(coords))
        raise KeyError(f"no generator named {name!r} in {self!r}")

    def coerce(self, value: FieldElement | Fraction | int) -> FieldElement:
        if isinstance(value, FieldElement):
            return embed(value, self)
        return self.rational(value)


QQ = FieldTower()


@dataclass(frozen=True, slots=True)
class FieldElement:
    tower: FieldTower
    coords: Coords

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def _pair(self, other: FieldElement | Fraction | int) -> tuple[FieldElement, FieldElement]:
        if not isinstance(other, FieldElement):
            if not isinstance(other, (int, Fraction)):
                raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")
            return self, self.tower.rational(other)
        if self.tower is other.tower or self.tower == other.tower:
            return self, other
        if self.tower.is_prefix_of(other.tower):
            return embed(self, other.tower), other
        if other.tower.is_prefix_of(self.tower):
            return self, embed(other, self.tower)
        raise NotAPrefixError(f"cannot combine elements of {self.tower!r} and {other.tower!r}")

    @staticmethod
    def _known(other: object) -> bool:
        return isinstance(other, (FieldElement, int, Fraction))

    def __add__(self, other: FieldElement | Fraction | int) -> FieldElement:
        if not self._known(other):
            return NotImplemented
        a, b = self._pair(other)
        return FieldElement(a.tower, _coords_add(a.coords, b.coords))

    __radd__ = __add__

    def __sub__(self, other: FieldElement | Fraction | int) -> FieldElement:
        if not self._known(other):
            return NotImplemented
        a, b = self._pair(other)
        return FieldElement(a.tower, _coords_sub(a.coords, b.coords))

    def __rsub__(self, other: Fraction | int) -> FieldElement:
        if not self._known(other):
            return NotImplemented
        return (-self) + other

    def __neg__(self) -> FieldElement:
        return FieldElement(self.tower, _coords_neg(self.coords))

    def __mul__(self, other: FieldElement | Fraction | int) -> FieldElement:
        if not self._known(other):
            return NotImplemented
        a, b = self._pair(other)
        return FieldElement(a.tower, _coords_mul(a.coords, b.coords, a.tower.steps))

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        return FieldElement(self.tower, _coords_inv(self.coords, self.tower.steps))

    def __truediv__(self, other: FieldElement | Fraction | int) -> FieldElement:
        if not self._known(other):
            return NotImplemented
        a, b = self._pair(other)
        return a * b.inverse()

    def __rtruediv__(self, other: Fraction | int) -> FieldElement:
        if not self._known(other):
            return NotImplemented
        return self.tower.rational(other) / self

    def __pow__(self, exponent: int) -> FieldElement:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.tower.one()
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.tower.rational(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        try:
            a, b = self._pair(other)
        except NotAPrefixError:
            return False
        return a.coords == b.coords

    def __hash__(self) -> int:
        return hash((self.tower, self.coords))

    def __str__(self) -> str:
        names = self.tower.generator_names
        terms = []
        for index, coeff in enumerate(self.coords):
            if coeff == 0:
                continue
            monomial = "*".join(names[i] for i in range(len(names)) if index >> i & 1)
            if not monomial:
                terms.append(str(coeff))
            elif coeff == 1:
                terms.append(monomial)
            elif coeff == -1:
                terms.append(f"-{monomial}")
            else:
                terms.append(f"{coeff}*{monomial}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def __repr__(self) -> str:
        return f"<{self} in {self.tower!r}>"


@dataclass(frozen=True)
class AlreadySplit:
    """Returned by adjoin_quadratic when the quadratic factors; carries a root."""

    witness: FieldElement


def adjoin_quadratic(
    tower: FieldTower,
    name: str,
    b: FieldElement | Fraction | int,
    c: FieldElement | Fraction | int,
) -> FieldTower | AlreadySplit:
    """Adjoin a root of x^2 + b*x + c, or report a root that already exists.

    When the discriminant squareness test is Undecided (height >= 2) the
    adjunction proceeds formally, without an irreducibility certificate.
    """
    if name in tower.generator_names:
        raise ValueError(f"generator name {name!r} already used in {tower!r}")
    b = tower.coerce(b)
    c = tower.coerce(c)
    disc = b * b - 4 * c
    check = is_square(tower, disc)
    if check.kind == "yes":
        root = (check.witness - b) / 2
        return AlreadySplit(root)
    return FieldTower(tower.steps + (TowerStep(name, b.coords, c.coords),))


def embed(element: FieldElement, target: FieldTower) -> FieldElement:
    """View an element of a prefix tower inside a taller tower."""
    if element.tower == target:
        return element
    if not element.tower.is_prefix_of(target):
        raise NotAPrefixError(f"{element.tower!r} is not a prefix of {target!r}")
    coords = [Fraction(0)] * target.dim
    for i, value in enumerate(element.coords):
        coords[i] = value
    return FieldElement(target, tuple(coords))


@dataclass(frozen=True)
class SquareCheck:
    """Outcome of an exact squareness test: yes (with witness), no, or undecided."""

    kind: str  # "yes" | "no" | "undecided"
    witness: FieldElement | None = None


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    num_root = isqrt(q.numerator)
    den_root = isqrt(q.denominator)
    if num_root * num_root == q.numerator and den_root * den_root == q.denominator:
        return Fraction(num_root, den_root)
    return None


def is_square(tower: FieldTower, a: FieldElement | Fraction | int) -> SquareCheck:
    """Decide squareness exactly over Q or a single quadratic extension.

    Heights >= 2 return undecided; callers that only care about squares over the
    complex numbers fall back to valuation parity instead.
    """
    a = tower.coerce(a)
    if a.is_zero():
        return SquareCheck("yes", tower.zero())
    if tower.height == 0:
        root = _rational_sqrt(a.coords[0])
        if root is None:
            return SquareCheck("no")
        return SquareCheck("yes", tower.rational(root))
    if tower.height > 1:
        return SquareCheck("undecided")

    # a = x + y*theta with theta^2 = -b*theta - c; search w = p + q*theta, w^2 = a.
    b = tower.steps[0].b[0]
    c = tower.steps[0].c[0]
    x, y = a.coords
    candidates: list[tuple[Fraction, Fraction]] = []
    if y == 0:
        root = _rational_sqrt(x)
        if root is not None:
            candidates.append((root, Fraction(0)))
    # q != 0 branch: (b^2-4c) Q^2 + (2by-4x) Q + y^2 = 0 with Q = q^2
    lead = b * b - 4 * c
    mid = 2 * b * y - 4 * x
    disc = mid * mid - 4 * lead * y * y
    disc_root = _rational_sqrt(disc)
    if disc_root is not None:
        for sign in (1, -1):
            big_q = (-mid + sign * disc_root) / (2 * lead)
            if big_q <= 0:
                continue
            q_val = _rational_sqrt(big_q)
            if q_val is None or q_val == 0:
                continue
            p_val = (y + b * q_val * q_val) / (2 * q_val)
            candidates.append((p_val, q_val))
    for p_val, q_val in candidates:
        w = tower.element((p_val, q_val))
        if w * w == a:
            return SquareCheck("yes", w)
    return SquareCheck("no")
