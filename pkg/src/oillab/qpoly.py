"""Dense polynomials in q with exact integer coefficients."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class QPoly:
    """Immutable polynomial; ``coeffs[i]`` is the coefficient of ``q**i``.

    The zero polynomial has no coefficients and degree ``None``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("QPoly is immutable")

    @classmethod
    def monomial(cls, power: int, coeff: int = 1) -> "QPoly":
        if power < 0:
            raise ValueError("negative power")
        return cls([0] * power + [coeff])

    @classmethod
    def from_powers(cls, powers: Iterable[int]) -> "QPoly":
        """Sum of ``q**p`` over ``powers`` (with multiplicity)."""
        counts: dict[int, int] = {}
        for p in powers:
            p = int(p)
            if p < 0:
                raise ValueError("negative power")
            counts[p] = counts.get(p, 0) + 1
        if not counts:
            return cls()
        c = [0] * (max(counts) + 1)
        for p, k in counts.items():
            c[p] = k
        return cls(c)

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __call__(self, q):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * q + a
        return acc

    def __add__(self, other: "QPoly") -> "QPoly":
        other = _coerce(other)
        m = max(len(self.coeffs), len(other.coeffs))
        return QPoly(self.coeff(i) + other.coeff(i) for i in range(m))

    __radd__ = __add__

    def __neg__(self) -> "QPoly":
        return QPoly(-a for a in self.coeffs)

    def __sub__(self, other: "QPoly") -> "QPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "QPoly":
        return _coerce(other) - self

    def __mul__(self, other: "QPoly") -> "QPoly":
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return QPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QPoly":
        if k < 0:
            raise ValueError("negative exponent")
        out, base = QPoly([1]), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, QPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == QPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"QPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            if not mono:
                body = str(abs(a))
            elif abs(a) == 1:
                body = mono
            else:
                body = f"{abs(a)}{mono}"
            terms.append(("-" if a < 0 else "+", body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def to_list(self) -> list[int]:
        return list(self.coeffs)


def _coerce(x) -> QPoly:
    if isinstance(x, QPoly):
        return x
    if isinstance(x, int):
        return QPoly([x])
    if isinstance(x, Fraction) and x.denominator == 1:
        return QPoly([x.numerator])
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial")


def qpoly_leq(p: QPoly | Sequence[int], s: QPoly | Sequence[int]) -> bool:
    """True iff every coefficient of ``s - p`` is nonnegative."""
    p = p if isinstance(p, QPoly) else QPoly(p)
    s = s if isinstance(s, QPoly) else QPoly(s)
    return all(a >= 0 for a in (s - p).coeffs)
