"""Exact scalar arithmetic: rationals and Gaussian rationals.

Every coefficient in this package is a :class:`Scalar` — a pair of
arbitrary-precision rationals (re, im) representing re + im*i.  A scalar
whose imaginary part is zero compares equal to the plain rational, so the
rational field sits inside the Gaussian rationals with no tagging ceremony.
There is no floating point anywhere; equality is structural and decidable.

String forms (used by every JSON format and by printed morphisms) are
canonical on output: ``"p/q"`` with an explicit denominator for rationals,
``"a/b+c/d*i"`` (or ``-c/d*i``) otherwise.  The parser is more tolerant and
also accepts bare integers, ``"i"``, ``"-i"`` and ``"3*i"``.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = ["Scalar", "ZERO", "ONE", "TWO", "HALF", "I", "as_scalar", "rational", "gaussian"]


class Scalar:
    """An exact Gaussian rational re + im*i.

    Immutable.  Arithmetic accepts ``Scalar`` or ``int`` on either side.
    """

    __slots__ = ("re", "im")

    re: Fraction
    im: Fraction

    def __init__(self, re: Fraction | int | str = 0, im: Fraction | int | str = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Scalar is immutable")

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_one(self) -> bool:
        return self.re == 1 and not self.im

    def is_rational(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other: "Scalar | int") -> "Scalar | None":
        if isinstance(other, Scalar):
            return other
        if isinstance(other, int):
            return Scalar(other)
        return None

    def __add__(self, other: "Scalar | int") -> "Scalar":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: "Scalar | int") -> "Scalar":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: "Scalar | int") -> "Scalar":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(o.re - self.re, o.im - self.im)

    def __neg__(self) -> "Scalar":
        return Scalar(-self.re, -self.im)

    def __mul__(self, other: "Scalar | int") -> "Scalar":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        """Multiplicative inverse; raises ZeroDivisionError on zero."""
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of zero scalar")
        return Scalar(self.re / n, -self.im / n)

    def __truediv__(self, other: "Scalar | int") -> "Scalar":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: "Scalar | int") -> "Scalar":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> "Scalar":
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        out = ONE
        for _ in range(abs(n)):
            out = out * base
        return out

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    # -- equality / hashing -------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    # -- text ---------------------------------------------------------------

    @staticmethod
    def _frac_str(f: Fraction) -> str:
        return f"{f.numerator}/{f.denominator}"

    def __str__(self) -> str:
        if not self.im:
            return self._frac_str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{self._frac_str(self.re)}{sign}{self._frac_str(abs(self.im))}*i"

    def __repr__(self) -> str:
        return f"Scalar({self})"

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        """Parse ``"p/q"`` / ``"a/b+c/d*i"`` style scalar strings.

        Raises ValueError on malformed input.
        """
        s = text.strip().replace(" ", "")
        if not s:
            raise ValueError("empty scalar string")
        if "i" not in s:
            return cls(cls._parse_frac(s))
        body = s[:-1]  # strip trailing 'i'
        if body.endswith("*"):
            body = body[:-1]
        # split real and imaginary at the last top-level sign
        split = -1
        for k in range(len(body) - 1, 0, -1):
            if body[k] in "+-" and body[k - 1] not in "+-*/":
                split = k
                break
        if split < 0:
            re_part, im_part = "", body
        else:
            re_part, im_part = body[:split], body[split:]
        if im_part in ("", "+"):
            im = Fraction(1)
        elif im_part == "-":
            im = Fraction(-1)
        else:
            im = cls._parse_frac(im_part)
        re = cls._parse_frac(re_part) if re_part else Fraction(0)
        return cls(re, im)

    @staticmethod
    def _parse_frac(s: str) -> Fraction:
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad rational {s!r}") from exc


def as_scalar(x: "Scalar | int | str | Fraction") -> Scalar:
    """Coerce an int, Fraction, or canonical/tolerant string to a Scalar."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar(x)
    if isinstance(x, str):
        return Scalar.parse(x)
    raise TypeError(f"cannot interpret {x!r} as a scalar")


def rational(p: int, q: int = 1) -> Scalar:
    return Scalar(Fraction(p, q))


def gaussian(re: Fraction | int, im: Fraction | int) -> Scalar:
    return Scalar(re, im)


ZERO = Scalar(0)
ONE = Scalar(1)
TWO = Scalar(2)
HALF = Scalar(Fraction(1, 2))
I = Scalar(0, 1)
