"""Exact polynomials over Q and Q(sqrt(-3)), and the Shabat polynomials of the families.

No floating point is used here.  Rational coefficients are plain
``fractions.Fraction`` values; coefficients in Q(sqrt(-3)) are ``QOmega``
values a + b*w with w = i*sqrt(3), so w*w = -3.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .dessin import (
    CleanedDoubleStar,
    DiamFour,
    EvenPath,
    FamilyParams,
    OddPath,
    Passport,
    Sporadic337,
    Star,
    ThreeStarComposite,
)

__all__ = [
    "QOmega",
    "OMEGA",
    "ExactPolynomial",
    "Z",
    "pochhammer",
    "star_shabat",
    "chebyshev_path",
    "adrianov_shabat",
    "srt_poly",
    "beta",
    "cleaned_double_star",
    "cleaned_double_star_table",
    "three_star_T",
    "threestar_composite",
    "threestar_table",
    "sporadic_337",
    "sporadic_337_printed",
    "shabat_for",
    "is_shabat",
    "passport_of",
    "gcd",
    "square_free_decomposition",
    "hypergeometric_discrepancy",
]

Q = "Q"
QW = "Q(sqrt-3)"


class QOmega:
    """a + b*w with rational a, b and w = i*sqrt(3)."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @staticmethod
    def lift(x) -> QOmega:
        if isinstance(x, QOmega):
            return x
        if isinstance(x, (int, Fraction)):
            return QOmega(x, 0)
        raise TypeError(f"cannot coerce {x!r} into Q(sqrt-3)")

    def __add__(self, o):
        try:
            o = QOmega.lift(o)
        except TypeError:
            return NotImplemented
        return QOmega(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QOmega(-self.a, -self.b)

    def __sub__(self, o):
        try:
            o = QOmega.lift(o)
        except TypeError:
            return NotImplemented
        return QOmega(self.a - o.a, self.b - o.b)

    def __rsub__(self, o):
        return QOmega.lift(o) - self

    def __mul__(self, o):
        try:
            o = QOmega.lift(o)
        except TypeError:
            return NotImplemented
        return QOmega(self.a * o.a - 3 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a + 3 * self.b * self.b

    def conjugate(self) -> QOmega:
        return QOmega(self.a, -self.b)

    def inverse(self) -> QOmega:
        nrm = self.norm()
        if nrm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt-3)")
        return QOmega(self.a / nrm, -self.b / nrm)

    def __truediv__(self, o):
        try:
            o = QOmega.lift(o)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, o):
        return QOmega.lift(o) * self.inverse()

    def __pow__(self, k: int):
        out, base = QOmega(1), self
        if k < 0:
            base, k = base.inverse(), -k
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, o):
        try:
            o = QOmega.lift(o)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash(self.a) if self.b == 0 else hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __complex__(self):
        return complex(float(self.a), float(self.b) * math.sqrt(3))

    def __repr__(self):
        return f"QOmega({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*w"
        sign = "+" if self.b > 0 else "-"
        return f"({self.a} {sign} {abs(self.b)}*w)"


OMEGA = QOmega(0, 1)
Scalar = Union[Fraction, QOmega]


def _field_of(c) -> str:
    return QW if isinstance(c, QOmega) else Q


def _coerce(c, field: str):
    if field == QW:
        return QOmega.lift(c)
    if isinstance(c, QOmega):
        if c.b:
            raise ValueError(f"{c} is not rational")
        return c.a
    return Fraction(c)


def _frac_text(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


class ExactPolynomial:
    """A univariate polynomial with exact coefficients, lowest degree first."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Iterable = (), field: str | None = None):
        coeffs = list(coeffs)
        if field is None:
            field = QW if any(isinstance(c, QOmega) for c in coeffs) else Q
        if field not in (Q, QW):
            raise ValueError(f"unknown field {field!r}")
        cs = [_coerce(c, field) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.field = field

    # construction -------------------------------------------------------

    @classmethod
    def constant(cls, c, field: str | None = None) -> ExactPolynomial:
        return cls([c], field)

    @classmethod
    def monomial(cls, k: int, c=1) -> ExactPolynomial:
        return cls([0] * k + [c])

    # basic protocol -----------------------------------------------------

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QOmega)):
            other = ExactPolynomial([other])
        if not isinstance(other, ExactPolynomial):
            return NotImplemented
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(QOmega.lift(a) == QOmega.lift(b) for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(tuple(QOmega.lift(c) for c in self.coeffs))

    def _unify(self, other) -> tuple[ExactPolynomial, ExactPolynomial]:
        if not isinstance(other, ExactPolynomial):
            other = ExactPolynomial([other])
        if self.field == other.field:
            return self, other
        return ExactPolynomial(self.coeffs, QW), ExactPolynomial(other.coeffs, QW)

    def __add__(self, other):
        a, b = self._unify(other)
        n = max(len(a.coeffs), len(b.coeffs))
        zero = _coerce(0, a.field)
        return ExactPolynomial(
            [(a.coeffs[i] if i < len(a.coeffs) else zero) + (b.coeffs[i] if i < len(b.coeffs) else zero) for i in range(n)],
            a.field,
        )

    __radd__ = __add__

    def __neg__(self):
        return ExactPolynomial([-c for c in self.coeffs], self.field)

    def __sub__(self, other):
        a, b = self._unify(other)
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._unify(other)
        if a.is_zero() or b.is_zero():
            return ExactPolynomial([], a.field)
        out = [_coerce(0, a.field)] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                out[i + j] += x * y
        return ExactPolynomial(out, a.field)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out, base = ExactPolynomial([1], self.field), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> ExactPolynomial:
        return self * ExactPolynomial([c])

    def divmod(self, other: ExactPolynomial) -> tuple[ExactPolynomial, ExactPolynomial]:
        a, b = self._unify(other)
        if b.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(a.coeffs)
        db = b.degree
        inv_lead = 1 / b.leading() if a.field == Q else b.leading().inverse()
        quot = [_coerce(0, a.field)] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] * inv_lead
            if c:
                quot[k] = c
                for j, y in enumerate(b.coeffs):
                    rem[k + j] -= c * y
        return ExactPolynomial(quot, a.field), ExactPolynomial(rem[:db] if db > 0 else [], a.field)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other) -> ExactPolynomial:
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("division is not exact")
        return q

    def monic(self) -> ExactPolynomial:
        if self.is_zero():
            return self
        return self.scale(1 / self.leading() if self.field == Q else self.leading().inverse())

    def derivative(self) -> ExactPolynomial:
        return ExactPolynomial([k * c for k, c in enumerate(self.coeffs)][1:], self.field)

    def evaluate(self, x):
        acc = _coerce(0, QW if isinstance(x, QOmega) else self.field)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    __call__ = evaluate

    def compose(self, inner: ExactPolynomial) -> ExactPolynomial:
        """self(inner(z))."""
        acc = ExactPolynomial([], self.field)
        for c in reversed(self.coeffs):
            acc = acc * inner + ExactPolynomial([c], self.field)
        return acc

    # output ---------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "field": self.field,
            "coeffs": [[_frac_text(QOmega.lift(c).a), _frac_text(QOmega.lift(c).b)] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> ExactPolynomial:
        field = data.get("field", Q)
        coeffs = [QOmega(Fraction(a), Fraction(b)) for a, b in data["coeffs"]]
        return cls(coeffs, field)

    def complex_coefficients(self) -> list[complex]:
        return [complex(QOmega.lift(c)) for c in self.coeffs]

    def __repr__(self):
        return f"ExactPolynomial({self})"

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            negative = not isinstance(c, QOmega) and c < 0 or isinstance(c, QOmega) and c.b == 0 and c.a < 0
            mag = -c if negative else c
            if mono and mag == 1:
                body = mono
            else:
                body = str(mag) + ("*" + mono if mono else "")
            terms.append(("-" if negative else "+", body))
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


Z = ExactPolynomial([0, 1])


def _poly(*coeffs) -> ExactPolynomial:
    return ExactPolynomial(coeffs)


# --------------------------------------------------------------------------
# gcd and square-free parts


def gcd(F: ExactPolynomial, G: ExactPolynomial) -> ExactPolynomial:
    """Monic greatest common divisor (zero only if both inputs are zero)."""
    a, b = F._unify(G)
    a, b = a.monic(), b.monic()
    while not b.is_zero():
        a, b = b, (a % b).monic()
    return a.monic()


def square_free_decomposition(F: ExactPolynomial) -> list[tuple[ExactPolynomial, int]]:
    """Yun's algorithm: monic, square-free, pairwise coprime f_i with F = lc * prod f_i^i.

    Factors of degree zero are omitted.
    """
    if F.degree < 1:
        return []
    d = F.derivative()
    a = gcd(F, d)
    b = F.exact_div(a)
    c = d.exact_div(a)
    dd = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        a = gcd(b, dd)
        b_next = b.exact_div(a)
        c = dd.exact_div(a)
        if a.degree > 0:
            out.append((a.monic(), i))
        b = b_next
        dd = c - b.derivative()
        i += 1
    return out


def _multiplicities(F: ExactPolynomial) -> list[int]:
    parts = []
    for f, m in square_free_decomposition(F):
        parts.extend([m] * f.degree)
    return sorted(parts, reverse=True)


def is_shabat(F: ExactPolynomial) -> bool:
    """Every critical point is a multiple root of F or of F - 1."""
    if F.degree < 1:
        raise ValueError("is_shabat needs a nonconstant polynomial")
    dF = F.derivative()
    return gcd(F, dF).degree + gcd(F - 1, dF).degree == F.degree - 1


def passport_of(F: ExactPolynomial) -> Passport:
    """Root multiplicities of F (black) and F - 1 (white)."""
    if not is_shabat(F):
        raise ValueError("passport_of needs a Shabat polynomial")
    return Passport(tuple(_multiplicities(F)), tuple(_multiplicities(F - 1)))


# --------------------------------------------------------------------------
# constructors


def pochhammer(a, k: int) -> Fraction:
    """Rising factorial a (a+1) ... (a+k-1)."""
    if k < 0:
        raise ValueError("pochhammer needs k >= 0")
    out = Fraction(1)
    a = Fraction(a)
    for i in range(k):
        out *= a + i
    return out


def star_shabat(r: int) -> ExactPolynomial:
    if r < 1:
        raise ValueError("r >= 1")
    return ExactPolynomial.monomial(r)


def chebyshev_path(n: int) -> ExactPolynomial:
    """(1 + T_n(z)) / 2: the path with n edges."""
    if n < 1:
        raise ValueError("n >= 1")
    prev, cur = ExactPolynomial([1]), Z
    for _ in range(n - 1):
        prev, cur = cur, Z * cur * 2 - prev
    return (cur + 1).scale(Fraction(1, 2))


def adrianov_shabat(r: int, s: int, t: int) -> ExactPolynomial:
    """(1-z)^t (sum_{k<r} (t/s)_k z^k / k!)^s."""
    if r < 1 or s < 1 or t < 1:
        raise ValueError("r, s, t >= 1")
    a = Fraction(t, s)
    inner = ExactPolynomial([pochhammer(a, k) / math.factorial(k) for k in range(r)])
    return _poly(1, -1) ** t * inner**s


def srt_poly(r: int, t: int) -> ExactPolynomial:
    """S_{r,t} = (1-z)^t sum_{j<r} C(t-1+j, t-1) z^j."""
    if r < 1 or t < 1:
        raise ValueError("r, t >= 1")
    return _poly(1, -1) ** t * ExactPolynomial([math.comb(t - 1 + j, t - 1) for j in range(r)])


def beta() -> ExactPolynomial:
    """4z(1-z)."""
    return _poly(0, 4, -4)


def cleaned_double_star(r: int, t: int) -> ExactPolynomial:
    if r <= 1 or t <= 1:
        raise ValueError("cleaned double star needs r, t > 1")
    return beta().compose(srt_poly(r, t))


def cleaned_double_star_table(r: int, t: int) -> ExactPolynomial:
    """The expanded product displayed in the table row."""
    if r <= 1 or t <= 1:
        raise ValueError("cleaned double star needs r, t > 1")
    first = ExactPolynomial([math.comb(t - 1 + j, t - 1) for j in range(r)])
    second = ExactPolynomial([math.comb(r - 1 + j, r - 1) * math.comb(r + t - 1, r + j) * (-1) ** j for j in range(t)])
    return ExactPolynomial.monomial(r, 4) * _poly(1, -1) ** t * first * second


def three_star_T() -> ExactPolynomial:
    """-(3/2)(3 + w - 2wz)(z - 1)z: black leaves at 0, 1 and (1-w)/2, white center."""
    lin = ExactPolynomial([3 + OMEGA, -2 * OMEGA])
    return lin * _poly(-1, 1) * Z * Fraction(-3, 2)


def threestar_composite(r: int) -> ExactPolynomial:
    if r < 2:
        raise ValueError("three-star composite needs r >= 2")
    return three_star_T().compose(srt_poly(r, r))


def threestar_table(r: int) -> ExactPolynomial:
    """-3w S (1 - S)(S - (1-w)/2) with S = S_{r,r}."""
    if r < 2:
        raise ValueError("three-star composite needs r >= 2")
    S = ExactPolynomial(srt_poly(r, r).coeffs, QW)
    root = (1 - OMEGA) / 2
    return S * (1 - S) * (S - root) * (-3 * OMEGA)


def sporadic_337() -> ExactPolynomial:
    """beta composed with the (3,3,1) polynomial."""
    return beta().compose(adrianov_shabat(3, 3, 1))


def sporadic_337_printed() -> ExactPolynomial:
    """-(4/531441)(z-1) z^3 (2z^2+3z+9)^3 (8z^4+28z^3+126z^2+189z+378), as printed."""
    return (
        _poly(-1, 1)
        * Z**3
        * _poly(9, 3, 2) ** 3
        * _poly(378, 189, 126, 28, 8)
        * Fraction(-4, 531441)
    )


def shabat_for(p: FamilyParams) -> ExactPolynomial:
    """The Shabat polynomial of a family member."""
    p.validate()
    if isinstance(p, Star):
        return star_shabat(p.r)
    if isinstance(p, OddPath):
        return chebyshev_path(2 * p.r + 1)
    if isinstance(p, EvenPath):
        return chebyshev_path(2 * p.r)
    if isinstance(p, DiamFour):
        return adrianov_shabat(p.r, p.s, p.t)
    if isinstance(p, CleanedDoubleStar):
        return cleaned_double_star(p.r, p.t)
    if isinstance(p, ThreeStarComposite):
        return threestar_composite(p.r)
    if isinstance(p, Sporadic337):
        return sporadic_337()
    raise TypeError(f"not a family: {p!r}")


# --------------------------------------------------------------------------
# the hypergeometric display


def hypergeometric_discrepancy(r: int, t: int, points: Sequence[Fraction] | None = None) -> dict:
    """Compare the hypergeometric closed form for the cleaned double star with the product form.

    The closed form reads 4 z^r C(r+t-1, r) 2F1(t-1, r; r+1; z) (1 - (1-z)^t z^r
    C(r+t-1, t-1) 2F1(1, r+t; r+1; z)).  Both are evaluated at rational points
    in (-1, 1), where the series converge.  Nothing is asserted; the caller
    gets the largest absolute difference.
    """
    import mpmath

    if points is None:
        points = [Fraction(k, 21) for k in range(-10, 11) if k != 0]
    F = cleaned_double_star_table(r, t)
    worst = 0.0
    samples = []
    with mpmath.workdps(30):
        for x in points:
            z = mpmath.mpf(x.numerator) / x.denominator
            hyp = (
                4
                * z**r
                * math.comb(r + t - 1, r)
                * mpmath.hyp2f1(t - 1, r, r + 1, z)
                * (1 - (1 - z) ** t * z**r * math.comb(r + t - 1, t - 1) * mpmath.hyp2f1(1, r + t, r + 1, z))
            )
            exact = F.evaluate(x)
            diff = abs(float(hyp) - float(exact))
            worst = max(worst, diff)
            samples.append({"z": _frac_text(x), "closed_form": mpmath.nstr(hyp, 15), "product": mpmath.nstr(mpmath.mpf(exact.numerator) / exact.denominator, 15)})
    return {"r": r, "t": t, "max_abs_difference": worst, "agree": worst < 1e-12, "samples": samples}
