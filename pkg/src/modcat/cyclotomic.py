"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Two value types live here:

* :class:`RootOfUnity` stores ``exp(2*pi*i*r)`` by its rational exponent ``r``
  reduced into ``[0, 1)``.  Twists and quadratic-form values are kept in this
  compact form.
* :class:`CycNumber` is a general field element.  It is stored in the power
  basis ``1, z, ..., z^(phi(N)-1)`` of ``Q(zeta_N)`` modulo the ``N``-th
  cyclotomic polynomial, with ``N`` always the *minimal* conductor of the
  element.  Two equal field elements therefore have identical fields, so
  ``==`` and ``hash`` are structural.

The complex embedding is fixed as ``zeta_N = exp(2*pi*i/N)``.  Floating point
is only used for display and for proposing candidates that are then checked
exactly.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

__all__ = [
    "RootOfUnity",
    "CycNumber",
    "cyclotomic_poly",
    "embed",
    "conjugate",
    "is_root_of_unity",
    "sqrt_int",
    "factorize",
]


# --------------------------------------------------------------------------
# integer helpers


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``n >= 1`` as ``((p, e), ...)`` with increasing ``p``."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _totient(n: int) -> int:
    t = n
    for p, _ in factorize(n):
        t = t // p * (p - 1)
    return t


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (constant term first) of the ``n``-th cyclotomic polynomial."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n):
        if d < n:
            num = _exact_div(num, cyclotomic_poly(d))
    return tuple(num)


def _exact_div(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den is monic
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            out[i - dd] = c
            for k in range(dd + 1):
                num[i - dd + k] -= c * den[k]
    assert not any(num), "non-exact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def _phi_terms(n: int) -> tuple[int, tuple[tuple[int, int], ...]]:
    poly = cyclotomic_poly(n)
    deg = len(poly) - 1
    return deg, tuple((k, c) for k, c in enumerate(poly[:-1]) if c)


def _reduce(vec: list[int], n: int) -> list[int]:
    """Reduce an integer polynomial in ``z`` modulo ``Phi_n(z)``; returns length ``phi(n)``."""
    deg, terms = _phi_terms(n)
    v = list(vec)
    if len(v) < deg:
        v.extend([0] * (deg - len(v)))
    for i in range(len(v) - 1, deg - 1, -1):
        c = v[i]
        if c:
            shift = i - deg
            for k, pk in terms:
                v[shift + k] -= c * pk
    return v[:deg]


@lru_cache(maxsize=None)
def _crt_zero_mod_p(n: int, p: int) -> tuple[int, ...]:
    """For ``n = p*m`` with ``gcd(p, m) = 1``: map ``j`` to ``j'`` with ``j' = j mod m`` and ``j' = 0 mod p``."""
    m = n // p
    inv = pow(m, -1, p)
    return tuple((j + m * ((-j * inv) % p)) % n for j in range(n))


# --------------------------------------------------------------------------
# roots of unity


class RootOfUnity:
    """``exp(2*pi*i*exponent)`` with the exponent a rational in ``[0, 1)``."""

    __slots__ = ("exponent",)

    def __init__(self, exponent: Fraction | int | str = 0) -> None:
        if isinstance(exponent, str):
            exponent = Fraction(exponent.strip())
        r = Fraction(exponent)
        object.__setattr__(self, "exponent", r - math.floor(r))

    def __setattr__(self, name, value):
        raise AttributeError("RootOfUnity is immutable")

    @classmethod
    def parse(cls, text: str) -> RootOfUnity:
        return cls(Fraction(text.strip()))

    @classmethod
    def from_power(cls, k: int, n: int) -> RootOfUnity:
        """``zeta_n ** k``."""
        return cls(Fraction(k, n))

    @property
    def order(self) -> int:
        return self.exponent.denominator

    def __mul__(self, other: RootOfUnity) -> RootOfUnity:
        if not isinstance(other, RootOfUnity):
            return NotImplemented
        return RootOfUnity(self.exponent + other.exponent)

    def __truediv__(self, other: RootOfUnity) -> RootOfUnity:
        if not isinstance(other, RootOfUnity):
            return NotImplemented
        return RootOfUnity(self.exponent - other.exponent)

    def __pow__(self, k: int) -> RootOfUnity:
        return RootOfUnity(self.exponent * k)

    def inverse(self) -> RootOfUnity:
        return RootOfUnity(-self.exponent)

    conjugate = inverse

    def is_one(self) -> bool:
        return self.exponent == 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RootOfUnity):
            return self.exponent == other.exponent
        if other == 1:
            return self.exponent == 0
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("RootOfUnity", self.exponent))

    def __lt__(self, other: RootOfUnity) -> bool:
        return self.exponent < other.exponent

    def __repr__(self) -> str:
        return f"RootOfUnity({str(self)!r})"

    def __str__(self) -> str:
        r = self.exponent
        return "0" if r == 0 else f"{r.numerator}/{r.denominator}"

    def __complex__(self) -> complex:
        return cmath.exp(2j * math.pi * float(self.exponent))

    def embed(self) -> CycNumber:
        return embed(self)

    def pretty(self) -> str:
        """Closed form for eighth roots of unity, ``exp(2πi·a/b)`` otherwise."""
        named = _EIGHTH_NAMES.get(self.exponent)
        if named is not None:
            return named
        return f"exp(2πi·{self})"


_EIGHTH_NAMES = {
    Fraction(0): "1",
    Fraction(1, 8): "(1+i)/√2",
    Fraction(1, 4): "i",
    Fraction(3, 8): "(-1+i)/√2",
    Fraction(1, 2): "-1",
    Fraction(5, 8): "(-1-i)/√2",
    Fraction(3, 4): "-i",
    Fraction(7, 8): "(1-i)/√2",
}


# --------------------------------------------------------------------------
# cyclotomic numbers


class CycNumber:
    """An element of a cyclotomic field, stored at its minimal conductor.

    The value is ``sum(num[j] * zeta_N**j for j) / den`` with ``den > 0`` and
    ``gcd(num..., den) == 1``.
    """

    __slots__ = ("conductor", "num", "den", "_complex")

    def __init__(self, conductor: int, num: Iterable[int], den: int = 1) -> None:
        # Public constructor accepts any power-basis vector (any length) and
        # canonicalizes it; internal code uses _canonical directly.
        n = int(conductor)
        if n < 1:
            raise ValueError("conductor must be positive")
        c = _canonical(n, _reduce(list(num), n), int(den))
        object.__setattr__(self, "conductor", c.conductor)
        object.__setattr__(self, "num", c.num)
        object.__setattr__(self, "den", c.den)
        object.__setattr__(self, "_complex", None)

    def __setattr__(self, name, value):
        raise AttributeError("CycNumber is immutable")

    @classmethod
    def _raw(cls, n: int, num: tuple[int, ...], den: int) -> CycNumber:
        self = object.__new__(cls)
        object.__setattr__(self, "conductor", n)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_complex", None)
        return self

    # constructors ---------------------------------------------------------

    @classmethod
    def rational(cls, value: int | Fraction) -> CycNumber:
        value = Fraction(value)
        return cls._raw(1, (value.numerator,), value.denominator)

    @classmethod
    def zero(cls) -> CycNumber:
        return cls._raw(1, (0,), 1)

    @classmethod
    def one(cls) -> CycNumber:
        return cls._raw(1, (1,), 1)

    @classmethod
    def from_powers(cls, n: int, counts: Mapping[int, int | Fraction], den: int = 1) -> CycNumber:
        """``sum(c * zeta_n**k for k, c in counts.items()) / den``; ``k`` taken mod ``n``."""
        fracs = [Fraction(c) for c in counts.values()]
        common = math.lcm(*(f.denominator for f in fracs)) if fracs else 1
        vec = [0] * n
        for k, c in counts.items():
            f = Fraction(c)
            vec[k % n] += f.numerator * (common // f.denominator)
        return _canonical(n, _reduce(vec, n), den * common)

    # predicates -------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.conductor == 1 and self.num[0] == 0

    def is_rational(self) -> bool:
        return self.conductor == 1

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    # arithmetic -------------------------------------------------------------

    def _coerce(self, other) -> CycNumber | None:
        if isinstance(other, CycNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return CycNumber.rational(other)
        if isinstance(other, RootOfUnity):
            return embed(other)
        return None

    def __add__(self, other) -> CycNumber:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = math.lcm(self.conductor, o.conductor)
        a = _lift(self, n)
        b = _lift(o, n)
        vec = [x * o.den + y * self.den for x, y in zip(a, b)]
        return _canonical(n, _reduce(vec, n), self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> CycNumber:
        return CycNumber._raw(self.conductor, tuple(-x for x in self.num), self.den)

    def __sub__(self, other) -> CycNumber:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> CycNumber:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> CycNumber:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_rational():
            f = o.num[0]
            return _canonical(self.conductor, [x * f for x in self.num], self.den * o.den)
        if self.is_rational():
            return o * self
        n = math.lcm(self.conductor, o.conductor)
        a = _lift(self, n)
        b = _lift(o, n)
        prod = [0] * n
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[(i + j) % n] += x * y
        return _canonical(n, _reduce(prod, n), self.den * o.den)

    __rmul__ = __mul__

    def galois(self, k: int) -> CycNumber:
        """Apply the automorphism ``zeta_N -> zeta_N**k`` (``k`` coprime to ``N``)."""
        n = self.conductor
        if math.gcd(k, n) != 1:
            raise ValueError(f"{k} is not a unit modulo {n}")
        vec = [0] * n
        for j, x in enumerate(self.num):
            if x:
                vec[(j * k) % n] += x
        return _canonical(n, _reduce(vec, n), self.den)

    def conjugate(self) -> CycNumber:
        return self.galois(-1 % self.conductor if self.conductor > 1 else 1)

    def norm(self) -> Fraction:
        """Field norm from ``Q(zeta_N)`` down to ``Q`` (``N`` the minimal conductor)."""
        n = self.conductor
        acc = CycNumber.one()
        for k in range(1, n + 1):
            if math.gcd(k, n) == 1:
                acc = acc * self.galois(k)
        return acc.to_fraction()

    def inverse(self) -> CycNumber:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return CycNumber.rational(1 / self.to_fraction())
        n = self.conductor
        others = CycNumber.one()
        for k in range(2, n + 1):
            if math.gcd(k, n) == 1:
                others = others * self.galois(k)
        nrm = (others * self).to_fraction()
        return others * (1 / nrm)

    def __truediv__(self, other) -> CycNumber:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> CycNumber:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> CycNumber:
        if k < 0:
            return self.inverse() ** (-k)
        result = CycNumber.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison and display -------------------------------------------------

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.conductor == o.conductor and self.den == o.den and self.num == o.num

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(Fraction(self.num[0], self.den))
        return hash((self.conductor, self.num, self.den))

    def __complex__(self) -> complex:
        if self._complex is None:
            n = self.conductor
            z = sum(x * cmath.exp(2j * math.pi * j / n) for j, x in enumerate(self.num) if x)
            object.__setattr__(self, "_complex", complex(z) / self.den)
        return self._complex

    def __repr__(self) -> str:
        return f"CycNumber({self.conductor}, {list(self.num)}, {self.den})"

    def __str__(self) -> str:
        if self.is_rational():
            return str(Fraction(self.num[0], self.den))
        terms = []
        for j, x in enumerate(self.num):
            if not x:
                continue
            mono = "1" if j == 0 else f"ζ{self.conductor}" + (f"^{j}" if j > 1 else "")
            if mono == "1":
                t = str(abs(x))
            elif abs(x) == 1:
                t = mono
            else:
                t = f"{abs(x)}*{mono}"
            terms.append(("-" if x < 0 else "+", t))
        body = " ".join(f"{s} {t}" for s, t in terms)
        body = body[2:] if body.startswith("+ ") else "-" + body[2:]
        return body if self.den == 1 else f"({body})/{self.den}"

    def approx(self, digits: int = 6) -> str:
        z = complex(self)
        re = round(z.real, digits) + 0.0
        im = round(z.imag, digits) + 0.0
        if im == 0:
            return f"{re:.{digits}g}"
        return f"{re:.{digits}g}{im:+.{digits}g}i"

    def to_json(self) -> dict:
        return {
            "conductor": self.conductor,
            "coeffs": [str(Fraction(x, self.den)) for x in self.num],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> CycNumber:
        coeffs = [Fraction(c) for c in data["coeffs"]]
        return cls.from_powers(int(data["conductor"]), dict(enumerate(coeffs)))


def _lift(x: CycNumber, n: int) -> list[int]:
    """Power-basis coefficients of ``x`` at conductor ``n`` (a multiple of ``x.conductor``), unreduced."""
    if x.conductor == n:
        return list(x.num) + [0] * (n - len(x.num))
    step = n // x.conductor
    vec = [0] * n
    for j, c in enumerate(x.num):
        if c:
            vec[j * step] += c
    return _reduce(vec, n) + [0] * (n - _totient(n))


def _canonical(n: int, vec: list[int], den: int) -> CycNumber:
    """Normalize a reduced vector: gcd, sign of denominator, minimal conductor."""
    if den < 0:
        vec = [-x for x in vec]
        den = -den
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    while True:
        g = math.gcd(den, *vec)
        if g > 1:
            vec = [x // g for x in vec]
            den //= g
        if not any(vec):
            return CycNumber._raw(1, (0,), 1)
        smaller = _descend(n, vec)
        if smaller is None:
            return CycNumber._raw(n, tuple(vec), den)
        n, vec, scale = smaller
        den *= scale


def _descend(n: int, vec: list[int]) -> tuple[int, list[int], int] | None:
    """Try to rewrite ``vec`` (reduced, conductor ``n``) over a proper subfield.

    Returns ``(m, new_vec, extra_denominator)`` or ``None`` when no prime step applies.
    """
    if n % 4 == 2:
        m = n // 2
        # zeta_{2m} = -zeta_m^{(m+1)/2} for odd m
        half = (m + 1) // 2
        out = [0] * m
        for j, c in enumerate(vec):
            if c:
                out[(j * half) % m] += -c if j % 2 else c
        return m, _reduce(out, m), 1
    for p, e in factorize(n):
        if e >= 2:
            if all(c == 0 for j, c in enumerate(vec) if j % p):
                m = n // p
                out = [vec[j] for j in range(0, len(vec), p)]
                return m, _reduce(out, m), 1
        else:
            m = n // p
            crt = _crt_zero_mod_p(n, p)
            trace = [0] * n
            for j, c in enumerate(vec):
                if c:
                    if j % p == 0:
                        trace[j] += (p - 1) * c
                    else:
                        trace[crt[j]] -= c
            if _reduce(trace, n) == [(p - 1) * c for c in vec]:
                out = [0] * m
                for j, c in enumerate(trace):
                    if c:
                        out[(j // p) % m] += c
                return m, _reduce(out, m), p - 1
    return None


# --------------------------------------------------------------------------
# module-level operations


def embed(z: RootOfUnity) -> CycNumber:
    """The field element ``exp(2*pi*i*r)`` in ``Q(zeta_d)``, ``d`` the denominator of ``r``."""
    r = z.exponent
    return CycNumber.from_powers(r.denominator, {r.numerator: 1})


def conjugate(a: CycNumber) -> CycNumber:
    return a.conjugate()


def is_root_of_unity(a: CycNumber) -> RootOfUnity | None:
    """Return ``r`` with ``a == exp(2*pi*i*r)``, or ``None``.

    The roots of unity in ``Q(zeta_N)`` are the ``M``-th roots with
    ``M = lcm(2, N)``.  A numerical angle proposes a candidate which is then
    checked exactly; if the candidate fails every ``M``-th root is tried.
    """
    if a.is_zero():
        return None
    m = math.lcm(2, a.conductor)
    z = complex(a)
    if abs(abs(z) - 1.0) < 1e-6:
        k = round(cmath.phase(z) * m / (2 * math.pi)) % m
        cand = RootOfUnity(Fraction(k, m))
        if embed(cand) == a:
            return cand
    for k in range(m):
        cand = RootOfUnity(Fraction(k, m))
        if embed(cand) == a:
            return cand
    return None


@lru_cache(maxsize=None)
def _sqrt_prime(p: int) -> CycNumber:
    if p == 2:
        return embed(RootOfUnity(Fraction(1, 8))) + embed(RootOfUnity(Fraction(7, 8)))
    # quadratic Gauss sum g = sum (a/p) zeta_p^a equals sqrt(p) or i*sqrt(p)
    counts = {a: _legendre(a, p) for a in range(1, p)}
    g = CycNumber.from_powers(p, counts)
    if p % 4 == 1:
        root = g
    else:
        root = g * embed(RootOfUnity(Fraction(3, 4)))
    assert root * root == p
    assert complex(root).real > 0
    return root


def _legendre(a: int, p: int) -> int:
    r = pow(a, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


@lru_cache(maxsize=None)
def sqrt_int(n: int) -> CycNumber:
    """The positive square root of a positive integer as a cyclotomic number."""
    if n < 1:
        raise ValueError(f"sqrt_int needs a positive integer, got {n}")
    outside = 1
    root = CycNumber.one()
    for p, e in factorize(n):
        outside *= p ** (e // 2)
        if e % 2:
            root = root * _sqrt_prime(p)
    return root * outside
