"""Exact coefficient arithmetic and commutative phase-space polynomials.

Three layers, each built on the one below:

* ``GaussRational`` -- complex numbers ``re + im*i`` with arbitrary-precision
  rational parts.  Every identity downstream is bit-exact because nothing is
  ever rounded.
* ``HbarPoly`` -- polynomials in the central formal symbol ``hbar`` with
  GaussRational coefficients.  Only nonnegative powers occur.
* ``PhasePoly`` -- commutative polynomials in the coordinates
  ``q1..qn, p1..pn`` with HbarPoly coefficients, stored in canonical form
  (no zero terms, one entry per exponent vector).

All values are immutable after construction and all operations are pure, so
everything here is safe to share between threads without locks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence, Union

RatLike = Union[int, Fraction]
ScalarLike = Union[int, Fraction, "GaussRational", "HbarPoly"]


class ExactDivisionError(ArithmeticError):
    """Raised when an exact division (e.g. by ``i*hbar``) is impossible."""


def _as_fraction(x: RatLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


@dataclass(frozen=True)
class GaussRational:
    """A Gaussian rational ``re + im*i``, always in lowest terms.

    ``Fraction`` keeps each part reduced, so equality is exact and hashing
    is stable.  Conjugation flips the sign of ``im`` and is an involution.
    """

    re: Fraction
    im: Fraction

    @staticmethod
    def of(re: RatLike = 0, im: RatLike = 0) -> "GaussRational":
        return GaussRational(_as_fraction(re), _as_fraction(im))

    @staticmethod
    def zero() -> "GaussRational":
        return _GR_ZERO

    @staticmethod
    def one() -> "GaussRational":
        return _GR_ONE

    @staticmethod
    def i() -> "GaussRational":
        return _GR_I

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def conjugate(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def __add__(self, other: "GaussRational") -> "GaussRational":
        return GaussRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussRational") -> "GaussRational":
        return GaussRational(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussRational":
        return GaussRational(-self.re, -self.im)

    def __mul__(self, other: "GaussRational") -> "GaussRational":
        return GaussRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other: "GaussRational") -> "GaussRational":
        norm = other.re * other.re + other.im * other.im
        if not norm:
            raise ZeroDivisionError("division by zero GaussRational")
        return GaussRational(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"GaussRational({self.re!r}, {self.im!r})"


_GR_ZERO = GaussRational(Fraction(0), Fraction(0))
_GR_ONE = GaussRational(Fraction(1), Fraction(0))
_GR_I = GaussRational(Fraction(0), Fraction(1))


def _coerce_gauss(x: Union[int, Fraction, GaussRational]) -> GaussRational:
    if isinstance(x, GaussRational):
        return x
    return GaussRational.of(x)


class HbarPoly:
    """Polynomial in the formal central symbol ``hbar``.

    Terms are kept as a map ``exponent -> GaussRational`` with no zero
    coefficients, so two values are equal iff their maps coincide.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, GaussRational]):
        pruned = {}
        for k, c in coeffs.items():
            if k < 0:
                raise ValueError("hbar exponents must be nonnegative")
            if not c.is_zero():
                pruned[k] = c
        object.__setattr__(self, "coeffs", pruned)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("HbarPoly is immutable")

    @staticmethod
    def zero() -> "HbarPoly":
        return HbarPoly({})

    @staticmethod
    def one() -> "HbarPoly":
        return HbarPoly({0: GaussRational.one()})

    @staticmethod
    def scalar(c: Union[int, Fraction, GaussRational]) -> "HbarPoly":
        return HbarPoly({0: _coerce_gauss(c)})

    @staticmethod
    def hbar(power: int = 1, coeff: Union[int, Fraction, GaussRational] = 1) -> "HbarPoly":
        return HbarPoly({power: _coerce_gauss(coeff)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree in hbar; -1 for the zero polynomial."""
        return max(self.coeffs) if self.coeffs else -1

    def is_real(self) -> bool:
        return all(c.is_real() for c in self.coeffs.values())

    def conjugate(self) -> "HbarPoly":
        return HbarPoly({k: c.conjugate() for k, c in self.coeffs.items()})

    def __add__(self, other: "HbarPoly") -> "HbarPoly":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = out.get(k, _GR_ZERO) + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return HbarPoly(out)

    def __neg__(self) -> "HbarPoly":
        return HbarPoly({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: "HbarPoly") -> "HbarPoly":
        return self + (-other)

    def __mul__(self, other: "HbarPoly") -> "HbarPoly":
        out: dict[int, GaussRational] = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = k1 + k2
                s = out.get(k, _GR_ZERO) + c1 * c2
                if s.is_zero():
                    out.pop(k, None)
                else:
                    out[k] = s
        return HbarPoly(out)

    def scale(self, c: Union[int, Fraction, GaussRational]) -> "HbarPoly":
        g = _coerce_gauss(c)
        if g.is_zero():
            return HbarPoly.zero()
        return HbarPoly({k: v * g for k, v in self.coeffs.items()})

    def div_i_hbar(self) -> "HbarPoly":
        """Exact division by the monomial ``i*hbar``.

        Raises ExactDivisionError if a term of hbar-degree zero survives,
        i.e. the operand is not a multiple of hbar.
        """
        if 0 in self.coeffs:
            raise ExactDivisionError("not divisible by hbar")
        minus_i = GaussRational.of(0, -1)  # 1/i == -i
        return HbarPoly({k - 1: c * minus_i for k, c in self.coeffs.items()})

    def substitute(self, hbar: RatLike) -> GaussRational:
        h = _as_fraction(hbar)
        total = _GR_ZERO
        for k, c in self.coeffs.items():
            total = total + c * GaussRational.of(h**k)
        return total

    def __eq__(self, other: object) -> bool:
        return isinstance(other, HbarPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self) -> str:
        return f"HbarPoly({self.coeffs!r})"


_HB_ONE = HbarPoly.one()

CoeffLike = Union[int, Fraction, GaussRational, HbarPoly]


def _coerce_hbar(c: CoeffLike) -> HbarPoly:
    if isinstance(c, HbarPoly):
        return c
    return HbarPoly.scalar(c)


ExpVec = tuple  # exponent vector (a_1..a_n, b_1..b_n) for q^a p^b


class PhasePoly:
    """Commutative polynomial on 2n-dimensional flat phase space.

    ``terms`` maps exponent vectors ``(a_1..a_n, b_1..b_n)`` -- meaning
    ``q^a * p^b`` -- to HbarPoly coefficients.  Canonical form holds by
    construction: exponent vectors are unique and no coefficient is zero.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[ExpVec, HbarPoly]):
        if n < 1:
            raise ValueError("need at least one degree of freedom")
        pruned = {}
        for ev, c in terms.items():
            if len(ev) != 2 * n or any(e < 0 for e in ev):
                raise ValueError(f"bad exponent vector {ev} for n={n}")
            if not c.is_zero():
                pruned[tuple(ev)] = c
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", pruned)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("PhasePoly is immutable")

    # ---- constructors -------------------------------------------------

    @staticmethod
    def zero(n: int) -> "PhasePoly":
        return PhasePoly(n, {})

    @staticmethod
    def constant(n: int, c: CoeffLike) -> "PhasePoly":
        return PhasePoly(n, {(0,) * (2 * n): _coerce_hbar(c)})

    @staticmethod
    def one(n: int) -> "PhasePoly":
        return PhasePoly.constant(n, 1)

    @staticmethod
    def q(i: int, n: int) -> "PhasePoly":
        """The coordinate function q_i (zero-based index)."""
        if not 0 <= i < n:
            raise IndexError(f"q index {i} out of range for n={n}")
        ev = [0] * (2 * n)
        ev[i] = 1
        return PhasePoly(n, {tuple(ev): _HB_ONE})

    @staticmethod
    def p(i: int, n: int) -> "PhasePoly":
        """The momentum function p_i (zero-based index)."""
        if not 0 <= i < n:
            raise IndexError(f"p index {i} out of range for n={n}")
        ev = [0] * (2 * n)
        ev[n + i] = 1
        return PhasePoly(n, {tuple(ev): _HB_ONE})

    @staticmethod
    def monomial(n: int, ev: Sequence[int], coeff: CoeffLike = 1) -> "PhasePoly":
        return PhasePoly(n, {tuple(ev): _coerce_hbar(coeff)})

    # ---- queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree in (q, p); -1 for the zero polynomial."""
        return max((sum(ev) for ev in self.terms), default=-1)

    def is_real(self) -> bool:
        return all(c.is_real() for c in self.terms.values())

    def is_hbar_free(self) -> bool:
        return all(c.degree() <= 0 for c in self.terms.values())

    def constant_coefficient(self) -> HbarPoly:
        return self.terms.get((0,) * (2 * self.n), HbarPoly.zero())

    # ---- ring operations ------------------------------------------------

    def _check_same_space(self, other: "PhasePoly") -> None:
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: n={self.n} vs n={other.n}")

    def __add__(self, other: "PhasePoly") -> "PhasePoly":
        self._check_same_space(other)
        out = dict(self.terms)
        for ev, c in other.terms.items():
            s = out.get(ev, HbarPoly.zero()) + c
            if s.is_zero():
                out.pop(ev, None)
            else:
                out[ev] = s
        return PhasePoly(self.n, out)

    def __neg__(self) -> "PhasePoly":
        return PhasePoly(self.n, {ev: -c for ev, c in self.terms.items()})

    def __sub__(self, other: "PhasePoly") -> "PhasePoly":
        return self + (-other)

    def __mul__(self, other: Union["PhasePoly", CoeffLike]) -> "PhasePoly":
        if not isinstance(other, PhasePoly):
            return self.scale(other)
        self._check_same_space(other)
        out: dict[ExpVec, HbarPoly] = {}
        for ev1, c1 in self.terms.items():
            for ev2, c2 in other.terms.items():
                ev = tuple(a + b for a, b in zip(ev1, ev2))
                s = out.get(ev, HbarPoly.zero()) + c1 * c2
                if s.is_zero():
                    out.pop(ev, None)
                else:
                    out[ev] = s
        return PhasePoly(self.n, out)

    def __rmul__(self, other: CoeffLike) -> "PhasePoly":
        return self.scale(other)

    def scale(self, c: CoeffLike) -> "PhasePoly":
        h = _coerce_hbar(c)
        if h.is_zero():
            return PhasePoly.zero(self.n)
        return PhasePoly(self.n, {ev: v * h for ev, v in self.terms.items()})

    def __pow__(self, k: int) -> "PhasePoly":
        if k < 0:
            raise ValueError("negative powers are not defined")
        out = PhasePoly.one(self.n)
        for _ in range(k):
            out = out * self
        return out

    # ---- calculus -------------------------------------------------------

    def diff(self, slot: int) -> "PhasePoly":
        """Partial derivative along exponent slot 0..2n-1 (q's first)."""
        out: dict[ExpVec, HbarPoly] = {}
        for ev, c in self.terms.items():
            e = ev[slot]
            if e == 0:
                continue
            new = list(ev)
            new[slot] = e - 1
            key = tuple(new)
            s = out.get(key, HbarPoly.zero()) + c.scale(e)
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return PhasePoly(self.n, out)

    def diff_q(self, i: int) -> "PhasePoly":
        return self.diff(i)

    def diff_p(self, i: int) -> "PhasePoly":
        return self.diff(self.n + i)

    def evaluate(self, point: Sequence[RatLike], hbar: RatLike = 0) -> GaussRational:
        """Exact value at a rational point ``(q_1..q_n, p_1..p_n)``."""
        if len(point) != 2 * self.n:
            raise ValueError(f"point length {len(point)} != 2n = {2 * self.n}")
        coords = [_as_fraction(x) for x in point]
        total = _GR_ZERO
        for ev, c in self.terms.items():
            mono = Fraction(1)
            for x, e in zip(coords, ev):
                if e:
                    mono *= x**e
            total = total + c.substitute(hbar) * GaussRational.of(mono)
        return total

    def substitute(self, slot: int, replacement: "PhasePoly") -> "PhasePoly":
        """Replace the coordinate in ``slot`` by a polynomial (exact)."""
        self._check_same_space(replacement)
        out = PhasePoly.zero(self.n)
        powers: dict[int, PhasePoly] = {0: PhasePoly.one(self.n)}
        for ev, c in self.terms.items():
            e = ev[slot]
            if e not in powers:
                powers[e] = replacement**e
            rest = list(ev)
            rest[slot] = 0
            out = out + PhasePoly.monomial(self.n, rest, c) * powers[e]
        return out

    def as_real_function(self, hbar: float = 0.0) -> Callable[[Sequence[float]], float]:
        """Compile to a float-valued callable for numeric work.

        Requires real coefficients; hbar enters as a plain number.
        """
        if not self.is_real():
            raise ValueError("polynomial has nonreal coefficients")
        compiled = []
        for ev, c in self.terms.items():
            coeff = sum(float(g.re) * hbar**k for k, g in c.coeffs.items())
            compiled.append((coeff, tuple((slot, e) for slot, e in enumerate(ev) if e)))

        def fn(z: Sequence[float]) -> float:
            total = 0.0
            for coeff, exps in compiled:
                v = coeff
                for slot, e in exps:
                    v *= z[slot] ** e
                total += v
            return total

        return fn

    # ---- identity -------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PhasePoly)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"PhasePoly(n={self.n}, terms={self.terms!r})"


def poly_add(a: PhasePoly, b: PhasePoly) -> PhasePoly:
    """Exact sum in canonical form."""
    return a + b


def poly_mul(a: PhasePoly, b: PhasePoly) -> PhasePoly:
    """Exact product; degrees add for nonzero inputs."""
    return a * b


def poly_eval(a: PhasePoly, point: Sequence[RatLike], hbar: RatLike = 0) -> GaussRational:
    """Exact evaluation at a rational point with hbar substituted."""
    return a.evaluate(point, hbar)


def grlex_key(ev: Iterable[int]) -> tuple:
    """Sort key realising the graded-lex term order used for printing.

    Higher total degree first; ties broken lexicographically with earlier
    slots dominating (so ``q^2`` prints before ``q*p`` before ``p^2``).
    """
    t = tuple(ev)
    return (-sum(t), tuple(-e for e in t))
