"""Noncommutative algebra of differential operators with polynomial coefficients.

Generators are position symbols ``x_1..x_m`` and derivative symbols
``D_1..D_m`` subject to ``[D_i, x_j] = delta_ij``; scalars (rationals, ``i``
and ``hbar``) are central.  Every operator is stored in normal form: within
each word all position symbols precede all derivative symbols, so equality
is a dictionary comparison.

One engine serves two realisations:

* configuration space (``phase_space=False``, m = n positions q_1..q_n),
  where the canonical pair is q_hat = multiplication and
  p_hat = -i*hbar*D — this yields [q_hat, p_hat] = i*hbar;
* phase space (``phase_space=True``, m = 2n positions q_1..q_n, p_1..p_n),
  used by the prequantisation map, where all 2n coordinates act by
  multiplication and there are 2n derivative symbols.

Products are normal-ordered through the closed-form contraction

    D^b x^c = sum_k  C(b,k) C(c,k) k!  x^(c-k) D^(b-k)

(per variable; distinct indices commute), which is the unique normal form
reachable by iterating the rewrite  D x -> x D + 1.  A randomised
single-step rewriter in the test-suite confirms confluence against this
closed form.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Mapping, Union

from .algebra import CoeffLike, GaussRational, HbarPoly, _coerce_hbar

Word = tuple  # (alpha, beta): position exponents, derivative exponents


class WeylOp:
    """A normal-ordered operator polynomial."""

    __slots__ = ("n", "phase_space", "terms")

    def __init__(self, n: int, phase_space: bool, terms: Mapping[Word, HbarPoly]):
        if n < 1:
            raise ValueError("need at least one degree of freedom")
        m = 2 * n if phase_space else n
        pruned = {}
        for (alpha, beta), c in terms.items():
            if len(alpha) != m or len(beta) != m:
                raise ValueError(f"bad word ({alpha}, {beta}) for m={m}")
            if any(e < 0 for e in alpha) or any(e < 0 for e in beta):
                raise ValueError("negative exponent in word")
            if not c.is_zero():
                pruned[(tuple(alpha), tuple(beta))] = c
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "phase_space", bool(phase_space))
        object.__setattr__(self, "terms", pruned)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("WeylOp is immutable")

    @property
    def m(self) -> int:
        """Number of position symbols."""
        return 2 * self.n if self.phase_space else self.n

    # ---- constructors -------------------------------------------------

    @staticmethod
    def zero(n: int, phase_space: bool = False) -> "WeylOp":
        return WeylOp(n, phase_space, {})

    @staticmethod
    def scalar(n: int, c: CoeffLike, phase_space: bool = False) -> "WeylOp":
        m = 2 * n if phase_space else n
        z = (0,) * m
        return WeylOp(n, phase_space, {(z, z): _coerce_hbar(c)})

    @staticmethod
    def identity(n: int, phase_space: bool = False) -> "WeylOp":
        return WeylOp.scalar(n, 1, phase_space)

    @staticmethod
    def position(j: int, n: int, phase_space: bool = False) -> "WeylOp":
        """Multiplication by the j-th position symbol (zero-based)."""
        m = 2 * n if phase_space else n
        if not 0 <= j < m:
            raise IndexError(f"position index {j} out of range for m={m}")
        alpha = [0] * m
        alpha[j] = 1
        return WeylOp(n, phase_space, {(tuple(alpha), (0,) * m): HbarPoly.one()})

    @staticmethod
    def derivative(j: int, n: int, phase_space: bool = False) -> "WeylOp":
        """The j-th derivative symbol (zero-based)."""
        m = 2 * n if phase_space else n
        if not 0 <= j < m:
            raise IndexError(f"derivative index {j} out of range for m={m}")
        beta = [0] * m
        beta[j] = 1
        return WeylOp(n, phase_space, {((0,) * m, tuple(beta)): HbarPoly.one()})

    @staticmethod
    def q_hat(i: int, n: int) -> "WeylOp":
        """Schroedinger position operator: multiplication by q_i."""
        return WeylOp.position(i, n, phase_space=False)

    @staticmethod
    def p_hat(i: int, n: int) -> "WeylOp":
        """Schroedinger momentum operator: -i*hbar * d/dq_i."""
        return WeylOp.derivative(i, n, phase_space=False).scale(
            HbarPoly.hbar(1, GaussRational.of(0, -1))
        )

    # ---- queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def max_derivative_order(self) -> int:
        """Largest derivative word length (order as a differential operator)."""
        return max((sum(beta) for _, beta in self.terms), default=-1)

    def _check_compatible(self, other: "WeylOp") -> None:
        if self.n != other.n or self.phase_space != other.phase_space:
            raise ValueError(
                "operator realisation mismatch: "
                f"(n={self.n}, phase_space={self.phase_space}) vs "
                f"(n={other.n}, phase_space={other.phase_space})"
            )

    # ---- linear structure ------------------------------------------------

    def __add__(self, other: "WeylOp") -> "WeylOp":
        self._check_compatible(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, HbarPoly.zero()) + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return WeylOp(self.n, self.phase_space, out)

    def __neg__(self) -> "WeylOp":
        return WeylOp(
            self.n, self.phase_space, {w: -c for w, c in self.terms.items()}
        )

    def __sub__(self, other: "WeylOp") -> "WeylOp":
        return self + (-other)

    def scale(self, c: CoeffLike) -> "WeylOp":
        h = _coerce_hbar(c)
        if h.is_zero():
            return WeylOp.zero(self.n, self.phase_space)
        return WeylOp(
            self.n, self.phase_space, {w: v * h for w, v in self.terms.items()}
        )

    def __rmul__(self, other: CoeffLike) -> "WeylOp":
        return self.scale(other)

    # ---- multiplication ---------------------------------------------------

    def __mul__(self, other: Union["WeylOp", CoeffLike]) -> "WeylOp":
        if not isinstance(other, WeylOp):
            return self.scale(other)
        self._check_compatible(other)
        m = self.m
        out: dict[Word, HbarPoly] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                base = c1 * c2
                # contract D^b1 against x^a2 variable by variable
                for word, mult in _contractions(b1, a2, m):
                    alpha = tuple(x + y for x, y in zip(a1, word[0]))
                    beta = tuple(x + y for x, y in zip(word[1], b2))
                    key = (alpha, beta)
                    s = out.get(key, HbarPoly.zero()) + base.scale(mult)
                    if s.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = s
        return WeylOp(self.n, self.phase_space, out)

    def __pow__(self, k: int) -> "WeylOp":
        if k < 0:
            raise ValueError("negative powers are not defined")
        out = WeylOp.identity(self.n, self.phase_space)
        for _ in range(k):
            out = out * self
        return out

    # ---- involution ---------------------------------------------------------

    def adjoint(self) -> "WeylOp":
        """Formal adjoint: x self-adjoint, D anti-self-adjoint, i -> -i.

        Word order reverses, so each normal-ordered term x^a D^b maps to
        (-1)^|b| D^b x^a, which is then re-normal-ordered.
        """
        out = WeylOp.zero(self.n, self.phase_space)
        m = self.m
        zero = (0,) * m
        for (alpha, beta), c in self.terms.items():
            sign = -1 if sum(beta) % 2 else 1
            coeff = c.conjugate().scale(sign)
            dpart = WeylOp(self.n, self.phase_space, {(zero, beta): HbarPoly.one()})
            xpart = WeylOp(self.n, self.phase_space, {(alpha, zero): coeff})
            out = out + dpart * xpart
        return out

    def symmetrise(self) -> "WeylOp":
        """(a + adjoint(a)) / 2; always adjoint-fixed."""
        return (self + self.adjoint()).scale(Fraction(1, 2))

    def is_symmetric(self) -> bool:
        return self.adjoint() == self

    # ---- scalar division -------------------------------------------------------

    def div_i_hbar(self) -> "WeylOp":
        """Exact division by i*hbar; raises ExactDivisionError if impossible."""
        return WeylOp(
            self.n,
            self.phase_space,
            {w: c.div_i_hbar() for w, c in self.terms.items()},
        )

    def times_i_hbar(self) -> "WeylOp":
        return self.scale(HbarPoly.hbar(1, GaussRational.i()))

    def substitute_hbar(self, hbar) -> "WeylOp":
        """Collapse the formal hbar to a rational value."""
        return WeylOp(
            self.n,
            self.phase_space,
            {w: HbarPoly.scalar(c.substitute(hbar)) for w, c in self.terms.items()},
        )

    # ---- identity -----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, WeylOp)
            and self.n == other.n
            and self.phase_space == other.phase_space
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.n, self.phase_space, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return (
            f"WeylOp(n={self.n}, phase_space={self.phase_space}, "
            f"terms={self.terms!r})"
        )


def _contractions(b: tuple, a: tuple, m: int):
    """All normal-ordered words from moving D^b across x^a, with multiplicities.

    Yields ((alpha, beta), multiplicity) where alpha = a - k, beta = b - k
    over all contraction vectors 0 <= k <= min(a, b) componentwise.
    """
    words = [((), (), 1)]
    for j in range(m):
        extended = []
        for alpha, beta, mult in words:
            for k in range(min(a[j], b[j]) + 1):
                factor = comb(b[j], k) * comb(a[j], k) * factorial(k)
                extended.append((alpha + (a[j] - k,), beta + (b[j] - k,), mult * factor))
        words = extended
    for alpha, beta, mult in words:
        yield (alpha, beta), mult


def weyl_mul(a: WeylOp, b: WeylOp) -> WeylOp:
    """Normal-ordered product; associative."""
    return a * b


def weyl_commutator(a: WeylOp, b: WeylOp) -> WeylOp:
    """Exact commutator a*b - b*a."""
    return a * b - b * a


def weyl_adjoint(a: WeylOp) -> WeylOp:
    """Formal adjoint; a is symmetric iff weyl_adjoint(a) == a."""
    return a.adjoint()


def weyl_symmetrise(a: WeylOp) -> WeylOp:
    return a.symmetrise()


def check_sl2_triple(h: WeylOp, e_plus: WeylOp, e_minus: WeylOp) -> bool:
    """True iff [e+, e-] = i*hbar*h and [h, e+-] = +-2 i*hbar*e+-.

    The relations are compared after multiplying through by i*hbar, which
    avoids spurious divisibility failures for operators that do not carry
    an overall hbar.
    """
    h._check_compatible(e_plus)
    h._check_compatible(e_minus)
    if weyl_commutator(e_plus, e_minus) != h.times_i_hbar():
        return False
    if weyl_commutator(h, e_plus) != e_plus.times_i_hbar().scale(2):
        return False
    if weyl_commutator(h, e_minus) != e_minus.times_i_hbar().scale(-2):
        return False
    return True
