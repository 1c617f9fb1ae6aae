"""Poisson algebra on polynomial phase-space functions.

Conventions, fixed once for the whole package:

* bracket(f, g) = sum_i (df/dq_i dg/dp_i - df/dp_i dg/dq_i)
* hamiltonian_field(f) = (df/dp_i) d/dq_i - (df/dq_i) d/dp_i, so that the
  flow equations read  dq/dt = df/dp,  dp/dt = -df/dq.

With this pair of conventions the directional derivative satisfies
``field_apply(hamiltonian_field(f), g) == bracket(g, f)`` and the map
``f -> X_f`` intertwines brackets with the order swapped:
``field_commutator(X_f, X_g) == hamiltonian_field(bracket(g, f))``.
Both identities are exact and verified by the law suites.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .algebra import PhasePoly


class Subalgebra(Enum):
    """Named Lie subalgebras of the polynomial functions."""

    POL = "pol"                # all polynomials
    POL1 = "pol1"              # span{1, q_i, p_i}
    POL2 = "pol2"              # total degree <= 2
    POL_INF_1 = "pol_inf_1"    # g(q) + sum_i h_i(q) p_i


@dataclass(frozen=True)
class HamiltonianField:
    """A vector field with polynomial coefficients in Darboux coordinates.

    ``coeff_q[i]`` multiplies d/dq_i and ``coeff_p[i]`` multiplies d/dp_i.
    Fields produced by :func:`hamiltonian_field` carry coeff_q[i] = df/dp_i
    and coeff_p[i] = -df/dq_i; the type also holds general commutators of
    such fields.
    """

    n: int
    coeff_q: tuple
    coeff_p: tuple

    def __post_init__(self):
        if len(self.coeff_q) != self.n or len(self.coeff_p) != self.n:
            raise ValueError("coefficient arrays must have length n")

    @staticmethod
    def zero(n: int) -> "HamiltonianField":
        z = tuple(PhasePoly.zero(n) for _ in range(n))
        return HamiltonianField(n, z, z)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeff_q + self.coeff_p)

    def __add__(self, other: "HamiltonianField") -> "HamiltonianField":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        return HamiltonianField(
            self.n,
            tuple(a + b for a, b in zip(self.coeff_q, other.coeff_q)),
            tuple(a + b for a, b in zip(self.coeff_p, other.coeff_p)),
        )

    def __neg__(self) -> "HamiltonianField":
        return HamiltonianField(
            self.n,
            tuple(-a for a in self.coeff_q),
            tuple(-a for a in self.coeff_p),
        )

    def __sub__(self, other: "HamiltonianField") -> "HamiltonianField":
        return self + (-other)


def bracket(f: PhasePoly, g: PhasePoly) -> PhasePoly:
    """Canonical Poisson bracket, exact."""
    if f.n != g.n:
        raise ValueError(f"dimension mismatch: n={f.n} vs n={g.n}")
    out = PhasePoly.zero(f.n)
    for i in range(f.n):
        out = out + f.diff_q(i) * g.diff_p(i) - f.diff_p(i) * g.diff_q(i)
    return out


def hamiltonian_field(f: PhasePoly) -> HamiltonianField:
    """Symbolic Hamiltonian vector field of f; constants map to zero."""
    return HamiltonianField(
        f.n,
        tuple(f.diff_p(i) for i in range(f.n)),
        tuple(-f.diff_q(i) for i in range(f.n)),
    )


def field_apply(X: HamiltonianField, g: PhasePoly) -> PhasePoly:
    """Directional derivative X(g); equals bracket(g, f) when X = X_f."""
    if X.n != g.n:
        raise ValueError(f"dimension mismatch: n={X.n} vs n={g.n}")
    out = PhasePoly.zero(g.n)
    for i in range(g.n):
        out = out + X.coeff_q[i] * g.diff_q(i) + X.coeff_p[i] * g.diff_p(i)
    return out


def _apply_to_component(X: HamiltonianField, c: PhasePoly) -> PhasePoly:
    return field_apply(X, c)


def field_commutator(X: HamiltonianField, Y: HamiltonianField) -> HamiltonianField:
    """Lie bracket [X, Y] of polynomial vector fields.

    For Hamiltonian fields this equals hamiltonian_field(bracket(g, f))
    when X = X_f, Y = X_g (note the order swap; see module docstring).
    """
    if X.n != Y.n:
        raise ValueError("dimension mismatch")
    cq = tuple(
        _apply_to_component(X, Y.coeff_q[i]) - _apply_to_component(Y, X.coeff_q[i])
        for i in range(X.n)
    )
    cp = tuple(
        _apply_to_component(X, Y.coeff_p[i]) - _apply_to_component(Y, X.coeff_p[i])
        for i in range(X.n)
    )
    return HamiltonianField(X.n, cq, cp)


def subalgebra_member(f: PhasePoly, tag: Subalgebra) -> bool:
    """Exact membership test by inspection of exponent vectors."""
    if tag is Subalgebra.POL:
        return True
    if tag is Subalgebra.POL1:
        return f.degree() <= 1
    if tag is Subalgebra.POL2:
        return f.degree() <= 2
    if tag is Subalgebra.POL_INF_1:
        # at most first order in the p's, any polynomial order in the q's
        n = f.n
        return all(sum(ev[n:]) <= 1 for ev in f.terms)
    raise ValueError(f"unknown subalgebra tag {tag!r}")


def momentum_degree(f: PhasePoly) -> int:
    """Highest total p-degree appearing in f (-1 for zero)."""
    n = f.n
    return max((sum(ev[n:]) for ev in f.terms), default=-1)


def split_linear_in_p(f: PhasePoly) -> tuple[PhasePoly, Sequence[PhasePoly]]:
    """Split f = g(q) + sum_i h_i(q) p_i; requires membership in POL_INF_1.

    Returns (g, [h_1..h_n]) where every returned polynomial depends on the
    q's only.
    """
    n = f.n
    if not subalgebra_member(f, Subalgebra.POL_INF_1):
        raise ValueError("polynomial is not first order in the momenta")
    g = PhasePoly.zero(n)
    hs = [PhasePoly.zero(n) for _ in range(n)]
    for ev, c in f.terms.items():
        pdeg = sum(ev[n:])
        if pdeg == 0:
            g = g + PhasePoly.monomial(n, ev, c)
        else:
            i = next(j for j in range(n) if ev[n + j] == 1)
            stripped = list(ev)
            stripped[n + i] = 0
            hs[i] = hs[i] + PhasePoly.monomial(n, stripped, c)
    return g, hs
