"""Closed-form bound calculators and hypothesis checkers.

All calculators return arbitrary-precision integers; the hypothesis checker
returns a clause-by-clause verdict so reports can name the violated clause.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import HypothesisViolationError
from .exactfield import is_prime


def delsarte_bound(n: int, q: int, s: int) -> int:
    """Size bound sum_{i<=s} C(n,i)(q-1)^i for systems with at most s
    distinct pairwise Hamming distances."""
    if q <= 1:
        raise HypothesisViolationError(f"alphabet size must exceed 1: {q}")
    if not 0 < s <= n:
        raise HypothesisViolationError(f"distance count s={s} outside (0, {n}]")
    return sum(comb(n, i) * (q - 1) ** i for i in range(s + 1))


def msd_bound(n: int, s: int) -> int:
    """Size bound M(n,s) = C(n+s-1,s) + C(n+s-2,s-1) for spherical sets
    with at most s distinct inner products."""
    if n < 1 or s < 1:
        raise HypothesisViolationError(f"n and s must be positive: n={n}, s={s}")
    return comb(n + s - 1, s) + comb(n + s - 2, s - 1)


def two_distance_max(n: int) -> int:
    """Maximal size n(n+3)/2 of a spherical two-distance set in n dimensions."""
    if n < 1:
        raise HypothesisViolationError(f"dimension must be positive: {n}")
    value = n * (n + 3) // 2
    assert value == msd_bound(n, 2)
    return value


def uniform_two_intersection_conjecture(n: int, w: int) -> int:
    """Conjectured maximal size C(n-w+2, 2) of a uniform family of w-sets
    with two distinct intersection sizes (calculator only)."""
    if not 2 <= w <= n:
        raise HypothesisViolationError(f"need 2 <= w <= n, got w={w}, n={n}")
    return comb(n - w + 2, 2)


@dataclass(frozen=True)
class ModDistanceHypotheses:
    """Clause-by-clause verdict for the modular constant-distance bound:
    systems in [0,q-1]^n whose pairwise distances are all congruent to
    lambda mod p have size at most n(q-1), provided every clause holds."""

    n: int
    q: int
    p: int
    lam: int
    p_prime: bool
    p_geq_q: bool
    n_nonzero_mod_p: bool
    lambda_nonzero_mod_p: bool
    q_lambda_clause: bool

    @property
    def holds(self) -> bool:
        return (
            self.p_prime
            and self.p_geq_q
            and self.n_nonzero_mod_p
            and self.lambda_nonzero_mod_p
            and self.q_lambda_clause
        )

    @property
    def bound(self) -> int | None:
        return self.n * (self.q - 1) if self.holds else None

    def failing_clauses(self) -> list[str]:
        out = []
        for name, ok in (
            ("pPrime", self.p_prime),
            ("pGeqQ", self.p_geq_q),
            ("nNonzeroModP", self.n_nonzero_mod_p),
            ("lambdaNonzeroModP", self.lambda_nonzero_mod_p),
            ("qLambdaClause", self.q_lambda_clause),
        ):
            if not ok:
                out.append(name)
        return out

    def to_json_dict(self):
        return {
            "n": self.n,
            "q": self.q,
            "p": self.p,
            "lambda": self.lam,
            "clauses": {
                "pPrime": self.p_prime,
                "pGeqQ": self.p_geq_q,
                "nNonzeroModP": self.n_nonzero_mod_p,
                "lambdaNonzeroModP": self.lambda_nonzero_mod_p,
                "qLambdaClause": self.q_lambda_clause,
            },
            "holds": self.holds,
            "bound": self.bound,
        }


def check_mod_distance_hypotheses(n: int, q: int, p: int, lam: int) -> ModDistanceHypotheses:
    """Evaluate every hypothesis clause of the modular constant-distance
    bound; the qLambda clause requires q*lambda != n(q-1)+1 mod p."""
    if q <= 1:
        raise HypothesisViolationError(f"alphabet size must exceed 1: {q}")
    if lam <= 0:
        raise HypothesisViolationError(f"lambda must be positive: {lam}")
    return ModDistanceHypotheses(
        n=n,
        q=q,
        p=p,
        lam=lam,
        p_prime=is_prime(p),
        p_geq_q=p >= q,
        n_nonzero_mod_p=n % p != 0,
        lambda_nonzero_mod_p=lam % p != 0,
        q_lambda_clause=(q * lam) % p != (n * (q - 1) + 1) % p,
    )
