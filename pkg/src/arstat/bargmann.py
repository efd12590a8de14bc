"""Analytic (Bargmann-style) realizations on multivariate polynomial coefficients.

Three realizations map the number states to monomials C_n * w^n in r complex
variables, and the ladder operators to multiplication/differentiation rules:

* ``gk-omega`` (bosonic): raising is multiplication by w_i, lowering is the
  second-order operator k d_i + w_i d_i^2 + d_i sum_{j != i} w_j d_j.  The
  weights C_n = sqrt((k-1)!/(prod n_i! (k-1+n)!)) decay, which is what later
  produces annihilation-eigenvector coherent states.
* ``kp-bosonic-z``: lowering is d/dz_i, raising the first-order operator
  k z_i + z_i sum_j z_j d_j, with C_n = sqrt((k-1+n)!/(prod n_i! (k-1)!)).
* ``kp-fermionic-zeta``: lowering is d/dzeta_i, raising
  (k-1) zeta_i - zeta_i sum_j zeta_j d_j, with
  C_n = sqrt((k-1)!/(prod n_i! (k-1-n)!)) supported on total degree <= k-1.
  The raising factor (k-1-n) vanishes on the top shell, so the generalized
  Pauli bound is automatic rather than imposed.

The fermionic weight is the closed-form solution of the defining recurrence
sqrt(n_i) C_n = sqrt(k-n) C_{n-e_i}; apply_operator realizes the printed
differential operators term by term in exact integer combinatorics, and
verify_realization_equivalence ties each realization back to the Fock
matrices through the diagonal similarity diag(C_n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .fock import FockBasis, Index, StatisticsParams, build_ladder_set, enumerate_basis

GK = "gk-omega"
KP_BOSONIC = "kp-bosonic-z"
KP_FERMIONIC = "kp-fermionic-zeta"
REALIZATIONS = (GK, KP_BOSONIC, KP_FERMIONIC)

_SIGN_OF = {GK: 1, KP_BOSONIC: 1, KP_FERMIONIC: -1}


def normalize_realization(tag: str) -> str:
    t = tag.strip().lower()
    aliases = {
        "gk": GK,
        GK: GK,
        "kp-bosonic": KP_BOSONIC,
        KP_BOSONIC: KP_BOSONIC,
        "kp-fermionic": KP_FERMIONIC,
        KP_FERMIONIC: KP_FERMIONIC,
    }
    if t not in aliases:
        raise ValueError(f"unknown realization {tag!r}; expected one of {REALIZATIONS}")
    return aliases[t]


def _check_compatible(realization: str, params: StatisticsParams):
    if params.s != _SIGN_OF[realization]:
        raise ValueError(
            f"realization {realization} requires s = {_SIGN_OF[realization]}, "
            f"got s = {params.s}"
        )


def _admissible(realization: str, params: StatisticsParams, n: Index) -> bool:
    if len(n) != params.r or any(x < 0 for x in n):
        return False
    if realization == KP_FERMIONIC and sum(n) > params.k - 1:
        return False
    return True


def coefficient(realization: str, params: StatisticsParams, n: Sequence[int]) -> float:
    """Monomial weight C_n of the requested realization (always positive).

    Evaluated as an exact integer ratio before the square root, so the result
    is correct to one ulp at any size the factorials reach.
    """
    realization = normalize_realization(realization)
    _check_compatible(realization, params)
    n = tuple(int(x) for x in n)
    if not _admissible(realization, params, n):
        raise ValueError(f"index {n} not admissible for {realization} with k={params.k}")
    k, total = params.k, sum(n)
    occ = 1
    for x in n:
        occ *= math.factorial(x)
    if realization == GK:
        ratio = Fraction(math.factorial(k - 1), occ * math.factorial(k - 1 + total))
    elif realization == KP_BOSONIC:
        ratio = Fraction(math.factorial(k - 1 + total), occ * math.factorial(k - 1))
    else:
        ratio = Fraction(math.factorial(k - 1), occ * math.factorial(k - 1 - total))
    return math.sqrt(ratio)


@dataclass
class PolynomialVector:
    """Sparse polynomial in r complex variables, keyed by exponent multi-index."""

    realization: str
    params: StatisticsParams
    coefficients: dict[Index, complex] = field(default_factory=dict)
    degree_bound: int = 0

    def __post_init__(self):
        self.realization = normalize_realization(self.realization)
        _check_compatible(self.realization, self.params)
        if self.realization == KP_FERMIONIC:
            self.degree_bound = min(self.degree_bound, self.params.k - 1)
        for n in self.coefficients:
            if not _admissible(self.realization, self.params, n):
                raise ValueError(f"stored index {n} not admissible")
            if sum(n) > self.degree_bound:
                raise ValueError(f"index {n} exceeds degree bound {self.degree_bound}")

    @classmethod
    def monomial(
        cls,
        realization: str,
        params: StatisticsParams,
        n: Sequence[int],
        amplitude: complex = 1.0,
        degree_bound: int | None = None,
    ) -> "PolynomialVector":
        n = tuple(int(x) for x in n)
        bound = max(sum(n), degree_bound if degree_bound is not None else 0)
        return cls(realization, params, {n: complex(amplitude)}, bound)

    def __iter__(self):
        return iter(sorted(self.coefficients.items(), key=lambda kv: (sum(kv[0]), tuple(-x for x in kv[0]))))

    def __getitem__(self, n) -> complex:
        return self.coefficients.get(tuple(n), 0.0 + 0.0j)

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(abs(c) <= tol for c in self.coefficients.values())

    def _accumulate(self, n: Index, amp: complex):
        if amp == 0:
            return
        cur = self.coefficients.get(n, 0.0 + 0.0j) + amp
        if cur == 0:
            self.coefficients.pop(n, None)
        else:
            self.coefficients[n] = cur

    def to_dict(self) -> dict:
        return {
            "realization": self.realization,
            "params": self.params.to_dict(),
            "terms": [
                {"index": list(n), "re": c.real, "im": c.imag} for n, c in self
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PolynomialVector":
        params = StatisticsParams.from_dict(d["params"])
        coeffs = {
            tuple(int(x) for x in t["index"]): complex(t["re"], t["im"])
            for t in d["terms"]
        }
        bound = max((sum(n) for n in coeffs), default=0)
        return cls(d["realization"], params, coeffs, bound)


def _shift(n: Index, i: int, by: int) -> Index:
    return n[:i] + (n[i] + by,) + n[i + 1 :]


def apply_operator(p: PolynomialVector, symbol: str, mode: int) -> PolynomialVector:
    """Apply a ladder or number operator to a polynomial, term by term.

    ``symbol`` is one of "lower", "raise", "number".  All derivative
    combinatorics are integer-exact; floating point enters only through the
    complex amplitudes.  Raising past the degree bound is an error on the
    bosonic realizations; on the fermionic one the top shell is annihilated
    by exact cancellation instead.
    """
    if symbol not in ("lower", "raise", "number"):
        raise ValueError(f"unknown operator symbol {symbol!r}")
    r, k = p.params.r, p.params.k
    if not 0 <= mode < r:
        raise ValueError(f"mode {mode} out of range for r = {r}")
    tag = p.realization
    bound = p.degree_bound
    if symbol == "raise" and tag in (GK, KP_BOSONIC):
        top = max((sum(n) for n in p.coefficients), default=0)
        if top + 1 > bound:
            raise ValueError(
                f"raising a degree-{top} polynomial exceeds the degree bound {bound}"
            )
    out = PolynomialVector(tag, p.params, {}, bound)

    for n, amp in p.coefficients.items():
        total = sum(n)
        if symbol == "number":
            # w_i d_i in every realization
            out._accumulate(n, amp * n[mode])
        elif tag == GK:
            if symbol == "raise":
                out._accumulate(_shift(n, mode, 1), amp)
            else:
                if n[mode] > 0:
                    m = _shift(n, mode, -1)
                    out._accumulate(m, amp * k * n[mode])          # k d_i
                    out._accumulate(m, amp * n[mode] * (n[mode] - 1))  # w_i d_i^2
                    cross = sum(n[j] for j in range(r) if j != mode)
                    out._accumulate(m, amp * n[mode] * cross)      # d_i sum_{j!=i} w_j d_j
        elif tag == KP_BOSONIC:
            if symbol == "raise":
                m = _shift(n, mode, 1)
                out._accumulate(m, amp * k)       # k z_i
                out._accumulate(m, amp * total)   # z_i sum_j z_j d_j
            else:
                if n[mode] > 0:
                    out._accumulate(_shift(n, mode, -1), amp * n[mode])
        else:  # KP_FERMIONIC
            if symbol == "raise":
                if total + 1 <= k - 1:
                    m = _shift(n, mode, 1)
                    out._accumulate(m, amp * (k - 1))
                    out._accumulate(m, amp * (-total))
                else:
                    # (k-1) zeta_i - zeta_i sum zeta_j d_j cancels exactly here
                    assert (k - 1) - total == 0
            else:
                if n[mode] > 0:
                    out._accumulate(_shift(n, mode, -1), amp * n[mode])
    return out


@dataclass
class EquivalenceReport:
    realization: str
    params: StatisticsParams
    degree: int
    max_residual: float
    worst: dict | None = None
    notes: str = ""

    def to_dict(self) -> dict:
        return {
            "realization": self.realization,
            "params": self.params.to_dict(),
            "degree": self.degree,
            "max_residual": self.max_residual,
            "worst": self.worst,
            "notes": self.notes,
        }


def verify_realization_equivalence(
    realization: str, params: StatisticsParams, degree: int
) -> EquivalenceReport:
    """Compare the polynomial action with the similarity-transformed matrix action.

    The image of the number state |n> is C_n w^n, so on monomials every
    generator must act with matrix elements (diag(C) M diag(C)^-1)[m, n] where
    M is the Fock matrix.  The maximum elementwise mismatch over all
    generators and all monomials of total degree <= degree is returned.
    """
    realization = normalize_realization(realization)
    _check_compatible(realization, params)
    if degree < 0:
        raise ValueError("degree must be >= 0")
    if realization == KP_FERMIONIC:
        degree = min(degree, params.k - 1)
        basis = enumerate_basis(params)
    else:
        basis = enumerate_basis(params, cutoff=degree + 1)
    ladder = build_ladder_set(basis)
    coeff = {n: coefficient(realization, params, n) for n in basis.indices}

    ops = {"lower": ladder.lowering, "raise": ladder.raising, "number": ladder.number}
    worst = 0.0
    worst_entry = None
    for n in basis.indices:
        if sum(n) > degree:
            continue
        col = basis.position(n)
        p = PolynomialVector.monomial(
            realization, params, n, degree_bound=max(degree + 1, sum(n))
        )
        for symbol, mats in ops.items():
            for i in range(params.r):
                got = apply_operator(p, symbol, i)
                column = mats[i][:, col]
                support = set(got.coefficients)
                support.update(
                    basis.indices[row] for row in np.nonzero(column)[0]
                )
                for m in support:
                    expected = 0.0 + 0.0j
                    if m in basis:
                        expected = complex(column[basis.position(m)]) * coeff[m] / coeff[n]
                    resid = abs(got[m] - expected)
                    if resid > worst:
                        worst = resid
                        worst_entry = {
                            "operator": f"{symbol}_{i}",
                            "monomial": list(n),
                            "target": list(m),
                        }
    return EquivalenceReport(
        realization=realization,
        params=params,
        degree=degree,
        max_residual=worst,
        worst=worst_entry,
    )
