"""Fock-space matrix representations of generalized multimode ladder statistics.

The statistics live on r pairs of ladder operators a_i^-, a_i^+ that close
under double commutators (a Lie triple system) instead of plain bilinear
relations.  An irreducible representation is labeled by a positive integer k
and a sign s:

* s = +1 (bosonic branch): the Fock space is infinite dimensional and has to
  be truncated at a total-occupation cutoff before anything can be stored as
  a matrix.  Raising out of the top shell is mapped to zero, and all algebra
  verifiers restrict themselves to the truncation-safe sub-block.
* s = -1 (fermionic branch): the space is finite dimensional, with total
  occupation bounded by k - 1 (a generalized Pauli principle), and every
  identity holds exactly.

Everything follows from the structure function

    F_i(n) = n_i * (k0 + s * (n_1 + ... + n_r)),    k0 = k - (1 + s) / 2,

which gives the squared matrix elements of the ladder operators.  Bases are
enumerated in graded lexicographic order (by total occupation, then
lexicographically in the monomial-order convention), so every matrix built
here is reproducible bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

Index = tuple[int, ...]


@dataclass(frozen=True)
class StatisticsParams:
    """Representation label: r modes, integer k >= 1, sign s in {+1, -1}.

    The derived shift k0 equals k - 1 on the bosonic branch and k on the
    fermionic one.  k = 1 with s = -1 is rejected: its only admissible state
    is the vacuum, so the representation is degenerate.  k = 1 with s = +1
    (vanishing k0) is accepted but flagged through ``degenerate``.
    """

    r: int
    k: int
    s: int

    def __post_init__(self):
        if self.r < 1:
            raise ValueError(f"r must be a positive integer, got {self.r}")
        if self.s not in (1, -1):
            raise ValueError(f"s must be +1 or -1, got {self.s}")
        if self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k}")
        if self.s == -1 and self.k < 2:
            raise ValueError(
                "k must be >= 2 on the fermionic branch (s = -1): k = 1 leaves "
                "only the vacuum state, a degenerate representation"
            )

    @property
    def k0(self) -> int:
        return self.k - (1 + self.s) // 2

    @property
    def degenerate(self) -> bool:
        """True when k0 vanishes (k = 1, s = +1); flagged, not rejected."""
        return self.k0 == 0

    def to_dict(self) -> dict:
        return {"r": self.r, "k": self.k, "s": self.s}

    @classmethod
    def from_dict(cls, d: dict) -> "StatisticsParams":
        return cls(r=int(d["r"]), k=int(d["k"]), s=int(d["s"]))


def _compositions(total: int, r: int) -> Iterator[Index]:
    """All occupation vectors with the given total, in graded-lex order."""
    if r == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, r - 1):
            yield (first,) + rest


@dataclass(frozen=True)
class FockBasis:
    """Ordered enumeration of admissible occupation vectors.

    ``indices`` holds every multi-index with total occupation <= cutoff,
    sorted by total and then lexicographically within each shell.  On the
    fermionic branch the cutoff is always k - 1.
    """

    params: StatisticsParams
    cutoff: int
    indices: tuple[Index, ...]

    @cached_property
    def _positions(self) -> dict[Index, int]:
        return {n: i for i, n in enumerate(self.indices)}

    @property
    def dimension(self) -> int:
        return len(self.indices)

    def position(self, n: Sequence[int]) -> int:
        return self._positions[tuple(n)]

    def __contains__(self, n) -> bool:
        return tuple(n) in self._positions

    def totals(self) -> np.ndarray:
        return np.array([sum(n) for n in self.indices], dtype=int)

    def block_mask(self, max_total: int) -> np.ndarray:
        """Boolean mask selecting indices with total occupation <= max_total."""
        return self.totals() <= max_total

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "cutoff": self.cutoff,
            "index_list": [list(n) for n in self.indices],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FockBasis":
        params = StatisticsParams.from_dict(d["params"])
        indices = tuple(tuple(int(x) for x in n) for n in d["index_list"])
        return cls(params=params, cutoff=int(d["cutoff"]), indices=indices)


def enumerate_basis(params: StatisticsParams, cutoff: int | None = None) -> FockBasis:
    """Enumerate the admissible occupation vectors up to a total-occupation cutoff.

    For s = +1 the cutoff is mandatory (the representation is infinite
    dimensional); for s = -1 any supplied cutoff is ignored and replaced by
    the Pauli bound k - 1.
    """
    if params.s == -1:
        cutoff = params.k - 1
    else:
        if cutoff is None:
            raise ValueError("a truncation cutoff is required on the bosonic branch")
        if cutoff < 0:
            raise ValueError(f"cutoff must be >= 0, got {cutoff}")
    indices = tuple(
        n for total in range(cutoff + 1) for n in _compositions(total, params.r)
    )
    return FockBasis(params=params, cutoff=cutoff, indices=indices)


def fermionic_dimension(r: int, k: int) -> int:
    """Closed-form dimension of the fermionic representation, (k-1+r)!/((k-1)! r!)."""
    return math.comb(k - 1 + r, r)


def structure_function(params: StatisticsParams, n: Sequence[int], i: int) -> float:
    """Squared ladder matrix element F_i(n) = n_i (k0 + s * total).

    A negative value cannot occur on an admissible index; it signals a
    violation of the representation condition and raises ValueError.
    """
    n = tuple(int(x) for x in n)
    if len(n) != params.r:
        raise ValueError(f"index length {len(n)} does not match r = {params.r}")
    if any(x < 0 for x in n):
        raise ValueError(f"occupations must be non-negative, got {n}")
    if not 0 <= i < params.r:
        raise ValueError(f"mode index {i} out of range for r = {params.r}")
    value = n[i] * (params.k0 + params.s * sum(n))
    if value < 0:
        raise ValueError(
            f"index {n} is inadmissible for (k={params.k}, s={params.s}): "
            f"F_{i} = {value} < 0"
        )
    return float(value)


@dataclass
class LadderSet:
    """Dense complex matrices of the ladder, number and Hamiltonian operators.

    ``raising[i]`` is the conjugate transpose of ``lowering[i]``; on the
    bosonic branch both are truncated so that raising out of the top shell
    gives zero.  ``hamiltonian`` is present when mode energies were supplied
    and is diagonal with eigenvalue sum_i e_i n_i (vacuum energy zero).
    """

    basis: FockBasis
    lowering: list[np.ndarray]
    raising: list[np.ndarray]
    number: list[np.ndarray]
    energies: np.ndarray | None = None
    hamiltonian: np.ndarray | None = None

    @property
    def params(self) -> StatisticsParams:
        return self.basis.params

    @property
    def dimension(self) -> int:
        return self.basis.dimension

    def to_dict(self) -> dict:
        from .jsonio import matrix_to_pairs

        d = self.basis.to_dict()
        d["matrices"] = {
            "lowering": [matrix_to_pairs(m) for m in self.lowering],
            "raising": [matrix_to_pairs(m) for m in self.raising],
            "number": [matrix_to_pairs(m) for m in self.number],
        }
        if self.energies is not None:
            d["energies"] = [float(e) for e in self.energies]
        if self.hamiltonian is not None:
            d["matrices"]["hamiltonian"] = matrix_to_pairs(self.hamiltonian)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "LadderSet":
        from .jsonio import pairs_to_matrix

        basis = FockBasis.from_dict(d)
        dim = basis.dimension
        mats = d["matrices"]
        return cls(
            basis=basis,
            lowering=[pairs_to_matrix(m, dim) for m in mats["lowering"]],
            raising=[pairs_to_matrix(m, dim) for m in mats["raising"]],
            number=[pairs_to_matrix(m, dim) for m in mats["number"]],
            energies=(
                np.array(d["energies"], dtype=float) if "energies" in d else None
            ),
            hamiltonian=(
                pairs_to_matrix(mats["hamiltonian"], dim)
                if "hamiltonian" in mats
                else None
            ),
        )


def _mode_hamiltonian_eigenvalue(params: StatisticsParams, n: Index, i: int) -> Fraction:
    """Eigenvalue of h_i on |n>, evaluated in exact rational arithmetic.

    h_i is the combination of the diagonal commutators [a_j^-, a_j^+] that
    solves the Heisenberg condition, plus the constant c = -(s k0 + 1)/(r + 1)
    fixing the vacuum energy to zero.  The rational arithmetic makes the
    result land exactly on the integer n_i.
    """
    r, s, k0 = params.r, params.s, params.k0
    total = sum(n)
    comm = [k0 + s * (total + nj + 1) for nj in n]
    c = Fraction(-(s * k0 + 1), r + 1)
    return Fraction(s * ((r + 1) * comm[i] - sum(comm)), r + 1) + c


def build_ladder_set(
    basis: FockBasis, energies: Sequence[float] | None = None
) -> LadderSet:
    """Build the dense ladder matrices (and the Hamiltonian if energies given)."""
    params = basis.params
    r, s, k0 = params.r, params.s, params.k0
    dim = basis.dimension
    lowering = [np.zeros((dim, dim), dtype=complex) for _ in range(r)]
    raising = [np.zeros((dim, dim), dtype=complex) for _ in range(r)]
    number = [np.zeros((dim, dim), dtype=complex) for _ in range(r)]

    for col, n in enumerate(basis.indices):
        total = sum(n)
        for i in range(r):
            number[i][col, col] = n[i]
            if n[i] > 0:
                m = n[:i] + (n[i] - 1,) + n[i + 1 :]
                lowering[i][basis.position(m), col] = math.sqrt(n[i] * (k0 + s * total))
            if total < basis.cutoff:
                m = n[:i] + (n[i] + 1,) + n[i + 1 :]
                raising[i][basis.position(m), col] = math.sqrt(
                    (n[i] + 1) * (k0 + s * (total + 1))
                )
            # raising from total == cutoff stays zero: truncation on the
            # bosonic branch, automatic (k0 - k = 0 factor) on the fermionic one

    ham = None
    evec = None
    if energies is not None:
        evec = np.asarray(energies, dtype=float)
        if evec.shape != (r,):
            raise ValueError(f"energies must have length r = {r}")
        diag = np.zeros(dim)
        for col, n in enumerate(basis.indices):
            acc = 0.0
            for i in range(r):
                acc += evec[i] * float(_mode_hamiltonian_eigenvalue(params, n, i))
            diag[col] = acc
        ham = np.diag(diag).astype(complex)

    return LadderSet(
        basis=basis,
        lowering=lowering,
        raising=raising,
        number=number,
        energies=evec,
        hamiltonian=ham,
    )


def _comm(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def _block_norm(m: np.ndarray, mask: np.ndarray) -> float:
    sub = m[np.ix_(mask, mask)]
    if sub.size == 0:
        return 0.0
    return float(np.linalg.norm(sub, 2))


@dataclass
class ResidualReport:
    """Outcome of an operator-identity verification on a representation."""

    name: str
    params: StatisticsParams
    cutoff: int
    safe_total: int
    scale: float
    max_residual: float
    entries: list[dict] = field(default_factory=list)

    @property
    def max_relative(self) -> float:
        return self.max_residual / max(self.scale, 1e-300)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": self.params.to_dict(),
            "cutoff": self.cutoff,
            "safe_total": self.safe_total,
            "scale": self.scale,
            "max_residual": self.max_residual,
            "max_relative": self.max_relative,
            "entries": self.entries,
        }


def verify_triple_relations(ladder: LadderSet, safe_margin: int = 2) -> ResidualReport:
    """Residuals of the defining double-commutator relations.

    Checks, for all mode triples (i, j, l),

        [[a_i^+, a_j^-], a_l^+] + s (d_jl a_i^+ + d_ij a_l^+)  = 0
        [[a_i^+, a_j^-], a_l^-] - s (d_il a_j^- + d_ij a_l^-)  = 0

    together with mutual commutativity of the raisings and of the lowerings.
    On the bosonic branch all norms are taken on the truncation-safe block
    (total occupation <= cutoff - safe_margin); fermionic representations are
    exact and checked in full.
    """
    basis = ladder.basis
    params = basis.params
    r, s = params.r, params.s
    safe_total = basis.cutoff if s == -1 else basis.cutoff - safe_margin
    mask = basis.block_mask(safe_total)
    up, dn = ladder.raising, ladder.lowering

    scale = max(_block_norm(m, mask) for m in up) if mask.any() else 0.0
    entries = []
    worst = 0.0

    def record(label: str, residual_matrix: np.ndarray):
        nonlocal worst
        val = _block_norm(residual_matrix, mask)
        entries.append({"identity": label, "residual": val})
        worst = max(worst, val)

    for i in range(r):
        for j in range(r):
            inner = _comm(up[i], dn[j])
            for l in range(r):
                t1 = _comm(inner, up[l]) + s * (
                    (1 if j == l else 0) * up[i] + (1 if i == j else 0) * up[l]
                )
                record(f"[[a{i}+,a{j}-],a{l}+]", t1)
                t2 = _comm(inner, dn[l]) - s * (
                    (1 if i == l else 0) * dn[j] + (1 if i == j else 0) * dn[l]
                )
                record(f"[[a{i}+,a{j}-],a{l}-]", t2)

    for i in range(r):
        for j in range(i + 1, r):
            record(f"[a{i}+,a{j}+]", _comm(up[i], up[j]))
            record(f"[a{i}-,a{j}-]", _comm(dn[i], dn[j]))
    if r == 1:
        record("[a0-,a0-]", _comm(dn[0], dn[0]))

    return ResidualReport(
        name="triple-relations",
        params=params,
        cutoff=basis.cutoff,
        safe_total=safe_total,
        scale=scale,
        max_residual=worst,
        entries=entries,
    )


@dataclass
class HeisenbergReport:
    params: StatisticsParams
    cutoff: int
    hamiltonian_norm: float
    commutator_residual: float
    vacuum_energy: float
    spectrum_deviation: float

    @property
    def commutator_relative(self) -> float:
        return self.commutator_residual / max(self.hamiltonian_norm, 1e-300)

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "cutoff": self.cutoff,
            "hamiltonian_norm": self.hamiltonian_norm,
            "commutator_residual": self.commutator_residual,
            "commutator_relative": self.commutator_relative,
            "vacuum_energy": self.vacuum_energy,
            "spectrum_deviation": self.spectrum_deviation,
        }


def verify_heisenberg(ladder: LadderSet) -> HeisenbergReport:
    """Check [H, a_i^+-] = +-e_i a_i^+- plus zero vacuum energy and the spectrum.

    The spectrum check compares each diagonal entry of H against
    sum_i e_i n_i accumulated in the same order, so agreement is exact, not
    merely within rounding.
    """
    if ladder.hamiltonian is None:
        raise ValueError("ladder set has no Hamiltonian; pass energies when building")
    basis = ladder.basis
    H = ladder.hamiltonian
    e = ladder.energies
    hnorm = float(np.linalg.norm(H, 2))

    worst = 0.0
    for i in range(basis.params.r):
        worst = max(
            worst,
            float(np.linalg.norm(_comm(H, ladder.raising[i]) - e[i] * ladder.raising[i], 2)),
            float(np.linalg.norm(_comm(H, ladder.lowering[i]) + e[i] * ladder.lowering[i], 2)),
        )

    vac = basis.position((0,) * basis.params.r)
    vacuum_energy = abs(complex(H[vac, vac]))

    spectrum_dev = 0.0
    for col, n in enumerate(basis.indices):
        expected = 0.0
        for i in range(basis.params.r):
            expected += e[i] * float(n[i])
        spectrum_dev = max(spectrum_dev, abs(complex(H[col, col]) - expected))
    offdiag = H - np.diag(np.diag(H))
    spectrum_dev = max(spectrum_dev, float(np.abs(offdiag).max()))

    return HeisenbergReport(
        params=basis.params,
        cutoff=basis.cutoff,
        hamiltonian_norm=hnorm,
        commutator_residual=worst,
        vacuum_energy=vacuum_energy,
        spectrum_deviation=spectrum_dev,
    )


def bose_limit_deviation(params: StatisticsParams, cutoff: int) -> float:
    """Largest deviation of the rescaled matrix elements from ordinary Bose ones.

    Compares the elements of b_i^+- = a_i^+-/sqrt(k), truncated at the given
    total-occupation cutoff, against sqrt(n_i) and sqrt(n_i + 1).  Decays like
    1/k at fixed cutoff, which is how the large-k Bose limit is demonstrated.
    """
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    if params.s == -1 and cutoff > params.k - 1:
        raise ValueError("cutoff exceeds the fermionic bound k - 1")
    s, k0, k = params.s, params.k0, params.k
    sqrt_k = math.sqrt(k)
    worst = 0.0
    for total in range(cutoff + 1):
        for n in _compositions(total, params.r):
            for i in range(params.r):
                if n[i] > 0:
                    exact = math.sqrt(n[i] * (k0 + s * total)) / sqrt_k
                    worst = max(worst, abs(exact - math.sqrt(n[i])))
                if total < cutoff:
                    exact = math.sqrt((n[i] + 1) * (k0 + s * (total + 1))) / sqrt_k
                    worst = max(worst, abs(exact - math.sqrt(n[i] + 1)))
    return worst
