"""Linear codes from inhomogeneous quadratic level sets.

The defining set D collects the nonzero solutions of
f(x) - Tr(alpha x) = 0; the code's codewords are
(Tr(beta d) for d in D), one per beta in GF(q).  Weight data comes from
two independent routes: a direct scan over all codewords (naive) and
the closed-form solution counters (analytic); "both" mode insists they
agree before returning.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .counting import predict_hyperplane_root_count, predict_root_count
from .errors import (
    DimensionCollapseError,
    EmptyDefiningSetError,
    PreconditionViolatedError,
    QCodeError,
)
from .linalg import rank as gf_rank
from .quadform import FormAnalysis

_SCAN_CHUNK = 4096


@dataclass(frozen=True)
class DefiningSet:
    """Sorted nonzero solutions of f(x) - Tr(alpha x) = 0."""

    analysis: FormAnalysis
    alpha: int
    elements: tuple[int, ...]

    @property
    def ctx(self):
        return self.analysis.ctx

    @property
    def length(self) -> int:
        return len(self.elements)

    @property
    def homogeneous(self) -> bool:
        return self.alpha == 0


@dataclass(frozen=True)
class WeightDistribution:
    """Exact weight data of a code: length, dimension, weight counts."""

    n: int
    k: int
    counts: dict[int, int]

    @property
    def d_min(self) -> int:
        return min(w for w in self.counts if w > 0)

    def validate(self, p: int) -> None:
        """Structural identities every constructed code satisfies."""
        total = sum(self.counts.values())
        if total != p**self.k:
            raise QCodeError(f"multiplicities sum to {total}, not p^k")
        if self.counts.get(0) != 1:
            raise QCodeError("weight 0 must have multiplicity exactly 1")
        moment = sum(w * c for w, c in self.counts.items())
        if moment != self.n * (p - 1) * p ** (self.k - 1):
            raise QCodeError("first power moment fails")
        for w, c in self.counts.items():
            if w and c % (p - 1):
                raise QCodeError(f"multiplicity {c} at weight {w} not divisible by p-1")

    def to_json(self) -> dict:
        return {
            "length": self.n,
            "dimension": self.k,
            "min_distance": self.d_min,
            "weight_distribution": {str(w): c for w, c in sorted(self.counts.items())
                                    if w > 0},
            "enumerator": enumerator_string(self),
        }


def defining_set(analysis: FormAnalysis, alpha: int) -> DefiningSet:
    """Materialize D, sorted ascending, with its size cross-checked
    against the closed-form solution count."""
    from .counting import check_brute_cap

    check_brute_cap(analysis.ctx)
    ctx = analysis.ctx
    fv = analysis.f.values()
    tra = ctx.trace_mul_all(alpha)
    sols = np.flatnonzero((fv - tra) % ctx.p == 0)
    elements = tuple(int(x) for x in sols if x != 0)
    if not elements:
        raise EmptyDefiningSetError("defining set is empty; code undefined")
    expected = predict_root_count(analysis, alpha) - 1
    if len(elements) != expected:
        raise QCodeError(
            f"defining set size {len(elements)} != predicted {expected}")
    return DefiningSet(analysis, alpha, elements)


def weight_of(beta: int, ds: DefiningSet) -> int:
    """Hamming weight of the codeword indexed by beta."""
    ctx = ds.ctx
    return int(np.count_nonzero(
        ctx.trace_table()[[ctx.mul(beta, d) for d in ds.elements]]))


def _weights_naive(ds: DefiningSet) -> np.ndarray:
    """Weights of all q codewords by a chunked digit-matrix scan."""
    ctx = ds.ctx
    tmat = np.stack([ctx.trace_mul_vector(d) for d in ds.elements], axis=1)
    digits = ctx.digits_matrix()
    weights = np.empty(ctx.q, dtype=np.int64)
    for lo in range(0, ctx.q, _SCAN_CHUNK):
        hi = min(lo + _SCAN_CHUNK, ctx.q)
        block = digits[lo:hi] @ tmat % ctx.p
        weights[lo:hi] = np.count_nonzero(block, axis=1)
    return weights


def _weights_analytic(ds: DefiningSet) -> np.ndarray:
    """Weights via wt(c_beta) = N - N_beta from the closed-form counters."""
    an = ds.analysis
    n_full = predict_root_count(an, ds.alpha)
    weights = np.zeros(an.ctx.q, dtype=np.int64)
    for beta in an.ctx.nonzero_elements():
        weights[beta] = n_full - predict_hyperplane_root_count(an, ds.alpha, beta)
    return weights


def weight_distribution(ds: DefiningSet, mode: str = "both") -> WeightDistribution:
    """Exact weight distribution; mode selects the computation route.

    naive scans every codeword; analytic evaluates the closed-form
    counters per index; both runs the two and requires exact agreement.
    The dimension claim k = m is asserted: a zero weight at a nonzero
    index raises DimensionCollapse with the witness.
    """
    ctx = ds.ctx
    if mode not in ("naive", "analytic", "both"):
        raise PreconditionViolatedError(f"unknown mode {mode!r}")
    weights = None
    if mode in ("naive", "both"):
        weights = _weights_naive(ds)
    if mode in ("analytic", "both"):
        analytic = _weights_analytic(ds)
        if weights is None:
            weights = analytic
        elif not np.array_equal(weights, analytic):
            bad = int(np.flatnonzero(weights != analytic)[0])
            raise QCodeError(
                f"naive and analytic weights disagree at beta={bad}: "
                f"{int(weights[bad])} vs {int(analytic[bad])}")
    zero_hits = np.flatnonzero(weights[1:] == 0)
    if zero_hits.size:
        witness = int(zero_hits[0]) + 1
        raise DimensionCollapseError(
            f"codeword index {witness} has weight 0", witness=witness)
    values, multiplicities = np.unique(weights, return_counts=True)
    counts = {int(w): int(c) for w, c in zip(values, multiplicities)}
    wd = WeightDistribution(n=ds.length, k=ctx.m, counts=counts)
    wd.validate(ctx.p)
    return wd


def enumerator_string(wd: WeightDistribution) -> str:
    """1 + A_w1 z^w1 + ... in ascending weight order."""
    parts = ["1"]
    for w in sorted(wd.counts):
        if w == 0:
            continue
        parts.append(f"{wd.counts[w]}z^{w}")
    return "+".join(parts)


def parse_enumerator(text: str) -> dict[int, int]:
    """Inverse of enumerator_string; returns the weight -> count map."""
    counts: dict[int, int] = {}
    for term in text.replace(" ", "").split("+"):
        if "z" not in term:
            counts[0] = counts.get(0, 0) + int(term)
            continue
        coeff, _, power = term.partition("z^")
        counts[int(power)] = counts.get(int(power), 0) + int(coeff or 1)
    return counts


def generator_matrix(ds: DefiningSet) -> list[list[int]]:
    """m x n matrix whose row j is the codeword of the basis index x^j.

    Every codeword is the digit-combination of these rows; the rank over
    GF(p) must be m (checked).
    """
    ctx = ds.ctx
    tt = ctx.trace_table()
    rows = [[int(tt[ctx.mul(ctx.pow_of_basis(j), d)]) for d in ds.elements]
            for j in range(ctx.m)]
    if gf_rank(rows, ctx.p) != ctx.m:
        raise DimensionCollapseError("generator matrix is rank-deficient")
    return rows


def generator_matrix_csv(ds: DefiningSet) -> str:
    return "\n".join(" ".join(str(v) for v in row)
                     for row in generator_matrix(ds)) + "\n"


def code_json(ds: DefiningSet, wd: WeightDistribution) -> dict:
    ctx = ds.ctx
    out = {
        "p": ctx.p,
        "m": ctx.m,
        "modulus": ctx.modulus_text(),
        "coeffs": ",".join(ctx.element_text(c) for c in ds.analysis.f.coeffs),
        "alpha": ctx.element_text(ds.alpha),
    }
    out.update(wd.to_json())
    return out
