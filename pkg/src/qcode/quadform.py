"""Homogeneous quadratic functions f(x) = sum_i Tr(a_i x^(p^i+1)) on GF(q).

Provides evaluation, the symmetric coordinate matrix of the form, its
rank and sign, the companion linearized map L with
f(x+y) = f(x) + f(y) + 2 Tr(L(x) y), kernel/image data, solvers for
L(x) = -b/2, and the two preset families Tr(u x^2) and
Tr(x^2) - (Tr(vx))^2 / Tr(v^2).

Sign convention: after congruence diagonalization with nonzero diagonal
d_1..d_r, the sign is the product of eta_bar(-d_i).  This is the unique
choice under which sum_x zeta^f(x) = sign * p^m * (p*)^(-r/2) holds
exactly, and it reproduces (-1)^(m-1) eta(-u) for f = Tr(u x^2).
"""

from __future__ import annotations

import numpy as np

from .errors import AlphaInImageError, PreconditionViolatedError, QCodeError
from .field import ExtField, eta_bar
from .linalg import LinearSolver, mat_copy, mat_transpose, nullspace, rank, rref

_checked_pairs: set = set()


class QuadraticFunction:
    """Coefficient list (a_0, ..., a_{m-1}) over GF(q) defining the form."""

    def __init__(self, ctx: ExtField, coeffs):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != ctx.m:
            raise PreconditionViolatedError(
                f"need {ctx.m} coefficients, got {len(coeffs)}")
        if not all(0 <= c < ctx.q for c in coeffs):
            raise PreconditionViolatedError("coefficient encoding out of range")
        self.ctx = ctx
        self.coeffs = coeffs
        self._values: np.ndarray | None = None

    def evaluate(self, x: int) -> int:
        ctx = self.ctx
        acc = 0
        for i, a in enumerate(self.coeffs):
            if a:
                acc = (acc + ctx.trace(ctx.mul(a, ctx.mul(ctx.frobenius(x, i), x)))) % ctx.p
        return acc

    def values(self) -> np.ndarray:
        """(q,) int64 array of f(x) for every element; cached."""
        if self._values is None:
            ctx = self.ctx
            out = np.zeros(ctx.q, dtype=np.int64)
            for x in ctx.elements():
                out[x] = self.evaluate(x)
            self._values = out
        return self._values

    def __eq__(self, other) -> bool:
        return (isinstance(other, QuadraticFunction)
                and self.ctx == other.ctx and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.ctx, self.coeffs))

    def __repr__(self) -> str:
        return f"QuadraticFunction({self.ctx!r}, coeffs={list(self.coeffs)})"


def gram_matrix(f: QuadraticFunction) -> list[list[int]]:
    """Symmetric matrix H over GF(p) with digits(x) H digits(x)^T = f(x)."""
    ctx = f.ctx
    p, m = ctx.p, ctx.m
    inv2 = (p + 1) // 2
    basis = [ctx.pow_of_basis(j) for j in range(m)]
    h = [[0] * m for _ in range(m)]
    for j in range(m):
        for k in range(j, m):
            acc = 0
            for i, a in enumerate(f.coeffs):
                if a:
                    vj, vk = basis[j], basis[k]
                    term = ctx.add(ctx.mul(ctx.frobenius(vj, i), vk),
                                   ctx.mul(vj, ctx.frobenius(vk, i)))
                    acc = (acc + ctx.trace(ctx.mul(a, term))) % p
            h[j][k] = h[k][j] = acc * inv2 % p
    return h


def congruence_diagonalize(h: list[list[int]], p: int) -> tuple[int, int, int]:
    """Diagonalize a symmetric matrix by congruence over GF(p), p odd.

    Returns (rank, delta, sign): delta is the product of the nonzero
    diagonal entries (empty product 1), sign = eta_bar((-1)^rank * delta).
    Pivoting is deterministic: prefer the leftmost nonzero trailing
    diagonal entry (swap), else add the leftmost row+column with a
    nonzero entry in the pivot row, else skip the zero row.
    """
    a = mat_copy(h)
    n = len(a)
    for i in range(n):
        if a[i][i] % p == 0:
            j = next((k for k in range(i + 1, n) if a[k][k] % p), None)
            if j is not None:
                a[i], a[j] = a[j], a[i]
                for row in a:
                    row[i], row[j] = row[j], row[i]
            else:
                j = next((k for k in range(i + 1, n) if a[i][k] % p), None)
                if j is None:
                    continue
                # both diagonals vanish here, so the new pivot 2*a[i][j] != 0
                for k in range(n):
                    a[i][k] = (a[i][k] + a[j][k]) % p
                for k in range(n):
                    a[k][i] = (a[k][i] + a[k][j]) % p
        piv = a[i][i] % p
        inv_piv = pow(piv, p - 2, p)
        for r in range(i + 1, n):
            fct = a[r][i] * inv_piv % p
            if fct:
                for k in range(n):
                    a[r][k] = (a[r][k] - fct * a[i][k]) % p
                for k in range(n):
                    a[k][r] = (a[k][r] - fct * a[k][i]) % p
    diag = [a[i][i] % p for i in range(n)]
    r = sum(1 for d in diag if d)
    delta = 1
    for d in diag:
        if d:
            delta = delta * d % p
    sign = eta_bar((-1) ** r * delta, p)
    return r, delta, sign


class FormAnalysis:
    """Cached structural data of a quadratic function.

    Attributes
    ----------
    gram : symmetric m x m matrix over GF(p) representing the form.
    rank, sign : rank and sign of the form (see module docstring).
    l_coeffs : coefficients c_i of the companion linearized map
        L(x) = sum_i c_i x^(p^i).
    lmat : matrix of L on the digit basis (columns are images of x^j).
    ker_basis, im_basis : element encodings spanning Ker(L) and Im(L).
    """

    def __init__(self, f: QuadraticFunction):
        ctx = f.ctx
        p, m = ctx.p, ctx.m
        self.f = f
        self.ctx = ctx
        self.gram = gram_matrix(f)
        self.rank, self.delta, self.sign = congruence_diagonalize(self.gram, p)

        inv2 = (p + 1) // 2
        self.l_coeffs = tuple(
            ctx.scalar_mul(inv2, ctx.add(f.coeffs[i],
                                         ctx.frobenius(f.coeffs[(m - i) % m], i)))
            for i in range(m))
        cols = [ctx.digits(self.l_apply(ctx.pow_of_basis(j))) for j in range(m)]
        self.lmat = [[cols[j][i] for j in range(m)] for i in range(m)]
        l_rank = rank(self.lmat, p)
        if l_rank != self.rank:
            raise QCodeError(
                f"rank disagreement: matrix {self.rank} vs linear map {l_rank}")
        self._solver = LinearSolver(self.lmat, p)
        self.ker_basis = tuple(ctx._encode(list(v)) for v in nullspace(self.lmat, p))
        red, pivots = _column_space(self.lmat, p)
        self.im_basis = tuple(ctx._encode(list(v)) for v in red)
        self._kernel_elements: tuple[int, ...] | None = None
        self._neg_half = ctx.neg(ctx.embed_scalar((p + 1) // 2))
        self._xb_cache: dict[int, int | None] = {}
        if _spot_check_enabled(ctx):
            self._spot_check()

    # -- the linearized companion map ---------------------------------------

    def l_apply(self, x: int) -> int:
        ctx = self.ctx
        acc = 0
        for i, c in enumerate(self.l_coeffs):
            if c:
                acc = ctx.add(acc, ctx.mul(c, ctx.frobenius(x, i)))
        return acc

    def kernel_elements(self) -> tuple[int, ...]:
        """All of Ker(L), enumerated from the basis; cached."""
        if self._kernel_elements is None:
            ctx = self.ctx
            elems = [0]
            for b in self.ker_basis:
                new = []
                for e in elems:
                    cur = e
                    for _ in range(ctx.p - 1):
                        cur = ctx.add(cur, b)
                        new.append(cur)
                elems.extend(new)
            self._kernel_elements = tuple(sorted(elems))
        return self._kernel_elements

    def in_image(self, b: int) -> bool:
        return self.solve_xb(b) is not None

    def solve_xb(self, b: int) -> int | None:
        """Solution of L(x) = -b/2 with the smallest encoding, or None.

        The value f(solve_xb(b)) does not depend on the coset
        representative (f vanishes on Ker(L) and Tr(b * Ker(L)) = 0 for
        b in Im(L)), but a deterministic representative keeps reports
        reproducible.
        """
        if b in self._xb_cache:
            return self._xb_cache[b]
        ctx = self.ctx
        target = ctx.mul(self._neg_half, b)
        x0 = self._solver.solve(list(ctx.digits(target)))
        if x0 is None:
            result = None
        else:
            enc0 = ctx._encode(x0)
            result = min(ctx.add(enc0, k) for k in self.kernel_elements())
        self._xb_cache[b] = result
        return result

    def f_at_xb(self, b: int) -> int | None:
        xb = self.solve_xb(b)
        return None if xb is None else self.f.evaluate(xb)

    def in_shifted_image(self, alpha: int, beta: int) -> int | None:
        """The unique z in GF(p)* with alpha - z*beta in Im(L), if any.

        Requires alpha outside Im(L) and beta nonzero; at most one such z
        exists, and the caller may then solve L(x') = -(alpha - z*beta)/2.
        """
        ctx = self.ctx
        if self.in_image(alpha):
            raise AlphaInImageError("alpha lies in Im(L); no shifted search applies")
        if beta == 0:
            raise PreconditionViolatedError("beta must be nonzero")
        hits = [z for z in range(1, ctx.p)
                if self.in_image(ctx.sub(alpha, ctx.scalar_mul(z, beta)))]
        if len(hits) > 1:
            raise QCodeError(f"shifted-image z is not unique: {hits}")
        return hits[0] if hits else None

    def __repr__(self) -> str:
        return (f"FormAnalysis(rank={self.rank}, sign={self.sign}, "
                f"coeffs={list(self.f.coeffs)})")

    def _spot_check(self) -> None:
        """One-time identity checks per (field, coeffs): the matrix
        reproduces f and the bilinear identity holds on sampled pairs."""
        key = (self.ctx.p, self.ctx.m, self.ctx.modulus, self.f.coeffs)
        if key in _checked_pairs:
            return
        _checked_pairs.add(key)
        ctx = self.ctx
        rng = np.random.default_rng(0xC0DE)
        if ctx.q <= 81:
            xs = list(ctx.elements())
        else:
            xs = [int(v) for v in rng.integers(0, ctx.q, size=24)]
        for x in xs:
            dx = ctx.digits(x)
            via_mat = sum(dx[j] * self.gram[j][k] * dx[k]
                          for j in range(ctx.m) for k in range(ctx.m)) % ctx.p
            if via_mat != self.f.evaluate(x):
                raise QCodeError(f"matrix does not reproduce the form at x={x}")
        for x in xs[:12]:
            for y in xs[:12]:
                lhs = self.f.evaluate(ctx.add(x, y))
                rhs = (self.f.evaluate(x) + self.f.evaluate(y)
                       + 2 * ctx.trace(ctx.mul(self.l_apply(x), y))) % ctx.p
                if lhs != rhs:
                    raise QCodeError(f"bilinear identity fails at ({x}, {y})")


def _spot_check_enabled(ctx: ExtField) -> bool:
    return ctx.q <= 5**6


def _column_space(a: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Basis of the column space (as vectors) via rref of the transpose."""
    red, pivots = rref(mat_transpose(a), p)
    return [red[i] for i in range(len(pivots))], pivots


def analyze(f: QuadraticFunction) -> FormAnalysis:
    return FormAnalysis(f)


def preset_cor1(ctx: ExtField, u: int) -> QuadraticFunction:
    """f(x) = Tr(u x^2), u nonzero: full rank m, companion map x -> u x."""
    if u == 0:
        raise PreconditionViolatedError("u must be nonzero")
    return QuadraticFunction(ctx, (u,) + (0,) * (ctx.m - 1))


def preset_trace_square_minus(ctx: ExtField, v: int) -> QuadraticFunction:
    """f(x) = Tr(x^2) - (Tr(vx))^2 / Tr(v^2), for v with Tr(v^2) != 0.

    Expanded onto the coefficient basis through
    (Tr(vx))^2 = sum_j Tr(v^(p^j+1) x^(p^j+1)): rank m-1, companion map
    x -> x - (v / Tr(v^2)) Tr(vx).
    """
    if v == 0:
        raise PreconditionViolatedError("v must be nonzero")
    tv2 = ctx.trace(ctx.mul(v, v))
    if tv2 == 0:
        raise PreconditionViolatedError("Tr(v^2) must be nonzero")
    inv_tv2 = pow(tv2, ctx.p - 2, ctx.p)
    coeffs = []
    for j in range(ctx.m):
        vpj1 = ctx.mul(ctx.frobenius(v, j), v)
        cj = ctx.neg(ctx.scalar_mul(inv_tv2, vpj1))
        if j == 0:
            cj = ctx.add(1, cj)
        coeffs.append(cj)
    return QuadraticFunction(ctx, coeffs)


def parse_preset(ctx: ExtField, spec: str) -> QuadraticFunction:
    """Preset selector text: "cor1:u=<elt>" or "trmv:v=<elt>"."""
    name, _, arg = spec.partition(":")
    key, _, val = arg.partition("=")
    if name == "cor1" and key == "u":
        return preset_cor1(ctx, ctx.parse_element(val))
    if name == "trmv" and key == "v":
        return preset_trace_square_minus(ctx, ctx.parse_element(val))
    raise PreconditionViolatedError(f"unknown preset spec: {spec!r}")
