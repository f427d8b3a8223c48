"""Truncated Hermite-basis function spaces (1D and 2D) and exponentials of
at-most-quadratic operators in (y, grad) — the numerical engine behind every
representation operator.

Basis functions along each axis are the orthonormal Hermite functions of
lambda*y.  Polynomial and derivative operators then have exact sparse matrix
elements; exponentials of quadratic Hermitian generators are evaluated by
dense eigendecomposition (unitary to machine precision), while the
phase/shift displacements are evaluated in a padded basis and restricted to
the working block, which reproduces the continuum matrix elements instead of
corrupting large displacements at the cutoff.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace

import numpy as np

DEFAULT_RESOLUTION_TOL = 1e-8


class ResolutionWarning(UserWarning):
    """Raised (as a warning) when a state's truncation tail is unhealthy."""


def _ladder_matrices(n: int, lam: float) -> tuple[np.ndarray, np.ndarray]:
    """Matrices of y and d/dy in the orthonormal Hermite-function basis of
    lambda*y: <h_m| y |h_n> and <h_m| d/dy |h_n>."""
    up = np.sqrt((np.arange(n - 1) + 1.0) / 2.0)
    u_mat = np.zeros((n, n))
    u_mat[np.arange(n - 1), np.arange(1, n)] = up
    u_mat = u_mat + u_mat.T
    d_mat = np.zeros((n, n))
    d_mat[np.arange(n - 1), np.arange(1, n)] = up
    d_mat[np.arange(1, n), np.arange(n - 1)] = -up
    return u_mat / lam, d_mat * lam


class BasisContext:
    """Per-axis ladder matrices, parity, padded displacement machinery and a
    cache of eigendecompositions for operator exponentials."""

    def __init__(self, n: int, lam: float, dims: int, pad: int | None = None):
        if n < 4:
            raise ValueError("cutoff must be at least 4")
        if not lam > 0.0:
            raise ValueError("basis scale lambda must be positive")
        if dims not in (1, 2):
            raise ValueError("dims must be 1 or 2")
        self.n = n
        self.lam = lam
        self.dims = dims
        self.pad = (2 * n + 16) if pad is None else pad
        self.y1d, self.d1d = _ladder_matrices(n, lam)
        self.parity1d = (-1.0) ** np.arange(n)
        ypad, dpad = _ladder_matrices(n + self.pad, lam)
        self._wy, self._vy = np.linalg.eigh(ypad)
        self._wd, self._vd = np.linalg.eigh(1j * dpad)
        self._exp_cache: dict = {}
        self._disp_cache: dict = {}
        self._axis_op_cache: dict = {}

    # -- full-dimension operator matrices ------------------------------------
    def _axis_matrix(self, mat1d: np.ndarray, axis: int, tag: str) -> np.ndarray:
        key = (tag, axis)
        if key not in self._axis_op_cache:
            if self.dims == 1:
                self._axis_op_cache[key] = mat1d
            else:
                eye = np.eye(self.n)
                self._axis_op_cache[key] = (
                    np.kron(mat1d, eye) if axis == 0 else np.kron(eye, mat1d)
                )
        return self._axis_op_cache[key]

    def y_matrix(self, axis: int = 0) -> np.ndarray:
        return self._axis_matrix(self.y1d, axis, "y")

    def d_matrix(self, axis: int = 0) -> np.ndarray:
        return self._axis_matrix(self.d1d, axis, "d")

    def parity_vector(self) -> np.ndarray:
        """Diagonal of the parity operator over the flattened basis."""
        if self.dims == 1:
            return self.parity1d
        return np.multiply.outer(self.parity1d, self.parity1d)

    # -- padded 1D displacements ----------------------------------------------
    def phase_shift_1d(self, phase: float, shift: float) -> np.ndarray:
        """Matrix of (translation by `shift`) o (multiplication e^{i phase y})
        restricted to the working block."""
        key = (float(phase), float(shift))
        if key not in self._disp_cache:
            m_op = (self._vy * np.exp(1j * phase * self._wy)) @ self._vy.conj().T
            t_op = (self._vd * np.exp(1j * shift * self._wd)) @ self._vd.conj().T
            self._disp_cache[key] = np.ascontiguousarray((t_op @ m_op)[: self.n, : self.n])
        return self._disp_cache[key]


def ladder_build(n: int, lam: float, dims: int = 2, pad: int | None = None) -> BasisContext:
    """Build the basis context (ladder matrices and caches)."""
    return BasisContext(n, lam, dims, pad)


@dataclass(frozen=True)
class HermiteState:
    """Coefficient vector over the truncated Hermite basis."""

    dims: int
    n: int
    lam: float
    coeffs: np.ndarray

    def __post_init__(self):
        expected = (self.n,) if self.dims == 1 else (self.n, self.n)
        if self.coeffs.shape != expected:
            raise ValueError(f"coefficients must have shape {expected}")

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def normalized(self) -> "HermiteState":
        nn = self.norm()
        if nn == 0.0:
            raise ValueError("cannot normalize the zero state")
        return replace(self, coeffs=self.coeffs / nn)

    def overlap(self, other: "HermiteState") -> complex:
        return complex(np.vdot(self.coeffs, other.coeffs))

    def tail_fraction(self) -> float:
        """Fraction of the squared norm carried by the top quarter of modes
        along any axis."""
        cut = self.n - self.n // 4
        total = float(np.sum(np.abs(self.coeffs) ** 2))
        if total == 0.0:
            return 0.0
        if self.dims == 1:
            tail = float(np.sum(np.abs(self.coeffs[cut:]) ** 2))
        else:
            mask = np.zeros((self.n, self.n), dtype=bool)
            mask[cut:, :] = True
            mask[:, cut:] = True
            tail = float(np.sum(np.abs(self.coeffs[mask]) ** 2))
        return tail / total

    def is_well_resolved(self, tol: float = DEFAULT_RESOLUTION_TOL) -> bool:
        return self.tail_fraction() <= tol

    def to_json(self) -> str:
        import json

        return json.dumps(
            {
                "dims": self.dims,
                "N": self.n,
                "lambda": self.lam,
                "re": np.real(self.coeffs).ravel().tolist(),
                "im": np.imag(self.coeffs).ravel().tolist(),
            }
        )

    @staticmethod
    def from_json(text: str) -> "HermiteState":
        import json

        d = json.loads(text)
        dims, n = int(d["dims"]), int(d["N"])
        arr = np.array(d["re"], dtype=float) + 1j * np.array(d["im"], dtype=float)
        shape = (n,) if dims == 1 else (n, n)
        return HermiteState(dims=dims, n=n, lam=float(d["lambda"]), coeffs=arr.reshape(shape))


def ground_state(ctx: BasisContext) -> HermiteState:
    shape = (ctx.n,) if ctx.dims == 1 else (ctx.n, ctx.n)
    c = np.zeros(shape, dtype=complex)
    c[(0,) * ctx.dims] = 1.0
    return HermiteState(dims=ctx.dims, n=ctx.n, lam=ctx.lam, coeffs=c)


def probe_state(ctx: BasisContext, rng, kmax: int = 6) -> HermiteState:
    """Normalized pseudo-random state supported on modes <= kmax per axis."""
    shape = (ctx.n,) if ctx.dims == 1 else (ctx.n, ctx.n)
    c = np.zeros(shape, dtype=complex)
    if ctx.dims == 1:
        c[: kmax + 1] = rng.normal(size=kmax + 1) + 1j * rng.normal(size=kmax + 1)
    else:
        blk = rng.normal(size=(kmax + 1, kmax + 1)) + 1j * rng.normal(size=(kmax + 1, kmax + 1))
        c[: kmax + 1, : kmax + 1] = blk
    state = HermiteState(dims=ctx.dims, n=ctx.n, lam=ctx.lam, coeffs=c)
    return state.normalized()


@dataclass(frozen=True)
class QuadraticOperator:
    """Operator  const + ly.y + ld.grad + y.Qyy.y + grad.Qdd.grad
    + sum_ij Qyd_ij (y_i d_j + d_j y_i)/2  over `dims` axes.

    A `hermitian_generator` flag asserts the coefficient pattern that makes
    the assembled matrix Hermitian: real const, real ly, imaginary ld, real
    symmetric Qyy and Qdd, imaginary Qyd.
    """

    dims: int
    const: complex = 0.0
    lin_y: np.ndarray = field(default=None)
    lin_d: np.ndarray = field(default=None)
    quad_yy: np.ndarray = field(default=None)
    quad_dd: np.ndarray = field(default=None)
    quad_yd: np.ndarray = field(default=None)
    hermitian_generator: bool = False

    def __post_init__(self):
        d = self.dims
        for name, shape in (
            ("lin_y", (d,)),
            ("lin_d", (d,)),
            ("quad_yy", (d, d)),
            ("quad_dd", (d, d)),
            ("quad_yd", (d, d)),
        ):
            val = getattr(self, name)
            if val is None:
                object.__setattr__(self, name, np.zeros(shape, dtype=complex))
            else:
                arr = np.asarray(val, dtype=complex)
                if arr.shape != shape:
                    raise ValueError(f"{name} must have shape {shape}")
                object.__setattr__(self, name, arr)
        if self.hermitian_generator:
            self._check_hermitian_pattern()

    def _check_hermitian_pattern(self):
        tol = 1e-12
        ok = (
            abs(np.imag(self.const)) <= tol
            and np.max(np.abs(np.imag(self.lin_y)), initial=0.0) <= tol
            and np.max(np.abs(np.real(self.lin_d)), initial=0.0) <= tol
            and np.max(np.abs(np.imag(self.quad_yy)), initial=0.0) <= tol
            and np.max(np.abs(np.imag(self.quad_dd)), initial=0.0) <= tol
            and np.max(np.abs(self.quad_yy - self.quad_yy.T)) <= tol
            and np.max(np.abs(self.quad_dd - self.quad_dd.T)) <= tol
            and np.max(np.abs(np.real(self.quad_yd)), initial=0.0) <= tol
        )
        if not ok:
            raise ValueError("coefficients violate the hermitian-generator pattern")

    # -- linear algebra on operators ------------------------------------------
    def is_linear(self) -> bool:
        return (
            np.max(np.abs(self.quad_yy)) == 0.0
            and np.max(np.abs(self.quad_dd)) == 0.0
            and np.max(np.abs(self.quad_yd)) == 0.0
        )

    def __add__(self, other: "QuadraticOperator") -> "QuadraticOperator":
        if self.dims != other.dims:
            raise ValueError("dimension mismatch")
        return QuadraticOperator(
            dims=self.dims,
            const=self.const + other.const,
            lin_y=self.lin_y + other.lin_y,
            lin_d=self.lin_d + other.lin_d,
            quad_yy=self.quad_yy + other.quad_yy,
            quad_dd=self.quad_dd + other.quad_dd,
            quad_yd=self.quad_yd + other.quad_yd,
        )

    def __sub__(self, other: "QuadraticOperator") -> "QuadraticOperator":
        return self + (other * (-1.0))

    def __mul__(self, s: complex) -> "QuadraticOperator":
        return QuadraticOperator(
            dims=self.dims,
            const=self.const * s,
            lin_y=self.lin_y * s,
            lin_d=self.lin_d * s,
            quad_yy=self.quad_yy * s,
            quad_dd=self.quad_dd * s,
            quad_yd=self.quad_yd * s,
        )

    __rmul__ = __mul__

    def flag_hermitian(self) -> "QuadraticOperator":
        return replace(self, hermitian_generator=True)

    def cache_key(self) -> tuple:
        return (
            self.dims,
            complex(self.const),
            self.lin_y.tobytes(),
            self.lin_d.tobytes(),
            self.quad_yy.tobytes(),
            self.quad_dd.tobytes(),
            self.quad_yd.tobytes(),
        )

    @staticmethod
    def constant(dims: int, value: complex) -> "QuadraticOperator":
        return QuadraticOperator(dims=dims, const=value)

    @staticmethod
    def linear(dims: int, lin_y=None, lin_d=None, const: complex = 0.0) -> "QuadraticOperator":
        return QuadraticOperator(dims=dims, const=const, lin_y=lin_y, lin_d=lin_d)


def linear_product(a: QuadraticOperator, b: QuadraticOperator) -> QuadraticOperator:
    """Operator product of two at-most-linear operators, normal ordering
    resolved through [y_i, d_j] = -delta_ij (so d_i y_j = y_j d_i + delta_ij).

    The mixed part is stored in symmetrized form, which shifts half of each
    diagonal commutator into the constant.
    """
    if not (a.is_linear() and b.is_linear()):
        raise ValueError("linear_product expects linear operators")
    if a.dims != b.dims:
        raise ValueError("dimension mismatch")
    d = a.dims
    const = a.const * b.const + complex(np.dot(a.lin_d, b.lin_y))
    lin_y = a.const * b.lin_y + b.const * a.lin_y
    lin_d = a.const * b.lin_d + b.const * a.lin_d
    qyy = np.outer(a.lin_y, b.lin_y)
    qyy = 0.5 * (qyy + qyy.T)
    qdd = np.outer(a.lin_d, b.lin_d)
    qdd = 0.5 * (qdd + qdd.T)
    # (a.y)(b.d): y_i d_j with coefficient a_i b_j; (a.d)(b.y): d_i y_j ->
    # y_j d_i + delta_ij (constant already added above).
    qyd = np.outer(a.lin_y, b.lin_d) + np.outer(b.lin_y, a.lin_d)
    # convert normal-ordered y_i d_j into the symmetrized (y_i d_j + d_j y_i)/2:
    # y d = sym - 1/2 on the diagonal
    const -= 0.5 * complex(np.trace(qyd))
    return QuadraticOperator(
        dims=d, const=const, lin_y=lin_y, lin_d=lin_d, quad_yy=qyy, quad_dd=qdd, quad_yd=qyd
    )


def square_sum(ops: list[QuadraticOperator]) -> QuadraticOperator:
    """Sum of squares of linear operators."""
    acc = None
    for op in ops:
        sq = linear_product(op, op)
        acc = sq if acc is None else acc + sq
    return acc


def cross_product(p1, p2, k1, k2) -> QuadraticOperator:
    """P x K = P1 K2 - P2 K1 for linear operator components."""
    return linear_product(p1, k2) - linear_product(p2, k1)


def op_matrix(q: QuadraticOperator, ctx: BasisContext) -> np.ndarray:
    """Assemble the dense matrix of the operator over the flattened basis."""
    if q.dims != ctx.dims:
        raise ValueError("operator/context dimension mismatch")
    size = ctx.n**ctx.dims
    mat = np.zeros((size, size), dtype=complex)
    if q.const != 0.0:
        mat += q.const * np.eye(size)
    ys = [ctx.y_matrix(ax) for ax in range(ctx.dims)]
    ds = [ctx.d_matrix(ax) for ax in range(ctx.dims)]
    for i in range(q.dims):
        if q.lin_y[i] != 0.0:
            mat += q.lin_y[i] * ys[i]
        if q.lin_d[i] != 0.0:
            mat += q.lin_d[i] * ds[i]
        for j in range(q.dims):
            if q.quad_yy[i, j] != 0.0:
                mat += q.quad_yy[i, j] * (ys[i] @ ys[j])
            if q.quad_dd[i, j] != 0.0:
                mat += q.quad_dd[i, j] * (ds[i] @ ds[j])
            if q.quad_yd[i, j] != 0.0:
                mat += q.quad_yd[i, j] * 0.5 * (ys[i] @ ds[j] + ds[j] @ ys[i])
    return mat


def _exp_factors(q: QuadraticOperator, ctx: BasisContext):
    key = q.cache_key()
    if key not in ctx._exp_cache:
        mat = op_matrix(q, ctx)
        herm_defect = np.max(np.abs(mat - mat.conj().T))
        if herm_defect > 1e-10 * max(1.0, np.max(np.abs(mat))):
            raise ValueError(f"assembled generator not Hermitian (defect {herm_defect:.2e})")
        w, v = np.linalg.eigh(mat)
        ctx._exp_cache[key] = (w, v)
    return ctx._exp_cache[key]


def _warn_resolution(state: HermiteState, where: str, tol: float = DEFAULT_RESOLUTION_TOL):
    frac = state.tail_fraction()
    if frac > tol:
        warnings.warn(
            f"{where}: truncation tail {frac:.2e} exceeds {tol:.0e}", ResolutionWarning,
            stacklevel=3,
        )


def exp_apply(
    q: QuadraticOperator, t: float, psi: HermiteState, ctx: BasisContext
) -> HermiteState:
    """psi -> exp(i t M) psi with M the assembled matrix of q.

    Requires the hermitian-generator flag; the exponential is exactly unitary
    because it is evaluated through the eigendecomposition of M.
    """
    if not q.hermitian_generator:
        raise ValueError("exp_apply requires an operator flagged hermitian-generator")
    _warn_resolution(psi, "exp_apply input")
    w, v = _exp_factors(q, ctx)
    vec = psi.coeffs.reshape(-1)
    out = v @ (np.exp(1j * t * w) * (v.conj().T @ vec))
    return replace(psi, coeffs=out.reshape(psi.coeffs.shape))


def displacement_apply(phase, shift, psi: HermiteState, ctx: BasisContext) -> HermiteState:
    """Apply e^{i phase . y} followed by translation by `shift`.

    Both factors are exponentials of linear generators, evaluated per axis in
    the padded basis and restricted to the working block (the continuum
    matrix elements, not the exponential of the truncated generator).
    """
    phase = np.atleast_1d(np.asarray(phase, dtype=float))
    shift = np.atleast_1d(np.asarray(shift, dtype=float))
    if phase.shape != (ctx.dims,) or shift.shape != (ctx.dims,):
        raise ValueError("phase and shift must have one component per axis")
    if ctx.dims == 1:
        out = ctx.phase_shift_1d(phase[0], shift[0]) @ psi.coeffs
    else:
        b0 = ctx.phase_shift_1d(phase[0], shift[0])
        b1 = ctx.phase_shift_1d(phase[1], shift[1])
        out = b0 @ psi.coeffs @ b1.T
    result = replace(psi, coeffs=out)
    _warn_resolution(result, "displacement_apply output")
    return result


def parity_apply(psi: HermiteState, ctx: BasisContext) -> HermiteState:
    return replace(psi, coeffs=ctx.parity_vector() * psi.coeffs)
