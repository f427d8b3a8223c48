"""Structure-constant tables for the (2+1) kinematical algebras, Jacobi
verification, the space-velocity contraction of the de Sitter algebras, and
the Kirillov two-form.

Generator ordering is fixed once and for all:

    extended basis   (F, M, H, P1, P2, K1, K2, J)
    unextended basis (H, P1, P2, K1, K2, J)

The oscillating Newton-Hooke algebra carries [P_i, H] = -(1/tau^2) K_i; the
expanding one flips that sign (convention checked against the oscillating
commutators, which are the authoritative ones).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

EXTENDED_BASIS = ("F", "M", "H", "P1", "P2", "K1", "K2", "J")
UNEXTENDED_BASIS = ("H", "P1", "P2", "K1", "K2", "J")


class AlgebraName(Enum):
    DS_PLUS = "dS_plus"
    DS_MINUS = "dS_minus"
    NH_PLUS = "NH_plus"
    NH_MINUS = "NH_minus"
    GALILEI = "Galilei"
    POINCARE = "Poincare"


@dataclass(frozen=True)
class StructureTable:
    """Dense rank-3 array of structure constants c[i][j][k] over the ordered
    generator basis, with antisymmetry c[i][j][k] = -c[j][i][k] exact by
    construction."""

    name: AlgebraName
    extended: bool
    params: dict
    constants: np.ndarray
    metadata: dict = field(default_factory=dict)

    @property
    def basis(self) -> tuple[str, ...]:
        return EXTENDED_BASIS if self.extended else UNEXTENDED_BASIS

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, gen: str) -> int:
        return self.basis.index(gen)

    def bracket(self, x: str, y: str) -> dict[str, float]:
        """[x, y] as a map generator-name -> coefficient (zeros dropped)."""
        row = self.constants[self.index(x), self.index(y)]
        return {g: float(c) for g, c in zip(self.basis, row) if c != 0.0}

    def to_json(self) -> str:
        brackets = []
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(n):
                    val = self.constants[i, j, k]
                    if val != 0.0:
                        brackets.append({"i": i, "j": j, "k": k, "value": float(val)})
        return json.dumps(
            {
                "name": self.name.value,
                "extended": self.extended,
                "params": self.params,
                "brackets": brackets,
            }
        )

    @staticmethod
    def from_json(text: str) -> "StructureTable":
        d = json.loads(text)
        extended = bool(d["extended"])
        n = 8 if extended else 6
        c = np.zeros((n, n, n))
        for item in d["brackets"]:
            i, j, k, val = item["i"], item["j"], item["k"], float(item["value"])
            c[i, j, k] = val
            c[j, i, k] = -val
        return StructureTable(
            name=AlgebraName(d["name"]),
            extended=extended,
            params=dict(d["params"]),
            constants=c,
        )


class _Builder:
    def __init__(self, basis):
        self.basis = basis
        n = len(basis)
        self.c = np.zeros((n, n, n))

    def set(self, x: str, y: str, target: str, value: float) -> None:
        i, j, k = self.basis.index(x), self.basis.index(y), self.basis.index(target)
        self.c[i, j, k] = value
        self.c[j, i, k] = -value


def _require_positive(params: dict, key: str) -> float:
    if key not in params:
        raise ValueError(f"missing required parameter {key!r}")
    val = float(params[key])
    if not val > 0.0:
        raise ValueError(f"parameter {key!r} must be positive, got {val}")
    return val


def build_table(name: AlgebraName | str, extended: bool = False, **params) -> StructureTable:
    """Build the structure-constant table of the named algebra.

    Parameters: de Sitter tables need c and R (speed and curvature radius),
    Newton-Hooke tables need tau, Galilei and Poincare need none.  Central
    extensions are nontrivial only for Newton-Hooke and Galilei; requesting an
    extended de Sitter or Poincare table returns the unextended one with the
    metadata flag ``extension_trivial``.
    """
    if isinstance(name, str):
        name = AlgebraName(name)
    metadata: dict = {}
    if name in (AlgebraName.DS_PLUS, AlgebraName.DS_MINUS, AlgebraName.POINCARE) and extended:
        extended = False
        metadata["extension_trivial"] = True

    basis = EXTENDED_BASIS if extended else UNEXTENDED_BASIS
    bld = _Builder(basis)

    # rotations and boost-time brackets, shared by all four algebras
    bld.set("J", "K1", "K2", 1.0)
    bld.set("J", "K2", "K1", -1.0)
    bld.set("J", "P1", "P2", 1.0)
    bld.set("J", "P2", "P1", -1.0)
    bld.set("K1", "H", "P1", 1.0)
    bld.set("K2", "H", "P2", 1.0)

    kept: dict = {}
    if name in (AlgebraName.DS_PLUS, AlgebraName.DS_MINUS):
        cc = _require_positive(params, "c")
        rr = _require_positive(params, "R")
        kept = {"c": cc, "R": rr}
        sign = -1.0 if name is AlgebraName.DS_MINUS else 1.0
        inv_c2 = 1.0 / (cc * cc)
        inv_r2 = 1.0 / (rr * rr)
        bld.set("K1", "K2", "J", -inv_c2)
        bld.set("K1", "P1", "H", inv_c2)
        bld.set("K2", "P2", "H", inv_c2)
        bld.set("P1", "P2", "J", sign * inv_r2)
        bld.set("P1", "H", "K1", sign * (cc / rr) ** 2)
        bld.set("P2", "H", "K2", sign * (cc / rr) ** 2)
    elif name in (AlgebraName.NH_PLUS, AlgebraName.NH_MINUS):
        tau = _require_positive(params, "tau")
        kept = {"tau": tau}
        sign = -1.0 if name is AlgebraName.NH_MINUS else 1.0
        bld.set("P1", "H", "K1", sign / (tau * tau))
        bld.set("P2", "H", "K2", sign / (tau * tau))
        if extended:
            bld.set("K1", "P1", "M", 1.0)
            bld.set("K2", "P2", "M", 1.0)
            bld.set("K1", "K2", "F", 1.0)
            # the [P, P] extension carries the same sign flip as [P, H]:
            # Jacobi on (P1, K2, H) forces it (oscillating: +1/tau^2)
            bld.set("P1", "P2", "F", -sign / (tau * tau))
    elif name is AlgebraName.GALILEI:
        if extended:
            bld.set("K1", "P1", "M", 1.0)
            bld.set("K2", "P2", "M", 1.0)
            bld.set("K1", "K2", "F", 1.0)
    elif name is AlgebraName.POINCARE:
        bld.set("K1", "K2", "J", -1.0)
        bld.set("K1", "P1", "H", 1.0)
        bld.set("K2", "P2", "H", 1.0)
    else:  # pragma: no cover
        raise ValueError(f"unknown algebra {name}")

    return StructureTable(name=name, extended=extended, params=kept, constants=bld.c, metadata=metadata)


def jacobi_residual(table: StructureTable) -> float:
    """Max over generator triples and components of the Jacobi cycle
    [[X,Y],Z] + [[Y,Z],X] + [[Z,X],Y] computed through the table."""
    c = table.constants
    t1 = np.einsum("xyk,kzw->xyzw", c, c)
    cyc = t1 + np.transpose(t1, (1, 2, 0, 3)) + np.transpose(t1, (2, 0, 1, 3))
    return float(np.max(np.abs(cyc)))


def antisymmetry_exact(table: StructureTable) -> bool:
    c = table.constants
    return bool(np.all(c == -np.transpose(c, (1, 0, 2))))


def contract(ds_table: StructureTable, c: float, R: float) -> StructureTable:
    """Re-evaluate a de Sitter table at new (c, R).

    As c, R -> infinity with c/R fixed the brackets carrying 1/c^2 and 1/R^2
    die off and the table converges to the Newton-Hooke table of the same
    sign with tau = R/c; the deviation is O(1/c^2).
    """
    if ds_table.name not in (AlgebraName.DS_PLUS, AlgebraName.DS_MINUS):
        raise ValueError("contract expects a de Sitter table")
    out = build_table(ds_table.name, extended=False, c=c, R=R)
    meta = dict(out.metadata)
    meta["tau"] = R / c
    return StructureTable(out.name, out.extended, out.params, out.constants, meta)


def nh_limit_of(ds_name: AlgebraName) -> AlgebraName:
    return AlgebraName.NH_MINUS if ds_name is AlgebraName.DS_MINUS else AlgebraName.NH_PLUS


def max_table_deviation(t1: StructureTable, t2: StructureTable) -> float:
    if t1.basis != t2.basis:
        raise ValueError("tables use different bases")
    return float(np.max(np.abs(t1.constants - t2.constants)))


@dataclass(frozen=True)
class KirillovMatrix:
    """Antisymmetric pairing B[i][j] = <xi, [X_i, X_j]> at a dual point."""

    point: np.ndarray
    matrix: np.ndarray


def dual_coordinates(xi) -> np.ndarray:
    """Coordinates of a dual point in the ordered dual basis
    (f, m, h, p1, p2, k1, k2, j).  Accepts a DualPoint or an 8-sequence."""
    if hasattr(xi, "f"):
        return np.array(
            [xi.f, xi.m, xi.h, xi.p.x1, xi.p.x2, xi.k.x1, xi.k.x2, xi.j], dtype=float
        )
    arr = np.asarray(xi, dtype=float)
    if arr.shape != (8,):
        raise ValueError("expected a DualPoint or an 8-vector of dual coordinates")
    return arr


def kirillov_matrix(table: StructureTable, xi) -> KirillovMatrix:
    """B[i][j] = sum_k c[i][j][k] xi_k on the extended table."""
    if not table.extended:
        raise ValueError("kirillov_matrix expects an extended table")
    coords = dual_coordinates(xi)
    mat = np.einsum("ijk,k->ij", table.constants, coords)
    return KirillovMatrix(point=coords, matrix=mat)


def rank(km: KirillovMatrix | np.ndarray, tol: float = 1e-9) -> int:
    """Number of singular values above tol times the largest one."""
    mat = km.matrix if isinstance(km, KirillovMatrix) else np.asarray(km)
    sv = np.linalg.svd(mat, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.sum(sv > tol * sv[0]))
