"""Builders and serializers for the matrix families A_q, B_q, X and Y.

Indices are 1-based in the mathematics: entry ``(m, n)`` of the matrix lives
at array position ``[m - 1, n - 1]``.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .cyclotomic import CycloElem, lift_exponents, to_float_array
from .errors import DomainError, GuardError
from .numtheory import lcm_range
from .sums import kloosterman_coeff_table, ramanujan_table

KINDS = ("Aq", "Bq", "X", "Y")
MAX_Q_SINGLE = 256
MAX_Q_SUM = 8
# dense exact cyclotomic products are allowed up to this dimension
MAX_EXACT_CYCLO_DIM = 64


@dataclass(frozen=True, eq=False)
class IntMatrix:
    kind: str
    param: int
    entries: np.ndarray

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]

    @property
    def scale(self) -> int:
        """The constant c with M^2 = c M (q for A_q, x for X)."""
        return self.dimension

    @property
    def floats(self) -> np.ndarray:
        return self.entries.astype(np.float64)

    def entry(self, m: int, n: int) -> int:
        return int(self.entries[m - 1, n - 1])


@dataclass(frozen=True, eq=False)
class CycloMatrix:
    """Square matrix over Z[zeta_order] stored as a sum of periodic blocks.

    Each block ``(q, table)`` holds S(m, n; q) for ``1 <= m, n <= q`` in
    Z[zeta_q]; entry (m, n) of the matrix is the sum over blocks of the entry
    at ``((m-1) % q, (n-1) % q)``, lifted to order ``order`` via
    ``zeta_q = zeta_order ** (order // q)``.
    """

    kind: str
    param: int
    dimension: int
    order: int
    blocks: tuple[tuple[int, np.ndarray], ...]
    floats: np.ndarray = field(repr=False)

    @property
    def scale(self) -> int:
        return self.dimension

    def entry(self, m: int, n: int) -> CycloElem:
        coeffs = np.zeros(self.order, dtype=np.int64)
        for q, table in self.blocks:
            coeffs[:: self.order // q] += table[(m - 1) % q, (n - 1) % q]
        return CycloElem.from_array(self.order, coeffs)

    def diagonal_coeffs(self) -> np.ndarray:
        d, o = self.dimension, self.order
        out = np.zeros((d, o), dtype=np.int64)
        idx = np.arange(d)
        for q, table in self.blocks:
            out[:, :: o // q] += table[idx % q, idx % q]
        return out

    def dense_coeffs(self, limit: int = MAX_EXACT_CYCLO_DIM) -> np.ndarray:
        """Full ``(d, d, order)`` coefficient array; guarded by ``limit``."""
        if self.dimension > limit:
            raise GuardError("dimension", self.dimension, limit)
        return self._dense

    @cached_property
    def _dense(self) -> np.ndarray:
        d, o = self.dimension, self.order
        out = np.zeros((d, d, o), dtype=np.int64)
        for q, table in self.blocks:
            reps = d // q
            out += np.tile(lift_exponents(table, q, o), (reps, reps, 1))
        return out


def _tile(block: np.ndarray, d: int) -> np.ndarray:
    reps = d // block.shape[0]
    return np.tile(block, (reps, reps) + (1,) * (block.ndim - 2))


def _circulant_from_table(table, d: int) -> np.ndarray:
    q = len(table)
    idx = np.arange(d)
    diff = (idx[:, None] - idx[None, :]) % q
    return np.asarray(table, dtype=np.int64)[diff]


def build_ramanujan_matrix(q: int) -> IntMatrix:
    return IntMatrix("Aq", q, _circulant_from_table(ramanujan_table(q), q))


def build_ramanujan_sum_matrix(Q: int) -> IntMatrix:
    x = lcm_range(Q)
    entries = np.zeros((x, x), dtype=np.int64)
    for q in range(1, Q + 1):
        entries += _circulant_from_table(ramanujan_table(q), x)
    return IntMatrix("X", Q, entries)


def _kloosterman_block(q: int) -> tuple[np.ndarray, np.ndarray]:
    table = kloosterman_coeff_table(q)
    return table, to_float_array(table, q).real


def build_kloosterman_matrix(q: int) -> CycloMatrix:
    table, floats = _kloosterman_block(q)
    return CycloMatrix("Bq", q, q, q, ((q, table),), floats)


def build_kloosterman_sum_matrix(Q: int) -> CycloMatrix:
    x = lcm_range(Q)
    blocks = []
    floats = np.zeros((x, x))
    for q in range(1, Q + 1):
        table, fl = _kloosterman_block(q)
        blocks.append((q, table))
        floats += _tile(fl, x)
    return CycloMatrix("Y", Q, x, x, tuple(blocks), floats)


def check_params(kind: str, param: int) -> None:
    if kind not in KINDS:
        raise DomainError(f"unknown matrix kind {kind!r}; expected one of {KINDS}")
    if not isinstance(param, int) or param < 1:
        raise DomainError(f"parameter must be a positive integer, got {param!r}")
    limit = MAX_Q_SINGLE if kind in ("Aq", "Bq") else MAX_Q_SUM
    if param > limit:
        raise GuardError("q" if kind in ("Aq", "Bq") else "Q", param, limit)


def build_matrix(kind: str, param: int):
    """Build A_q / B_q (param = q) or X / Y (param = Q, dimension lcm(1..Q))."""
    check_params(kind, param)
    builder = {
        "Aq": build_ramanujan_matrix,
        "Bq": build_kloosterman_matrix,
        "X": build_ramanujan_sum_matrix,
        "Y": build_kloosterman_sum_matrix,
    }[kind]
    return builder(param)


def companion(matrix: CycloMatrix) -> IntMatrix:
    """The integer matrix T with M^2 = c T: A_q for B_q, X for Y."""
    return build_matrix("Aq" if matrix.kind == "Bq" else "X", matrix.param)


def _fmt_float(v: float) -> str:
    if abs(v) < 1e-10:
        v = 0.0
    return f"{v:#.12g}"


def export_matrix(matrix, fmt: str = "csv", exact: bool = False) -> bytes:
    """Serialize to CSV (no header) or JSON ``{kind, param, dimension, entries[, exact]}``."""
    is_int = isinstance(matrix, IntMatrix)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if is_int:
            writer.writerows(matrix.entries.tolist())
        else:
            writer.writerows([[_fmt_float(v) for v in row] for row in matrix.floats])
        return buf.getvalue().encode()
    if fmt == "json":
        doc = {
            "kind": matrix.kind,
            "param": matrix.param,
            "dimension": matrix.dimension,
            "entries": matrix.entries.tolist() if is_int else [[float(_fmt_float(v)) for v in row] for row in matrix.floats],
        }
        if exact and not is_int:
            doc["exact"] = {"order": matrix.order, "coeffs": matrix.dense_coeffs().tolist()}
        return json.dumps(doc).encode()
    raise DomainError(f"unknown format {fmt!r}")
