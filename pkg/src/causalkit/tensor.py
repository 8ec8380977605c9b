"""Dense operators over named tensor wires.

Every operator carries an ordered tuple of :class:`WireLabel` entries and a
square complex matrix. Wire order is big-endian: the first wire is the most
significant factor, so for qubit wires ``(X, Y)`` the basis state ``|1>_X|0>_Y``
sits at index 2. All helpers key off wire *names*; positional bookkeeping never
leaks into calling code.

Numerical policy: matrices are dense ``complex128``, Hermitian spectra go
through ``numpy.linalg.eigvalsh`` only, and the default comparison tolerance is
``DEFAULT_TOL`` (absolute, entrywise).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

DEFAULT_TOL = 1e-9

# Row index letters are assigned per wire, column letters per wire; 26 wires
# is far above anything the package materializes (the largest object is a
# 6-wire qutrit operator).
_LETTERS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"


@dataclass(frozen=True)
class WireLabel:
    """A named tensor factor with a fixed local dimension (at least 2)."""

    name: str
    dim: int

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("wire name must be a non-empty string")
        if not isinstance(self.dim, int) or self.dim < 2:
            raise ValueError(f"wire {self.name!r} needs an integer dim >= 2, got {self.dim!r}")


@dataclass(frozen=True)
class LabeledOperator:
    """A square matrix together with the ordered wires it acts on.

    :param wires: ordered wire labels, names must be unique
    :param matrix: square array of size prod(dims), stored as complex128
    """

    wires: tuple[WireLabel, ...]
    matrix: np.ndarray

    def __post_init__(self) -> None:
        wires = tuple(self.wires)
        names = [w.name for w in wires]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate wire names: {names}")
        mat = np.asarray(self.matrix, dtype=np.complex128)
        dim = self.total_dim_of(wires)
        if mat.shape != (dim, dim):
            raise ValueError(f"matrix shape {mat.shape} does not match wire dims (total {dim})")
        object.__setattr__(self, "wires", wires)
        object.__setattr__(self, "matrix", mat)

    @staticmethod
    def total_dim_of(wires: Sequence[WireLabel]) -> int:
        out = 1
        for w in wires:
            out *= w.dim
        return out

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(w.dim for w in self.wires)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(w.name for w in self.wires)

    @property
    def total_dim(self) -> int:
        return self.total_dim_of(self.wires)

    def wire(self, name: str) -> WireLabel:
        for w in self.wires:
            if w.name == name:
                return w
        raise KeyError(f"no wire named {name!r}; have {self.names}")

    def as_tensor(self) -> np.ndarray:
        """Reshape to one row axis plus one column axis per wire."""
        return self.matrix.reshape(self.dims + self.dims)


def identity_operator(wires: Sequence[WireLabel]) -> LabeledOperator:
    """Identity matrix on the given wires."""
    wires = tuple(wires)
    return LabeledOperator(wires, np.eye(LabeledOperator.total_dim_of(wires)))


def kron(a: LabeledOperator, b: LabeledOperator) -> LabeledOperator:
    """Tensor product; wires of ``a`` stay most significant.

    Raises ValueError if the operands share a wire name.
    """
    overlap = set(a.names) & set(b.names)
    if overlap:
        raise ValueError(f"kron operands share wires {sorted(overlap)}")
    return LabeledOperator(a.wires + b.wires, np.kron(a.matrix, b.matrix))


def kron_all(ops: Iterable[LabeledOperator]) -> LabeledOperator:
    ops = list(ops)
    if not ops:
        raise ValueError("kron_all needs at least one operand")
    out = ops[0]
    for op in ops[1:]:
        out = kron(out, op)
    return out


def _check_names(op: LabeledOperator, names: Iterable[str]) -> set[str]:
    names = set(names)
    missing = names - set(op.names)
    if missing:
        raise KeyError(f"unknown wires {sorted(missing)}; operator has {op.names}")
    return names


def partial_trace(op: LabeledOperator, traced: Iterable[str]) -> LabeledOperator:
    """Trace out the named wires, keeping the rest in their original order."""
    traced = _check_names(op, traced)
    if not traced:
        return op
    n = len(op.wires)
    row = list(_LETTERS[:n])
    col = list(_LETTERS[n : 2 * n])
    for i, w in enumerate(op.wires):
        if w.name in traced:
            col[i] = row[i]
    kept = [i for i, w in enumerate(op.wires) if w.name not in traced]
    sub = "".join(row) + "".join(col) + "->" + "".join(row[i] for i in kept) + "".join(
        col[i] for i in kept
    )
    reduced = np.einsum(sub, op.as_tensor())
    new_wires = tuple(op.wires[i] for i in kept)
    dim = LabeledOperator.total_dim_of(new_wires)
    return LabeledOperator(new_wires, reduced.reshape(dim, dim))


def trace(op: LabeledOperator) -> complex:
    return complex(np.trace(op.matrix))


def partial_transpose(op: LabeledOperator, transposed: Iterable[str]) -> LabeledOperator:
    """Transpose the named wires in place (row and column axes swapped)."""
    transposed = _check_names(op, transposed)
    n = len(op.wires)
    tensor = op.as_tensor()
    axes = list(range(2 * n))
    for i, w in enumerate(op.wires):
        if w.name in transposed:
            axes[i], axes[n + i] = axes[n + i], axes[i]
    out = tensor.transpose(axes).reshape(op.total_dim, op.total_dim)
    return LabeledOperator(op.wires, out)


def permute_wires(op: LabeledOperator, new_order: Sequence[str]) -> LabeledOperator:
    """Reorder wires to ``new_order`` (a permutation of the current names)."""
    new_order = list(new_order)
    if sorted(new_order) != sorted(op.names):
        raise ValueError(f"{new_order} is not a permutation of {op.names}")
    n = len(op.wires)
    pos = {w.name: i for i, w in enumerate(op.wires)}
    perm = [pos[name] for name in new_order]
    axes = perm + [n + p for p in perm]
    new_wires = tuple(op.wires[p] for p in perm)
    out = op.as_tensor().transpose(axes).reshape(op.total_dim, op.total_dim)
    return LabeledOperator(new_wires, out)


def hermiticity_defect(op: LabeledOperator) -> float:
    return float(np.max(np.abs(op.matrix - op.matrix.conj().T)))


def min_eigenvalue(op: LabeledOperator, tol: float = DEFAULT_TOL) -> float:
    """Smallest eigenvalue of a Hermitian operator.

    The matrix must be Hermitian within ``tol``; it is symmetrized before the
    solve so eigvalsh sees an exactly Hermitian input. Raises ValueError on a
    non-Hermitian matrix rather than silently discarding the defect.
    """
    defect = hermiticity_defect(op)
    if defect > tol:
        raise ValueError(f"operator is not Hermitian (defect {defect:.3e} > tol {tol:.1e})")
    sym = (op.matrix + op.matrix.conj().T) / 2
    return float(np.linalg.eigvalsh(sym)[0])


def trace_and_replace(op: LabeledOperator, wires_x: Iterable[str]) -> LabeledOperator:
    """Trace out the named wires and re-insert a normalized identity on them.

    Returns ``(1/d_X) Tr_X(op) (x) I_X`` with the original wire order restored,
    so the result is directly comparable to ``op``.
    """
    wires_x = _check_names(op, wires_x)
    if not wires_x:
        return op
    reduced = partial_trace(op, wires_x)
    ident_wires = tuple(w for w in op.wires if w.name in wires_x)
    d_x = LabeledOperator.total_dim_of(ident_wires)
    if reduced.wires:
        combined = kron(reduced, identity_operator(ident_wires))
    else:
        combined = LabeledOperator(
            ident_wires, complex(reduced.matrix[0, 0]) * np.eye(d_x)
        )
    out = permute_wires(combined, op.names) if combined.names != op.names else combined
    return LabeledOperator(out.wires, out.matrix / d_x)


def product_trace(
    carriers: Sequence[LabeledOperator], effects: Sequence[LabeledOperator]
) -> complex:
    """Tr[(kron of carriers) @ (kron of effects)] without forming either kron.

    Each wire name must appear exactly once on each side; dimensions must
    match. The contraction is a single einsum over the factor tensors, so the
    cost is set by the largest factor rather than the full joint dimension.
    """
    carrier_wires: dict[str, int] = {}
    for op in carriers:
        for w in op.wires:
            if w.name in carrier_wires:
                raise ValueError(f"wire {w.name!r} appears twice among carriers")
            carrier_wires[w.name] = w.dim
    effect_wires: dict[str, int] = {}
    for op in effects:
        for w in op.wires:
            if w.name in effect_wires:
                raise ValueError(f"wire {w.name!r} appears twice among effects")
            effect_wires[w.name] = w.dim
    if carrier_wires != effect_wires:
        only_c = sorted(set(carrier_wires) - set(effect_wires))
        only_e = sorted(set(effect_wires) - set(carrier_wires))
        raise ValueError(
            f"carrier/effect wires differ (carriers only: {only_c}, effects only: {only_e})"
            if only_c or only_e
            else "carrier/effect wire dimensions differ"
        )

    letters = iter(_LETTERS)
    row = {name: next(letters) for name in carrier_wires}
    col = {name: next(letters) for name in carrier_wires}
    subs = []
    tensors = []
    for op in carriers:
        subs.append("".join(row[n] for n in op.names) + "".join(col[n] for n in op.names))
        tensors.append(op.as_tensor())
    # Tr[S M] = S_rc M_cr: effect factors are indexed column-first.
    for op in effects:
        subs.append("".join(col[n] for n in op.names) + "".join(row[n] for n in op.names))
        tensors.append(op.as_tensor())
    return complex(np.einsum(",".join(subs) + "->", *tensors, optimize=True))


def _format_entry(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}j"


def dump_operator(op: LabeledOperator) -> str:
    """Serialize to the plain-text wire/matrix format (17 significant digits)."""
    lines = ["wires: " + ",".join(f"{w.name}:{w.dim}" for w in op.wires)]
    for r in range(op.total_dim):
        lines.append(" ".join(_format_entry(op.matrix[r, c]) for c in range(op.total_dim)))
    return "\n".join(lines) + "\n"


def _parse_wire_line(line: str, expect_key: str = "wires") -> tuple[WireLabel, ...]:
    key, _, rest = line.partition(":")
    if key.strip() != expect_key:
        raise ValueError(f"expected {expect_key!r} header, got {line!r}")
    wires = []
    for item in rest.strip().split(","):
        name, _, dim = item.strip().rpartition(":")
        if not name:
            raise ValueError(f"malformed wire entry {item!r}")
        wires.append(WireLabel(name, int(dim)))
    return tuple(wires)


def load_operator(text: str) -> LabeledOperator:
    """Inverse of :func:`dump_operator`."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty operator dump")
    wires = _parse_wire_line(lines[0])
    dim = LabeledOperator.total_dim_of(wires)
    if len(lines) - 1 != dim:
        raise ValueError(f"expected {dim} matrix rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        entries = ln.split()
        if len(entries) != dim:
            raise ValueError(f"expected {dim} entries per row, found {len(entries)}")
        rows.append([complex(e) for e in entries])
    return LabeledOperator(wires, np.array(rows, dtype=np.complex128))
