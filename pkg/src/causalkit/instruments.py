"""Quantum instruments as labeled Choi-Jamiolkowski operator families.

An instrument is a finite list of CJ operators, one per classical outcome,
each acting on the same ordered wires. The convention throughout the package
is direct contraction: a measure-and-prepare branch that detects basis vector
``b`` and re-prepares ``p`` is literally |b><b| (x) |p><p|, and probabilities
are plain traces against the carrying process, with no transpose inserted at
contraction time.

Wire roles are declared, not positional: ``input_wires`` lists everything the
instrument reads (ancillary state wires first, then the lab input wire) and
``output_wires`` what it emits. Completeness is the Choi trace-preservation
condition Tr_out(sum_k M_k) = I_in.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Sequence

import numpy as np

from .tensor import (
    DEFAULT_TOL,
    LabeledOperator,
    WireLabel,
    hermiticity_defect,
    identity_operator,
    kron,
    min_eigenvalue,
    partial_trace,
    permute_wires,
)


@dataclass(frozen=True)
class Instrument:
    """CJ operators per outcome, plus the wire-role split."""

    ops: tuple[LabeledOperator, ...]
    input_wires: tuple[str, ...]
    output_wires: tuple[str, ...]

    def __post_init__(self) -> None:
        ops = tuple(self.ops)
        if not ops:
            raise ValueError("an instrument needs at least one outcome")
        names = ops[0].names
        for op in ops[1:]:
            if op.names != names:
                raise ValueError("all outcome operators must share the same wires")
        declared = set(self.input_wires) | set(self.output_wires)
        if set(self.input_wires) & set(self.output_wires):
            raise ValueError("a wire cannot be both input and output")
        if declared != set(names):
            raise ValueError(
                f"declared wires {sorted(declared)} do not match operator wires {names}"
            )
        object.__setattr__(self, "ops", ops)
        object.__setattr__(self, "input_wires", tuple(self.input_wires))
        object.__setattr__(self, "output_wires", tuple(self.output_wires))

    @property
    def n_outcomes(self) -> int:
        return len(self.ops)

    @property
    def wires(self) -> tuple[WireLabel, ...]:
        return self.ops[0].wires

    def total(self) -> LabeledOperator:
        acc = self.ops[0].matrix.copy()
        for op in self.ops[1:]:
            acc = acc + op.matrix
        return LabeledOperator(self.wires, acc)


@dataclass(frozen=True)
class InstrumentReport:
    outcome_min_eigs: tuple[float, ...]
    hermiticity: float
    tp_residual: float
    tolerance: float = DEFAULT_TOL

    @property
    def psd_ok(self) -> bool:
        return all(e >= -self.tolerance for e in self.outcome_min_eigs)

    @property
    def valid(self) -> bool:
        return self.psd_ok and self.hermiticity <= self.tolerance and self.tp_residual <= self.tolerance


def validate_instrument(ins: Instrument, tol: float = DEFAULT_TOL) -> InstrumentReport:
    """Positivity of every branch plus completeness of the sum."""
    herm = max(hermiticity_defect(op) for op in ins.ops)
    if herm > tol:
        return InstrumentReport((float("nan"),) * ins.n_outcomes, herm, float("inf"), tol)
    eigs = tuple(min_eigenvalue(op, tol) for op in ins.ops)
    reduced = partial_trace(ins.total(), set(ins.output_wires))
    target = identity_operator(reduced.wires)
    aligned = (
        permute_wires(reduced, target.names) if reduced.names != target.names else reduced
    )
    tp = float(np.max(np.abs(aligned.matrix - target.matrix)))
    return InstrumentReport(eigs, herm, tp, tol)


def _require_valid(ins: Instrument, tol: float, what: str) -> None:
    report = validate_instrument(ins, tol)
    if not report.valid:
        raise ValueError(
            f"{what} is not a valid instrument "
            f"(min eig {min(report.outcome_min_eigs):.3e}, tp residual {report.tp_residual:.3e})"
        )


def choi_of_unitary(
    u: np.ndarray, in_wire: WireLabel, out_wire: WireLabel, tol: float = DEFAULT_TOL
) -> LabeledOperator:
    """CJ operator of a unitary channel, on wires (in, out).

    The result is rank one with trace d: the outer product of the vector
    sum_i |i> (x) U|i>. Raises if ``u`` is not unitary within ``tol``.
    """
    u = np.asarray(u, dtype=complex)
    d = in_wire.dim
    if u.shape != (d, d) or out_wire.dim != d:
        raise ValueError(f"unitary must be {d}x{d} matching both wires")
    if np.max(np.abs(u.conj().T @ u - np.eye(d))) > tol:
        raise ValueError("matrix is not unitary within tolerance")
    vec = np.zeros(d * d, dtype=complex)
    for i in range(d):
        vec[i * d : (i + 1) * d] = u[:, i]
    return LabeledOperator((in_wire, out_wire), np.outer(vec, vec.conj()))


def identity_channel_instrument(
    in_wire: WireLabel, out_wire: WireLabel, forced_outcome: int = 0, n_outcomes: int = 1
) -> Instrument:
    """Pass the state through untouched; announce a fixed outcome."""
    if not 0 <= forced_outcome < n_outcomes:
        raise ValueError("forced outcome out of range")
    cj = choi_of_unitary(np.eye(in_wire.dim), in_wire, out_wire)
    zero = LabeledOperator(cj.wires, np.zeros_like(cj.matrix))
    ops = tuple(cj if k == forced_outcome else zero for k in range(n_outcomes))
    return Instrument(ops, (in_wire.name,), (out_wire.name,))


def measure_prepare_instrument(
    basis: Sequence[np.ndarray],
    preparations: Sequence[np.ndarray],
    in_wire: WireLabel,
    out_wire: WireLabel,
    tol: float = DEFAULT_TOL,
) -> Instrument:
    """Projective measurement followed by a pure re-preparation per outcome.

    ``basis`` must be a complete orthonormal family on the input wire;
    ``preparations`` pairs each outcome with the unit vector sent onward.
    Branch k is |b_k><b_k| (x) |p_k><p_k|.
    """
    if len(basis) != len(preparations):
        raise ValueError("need exactly one preparation per basis vector")
    d = in_wire.dim
    if len(basis) != d:
        raise ValueError(f"basis must have {d} vectors, got {len(basis)}")
    bmat = np.column_stack([np.asarray(b, dtype=complex) for b in basis])
    if bmat.shape != (d, d) or np.max(np.abs(bmat.conj().T @ bmat - np.eye(d))) > tol:
        raise ValueError("measurement family is not an orthonormal basis")
    ops = []
    for b, p in zip(basis, preparations):
        p = np.asarray(p, dtype=complex)
        if abs(np.linalg.norm(p) - 1.0) > tol:
            raise ValueError("preparation vectors must be normalized")
        ops.append(
            LabeledOperator(
                (in_wire, out_wire),
                np.kron(np.outer(b, np.conj(b)), np.outer(p, np.conj(p))),
            )
        )
    return Instrument(tuple(ops), (in_wire.name,), (out_wire.name,))


def conjugate_instrument(
    ins: Instrument, u: np.ndarray, side: str, tol: float = DEFAULT_TOL
) -> Instrument:
    """Conjugate every branch by a unitary on part of the instrument.

    ``side`` is ``"input"`` (all input wires jointly), ``"output"`` (all
    output wires), or a single wire name. Each branch maps to U M U†, which
    preserves positivity; acting on inputs or outputs alone also preserves
    completeness.
    """
    if side == "input":
        targets = ins.input_wires
    elif side == "output":
        targets = ins.output_wires
    else:
        if side not in ins.input_wires + ins.output_wires:
            raise ValueError(f"unknown side or wire {side!r}")
        targets = (side,)
    target_labels = tuple(w for w in ins.wires if w.name in targets)
    dim = 1
    for w in target_labels:
        dim *= w.dim
    u = np.asarray(u, dtype=complex)
    if u.shape != (dim, dim):
        raise ValueError(f"unitary must be {dim}x{dim} for wires {targets}, got {u.shape}")
    if np.max(np.abs(u.conj().T @ u - np.eye(dim))) > tol:
        raise ValueError("conjugation matrix is not unitary within tolerance")
    rest = tuple(w for w in ins.wires if w.name not in targets)
    big = LabeledOperator(target_labels, u)
    if rest:
        big = kron(big, identity_operator(rest))
    big = permute_wires(big, [w.name for w in ins.wires])
    mats = big.matrix
    ops = tuple(
        LabeledOperator(ins.wires, mats @ op.matrix @ mats.conj().T) for op in ins.ops
    )
    return Instrument(ops, ins.input_wires, ins.output_wires)


def extend_instrument_with_measurement(
    family: Sequence[Instrument],
    pre_unitary: np.ndarray,
    measured_wires: tuple[WireLabel, WireLabel],
    selector: int,
    postprocess: Callable[[tuple[int, int], int], int],
    n_outcomes: int | None = None,
    tol: float = DEFAULT_TOL,
) -> Instrument:
    """Compose: rotate two ancilla wires, read them out, run a selected inner
    instrument, and relabel the outcome.

    :param family: inner instruments, indexed by the selected measured symbol;
        all must be valid and share wires
    :param pre_unitary: applied to the two measured wires before the
        computational-basis readout (effective projectors U†|m1 m2><m1 m2|U)
    :param measured_wires: the two fresh wires being measured
    :param selector: 0 or 1, which measured symbol picks the family member
    :param postprocess: maps ((m1, m2), inner outcome) to the final outcome
    :param n_outcomes: size of the final outcome set; inferred when omitted
    :return: instrument on (measured wires..., inner wires...) whose input
        side gains the measured wires
    """
    if selector not in (0, 1):
        raise ValueError("selector must be 0 or 1")
    family = list(family)
    if not family:
        raise ValueError("need at least one inner instrument")
    w1, w2 = measured_wires
    sel_dim = (w1, w2)[selector].dim
    if len(family) != sel_dim:
        raise ValueError(
            f"family size {len(family)} must match the selector wire dimension {sel_dim}"
        )
    base = family[0]
    for k, ins in enumerate(family):
        _require_valid(ins, tol, f"inner instrument {k}")
        if ins.wires != base.wires:
            raise ValueError("inner instruments must share identical wires")
    dim = w1.dim * w2.dim
    u = np.asarray(pre_unitary, dtype=complex)
    if u.shape != (dim, dim):
        raise ValueError(f"pre-measurement unitary must be {dim}x{dim}, got {u.shape}")
    if np.max(np.abs(u.conj().T @ u - np.eye(dim))) > tol:
        raise ValueError("pre-measurement matrix is not unitary within tolerance")

    branches: dict[int, np.ndarray] = {}
    for m1, m2 in product(range(w1.dim), range(w2.dim)):
        idx = m1 * w2.dim + m2
        proj = np.outer(u[idx, :].conj(), u[idx, :])  # U† |m><m| U
        inner = family[(m1, m2)[selector]]
        for k, op in enumerate(inner.ops):
            final = postprocess((m1, m2), k)
            if final < 0:
                raise ValueError("postprocess produced a negative outcome")
            block = np.kron(proj, op.matrix)
            if final in branches:
                branches[final] = branches[final] + block
            else:
                branches[final] = block
    count = n_outcomes if n_outcomes is not None else max(branches) + 1
    if max(branches) >= count:
        raise ValueError("postprocess outcome exceeds the declared outcome count")
    wires = (w1, w2) + base.wires
    full = dim * base.ops[0].total_dim
    zero = np.zeros((full, full), dtype=complex)
    ops = tuple(
        LabeledOperator(wires, branches.get(k, zero)) for k in range(count)
    )
    return Instrument(
        ops,
        (w1.name, w2.name) + base.input_wires,
        base.output_wires,
    )


def coarse_grain(ins: Instrument, grouping: Sequence[int], n_outcomes: int) -> Instrument:
    """Merge outcomes: ``grouping[k]`` is the new label of old outcome k."""
    if len(grouping) != ins.n_outcomes:
        raise ValueError("grouping must relabel every outcome")
    if any(not 0 <= g < n_outcomes for g in grouping):
        raise ValueError("grouping label out of range")
    acc = [np.zeros_like(ins.ops[0].matrix) for _ in range(n_outcomes)]
    for g, op in zip(grouping, ins.ops):
        acc[g] = acc[g] + op.matrix
    ops = tuple(LabeledOperator(ins.wires, m) for m in acc)
    return Instrument(ops, ins.input_wires, ins.output_wires)
