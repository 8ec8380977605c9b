"""Bipartite process matrices: validity, causal order, and the PPT cut.

A process matrix W lives on the four party wires (two input wires, two output
wires) plus any ancillary state wires appended later. Probabilities come from
direct contraction, P = Tr[W (M_A (x) M_B)], so validity is:

* W is positive semidefinite,
* Tr W equals the product of the output dimensions,
* the reduced-and-replaced combinations below hold, writing ``R_X`` for
  :func:`causalkit.tensor.trace_and_replace` on wire set X:

  1. R over every wire equals (Tr W / D) I      ("uniform blanket")
  2. R_{A_I A_O} W = R_{A_I A_O B_O} W          ("no signaling to B's past")
  3. R_{B_I B_O} W = R_{B_I B_O A_O} W          ("no signaling to A's past")
  4. W + R_{A_O B_O} W = R_{A_O} W + R_{B_O} W  ("affine closure")

These four are equivalent to the usual projective characterization; each is
reported with its max-abs residual so a failure names the violated condition.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .tensor import (
    DEFAULT_TOL,
    LabeledOperator,
    WireLabel,
    dump_operator,
    hermiticity_defect,
    identity_operator,
    kron,
    kron_all,
    load_operator,
    min_eigenvalue,
    partial_trace,
    partial_transpose,
    permute_wires,
    trace_and_replace,
)

ORDER_TOKENS = ("A<B", "B<A", "no-signaling")


@dataclass(frozen=True)
class PartySlot:
    """One party's wires: a classical-input-conditioned lab with in/out wires."""

    name: str
    input_wire: str
    output_wire: str
    extra_wires: tuple[str, ...] = ()

    @property
    def all_wires(self) -> tuple[str, ...]:
        return (self.input_wire, self.output_wire) + self.extra_wires


@dataclass(frozen=True)
class ProcessMatrix:
    """A labeled operator together with the party slots acting on it."""

    op: LabeledOperator
    parties: tuple[PartySlot, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "parties", tuple(self.parties))
        names = [p.name for p in self.parties]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate party names {names}")
        claimed: list[str] = []
        for p in self.parties:
            claimed.extend(p.all_wires)
        if len(set(claimed)) != len(claimed):
            raise ValueError("parties claim overlapping wires")
        have = set(self.op.names)
        missing = set(claimed) - have
        if missing:
            raise ValueError(f"party wires {sorted(missing)} absent from operator")
        object.__setattr__(self, "_unassigned", tuple(n for n in self.op.names if n not in set(claimed)))

    @property
    def unassigned_wires(self) -> tuple[str, ...]:
        return self._unassigned  # type: ignore[attr-defined]

    def party(self, name: str) -> PartySlot:
        for p in self.parties:
            if p.name == name:
                return p
        raise KeyError(f"no party {name!r}; have {[p.name for p in self.parties]}")

    @property
    def output_dim(self) -> int:
        out = 1
        for p in self.parties:
            out *= self.op.wire(p.output_wire).dim
        return out


@dataclass(frozen=True)
class ValidityReport:
    psd_ok: bool
    min_eig: float
    hermiticity: float
    constraint_residuals: tuple[tuple[str, float], ...]
    tolerance: float = DEFAULT_TOL

    @property
    def valid(self) -> bool:
        return self.psd_ok and all(r <= self.tolerance for _, r in self.constraint_residuals)

    def residual(self, name: str) -> float:
        for key, value in self.constraint_residuals:
            if key == name:
                return value
        raise KeyError(name)


@dataclass(frozen=True)
class OrderReport:
    order: str
    residuals: tuple[tuple[str, float], ...]
    tolerance: float = DEFAULT_TOL

    @property
    def compatible(self) -> bool:
        return all(r <= self.tolerance for _, r in self.residuals)


def _max_abs_diff(a: LabeledOperator, b: LabeledOperator) -> float:
    bb = permute_wires(b, a.names) if b.names != a.names else b
    return float(np.max(np.abs(a.matrix - bb.matrix)))


def _require_bipartite(proc: ProcessMatrix) -> tuple[PartySlot, PartySlot]:
    if len(proc.parties) != 2:
        raise ValueError(f"expected a bipartite process, got {len(proc.parties)} parties")
    return proc.parties[0], proc.parties[1]


def validate_process(proc: ProcessMatrix, tol: float = DEFAULT_TOL) -> ValidityReport:
    """Check positivity, normalization, and the four reduction constraints.

    Structural problems (wrong party count, missing wires) raise before any
    numerics run; numerical violations land in the report instead.
    """
    pa, pb = _require_bipartite(proc)
    w = proc.op
    herm = hermiticity_defect(w)
    if herm > tol:
        return ValidityReport(
            psd_ok=False,
            min_eig=float("nan"),
            hermiticity=herm,
            constraint_residuals=(("hermiticity", herm),),
            tolerance=tol,
        )
    mineig = min_eigenvalue(w, tol)
    trace_target = proc.output_dim
    trace_resid = abs(complex(np.trace(w.matrix)) - trace_target)

    total = trace_and_replace(w, set(w.names))
    blanket_target = LabeledOperator(
        total.wires, (trace_target / w.total_dim) * np.eye(w.total_dim)
    )
    r_blanket = _max_abs_diff(total, blanket_target)

    a_wires = {pa.input_wire, pa.output_wire}
    b_wires = {pb.input_wire, pb.output_wire}
    r_a = _max_abs_diff(
        trace_and_replace(w, a_wires), trace_and_replace(w, a_wires | {pb.output_wire})
    )
    r_b = _max_abs_diff(
        trace_and_replace(w, b_wires), trace_and_replace(w, b_wires | {pa.output_wire})
    )
    lhs = w.matrix + trace_and_replace(w, {pa.output_wire, pb.output_wire}).matrix
    rhs = (
        trace_and_replace(w, {pa.output_wire}).matrix
        + trace_and_replace(w, {pb.output_wire}).matrix
    )
    r_affine = float(np.max(np.abs(lhs - rhs)))

    return ValidityReport(
        psd_ok=mineig >= -tol,
        min_eig=mineig,
        hermiticity=herm,
        constraint_residuals=(
            ("normalization", float(trace_resid)),
            ("uniform blanket", r_blanket),
            (f"no signaling to {pb.name}'s past", r_a),
            (f"no signaling to {pa.name}'s past", r_b),
            ("affine closure", r_affine),
        ),
        tolerance=tol,
    )


def canonical_order_token(order: str) -> str:
    token = order.replace("≺", "<").replace(" ", "")
    if token not in ORDER_TOKENS:
        raise ValueError(f"unknown order token {order!r}; expected one of {ORDER_TOKENS}")
    return token


def check_order(proc: ProcessMatrix, order: str, tol: float = DEFAULT_TOL) -> OrderReport:
    """Test compatibility with a fixed signaling direction (or none).

    ``A<B`` means the first party cannot receive from the second: W ignores
    the second output, and the reduction over the second lab is flat on the
    first output. ``B<A`` mirrors it; ``no-signaling`` forbids both outputs
    from mattering.
    """
    pa, pb = _require_bipartite(proc)
    token = canonical_order_token(order)
    w = proc.op
    if token == "no-signaling":
        resid = _max_abs_diff(w, trace_and_replace(w, {pa.output_wire, pb.output_wire}))
        return OrderReport(token, (("outputs ignored", resid),), tol)
    first, second = (pa, pb) if token == "A<B" else (pb, pa)
    r1 = _max_abs_diff(w, trace_and_replace(w, {second.output_wire}))
    sec = {second.input_wire, second.output_wire}
    r2 = _max_abs_diff(
        trace_and_replace(w, sec), trace_and_replace(w, sec | {first.output_wire})
    )
    return OrderReport(
        token,
        (
            (f"{second.name} output ignored", r1),
            (f"{first.name} output flat once {second.name} is traced", r2),
        ),
        tol,
    )


def is_ppt_cut(proc: ProcessMatrix, side: str, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Partial transpose across the party cut; returns (is PPT, min eigenvalue).

    ``side`` is a party name; its wires (including assigned ancilla wires) are
    transposed. Unassigned ancilla wires make the cut ambiguous and raise.
    """
    _require_bipartite(proc)
    party = proc.party(side)
    if proc.unassigned_wires:
        raise ValueError(
            f"wires {proc.unassigned_wires} are not assigned to a party; cut is ambiguous"
        )
    pt = partial_transpose(proc.op, set(party.all_wires))
    mineig = min_eigenvalue(pt, tol)
    return (mineig >= -tol, mineig)


# ---------------------------------------------------------------------------
# Constructors

_SZ = np.diag([1.0, -1.0]).astype(complex)
_SX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)

DEFAULT_PARTY_WIRES = ("A_I", "A_O", "B_I", "B_O")


def default_parties() -> tuple[PartySlot, PartySlot]:
    return (PartySlot("A", "A_I", "A_O"), PartySlot("B", "B_I", "B_O"))


def _qubit_wires() -> tuple[WireLabel, ...]:
    return tuple(WireLabel(n, 2) for n in DEFAULT_PARTY_WIRES)


def build_cyril() -> ProcessMatrix:
    """The two-party qubit process with no definite causal order.

    W = (1/4)[I + (Z Z Z I + Z I X X)/sqrt(2)] on wires (A_I, A_O, B_I, B_O).
    Both Pauli strings anticommute, so the spectrum is {0, 1/2} and W is PSD.
    """
    eye = np.eye(2, dtype=complex)
    term1 = np.kron(np.kron(_SZ, _SZ), np.kron(_SZ, eye))
    term2 = np.kron(np.kron(_SZ, eye), np.kron(_SX, _SX))
    mat = (np.eye(16, dtype=complex) + (term1 + term2) / np.sqrt(2)) / 4
    return ProcessMatrix(LabeledOperator(_qubit_wires(), mat), default_parties())


def verify_cyril_separable_decomposition() -> float:
    """Rebuild :func:`build_cyril` from eight product terms; return the residual.

    Each term is (1/2) P (x) P (x) P (x) P with rank-1 projectors onto Z, X,
    and the two diagonal directions (Z±X)/sqrt2. Every factor is PSD, so an
    exact reconstruction certifies separability across all four wires.
    """
    r2 = np.sqrt(2)
    eye = np.eye(2, dtype=complex)
    pz = {+1: (eye + _SZ) / 2, -1: (eye - _SZ) / 2}
    px = {+1: (eye + _SX) / 2, -1: (eye - _SX) / 2}
    pa = {+1: (eye + (_SZ + _SX) / r2) / 2, -1: (eye - (_SZ + _SX) / r2) / 2}
    pb = {+1: (eye + (_SZ - _SX) / r2) / 2, -1: (eye - (_SZ - _SX) / r2) / 2}
    terms = [
        (+1, +1, pa, +1, +1),
        (-1, +1, pa, -1, +1),
        (+1, +1, pb, +1, -1),
        (-1, +1, pb, -1, -1),
        (+1, -1, pb, -1, +1),
        (-1, -1, pb, +1, +1),
        (+1, -1, pa, -1, -1),
        (-1, -1, pa, +1, -1),
    ]
    acc = np.zeros((16, 16), dtype=complex)
    for s1, s2, mid, sm, s4 in terms:
        factors = (pz[s1], pz[s2], mid[sm], px[s4])
        for f in factors:
            if np.linalg.eigvalsh(f)[0] < -1e-12:
                raise AssertionError("decomposition factor is not PSD")
        term = np.kron(np.kron(factors[0], factors[1]), np.kron(factors[2], factors[3]))
        if abs(np.trace(term) - 1.0) > 1e-12:
            raise AssertionError("decomposition term trace is not 1")
        acc += 0.5 * term
    return float(np.max(np.abs(acc - build_cyril().op.matrix)))


def maximally_mixed_process(d: int = 2) -> ProcessMatrix:
    """The fully uninformative process: normalized identity on all four wires."""
    wires = tuple(WireLabel(n, d) for n in DEFAULT_PARTY_WIRES)
    mat = np.eye(d**4, dtype=complex) / d**2
    return ProcessMatrix(LabeledOperator(wires, mat), default_parties())


def shared_state_process(rho: np.ndarray, d: int = 2) -> ProcessMatrix:
    """No-signaling process handing the parties a joint input state.

    ``rho`` is a density matrix on (A_I, B_I); outputs are discarded, which
    shows up as identity factors on both output wires.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (d * d, d * d):
        raise ValueError(f"rho must be {d*d}x{d*d} on the two input wires")
    ai, ao, bi, bo = (WireLabel(n, d) for n in DEFAULT_PARTY_WIRES)
    inputs = LabeledOperator((ai, bi), rho)
    outputs = identity_operator((ao, bo))
    w = permute_wires(kron(inputs, outputs), list(DEFAULT_PARTY_WIRES))
    return ProcessMatrix(w, default_parties())


def channel_process(
    rho_in: np.ndarray, channel_choi: np.ndarray, direction: str = "A<B", d: int = 2
) -> ProcessMatrix:
    """Definite-order process: a state into the first lab, a channel to the second.

    For ``A<B``: W = rho_{A_I} (x) C_{A_O B_I} (x) I_{B_O}, with ``channel_choi``
    the Choi operator of the channel from the first party's output to the
    second party's input (trace-preserving: its A_O reduction is the identity).
    """
    token = canonical_order_token(direction)
    if token == "no-signaling":
        raise ValueError("channel_process needs a signaling direction")
    rho_in = np.asarray(rho_in, dtype=complex)
    channel_choi = np.asarray(channel_choi, dtype=complex)
    ai, ao, bi, bo = (WireLabel(n, d) for n in DEFAULT_PARTY_WIRES)
    if token == "A<B":
        state = LabeledOperator((ai,), rho_in)
        link = LabeledOperator((ao, bi), channel_choi)
        tail = identity_operator((bo,))
    else:
        state = LabeledOperator((bi,), rho_in)
        link = LabeledOperator((bo, ai), channel_choi)
        tail = identity_operator((ao,))
    w = permute_wires(kron_all([state, link, tail]), list(DEFAULT_PARTY_WIRES))
    return ProcessMatrix(w, default_parties())


def extend_with_state(
    proc: ProcessMatrix,
    state: LabeledOperator,
    assign: Mapping[str, str] | None = None,
    tol: float = DEFAULT_TOL,
) -> ProcessMatrix:
    """Adjoin an ancillary quantum state on fresh wires.

    ``state`` must be a density operator (PSD, unit trace) on wires disjoint
    from the process. ``assign`` maps each new wire to a party name so later
    cut-based checks know which side the wire belongs to.
    """
    clash = set(state.names) & set(proc.op.names)
    if clash:
        raise ValueError(f"state wires {sorted(clash)} already used by the process")
    if abs(complex(np.trace(state.matrix)) - 1.0) > tol:
        raise ValueError("state is not normalized (trace != 1)")
    if hermiticity_defect(state) > tol or min_eigenvalue(state, tol) < -tol:
        raise ValueError("state is not positive semidefinite")
    assign = dict(assign or {})
    unknown = set(assign) - set(state.names)
    if unknown:
        raise ValueError(f"assignment mentions unknown wires {sorted(unknown)}")
    new_parties = []
    for p in proc.parties:
        extras = tuple(w for w in state.names if assign.get(w) == p.name)
        new_parties.append(
            PartySlot(p.name, p.input_wire, p.output_wire, p.extra_wires + extras)
        )
    return ProcessMatrix(kron(proc.op, state), tuple(new_parties))


# ---------------------------------------------------------------------------
# Serialization

def dump_process(proc: ProcessMatrix) -> str:
    parts = ";".join(
        f"{p.name}=({','.join(p.all_wires)})" for p in proc.parties
    )
    return f"parties: {parts}\n" + dump_operator(proc.op)


def load_process(text: str) -> ProcessMatrix:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("parties:"):
        raise ValueError("process dump must start with a 'parties:' header")
    header = lines[0][len("parties:") :].strip()
    parties = []
    for chunk in header.split(";"):
        name, _, rest = chunk.partition("=")
        rest = rest.strip()
        if not (rest.startswith("(") and rest.endswith(")")):
            raise ValueError(f"malformed party entry {chunk!r}")
        wires = tuple(w.strip() for w in rest[1:-1].split(","))
        if len(wires) < 2:
            raise ValueError(f"party {name!r} needs at least input and output wires")
        parties.append(PartySlot(name.strip(), wires[0], wires[1], tuple(wires[2:])))
    op = load_operator("\n".join(lines[1:]))
    return ProcessMatrix(op, tuple(parties))
