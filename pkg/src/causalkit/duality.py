"""Exact value-preserving maps between the two games, in both directions.

From retrieval to mutual guessing: fill the code wires with the zero-code
pair and have each party twirl its share per classical input (shift powers on
one side, phase powers on the other), which re-encodes the inputs into the
effective pair state.

From mutual guessing to retrieval: append a fresh zero-code pair, rotate
(code wire, fresh wire) with a readout unitary, measure both, use one symbol
to select the original instrument and the other to one-time-pad the answer.
The readout unitaries are built so the four measured symbols satisfy the
mod-d sum rules  u + v = x2  and  u' + v' = x1  with probability one; the
correlation check below is the arbiter for any convention question.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .games import (
    BellCode,
    GameStrategy,
    PartyArm,
    bell_encoder,
    bell_state,
    eval_dr,
    eval_gyni,
)
from .instruments import (
    conjugate_instrument,
    extend_instrument_with_measurement,
)
from .processes import extend_with_state
from .tensor import DEFAULT_TOL, LabeledOperator, WireLabel, product_trace

DIRECTION_TOKENS = ("gyni2dr", "dr2gyni")


def _require_dim(d: int) -> None:
    if not isinstance(d, int) or d < 2:
        raise ValueError(f"local dimension must be an integer >= 2, got {d!r}")


def pauli_xd(d: int) -> np.ndarray:
    """Cyclic shift |k> -> |k+1 mod d>."""
    _require_dim(d)
    return np.roll(np.eye(d, dtype=complex), 1, axis=0)


def pauli_zd(d: int) -> np.ndarray:
    """Phase gate diag(w^k) with w = exp(2 pi i / d)."""
    _require_dim(d)
    omega = np.exp(2j * np.pi / d)
    return np.diag(omega ** np.arange(d))


def fourier(d: int) -> np.ndarray:
    """F[q, k] = w^(qk) / sqrt(d); the Hadamard gate at d = 2."""
    _require_dim(d)
    omega = np.exp(2j * np.pi / d)
    grid = np.outer(np.arange(d), np.arange(d))
    return omega**grid / np.sqrt(d)


def controlled_shift(d: int) -> np.ndarray:
    """|m, n> -> |m, n+m mod d> on a (control, target) pair; CNOT at d = 2."""
    _require_dim(d)
    out = np.zeros((d * d, d * d), dtype=complex)
    for m, n in product(range(d), repeat=2):
        out[m * d + (n + m) % d, m * d + n] = 1.0
    return out


def _controlled_unshift(d: int) -> np.ndarray:
    """|m, n> -> |m, n-m mod d>; inverse of controlled_shift."""
    return controlled_shift(d).conj().T


def _controlled_reverse(d: int) -> np.ndarray:
    """|m, n> -> |m, m-n mod d>; self-inverse, equals CNOT at d = 2."""
    out = np.zeros((d * d, d * d), dtype=complex)
    for m, n in product(range(d), repeat=2):
        out[m * d + (m - n) % d, m * d + n] = 1.0
    return out


QUBIT_READOUT_UNITARY = np.array(
    [
        [1, 0, 0, 1],
        [0, 1, 1, 0],
        [1, 0, 0, -1],
        [0, 1, -1, 0],
    ],
    dtype=complex,
) / np.sqrt(2)


def party_readout_unitaries(d: int) -> tuple[np.ndarray, np.ndarray]:
    """Readout rotations (first party, second party) on (code, fresh) wires.

    Both parties finish with an inverse Fourier on the code wire; they differ
    in how the fresh wire absorbs the code symbol (subtract vs reflect), which
    is what makes *both* measured pairs come out sum-correlated. The two
    matrices coincide at d = 2 and equal QUBIT_READOUT_UNITARY there.
    """
    _require_dim(d)
    mix = np.kron(np.conj(fourier(d)), np.eye(d, dtype=complex))
    return mix @ _controlled_unshift(d), mix @ _controlled_reverse(d)


def readout_correlation_residual(d: int) -> float:
    """Worst-case leaked probability mass off the sum rules, over all codes.

    For every code x, rotate (code pair) (x) (zero-code pair) by the party
    readouts and accumulate the probability of measured symbols violating
    u + v = x2 or u' + v' = x1 (mod d). Exactly zero in exact arithmetic.
    """
    v_a, v_b = party_readout_unitaries(d)
    wires_a = (WireLabel("A", d), WireLabel("A'", d))
    wires_b = (WireLabel("B", d), WireLabel("B'", d))
    aux = bell_state(BellCode(d, 0, 0), ("A'", "B'"))
    worst = 0.0
    for x1, x2 in product(range(d), repeat=2):
        code = bell_state(BellCode(d, x1, x2), ("A", "B"))
        mass = 0.0
        for u, up in product(range(d), repeat=2):
            ia = u * d + up
            proj_a = LabeledOperator(wires_a, np.outer(v_a[ia, :].conj(), v_a[ia, :]))
            for v, vp in product(range(d), repeat=2):
                if (u + v) % d != x2 or (up + vp) % d != x1:
                    continue
                ib = v * d + vp
                proj_b = LabeledOperator(
                    wires_b, np.outer(v_b[ib, :].conj(), v_b[ib, :])
                )
                mass += product_trace([code, aux], [proj_a, proj_b]).real
        worst = max(worst, abs(1.0 - mass))
    return worst


@dataclass(frozen=True)
class DualityCertificate:
    direction: str
    d: int
    source_value: float
    target_value: float
    tolerance: float = DEFAULT_TOL

    @property
    def deviation(self) -> float:
        return abs(self.source_value - self.target_value)

    @property
    def ok(self) -> bool:
        return self.deviation <= self.tolerance

    def to_dict(self) -> dict:
        return {
            "direction": self.direction,
            "d": self.d,
            "source_value": self.source_value,
            "target_value": self.target_value,
            "deviation": self.deviation,
            "tolerance": self.tolerance,
            "status": "pass" if self.ok else "fail",
        }


def _gyni_dims(strategy: GameStrategy) -> int:
    counts = {len(arm.instruments) for arm in strategy.parties}
    outcome_counts = {
        ins.n_outcomes for arm in strategy.parties for ins in arm.instruments
    }
    if counts != outcome_counts or len(counts) != 1:
        raise ValueError("guessing strategies need d instruments of d outcomes per party")
    return counts.pop()


def gyni_to_dr(strategy: GameStrategy) -> GameStrategy:
    """Rebuild a mutual-guessing strategy as a retrieval strategy of equal value.

    The returned strategy carries fresh code wires ("A", "B"); its process is
    the original one extended with a zero-code pair on ("A'", "B'"). Party
    one selects its inner instrument with the first measured symbol and pads
    its answer with the second; party two mirrors this.
    """
    if strategy.game != "gyni":
        raise ValueError("expected a mutual-guessing strategy")
    d = _gyni_dims(strategy)
    taken = set(strategy.process.op.names)
    for name in ("A", "B", "A'", "B'"):
        if name in taken:
            raise ValueError(f"process already uses wire {name!r}; cannot add code wires")
    pa, pb = strategy.process.parties
    aux = bell_state(BellCode(d, 0, 0), ("A'", "B'"))
    extended = extend_with_state(
        strategy.process, aux, assign={"A'": pa.name, "B'": pb.name}
    )
    v_a, v_b = party_readout_unitaries(d)
    alice = extend_instrument_with_measurement(
        strategy.parties[0].instruments,
        v_a,
        (WireLabel("A", d), WireLabel("A'", d)),
        selector=0,
        postprocess=lambda m, inner: (inner + m[1]) % d,
        n_outcomes=d,
    )
    bob = extend_instrument_with_measurement(
        strategy.parties[1].instruments,
        v_b,
        (WireLabel("B", d), WireLabel("B'", d)),
        selector=1,
        postprocess=lambda m, inner: (inner + m[0]) % d,
        n_outcomes=d,
    )
    return GameStrategy(
        extended,
        (
            PartyArm(strategy.parties[0].name, (alice,)),
            PartyArm(strategy.parties[1].name, (bob,)),
        ),
        "dr",
        state_wires=("A", "B"),
    )


def dr_to_gyni(strategy: GameStrategy) -> GameStrategy:
    """Rebuild a retrieval strategy as a mutual-guessing strategy of equal value.

    The code wires are filled with the zero-code pair (now part of the
    process); on classical input i the first party twirls its share by the
    inverse phase power Z^-i, the second by the inverse shift power X^-i,
    which re-encodes (i2, i1) into the effective pair.
    """
    if strategy.game != "dr":
        raise ValueError("expected a retrieval strategy")
    if len(strategy.state_wires) != 2:
        raise ValueError("retrieval strategies carry exactly two code wires")
    sa, sb = strategy.state_wires
    arm_a, arm_b = strategy.parties
    if len(arm_a.instruments) != 1 or len(arm_b.instruments) != 1:
        raise ValueError("retrieval strategies take no classical input")
    ins_a, ins_b = arm_a.instruments[0], arm_b.instruments[0]
    d = ins_a.ops[0].wire(sa).dim
    if ins_b.ops[0].wire(sb).dim != d or ins_a.n_outcomes != d or ins_b.n_outcomes != d:
        raise ValueError("code wires and outcome counts must share one dimension d")
    pa, pb = strategy.process.parties
    extended = extend_with_state(
        strategy.process,
        bell_state(BellCode(d, 0, 0), (sa, sb)),
        assign={sa: pa.name, sb: pb.name},
    )
    z_inv = pauli_zd(d).conj().T
    x_inv = pauli_xd(d).conj().T
    alice = tuple(
        conjugate_instrument(ins_a, np.linalg.matrix_power(z_inv, i1), sa)
        for i1 in range(d)
    )
    bob = tuple(
        conjugate_instrument(ins_b, np.linalg.matrix_power(x_inv, i2), sb)
        for i2 in range(d)
    )
    return GameStrategy(
        extended,
        (PartyArm(arm_a.name, alice), PartyArm(arm_b.name, bob)),
        "gyni",
    )


def check_duality(
    strategy: GameStrategy, direction: str, tol: float = DEFAULT_TOL
) -> DualityCertificate:
    """Run the requested translation and certify value preservation.

    Raises ValueError when the translated value drifts beyond ``tol``; a
    drift here means a conventions bug, not a numerical hiccup.
    """
    if direction not in DIRECTION_TOKENS:
        raise ValueError(f"direction must be one of {DIRECTION_TOKENS}")
    if direction == "gyni2dr":
        d = _gyni_dims(strategy)
        source = eval_gyni(strategy)
        translated = gyni_to_dr(strategy)
        target = eval_dr(translated, bell_encoder(d, ("A", "B")), d)
    else:
        sa, sb = strategy.state_wires
        d = strategy.parties[0].instruments[0].ops[0].wire(sa).dim
        source = eval_dr(strategy, bell_encoder(d, (sa, sb)), d)
        translated = dr_to_gyni(strategy)
        target = eval_gyni(translated)
    cert = DualityCertificate(direction, d, source, target, tol)
    if not cert.ok:
        raise ValueError(
            f"duality violated: |{source:.12f} - {target:.12f}| = {cert.deviation:.3e} > {tol:.1e}"
        )
    return cert
