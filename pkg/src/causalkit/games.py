"""Two retrieval games played across a process matrix.

*Mutual input guessing* (``"gyni"``): each party draws a uniform classical
input, conditions its instrument on it, and must output the other party's
input. *State retrieval* (``"dr"``): the referee appends a two-wire code
state to the process; each party holds one code wire and must output one of
the two classical symbols hidden in the code (first party the shift symbol,
second the phase symbol).

Probabilities come from a single factored contraction,
``Tr[(W (x) state) (M_A (x) M_B)]``, evaluated wire-by-wire so composite
strategies at local dimension 3 never materialize the joint kron.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Mapping

import numpy as np

from .instruments import (
    Instrument,
    identity_channel_instrument,
    measure_prepare_instrument,
)
from .processes import ProcessMatrix, build_cyril, channel_process, maximally_mixed_process
from .tensor import DEFAULT_TOL, LabeledOperator, WireLabel, kron_all, product_trace

GAME_TOKENS = ("gyni", "dr")

# Closed-form reference values (qubit wires unless stated otherwise).
CYRIL_GYNI_VALUE = (5 / 16) * (1 + 1 / np.sqrt(2))
CONSTANT_GUESS_VALUE = 0.25
CAUSAL_GYNI_BOUND = 0.5
LOCC_RETRIEVAL_BOUND = 0.5


@dataclass(frozen=True)
class BellCode:
    """Two classical dits hidden in a maximally entangled pair.

    ``x1`` selects the shift (computational-basis correlation), ``x2`` the
    phase (conjugate-basis correlation).
    """

    d: int
    x1: int
    x2: int

    def __post_init__(self) -> None:
        if self.d < 2:
            raise ValueError("code dimension must be at least 2")
        if not (0 <= self.x1 < self.d and 0 <= self.x2 < self.d):
            raise ValueError(f"code symbols must lie in 0..{self.d - 1}")


def bell_vector(code: BellCode) -> np.ndarray:
    """|B^x> = (1/sqrt d) sum_k w^(x2 k) |k>|k+x1 mod d>."""
    d = code.d
    omega = np.exp(2j * np.pi / d)
    vec = np.zeros(d * d, dtype=complex)
    for k in range(d):
        vec[k * d + ((k + code.x1) % d)] = omega ** (code.x2 * k) / np.sqrt(d)
    return vec


def bell_state(code: BellCode, wire_names: tuple[str, str] = ("A", "B")) -> LabeledOperator:
    """Density operator of the coded pair on two fresh wires."""
    vec = bell_vector(code)
    wires = (WireLabel(wire_names[0], code.d), WireLabel(wire_names[1], code.d))
    return LabeledOperator(wires, np.outer(vec, vec.conj()))


@dataclass(frozen=True)
class PartyArm:
    """One player's equipment: an instrument per classical input (one entry
    for the retrieval game, where the only input is the code wire)."""

    name: str
    instruments: tuple[Instrument, ...]

    def __post_init__(self) -> None:
        if not self.instruments:
            raise ValueError(f"party {self.name!r} needs at least one instrument")
        object.__setattr__(self, "instruments", tuple(self.instruments))


@dataclass(frozen=True)
class GameStrategy:
    process: ProcessMatrix
    parties: tuple[PartyArm, ...]
    game: str
    state_wires: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.game not in GAME_TOKENS:
            raise ValueError(f"game must be one of {GAME_TOKENS}")
        if len(self.parties) != len(self.process.parties):
            raise ValueError("strategy must equip every process party")
        object.__setattr__(self, "parties", tuple(self.parties))
        object.__setattr__(self, "state_wires", tuple(self.state_wires))


def joint_probability(
    strategy: GameStrategy,
    inputs: tuple[int, ...],
    outcomes: tuple[int, ...],
    state: LabeledOperator | None = None,
    tol: float = DEFAULT_TOL,
) -> float:
    """P(outcomes | inputs) under the strategy, with an optional code state.

    Wire mismatches between the process+state side and the instrument side
    raise ValueError before any arithmetic.
    """
    if len(inputs) != len(strategy.parties) or len(outcomes) != len(strategy.parties):
        raise ValueError("need one input and one outcome per party")
    effects = []
    for arm, i, o in zip(strategy.parties, inputs, outcomes):
        if not 0 <= i < len(arm.instruments):
            raise ValueError(f"input {i} out of range for party {arm.name!r}")
        ins = arm.instruments[i]
        if not 0 <= o < ins.n_outcomes:
            raise ValueError(f"outcome {o} out of range for party {arm.name!r}")
        effects.append(ins.ops[o])
    carriers = [strategy.process.op]
    if state is not None:
        carriers.append(state)
    value = product_trace(carriers, effects)
    if abs(value.imag) > max(tol, 1e-7):
        raise ValueError(f"probability has a non-real value {value!r}")
    return float(value.real)


def outcome_distribution(
    strategy: GameStrategy, inputs: tuple[int, ...], state: LabeledOperator | None = None
) -> np.ndarray:
    """Array of P(outcomes | inputs) over all joint outcomes, index-per-party."""
    shape = tuple(
        arm.instruments[i].n_outcomes for arm, i in zip(strategy.parties, inputs)
    )
    out = np.empty(shape)
    for combo in product(*(range(s) for s in shape)):
        out[combo] = joint_probability(strategy, inputs, combo, state)
    return out


def _input_count(strategy: GameStrategy) -> int:
    counts = {len(arm.instruments) for arm in strategy.parties}
    if len(counts) != 1:
        raise ValueError("parties disagree on the number of classical inputs")
    return counts.pop()


def gyni_terms(strategy: GameStrategy) -> dict[tuple[int, int], float]:
    """Per-input success probabilities P(a = i2, b = i1 | i1, i2)."""
    if strategy.game != "gyni":
        raise ValueError("strategy is not for the mutual-guessing game")
    d = _input_count(strategy)
    return {
        (i1, i2): joint_probability(strategy, (i1, i2), (i2, i1))
        for i1, i2 in product(range(d), repeat=2)
    }


def eval_gyni(strategy: GameStrategy) -> float:
    """Uniform-input success probability of mutual input guessing."""
    terms = gyni_terms(strategy)
    return float(sum(terms.values()) / len(terms))


def bell_encoder(
    d: int, wire_names: tuple[str, str] = ("A", "B")
) -> Callable[[tuple[int, int]], LabeledOperator]:
    """Encoder mapping the symbol pair x to the coded state on given wires."""

    def encode(x: tuple[int, int]) -> LabeledOperator:
        return bell_state(BellCode(d, x[0], x[1]), wire_names)

    return encode


def dr_terms(
    strategy: GameStrategy,
    encoder: Callable[[tuple[int, int]], LabeledOperator],
    d: int | None = None,
) -> dict[tuple[int, int], float]:
    """Per-code success probabilities P(a = x1, b = x2 | code x)."""
    if strategy.game != "dr":
        raise ValueError("strategy is not for the retrieval game")
    if _input_count(strategy) != 1:
        raise ValueError("retrieval strategies take no classical input")
    if d is None:
        probe = encoder((0, 0))
        d = probe.wires[0].dim
    return {
        (x1, x2): joint_probability(strategy, (0, 0), (x1, x2), state=encoder((x1, x2)))
        for x1, x2 in product(range(d), repeat=2)
    }


def eval_dr(
    strategy: GameStrategy,
    encoder: Callable[[tuple[int, int]], LabeledOperator],
    d: int | None = None,
) -> float:
    """Uniform-code success probability of the state-retrieval game."""
    terms = dr_terms(strategy, encoder, d)
    return float(sum(terms.values()) / len(terms))


# ---------------------------------------------------------------------------
# Reference strategies

def _qubit(name: str) -> WireLabel:
    return WireLabel(name, 2)


def cyril_gyni_strategy() -> GameStrategy:
    """The mutual-guessing strategy beating every causally ordered one.

    On input 0 a party forwards its input wire untouched and answers 1; on
    input 1 it measures in the computational basis, answers the measured bit,
    and re-prepares the flipped bit. Evaluates to CYRIL_GYNI_VALUE.
    """
    e0, e1 = np.eye(2, dtype=complex)
    arms = []
    for name in ("A", "B"):
        w_in, w_out = _qubit(f"{name}_I"), _qubit(f"{name}_O")
        forward = identity_channel_instrument(w_in, w_out, forced_outcome=1, n_outcomes=2)
        flip = measure_prepare_instrument([e0, e1], [e1, e0], w_in, w_out)
        arms.append(PartyArm(name, (forward, flip)))
    return GameStrategy(build_cyril(), tuple(arms), "gyni")


def constant_output_gyni_strategy() -> GameStrategy:
    """Both parties discard everything and always answer 0 (value 1/4)."""
    arms = []
    for name in ("A", "B"):
        w_in, w_out = _qubit(f"{name}_I"), _qubit(f"{name}_O")
        cj = LabeledOperator((w_in, w_out), np.eye(4, dtype=complex) / 2)
        zero = LabeledOperator((w_in, w_out), np.zeros((4, 4), dtype=complex))
        ins = Instrument((cj, zero), (w_in.name,), (w_out.name,))
        arms.append(PartyArm(name, (ins, ins)))
    return GameStrategy(maximally_mixed_process(2), tuple(arms), "gyni")


def relay_gyni_strategy() -> GameStrategy:
    """Best fixed-order benchmark: the second party learns the first's input
    through an identity channel; the first party answers a fair coin (1/2)."""
    e0, e1 = np.eye(2, dtype=complex)
    a_in, a_out = _qubit("A_I"), _qubit("A_O")
    b_in, b_out = _qubit("B_I"), _qubit("B_O")
    alice = []
    for i1 in range(2):
        prep = np.outer((e0, e1)[i1], (e0, e1)[i1].conj())
        cj = LabeledOperator((a_in, a_out), np.kron(np.eye(2, dtype=complex) / 2, prep))
        alice.append(Instrument((cj, cj), (a_in.name,), (a_out.name,)))
    read = measure_prepare_instrument([e0, e1], [e0, e1], b_in, b_out)
    bob = PartyArm("B", (read, read))
    identity_choi = 2 * bell_state(BellCode(2, 0, 0), ("A_O", "B_I")).matrix
    process = channel_process(np.diag([1.0, 0.0]), identity_choi, "A<B")
    return GameStrategy(process, (PartyArm("A", tuple(alice)), bob), "gyni")


def pauli_y_baseline_strategy() -> GameStrategy:
    """Unentangled retrieval benchmark hitting LOCC_RETRIEVAL_BOUND exactly.

    Both parties measure their code wire along Y and ignore the process
    wires. The first party maps up/down to 0/1, the second to 1/0; the Y-Y
    correlations of the four coded pairs make every code succeed with 1/2.
    """
    sy = np.array([[0.0, -1j], [1j, 0.0]])
    up = (np.eye(2) + sy) / 2
    down = (np.eye(2) - sy) / 2
    prep0 = np.zeros((2, 2), dtype=complex)
    prep0[0, 0] = 1.0
    arms = []
    for name, projs in (("A", (up, down)), ("B", (down, up))):
        code_wire = _qubit(name)
        w_in, w_out = _qubit(f"{name}_I"), _qubit(f"{name}_O")
        ops = tuple(
            kron_all(
                [
                    LabeledOperator((code_wire,), proj),
                    LabeledOperator((w_in,), np.eye(2, dtype=complex)),
                    LabeledOperator((w_out,), prep0),
                ]
            )
            for proj in projs
        )
        ins = Instrument(ops, (code_wire.name, w_in.name), (w_out.name,))
        arms.append(PartyArm(name, (ins,)))
    return GameStrategy(
        maximally_mixed_process(2), tuple(arms), "dr", state_wires=("A", "B")
    )
