"""Classical tripartite retrieval: exact enumeration, exact rationals.

Three players (first, second, third) share six maximally correlated bit
pairs arranged in a directed triangle; the pair between two players hides a
two-bit string. Each player receives its two neighbors' shares, produces an
output bit, and a classical process feeds the outputs back as flag inputs.
Every probability here is a :class:`fractions.Fraction` computed by complete
enumeration of inputs and free measurement bits; no floats enter.

Pair orientation for the standard round: the (first, third) pair hides
x1, the (second, first) pair hides x2, the (third, second) pair hides x3.
A player's guess is a flag bit plus a two-bit string; the guess wins when
the flag is 0 and the string differs from the hidden one (elimination), or
the flag is 1 and the string matches (identification).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable

from .games import BellCode

Bits = tuple[int, ...]


def _check_bits(bits: Bits, n: int, what: str) -> Bits:
    bits = tuple(int(b) for b in bits)
    if len(bits) != n or any(b not in (0, 1) for b in bits):
        raise ValueError(f"{what} must be {n} bits, got {bits!r}")
    return bits


@dataclass(frozen=True)
class TDRInput:
    """Six hidden bits: (x1, x1', x2, x2', x3, x3')."""

    bits: Bits

    def __post_init__(self) -> None:
        object.__setattr__(self, "bits", _check_bits(self.bits, 6, "input"))

    def pair(self, k: int) -> tuple[int, int]:
        """Hidden string of pair k (1-based)."""
        if k not in (1, 2, 3):
            raise ValueError("pair index must be 1, 2, or 3")
        return self.bits[2 * (k - 1)], self.bits[2 * k - 1]


@dataclass(frozen=True)
class Guess:
    """A player's answer: elimination/identification flag plus two symbols."""

    g0: int
    g1: int
    g1p: int

    def __post_init__(self) -> None:
        _check_bits((self.g0, self.g1, self.g1p), 3, "guess")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.g0, self.g1, self.g1p)


def win_set(x_pair: tuple[int, int]) -> frozenset[tuple[int, int, int]]:
    """All winning guesses against a hidden two-bit string."""
    y, yp = _check_bits(x_pair, 2, "hidden pair")
    winners = {(1, y, yp)}
    for g, gp in product(range(2), repeat=2):
        if (g, gp) != (y, yp):
            winners.add((0, g, gp))
    return frozenset(winners)


@dataclass(frozen=True)
class ClassicalProcess3:
    """Deterministic tripartite process: output triple -> input-flag triple.

    ``table[4*o1 + 2*o2 + o3]`` is the flag triple handed to the players when
    they emit outputs (o1, o2, o3).
    """

    table: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        if len(self.table) != 8:
            raise ValueError("table needs exactly 8 entries")
        table = tuple(_check_bits(t, 3, "table entry") for t in self.table)
        object.__setattr__(self, "table", table)

    def __call__(self, outputs: Bits) -> tuple[int, int, int]:
        o1, o2, o3 = _check_bits(outputs, 3, "outputs")
        return self.table[4 * o1 + 2 * o2 + o3]


def e_bw(outputs: Bits) -> tuple[int, int, int]:
    """The majority-switched cyclic process.

    Minority of ones: flags are the outputs rotated one step against the
    cycle. Majority of ones: flags are the complemented outputs rotated the
    other way.
    """
    o1, o2, o3 = _check_bits(outputs, 3, "outputs")
    if o1 + o2 + o3 <= 1:
        return (o3, o1, o2)
    return (1 - o2, 1 - o3, 1 - o1)


def ebw_process() -> ClassicalProcess3:
    return ClassicalProcess3(
        tuple(e_bw((o1, o2, o3)) for o1, o2, o3 in product(range(2), repeat=3))
    )


def _majority(bits: Bits) -> int:
    return 1 if sum(bits) >= 2 else 0


@dataclass(frozen=True)
class BranchAccounting:
    """Enumeration results split by the majority branch of the process."""

    overall: Fraction
    per_input_min: Fraction
    per_input_max: Fraction
    branch_weight: tuple[Fraction, Fraction]
    branch_success: tuple[Fraction, Fraction]


def _enumerate_round(
    score_case: Callable[[TDRInput, Bits], tuple[int, int, int]],
    cases_per_input: int,
) -> BranchAccounting:
    """Tally (win, branch, branch_win) over all inputs and free-bit cases.

    ``score_case`` returns (won, majority_branch, 1) per case; the third slot
    is reserved for weighting and is always 1 here.
    """
    total_cases = 64 * cases_per_input
    wins = 0
    per_input: list[int] = []
    branch_cases = [0, 0]
    branch_wins = [0, 0]
    for xbits in product(range(2), repeat=6):
        x = TDRInput(xbits)
        input_wins = 0
        for raw in range(cases_per_input):
            case = tuple((raw >> i) & 1 for i in range(cases_per_input.bit_length() - 1))
            won, branch, _ = score_case(x, case)
            input_wins += won
            branch_cases[branch] += 1
            branch_wins[branch] += won
        per_input.append(input_wins)
        wins += input_wins
    weight = tuple(Fraction(c, total_cases) for c in branch_cases)
    success = tuple(
        Fraction(w, c) if c else Fraction(0) for w, c in zip(branch_wins, branch_cases)
    )
    return BranchAccounting(
        overall=Fraction(wins, total_cases),
        per_input_min=Fraction(min(per_input), cases_per_input),
        per_input_max=Fraction(max(per_input), cases_per_input),
        branch_weight=weight,  # type: ignore[arg-type]
        branch_success=success,  # type: ignore[arg-type]
    )


def _ebw_round_case(
    x: TDRInput, free: Bits, reversed_roles: bool, free_side: int
) -> tuple[int, int, int]:
    """Score one free-bit assignment of the shared-process strategy.

    ``free`` holds six bits: each player's two outcomes on the pair it reads
    first (standard round: first player on pair 1, second on pair 2, third on
    pair 3; their partners' outcomes follow from the pair correlations).
    With ``free_side=1`` the partners' outcomes are enumerated instead; the
    XOR correlations make both conventions provably identical, and tests
    assert it.
    """
    x1, x1p = x.pair(1)
    x2, x2p = x.pair(2)
    x3, x3p = x.pair(3)
    t: Bits = free
    if free_side == 1:
        # Enumerate the partner side instead; pair correlations are XORs, so
        # either round maps the partner bits back the same way.
        t = (
            t[0] ^ x1, t[1] ^ x1p,
            t[2] ^ x2, t[3] ^ x2p,
            t[4] ^ x3, t[5] ^ x3p,
        )
    az, ax, bz, bx, cz, cx = t
    if not reversed_roles:
        # Pair 1 read by first+third, pair 2 by second+first, pair 3 by
        # third+second; outputs come from the partner-side AND.
        o1 = (bz ^ x2) & (bx ^ x2p)
        o2 = (cz ^ x3) & (cx ^ x3p)
        o3 = (az ^ x1) & (ax ^ x1p)
    else:
        # Reversed round: pair 1 between first+second, pair 2 second+third,
        # pair 3 third+first; outputs are complemented partner ANDs.
        o1 = 1 - ((cz ^ x3) & (cx ^ x3p))
        o2 = 1 - ((az ^ x1) & (ax ^ x1p))
        o3 = 1 - ((bz ^ x2) & (bx ^ x2p))
    flags = e_bw((o1, o2, o3))
    guesses = (
        (flags[0], 1 - az, 1 - ax),
        (flags[1], 1 - bz, 1 - bx),
        (flags[2], 1 - cz, 1 - cx),
    )
    won = int(
        guesses[0] in win_set(x.pair(1))
        and guesses[1] in win_set(x.pair(2))
        and guesses[2] in win_set(x.pair(3))
    )
    return won, _majority((o1, o2, o3)), 1


def tdr_accounting_ebw(free_side: int = 0) -> BranchAccounting:
    """Full enumeration of the shared-process strategy, standard round."""
    if free_side not in (0, 1):
        raise ValueError("free_side must be 0 or 1")

    def score(x: TDRInput, case: Bits) -> tuple[int, int, int]:
        return _ebw_round_case(x, case, reversed_roles=False, free_side=free_side)

    return _enumerate_round(score, 64)


def tdr_success_ebw() -> Fraction:
    """Success probability of the shared-process strategy (27/32)."""
    return tdr_accounting_ebw().overall


def tdr_success_no_collab() -> Fraction:
    """Every player eliminates with a fresh uniform pair; no communication."""
    total = 0
    cases = 0
    for xbits in product(range(2), repeat=6):
        x = TDRInput(xbits)
        for picks in product(range(2), repeat=6):
            guesses = (
                (0, picks[0], picks[1]),
                (0, picks[2], picks[3]),
                (0, picks[4], picks[5]),
            )
            cases += 1
            total += int(
                guesses[0] in win_set(x.pair(1))
                and guesses[1] in win_set(x.pair(2))
                and guesses[2] in win_set(x.pair(3))
            )
    return Fraction(total, cases)


@dataclass(frozen=True)
class RelayAccounting:
    overall: Fraction
    per_player: tuple[Fraction, Fraction, Fraction]


def tdr_relay_accounting() -> RelayAccounting:
    """Fixed order first->second->third with outcome forwarding.

    The first player forwards its raw outcomes; the second then reads x2
    exactly from the pair it shares with the first, and the third reads x3
    exactly from the pair the second forwards. Only the first player, with
    nobody upstream, must fall back to elimination with a uniform pair.
    """
    wins = [0, 0, 0]
    all_win = 0
    cases = 0
    for xbits in product(range(2), repeat=6):
        x = TDRInput(xbits)
        x2 = x.pair(2)
        x3 = x.pair(3)
        for free in product(range(2), repeat=6):
            az, ax, bz, bx, cz, cx = free
            for pick in product(range(2), repeat=2):
                cases += 1
                # First player's share of pair 2 is (bz^x2, bx^x2p); second
                # player XORs with its own bits to recover x2. Third player
                # gets the second's share of pair 3 the same way.
                g1 = (0, pick[0], pick[1])
                g2 = (1, (bz ^ x2[0]) ^ bz, (bx ^ x2[1]) ^ bx)
                g3 = (1, (cz ^ x3[0]) ^ cz, (cx ^ x3[1]) ^ cx)
                w1 = g1 in win_set(x.pair(1))
                w2 = g2 in win_set(x.pair(2))
                w3 = g3 in win_set(x.pair(3))
                wins[0] += w1
                wins[1] += w2
                wins[2] += w3
                all_win += int(w1 and w2 and w3)
    return RelayAccounting(
        overall=Fraction(all_win, cases),
        per_player=tuple(Fraction(w, cases) for w in wins),  # type: ignore[arg-type]
    )


def tdr_success_definite_order() -> Fraction:
    """Best fixed-order benchmark for the standard round (3/4)."""
    return tdr_relay_accounting().overall


@dataclass(frozen=True)
class FlagAccounting:
    overall: Fraction
    round_success: tuple[Fraction, Fraction]


def ftdr_accounting(strategy: str) -> FlagAccounting:
    """Flagged variant: a fair coin selects standard or reversed pair roles.

    ``"ebw"`` plays the shared-process strategy adapted per round;
    ``"definite_order"`` plays the forwarding relay, which in the reversed
    round can only serve the third player exactly.
    """
    if strategy == "ebw":
        std = tdr_accounting_ebw().overall

        def score(x: TDRInput, case: Bits) -> tuple[int, int, int]:
            return _ebw_round_case(x, case, reversed_roles=True, free_side=0)

        rev = _enumerate_round(score, 64).overall
        return FlagAccounting((std + rev) / 2, (std, rev))
    if strategy == "definite_order":
        std = tdr_relay_accounting().overall
        rev = _reversed_relay_success()
        return FlagAccounting((std + rev) / 2, (std, rev))
    raise ValueError(f"unknown strategy {strategy!r}; expected 'ebw' or 'definite_order'")


def ftdr_success(strategy: str) -> Fraction:
    return ftdr_accounting(strategy).overall


def _reversed_relay_success() -> Fraction:
    """Relay in the reversed round: pair 1 joins first+second, pair 2
    second+third, pair 3 third+first. Forwarding still rescues the third
    player (the first holds its partner share), while the first and second
    players' hidden strings sit entirely downstream and force elimination."""
    all_win = 0
    cases = 0
    for xbits in product(range(2), repeat=6):
        x = TDRInput(xbits)
        x3 = x.pair(3)
        for free in product(range(2), repeat=2):
            cz, cx = free  # third player's own share of pair 3
            for pick1 in product(range(2), repeat=2):
                for pick2 in product(range(2), repeat=2):
                    cases += 1
                    g1 = (0, pick1[0], pick1[1])
                    g2 = (0, pick2[0], pick2[1])
                    # First player forwards its pair-3 share (cz^x3, cx^x3p).
                    g3 = (1, (cz ^ x3[0]) ^ cz, (cx ^ x3[1]) ^ cx)
                    w1 = g1 in win_set(x.pair(1))
                    w2 = g2 in win_set(x.pair(2))
                    w3 = g3 in win_set(x.pair(3))
                    all_win += int(w1 and w2 and w3)
    return Fraction(all_win, cases)


def two_copy_locc_decode(z_bits: tuple[int, int], x_bits: tuple[int, int]) -> BellCode:
    """Recover a qubit code from two copies measured locally.

    One copy is read in the computational basis on both wires (``z_bits``),
    the other in the conjugate basis (``x_bits``); the XOR of each pair of
    readings reveals one hidden symbol.
    """
    z_bits = _check_bits(z_bits, 2, "computational readings")
    x_bits = _check_bits(x_bits, 2, "conjugate readings")
    return BellCode(2, z_bits[0] ^ z_bits[1], x_bits[0] ^ x_bits[1])
