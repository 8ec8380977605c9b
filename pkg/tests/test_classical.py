"""Exact-rational oracles for the tripartite retrieval round.

All target values were derived by hand from the 2^6 x 2^6 case enumeration
before the module was written, then frozen here:

* shared-process strategy 27/32, winning on exactly the minority branch;
* no-collaboration product bound (3/4)^3 x 2 = 27/64;
* forwarding relay 3/4, with the two downstream players perfect;
* flagged variant: 27/32 for the adapted shared-process strategy (both
  rounds equal), 21/32 = (3/4 + 9/16)/2 for the relay.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest

from causalkit.classical import (
    ClassicalProcess3,
    Guess,
    TDRInput,
    e_bw,
    ebw_process,
    ftdr_accounting,
    ftdr_success,
    tdr_accounting_ebw,
    tdr_relay_accounting,
    tdr_success_definite_order,
    tdr_success_ebw,
    tdr_success_no_collab,
    two_copy_locc_decode,
    win_set,
)
from causalkit.games import BellCode

EBW_TABLE = {
    (0, 0, 0): (0, 0, 0),
    (0, 0, 1): (1, 0, 0),
    (0, 1, 0): (0, 0, 1),
    (1, 0, 0): (0, 1, 0),
    (0, 1, 1): (0, 0, 1),
    (1, 0, 1): (1, 0, 0),
    (1, 1, 0): (0, 1, 0),
    (1, 1, 1): (0, 0, 0),
}


class TestProcessTable:
    def test_full_table_frozen(self):
        for outputs, flags in EBW_TABLE.items():
            assert e_bw(outputs) == flags

    def test_minority_branch_rotates_against_cycle(self):
        assert e_bw((1, 0, 0)) == (0, 1, 0)
        assert e_bw((0, 1, 0)) == (0, 0, 1)
        assert e_bw((0, 0, 1)) == (1, 0, 0)

    def test_majority_branch_complements(self):
        assert e_bw((1, 1, 0)) == (0, 1, 0)
        assert e_bw((1, 1, 1)) == (0, 0, 0)

    def test_process_object_matches_function(self):
        proc = ebw_process()
        for outputs in product(range(2), repeat=3):
            assert proc(outputs) == e_bw(outputs)

    def test_table_length_checked(self):
        with pytest.raises(ValueError, match="8 entries"):
            ClassicalProcess3(((0, 0, 0),) * 7)

    def test_outputs_checked(self):
        with pytest.raises(ValueError):
            e_bw((0, 2, 0))
        with pytest.raises(ValueError):
            ebw_process()((0, 0))


class TestGuessStructure:
    def test_win_set_frozen(self):
        assert win_set((0, 0)) == frozenset(
            {(0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 0, 0)}
        )

    def test_win_set_always_four(self):
        # One identification plus three eliminations, for every hidden pair.
        for pair in product(range(2), repeat=2):
            winners = win_set(pair)
            assert len(winners) == 4
            assert (1,) + pair in winners
            assert (0,) + pair not in winners

    def test_guess_round_trip(self):
        g = Guess(1, 0, 1)
        assert g.as_tuple() == (1, 0, 1)
        assert g.as_tuple() in win_set((0, 1))

    def test_guess_bits_checked(self):
        with pytest.raises(ValueError):
            Guess(2, 0, 0)

    def test_input_pairs(self):
        x = TDRInput((1, 0, 0, 1, 1, 1))
        assert x.pair(1) == (1, 0)
        assert x.pair(2) == (0, 1)
        assert x.pair(3) == (1, 1)
        with pytest.raises(ValueError):
            x.pair(0)
        with pytest.raises(ValueError):
            TDRInput((0, 0, 0))


class TestSharedProcessStrategy:
    def test_overall_value_exact(self):
        value = tdr_success_ebw()
        assert isinstance(value, Fraction)
        assert value == Fraction(27, 32)

    def test_uniform_over_inputs(self):
        acc = tdr_accounting_ebw()
        assert acc.per_input_min == acc.per_input_max == Fraction(27, 32)

    def test_branch_accounting(self):
        # The strategy wins exactly when the process takes its minority
        # branch; the majority branch never wins but is rare.
        acc = tdr_accounting_ebw()
        assert acc.branch_weight == (Fraction(27, 32), Fraction(5, 32))
        assert acc.branch_success == (Fraction(1), Fraction(0))
        total = sum(w * s for w, s in zip(acc.branch_weight, acc.branch_success))
        assert total == acc.overall

    def test_free_side_convention_irrelevant(self):
        assert tdr_accounting_ebw(free_side=0) == tdr_accounting_ebw(free_side=1)


class TestBenchmarks:
    def test_no_collaboration_product(self):
        assert tdr_success_no_collab() == Fraction(27, 64)

    def test_relay_accounting(self):
        acc = tdr_relay_accounting()
        assert acc.overall == Fraction(3, 4)
        assert acc.per_player == (Fraction(3, 4), Fraction(1), Fraction(1))

    def test_definite_order_benchmark(self):
        assert tdr_success_definite_order() == Fraction(3, 4)

    def test_strict_separation(self):
        assert tdr_success_no_collab() < tdr_success_definite_order()
        assert tdr_success_definite_order() < tdr_success_ebw()


class TestFlaggedVariant:
    def test_shared_process_survives_flag(self):
        acc = ftdr_accounting("ebw")
        assert acc.overall == Fraction(27, 32)
        assert acc.round_success == (Fraction(27, 32), Fraction(27, 32))

    def test_relay_degrades_under_flag(self):
        acc = ftdr_accounting("definite_order")
        assert acc.overall == Fraction(21, 32)
        assert acc.round_success == (Fraction(3, 4), Fraction(9, 16))

    def test_flagged_gap(self):
        assert ftdr_success("definite_order") < ftdr_success("ebw")

    def test_unknown_strategy_rejected(self):
        with pytest.raises(ValueError, match="unknown strategy"):
            ftdr_accounting("bogus")


class TestTwoCopyDecode:
    def test_xor_law(self):
        for z0, z1, x0, x1 in product(range(2), repeat=4):
            code = two_copy_locc_decode((z0, z1), (x0, x1))
            assert code == BellCode(2, z0 ^ z1, x0 ^ x1)

    def test_decodes_every_code_with_certainty(self):
        # Outcomes consistent with the pair correlations always point back to
        # the encoded symbols, so the decoder never errs.
        for x1, x2 in product(range(2), repeat=2):
            consistent = [
                ((z0, z0 ^ x1), (s0, s0 ^ x2))
                for z0 in range(2)
                for s0 in range(2)
            ]
            for z_bits, x_bits in consistent:
                assert two_copy_locc_decode(z_bits, x_bits) == BellCode(2, x1, x2)

    def test_bits_checked(self):
        with pytest.raises(ValueError):
            two_copy_locc_decode((0, 2), (0, 0))
