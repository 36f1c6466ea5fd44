"""Pairing-augmented transfer: cycle moments and Hamiltonian counting, all
cross-validated against exhaustive enumeration."""
from fractions import Fraction

import pytest

from circperm.algebra import eval_recurrence
from circperm.budget import Budget
from circperm.circulant import normalize, parse_spec
from circperm.errors import InconsistencyError, StateBudgetError
from circperm.extensions import (PairingState, _binomial_shift,
                                 hamiltonian_derive, moments_derive,
                                 moments_ratio)
from circperm.oracle import brute_hamiltonian, enumerate_stats


@pytest.mark.parametrize("jumps", ["0,1,2", "-1,0,1", "1,2", "-1,2", "-2,1", "0"])
def test_moments_match_enumeration(jumps):
    spec = parse_spec(jumps)
    res = moments_derive(spec, 2)
    for n in range(res.n0, 11):
        st = enumerate_stats(spec, n, 2)
        for i in range(3):
            assert res.terms[i][n - res.n0] == st.moment_sums[i], (jumps, n, i)


def test_zeroth_moment_is_the_permanent(derived):
    res = moments_derive(parse_spec("-1,0,1"), 0)
    plain = derived("-1,0,1")
    for n in range(4, 4 + 12):
        assert res.terms[0][n - 4] == plain.raw_term(n)


def test_moment_shift_is_a_monoid_action():
    m = (3, 5, 11, 29)
    for c1 in range(3):
        for c2 in range(3):
            assert (_binomial_shift(_binomial_shift(m, c1), c2)
                    == _binomial_shift(m, c1 + c2))


def test_table2_rows():
    res = moments_derive(parse_spec("-1,0,1"), 1)
    assert res.terms[1][:5] == [22, 42, 80, 149, 274]
    rec = res.recurrences[1]
    assert rec.order == 5 and [int(c) for c in rec.coeffs] == [3, -1, -3, 1, 1]

    res = moments_derive(parse_spec("0,1,2"), 1)
    assert res.terms[1][:7] == [21, 32, 56, 93, 161, 275, 475]
    rec = res.recurrences[1]
    assert rec.order == 7 and [int(c) for c in rec.coeffs] == [3, 0, -6, 2, 4, -1, -1]


def test_self_loop_spec_moment_is_n():
    res = moments_derive(parse_spec("0"), 1)
    for n in (5, 17, 40):
        assert eval_recurrence(res.recurrences[1], n) == n
        assert moments_ratio(parse_spec("0"), n, result=res) == n


def test_expected_cycles_ratios():
    r = moments_ratio(parse_spec("-1,0,1"), 200)
    assert isinstance(r, Fraction)
    assert abs(float(r / 200) - 0.7236) < 1e-3
    # the {0,1,2} ratio approaches .2764n with a +1 offset; at n=2000 the
    # residual is 5e-4
    r = moments_ratio(parse_spec("0,1,2"), 2000)
    assert abs(float(r / 2000) - 0.2764) < 1e-3


def test_moments_refuse_normalized_specs():
    with pytest.raises(InconsistencyError):
        moments_derive(normalize(parse_spec("-1,0,1")), 1)


def test_state_budget():
    with pytest.raises(StateBudgetError):
        moments_derive(parse_spec("-1,0,1"), 1, Budget(pairing_state_cap=3))


def test_pairing_state_consistency_check():
    with pytest.raises(InconsistencyError):
        PairingState((0,), (), (1,), (), frozenset()).check()


@pytest.mark.parametrize("jumps", ["1,2", "0,1,2", "-1,0,1", "-1,2", "-2,1", "2"])
def test_hamiltonian_matches_brute_force(jumps):
    spec = parse_spec(jumps)
    res = hamiltonian_derive(spec)
    for n in range(res.n0, 13):
        assert res.terms[n - res.n0] == brute_hamiltonian(spec, n), (jumps, n)
    for n in (13, 14, 15):
        assert eval_recurrence(res.recurrence, n) == brute_hamiltonian(spec, n)


def test_hamiltonian_single_jump():
    res = hamiltonian_derive(parse_spec("1"))
    assert res.recurrence.order == 1 and res.recurrence.coeffs == (Fraction(1),)
    assert set(res.terms) == {1}


def test_hamiltonian_ignores_self_loops(derived):
    a = hamiltonian_derive(parse_spec("0,1,2"))
    b = hamiltonian_derive(parse_spec("1,2"))
    assert a.terms[:12] == b.terms[:12]


def test_lattice_hamiltonian_event_channel():
    # the lone self-loop cover of C^0 is a Hamiltonian cycle of L_1 itself:
    # the one case where a tour closes without any hook edge
    res = hamiltonian_derive(parse_spec("0"))
    assert res.n0 == 0
    assert (1, 1) in res.lattice_cycle_events
    assert res.terms[0] == 0 and res.terms[1] == 1
    for n in range(2, 8):
        assert eval_recurrence(res.recurrence, n) == 0 == brute_hamiltonian(
            parse_spec("0"), n)


def test_weighted_derive_single_loop_powers():
    from circperm.extensions import weighted_derive
    res = weighted_derive(parse_spec("0", weights="5/2"))
    rec = res.recurrence
    assert rec.order == 1 and rec.coeffs == (Fraction(5, 2),)
    assert res.term(4) == Fraction(5, 2) ** 4


def test_weighted_derive_unit_weights_identical(derived):
    from circperm.extensions import weighted_derive
    plain = derived("0,1,2")
    unit = weighted_derive(parse_spec("0,1,2", weights="1,1,1"))
    assert list(map(Fraction, plain.recurrence.coeffs)) == list(unit.recurrence.coeffs)
    assert [int(t) for t in unit.terms] == list(plain.terms)
