import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wfusion import analytic, oracle
from wfusion.core import AllH, BlockState, GateResult, OutcomeClass, SchemeId, W

# reference truth table: input, throughput, (FG1, FG2), result, numerator of p * nmt
REFERENCE_ROWS = [
    ("HHHH", "HH|HH", "RR", "R", lambda n, m, t: (n - 1) * (m - 1) * (t - 1)),
    ("HHHV", "HH|HV", "RS", "PR", lambda n, m, t: (n - 1) * (m - 1)),
    ("HVHH", "HV|HH", "SR", "PS", lambda n, m, t: (n - 1) * (t - 1)),
    ("HVHV", "HV|HV", "SS", "S1", lambda n, m, t: n - 1),
    ("VHHH", "VH|HH", "SR", "PS", lambda n, m, t: (m - 1) * (t - 1)),
    ("VHHV", "VH|HV", "SS", "S2", lambda n, m, t: m - 1),
    ("VVHH", "VH|VH", "SS", "S3", lambda n, m, t: t - 1),
    ("VVHV", "VH|VV", "SF", "F", lambda n, m, t: 1),
]


def _pattern(pols):
    return "".join(p.name for p in pols)


@pytest.mark.parametrize("nmt", [(2, 2, 2), (3, 3, 3), (2, 5, 7), (9, 4, 6)])
def test_truth_table_matches_reference_rows(nmt):
    rows = analytic.truth_table3(*nmt)
    assert len(rows) == 8
    n, m, t = nmt
    for row, (inp, thr, gates, result, num) in zip(rows, REFERENCE_ROWS):
        assert _pattern(row.input) == inp
        assert _pattern(row.fg1_pair) + "|" + _pattern(row.fg2_pair) == thr
        assert "".join(g.value for g in row.gates) == gates
        assert row.result.value == result
        assert row.probability == Fraction(num(n, m, t), n * m * t)


def test_truth_table_333_numerators():
    rows = analytic.truth_table3(3, 3, 3)
    assert [r.probability * 27 for r in rows] == [8, 4, 4, 2, 4, 2, 2, 1]


def test_truth_table_222_last_row():
    last = analytic.truth_table3(2, 2, 2)[-1]
    assert _pattern(last.input) == "VVHV"
    assert last.probability == Fraction(1, 8)


def test_truth_table_mode3_always_h():
    assert all(row.input[2].name == "H" for row in analytic.truth_table3(4, 5, 6))


def test_truth_table_rejects_small():
    with pytest.raises(ValueError):
        analytic.truth_table3(1, 3, 3)


def _as_dict(records):
    return {r.outcome: r for r in records}


def test_outcomes3_333():
    recs = _as_dict(analytic.outcomes3(3, 3, 3))
    expected = {"S": 6, "R": 8, "PR": 4, "PS": 8, "F": 1}
    assert {c.value: r.probability * 27 for c, r in recs.items()} == expected


@pytest.mark.parametrize("t", range(2, 12))
def test_outcomes3_bell_pairs_success(t):
    assert _as_dict(analytic.outcomes3(2, 2, t))[OutcomeClass.S].probability == Fraction(t + 1, 4 * t)


def test_outcomes3_partial_success_blocks():
    ps = _as_dict(analytic.outcomes3(4, 4, 4))[OutcomeClass.PS]
    assert ps.result_blocks == BlockState([W(6), W(3)])


def test_outcomes3_blocks_per_class():
    recs = _as_dict(analytic.outcomes3(3, 4, 5))
    assert recs[OutcomeClass.S].result_blocks == BlockState([W(9)])
    assert recs[OutcomeClass.R].result_blocks == BlockState([W(2), W(3), W(4)])
    assert recs[OutcomeClass.PR].result_blocks == BlockState([W(2), W(3), AllH(4)])
    assert recs[OutcomeClass.F].result_blocks == BlockState([AllH(2), AllH(3), AllH(4)])


def test_outcomes2_basic_examples():
    recs = _as_dict(analytic.outcomes2_basic(3, 3))
    assert [recs[c].probability for c in (OutcomeClass.R, OutcomeClass.S, OutcomeClass.F)] == [
        Fraction(4, 9),
        Fraction(4, 9),
        Fraction(1, 9),
    ]
    assert _as_dict(analytic.outcomes2_basic(5, 7))[OutcomeClass.S].probability == Fraction(2, 7)


@pytest.mark.parametrize("m", range(2, 10))
def test_outcomes2_basic_no_growth_with_bell_pair(m):
    assert _as_dict(analytic.outcomes2_basic(2, m))[OutcomeClass.S].result_blocks == BlockState([W(m)])


def test_outcomes2_enhanced_examples():
    s = _as_dict(analytic.outcomes2_enhanced(3, 3))[OutcomeClass.S]
    assert (s.probability, s.result_blocks) == (Fraction(5, 9), BlockState([W(5)]))
    s = _as_dict(analytic.outcomes2_enhanced(2, 2))[OutcomeClass.S]
    assert (s.probability, s.result_blocks) == (Fraction(3, 4), BlockState([W(3)]))
    assert OutcomeClass.F not in _as_dict(analytic.outcomes2_enhanced(4, 7))


SIZES = st.integers(2, 50)


@given(SIZES, SIZES, SIZES)
def test_exact_total_probability(n, m, t):
    assert sum(r.probability for r in analytic.outcomes3(n, m, t)) == 1
    assert sum(r.probability for r in analytic.truth_table3(n, m, t)) == 1
    assert sum(r.probability for r in analytic.outcomes2_basic(n, m)) == 1
    assert sum(r.probability for r in analytic.outcomes2_enhanced(n, m)) == 1


@given(SIZES, SIZES, SIZES)
def test_classes_aggregate_truth_table_rows(n, m, t):
    totals: dict[OutcomeClass, Fraction] = {}
    for row in analytic.truth_table3(n, m, t):
        totals[row.result.base] = totals.get(row.result.base, 0) + row.probability
    assert totals == {r.outcome: r.probability for r in analytic.outcomes3(n, m, t)}


@given(SIZES, SIZES, SIZES)
def test_photon_conservation(n, m, t):
    for rec in analytic.outcomes3(n, m, t):
        assert rec.result_blocks.photon_count == n + m + t - 3
    for rec in analytic.outcomes2_basic(n, m):
        assert rec.result_blocks.photon_count == n + m - 2
    for rec in analytic.outcomes2_enhanced(n, m):
        assert rec.result_blocks.photon_count == n + m - 1


@given(st.sampled_from(list(SchemeId)), SIZES, SIZES, SIZES)
def test_success_probability_shortcut(scheme, n, m, t):
    sizes = (n, m, t)[: scheme.arity]
    s = _as_dict(analytic.outcomes(scheme, *sizes))[OutcomeClass.S]
    assert analytic.success_probability(scheme, *sizes) == s.probability
    assert s.result_blocks == BlockState([W(analytic.fused_size(scheme, *sizes))])


def test_outcomes_dispatch_checks_arity():
    with pytest.raises(ValueError):
        analytic.outcomes(SchemeId.THREE_STATE, 3, 3)


GRID = list(itertools.product(range(2, 5), repeat=3))


@pytest.mark.parametrize("n, m, t", GRID)
def test_oracle_equivalence_scheme3(n, m, t):
    branches = oracle.run_scheme3(n, m, t)
    through = oracle.throughput_distribution3(n, m, t)
    for row in analytic.truth_table3(n, m, t):
        assert through[row.throughput] == pytest.approx(float(row.probability), abs=1e-12)
    by_class = {b.outcome: b for b in branches if b.outcome is not None}
    for rec in analytic.outcomes3(n, m, t):
        br = by_class[rec.outcome]
        assert br.probability == pytest.approx(float(rec.probability), abs=1e-12)
        assert oracle.fidelity(br.post_state, oracle.materialize(rec.result_blocks)) >= 1 - 1e-12


@pytest.mark.parametrize("scheme", [SchemeId.TWO_BASIC, SchemeId.TWO_ENHANCED])
@pytest.mark.parametrize("n, m", list(itertools.product(range(2, 6), repeat=2)))
def test_oracle_equivalence_two_state(scheme, n, m):
    run = oracle.run_scheme2_basic if scheme is SchemeId.TWO_BASIC else oracle.run_scheme2_enhanced
    by_class = {b.outcome: b for b in run(n, m)}
    for rec in analytic.outcomes(scheme, n, m):
        br = by_class[rec.outcome]
        assert br.probability == pytest.approx(float(rec.probability), abs=1e-12)
        assert oracle.fidelity(br.post_state, oracle.materialize(rec.result_blocks)) >= 1 - 1e-12


def test_gate_result_rule():
    H, V = analytic.H, analytic.V
    assert analytic.gate_result(H, H) is GateResult.R
    assert analytic.gate_result(V, V) is GateResult.F
    assert analytic.gate_result(H, V) is analytic.gate_result(V, H) is GateResult.S
