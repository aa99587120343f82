"""Closed-form outcome distributions for the fusion schemes.

All probabilities are exact :class:`fractions.Fraction` values, so these
functions work at sizes far beyond what the statevector oracle can hold.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .core import AllH, BlockState, GateResult, OutcomeClass, Polarization, SchemeId, W

H, V = Polarization.H, Polarization.V


@dataclass(frozen=True)
class TruthTableRow:
    input: tuple[Polarization, Polarization, Polarization, Polarization]
    throughput: tuple[Polarization, Polarization, Polarization, Polarization]
    gates: tuple[GateResult, GateResult]
    result: OutcomeClass
    probability: Fraction

    @property
    def fg1_pair(self) -> tuple[Polarization, Polarization]:
        return self.throughput[0], self.throughput[1]

    @property
    def fg2_pair(self) -> tuple[Polarization, Polarization]:
        return self.throughput[2], self.throughput[3]


@dataclass(frozen=True)
class OutcomeRecord:
    outcome: OutcomeClass
    probability: Fraction
    result_blocks: BlockState


def _require(*sizes: int) -> None:
    if any(int(s) != s or s < 2 for s in sizes):
        raise ValueError(f"W state sizes must be integers >= 2, got {sizes}")


def fredkin_pattern(pattern):
    """Classical action of the controlled swap on modes (1, 2, 3, 4)."""
    p1, p2, p3, p4 = pattern
    return (p1, p3, p2, p4) if p1 is V else (p1, p2, p3, p4)


def gate_result(a: Polarization, b: Polarization) -> GateResult:
    if a is b:
        return GateResult.R if a is H else GateResult.F
    return GateResult.S


# the three success rows are tagged separately, by which party supplied the
# V photon that is heralded
_SUCCESS_TAGS = {(H, V, H, V): OutcomeClass.S1, (V, H, H, V): OutcomeClass.S2, (V, V, H, H): OutcomeClass.S3}

_PAIR_CLASS = {
    (GateResult.R, GateResult.R): OutcomeClass.R,
    (GateResult.R, GateResult.S): OutcomeClass.PR,
    (GateResult.S, GateResult.R): OutcomeClass.PS,
    (GateResult.S, GateResult.F): OutcomeClass.F,
}


def truth_table3(n: int, m: int, t: int) -> list[TruthTableRow]:
    """The eight rows of the three-state truth table, inputs in binary order.

    Alice, Bob and Charlie each send V with probability ``1/size``; the
    ancilla in mode 3 is always H.
    """
    _require(n, m, t)
    rows = []
    for p1, p2, p4 in itertools.product((H, V), repeat=3):
        inp = (p1, p2, H, p4)
        thr = fredkin_pattern(inp)
        gates = (gate_result(thr[0], thr[1]), gate_result(thr[2], thr[3]))
        result = _SUCCESS_TAGS[inp] if gates == (GateResult.S, GateResult.S) else _PAIR_CLASS[gates]
        prob = Fraction(1)
        for p, size in ((p1, n), (p2, m), (p4, t)):
            prob *= Fraction(1 if p is V else size - 1, size)
        rows.append(TruthTableRow(inp, thr, gates, result, prob))
    return rows


def outcomes3(n: int, m: int, t: int) -> list[OutcomeRecord]:
    _require(n, m, t)
    nmt = n * m * t
    return [
        OutcomeRecord(OutcomeClass.S, Fraction(n + m + t - 3, nmt), BlockState([W(n + m + t - 3)])),
        OutcomeRecord(
            OutcomeClass.R,
            Fraction((n - 1) * (m - 1) * (t - 1), nmt),
            BlockState([W(n - 1), W(m - 1), W(t - 1)]),
        ),
        OutcomeRecord(
            OutcomeClass.PR, Fraction((n - 1) * (m - 1), nmt), BlockState([W(n - 1), W(m - 1), AllH(t - 1)])
        ),
        OutcomeRecord(OutcomeClass.PS, Fraction((n + m - 2) * (t - 1), nmt), BlockState([W(n + m - 2), W(t - 1)])),
        OutcomeRecord(OutcomeClass.F, Fraction(1, nmt), BlockState([AllH(n - 1), AllH(m - 1), AllH(t - 1)])),
    ]


def outcomes2_basic(n: int, m: int) -> list[OutcomeRecord]:
    _require(n, m)
    nm = n * m
    return [
        OutcomeRecord(OutcomeClass.R, Fraction((n - 1) * (m - 1), nm), BlockState([W(n - 1), W(m - 1)])),
        OutcomeRecord(OutcomeClass.S, Fraction(n + m - 2, nm), BlockState([W(n + m - 2)])),
        OutcomeRecord(OutcomeClass.F, Fraction(1, nm), BlockState([AllH(n - 1), AllH(m - 1)])),
    ]


def outcomes2_enhanced(n: int, m: int) -> list[OutcomeRecord]:
    """Fredkin-assisted two-state fusion; the both-V input is rescued by the ancilla.

    On the recyclable branch the ancilla leaves undetected in H, so it shows
    up as a trailing ``AllH(1)`` block.  On success it is part of the W state.
    """
    _require(n, m)
    nm = n * m
    return [
        OutcomeRecord(OutcomeClass.R, Fraction((n - 1) * (m - 1), nm), BlockState([W(n - 1), W(m - 1), AllH(1)])),
        OutcomeRecord(OutcomeClass.S, Fraction(n + m - 1, nm), BlockState([W(n + m - 1)])),
    ]


def outcomes(scheme: SchemeId | str, *sizes: int) -> list[OutcomeRecord]:
    scheme = SchemeId.parse(scheme)
    if len(sizes) != scheme.arity:
        raise ValueError(f"{scheme} fuses {scheme.arity} states, got sizes {sizes}")
    if scheme is SchemeId.THREE_STATE:
        return outcomes3(*sizes)
    if scheme is SchemeId.TWO_BASIC:
        return outcomes2_basic(*sizes)
    return outcomes2_enhanced(*sizes)


def success_probability(scheme: SchemeId | str, *sizes: int) -> Fraction:
    scheme = SchemeId.parse(scheme)
    if len(sizes) != scheme.arity:
        raise ValueError(f"{scheme} fuses {scheme.arity} states, got sizes {sizes}")
    _require(*sizes)
    return Fraction(fused_size(scheme, *sizes), math.prod(sizes))


def fused_size(scheme: SchemeId | str, *sizes: int) -> int:
    """Size of the W state produced on success."""
    scheme = SchemeId.parse(scheme)
    if len(sizes) != scheme.arity:
        raise ValueError(f"{scheme} fuses {scheme.arity} states, got sizes {sizes}")
    shrink = {SchemeId.THREE_STATE: 3, SchemeId.TWO_BASIC: 2, SchemeId.TWO_ENHANCED: 1}[scheme]
    return sum(sizes) - shrink
