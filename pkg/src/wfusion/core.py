"""Shared vocabulary: polarizations, exact rationals, state descriptors, labels.

Basis convention for every :class:`PureState`: qubit 0 is the most
significant bit of the amplitude index, ``H`` is bit value 0 and ``V`` is
bit value 1.  So for three qubits the index of ``|H V H>`` is ``0b010 = 2``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

NORM_TOL = 1e-12

Rational = Fraction


def rational(num: int, den: int = 1) -> Fraction:
    """Exact reduced fraction with a positive denominator."""
    if den == 0:
        raise ZeroDivisionError("rational with zero denominator")
    return Fraction(int(num), int(den))


def format_rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    num, sep, den = text.strip().partition("/")
    return rational(int(num), int(den) if sep else 1)


class Polarization(enum.IntEnum):
    H = 0
    V = 1

    def __str__(self) -> str:
        return self.name


class GateResult(str, enum.Enum):
    """Outcome of one fusion gate: coincidence, both-H, or both-V."""

    S = "S"
    R = "R"
    F = "F"

    def __str__(self) -> str:
        return self.value


class OutcomeClass(str, enum.Enum):
    S = "S"
    PS = "PS"
    PR = "PR"
    R = "R"
    F = "F"
    # success sub-cases, only used for truth-table bookkeeping
    S1 = "S1"
    S2 = "S2"
    S3 = "S3"

    @property
    def base(self) -> "OutcomeClass":
        if self in (OutcomeClass.S1, OutcomeClass.S2, OutcomeClass.S3):
            return OutcomeClass.S
        return self

    def __str__(self) -> str:
        return self.value


class SchemeId(str, enum.Enum):
    THREE_STATE = "three"
    TWO_BASIC = "two-basic"
    TWO_ENHANCED = "two-enhanced"

    @property
    def arity(self) -> int:
        """Number of W states consumed per fusion attempt."""
        return 3 if self is SchemeId.THREE_STATE else 2

    @classmethod
    def parse(cls, text: Union[str, "SchemeId"]) -> "SchemeId":
        if isinstance(text, SchemeId):
            return text
        key = text.strip().lower().replace("_", "-")
        aliases = {
            "three": cls.THREE_STATE,
            "three-state": cls.THREE_STATE,
            "threestate": cls.THREE_STATE,
            "two-basic": cls.TWO_BASIC,
            "twobasic": cls.TWO_BASIC,
            "basic": cls.TWO_BASIC,
            "two-enhanced": cls.TWO_ENHANCED,
            "twoenhanced": cls.TWO_ENHANCED,
            "enhanced": cls.TWO_ENHANCED,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown scheme {text!r}") from None

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, eq=False)
class PureState:
    """Dense amplitude vector over ``qubit_count`` polarization qubits.

    ``labels`` tags each qubit with its owner (``"a"``, ``"b"``, ``"c"`` or a
    mode name such as ``"mode3"``).  Construction checks the norm, so every
    instance handed out by this package is normalized.
    """

    amplitudes: np.ndarray
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        k = amps.size.bit_length() - 1
        if amps.size != 1 << k:
            raise ValueError(f"amplitude vector length {amps.size} is not a power of two")
        labels = tuple(self.labels) if self.labels else ("q",) * k
        if len(labels) != k:
            raise ValueError(f"{len(labels)} labels for {k} qubits")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state not normalized (|psi|^2 = {norm!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "labels", labels)

    @property
    def qubit_count(self) -> int:
        return len(self.labels)

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per qubit (read-only view)."""
        return self.amplitudes.reshape((2,) * self.qubit_count)

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no qubit labelled {label!r}") from None

    def kron(self, other: "PureState") -> "PureState":
        return PureState(np.kron(self.amplitudes, other.amplitudes), self.labels + other.labels)

    @classmethod
    def scalar(cls) -> "PureState":
        return cls(np.ones(1, dtype=complex), ())

    @classmethod
    def basis(cls, pattern: Sequence[Polarization | int | str], labels: Sequence[str] = ()) -> "PureState":
        bits = [Polarization[p] if isinstance(p, str) else Polarization(p) for p in pattern]
        index = 0
        for b in bits:
            index = (index << 1) | int(b)
        amps = np.zeros(1 << len(bits), dtype=complex)
        amps[index] = 1.0
        return cls(amps, tuple(labels))

    def __repr__(self) -> str:
        return f"PureState(qubits={self.qubit_count}, labels={''.join(l[0] for l in self.labels)!r})"


@dataclass(frozen=True)
class W:
    """W state block on ``size`` photons; ``W(1)`` is a lone V photon."""

    size: int

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError("W block needs size >= 1")

    @property
    def photons(self) -> int:
        return self.size

    @property
    def recyclable(self) -> bool:
        # W(1) carries no entanglement; W(2) is a Bell pair, handled by callers
        return self.size >= 2

    def __str__(self) -> str:
        return f"W({self.size})"


@dataclass(frozen=True)
class AllH:
    """``count`` photons all in H: the remains of a destroyed W state."""

    count: int

    def __post_init__(self) -> None:
        if self.count < 0:
            raise ValueError("AllH block needs count >= 0")

    @property
    def photons(self) -> int:
        return self.count

    @property
    def recyclable(self) -> bool:
        return False

    def __str__(self) -> str:
        return f"AllH({self.count})"


Block = Union[W, AllH]


@dataclass(frozen=True)
class BlockState:
    """Symbolic tensor product of blocks, in party order."""

    blocks: tuple[Block, ...]

    def __init__(self, blocks: Sequence[Block]) -> None:
        object.__setattr__(self, "blocks", tuple(blocks))

    @property
    def photon_count(self) -> int:
        return sum(b.photons for b in self.blocks)

    def w_sizes(self) -> list[int]:
        return [b.size for b in self.blocks if isinstance(b, W)]

    def __iter__(self):
        return iter(self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        return " x ".join(str(b) for b in self.blocks) or "<vacuum>"
