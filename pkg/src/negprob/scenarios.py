"""Built-in experimental configurations.

The centerpiece is a balanced two-arm interferometer with movable
which-path detectors.  Variables:

* ``Da``, ``Db``: the path detectors on arms a and b (+1 means it fired);
* ``D1``, ``D2``: the output detectors behind the recombining
  beamsplitter (+1 means it fired).

Eight detector placements ("cases") each yield an ordinary proper
distribution over the variables actually present in that run.  Combining
the statistics of several placements counterfactually, as if one photon
had definite answers to all four detectors at once, produces a constraint
system with no proper joint solution; its signed solutions and their
minimum L1 norm are what the rest of the package analyzes.

Also here: a two-party four-setting box builder and a three-time pairwise
chain builder (both from pair correlations with unbiased singles), and a
classical wave model of the same interferometer that generates the output
intensities the constraint rows encode.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .contextuality import ContextFamily
from .errors import (
    AlphaOutOfRange,
    CorrelationOutOfRange,
    DegenerateGeometry,
    EpsOutOfRange,
    InvalidCase,
    ValueOutOfBounds,
)
from .measure import Context, SampleSpace, SignedMeasure, as_fraction, build_space
from .solver import ConstraintSystem, assemble

MZ_VARIABLES = ("Da", "Db", "D1", "D2")
BELL_VARIABLES = ("A", "A2", "B", "B2")
CHAIN_VARIABLES = ("X", "Y", "Z")

_HALF = Fraction(1, 2)
_QUARTER = Fraction(1, 4)


def mz_space() -> SampleSpace:
    return build_space(MZ_VARIABLES)


def _dense(variables: tuple[str, ...], entries: dict[tuple[int, ...], Fraction]):
    size = 1 << len(variables)
    mass = [Fraction(0)] * size
    for signs, value in entries.items():
        atom = 0
        for k, sign in enumerate(signs):
            if sign == +1:
                atom |= 1 << k
        mass[atom] = value
    return tuple(mass)


# Case distributions.  Sign tuples follow the variable order given next to
# each case; cases differ in which path detectors are present and whether
# they absorb the photon.
_CASES: dict[int, tuple[tuple[str, ...], dict[tuple[int, ...], Fraction]]] = {
    # both arms open, no path detectors: all output at D1
    1: (("D1", "D2"), {(+1, -1): Fraction(1)}),
    # absorbing detector on arm a: it eats half; the rest splits evenly
    2: (
        ("Da", "D1", "D2"),
        {(-1, +1, -1): _HALF, (-1, -1, +1): _HALF},
    ),
    # absorbing detector on arm b
    3: (
        ("Db", "D1", "D2"),
        {(-1, +1, -1): _HALF, (-1, -1, +1): _HALF},
    ),
    # absorbing detectors on both arms: photon never reaches the output
    4: (
        ("Da", "Db", "D1", "D2"),
        {(-1, +1, -1, -1): _HALF, (+1, -1, -1, -1): _HALF},
    ),
    # same geometries with non-destructive path detectors
    5: (("D1", "D2"), {(+1, -1): Fraction(1)}),
    6: (
        ("Da", "D1", "D2"),
        {
            (+1, +1, -1): _QUARTER,
            (+1, -1, +1): _QUARTER,
            (-1, +1, -1): _QUARTER,
            (-1, -1, +1): _QUARTER,
        },
    ),
    7: (
        ("Db", "D1", "D2"),
        {
            (+1, +1, -1): _QUARTER,
            (+1, -1, +1): _QUARTER,
            (-1, +1, -1): _QUARTER,
            (-1, -1, +1): _QUARTER,
        },
    ),
    8: (
        ("Da", "Db", "D1", "D2"),
        {
            (-1, +1, -1, +1): _QUARTER,
            (-1, +1, +1, -1): _QUARTER,
            (+1, -1, -1, +1): _QUARTER,
            (+1, -1, +1, -1): _QUARTER,
        },
    ),
}


def mach_zehnder_case(n: int) -> ContextFamily:
    """Proper distribution observed with detector placement n (1..8)."""
    if n not in _CASES:
        raise InvalidCase(f"case must be 1..8, got {n!r}")
    variables, entries = _CASES[n]
    context = Context(variables, _dense(variables, entries))
    return ContextFamily(variables, (context,))


def _counterfactual_rows(
    p_d1: Fraction, p_d2: Fraction
) -> list[tuple[dict[str, int], Fraction]]:
    return [
        # runs with arm a blocked, kept only when Da stayed silent
        ({"Da": -1, "D1": +1, "D2": -1}, _HALF),
        ({"Da": -1, "D1": -1, "D2": +1}, _HALF),
        # runs with arm b blocked, kept only when Db stayed silent
        ({"Db": -1, "D1": -1, "D2": +1}, _HALF),
        ({"Db": -1, "D1": +1, "D2": -1}, _HALF),
        # output statistics with both arms open
        ({"D1": +1, "D2": +1}, Fraction(0)),
        ({"D1": +1, "D2": -1}, p_d1),
        ({"D1": -1, "D2": +1}, p_d2),
        ({"D1": -1, "D2": -1}, Fraction(0)),
        # one photon: never both path detectors, each arm half the time
        ({"Da": +1, "Db": +1}, Fraction(0)),
        ({"Da": +1, "Db": -1}, _HALF),
        ({"Da": -1, "Db": +1}, _HALF),
        ({"Da": -1, "Db": -1}, Fraction(0)),
    ]


def mz_counterfactual() -> ConstraintSystem:
    """Joint constraints pooled from the blocked-arm and open runs.

    Twelve cylinder rows plus normalization over (Da, Db, D1, D2).  The
    system has signed solutions but no proper one.
    """
    return assemble(
        mz_space(), _counterfactual_rows(Fraction(1), Fraction(0))
    )


def mz_counterfactual_detuned(eps: object) -> ConstraintSystem:
    """Counterfactual system with the output interference detuned.

    Only the both-arms-open output rows move: D1 fires with probability
    1-eps and D2 with probability eps.  The blocked-arm rows keep their
    value 1/2 because inserting a blocker destroys interference no matter
    how the phases are tuned, and the single-photon rows are geometry
    independent.
    """
    eps_f = as_fraction(eps)
    if not 0 <= eps_f < _HALF:
        raise EpsOutOfRange(f"eps must lie in [0, 1/2), got {eps_f}")
    return assemble(
        mz_space(), _counterfactual_rows(1 - eps_f, eps_f)
    )


def mz_general_member(
    alpha: object,
    beta: object,
    gamma: object,
    delta: object,
    theta: object,
) -> SignedMeasure:
    """General signed solution of the counterfactual system.

    The system over 16 atoms has rank 11, so its solution set carries five
    free parameters.  The table below expresses every atom mass in terms
    of (alpha, beta, gamma, delta, theta); substituting any rational
    values satisfies all thirteen rows exactly.
    """
    a = as_fraction(alpha)
    b = as_fraction(beta)
    g = as_fraction(gamma)
    d = as_fraction(delta)
    t = as_fraction(theta)
    # sign tuples ordered (Da, Db, D1, D2)
    table: dict[tuple[int, int, int, int], Fraction] = {
        (+1, +1, +1, +1): a,
        (+1, +1, +1, -1): t + (d - g + b - a) / 2,
        (+1, +1, -1, +1): -_HALF - t,
        (+1, +1, -1, -1): _HALF + (-d + g - b - a) / 2,
        (+1, -1, +1, +1): (-d - g + b - a) / 2,
        (+1, -1, +1, -1): _HALF - t + (-d + g - b + a) / 2,
        (+1, -1, -1, +1): t,
        (+1, -1, -1, -1): d,
        (-1, +1, +1, +1): (d - g - b - a) / 2,
        (-1, +1, +1, -1): _HALF - t + (-d + g - b + a) / 2,
        (-1, +1, -1, +1): t,
        (-1, +1, -1, -1): b,
        (-1, -1, +1, +1): g,
        (-1, -1, +1, -1): t + (d - g + b - a) / 2,
        (-1, -1, -1, +1): _HALF - t,
        (-1, -1, -1, -1): -_HALF + (-d - g - b + a) / 2,
    }
    return SignedMeasure(mz_space(), _dense(MZ_VARIABLES, table))


def mz_family_member(alpha: object) -> SignedMeasure:
    """Member of the minimum-norm family, parameterized by alpha in [0, 1/2].

    These are exactly the general solutions at beta = delta = theta = 0 and
    gamma = -alpha; every member has L1 norm 3, the minimum for the system.
    """
    a = as_fraction(alpha)
    if not 0 <= a <= _HALF:
        raise AlphaOutOfRange(f"alpha must lie in [0, 1/2], got {a}")
    return mz_general_member(a, 0, -a, 0, 0)


def _pair_distribution(e: Fraction) -> tuple[Fraction, ...]:
    # unbiased singles; only the product expectation is prescribed
    agree = (1 + e) / 4
    differ = (1 - e) / 4
    return (agree, differ, differ, agree)


def _checked_correlation(value: object, label: str) -> Fraction:
    e = as_fraction(value)
    if abs(e) > 1:
        raise CorrelationOutOfRange(f"{label} must lie in [-1, 1], got {e}")
    return e


def bell_box(
    e_ab: object, e_ab2: object, e_a2b: object, e_a2b2: object
) -> ContextFamily:
    """Four pair contexts over (A, A2, B, B2) with unbiased singles."""
    values = [
        _checked_correlation(e_ab, "e_ab"),
        _checked_correlation(e_ab2, "e_ab2"),
        _checked_correlation(e_a2b, "e_a2b"),
        _checked_correlation(e_a2b2, "e_a2b2"),
    ]
    pairs = (("A", "B"), ("A", "B2"), ("A2", "B"), ("A2", "B2"))
    contexts = tuple(
        Context(pair, _pair_distribution(e)) for pair, e in zip(pairs, values)
    )
    return ContextFamily(BELL_VARIABLES, contexts)


def tsirelson_box() -> ContextFamily:
    """Bell box at a rational stand-in for the quantum maximum.

    408/577 approximates sqrt(2)/2 to better than 1e-5, putting the box
    just inside the quantum boundary while keeping every mass rational.
    """
    e = Fraction(408, 577)
    return bell_box(e, e, e, -e)


def leggett_garg_chain(
    e_xy: object, e_yz: object, e_xz: object
) -> ContextFamily:
    """Three pair contexts over (X, Y, Z) with unbiased singles."""
    values = [
        _checked_correlation(e_xy, "e_xy"),
        _checked_correlation(e_yz, "e_yz"),
        _checked_correlation(e_xz, "e_xz"),
    ]
    pairs = (("X", "Y"), ("Y", "Z"), ("X", "Z"))
    contexts = tuple(
        Context(pair, _pair_distribution(e)) for pair, e in zip(pairs, values)
    )
    return ContextFamily(CHAIN_VARIABLES, contexts)


@dataclass(frozen=True)
class WaveConfig:
    """Geometry of the classical wave run.

    amplitude is the source amplitude A (exact rational, positive);
    phi1 and phi2 are the propagation phases of the two legs shared by
    both arms (radians); detuning is the extra phase added to arm b.
    Only phi1 + phi2 enters the intensities; the fields are kept separate
    because the two legs are physically distinct.
    """

    amplitude: Fraction
    phi1: float
    phi2: float
    detuning: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "amplitude", as_fraction(self.amplitude))
        if self.amplitude <= 0:
            raise ValueOutOfBounds(
                f"amplitude must be positive, got {self.amplitude}"
            )
        for label, angle in (
            ("phi1", self.phi1),
            ("phi2", self.phi2),
            ("detuning", self.detuning),
        ):
            if not math.isfinite(float(angle)):
                raise ValueOutOfBounds(f"{label} must be finite")


class WaveDetection(NamedTuple):
    i_d1: float
    i_d2: float
    p_d1: float
    p_d2: float


def wave_detection(cfg: WaveConfig) -> WaveDetection:
    """Time-averaged output intensities of the two-arm interferometer.

    Each beamsplitter transmits with amplitude 1/sqrt(2) and reflects
    with amplitude i/sqrt(2) (a 90 degree phase jump); each mirror
    reflects with amplitude i.  Arm a is transmitted at the first
    splitter, arm b reflected; both cross one mirror and pick up the
    common propagation phase phi1 + phi2, and arm b additionally picks up
    the detuning.  The time-averaged intensity of Re[z e^(i w t)] is
    |z|^2 / 2.  This is the one floating-point surface of the package;
    results carry relative error well below 1e-12.
    """
    amp = float(cfg.amplitude)
    transmit = 1 / math.sqrt(2)
    reflect = 1j / math.sqrt(2)
    mirror = 1j
    common = cmath.exp(1j * (cfg.phi1 + cfg.phi2))
    detune = cmath.exp(1j * cfg.detuning)
    arm_a = transmit * mirror * common
    arm_b = reflect * mirror * common * detune
    z_d1 = amp * (arm_a * reflect + arm_b * transmit)
    z_d2 = amp * (arm_a * transmit + arm_b * reflect)
    i_d1 = abs(z_d1) ** 2 / 2
    i_d2 = abs(z_d2) ** 2 / 2
    total = i_d1 + i_d2
    if total == 0:
        raise DegenerateGeometry("both output intensities vanished")
    return WaveDetection(i_d1, i_d2, i_d1 / total, i_d2 / total)


def nearest_rational(value: float, max_denominator: int = 10**6) -> Fraction:
    """Closest fraction with bounded denominator, for rationalizing
    wave-model outputs before they enter a constraint system."""
    return Fraction(value).limit_denominator(max_denominator)


@dataclass(frozen=True)
class ScenarioBundle:
    """A named, ready-to-analyze scenario.

    kind is "contexts" when payload is a ContextFamily and "constraints"
    when payload is a ConstraintSystem.
    """

    kind: str
    payload: ContextFamily | ConstraintSystem
    label: str

    def __post_init__(self) -> None:
        expected = {
            "contexts": ContextFamily,
            "constraints": ConstraintSystem,
        }
        if self.kind not in expected:
            raise ValueError(f"unknown bundle kind {self.kind!r}")
        if not isinstance(self.payload, expected[self.kind]):
            raise ValueError(
                f"bundle kind {self.kind!r} does not match payload "
                f"{type(self.payload).__name__}"
            )
