"""Finite sample spaces of named ±1 variables, events, and signed measures.

Conventions
-----------
* A space over variables ``(v_0, ..., v_{n-1})`` has ``2**n`` atoms, one per
  full assignment of +1/-1 to the variables.
* Atom index encoding: bit ``i`` of the index is set exactly when variable
  ``i`` takes the value +1.  The first variable is the least significant bit.
* A *partial assignment* is a mapping ``{variable name: +1 or -1}``.  Its
  *cylinder* is the event of all atoms agreeing with it on every listed
  variable; the empty assignment yields the full space.
* All masses are exact ``fractions.Fraction`` values.  Floats are rejected
  at the boundary rather than silently converted, because every downstream
  result (feasibility verdicts, minimum norms, conditionals) is meant to be
  exact.  Masses may be negative; a signed measure is additive by
  construction since the mass of an event is defined as the sum of its atom
  masses.

All types are immutable after construction and all operations are pure
functions, so concurrent use on shared inputs is safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    DuplicateName,
    ImproperDistribution,
    InvalidAssignment,
    InvalidName,
    SpaceMismatch,
    TooManyVariables,
    UndefinedConditional,
    UnknownVariable,
)

MAX_VARIABLES = 24


def as_fraction(value: object) -> Fraction:
    """Coerce an int, Fraction, or rational string to Fraction.

    Floats are refused: silently rationalizing them would smuggle rounding
    error into computations that are meant to be exact.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"exact rational required, got {value!r}")
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"exact rational required, got {value!r}")


@dataclass(frozen=True)
class SampleSpace:
    """Ordered collection of named ±1 variables with canonical atom order."""

    variables: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.variables:
            raise InvalidName("a sample space needs at least one variable")
        for name in self.variables:
            if not isinstance(name, str) or not name:
                raise InvalidName(f"bad variable name {name!r}")
        if len(set(self.variables)) != len(self.variables):
            seen: set[str] = set()
            for name in self.variables:
                if name in seen:
                    raise DuplicateName(f"variable {name!r} listed twice")
                seen.add(name)
        if len(self.variables) > MAX_VARIABLES:
            raise TooManyVariables(
                f"{len(self.variables)} variables exceed the "
                f"{MAX_VARIABLES}-variable enumeration limit"
            )

    @property
    def atom_count(self) -> int:
        return 1 << len(self.variables)

    def position(self, name: str) -> int:
        """Bit position of a variable, raising UnknownVariable if absent."""
        try:
            return self.variables.index(name)
        except ValueError:
            raise UnknownVariable(
                f"variable {name!r} not in space over {self.variables}"
            ) from None

    def atom_sign(self, atom: int, name: str) -> int:
        """Value (+1 or -1) the given atom assigns to the variable."""
        return +1 if atom >> self.position(name) & 1 else -1

    def atom_label(self, atom: int) -> str:
        """Atom as a +/- string, character i giving variable i's sign."""
        return "".join(
            "+" if atom >> i & 1 else "-" for i in range(len(self.variables))
        )

    def atoms(self) -> range:
        return range(self.atom_count)


def build_space(names: Sequence[str]) -> SampleSpace:
    """Create a sample space with the canonical bit-encoded atom order."""
    return SampleSpace(tuple(names))


@dataclass(frozen=True)
class Event:
    """A set of atoms of one sample space."""

    space: SampleSpace
    atoms: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "atoms", frozenset(self.atoms))
        for atom in self.atoms:
            if not 0 <= atom < self.space.atom_count:
                raise ValueError(
                    f"atom index {atom} outside space of "
                    f"{self.space.atom_count} atoms"
                )

    @classmethod
    def of(cls, space: SampleSpace, atoms: Iterable[int]) -> "Event":
        return cls(space, frozenset(atoms))

    @classmethod
    def full(cls, space: SampleSpace) -> "Event":
        return cls(space, frozenset(space.atoms()))

    @classmethod
    def empty(cls, space: SampleSpace) -> "Event":
        return cls(space, frozenset())

    def _check_same_space(self, other: "Event") -> None:
        if self.space != other.space:
            raise SpaceMismatch("events live in different sample spaces")

    def __and__(self, other: "Event") -> "Event":
        self._check_same_space(other)
        return Event(self.space, self.atoms & other.atoms)

    def __or__(self, other: "Event") -> "Event":
        self._check_same_space(other)
        return Event(self.space, self.atoms | other.atoms)

    def __invert__(self) -> "Event":
        return Event(
            self.space, frozenset(self.space.atoms()) - self.atoms
        )

    def __contains__(self, atom: int) -> bool:
        return atom in self.atoms

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.atoms))

    def __repr__(self) -> str:
        labels = [self.space.atom_label(a) for a in sorted(self.atoms)]
        if len(labels) > 6:
            labels = labels[:6] + ["..."]
        return f"Event({{{', '.join(labels)}}})"


def cylinder(space: SampleSpace, partial: Mapping[str, int]) -> Event:
    """Event of all atoms agreeing with a partial assignment.

    The empty assignment gives the full space; a full assignment gives a
    singleton.
    """
    mask = 0
    want = 0
    for name, sign in partial.items():
        pos = space.position(name)
        if sign not in (+1, -1):
            raise InvalidAssignment(
                f"assignment for {name!r} must be +1 or -1, got {sign!r}"
            )
        mask |= 1 << pos
        if sign == +1:
            want |= 1 << pos
    free = [i for i in range(len(space.variables)) if not mask >> i & 1]
    atoms = set()
    for combo in range(1 << len(free)):
        atom = want
        for k, pos in enumerate(free):
            if combo >> k & 1:
                atom |= 1 << pos
        atoms.add(atom)
    return Event(space, frozenset(atoms))


@dataclass(frozen=True)
class SignedMeasure:
    """Exact rational mass per atom; masses may be negative.

    Additivity over disjoint events holds by construction because
    :func:`event_mass` sums atom masses.
    """

    space: SampleSpace
    mass: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "mass", tuple(as_fraction(m) for m in self.mass)
        )
        if len(self.mass) != self.space.atom_count:
            raise ValueError(
                f"expected {self.space.atom_count} masses, "
                f"got {len(self.mass)}"
            )

    @classmethod
    def from_sparse(
        cls, space: SampleSpace, entries: Mapping[int, object]
    ) -> "SignedMeasure":
        mass = [Fraction(0)] * space.atom_count
        for atom, value in entries.items():
            mass[atom] = as_fraction(value)
        return cls(space, tuple(mass))

    def total(self) -> Fraction:
        return sum(self.mass, Fraction(0))


@dataclass(frozen=True)
class Context:
    """A proper probability distribution over a subset of the variables.

    ``distribution`` is dense over the ``2**k`` assignments of
    ``variables``, in the same bit encoding used by :class:`SampleSpace`
    (bit i set means variable i equals +1).
    """

    variables: tuple[str, ...]
    distribution: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(
            self,
            "distribution",
            tuple(as_fraction(p) for p in self.distribution),
        )
        if not self.variables:
            raise InvalidName("a context needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise DuplicateName("context variables must be distinct")
        if len(self.distribution) != 1 << len(self.variables):
            raise ImproperDistribution(
                f"expected {1 << len(self.variables)} masses, "
                f"got {len(self.distribution)}"
            )
        for p in self.distribution:
            if p < 0:
                raise ImproperDistribution(f"negative context mass {p}")
        if sum(self.distribution) != 1:
            raise ImproperDistribution(
                f"context masses sum to {sum(self.distribution)}, not 1"
            )

    def partial_mass(self, partial: Mapping[str, int]) -> Fraction:
        """Probability the context assigns to a partial assignment."""
        positions = []
        for name, sign in partial.items():
            if name not in self.variables:
                raise UnknownVariable(
                    f"variable {name!r} not in context over {self.variables}"
                )
            if sign not in (+1, -1):
                raise InvalidAssignment(
                    f"assignment for {name!r} must be +1 or -1, got {sign!r}"
                )
            positions.append((self.variables.index(name), sign))
        total = Fraction(0)
        for atom, p in enumerate(self.distribution):
            if all((1 if atom >> pos & 1 else -1) == sign
                   for pos, sign in positions):
                total += p
        return total


@dataclass(frozen=True)
class Violation:
    """One failed axiom check, identified by axiom tag and offending atoms."""

    axiom: str
    detail: str
    atoms: tuple[int, ...] = ()


def event_mass(m: SignedMeasure, e: Event) -> Fraction:
    """Exact sum of atom masses over the event."""
    if e.space != m.space:
        raise SpaceMismatch("event and measure live in different spaces")
    return sum((m.mass[a] for a in e.atoms), Fraction(0))


def l1_norm(m: SignedMeasure) -> Fraction:
    """Sum of absolute atom masses."""
    return sum((abs(x) for x in m.mass), Fraction(0))


def jordan_decompose(m: SignedMeasure) -> tuple[SignedMeasure, SignedMeasure]:
    """Split into nonnegative parts with disjoint supports, m = pos - neg.

    The two totals add up to the L1 norm, which is minimal among all
    decompositions of m into a difference of nonnegative measures.
    """
    pos = tuple(x if x > 0 else Fraction(0) for x in m.mass)
    neg = tuple(-x if x < 0 else Fraction(0) for x in m.mass)
    return SignedMeasure(m.space, pos), SignedMeasure(m.space, neg)


def marginalize(m: SignedMeasure, variables: Iterable[str]) -> SignedMeasure:
    """Project onto a nonempty subset of the variables.

    The sub-space keeps the parent's variable order regardless of the
    order in which names are passed.  Each sub-atom's mass is the sum of
    the masses of its extensions, so the total mass is preserved.
    """
    requested = set(variables)
    for name in requested:
        m.space.position(name)  # raises UnknownVariable for strangers
    kept = tuple(v for v in m.space.variables if v in requested)
    if not kept:
        raise InvalidName("marginalize needs at least one variable")
    sub = build_space(kept)
    positions = [m.space.position(v) for v in kept]
    mass = [Fraction(0)] * sub.atom_count
    for atom, value in enumerate(m.mass):
        sub_atom = 0
        for k, pos in enumerate(positions):
            if atom >> pos & 1:
                sub_atom |= 1 << k
        mass[sub_atom] += value
    return SignedMeasure(sub, tuple(mass))


def signed_conditional(m: SignedMeasure, a: Event, b: Event) -> Fraction:
    """Ratio event_mass(a∩b) / event_mass(b) for a signed measure.

    The value may lie outside [0, 1]; callers that care should check.
    Raises UndefinedConditional when the conditioning event has mass zero,
    which genuinely happens for signed measures even on nonempty events.
    """
    if a.space != m.space or b.space != m.space:
        raise SpaceMismatch("events and measure live in different spaces")
    denominator = event_mass(m, b)
    if denominator == 0:
        raise UndefinedConditional(
            "conditioning event has mass zero; the conditional has no value"
        )
    return event_mass(m, a & b) / denominator


def validate_kolmogorov(m: SignedMeasure) -> list[Violation]:
    """Check the proper-probability axioms; empty list means all hold.

    K1: every atom mass in [0, 1].  K2: total mass 1.  Additivity holds by
    construction and is not re-checked.
    """
    violations: list[Violation] = []
    for atom, value in enumerate(m.mass):
        if not 0 <= value <= 1:
            violations.append(
                Violation(
                    "K1",
                    f"atom {m.space.atom_label(atom)} has mass {value}",
                    (atom,),
                )
            )
    total = m.total()
    if total != 1:
        violations.append(Violation("K2", f"total mass is {total}, not 1"))
    return violations


def validate_upper(
    masses: Mapping[int, object],
    pair_values: Mapping[frozenset[int] | tuple[int, ...], object],
) -> list[Violation]:
    """Check the upper-probability axioms on elementary events and pairs.

    U1: every atom value in [0, 1].
    U2: the value assigned to the full atom set equals 1.  The caller
        supplies it as the ``pair_values`` entry keyed by the set of all
        atoms; if no such entry is present, U2 is not checked.
    U3: the value of each two-atom set is at most the sum of the two atom
        values (subadditivity in place of additivity).

    Keys of other sizes are ignored: the axioms constrain nothing else.
    """
    atom_masses = {atom: as_fraction(v) for atom, v in masses.items()}
    violations: list[Violation] = []
    for atom in sorted(atom_masses):
        value = atom_masses[atom]
        if not 0 <= value <= 1:
            violations.append(
                Violation("U1", f"atom {atom} has value {value}", (atom,))
            )
    omega = frozenset(atom_masses)
    normalized: list[tuple[tuple[int, ...], Fraction]] = []
    for key, value in pair_values.items():
        atoms = frozenset(key)
        if not atoms <= omega:
            raise SpaceMismatch(
                f"event {sorted(atoms)} uses atoms outside the given space"
            )
        normalized.append((tuple(sorted(atoms)), as_fraction(value)))
    normalized.sort()
    for atoms, value in normalized:
        if frozenset(atoms) == omega and value != 1:
            violations.append(
                Violation("U2", f"full space has value {value}, not 1", atoms)
            )
        if len(atoms) == 2:
            i, j = atoms
            bound = atom_masses[i] + atom_masses[j]
            if value > bound:
                violations.append(
                    Violation(
                        "U3",
                        f"pair {{{i},{j}}} has value {value} above "
                        f"{atom_masses[i]} + {atom_masses[j]}",
                        atoms,
                    )
                )
    return violations


def nonmonotonicity_witness(
    m: SignedMeasure,
) -> tuple[Event, Event] | None:
    """Nested events s1 ⊆ s2 with mass(s1) > mass(s2), if any exist.

    Construction: take the lowest-index atom with negative mass, let s1 be
    the event of all atoms with positive mass, and let s2 add the negative
    atom to s1.  Returns None exactly when the measure is nonnegative, in
    which case it is monotone and no witness exists.
    """
    negative = [a for a, v in enumerate(m.mass) if v < 0]
    if not negative:
        return None
    omega = negative[0]
    s1_atoms = frozenset(a for a, v in enumerate(m.mass) if v > 0)
    s1 = Event(m.space, s1_atoms)
    s2 = Event(m.space, s1_atoms | {omega})
    return s1, s2
