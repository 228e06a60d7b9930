"""Finite-valued observables, joint distributions and conditional expectation.

An observable assigns lattice events to finitely many rational values whose
events partition 1; value sets map to joins, so the range is a Boolean
subalgebra.  Joint distributions pull an s-map back through two observables
and exist even when the observables are not compatible — in which case the
two orders p_{x,y} and p_{y,x} may genuinely differ.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, chain
from typing import Iterable, Mapping, Sequence

from .errors import (
    AtomOutsideCS,
    ConditionOutsideCS,
    DuplicateValue,
    NoSolution,
    NotAPartition,
)
from .lattice import BooleanSubalgebra, OrthomodularLattice
from .smap import SMap
from .states import ConditionalState


@dataclass(frozen=True)
class Observable:
    """A finite-valued observable: sorted spectrum plus value -> event map."""

    lattice: OrthomodularLattice
    spectrum: tuple[Fraction, ...]
    assignment: Mapping[Fraction, int]

    def event(self, values: Iterable[Fraction]) -> int:
        """The event that the outcome lies in the given value set."""
        return self.lattice.join_all(self.assignment[v] for v in values)

    def event_below(self, r: Fraction) -> int:
        """The event of an outcome strictly less than r (half line (-∞, r))."""
        return self.event(v for v in self.spectrum if v < r)

    def range_subalgebra(self) -> BooleanSubalgebra:
        members = {self.event(S) for S in _subsets(self.spectrum)}
        return self.lattice.boolean_subalgebra_from_members(members)


def _subsets(items: Sequence):
    return chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))


def make_observable(
    L: OrthomodularLattice, pairs: Iterable[tuple[Fraction, int]]
) -> Observable:
    """Validate a (value, event) assignment: distinct values, events mutually
    orthogonal and joining to 1."""
    pairs = [(Fraction(v), e) for v, e in pairs]
    values = [v for v, _ in pairs]
    if len(set(values)) != len(values):
        dup = next(v for v in values if values.count(v) > 1)
        raise DuplicateValue(f"value {dup} assigned twice", witness=(str(dup),))
    elems = [e for _, e in pairs]
    for (v1, e1), (v2, e2) in combinations(pairs, 2):
        if not L.is_orthogonal(e1, e2):
            raise NotAPartition(
                f"events for values {v1} and {v2} are not orthogonal",
                witness=(L.label(e1), L.label(e2)),
            )
    if L.join_all(elems) != L.one:
        raise NotAPartition(
            "events do not join to 1", witness=tuple(L.label(e) for e in elems)
        )
    assignment = {v: e for v, e in pairs}
    return Observable(L, tuple(sorted(values)), assignment)


@dataclass(frozen=True)
class JointDistribution:
    """p_{x,y}(E, F) = p(x(E), y(F)) over all subsets of both spectra."""

    x: Observable
    y: Observable
    table: Mapping[tuple[frozenset, frozenset], Fraction]

    def __call__(self, E: Iterable[Fraction], F: Iterable[Fraction]) -> Fraction:
        return self.table[(frozenset(E), frozenset(F))]


def joint_distribution(p: SMap, x: Observable, y: Observable) -> JointDistribution:
    table = {}
    for E in _subsets(x.spectrum):
        for F in _subsets(y.spectrum):
            table[(frozenset(E), frozenset(F))] = p(x.event(E), y.event(F))
    return JointDistribution(x, y, table)


def distribution_function(
    p: SMap, x: Observable, y: Observable, r: Fraction, s: Fraction
) -> Fraction:
    """F_{x,y}(r, s) = p(x(-∞, r), y(-∞, s)) with strict half-open cutoffs."""
    return p(x.event_below(Fraction(r)), y.event_below(Fraction(s)))


def expectation(f: ConditionalState, x: Observable, b: int) -> Fraction:
    """Σ_i r_i · f(x(r_i), b): expectation of x under the section f(., b)."""
    if b not in f.conditions:
        raise ConditionOutsideCS(
            f"{f.lattice.label(b)} is not a condition",
            witness=(f.lattice.label(b),),
        )
    return sum((r * f(x.assignment[r], b) for r in x.spectrum), Fraction(0))


def conditional_expectation(
    f: ConditionalState, x: Observable, B: BooleanSubalgebra
) -> Observable:
    """Solve for the B-valued observable z with f(x, b) = f(z, b) on B − {0}.

    z assigns to each atom of B the conditional expectation of x given that
    atom; atoms sharing a value are merged into one spectrum point at their
    join.  The defining equations are then re-verified on every nonzero
    member of B that is a condition of f, and a failure is reported with its
    witness rather than returned silently.
    """
    L = f.lattice
    if L.one not in f.conditions:
        raise AtomOutsideCS("1 is not a condition", witness=(L.label(L.one),))
    for atom in B.atoms:
        if atom not in f.conditions:
            raise AtomOutsideCS(
                f"atom {L.label(atom)} is not a condition", witness=(L.label(atom),)
            )
    by_value: dict[Fraction, list[int]] = {}
    for atom in B.atoms:
        s = expectation(f, x, atom)
        by_value.setdefault(s, []).append(atom)
    z = make_observable(
        L, [(value, L.join_all(atoms)) for value, atoms in by_value.items()]
    )
    for b in sorted(B.members):
        if b == L.zero or b not in f.conditions:
            continue
        if expectation(f, x, b) != expectation(f, z, b):
            raise NoSolution(
                f"f(x, {L.label(b)}) = {expectation(f, x, b)} but the candidate "
                f"gives {expectation(f, z, b)}",
                witness=(L.label(b),),
            )
    return z
