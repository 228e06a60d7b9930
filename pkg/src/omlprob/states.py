"""States, conditional states and the independence relation on an OML.

All probabilities are exact ``Fraction`` values; independence and the mixing
law C3 are equality statements, so nothing here tolerates floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .errors import (
    AlphaNotConcentrated,
    C1Violation,
    C2Violation,
    C3Violation,
    ConditionOutsideCS,
    NotAdditive,
    NotNormalized,
    NotOrthogonalFamily,
    PreconditionFCA,
    WeightsNotNormalized,
    ZeroMassCondition,
)
from .lattice import OrthomodularLattice

ONE = Fraction(1)
ZERO = Fraction(0)


@dataclass(frozen=True)
class State:
    """A normalized, orthogonally additive [0,1]-valued map on the lattice."""

    lattice: OrthomodularLattice
    values: tuple[Fraction, ...]

    def __call__(self, a: int) -> Fraction:
        return self.values[a]


def validate_state(L: OrthomodularLattice, values) -> State:
    """Check normalization and additivity exhaustively, returning a State.

    ``values`` may be a sequence indexed by element id or a mapping from id.
    """
    if isinstance(values, Mapping):
        vals = tuple(Fraction(values[a]) for a in L.elements)
    else:
        vals = tuple(Fraction(v) for v in values)
    if len(vals) != len(L):
        raise NotNormalized("state table is not total")
    for a in L.elements:
        if not (ZERO <= vals[a] <= ONE):
            raise NotNormalized(f"m({L.label(a)}) = {vals[a]} outside [0,1]", witness=(L.label(a),))
    if vals[L.zero] != 0:
        raise NotNormalized(f"m(0) = {vals[L.zero]} ≠ 0", witness=(L.label(L.zero),))
    if vals[L.one] != 1:
        raise NotNormalized(f"m(1) = {vals[L.one]} ≠ 1", witness=(L.label(L.one),))
    for a in L.elements:
        for b in L.elements:
            if a < b and L.is_orthogonal(a, b):
                if vals[L.join(a, b)] != vals[a] + vals[b]:
                    raise NotAdditive(
                        f"m({L.label(a)} ∨ {L.label(b)}) ≠ "
                        f"m({L.label(a)}) + m({L.label(b)})",
                        witness=(L.label(a), L.label(b)),
                    )
    return State(L, vals)


def orthogonal_families(L: OrthomodularLattice, members: frozenset[int]):
    """All subsets of members of size ≥ 2 that are mutually orthogonal and
    whose join lies in members (the families quantified over by C3)."""
    elems = sorted(members)
    for size in range(2, len(elems) + 1):
        for fam in combinations(elems, size):
            if all(L.is_orthogonal(a, b) for a, b in combinations(fam, 2)):
                if L.join_all(fam) in members:
                    yield fam


@dataclass(frozen=True)
class ConditionalState:
    """A two-place map f(b, a): probability of b given condition a.

    The condition ranges over a conditional system; each section f(., a) is a
    state, f(a, a) = 1, and conditioning mixes over orthogonal partitions of
    a condition (C3).
    """

    lattice: OrthomodularLattice
    conditions: frozenset[int]
    table: Mapping[tuple[int, int], Fraction]

    def __call__(self, b: int, a: int) -> Fraction:
        if a not in self.conditions:
            raise ConditionOutsideCS(
                f"{self.lattice.label(a)} is not a condition",
                witness=(self.lattice.label(a),),
            )
        return self.table[(b, a)]

    def state_given(self, a: int) -> State:
        return State(self.lattice, tuple(self(b, a) for b in self.lattice.elements))


def validate_conditional_state(
    L: OrthomodularLattice, cs: frozenset[int], table: Mapping[tuple[int, int], Fraction]
) -> ConditionalState:
    """Verify C1–C3 exhaustively over the finite lattice and return the state."""
    L.check_conditional_system(cs)
    tab = {}
    for a in cs:
        for b in L.elements:
            if (b, a) not in table:
                raise C1Violation(
                    f"table missing f({L.label(b)}, {L.label(a)})",
                    witness=(L.label(b), L.label(a)),
                )
            tab[(b, a)] = Fraction(table[(b, a)])
    for a in cs:
        try:
            validate_state(L, [tab[(b, a)] for b in L.elements])
        except (NotNormalized, NotAdditive) as exc:
            raise C1Violation(
                f"f(., {L.label(a)}) is not a state: {exc}",
                witness=(L.label(a), exc.witness),
            ) from exc
        if tab[(a, a)] != 1:
            raise C2Violation(
                f"f({L.label(a)}, {L.label(a)}) = {tab[(a, a)]} ≠ 1",
                witness=(L.label(a),),
            )
    for fam in orthogonal_families(L, cs):
        top = L.join_all(fam)
        for b in L.elements:
            mix = sum(tab[(a, top)] * tab[(b, a)] for a in fam)
            if tab[(b, top)] != mix:
                raise C3Violation(
                    f"f({L.label(b)}, {L.label(top)}) = {tab[(b, top)]} but the "
                    f"mixture over {tuple(L.label(a) for a in fam)} gives {mix}",
                    witness=(L.label(b), tuple(L.label(a) for a in fam)),
                )
    return ConditionalState(L, cs, tab)


def build_conditional_state(
    L: OrthomodularLattice,
    atoms: Sequence[int],
    alphas: Sequence[State],
    k: Sequence[Fraction],
) -> ConditionalState:
    """Construct the conditional state of the existence proposition.

    Given mutually orthogonal atoms a_i, states alpha_i concentrated on them
    and convex weights k_i, the conditions are all joins of atom subsets and

        f(d, ⋁_{i∈S} a_i) = Σ_{i∈S} (k_i / Σ_{j∈S} k_j) · alpha_i(d).

    Multi-atom subfamilies of total weight zero are rejected (they would
    leave the condition's section undetermined).
    """
    if len(atoms) != len(alphas) or len(atoms) != len(k):
        raise WeightsNotNormalized("atoms, alphas and weights must align")
    for a, b in combinations(atoms, 2):
        if not L.is_orthogonal(a, b):
            raise NotOrthogonalFamily(
                f"{L.label(a)} ⊥̸ {L.label(b)}", witness=(L.label(a), L.label(b))
            )
    for a, alpha in zip(atoms, alphas):
        if alpha(a) != 1:
            raise AlphaNotConcentrated(
                f"alpha({L.label(a)}) = {alpha(a)} ≠ 1", witness=(L.label(a),)
            )
    weights = [Fraction(w) for w in k]
    if any(not (ZERO <= w <= ONE) for w in weights) or sum(weights) != 1:
        raise WeightsNotNormalized(f"weights {weights} are not a convex combination")

    idx = range(len(atoms))
    tab: dict[tuple[int, int], Fraction] = {}
    conditions: set[int] = set()
    for size in range(1, len(atoms) + 1):
        for S in combinations(idx, size):
            top = L.join_all(atoms[i] for i in S)
            mass = sum(weights[i] for i in S)
            if size == 1:
                section = alphas[S[0]].values
            elif mass == 0:
                raise ZeroMassCondition(
                    f"subfamily {tuple(L.label(atoms[i]) for i in S)} has weight 0",
                    witness=tuple(L.label(atoms[i]) for i in S),
                )
            else:
                section = tuple(
                    sum((weights[i] / mass) * alphas[i](d) for i in S)
                    for d in L.elements
                )
            if top in conditions:
                raise NotOrthogonalFamily(
                    f"atom subsets share the join {L.label(top)}",
                    witness=(L.label(top),),
                )
            conditions.add(top)
            for d in L.elements:
                tab[(d, top)] = section[d]
    return ConditionalState(L, frozenset(conditions), tab)


def is_independent(f: ConditionalState, b: int, a: int, c: int) -> bool:
    """b ≍ a with respect to f(., c): conditioning on a leaves b unchanged.

    Requires a, c in the conditional system and f(c, a) = 1; the relation is
    asymmetric in general.
    """
    L = f.lattice
    for x in (a, c):
        if x not in f.conditions:
            raise ConditionOutsideCS(
                f"{L.label(x)} is not a condition", witness=(L.label(x),)
            )
    if f(c, a) != 1:
        raise PreconditionFCA(
            f"f({L.label(c)}, {L.label(a)}) = {f(c, a)} ≠ 1",
            witness=(L.label(c), L.label(a)),
        )
    return f(b, c) == f(b, a)
