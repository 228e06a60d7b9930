"""Finite orthomodular lattices and their derived relations.

An element is just an integer id into the lattice's label table.  The order
is kept as per-element bitmasks (``up[i]`` holds the ids above i), which makes
meets, joins and the exhaustive axiom checks cheap for the desk-scale
lattices this package handles.

A lattice is validated completely at construction time: bounded poset,
existence and uniqueness of all meets/joins, the ortholattice axioms and the
orthomodular law.  After that every query is total and pure, and the object
is immutable, so concurrent reads are safe.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    LatticeInputError,
    NotALattice,
    NotAnOrtholattice,
    NotAPoset,
    NotAConditionalSystem,
    NotOrthomodular,
    ZeroGenerated,
)


def _bits(mask: int):
    """Iterate the set bit positions of mask."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


@dataclass(frozen=True)
class BooleanSubalgebra:
    """A Boolean subalgebra of an OML, given by its members and atoms."""

    lattice: "OrthomodularLattice"
    members: frozenset[int]
    atoms: tuple[int, ...]

    def __contains__(self, a: int) -> bool:
        return a in self.members


class OrthomodularLattice:
    """A finite bounded lattice with a validated orthocomplementation."""

    def __init__(self, labels, up, down, ortho, zero, one, meet_table, join_table):
        self.labels: tuple[str, ...] = labels
        self._up = up
        self._down = down
        self._ortho = ortho
        self.zero: int = zero
        self.one: int = one
        self._meet = meet_table
        self._join = join_table
        self._index = {lab: i for i, lab in enumerate(labels)}

    # -- basic queries ------------------------------------------------------

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def elements(self) -> range:
        return range(len(self.labels))

    def label(self, a: int) -> str:
        return self.labels[a]

    def id_of(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise LatticeInputError(f"unknown element label {label!r}") from None

    def leq(self, a: int, b: int) -> bool:
        return bool(self._up[a] >> b & 1)

    def meet(self, a: int, b: int) -> int:
        return self._meet[a][b]

    def join(self, a: int, b: int) -> int:
        return self._join[a][b]

    def ortho(self, a: int) -> int:
        return self._ortho[a]

    def meet_all(self, elems: Iterable[int]) -> int:
        out = self.one
        for a in elems:
            out = self._meet[out][a]
        return out

    def join_all(self, elems: Iterable[int]) -> int:
        out = self.zero
        for a in elems:
            out = self._join[out][a]
        return out

    # -- derived relations --------------------------------------------------

    def is_orthogonal(self, a: int, b: int) -> bool:
        """a ⊥ b iff a ≤ b⊥."""
        return self.leq(a, self._ortho[b])

    def is_compatible(self, a: int, b: int) -> bool:
        """a ↔ b iff a = (a∧b) ∨ (a∧b⊥), with the witness triple re-checked.

        When the test holds, (a∧b⊥, b∧a⊥, a∧b) is the mutually orthogonal
        decomposition a = a₁∨c, b = b₁∨c; this is asserted as a guard on
        the equivalence used.
        """
        c = self.meet(a, b)
        a1 = self.meet(a, self._ortho[b])
        if self.join(c, a1) != a:
            return False
        b1 = self.meet(b, self._ortho[a])
        assert self.is_orthogonal(a1, b1)
        assert self.is_orthogonal(a1, c) and self.is_orthogonal(b1, c)
        assert self.join(b1, c) == b
        return True

    def boolean_subalgebra(self, d: int) -> BooleanSubalgebra:
        """The Boolean subalgebra {0, d, d⊥, 1} generated by a single element."""
        if d in (self.zero, self.one):
            return BooleanSubalgebra(self, frozenset((self.zero, self.one)), (self.one,))
        dp = self._ortho[d]
        return BooleanSubalgebra(
            self, frozenset((self.zero, d, dp, self.one)), tuple(sorted((d, dp)))
        )

    def check_conditional_system(self, members: frozenset[int]) -> None:
        """Raise NotAConditionalSystem unless members satisfies the CS axioms."""
        if self.zero in members:
            raise NotAConditionalSystem("conditional system contains 0", witness=(self.label(self.zero),))
        for a in members:
            for b in members:
                j = self.join(a, b)
                if j not in members:
                    raise NotAConditionalSystem(
                        f"not join-closed: {self.label(a)} ∨ {self.label(b)} missing",
                        witness=(self.label(a), self.label(b)),
                    )
                if a != b and self.leq(a, b):
                    r = self.meet(self._ortho[a], b)
                    if r not in members:
                        raise NotAConditionalSystem(
                            f"not closed under relative complement of "
                            f"{self.label(a)} in {self.label(b)}",
                            witness=(self.label(a), self.label(b)),
                        )

    def generate_cs(self, seed: Iterable[int]) -> frozenset[int]:
        """Smallest conditional system containing the seed set."""
        members = set(seed)
        if not members:
            raise ZeroGenerated("empty generating set")
        if self.zero in members:
            raise ZeroGenerated("generating set contains 0", witness=(self.label(self.zero),))
        changed = True
        while changed:
            changed = False
            for a, b in list(combinations(sorted(members), 2)):
                for x in (self.join(a, b),):
                    if x not in members:
                        members.add(x)
                        changed = True
                for lo, hi in ((a, b), (b, a)):
                    if self.leq(lo, hi) and lo != hi:
                        r = self.meet(self._ortho[lo], hi)
                        if r not in members:
                            if r == self.zero:
                                raise ZeroGenerated(
                                    "closure produced 0",
                                    witness=(self.label(lo), self.label(hi)),
                                )
                            members.add(r)
                            changed = True
        return frozenset(members)

    # -- subalgebra helper --------------------------------------------------

    def boolean_subalgebra_from_members(self, members: Iterable[int]) -> BooleanSubalgebra:
        """Wrap a member set as a BooleanSubalgebra, validating closure,
        distributivity and atomicity."""
        mem = frozenset(members)
        for need in (self.zero, self.one):
            if need not in mem:
                raise LatticeInputError("Boolean subalgebra must contain 0 and 1")
        for a in mem:
            if self._ortho[a] not in mem:
                raise LatticeInputError(f"not ⊥-closed at {self.label(a)}")
            for b in mem:
                if self.meet(a, b) not in mem or self.join(a, b) not in mem:
                    raise LatticeInputError(
                        f"not lattice-closed at ({self.label(a)}, {self.label(b)})"
                    )
        for a in mem:
            for b in mem:
                for c in mem:
                    lhs = self.meet(a, self.join(b, c))
                    rhs = self.join(self.meet(a, b), self.meet(a, c))
                    if lhs != rhs:
                        raise LatticeInputError(
                            "not distributive at "
                            f"({self.label(a)}, {self.label(b)}, {self.label(c)})"
                        )
        nonzero = [a for a in mem if a != self.zero]
        atoms = tuple(
            sorted(
                a
                for a in nonzero
                if not any(b != a and self.leq(b, a) for b in nonzero)
            )
        )
        for a in mem:
            if self.join_all(x for x in atoms if self.leq(x, a)) != a:
                raise LatticeInputError(f"{self.label(a)} is not a join of atoms")
        return BooleanSubalgebra(self, mem, atoms)


def build_lattice(
    labels: Sequence[str],
    leq_pairs: Iterable[tuple[str, str]],
    ortho_pairs: Iterable[tuple[str, str]],
) -> OrthomodularLattice:
    """Build and fully validate an orthomodular lattice.

    ``leq_pairs`` is a generating relation (its reflexive-transitive closure
    is taken); ``ortho_pairs`` must describe a total involutive map.
    Raises NotAPoset / NotALattice / NotAnOrtholattice / NotOrthomodular with
    a witness when the corresponding axiom group fails.
    """
    labels = tuple(labels)
    n = len(labels)
    if len(set(labels)) != n:
        raise LatticeInputError("duplicate labels")
    if n == 0:
        raise LatticeInputError("empty lattice")
    index = {lab: i for i, lab in enumerate(labels)}

    def _id(lab):
        if lab not in index:
            raise LatticeInputError(f"unknown element label {lab!r}")
        return index[lab]

    up = [1 << i for i in range(n)]
    for x, y in leq_pairs:
        up[_id(x)] |= 1 << _id(y)
    # Warshall closure over bitmask rows.
    for k in range(n):
        bit = 1 << k
        row = up[k]
        for i in range(n):
            if up[i] & bit:
                up[i] |= row
    for i in range(n):
        for j in _bits(up[i]):
            if i != j and up[j] >> i & 1:
                raise NotAPoset(
                    f"antisymmetry fails: {labels[i]} ≤ {labels[j]} ≤ {labels[i]}",
                    witness=(labels[i], labels[j]),
                )

    down = [0] * n
    for i in range(n):
        for j in _bits(up[i]):
            down[j] |= 1 << i

    full = (1 << n) - 1
    bottoms = [i for i in range(n) if up[i] == full]
    tops = [i for i in range(n) if down[i] == full]
    if len(bottoms) != 1 or len(tops) != 1:
        raise NotALattice("no unique smallest/greatest element")
    zero, one = bottoms[0], tops[0]

    meet_table = [[0] * n for _ in range(n)]
    join_table = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            lower = down[a] & down[b]
            m = next((x for x in _bits(lower) if down[x] == lower), None)
            if m is None:
                raise NotALattice(
                    f"no meet for ({labels[a]}, {labels[b]})", witness=(labels[a], labels[b])
                )
            upper = up[a] & up[b]
            j = next((x for x in _bits(upper) if up[x] == upper), None)
            if j is None:
                raise NotALattice(
                    f"no join for ({labels[a]}, {labels[b]})", witness=(labels[a], labels[b])
                )
            meet_table[a][b] = meet_table[b][a] = m
            join_table[a][b] = join_table[b][a] = j

    ortho = [-1] * n
    for x, y in ortho_pairs:
        i, j = _id(x), _id(y)
        for a, b in ((i, j), (j, i)):
            if ortho[a] not in (-1, b):
                raise LatticeInputError(f"conflicting orthocomplement for {labels[a]}")
            ortho[a] = b
    if any(o < 0 for o in ortho):
        missing = labels[ortho.index(-1)]
        raise LatticeInputError(f"orthocomplement undefined for {missing}")
    for a in range(n):
        if ortho[ortho[a]] != a:
            raise NotAnOrtholattice(
                f"involution fails at {labels[a]}", witness=(labels[a],)
            )
        if join_table[a][ortho[a]] != one:
            raise NotAnOrtholattice(
                f"{labels[a]} ∨ {labels[ortho[a]]} ≠ 1", witness=(labels[a],)
            )
    for a in range(n):
        for b in _bits(up[a]):  # a ≤ b
            if not (up[ortho[b]] >> ortho[a] & 1):
                raise NotAnOrtholattice(
                    f"⊥ not order-reversing on {labels[a]} ≤ {labels[b]}",
                    witness=(labels[a], labels[b]),
                )

    for a in range(n):
        for b in _bits(up[a]):  # a ≤ b
            if join_table[a][meet_table[ortho[a]][b]] != b:
                raise NotOrthomodular(
                    f"orthomodular law fails on {labels[a]} ≤ {labels[b]}",
                    witness=(labels[a], labels[b]),
                )

    return OrthomodularLattice(
        labels,
        tuple(up),
        tuple(down),
        tuple(ortho),
        zero,
        one,
        tuple(tuple(row) for row in meet_table),
        tuple(tuple(row) for row in join_table),
    )
