"""s-maps (simultaneous-measurement maps) and their conditional-state links.

An s-map p(a, b) gives the probability of measuring a and b together.  On
compatible pairs it collapses to the diagonal at a∧b; on noncompatible pairs
it may be asymmetric, which is where the one-way independence witnessed by
``scan_asymmetric_pairs`` lives.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import (
    DomainTooSmall,
    S1Violation,
    S2Violation,
    S3Violation,
    SupportNotConditionalSystem,
    NotAConditionalSystem,
)
from .lattice import OrthomodularLattice
from .states import ConditionalState, State, validate_conditional_state, validate_state

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class SMap:
    """A validated two-argument measurement probability table."""

    lattice: OrthomodularLattice
    table: tuple[tuple[Fraction, ...], ...]

    def __call__(self, a: int, b: int) -> Fraction:
        return self.table[a][b]

    @property
    def support(self) -> frozenset[int]:
        """Elements with nonzero diagonal; the conditional-state domain."""
        L = self.lattice
        return frozenset(b for b in L.elements if self.table[b][b] != 0)


def validate_smap(L: OrthomodularLattice, table) -> SMap:
    """Check s1–s3 exhaustively and return an SMap.

    ``table`` is a mapping (a, b) -> Fraction or a dense nested sequence.
    """
    n = len(L)
    if isinstance(table, Mapping):
        try:
            rows = tuple(
                tuple(Fraction(table[(a, b)]) for b in L.elements) for a in L.elements
            )
        except KeyError as exc:
            raise S1Violation(f"table missing entry {exc.args[0]}") from exc
    else:
        rows = tuple(tuple(Fraction(v) for v in row) for row in table)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise S1Violation("table is not total")
    for a in L.elements:
        for b in L.elements:
            if not (ZERO <= rows[a][b] <= ONE):
                raise S1Violation(
                    f"p({L.label(a)}, {L.label(b)}) = {rows[a][b]} outside [0,1]",
                    witness=(L.label(a), L.label(b)),
                )
    if rows[L.one][L.one] != 1:
        raise S1Violation(f"p(1,1) = {rows[L.one][L.one]} ≠ 1")
    for a in L.elements:
        for b in L.elements:
            if L.is_orthogonal(a, b) and rows[a][b] != 0:
                raise S2Violation(
                    f"p({L.label(a)}, {L.label(b)}) ≠ 0 on an orthogonal pair",
                    witness=(L.label(a), L.label(b)),
                )
    for a in L.elements:
        for b in L.elements:
            if a < b and L.is_orthogonal(a, b):
                j = L.join(a, b)
                for c in L.elements:
                    if rows[j][c] != rows[a][c] + rows[b][c]:
                        raise S3Violation(
                            f"p({L.label(j)}, {L.label(c)}) ≠ "
                            f"p({L.label(a)}, {L.label(c)}) + p({L.label(b)}, {L.label(c)})",
                            witness=(L.label(c), (L.label(a), L.label(b)), "first"),
                        )
                    if rows[c][j] != rows[c][a] + rows[c][b]:
                        raise S3Violation(
                            f"p({L.label(c)}, {L.label(j)}) ≠ "
                            f"p({L.label(c)}, {L.label(a)}) + p({L.label(c)}, {L.label(b)})",
                            witness=(L.label(c), (L.label(a), L.label(b)), "second"),
                        )
    return SMap(L, rows)


def complete_smap_table(L: OrthomodularLattice, partial: Mapping[tuple[int, int], Fraction]):
    """Fill the rows/columns for 0 and 1 that s1–s3 force, where missing.

    p(x,0) = p(0,x) = 0 and p(x,1) = p(1,x) = p(x,x); everything else must be
    supplied.  Returns a full (a, b) -> Fraction mapping.
    """
    table = dict(partial)
    diag = {}
    for x in L.elements:
        if x == L.zero:
            diag[x] = ZERO
        elif x == L.one:
            diag[x] = ONE
        else:
            diag[x] = Fraction(table[(x, x)])
    for x in L.elements:
        table.setdefault((x, L.zero), ZERO)
        table.setdefault((L.zero, x), ZERO)
        table.setdefault((x, L.one), diag[x])
        table.setdefault((L.one, x), diag[x])
    return table


def nu_state(p: SMap) -> State:
    """The diagonal state ν(b) = p(b, b)."""
    return validate_state(p.lattice, [p(b, b) for b in p.lattice.elements])


def smap_to_conditional(p: SMap) -> ConditionalState:
    """Condition the s-map on its support: f_p(a, b) = p(a, b) / p(b, b)."""
    L = p.lattice
    cs = p.support
    try:
        L.check_conditional_system(cs)
    except NotAConditionalSystem as exc:
        raise SupportNotConditionalSystem(
            f"support of the s-map is not a conditional system: {exc}",
            witness=exc.witness,
        ) from exc
    tab = {(a, b): p(a, b) / p(b, b) for b in cs for a in L.elements}
    return validate_conditional_state(L, cs, tab)


def conditional_to_smap(f: ConditionalState) -> SMap:
    """Build p_f(a, b) = f(a, b)·f(b, 1) on the support, 0 elsewhere.

    Requires 1 among the conditions and every element of nonzero marginal
    f(., 1) to be a condition; otherwise the product is undefined.
    """
    L = f.lattice
    if L.one not in f.conditions:
        raise DomainTooSmall("1 is not a condition", witness=(L.label(L.one),))
    marginal = f.state_given(L.one)
    support = [b for b in L.elements if marginal(b) != 0]
    missing = [b for b in support if b not in f.conditions]
    if missing:
        raise DomainTooSmall(
            "conditions missing for nonzero-marginal elements "
            f"{[L.label(b) for b in missing]}",
            witness=tuple(L.label(b) for b in missing),
        )
    rows = [
        [
            f(a, b) * marginal(b) if marginal(b) != 0 else ZERO
            for b in L.elements
        ]
        for a in L.elements
    ]
    return validate_smap(L, rows)


def is_independent_product(p: SMap, b: int, a: int) -> bool:
    """b is independent of a under p iff p(b, a) = p(a, a)·p(b, b)."""
    return p(b, a) == p(a, a) * p(b, b)


def scan_asymmetric_pairs(p: SMap) -> list[tuple[int, int]]:
    """Ordered pairs (a, b) independent one way but not the other, by id."""
    L = p.lattice
    out = []
    for a in L.elements:
        for b in L.elements:
            if a != b:
                if is_independent_product(p, a, b) and not is_independent_product(p, b, a):
                    out.append((a, b))
    return out
