"""Overlap analysis for rewriting systems.

Two left-hand sides that share a nonempty suffix/prefix give a superposition
word that can be rewritten in two ways.  The system is confluent exactly
when every such superposition reduces to the same normal form along both
branches; normal forms then form a basis of the presented algebra, which
everything downstream relies on.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import reduce_poly


@dataclass(frozen=True)
class Overlap:
    """lhs of rule ``left`` overlapping the lhs of rule ``right`` at ``offset``."""

    left: int
    right: int
    offset: int
    word: str

    def key(self):
        return (self.left, self.right, self.offset)


@dataclass(frozen=True)
class OverlapResolution:
    overlap: Overlap
    left_form: tuple
    right_form: tuple

    @property
    def resolves(self):
        return self.left_form == self.right_form


def overlaps(pres):
    """All proper overlap superpositions, sorted by (left, right, offset).

    ``offset`` is where the second lhs starts inside the superposition word;
    properness means each lhs covers a position the other does not.  For a
    reduced system (no lhs inside another) these are the only ambiguities,
    so inclusion cases are not searched.
    """
    found = []
    for i, ri in enumerate(pres.rules):
        for j, rj in enumerate(pres.rules):
            a, b = ri.lhs, rj.lhs
            for offset in range(1, len(a)):
                k = len(a) - offset  # shared letters
                if k < len(b) and a[offset:] == b[:k]:
                    found.append(Overlap(i, j, offset, a + b[k:]))
    return sorted(found, key=Overlap.key)


def resolve(overlap, pres):
    """Reduce the superposition along both branches and compare."""
    ri = pres.rules[overlap.left]
    rj = pres.rules[overlap.right]
    w = overlap.word
    left = reduce_poly(
        {u + w[len(ri.lhs):]: c for u, c in ri.rhs}, pres
    )
    head = w[:overlap.offset]
    tail = w[overlap.offset + len(rj.lhs):]
    right = reduce_poly(
        {head + u + tail: c for u, c in rj.rhs}, pres
    )
    freeze = lambda p: tuple(sorted(p.items()))
    return OverlapResolution(overlap, freeze(left), freeze(right))


def check_confluence(pres):
    """Resolve every overlap; returns (all_ok, list of OverlapResolution)."""
    results = [resolve(o, pres) for o in overlaps(pres)]
    return all(r.resolves for r in results), results
