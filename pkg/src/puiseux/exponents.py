"""Combinatorics of supports: irreducible elements, essential sequences and
characteristic exponents, with brute-force semigroup oracles.

All functions accept sets whose elements are either Fractions (one variable)
or tuples of Fractions; results keep the shape of the input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import AdditiveOrder, Lattice, PuiseuxError, Vec, as_vec, total, vec_sub

DEFAULT_BUDGET = 10**6


class BudgetError(PuiseuxError):
    pass


def _normalize_set(S) -> tuple[list[Vec], bool]:
    """Returns (vectors, scalar_input)."""
    items = list(S)
    if not items:
        return [], False
    scalar = not isinstance(items[0], tuple)
    vecs = [as_vec(v) for v in items]
    dim = len(vecs[0])
    if any(len(v) != dim for v in vecs):
        raise PuiseuxError("mixed dimensions in exponent set")
    return vecs, scalar


def _leq(a: Vec, b: Vec) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _sum_search(v: Vec, gens, budget: int, min_terms: int, max_terms=None) -> bool:
    """Exhaustive search: is v a sum of k nonzero generators, min <= k (<= max)?"""
    gens = sorted(
        {g for g in gens if any(c != 0 for c in g)}, key=lambda g: (total(g), g)
    )
    state = {"count": 0}

    def rec(target: Vec, start: int, used: int) -> bool:
        state["count"] += 1
        if state["count"] > budget:
            raise BudgetError(f"semigroup search exceeded {budget} states")
        if all(c == 0 for c in target):
            return used >= min_terms
        if max_terms is not None and used >= max_terms:
            return False
        for i in range(start, len(gens)):
            g = gens[i]
            if _leq(g, target) and rec(vec_sub(target, g), i, used + 1):
                return True
        return False

    return rec(v, 0, 0)


def irreducible_exponents(S, budget: int = DEFAULT_BUDGET):
    """The elements of S that are not sums of two or more nonzero elements
    of S.  Exact on truncated supports: any summand of r has total sum at
    most that of r, so truncation below a bound cannot hide decompositions.
    """
    vecs, scalar = _normalize_set(S)
    if any(any(c < 0 for c in v) for v in vecs):
        raise PuiseuxError("irreducible_exponents needs non-negative exponents")
    vset = set(vecs)
    zero = tuple(Fraction(0) for _ in range(len(vecs[0]))) if vecs else ()
    nonzero = vset - {zero}
    result = set()
    for r in vset:
        if r == zero:
            result.add(r)
            continue
        cands = [s for s in nonzero if s != r and _leq(s, r)]
        if not _sum_search(r, cands, budget, min_terms=2):
            result.add(r)
    if scalar:
        return {v[0] for v in result}
    return result


def semigroup_member_oracle(S, v, max_terms: int, budget: int = DEFAULT_BUDGET) -> bool:
    """True iff v is a sum of between 1 and max_terms nonzero elements of S."""
    vecs, _ = _normalize_set(S)
    v = as_vec(v, len(vecs[0]) if vecs else None)
    return _sum_search(v, vecs, budget, min_terms=1, max_terms=max_terms)


@dataclass(frozen=True)
class EssentialSequence:
    entries: tuple[Vec, ...]
    relative_to: Lattice
    order: AdditiveOrder
    complete: bool

    @property
    def scalars(self) -> tuple[Fraction, ...]:
        if any(len(e) != 1 for e in self.entries):
            raise PuiseuxError("scalars only available for one-variable sequences")
        return tuple(e[0] for e in self.entries)

    def joined_lattice(self) -> Lattice:
        return self.relative_to.join(self.entries)

    def to_json(self) -> dict:
        return {
            "entries": [exponent_to_json(e) for e in self.entries],
            "lattice": self.relative_to.to_json(),
            "order": self.order.to_json(),
            "complete": self.complete,
        }

    @classmethod
    def from_json(cls, data: dict) -> "EssentialSequence":
        return cls(
            tuple(exponent_from_json(e) for e in data["entries"]),
            Lattice.from_json(data["lattice"]),
            AdditiveOrder.from_json(data["order"]),
            bool(data["complete"]),
        )


def exponent_to_json(e: Vec):
    """One variable: a bare rational string; several: an array of them."""
    if len(e) == 1:
        return str(e[0])
    return [str(c) for c in e]


def exponent_from_json(data) -> Vec:
    if isinstance(data, str):
        return (Fraction(data),)
    return tuple(Fraction(c) for c in data)


def essential_exponents(
    S, lattice: Lattice, order: AdditiveOrder, ramification=None
) -> EssentialSequence:
    """The greedy sequence of order-minimal elements of S, each lying outside
    the lattice joined with its predecessors.

    The sequence is flagged complete when the terminal joined lattice
    contains the ramification lattice prod (1/N_i)Z, where N_i combines the
    caller-declared ramification with the denominators seen in S; then no
    element of any support with those denominators can extend the sequence.
    """
    vecs, _ = _normalize_set(S)
    if not vecs:
        raise PuiseuxError("essential sequence of an empty set")
    dim = len(vecs[0])
    if lattice.dim != dim:
        raise PuiseuxError("lattice dimension does not match the exponents")
    if order.dim != dim:
        raise PuiseuxError("order dimension does not match the exponents")
    if not order.dominating:
        raise PuiseuxError("essential sequences need an order dominating Q^h_+")

    entries = [order.min(vecs)]
    current = lattice.join([entries[0]])
    while True:
        outside = [v for v in vecs if not current.contains(v)]
        if not outside:
            break
        nxt = order.min(outside)
        entries.append(nxt)
        current = current.join([nxt])

    denoms = [1] * dim
    for v in vecs:
        for i, c in enumerate(v):
            denoms[i] = math.lcm(denoms[i], c.denominator)
    if ramification is not None:
        if len(ramification) != dim:
            raise PuiseuxError("ramification must give one denominator per variable")
        denoms = [math.lcm(d, int(n)) for d, n in zip(denoms, ramification)]
    ram_lattice = Lattice.scaled_axes(dim, [Fraction(1, d) for d in denoms])
    complete = current.contains_lattice(ram_lattice)
    return EssentialSequence(tuple(entries), lattice, order, complete)


def essential_exponents_p(S, p: int, ramification=None) -> EssentialSequence:
    """One-variable essential sequence relative to the integer p (lattice pZ)."""
    if p <= 0:
        raise PuiseuxError("p must be a positive integer")
    vecs = [as_vec(v, 1) for v in S]
    ram = None if ramification is None else (int(ramification),)
    return essential_exponents(
        vecs, Lattice(1, [(Fraction(p),)]), AdditiveOrder.lex(1), ram
    )


def essential_of_series(series, lattice=None, order=None) -> EssentialSequence:
    """Essential sequence of a series' support, default lattice Z^h, order lex."""
    h = series.num_vars
    lattice = lattice if lattice is not None else Lattice.standard(h)
    order = order if order is not None else AdditiveOrder.lex(h)
    return essential_exponents(
        series.support(), lattice, order, ramification=series.ramification
    )


@dataclass(frozen=True)
class CharacteristicSequence:
    entries: tuple[Fraction, ...]
    complete: bool

    def to_json(self) -> dict:
        return {"entries": [str(e) for e in self.entries], "complete": self.complete}


def drop_integral_head(seq: EssentialSequence) -> tuple[Vec, ...]:
    """Characteristic candidates from an essential sequence relative to Z^h:
    keep the head exactly when it is not integral."""
    if not seq.entries:
        return ()
    head = seq.entries[0]
    if all(c.denominator == 1 for c in head):
        return seq.entries[1:]
    return seq.entries


def characteristic_exponents(psi) -> CharacteristicSequence:
    """Characteristic exponents of a one-variable series: support elements
    whose denominator exceeds the lcm denominator of all earlier support.

    Cross-checked against the essential sequence relative to 1 with its
    integral head dropped; the two constructions provably agree.
    """
    if psi.num_vars != 1:
        raise PuiseuxError("characteristic exponents are defined for one variable")
    if psi.is_zero():
        raise PuiseuxError("characteristic exponents of the zero series")
    if psi.constant_term() != 0:
        raise PuiseuxError("characteristic exponents need a zero constant term")
    support = sorted(e[0] for e in psi.support())
    entries = []
    n = 1
    for l in support:
        if (n * l).denominator != 1:
            entries.append(l)
        n = math.lcm(n, l.denominator)
    ess = essential_exponents_p(psi.support(), 1, ramification=psi.ramification[0])
    transformed = tuple(e[0] for e in drop_integral_head(ess))
    assert tuple(entries) == transformed, "essential/characteristic disagreement"
    return CharacteristicSequence(tuple(entries), ess.complete)
