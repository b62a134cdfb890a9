"""Compositional duals.

For an invertible series phi (nonzero constant term), the dual is the unique
series psi such that u1*psi(u1, t2, ..., th) is the compositional inverse of
t1*phi(t1, t2, ..., th) in the first slot.  Writing B = 1/phi, the defining
identity is

    psi(t1*phi, t2, ..., th) = B,

and each coefficient of psi is pinned down by one exponent of B: the term
psi_q * t^q * phi^(q1) has leading coefficient psi_q * phi_0^(q1) at exponent
q, all its other contributions lying at strictly larger total degree.  The
solve below peels the minimal remaining exponent of the residual, one new
coefficient per step.
"""

from __future__ import annotations

import heapq
import math
from fractions import Fraction

from .core import PuiseuxError, RootError, rational_power, rational_root, total
from .exponents import irreducible_exponents
from .reports import CheckReport
from .series import INF, PuiseuxSeries, PrecisionError

__all__ = ["dual", "verify_power_identity", "verify_dual_identity"]


def dual(phi: PuiseuxSeries) -> PuiseuxSeries:
    c0 = phi.constant_term()
    if c0 == 0:
        raise PuiseuxError("dual requires a nonzero constant term")
    if phi.laurent:
        raise PuiseuxError("dual of a Laurent series is not defined")
    prec = phi.precision
    if prec is INF and len(phi.terms) > 1:
        raise PrecisionError(
            "dual of an exact non-constant series has infinite support; truncate first"
        )
    h = phi.num_vars
    n1 = phi.ramification[0]

    # powers of phi^(1/n1) cover every first-coordinate exponent that occurs
    if n1 == 1:
        base = phi
    else:
        r0 = rational_root(c0, n1)
        if r0 is None:
            raise RootError(
                f"dual with first-variable denominator {n1} needs a rational "
                f"{n1}-th root of the constant term {c0}"
            )
        base = phi.unit_power(Fraction(1, n1), constant_power=r0)

    # every exponent in sight lies on phi's grid (1/n_i)Z; work with scaled
    # integer keys, whose hashing and addition are much cheaper
    grid = phi.ramification
    lcm_all = math.lcm(*grid)
    weights = [lcm_all // n for n in grid]
    cutoff = None if prec is INF else math.floor(prec * lcm_all)

    def to_grid(e):
        return tuple(c.numerator * (n // c.denominator) for c, n in zip(e, grid))

    def grid_total(e):
        return sum(c * w for c, w in zip(e, weights))

    powers = [PuiseuxSeries.one(h, prec)]
    pw_cache: dict[int, tuple] = {}

    def phi_power(steps: int):
        while len(powers) <= steps:
            powers.append(powers[-1] * base)
        if steps not in pw_cache:
            const = None
            items = []
            for e, c in powers[steps].terms.items():
                g = to_grid(e)
                t = grid_total(g)
                if t == 0:
                    const = c
                else:
                    items.append((g, c, t))
            pw_cache[steps] = (const, items)
        return pw_cache[steps]

    residual = {to_grid(e): c for e, c in phi.unit_power(-1).terms.items()}
    heap = [(grid_total(e), e) for e in residual]
    heapq.heapify(heap)
    found = {}
    while heap:
        tq, q = heapq.heappop(heap)
        if q not in residual:
            continue  # cancelled since it was pushed
        const, items = phi_power(q[0])
        coef = residual.pop(q) / const
        found[q] = coef
        for e, c, te in items:
            if cutoff is not None and tq + te > cutoff:
                continue
            key = tuple(a + b for a, b in zip(q, e))
            old = residual.get(key)
            new = -coef * c if old is None else old - coef * c
            if new == 0:
                residual.pop(key, None)
            else:
                if old is None:
                    heapq.heappush(heap, (tq + te, key))
                residual[key] = new
        # triangularity: each step consumes the unique minimal unknown
        # (equality below happens only for stale entries of the consumed key)
        assert q not in residual
        assert not heap or heap[0] >= (tq, q)
    terms = {
        tuple(Fraction(x, n) for x, n in zip(e, grid)): c for e, c in found.items()
    }
    return PuiseuxSeries._build(h, terms, prec, False)


def verify_power_identity(phi: PuiseuxSeries, N: int) -> CheckReport:
    """Check Irr(phi^N) = Irr(phi) and the coefficient formulas
    [phi^N]_0 = phi_0^N and [phi^N]_r = N phi_0^(N-1) [phi]_r at every
    nonzero irreducible exponent r, within precision."""
    if phi.constant_term() == 0:
        raise PuiseuxError("power identity needs an invertible series")
    if N < 1:
        raise PuiseuxError("N must be a positive integer")
    report = CheckReport(f"power identity (N={N})")
    power = phi.pow_int(N)
    irr_phi = irreducible_exponents(phi.support())
    irr_pow = irreducible_exponents(power.support())
    for e in sorted(irr_phi ^ irr_pow, key=lambda v: (total(v), v)):
        in_phi = e in irr_phi
        report.record(
            "irreducible sets equal",
            "phi" if in_phi else "phi^N",
            "phi^N" if in_phi else "phi",
            e,
        )
    c0 = phi.constant_term()
    zero = tuple(Fraction(0) for _ in range(phi.num_vars))
    report.record("constant term", power.coefficient(zero), c0**N, zero)
    for r in sorted(irr_phi & irr_pow, key=lambda v: (total(v), v)):
        if r == zero:
            continue
        report.record(
            "power coefficient",
            power.coefficient(r),
            N * c0 ** (N - 1) * phi.coefficient(r),
            r,
        )
    return report


def verify_dual_identity(phi: PuiseuxSeries) -> CheckReport:
    """Check Irr(dual(phi)) = Irr(phi), [dual]_0 = phi_0^(-1) and
    [dual]_r = -phi_0^(-r1-2) [phi]_r at every nonzero irreducible r,
    r1 being the first coordinate."""
    if phi.constant_term() == 0:
        raise PuiseuxError("dual identity needs an invertible series")
    report = CheckReport("dual identity")
    checked = dual(phi)
    irr_phi = irreducible_exponents(phi.support())
    irr_dual = irreducible_exponents(checked.support())
    for e in sorted(irr_phi ^ irr_dual, key=lambda v: (total(v), v)):
        in_phi = e in irr_phi
        report.record(
            "irreducible sets equal",
            "phi" if in_phi else "dual",
            "dual" if in_phi else "phi",
            e,
        )
    c0 = phi.constant_term()
    zero = tuple(Fraction(0) for _ in range(phi.num_vars))
    report.record("constant term", checked.coefficient(zero), 1 / c0, zero)
    for r in sorted(irr_phi & irr_dual, key=lambda v: (total(v), v)):
        if r == zero:
            continue
        expected = -rational_power(c0, -r[0] - 2) * phi.coefficient(r)
        report.record("dual coefficient", checked.coefficient(r), expected, r)
    return report
