"""Lipman's combinatorial quasi-ordinary test and toric chart pullbacks.

A multivariate series is quasi-ordinary exactly when its support admits a
coordinatewise-increasing chain of exponents lambda_1 <= ... <= lambda_r such
that every support element lies in Z^h plus the group generated by the
lambda_j below it, each lambda_i lying outside the group of its predecessors.
The candidates are produced from the essential sequence relative to Z^h
(dropping an integral head), so only the two order-sensitive conditions need
explicit checking.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .core import (
    AdditiveOrder,
    Lattice,
    PuiseuxError,
    Vec,
    fmt_vec,
    mat_det,
    mat_from,
    mat_transpose,
    total,
    vec_mat,
)
from .exponents import (
    EssentialSequence,
    drop_integral_head,
    essential_of_series,
    exponent_to_json,
)
from .reports import CheckReport
from .series import PuiseuxSeries

__all__ = ["QOVerdict", "LipmanWitness", "qo_test", "toric_pullback", "verify_qsigma_relation"]


@dataclass(frozen=True)
class LipmanWitness:
    condition: str  # "comparability" | "membership"
    elements: tuple[Vec, ...]

    def describe(self) -> str:
        elems = " and ".join(fmt_vec(e) for e in self.elements)
        if self.condition == "comparability":
            return f"candidates {elems} are not coordinatewise comparable"
        return f"support element {elems} escapes the group of the candidates below it"

    def to_json(self) -> dict:
        return {
            "condition": self.condition,
            "elements": [exponent_to_json(e) for e in self.elements],
        }


def recheck_witness(witness: LipmanWitness, candidates) -> bool:
    """Re-evaluate the violated condition; False confirms the failure."""
    candidates = list(candidates)
    if witness.condition == "comparability":
        a, b = witness.elements
        return all(x <= y for x, y in zip(a, b))
    (lam,) = witness.elements
    return _graded_member(lam, candidates)


def _graded_member(lam: Vec, candidates) -> bool:
    below = [c for c in candidates if all(x <= y for x, y in zip(c, lam))]
    return Lattice.standard(len(lam)).join(below).contains(lam)


@dataclass(frozen=True)
class QOVerdict:
    is_qo: bool | None  # None: unknown beyond precision
    char_exponents: tuple[Vec, ...] | None
    witness: LipmanWitness | None
    certified: bool
    essential: EssentialSequence

    def to_json(self) -> dict:
        return {
            "is_qo": {True: "yes", False: "no", None: "unknown"}[self.is_qo],
            "char_exponents": None
            if self.char_exponents is None
            else [exponent_to_json(e) for e in self.char_exponents],
            "witness": None if self.witness is None else self.witness.to_json(),
            "certified": self.certified,
        }


def qo_test(psi: PuiseuxSeries) -> QOVerdict:
    """Decide quasi-ordinariness of the stored support.

    Candidates come from ess(S(psi), Z^h, lex) with an integral head dropped;
    the verdict is certified only when that sequence carries a completeness
    certificate, otherwise a clean run is reported as unknown beyond
    precision (a violation found within precision is still reported).
    """
    if psi.is_zero():
        raise PuiseuxError("quasi-ordinary test of the zero series")
    ess = essential_of_series(psi)
    candidates = drop_integral_head(ess)
    certified = ess.complete

    witness = None
    for a, b in zip(candidates, candidates[1:]):
        if not all(x <= y for x, y in zip(a, b)):
            witness = LipmanWitness("comparability", (a, b))
            break
    if witness is None:
        for lam in sorted(psi.support(), key=lambda e: (total(e), e)):
            if not _graded_member(lam, candidates):
                witness = LipmanWitness("membership", (lam,))
                break

    if witness is not None:
        return QOVerdict(False, None, witness, certified, ess)
    if not certified:
        return QOVerdict(None, tuple(candidates), None, False, ess)
    return QOVerdict(True, tuple(candidates), None, True, ess)


def toric_pullback(psi: PuiseuxSeries, q_sigma) -> PuiseuxSeries:
    """Monomial pullback x^lambda -> v^(lambda . q): row i of q_sigma is the
    exponent vector of the monomial substituted for the i-th variable."""
    q = mat_from(q_sigma)
    if len(q) != psi.num_vars:
        raise PuiseuxError("chart matrix dimension does not match the series")
    if any(c.denominator != 1 or c < 0 for row in q for c in row):
        raise PuiseuxError("chart matrix must have non-negative integer entries")
    det = mat_det(q)
    if det == 0:
        raise PuiseuxError("chart matrix must be invertible")
    if abs(det) != 1:
        warnings.warn(
            f"chart matrix determinant {det} is not +-1; the cone is not regular",
            stacklevel=2,
        )
    return psi.monomial_substitute(mat_transpose(q))


def verify_qsigma_relation(
    psi: PuiseuxSeries, q_sigma, order: AdditiveOrder | None = None
) -> CheckReport:
    """Check q(ess(psi, Z^h, order o q)) = ess(pullback(psi), Z^h, order)
    entrywise, for a unimodular non-negative chart matrix q."""
    q = mat_from(q_sigma)
    if abs(mat_det(q)) != 1 or any(c.denominator != 1 for row in q for c in row):
        raise PuiseuxError("the chart relation needs a unimodular integer matrix")
    h = psi.num_vars
    order = order if order is not None else AdditiveOrder.lex(h)
    composed = order.compose(q)
    left = essential_of_series(psi, order=composed)
    pulled = toric_pullback(psi, q)
    if len(pulled.terms) != len(psi.terms):
        # the chart pushed stored terms beyond the pullback's precision, so
        # the two sides would be compared over different windows
        raise PuiseuxError(
            "insufficient precision: the pullback loses stored terms"
        )
    right = essential_of_series(pulled, order=order)
    report = CheckReport("toric chart relation")
    report.record("sequence lengths", len(left.entries), len(right.entries))
    for k, (a, b) in enumerate(zip(left.entries, right.entries)):
        report.record(f"entry {k}", vec_mat(a, q), b, b)
    return report
