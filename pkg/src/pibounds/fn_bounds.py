"""Lower bounds on estimating *functions* of the hidden variable.

Even when X itself cannot be recovered from Y, some M-class quotient of
X might be.  For a canonical marginal p on m outcomes, the aggregation
that merges the m - M + 1 most likely outcomes into a single class and
keeps the rest separate induces the distribution

    p_U(1) = p(1) + ... + p(m - M + 1),      p_U(k) = p(m - M + k),

which majorizes the induced distribution of *every* surjection onto M
classes.  Any Schur-concave lower bound on the error-rate function
therefore transfers from p_U to all M-ary functions of X at once:
``function_bound`` evaluates the transfer for a mutual-information
budget (through the Fano closed form) and for a maximal-correlation
budget (through the closed form linear in the correlation).

``min_surjection_error`` is the matching brute-force oracle: it
enumerates every surjection onto M classes, up to relabeling of the
range, and returns the smallest exact Bayes error together with a
witness, so the transferred bounds can be certified instance by
instance at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np

from .distributions import (
    JointDistribution,
    ProbabilityVector,
    as_probability_vector,
)
from .error_rate import fano_error_rate
from .errors import MOutOfRange, NegativeTheta, NotCanonical, TooLarge


@dataclass(frozen=True)
class AggregationMap:
    """The head-merging surjection onto M classes and its induced pmf.

    ``assignment[x]`` is the 0-based class of outcome x: class 0 for the
    m - M + 1 most likely outcomes, then one class per remaining outcome.
    ``p_u`` is canonical whenever the source vector is.
    """

    num_classes: int
    assignment: np.ndarray
    p_u: ProbabilityVector


def aggregation_map(p, num_classes: int) -> AggregationMap:
    """Build the head-merging aggregation for a canonical marginal."""
    pv = as_probability_vector(p)
    if not pv.canonical:
        raise NotCanonical("aggregation is defined on a sorted marginal")
    m = len(pv)
    if not 1 <= num_classes <= m:
        raise MOutOfRange(f"M = {num_classes} outside 1..{m}")
    merged = m - num_classes + 1
    assignment = np.concatenate([
        np.zeros(merged, dtype=int),
        np.arange(1, num_classes, dtype=int),
    ])
    p_u = np.concatenate([[pv.values[:merged].sum()], pv.values[merged:]])
    assignment.setflags(write=False)
    return AggregationMap(num_classes=num_classes, assignment=assignment,
                          p_u=ProbabilityVector(p_u))


def function_bound(p, theta: float, num_classes: int, measure: str,
                   clamp: bool = True) -> float:
    """Lower bound on the best error over all M-class functions of X.

    measure="mi":       theta bounds the mutual information in bits; the
                        Fano closed form is evaluated on the aggregated
                        distribution.
    measure="maxcorr":  theta bounds the maximal correlation; evaluates
                        1 - p_U(1) - theta sqrt(1 - sum p_U^2).
    """
    if theta < 0.0:
        raise NegativeTheta(f"theta must be nonnegative, got {theta}")
    agg = aggregation_map(p, num_classes)
    if measure == "mi":
        return fano_error_rate(agg.p_u, theta)
    if measure == "maxcorr":
        u = agg.p_u.values
        # the collision sum can exceed 1 by an ulp for a point mass
        spread = np.sqrt(max(0.0, 1.0 - float(u @ u)))
        raw = 1.0 - u[0] - theta * spread
        return float(max(raw, 0.0)) if clamp else float(raw)
    raise MOutOfRange(f"unknown measure {measure!r}; use 'mi' or 'maxcorr'")


def _stirling2(m: int, classes: int) -> int:
    """Number of partitions of m items into exactly ``classes`` blocks."""
    row = [1] + [0] * classes
    for _ in range(m):
        new = [0] * (classes + 1)
        for j in range(1, classes + 1):
            new[j] = row[j - 1] + j * row[j]
        row = new
    return row[classes]


def _canonical_surjections(m: int, classes: int):
    """All assignments of m outcomes onto ``classes`` classes, one
    representative per relabeling orbit, in lexicographic order.

    Canonical form: the class of outcome 0 is 0, and each later outcome
    may reuse an existing class or open the next unused one (restricted
    growth).  Relabeling the range cannot change any Bayes error, so the
    orbit representative suffices.
    """
    assignment = np.zeros(m, dtype=int)

    def extend(i: int, used: int):
        if m - i < classes - used:
            return
        if i == m:
            yield assignment.copy()
            return
        for value in range(min(used + 1, classes)):
            assignment[i] = value
            yield from extend(i + 1, used + (1 if value == used else 0))

    yield from extend(0, 0)


@dataclass(frozen=True)
class SurjectionSearch:
    """Exact minimum Bayes error over M-class functions, with a witness."""

    value: float
    assignment: np.ndarray
    enumerated: int


def min_surjection_error(joint: JointDistribution, num_classes: int,
                         cap: int = 10_000_000) -> SurjectionSearch:
    """Brute-force the best estimable M-class function of X.

    For every canonical surjection f the exact Bayes error of estimating
    f(X) from Y is 1 - sum_y max_u sum_{x: f(x)=u} p(x, y); the minimum
    and its first witness are returned.  Raises TooLarge when the full
    surjection count (including relabelings) exceeds ``cap``.
    """
    m = joint.m
    if not 1 <= num_classes <= m:
        raise MOutOfRange(f"M = {num_classes} outside 1..{m}")
    total = _stirling2(m, num_classes) * factorial(num_classes)
    if total > cap:
        raise TooLarge(f"{total} surjections exceed the cap {cap}")

    best_value = np.inf
    best_assignment = None
    count = 0
    for assignment in _canonical_surjections(m, num_classes):
        merged = np.zeros((num_classes, joint.n))
        np.add.at(merged, assignment, joint.matrix)
        error = 1.0 - merged.max(axis=0).sum()
        count += 1
        if error < best_value - 1e-15:
            best_value = error
            best_assignment = assignment
    best_assignment.setflags(write=False)
    return SurjectionSearch(value=float(best_value), assignment=best_assignment,
                            enumerated=count)
