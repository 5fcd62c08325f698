"""Ehrhart counting and delta-vectors.

Counts ``L(k) = |kP ∩ Z^N|`` come from lattice-point enumeration on the
dilated facet system. The delta-vector is the numerator of the Ehrhart
series, read off by multiplying the first ``d + 1`` counts by ``(1 - t)^(d+1)``.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import geometry
from .triangulation import h_vector, is_unimodular


class CountingError(ArithmeticError):
    pass


@dataclass(frozen=True)
class EhrhartData:
    counts: tuple  # L(0), L(1), ..., L(m)
    poly: tuple  # coefficients of the Ehrhart polynomial, constant term first

    def evaluate(self, k):
        return sum((c * Fraction(k) ** i for i, c in enumerate(self.poly)), Fraction(0))


def _interpolate(xs, ys):
    """Coefficients (low to high) of the polynomial through the given points."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xs[j] * basis[t + 1]
            denom *= xs[i] - xs[j]
        for t in range(n):
            coeffs[t] += ys[i] * basis[t] / denom
    return tuple(coeffs)


def ehrhart_counts(P, m=None):
    """Counts ``L(0..m)`` (default ``m = d + 2``) and the interpolated Ehrhart polynomial."""
    d = P.dim
    if m is None:
        m = d + 2
    if m < d:
        raise ValueError("need at least d + 1 counts")
    counts = tuple(geometry.count_lattice_points(P, k) for k in range(m + 1))
    poly = _interpolate(list(range(d + 1)), list(counts[:d + 1]))
    return EhrhartData(counts, poly)


def delta_from_counts(counts, d):
    return tuple(sum((-1) ** (i - j) * comb(d + 1, i - j) * counts[j] for j in range(i + 1))
                 for i in range(d + 1))


def delta_vector(P):
    """Ehrhart delta-vector ``(δ_0, ..., δ_d)`` of a lattice polytope."""
    d = P.dim
    counts = [geometry.count_lattice_points(P, k) for k in range(d + 1)]
    delta = delta_from_counts(counts, d)
    if any(x < 0 for x in delta):
        raise CountingError(f"negative delta entry {delta}; lattice point counts are inconsistent")
    return delta


def reciprocity_check(P):
    """Ehrhart reciprocity against enumerated interior counts, plus interpolation consistency."""
    d = P.dim
    data = ehrhart_counts(P, d + 2)
    for k in range(1, d + 1):
        if (-1) ** d * data.evaluate(-k) != geometry.count_interior_points(P, k):
            return False
    return all(data.evaluate(k) == data.counts[k] for k in range(d + 1, d + 3))


def h_equals_delta_check(T):
    """h-vector of a unimodular triangulation equals the delta-vector of its polytope."""
    if not is_unimodular(T):
        raise ValueError("triangulation is not unimodular")
    return tuple(h_vector(T)) == delta_vector(T.polytope)


def is_unimodal(seq):
    """Weakly increasing then weakly decreasing."""
    seq = list(seq)
    i = 0
    while i + 1 < len(seq) and seq[i] <= seq[i + 1]:
        i += 1
    while i + 1 < len(seq) and seq[i] >= seq[i + 1]:
        i += 1
    return i == len(seq) - 1


def increasing_to_middle(delta):
    """``δ_0 <= δ_1 <= ... <= δ_ceil(d/2)``."""
    d = len(delta) - 1
    mid = (d + 1) // 2
    return all(delta[i] <= delta[i + 1] for i in range(mid))
