"""Exact spectral decisions for integer matrices.

Everything here is decided in exact arithmetic: characteristic and annihilator
polynomials, the cyclotomic (root of unity) test, Schur-Cohn disk counts and
the modulus threshold built on top of them.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

from .errors import (
    AllRootsOfUnity,
    DegenerateRecursion,
    DimensionMismatch,
    NotMonic,
    NotSquare,
    NotUnimodular,
    PowerBudgetExceeded,
    ZeroConstantTerm,
)
from .exact import IntMatrix, IntPolynomial, poly_divide, poly_gcd

DEFAULT_POWER_BUDGET = 64
# perturbation attempts used when the Schur-Cohn recursion hits a singular step
_PERTURBATION_STEPS = 200


@dataclass(frozen=True)
class DiskCount:
    radius: Fraction
    roots_strictly_inside: int
    degree: int
    boundary_certified_clear: bool
    method: str = "schur_cohn"


@dataclass(frozen=True)
class SpectralVerdict:
    all_roots_of_unity: bool
    exists_modulus_ge_two: bool
    witness_power: int | None = None


def char_poly(a: IntMatrix) -> IntPolynomial:
    """``det(xI - A)`` via the Faddeev-LeVerrier recursion.

    The divisions by ``k`` are exact over the integers.
    """
    if not a.is_square:
        raise NotSquare(f"matrix of shape {a.shape} is not square")
    n = a.nrows
    ident = IntMatrix.identity(n)
    coeffs = [1]
    m = IntMatrix.zero(n, n)
    for k in range(1, n + 1):
        m = a @ m + ident.scale(coeffs[-1])
        tr = (a @ m).trace()
        q, r = divmod(-tr, k)
        assert r == 0
        coeffs.append(q)
    return IntPolynomial(coeffs)


def annihilator_poly(a: IntMatrix, v: Sequence[int]) -> IntPolynomial:
    """Monic generator of ``{g : g(A) v = 0}``.

    The zero vector is annihilated by everything and gets the unit polynomial.
    """
    if not a.is_square:
        raise NotSquare(f"matrix of shape {a.shape} is not square")
    if len(v) != a.nrows:
        raise DimensionMismatch(f"vector of length {len(v)} for {a.shape} matrix")
    if not any(v):
        return IntPolynomial([1])
    n = a.nrows
    krylov = [tuple(v)]
    # reduced echelon rows over Q, each with a record of the Krylov combination
    echelon = []
    while True:
        target = [Fraction(x) for x in krylov[-1]]
        combo = [Fraction(0)] * len(krylov)
        combo[-1] = Fraction(1)
        for piv, row, rcombo in echelon:
            f = target[piv]
            if f:
                target = [t - f * r for t, r in zip(target, row)]
                combo = [c - f * rc for c, rc in zip(combo, rcombo + [Fraction(0)] * (len(combo) - len(rcombo)))]
        piv = next((j for j, t in enumerate(target) if t), None)
        if piv is None:
            # combo . (v, Av, ..., A^m v) = 0 with combo[-1] = 1
            break
        p = target[piv]
        echelon.append((piv, [t / p for t in target], [c / p for c in combo]))
        if len(krylov) > n:
            raise AssertionError("Krylov sequence failed to become dependent")
        krylov.append(a.apply(krylov[-1]))
    assert all(c.denominator == 1 for c in combo)
    return IntPolynomial(int(c) for c in reversed(combo))


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> IntPolynomial:
    """The n-th cyclotomic polynomial, by exact division of ``x^n - 1``."""
    p = IntPolynomial([1] + [0] * (n - 1) + [-1])
    for d in range(1, n):
        if n % d == 0:
            p, r = poly_divide(p, cyclotomic(d))
            assert r.is_zero
    return p


def _check_monic(p: IntPolynomial):
    if not p.is_monic:
        raise NotMonic(f"polynomial {p} is not monic")


def cyclotomic_orders(degree: int) -> list:
    """All ``d`` with ``phi(d) <= degree``; ``phi(d) >= sqrt(d/2)`` bounds the search."""
    return [d for d in range(1, 2 * degree * degree + 1) if euler_phi(d) <= degree]


def kronecker_all_roots_of_unity(p: IntPolynomial) -> bool:
    """True iff every complex root of monic ``p`` is a root of unity."""
    _check_monic(p)
    if p.constant_term == 0:
        raise ZeroConstantTerm(f"polynomial {p} has zero constant term")
    rest = p
    for d in cyclotomic_orders(p.degree):
        phi = cyclotomic(d)
        while rest.degree >= phi.degree:
            q, r = poly_divide(rest, phi)
            if not r.is_zero:
                break
            rest = q
        if rest.degree == 0:
            break
    return rest.degree == 0


def _scaled(p: IntPolynomial, radius: Fraction) -> list:
    """Integer coefficients (low first) of ``den^n p(radius z)``; roots are divided by radius."""
    a, b = radius.numerator, radius.denominator
    n = p.degree
    low = p.low_first()
    return [c * a**i * b ** (n - i) for i, c in enumerate(low)]


def _trim(low: list) -> list:
    while low and low[-1] == 0:
        low.pop()
    return low


def _schur_cohn_unit(low: list) -> int:
    """Roots strictly inside the unit disk of a real polynomial (low-first).

    Raises DegenerateRecursion on a singular step, which is the only way a
    root on the unit circle can manifest.
    """
    f = _trim(list(low))
    count_stack = []
    while len(f) > 1:
        n = len(f) - 1
        a0, an = f[0], f[-1]
        c = a0 * a0 - an * an
        if c == 0:
            raise DegenerateRecursion("singular Schur-Cohn step")
        # a0 * f - an * f^*, top coefficient cancels
        g = [a0 * f[i] - an * f[n - i] for i in range(n)]
        g = _trim(g)
        cont = 0
        for x in g:
            cont = gcd(cont, x)
        g = [x // cont for x in g]
        count_stack.append((n, c > 0))
        f = g
    count = 0
    for n, same in reversed(count_stack):
        count = count if same else n - count
    return count


def _unit_circle_common_factor(low: list) -> IntPolynomial:
    p = IntPolynomial.from_low(low)
    return poly_gcd(p, p.reversed())


def roots_in_open_disk(p: IntPolynomial, radius) -> DiskCount:
    """Count roots of monic ``p`` with ``|z| < radius``.

    A singular recursion step is resolved exactly when ``p`` shares no factor
    with its reflection in the circle (no root on it, no mirrored pair): the
    radius is nudged down and up until both counts agree.  Otherwise
    DegenerateRecursion propagates.
    """
    _check_monic(p)
    radius = Fraction(radius)
    if radius <= 0:
        raise ValueError("radius must be positive")
    n = p.degree
    low = _scaled(p, radius)
    try:
        return DiskCount(radius, _schur_cohn_unit(low), n, True)
    except DegenerateRecursion:
        pass
    if _unit_circle_common_factor(low).degree > 0:
        raise DegenerateRecursion(
            f"{p} has a root on |z| = {radius} or a pair mirrored in that circle"
        )
    for k in range(1, _PERTURBATION_STEPS + 1):
        eps = Fraction(1, 2**k)
        try:
            lo = _schur_cohn_unit(_scaled(p, radius * (1 - eps)))
            hi = _schur_cohn_unit(_scaled(p, radius * (1 + eps)))
        except DegenerateRecursion:
            continue
        if lo == hi:
            return DiskCount(radius, lo, n, True, method="schur_cohn_perturbed")
    raise DegenerateRecursion(f"could not resolve singular recursion for {p} at radius {radius}")


def has_modulus_ge(p: IntPolynomial, threshold) -> bool:
    """True iff monic ``p`` has a root with ``|z| >= threshold``."""
    _check_monic(p)
    threshold = Fraction(threshold)
    if p.degree <= 0:
        return False
    try:
        return roots_in_open_disk(p, threshold).roots_strictly_inside < p.degree
    except DegenerateRecursion:
        # A shared factor with the reflected polynomial has roots z and
        # threshold^2/conj(z) together, so one of them has modulus >= threshold.
        return True


def power_for_threshold(a: IntMatrix, threshold=2, n_max: int = DEFAULT_POWER_BUDGET) -> int:
    """Smallest ``n <= n_max`` such that ``A^n`` has an eigenvalue of modulus >= threshold."""
    cp = char_poly(a)
    if kronecker_all_roots_of_unity(cp):
        raise AllRootsOfUnity(f"every eigenvalue of {a.tolist()} is a root of unity")
    power = a
    for n in range(1, n_max + 1):
        if n > 1:
            power = power @ a
        if has_modulus_ge(char_poly(power), threshold):
            return n
    raise PowerBudgetExceeded(
        f"no power up to {n_max} reaches modulus {threshold}", largest_tested=n_max
    )


def spectrum_all_roots_of_unity(m: IntMatrix) -> bool:
    """Whether every eigenvalue of one unimodular matrix is a root of unity.

    This is a per-element check only; it says nothing about the action of a
    whole group on a nilpotent normal subgroup.
    """
    if not m.is_square:
        raise NotSquare(f"matrix of shape {m.shape} is not square")
    if not m.is_unimodular:
        raise NotUnimodular(f"determinant {m.det()} is not +1 or -1")
    return kronecker_all_roots_of_unity(char_poly(m))


def spectral_verdict(a: IntMatrix, threshold=2, n_max: int = DEFAULT_POWER_BUDGET) -> SpectralVerdict:
    cp = char_poly(a)
    if kronecker_all_roots_of_unity(cp):
        return SpectralVerdict(True, False, None)
    return SpectralVerdict(
        False, has_modulus_ge(cp, threshold), power_for_threshold(a, threshold, n_max)
    )
