"""Seifert matrices and Tristram-Levine signatures.

A knot enters every computation here through a Seifert matrix V: an
integer matrix of even size with det(V - V^T) = 1.  The class stores
the matrix immutably together with an optional display name; the usual
concordance operations (mirror image, reverse, concordance inverse,
connected sum) act on it, and `tristram_levine_signature` evaluates the
signature function at rational points of the circle.

Signatures are certified in two tiers.  Away from roots of the
Alexander polynomial the Hermitian form is provably nonsingular, so a
floating point eigenvalue computation with a wide safety margin
suffices; the margin is checked, and any doubt (eigenvalues in the grey
zone, a wrong count, an odd signature) falls through to the second
tier.  The second tier runs exact interval arithmetic on a realified
form, extracts the characteristic polynomial with Faddeev-LeVerrier,
and counts positive and negative eigenvalues by Descartes' rule of
signs, which is exact for polynomials with all roots real.  Evaluation
points that are roots of the Alexander polynomial always take the
second tier, with the kernel dimension computed exactly over the
cyclotomic field first.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, NamedTuple

import mpmath
import numpy as np
import sympy

from .exact_linalg import IntMatrix
from .number_theory import PreconditionError

__all__ = [
    "SeifertMatrix",
    "unknot",
    "trefoil",
    "twisted_double",
    "connected_sum",
    "alexander_polynomial",
    "is_alexander_root",
    "SignatureValue",
    "tristram_levine_signature",
    "signature_profile",
    "parse_knot",
    "knot_spec",
]

TOL_EIGEN_CLEAR = 1e-6
INTERVAL_PRECISIONS = (128, 256, 512, 1024, 2048)


class SeifertMatrix:
    """Integer Seifert matrix of a knot, of even size, with V - V^T unimodular.

    >>> trefoil().matrix.entries
    ((-1, 1), (0, -1))
    >>> twisted_double(1).matrix.entries
    ((0, 2), (1, 0))
    """

    __slots__ = ("matrix", "name")

    def __init__(self, entries: Iterable[Iterable[int]] | IntMatrix, name: str | None = None):
        matrix = entries if isinstance(entries, IntMatrix) else IntMatrix(entries)
        if matrix.rows != matrix.cols:
            raise PreconditionError("a Seifert matrix must be square")
        if matrix.rows % 2:
            raise PreconditionError("a Seifert matrix must have even size")
        if (matrix - matrix.transpose()).det() != 1:
            raise PreconditionError("V - V^T must be unimodular for a Seifert matrix")
        self.matrix = matrix
        self.name = name

    @property
    def size(self) -> int:
        return self.matrix.rows

    @property
    def genus(self) -> int:
        return self.matrix.rows // 2

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SeifertMatrix) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __repr__(self) -> str:
        label = f" name={self.name!r}" if self.name else ""
        return f"SeifertMatrix({list(map(list, self.matrix.entries))!r}{label})"

    def mirror(self) -> "SeifertMatrix":
        """Mirror image: V maps to -V^T.

        >>> trefoil().mirror().matrix.entries
        ((1, 0), (-1, 1))
        """
        return SeifertMatrix(
            -self.matrix.transpose(),
            name=f"mirror({self.name})" if self.name else None,
        )

    def reverse(self) -> "SeifertMatrix":
        """Reversed orientation: V maps to V^T."""
        return SeifertMatrix(
            self.matrix.transpose(),
            name=f"reverse({self.name})" if self.name else None,
        )

    def concordance_inverse(self) -> "SeifertMatrix":
        """Mirror of the reverse: V maps to -V.  K # inverse(K) is slice.

        >>> knot_spec(trefoil().concordance_inverse())
        '-trefoil'
        """
        name = None
        if self.name:
            name = self.name[1:] if self.name.startswith("-") else f"-{self.name}"
        return SeifertMatrix(-self.matrix, name=name)

    def connected_sum(self, other: "SeifertMatrix") -> "SeifertMatrix":
        """Connected sum: block diagonal Seifert matrix."""
        name = f"{self.name}+{other.name}" if self.name and other.name else None
        return SeifertMatrix(self.matrix.block_diag(other.matrix), name=name)


def unknot() -> SeifertMatrix:
    """The unknot: the empty Seifert matrix."""
    return SeifertMatrix((), name="unknot")


def trefoil() -> SeifertMatrix:
    """The right-handed trefoil.

    Its signature function on the unit circle is 0 near 1 and -2 past
    the sixth roots of unity; see `signature_profile`.
    """
    return SeifertMatrix([[-1, 1], [0, -1]], name="trefoil")


def twisted_double(m: int) -> SeifertMatrix:
    """Twisted double building block with m and m + 1 band twists.

    Genus one, Alexander polynomial -m(m+1) + (m^2 + (m+1)^2) t - m(m+1) t^2,
    and identically zero signature function (the associated symmetric
    form is indefinite at every point of the circle).

    >>> alexander_polynomial(twisted_double(1))
    (-2, 5, -2)
    """
    m = int(m)
    return SeifertMatrix([[0, m + 1], [m, 0]], name=f"twisted:{m}")


def connected_sum(*knots: SeifertMatrix) -> SeifertMatrix:
    """Connected sum of any number of knots (empty sum is the unknot)."""
    if not knots:
        return unknot()
    result = knots[0]
    for k in knots[1:]:
        result = result.connected_sum(k)
    return result


def alexander_polynomial(knot: SeifertMatrix) -> tuple[int, ...]:
    """Alexander polynomial det(V - t V^T), coefficients constant first.

    Normalized so that the value at t = 1 is det(V - V^T) = 1.

    >>> alexander_polynomial(trefoil())
    (1, -1, 1)
    """
    return _alexander_from_entries(knot.matrix.entries)


@lru_cache(maxsize=None)
def _alexander_from_entries(entries: tuple) -> tuple[int, ...]:
    V = sympy.Matrix(list(map(list, entries)))
    if not entries:
        return (1,)
    t = sympy.Symbol("t")
    delta = sympy.Poly((V - t * V.T).det(), t)
    coeffs = [int(c) for c in delta.all_coeffs()[::-1]]
    return tuple(coeffs)


def _reduced_point(c: int, den: int) -> tuple[int, int]:
    if den < 1:
        raise PreconditionError("the denominator of a signature point must be positive")
    c %= den
    g = gcd(c, den)
    return c // g, den // g


def is_alexander_root(knot: SeifertMatrix, c: int, den: int) -> bool:
    """Whether exp(2 pi i c / den) is a root of the Alexander polynomial.

    Decided exactly: the point is a root iff the den'-th cyclotomic
    polynomial divides the Alexander polynomial in Z[t], where c/den'
    is c/den in lowest terms.

    >>> is_alexander_root(trefoil(), 1, 6)
    True
    >>> any(is_alexander_root(trefoil(), c, 7) for c in range(7))
    False
    """
    c, den = _reduced_point(c, den)
    if den == 1:
        return False
    return _cyclotomic_divides(alexander_polynomial(knot), den)


@lru_cache(maxsize=None)
def _cyclotomic_divides(delta: tuple[int, ...], den: int) -> bool:
    t = sympy.Symbol("t")
    poly = sympy.Poly(list(delta[::-1]), t)
    phi = sympy.Poly(sympy.cyclotomic_poly(den, t), t)
    return poly.rem(phi).is_zero


class SignatureValue(NamedTuple):
    """A signature together with whether its point is an Alexander root.

    Values at Alexander roots are averages of one-sided limits and can
    be odd; away from roots the signature is always even.
    """

    value: int
    at_alexander_root: bool


def tristram_levine_signature(knot: SeifertMatrix, c: int, den: int) -> SignatureValue:
    """Signature of (1 - w)V + (1 - conj(w))V^T at w = exp(2 pi i c / den).

    >>> [tristram_levine_signature(trefoil(), c, 7).value for c in range(7)]
    [0, 0, -2, -2, -2, -2, 0]
    >>> tristram_levine_signature(trefoil(), 1, 6)
    SignatureValue(value=-1, at_alexander_root=True)
    """
    c, den = _reduced_point(c, den)
    if den == 1 or knot.size == 0:
        return SignatureValue(0, False)
    return _signature_reduced(knot.matrix.entries, c, den)


@lru_cache(maxsize=None)
def _signature_reduced(entries: tuple, c: int, den: int) -> SignatureValue:
    degenerate = _cyclotomic_divides(_alexander_from_entries(entries), den)
    if not degenerate:
        quick = _signature_floating(entries, c, den)
        if quick is not None:
            return SignatureValue(quick, False)
    return _signature_interval(entries, c, den, degenerate)


def _signature_floating(entries: tuple, c: int, den: int) -> int | None:
    """Floating point eigenvalue count, or None when any check fails."""
    d = len(entries)
    V = np.array(entries, dtype=float)
    w = np.exp(2j * np.pi * c / den)
    H = (1 - w) * V + (1 - np.conj(w)) * V.T
    H = (H + H.conj().T) / 2
    eigs = np.linalg.eigvalsh(H)
    pos = int(np.sum(eigs > TOL_EIGEN_CLEAR))
    neg = int(np.sum(eigs < -TOL_EIGEN_CLEAR))
    clear = np.abs(eigs) > TOL_EIGEN_CLEAR
    if not clear.all():
        # an eigenvalue too close to zero for a provably nonsingular
        # form: let the exact tier decide
        return None
    if pos + neg != d or (pos - neg) % 2:
        return None
    return pos - neg


def _signature_interval(entries: tuple, c: int, den: int, degenerate: bool) -> SignatureValue:
    """Exact signature by interval arithmetic on the realified form.

    The Hermitian form A + iB (A symmetric, B antisymmetric) has the
    same inertia as the real symmetric matrix [[A, -B], [B, A]] with
    every eigenvalue doubled.  Its characteristic polynomial has all
    roots real, so Descartes' rule counts the positive and the negative
    ones exactly once the coefficient signs are resolved; interval
    arithmetic certifies the signs, with precision raised until every
    check passes.
    """
    nullity = _cyclotomic_nullity(entries, den) if degenerate else 0
    assert degenerate == (nullity > 0)
    d = len(entries)
    V = IntMatrix(entries)
    A0 = V + V.transpose()
    B0 = V.transpose() - V
    zeros_expected = 2 * nullity
    iv = mpmath.iv
    saved = iv.prec
    try:
        for prec in INTERVAL_PRECISIONS:
            iv.prec = prec
            theta = 2 * iv.pi * c / den
            a = 1 - iv.cos(theta)
            s = iv.sin(theta)
            R = [[a * A0.entries[i][j] for j in range(d)] + [-s * B0.entries[i][j] for j in range(d)] for i in range(d)]
            R += [[s * B0.entries[i][j] for j in range(d)] + [a * A0.entries[i][j] for j in range(d)] for i in range(d)]
            coeffs = _charpoly_interval(R)
            counts = _descartes_counts(coeffs, zeros_expected)
            if counts is None:
                continue
            pos, neg = counts
            if pos + neg + zeros_expected != 2 * d or pos % 2 or neg % 2:
                continue
            return SignatureValue((pos - neg) // 2, degenerate)
    finally:
        iv.prec = saved
    raise RuntimeError(
        f"interval signature did not converge at point {c}/{den} "
        f"up to {INTERVAL_PRECISIONS[-1]} bits"
    )


def _charpoly_interval(R: list) -> list:
    """Characteristic polynomial of an interval matrix by Faddeev-LeVerrier.

    Returns coefficients [1, c1, ..., cn] of x^n + c1 x^(n-1) + ... + cn.
    """
    iv = mpmath.iv
    n = len(R)
    one, zero = iv.mpf(1), iv.mpf(0)
    M = [[one if i == j else zero for j in range(n)] for i in range(n)]
    coeffs = [one]
    for k in range(1, n + 1):
        RM = [
            [sum((R[i][l] * M[l][j] for l in range(n)), zero) for j in range(n)]
            for i in range(n)
        ]
        ck = -sum((RM[i][i] for i in range(n)), zero) / k
        coeffs.append(ck)
        M = [[RM[i][j] + (ck if i == j else zero) for j in range(n)] for i in range(n)]
    return coeffs


def _interval_sign(x) -> int | None:
    if x.a > 0:
        return 1
    if x.b < 0:
        return -1
    return None


def _descartes_counts(coeffs: list, zeros_expected: int) -> tuple[int, int] | None:
    """Positive and negative root counts of a real-rooted polynomial.

    `coeffs` runs from the (exact) leading 1 down to the constant term;
    exactly `zeros_expected` roots are known to be zero.  Returns None
    when the interval coefficients are too wide to certify the answer.

    Sign variations are exact for real-rooted polynomials.  A single
    undetermined coefficient flanked by certified coefficients of
    opposite signs contributes the same variation count whatever its
    value, so it is skipped; any other ambiguity asks for more
    precision.  Two adjacent interior coefficients of a real-rooted
    polynomial with nonzero constant term cannot both vanish, so the
    escalation always terminates once the precision resolves every
    mathematically nonzero coefficient.
    """
    signs = [_interval_sign(x) for x in coeffs]
    if zeros_expected:
        tail = signs[-zeros_expected:]
        if any(s is not None for s in tail):
            raise RuntimeError(
                "a certified nonzero coefficient contradicts the exact kernel dimension"
            )
        signs = signs[:-zeros_expected]
    if signs[-1] is None:
        return None

    def variations(seq: list) -> int | None:
        known = [(i, s) for i, s in enumerate(seq) if s is not None]
        # every undetermined coefficient must sit alone between
        # determined neighbors of opposite sign
        for idx, s in enumerate(seq):
            if s is None:
                if idx + 1 >= len(seq) or seq[idx + 1] is None or idx == 0:
                    return None
                if seq[idx - 1] is None or seq[idx - 1] == seq[idx + 1]:
                    return None
        count = 0
        for (_, s1), (_, s2) in zip(known, known[1:]):
            if s1 != s2:
                count += 1
        return count

    degree = len(signs) - 1
    pos = variations(signs)
    neg = variations([s if (degree - i) % 2 == 0 else (None if s is None else -s) for i, s in enumerate(signs)])
    if pos is None or neg is None:
        return None
    return pos, neg


def _cyclotomic_nullity(entries: tuple, den: int) -> int:
    """Exact nullity of V^T - w V over Q(w), w a primitive den-th root of unity.

    The Hermitian signature form at w equals (1 - conj(w)) (V^T - w V),
    so this is the number of zero eigenvalues at the point.  Computed
    by Gaussian elimination over the field Q[t]/(Phi_den) with exact
    rational coefficients.
    """
    t = sympy.Symbol("t")
    phi = [int(x) for x in sympy.Poly(sympy.cyclotomic_poly(den, t), t).all_coeffs()]
    deg = len(phi) - 1

    def reduce(poly: list) -> tuple:
        poly = list(poly)
        while len(poly) > deg:
            lead = poly[0]
            if lead:
                for i in range(1, len(phi)):
                    poly[i] -= lead * phi[i]
            poly.pop(0)
        poly = [Fraction(0)] * (deg - len(poly)) + [Fraction(x) for x in poly]
        return tuple(poly)

    def mul(u: tuple, v: tuple) -> tuple:
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        prod[i + j] += a * b
        return reduce(prod)

    def inv(u: tuple) -> tuple:
        # extended Euclid in Q[t] for gcd(u, phi) = 1
        def norm(p):
            while p and not p[0]:
                p = p[1:]
            return list(p)

        def polydiv(num, div):
            num = norm(num)
            div = norm(div)
            q = []
            while len(num) >= len(div) and num:
                f = num[0] / div[0]
                q.append(f)
                num = [a - f * b for a, b in zip(num, div + [Fraction(0)] * len(num))][1:]
                num = [x for x in num]
            return q, norm(num)

        r0, r1 = [Fraction(x) for x in phi], norm(u)
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = polydiv(r0, r1)
            # s_next = s0 - q * s1
            qs = [Fraction(0)] * (len(q) + len(s1) - 1) if q and s1 else []
            for i, a in enumerate(q):
                for j, b in enumerate(s1):
                    qs[i + j] += a * b
            width = max(len(s0), len(qs))
            s_next = [
                (s0[i - (width - len(s0))] if i >= width - len(s0) else Fraction(0))
                - (qs[i - (width - len(qs))] if i >= width - len(qs) else Fraction(0))
                for i in range(width)
            ]
            r0, r1 = r1, r
            s0, s1 = s1, s_next
        if len(r0) != 1:
            raise RuntimeError("element is not invertible in the cyclotomic field")
        c = r0[0]
        return reduce([x / c for x in s0])

    d = len(entries)
    zero = reduce([])
    rows = []
    for i in range(d):
        row = []
        for j in range(d):
            # constant term V^T[i][j], t-coefficient -V[i][j]
            row.append(reduce([Fraction(-entries[i][j]), Fraction(entries[j][i])]))
        rows.append(row)

    rank = 0
    col = 0
    while col < d and rank < d:
        pivot = next((r for r in range(rank, d) if rows[r][col] != zero), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pinv = inv(rows[rank][col])
        rows[rank] = [mul(pinv, x) for x in rows[rank]]
        for r in range(d):
            if r != rank and rows[r][col] != zero:
                f = rows[r][col]
                rows[r] = [
                    tuple(a - b for a, b in zip(x, mul(f, y)))
                    for x, y in zip(rows[r], rows[rank])
                ]
        rank += 1
        col += 1
    return d - rank


def signature_profile(knot: SeifertMatrix, den: int) -> tuple[SignatureValue, ...]:
    """Signature values at c/den for c = 0, ..., den - 1.

    >>> [v.value for v in signature_profile(trefoil().mirror(), 7)]
    [0, 0, 2, 2, 2, 2, 0]
    """
    return tuple(tristram_levine_signature(knot, c, den) for c in range(den))


def parse_knot(spec: str) -> SeifertMatrix:
    """Build a knot from a spec string.

    Grammar: `unknot`, `trefoil`, `twisted:m` (integer m), a JSON array
    of Seifert matrix rows, `@path` for a JSON file holding such rows,
    a leading `-` for the concordance inverse, and `+` to join
    connected summands.

    >>> parse_knot("-trefoil").matrix.entries
    ((1, -1), (0, 1))
    >>> parse_knot("twisted:2+trefoil").size
    4
    """
    spec = spec.strip()
    parts = _split_summands(spec)
    if len(parts) > 1:
        return connected_sum(*(parse_knot(p) for p in parts))
    if spec.startswith("-"):
        return parse_knot(spec[1:]).concordance_inverse()
    if spec == "unknot":
        return unknot()
    if spec == "trefoil":
        return trefoil()
    if spec.startswith("twisted:"):
        try:
            m = int(spec.split(":", 1)[1])
        except ValueError as exc:
            raise PreconditionError(f"bad twist count in knot spec {spec!r}") from exc
        return twisted_double(m)
    if spec.startswith("@"):
        with open(spec[1:], "r", encoding="utf-8") as fh:
            rows = json.load(fh)
        return SeifertMatrix(rows)
    if spec.startswith("["):
        return SeifertMatrix(json.loads(spec))
    raise PreconditionError(f"cannot parse knot spec {spec!r}")


def _split_summands(spec: str) -> list[str]:
    parts = []
    depth = 0
    current = []
    for ch in spec:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "+" and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return [p.strip() for p in parts]


def knot_spec(knot: SeifertMatrix) -> str:
    """A spec string that parses back to an equal knot.

    The stored name is used when it round-trips; otherwise the raw rows
    are emitted as JSON.
    """
    if knot.name:
        try:
            if parse_knot(knot.name) == knot:
                return knot.name
        except (PreconditionError, OSError, json.JSONDecodeError):
            pass
    return json.dumps([list(r) for r in knot.matrix.entries], separators=(",", ":"))
