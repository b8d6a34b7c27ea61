"""Cyclic branched covers, deck transformations, and p-torsion linking forms.

For a knot with Seifert matrix V, the q-fold cyclic branched cover M_q
has first homology presented by Gamma^q - (Gamma - I)^q, where
Gamma = V (V - V^T)^(-1).  For prime power q this group is finite and
carries the linking form together with the deck transformation of
order q.

The twisted doubles from `knotorder.seifert` have
H_1(M_q) = (Z/a)^2 with a = (m+1)^q - m^q.  When an odd prime p divides
a exactly once, the p-torsion is (Z/p)^2, spanned by two lifts on which
the deck transformation acts by the eigenvalues (m+1)/m and m/(m+1)
mod p.  `build_p_torsion` assembles, for a connected sum of such
blocks, the full p-torsion as an F_p vector space with its deck action
(diagonalized) and its linking form, which is the input to the
metabolizer search in `knotorder.obstruction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .exact_linalg import FpMatrix, IntMatrix, smith_normal_form
from .number_theory import PreconditionError, exponent_of, is_prime, is_prime_power
from .seifert import SeifertMatrix, trefoil, twisted_double

__all__ = [
    "LIFT_LABELS",
    "EigenvalueCollisionError",
    "presentation_matrix",
    "CoverHomology",
    "cover_homology",
    "twisted_cover_order",
    "DeckAction",
    "deck_action",
    "PTorsionModule",
    "build_p_torsion",
]

# the four lifts of pattern curves that span the p-torsion of one
# twisted double summand: two from the block itself, two from its
# paired dual
LIFT_LABELS = ("L1", "L2", "L1p", "L2p")


class EigenvalueCollisionError(PreconditionError):
    """The two deck eigenvalues coincide mod p, so the eigenspace
    splitting that the metabolizer analysis needs does not exist."""


def _check_cover_degree(q: int) -> None:
    if q < 2 or not is_prime_power(q):
        raise PreconditionError(
            f"cover degree {q} must be a prime power at least 2 "
            "(homology of other cyclic covers need not be finite)"
        )


def presentation_matrix(knot: SeifertMatrix, q: int) -> IntMatrix:
    """Presentation matrix Gamma^q - (Gamma - I)^q of H_1 of the q-fold cover.

    >>> presentation_matrix(twisted_double(1), 3).entries
    ((7, 0), (0, 7))
    """
    _check_cover_degree(q)
    V = knot.matrix
    gamma = V * (V - V.transpose()).inverse_unimodular()
    eye = IntMatrix.identity(V.rows)
    return gamma ** q - (gamma - eye) ** q


@dataclass(frozen=True)
class CoverHomology:
    """First homology of a cyclic branched cover.

    invariant_factors: the nontrivial cyclic orders d_1 | d_2 | ...
    order: the size of the group (the product of the factors).
    """

    q: int
    invariant_factors: tuple[int, ...]
    order: int


def cover_homology(knot: SeifertMatrix, q: int) -> CoverHomology:
    """H_1 of the q-fold cyclic branched cover, q a prime power.

    >>> cover_homology(trefoil(), 2).invariant_factors
    (3,)
    >>> cover_homology(trefoil(), 3).invariant_factors
    (2, 2)
    >>> cover_homology(twisted_double(2), 3).invariant_factors
    (19, 19)
    """
    presentation = presentation_matrix(knot, q)
    factors = smith_normal_form(presentation).nontrivial
    assert presentation.det() != 0, "prime power covers have finite homology"
    return CoverHomology(q=q, invariant_factors=factors, order=prod(factors))


def twisted_cover_order(m: int, q: int) -> int:
    """The number a with H_1(M_q) = (Z/a)^2 for the twisted double block.

    Equals (m+1)^q - m^q for m >= 0; for q = 3 this is the cubic gap
    3m^2 + 3m + 1 central to the prime selection in
    `knotorder.number_theory`.

    >>> twisted_cover_order(1, 3), twisted_cover_order(2, 3), twisted_cover_order(1, 5)
    (7, 19, 31)
    """
    _check_cover_degree(q)
    return abs((m + 1) ** q - m ** q)


@dataclass(frozen=True)
class DeckAction:
    """Eigenvalues of the deck transformation on the p-torsion of the
    q-fold cover of one twisted double block.

    lam_plus acts on the lifts L1 and L2p, lam_minus on L2 and L1p;
    they are mutually inverse q-th roots of unity mod p.
    """

    p: int
    q: int
    m: int
    lam_plus: int
    lam_minus: int


def deck_action(m: int, q: int, p: int) -> DeckAction:
    """Deck transformation eigenvalues (m+1)/m and m/(m+1) mod p.

    Requires p to be an odd prime dividing (m+1)^q - m^q, which makes
    both eigenvalues q-th roots of unity.  Raises
    EigenvalueCollisionError when they coincide (always the case for
    q = 2, since p | 2m + 1 forces both to be -1).

    >>> deck_action(1, 3, 7)
    DeckAction(p=7, q=3, m=1, lam_plus=2, lam_minus=4)
    >>> deck_action(5, 3, 13).lam_plus
    9
    """
    _check_cover_degree(q)
    if not is_prime(p) or p == 2:
        raise PreconditionError(f"{p} must be an odd prime")
    a = (m + 1) ** q - m ** q
    if a % p:
        raise PreconditionError(
            f"{p} does not divide the cover order {a} of the block with m = {m}"
        )
    lam_plus = (m + 1) * pow(m, -1, p) % p
    lam_minus = m * pow(m + 1, -1, p) % p
    assert lam_plus * lam_minus % p == 1
    assert pow(lam_plus, q, p) == 1
    if lam_plus == lam_minus:
        raise EigenvalueCollisionError(
            f"deck eigenvalues coincide at {lam_plus} mod {p} for m = {m}, q = {q}; "
            "the dual eigenspace pair degenerates"
        )
    return DeckAction(p=p, q=q, m=m, lam_plus=lam_plus, lam_minus=lam_minus)


@dataclass(frozen=True)
class PTorsionModule:
    """The p-torsion of the cover of a sum of twisted double blocks.

    An F_p space of dimension 4n for n summands, with basis indexed by
    (summand, lift label) in `labels`, the deck transformation acting
    diagonally by `deck_eigenvalues`, and the linking form `form`.
    lam_plus is the deck eigenvalue on the first basis vector; its
    eigenspace is `e_plus_indices`, the inverse eigenvalue's is
    `e_minus_indices`.  The form pairs the two eigenspaces and
    vanishes on each one, which is what drives the metabolizer
    classification.
    """

    p: int
    q: int
    unit: int
    summands: tuple[tuple[int, bool], ...]
    labels: tuple[tuple[int, str], ...]
    deck_eigenvalues: tuple[int, ...]
    lam_plus: int
    lam_minus: int
    form: FpMatrix

    @property
    def n(self) -> int:
        return len(self.summands)

    @property
    def dim(self) -> int:
        return 4 * self.n

    @property
    def e_plus_indices(self) -> tuple[int, ...]:
        return tuple(i for i, e in enumerate(self.deck_eigenvalues) if e == self.lam_plus)

    @property
    def e_minus_indices(self) -> tuple[int, ...]:
        return tuple(i for i, e in enumerate(self.deck_eigenvalues) if e == self.lam_minus)


def build_p_torsion(
    summands, q: int, p: int, unit: int = 1
) -> PTorsionModule:
    """Assemble the p-torsion module of a connected sum of twisted doubles.

    `summands` is a sequence of (m, mirrored) pairs.  Each block must
    have cover order divisible by p exactly once (so its p-torsion is
    (Z/p)^2 and the linking form reduces cleanly), and all blocks must
    share the same unordered pair of deck eigenvalues so the global
    eigenspace splitting exists.  `unit` twists the linking form by a
    global unit of F_p; the certified conclusions do not depend on it.

    A mirrored block carries the negated linking form and the opposite
    eigenvalue assignment on its lifts.

    >>> mod = build_p_torsion([(1, False)], 3, 7)
    >>> mod.form.entries
    ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 6), (0, 0, 6, 0))
    >>> mod.deck_eigenvalues
    (2, 4, 4, 2)
    """
    summands = tuple((int(m), bool(mirrored)) for m, mirrored in summands)
    if not summands:
        raise PreconditionError("at least one summand is needed")
    if unit % p == 0:
        raise PreconditionError(f"unit must be nonzero mod {p}")
    unit %= p

    actions = []
    for m, _ in summands:
        a = twisted_cover_order(m, q)
        e = exponent_of(p, a)
        if e != 1:
            raise PreconditionError(
                f"{p} divides the cover order {a} of the block with m = {m} "
                f"with exponent {e}, not 1; the p-torsion is not (Z/p)^2"
            )
        actions.append(deck_action(m, q, p))
    pairs = {frozenset((act.lam_plus, act.lam_minus)) for act in actions}
    if len(pairs) != 1:
        raise PreconditionError(
            "summands do not share a deck eigenvalue pair: "
            + ", ".join(f"m={act.m}: ({act.lam_plus}, {act.lam_minus})" for act in actions)
        )

    labels = []
    eigenvalues = []
    n = len(summands)
    entries = [[0] * (4 * n) for _ in range(4 * n)]
    for i, ((m, mirrored), act) in enumerate(zip(summands, actions)):
        lp, lm = (act.lam_minus, act.lam_plus) if mirrored else (act.lam_plus, act.lam_minus)
        labels += [(i, lab) for lab in LIFT_LABELS]
        eigenvalues += [lp, lm, lm, lp]
        u = (-unit if mirrored else unit) % p
        base = 4 * i
        entries[base][base + 1] = entries[base + 1][base] = u
        entries[base + 2][base + 3] = entries[base + 3][base + 2] = (-u) % p
    form = FpMatrix(p, entries, cols=4 * n)

    lam_plus = eigenvalues[0]
    lam_minus = pow(lam_plus, -1, p)
    assert lam_minus != lam_plus
    assert form.entries == form.transpose().entries
    for i in range(4 * n):
        for j in range(4 * n):
            if form.entries[i][j]:
                assert eigenvalues[i] * eigenvalues[j] % p == 1, "form must be deck invariant"

    return PTorsionModule(
        p=p,
        q=q,
        unit=unit,
        summands=summands,
        labels=tuple(labels),
        deck_eigenvalues=tuple(eigenvalues),
        lam_plus=lam_plus,
        lam_minus=lam_minus,
        form=form,
    )
