"""Satellite summands, characters, and companion signature sums.

The knots certified by this package are connected sums of satellite
blocks.  Each block is a twisted double (the pattern) with companion
knots tied along the pattern curves; in the q-fold branched cover the
curves lift to the four basis curves of the block's p-torsion, labelled
L1, L2, L1p, L2p.  A `Summand` records the twist parameter m, whether
the block is mirrored, and the companion attached over each lift.

The amphicheiral template attaches a companion J over L1 and L2p and
its concordance inverse over L2 and L1p, which makes the block
negative amphicheiral with the deck symmetry exchanging the two pairs.

A character of the p-torsion (a homomorphism to Z/p) evaluates on each
lift; the obstruction attached to a character is the sum over lifts,
with nonzero character value c and deck eigenvalue lam, of the
companion's Tristram-Levine signatures along the orbit
c, lam c, lam^2 c, ... of the deck action (`cg_delta`).  Vanishing of
these sums on some metabolizer is a necessary condition for sliceness,
which `knotorder.obstruction` turns into certificates.
"""

from __future__ import annotations

from dataclasses import dataclass

from .branched_cover import LIFT_LABELS, PTorsionModule
from .number_theory import PreconditionError, is_prime
from .seifert import (
    SeifertMatrix,
    knot_spec,
    parse_knot,
    trefoil,
    tristram_levine_signature,
)

__all__ = [
    "LIFT_LABELS",
    "Summand",
    "amphicheiral_block",
    "mirror_summand",
    "SatelliteSum",
    "amphicheiral_sum",
    "mirror_sum",
    "Character",
    "character_from_vector",
    "cg_delta",
    "obstruction_sum",
]


def _canonical_spec(spec: str) -> str:
    return knot_spec(parse_knot(spec))


def _negate_spec(spec: str) -> str:
    return spec[1:] if spec.startswith("-") else f"-{spec}"


@dataclass(frozen=True)
class Summand:
    """One satellite block: twist parameter, mirroring, and companions.

    `companions` holds one knot spec per lift, aligned with
    LIFT_LABELS = (L1, L2, L1p, L2p).  Specs are canonicalized at
    construction so that a summand is self-contained (file references
    are resolved to explicit Seifert rows).
    """

    m: int
    mirrored: bool
    companions: tuple[str, str, str, str]

    def __post_init__(self):
        if len(self.companions) != len(LIFT_LABELS):
            raise PreconditionError(
                f"a summand needs {len(LIFT_LABELS)} companions, one per lift"
            )
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "mirrored", bool(self.mirrored))
        object.__setattr__(
            self, "companions", tuple(_canonical_spec(c) for c in self.companions)
        )

    def companion_knot(self, label: str) -> SeifertMatrix:
        return parse_knot(self.companions[LIFT_LABELS.index(label)])

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "mirrored": self.mirrored,
            "companions": dict(zip(LIFT_LABELS, self.companions)),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Summand":
        companions = data["companions"]
        return cls(
            m=data["m"],
            mirrored=data["mirrored"],
            companions=tuple(companions[label] for label in LIFT_LABELS),
        )


def amphicheiral_block(m: int, companion: str = "trefoil") -> Summand:
    """The amphicheiral satellite block: J over L1 and L2p, its
    concordance inverse over L2 and L1p.

    >>> amphicheiral_block(1).companions
    ('trefoil', '-trefoil', '-trefoil', 'trefoil')
    """
    j = _canonical_spec(companion)
    jbar = _negate_spec(j)
    return Summand(m=m, mirrored=False, companions=(j, jbar, jbar, j))


def mirror_summand(summand: Summand) -> Summand:
    """Concordance inverse of a block: mirrored pattern, mirrored companions."""
    return Summand(
        m=summand.m,
        mirrored=not summand.mirrored,
        companions=tuple(_negate_spec(c) for c in summand.companions),
    )


@dataclass(frozen=True)
class SatelliteSum:
    """A connected sum of satellite blocks."""

    summands: tuple[Summand, ...]

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(self.summands))
        if not self.summands:
            raise PreconditionError("a satellite sum needs at least one summand")

    @property
    def n(self) -> int:
        return len(self.summands)

    def block_parameters(self) -> tuple[tuple[int, bool], ...]:
        return tuple((s.m, s.mirrored) for s in self.summands)

    def to_dict(self) -> list:
        return [s.to_dict() for s in self.summands]

    @classmethod
    def from_dict(cls, data: list) -> "SatelliteSum":
        return cls(tuple(Summand.from_dict(d) for d in data))


def amphicheiral_sum(m: int, companion: str, copies: int) -> SatelliteSum:
    """`copies` parallel copies of the amphicheiral block (m, companion).

    >>> amphicheiral_sum(1, "trefoil", 2).n
    2
    """
    if copies < 1:
        raise PreconditionError("the number of copies must be positive")
    return SatelliteSum((amphicheiral_block(m, companion),) * copies)


def mirror_sum(sat: SatelliteSum) -> SatelliteSum:
    """Concordance inverse of a satellite sum, blockwise."""
    return SatelliteSum(tuple(mirror_summand(s) for s in sat.summands))


@dataclass(frozen=True)
class Character:
    """A homomorphism from the p-torsion to Z/p, given by its values on
    the lift basis."""

    p: int
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(v % self.p for v in self.values))

    @property
    def is_trivial(self) -> bool:
        return not any(self.values)


def character_from_vector(module: PTorsionModule, vector) -> Character:
    """The character of pairing with `vector` under the linking form."""
    return Character(module.p, module.form.mat_vec(tuple(vector)))


def cg_delta(J: SeifertMatrix, c: int, lam: int, q: int, p: int) -> int:
    """Companion signature sum along a deck orbit.

    Adds the Tristram-Levine signatures of J at the points
    (lam^j c)/p for j = 0, ..., q-1.  Depends only on the orbit of c:
    replacing c by lam*c permutes the terms.  Requires every point to
    avoid the roots of the Alexander polynomial of J, so that each term
    is a certified even integer.

    >>> cg_delta(trefoil(), 1, 2, 3, 7)
    -4
    >>> cg_delta(trefoil(), 3, 2, 3, 7)
    -4
    """
    if p == 2 or not is_prime(p):
        raise PreconditionError(f"{p} must be an odd prime")
    if pow(lam, q, p) != 1 or lam % p == 0:
        raise PreconditionError(f"{lam} is not a q-th root of unity mod {p}")
    total = 0
    for j in range(q):
        cj = c * pow(lam, j, p) % p
        value = tristram_levine_signature(J, cj, p)
        if value.at_alexander_root:
            raise PreconditionError(
                f"the companion has an Alexander root at {cj}/{p}; "
                "signature sums are only certified at nondegenerate points"
            )
        total += value.value
    return total


def obstruction_sum(
    sat: SatelliteSum, chi: Character, module: PTorsionModule
) -> tuple[int, int]:
    """Total companion signature sum of a character, with the count of
    bound-only correction terms.

    Returns (total, corrections): `total` adds `cg_delta` over every
    lift where the character is nonzero, using that lift's companion
    and deck eigenvalue; `corrections` counts one undetermined but
    bounded term per summand, which a slice disc would also contribute.
    The trivial character always gives total 0.
    """
    if module.summands != sat.block_parameters():
        raise PreconditionError(
            "the module was built for different blocks than this satellite sum"
        )
    if chi.p != module.p or len(chi.values) != module.dim:
        raise PreconditionError("character and module do not match")
    total = 0
    for i, summand in enumerate(sat.summands):
        for k, label in enumerate(LIFT_LABELS):
            idx = 4 * i + k
            c = chi.values[idx]
            if c == 0:
                continue
            companion = parse_knot(summand.companions[k])
            lam = module.deck_eigenvalues[idx]
            total += cg_delta(companion, c, lam, module.q, module.p)
    return total, sat.n
