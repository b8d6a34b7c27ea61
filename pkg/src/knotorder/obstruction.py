"""Metabolizer enumeration, sliceness obstruction, and certificates.

A slice disc for a knot in this family would force the p-torsion of the
branched cover to contain a metabolizer: a deck invariant,
self-annihilating subspace of half the dimension, on which all linking
characters give vanishing (or bounded) companion signature sums.  The
deck action has exactly two eigenvalues and the linking form pairs the
two eigenspaces, so every metabolizer splits as A + Ann(A) with A an
arbitrary subspace of the plus eigenspace and Ann(A) its annihilator in
the minus eigenspace.  That makes the metabolizer list finite,
canonical, and enumerable.

`certify_nonslice` checks every metabolizer: it searches all characters
vanishing on the metabolizer (these are exactly the characters of
vectors inside it) for one whose companion signature total exceeds what
a slice disc would allow, and records a witness.  If every metabolizer
is violated the knot is not slice.  `certify_infinite_order` adds the
sign structure of the orbit sums, which upgrades the finitely many
checks to an argument for every multiple of the knot at once, and
`independence_certificate` localizes a linear combination of blocks at
one prime to show the combination is not slice.

Certificates are plain dictionaries with a canonical JSON form (sorted
keys, no whitespace, every integer rendered as a decimal string), so
reruns are byte-identical and `verify_certificate` can recompute and
compare.
"""

from __future__ import annotations

import itertools
import json
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .branched_cover import PTorsionModule, build_p_torsion, twisted_cover_order
from .exact_linalg import (
    FpMatrix,
    SubspaceBudgetError,
    enumerate_subspaces,
    gaussian_binomial,
    nullspace,
    rref_basis,
    subspace_budget,
)
from .number_theory import PreconditionError, exponent_of, is_prime
from .satellite import (
    LIFT_LABELS,
    SatelliteSum,
    amphicheiral_sum,
    cg_delta,
    mirror_summand,
    amphicheiral_block,
)
from .seifert import parse_knot, tristram_levine_signature

__all__ = [
    "PrimeCollisionError",
    "Metabolizer",
    "metabolizer_count",
    "enumerate_metabolizers",
    "site_delta_table",
    "find_witness_vector",
    "MetabolizerRecord",
    "ObstructionCertificate",
    "certify_nonslice",
    "certify_infinite_order",
    "independence_certificate",
    "canonical_json",
    "write_certificate",
    "load_certificate",
    "verify_certificate",
]

VERDICT_NONSLICE = "NONSLICE"
VERDICT_INCONCLUSIVE = "INCONCLUSIVE"
VERDICT_INFINITE_ORDER = "INFINITE_ORDER"

SCHEMA_VERSION = 1


class PrimeCollisionError(PreconditionError):
    """The chosen prime divides the cover order of more than one block
    in an independence combination, so the reduction does not isolate a
    single coefficient."""


@dataclass(frozen=True)
class Metabolizer:
    """A deck invariant self-annihilating half-dimensional subspace.

    basis: canonical (RREF) rows spanning all of H.
    a_basis: the rows of H inside the plus eigenspace.
    b_basis: the rows inside the minus eigenspace (the annihilator of
    the plus part).
    """

    basis: FpMatrix
    a_basis: FpMatrix
    b_basis: FpMatrix


def metabolizer_count(module: PTorsionModule) -> int:
    """How many metabolizers the module has: one per subspace of the
    plus eigenspace.

    >>> metabolizer_count(build_p_torsion([(1, False)], 3, 7))
    10
    """
    half = 2 * module.n
    return sum(gaussian_binomial(half, k, module.p) for k in range(half + 1))


def _embed_rows(coords: FpMatrix, indices: tuple[int, ...], dim: int) -> FpMatrix:
    rows = []
    for row in coords.entries:
        ambient = [0] * dim
        for value, idx in zip(row, indices):
            ambient[idx] = value
        rows.append(ambient)
    return FpMatrix(coords.p, rows, cols=dim)


def enumerate_metabolizers(
    module: PTorsionModule, budget: int | None = None
) -> Iterator[Metabolizer]:
    """All metabolizers, in a canonical deterministic order.

    For each dimension k and each k-dimensional subspace A of the plus
    eigenspace, the metabolizer is A + Ann(A) with the annihilator
    taken inside the minus eigenspace; it always has half the dimension
    of the module.  Raises SubspaceBudgetError up front if the count
    exceeds the budget.
    """
    limit = subspace_budget(budget)
    total = metabolizer_count(module)
    if total > limit:
        raise SubspaceBudgetError(
            f"{total} metabolizers exceed the budget {limit}; raise it explicitly "
            "or via the environment"
        )
    p = module.p
    half = 2 * module.n
    dim = module.dim
    plus = module.e_plus_indices
    minus = module.e_minus_indices
    pairing = FpMatrix(
        p, [[module.form.entries[i][j] for j in minus] for i in plus], cols=half
    )
    for k in range(half + 1):
        for a_coords in enumerate_subspaces(half, k, p, budget=limit):
            b_coords = nullspace(a_coords @ pairing) if a_coords.rows else rref_basis(
                FpMatrix.identity(p, half)
            )
            a_amb = _embed_rows(a_coords, plus, dim)
            b_amb = _embed_rows(b_coords, minus, dim)
            h = rref_basis(a_amb.stack(b_amb))
            assert h.rows == half, "a metabolizer has half the module dimension"
            product = h @ module.form @ h.transpose()
            assert not any(
                any(row) for row in product.entries
            ), "a metabolizer annihilates itself under the linking form"
            yield Metabolizer(basis=h, a_basis=a_amb, b_basis=b_amb)


def site_delta_table(module: PTorsionModule, sat: SatelliteSum) -> tuple[tuple[int, ...], ...]:
    """Orbit signature sums per lift: entry [idx][c] is the companion
    signature sum at the lift `idx` for character value c."""
    if module.summands != sat.block_parameters():
        raise PreconditionError(
            "the module was built for different blocks than this satellite sum"
        )
    p, q = module.p, module.q
    table = []
    for i, summand in enumerate(sat.summands):
        for k in range(len(LIFT_LABELS)):
            idx = 4 * i + k
            companion = parse_knot(summand.companions[k])
            lam = module.deck_eigenvalues[idx]
            table.append(
                tuple(0 if c == 0 else cg_delta(companion, c, lam, q, p) for c in range(p))
            )
    return tuple(table)


def _candidate_matrix(p: int, rank: int) -> np.ndarray:
    """All coefficient vectors over F_p in counting order, nonzero ones only."""
    grid = np.array(
        list(itertools.product(range(p), repeat=rank)), dtype=np.int64
    )
    return grid[1:]


def find_witness_vector(
    module: PTorsionModule,
    metab: Metabolizer,
    sat: SatelliteSum,
    correction_bound: int = 0,
) -> tuple[tuple[int, ...], int, int] | None:
    """A violating vector in the metabolizer, or None.

    Searches every nonzero vector v of the metabolizer; its character
    is the linking pairing with v, and v violates when the companion
    signature total exceeds `correction_bound` per summand in absolute
    value.  Among violating vectors the witness is the one whose
    character touches the most lifts, with ties broken by the
    lexicographically smallest vector.  Returns (vector, total,
    touched_sites) or None when the metabolizer admits no violation.
    """
    table = site_delta_table(module, sat)
    return _search_witness(module, metab, table, sat.n * correction_bound)


def _search_witness(
    module: PTorsionModule,
    metab: Metabolizer,
    table: tuple[tuple[int, ...], ...],
    allowance: int,
) -> tuple[tuple[int, ...], int, int] | None:
    p = module.p
    basis = np.array([list(r) for r in metab.basis.entries], dtype=np.int64)
    form = np.array([list(r) for r in module.form.entries], dtype=np.int64)
    coeffs = _candidate_matrix(p, basis.shape[0])
    vectors = coeffs @ basis % p
    chars = vectors @ form % p
    deltas = np.array([list(row) for row in table], dtype=np.int64)
    totals = np.take_along_axis(deltas.T, chars, axis=0).sum(axis=1)
    sites = np.count_nonzero(chars, axis=1)
    violating = np.abs(totals) > allowance
    if not violating.any():
        return None
    best = None
    for i in np.flatnonzero(violating):
        key = (-int(sites[i]), tuple(int(x) for x in vectors[i]))
        if best is None or key < best[0]:
            best = (key, i)
    i = best[1]
    return (
        tuple(int(x) for x in vectors[i]),
        int(totals[i]),
        int(sites[i]),
    )


@dataclass(frozen=True)
class MetabolizerRecord:
    """The outcome of checking one metabolizer.

    `signature_total` is the certified companion signature sum of the
    witness character; `unknown_terms` counts the correction terms
    (one per summand) that the obstruction bounds rather than computes,
    so the record documents both the computed and the bounded part.
    """

    h_basis: tuple[tuple[int, ...], ...]
    witness: tuple[int, ...] | None
    character: tuple[int, ...] | None
    sites: tuple[dict, ...]
    signature_total: int | None
    unknown_terms: int
    violates: bool

    def to_dict(self) -> dict:
        return {
            "h_basis": [list(r) for r in self.h_basis],
            "witness": list(self.witness) if self.witness is not None else None,
            "character": list(self.character) if self.character is not None else None,
            "sites": list(self.sites),
            "signature_total": self.signature_total,
            "unknown_terms": self.unknown_terms,
            "violates": self.violates,
        }


def _site_terms(
    module: PTorsionModule, sat: SatelliteSum, character: tuple[int, ...]
) -> tuple[list[dict], int]:
    p, q = module.p, module.q
    terms = []
    total = 0
    for idx, c in enumerate(character):
        if c == 0:
            continue
        summand_index, label = module.labels[idx]
        spec = sat.summands[summand_index].companions[LIFT_LABELS.index(label)]
        companion = parse_knot(spec)
        lam = module.deck_eigenvalues[idx]
        orbit = []
        value = c
        for _ in range(q):
            orbit.append(value)
            value = value * lam % p
        signatures = [tristram_levine_signature(companion, cj, p).value for cj in orbit]
        delta = sum(signatures)
        assert delta == cg_delta(companion, c, lam, q, p)
        total += delta
        terms.append(
            {
                "index": idx,
                "summand": summand_index,
                "lift": label,
                "companion": spec,
                "character_value": c,
                "eigenvalue": lam,
                "orbit": orbit,
                "signatures": signatures,
                "delta": delta,
            }
        )
    return terms, total


def _metabolizer_record(
    module: PTorsionModule,
    sat: SatelliteSum,
    metab: Metabolizer,
    correction_bound: int,
    table: tuple[tuple[int, ...], ...],
) -> MetabolizerRecord:
    found = _search_witness(module, metab, table, sat.n * correction_bound)
    h_basis = metab.basis.entries
    if found is None:
        return MetabolizerRecord(
            h_basis=h_basis,
            witness=None,
            character=None,
            sites=(),
            signature_total=None,
            unknown_terms=sat.n,
            violates=False,
        )
    witness, total, _ = found
    character = module.form.mat_vec(witness)
    terms, direct_total = _site_terms(module, sat, character)
    assert direct_total == total, "site terms must reproduce the table total"
    return MetabolizerRecord(
        h_basis=h_basis,
        witness=witness,
        character=character,
        sites=tuple(terms),
        signature_total=total,
        unknown_terms=sat.n,
        violates=True,
    )


_WORKER_STATE: dict = {}


def _init_worker(module, sat, correction_bound, table):
    _WORKER_STATE["args"] = (module, sat, correction_bound, table)


def _record_worker(metab: Metabolizer) -> MetabolizerRecord:
    module, sat, correction_bound, table = _WORKER_STATE["args"]
    return _metabolizer_record(module, sat, metab, correction_bound, table)


@dataclass(frozen=True)
class ObstructionCertificate:
    """The full metabolizer sweep for one satellite sum at one prime."""

    satellite: SatelliteSum
    p: int
    q: int
    unit: int
    mode: str
    bound: int
    metabolizers: int
    records: tuple[MetabolizerRecord, ...]
    verdict: str
    caveats: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "kind": "obstruction",
            "inputs": {
                "satellite": self.satellite.to_dict(),
                "p": self.p,
                "q": self.q,
                "unit": self.unit,
                "mode": self.mode,
                "bound": self.bound,
            },
            "metabolizers": self.metabolizers,
            "records": [r.to_dict() for r in self.records],
            "verdict": self.verdict,
            "caveats": list(self.caveats),
        }


def _mode_caveats(mode: str, bound: int) -> tuple[str, ...]:
    if mode == "refined":
        return (
            "refined criterion: correction terms vanish for this satellite "
            "template, so any nonzero certified signature total violates "
            "sliceness",
        )
    return (
        f"bounded criterion: each correction term (one per summand) is "
        f"assumed bounded by {bound} in absolute value; a sum of n blocks "
        f"is violated only when the certified total exceeds n * {bound}",
    )


def certify_nonslice(
    sat: SatelliteSum,
    p: int,
    q: int = 3,
    mode: str = "refined",
    bound: int = 0,
    unit: int = 1,
    jobs: int = 1,
    budget: int | None = None,
) -> ObstructionCertificate:
    """Check every metabolizer of the satellite sum's p-torsion.

    mode "refined" demands a nonzero certified signature total on every
    metabolizer; mode "bounded" demands the total exceed n * bound,
    treating `bound` as a cap on each of the n undetermined correction
    terms.  The verdict is NONSLICE when every metabolizer is violated
    and INCONCLUSIVE otherwise; INCONCLUSIVE is a computed outcome, not
    an error.  `jobs` parallelizes across metabolizers without changing
    the result.
    """
    if mode not in ("refined", "bounded"):
        raise PreconditionError(f"unknown mode {mode!r}: use 'refined' or 'bounded'")
    if mode == "refined" and bound != 0:
        raise PreconditionError("the refined mode fixes the correction bound at 0")
    if bound < 0:
        raise PreconditionError("the correction bound cannot be negative")
    if jobs < 1:
        raise PreconditionError("jobs must be at least 1")
    module = build_p_torsion(sat.block_parameters(), q, p, unit=unit)
    table = site_delta_table(module, sat)
    metabs = list(enumerate_metabolizers(module, budget=budget))
    if jobs == 1 or len(metabs) < 4:
        records = [
            _metabolizer_record(module, sat, metab, bound, table) for metab in metabs
        ]
    else:
        chunk = max(1, len(metabs) // (jobs * 8))
        with ProcessPoolExecutor(
            max_workers=jobs,
            initializer=_init_worker,
            initargs=(module, sat, bound, table),
        ) as pool:
            records = list(pool.map(_record_worker, metabs, chunksize=chunk))
    verdict = (
        VERDICT_NONSLICE
        if records and all(r.violates for r in records)
        else VERDICT_INCONCLUSIVE
    )
    return ObstructionCertificate(
        satellite=sat,
        p=p,
        q=q,
        unit=unit,
        mode=mode,
        bound=bound,
        metabolizers=len(metabs),
        records=tuple(records),
        verdict=verdict,
        caveats=_mode_caveats(mode, bound),
    )


@dataclass(frozen=True)
class InfiniteOrderCertificate:
    """Nonsliceness of the first multiples plus the sign structure that
    extends the conclusion to every multiple."""

    m: int
    companion: str
    p: int
    q: int
    unit: int
    mode: str
    bound: int
    max_n: int
    orbit_tables: tuple[dict, ...]
    plus_sign: int
    minus_sign: int
    copies: tuple[ObstructionCertificate, ...]
    verdict: str
    caveats: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "kind": "infinite_order",
            "inputs": {
                "m": self.m,
                "companion": self.companion,
                "p": self.p,
                "q": self.q,
                "unit": self.unit,
                "mode": self.mode,
                "bound": self.bound,
                "max_n": self.max_n,
            },
            "orbit_tables": list(self.orbit_tables),
            "sign_structure": {
                "plus_sites": self.plus_sign,
                "minus_sites": self.minus_sign,
            },
            "copies": [c.to_dict() for c in self.copies],
            "verdict": self.verdict,
            "caveats": list(self.caveats),
        }


def _uniform_sign(values) -> int:
    """1 or -1 when all values share that strict sign, else 0."""
    values = list(values)
    if values and all(v > 0 for v in values):
        return 1
    if values and all(v < 0 for v in values):
        return -1
    return 0


def certify_infinite_order(
    m: int,
    companion: str = "trefoil",
    p: int | None = None,
    q: int = 3,
    max_n: int = 2,
    mode: str = "refined",
    bound: int = 0,
    unit: int = 1,
    jobs: int = 1,
    budget: int | None = None,
) -> InfiniteOrderCertificate:
    """Certify that the amphicheiral satellite knot has infinite order.

    Runs the full metabolizer sweep for 1, ..., max_n parallel copies
    and tabulates the orbit signature sums at each lift.  When the sums
    at plus-eigenspace lifts all share one strict sign and the sums at
    minus-eigenspace lifts all share one strict sign, any metabolizer
    of any number of copies is violated: its plus part A (or, when
    A = 0, the full minus part) supplies a nonzero character supported
    on lifts of a single sign, so the total cannot vanish.  That single
    sign argument certifies every multiple only under the refined
    criterion (correction allowance zero); with a positive bound the
    allowance grows with the number of copies while a one-lift
    character's total does not, so the verdict is then only a lower
    bound on the order from the finite sweeps.
    """
    if p is None:
        raise PreconditionError("an odd prime p is required")
    if max_n < 1:
        raise PreconditionError("max_n must be at least 1")
    base = amphicheiral_sum(m, companion, 1)
    module = build_p_torsion(base.block_parameters(), q, p, unit=unit)
    table = site_delta_table(module, base)
    orbit_tables = []
    for idx, (summand_index, label) in enumerate(module.labels):
        eigenspace = "plus" if module.deck_eigenvalues[idx] == module.lam_plus else "minus"
        orbit_tables.append(
            {
                "lift": label,
                "eigenspace": eigenspace,
                "companion": base.summands[summand_index].companions[
                    LIFT_LABELS.index(label)
                ],
                "eigenvalue": module.deck_eigenvalues[idx],
                "deltas": list(table[idx][1:]),
            }
        )
    plus_values = [
        d for idx in module.e_plus_indices for d in table[idx][1:]
    ]
    minus_values = [
        d for idx in module.e_minus_indices for d in table[idx][1:]
    ]
    plus_sign = _uniform_sign(plus_values)
    minus_sign = _uniform_sign(minus_values)
    sign_ok = plus_sign != 0 and minus_sign != 0 and bound == 0

    copies = tuple(
        certify_nonslice(
            amphicheiral_sum(m, companion, n),
            p,
            q=q,
            mode=mode,
            bound=bound,
            unit=unit,
            jobs=jobs,
            budget=budget,
        )
        for n in range(1, max_n + 1)
    )
    all_nonslice = all(c.verdict == VERDICT_NONSLICE for c in copies)
    if all_nonslice and sign_ok:
        verdict = VERDICT_INFINITE_ORDER
    elif all_nonslice:
        verdict = f"ORDER_GREATER_THAN_{max_n}"
    else:
        verdict = VERDICT_INCONCLUSIVE

    caveats = _mode_caveats(mode, bound) + (
        "sign structure: a metabolizer of any number of copies contains a "
        "character supported entirely on plus-eigenspace lifts or entirely "
        "on minus-eigenspace lifts, so uniform strict signs of the orbit "
        "sums force a nonzero total at every multiple",
    )
    return InfiniteOrderCertificate(
        m=m,
        companion=base.summands[0].companions[0],
        p=p,
        q=q,
        unit=unit,
        mode=mode,
        bound=bound,
        max_n=max_n,
        orbit_tables=tuple(orbit_tables),
        plus_sign=plus_sign,
        minus_sign=minus_sign,
        copies=copies,
        verdict=verdict,
        caveats=caveats,
    )


@dataclass(frozen=True)
class IndependenceCertificate:
    """Nonsliceness of one linear combination of blocks, localized at
    the prime attached to one nonzero coefficient."""

    family: tuple[tuple[int, int], ...]
    coefficients: tuple[int, ...]
    companion: str
    reduce_index: int
    p: int
    q: int
    unit: int
    mode: str
    bound: int
    reduction: tuple[dict, ...]
    certificate: ObstructionCertificate
    verdict: str

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "kind": "independence",
            "inputs": {
                "family": [{"m": m, "p": prime} for m, prime in self.family],
                "coefficients": list(self.coefficients),
                "companion": self.companion,
                "reduce_index": self.reduce_index,
                "q": self.q,
                "unit": self.unit,
                "mode": self.mode,
                "bound": self.bound,
            },
            "reduction": {
                "p": self.p,
                "summands": list(self.reduction),
            },
            "certificate": self.certificate.to_dict(),
            "verdict": self.verdict,
        }


def independence_certificate(
    family,
    coefficients,
    reduce_index: int | None = None,
    companion: str = "trefoil",
    q: int = 3,
    mode: str = "refined",
    bound: int = 0,
    unit: int = 1,
    jobs: int = 1,
    budget: int | None = None,
) -> IndependenceCertificate:
    """Certify that a nonzero integer combination of family blocks is not slice.

    `family` lists (m, p) pairs; `coefficients` the integer multiples.
    The combination is localized at the prime of `reduce_index` (by
    default the first nonzero coefficient): blocks whose cover order is
    coprime to that prime contribute nothing to its p-torsion and are
    dropped, which must leave exactly the chosen block (otherwise
    PrimeCollisionError).  The remaining |coefficient| copies (mirrored
    for a negative coefficient) then run through `certify_nonslice`.
    """
    family = tuple((int(m), int(prime)) for m, prime in family)
    coefficients = tuple(int(c) for c in coefficients)
    if len(family) != len(coefficients):
        raise PreconditionError("one coefficient per family member is required")
    if not family:
        raise PreconditionError("the family cannot be empty")
    nonzero = [i for i, c in enumerate(coefficients) if c]
    if not nonzero:
        raise PreconditionError("at least one coefficient must be nonzero")
    if reduce_index is None:
        reduce_index = nonzero[0]
    if not 0 <= reduce_index < len(family):
        raise PreconditionError(f"reduce_index {reduce_index} is out of range")
    if coefficients[reduce_index] == 0:
        raise PreconditionError("the coefficient at reduce_index must be nonzero")

    p = family[reduce_index][1]
    if not is_prime(p) or p == 2:
        raise PreconditionError(f"{p} must be an odd prime")
    reduction = []
    collisions = []
    for i, ((m, _), coeff) in enumerate(zip(family, coefficients)):
        order = twisted_cover_order(m, q)
        divisible = order % p == 0
        reduction.append(
            {
                "index": i,
                "m": m,
                "coefficient": coeff,
                "cover_order": order,
                "exponent": exponent_of(p, order) if divisible else 0,
                "kept": divisible and coeff != 0,
            }
        )
        if divisible and coeff != 0 and i != reduce_index:
            collisions.append(i)
    if collisions:
        raise PrimeCollisionError(
            f"prime {p} divides the cover order of blocks "
            f"{[reduce_index] + collisions}; the reduction cannot isolate "
            f"index {reduce_index}"
        )

    coeff = coefficients[reduce_index]
    base_block = amphicheiral_block(family[reduce_index][0], companion)
    companion_spec = base_block.companions[0]
    block = mirror_summand(base_block) if coeff < 0 else base_block
    sat = SatelliteSum((block,) * abs(coeff))
    cert = certify_nonslice(
        sat, p, q=q, mode=mode, bound=bound, unit=unit, jobs=jobs, budget=budget
    )
    return IndependenceCertificate(
        family=family,
        coefficients=coefficients,
        companion=companion_spec,
        reduce_index=reduce_index,
        p=p,
        q=q,
        unit=unit,
        mode=mode,
        bound=bound,
        reduction=tuple(reduction),
        certificate=cert,
        verdict=cert.verdict,
    )


def _canonical_value(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, (list, tuple)):
        return [_canonical_value(x) for x in obj]
    if isinstance(obj, dict):
        out = {}
        for key, value in obj.items():
            if not isinstance(key, str):
                raise PreconditionError("certificate keys must be strings")
            out[key] = _canonical_value(value)
        return out
    raise PreconditionError(
        f"certificates hold only exact values; cannot serialize {type(obj).__name__}"
    )


def canonical_json(data) -> str:
    """Canonical certificate text: sorted keys, no whitespace, integers
    as decimal strings (so arbitrary precision survives every JSON
    parser), trailing newline."""
    if hasattr(data, "to_dict"):
        data = data.to_dict()
    return json.dumps(_canonical_value(data), sort_keys=True, separators=(",", ":")) + "\n"


_INT_PATTERN = re.compile(r"-?[0-9]+\Z")


def _destring(obj):
    if isinstance(obj, str):
        return int(obj) if _INT_PATTERN.match(obj) else obj
    if isinstance(obj, list):
        return [_destring(x) for x in obj]
    if isinstance(obj, dict):
        return {k: _destring(v) for k, v in obj.items()}
    return obj


def write_certificate(cert, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_json(cert))


def load_certificate(path: str) -> dict:
    """Parse a certificate file back into integers and structures."""
    with open(path, "r", encoding="utf-8") as fh:
        return _destring(json.load(fh))


def _recompute(data: dict):
    kind = data.get("kind")
    inputs = data.get("inputs", {})
    if kind == "obstruction":
        return certify_nonslice(
            SatelliteSum.from_dict(inputs["satellite"]),
            inputs["p"],
            q=inputs["q"],
            mode=inputs["mode"],
            bound=inputs["bound"],
            unit=inputs["unit"],
        )
    if kind == "infinite_order":
        return certify_infinite_order(
            inputs["m"],
            companion=inputs["companion"],
            p=inputs["p"],
            q=inputs["q"],
            max_n=inputs["max_n"],
            mode=inputs["mode"],
            bound=inputs["bound"],
            unit=inputs["unit"],
        )
    if kind == "independence":
        return independence_certificate(
            [(d["m"], d["p"]) for d in inputs["family"]],
            inputs["coefficients"],
            reduce_index=inputs["reduce_index"],
            companion=inputs["companion"],
            q=inputs["q"],
            mode=inputs["mode"],
            bound=inputs["bound"],
            unit=inputs["unit"],
        )
    raise PreconditionError(f"unknown certificate kind {kind!r}")


def _check_obstruction_records(data: dict, messages: list) -> None:
    inputs = data["inputs"]
    p, q, unit = inputs["p"], inputs["q"], inputs["unit"]
    sat = SatelliteSum.from_dict(inputs["satellite"])
    module = build_p_torsion(sat.block_parameters(), q, p, unit=unit)
    allowance = sat.n * inputs["bound"]
    violated = []
    for num, record in enumerate(data["records"]):
        basis = FpMatrix(p, record["h_basis"], cols=module.dim)
        if rref_basis(basis).entries != basis.entries:
            messages.append(f"record {num}: basis is not in canonical form")
        product = basis @ module.form @ basis.transpose()
        if any(any(row) for row in product.entries):
            messages.append(f"record {num}: basis does not annihilate itself")
        if record["witness"] is None:
            violated.append(False)
            if record["violates"]:
                messages.append(f"record {num}: violation claimed without witness")
            continue
        witness = tuple(record["witness"])
        character = module.form.mat_vec(witness)
        if list(character) != list(record["character"]):
            messages.append(f"record {num}: character does not match the witness")
        total = 0
        for site in record["sites"]:
            idx = site["index"]
            companion = parse_knot(site["companion"])
            expected = [
                tristram_levine_signature(companion, cj, p).value for cj in site["orbit"]
            ]
            if expected != list(site["signatures"]):
                messages.append(f"record {num}: site {idx} signatures differ")
            if sum(expected) != site["delta"]:
                messages.append(f"record {num}: site {idx} delta differs")
            total += site["delta"]
        if total != record["signature_total"]:
            messages.append(f"record {num}: signature total differs")
        ok = abs(total) > allowance
        violated.append(ok)
        if ok != record["violates"]:
            messages.append(f"record {num}: violation flag is wrong")
    expected_verdict = (
        VERDICT_NONSLICE if violated and all(violated) else VERDICT_INCONCLUSIVE
    )
    if data["verdict"] != expected_verdict:
        messages.append("verdict does not follow from the records")


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    messages: tuple[str, ...]


def verify_certificate(data) -> VerifyReport:
    """Recompute a certificate from its inputs and compare, then check
    the internal consistency of every record.

    `data` is a parsed certificate dict (see `load_certificate`) or a
    path to one.  The recomputation must reproduce the canonical bytes
    exactly; record checks then validate each claim locally so a
    mismatch can be located.
    """
    if isinstance(data, str):
        data = load_certificate(data)
    messages: list[str] = []
    recomputed = _recompute(data)
    if canonical_json(recomputed) != canonical_json(data):
        messages.append("recomputation differs from the stored certificate")
    if data["kind"] == "obstruction":
        _check_obstruction_records(data, messages)
    elif data["kind"] == "independence":
        _check_obstruction_records(data["certificate"], messages)
    elif data["kind"] == "infinite_order":
        for copy in data["copies"]:
            _check_obstruction_records(copy, messages)
    return VerifyReport(ok=not messages, messages=tuple(messages))
