import itertools
import json

import pytest

from knotorder.branched_cover import build_p_torsion
from knotorder.exact_linalg import (
    FpMatrix,
    SubspaceBudgetError,
    enumerate_subspaces,
    rank,
    rref_basis,
)
from knotorder.number_theory import PreconditionError
from knotorder.obstruction import (
    PrimeCollisionError,
    canonical_json,
    certify_infinite_order,
    certify_nonslice,
    enumerate_metabolizers,
    find_witness_vector,
    independence_certificate,
    load_certificate,
    metabolizer_count,
    site_delta_table,
    verify_certificate,
    write_certificate,
)
from knotorder.satellite import (
    amphicheiral_sum,
    cg_delta,
    mirror_sum,
)


def base_module(copies=1, p=7, unit=1):
    sat = amphicheiral_sum(1 if p == 7 else 5, "trefoil", copies)
    return sat, build_p_torsion(sat.block_parameters(), 3, p, unit=unit)


def is_self_annihilating(basis, form):
    p = form.p
    for u in basis.entries:
        for w in basis.entries:
            pairing = sum(
                u[i] * form.entries[i][j] * w[j]
                for i in range(len(u))
                for j in range(len(w))
            )
            if pairing % p != 0:
                return False
    return True


def is_deck_invariant(basis, module):
    p = module.p
    for row in basis.entries:
        image = tuple(
            module.deck_eigenvalues[i] * row[i] % p for i in range(len(row))
        )
        stacked = basis.stack(FpMatrix(p, (image,)))
        if rank(stacked) != basis.rows:
            return False
    return True


def test_metabolizer_count_values():
    _, mod7 = base_module()
    assert metabolizer_count(mod7) == 10
    _, mod13 = base_module(p=13)
    assert metabolizer_count(mod13) == 16
    _, mod7n2 = base_module(copies=2)
    assert metabolizer_count(mod7n2) == 3652


def test_enumerate_metabolizers_matches_count():
    _, mod = base_module()
    metabs = list(enumerate_metabolizers(mod))
    assert len(metabs) == 10
    bases = {m.basis.entries for m in metabs}
    assert len(bases) == 10


def test_metabolizers_are_self_annihilating_half_dimension():
    _, mod = base_module()
    for metab in enumerate_metabolizers(mod):
        assert metab.basis.rows == 2
        assert rank(metab.basis) == 2
        assert rref_basis(metab.basis).entries == metab.basis.entries
        assert is_self_annihilating(metab.basis, mod.form)


def test_metabolizer_enumeration_is_complete():
    # Brute force over all 2850 half dimension subspaces of (F_7)^4: a
    # metabolizer of the equivariant linking form must annihilate
    # itself and be carried to itself by the deck transformation.  The
    # enumeration must produce exactly that set.
    _, mod = base_module()
    found = set()
    self_annihilating = 0
    for basis in enumerate_subspaces(4, 2, 7):
        if is_self_annihilating(basis, mod.form):
            self_annihilating += 1
            if is_deck_invariant(basis, mod):
                found.add(basis.entries)
    enumerated = {m.basis.entries for m in enumerate_metabolizers(mod)}
    assert found == enumerated
    assert len(found) == 10
    # Dropping the invariance requirement admits six further
    # subspaces that mix the two eigenspaces; they are not
    # metabolizers of the deck equivariant structure.
    assert self_annihilating == 16


def test_metabolizer_budget_error():
    _, mod = base_module(copies=2)
    with pytest.raises(SubspaceBudgetError):
        list(enumerate_metabolizers(mod, budget=100))


def test_site_delta_table():
    sat, mod = base_module()
    table = site_delta_table(mod, sat)
    assert len(table) == 4
    assert all(len(row) == 7 for row in table)
    for site in range(4):
        companion = sat.summands[0].companion_knot(mod.labels[site][1])
        lam = mod.deck_eigenvalues[site]
        for value in range(7):
            assert table[site][value] == cg_delta(companion, value, lam, 3, 7)
    # Plus sites carry the trefoil (orbit sum -4), minus sites the
    # reversed mirror (orbit sum +4).
    assert table[0][1:] == (-4,) * 6
    assert table[1][1:] == (4,) * 6


def test_find_witness_vector_properties():
    sat, mod = base_module()
    for metab in enumerate_metabolizers(mod):
        result = find_witness_vector(mod, metab, sat)
        assert result is not None
        vector, total, sites = result
        # The witness lies in the metabolizer: adjoining it does not
        # raise the rank.
        stacked = metab.basis.stack(FpMatrix(7, (vector,)))
        assert rank(stacked) == 2
        assert any(v != 0 for v in vector)
        assert abs(total) > 0
        assert sites >= 1


def test_witness_totals_are_multiples_of_four():
    sat, mod = base_module()
    totals = set()
    for metab in enumerate_metabolizers(mod):
        _, total, _ = find_witness_vector(mod, metab, sat)
        totals.add(total)
    assert totals == {-8, -4, 4, 8}


def test_certify_nonslice_base_case():
    sat = amphicheiral_sum(1, "trefoil", 1)
    cert = certify_nonslice(sat, 7)
    assert cert.verdict == "NONSLICE"
    assert cert.metabolizers == 10
    assert len(cert.records) == 10
    for record in cert.records:
        assert record.violates
        assert record.unknown_terms == 1
        assert record.signature_total in (-8, -4, 4, 8)
        assert abs(record.signature_total) > 0
        assert len(record.sites) >= 1


def test_certify_nonslice_records_are_consistent():
    sat = amphicheiral_sum(1, "trefoil", 1)
    mod = build_p_torsion(sat.block_parameters(), 3, 7)
    cert = certify_nonslice(sat, 7)
    for record in cert.records:
        chi = mod.form.mat_vec(record.witness)
        assert chi == record.character
        assert sum(site["delta"] for site in record.sites) == record.signature_total
        for site in record.sites:
            assert record.character[site["index"]] == site["character_value"]
            assert site["character_value"] != 0


def test_certify_nonslice_two_copies():
    sat = amphicheiral_sum(1, "trefoil", 2)
    cert = certify_nonslice(sat, 7)
    assert cert.verdict == "NONSLICE"
    assert cert.metabolizers == 3652
    totals = {r.signature_total for r in cert.records}
    assert totals == {-16, -8, -4, 4, 8, 16}


def test_certify_nonslice_unknot_companion_is_inconclusive():
    sat = amphicheiral_sum(1, "unknot", 1)
    cert = certify_nonslice(sat, 7)
    assert cert.verdict == "INCONCLUSIVE"
    assert all(not r.violates for r in cert.records)
    assert all(r.witness is None for r in cert.records)


def test_bounded_mode_with_zero_bound_matches_refined():
    sat = amphicheiral_sum(1, "trefoil", 1)
    refined = certify_nonslice(sat, 7)
    bounded = certify_nonslice(sat, 7, mode="bounded", bound=0)
    assert bounded.verdict == refined.verdict
    assert [r.witness for r in bounded.records] == [r.witness for r in refined.records]
    assert [r.signature_total for r in bounded.records] == [
        r.signature_total for r in refined.records
    ]


def test_bounded_mode_large_bound_blocks_the_verdict():
    sat = amphicheiral_sum(1, "trefoil", 1)
    cert = certify_nonslice(sat, 7, mode="bounded", bound=7)
    assert cert.verdict == "INCONCLUSIVE"
    # Records whose best witness reaches total 8 still violate, the
    # ones capped at 4 cannot.
    violating = [r for r in cert.records if r.violates]
    assert violating
    assert all(abs(r.signature_total) > 7 for r in violating)
    cert = certify_nonslice(sat, 7, mode="bounded", bound=10)
    assert cert.verdict == "INCONCLUSIVE"


def test_mode_validation():
    sat = amphicheiral_sum(1, "trefoil", 1)
    with pytest.raises(PreconditionError):
        certify_nonslice(sat, 7, mode="refined", bound=2)
    with pytest.raises(PreconditionError):
        certify_nonslice(sat, 7, mode="strict")
    with pytest.raises(PreconditionError):
        certify_nonslice(sat, 7, mode="bounded", bound=-1)


def test_mirrored_sum_flips_all_totals():
    sat = amphicheiral_sum(1, "trefoil", 1)
    cert = certify_nonslice(sat, 7)
    cert_m = certify_nonslice(mirror_sum(sat), 7)
    assert cert_m.verdict == "NONSLICE"
    plain = sorted(r.signature_total for r in cert.records)
    mirrored = sorted(-r.signature_total for r in cert_m.records)
    assert plain == mirrored


def test_unit_sweep_preserves_verdict_and_metabolizers():
    sat = amphicheiral_sum(1, "trefoil", 1)
    baseline = certify_nonslice(sat, 7)
    bases = {r.h_basis for r in baseline.records}
    for unit in range(2, 7):
        cert = certify_nonslice(sat, 7, unit=unit)
        assert cert.verdict == "NONSLICE"
        assert {r.h_basis for r in cert.records} == bases


def test_certificate_json_is_deterministic():
    sat = amphicheiral_sum(1, "trefoil", 1)
    a = canonical_json(certify_nonslice(sat, 7).to_dict())
    b = canonical_json(certify_nonslice(sat, 7).to_dict())
    assert a == b
    assert a.endswith("\n")


def test_parallel_jobs_give_identical_bytes():
    sat = amphicheiral_sum(1, "trefoil", 1)
    serial = canonical_json(certify_nonslice(sat, 7).to_dict())
    parallel = canonical_json(certify_nonslice(sat, 7, jobs=2).to_dict())
    assert serial == parallel


def test_canonical_json_stringifies_integers():
    text = canonical_json({"a": 5, "b": [1, 2], "c": True, "d": None, "e": "x"})
    assert text == '{"a":"5","b":["1","2"],"c":true,"d":null,"e":"x"}\n'
    with pytest.raises(PreconditionError):
        canonical_json({"x": 1.5})
    with pytest.raises(PreconditionError):
        canonical_json({1: "x"})


def test_write_load_round_trip(tmp_path):
    sat = amphicheiral_sum(1, "trefoil", 1)
    cert = certify_nonslice(sat, 7)
    path = str(tmp_path / "cert.json")
    write_certificate(cert, path)
    data = load_certificate(path)
    assert data == cert.to_dict()
    # Raw file content holds integers as decimal strings.
    raw = json.loads(open(path).read())
    assert raw["inputs"]["p"] == "7"
    assert data["inputs"]["p"] == 7


def test_verify_certificate_accepts_fresh_output(tmp_path):
    sat = amphicheiral_sum(1, "trefoil", 1)
    path = str(tmp_path / "cert.json")
    write_certificate(certify_nonslice(sat, 7), path)
    report = verify_certificate(path)
    assert report.ok
    assert report.messages == ()


def test_verify_certificate_detects_tampering(tmp_path):
    sat = amphicheiral_sum(1, "trefoil", 1)
    path = str(tmp_path / "cert.json")
    write_certificate(certify_nonslice(sat, 7), path)
    raw = open(path).read()
    tampered = raw.replace('"signature_total":"-8"', '"signature_total":"-6"', 1)
    assert tampered != raw
    tampered_path = str(tmp_path / "tampered.json")
    open(tampered_path, "w").write(tampered)
    report = verify_certificate(tampered_path)
    assert not report.ok
    assert any("signature total" in m for m in report.messages)


def test_verify_certificate_detects_verdict_tampering(tmp_path):
    sat = amphicheiral_sum(1, "unknot", 1)
    path = str(tmp_path / "cert.json")
    write_certificate(certify_nonslice(sat, 7), path)
    raw = open(path).read()
    tampered = raw.replace('"verdict":"INCONCLUSIVE"', '"verdict":"NONSLICE"')
    tampered_path = str(tmp_path / "tampered.json")
    open(tampered_path, "w").write(tampered)
    report = verify_certificate(tampered_path)
    assert not report.ok


def test_certify_budget_propagates():
    sat = amphicheiral_sum(1, "trefoil", 1)
    with pytest.raises(SubspaceBudgetError):
        certify_nonslice(sat, 7, budget=3)


def test_infinite_order_certificate():
    cert = certify_infinite_order(1, p=7, max_n=1)
    assert cert.verdict == "INFINITE_ORDER"
    assert cert.plus_sign == -1
    assert cert.minus_sign == 1
    assert len(cert.copies) == 1
    assert cert.copies[0].verdict == "NONSLICE"
    tables = cert.orbit_tables
    assert {t["eigenspace"] for t in tables} == {"plus", "minus"}
    for table in tables:
        expected = -4 if table["eigenspace"] == "plus" else 4
        assert table["deltas"] == [expected] * 6


def test_infinite_order_needs_zero_bound():
    cert = certify_infinite_order(1, p=7, max_n=1, mode="bounded", bound=1)
    assert cert.verdict == "ORDER_GREATER_THAN_1"


def test_infinite_order_unknot_is_inconclusive():
    cert = certify_infinite_order(1, companion="unknot", p=7, max_n=1)
    assert cert.verdict == "INCONCLUSIVE"


def test_independence_certificate_reduction():
    cert = independence_certificate([(1, 7), (2, 19)], [2, -3])
    assert cert.verdict == "NONSLICE"
    assert cert.p == 7
    kept = [entry for entry in cert.reduction if entry["kept"]]
    assert [entry["m"] for entry in kept] == [1]
    assert cert.certificate.satellite.n == 2
    assert not cert.certificate.satellite.summands[0].mirrored


def test_independence_negative_coefficient_mirrors():
    cert = independence_certificate([(1, 7), (2, 19)], [-1, 5])
    assert cert.verdict == "NONSLICE"
    assert cert.certificate.satellite.summands[0].mirrored


def test_independence_prime_collision():
    # F(1) = 7 and F(5) = 91 share the prime 7.
    with pytest.raises(PrimeCollisionError):
        independence_certificate([(1, 7), (5, 13)], [1, 1], reduce_index=0)


def test_independence_zero_coefficient_rejected():
    with pytest.raises(PreconditionError):
        independence_certificate([(1, 7), (2, 19)], [0, 1], reduce_index=0)


def test_independence_verify_round_trip(tmp_path):
    cert = independence_certificate([(1, 7), (2, 19)], [1, 1])
    path = str(tmp_path / "ind.json")
    write_certificate(cert, path)
    report = verify_certificate(path)
    assert report.ok


def test_infinite_order_verify_round_trip(tmp_path):
    cert = certify_infinite_order(1, p=7, max_n=1)
    path = str(tmp_path / "io.json")
    write_certificate(cert, path)
    report = verify_certificate(path)
    assert report.ok
