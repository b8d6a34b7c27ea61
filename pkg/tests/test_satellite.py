import pytest

from knotorder.branched_cover import build_p_torsion
from knotorder.number_theory import PreconditionError
from knotorder.satellite import (
    Character,
    SatelliteSum,
    Summand,
    amphicheiral_block,
    amphicheiral_sum,
    cg_delta,
    character_from_vector,
    mirror_sum,
    mirror_summand,
    obstruction_sum,
)
from knotorder.seifert import parse_knot, trefoil, tristram_levine_signature


def test_amphicheiral_block_layout():
    block = amphicheiral_block(1)
    assert block.m == 1
    assert not block.mirrored
    assert block.companions == ("trefoil", "-trefoil", "-trefoil", "trefoil")


def test_amphicheiral_block_other_companion():
    block = amphicheiral_block(2, companion="twisted:1")
    assert block.companions == ("twisted:1", "-twisted:1", "-twisted:1", "twisted:1")


def test_companion_knot_lookup():
    block = amphicheiral_block(1)
    assert block.companion_knot("L1") == trefoil()
    assert block.companion_knot("L2") == trefoil().concordance_inverse()


def test_mirror_summand():
    block = amphicheiral_block(1)
    mirrored = mirror_summand(block)
    assert mirrored.mirrored
    assert mirrored.companions == ("-trefoil", "trefoil", "trefoil", "-trefoil")
    assert mirror_summand(mirrored) == block


def test_summand_dict_round_trip():
    block = amphicheiral_block(3)
    again = Summand.from_dict(block.to_dict())
    assert again == block
    data = block.to_dict()
    assert data["companions"]["L1"] == "trefoil"
    assert data["companions"]["L2"] == "-trefoil"


def test_satellite_sum_basics():
    sat = amphicheiral_sum(1, "trefoil", 2)
    assert sat.n == 2
    assert sat.block_parameters() == ((1, False), (1, False))
    again = SatelliteSum.from_dict(sat.to_dict())
    assert again == sat


def test_satellite_sum_requires_a_summand():
    with pytest.raises(PreconditionError):
        SatelliteSum(())


def test_mirror_sum_involution():
    sat = amphicheiral_sum(1, "trefoil", 2)
    assert mirror_sum(mirror_sum(sat)) == sat
    assert mirror_sum(sat).block_parameters() == ((1, True), (1, True))


def test_cg_delta_trefoil_orbits():
    # The multiplicative orbit of lambda = 2 on nonzero residues mod 7
    # splits as {1, 2, 4} and {3, 6, 5}; on both, the trefoil signature
    # sums to -4.
    for c in range(1, 7):
        assert cg_delta(trefoil(), c, 2, 3, 7) == -4
    assert cg_delta(trefoil(), 0, 2, 3, 7) == 0


def test_cg_delta_is_the_orbit_signature_sum():
    lam = 2
    for c in range(1, 7):
        expected = sum(
            tristram_levine_signature(trefoil(), pow(lam, j, 7) * c % 7, 7).value
            for j in range(3)
        )
        assert cg_delta(trefoil(), c, lam, 3, 7) == expected


def test_cg_delta_orbit_invariance():
    # Replacing c by lam * c permutes the orbit, so the sum is equal.
    for c in range(1, 7):
        assert cg_delta(trefoil(), c, 2, 3, 7) == cg_delta(trefoil(), 2 * c % 7, 2, 3, 7)


def test_cg_delta_mirror_negates():
    for c in range(1, 7):
        plain = cg_delta(trefoil(), c, 2, 3, 7)
        mirrored = cg_delta(parse_knot("-trefoil"), c, 2, 3, 7)
        assert mirrored == -plain


def test_cg_delta_validates_inputs():
    with pytest.raises(PreconditionError):
        cg_delta(trefoil(), 1, 2, 3, 9)
    with pytest.raises(PreconditionError):
        cg_delta(trefoil(), 1, 3, 3, 7)  # 3^3 = 27 is not 1 mod 7


def test_character_reduces_mod_p():
    chi = Character(7, (1, 2, 3, 9))
    assert chi.values == (1, 2, 3, 2)
    assert not chi.is_trivial
    assert Character(7, (0, 0, 0, 0)).is_trivial
    assert Character(7, (7, 14, 0, 0)).is_trivial


def test_character_from_vector_uses_the_linking_form():
    sat = amphicheiral_sum(1, "trefoil", 1)
    mod = build_p_torsion(sat.block_parameters(), 3, 7)
    chi = character_from_vector(mod, (1, 0, 0, 0))
    assert chi.values == (0, 1, 0, 0)
    chi = character_from_vector(mod, (0, 0, 1, 0))
    assert chi.values == (0, 0, 0, 6)


def test_obstruction_sum_single_site():
    sat = amphicheiral_sum(1, "trefoil", 1)
    mod = build_p_torsion(sat.block_parameters(), 3, 7)
    # The character lands on L2, whose companion is the reversed mirror
    # trefoil at the minus eigenvalue; its orbit sum is +4.
    chi = character_from_vector(mod, (1, 0, 0, 0))
    assert obstruction_sum(sat, chi, mod) == (4, 1)
    trivial = character_from_vector(mod, (0, 0, 0, 0))
    assert obstruction_sum(sat, trivial, mod) == (0, 1)


def test_obstruction_sum_additive_over_disjoint_supports():
    sat = amphicheiral_sum(1, "trefoil", 2)
    mod = build_p_torsion(sat.block_parameters(), 3, 7)
    v1 = (1, 0, 0, 0, 0, 0, 0, 0)
    v2 = (0, 0, 0, 0, 1, 0, 0, 0)
    joint = (1, 0, 0, 0, 1, 0, 0, 0)
    t1, _ = obstruction_sum(sat, character_from_vector(mod, v1), mod)
    t2, _ = obstruction_sum(sat, character_from_vector(mod, v2), mod)
    tj, n = obstruction_sum(sat, character_from_vector(mod, joint), mod)
    assert tj == t1 + t2
    assert n == 2


def test_obstruction_sum_mirror_flips_sign():
    sat = amphicheiral_sum(1, "trefoil", 1)
    mod = build_p_torsion(sat.block_parameters(), 3, 7)
    mirrored = mirror_sum(sat)
    mod_m = build_p_torsion(mirrored.block_parameters(), 3, 7)
    for vector in ((1, 0, 0, 0), (0, 1, 0, 0), (1, 1, 0, 0), (1, 2, 3, 4)):
        total, _ = obstruction_sum(sat, character_from_vector(mod, vector), mod)
        total_m, _ = obstruction_sum(
            mirrored, character_from_vector(mod_m, vector), mod_m
        )
        assert total_m == -total


def test_obstruction_sum_validates_matching_module():
    sat = amphicheiral_sum(1, "trefoil", 1)
    mod = build_p_torsion(sat.block_parameters(), 3, 7)
    chi = character_from_vector(mod, (1, 0, 0, 0))
    other = amphicheiral_sum(1, "trefoil", 2)
    with pytest.raises(PreconditionError):
        obstruction_sum(other, chi, mod)
