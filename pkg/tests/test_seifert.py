import cmath
import json

import pytest

from knotorder.number_theory import PreconditionError
from knotorder.seifert import (
    SeifertMatrix,
    SignatureValue,
    alexander_polynomial,
    connected_sum,
    is_alexander_root,
    knot_spec,
    parse_knot,
    signature_profile,
    trefoil,
    tristram_levine_signature,
    twisted_double,
    unknot,
)

# The right handed trefoil has sigma = -2 on the open arc between the
# sixth roots of unity exp(pi i / 3) and exp(5 pi i / 3), value -1 at
# those roots of t^2 - t + 1, and 0 elsewhere.
TREFOIL_PROFILE_7 = (0, 0, -2, -2, -2, -2, 0)


def hermitian_2x2_signature(V, c, den):
    """Independent oracle for genus one knots.

    Computes the eigenvalue signs of (1-w)V + (1-conj(w))V^T from the
    determinant and trace of the 2x2 Hermitian matrix.  Returns None
    when the determinant vanishes (within floating tolerance), which is
    exactly the Alexander root locus.
    """
    w = cmath.exp(2j * cmath.pi * c / den)
    B = [
        [
            (1 - w) * V[i][j] + (1 - w.conjugate()) * V[j][i]
            for j in range(2)
        ]
        for i in range(2)
    ]
    det = (B[0][0] * B[1][1] - B[0][1] * B[1][0]).real
    trace = (B[0][0] + B[1][1]).real
    if abs(det) < 1e-9:
        return None
    if det < 0:
        return 0
    return 2 if trace > 0 else -2


def test_trefoil_matrix_and_validation():
    t = trefoil()
    assert t.matrix.entries == ((-1, 1), (0, -1))
    assert t.size == 2
    assert t.genus == 1
    assert t.name == "trefoil"


def test_seifert_matrix_rejects_bad_input():
    with pytest.raises(PreconditionError):
        SeifertMatrix([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    with pytest.raises(PreconditionError):
        SeifertMatrix([[1, 2], [4, 4]])


def test_unknot_is_empty():
    u = unknot()
    assert u.size == 0
    assert alexander_polynomial(u) == (1,)
    assert all(v.value == 0 for v in signature_profile(u, 12))


def test_twisted_double_matrices():
    assert twisted_double(1).matrix.entries == ((0, 2), (1, 0))
    assert twisted_double(3).matrix.entries == ((0, 4), (3, 0))
    assert twisted_double(3).name == "twisted:3"


def test_alexander_polynomials():
    assert alexander_polynomial(trefoil()) == (1, -1, 1)
    assert alexander_polynomial(twisted_double(1)) == (-2, 5, -2)
    # Determinant of V - tV^T for the twisted double is
    # -(m+1-mt)(m-(m+1)t), so the value at t=1 is always 1.
    for m in range(7):
        poly = alexander_polynomial(twisted_double(m))
        assert sum(poly) == 1


def test_alexander_polynomial_of_connected_sum_multiplies():
    s = connected_sum(trefoil(), trefoil())
    assert alexander_polynomial(s) == (1, -2, 3, -2, 1)


def test_is_alexander_root():
    t = trefoil()
    assert is_alexander_root(t, 1, 6)
    assert is_alexander_root(t, 5, 6)
    assert not is_alexander_root(t, 1, 7)
    assert not is_alexander_root(t, 0, 7)
    # Twisted doubles have no Alexander roots on the unit circle: the
    # roots of the quadratic are m/(m+1) and (m+1)/m.
    for m in range(1, 5):
        for c in range(12):
            assert not is_alexander_root(twisted_double(m), c, 12)


def test_trefoil_signature_profile():
    values = signature_profile(trefoil(), 7)
    assert tuple(v.value for v in values) == TREFOIL_PROFILE_7
    assert not any(v.at_alexander_root for v in values)


def test_signature_at_unity_is_zero():
    assert tristram_levine_signature(trefoil(), 0, 5) == SignatureValue(0, False)
    assert tristram_levine_signature(twisted_double(4), 0, 9) == SignatureValue(0, False)


def test_signature_at_alexander_root_is_flagged():
    assert tristram_levine_signature(trefoil(), 1, 6) == SignatureValue(-1, True)
    assert tristram_levine_signature(trefoil(), 5, 6) == SignatureValue(-1, True)


def test_trefoil_window_rule():
    # sigma = -2 exactly when den < 6c < 5 den, with the boundary
    # giving the averaged value -1.
    for den in (7, 9, 11, 12, 30):
        for c in range(den):
            value = tristram_levine_signature(trefoil(), c, den)
            if 6 * c == den or 6 * c == 5 * den:
                assert value == SignatureValue(-1, True)
            elif den < 6 * c < 5 * den:
                assert value == SignatureValue(-2, False)
            else:
                assert value == SignatureValue(0, False)


def test_trefoil_fine_grid_jumps():
    values = signature_profile(trefoil(), 84)
    jumps = [c for c in range(1, 84) if values[c].value != values[c - 1].value]
    assert jumps == [14, 15, 70, 71]
    assert values[14] == SignatureValue(-1, True)
    assert values[15] == SignatureValue(-2, False)
    assert values[70] == SignatureValue(-1, True)
    assert values[71] == SignatureValue(0, False)


def test_signature_against_hermitian_oracle():
    for knot in (trefoil(), twisted_double(1), twisted_double(3)):
        V = knot.matrix.entries
        for c in range(1, 360):
            expected = hermitian_2x2_signature(V, c, 360)
            if expected is None:
                continue
            value = tristram_levine_signature(knot, c, 360)
            assert not value.at_alexander_root
            assert value.value == expected


def test_signature_reduces_the_angle():
    t = trefoil()
    assert tristram_levine_signature(t, 8, 7) == tristram_levine_signature(t, 1, 7)
    assert tristram_levine_signature(t, 2, 14) == tristram_levine_signature(t, 1, 7)


def test_signature_additivity():
    k1, k2 = trefoil(), twisted_double(2)
    s = connected_sum(k1, k2)
    for c in range(11):
        left = tristram_levine_signature(s, c, 11)
        right = (
            tristram_levine_signature(k1, c, 11).value
            + tristram_levine_signature(k2, c, 11).value
        )
        assert left.value == right


def test_mirror_negates_signatures():
    t = trefoil()
    mt = t.mirror()
    assert mt.matrix.entries == ((1, 0), (-1, 1))
    for c in range(7):
        assert (
            tristram_levine_signature(mt, c, 7).value
            == -tristram_levine_signature(t, c, 7).value
        )
    value = tristram_levine_signature(mt, 1, 6)
    assert value == SignatureValue(1, True)


def test_involutions():
    t = trefoil()
    assert t.mirror().mirror() == t
    assert t.reverse().reverse() == t
    assert t.concordance_inverse().concordance_inverse() == t
    assert t.concordance_inverse() == t.mirror().reverse()


def test_concordance_inverse_kills_signatures():
    s = connected_sum(trefoil(), trefoil().concordance_inverse())
    assert all(v.value == 0 for v in signature_profile(s, 7))


def test_parse_named_knots():
    assert parse_knot("unknot") == unknot()
    assert parse_knot("trefoil") == trefoil()
    assert parse_knot("twisted:3") == twisted_double(3)
    assert parse_knot("-trefoil") == trefoil().concordance_inverse()


def test_parse_sums_and_matrices():
    s = parse_knot("trefoil+twisted:1")
    assert s == connected_sum(trefoil(), twisted_double(1))
    k = parse_knot("[[-1,1],[0,-1]]")
    assert k.matrix.entries == ((-1, 1), (0, -1))
    nested = parse_knot("trefoil+twisted:1+-trefoil")
    assert nested.size == 6


def test_parse_knot_from_file(tmp_path):
    path = tmp_path / "knot.json"
    path.write_text(json.dumps([[-1, 1], [0, -1]]))
    k = parse_knot("@" + str(path))
    assert k.matrix.entries == ((-1, 1), (0, -1))


def test_parse_rejects_garbage():
    with pytest.raises(PreconditionError):
        parse_knot("granny")
    with pytest.raises(PreconditionError):
        parse_knot("twisted:x")


def test_knot_spec_round_trips():
    for knot in (
        unknot(),
        trefoil(),
        twisted_double(2),
        trefoil().concordance_inverse(),
        connected_sum(trefoil(), twisted_double(1)),
        parse_knot("[[-1,1],[0,-1]]"),
    ):
        spec = knot_spec(knot)
        again = parse_knot(spec)
        assert again.matrix.entries == knot.matrix.entries
