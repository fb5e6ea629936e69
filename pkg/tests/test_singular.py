import pytest

from conftest import PRESET_NAMES, REFLECTION_PRESETS
from errors import PreconditionError
from invariants import presentation
from presets import preset_group
from singular import Verdict, compare_strata, jacobian_at, singular_locus, supp_dsg, witness_module
from strata import closed_strata, nucleus, origin_stratum


def test_jacobian_segre_smooth(segre):
    pres = presentation(segre)
    verdict = jacobian_at(pres, (1, 0))
    assert verdict.kind is Verdict.SMOOTH
    assert (verdict.rank, verdict.expected_rank) == (1, 1)
    assert jacobian_at(pres, (0, 1)).kind is Verdict.SMOOTH


def test_jacobian_t3c2_singular_point(t3c2):
    verdict = jacobian_at(presentation(t3c2), (0, 0, 1))
    assert verdict.kind is Verdict.SINGULAR
    assert verdict.rank == 0


def test_jacobian_polynomial_ring_is_smooth(b2):
    verdict = jacobian_at(presentation(b2), (1, 0))
    assert verdict.kind is Verdict.SMOOTH
    assert verdict.expected_rank == 0


def test_jacobian_truncated_relations_are_inconclusive(segre):
    verdict = jacobian_at(presentation(segre, bound = 3), (1, 0))
    assert verdict.kind is Verdict.INCONCLUSIVE
    assert "3" in verdict.reason
    # raising the bound resolves it
    assert jacobian_at(presentation(segre, bound = 4), (1, 0)).kind is Verdict.SMOOTH


def test_jacobian_preconditions(segre, t3c2):
    with pytest.raises(PreconditionError):
        jacobian_at(presentation(segre), (0, 0))
    with pytest.raises(PreconditionError):
        jacobian_at(presentation(t3c2), (1, 0))


def test_smooth_verdicts_are_stable_in_the_bound(t3c2):
    for bound in (4, 6, 8):
        pres = presentation(t3c2, bound = bound)
        assert jacobian_at(pres, (1, 0, 0)).kind is Verdict.SMOOTH
        assert jacobian_at(pres, (0, 0, 1)).kind is Verdict.SINGULAR


@pytest.mark.parametrize("name", PRESET_NAMES)
@pytest.mark.parametrize("p", [0, 5, 7, 11])
def test_classifier_agrees_with_jacobian(name, p):
    for check in compare_strata(preset_group(name), p):
        assert check.verdict.kind is not Verdict.INCONCLUSIVE
        assert (check.verdict.kind is Verdict.SINGULAR) == check.classifier_singular


def test_singular_locus(segre, t3c2):
    assert singular_locus(segre) == []
    assert [s.lattice.basis for s in singular_locus(t3c2)] == [((0, 0, 1),)]


@pytest.mark.parametrize("name", REFLECTION_PRESETS)
def test_reflection_presets_have_no_singular_support(name):
    group = preset_group(name)
    assert singular_locus(group) == []
    assert supp_dsg(group).members == ()


def test_supp_dsg_segre(segre):
    support = supp_dsg(segre)
    assert support.bases() == [()]
    (witness,) = support.members
    assert witness.stratum.is_origin
    assert witness.stabilizer == segre.whole()
    assert "irrelevant ideal" in witness.description


def test_supp_dsg_t3c2(t3c2):
    assert supp_dsg(t3c2).bases() == [(), ((0, 0, 1),)]


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_supp_dsg_equals_nucleus(name):
    group = preset_group(name)
    nuc = nucleus(group)
    expected = sorted(nuc.bases() + ([()] if nuc.includes_origin else []))
    assert supp_dsg(group).bases() == expected


def test_witness_module_t3c2(t3c2):
    (stratum,) = nucleus(t3c2).strata
    witness = witness_module(t3c2, stratum)
    assert witness.stabilizer == t3c2.whole()
    assert sorted(witness.complement_action) == [((-1, 0), (0, -1)), ((1, 0), (0, 1))]
    assert not witness.complement_is_reflection


def test_witness_module_origin(segre):
    witness = witness_module(segre, origin_stratum(segre))
    assert witness.stabilizer.order == 2
    assert witness.complement_basis == ((1, 0), (0, 1))


def test_witness_module_rejects_smooth_stratum(t3c2, swap):
    smooth = [s for s in closed_strata(t3c2) if not s.nuclear]
    assert smooth
    with pytest.raises(PreconditionError):
        witness_module(t3c2, smooth[0])
    with pytest.raises(PreconditionError):
        witness_module(swap, origin_stratum(swap))


@pytest.mark.parametrize("group_name", ["nested", "klein"])
def test_complete_relations_decide_every_stratum(group_name, request):
    group = request.getfixturevalue(group_name)
    checks = compare_strata(group)
    assert checks
    for check in checks:
        assert check.verdict.kind is not Verdict.INCONCLUSIVE
        assert (check.verdict.kind is Verdict.SINGULAR) == check.classifier_singular


def test_klein_singular_locus(klein):
    bases = sorted(s.lattice.basis for s in singular_locus(klein))
    assert bases == [((0, 0, 1),), ((0, 1, 0),), ((1, 0, 0),)]
