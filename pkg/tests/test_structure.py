import pytest

from weakdeg.configs import find_configurations
from weakdeg.graph import GraphError
from weakdeg.structure import (Richness, SpecialType, controls, face_profile, is_special_8_face,
                               lemma1_audit, structure_theorem_check)

import corpus


def _face_of_size(pg, n):
    return next(i for i, f in enumerate(pg.faces) if f.length == n)


def test_shared_edges_control_the_shaded_face():
    pg = corpus.seven_face_plane()
    shaded = pg.dart_face[(0, 3)]
    assert pg.face_size(shaded) == 4
    assert controls(pg, 0, 2) == shaded
    assert controls(pg, 0, 3) == shaded


def test_no_control_between_equal_large_or_small_faces():
    c8 = corpus.cycle_plane(8)
    assert all(controls(c8, u, v) is None for u, v in c8.graph.edges())
    cube = corpus.cube_plane()
    assert all(controls(cube, u, v) is None for u, v in cube.graph.edges())


def test_seven_face_profile():
    pg = corpus.seven_face_plane()
    prof = face_profile(pg, _face_of_size(pg, 7))
    # every boundary edge borders the triangle or one of the two 4-faces
    assert all(c is not None for c in prof.controlled)
    assert len(prof.runs) == 1 and prof.runs[0].closed
    assert set(prof.richness) == {Richness.POOR}
    assert prof.s0 == 0 and prof.t3_prime == 1


def test_uncontrolled_face_is_all_rich():
    prof = face_profile(corpus.cycle_plane(8), 0)
    assert prof.runs == () and prof.s0 == 8
    assert set(prof.richness) == {Richness.RICH}


def test_ca_fixture_has_one_short_run():
    pg, fid = corpus.ca_plane_fixture()
    prof = face_profile(pg, fid)
    assert [r.length for r in prof.runs] == [1]
    assert prof.s0 == 6 and prof.t3_prime == 1
    assert prof.richness.count(Richness.SEMI_RICH) == 2


def test_profile_needs_large_face():
    pg = corpus.cube_plane()
    with pytest.raises(GraphError):
        face_profile(pg, 0)


@pytest.mark.parametrize("kind, expected", [("I", SpecialType.TYPE_I),
                                            ("II", SpecialType.TYPE_II)])
def test_special_face_types(kind, expected):
    pg, fid = corpus.special_face_fixture(kind)
    assert is_special_8_face(pg, fid) is expected


def test_plain_octagon_not_special():
    assert is_special_8_face(corpus.cycle_plane(8), 0) is None


def test_cube_audit_reports_adjacent_4_faces():
    found = lemma1_audit(corpus.cube_plane())
    assert found and {v.item for v in found} == {"5"}
    assert len(found) == 12


def test_seven_face_audit_reports_only_low_degree_effects():
    found = lemma1_audit(corpus.seven_face_plane())
    assert {v.item for v in found} == {"4", "5"}


def test_audit_empty_on_min_degree_three_members():
    members = [(name, pg) for name, pg in corpus.class_corpus()
               if min(pg.graph.degree(v) for v in pg.graph.vertices) >= 3]
    assert members
    for name, pg in members:
        assert lemma1_audit(pg) == [], name


def test_structure_check_verdicts():
    assert structure_theorem_check(corpus.cycle_plane(8)).two_minus_vertex == 0
    assert structure_theorem_check(corpus.seven_face_plane()).two_minus_vertex is not None
    for pg in corpus.cubic_members():
        verdict = structure_theorem_check(pg)
        assert verdict.two_minus_vertex is None
        assert verdict.configuration in find_configurations(pg.graph)


def test_structure_check_rejects_out_of_class():
    with pytest.raises(GraphError):
        structure_theorem_check(corpus.cube_plane())


def test_structure_check_never_contradicts_on_corpus():
    for name, pg in corpus.class_corpus():
        verdict = structure_theorem_check(pg)
        assert (verdict.two_minus_vertex is None) != (verdict.configuration is None), name


def test_profile_counts_on_corpus():
    for name, pg in corpus.class_corpus():
        for fid, face in enumerate(pg.faces):
            if face.length < 7:
                continue
            prof = face_profile(pg, fid)
            assert len(prof.richness) == face.length
            on_run = set()
            for run in prof.runs:
                on_run.update((run.start + j) % face.length for j in range(run.length + 1))
            assert prof.s0 == face.length - len(on_run), name
