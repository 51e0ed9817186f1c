import pytest

from weakdeg.degeneracy import Delete, DeleteSave, constant_fmap, verify_op_sequence, weak_degeneracy
from weakdeg.graph import GraphError, complete_graph
from weakdeg.reducer import (FALLBACK, TWO_MINUS, MissingLabel, config_finish_sequence,
                             config_provenance, reduce_to_empty, residual_fmap)

import corpus


def _host(kind, index=0):
    return [h for h in corpus.all_config_hosts() if h[0].kind == kind][index]


def test_ring_tail_starts_with_save():
    p, pg, lab = _host("CB")
    seq = config_finish_sequence("CB", lab)
    assert seq[0] == DeleteSave(lab["x2"], lab["v1"])
    assert seq[-1] == Delete(lab["v1"])
    assert len(seq) == len(p.labels)


def test_special_tail_has_two_saves():
    p, pg, lab = _host("C_SPECIAL")
    seq = config_finish_sequence("C_SPECIAL", lab)
    assert len(seq) == 17
    assert [op for op in seq if isinstance(op, DeleteSave)] == [
        DeleteSave(lab["v6"], lab["w1"]), DeleteSave(lab["u6"], lab["w2"])]


def test_f3f4_tail_lengths():
    assert config_finish_sequence("C_F3F4A", _host("C_F3F4A")[2])[0] == DeleteSave(
        _host("C_F3F4A")[2]["v2"], _host("C_F3F4A")[2]["w1"])
    lengths = sorted(len(config_finish_sequence("C_F3F4B", h[2]))
                     for h in corpus.all_config_hosts() if h[0].kind == "C_F3F4B")
    assert lengths == [18, 19]


def test_tail_errors():
    with pytest.raises(ValueError):
        config_finish_sequence("CA", _host("CA")[2])
    with pytest.raises(MissingLabel):
        config_finish_sequence("CB", {"x2": 0})


def test_residual_values():
    g = complete_graph(4)
    assert residual_fmap(g, [0, 1]) == {0: 0, 1: 0}
    with pytest.raises(GraphError):
        residual_fmap(g, [9])


def test_ring_residual_inequality():
    p, pg, lab = _host("CB")
    f = residual_fmap(pg.graph, lab.values())
    assert f[lab["x2"]] == 2 and f[lab["v1"]] == 1


def test_tails_replay_on_every_host():
    for p, pg, lab in corpus.all_config_hosts():
        if p.kind == "CA":
            continue
        g = pg.graph
        sub = g.subgraph(lab.values())
        assert verify_op_sequence(sub, residual_fmap(g, lab.values()),
                                  config_finish_sequence(p.kind, lab)), p


def test_cycle_and_seven_face_use_low_degree_deletes():
    for pg in (corpus.cycle_plane(8), corpus.seven_face_plane()):
        trace = reduce_to_empty(pg)
        assert set(trace.provenance) == {TWO_MINUS}
        assert all(isinstance(op, Delete) for op in trace.steps)
        assert verify_op_sequence(pg.graph, constant_fmap(pg.graph, 2), trace.steps)


def test_hosts_use_fixed_orderings():
    seen = set()
    for p, pg, lab in corpus.in_class_config_hosts():
        trace = reduce_to_empty(pg, prefer_configurations=True)
        assert FALLBACK not in trace.provenance or p.kind == "CA"
        seen.update(trace.provenance)
        assert verify_op_sequence(pg.graph, constant_fmap(pg.graph, 2), trace.steps)
    for kind in ("CB", "CC", "CD", "CE", "CF", "CG", "C_SPECIAL", "C_F3F4A", "C_F3F4B"):
        assert config_provenance(kind) in seen


def test_cubic_members_reduce():
    for pg in corpus.cubic_members():
        trace = reduce_to_empty(pg)
        assert len(trace.steps) == len(pg.graph)
        assert TWO_MINUS in trace.provenance


def test_out_of_class_rejected():
    with pytest.raises(GraphError):
        reduce_to_empty(corpus.cube_plane())


def test_provenance_text_lines():
    trace = reduce_to_empty(corpus.cycle_plane(4))
    lines = trace.provenance_text().splitlines()
    assert len(lines) == 4 and all(line.endswith("\t" + TWO_MINUS) for line in lines)


def test_small_corpus_has_wd_at_most_two():
    for name, pg in corpus.small_class_corpus():
        assert weak_degeneracy(pg.graph).value <= 2, name
        trace = reduce_to_empty(pg)
        assert verify_op_sequence(pg.graph, constant_fmap(pg.graph, 2), trace.steps), name
