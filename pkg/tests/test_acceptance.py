"""Acceptance suite: one test per criterion, each recording a PASS/FAIL line."""

import random
import time
from fractions import Fraction

import networkx as nx

from weakdeg.configs import KINDS, PATTERNS, match_pattern
from weakdeg.covers import (brute_force_if_partition, brute_force_sfdt, find_sfdt,
                            if_partition, is_sfdt, verify_if_partition)
from weakdeg.degeneracy import (chromatic_number, constant_fmap, degeneracy,
                                is_strictly_f_degenerate, is_weakly_f_degenerate,
                                verify_op_sequence, weak_degeneracy)
from weakdeg.discharging import apply_rules, audit
from weakdeg.graph import build_graph, complete_graph, cycle_graph, path_graph
from weakdeg.reducer import config_provenance, reduce_to_empty, residual_fmap
from weakdeg.structure import structure_theorem_check

import corpus
import oracles
from clihelp import SUBCOMMANDS, argv_for, run_cli, write_fixtures
from conftest import ACCEPTANCE_LINES


def record(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def _graph(h: nx.Graph):
    return build_graph(h.edges, h.nodes)


def test_criterion_01_operation_calculus():
    start = time.perf_counter()
    mismatches = checked = 0
    for h in oracles.atlas(6):
        g = _graph(h)
        adj = oracles.nx_to_adj(h)
        for k in range(4):
            f = constant_fmap(g, k)
            ok, seq = is_weakly_f_degenerate(g, f)
            if ok != oracles.naive_weakly_degenerate(adj, f) or (ok and not verify_op_sequence(g, f, seq)):
                mismatches += 1
            checked += 1
    elapsed = time.perf_counter() - start
    record(1, mismatches == 0 and elapsed < 300,
           f"{checked} instances, {mismatches} mismatches, {elapsed:.1f}s")


def test_criterion_02_chain_inequality():
    violations = checked = 0
    for h in oracles.atlas(7):
        if h.number_of_nodes() == 0 or not nx.is_connected(h):
            continue
        g = _graph(h)
        wd = weak_degeneracy(g).value
        chi = oracles.brute_chromatic(h)
        if not chi - 1 <= wd <= degeneracy(g).value or chromatic_number(g) != chi:
            violations += 1
        checked += 1
    record(2, violations == 0, f"{checked} connected graphs, {violations} violations")


def test_criterion_03_fixed_values():
    cases = [(complete_graph(4), 3), (cycle_graph(5), 2), (path_graph(3), 1)]
    ok = True
    for g, value in cases:
        res = weak_degeneracy(g)
        ok &= res.value == value and bool(verify_op_sequence(g, constant_fmap(g, value),
                                                             res.witness))
    ok &= degeneracy(complete_graph(5)).value == 4
    record(3, ok, "wd(K4)=3, wd(C5)=2, wd(P3)=1, d(K5)=4 with replayed witnesses")


def test_criterion_04_strict_characterizations():
    bad = checked = 0
    for h in oracles.atlas(7):
        g = _graph(h)
        bad += is_strictly_f_degenerate(g, constant_fmap(g, 1)) != (h.number_of_edges() == 0)
        bad += is_strictly_f_degenerate(g, constant_fmap(g, 2)) != nx.is_forest(h) \
            if h.number_of_nodes() else 0
        checked += 1
    record(4, bad == 0, f"{checked} graphs, {bad} disagreements")


def test_criterion_05_sfdt_oracle():
    rng = random.Random(5)
    bad = found = 0
    for _ in range(200):
        n = rng.randint(1, 7)
        h = nx.gnp_random_graph(n, rng.random(), seed=rng.randrange(10**9))
        g = build_graph(h.edges, range(n))
        cover = oracles.random_cover(g, 2, rng)
        f = {cv: rng.randint(0, 2) for cv in cover.vertices()}
        t = find_sfdt(cover, f)
        if (t is not None) != bool(brute_force_sfdt(cover, f)) or (t and not is_sfdt(cover, f, t)):
            bad += 1
        found += t is not None
    record(5, bad == 0, f"200 instances ({found} with an SfDT), {bad} mismatches")


def test_criterion_06_partitions_on_corpus():
    items = corpus.class_corpus()
    failures = [name for name, pg in items
                if not ((p := if_partition(pg.graph)) and verify_if_partition(pg.graph, p))]
    k5 = complete_graph(5)
    k5_ok = if_partition(k5) is None and brute_force_if_partition(k5) is None
    record(6, len(items) >= 50 and not failures and k5_ok,
           f"{len(items)} in-class graphs, {len(failures)} failures, K5 none: {k5_ok}")


def test_criterion_07_discharging_exactness():
    plane = [pg for _, pg in corpus.class_corpus()] + [corpus.cube_plane(), corpus.k3_plane()]
    conserved = all(audit(pg).conserved for pg in plane)
    tri_pg = corpus.triangle_334()
    tri = next(i for i, f in enumerate(tri_pg.faces) if f.length == 3)
    tri_ok = apply_rules(tri_pg).face_charge[tri] == 3 - 6 + 1 + Fraction(2, 3) * 3 == 0
    sev_pg = corpus.seven_face_with_tail()
    sev = next(i for i, f in enumerate(sev_pg.faces) if f.length == 7)
    sev_ok = apply_rules(sev_pg).face_charge[sev] == 7 - 6 - Fraction(1, 4) * 2 == Fraction(1, 2)
    record(7, conserved and tri_ok and sev_ok,
           f"{len(plane)} plane graphs conserve -12: {conserved}; "
           f"(3,3,4+) face -> 0: {tri_ok}; 7-face -> 1/2: {sev_ok}")


def test_criterion_08_path_bounds():
    checks = violations = 0
    for _, pg in corpus.class_corpus():
        rep = audit(pg)
        checks += len(rep.path_checks)
        violations += sum(1 for c in rep.path_checks if not c.ok)
    record(8, violations == 0, f"{checks} maximal controlling paths, {violations} violations")


def test_criterion_09_matcher_vs_oracle():
    problems = []
    for kind in KINDS:
        hosts = [h for h in corpus.all_config_hosts() if h[0].kind == kind]
        for p, pg, _ in hosts:
            found = oracles.matcher_set(pg.graph)
            if not any(k == kind for k, _ in found) or found != oracles.oracle_config_set(pg.graph):
                problems.append(f"{kind} host")
            for label in p.labels:
                if match_pattern(corpus.config_host(p, {label: 1})[0].graph, p):
                    problems.append(f"{kind} perturbed at {label}")
    record(9, not problems, f"10 kinds, {len(PATTERNS)} hosts, problems: {problems[:3]}")


def test_criterion_10_structure_theorem():
    items = corpus.class_corpus()
    outcomes = {"two-minus-vertex": 0, "configuration": 0}
    for _, pg in items:
        outcomes[structure_theorem_check(pg).to_json()["outcome"]] += 1
    record(10, sum(outcomes.values()) == len(items), f"{len(items)} graphs, verdicts {outcomes}")


def test_criterion_11_constructive_reduction():
    bad = []
    small = corpus.small_class_corpus()
    for name, pg in small:
        trace = reduce_to_empty(pg)
        if not verify_op_sequence(pg.graph, constant_fmap(pg.graph, 2), trace.steps):
            bad.append(name)
    seen = set()
    for p, pg, _ in corpus.in_class_config_hosts():
        trace = reduce_to_empty(pg, prefer_configurations=True)
        seen.update(trace.provenance)
        if not verify_op_sequence(pg.graph, constant_fmap(pg.graph, 2), trace.steps):
            bad.append(p.kind)
    tails = all(config_provenance(k) in seen for k in KINDS if k != "CA")
    p, pg, lab = next(h for h in corpus.all_config_hosts() if h[0].kind == "CB")
    f = residual_fmap(pg.graph, lab.values())
    ring = f[lab["x2"]] == 2 and f[lab["v1"]] == 1
    record(11, not bad and tails and ring,
           f"{len(small)} graphs <= 24 vertices, failures {bad}; all nine tails used: {tails}; "
           f"ring residual g(x2)=2 > g(v1)=1: {ring}")


def test_criterion_12_determinism(tmp_path):
    fixtures = write_fixtures(tmp_path)
    differing = []
    for name, files in fixtures.items():
        for command in SUBCOMMANDS:
            args = argv_for(command, files, tmp_path)
            if run_cli(args) != run_cli(args):
                differing.append((name, command))
    record(12, not differing,
           f"{len(fixtures)} fixtures x {len(SUBCOMMANDS)} subcommands, {len(differing)} differ")
