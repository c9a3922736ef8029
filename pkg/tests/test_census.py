from __future__ import annotations

import json
import os
from collections import Counter

import pytest

from gcg.automorphisms import enumerate_involutory_automorphisms
from gcg.caps import Caps
from gcg.census import RunConfig, compute_record, refuting_records, run_census
from gcg.construct import make_spec
from gcg.automorphisms import inversion_map
from gcg.groups import make_group

from oracles.brute import naive_census_count


def read_lines(path):
    with open(path, "r", encoding="ascii") as fh:
        return [line for line in fh if line.strip()]


def test_single_group_census(tmp_path, caps):
    out = tmp_path / "z8.jsonl"
    records = run_census(RunConfig(groups=("Z8",), out_path=str(out), caps=caps))
    assert len(records) == 44
    # alphas sort by perm: identity, x -> 3x, x -> 5x, x -> 7x (inversion)
    by_alpha = Counter(r["alpha_index"] for r in records)
    assert by_alpha == {0: 16, 1: 4, 2: 8, 3: 16}
    assert not os.path.exists(str(out) + ".journal")
    assert not os.path.exists(str(out) + ".part")
    # records carry every analysis column
    for r in records:
        for key in ("group", "alpha_index", "alpha", "set_ids", "order", "degree",
                    "connected", "bipartite", "unworthy", "kernel_size",
                    "triangle_hash", "fingerprint", "vertex_transitive",
                    "cayley", "stability"):
            assert key in r, key
    assert refuting_records(records) == []


def test_full_catalog_counts_up_to_8(tmp_path, caps):
    out = tmp_path / "census8.jsonl"
    records = run_census(RunConfig(max_order=8, out_path=str(out), caps=caps))
    per_group = Counter(r["group"] for r in records)
    assert per_group == {
        "Z1": 1, "Z2": 2, "Z3": 3, "Z4": 8, "Z2xZ2": 14, "D4": 14, "Z5": 5,
        "Z6": 16, "Z2xZ3": 16, "D6": 28, "Z7": 9,
        "Z8": 44, "Z2xZ4": 160, "Z2xZ2xZ2": 464, "D8": 144,
    }
    assert len(records) == 928
    assert refuting_records(records) == []

    # the oracle recount sees exactly the same totals
    triples = []
    for name in per_group:
        g = make_group(name, caps)
        triples.append(
            (g.mul, g.inv, [a.perm for a in enumerate_involutory_automorphisms(g)])
        )
    assert naive_census_count(triples) == 928

    # sorted output: (group, alpha_index, set_ids) ascending
    keys = [(r["group"], r["alpha_index"], tuple(r["set_ids"])) for r in records]
    assert keys == sorted(keys)


def test_worker_count_does_not_change_bytes(tmp_path, caps):
    serial = tmp_path / "serial.jsonl"
    parallel = tmp_path / "parallel.jsonl"
    cfg = dict(max_order=6, caps=caps)
    run_census(RunConfig(out_path=str(serial), jobs=1, **cfg))
    run_census(RunConfig(out_path=str(parallel), jobs=2, **cfg))
    assert serial.read_bytes() == parallel.read_bytes()


def test_census_resumes_from_journal(tmp_path, caps):
    # reference run
    ref = tmp_path / "ref.jsonl"
    cfg = dict(groups=("Z4", "Z5"), caps=caps)
    expected = run_census(RunConfig(out_path=str(ref), **cfg))

    # fabricate an interrupted run: Z4|0 journaled with its records in the
    # part file, plus an orphan record from an unjournaled item
    out = tmp_path / "resume.jsonl"
    z4_first = [r for r in expected if r["group"] == "Z4" and r["alpha_index"] == 0]
    orphan = dict(z4_first[0])
    orphan["alpha_index"] = 1
    orphan["triangle_hash"] = "feedfacefeedface"
    with open(str(out) + ".part", "w", encoding="ascii") as fh:
        for rec in z4_first + [orphan]:
            fh.write(json.dumps(rec, sort_keys=True, separators=(",", ":")) + "\n")
    with open(str(out) + ".journal", "w", encoding="ascii") as fh:
        fh.write("Z4|0\n")

    resumed = run_census(RunConfig(out_path=str(out), **cfg))
    assert resumed == expected
    assert ref.read_bytes() == out.read_bytes()
    # the orphan was recomputed, not trusted
    assert not any(r["triangle_hash"] == "feedfacefeedface" for r in resumed)


def test_census_reload_is_idempotent(tmp_path, caps):
    out = tmp_path / "reload.jsonl"
    cfg = RunConfig(groups=("Z6",), out_path=str(out), caps=caps)
    first = run_census(cfg)
    stamp = out.stat().st_mtime_ns
    again = run_census(cfg)
    assert again == first
    assert out.stat().st_mtime_ns == stamp  # file untouched on reload


def test_refuting_records_fire_on_fabricated_rows(tmp_path, caps):
    g = make_group("Z6", caps)
    spec = make_spec(g, inversion_map(g), (1, 3, 5))
    good = compute_record(spec, 1, caps)
    assert refuting_records([good]) == []

    bad_degree = dict(good, degree=99)
    assert any("regular" in why for _, why in refuting_records([bad_degree]))

    bad_unworthy = dict(good, unworthy=not good["unworthy"])
    assert any("unworthiness" in why for _, why in refuting_records([bad_unworthy]))

    bad_cayley = dict(good, cayley="cayley", vertex_transitive=False)
    assert any("vertex-transitive" in why for _, why in refuting_records([bad_cayley]))

    bad_2p = dict(good, cayley="not_cayley")
    assert any("order-2p" in why for _, why in refuting_records([bad_2p]))

    bad_stable = dict(good, stability="stable", cayley="not_cayley", order=12)
    assert any("stable instance" in why for _, why in refuting_records([bad_stable]))

    # applicability checks need a connected non-bipartite base record
    g6 = make_group("Z6", caps)
    from gcg.automorphisms import identity_automorphism

    tri = compute_record(make_spec(g6, identity_automorphism(g6), (1, 2, 4, 5)), 0, caps)
    assert tri["connected"] and not tri["bipartite"]
    assert refuting_records([tri]) == []
    flipped = dict(tri, stability="not_applicable")
    flopped = dict(tri, connected=False)
    hits = refuting_records([flipped]) + refuting_records([flopped])
    assert sum("applicability" in why for _, why in hits) == 2


def test_known_intransitive_family_appears(tmp_path, caps):
    out = tmp_path / "z2z2z3.jsonl"
    records = run_census(RunConfig(groups=("Z2xZ2xZ3",), out_path=str(out), caps=caps))
    assert len(records) == 760
    non_vt = [r for r in records if r["vertex_transitive"] is False]
    assert len(non_vt) == 228
    # the inversion map sorts to alpha index 4 and owns most of them
    assert sum(1 for r in non_vt if r["alpha_index"] == 4) == 204
    assert refuting_records(records) == []


def test_bad_config_rejected():
    with pytest.raises(ValueError):
        RunConfig(jobs=0)
    with pytest.raises(ValueError):
        RunConfig(max_order=0)
