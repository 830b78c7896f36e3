import itertools

import pytest

from oracles import make_rng, oracle_normalize, random_map, random_table
from rdfmat.benchkit import build_benchmark_map
from rdfmat.errors import MissingSourceError, UnboundColumnError
from rdfmat.ingestion import SourceTable, load_source, write_source
from rdfmat.mapping import (
    ColumnRef,
    IriTemplate,
    LogicalSource,
    MappingSet,
    Placeholder,
    PredicateObjectMap,
    SourceFormat,
    SubjectMap,
    TriplesMap,
)
from rdfmat.normalization import normalize, normalize_all, row_digest


def tmap(map_id, source, subject_cols, attr_cols, class_iri="http://ex.org/C"):
    segments = ["http://ex.org/s"]
    for c in subject_cols:
        segments += ["/", Placeholder(c)]
    poms = tuple(PredicateObjectMap(f"http://ex.org/p/{c}", ColumnRef(c)) for c in attr_cols)
    return TriplesMap(map_id, LogicalSource(source, SourceFormat.from_name(source)),
                      SubjectMap(IriTemplate(tuple(segments)), class_iri), poms)


def test_projection_twenty_to_five():
    header = tuple(f"C{i}" for i in range(20))
    src = SourceTable("w.tsv", header, tuple(tuple(f"{r}.{c}" for c in range(20)) for r in range(10)),
                      SourceFormat.TSV)
    nt = normalize(src, build_benchmark_map("w.tsv", 4))
    assert nt.header == ("C0", "C1", "C2", "C3", "C4")
    assert nt.subject_columns == ("C0",)
    assert nt.rows[3] == ("3.0", "3.1", "3.2", "3.3", "3.4")


def test_dedup_four_to_three():
    src = SourceTable("d.tsv", ("K", "A", "X"), (
        ("1", "a", "x1"), ("1", "a", "x2"), ("2", "b", "x3"), ("3", None, "x4")), SourceFormat.TSV)
    nt = normalize(src, tmap("http://ex.org/m", "d.tsv", ["K"], ["A"]))
    assert nt.rows == (("1", "a"), ("2", "b"), ("3", None))
    assert (nt.stats.rows_in, nt.stats.rows_out, nt.stats.duplicates_dropped) == (4, 3, 1)


def test_all_null_subject_dropped_partial_kept():
    src = SourceTable("d.tsv", ("K1", "K2", "A"), (
        (None, None, "a"), ("1", None, "b"), (None, "2", "c")), SourceFormat.TSV)
    nt = normalize(src, tmap("http://ex.org/m", "d.tsv", ["K1", "K2"], ["A"]))
    assert nt.rows == (("1", None, "b"), (None, "2", "c"))
    assert nt.stats.null_subject_dropped == 1


def test_values_preserved_exactly():
    src = SourceTable("d.tsv", ("K", "A"), ((" k ", " Mixed Case "),), SourceFormat.TSV)
    nt = normalize(src, tmap("http://ex.org/m", "d.tsv", ["K"], ["A"]))
    assert nt.rows == ((" k ", " Mixed Case "),)


def test_unbound_column():
    src = SourceTable("d.tsv", ("K",), (), SourceFormat.TSV)
    with pytest.raises(UnboundColumnError) as info:
        normalize(src, tmap("http://ex.org/m", "d.tsv", ["K"], ["GONE", "ALSO"]))
    assert info.value.columns == ["GONE", "ALSO"]


def test_first_use_column_order():
    tm = TriplesMap("http://ex.org/m", LogicalSource("d.csv", SourceFormat.CSV),
                    SubjectMap(IriTemplate(("http://ex.org/", Placeholder("B"), "/", Placeholder("A"))),
                               "http://ex.org/C"),
                    (PredicateObjectMap("http://ex.org/p", ColumnRef("C")),
                     PredicateObjectMap("http://ex.org/q", ColumnRef("A")),
                     PredicateObjectMap("http://ex.org/r",
                                        IriTemplate(("http://ex.org/v/", Placeholder("D"))))))
    src = SourceTable("d.csv", ("A", "B", "C", "D", "E"), (("a", "b", "c", "d", "e"),))
    nt = normalize(src, tm)
    assert nt.header == ("B", "A", "C", "D")
    assert nt.subject_columns == ("B", "A")
    assert nt.rows == (("b", "a", "c", "d"),)


@pytest.mark.parametrize("seed", range(10))
def test_random_thousand_rows_against_set_oracle(seed):
    rng = make_rng(seed)
    header, rows = random_table(rng, 1000, 8, null_rate=0.3, key_null_rate=0.05, distinct_values=4)
    # many duplicate projections: replicate half of the rows
    rows = rows + [rows[rng.randrange(len(rows))] for _ in range(500)]
    rng.shuffle(rows)
    tm = random_map(rng, header, rng.randint(1, 6), source_name="r.tsv", extras=True)
    nt = normalize(SourceTable("r.tsv", tuple(header), tuple(rows), SourceFormat.TSV), tm)
    expected = oracle_normalize(header, rows, list(nt.header), list(nt.subject_columns))
    assert list(nt.rows) == expected
    assert len(nt.rows) <= len(rows)
    assert set(nt.header) <= set(header)


@pytest.mark.parametrize("seed", range(5))
def test_idempotent(seed):
    rng = make_rng(seed)
    header, rows = random_table(rng, 200, 5, null_rate=0.4, key_null_rate=0.1, distinct_values=3)
    tm = random_map(rng, header, 3, source_name="r.tsv", extras=False)
    once = normalize(SourceTable("r.tsv", tuple(header), tuple(rows), SourceFormat.TSV), tm)
    twice = normalize(once.as_source(), tm)
    assert twice == once


def test_equality_iff_nothing_removed():
    src = SourceTable("d.tsv", ("K", "A"), (("1", "a"), ("2", "b")), SourceFormat.TSV)
    nt = normalize(src, tmap("http://ex.org/m", "d.tsv", ["K"], ["A"]))
    assert len(nt.rows) == len(src.rows)


def test_streamed_matches_materialized(tmp_path):
    rng = make_rng(3)
    header, rows = random_table(rng, 400, 6, null_rate=0.3, key_null_rate=0.1, distinct_values=3, nasty=0.0)
    rows = rows + rows[:100]
    path = tmp_path / "r.tsv"
    write_source(SourceTable("r.tsv", tuple(header), tuple(rows), SourceFormat.TSV), path)
    tm = random_map(rng, header, 4, source_name="r.tsv", extras=True)
    lazy = normalize(load_source(path, materialize=False), tm)
    eager = normalize(load_source(path), tm)
    assert not lazy.materialized
    assert lazy.materialize() == eager
    assert lazy.stats == eager.stats
    assert tuple(lazy.rows) == tuple(lazy.rows)


def test_row_digest_distinguishes_null_from_empty():
    assert row_digest((None,)) != row_digest(("",))
    assert row_digest(("a\x1fb",)) != row_digest(("a", "b"))
    assert row_digest(("a\\", "b")) != row_digest(("a", "\\b"))


def test_normalize_all_one_source_two_maps():
    src = SourceTable("s.tsv", ("K", "A", "B"), (("1", "a", "b"),), SourceFormat.TSV)
    m = MappingSet((tmap("http://ex.org/m1", "s.tsv", ["K"], ["A"], "http://ex.org/C1"),
                    tmap("http://ex.org/m2", "s.tsv", ["K"], ["B"], "http://ex.org/C2")))
    out = normalize_all([src], m)
    assert [t.class_iri for t in out] == ["http://ex.org/C1", "http://ex.org/C2"]


def test_normalize_all_two_sources():
    a = SourceTable("a.csv", ("K", "A"), (("1", "x"),))
    b = SourceTable("b.tsv", ("K", "B"), (("1", "y"),), SourceFormat.TSV)
    m = MappingSet((tmap("http://ex.org/m1", "a.csv", ["K"], ["A"]), tmap("http://ex.org/m2", "b.tsv", ["K"], ["B"])))
    out = normalize_all([b, a], m)
    assert [t.source_name for t in out] == ["a.csv", "b.tsv"]


def test_normalize_all_binding_enumeration():
    # every assignment of 4 classes to 3 sources; the oracle is a direct enumeration
    sources = [SourceTable(f"s{i}.tsv", ("K", f"A{i}"), ((f"k{i}", f"v{i}"),), SourceFormat.TSV) for i in range(3)]
    for assignment in itertools.product(range(3), repeat=4):
        maps = MappingSet(tuple(
            tmap(f"http://ex.org/m{c}", f"s{s}.tsv", ["K"], [f"A{s}"], f"http://ex.org/C{c}")
            for c, s in enumerate(assignment)))
        out = normalize_all(sources, maps)
        expected = [(f"http://ex.org/C{c}", f"s{s}.tsv", ((f"k{s}", f"v{s}"),)) for c, s in enumerate(assignment)]
        assert [(t.class_iri, t.source_name, t.rows) for t in out] == expected


def test_missing_source():
    m = MappingSet((tmap("http://ex.org/m", "nowhere.csv", ["K"], []),))
    with pytest.raises(MissingSourceError) as info:
        normalize_all([], m)
    assert info.value.source_name == "nowhere.csv"


def test_dump(tmp_path):
    src = SourceTable("d.csv", ("K", "A"), (("1", None), ("2", "b")))
    nt = normalize(src, tmap("http://ex.org/m", "d.csv", ["K"], ["A"]))
    path = nt.dump(tmp_path / "dump")
    assert path.suffix == ".tsv"
    assert path.read_text() == "K\tA\n1\t\n2\tb\n"
