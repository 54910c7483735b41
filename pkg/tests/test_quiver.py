import pytest

from sgcoh.errors import QuiverSyntaxError, ResourceGuardError, UsageError
from sgcoh.quiver import (
    compose,
    crown,
    format_path,
    line_quiver,
    multi_loop,
    one_loop,
    parse_quiver,
)


def test_one_loop_paths_and_pairs():
    q = one_loop()
    for m in range(6):
        assert len(q.paths(m)) == 1
        assert q.path_count(m) == 1
    for m in range(4):
        for p in range(4):
            assert q.pair_count(m, p) == 1


def test_two_loops_counts():
    q = multi_loop(2)
    for m in range(6):
        assert q.path_count(m) == 2 ** m
        assert len(q.paths(m)) == 2 ** m
    assert q.pair_count(1, 1) == 4
    assert q.pair_count(2, 3) == 32
    assert q.pair_count(3, 3) == 64


def test_crown_pair_parity():
    q = crown(2)
    assert q.pair_count(1, 2) == 0
    assert q.pair_count(1, 3) == 2
    assert q.pair_count(2, 2) == 2
    assert q.pair_count(0, 4) == 2
    q4 = crown(4)
    # paths from a fixed vertex meet again only after a full cycle
    assert q4.pair_count(1, 5) == 4
    assert q4.pair_count(1, 3) == 0


def test_line_quiver_runs_out_of_paths():
    q = line_quiver(3)
    assert q.path_count(0) == 3
    assert q.path_count(1) == 2
    assert q.path_count(2) == 1
    assert q.path_count(3) == 0
    assert q.is_acyclic()
    assert q.classify()["sources"] == ["v1"]
    assert q.classify()["sinks"] == ["v3"]


LOOP_EDGE_EDGE_LOOP = """
vertices: v1 v2 v3
arrow a: v1 -> v1
arrow c: v1 -> v2
arrow d: v2 -> v3
arrow b: v3 -> v3
"""


def test_loop_edge_edge_loop_counts():
    q = parse_quiver(LOOP_EDGE_EDGE_LOOP)
    assert q.path_count(1) == 4
    assert q.path_count(2) == 5
    words = sorted(format_path(p) for p in q.paths(2))
    assert words == ["a*a", "b*b", "b*d", "c*a", "d*c"]
    assert not q.source_vertices() and not q.sink_vertices()
    assert not q.is_crown()


def test_path_composition_order():
    # written word: rightmost arrow acts first, compose(first, second)
    # stacks second after first and needs first.source == second.target
    q = parse_quiver(LOOP_EDGE_EDGE_LOOP)
    c = q.arrow_path("c")
    d = q.arrow_path("d")
    dc = compose(d, c)
    assert dc is not None
    assert format_path(dc) == "d*c"
    assert dc.source == "v1" and dc.target == "v3"
    assert compose(c, d) is None


def test_trivial_path_roundtrip():
    q = crown(2)
    e = q.trivial_path("v1")
    assert len(e) == 0
    assert e.source == e.target == "v1"
    a = q.arrow_path("a")
    assert compose(a, e) == a
    assert compose(q.trivial_path("v2"), a) == a


def test_path_order_is_stable():
    q = multi_loop(2)
    words = [format_path(p) for p in q.paths(2)]
    assert words == ["a*a", "a*b", "b*a", "b*b"]
    for i, p in enumerate(q.paths(2)):
        assert q.path_position(p) == i


def test_parallel_pairs_guard():
    q = multi_loop(3)
    with pytest.raises(ResourceGuardError):
        q.parallel_pairs(4, 4, guard=100)
    # under the guard everything materializes
    assert len(q.parallel_pairs(1, 1, guard=100)) == 9


def test_pair_position_of_foreign_pair():
    q = multi_loop(2)
    pairs = q.parallel_pairs(1, 1)
    assert q.pair_position(1, 1, pairs[0]) == 0
    assert q.pair_position(2, 1, pairs[0]) is None


def test_parse_errors_carry_line_numbers():
    with pytest.raises(QuiverSyntaxError) as err:
        parse_quiver("arrow a: v -> v\n", source_name="bad.q")
    assert "bad.q:1" in str(err.value)
    with pytest.raises(QuiverSyntaxError) as err:
        parse_quiver("vertices: v\nnot an arrow\n", source_name="bad.q")
    assert "bad.q:2" in str(err.value)
    with pytest.raises(QuiverSyntaxError):
        parse_quiver("vertices: v\narrow a: v -> w\n")
    with pytest.raises(QuiverSyntaxError):
        parse_quiver("vertices: v\narrow a: v -> v\narrow a: v -> v\n")


def test_parse_comments_and_blank_lines():
    text = "# heading\n\nvertices: u w\n# mid\narrow a: u -> w\n"
    q = parse_quiver(text)
    assert q.vertices == ("u", "w")
    assert [a.name for a in q.arrows] == ["a"]


def test_classify_crowns():
    assert one_loop().is_crown()
    assert crown(2).is_crown()
    assert crown(5).is_crown()
    assert not multi_loop(2).is_crown()
    assert not line_quiver(2).is_crown()


def test_unknown_names_raise():
    q = one_loop()
    with pytest.raises(UsageError):
        q.arrow_path("zz")
    with pytest.raises(UsageError):
        q.trivial_path("zz")
