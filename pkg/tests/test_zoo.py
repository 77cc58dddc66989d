import itertools

import pytest
from hypothesis import given, settings, strategies as st

from osl.errors import ParseError, StructureError
from osl.ospace import FiniteFlat, FiniteOSpace, check_axioms, generate_flat_family
from osl.zoo import (FINITE_ZOO, ModelSpec, classical_sets, format_model, load_model, parse_model,
                     powerset_space, resolve_model, save_model, union)


def F(*xs):
    return FiniteFlat.of(xs)


def isomorphic(a, b):
    if a.size != b.size:
        return False
    fb = set(b.flats())
    for perm in itertools.permutations(range(a.size)):
        if all(a.orth[i][j] == b.orth[perm[i]][perm[j]] for i in range(a.size) for j in range(a.size)):
            if {FiniteFlat.of(perm[x] for x in f) for f in a.flats()} == fb:
                return True
    return False


def test_classical_one_point():
    s = classical_sets(1)
    assert s.zero() == F()
    assert set(s.flats()) == {F(), F(0)}


def test_classical_two_has_four_flats():
    assert len(generate_flat_family(classical_sets(2))) == 4


def test_powerset_small_cases():
    s0 = powerset_space(0)
    assert s0.size == 1 and s0.zero() == F(0)
    s1 = powerset_space(1)
    assert s1.zero() == F(0)
    assert set(s1.flats()) == {F(0), F(0, 1)}
    assert len(powerset_space(2).flats()) == 4


def test_powerset_flats_are_principal():
    m = 3
    s = powerset_space(m)
    expected = {FiniteFlat.of(x for x in range(1 << m) if x & ~b == 0) for b in range(1 << m)}
    assert set(s.flats()) == expected
    assert set(generate_flat_family(s)) == expected


def test_union_of_two_points_is_classical_two():
    u = union(classical_sets(1), classical_sets(1))
    assert isomorphic(u, classical_sets(2))
    assert not isomorphic(powerset_space(1), classical_sets(2))


def test_union_zero_and_complement():
    s0, s1 = classical_sets(3), powerset_space(2)
    u = union(s0, s1)
    assert u.zero() == F(*s0.zero(), *(3 + z for z in s1.zero()))
    for A in s0.flats():
        for B in s1.flats():
            AB = FiniteFlat.of(list(A) + [3 + b for b in B])
            expected = list(s0.complement(A)) + [3 + b for b in s1.complement(B)]
            assert u.complement(AB) == FiniteFlat.of(expected)


def test_every_zoo_model_passes_axioms():
    for name in FINITE_ZOO:
        assert check_axioms(resolve_model(name)).ok, name


def test_classical_exchange_is_valid():
    from osl.semantics import valid_in_model
    from osl.syntax import parse_sequent
    s = classical_sets(2)
    assert valid_in_model(s, parse_sequent("p, q, ~p |-")).valid
    assert valid_in_model(s, parse_sequent("q, p, ~p |-")).valid


def test_constructor_errors():
    with pytest.raises(StructureError):
        classical_sets(0)
    with pytest.raises(StructureError):
        powerset_space(-1)


# --- specs -------------------------------------------------------------------

@pytest.mark.parametrize("text", ["sets:3", "powerset:2", "q2", "union(sets:2,powerset:2)",
                                  "union(union(sets:1,sets:1),powerset:1)"])
def test_spec_round_trip(text):
    assert str(ModelSpec.parse(text)) == text
    assert str(ModelSpec.parse("zoo:" + text)) == text


def test_spec_file_and_errors(samples):
    spec = ModelSpec.parse(str(samples / "models" / "sets2.model"))
    assert spec.kind == "file"
    assert spec.build() == classical_sets(2)
    with pytest.raises(ParseError):
        ModelSpec.parse("zoo:nonsense")
    with pytest.raises(ParseError):
        ModelSpec.parse("union(sets:1)")


# --- files ---------------------------------------------------------------------

def test_save_load_round_trip(tmp_path):
    for name in FINITE_ZOO:
        s = resolve_model(name)
        p = tmp_path / "m.model"
        save_model(s, p)
        t, report = load_model(p)
        assert t == s and report.ok
        assert format_model(t) == p.read_text()


def test_sample_files_are_canonical(samples):
    for p in sorted((samples / "models").glob("*.model")):
        assert format_model(parse_model(p.read_text())) == p.read_text(), p.name


def test_bad_sample_files_report_failures(samples):
    _, rep = load_model(samples / "models" / "asymmetric.model")
    assert not rep["S"].passed
    _, rep = load_model(samples / "models" / "missing_singleton.model")
    assert not rep["F"].passed
    with pytest.raises(StructureError):
        load_model(samples / "models" / "asymmetric.model", strict=True)


def test_file_without_flats_generates_family():
    s = parse_model("space 3\north 0 1\north 1 2\n")
    expected = generate_flat_family(FiniteOSpace(3, s.orth, flats=[]))
    assert set(s.flats()) == set(expected)
    assert check_axioms(s).ok


@pytest.mark.parametrize("text", ["", "orth 0 1\n", "space 2\north 0 5\n", "space 2\nflat x\n",
                                  "space 2\nspace 3\n", "space 2\nfrob 1\n", "space 2\north 1\n"])
def test_malformed_model_files(text):
    with pytest.raises(ParseError):
        parse_model(text)


def test_comments_and_blank_lines():
    s = parse_model("# two points\nspace 2\n\north 0 1  # distinct\n")
    assert s == classical_sets(2)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.data())
def test_random_model_round_trip(n, data):
    orth = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            orth[i][j] = orth[j][i] = data.draw(st.booleans())
    s = FiniteOSpace(n, orth)
    text = format_model(s)
    assert parse_model(text) == s
    assert format_model(parse_model(text)) == text
