import pytest

from osl.laws import LAWS, check_laws
from osl.ospace import FiniteFlat, FiniteOSpace
from osl.zoo import parse_model

EXPECTED = {
    "complement-of-union", "complement-antitone", "closure-operator", "closure-complement",
    "projection-ignores-closure", "closure-meets-complement-in-zero", "meet-below-projection",
    "projection-onto-superflat", "orthomodularity", "commutation", "residual",
    "projection-absorbs-dual", "projection-distributes-over-union", "nested-projection",
    "commuting-measurements", "right-and-soundness", "turnstile-move", "state-orthogonality",
    "o-subspace",
}


def test_law_catalogue():
    assert set(LAWS) == EXPECTED


def test_all_laws_hold(any_model):
    name, s = any_model
    report = check_laws(s)
    assert report.ok, f"{name}\n{report}"
    assert all(r.checked > 0 for r in report.results.values())


def test_subset_of_laws():
    from osl.zoo import classical_sets
    report = check_laws(classical_sets(2), ["orthomodularity", "commutation"])
    assert list(report.results) == ["orthomodularity", "commutation"]
    with pytest.raises(KeyError):
        check_laws(classical_sets(2), ["no-such-law"])


def test_asymmetric_relation_breaks_laws(samples):
    s = parse_model((samples / "models" / "asymmetric.model").read_text())
    report = check_laws(s)
    failed = {r.name for r in report.failures()}
    assert "closure-operator" in failed
    assert report["closure-operator"].witness == "A={1}"


def test_unclosed_family_breaks_o_subspace():
    F = FiniteFlat.of
    s = FiniteOSpace(3, [[False, True, False], [True, False, False], [False, False, False]],
                     [F([]), F([0]), F([0, 1, 2])], validate=False)
    report = check_laws(s)
    assert [r.name for r in report.failures()] == ["o-subspace"]
    assert "closure of {1}" in report["o-subspace"].witness
