import pytest

from diagcat import axioms as ax
from diagcat import diagrep as dr
from diagcat.abelian import parse_group
from diagcat.field import ExactField, QQ

F3 = ExactField(3)
F5 = ExactField(5)
Z2 = parse_group("Z/2")
Z4 = parse_group("Z/4")


def test_bounds_validation():
    b = ax.bounds(2, 2)
    assert b.witness_search_dimension == 4 and b.witness_search_length == 3
    with pytest.raises(ValueError):
        ax.bounds(0, 1)
    with pytest.raises(ValueError):
        ax.FragmentBound(3, 2, 2, 3)  # witness dim below fragment dim


def test_infinite_inputs_rejected():
    with pytest.raises(ValueError):
        ax.check_axioms(QQ, Z2, ax.bounds(1, 1))
    with pytest.raises(ValueError):
        ax.check_axioms(F3, parse_group("Z"), ax.bounds(1, 1))


def test_canonical_model_passes():
    report = ax.check_axioms(F3, Z2, ax.bounds(2, 2))
    assert report.all_pass
    assert len(report.results) == 27
    assert [r.index for r in report.results] == list(range(1, 28))
    assert len(report.skipped) == 0


def test_monotonicity_of_bounds():
    # axioms passing at (2, 2) stay passing at every smaller bound
    for nm in [(1, 1), (2, 1), (1, 2)]:
        report = ax.check_axioms(F3, Z2, ax.bounds(*nm))
        assert report.all_pass, nm


def test_report_json_shape():
    report = ax.check_axioms(F3, Z2, ax.bounds(1, 1))
    payload = report.to_json()
    assert payload["schema"] == 1
    assert payload["passed"] == 27 and payload["skipped"] == 0
    assert len(payload["results"]) == 27
    text = ax.report_to_text(report)
    assert "27/27 passed" in text


@pytest.mark.parametrize(
    "name",
    ["tensor-collapses-to-zero", "duplicate-irreducible", "kernel-truncated",
     "addition-projects-left", "identity-rescaled"],
)
def test_selected_mutations_flip_their_axiom(name):
    mut = ax.MUTATIONS[name]
    bound = ax.bounds(2, 2)
    model = ax.mutated_model(F3, Z2, bound, name)
    report = ax.check_axioms(F3, Z2, bound, model)
    assert sorted(r.index for r in report.failed) == [mut.axiom]


def test_mutation_counterexample_reverifies():
    """A reported counterexample must re-check against the corrupted model."""
    bound = ax.bounds(2, 2)
    model = ax.mutated_model(F3, Z2, bound, "tensor-collapses-to-zero")
    report = ax.check_axioms(F3, Z2, bound, model)
    (fail,) = report.failed
    assert fail.index == 15 and fail.witness is not None
    b = dr.parse_object(Z2, fail.witness["b"])
    c = dr.parse_object(Z2, fail.witness["c"])
    t = model.tensor_vec(
        dr.basis_vector(F3, b, 0), dr.basis_vector(F3, c, 0)
    )
    assert t.is_zero_vector()  # the corruption is real


def test_duplicate_irreducible_counterexample():
    bound = ax.bounds(2, 2)
    model = ax.mutated_model(F3, Z2, bound, "duplicate-irreducible")
    report = ax.check_axioms(F3, Z2, bound, model)
    (fail,) = report.failed
    assert fail.index == 21
    assert "dup" in (fail.witness["first"] + fail.witness["second"])


def test_mutation_catalog_targets():
    targets = sorted(m.axiom for m in ax.MUTATIONS.values())
    assert len(targets) == len(set(targets)) >= 10
