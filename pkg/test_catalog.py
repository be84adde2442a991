# test_catalog.py
import json
from fractions import Fraction

import pytest

from catalog import catalog_get, catalog_ids, catalog_verify_all
from errors import UnknownId
from uniformity import check_uniformity


def test_ids():
    assert catalog_ids() == ["psi11", "psi12", "psi13", "psi14", "psi15", "psiM8", "bell", "ghz3", "ghz4"]


def test_get():
    entry = catalog_get("psi11")
    assert entry.claimed_k == 3
    assert entry.document().n_qubits == 11
    assert entry.state().support_size == 32
    assert catalog_get("bell").claimed_k == 1
    with pytest.raises(UnknownId) as info:
        catalog_get("psi99")
    assert "psi99" in str(info.value)


def test_every_entry_expands_and_normalizes():
    for entry_id in catalog_ids():
        psi = catalog_get(entry_id).state()
        assert psi.is_exact
        assert abs(psi.norm_squared() - 1) < 1e-12


def test_support_sizes_follow_the_printed_prefactor():
    for entry_id, n in [("psi11", 11), ("psi12", 12), ("psi13", 13), ("psi14", 14), ("psi15", 15)]:
        psi = catalog_get(entry_id).state()
        assert psi.n_qubits == n
        assert psi.support_size == 32
        assert psi.exact_mode
    assert catalog_get("psiM8").state().scale == 64


def test_sdl_text_is_stable():
    entry = catalog_get("psi11")
    assert entry.sdl.splitlines()[2] == (
        "term: block(3,4,6,7){0000 + 1111} * block(1,2,5,8,9,10,11){0000000 + 1111111}"
    )
    assert catalog_get("psi13").sdl.splitlines()[1] == "norm 1/sqrt(32)"


def test_claimed_k_holds_at_every_lower_k():
    for entry_id in catalog_ids():
        entry = catalog_get(entry_id)
        if entry_id == "psiM8":
            continue
        psi = entry.state()
        for k in range(1, entry.claimed_k + 1):
            assert check_uniformity(psi, k, exact=True).is_k_uniform, (entry_id, k)


def test_verify_all():
    results = {r.id: r for r in catalog_verify_all()}
    assert list(results) == catalog_ids()
    counts = {"psi11": 165, "psi12": 220, "psi13": 286, "psi14": 364, "psi15": 455}
    for entry_id, count in counts.items():
        report = results[entry_id].report
        assert report.mode == "exact"
        assert len(report.verdicts) == count
        assert report.is_k_uniform
        assert all(v.purity_trace.exact == Fraction(1, 8) for v in report.verdicts)
    assert results["bell"].passed
    assert results["ghz3"].passed

    signed = results["psiM8"]
    assert signed.error is None
    assert len(signed.report.verdicts) == 56
    assert len(signed.purity_table) == 70
    assert len(signed.reference_check) == 35
    assert signed.notes
    assert not signed.passed
    # already unbalanced on single qubits
    assert signed.witness_size == 1
    assert signed.minimal_witness == [(q,) for q in range(1, 9)]
    assert signed.to_dict()["minimal_witness"] == {"size": 1, "subsets": [[q] for q in range(1, 9)]}
    assert results["psi11"].witness_size is None
    assert results["psi11"].to_dict()["minimal_witness"] is None


def test_verify_all_json_is_thread_independent():
    one = json.dumps([r.to_dict() for r in catalog_verify_all(threads=1)])
    many = json.dumps([r.to_dict() for r in catalog_verify_all(threads=8)])
    assert one == many
