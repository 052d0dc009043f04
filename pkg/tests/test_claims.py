import pytest

from ceslab.claims import Claim, ClaimStatus, evaluate, registry, run_claims, select


def test_registry_size_and_unique_ids():
    reg = registry()
    ids = [c.claim_id for c in reg]
    assert len(reg) >= 40
    assert len(ids) == len(set(ids))


def test_uncheckable_rows_carry_reasons():
    nmc = [c for c in registry() if c.check is None]
    assert nmc and all(c.reason for c in nmc)
    assert {c.claim_id for c in nmc if "np" in c.tags} == {"P7.1-nmc-Np", "P7.2-nmc-Np"}


def test_select_by_substring_and_tag():
    reg = registry()
    assert [c.claim_id for c in select(reg, "P4.2i-norm-l1")] == ["P4.2i-norm-l1", "P4.2i-norm-l1-t0"]
    hahn_rows = select(reg, "hahn")
    assert len(hahn_rows) >= 10 and all("hahn" in c.tags or "hahn" in c.claim_id.lower() for c in hahn_rows)
    assert select(reg, None) == reg
    assert select(reg, "no-such-claim") == []


def test_np_filter_rows():
    rows = run_claims("np")
    assert len(rows) == 2
    assert all(r.status is ClaimStatus.NMC and r.reason == "N^p norm not defined in paper" for r in rows)


def test_evaluate_outcomes():
    ok = evaluate(Claim("x", "here", "1", check=lambda: ("1", True)))
    bad = evaluate(Claim("y", "here", "1", check=lambda: ("2", False)))
    assert ok.status is ClaimStatus.PASS and bad.status is ClaimStatus.FAIL and bad.computed == "2"


def test_crashing_check_is_reported_as_fail():
    row = evaluate(Claim("z", "here", "1", check=lambda: 1 / 0))
    assert row.status is ClaimStatus.FAIL and row.computed.startswith("error:")


def test_rows_sorted_and_thread_independent(monkeypatch):
    serial = run_claims("hahn", threads=1)
    assert [r.claim_id for r in serial] == sorted(r.claim_id for r in serial)
    monkeypatch.setenv("CESLAB_THREADS", "4")
    assert run_claims("hahn") == serial


@pytest.mark.parametrize("flt", ["norm-l1", "P11.2", "Ex12.8"])
def test_selected_claims_pass(flt):
    rows = run_claims(flt)
    assert any(r.status is ClaimStatus.PASS for r in rows)
    assert not [r for r in rows if r.status is ClaimStatus.FAIL]


def test_as_dict_columns():
    row = run_claims("P4.1i-norm-l3")[0].as_dict()
    assert list(row) == ["claim_id", "locus", "computed", "expected", "status", "reason"]
    assert row["status"] == "Pass"

