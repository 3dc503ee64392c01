from closint.paper_suite import paper_suite


def test_full_fixture_suite():
    rep = paper_suite()
    failed = [r.as_dict() for r in rep.rows if r.status == "FAIL"]
    assert not failed, failed
    assert any(r.status == "report" for r in rep.rows)
    assert {r.example for r in rep.rows} == {"1", "2", "3", "4"}
    assert "expected" in rep.table()
