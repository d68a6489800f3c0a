"""The sixteen acceptance criteria, one test each.

A one-line verdict per criterion is printed in the terminal summary.
"""
import pytest

from omlkit import acceptance

RESULTS: dict[int, str] = {}


@pytest.mark.parametrize("cid,title", [(c, t) for c, t, _ in acceptance.CRITERIA],
                         ids=[f"c{c:02d}" for c, _, _ in acceptance.CRITERIA])
def test_criterion(cid, title):
    rep = acceptance.run_criterion(cid)
    line = f"criterion {cid:2d} {title}: {'PASS' if rep.passed else 'FAIL'}"
    RESULTS[cid] = line
    print(line)
    assert rep.passed, rep.format()


def test_hexagon_negative_fixture_fails_axiom_suite():
    cfg = acceptance.Config(corpus=["MO2", "hexagon"])
    rep = acceptance.run_criterion(1, cfg)
    assert not rep.passed
    assert {c.witness for c in rep.failures()} == {("a", "b")}


def test_booleanness_prints_mo2_witness():
    rep = acceptance.run_criterion(14)
    assert rep.check("MO2 is not Boolean").note == "witness m=a, n=b"


def test_roundtrip_records_bijection():
    rep = acceptance.run_criterion(10)
    note = rep.check("K_1(End(MO2)) = MO2").note
    assert len(note.split()) == 6
