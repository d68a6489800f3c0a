from omlkit.report import Report


def test_failures_always_carry_a_witness():
    r = Report("x")
    r.add("good", True, ("ignored",))
    r.add("bad", False)
    r.add("worse", False, "w")
    assert [c.witness for c in r.checks] == [None, (), ("w",)]
    assert not r.passed and [c.name for c in r.failures()] == ["bad", "worse"]


def test_format_and_dict():
    r = Report("subject")
    r.add("one", True, note="n")
    r.add("two", False, ("a", "b"))
    assert r.format() == "subject: FAIL\n  ok   one (n)\n  FAIL two witness=(a, b)"
    assert r.to_dict()["checks"][1] == {"name": "two", "passed": False, "witness": ["a", "b"]}


def test_extend_prefixes():
    inner = Report("inner")
    inner.add("c", True)
    outer = Report("outer")
    assert outer.extend(inner, "p: ")
    assert outer.check("p: c").passed
