import cosupp


def test_membership_roundtrip():
    r = cosupp.ring("powerseries(Q, x, y)")
    assert cosupp.member(r, cosupp.prime(r, "x"))["verdict"] == "no"
    res = cosupp.member(r, cosupp.prime(r, "x, y"))
    assert res["verdict"] == "yes"
    steps = res["trace"]["steps"]
    assert steps and all("paper_anchor" in s for s in steps)


def test_describe_and_specset():
    r = cosupp.ring("powerseries(Q[x], t)")
    d = cosupp.describe(r)
    assert d["exact"] == "yes"
    s = d["set"]
    assert s.member(cosupp.prime(r, "t")) == "yes"
    assert s.member(cosupp.prime(r, "x")) == "no"
    assert s.is_closed()["value"] == "yes"


def test_module_operations():
    r = cosupp.ring("Q[x,y]")
    supp = cosupp.supp_module(r, [["x"]])
    cos = cosupp.cosupp_module(r, [["x"]])
    p = cosupp.prime(r, "x")
    assert supp.member(p) == "yes"
    assert cos.member(p) == "yes"
    assert supp.member(cosupp.prime(r, "y")) == "no"
    kappa = cosupp.cosupp_kappa(r, p)
    assert kappa.member(p) == "yes"
    hull = cosupp.cosupp_injective(r, p)
    assert hull.member(cosupp.prime(r, "0")) == "yes"
    assert hull.member(cosupp.prime(r, "y")) == "no"


def test_cr_criterion():
    r = cosupp.ring("powerseries(F(2), t)[x]")
    res = cosupp.cr_criterion(r, [cosupp.prime(r, "x")])
    assert res["value"] == "no"
    assert res["witness"] == "(x)"


def test_run_program():
    out = cosupp.run(
        "ring R = powerseries(Q, x, y);"
        "query cosupp_member R (x, y);"
        "query cosupp_describe R;"
    )
    assert not out["had_errors"]
    assert out["schema"] == "cosupp/1"
    assert out["results"][0]["verdict"] == "yes"
    assert out["results"][1]["set"]["kind"] == "finite"
