"""Smoke test for the pytrigauge extension module.

Run with the built library importable as `pytrigauge`, e.g. via
python/build_and_test.sh.
"""

import json
import pathlib
import sys
from fractions import Fraction

import pytrigauge as tg

ROOT = pathlib.Path(__file__).resolve().parent.parent


def frac(v):
    return [Fraction(x) for x in v]


def check_instances():
    names = tg.builtin_instances()
    assert "su2_peiffer" in names
    for name in ["abelian_chain", "su2_crossed", "su2_l_u1", "su2_peiffer", "aff1_peiffer"]:
        inst = tg.Instance.builtin(name)
        bad = [a for a, status, _, _ in inst.axiom_report() if status == "fail"]
        assert not bad, (name, bad)

    su2 = tg.Instance.builtin("su2_crossed")
    assert su2.dims == (3, 3, 0)
    assert frac(su2.bracket("g", ["1", "0", "0"], ["0", "1", "0"])) == [0, 0, 1]
    assert frac(su2.alpha(["2", "-1/2", "5"])) == [2, Fraction(-1, 2), 5]
    # adjoint action on h = g
    assert frac(su2.act(["1", "0", "0"], "h", ["0", "1", "0"])) == [0, 0, 1]
    gram = [frac(r) for r in su2.gram("g")]
    assert gram[0][0] > 0 and gram[0][1] == 0

    broken = tg.Instance.load(str(ROOT / "configs" / "su2_peiffer_broken.toml"))
    assert broken.name == "su2_peiffer_broken"
    again = tg.Instance.from_toml(broken.to_toml())
    assert again.to_toml() == broken.to_toml()

    try:
        tg.Instance.builtin("nope")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown instance accepted")


def check_forms():
    a = tg.Form.random(1, 1, "scalar", 1, 4, 2)
    b = tg.Form.random(2, 2, "scalar", 1, 4, 2)
    assert a.d().d().is_zero()
    assert (a.wedge(b) - b.wedge(a)).is_zero()
    k = 2
    w = tg.Form.random(3, k, "g", 3, 4, 2)
    assert w.hodge().hodge() == w.scale(str((-1) ** (k * (4 - k))))
    assert tg.Form.from_text(w.to_text()) == w
    top = tg.Form.random(5, 4, "scalar", 1, 4, 1)
    Fraction(top.integrate())
    assert repr(w).startswith("Form(degree=2")


def check_identities():
    inst = tg.Instance.builtin("su2_peiffer")
    out = inst.check_identities(0, 4, 1)
    checked = [(n, r) for n, deg, r in out if deg is not None]
    assert checked
    assert all(Fraction(r) == 0 for _, r in checked), checked


def check_suites():
    inst = tg.Instance.builtin("su2_l_u1")
    for name, call in [
        ("verify", lambda: inst.verify(seeds=1, degree_cap=1)),
        ("bianchi", lambda: inst.bianchi(seeds=2, degree_cap=1)),
        ("action", lambda: inst.action(seeds=1, degree_cap=1)),
    ]:
        rep = json.loads(call())
        assert rep["passed"], (name, rep)
    rep, csv = inst.gradcheck(seeds=1, degree_cap=1)
    assert json.loads(rep)["passed"]
    assert csv is None
    ym = tg.Instance.builtin("su2_ym")
    assert json.loads(ym.reduce(seeds=1, degree_cap=1))["passed"]
    assert inst.bianchi(seeds=2, degree_cap=1) == inst.bianchi(seeds=2, degree_cap=1)


def main():
    check_instances()
    check_forms()
    check_identities()
    check_suites()
    print("pytrigauge smoke test: ok")


if __name__ == "__main__":
    sys.exit(main())
