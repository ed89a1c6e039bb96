"""Smoke test for the n2vx extension.

Build and install first, e.g. `maturin develop -m crates/python/Cargo.toml`
or `pip install ./crates/python`, then run `python python/smoke_test.py`.
"""

from fractions import Fraction as F

import n2vx


def main():
    assert n2vx.central_charge(1) == 1
    assert n2vx.central_charge("1/2") == F(3, 5)

    w = n2vx.enumerate_w(1)
    assert {(e.h, e.q) for e in w} == {(0, 0), (F(1, 6), F(-1, 3)), (F(1, 6), F(1, 3))}
    assert len(n2vx.enumerate_w(F(1, 2))) == 10
    assert len(n2vx.enumerate_s("1/2")) == 8

    v = n2vx.classify(F(1, 6), F(1, 3), 1)
    assert v.tag == "InW" and v.witness == {"r": 1, "i": 1, "j": "3/2", "k": "1/2"}
    v = n2vx.classify(F(1, 8), 0, F(1, 2))
    assert v.tag == "InD" and v.witness["r"] == "1/2"
    assert n2vx.classify(1, 0, 1).tag == "NotModule"
    assert n2vx.classify(0, 0, -2).tag == "NotAdmissible"
    assert n2vx.membership_d(F(-3, 40), 0, F(1, 2))[-1] == F(-1, 2)

    vac = n2vx.VermaModule(0, 0, 1)
    assert vac.gram_matrix("1/2", 1) == [[0]]
    assert n2vx.VermaModule(1, 0, 1).gram_matrix("1/2", 1) == [[2]]
    assert n2vx.VermaModule(0, 0, -3).singular_vectors("1/2", -1) == ["G-_{-1/2}|hw>"]

    assert n2vx.ks_highest_weight(F(3, 2), 1, 1) == (F(1, 6), F(-1, 3))
    assert n2vx.casimir_scalar(F(1, 6), F(-1, 3), 1) == F(3, 2)
    assert n2vx.casimir_eigenvalue(F(1, 6), F(-1, 3), 1) == F(3, 2)

    ok, record = n2vx.verify("fminus")
    assert ok and record["pass"]
    ok, record = n2vx.verify("ks", m=F(1, 2), depth=1)
    assert ok and record["result"]["c"] == "3/5"

    print("smoke test passed")


if __name__ == "__main__":
    main()
