"""Smoke test for the lnscert Python module.

    pip install maturin && maturin build -m crates/py/Cargo.toml --release
    pip install target/wheels/lnscert-*.whl
    python python/smoke_test.py
"""

from fractions import Fraction

import lnscert as L


def main():
    b = L.Base(3, 2)
    assert str(b) == "3/2"
    assert L.cmp_pow(Fraction(9, 4), b, 2) == 0
    assert L.cmp_pow(2, b, 1) == 1
    assert L.pow_rational(b, -2) == Fraction(4, 9)
    assert L.floor_log(2, b) == L.floor_log_fast(2, b) == 1
    assert L.floor_log("1/2", b) == -2
    assert L.precision_of_base(L.Base(12500001, 12500000)) == 23

    t = L.build_table(b)
    assert (t.sez, t.entries) == (1, [1, 2])
    assert all(holds for _, holds, _ in t.verify())
    assert t.to_text() == "LNS1\nP=3\nQ=2\nSEZ=1\n0 1\n1 2\n"
    assert L.SumTable.from_text(t.to_text()).entries == [1, 2]
    assert t.add(0, 0) == 1 and t.s(-1) == t.s(1) - 1
    assert L.mult(3, 4) == 7 and L.div(3, 4) == -1

    golden = L.build_table_unchecked(L.Base(19, 10))
    assert golden.sez == 0 and not golden.verify()[1][1]
    try:
        L.build_table(L.Base(19, 10))
    except L.LnsCertError:
        pass
    else:
        raise AssertionError("axiom (2) failure not reported")

    t1 = L.Tolerance(0, 1)
    assert L.tol_mult(t1, t1) == L.Tolerance(0, 2)
    assert L.tol_recip(t1) == L.Tolerance(-1, 0)
    assert L.tol_div(t1, t1) == L.Tolerance(-1, 1)
    z, tol = L.tol_add_tight(t, 0, L.Tolerance(0, 0), 0, L.Tolerance(0, 0))
    assert (z, tol) == (1, L.Tolerance(0, 1))
    assert L.tol_holds(b, 1, t1, 2)

    z, tol, exact = L.certify(t, "3/2*3/2")
    assert (z, tol, exact) == (2, L.Tolerance(0, 0), Fraction(9, 4))
    for p, q in [(3, 2), (4, 3)]:
        tb = L.build_table(L.Base(p, q))
        _, fwd, fx = L.taylor_exp(tb, Fraction(1, 3))
        _, rev, _ = L.taylor_exp(tb, Fraction(1, 3), "reversed")
        assert (fwd, rev) == (L.Tolerance(-1, 4), L.Tolerance(-1, 6))
        assert fx == Fraction(113, 81)

    cfg = L.RangeConfig(-8, 8)
    assert L.mult2(cfg, 3, 4) == 7 and L.mult2(cfg, 5, 5) is None
    assert L.add2(cfg, t, 0, 0) == 1 and L.div2(cfg, -5, 5) is None
    assert L.eval2(L.RangeConfig(-1, 0), t, "2") is None
    assert cfg.sentinel == 9

    print("lnscert smoke test: OK")


if __name__ == "__main__":
    main()
