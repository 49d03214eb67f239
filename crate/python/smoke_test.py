"""Smoke test for the qgen Python extension.

Build and install first, e.g. `maturin develop -m crates/py/Cargo.toml`,
then run `python python/smoke_test.py` (or `pytest python/`).
"""

import json
from fractions import Fraction

import qgen


def test_q_primitives():
    assert qgen.q_number(3, "1/2") == Fraction(7, 4)
    assert qgen.q_binomial(4, 2, Fraction(1, 2)) == Fraction(35, 16)
    assert qgen.q_binomial(6, 9, "1/2") == 0
    assert qgen.q_factorial(3, 1) == 6


def test_duality():
    q = "1/3"
    e, big_e = qgen.e_q(q, 20), qgen.E_q(q, 20)
    for n in range(21):
        c = sum(e[k] * big_e[n - k] * (-1) ** (n - k) for k in range(n + 1))
        assert c == (1 if n == 0 else 0)


def test_numbers_and_polys():
    assert qgen.compute_numbers("genocchi", 1, "1/2", 2) == [0, 1, Fraction(-3, 4)]
    assert qgen.compute_numbers("bernoulli", 1, 1, 2) == [1, Fraction(-1, 2), Fraction(1, 6)]
    direct = qgen.compute_polys("genocchi", 2, "2/3", 6)
    summed = qgen.compute_polys("genocchi", 2, "2/3", 6, path="summation")
    assert direct == summed
    table = qgen.FamilyTable("genocchi", 2, "2/3", 6)
    assert [p.eval(0, 0) for p in direct] == table.numbers()


def test_bipoly():
    x, y = qgen.BiPoly("1*x^1*y^0"), qgen.BiPoly("1*x^0*y^1")
    p = (x + y) ** 2
    assert p.terms() == {(2, 0): 1, (1, 1): 2, (0, 2): 1}
    assert qgen.BiPoly.from_json(p.to_json()) == p
    assert qgen.BiPoly(str(p)) == p
    assert p.q_derivative("x", 1) == qgen.BiPoly("2*x^1*y^0 + 2*x^0*y^1")


def test_table_round_trip():
    table = qgen.FamilyTable("bernoulli", 1, "1/2", 5)
    again = qgen.FamilyTable.from_json(table.to_json())
    assert again.numbers() == table.numbers()
    assert all(again.poly(n) == table.poly(n) for n in range(6))


def test_verify():
    reports = qgen.verify("property3,theorem_sp1", n_max=3, qs=["1/2", 1], alphas=[0, 1])
    ids = [r["identity_id"] for r in reports]
    assert ids == ["property3", "theorem_sp1/with_binomial", "theorem_sp1/as_printed"]
    assert qgen.all_pass(reports)
    literal = reports[-1]
    assert literal["erratum_candidate"] and literal["status"] == "fail"
    json.dumps(reports)


def test_bad_input():
    for call in (lambda: qgen.q_number(2, 0), lambda: qgen.verify("nosuch")):
        try:
            call()
        except ValueError:
            continue
        raise AssertionError("expected ValueError")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            print(f"ok {name}")
    print("python smoke test passed")
