import pytest

import valfield as vf

BASE_MANIFEST = "p = 2\nJ = 4\nM = 4\nq = 5,11,17,23\n"


def test_parse_and_arithmetic():
    x = vf.parse_series("GF(2)[[t]]: t^-1 + 1 + O(t^4)")
    assert str(x) == "GF(2)[[t]]: t^-1 + 1 + O(t^4)"
    assert x.val() == "-1"
    assert (x + x).is_zero_to_prec()

    t = vf.parse_series("GF(3)[[t]]: t^1")
    tinv = vf.parse_series("GF(3)[[t]]: t^-1")
    assert str(t * tinv) == "GF(3)[[t]]: 1"


def test_decompose_worked_example():
    x = vf.parse_series("GF(2)[[t]]: t^-2")
    d = vf.as_decompose(x)
    assert str(d["y"]) == "GF(2)[[t]]: 0"
    assert str(d["parts"][0]) == "GF(2)[[t]]: t^-1"
    assert str(d["parts"][1]) == "GF(2)[[t]]: t^-1"
    assert d["reexpansion"] == x


def test_wp_solve_geometric_tail():
    m = vf.parse_series("GF(2)[[t]]: t^1 + O(t^8)")
    u = vf.wp_solve(m)
    assert str(u) == "GF(2)[[t]]: t^1 + t^2 + t^4 + O(t^8)"
    assert (u.frobenius() - u - m).is_zero_to_prec()


def test_kernel_and_preimage():
    assert [str(r) for r in vf.kernel("wp(X)", 2)] == [
        "GF(2)[[t]]: 0",
        "GF(2)[[t]]: 1",
    ]
    balls = vf.preimage("wp(X)", vf.parse_series("GF(2)[[t]]: 0"), "1")
    assert len(balls) == 2
    assert {str(c) for c, _ in balls} == {"GF(2)[[t]]: 0", "GF(2)[[t]]: 1"}


def test_pd_and_independence():
    verdict = vf.pd_holds_on_samples(2, "wp(X); t*X^2", samples=50, seed=7)
    assert verdict["holds"]

    one = vf.parse_series("GF(3)[[t]]: 1")
    t = vf.parse_series("GF(3)[[t]]: t^1")
    t2 = vf.parse_series("GF(3)[[t]]: t^2")
    assert vf.valuation_independent([one, t, t2])["proven"]
    dep = vf.valuation_independent([one, one])
    assert not dep["independent"]


def test_optimal_approx_dichotomy():
    r0 = vf.optimal_approx(vf.parse_series("GF(2)[[t]]: t^-1"), 2)
    assert r0["distance"] == "inf"
    r1 = vf.optimal_approx(vf.parse_series("GF(2)[[t]]: 1"), 2)
    assert r1["distance"] == "0"


def test_tower_and_telescope():
    tower = vf.build_tower(BASE_MANIFEST)
    assert tower["recursion_exact"]
    assert tower["support_sizes"] == [1, 2, 3, 4]
    assert vf.telescope(BASE_MANIFEST, 2) == "-1/4"
    with pytest.raises(vf.KernelError):
        vf.telescope(BASE_MANIFEST, 0)


def test_cli_round_trip_determinism():
    args = ["pd", "--wp-twist", "--samples", "25", "--seed", "3",
            "--format", "json"]
    code1, out1 = vf.run_cli(args)
    code2, out2 = vf.run_cli(args)
    assert code1 == code2 == 0
    assert out1 == out2
