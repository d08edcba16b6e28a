from fractions import Fraction

import pytest

import essig


def test_tensor_algebra():
    a = essig.exp_increment([1, 0], 3)
    assert a["11"] == Fraction(1, 2)
    assert a["111"] == Fraction(1, 6)
    b = essig.exp_increment([0, Fraction(1, 3)], 3)
    ab = a * b
    assert ab["12"] == Fraction(1, 3)
    assert ab["21"] == 0
    assert ab * ab.inverse() == essig.RationalTensor.unit(2, 3)
    assert essig.RationalTensor.unit(2, 3).homogeneous_norm() == 0.0
    quarter = [[0, -1], [1, 0]]
    assert a.rotate(quarter)["2"] == 1
    assert a.dilate(2) == essig.exp_increment([2, 0], 3)
    with pytest.raises(ZeroDivisionError):
        essig.RationalTensor.zero(2, 2).inverse()
    with pytest.raises(ValueError):
        a + essig.RationalTensor.unit(2, 4)


def test_signature_square_loop():
    sig = essig.signature([[0, 0], [1, 0], [1, 1], [0, 1], [0, 0]], 2)
    assert sig["12"] - sig["21"] == 2
    floats = essig.signature_float([[0.0, 0.0], [1.0, 0.0]], 2)
    assert floats["11"] == 0.5


def test_disk_table():
    phi = essig.disk_expected_signature(4)
    assert phi["11"] == {(0, 0): Fraction(1, 4), (0, 2): Fraction(-1, 4), (2, 0): Fraction(-1, 4)}
    assert phi["1111"][(4, 0)] == Fraction(-7, 192)
    assert phi["1211"] == {(1, 1): Fraction(1, 24), (1, 3): Fraction(-1, 24), (3, 1): Fraction(-1, 24)}
    assert all(phi.residual_check(n) for n in range(2, 5))
    at0 = phi.evaluate(0, 0)
    assert at0["11"] == Fraction(1, 4)
    assert at0["1111"] == Fraction(1, 64)
    assert phi.evaluate(1, 0) == essig.RationalTensor.unit(2, 4)
    assert phi.evaluate_float(0.3, 0.4)["11"] == pytest.approx(0.1875)
    moved = phi.transport([2, -1], 2, [2, -1])
    assert moved["11"] + moved["22"] == 2
    with pytest.raises(ValueError):
        phi.evaluate(1, 1)


def test_poisson_solver():
    assert essig.poisson_solve_disk({(1, 0): 1}) == {
        (1, 0): Fraction(-1, 8),
        (1, 2): Fraction(1, 8),
        (3, 0): Fraction(1, 8),
    }


def test_interval_and_lattice():
    levels = essig.interval_levels(4)
    assert levels[2] == [Fraction(1, 2), 0, Fraction(-1, 2)]
    field = essig.lattice_expected_signature(1, [[0]], 4)
    assert field[(0,)]["11"] == Fraction(1, 2)
    assert field[(0,)]["1111"] == Fraction(1, 24)
    assert field[(1,)] == essig.RationalTensor.unit(1, 4)
    line = essig.lattice_expected_signature(1, [[1], [2], [3]], 2)
    assert line[(2,)]["11"] == 2
    approx = essig.lattice_expected_signature_float(1, [[1], [2], [3]], 2)
    assert approx[(2,)]["11"] == pytest.approx(2.0, abs=1e-9)


def test_monte_carlo_and_checks():
    est = essig.mc_estimate([0.0, 0.0], truncation=2, paths=500, dt=1e-3, seed=5)
    again = essig.mc_estimate([0.0, 0.0], truncation=2, paths=500, dt=1e-3, seed=5)
    assert est["mean"] == again["mean"]
    assert est["count"] == 500
    assert est["mean"]["11"] + est["mean"]["22"] == pytest.approx(0.5, abs=1e-6)
    assert abs(est["mean"]["11"] - 0.25) <= 3 * est["standard_error"]["11"] + 0.01
    phi = essig.disk_expected_signature(2)
    assert essig.mean_value_check([0.2, 0.1], 0.3, phi) <= 1e-10
    passed, details = essig.run_check("interval-oracle", 6)
    assert passed and details


def test_cli_in_process():
    code, out, err = essig.cli(["interval", "-N", "2", "--eval", "0", "--format", "csv"])
    assert code == 0
    assert out == "level,value\n0,1/1\n1,0/1\n2,1/2\n"
    code, out, err = essig.cli(["disk", "-N", "-1"])
    assert code != 0 and out == "" and err.count("\n") == 1
