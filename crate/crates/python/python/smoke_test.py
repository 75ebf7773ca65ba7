"""Smoke test for the trinomax_py extension module."""

import math

import trinomax_py as tm


def main():
    t = tm.Trinomial([-1, 0, 1], [1.0, 2.0, 1.0], [0.0, math.pi / 2, 0.0])
    res = t.max_points()
    assert abs(res["value"] - 2 * math.sqrt(2)) < 1e-12, res
    assert len(res["points"]) == 2 and res["classification"] == "SymmetricPair", res
    value, points = t.brute_max()
    assert abs(value - res["value"]) < 1e-9 * value

    stats = tm.Trinomial([2, 5, 11], [1.0, 1.0, 1.0]).stats()
    assert (stats["d"], stats["k"], stats["l"], stats["D"]) == (3, 1, 2, 3), stats

    assert abs(tm.sidon_constant([-1, 0, 1]) - math.sqrt(2)) < 1e-12
    norm, witness = tm.multiplier_norm([-1, 0, 1], [0.0, math.pi / 2, 0.0])
    assert abs(norm - math.sqrt(2)) < 1e-12 and witness.moduli == [1.0, 2.0, 1.0]
    real, complex_ = tm.unconditional_constants([1, 3, 9])
    assert abs(real - complex_) < 1e-12

    rows = tm.sweep(1, 2, [1.0, 1.0, 1.0], 16)
    assert all(b[2] < a[2] for a, b in zip(rows, rows[1:]))
    assert abs(tm.closed_form_k1_l1(1.0, 1.0, 1.0)[0] - math.sqrt(5)) < 1e-14

    hypotrochoid = tm.Trinomial([-2, 0, 1], [4.0, 1.0, 1.0])
    assert len(hypotrochoid.farthest_points(-1 + 0j)) == 1
    _, cusps = tm.Trinomial([-2, 0, 1], [1 / 3, 1.0, 2 / 3]).hypotrochoid(256)
    assert cusps == 3

    r = tm.reconstruct_from_two_points([-1, 0, 1], 0.0, math.pi, t(0.0), t(math.pi))
    assert abs(r(0.0) - t(0.0)) < 1e-9 and abs(r.max_modulus() - res["value"]) < 1e-9

    try:
        tm.Trinomial([1, 1, 2], [1.0, 1.0, 1.0])
    except ValueError:
        pass
    else:
        raise AssertionError("repeated frequency accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
