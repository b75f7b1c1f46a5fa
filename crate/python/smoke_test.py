"""Smoke test for the charpoly extension module.

Build it first, for example with `maturin develop -m crates/python/Cargo.toml`,
or point PYTHONPATH at a directory holding the built `charpoly.so`.
"""

from fractions import Fraction

import charpoly


def main():
    lam = charpoly.Partition([3, 1])
    assert lam.parts == [3, 1]
    assert lam.conjugate().parts == [2, 1, 1]
    assert lam.dimension() == 3
    assert len(charpoly.Partition.all(5)) == 7

    assert charpoly.character(charpoly.Partition([2, 1]), charpoly.Partition([3])) == -1
    assert charpoly.normalized_character(lam, 2) == 4
    assert charpoly.free_cumulants(charpoly.Partition([1]), 5) == [1, 0, -1, 0]

    sigma = charpoly.kerov_polynomial(4)
    assert str(sigma) == "R5 + 5 R3"
    assert str(charpoly.kerov_polynomial(6, "C")) == "R7 + 35/4 C5 + 42 C3"

    f2 = charpoly.stanley_polynomial(2, 2, negate_q=True)
    assert str(f2) == "a^2 b + a b^2 + 2 a p q + p^2 q + p q^2"
    assert f2.is_positive()
    # F_1 counts boxes
    rect = charpoly.MultiRect([2, 1], [3, 1])
    f1 = charpoly.stanley_polynomial(1, 2)
    assert f1.evaluate([2, 3, 1, 1]) == rect.size() == 7

    assert charpoly.p_sharp(charpoly.Partition([2, 1]), lam) == 8
    assert charpoly.shift_schur(charpoly.Partition([1]), [Fraction(1, 2), 2]) == Fraction(5, 2)

    try:
        charpoly.Partition([1, 2])
    except ValueError:
        pass
    else:
        raise AssertionError("increasing parts accepted")

    results = charpoly.verify_reference()
    assert all(status != "fail" for _, _, status, _ in results)
    print(f"ok: {len(results)} reproduction items, none failing")


if __name__ == "__main__":
    main()
