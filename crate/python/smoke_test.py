"""Quick end-to-end check of the pycochain extension module."""

import pycochain as pc

C3 = """
field = "t^2 + t + 1"
algebra = "A1"

[group]
g = x -> t^2*x, y -> t*y
"""


def main():
    a1 = pc.Algebra.preset("A1")
    assert a1.generators() == ["x", "y"]
    assert all(passed for _, passed, _ in a1.validate(8))
    assert a1.hilbert(4) == [1, 2, 4, 6, 9]
    assert a1.cohomology_dims(6) == [1, 1, 1, 1, 1, 0, 1]

    v = a1.gorenstein_probe(12, 4)
    assert v.is_consistent() and (v.d, v.l) == (1, 2), v

    kx = pc.Algebra.parse('generators = "x:1"')
    assert kx.gorenstein_probe(8, 3).kind == "consistent"

    c3 = pc.Algebra.parse(C3)
    assert c3.group_names() == ["g"] and c3.group_order() == 3
    assert c3.hdet("g") == "1"
    assert c3.verify_prop_equal(8)
    hdets, applies, probe = c3.theorem_d(12, 4)
    assert hdets == ["1", "1", "1"] and applies and probe.is_consistent()

    plane = pc.Algebra.parse(
        'generators = "x:1, y:1"\n[relations]\nx*y = y*x\n[group]\ns = x -> y, y -> x\n'
    )
    assert plane.hdet("s", 6, 3) == "-1"

    assert pc.crisscross([[["0", "0"], ["0", "0"]], [["0", "0"], ["0", "0"]]]) == (True, None)
    holds, witness = pc.crisscross([[["0", "1"], ["0", "0"]], [["0", "0"], ["0", "0"]]])
    assert not holds and witness is not None

    try:
        pc.Algebra.parse('generators = "x:1"\n[relations]\nx*z = 0\n')
    except ValueError as e:
        assert "z" in str(e)
    else:
        raise AssertionError("undeclared generator accepted")

    print("pycochain", pc.__version__, "smoke test passed")


if __name__ == "__main__":
    main()
