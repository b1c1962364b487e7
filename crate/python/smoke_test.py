# SPDX-License-Identifier: Apache-2.0
"""Smoke test for the dpip Python module."""

import pathlib
import tempfile

import dpip

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "crates" / "core" / "fixtures"


def main():
    k = dpip.NumberField([5, 0, 1])
    assert k.degree == 2 and k.disc == -20

    (p2, e), = dpip.factor(k, 2)
    assert e == 2 and p2.norm == 2
    assert repr(p2) == "PrimeIdeal(2, θ + 1)"
    assert p2.to_ideal() * p2.to_ideal() == k.ideal([[2, 0]])

    advice = dpip.Advice.load(str(FIXTURES / "qsqrtm5_advice.json"))
    assert advice.field == k and advice.degrees == [2]

    no = dpip.decide(p2.to_ideal(), advice)
    assert not no and no.switches_used == 0

    i = k.ideal([[3, 1]])
    yes = dpip.decide(i, advice, seed=42)
    assert yes and yes.witness_prime is not None
    assert dpip.is_principal_quad(i)
    assert not dpip.is_principal_quad(p2.to_ideal())

    try:
        dpip.decide(i, advice, bound=1, max_trials=1)
    except dpip.MaxTrialsExceeded:
        pass
    else:
        raise AssertionError("expected MaxTrialsExceeded")

    g = dpip.genus_advice(-84)
    assert len(g) == 2
    with tempfile.TemporaryDirectory() as d:
        path = str(pathlib.Path(d) / "advice.json")
        g.store(path)
        assert dpip.Advice.load(path).degrees == [2, 2]

    t = dpip.NumberField.load(str(FIXTURES / "zeta64.json"))
    table = dpip.Ideal.load(str(FIXTURES / "zeta64_ideal187.json"), t)
    assert table.inverse() * table == t.ideal([[1] + [0] * 31])
    print("smoke test ok")


if __name__ == "__main__":
    main()
