"""Smoke test for the pyciore extension module.

Build and install first, e.g. `maturin develop -m crates/python/Cargo.toml`.
"""

import json

import pyciore


def main():
    v = pyciore.decide("|- o o p")
    assert v.status == "proved" and v
    v.proof.check("GCiore'", allow_cut=False)
    assert not v.proof.uses("Cut")
    assert v.proof.has_subformula_property()

    again = pyciore.Proof.from_json(v.proof.to_json())
    assert again.sequent == pyciore.Sequent("|- o o p")

    r = pyciore.decide("p |- o p")
    assert r.status == "refuted"
    assert r.valuation == {"p": "1/2"}
    assert pyciore.find_countermodel("p |- o p") == {"p": "1/2"}
    assert pyciore.Formula("o p").eval({"p": "1/2"}) == "0"
    assert pyciore.matrix_valid("~(p & q) |- ~p | ~q")

    src = "exists x. P(x) |- forall x. P(x)"
    fo = pyciore.decide_fo(src)
    assert fo.status == "refuted"
    assert fo.structure.sequent_valid(src) is False
    assert fo.structure.falsifying_assignment(src) is not None
    assert json.loads(fo.to_json())["status"] == "refuted"

    proved = pyciore.decide_fo("|- P(a1) -> exists x. P(x)")
    proved.proof.check("GQCiore")
    assert "closed" in pyciore.reduction_tree("|- P(a1) -> exists x. P(x)")

    st = pyciore.Structure.from_json(
        '{"domain": ["m0", "m1"], "predicates": {"P": {"plus": [["m0"]], "minus": [], "circ": [["m1"]]}}}'
    )
    assert st.valid("forall x. P(x)")
    assert st.value("P(a1)", {"a1": "m1"}) == "1/2"

    try:
        pyciore.Formula("p &")
    except pyciore.ParseError:
        pass
    else:
        raise AssertionError("expected ParseError")

    bad = json.loads(v.proof.to_json())
    bad["rule"] = "CircL"
    try:
        pyciore.Proof.from_json(json.dumps(bad)).check()
    except pyciore.ProofError:
        pass
    else:
        raise AssertionError("expected ProofError")

    print("pyciore smoke test: ok")


if __name__ == "__main__":
    main()
