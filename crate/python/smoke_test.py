"""Smoke test for the ldescent extension. Run after `pip install --no-build-isolation -e crates/py`."""

import json

import ldescent


def main():
    q3 = ldescent.Field("Q3")
    classes = q3.square_classes()
    assert len(classes) == 4
    for a in classes:
        for b in classes:
            assert q3.hilbert(a, b) == q3.hilbert(b, a)

    space = json.loads(ldescent.classify_space('{"group": {"family": "SO", "dim": 5}}', "Q3"))
    assert space["witt"] == 2
    assert space["admissible_p1"] == [1, 3, 5]

    for fam in ["SO_odd", "SO_even", "Sp", "Mp", "U"]:
        case = ldescent.Case.generate(fam, 5)
        again = ldescent.Case.from_json(case.to_json())
        assert again.to_json() == case.to_json()
        packet = json.loads(case.packet())
        assert len(packet["entries"]) == case.component_group_order()
        fo = json.loads(case.first_occurrence("both"))
        assert fo["equal"], fo
        json.loads(case.contragredient())

    sp = ldescent.Case.generate("Sp", 3)
    try:
        sp.descend(3)
    except ValueError:
        pass
    else:
        raise AssertionError("odd ell accepted for Sp")
    assert json.loads(sp.descend(2))["ell"] == 2

    report = json.loads(ldescent.verify("tower", cases=50, seed=1))
    assert report["violations"] == [], report["violations"][:1]
    print("smoke test ok")


if __name__ == "__main__":
    main()
