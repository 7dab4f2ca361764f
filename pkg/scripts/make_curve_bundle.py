"""Regenerate src/isoradix/data/curves.jsonl from long Weierstrass models.

Short models are y^2 = x^3 - 27 c4 x - 54 c6, which is how long equations
should be converted before ingestion.
"""
from pathlib import Path

from isoradix.curve import RationalCurve
from isoradix.curvefile import dump_curves

LONG = {
    "11a1": (0, -1, 1, -10, -20),
    "11a2": (0, -1, 1, -7820, -263580),
    "11a3": (0, -1, 1, 0, 0),
    "37a1": (0, 0, 1, -1, 0),
    "37b1": (0, 1, 1, -23, -50),
}


def bundle():
    curves = [
        RationalCurve("cm_i", 1, 0),
        RationalCurve("cm_i_2iso", -4, 0),
        RationalCurve("cm_j", 0, 1),
        RationalCurve("cm_i_minus", -1, 0),
    ]
    curves += [RationalCurve.from_ainvariants(label, *ai) for label, ai in LONG.items()]
    c11 = next(E for E in curves if E.label == "11a1")
    curves.append(c11.twist(5, "11a1_tw5"))
    return curves


if __name__ == "__main__":
    out = Path(__file__).resolve().parents[1] / "src" / "isoradix" / "data" / "curves.jsonl"
    out.write_text(dump_curves(bundle()))
    for E in bundle():
        print(E)
