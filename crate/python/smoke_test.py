"""Smoke test for the dgcyc extension module.

Build and install first:  cd crates/python && maturin build --release && pip install <wheel>
"""
import json
import pathlib
import sys

import dgcyc

ROOT = pathlib.Path(__file__).resolve().parent.parent


def main():
    q = dgcyc.Presentation.parse((ROOT / "inputs" / "dual_resolution.dgc").read_text())
    assert q == dgcyc.Presentation.dual_resolution()
    assert dgcyc.Presentation.parse(q.to_text()) == q
    assert [g[0] for g in q.generators] == ["x", "y"]

    try:
        dgcyc.Presentation.parse("objects: pt\nx: pt->pt deg=0 wt=1 d=z\n")
    except ValueError as e:
        assert "line 2" in str(e), e
    else:
        raise AssertionError("unknown generator accepted")

    f = dgcyc.Presentation.free_x()
    table = dgcyc.homology(f, "CC", degrees=(-1, 3), weights=(1, 4), reduced=True)
    assert table == {(d, w): int(d == 0) for d in range(0, 3) for w in range(1, 5)}, table

    for name in ["homotopy", "pi-qiso", "cone-iso", "feigin-tsygan", "sbi"]:
        r = dgcyc.check(f, name, degrees=(-2, 5), weights=(0, 3))
        assert r.passed, (name, r.failures)

    d = dgcyc.Presentation.dual_numbers()
    r = dgcyc.check(q, "hodge", degrees=(-6, 6), weights=(0, 2), target=d)
    assert r.passed and r.unverified_hypothesis, r.failures
    skipped = dgcyc.check(d, "homotopy", degrees=(-1, 3), weights=(0, 2))
    assert skipped.verdict == "skipped"

    report = json.loads(r.to_json())
    try:
        import jsonschema
    except ImportError:
        jsonschema = None
    if jsonschema is not None:
        schema = json.loads((ROOT / "schema" / "report.schema.json").read_text())
        jsonschema.Draft202012Validator(schema).validate(report)
    print(f"dgcyc {dgcyc.__version__}: smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
