#!/usr/bin/env python3
"""End-to-end CLI conformance: exit codes, JSON schema validity of every
document written to stdout, and byte-determinism of repeated invocations."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource


def main() -> int:
    cli = sys.argv[1]
    root = pathlib.Path(sys.argv[2])
    data = root / "examples_data"
    schemas = root / "schemas"

    op_schema = json.loads((schemas / "operator.schema.json").read_text())
    out_schema = json.loads((schemas / "cli-output.schema.json").read_text())
    registry = Registry().with_resources([
        ("operator.schema.json", Resource.from_contents(op_schema)),
        ("cli-output.schema.json", Resource.from_contents(out_schema)),
    ])
    out_validator = jsonschema.Draft202012Validator(out_schema, registry=registry)
    op_validator = jsonschema.Draft202012Validator(op_schema, registry=registry)

    failures = []

    def run(args, expect_codes, check_schema=True):
        proc = subprocess.run([cli] + args, capture_output=True, text=True)
        again = subprocess.run([cli] + args, capture_output=True, text=True)
        label = " ".join(args)
        if proc.stdout != again.stdout or proc.returncode != again.returncode:
            failures.append(f"{label}: output is not deterministic")
        if proc.returncode not in expect_codes:
            failures.append(
                f"{label}: exit code {proc.returncode}, expected one of {expect_codes}"
            )
        doc = None
        try:
            doc = json.loads(proc.stdout)
        except json.JSONDecodeError as exc:
            failures.append(f"{label}: stdout is not JSON ({exc})")
            return None
        if check_schema:
            errors = sorted(out_validator.iter_errors(doc), key=str)
            if errors:
                failures.append(f"{label}: schema violation: {errors[0].message}")
        return doc

    hyp = str(data / "hypergeometric.json")
    res = str(data / "resonant.json")
    dis = str(data / "distinct.json")
    inv = str(data / "invalid.json")
    irr = str(data / "irrational.json")
    bad = str(data / "malformed.json")

    # the shipped operator files themselves obey the operator schema
    for f in ("hypergeometric.json", "resonant.json", "distinct.json",
              "invalid.json", "irrational.json"):
        doc = json.loads((data / f).read_text())
        errors = sorted(op_validator.iter_errors(doc), key=str)
        if errors:
            failures.append(f"{f}: operator schema violation: {errors[0].message}")

    doc = run(["check", hyp], {0})
    if doc is not None and not doc.get("genericity", {}).get("generic", False):
        failures.append("check hypergeometric: expected a generic verdict")
    run(["check", res], {2})
    run(["check", inv], {1})
    run(["check", bad], {3})
    run(["check", irr], {0, 4})
    run(["check", str(data / "does-not-exist.json")], {3})

    run(["exponents", hyp], {0})
    doc = run(["exponents", hyp, "--ordering", "0:1,0"], {0})
    if doc is not None:
        ordering = doc["exponents"][0]["ordering"]
        default = run(["exponents", hyp], {0})["exponents"][0]["ordering"]
        if ordering != list(reversed(default)):
            failures.append("exponents --ordering did not permute the exponent list")
    run(["exponents", inv], {1})

    run(["connection", hyp], {0})
    run(["dims", "-m", "3", "-n", "3"], {0})
    run(["tangent", hyp], {0})

    doc = run(["gauge", hyp, hyp], {0})
    if doc is not None and doc.get("equivalent") is not True:
        failures.append("gauge self-comparison must report equivalence")
    doc = run(["gauge", hyp, dis], {0})
    if doc is not None and doc.get("equivalent") is not False:
        failures.append("gauge on distinct operators must report non-equivalence")
    run(["gauge", hyp, bad], {3})
    run(["gauge", hyp, inv], {1})

    doc = run(["cohomology", hyp], {0})
    if doc is not None and doc.get("consistent") is not True:
        failures.append("cohomology on the generic example must be consistent")
    run(["cohomology", res], {2})

    doc = run(["report", hyp], {0})
    if doc is not None:
        verdicts = [v["verdict"] for v in doc["verdicts"]]
        if "fail" in verdicts:
            failures.append("report on the generic example contains a failing verdict")
    run(["report", inv], {1})
    run(["report", bad], {3})
    run(["report", res], {2})

    doc = run(["fuzz", "-m", "2", "-n", "3", "--seed", "7"], {0})
    if doc is not None:
        errors = sorted(op_validator.iter_errors(doc), key=str)
        if errors:
            failures.append(f"fuzz output: operator schema violation: {errors[0].message}")
        # round-trip: the fuzzed operator passes its own check
        with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as tmp:
            json.dump(doc, tmp)
            tmp_path = tmp.name
        run(["check", tmp_path], {0})
        pathlib.Path(tmp_path).unlink()
    doc = run(["fuzz", "-m", "2", "-n", "2", "--seed", "9", "--count", "2"], {0})
    if doc is not None and (not isinstance(doc, list) or len(doc) != 2):
        failures.append("fuzz --count 2 must emit an array of two operators")

    # --pretty output parses to the same document
    plain = subprocess.run([cli, "report", hyp], capture_output=True, text=True)
    pretty = subprocess.run([cli, "--pretty", "report", hyp], capture_output=True, text=True)
    if json.loads(plain.stdout) != json.loads(pretty.stdout):
        failures.append("--pretty changed the document content")
    if plain.returncode != pretty.returncode:
        failures.append("--pretty changed the exit code")

    if failures:
        for f in failures:
            print("FAIL:", f)
        return 1
    print("schema conformance: all checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
