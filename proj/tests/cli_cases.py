"""Runs the CLI over fixtures/cases.json and validates every document."""

import json
import subprocess
import sys
from pathlib import Path

import jsonschema

cli, root = sys.argv[1], Path(sys.argv[2])
doc = json.loads((root / "schemas/v1/nahodge.schema.json").read_text())
manifest = json.loads((root / "fixtures/cases.json").read_text())
failures = []


def validator(name):
    return jsonschema.Draft202012Validator({**doc, "$ref": f"#/$defs/{name}"})


def run(args, stdin_path=None, inline=None):
    cmd = [cli, *args]
    if stdin_path:
        cmd += ["--input", str(root / stdin_path)]
    if inline is not None:
        cmd += ["--inline", json.dumps(inline)]
    p = subprocess.run(cmd, capture_output=True, text=True, timeout=120)
    return p.returncode, json.loads(p.stdout)


def subset(expected, actual):
    if isinstance(expected, dict):
        return isinstance(actual, dict) and all(k in actual and subset(v, actual[k]) for k, v in expected.items())
    return expected == actual


for case in manifest["cases"]:
    args = case["args"]
    label = " ".join(args + ([case["input"]] if "input" in case else []))
    schema = case.get("schema", ".".join(args[:2]))
    try:
        if "input" in case:
            validator(schema + ".input").validate(json.loads((root / case["input"]).read_text()))
        code, out = run(args, case.get("input"))
        want = case.get("exit", 0)
        if code != want:
            failures.append(f"{label}: exit {code}, want {want}: {out}")
            continue
        validator("error" if code else schema + ".output").validate(out)
        if "expect" in case and not subset(case["expect"], out):
            failures.append(f"{label}: got {json.dumps(out)}")
    except (jsonschema.ValidationError, json.JSONDecodeError) as e:
        failures.append(f"{label}: {e}")

# there(back(there(x))) == there(x): the backward map returns a document the
# forward map reproduces exactly.
for rt in manifest["roundtrips"]:
    for path in rt["inputs"]:
        original = json.loads((root / path).read_text())
        original = original.get("filtration", original)
        _, image = run(rt["there"], inline=original)
        _, back = run(rt["back"], inline=image)
        _, again = run(rt["there"], inline=back)
        if again != image:
            failures.append(f"roundtrip {path}: {json.dumps(image)} vs {json.dumps(again)}")

for f in failures:
    print("FAIL", f)
print(f"{len(manifest['cases'])} cases, {len(failures)} failures")
sys.exit(1 if failures else 0)
