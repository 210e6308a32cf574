"""Run each volswap command and validate its output against docs/schemas."""

import csv
import io
import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource

STATE = ["--alpha", "0.4", "--sigma", "0.25", "--nu", "0.03", "--tenor", "1", "--t", "0.5"]


def load_registry(schema_dir):
    resources = []
    for path in schema_dir.glob("*.schema.json"):
        schema = json.loads(path.read_text())
        resources.append((schema["$id"], Resource.from_contents(schema)))
    return Registry().with_resources(resources)


def run(tool, args, expected_codes):
    proc = subprocess.run([tool, *args], capture_output=True, text=True)
    if proc.returncode not in expected_codes:
        sys.exit(f"{args}: exit {proc.returncode}\n{proc.stderr}")
    return proc.stdout


def parse_compare(text):
    lines = text.splitlines()
    manifest = json.loads(lines[0].removeprefix("# manifest: "))
    body = [ln for ln in lines if not ln.startswith("#")]
    return {"manifest": manifest, "rows": list(csv.DictReader(io.StringIO("\n".join(body))))}


def main():
    tool, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    registry = load_registry(schema_dir)

    def check(schema_name, doc):
        schema = json.loads((schema_dir / schema_name).read_text())
        jsonschema.Draft202012Validator(schema, registry=registry).validate(doc)
        print(f"ok {schema_name}")

    check("price.schema.json", json.loads(run(tool, ["price", *STATE, "--strike", "0.2"], {0, 3})))
    check("price.schema.json",
          json.loads(run(tool, ["price", *STATE[:-1], "1", "--annualization", "market"], {0})))
    check("oracle_mc.schema.json",
          json.loads(run(tool, ["oracle", "mc", *STATE, "--seed", "3", "--paths", "2000", "--steps", "50"], {0})))
    check("oracle_pde.schema.json", json.loads(run(tool, ["oracle", "pde", *STATE], {0})))
    check("oracle_pde.schema.json",
          json.loads(run(tool, ["oracle", "pde", *STATE, "--ny", "100", "--nt", "100", "--refine", "2"], {0})))
    check("verify.schema.json", json.loads(run(tool, ["verify"], {0})))
    out = run(tool, ["compare", "--alpha", "0.3,2", "--tau", "0,0.5", "--zeta", "0.5", "--paths", "2000",
                     "--steps", "50", "--seed", "1", "--no-pde"], {0, 4})
    check("compare.schema.json", parse_compare(out))


if __name__ == "__main__":
    main()
