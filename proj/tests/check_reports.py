"""Runs a few CLI commands and validates every report line against docs/report-schema.json."""
import json
import subprocess
import sys

import jsonschema

cli, schema_path = sys.argv[1], sys.argv[2]
schema = json.load(open(schema_path))
commands = [
    ["ring", "--ring", "F4"],
    ["bloch", "--ring", "gf(7)", "--expect", "Z/4"],
    ["k2", "--ring", "zmod(8)"],
    ["bw-check", "--q", "8"],
    ["genpos", "--ring", "gf(5)", "--n", "3"],
    ["genpos", "--ring", "zmod(9)", "--n", "2", "--vectors", "1,0", "--S", "1,3"],
    ["homology", "--group", "sl2(gf(4))", "--degree", "3", "--method", "stable", "--prime", "2"],
    ["coinv", "--ring", "gf(4)", "--degree", "2"],
    ["exactness", "--complex", "lines", "--ring", "gf(3)", "--range", "1..2"],
    ["verify-d3", "--ring", "gf(4)"],
    ["paper-suite", "--quick", "--criteria", "4,9"],
    ["homology", "--group", "sl2(gf(5))", "--degree", "3"],
    ["ring", "--ring", "nope"],
]
lines = 0
for c in commands:
    out = subprocess.run([cli] + c, capture_output=True, text=True).stdout
    for line in out.splitlines():
        jsonschema.validate(json.loads(line), schema)
        lines += 1
print(f"{lines} report lines valid")
