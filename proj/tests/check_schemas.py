"""Validate shipped problem files and CLI --json reports against docs/*.schema.json."""

import json
import pathlib
import subprocess
import sys

import jsonschema


def main() -> int:
    cli, docs, data = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    problem = json.loads((docs / "problem.schema.json").read_text())
    report = json.loads((docs / "report.schema.json").read_text())
    failures = 0

    # bad_atom.json is well-formed JSON whose atom fails a range check, so it still matches the schema
    for path in sorted(data.glob("*.json")):
        try:
            jsonschema.validate(json.loads(path.read_text()), problem)
        except jsonschema.ValidationError as e:
            print(f"{path.name}: {e.message}")
            failures += 1

    commands = [
        ["analyze", data / "ex3_one_over_n.json"],
        ["analyze", data / "ex3_two_over_n.json"],
        ["analyze", data / "pair2x2.json"],
        ["analyze", data / "skew_symbol_atoms.json"],
        ["analyze", data / "skew_two_blocks.json"],
        ["decompose", data / "pair2x2.json"],
        ["skew", data / "t2x2.json"],
        ["skew", data / "ex3_two_over_n.json", "--family", "lin:1,-1"],
        ["skew", "--family", "ex3:one_over_n,32"],
        ["verify", "--random", "--n", "6", "--trials", "5", "--seed", "3"],
        ["truncate", data / "ex3_one_over_n.json", "--dims", "4,16"],
    ]
    for args in commands:
        argv = [cli, "--json", *map(str, args)]
        run = subprocess.run(argv, capture_output=True, text=True)
        if run.returncode != 0:
            print(f"{' '.join(argv)}: exit {run.returncode}: {run.stderr.strip()}")
            failures += 1
            continue
        try:
            jsonschema.validate(json.loads(run.stdout), report)
        except jsonschema.ValidationError as e:
            print(f"{' '.join(argv)}: {e.message}")
            failures += 1

    print(f"{failures} schema failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
