"""Validates every JSON report the CLI emits for the data corpus and the goldens against docs/report.schema.json."""

import json
import os
import pathlib
import subprocess
import sys

import jsonschema


def main() -> int:
    cli, root = sys.argv[1], pathlib.Path(sys.argv[2])
    data = root / "data"
    schema = json.loads((root / "docs" / "report.schema.json").read_text())
    validator = jsonschema.Draft202012Validator(schema)
    validator.check_schema(schema)

    runs = [
        ["fixpoint", "--op", "hj", data / "milner.sys"],
        ["fixpoint", "--op", "am", data / "coin.sys"],
        ["sequence", data / "milner.sys"],
        ["sequence", data / "p32_separator.sys", "--steps", "4"],
        ["check", data / "deadlock.sys", "--relation", "Full"],
        ["check", data / "coin.sys", "--relation", "R"],
        ["props", "--functor", "P32"],
        ["props", "--functor", "D(Id)"],
        ["compare", data / "p32_separator.sys"],
        ["compare", data / "pf_cycles.sys"],
        ["minimize", data / "two_step.aut", data / "two_step.aut"],
    ]
    reports = [(f"coalg {' '.join(map(str, r))}", run(cli, r)) for r in runs]
    reports += [(p.name, p.read_text()) for p in sorted((root / "tests" / "golden").glob("*.json"))]

    failures = 0
    for name, text in reports:
        errors = list(validator.iter_errors(json.loads(text)))
        for e in errors:
            print(f"FAIL {name}: {e.message} at {list(e.absolute_path)}")
        failures += bool(errors)
    # A broken report must be rejected.
    bad = json.loads(reports[0][1])
    bad["steps"] = "none"
    if validator.is_valid(bad):
        print("FAIL schema accepts a malformed fixpoint report")
        failures += 1
    print(f"{len(reports) - failures}/{len(reports)} reports valid")
    return 1 if failures else 0


def run(cli: str, args: list) -> str:
    env = dict(os.environ, COALG_SEED="5")
    proc = subprocess.run([cli, *map(str, args)], capture_output=True, text=True, env=env, check=False)
    if proc.returncode not in (0, 1):
        raise SystemExit(f"{args}: exit {proc.returncode}: {proc.stderr}")
    return proc.stdout


if __name__ == "__main__":
    sys.exit(main())
