"""Validate the JSON report of every builtin scenario against docs/report.schema.json."""
import json
import subprocess
import sys

import jsonschema


def main():
    regval, schema_path = sys.argv[1], sys.argv[2]
    schema = json.load(open(schema_path))
    names = [line.split()[0] for line in subprocess.run([regval, "list"], capture_output=True, text=True,
                                                        check=True).stdout.splitlines() if line.strip()]
    for name in names:
        out = subprocess.run([regval, "analyze", name, "--json", "-"], capture_output=True, text=True)
        if out.returncode != 0:
            print(f"{name}: exit {out.returncode}\n{out.stderr}")
            return 1
        jsonschema.validate(json.loads(out.stdout), schema)
        print(f"{name}: valid")
    return 0


if __name__ == "__main__":
    sys.exit(main())
