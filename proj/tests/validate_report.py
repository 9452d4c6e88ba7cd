"""Run a casimir command and validate its JSON output against docs/report_schema.json.

    python3 validate_report.py SCHEMA EXPECTED_EXIT -- casimir sweep ... --format json
"""
import json
import subprocess
import sys

import jsonschema


def main():
    schema_path, expected_exit = sys.argv[1], int(sys.argv[2])
    command = sys.argv[sys.argv.index("--") + 1:]
    proc = subprocess.run(command, capture_output=True, text=True)
    if proc.returncode != expected_exit:
        sys.exit(f"exit {proc.returncode}, expected {expected_exit}\n{proc.stderr}")
    with open(schema_path) as fh:
        schema = json.load(fh)
    document = json.loads(proc.stdout)
    jsonschema.validate(document, schema)
    print(f"{document['command']}: valid against schema_version {document['schema_version']}")


if __name__ == "__main__":
    main()
