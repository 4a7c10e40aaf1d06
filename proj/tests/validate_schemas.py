"""Validates the CLI's JSON outputs and the task corpus against schemas/.

usage: validate_schemas.py <atlas-cli> <schemas-dir> <corpus-dir>
"""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource


def main() -> int:
    cli, schema_dir, corpus = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    schemas = {p.name: json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}
    registry = Registry().with_resources((name, Resource.from_contents(s)) for name, s in schemas.items())

    def check(schema: str, doc, what: str) -> None:
        validator = jsonschema.Draft202012Validator(schemas[schema], registry=registry)
        errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
        if errors:
            raise SystemExit(f"{what}: {errors[0].message} at {list(errors[0].path)}")
        print(f"ok {what}")

    for task in sorted(corpus.glob("*/*.json")):
        check("task.schema.json", json.loads(task.read_text()), str(task.relative_to(corpus)))

    with tempfile.TemporaryDirectory() as tmp:
        out = pathlib.Path(tmp)
        subprocess.run([cli, "train", str(corpus / "train"), "-o", str(out), "--timings"], check=True)
        check("bundle.schema.json", json.loads((out / "bundle.json").read_text()), "bundle.json")
        report = json.loads((out / "report.json").read_text())
        check("training-report.schema.json", report, "report.json")
        if not all("T_AGS_ms" in p for p in report["problems"]):
            raise SystemExit("report.json: --timings did not add timing fields")

        log = out / "runs.jsonl"
        for task in ("e1", "e3"):
            subprocess.run([cli, "synth", str(corpus / "train" / f"{task}.json"), "--bundle", str(out / "bundle.json"),
                            "--log", str(log)], check=True, stdout=subprocess.DEVNULL)
        for i, line in enumerate(log.read_text().splitlines()):
            check("run-log.schema.json", json.loads(line), f"run log line {i + 1}")

        subprocess.run([cli, "bench", str(corpus / "heldout"), "--bundle", str(out / "bundle.json"), "--json",
                        str(out / "bench.json")], check=True, stdout=subprocess.DEVNULL)
        check("bench-report.schema.json", json.loads((out / "bench.json").read_text()), "bench.json")
    return 0


if __name__ == "__main__":
    sys.exit(main())
