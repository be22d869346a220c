#!/usr/bin/env python3
# Copyright 2026 The ctxeval Authors.
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Runs the pipeline fixture and validates report.json with jsonschema."""

import argparse
import json
import pathlib
import shutil
import subprocess
import sys
import tempfile

import jsonschema

STAGES = ["classify", "gen-context", "generate", "judge", "analyze", "report"]


def main():
  parser = argparse.ArgumentParser()
  parser.add_argument("--cli", required=True)
  parser.add_argument("--fixture", required=True, type=pathlib.Path)
  parser.add_argument("--schema", required=True, type=pathlib.Path)
  args = parser.parse_args()

  schema = json.loads(args.schema.read_text())
  jsonschema.Draft202012Validator.check_schema(schema)
  validator = jsonschema.Draft202012Validator(schema)

  with tempfile.TemporaryDirectory() as tmp:
    work = pathlib.Path(tmp) / "run"
    shutil.copytree(args.fixture, work)
    config = work / "config.json"
    for stage in STAGES:
      subprocess.run([args.cli, "--config", str(config), "--run-id", "py", "--deterministic",
                      stage], check=True, capture_output=True)
    report = json.loads((work / "runs" / "py" / "report.json").read_text())

  errors = sorted(validator.iter_errors(report), key=lambda e: list(e.path))
  for e in errors:
    print(f"{'/'.join(map(str, e.path))}: {e.message}")
  if errors:
    return 1

  # Mutations the schema must reject.
  broken = json.loads(json.dumps(report))
  del broken["win_rates"]
  if validator.is_valid(broken):
    print("schema accepted a report without win_rates")
    return 1
  broken = json.loads(json.dumps(report))
  broken["unexpected"] = 1
  if validator.is_valid(broken):
    print("schema accepted an unknown top-level key")
    return 1
  print("report.json valid")
  return 0


if __name__ == "__main__":
  sys.exit(main())
