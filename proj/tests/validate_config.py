"""Validates configs against the shipped schema; a known-bad config must fail."""
import json
import sys

import jsonschema

schema_path, *configs = sys.argv[1:]
with open(schema_path, encoding="utf-8") as f:
    schema = json.load(f)
validator = jsonschema.Draft202012Validator(schema)
validator.check_schema(schema)

for path in configs:
    with open(path, encoding="utf-8") as f:
        validator.validate(json.load(f))
    print(f"valid: {path}")

bad = {"scenarios": [{"theorem_id": "T3_2", "tirals": 3}]}
if validator.is_valid(bad):
    sys.exit("schema accepted an unknown key")
bad = {"scenarios": [{"theorem_id": "T3_5", "params": {"alpha": 1, "lambda": 1, "betas": [1], "betas_star": [1], "x": 1}}]}
if validator.is_valid(bad):
    sys.exit("schema accepted an unknown parameter")
print("unknown keys rejected")
