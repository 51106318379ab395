"""Run CLI scenarios and validate their JSON against the shipped schema."""
import json
import subprocess
import sys

import jsonschema

RUNS = [
    ["ebbi", "check", "--e", "1", "-0.5", "0.5", "0.5"],
    ["ebbi", "construct", "--a", "1", "0.2", "0.3", "0.1"],
    ["ebbi", "expand", "--table", "0.1", "0.1", "0.1", "0.1", "0.2", "0.2", "0.1", "0.1"],
    ["theorem", "1", "--coeffs", "1", "0.2", "0.1", "0.3"],
    ["theorem", "3", "--e", "0.5", "0.5", "0.5", "1"],
    ["theorem", "4", "--f", "0.25", "0.25", "0.25", "0.25", "--fhat", "0.25", "0.25", "0.25", "0.25",
     "--ftilde", "0.25", "0.25", "0.25", "0.25"],
    ["theorem", "bell", "--weights", "0.5", "0.5", "--ea", "1", "-1", "--eb", "0.2", "1", "--ec", "-1", "0.3"],
    ["quantum", "eprb", "--angles", "0", "60", "120"],
    ["quantum", "filter", "--bloch", "0", "0", "0.5", "--a", "0", "0", "1", "--b", "1", "0", "0",
     "--c", "0", "1", "0"],
    ["quantum", "schwartz", "--a", "1", "0", "0", "--b", "0", "0", "1", "--c", "1", "0", "1"],
    ["quantum", "commutators", "--a", "1", "0", "0", "--b", "0", "1", "0", "--c", "0", "0", "1"],
    ["--seed", "3", "quantum", "separable", "--A", "1", "0", "0", "--B", "0", "1", "0", "--C", "0", "0", "1"],
    ["--seed", "3", "leggett-garg", "--dt", "0.1", "1.0471975511965976", "1.0471975511965976",
     "--samples", "1000"],
    ["extended-eprb", "--angles", "0", "30", "90"],
    ["extended-eprb", "--angles", "0", "45", "90", "135"],
    ["allergy", "--variant", "single", "--days", "10"],
    ["--seed", "2", "allergy", "--schedule", "random", "--days", "10"],
    ["--seed", "1", "factorizable", "--mu", "equal", "--angles", "0", "40", "--samples", "1000"],
    ["factorizable", "--mu", "opposite", "--angles", "0", "360", "180", "--search-steps", "6"],
    ["--seed", "5", "epr-pipeline", "--source", "singlet", "--angles", "0", "60", "120", "--samples", "3000"],
    ["--seed", "5", "epr-pipeline", "--source", "triple", "--angles", "0", "60", "120", "--samples", "3000",
     "--window", "0.4", "--jitter", "1"],
    ["sweep", "--target", "factorizable", "--mu", "opposite", "--step", "60", "--max", "720"],
    ["sweep", "--target", "leggett-garg", "--step", "10", "--max", "180"],
    ["sweep", "--target", "extended-eprb", "--step", "60", "--max", "300"],
]


def main():
    exe, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failed = 0
    for args in RUNS:
        proc = subprocess.run([exe, *args], capture_output=True, text=True)
        if proc.returncode != 0:
            print("FAIL", " ".join(args), "exit", proc.returncode, proc.stderr.strip())
            failed += 1
            continue
        errors = list(validator.iter_errors(json.loads(proc.stdout)))
        for e in errors:
            print("FAIL", " ".join(args), "->", "/".join(map(str, e.absolute_path)), e.message)
        failed += bool(errors)
    print(f"{len(RUNS) - failed}/{len(RUNS)} outputs valid")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
