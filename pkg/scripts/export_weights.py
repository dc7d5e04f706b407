"""Write the published weight assignments as JSON files usable by ``pwcolor verify``."""
import argparse
import json
from pathlib import Path

from pwcolor.tables import PUBLISHED


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data" / "weights"))
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, entry in PUBLISHED.items():
        doc = entry["weights"].to_dict(entry["piece"])
        # informational only; verify takes colors and counting from flags
        doc["c"] = entry["c"]
        doc["counting"] = entry["counting"]
        doc["reported_base"] = entry["base"]
        path = out / f"{name}.json"
        path.write_text(json.dumps(doc, indent=2) + "\n")
        print(path)


if __name__ == "__main__":
    main()
