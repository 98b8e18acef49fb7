"""Regenerate the frozen golden files.  Only run after an intended format change."""
import json
from pathlib import Path

from superquot.cli import (
    corpus_files,
    corpus_text,
    file_signature,
    format_presentation,
    parse_presentation,
    render,
    run_command,
)

HERE = Path(__file__).parent
CLI_CASES = {
    "Borel": ["quotient", "GL11", "Borel"],
    "GL11": ["quotient", "GL11", "Torus"],
    "GL2": ["analyze", "GL2"],
    "GL2Borel": ["galois", "GL2", "GL2Borel"],
    "Ga01": ["analyze", "Ga01"],
    "Ga11": ["gr", "Ga11"],
    "Gm": ["lie", "Gm"],
    "GmSplit": ["quotient", "GmSplit", "Mu2e"],
    "Mu2": ["galois", "Gm", "Mu2"],
    "Torus": ["splitting", "GL11", "Torus"],
}


def main():
    (HERE / "parse").mkdir(exist_ok=True)
    (HERE / "cli").mkdir(exist_ok=True)
    (HERE / "canonical").mkdir(exist_ok=True)
    for f in corpus_files():
        pf = parse_presentation(corpus_text(f))
        (HERE / "canonical" / f).write_text(format_presentation(pf))
        sig = file_signature(pf)
        (HERE / "parse" / (f[:-3] + ".json")).write_text(json.dumps(sig, indent=1, sort_keys=True, default=str) + "\n")
    for stem, argv in CLI_CASES.items():
        doc, code = run_command(argv + ["--bound", "3"])
        (HERE / "cli" / (stem + ".json")).write_text(render(doc, "json"))


if __name__ == "__main__":
    main()
