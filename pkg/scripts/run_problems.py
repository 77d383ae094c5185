#!/usr/bin/env python3
"""Run every problem file under problems/ through the CLI pipeline and write reports."""
import argparse
from dataclasses import dataclass
from pathlib import Path

from omeganf.cli import execute

ROOT = Path(__file__).resolve().parent.parent


@dataclass
class Config:
    problems: Path = ROOT / "problems"
    out: Path = ROOT / "reports"


def main(cfg: Config) -> None:
    cfg.out.mkdir(parents=True, exist_ok=True)
    for path in sorted(cfg.problems.glob("*.toml")):
        doc = execute(path)
        (cfg.out / f"{path.stem}.json").write_text(doc.to_json(), encoding="utf-8")
        (cfg.out / f"{path.stem}.txt").write_text(doc.human, encoding="utf-8")
        status = doc.machine.get("error", {}).get("type", "ok")
        print(f"{path.name:<24} exit {doc.exit_code}  {status}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--problems", type=Path, default=Config.problems)
    ap.add_argument("--out", type=Path, default=Config.out)
    main(Config(**vars(ap.parse_args())))
