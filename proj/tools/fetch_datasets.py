#!/usr/bin/env python3
"""Materialize the benchmark datasets as CSVs under data/.

Wine comes from scikit-learn's bundled copy and works offline. Ecoli, Yeast,
and the original Wisconsin breast-cancer table are pulled from the UCI
repository (with a GitHub mirror as fallback), so they need network access.
Datasets that cannot be fetched are reported and skipped; the acceptance
tests that depend on them will skip themselves with the same message.
"""

import csv
import io
import sys
import urllib.request
from pathlib import Path

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

UCI = "https://archive.ics.uci.edu/ml/machine-learning-databases"
MIRROR = "https://raw.githubusercontent.com/jbrownlee/Datasets/master"


def write_csv(path: Path, header: list[str], rows: list[list[str]]) -> None:
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        writer.writerows(rows)
    print(f"  wrote {path} ({len(rows)} rows)")


def fetch_text(urls: list[str]) -> str:
    last_error: Exception | None = None
    for url in urls:
        try:
            with urllib.request.urlopen(url, timeout=30) as response:
                return response.read().decode("utf-8")
        except Exception as error:  # noqa: BLE001 - report and try the next mirror
            last_error = error
    raise RuntimeError(f"all sources failed, last error: {last_error}")


def make_wine() -> None:
    from sklearn.datasets import load_wine

    bundle = load_wine()
    header = [f"f{i}" for i in range(bundle.data.shape[1])] + ["class"]
    rows = [
        ["%.17g" % value for value in features] + [str(label)]
        for features, label in zip(bundle.data, bundle.target)
    ]
    write_csv(DATA_DIR / "wine.csv", header, rows)


def make_ecoli() -> None:
    text = fetch_text([f"{UCI}/ecoli/ecoli.data"])
    rows = []
    for line in text.splitlines():
        parts = line.split()
        if len(parts) != 9:
            continue
        rows.append(parts[1:8] + [parts[8]])
    if len(rows) != 336:
        raise RuntimeError(f"expected 336 rows, parsed {len(rows)}")
    write_csv(DATA_DIR / "ecoli.csv", [f"f{i}" for i in range(7)] + ["class"], rows)


def make_yeast() -> None:
    text = fetch_text([f"{UCI}/yeast/yeast.data"])
    rows = []
    for line in text.splitlines():
        parts = line.split()
        if len(parts) != 10:
            continue
        rows.append(parts[1:9] + [parts[9]])
    if len(rows) != 1484:
        raise RuntimeError(f"expected 1484 rows, parsed {len(rows)}")
    write_csv(DATA_DIR / "yeast.csv", [f"f{i}" for i in range(8)] + ["class"], rows)


def make_bc() -> None:
    text = fetch_text(
        [
            f"{UCI}/breast-cancer-wisconsin/breast-cancer-wisconsin.data",
            f"{MIRROR}/breast-cancer-wisconsin.data",
        ]
    )
    rows = []
    for line in text.splitlines():
        parts = line.strip().split(",")
        if len(parts) != 11 or "?" in parts:
            continue
        rows.append(parts[1:10] + [parts[10]])
    if len(rows) != 683:
        raise RuntimeError(f"expected 683 rows after dropping missing, parsed {len(rows)}")
    write_csv(DATA_DIR / "bc.csv", [f"f{i}" for i in range(9)] + ["class"], rows)


def main() -> int:
    DATA_DIR.mkdir(exist_ok=True)
    jobs = {
        "wine": make_wine,
        "ecoli": make_ecoli,
        "yeast": make_yeast,
        "bc": make_bc,
    }
    missing = []
    for name, job in jobs.items():
        target = DATA_DIR / f"{name}.csv"
        if target.exists():
            print(f"  {target} already present, skipping")
            continue
        print(f"fetching {name} ...")
        try:
            job()
        except Exception as error:  # noqa: BLE001
            missing.append(name)
            print(f"  could not fetch {name}: {error}")
    if missing:
        print(
            "\nmissing datasets: "
            + ", ".join(missing)
            + "\nacceptance tests that need them will skip; rerun this script "
            "with network access to enable them."
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
