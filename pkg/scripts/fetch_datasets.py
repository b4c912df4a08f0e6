#!/usr/bin/env python3
"""Download the SNAP benchmark graphs used by the golden tests.

Files land in ./data (or the directory named by KCLIQUES_DATA). The test
suite skips dataset-bound tests when these files are missing, so running
this script is optional and needs network access.
"""

import gzip
import os
import pathlib
import shutil
import sys
import urllib.request

DATASETS = {
    "com-dblp.ungraph.txt.gz":
        "https://snap.stanford.edu/data/bigdata/communities/com-dblp.ungraph.txt.gz",
    "as-skitter.txt.gz":
        "https://snap.stanford.edu/data/as-skitter.txt.gz",
}


def fetch(url, dest):
    tmp = dest.with_suffix(dest.suffix + ".part")
    print(f"fetching {url}")
    with urllib.request.urlopen(url) as resp, open(tmp, "wb") as f:
        shutil.copyfileobj(resp, f)
    tmp.rename(dest)


def main():
    root = pathlib.Path(__file__).resolve().parent.parent
    data = pathlib.Path(os.environ.get("KCLIQUES_DATA", root / "data"))
    data.mkdir(parents=True, exist_ok=True)
    only = set(sys.argv[1:])
    for name, url in DATASETS.items():
        plain = data / name[: -len(".gz")]
        if only and not any(key in name for key in only):
            continue
        if plain.exists() or (data / name).exists():
            print(f"already present: {plain.name}")
            continue
        gz = data / name
        fetch(url, gz)
        # the loaders read .gz directly; unpack anyway for grep-ability
        print(f"unpacking {gz.name}")
        with gzip.open(gz, "rb") as src, open(plain, "wb") as dst:
            shutil.copyfileobj(src, dst)
        gz.unlink()
    print("done")


if __name__ == "__main__":
    main()
