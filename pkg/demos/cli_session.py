#!/usr/bin/env python3
"""Scripted tour of the latcov command line.

Every call goes through the same main() the console script uses, so the
output here is byte for byte what a shell session would produce. Runs in
a scratch directory and prints each command before its records.
"""

import os
import sys
import tempfile

from latcov.cli import main


def run(*argv):
    print(f"$ latcov {' '.join(argv)}")
    code = main(list(argv))
    print(f"[exit {code}]")
    print()
    return code


def demo(workdir):
    inst = os.path.join(workdir, "demo.lcov")
    out = os.path.join(workdir, "rank.csv")

    run("gen", "explicit:n=6:seed=1", inst)
    run("rank", "--in", inst, "--oracle")
    run("rank", "--gen", "explicit:n=6:seed=1", "--oracle",
        "--format", "json")
    run("sop", "--gen", "uniform:n=7:seed=11", "--oracle")
    run("lcst", "--tree", os.path.join(os.path.dirname(__file__),
                                       os.pardir, "fixtures", "star.lcov"),
        "--round-seed", "9")
    run("wssr", "--gen", "stochastic:n=3:seed=4", "--oracle",
        "--samples", "300")
    run("suite", "wssr-lemmas", "--seeds", "3", "--samples", "100")

    # --out writes the records to a file and keeps stdout quiet
    code = run("rank", "--gen", "explicit:n=6:seed=1", "--out", out)
    assert code == 0
    with open(out) as fh:
        body = fh.read()
    print(f"contents of {os.path.basename(out)}:")
    print(body)


def main_demo():
    with tempfile.TemporaryDirectory() as workdir:
        demo(workdir)
    print("timing lines go to stderr; records above are stdout only")
    return 0


if __name__ == "__main__":
    sys.exit(main_demo())
