"""Cross-check Sardinas-Patterson against exhaustive factorization search.

    python3 scripts/random_code_check.py --count 5000 --max-words 4 --max-len 4 --alphabet 2
"""

import argparse
import itertools

import numpy as np

from codedshift.acceptance import ambiguity_search_bound
from codedshift.codecheck import find_double_factorization, sardinas_patterson


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--count", type=int, default=1000)
    parser.add_argument("--max-words", type=int, default=4)
    parser.add_argument("--max-len", type=int, default=4)
    parser.add_argument("--alphabet", type=int, default=2)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    universe = [w for n in range(1, args.max_len + 1)
                for w in itertools.product(range(args.alphabet), repeat=n)]
    ambiguous = mismatches = 0
    for _ in range(args.count):
        k = int(rng.integers(1, args.max_words + 1))
        code = [universe[i] for i in rng.choice(len(universe), size=k, replace=False)]
        sp = sardinas_patterson(code)
        found = find_double_factorization(code, ambiguity_search_bound(code))
        ambiguous += found is not None
        if sp.positive != (found is None):
            mismatches += 1
            print("mismatch:", code, sp.status, found)
    print(f"{args.count} codes, {ambiguous} not uniquely decomposable, {mismatches} mismatches")


if __name__ == "__main__":
    main()
