"""Independent oracle for the w_k tables.

Expands prod(t + a_i b_j) with sympy, then rewrites each t-coefficient in
elementary symmetric polynomials with sympy's own `symmetrize`, first in the
a-alphabet and then in the b-alphabet.  Output is frozen under tests/golden/.

    python3 tests/oracles/wk_oracle.py tests/golden
"""
import json
import sys
from pathlib import Path

import sympy as sp
from sympy.polys.polyfuncs import symmetrize


def to_elementary(expr, alphabet, symbols):
    sym, rem, defs = symmetrize(sp.expand(expr), *alphabet, formal=True)
    if sp.expand(rem) != 0:
        raise ValueError("not symmetric")
    # sympy names its formal elementaries s1.., map them to our symbols
    subs = {s: symbols[int(str(s)[1:]) - 1] for s, _ in defs}
    return sp.expand(sym.subs(subs, simultaneous=True))


def wk_table(m, n):
    a = sp.symbols(f"a1:{m + 1}")
    b = sp.symbols(f"b1:{n + 1}")
    u = sp.symbols(f"u1:{m + 1}")
    v = sp.symbols(f"v1:{n + 1}")
    t = sp.Symbol("t")
    prod = sp.Integer(1)
    for ai in a:
        for bj in b:
            prod *= t + ai * bj
    poly = sp.Poly(sp.expand(prod), t)
    gens = list(u) + list(v)
    table = []
    for k in range(m * n + 1):
        c = poly.coeff_monomial(t ** (m * n - k))
        step = to_elementary(c, a, u)
        # coefficients of step are polynomials in b; decompose those in turn
        both = to_elementary(step, b, v)
        p = sp.Poly(both, *gens) if both != 0 else None
        terms = []
        if p is not None:
            for exps, coeff in sorted(p.terms()):
                terms.append({"exponents": list(exps), "coeff": str(coeff)})
        table.append(terms)
    return {"m": m, "n": n, "variables": [str(g) for g in gens], "w": table}


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else ".")
    out.mkdir(parents=True, exist_ok=True)
    for m, n in [(1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (3, 2)]:
        data = wk_table(m, n)
        (out / f"wk_{m}_{n}.json").write_text(json.dumps(data, indent=1) + "\n")


if __name__ == "__main__":
    main()
