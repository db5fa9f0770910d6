#!/usr/bin/env python3
"""Generate the offline facts bundle under fixtures/.

The bundle mixes published values (residual-table rows, the decompositions
and curve records the literature pins) with synthetic-but-constrained data
for the remaining levels: dimensions always sum to the genus, Fricke +1
dimensions always sum to the quotient genus, and Fricke signs respect the
parity of the analytic rank. Every record carries a provenance tag.

Also rewrites tests/golden/split_stats_1e4.txt from an independent
brute-force evaluation of the decomposition hypothesis (full enumeration of
the removal choices, no greedy shortcut).

Usage: python3 tools/gen_fixtures.py [repo_root]
"""

import json
import math
import os
import sys

# ----------------------------------------------------------------------
# exact invariants (independent reimplementation; the C++ library is the
# artifact under test, so nothing here calls it)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> dict:
    f, d = {}, 2
    while d * d <= n:
        while n % d == 0:
            f[d] = f.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        f[n] = f.get(n, 0) + 1
    return f


def psi(n: int) -> int:
    r = n
    for p in factorize(n):
        r = r // p * (p + 1)
    return r


def nu2(n: int) -> int:
    r = 1
    for p, e in factorize(n).items():
        if p == 2:
            r *= 1 if e == 1 else 0
        elif p % 4 == 1:
            r *= 2
        else:
            return 0
    return r


def nu3(n: int) -> int:
    r = 1
    for p, e in factorize(n).items():
        if p == 3:
            r *= 1 if e == 1 else 0
        elif p % 3 == 1:
            r *= 2
        else:
            return 0
    return r


def phi(n: int) -> int:
    r = n
    for p in factorize(n):
        r = r // p * (p - 1)
    return r


def nu_inf(n: int) -> int:
    return sum(phi(math.gcd(d, n // d)) for d in range(1, n + 1) if n % d == 0)


def genus(n: int) -> int:
    num = psi(n) - 3 * nu2(n) - 4 * nu3(n) - 6 * nu_inf(n)
    assert num % 12 == 0, n
    return num // 12 + 1


def class_number(D: int) -> int:
    assert D < 0 and D % 4 in (0, 1)
    count = 0
    for a in range(1, math.isqrt(-D // 3) + 1):
        for b in range(-a, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a:
                continue
            if math.gcd(math.gcd(a, abs(b)), c) != 1:
                continue
            if b < 0 and (-b == a or a == c):
                continue
            count += 1
    return count


def genus_plus(p: int) -> int:
    assert is_prime(p) and p > 3
    g, h = genus(p), class_number(-4 * p)
    if p % 8 == 7:
        num, den = 2 * g + 2 - 2 * h, 4
    elif p % 8 == 3:
        num, den = 3 * (2 * g + 2) - 4 * h, 12
    else:
        num, den = 2 * g + 2 - h, 4
    assert num >= 0 and num % den == 0, (p, num, den)
    return num // den


# ----------------------------------------------------------------------
# published small-degree classifications (prime levels)

DEG1 = {2, 3, 5, 7, 13}
DEG2 = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
        71, 79, 83, 89, 101, 131}
DEG3 = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 43}
DEG4 = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
        67, 71, 73, 79, 83, 89, 101, 103, 107, 131, 167, 191}
DEG5_INFINITE = {109}

# prime levels whose quotient curve has infinitely many cubic points and
# whose own cubic points are finite (the pullback levels)
PLUS_CUBIC_TRUE = {67, 73, 103, 107, 109, 163, 167, 191, 269}

# exact gonalities of X_0(p) for the small levels
GONALITY_EXACT = {}
for _p in (2, 3, 5, 7, 13):
    GONALITY_EXACT[_p] = 1
for _p in (11, 17, 19, 23, 29, 31, 37, 41, 47, 59, 71):
    GONALITY_EXACT[_p] = 2
GONALITY_EXACT[43] = 3
for _p in (53, 61, 67, 73, 79, 83, 89, 101, 103, 107, 131):
    GONALITY_EXACT[_p] = 4
GONALITY_EXACT[109] = 5
for _p in (97, 113, 127, 137, 139, 149, 151, 179, 181, 227, 239):
    GONALITY_EXACT[_p] = 6
GONALITY_EXACT[193] = 8
GONALITY_EXACT[197] = 8

# residual-table kernel exponents (published)
PUBLISHED_EXPONENTS = {223: 14, 227: 14, 359: 16, 383: 22, 491: 38, 809: 24,
                       929: 40, 1409: 48}

LIMIT = 3000
PRIMES = [p for p in range(2, LIMIT) if is_prime(p)]


def label(p: int, i: int) -> str:
    return f"{p}.2.a.{chr(ord('a') + i)}"


def factor_rows(p: int):
    """(label, dim, fricke, analytic_rank, provenance) per factor."""
    g = genus(p)
    if g == 0:
        return []
    gp = genus_plus(p)
    pub = "published"
    syn = "synthetic"
    if p == 37:
        return [(label(p, 0), 1, 1, 1, pub), (label(p, 1), 1, -1, 0, pub)]
    if p == 71:
        return [(label(p, 0), 3, -1, 0, pub), (label(p, 1), 3, -1, 0, pub)]
    if p == 163:
        return [(label(p, 0), 1, 1, 1, pub), (label(p, 1), 5, 1, 1, syn),
                (label(p, 2), 7, -1, 0, syn)]
    if p == 193:
        return [(label(p, 0), 2, -1, 2, pub), (label(p, 1), 6, -1, 0, syn),
                (label(p, 2), 7, 1, 1, syn)]
    if p == 197:
        return [(label(p, 0), 1, 1, 1, pub), (label(p, 1), 5, 1, 1, pub),
                (label(p, 2), 10, -1, 0, pub)]
    if p == 269:
        return [(label(p, 0), 1, 1, 1, pub), (label(p, 1), 5, 1, 1, syn),
                (label(p, 2), 16, -1, 0, syn)]
    if p in PUBLISHED_EXPONENTS:
        # the dim-2 subvariety of the residual table, the invariant part,
        # and the rest of the anti-invariant part
        return [(label(p, 0), 2, -1, 0, pub), (label(p, 1), gp, 1, 1, syn),
                (label(p, 2), g - gp - 2, -1, 0, syn)]
    if p == 2089:
        dims = [1, 1, 1, 1, 1, 2, 2, 6, 67, 91]
        assert sum(dims) == g
        # invariant part: deterministic largest-first subset summing to gp
        plus_idx, remaining = set(), gp
        for i in sorted(range(len(dims)), key=lambda i: (-dims[i], i)):
            if dims[i] <= remaining:
                plus_idx.add(i)
                remaining -= dims[i]
        assert remaining == 0, (gp, sorted(plus_idx))
        return [(label(p, i), dims[i], 1 if i in plus_idx else -1,
                 1 if i in plus_idx else 0, "published dims, synthetic signs")
                for i in range(len(dims))]
    if gp == 0:
        return [(label(p, 0), g, -1, 0, syn)]
    return [(label(p, 0), gp, 1, 1, syn), (label(p, 1), g - gp, -1, 0, syn)]


def gonality_bounds(p: int):
    if p in GONALITY_EXACT:
        v = GONALITY_EXACT[p]
        return v, v, "gonality tables"
    if p == 163:
        return 7, 8, "gonality tables (exact value open: 7 or 8)"
    if p in (167, 191):
        return 4, 8, "quartic infinitude and gonality tables"
    if p in (157, 173, 199):
        return 7, p + 1, "gonality lower-bound theorem; j-map upper bound"
    if 200 < p <= 696:
        if p == 269:
            return 7, 12, "gonality tables (>= 7); degree-6 infinitude caps at 12"
        return 7, p + 1, "gonality lower-bound theorem; j-map upper bound"
    lower = -((-(p + 25)) // 60)  # ceil(((p+1)/12 + 2) / 5), the F_4 count
    return lower, p + 1, "F_4 point-count bound; j-map upper bound"


def known_density(p: int, d: int):
    if d == 1:
        return p in DEG1
    if d == 2:
        return p in DEG2
    if d == 3:
        return p in DEG3
    if d == 4:
        return p in DEG4
    if d == 5:
        if p in DEG5_INFINITE:
            return True
        if p not in DEG4:
            return False
        return None
    raise ValueError(d)


def plus_cubic(p: int):
    if p in PLUS_CUBIC_TRUE:
        return True, "cubic-point classification of the quotient curves"
    if p == 193:
        return False, "cubic-point classification of the quotient curves"
    if 200 < p <= 696:
        return False, "cubic-point classification of the quotient curves"
    if p > 696:
        return False, "derived: the point-count threshold excludes it"
    return None, None


# ----------------------------------------------------------------------
# kernel exponents: published eight + synthetic for every other subset the
# involution prune leaves open


def classify_subsets(p, rows, exponents):
    """Returns (residual_rows, open_subsets) under the classifier's order."""
    g = genus(p)
    gp = genus_plus(p) if (g > 0 and p > 3) else 0
    n = len(rows)
    plus = frozenset(r[0] for r in rows if r[2] == 1)
    residual, open_subsets = [], []
    for mask in range(1, (1 << n) - 1):
        sel = frozenset(rows[i][0] for i in range(n) if mask >> i & 1)
        dim = sum(rows[i][1] for i in range(n) if mask >> i & 1)
        if dim < 2:
            continue
        if sel == plus:
            continue
        if 2 * g - 2 < 3 * (2 * dim - 2):
            continue
        e = exponents.get((p, sel))
        if e is not None and 2 * g - 2 < e * (2 * dim - 2):
            continue
        if dim == 2 and e is not None:
            residual.append((p, g, gp, dim, e, (2 * g - 2) // (2 * dim - 2)))
            continue
        open_subsets.append((sel, dim))
    return residual, open_subsets


def build_exponents(tables):
    exponents, entries = {}, []
    for p, e in PUBLISHED_EXPONENTS.items():
        members = [tables[p][0][0]]
        exponents[(p, frozenset(members))] = e
        entries.append({"level": p, "members": members, "exponent": e,
                        "provenance": "published"})
    for p in PRIMES:
        rows = tables[p]
        if not rows:
            continue
        _, open_subsets = classify_subsets(p, rows, exponents)
        for sel, _dim in sorted(open_subsets, key=lambda s: sorted(s[0])):
            e = 2 * genus(p)
            exponents[(p, sel)] = e
            entries.append({"level": p, "members": sorted(sel), "exponent": e,
                            "provenance": "synthetic-large"})
    entries.sort(key=lambda r: (r["level"], r["members"]))
    return exponents, entries


# ----------------------------------------------------------------------


def main():
    root = sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..")
    fixtures = os.path.join(root, "fixtures")
    golden = os.path.join(root, "tests", "golden")
    os.makedirs(fixtures, exist_ok=True)
    os.makedirs(golden, exist_ok=True)

    tables = {p: factor_rows(p) for p in PRIMES}

    # integrity of the synthesis
    for p, rows in tables.items():
        g = genus(p)
        assert sum(r[1] for r in rows) == g, p
        if g > 0:
            assert sum(r[1] for r in rows if r[2] == 1) == genus_plus(p), p
        for r in rows:
            assert (r[3] % 2 == 1) == (r[2] == 1), (p, r)  # rank parity vs sign

    exponents, exponent_entries = build_exponents(tables)

    # every subset must now resolve, and the residual rows must be exactly
    # the published table
    residual_all = []
    for p in PRIMES:
        rows = tables[p]
        if not rows:
            continue
        residual, open_subsets = classify_subsets(p, rows, exponents)
        assert not open_subsets, (p, open_subsets)
        residual_all.extend(residual)
    residual_all.sort()
    assert [(r[0], r[4]) for r in residual_all] == sorted(PUBLISHED_EXPONENTS.items()), residual_all

    def dump(name, payload):
        path = os.path.join(fixtures, name)
        with open(path, "w") as f:
            json.dump(payload, f, indent=1)
            f.write("\n")

    dump("newform_factors.json", {
        "schema_version": "1",
        "provenance": "synthetic decomposition data constrained by the genus identities; "
                      "levels with published decompositions carry them verbatim",
        "complete_below": LIMIT,
        "factors": [
            {"label": r[0], "level": p, "dim": r[1], "fricke": r[2],
             "analytic_rank": r[3], "provenance": r[4]}
            for p in PRIMES for r in tables[p]
        ],
    })

    dump("kernel_exponents.json", {
        "schema_version": "1",
        "provenance": "eight published residual-table exponents; other subsets carry "
                      "synthetic large exponents standing in for the unpublished computation",
        "entries": exponent_entries,
    })

    dump("genus2_quotients.json", {
        "schema_version": "1",
        "provenance": "published quotient tables: no prime level admits a new genus-2 quotient",
        "entries": [{"level": p, "has_genus2_new_quotient": False} for p in PRIMES],
    })

    gon_entries = []
    for p in PRIMES:
        lo, hi, prov = gonality_bounds(p)
        gon_entries.append({"level": p, "lower": lo, "upper": hi, "provenance": prov})
    dump("gonality.json", {"schema_version": "1",
                           "provenance": "gonality tables for small levels; generic bounds elsewhere",
                           "entries": gon_entries})

    pc_entries = []
    for p in PRIMES:
        val, prov = plus_cubic(p)
        if val is None:
            continue
        pc_entries.append({"level": p, "infinite": val, "provenance": prov})
    dump("plus_cubic.json", {"schema_version": "1",
                             "provenance": "cubic points on the quotient curves X_0^+(p)",
                             "entries": pc_entries})

    dump("elliptic_curves.json", {
        "schema_version": "1",
        "provenance": "published curve records; coverage windows declare the complete slices",
        "coverage": [
            {"cond_min": 201, "cond_max": 696, "rank_min": 1, "degree_max": 6},
            {"cond_min": 163, "cond_max": 163, "rank_min": 0, "degree_max": None},
            {"cond_min": 193, "cond_max": 193, "rank_min": 0, "degree_max": None},
            {"cond_min": 197, "cond_max": 197, "rank_min": 0, "degree_max": None},
        ],
        "records": [
            {"label": "163.a1", "conductor": 163, "rank": 1, "modular_degree": 6},
            {"label": "197.a1", "conductor": 197, "rank": 1, "modular_degree": 10},
            {"label": "269.a1", "conductor": 269, "rank": 1, "modular_degree": 6},
        ],
    })

    complete = []
    for d in (1, 2, 3, 4):
        complete.append({"degree": d, "below": LIMIT,
                         "infinite_levels": sorted(x for x in PRIMES if known_density(x, d))})
    partial_entries = []
    for p in PRIMES:
        v = known_density(p, 5)
        if v is not None:
            partial_entries.append({"level": p, "infinite": v})
    dump("known_density.json", {
        "schema_version": "1",
        "provenance": "published classifications for degrees 1-4; degree 5 where settled",
        "complete": complete,
        "partial": [{"degree": 5, "entries": partial_entries}],
    })

    dump("certificates.json", {
        "schema_version": "1",
        "provenance": "imported verification records",
        "certificates": [{
            "level": 197,
            "statement_id": "W60_no_positive_rank_translate",
            "source": "modular parametrization of 197.a1 with an F_3 enumeration of W_6^0",
        }],
    })

    dump("manifest.json", {
        "schema_version": "1",
        "bundle": "x0p-facts",
        "complete_below": LIMIT,
        "files": {
            "newform_factors.json": "factor decompositions; per-record provenance",
            "kernel_exponents.json": "kernel exponents; per-record provenance",
            "genus2_quotients.json": "genus-2 quotient emptiness at prime levels",
            "gonality.json": "gonality bounds; per-record provenance",
            "plus_cubic.json": "cubic-point infinitude on the quotient curves",
            "elliptic_curves.json": "curve records with explicit coverage windows",
            "known_density.json": "small-degree point classifications",
            "certificates.json": "imported verification records",
        },
    })

    # ------------------------------------------------------------------
    # golden: decomposition-hypothesis stats over primes < 10^4, evaluated
    # by full enumeration of the removal choices (independent of the
    # library's greedy implementation)

    def hypothesis_brute(rows) -> bool:
        total = sum(r[1] for r in rows)
        plus = [r[1] for r in rows if r[2] == 1]
        minus = [r[1] for r in rows if r[2] == -1]
        best = None
        for a in [0] + plus:
            for b in [0] + minus:
                rem = total - a - b
                best = rem if best is None else min(best, rem)
        return best <= 2

    lo_r, hi_r = 2, 9999
    primes_in_range = [p for p in range(lo_r, hi_r + 1) if is_prime(p)]
    with_data = satisfied = skipped = 0
    for p in primes_in_range:
        if p < LIMIT:
            with_data += 1
            if hypothesis_brute(tables[p]):
                satisfied += 1
        else:
            skipped += 1
    line = (f"range={lo_r}..{hi_r} primes={len(primes_in_range)} with_data={with_data} "
            f"satisfied={satisfied} failing={with_data - satisfied} skipped={skipped} "
            f"percent={100.0 * satisfied / with_data:.3f}\n")
    with open(os.path.join(golden, "split_stats_1e4.txt"), "w") as f:
        f.write(line)

    print(f"primes: {len(PRIMES)}  factors: {sum(len(t) for t in tables.values())}  "
          f"exponents: {len(exponent_entries)}")
    print(f"split stats golden: {line.strip()}")


if __name__ == "__main__":
    main()
