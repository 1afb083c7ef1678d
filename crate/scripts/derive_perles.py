"""Derive exact Q(sqrt 5) coordinates for the 9-point / 9-line Perles
configuration whose incidences are the zero set of the A0 fixture.

Homogeneous coordinates throughout. Four points (p1, p2, p7, p3) form a
projective basis; the remaining points and lines follow by joins and
meets, and the single closure condition (p8 on l8) is a quadratic with
discriminant 5. A rational projective map then moves everything into
the affine chart with no vertical line, and the result is printed in the
exactnum textual syntax for embedding in the fixtures module.

Usage: python3 scripts/derive_perles.py
"""
import itertools
import sympy as sp

A0 = [
    "000----++",
    "0--00++--",
    "++++000++",
    "++0++++00",
    "0----0-+0",
    "0----+00-",
    "++00-0-++",
    "+0-+0++0-",
    "+0-0-+0+0",
]

INC = {j: {i for i in range(9) if A0[i][j] == "0"} for j in range(9)}

t = sp.symbols("t")


def join(a, b):
    return sp.Matrix(a).cross(sp.Matrix(b))


meet = join

P = {}
L = {}
P[1] = sp.Matrix([0, 0, 1])
P[2] = sp.Matrix([1, 0, 1])
P[7] = sp.Matrix([0, 1, 1])
P[3] = sp.Matrix([1, 1, 1])
L[1] = join(P[1], P[2])
L[3] = join(P[1], P[7])
L[4] = join(P[2], P[7])
L[5] = join(P[2], P[3])
L[6] = join(P[3], P[7])
P[5] = meet(L[1], L[6])
# p9 moves along l4 = p2 p7
P[9] = P[2] + t * (P[7] - P[2])
L[2] = join(P[1], P[9])
L[7] = join(P[3], P[9])
L[9] = join(P[5], P[9])
P[8] = meet(L[2], L[5])
P[6] = meet(L[1], L[7])
P[4] = meet(L[3], L[9])
L[8] = join(P[4], P[6])
closure = sp.factor(sp.simplify((L[8].T * P[8])[0]))
print("closure:", closure)
roots = [r for r in sp.solve(closure, t) if r.is_real and not r.is_rational]
print("roots:", roots)


def dehom_point(p):
    return [sp.nsimplify(sp.radsimp(p[0] / p[2])), sp.nsimplify(sp.radsimp(p[1] / p[2]))]


def sgn(x):
    x = sp.nsimplify(sp.radsimp(x))
    if x == 0:
        return 0
    return 1 if x.evalf(60) > 0 else -1


def candidate(root, M):
    pts = {k: M * v.subs(t, root) for k, v in P.items()}
    Minv_t = M.inv().T
    lns = {k: Minv_t * v.subs(t, root) for k, v in L.items()}
    for v in pts.values():
        if sp.radsimp(v[2]) == 0:
            return None
    for v in lns.values():
        if sp.radsimp(v[1]) == 0:
            return None
    points = []
    for k in range(1, 10):
        v = pts[k]
        points.append([sp.radsimp(v[0] / v[2]), sp.radsimp(v[1] / v[2])])
    lines = []
    for k in range(1, 10):
        a, b, c = lns[k]
        # a x + b y + c = 0  ->  (c/b) + (a/b) x + y
        lines.append([sp.radsimp(c / b), sp.radsimp(a / b), sp.Integer(1)])
    pattern = []
    for p in points:
        row = ""
        for l in lines:
            s = sgn(l[0] + l[1] * p[0] + l[2] * p[1])
            row += {1: "+", 0: "0", -1: "-"}[s]
        pattern.append(row)
    return points, lines, pattern


def fmt(x):
    x = sp.radsimp(sp.expand(x))
    r, s = sp.Rational(0), sp.Rational(0)
    for term in sp.Add.make_args(x):
        c, rest = term.as_coeff_Mul()
        if rest == 1:
            r += c
        elif rest == sp.sqrt(5):
            s += c
        else:
            raise ValueError(term)
    if s == 0:
        return f'"{r}"'
    return f'{{"r":"{r}","s":"{s}"}}'


def signature_match(pattern):
    # try to hit A0 entry-for-entry using row and column sign flips only
    rows = [[{"+": 1, "0": 0, "-": -1}[c] for c in r] for r in pattern]
    target = [[{"+": 1, "0": 0, "-": -1}[c] for c in r] for r in A0]
    col = []
    for j in range(9):
        col.append(next(rows[i][j] * target[i][j] for i in range(9) if target[i][j] != 0))
    flips = []
    for i in range(9):
        s = {rows[i][j] * target[i][j] * col[j] for j in range(9) if target[i][j] != 0}
        if len(s) != 1:
            return None
        flips.append(s.pop())
    return flips, col



def relabeling(pattern):
    """Point/line relabeling (incidence automorphism) under which the
    pattern agrees with A0 up to row and column sign flips."""
    lines0 = [frozenset(INC[j]) for j in range(9)]
    rows = [[{"+": 1, "0": 0, "-": -1}[c] for c in r] for r in pattern]
    for perm in itertools.permutations(range(9)):
        lm = []
        for j in range(9):
            img = frozenset(perm[i] for i in lines0[j])
            k = [k for k in range(9) if lines0[k] == img]
            if not k:
                break
            lm.append(k[0])
        if len(lm) < 9:
            continue
        relabeled = ["".join(pattern[perm[i]][lm[j]] for j in range(9)) for i in range(9)]
        if signature_match(relabeled):
            return perm, lm
    return None


def float_pattern(points, lines, M):
    """Sign pattern after the projective map M, or None if some point
    leaves the affine chart or some line turns vertical."""
    import numpy as np

    U = np.array([[1.0, float(p[0]), float(p[1])] for p in points])
    V = np.array([[float(l[1]), float(l[0]), 1.0] for l in lines]).T  # rows: x, const, y
    # homogeneous point (x, y, 1) and line a x + b y + c
    Ph = np.array([[float(p[0]), float(p[1]), 1.0] for p in points]).T
    Lh = np.array([[float(l[1]), 1.0, float(l[0])] for l in lines]).T
    Pm = M @ Ph
    Lm = np.linalg.inv(M).T @ Lh
    if np.min(np.abs(Pm[2])) < 1e-6 or np.min(np.abs(Lm[1])) < 1e-6:
        return None
    vals = (Pm / Pm[2]).T @ (Lm / Lm[1])
    if np.min(np.abs(vals[np.abs(vals) > 1e-9])) < 1e-6:
        return None
    return ["".join("0" if abs(x) < 1e-9 else ("+" if x > 0 else "-") for x in row) for row in vals]


root = [r for r in roots if sp.N(r) > 0][0]
res = candidate(root, sp.Matrix([[3, 1, 0], [1, 4, 0], [1, 1, 5]]))
points, lines, pattern = res
perm, lm = relabeling(pattern)
points = [points[perm[i]] for i in range(9)]
lines = [lines[lm[j]] for j in range(9)]

import random

random.seed(7)
best = None
for trial in range(200000):
    M = sp.Matrix(3, 3, [random.randint(-6, 6) for _ in range(9)])
    if M.det() == 0:
        continue
    import numpy as np

    pat = float_pattern(points, lines, np.array(M.tolist(), dtype=float))
    if pat == A0:
        best = M
        break
print("chart for exact equality:", best)
if best is not None:
    # exact re-derivation under the chosen chart
    Ph = {k + 1: sp.Matrix([points[k][0], points[k][1], 1]) for k in range(9)}
    Lh = {k + 1: sp.Matrix([lines[k][1], 1, lines[k][0]]) for k in range(9)}
    pts = [best * Ph[k] for k in range(1, 10)]
    lns = [best.inv().T * Lh[k] for k in range(1, 10)]
    points = [[sp.radsimp(v[0] / v[2]), sp.radsimp(v[1] / v[2])] for v in pts]
    lines = [[sp.radsimp(v[2] / v[1]), sp.radsimp(v[0] / v[1]), sp.Integer(1)] for v in lns]
pattern = []
for p in points:
    row = ""
    for l in lines:
        row += {1: "+", 0: "0", -1: "-"}[sgn(l[0] + l[1] * p[0] + l[2] * p[1])]
    pattern.append(row)
print("exact pattern equals A0:", pattern == A0)
for r in pattern:
    print("   ", r)
print("points:")
for p in points:
    print("  [", ", ".join(fmt(c) for c in p), "],")
print("hyperplanes:")
for l in lines:
    print("  [", ", ".join(fmt(c) for c in l), "],")
