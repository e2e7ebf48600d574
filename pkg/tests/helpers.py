"""Random structures and independent oracles shared by the test modules.

The oracles use sympy matrices and plain nested loops written from the
defining formulas, never the package's own tensors.
"""
from __future__ import annotations

import functools
import itertools
import random
from fractions import Fraction

import sympy as sp

from fman.algebra import AlgebraStructure
from fman.coord import PolyFManifold
from fman.poly import Poly, monomials_up_to


# -- base Lie algebras as sparse {(i, j): {k: c}} with i < j -----------------

def _heis(n):
    return {(1, 2): {0: 1}} if n >= 3 else {}


def _aff1(n):
    return {(0, 1): {1: 1}}


def _sl2(n):
    return {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}


def _so3(n):
    return {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {1: -1}}


def _r3(lam):
    return lambda n: {(0, 1): {1: 1}, (0, 2): {2: lam}}


def _filiform(n):
    return {(0, 1): {2: 1}, (0, 2): {3: 1}}


def _aff1_sq(n):
    return {(0, 1): {1: 1}, (2, 3): {3: 1}}


def _n31_2(n):
    return {(0, 2): {1: 1}}


LIE_BASES = {
    # name: (minimum dimension, builder)
    "abelian": (1, lambda n: {}),
    "heisenberg": (3, _heis),
    "n31_2": (3, _n31_2),
    "aff1": (2, _aff1),
    "sl2": (3, _sl2),
    "so3": (3, _so3),
    "r3_half": (3, _r3(Fraction(1, 2))),
    "r3_minus1": (3, _r3(-1)),
    "filiform4": (4, _filiform),
    "gl2": (4, _sl2),
    "aff1_sq": (4, _aff1_sq),
}


def sparse_to_grid(sparse, n, antisymmetric):
    g = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for (i, j), out in sparse.items():
        for k, c in out.items():
            g[i][j][k] += Fraction(c)
            if i != j:
                g[j][i][k] += -Fraction(c) if antisymmetric else Fraction(c)
    return g


# -- commutative associative products, built as direct sums of blocks --------

def _block_product(kind, m):
    """Sparse product on a block of dimension m."""
    if kind == "zero":
        return {}
    if kind == "field":  # m == 1, e o e = e
        return {(0, 0): {0: 1}}
    if kind == "truncated":  # Q[x]/(x^m), basis 1, x, ..., x^(m-1)
        return {(a, b): {a + b: 1} for a in range(m) for b in range(a, m) if a + b < m}
    if kind == "nilpotent":  # span{x, ..., x^m} with x^(m+1) = 0
        return {(a, b): {a + b + 1: 1} for a in range(m) for b in range(a, m) if a + b + 1 < m}
    raise ValueError(kind)


def random_product_sparse(rng: random.Random, n: int):
    out = {}
    pos = 0
    while pos < n:
        m = rng.randint(1, n - pos)
        kind = rng.choice(["zero", "field", "truncated", "nilpotent"] if m == 1 else ["zero", "truncated", "nilpotent"])
        for (a, b), terms in _block_product(kind, m).items():
            out[(pos + a, pos + b)] = {pos + k: c for k, c in terms.items()}
        pos += m
    return out


# -- basis changes --------------------------------------------------------------

def random_basis_change(rng: random.Random, n: int, span: int = 2, steps: int = 3):
    """Random unimodular integer matrix (a signed permutation times elementary shears),
    so transformed constants stay integral."""
    perm = list(range(n))
    rng.shuffle(perm)
    P = sp.Matrix(n, n, lambda i, j: rng.choice((-1, 1)) if perm[i] == j else 0)
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        E = sp.eye(n)
        E[i, j] = rng.randint(-span, span)
        P = P * E
    return P


def transform(grid, P):
    """Constants of the same bilinear map in the basis f_a = sum_i P[i, a] e_i."""
    n = len(grid)
    Pinv = P.inv()
    out = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for a, b in itertools.product(range(n), repeat=2):
        img = [Fraction(0)] * n  # f_a * f_b in e-coordinates
        for i, j in itertools.product(range(n), repeat=2):
            w = P[i, a] * P[j, b]
            if w:
                for k in range(n):
                    if grid[i][j][k]:
                        img[k] += Fraction(int(w)) * grid[i][j][k]
        for c in range(n):
            s = sum(Fraction(str(Pinv[c, k])) * img[k] for k in range(n) if img[k])
            out[a][b][c] = Fraction(s)
    return out


def random_lie(rng: random.Random, n: int, base=None):
    names = [k for k, (d, _) in LIE_BASES.items() if d <= n and k != "abelian"]
    if base is None:
        base = rng.choice(names) if names and rng.random() < 0.9 else "abelian"
    grid = sparse_to_grid(LIE_BASES[base][1](n), n, True)
    return base, transform(grid, random_basis_change(rng, n))


def random_comm_assoc(rng: random.Random, n: int):
    grid = sparse_to_grid(random_product_sparse(rng, n), n, False)
    return transform(grid, random_basis_change(rng, n))


def random_pair(rng: random.Random, n=None, name="random"):
    """A Lie bracket and an unrelated commutative associative product on Q^n."""
    n = n or rng.choice((1, 2, 2, 3, 3, 3, 4, 4, 4, 4))
    base, c = random_lie(rng, n)
    s = random_comm_assoc(rng, n)
    return AlgebraStructure.from_constants(f"{name}-{base}-{n}", n, c, s)


def random_constants(rng: random.Random, n: int, lo=-2, hi=2):
    """Arbitrary antisymmetric bracket and symmetric product constants, no axioms."""
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    s = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                v = rng.randint(lo, hi)
                s[i][j][k] = s[j][i][k] = Fraction(v)
                if i < j:
                    w = rng.randint(lo, hi)
                    c[i][j][k], c[j][i][k] = Fraction(w), Fraction(-w)
    return AlgebraStructure.from_constants("random-constants", n, c, s, check=False)


# -- sympy oracles for algebra-level quantities --------------------------------

def sym_ad(a: AlgebraStructure, i: int) -> sp.Matrix:
    n = a.dim
    return sp.Matrix(n, n, lambda k, j: sp.Rational(a.bracket[i][j][k]))


def sym_s(a: AlgebraStructure, i: int) -> sp.Matrix:
    n = a.dim
    return sp.Matrix(n, n, lambda k, j: sp.Rational(a.product[i][j][k]))


def sym_comb(mats, coeffs):
    out = sp.zeros(*mats[0].shape)
    for m, c in zip(mats, coeffs):
        if c:
            out += sp.Rational(c) * m
    return out


def sym_A(a: AlgebraStructure, coeffs) -> sp.Matrix:
    n = a.dim
    A = [sym_ad(a, i) / 2 + sym_s(a, i) for i in range(n)]
    return sym_comb(A, coeffs)


def sym_bracket_vec(a, i, j):
    return [a.bracket[i][j][k] for k in range(a.dim)]


def sym_curvature(a: AlgebraStructure, i: int, j: int) -> sp.Matrix:
    n = a.dim
    Ai = sym_A(a, [1 if t == i else 0 for t in range(n)])
    Aj = sym_A(a, [1 if t == j else 0 for t in range(n)])
    return Ai * Aj - Aj * Ai - sym_A(a, sym_bracket_vec(a, i, j))


def naive_leibnizator(a: AlgebraStructure):
    """Dict (i, j, k) -> coordinate list of [e_i, e_j o e_k] - [e_i, e_j] o e_k - e_j o [e_i, e_k]."""
    n = a.dim
    c, s = a.bracket, a.product

    def bil(t, u, v):
        out = [Fraction(0)] * n
        for p in range(n):
            for q in range(n):
                if u[p] and v[q]:
                    for r in range(n):
                        out[r] += u[p] * v[q] * t[p][q][r]
        return out

    def br(u, v):
        return bil(c, u, v)

    def mul(u, v):
        return bil(s, u, v)

    e = [[Fraction(int(t == i)) for t in range(n)] for i in range(n)]
    out = {}
    for i, j, k in itertools.product(range(n), repeat=3):
        t1 = br(e[i], mul(e[j], e[k]))
        t2 = mul(br(e[i], e[j]), e[k])
        t3 = mul(e[j], br(e[i], e[k]))
        out[(i, j, k)] = [x - y - z for x, y, z in zip(t1, t2, t3)]
    return out


def to_sym(m) -> sp.Matrix:
    return sp.Matrix(m.rows, m.cols, lambda i, j: sp.Rational(m.entries[i][j]))


def sym_rref_rows(rows, cols):
    """Nonzero RREF rows via sympy, as Fraction tuples."""
    if not rows:
        return ()
    R, _ = sp.Matrix(rows).rref()
    out = []
    for r in range(R.rows):
        row = tuple(Fraction(str(R[r, j])) for j in range(cols))
        if any(row):
            out.append(row)
    return tuple(out)


# -- polynomial charts ---------------------------------------------------------

def random_poly(rng: random.Random, n: int, degree: int, density: float = 0.5, lo=-2, hi=2, vars_=None) -> Poly:
    terms = {}
    for e in monomials_up_to(n, degree):
        if vars_ is not None and any(e[l] for l in range(n) if l not in vars_):
            continue
        if rng.random() < density:
            terms[e] = rng.randint(lo, hi)
    return Poly(n, terms)


def random_manifold(rng: random.Random, n: int, degree: int, vars_=None, density=0.4) -> PolyFManifold:
    comps = {}
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                comps[(i, j, k)] = random_poly(rng, n, degree, density, vars_=vars_)
    return PolyFManifold.from_components(n, comps)


def random_field(rng: random.Random, n: int, degree: int, density=0.5):
    return tuple(random_poly(rng, n, degree, density) for _ in range(n))


SYMS = sp.symbols("x1:5")


def poly_to_sym(p: Poly):
    xs = SYMS[: p.nvars]
    expr = sp.Integer(0)
    for e, c in p.terms.items():
        term = sp.Rational(c.numerator, c.denominator)
        for x, k in zip(xs, e):
            term *= x ** k
        expr += term
    return sp.expand(expr)


def sym_lie_derivative(m: PolyFManifold, x):
    """(L_X S)^k_ij from the coordinate formula, evaluated with sympy."""
    n = m.nvars
    xs = SYMS[:n]
    S = [[[poly_to_sym(m.s[i][j][k]) for k in range(n)] for j in range(n)] for i in range(n)]
    X = [poly_to_sym(p) for p in x]
    out = {}
    for i, j, k in itertools.product(range(n), repeat=3):
        acc = 0
        for l in range(n):
            acc += X[l] * sp.diff(S[i][j][k], xs[l])
            acc -= S[i][j][l] * sp.diff(X[k], xs[l])
            acc += S[l][j][k] * sp.diff(X[l], xs[i])
            acc += S[i][l][k] * sp.diff(X[l], xs[j])
        out[(i, j, k)] = sp.expand(acc)
    return out


# -- cached corpora for the property and acceptance tests ---------------------

@functools.lru_cache(maxsize=None)
def lie_ca_corpus(count: int = 200, seed: int = 20240611) -> tuple:
    """Random (Lie bracket, commutative associative product) pairs, n <= 4."""
    rng = random.Random(seed)
    return tuple(random_pair(rng, name=f"pair{t}") for t in range(count))


@functools.lru_cache(maxsize=None)
def fman_subset() -> tuple:
    """Members of the random pair corpus that also pass the Hertling-Manin check."""
    from fman.algebra import is_fman

    return tuple(a for a in lie_ca_corpus() if is_fman(a).ok)


def ex(name: str):
    """Payload of a bundled example."""
    from fman.inputs import load_example

    return load_example(name).payload
