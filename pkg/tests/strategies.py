"""Hypothesis strategies shared by the property tests."""
from fractions import Fraction

from hypothesis import strategies as st

from nilcx.exactlin import GaussianRational

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
small_rationals = st.builds(Fraction, st.integers(-3, 3), st.integers(1, 3))
gaussians = st.builds(GaussianRational, rationals, rationals)
scalars = st.one_of(rationals, gaussians)


def vectors(n, elems=small_rationals):
    return st.lists(elems, min_size=n, max_size=n).map(tuple)


def matrices(rows, cols, elems=small_rationals):
    return st.lists(vectors(cols, elems), min_size=rows, max_size=rows)


def structure_tensor(g):
    """Dense ``c[i][j][k]`` with ``[e_i, e_j] = sum_k c[i][j][k] e_k``."""
    n = g.dim
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for (i, j), vec in g.brackets.items():
        for k, x in enumerate(vec):
            c[i][j][k] = x
            c[j][i][k] = -x
    return c


def jacobi_oracle(g) -> bool:
    """Brute-force Jacobi check on the dense tensor."""
    n = g.dim
    c = structure_tensor(g)
    for a in range(n):
        for b in range(n):
            for d in range(n):
                for m in range(n):
                    s = 0
                    for k in range(n):
                        s += c[b][d][k] * c[a][k][m] + c[d][a][k] * c[b][k][m] + c[a][b][k] * c[d][k][m]
                    if s:
                        return False
    return True


def mutate(g, rng):
    """Random edit of one structure constant; returns ``(names, table)``."""
    n = g.dim
    table = {k: list(v) for k, v in g.brackets.items()}
    kind = rng.choice(["drop", "scale", "add", "perturb"])
    keys = sorted(table)
    if kind == "drop" and keys:
        del table[rng.choice(keys)]
    elif kind == "scale" and keys:
        key = rng.choice(keys)
        f = Fraction(rng.choice([-2, -1, 2, 3]), rng.choice([1, 2]))
        table[key] = [f * x for x in table[key]]
    elif kind == "perturb" and keys:
        key = rng.choice(keys)
        table[key][rng.randrange(n)] += Fraction(rng.choice([-1, 1]))
    else:
        i, j = sorted(rng.sample(range(n), 2))
        vec = table.setdefault((i, j), [Fraction(0)] * n)
        vec[rng.randrange(max(j, 1), n) if j < n - 1 else n - 1] += 1
    return g.basis_names, {k: tuple(v) for k, v in table.items()}
