"""Independent slow enumerators used to cross-check the library."""
import itertools

import numpy as np
import sympy


def chain_gram(p):
    n = p - 1
    g = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        g[i, i] = -(p + 2) if i == 0 else -2
        if i + 1 < n:
            g[i, i + 1] = g[i + 1, i] = 1
    return g


def brute_allowed_restrictions(p, radius=None):
    """Characteristic v in the box |v_i| <= radius with v^T G^-1 v = -(p - 1)."""
    g = chain_gram(p)
    n = p - 1
    radius = p + 3 if radius is None else radius
    m = sympy.Matrix(g.tolist())
    det = int(m.det())
    adj = np.array(m.adjugate().tolist(), dtype=np.int64)
    diag = np.diag(g) % 2
    axis = np.arange(-radius, radius + 1, dtype=np.int64)
    head = min(n, 2)
    tail = n - head
    if tail:
        rest = np.array(np.meshgrid(*[axis] * tail, indexing="ij")).reshape(tail, -1).T
    else:
        rest = np.zeros((1, 0), dtype=np.int64)
    found = []
    for lead in itertools.product(axis, repeat=head):
        v = np.hstack([np.tile(np.array(lead, dtype=np.int64), (len(rest), 1)), rest])
        ok = np.all((v - diag) % 2 == 0, axis=1)
        v = v[ok]
        # v^T adj v = det * v^T G^-1 v
        q = np.einsum("ij,jk,ik->i", v, adj, v)
        v = v[q == -(p - 1) * det]
        found.extend(tuple(int(x) for x in row) for row in v)
    return sorted(found)


def naive_candidates(gram, genera, floor, sphere_bound=0):
    """Full Cartesian product over every constraint, no pruning.

    ``gram`` is the Gram matrix of all constraint classes (possibly singular).
    Keeps the pairing vectors realised by one rational class whose square is
    an integer q >= floor with q = floor mod 8.
    """
    g = sympy.Matrix(gram)
    n = g.shape[0]
    basis = []
    for i in range(n):
        if g.extract(basis + [i], basis + [i]).det() != 0:
            basis.append(i)
    sub = g.extract(basis, basis)
    det = int(sub.det())
    adj = np.array(sub.adjugate().tolist(), dtype=np.int64)
    cols = np.array(g.extract(list(range(n)), basis).tolist(), dtype=np.int64)
    ranges = []
    for i, genus in enumerate(genera):
        bound = 2 * genus - 2 if genus >= 1 else sphere_bound
        s = int(g[i, i])
        ranges.append(np.array([x for x in range(s - bound, bound - s + 1) if (x - s) % 2 == 0], dtype=np.int64))
    v = np.array(np.meshgrid(*ranges, indexing="ij")).reshape(n, -1).T
    c = v[:, basis] @ adj.T  # det * coordinates
    consistent = np.all(c @ cols.T == det * v, axis=1)
    qd = np.einsum("ij,ij->i", v[:, basis], c)
    integral = qd % det == 0
    q = qd // det
    keep = consistent & integral & (q >= floor) & ((q - floor) % 8 == 0)
    return sorted(tuple(int(x) for x in row) for row in v[keep])
