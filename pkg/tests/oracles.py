"""Independent brute-force oracles used to freeze expected values.

Everything here works on raw bracket trees (a tree is a generator name or a
pair of trees) and compares elements through a naive, unmemoized expansion
into the tensor algebra, with dense rational Gaussian elimination.  None of
the package's canonicalisation, caching or sparse elimination code is used,
so agreement is a genuine cross-check.
"""
from __future__ import annotations

from fractions import Fraction


# -- trees -----------------------------------------------------------------


def tree_degree(tree, degrees):
    if isinstance(tree, str):
        return degrees[tree]
    return tree_degree(tree[0], degrees) + tree_degree(tree[1], degrees)


def expand(tree, degrees):
    """Naive tensor expansion of a bracket tree: word tuple -> coefficient."""
    if isinstance(tree, str):
        return {(tree,): Fraction(1)}
    a = expand(tree[0], degrees)
    b = expand(tree[1], degrees)
    sign = (-1) ** (tree_degree(tree[0], degrees) * tree_degree(tree[1], degrees))
    out = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            out[wa + wb] = out.get(wa + wb, Fraction(0)) + ca * cb
            out[wb + wa] = out.get(wb + wa, Fraction(0)) - sign * ca * cb
    return {k: v for k, v in out.items() if v}


def combo_expand(combo, degrees):
    """Expansion of a dict tree -> coefficient."""
    out = {}
    for tree, c in combo.items():
        for w, v in expand(tree, degrees).items():
            out[w] = out.get(w, Fraction(0)) + c * v
    return {k: v for k, v in out.items() if v}


def left_normed(names):
    tree = names[0]
    for n in names[1:]:
        tree = (tree, n)
    return tree


def all_words(degrees, n):
    """All generator words of total degree n (tuples of names)."""
    names = list(degrees)
    out = []

    def rec(prefix, rem):
        for name in names:
            d = degrees[name]
            if d < rem:
                rec(prefix + (name,), rem - d)
            elif d == rem:
                out.append(prefix + (name,))

    rec((), n)
    out.sort(key=lambda w: (len(w), w))
    return out


# -- dense rational linear algebra -------------------------------------------


def dense_rank(rows):
    rows = [list(map(Fraction, r)) for r in rows if any(r)]
    rank = 0
    ncols = max((len(r) for r in rows), default=0)
    for col in range(ncols):
        piv = None
        for i in range(rank, len(rows)):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col] / prow[col]
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        rank += 1
    return rank


def _tensor_matrix(vectors):
    """Dense matrix from a list of tensor dicts, with a fixed word order."""
    words = sorted({w for vec in vectors for w in vec})
    index = {w: i for i, w in enumerate(words)}
    rows = []
    for vec in vectors:
        row = [Fraction(0)] * len(words)
        for w, c in vec.items():
            row[index[w]] = c
        rows.append(row)
    return rows, index


def lie_basis(degrees, n):
    """Pivot left-normed words spanning the free Lie algebra in degree n."""
    basis = []
    expansions = []
    for word in all_words(degrees, n):
        e = expand(left_normed(word), degrees)
        if not e:
            continue
        rows, _ = _tensor_matrix(expansions + [e])
        if dense_rank(rows) > len(basis):
            basis.append(word)
            expansions.append(e)
    return basis, expansions


def lie_dim(degrees, n):
    return len(lie_basis(degrees, n)[0])


# -- differentials and homology ------------------------------------------------


def tensor_d(vec, degrees, diff_trees):
    """Differential on the tensor algebra induced by generator values.

    diff_trees: name -> dict tree->coeff (the value of d on that generator).
    """
    out = {}
    for word, c in vec.items():
        for i, letter in enumerate(word):
            dval = diff_trees.get(letter)
            if not dval:
                continue
            sign = (-1) ** sum(degrees[l] for l in word[:i])
            for tree, cc in dval.items():
                for tw, v in expand(tree, degrees).items():
                    key = word[:i] + tw + word[i + 1 :]
                    out[key] = out.get(key, Fraction(0)) + sign * c * cc * v
    return {k: v for k, v in out.items() if v}


def homology_dim(degrees, diff_trees, n):
    """dim H_n of the free DGL with the given generator differentials."""
    _, exp_n = lie_basis(degrees, n)
    _, exp_n1 = lie_basis(degrees, n + 1)
    images_n1 = [tensor_d(e, degrees, diff_trees) for e in exp_n1]
    images_n = [tensor_d(e, degrees, diff_trees) for e in exp_n]
    # cycles in degree n
    if exp_n:
        rows, _ = _tensor_matrix(images_n)
        rank_d_n = dense_rank(rows)
    else:
        rank_d_n = 0
    cycle_dim = len(exp_n) - rank_d_n
    if images_n1:
        rows, _ = _tensor_matrix([v for v in images_n1 if v])
        boundary_dim = dense_rank(rows)
    else:
        boundary_dim = 0
    return cycle_dim - boundary_dim
