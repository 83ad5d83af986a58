"""Independent reference implementations used only by the tests."""

from itertools import product


def pascal(n):
    """Binomial table rows 0..n by Pascal's rule."""
    rows = [[1]]
    for a in range(1, n + 1):
        prev = rows[-1]
        rows.append([1] + [prev[b - 1] + prev[b] for b in range(1, a)] + [1])
    return rows


def brute_h(m, n, p):
    """h(m, n) by unrolling h(m, n) = h(m, n-1) - h(m+1, n-1) from h(k, 0) = p_k."""
    if n == 0:
        return p[m]
    return brute_h(m, n - 1, p) - brute_h(m + 1, n - 1, p)


def box_vectors(t):
    table = pascal(t)[t]
    return product(*[range(c + 1) for c in table])


def brute_level(p, t):
    """Lexicographically least nonzero w with zero sum at level t, or None."""
    H = [brute_h(j, t - j, p) for j in range(t + 1)]
    for w in box_vectors(t):
        if any(w) and sum(a * b for a, b in zip(w, H)) == 0:
            return w
    return None


def naive_member(u, point):
    """Membership by scanning cylinders one constraint at a time."""
    for cyl in u.cylinders():
        if all(point[c] == 0 for c in cyl.zeros) and all(point[c] == 1 for c in cyl.ones):
            return True
    return False
