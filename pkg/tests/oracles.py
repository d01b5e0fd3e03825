"""Independent reference computations used by the tests.

Everything here works on plain nested lists with explicit loops and does not
touch the numpy property checker or the pruned search.
"""

import itertools


def table_of(sys):
    return sys.table.tolist()


def c_axioms_hold(t, n, zero=0, one=1):
    r = range(n)
    for a in r:
        if t[zero][a][one] != a:
            return False
        for b in r:
            if t[a][b][a] != a or t[a][zero][b] != a or t[b][one][a] != a:
                return False
    for a, b1, b2, b3, c in itertools.product(r, repeat=5):
        if t[a][t[b1][b2][b3]][c] != t[t[a][b1][c]][b2][t[a][b3][c]]:
            return False
    return True


def comm_meet(t, n, zero=0):
    return all(t[zero][a][b] == t[zero][b][a] for a in range(n) for b in range(n))


def cond_iii(t, n, zero=0):
    return all(t[a][a][b] == t[zero][a][b] for a in range(n) for b in range(n))


def brute_force_n2():
    """All 256 tables on {0,1} satisfying C1-C4, as flattened tuples."""
    out = []
    for flat in itertools.product(range(2), repeat=8):
        t = [[[flat[a * 4 + b * 2 + c] for c in range(2)] for b in range(2)] for a in range(2)]
        if c_axioms_hold(t, 2):
            out.append(flat)
    return out


def forced_cell(a, b, c, zero=0, one=1):
    """Value a cell must take by C1, C2 or C4 alone, or None."""
    if b == zero:
        return a
    if b == one:
        return c
    if a == c:
        return a
    if a == zero and c == one:
        return b
    return None


def naive_n3(filters):
    """Enumerate every completion of the unforced cells at n=3, keep those passing all filters."""
    n = 3
    cells = list(itertools.product(range(n), repeat=3))
    free = [x for x in cells if forced_cell(*x) is None]
    assert len(free) == 5
    out = []
    for values in itertools.product(range(n), repeat=len(free)):
        t = [[[forced_cell(a, b, c) for c in range(n)] for b in range(n)] for a in range(n)]
        for (a, b, c), v in zip(free, values):
            t[a][b][c] = v
        if c_axioms_hold(t, n) and all(f(t, n) for f in filters):
            out.append(tuple(t[a][b][c] for a, b, c in cells))
    return sorted(out)


def is_boolean_algebra(meet, join, neg, n, bottom, top):
    r = range(n)
    for a in r:
        if meet[a][bottom] != bottom or join[a][top] != top or meet[a][top] != a or join[a][bottom] != a:
            return False
        if meet[a][neg[a]] != bottom or join[a][neg[a]] != top:
            return False
        for b in r:
            if meet[a][b] != meet[b][a] or join[a][b] != join[b][a]:
                return False
            if meet[a][join[a][b]] != a or join[a][meet[a][b]] != a:
                return False
            for c in r:
                if meet[meet[a][b]][c] != meet[a][meet[b][c]]:
                    return False
                if join[join[a][b]][c] != join[a][join[b][c]]:
                    return False
                if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]]:
                    return False
                if join[a][meet[b][c]] != meet[join[a][b]][join[a][c]]:
                    return False
    return True


def _lattice_op_candidates(n, absorbing, identity):
    """Commutative idempotent associative tables with the given absorbing and identity elements."""
    inner = [x for x in range(n) if x not in (absorbing, identity)]
    pairs = [(a, b) for i, a in enumerate(inner) for b in inner[i:]]
    for values in itertools.product(range(n), repeat=len(pairs)):
        op = [[None] * n for _ in range(n)]
        for a in range(n):
            op[a][absorbing] = op[absorbing][a] = absorbing
            op[a][identity] = op[identity][a] = a
        for (a, b), v in zip(pairs, values):
            op[a][b] = op[b][a] = v
        if all(op[a][a] == a for a in range(n)) and all(
                op[op[a][b]][c] == op[a][op[b][c]] for a, b, c in itertools.product(range(n), repeat=3)):
            yield op


def labelled_boolean_algebras(n, bottom=0, top=1):
    """Every (meet, join, neg) on {0..n-1} with fixed bottom/top that is a Boolean algebra.

    Meet and join candidates are restricted only by laws each one must satisfy on
    its own; the full law check runs on every combination.
    """
    meets = list(_lattice_op_candidates(n, bottom, top))
    joins = list(_lattice_op_candidates(n, top, bottom))
    out = []
    for meet in meets:
        for join in joins:
            for neg in itertools.product(range(n), repeat=n):
                if is_boolean_algebra(meet, join, neg, n, bottom, top):
                    out.append((meet, join, list(neg)))
    return out


def ite_table(meet, join, neg, n):
    return tuple(join[meet[neg[b]][a]][meet[b][c]]
                 for a in range(n) for b in range(n) for c in range(n))


def first_failure(n, arity, pred):
    """Lexicographically first tuple where pred fails, or None."""
    for args in itertools.product(range(n), repeat=arity):
        if not pred(*args):
            return args
    return None
