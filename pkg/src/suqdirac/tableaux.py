"""Gelfand-Tsetlin tableaux, difference coordinates, moves and sweep paths.

A tableau is a tuple of rows, row a (0-based) holding ell+1-a ints.
Canonical tableaux have r[0][-1] == 0.
"""
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .qarith import weyl_dimension


# ---------------------------------------------------------------- diagrams

def is_young(lam):
    lam = tuple(lam)
    return len(lam) >= 2 and all(x >= 0 for x in lam) and all(
        lam[i] >= lam[i + 1] for i in range(len(lam) - 1))


def canonical_young(lam):
    lam = tuple(lam)
    return tuple(x - lam[-1] for x in lam)


def young_diagrams(ell, top):
    """Canonical diagrams (lam_{ell+1} = 0) with lam_1 <= top, lexicographic."""
    for mid in itertools.product(range(top + 1), repeat=ell):
        lam = mid + (0,)
        if all(lam[i] >= lam[i + 1] for i in range(ell)):
            yield lam


def dimension(lam):
    return weyl_dimension(lam)


# ---------------------------------------------------------------- tableaux

def rank(r):
    return len(r) - 1


def zero_tableau(ell):
    return tuple((0,) * (ell + 1 - a) for a in range(ell + 1))


def is_valid(r):
    for a in range(len(r) - 1):
        up, lo = r[a], r[a + 1]
        if len(lo) != len(up) - 1:
            return False
        for b in range(len(lo)):
            if not up[b] >= lo[b] >= up[b + 1]:
                return False
    return True


def canonicalize(r):
    c = r[0][-1]
    if c == 0:
        return r
    return tuple(tuple(x - c for x in row) for row in r)


def enumerate_tableaux(lam):
    """All tableaux with top row lam, lexicographic in concatenated rows."""
    lam = tuple(lam)
    if not is_young(lam):
        raise ValueError(f"not a Young diagram: {lam}")
    out = []

    def rec(rows):
        prev = rows[-1]
        if len(prev) == 1:
            out.append(tuple(rows))
            return
        ranges = [range(prev[j + 1], prev[j] + 1) for j in range(len(prev) - 1)]
        for nxt in itertools.product(*ranges):
            rec(rows + [nxt])

    rec([lam])
    return out


def level(r):
    """Canonical r_11."""
    return r[0][0] - r[0][-1]


def to_text(r):
    return "[" + ",".join("[" + ",".join(str(x) for x in row) + "]" for row in r) + "]"


def from_text(s):
    import json
    r = tuple(tuple(int(x) for x in row) for row in json.loads(s))
    if not is_valid(r):
        raise ValueError(f"not a valid GT tableau: {s}")
    return r


# ---------------------------------------------------------------- coordinates

@dataclass(frozen=True)
class DiffCoords:
    V: tuple          # V[a-1] = V_{a1}, a = 1..ell
    H: tuple          # H[a-1][b-1] = H_{ab}, b = 1..ell+1-a

    @property
    def ell(self):
        return len(self.V)

    def flat(self):
        return tuple(self.V) + tuple(x for row in self.H for x in row)


def coords(r):
    ell = rank(r)
    V = tuple(r[a][0] - r[a + 1][0] for a in range(ell))
    H = tuple(tuple(r[a + 1][b] - r[a][b + 1] for b in range(ell - a)) for a in range(ell))
    return DiffCoords(V, H)


def _H(d, a, b):
    if 1 <= a <= d.ell and 1 <= b <= d.ell + 1 - a:
        return d.H[a - 1][b - 1]
    return 0


def satisfies_ineq(d):
    """Nonnegativity plus the interlacing inequalities written in (V, H).

    The inequality for (a, b) says V_{a-b,b+2} >= 0, so only a <= ell-1
    refers to entries of the tableau.
    """
    if any(x < 0 for x in d.flat()):
        return False
    ell = d.ell
    for a in range(1, ell):
        va1 = d.V[a]
        for b in range(a):
            lhs = sum(_H(d, a - k, k + 1) for k in range(b + 1))
            rhs = va1 + sum(_H(d, a - k + 1, k + 1) for k in range(b + 1))
            if lhs > rhs:
                return False
    return True


def from_coords(d):
    """Canonical tableau with the given coordinates; ValueError if invalid."""
    ell = d.ell
    if len(d.H) != ell or any(len(d.H[a]) != ell - a for a in range(ell)):
        raise ValueError("coordinate shape does not match rank")
    if any(x < 0 for x in d.flat()):
        raise ValueError("coordinates must be nonnegative")
    r = [[None] * (ell + 1 - a) for a in range(ell + 1)]
    r[0][ell] = 0
    for a in range(ell):                          # last entries of each row
        r[a + 1][ell - a - 1] = r[a][ell - a] + d.H[a][ell - a - 1]
    for s in range(ell + 1, 1, -1):               # anti-diagonals a + b = s (1-based)
        r[s - 2][0] = r[s - 1][0] + d.V[s - 2]
        for a in range(s - 2, 0, -1):             # walk up: r_{a,b+1} = r_{a+1,b} - H_{ab}
            b = s - a - 1
            r[a - 1][b] = r[a][b - 1] - d.H[a - 1][b - 1]
    t = tuple(tuple(row) for row in r)
    if not is_valid(t):
        raise ValueError(f"coordinates violate the interlacing inequalities: {d}")
    return t


def psi(r):
    ell = rank(r)
    return Fraction(-ell * sum(r[0]), 2) + sum(sum(row) for row in r[1:])


# ---------------------------------------------------------------- moves

def move_M(i, k):
    """M_ik = (i, i-1, ..., i-k+1)."""
    if not 1 <= k <= i:
        raise ValueError(f"M_ik needs 1 <= k <= i, got i={i}, k={k}")
    return tuple(range(i, i - k, -1))


def move_N(i, k, ell):
    """N_ik = (i+1) repeated k times then i, total length ell+2-i."""
    n = ell + 2 - i
    if not (1 <= i <= ell + 1 and 0 <= k < n):
        raise ValueError(f"N_ik out of range: i={i}, k={k}, ell={ell}")
    return (i + 1,) * k + (i,) * (n - k)


def moves(i, ell):
    """All moves of length i."""
    return itertools.product(*[range(1, ell + 3 - j) for j in range(1, i + 1)])


def is_move(M, ell):
    return 1 <= len(M) <= ell + 1 and all(1 <= m <= ell + 2 - j for j, m in enumerate(M, 1))


def raw_apply(M, r):
    """Add 1 at (j, m_j), no validation or canonicalization."""
    rows = [list(x) for x in r]
    for j, m in enumerate(M):
        rows[j][m - 1] += 1
    return tuple(tuple(x) for x in rows)


def apply_move(M, r):
    """Canonical M(r), or None when the result does not interlace."""
    if not is_move(M, rank(r)):
        raise ValueError(f"{M} is not a move for rank {rank(r)}")
    s = raw_apply(M, r)
    if not is_valid(s):
        return None
    return canonicalize(s)


# ---------------------------------------------------------------- planes

def plane_key(r):
    d = coords(r)
    ell = d.ell
    cols = []
    for b in range(1, ell + 1):
        col = [d.H[a - 1][b - 1] for a in range(1, ell + 2 - b)]
        m = min(col)
        cols.append(tuple(x - m for x in col))
    return d.V, tuple(cols)


def same_free_plane(r, s):
    dr, ds = coords(r), coords(s)
    if dr.V != ds.V:
        return False
    ell = dr.ell
    for b in range(1, ell + 1):
        diffs = {dr.H[a - 1][b - 1] - ds.H[a - 1][b - 1] for a in range(1, ell + 2 - b)}
        if len(diffs) > 1:
            return False
    return True


def column_minima(r):
    d = coords(r)
    ell = d.ell
    return tuple(min(d.H[a - 1][b - 1] for a in range(1, ell + 2 - b)) for b in range(1, ell + 1))


def on_complementary_axis(r):
    return all(m == 0 for m in column_minima(r))


class Path(list):
    """List of tableaux; .moves[t] takes path[t] to path[t+1]."""

    def __init__(self, items=(), moves=()):
        super().__init__(items)
        self.moves = list(moves)

    @property
    def length(self):
        return len(self) - 1


def _walk(path, M, times):
    for _ in range(times):
        nxt = apply_move(M, path[-1])
        if nxt is None:
            raise RuntimeError(f"move {M} left the tableau set at {path[-1]}")
        path.append(nxt)
        path.moves.append(M)
    return path


def sweep_to_axis(r):
    """N_{b+1,0} sweeps pushing every H-column minimum to 0."""
    ell = rank(r)
    h = column_minima(r)
    path = Path([r])
    acc = 0
    for b in range(1, ell + 1):
        acc += h[b - 1]
        _walk(path, move_N(b + 1, 0, ell), acc)
    return path


def clear_rows(r):
    """First stage: zero every H_{ab} with M_{b+a,a} moves, row by row."""
    ell = rank(r)
    path = Path([r])
    for a in range(1, ell + 1):
        for b in range(ell + 1 - a, 0, -1):
            _walk(path, move_M(b + a, a), coords(path[-1]).H[a - 1][b - 1])
    return path


def sweep_to_v11(r):
    """Path to the tableau with the same V_11 and every other coordinate 0."""
    ell = rank(r)
    path = clear_rows(r)
    V = coords(path[-1]).V
    acc = 0
    for c in range(2, ell + 1):
        acc += V[c - 1]
        _walk(path, move_M(c + 1, c + 1), acc)
    return path


def path_to_zero(r):
    """Row clearing followed by (V_11 + ... + V_c1) M_{c+1,c+1} for c = 1..ell."""
    ell = rank(r)
    path = clear_rows(r)
    V = coords(path[-1]).V
    acc = 0
    for c in range(1, ell + 1):
        acc += V[c - 1]
        _walk(path, move_M(c + 1, c + 1), acc)
    return path


# ---------------------------------------------------------------- sphere

def sphere_top(n, k, ell):
    return (n + k,) + (k,) * (ell - 1) + (0,)


def sphere_tableau(n, k, ell):
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    top = sphere_top(n, k, ell)
    return (top,) + tuple((k,) * (ell + 1 - a) for a in range(1, ell + 1))


def sphere_sector(n, k, ell):
    return enumerate_tableaux(sphere_top(n, k, ell))


def sphere_nk(r):
    """(n, k) for a canonical tableau of the form r^{nk}."""
    k = r[1][0]
    return r[0][0] - k, k
