"""Pure-Python kernels. Same signatures as the compiled ``_ckernels``.

Every value is returned as ``(sign, log|x|)``. Tableau rows are sequences
of ints, indices j, k are 1-based as in the formulas.
"""
import math

NEG_INF = float("-inf")


def log_qint(n, logq):
    """sign and log|[n]_q| for q = exp(logq)."""
    if n == 0:
        return 0, NEG_INF
    s = 1
    if n < 0:
        s, n = -1, -n
    # [n] = q^{-(n-1)} (1 - q^{2n}) / (1 - q^2)
    v = -(n - 1) * logq + math.log1p(-math.exp(2 * n * logq)) - math.log1p(-math.exp(2 * logq))
    return s, v


def link_square(ra, rb, j, k, logq):
    """Squared linking bracket for a box added at ra[j] and rb[k]."""
    sign = 1
    acc = (-ra[j - 1] + rb[k - 1] - k + j) * logq
    for i in range(1, len(ra) + 1):
        if i == j:
            continue
        s1, l1 = log_qint(ra[i - 1] - rb[k - 1] - i + k, logq)
        s2, l2 = log_qint(ra[i - 1] - ra[j - 1] - i + j, logq)
        if s2 == 0:
            raise ValueError("division by [0]_q: rows do not interlace")
        sign *= s1 * s2
        acc += l1 - l2
    for i in range(1, len(rb) + 1):
        if i == k:
            continue
        s1, l1 = log_qint(rb[i - 1] - ra[j - 1] - i + j - 1, logq)
        s2, l2 = log_qint(rb[i - 1] - rb[k - 1] - i + k - 1, logq)
        if s2 == 0:
            raise ValueError("division by [0]_q: rows do not interlace")
        sign *= s1 * s2
        acc += l1 - l2
    return (sign, acc) if sign != 0 else (0, NEG_INF)


def terminal_square(ra, rb, j, logq):
    """Squared terminal bracket, box added at ra[j] only (rb may be empty)."""
    e = 1 - j + sum(rb) - (sum(ra) - ra[j - 1])
    sign = 1
    acc = e * logq
    for i in range(1, len(rb) + 1):
        s1, l1 = log_qint(rb[i - 1] - ra[j - 1] - i + j - 1, logq)
        sign *= s1
        acc += l1
    for i in range(1, len(ra) + 1):
        if i == j:
            continue
        s2, l2 = log_qint(ra[i - 1] - ra[j - 1] - i + j, logq)
        if s2 == 0:
            raise ValueError("division by [0]_q: rows do not interlace")
        sign *= s2
        acc -= l2
    return (sign, acc) if sign != 0 else (0, NEG_INF)


def cg_log(rows, move, logq):
    """Signed log-magnitude of C_q(i, r, M(r)) with i = len(move)."""
    i = len(move)
    sign = 1
    acc = 0.0
    for a in range(1, i):
        j, k = move[a - 1], move[a]
        s, v = link_square(rows[a - 1], rows[a], j, k, logq)
        if s <= 0:
            return 0, NEG_INF
        acc += 0.5 * v
        if k < j:
            sign = -sign
    lower = rows[i] if i < len(rows) else ()
    s, v = terminal_square(rows[i - 1], lower, move[i - 1], logq)
    if s <= 0:
        return 0, NEG_INF
    return sign, acc + 0.5 * v
