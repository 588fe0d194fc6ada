"""q-numbers, q-binomials and q-dimensions in log-magnitude form."""
import math
from dataclasses import dataclass

import numpy as np

from ._backend import log_qint

_PRECISION = {"mode": "double"}


def set_precision(mode):
    """'double' (default) or 'extended' (numpy longdouble on decode)."""
    if mode not in ("double", "extended"):
        raise ValueError(f"unknown precision mode {mode!r}")
    _PRECISION["mode"] = mode


def get_precision():
    return _PRECISION["mode"]


@dataclass(frozen=True)
class QParam:
    q: float

    def __post_init__(self):
        q = float(self.q)
        if not 0.0 < q < 1.0:
            raise ValueError(f"q must lie in (0, 1), got {q}")
        object.__setattr__(self, "q", q)

    @property
    def logq(self):
        return math.log(self.q)


def as_qparam(q):
    return q if isinstance(q, QParam) else QParam(q)


@dataclass(frozen=True)
class Scalar:
    """A real number stored as sign and log|x|."""
    sign: int
    log: float

    @classmethod
    def encode(cls, x):
        if x == 0:
            return cls(0, -math.inf)
        if isinstance(x, np.floating):
            return cls(1 if x > 0 else -1, float(np.log(np.abs(x))))
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    @classmethod
    def one(cls):
        return cls(1, 0.0)

    def decode(self):
        if self.sign == 0:
            return 0.0
        if _PRECISION["mode"] == "extended":
            return self.sign * np.exp(np.longdouble(self.log))
        return self.sign * math.exp(self.log)

    @property
    def value(self):
        return self.decode()

    def __float__(self):
        return float(self.decode())

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            other = Scalar.encode(other)
        if self.sign == 0 or other.sign == 0:
            return Scalar(0, -math.inf)
        return Scalar(self.sign * other.sign, self.log + other.log)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            other = Scalar.encode(other)
        if other.sign == 0:
            raise ZeroDivisionError("Scalar division by zero")
        if self.sign == 0:
            return self
        return Scalar(self.sign * other.sign, self.log - other.log)

    def __pow__(self, p):
        if self.sign < 0 and p != int(p):
            raise ValueError("fractional power of a negative Scalar")
        if self.sign == 0:
            return self
        s = self.sign if int(p) % 2 else 1
        return Scalar(s, self.log * p)

    def sqrt(self):
        return self ** 0.5

    def __neg__(self):
        return Scalar(-self.sign, self.log)


def scalar_sum(values):
    """Sum of Scalars, done in linear scale after factoring out the largest exponent."""
    values = [v for v in values if v.sign != 0]
    if not values:
        return Scalar(0, -math.inf)
    top = max(v.log for v in values)
    tot = math.fsum(v.sign * math.exp(v.log - top) for v in values)
    if tot == 0:
        return Scalar(0, -math.inf)
    return Scalar(1 if tot > 0 else -1, math.log(abs(tot)) + top)


def q_power(e, q):
    q = as_qparam(q)
    return Scalar(1, e * q.logq)


def q_int(n, q):
    """[n]_q = (q^n - q^{-n}) / (q - q^{-1})."""
    q = as_qparam(q)
    s, v = log_qint(int(n), q.logq)
    return Scalar(s, v)


def q_binom(n, r, q):
    """Gaussian binomial as the product of [n-k]/[k+1] for k < r."""
    if not 0 <= r <= n:
        raise ValueError(f"q_binom needs 0 <= r <= n, got n={n}, r={r}")
    out = Scalar.one()
    for k in range(r):
        out = out * q_int(n - k, q) / q_int(k + 1, q)
    return out


def weyl_q_dimension(lam, q):
    """Product over i < j of [lam_i - lam_j + j - i] / [j - i]."""
    lam = tuple(lam)
    out = Scalar.one()
    for i in range(len(lam)):
        for j in range(i + 1, len(lam)):
            out = out * q_int(lam[i] - lam[j] + j - i, q) / q_int(j - i, q)
    return out


def weyl_dimension(lam):
    """Classical dimension, exact integer."""
    lam = tuple(lam)
    num = den = 1
    for i in range(len(lam)):
        for j in range(i + 1, len(lam)):
            num *= lam[i] - lam[j] + j - i
            den *= j - i
    return num // den
