"""q-integers and symmetric q-numbers."""
import math

Q_ONE_TOL = 1e-14


def qint(n: int, q: float) -> float:
    """⟨n⟩_q = 1 + q² + ... + q^{2(n-1)}; zero for n <= 0."""
    if n <= 0:
        return 0.0
    q2 = q * q
    return math.fsum(q2 ** i for i in range(n))


def qnum(a: float, q: float) -> float:
    """[a]_q = (q^a - q^{-a}) / (q - q^{-1}), equal to a at q = 1."""
    if abs(q - 1.0) < Q_ONE_TOL:
        return float(a)
    h = math.log(q)
    return math.sinh(a * h) / math.sinh(h)


def mu(q: float) -> float:
    """[1/2]_q = 1 / (q^{1/2} + q^{-1/2})."""
    return 1.0 / (math.sqrt(q) + 1.0 / math.sqrt(q))
