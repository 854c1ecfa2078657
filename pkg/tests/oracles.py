"""Independent reference values built only from mpmath special functions."""

from fractions import Fraction

from mpmath import cot, csc, diff, exp, lerchphi, mp, mpc, mpf, pi, polylog


def lerch_row(k, alpha, beta):
    """sum_n e^{2 pi i n alpha}/(beta + n)^k from two one-sided Lerch series."""
    a = mpf(alpha.numerator) / alpha.denominator
    u = exp(2j * pi * a)
    return lerchphi(u, k, beta) + (-1) ** k / u * lerchphi(1 / u, k, 1 - beta)


def partial_fraction_row(k, alpha, beta):
    """Same sum for alpha in {0, 1/2} from pi cot / pi csc (symmetric for k = 1)."""
    alpha = Fraction(alpha) % 1
    if alpha == 0:
        f = lambda a: pi * cot(pi * a)
    elif alpha == Fraction(1, 2):
        f = lambda a: pi * csc(pi * a)
    else:
        raise ValueError("alpha must be 0 or 1/2")
    return (-1) ** (k - 1) / mp.factorial(k - 1) * diff(f, beta, k - 1)


def twisted_lattice_sum(k, x, y, tau, rows=None):
    """sum' e^{2 pi i (m x + n y)}/(m + n tau)^k for y in {0, 1/2}, m outer."""
    x, y = Fraction(x), Fraction(y)
    xa = mpf(x.numerator) / x.denominator
    u = exp(2j * pi * mpf(y.numerator) / y.denominator)
    # row m decays like e^{-2 pi m c Im(-1/tau)}, c = 1/2 for y = 1/2 and 1 for y = 0
    c = 1 if y % 1 == 0 else mpf(1) / 2
    rows = rows or int(mp.prec * mp.log(2) / (2 * pi * c * (-1 / mpc(tau)).imag)) + 4
    if k == 1 and y % 1 == 0:
        total = mpc(0)  # symmetric sum of 1/(n tau)
    else:
        total = (polylog(k, u) + (-1) ** k * polylog(k, 1 / u)) / tau**k
    for m in range(1, rows):
        for s in (1, -1):
            total += exp(2j * pi * s * m * xa) * partial_fraction_row(k, y, s * m / tau) / tau**k
    return total


def eisenstein_q_expansion(k, tau, terms=None):
    """Standard G_k(tau) = 2 zeta(k) + 2 (2 pi i)^k/(k-1)! sum sigma_{k-1}(n) q^n."""
    q = exp(2j * pi * tau)
    terms = terms or int(mp.prec * mp.log(2) / (2 * pi * mpc(tau).imag)) + 20
    s = mpc(0)
    for n in range(1, terms):
        sigma = sum(d ** (k - 1) for d in range(1, n + 1) if n % d == 0)
        s += sigma * q**n
    return 2 * mp.zeta(k) + 2 * (2j * pi) ** k / mp.factorial(k - 1) * s
