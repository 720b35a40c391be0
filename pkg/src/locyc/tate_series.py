"""Multiplicative-parameter series for the curve family at q = p^(2p).

Everything here evaluates the classical uniformization series at the
specific parameter q = p^(2p), whose square root p^p is an honest
element of Z_p.  Writing h(z) = z/(1-z)^2, the facts the truncations
rely on are:

* h(1/z) = h(z), so the two-sided sum over q^n u collapses to one-sided
  sums of h at powers of w = p^p.
* s_1(q) = sum_{n>=1} n q^n/(1-q^n) = sum_{n>=1} h(q^n)  (Lambert series
  rearrangement), which turns the coordinate series X(u, q) into
      X(u, q) = sum_{n in Z} h(u q^n) - 2 sum_{n>=1} h(q^n).
* For u = -1:        X = -1/4 - 2 sum_{n>=1} [ q^n/(1+q^n)^2 + q^n/(1-q^n)^2 ],
  with the n-th summand of valuation >= 2pn.
* For u = w or -w:   X = 2 sum_{m>=1} (-1)^(m-1) h(u^m) where u = +-w,
  with the m-th summand of valuation >= pm.

The truncation loops run until those lower bounds exceed the requested
precision, so every computed digit is certified.  Each term n^k
q^n/(1-q^n) of s_k likewise has valuation >= 2pn.

All divisions by 3, 4, 9, 12, 16 are unit divisions since p >= 5.
"""

from __future__ import annotations

from dataclasses import dataclass

from .padic import PadicInt, from_rational, hensel_lift


def _h(z: int, modulus: int) -> int:
    """z/(1-z)^2 mod modulus; needs 1-z to be a unit, true for v(z) >= 1."""
    return z * pow((1 - z) % modulus, -2, modulus) % modulus


def s_k(p: int, k: int, precision: int) -> PadicInt:
    """sum_{n>=1} n^k q^n/(1-q^n) at q = p^(2p), truncated at p^precision."""
    if k not in (1, 3, 5):
        raise ValueError(f"k must be 1, 3 or 5, got {k}")
    if precision < 1:
        raise ValueError("precision must be positive")
    mod = p**precision
    total = 0
    n = 1
    while 2 * p * n <= precision:
        qn = pow(p, 2 * p * n, mod)
        total = (total + n**k * qn * pow((1 - qn) % mod, -1, mod)) % mod
        n += 1
    return PadicInt(p, precision, total)


def tate_a_invariants(p: int, precision: int) -> tuple[PadicInt, PadicInt]:
    """Coefficients of y^2 + xy = x^3 + a4 x + a6 for the parameter p^(2p).

    a4 = -5*s3 and a6 = -(5*s3 + 7*s5)/12.  The factor 5 matters: it is
    what makes the 2-torsion x-coordinate series the exact roots of the
    division cubic x^3 + x^2/4 + a4*x + a6 (checked by the tests via
    elementary symmetric functions).
    """
    if p < 5:
        raise ValueError("p must be at least 5")
    s3 = s_k(p, 3, precision)
    s5 = s_k(p, 5, precision)
    a4 = -(s3 * 5)
    a6 = -((s3 * 5 + s5 * 7) * from_rational(1, 12, p, precision))
    return a4, a6


def two_torsion_x(p: int, which: int, precision: int) -> PadicInt:
    """x-coordinate of a nontrivial 2-torsion point of the q = p^(2p) curve.

    which = 1 is the point attached to u = -1; 2 and 3 are the points at
    u = p^p and u = -p^p.
    """
    if p < 5:
        raise ValueError("p must be at least 5 so that 4 is a unit")
    mod = p**precision
    if which == 1:
        acc = from_rational(-1, 4, p, precision).residue
        n = 1
        while 2 * p * n <= precision:
            qn = pow(p, 2 * p * n, mod)
            t = qn * pow((1 + qn) % mod, -2, mod) + qn * pow(
                (1 - qn) % mod, -2, mod
            )
            acc = (acc - 2 * t) % mod
            n += 1
        return PadicInt(p, precision, acc)
    if which in (2, 3):
        sign = 1 if which == 2 else -1
        acc = 0
        m = 1
        while p * m <= precision:
            um = pow(p, p * m, mod) * sign**m % mod
            acc = (acc + 2 * (-1) ** (m - 1) * _h(um, mod)) % mod
            m += 1
        return PadicInt(p, precision, acc)
    raise ValueError(f"which must be 1, 2 or 3, got {which}")


@dataclass(frozen=True)
class TateBundle:
    """Series data for one prime, everything at one working precision."""

    prime: int
    q_exponent: int       # q = p^q_exponent
    sqrt_q_exponent: int  # q^(1/2) = p^sqrt_q_exponent, exact
    precision: int
    a4: PadicInt
    a6: PadicInt
    x1: PadicInt
    x2: PadicInt
    x3: PadicInt
    xpp1: PadicInt  # normalized 2-torsion x-coords: (36*x + 3)/9
    xpp2: PadicInt
    xpp3: PadicInt
    alpha: PadicInt  # unit factors: xpp2-xpp1 = 1 + 8*alpha*p^p,
    beta: PadicInt   # xpp3-xpp1 = 1 - 8*beta*p^p,
    gamma: PadicInt  # xpp2-xpp3 = 16*gamma*p^p


def build_bundle(p: int, precision: int | None = None) -> TateBundle:
    """Evaluate everything at q = p^(2p).

    Default precision is 4p+1, the level at which the congruence targets
    are built.  The unit factors alpha, beta, gamma come out p digits
    shorter because extracting them divides by p^p.
    """
    if p < 5:
        raise ValueError("p must be at least 5")
    r = 4 * p + 1 if precision is None else precision
    a4, a6 = tate_a_invariants(p, r)
    x1 = two_torsion_x(p, 1, r)
    x2 = two_torsion_x(p, 2, r)
    x3 = two_torsion_x(p, 3, r)
    third = from_rational(1, 3, p, r)
    xpp1 = x1 * 4 + third
    xpp2 = x2 * 4 + third
    xpp3 = x3 * 4 + third
    inv8 = from_rational(1, 8, p, r)
    inv16 = from_rational(1, 16, p, r)
    one = from_rational(1, 1, p, r)
    alpha = ((xpp2 - xpp1) - one).shift_down(p) * inv8
    beta = (one - (xpp3 - xpp1)).shift_down(p) * inv8
    gamma = (xpp2 - xpp3).shift_down(p) * inv16
    return TateBundle(
        prime=p,
        q_exponent=2 * p,
        sqrt_q_exponent=p,
        precision=r,
        a4=a4,
        a6=a6,
        x1=x1,
        x2=x2,
        x3=x3,
        xpp1=xpp1,
        xpp2=xpp2,
        xpp3=xpp3,
        alpha=alpha,
        beta=beta,
        gamma=gamma,
    )


class RootSeparationError(ArithmeticError):
    """The cubic's congruent root pair did not split at level p^p."""


def cubic_coefficients(p: int, precision: int) -> tuple[PadicInt, PadicInt]:
    """(A, B) of the depressed cubic x^3 + A x + B whose roots are the
    normalized 2-torsion x-coordinates: A = 16 a4 - 1/3 and
    B = 64 a6 - (16/3) a4 + 2/27."""
    a4, a6 = tate_a_invariants(p, precision)
    A = a4 * 16 - from_rational(1, 3, p, precision)
    B = a6 * 64 - a4 * 16 * from_rational(1, 3, p, precision) + from_rational(
        2, 27, p, precision
    )
    return A, B


def oracle_cubic_roots(
    p: int, precision: int
) -> tuple[PadicInt, PadicInt, PadicInt]:
    """Roots of the normalized 2-torsion cubic, found without the series.

    Mod p the cubic factors as (x + 2/3)(x - 1/3)^2.  The simple root
    lifts by plain Newton; the congruent pair is split by the quadratic
    formula, whose discriminant has valuation exactly 2p.  Internally p
    extra guard digits are carried because the square root spends p of
    them, so the three returned roots all hold the full requested
    precision.  Ordering: the root near -2/3 first, then the one whose
    offset from 1/3 starts with digit pattern +8*p^p.
    """
    work = precision + p
    A, B = cubic_coefficients(p, work)
    inv3 = pow(3, -1, p)
    alpha0 = (-2 * inv3) % p
    coeffs = [B.residue, A.residue, 0, 1]
    root1 = hensel_lift(coeffs, alpha0, p, j=1, tau=0, precision=work)
    # Deflate: remaining roots solve x^2 + root1*x - B/root1 = 0 (the three
    # roots sum to zero and multiply to -B).
    c = -(B * root1.inv())
    disc = root1 * root1 - c * 4
    v = disc.valuation()
    if v != 2 * p:
        raise RootSeparationError(
            f"discriminant valuation {v}, expected {2 * p}: series digits "
            "disagree with the cubic"
        )
    sq = disc.sqrt(16 % p)
    inv2 = from_rational(1, 2, p, work)
    r_plus = (-root1 + sq) * inv2
    r_minus = (-root1 - sq) * inv2
    # identify the +8*p^p branch
    third = from_rational(1, 3, p, r_plus.precision)
    lead = (r_plus - third).shift_down(p).residue % p
    if lead == 8 % p:
        root2, root3 = r_plus, r_minus
    elif (-lead) % p == 8 % p:
        root2, root3 = r_minus, r_plus
    else:
        raise RootSeparationError(
            f"neither branch has leading offset digit 8 (saw {lead})"
        )
    return (
        root1.truncate(precision),
        root2.truncate(precision),
        root3.truncate(precision),
    )
