"""Exact moment polynomials and the structural conjectures.

Everything here is rational arithmetic; no floats appear until the very
last printout.
"""
from fractions import Fraction

from chernoff import (
    inv_ai_derivative,
    moment_polynomial,
    sinh_gf_coefficient,
    verify_conjectures,
)


def main():
    print("moment polynomials p_n (E V^n = (1/2 pi i) int p_n(z)/Ai(z)^2 dz):")
    for n in range(0, 13, 2):
        print(f"  p_{n}(z) = {moment_polynomial(n)}")
    print("  (odd n give the zero polynomial, so odd moments vanish)")

    print("\nthe n-th derivative of 1/Ai drives everything; n = 3 looks like:")
    print(f"  {inv_ai_derivative(3)}")

    print("\nleading coefficients vs n! [x^n] x/sinh(x):")
    for n in range(0, 13, 2):
        lead = moment_polynomial(n).coefficient(n // 2)
        gf = sinh_gf_coefficient(n)
        mark = "ok" if lead == gf else "MISMATCH"
        print(f"  n={n:2d}  b = {str(lead):>16}  gf = {str(gf):>16}  {mark}")

    print("\nfull conjecture sweep (exact, n <= 60):")
    rep = verify_conjectures(60)
    print(f"  odd polynomials all zero: {rep.odd_all_zero}")
    print(f"  degrees, leading coefficients, mod-3 support: "
          f"{'all ok' if rep.all_ok else rep.failures()}")

    # a taste of how fast the coefficients grow
    p60 = moment_polynomial(60)
    c = p60.coefficient(30)
    print(f"\n  p_60 has degree {p60.degree()}; its leading coefficient has "
          f"{len(str(c.numerator))} digits over {len(str(c.denominator))}")
    assert c == sinh_gf_coefficient(60)


if __name__ == "__main__":
    main()
