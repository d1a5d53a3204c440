"""Reduced zeta-case a-value count, evaluated in 40-digit arithmetic.

N(T, U) = ((T+U) log(T+U) - T log T) / (2 pi) + U log(1/(2 pi)) / (2 pi)
          + (2 Psi - 1) U / (2 pi)
"""
import sys

from mpmath import mp, mpf, log, pi

mp.dps = 40


def reduced(T, U, psi):
    T, U, psi = mpf(T), mpf(U), mpf(psi)
    return (((T + U) * log(T + U) - T * log(T)) / (2 * pi) + U * log(1 / (2 * pi)) / (2 * pi)
            + (2 * psi - 1) * U / (2 * pi))


if __name__ == "__main__":
    T, U = (float(x) for x in sys.argv[1:3]) if len(sys.argv) > 2 else (1000.0, 1000.0)
    for label, psi in (("otherwise", 0), ("a = a1 != 0", -log(2) / 2), ("a != a1 = 0", log(2) / 2)):
        print(f"{label}: {mp.nstr(reduced(T, U, psi), 25)}")
