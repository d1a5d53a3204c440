"""Reference values for log-gamma and digamma, computed at 30 digits.

The log-gamma reference shifts the argument up with the recurrence until
|z| > 50 and then sums the Stirling series, mirroring how the frozen test
values were produced. mpmath's own loggamma/digamma are printed alongside
as a second opinion.
"""
import mpmath as mp

mp.mp.dps = 30


def stirling_loggamma(z, terms=30):
    shift = mp.mpc(0)
    while abs(z) <= 50:
        shift += mp.log(z)
        z += 1
    acc = (z - mp.mpf(1) / 2) * mp.log(z) - z + mp.log(2 * mp.pi) / 2
    for k in range(1, terms + 1):
        b = mp.bernoulli(2 * k)
        acc += b / (2 * k * (2 * k - 1) * z ** (2 * k - 1))
    return acc - shift


def stirling_digamma(z, terms=30):
    shift = mp.mpc(0)
    while abs(z) <= 50:
        shift += 1 / z
        z += 1
    acc = mp.log(z) - 1 / (2 * z)
    for k in range(1, terms + 1):
        acc -= mp.bernoulli(2 * k) / (2 * k * z ** (2 * k))
    return acc - shift


def show(label, value):
    print(f"{label}: {mp.nstr(value.real, 20)} {mp.nstr(value.imag, 20)}")


if __name__ == "__main__":
    for z in [mp.mpc(1, 1), mp.mpc(0.25, 30), mp.mpc(-2.5, 3), mp.mpc(3, -7)]:
        show(f"loggamma{z}", stirling_loggamma(z))
        show(f"  mpmath  {z}", mp.loggamma(z))
    for z in [mp.mpc(10, 10), mp.mpc(0.25, 25), mp.mpc(-3.5, 0.5)]:
        show(f"digamma{z}", stirling_digamma(z))
        show(f"  mpmath {z}", mp.digamma(z))
