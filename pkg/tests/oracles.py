"""Slow, independent reference computations used as test oracles."""
import math


def bisect_root(x, steps=200):
    lo, hi = 0.0, max(x, 1.0) + 1.0
    for _ in range(steps):
        mid = (lo + hi) / 2
        if mid + math.sin(mid) < x:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def naive_tv(p, q):
    sp, sq = sum(p), sum(q)
    return 0.5 * sum(abs(a / sp - b / sq) for a, b in zip(p, q))


def naive_fringe_score(bins, window=15, central=60):
    # bins indexed from -90; keep bins whose centre b + 0.5 lies in [-central, central]
    c = [bins[b + 90] for b in range(-90, 90) if -central <= b + 0.5 <= central]
    half = window // 2
    resid = total = 0.0
    for i in range(len(c)):
        w = c[max(0, i - half) : min(len(c), i + half + 1)]
        m = sum(w) / len(w)
        resid += abs(c[i] - m)
        total += m
    return resid / total
