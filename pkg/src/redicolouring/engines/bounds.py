"""Recolouring-count bounds f and g and their recurrence checks.

f(s, t) bounds the per-vertex recolouring count when a single colour is
eliminated from the first t parts of a partition whose cycle witnesses
have size at most s.  g(s, t) bounds the count for a full retargeting
between two dicolourings over such a partition.  Both are exact integers;
the checks below confirm the recurrences the sequence constructions
charge their moves against.
"""

from __future__ import annotations

from math import factorial


def f(s: int, t: int) -> int:
    """(s+1)! * (2t)^s, the single-colour elimination bound."""
    if s < 0 or t < 0:
        raise ValueError("f is defined for s, t >= 0")
    return factorial(s + 1) * (2 * t) ** s


def g(s: int, t: int) -> int:
    """2s*f(s,t) + 2s + 1, the full retargeting bound."""
    if s < 0 or t < 0:
        raise ValueError("g is defined for s, t >= 0")
    return 2 * s * f(s, t) + 2 * s + 1


def check_recurrences(max_s: int = 8, max_t: int = 8) -> bool:
    """Verify the three inequalities the move accounting relies on.

    For every 1 <= s <= max_s and 1 <= t <= max_t:

      1. f(s, t) >= sum over q = 1..t of 2(s+1) f(s-1, q),
      2. g(s, t) >= 2 f(s, t) + 2 + g(s-1, t),
      3. g(s, t) <= g(s, 1) * t^s  (polynomial growth in t).

    Returns True, or raises AssertionError naming the failing pair.
    """
    for s in range(1, max_s + 1):
        for t in range(1, max_t + 1):
            lhs = f(s, t)
            rhs = sum(2 * (s + 1) * f(s - 1, q) for q in range(1, t + 1))
            assert lhs >= rhs, f"f recurrence fails at s={s}, t={t}: {lhs} < {rhs}"
            assert g(s, t) >= 2 * f(s, t) + 2 + g(s - 1, t), (
                f"g recurrence fails at s={s}, t={t}"
            )
            assert g(s, t) <= g(s, 1) * t**s, (
                f"polynomial envelope fails at s={s}, t={t}"
            )
    return True
