"""The affine action of the two generators on the integer plane.

The generator U acts by alpha(x, y) = (x + 2y, y + 1) and V by
beta(x, y) = (x + 1, 2x + y).  A word acts with its rightmost letter first,
so act(w, p) equals eval_affine(w) applied to p.  The whole line x + y = 1
is one orbit of the origin; marked_point(n) = (n, 1 - n) names its points and
witness_word(n) constructs an explicit word reaching each of them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

from .linear import Vec2
from .words import EMPTY, Word, concat, power

ORIGIN = Vec2(0, 0)

# the default loop witness (U^-1 V)^2, which fixes every point of the line
DEFAULT_WITNESS = Word("uVuV")

_RUNS = re.compile(r"U+|V+|u+|v+")


def step(char: str, p: Vec2) -> Vec2:
    """Apply a single letter to a point.  Reference path for everything else."""
    x, y = p.x, p.y
    if char == "U":
        nx, ny = x + 2 * y, y + 1
    elif char == "u":
        nx, ny = x - 2 * y + 2, y - 1
    elif char == "V":
        nx, ny = x + 1, 2 * x + y
    elif char == "v":
        nx, ny = x - 1, y - 2 * x + 2
    else:
        raise ValueError(f"bad letter {char!r}")
    return Vec2(nx, ny, p.modulus)


def generator_power(gen: str, m: int, p: Vec2) -> Vec2:
    """Apply the m-th power of one generator in closed form.

    alpha^m(x, y) = (x + 2my + m(m-1), y + m)
    beta^m(x, y)  = (x + m, y + 2mx + m(m-1))
    """
    x, y = p.x, p.y
    if gen == "U":
        nx, ny = x + 2 * m * y + m * (m - 1), y + m
    elif gen == "V":
        nx, ny = x + m, y + 2 * m * x + m * (m - 1)
    else:
        raise ValueError(f"generator must be 'U' or 'V', got {gen!r}")
    return Vec2(nx, ny, p.modulus)


def act(w: Word, p: Vec2) -> Vec2:
    """Apply a word to a point, rightmost letter first.

    Maximal runs of one letter are applied with the closed-form power, so a
    word built from long generator powers costs one step per run.
    """
    x, y, q = p.x, p.y, p.modulus
    for seg in reversed(_RUNS.findall(w.text)):
        c = seg[0]
        m = len(seg)
        if c == "u":
            c, m = "U", -m
        elif c == "v":
            c, m = "V", -m
        if c == "U":
            x, y = x + 2 * m * y + m * (m - 1), y + m
        else:
            x, y = x + m, y + 2 * m * x + m * (m - 1)
        if q is not None:
            x %= q
            y %= q
    return Vec2(x, y, q)


@dataclass(frozen=True)
class MarkedPoint:
    """The point (n, 1 - n) on the invariant line x + y = 1."""

    n: int
    point: Vec2

    def __post_init__(self):
        if (self.point.x, self.point.y) != (self.n, 1 - self.n) or self.point.modulus is not None:
            raise ValueError(f"marked point {self.n} must be ({self.n}, {1 - self.n})")


def marked_point(n: int) -> MarkedPoint:
    return MarkedPoint(n, Vec2(n, 1 - n))


@dataclass(frozen=True)
class WitnessSchedule:
    """A word certified to send the origin to marked_point(n)."""

    n: int
    word: Word

    def __post_init__(self):
        if act(self.word, ORIGIN) != marked_point(self.n).point:
            raise ValueError(f"word {self.word} does not reach marked point {self.n}")


def _extend_witness(n: int, built: dict[int, Word]) -> Word:
    # recurrences: beta^{-2n} sends (n, 1-n) to (-n, 1+n) and
    # alpha^{-2n-2} sends (-n, 1+n) to (n+2, -n-1), both for n >= 0
    if n < 0:
        return concat(power(Word._raw("V"), 2 * n), built[-n])
    return concat(power(Word._raw("U"), 2 - 2 * n), built[2 - n])


def witness_word(n: int) -> WitnessSchedule:
    """Build and verify a word sending (0, 0) to (n, 1 - n).

    The word is assembled by prepending recurrence powers to previously built
    witnesses, has length O(n^2), and is re-evaluated before being returned.
    """
    built = {0: Word._raw("U"), 1: Word._raw("V")}
    todo = [n]
    while todo:
        k = todo[-1]
        if k in built:
            todo.pop()
            continue
        need = -k if k < 0 else 2 - k
        if need in built:
            built[k] = _extend_witness(k, built)
            if need != n:
                del built[need]  # the chain uses each predecessor exactly once
            todo.pop()
        else:
            todo.append(need)
    return WitnessSchedule(n, built[n])


def witness_sweep(n_max: int) -> Iterator[WitnessSchedule]:
    """Yield verified witnesses for n = 0, 1, -1, 2, -2, ..., +-n_max.

    Each word is built from its predecessor in O(length) and dropped as soon
    as nothing further depends on it, so memory stays bounded by a few of the
    longest words instead of the whole sweep.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    built: dict[int, Word] = {0: Word._raw("U"), 1: Word._raw("V")}
    yield WitnessSchedule(0, built[0])
    if n_max == 0:
        return
    yield WitnessSchedule(1, built[1])
    for k in range(1, n_max + 1):
        if -k not in built:
            built[-k] = _extend_witness(-k, built)
        yield WitnessSchedule(-k, built[-k])
        built.pop(k, None)  # only -k depended on it
        if 2 <= k + 1 <= n_max:
            built[k + 1] = _extend_witness(k + 1, built)
            yield WitnessSchedule(k + 1, built[k + 1])
            built.pop(-(k - 1), None)  # only k+1 depended on it
    return


def loop_check(w: Word, p: Vec2) -> bool:
    """True iff the nonempty word w fixes p."""
    if w.is_identity():
        raise ValueError("loop_check needs a nonempty word")
    return act(w, p) == p
