"""Sign sectors and the Weyl action on them.

A sign vector labels a connected component of the disconnected Cartan
subgroup.  A simple reflection s_i sends eps to eps' with
``eps'_j = eps_j * eps_i ** (C_{j,i} mod 2)``; since entries are +-1 the
negative exponent in the character action reduces mod 2.  Words act with
the rightmost letter applied first, so the action respects the group
law ``apply_weyl(u*v, eps) == apply_weyl(u, apply_weyl(v, eps))``.
"""

from __future__ import annotations

from .errors import ConfigError
from .lie import CartanMatrix, WeylElement

SignVector = tuple


def validate_signs(eps, rank: int) -> tuple[int, ...]:
    out = tuple(int(e) for e in eps)
    if len(out) != rank:
        raise ConfigError(f"sign vector has length {len(out)}, expected {rank}")
    if any(e not in (1, -1) for e in out):
        raise ConfigError("sign entries must be +1 or -1")
    return out


def parse_sign_string(s: str) -> tuple[int, ...]:
    """Parse a string over '+' and '-' into a sign vector."""
    table = {"+": 1, "-": -1}
    try:
        return tuple(table[ch] for ch in s)
    except KeyError:
        raise ConfigError(f"bad sign string {s!r}; use characters + and -") from None


def sign_string(eps) -> str:
    return "".join("+" if e == 1 else "-" for e in eps)


def apply_simple_reflection(i: int, eps, C: CartanMatrix) -> tuple[int, ...]:
    """Action of s_i on a sign vector.  An involution for each i."""
    eps = validate_signs(eps, C.rank)
    if not 1 <= i <= C.rank:
        raise ConfigError(f"simple-root index {i} out of range 1..{C.rank}")
    if eps[i - 1] == 1:
        return eps
    return tuple(
        e if C.entry(j, i) % 2 == 0 else -e for j, e in zip(C.simple_indices, eps)
    )


def apply_weyl(w: WeylElement, eps, C: CartanMatrix) -> tuple[int, ...]:
    """Action of a group element along its reduced word, last letter first.

    The result does not depend on the choice of reduced word.
    """
    out = validate_signs(eps, C.rank)
    for i in reversed(w.word):
        out = apply_simple_reflection(i, out, C)
    return out
