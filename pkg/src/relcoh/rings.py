"""Polynomial ring descriptors and monomial bookkeeping.

The working ring is A[x1..xn] for A in {QQ, QQ[t]}.  Internally QQ[t][x] is
flattened to the polynomial ring QQ[x1..xn, t]: a monomial is an exponent
tuple whose last slot, when the base ring is QQ[t], is the t exponent.
The grading only ever counts x exponents (t has x-degree zero), and the
term order is the block order with the x block (graded reverse lex)
dominating the t exponent.  That keeps all Groebner arithmetic over the
field QQ while leading terms are x-monomials whenever possible.
"""

from __future__ import annotations

from itertools import combinations

QQ = "QQ"
QQT = "QQ[t]"


class KernelError(ValueError):
    """Raised for computational-kernel errors (bad indices, broken complexes)."""


class Ring:
    __slots__ = ("base", "xvars", "_key_cache", "_xmono_cache")

    def __init__(self, base: str, xvars):
        if base not in (QQ, QQT):
            raise KernelError("unsupported base ring %r" % base)
        xvars = tuple(xvars)
        if not xvars:
            raise KernelError("need at least one x variable")
        if len(set(xvars)) != len(xvars):
            raise KernelError("duplicate variable names")
        self.base = base
        self.xvars = xvars
        self._key_cache = {}
        self._xmono_cache = {}

    @property
    def n(self) -> int:
        return len(self.xvars)

    @property
    def has_t(self) -> bool:
        return self.base == QQT

    @property
    def nvars(self) -> int:
        return len(self.xvars) + (1 if self.base == QQT else 0)

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.base == other.base
            and self.xvars == other.xvars
        )

    def __hash__(self):
        return hash((self.base, self.xvars))

    def __repr__(self):
        return "Ring(%s[%s])" % (self.base, ",".join(self.xvars))

    def zero_mono(self):
        return (0,) * self.nvars

    def xdeg(self, mono) -> int:
        n = len(self.xvars)
        return sum(mono[:n])

    def mono_key(self, mono):
        """Sort key: larger key = larger monomial under the block order.

        x block compared by graded reverse lex (total x-degree first, ties
        broken so the monomial with the smaller exponent on the last
        variable wins), then the t exponent.
        """
        key = self._key_cache.get(mono)
        if key is None:
            n = len(self.xvars)
            key = (
                sum(mono[:n]),
                tuple(-mono[i] for i in range(n - 1, -1, -1)),
                mono[n] if len(mono) > n else 0,
            )
            self._key_cache[mono] = key
        return key

    def term_key(self, term):
        """Position-over-term key for (component, monomial); lower index wins."""
        comp, mono = term
        return (-comp, self.mono_key(mono))

    def x_monomials(self, d: int):
        """All monomials of x-degree d with t exponent 0, largest first."""
        if d < 0:
            return ()
        cached = self._xmono_cache.get(d)
        if cached is None:
            n = len(self.xvars)
            pad = (0,) if self.base == QQT else ()
            monos = [
                tuple(exps) + pad for exps in _compositions(d, n)
            ]
            monos.sort(key=self.mono_key, reverse=True)
            cached = tuple(monos)
            self._xmono_cache[d] = cached
        return cached

    def mono_str(self, mono) -> str:
        n = len(self.xvars)
        parts = []
        for i, e in enumerate(mono[:n]):
            if e == 1:
                parts.append(self.xvars[i])
            elif e > 1:
                parts.append("%s^%d" % (self.xvars[i], e))
        if len(mono) > n and mono[n]:
            e = mono[n]
            parts.insert(0, "t" if e == 1 else "t^%d" % e)
        return "*".join(parts) if parts else "1"


def _compositions(total: int, parts: int):
    """All tuples of `parts` nonnegative ints summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for cut in combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for c in cut:
            out.append(c - prev - 1)
            prev = c
        out.append(total + parts - 2 - prev)
        yield tuple(out)


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))
