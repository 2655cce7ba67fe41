"""Canonical decomposition terms for series-parallel partial orders.

A series-parallel (SP) order is built from the empty order and the one
point order by repeatedly stacking smaller orders (chain sums, written
``C(...)`` bottom to top) and placing them side by side (antichain sums,
written ``A(...)``).  This module represents SP orders as canonical
decomposition terms:

* a chain sum has at least two layers, none of which is empty or itself
  a chain sum, so its layers are exactly its anticomponents;
* an antichain sum has at least two components, none of which is empty
  or itself an antichain sum, and the components are kept sorted by the
  total term order;
* the empty order appears only as the standalone term ``0``.

Under those rules each isomorphism class of finite SP orders has exactly
one term.  Terms are interned, so equal terms are the same object and
``is``, ``==``, hashing and memo lookups are all cheap identity
operations.  Everything in this module is a pure function of its
arguments and safe for concurrent use; the memo tables only ever cache
values that are recomputed identically.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

EMPTY_KIND = 0
POINT_KIND = 1
CHAIN = 2
ANTICHAIN = 3

DEFAULT_TERM_LIMIT = 200_000


class ResourceLimitError(RuntimeError):
    """An enumeration or closure grew past its configured size cap."""


class TermParseError(ValueError):
    """Malformed term string; ``position`` is the 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class SpTerm:
    """One canonical SP order.  Do not construct directly; use the
    constructors below (``chain_sum``, ``antichain_sum``, ``parse_term``,
    ``canonicalize``), which intern their results."""

    __slots__ = ("kind", "children", "n_points", "sort_key", "_text")

    def __init__(self, kind: int, children: tuple["SpTerm", ...]):
        self.kind = kind
        self.children = children
        if kind == EMPTY_KIND:
            self.n_points = 0
        elif kind == POINT_KIND:
            self.n_points = 1
        else:
            self.n_points = sum(c.n_points for c in children)
        # Total term order: point count, then kind, then child keys.
        self.sort_key = (self.n_points, kind, tuple(c.sort_key for c in children))
        self._text = None

    @property
    def text(self) -> str:
        s = self._text
        if s is None:
            s = self._text = _render(self)
        return s

    def __repr__(self):
        return self.text


_INTERN: dict[tuple, SpTerm] = {}


def _mk(kind: int, children: tuple[SpTerm, ...]) -> SpTerm:
    key = (kind, children)
    t = _INTERN.get(key)
    if t is None:
        t = _INTERN[key] = SpTerm(kind, children)
    return t


EMPTY = _mk(EMPTY_KIND, ())
POINT = _mk(POINT_KIND, ())


def _render(t: SpTerm) -> str:
    if t is EMPTY:
        return "0"
    if t is POINT:
        return "*"
    tag = "C" if t.kind == CHAIN else "A"
    return tag + "(" + ",".join(c.text for c in t.children) + ")"


def chain_sum(parts) -> SpTerm:
    """Canonical chain sum of canonical terms, bottom to top.

    Nested chain sums are flattened and empty layers dropped, so the
    result's layers are its anticomponents.  Zero or one surviving layer
    collapses to that layer (or to the empty term).
    """
    flat = []
    for p in parts:
        if p.kind == CHAIN:
            flat.extend(p.children)
        elif p is not EMPTY:
            flat.append(p)
    if not flat:
        return EMPTY
    if len(flat) == 1:
        return flat[0]
    return _mk(CHAIN, tuple(flat))


def antichain_sum(parts) -> SpTerm:
    """Canonical antichain sum; dual of ``chain_sum``, components sorted."""
    flat = []
    for p in parts:
        if p.kind == ANTICHAIN:
            flat.extend(p.children)
        elif p is not EMPTY:
            flat.append(p)
    if not flat:
        return EMPTY
    if len(flat) == 1:
        return flat[0]
    flat.sort(key=lambda t: t.sort_key)
    return _mk(ANTICHAIN, tuple(flat))


def canonicalize(raw) -> SpTerm:
    """Canonical term for a possibly non-canonical tree.

    ``raw`` is an ``SpTerm``, the string ``"0"`` or ``"*"``, or a pair
    ``(tag, children)`` with tag ``"C"`` or ``"A"`` and children again
    raw trees.  The result is order-isomorphic to the input; the map is
    idempotent.  One-child sums collapse to the child and zero-child
    sums to the empty term.
    """
    if isinstance(raw, SpTerm):
        if not raw.children:
            return raw
        parts = [canonicalize(c) for c in raw.children]
        return chain_sum(parts) if raw.kind == CHAIN else antichain_sum(parts)
    if raw == "0":
        return EMPTY
    if raw == "*":
        return POINT
    tag, children = raw
    parts = [canonicalize(c) for c in children]
    if tag == "C":
        return chain_sum(parts)
    if tag == "A":
        return antichain_sum(parts)
    raise ValueError(f"unknown raw term tag {tag!r}")


def size(t: SpTerm) -> int:
    return t.n_points


def compare(p: SpTerm, q: SpTerm) -> int:
    """Three-way total term order: -1, 0 or 1."""
    if p is q:
        return 0
    return -1 if p.sort_key < q.sort_key else 1


def term_sort_key(t: SpTerm):
    return t.sort_key


def print_term(t: SpTerm) -> str:
    """Canonical rendering in the term grammar."""
    return t.text


def _skip_ws(s: str, i: int) -> int:
    while i < len(s) and s[i].isspace():
        i += 1
    return i


def _parse(s: str, i: int):
    if i >= len(s):
        raise TermParseError("unexpected end of input", i)
    ch = s[i]
    if ch == "0":
        return "0", i + 1
    if ch == "*":
        return "*", i + 1
    if ch in "CA":
        j = _skip_ws(s, i + 1)
        if j >= len(s) or s[j] != "(":
            raise TermParseError("expected '('", j)
        children = []
        j = _skip_ws(s, j + 1)
        child, j = _parse(s, j)
        children.append(child)
        j = _skip_ws(s, j)
        if j < len(s) and s[j] == ")":
            raise TermParseError("chain and antichain sums need at least two children", j)
        while True:
            if j >= len(s):
                raise TermParseError("expected ',' or ')'", j)
            if s[j] == ",":
                j = _skip_ws(s, j + 1)
                child, j = _parse(s, j)
                children.append(child)
                j = _skip_ws(s, j)
            elif s[j] == ")":
                return (ch, children), j + 1
            else:
                raise TermParseError("expected ',' or ')'", j)
    raise TermParseError(f"unexpected character {ch!r}", i)


def parse_term(text: str) -> SpTerm:
    """Parse the term grammar ``0 | * | C(t,t,...) | A(t,t,...)``.

    Whitespace between tokens is ignored.  Sums with fewer than two
    children are rejected here rather than silently collapsed; the
    returned term is canonical.
    """
    raw, end = _parse(text, _skip_ws(text, 0))
    end = _skip_ws(text, end)
    if end != len(text):
        raise TermParseError("unexpected trailing input", end)
    return canonicalize(raw)


def finest_chain_rep(t: SpTerm) -> list[SpTerm]:
    """Layers of a chain sum bottom to top (the anticomponents); a
    non-chain term is its own single layer and the empty term has none."""
    if t.kind == CHAIN:
        return list(t.children)
    if t is EMPTY:
        return []
    return [t]


def finest_antichain_rep(t: SpTerm) -> list[SpTerm]:
    """Components of an antichain sum; dual of ``finest_chain_rep``."""
    if t.kind == ANTICHAIN:
        return list(t.children)
    if t is EMPTY:
        return []
    return [t]


# -- Suborder test ----------------------------------------------------------
#
# Case rules: the empty order embeds in everything and a point in any
# nonempty order.  A chain sum is connected, so it embeds into an
# antichain sum only inside one component; an antichain sum is
# anticonnected, so it embeds into a chain sum only inside one layer.
# Chain into chain assigns consecutive blocks of the smaller order's
# layers to layers of the larger one, in order.  Antichain into
# antichain distributes components to components, a group of two or
# more landing inside a single target component.

_SUB_CACHE: dict[tuple[SpTerm, SpTerm], bool] = {}


def is_suborder(p: SpTerm, q: SpTerm) -> bool:
    """True iff ``p`` is order-isomorphic to a restriction of ``q``."""
    if p is q or p is EMPTY:
        return True
    if p.n_points > q.n_points:
        return False
    if p is POINT:
        return True
    key = (p, q)
    got = _SUB_CACHE.get(key)
    if got is not None:
        return got
    if q.kind == CHAIN:
        if p.kind == CHAIN:
            res = _chain_in_chain(p.children, q.children)
        else:
            res = any(is_suborder(p, layer) for layer in q.children)
    elif q.kind == ANTICHAIN:
        if p.kind == ANTICHAIN:
            res = _antichain_in_antichain(p.children, q.children)
        else:
            res = any(is_suborder(p, comp) for comp in q.children)
    else:
        res = False  # q is a point and p has >= 2 points
    _SUB_CACHE[key] = res
    return res


def _chain_in_chain(pparts, qparts) -> bool:
    # f(i, j): can layers i.. of p embed into layers j.. of q, blocks in order.
    n, m = len(pparts), len(qparts)
    ptail = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        ptail[i] = ptail[i + 1] + pparts[i].n_points
    qtail = [0] * (m + 1)
    for j in range(m - 1, -1, -1):
        qtail[j] = qtail[j + 1] + qparts[j].n_points
    memo = {}

    def f(i, j):
        if i == n:
            return True
        if j == m or ptail[i] > qtail[j]:
            return False
        key = (i, j)
        got = memo.get(key)
        if got is not None:
            return got
        res = f(i, j + 1)
        if not res:
            for l in range(i, n):
                # A failing block only grows worse when extended.
                if not is_suborder(chain_sum(pparts[i : l + 1]), qparts[j]):
                    break
                if f(l + 1, j + 1):
                    res = True
                    break
        memo[key] = res
        return res

    return f(0, 0)


def _antichain_in_antichain(pcomps, qcomps) -> bool:
    # Components are sorted, so identical ones sit in runs; work with counts.
    distinct = []
    counts = []
    for c in pcomps:
        if distinct and distinct[-1] is c:
            counts[-1] += 1
        else:
            distinct.append(c)
            counts.append(1)
    m = len(qcomps)
    qtail = [0] * (m + 1)
    for j in range(m - 1, -1, -1):
        qtail[j] = qtail[j + 1] + qcomps[j].n_points
    memo = {}

    def assign(remaining, j, rem_size):
        if rem_size == 0:
            return True
        if j == m or rem_size > qtail[j]:
            return False
        key = (remaining, j)
        got = memo.get(key)
        if got is not None:
            return got
        res = False
        for pick in product(*(range(c + 1) for c in remaining)):
            chosen = []
            for term, k in zip(distinct, pick):
                chosen.extend([term] * k)
            group = antichain_sum(chosen)
            if group is EMPTY or is_suborder(group, qcomps[j]):
                rest = tuple(c - k for c, k in zip(remaining, pick))
                if assign(rest, j + 1, rem_size - group.n_points):
                    res = True
                    break
        memo[key] = res
        return res

    return assign(tuple(counts), 0, sum(c.n_points for c in pcomps))


# -- Enumeration ------------------------------------------------------------

_SIZE_CACHE: dict[int, tuple[SpTerm, ...]] = {}


def _terms_of_size(s: int) -> tuple[SpTerm, ...]:
    got = _SIZE_CACHE.get(s)
    if got is not None:
        return got
    if s == 0:
        out = (EMPTY,)
    elif s == 1:
        out = (POINT,)
    else:
        found = []

        # The first part never takes the whole size (a sum needs two
        # parts), so only strictly smaller sizes are recursed into.
        def chain_layers(remaining, acc):
            if remaining == 0:
                if len(acc) >= 2:
                    found.append(_mk(CHAIN, tuple(acc)))
                return
            top = remaining if acc else remaining - 1
            for k in range(1, top + 1):
                for part in _terms_of_size(k):
                    if part.kind != CHAIN:
                        acc.append(part)
                        chain_layers(remaining - k, acc)
                        acc.pop()

        def antichain_comps(remaining, min_key, acc):
            if remaining == 0:
                if len(acc) >= 2:
                    found.append(_mk(ANTICHAIN, tuple(acc)))
                return
            top = remaining if acc else remaining - 1
            for k in range(1, top + 1):
                for part in _terms_of_size(k):
                    if part.kind != ANTICHAIN and part.sort_key >= min_key:
                        acc.append(part)
                        antichain_comps(remaining - k, part.sort_key, acc)
                        acc.pop()

        chain_layers(s, [])
        antichain_comps(s, EMPTY.sort_key, [])
        found.sort(key=lambda t: t.sort_key)
        out = tuple(found)
    _SIZE_CACHE[s] = out
    return out


def enumerate_sp(n: int, *, limit: int = DEFAULT_TERM_LIMIT) -> list[SpTerm]:
    """All canonical terms of size <= n, one per isomorphism class,
    sorted by the total term order."""
    if n < 0:
        raise ValueError("size bound must be nonnegative")
    out = []
    for s in range(n + 1):
        out.extend(_terms_of_size(s))
        if len(out) > limit:
            raise ResourceLimitError(
                f"enumeration of terms up to size {n} exceeds the cap of {limit}"
            )
    return out


def enumerate_sp_by_closure(n: int, *, limit: int = DEFAULT_TERM_LIMIT) -> set[SpTerm]:
    """Cross-check enumeration: close {empty, point} under binary chain
    and antichain sums within the size bound.  Kept independent of the
    grammar-driven ``enumerate_sp`` on purpose."""
    if n < 0:
        raise ValueError("size bound must be nonnegative")
    terms = [EMPTY]
    if n >= 1:
        terms.append(POINT)
    seen = set(terms)
    i = 0
    while i < len(terms):
        t = terms[i]
        for u in terms[: i + 1]:
            if t.n_points + u.n_points <= n:
                for made in (chain_sum((u, t)), chain_sum((t, u)), antichain_sum((t, u))):
                    if made not in seen:
                        seen.add(made)
                        terms.append(made)
                        if len(terms) > limit:
                            raise ResourceLimitError(
                                f"sum closure up to size {n} exceeds the cap of {limit}"
                            )
        i += 1
    return seen


# -- Explicit relations -----------------------------------------------------


@dataclass(frozen=True)
class PosetRelation:
    """Explicit order relation on points 0..n-1.

    Bit ``j`` of ``leq[i]`` is set iff point ``i <= j`` (reflexive bits
    included).  Used only by relation-level predicates that must stay
    independent of the term algebra.
    """

    n: int
    leq: tuple[int, ...]


_REL_CACHE: dict[SpTerm, PosetRelation] = {}


def to_relation(t: SpTerm) -> PosetRelation:
    """Materialize a term as a concrete relation: within a layer the
    layer's own order, everything in an earlier chain layer below every
    point of a later one, components of an antichain sum incomparable."""
    rel = _REL_CACHE.get(t)
    if rel is not None:
        return rel
    if t is EMPTY:
        rel = PosetRelation(0, ())
    elif t is POINT:
        rel = PosetRelation(1, (1,))
    else:
        parts = [to_relation(c) for c in t.children]
        total = sum(p.n for p in parts)
        rows = []
        if t.kind == CHAIN:
            off = 0
            for idx, p in enumerate(parts):
                above = 0
                o2 = off + p.n
                for later in parts[idx + 1 :]:
                    above |= ((1 << later.n) - 1) << o2
                    o2 += later.n
                for row in p.leq:
                    rows.append((row << off) | above)
                off += p.n
        else:
            off = 0
            for p in parts:
                for row in p.leq:
                    rows.append(row << off)
                off += p.n
        rel = PosetRelation(total, tuple(rows))
    _REL_CACHE[t] = rel
    return rel
