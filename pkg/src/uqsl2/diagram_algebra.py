"""Temperley-Lieb diagrams and their realization on tensor powers of X.

Diagrams are non-crossing perfect matchings between n_top points (read
left to right) and n_bottom points; as maps they send X^(tensor n_bottom)
to X^(tensor n_top).  Abstract composition stacks diagrams and converts
closed loops into factors of the loop parameter delta.  The matrix
realization sends cups and caps to the standard intertwiners

    cup: v01 -> -q, v10 -> 1;   cap: 1 -> q^-1 v10 - v01

on adjacent strands.  Note both zig-zag composites of a plain cup over a
plain cap equal minus the identity, so realizing a diagram by an
arbitrary cup/cap factorization is not well defined; ``diagram_to_matrix``
therefore uses internal alternating-sign variants (an implementation
device only) under which the factorization is move-invariant, and which
leave every e_i, hence the image of the algebra, unchanged.
"""

from __future__ import annotations

from itertools import combinations

from uqsl2.cyclo_field import CycloNum, FieldCtx, QFactProduct
from uqsl2.tensor_space import (
    BasisIndex,
    LinOp,
    TensorVector,
    all_indices,
    f_power,
    x_bottom,
)


class JWUndefined(ArithmeticError):
    """Jones-Wenzl recursion hit a vanishing quantum integer."""


def _linear(pt, n_top: int, n_bottom: int) -> int:
    """Boundary position in the cyclic order top 1..n_top, then bottom
    n_bottom..1 (so non-crossing equals balanced parentheses)."""
    side, i = pt
    if side == "t":
        return i - 1
    return n_top + (n_bottom - i)


class TLDiagram:
    """A planar pairing of boundary points, plus removed-loop bookkeeping."""

    __slots__ = ("n_top", "n_bottom", "pairs", "loops_removed")

    def __init__(self, n_top: int, n_bottom: int, pairs, loops_removed: int = 0):
        assert (n_top + n_bottom) % 2 == 0
        self.n_top = n_top
        self.n_bottom = n_bottom
        self.loops_removed = loops_removed
        lin = lambda pt: _linear(pt, n_top, n_bottom)
        norm = []
        seen = set()
        for a, b in pairs:
            assert a != b
            if lin(a) > lin(b):
                a, b = b, a
            norm.append((a, b))
            seen.update((a, b))
        expected = {("t", i) for i in range(1, n_top + 1)} | {
            ("b", j) for j in range(1, n_bottom + 1)
        }
        assert seen == expected, "pairing must cover every boundary point once"
        norm.sort(key=lambda ab: lin(ab[0]))
        self.pairs = tuple(norm)
        # planarity: balanced-parenthesis check in the linear order
        stack = []
        opens = {lin(a): lin(b) for a, b in self.pairs}
        for pos in range(n_top + n_bottom):
            if pos in opens:
                stack.append(opens[pos])
            else:
                assert stack and stack[-1] == pos, "crossing pairing"
                stack.pop()

    def _partner(self) -> dict:
        out = {}
        for a, b in self.pairs:
            out[a] = b
            out[b] = a
        return out

    def key(self):
        return (self.n_top, self.n_bottom, self.pairs)

    def __eq__(self, other):
        if not isinstance(other, TLDiagram):
            return NotImplemented
        return self.key() == other.key() and self.loops_removed == other.loops_removed

    def __hash__(self):
        return hash((self.key(), self.loops_removed))

    def to_parens(self) -> str:
        lin = lambda pt: _linear(pt, self.n_top, self.n_bottom)
        opens = {lin(a) for a, _ in self.pairs}
        return "".join(
            "(" if pos in opens else ")" for pos in range(self.n_top + self.n_bottom)
        )

    def to_json(self) -> dict:
        name = lambda pt: f"{pt[0]}{pt[1]}"
        return {
            "top": self.n_top,
            "bottom": self.n_bottom,
            "pairs": [[name(a), name(b)] for a, b in self.pairs],
        }

    def __repr__(self):
        loops = f", loops={self.loops_removed}" if self.loops_removed else ""
        return f"TLDiagram({self.n_top}<-{self.n_bottom}, {self.to_parens()}{loops})"


def identity_diagram(n: int) -> TLDiagram:
    return TLDiagram(n, n, [(("t", i), ("b", i)) for i in range(1, n + 1)])


def e_diagram(i: int, n: int) -> TLDiagram:
    assert 1 <= i <= n - 1
    pairs = [(("t", i), ("t", i + 1)), (("b", i), ("b", i + 1))]
    pairs += [(("t", j), ("b", j)) for j in range(1, n + 1) if j not in (i, i + 1)]
    return TLDiagram(n, n, pairs)


def all_diagrams(n_top: int, n_bottom: int) -> list[TLDiagram]:
    """Every planar pairing, enumerated deterministically."""
    assert (n_top + n_bottom) % 2 == 0
    seq = [("t", i) for i in range(1, n_top + 1)]
    seq += [("b", j) for j in range(n_bottom, 0, -1)]

    def match(points):
        if not points:
            yield []
            return
        first = points[0]
        for k in range(1, len(points), 2):
            inner, outer = points[1:k], points[k + 1 :]
            for mi in match(inner):
                for mo in match(outer):
                    yield [(first, points[k])] + mi + mo

    return [TLDiagram(n_top, n_bottom, pairs) for pairs in match(seq)]


def _stack(a: TLDiagram, b: TLDiagram) -> tuple[TLDiagram, int]:
    """Compose a over b (b acts first); returns (diagram, new loops)."""
    m = a.n_bottom
    assert b.n_top == m, "incompatible boundaries"
    pa, pb = a._partner(), b._partner()
    seen_mid = set()

    def trace(side, pt):
        while True:
            if side == "a":
                s, i = pa[pt]
                if s == "t":
                    return ("t", i)
                seen_mid.add(i)
                side, pt = "b", ("t", i)
            else:
                s, i = pb[pt]
                if s == "b":
                    return ("b", i)
                seen_mid.add(i)
                side, pt = "a", ("b", i)

    pairs = []
    done_top = set()
    done_bot = set()
    for i in range(1, a.n_top + 1):
        if i in done_top:
            continue
        end = trace("a", ("t", i))
        done_top.add(i)
        if end[0] == "t":
            done_top.add(end[1])
        else:
            done_bot.add(end[1])
        pairs.append((("t", i), end))
    # every path left over joins two bottom points
    for j in range(1, b.n_bottom + 1):
        if j in done_bot:
            continue
        end = trace("b", ("b", j))
        assert end[0] == "b"
        done_bot.add(j)
        done_bot.add(end[1])
        pairs.append((("b", j), end))
    loops = 0
    unseen = set(range(1, m + 1)) - seen_mid
    while unseen:
        start = unseen.pop()
        cur, in_a = start, True
        while True:
            if in_a:
                s, nxt = pa[("b", cur)]
            else:
                s, nxt = pb[("t", cur)]
            assert s == ("b" if in_a else "t")
            in_a = not in_a
            cur = nxt
            if cur == start and in_a:
                break
            unseen.discard(cur)
        loops += 1
    out = TLDiagram(
        a.n_top,
        b.n_bottom,
        pairs,
        a.loops_removed + b.loops_removed + loops,
    )
    return out, loops


class TLElement:
    """Formal combination of loop-free diagrams with field coefficients."""

    __slots__ = ("ctx", "n_top", "n_bottom", "terms")

    def __init__(self, ctx: FieldCtx, n_top: int, n_bottom: int, terms=None):
        self.ctx = ctx
        self.n_top = n_top
        self.n_bottom = n_bottom
        self.terms: dict[TLDiagram, CycloNum] = {}
        if terms:
            for d, c in terms.items():
                assert (d.n_top, d.n_bottom) == (n_top, n_bottom)
                if d.loops_removed:
                    c = c * ctx.loop_value ** d.loops_removed
                    d = TLDiagram(d.n_top, d.n_bottom, d.pairs)
                if c:
                    prev = self.terms.get(d)
                    tot = c if prev is None else prev + c
                    if tot:
                        self.terms[d] = tot
                    else:
                        del self.terms[d]

    @classmethod
    def from_diagram(cls, ctx, d: TLDiagram) -> "TLElement":
        return cls(ctx, d.n_top, d.n_bottom, {d: ctx.one})

    @classmethod
    def identity(cls, ctx, n: int) -> "TLElement":
        return cls.from_diagram(ctx, identity_diagram(n))

    @classmethod
    def e(cls, ctx, i: int, n: int) -> "TLElement":
        return cls.from_diagram(ctx, e_diagram(i, n))

    def __add__(self, other: "TLElement") -> "TLElement":
        assert (self.n_top, self.n_bottom) == (other.n_top, other.n_bottom)
        out = dict(self.terms)
        for d, c in other.terms.items():
            prev = out.get(d)
            tot = c if prev is None else prev + c
            if tot:
                out[d] = tot
            else:
                del out[d]
        el = TLElement(self.ctx, self.n_top, self.n_bottom)
        el.terms = out
        return el

    def __neg__(self):
        el = TLElement(self.ctx, self.n_top, self.n_bottom)
        el.terms = {d: -c for d, c in self.terms.items()}
        return el

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TLElement":
        if isinstance(c, TLElement):
            raise TypeError("compose elements with tl_compose, not *")
        if not isinstance(c, CycloNum):
            c = self.ctx.scalar(c)
        el = TLElement(self.ctx, self.n_top, self.n_bottom)
        if c:
            el.terms = {d: x * c for d, x in self.terms.items()}
        return el

    __mul__ = scale
    __rmul__ = scale

    def tensor_identity(self, k: int) -> "TLElement":
        """Adjoin k vertical strands on the right."""
        out = {}
        for d, c in self.terms.items():
            pairs = list(d.pairs)
            pairs += [
                (("t", d.n_top + i), ("b", d.n_bottom + i)) for i in range(1, k + 1)
            ]
            out[TLDiagram(d.n_top + k, d.n_bottom + k, pairs)] = c
        return TLElement(self.ctx, self.n_top + k, self.n_bottom + k, out)

    def __eq__(self, other):
        if not isinstance(other, TLElement):
            return NotImplemented
        return (
            (self.n_top, self.n_bottom) == (other.n_top, other.n_bottom)
            and self.terms == other.terms
        )

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "TLElement(0)"
        body = " + ".join(
            f"({c})*{d.to_parens()}" for d, c in sorted(
                self.terms.items(), key=lambda t: t[0].pairs
            )
        )
        return f"TLElement({body})"


def tl_compose(a: TLElement, b: TLElement) -> TLElement:
    """a after b, converting closed loops to powers of delta."""
    assert a.n_bottom == b.n_top, "incompatible boundaries"
    ctx = a.ctx
    delta = ctx.loop_value
    acc: dict[TLDiagram, CycloNum] = {}
    for d1, c1 in a.terms.items():
        for d2, c2 in b.terms.items():
            d, loops = _stack(d1, d2)
            c = c1 * c2
            if loops:
                c = c * delta**loops
            if not c:
                continue
            key = TLDiagram(d.n_top, d.n_bottom, d.pairs)
            prev = acc.get(key)
            tot = c if prev is None else prev + c
            if tot:
                acc[key] = tot
            else:
                del acc[key]
    out = TLElement(ctx, a.n_top, b.n_bottom)
    out.terms = acc
    return out


# --- matrix realization -----------------------------------------------------

def cup(ctx: FieldCtx, i: int, n: int) -> LinOp:
    """Evaluation on strands i, i+1: v01 -> -q, v10 -> 1, else 0."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"cup position {i} out of range for {n} strands")
    cols = {}
    keep_low = (1 << (i - 1)) - 1
    for b in all_indices(n):
        lo = b.mask >> (i - 1) & 1
        hi = b.mask >> i & 1
        if lo == hi:
            continue
        coeff = -ctx.q if (lo, hi) == (0, 1) else ctx.one
        rest = (b.mask & keep_low) | (b.mask >> 2) & ~keep_low
        cols[b] = TensorVector(ctx, n - 2, {BasisIndex(n - 2, rest): coeff})
    return LinOp(ctx, n, n - 2, cols)


def cap(ctx: FieldCtx, i: int, n: int) -> LinOp:
    """Coevaluation into strands i, i+1 of n: 1 -> q^-1 v10 - v01."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"cap position {i} out of range for {n} strands")
    cols = {}
    keep_low = (1 << (i - 1)) - 1
    qinv = ctx.q_power(-1)
    for b in all_indices(n - 2):
        base = (b.mask & keep_low) | (b.mask & ~keep_low) << 2
        with10 = base | 1 << (i - 1)
        with01 = base | 1 << i
        cols[b] = TensorVector(
            ctx,
            n,
            {BasisIndex(n, with10): qinv, BasisIndex(n, with01): -ctx.one},
        )
    return LinOp(ctx, n - 2, n, cols)


def e_op(ctx: FieldCtx, i: int, n: int) -> LinOp:
    """The TL generator on strands i, i+1: cap after cup."""
    return cap(ctx, i, n) * cup(ctx, i, n)


def _cup_signed(ctx, i, n):
    c = cup(ctx, i, n)
    return c if i % 2 else -c


def _cap_signed(ctx, i, n):
    c = cap(ctx, i, n)
    return c if i % 2 else -c


def diagram_to_matrix(ctx: FieldCtx, d: TLDiagram) -> LinOp:
    """Realize one diagram through its cups-then-caps factorization.

    Uses the alternating-sign cup/cap variants internally so the result
    does not depend on the factorization chosen; the public cup/cap maps
    are untouched.
    """
    partner = d._partner()
    # peel nested cups off the bottom row
    remaining = list(range(1, d.n_bottom + 1))
    op = LinOp.identity(ctx, d.n_bottom)
    scale = ctx.one
    while True:
        hit = None
        for pos in range(len(remaining) - 1):
            j, j2 = remaining[pos], remaining[pos + 1]
            if partner.get(("b", j)) == ("b", j2):
                hit = pos
                break
        if hit is None:
            break
        op = _cup_signed(ctx, hit + 1, len(remaining)) * op
        del remaining[hit : hit + 2]
    # peel nested caps off the top row, recording insertion positions
    rem_top = list(range(1, d.n_top + 1))
    inserts = []
    while True:
        hit = None
        for pos in range(len(rem_top) - 1):
            j, j2 = rem_top[pos], rem_top[pos + 1]
            if partner.get(("t", j)) == ("t", j2):
                hit = pos
                break
        if hit is None:
            break
        inserts.append((hit + 1, len(rem_top)))
        del rem_top[hit : hit + 2]
    for pos, size in reversed(inserts):
        op = _cap_signed(ctx, pos, size) * op
    if d.loops_removed:
        scale = ctx.loop_value ** d.loops_removed
    return op * scale if scale != ctx.one else op


def tl_to_matrix(ctx: FieldCtx, el: TLElement) -> LinOp:
    out = LinOp.zero(ctx, el.n_bottom, el.n_top)
    for d, c in el.terms.items():
        out = out + diagram_to_matrix(ctx, d) * c
    return out


# --- Jones-Wenzl projections -------------------------------------------------

def jw_recursive(ctx: FieldCtx, n: int) -> TLElement:
    """f_n by the recursion f_(k+1) = f_k x 1 - ([k]/[k+1]) f_k e_k f_k."""
    assert n >= 1
    f = TLElement.identity(ctx, 1)
    for k in range(1, n):
        if not ctx.qint(k + 1):
            raise JWUndefined(
                f"recursion for f_{k + 1} divides by [{k + 1}] = 0"
            )
        ratio = ctx.qint(k) / ctx.qint(k + 1)
        lift = f.tensor_identity(1)
        ek = TLElement.e(ctx, k, k + 1)
        f = lift - tl_compose(lift, tl_compose(ek, lift)) * ratio
    return f


def jw_closed(ctx: FieldCtx, n: int) -> LinOp:
    """f_n from the closed form rho_S -> q^(kn-(k^2-k)/2-sum S) .
    ([n-k]! [k]!/[n]!) (F^k x_bottom / [k]!), fusing the factorials so the
    lone vanishing factor cancels where it can.

    Finite for n <= p-1 and n = 2p-1; raises SingularRatio inside the
    window p <= n <= 2p-2 where the projection does not exist.
    """
    assert n >= 1
    lowered = {}
    for k in range(0, n + 1):
        ratio = QFactProduct.from_factorials(num=(n - k, k), den=(n,))
        scalar = ctx.eval_ratio(ratio)
        if ctx.qfact(k):
            col = f_power(ctx, k, n).column(x_bottom(n))
            lowered[k] = col * (ctx.qfact(k).inv() * scalar)
        else:
            # rebuild F^k x_bottom with its vanishing [k]! stripped off
            base = k + k * (k - 1) // 2
            terms = {}
            for occ in combinations(range(1, n + 1), k):
                mask = 0
                for v in occ:
                    mask |= 1 << (v - 1)
                terms[BasisIndex(n, mask)] = ctx.q_power(base - sum(occ)) * scalar
            lowered[k] = TensorVector(ctx, n, terms)
    cols = {}
    for b in all_indices(n):
        k = b.weight
        coeff = ctx.q_power(k * n - (k * k - k) // 2 - sum(b.occupancy))
        cols[b] = lowered[k] * coeff
    return LinOp(ctx, n, n, cols)


# --- rotation -----------------------------------------------------------------

def rotation(ctx: FieldCtx, f: LinOp) -> LinOp:
    """One clockwise click of a square operator on n strands:
    (cup x id^n) (id x f x id) (id^n x cap)."""
    assert f.z_in == f.z_out, "rotation needs a square operator"
    n = f.z_in
    one = LinOp.identity(ctx, 1)
    mid = one.tensor(f).tensor(one)
    return cup(ctx, 1, n + 2) * mid * cap(ctx, n + 1, n + 2)
