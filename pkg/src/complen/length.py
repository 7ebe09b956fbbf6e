"""Nested spans of words, difference sequences, and length search.

Two evaluation modes exist for a reason. The general mode follows the
defining recursion Lin_k = Lin_{k-1} + sum of product spans and stops only
when the span equals the subalgebra generated by S (a plateau is NOT a
stopping criterion for arbitrary algebras). The descending mode uses the
one-sided recursion Lin_{m+1} = Lin_m + Lin_m*S + S*Lin_m and stops at the
first plateau; both steps are only valid on algebras carrying a descending
certificate, so the mode refuses to run without one unless overridden.

The descending mode is incremental: span rows are kept in forward-reduced
echelon form and never mutated after insertion, so every stored row lies in
the span of the level at which it was inserted. Products of rows inserted at
earlier levels with S were already taken then, hence each level multiplies
only the newly inserted rows against a basis of span(S), in both orders.
"""

from __future__ import annotations

import itertools
import os
import random
from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Iterator, Optional, Sequence

from .algebra import AlgebraTable, Element, product_span, subalgebra_closure
from .checkers import validate_report
from .errors import CostCapExceeded, InfiniteField, ModeUnjustified
from .fields import Field
from .linalg import Subspace, gaussian_binomial

DEFAULT_COST_CAP = 10**7
GENERAL_MAX_K_FACTOR = 2


def cost_cap() -> int:
    return int(os.environ.get("COMPLEN_COST_CAP", DEFAULT_COST_CAP))


@dataclass
class LengthReport:
    d: tuple
    length: int
    generating: bool
    spans: tuple
    mode: str
    truncated: bool = False

    def as_dict(self) -> dict:
        return {
            "d": list(self.d),
            "length": self.length,
            "generating": self.generating,
            "mode": self.mode,
            "truncated": self.truncated,
            "dims": [s.dim for s in self.spans],
        }


@dataclass
class SearchResult:
    best_length: int
    witness: Optional[Subspace]
    enumerated: int
    mode: str
    exact: bool
    stats: dict = dc_field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {
            "best_length": self.best_length,
            "enumerated": self.enumerated,
            "mode": self.mode,
            "exact": self.exact,
            "witness": None,
            "stats": {k: v for k, v in self.stats.items() if k != "d_census"},
        }
        if "d_census" in self.stats:
            out["stats"]["d_census"] = {
                " ".join(map(str, d)): c
                for d, c in sorted(self.stats["d_census"].items())
            }
        if self.witness is not None:
            f = self.witness.field
            out["witness"] = [[f.format(x) for x in row] for row in self.witness.rows]
        return out


def _trim(d: Sequence[int]) -> tuple:
    last = 0
    for k, x in enumerate(d):
        if x != 0:
            last = k
    return tuple(d[: last + 1])


def has_descending_certificate(a: AlgebraTable) -> bool:
    return bool({"descending-flexible", "descending-alternative"} & a.certificates)


def _lin0(a: AlgebraTable) -> Subspace:
    e = a.unit_element()
    s = Subspace.zero(a.field, a.dim)
    if e is not None:
        s = s.insert(e)
    return s


def _general_spans(a: AlgebraTable, s: Sequence[Element], max_k: int):
    lin0 = _lin0(a)
    lin1 = lin0
    for v in s:
        lin1 = lin1.insert(v)
    target = subalgebra_closure(a, s)
    for row in lin0.rows:
        target = target.insert(row)
    spans = [lin0, lin1]
    while spans[-1] != target and len(spans) - 1 < max_k:
        k = len(spans)
        acc = spans[k - 1]
        for i in range(1, k):
            acc = acc.sum(product_span(a, spans[i], spans[k - i]))
        spans.append(acc)
    return spans, spans[-1] != target


class _EchelonState:
    """Forward-reduced echelon rows over an arbitrary field; rows immutable."""

    __slots__ = ("field", "dim", "piv", "zero")

    def __init__(self, field: Field, dim: int):
        self.field = field
        self.dim = dim
        self.piv = {}  # leading column -> normalized row
        self.zero = field.zero()

    def insert(self, v: Sequence) -> Optional[tuple]:
        f = self.field
        zero = self.zero
        v = list(v)
        for c in range(self.dim):
            x = v[c]
            if x == zero:
                continue
            row = self.piv.get(c)
            if row is None:
                inv = f.inv(x)
                norm = tuple(
                    f.mul(inv, y) if k >= c else zero for k, y in enumerate(v)
                )
                self.piv[c] = norm
                return norm
            for k in range(c, self.dim):
                if row[k] != zero:
                    v[k] = f.sub(v[k], f.mul(x, row[k]))
        return None

    def rank(self) -> int:
        return len(self.piv)

    def rows(self) -> list:
        return [self.piv[c] for c in sorted(self.piv)]


def _descending_spans(a: AlgebraTable, s: Sequence[Element], max_k: int):
    st = _EchelonState(a.field, a.dim)
    e = a.unit_element()
    if e is not None:
        st.insert(e)
    lin0_rows = st.rows()
    new = []
    for v in s:
        r = st.insert(v)
        if r is not None:
            new.append(r)
    # product partners must span Lin(S) itself, not Lin(S) reduced modulo the
    # unit, so S gets its own reduction
    s_state = _EchelonState(a.field, a.dim)
    for v in s:
        s_state.insert(v)
    s_rows = s_state.rows()
    spans = [
        Subspace.span(a.field, a.dim, lin0_rows),
        Subspace.span(a.field, a.dim, st.rows()),
    ]
    while new and len(spans) - 1 < max_k:
        fresh = []
        for r in new:
            for srow in s_rows:
                for prod in (a.multiply(r, srow), a.multiply(srow, r)):
                    added = st.insert(prod)
                    if added is not None:
                        fresh.append(added)
        if not fresh:
            break
        spans.append(Subspace.span(a.field, a.dim, st.rows()))
        new = fresh
    return spans


def lin_spans(
    a: AlgebraTable,
    s: Sequence[Element],
    mode: str = "general",
    max_k: Optional[int] = None,
    assume_descending: bool = False,
) -> LengthReport:
    """Nested spans and difference sequence of a set of elements.

    mode "descending" requires a cached descending certificate on the algebra
    (or assume_descending=True to override at the caller's own risk).
    """
    if mode not in ("general", "descending"):
        raise ModeUnjustified(f"unknown mode {mode!r}")
    if max_k is None:
        max_k = GENERAL_MAX_K_FACTOR * a.dim
    truncated = False
    if mode == "descending":
        if not (assume_descending or has_descending_certificate(a)):
            raise ModeUnjustified(
                "descending mode needs a descending certificate on the algebra; "
                "run check_descending first or pass assume_descending"
            )
        spans = _descending_spans(a, s, max_k)
    else:
        spans, truncated = _general_spans(a, s, max_k)
    dims = [sp.dim for sp in spans]
    d = _trim([dims[0]] + [dims[k] - dims[k - 1] for k in range(1, len(dims))])
    length = max((k for k, x in enumerate(d) if x != 0), default=0)
    return LengthReport(
        d=d,
        length=length,
        generating=sum(d) == a.dim,
        spans=tuple(spans),
        mode=mode,
        truncated=truncated,
    )


def length_of_set(
    a: AlgebraTable, s: Sequence[Element], assume_descending: bool = False
) -> LengthReport:
    """Length report for one set, under the strongest justified mode."""
    if assume_descending or has_descending_certificate(a):
        return lin_spans(a, s, mode="descending", assume_descending=assume_descending)
    return lin_spans(a, s, mode="general")


def count_subspaces(field: Field, ambient: int, dims: Iterable[int]) -> int:
    q = field.cardinality()
    return sum(gaussian_binomial(ambient, k, q) for k in dims)


def enumerate_subspaces(field: Field, ambient: int, k: int) -> Iterator[Subspace]:
    """All k-dimensional subspaces, each exactly once, in a fixed order.

    Order: pivot-column combinations lexicographically, then free entries in
    row-major position order running through the field's enumeration order.
    Rows come out directly in reduced echelon form.
    """
    if not field.is_finite():
        raise InfiniteField("subspace enumeration needs a finite field")
    if k == 0:
        yield Subspace.zero(field, ambient)
        return
    if k > ambient:
        return
    elems = list(field.enumerate())
    zero, one = field.zero(), field.one()
    for pivots in itertools.combinations(range(ambient), k):
        pivset = set(pivots)
        cells = [
            (r, c)
            for r in range(k)
            for c in range(pivots[r] + 1, ambient)
            if c not in pivset
        ]
        base = [[zero] * ambient for _ in range(k)]
        for r, p in enumerate(pivots):
            base[r][p] = one
        for fill in itertools.product(elems, repeat=len(cells)):
            rows = [list(row) for row in base]
            for (r, c), val in zip(cells, fill):
                rows[r][c] = val
            yield Subspace(field, ambient, tuple(tuple(r) for r in rows), tuple(pivots))


def _validate_census(a: AlgebraTable, census: Counter) -> list:
    """Difference-sequence laws for each distinct generating d observed."""
    kinds = [
        k for k in ("flexible", "alternative") if f"descending-{k}" in a.certificates
    ]
    unital = a.is_unital()
    problems = []
    for d, count in sorted(census.items()):
        length = max((k for k, x in enumerate(d) if x != 0), default=0)
        errs = validate_report(d, length, True, a.dim, unital, kinds=kinds)
        for e in errs:
            problems.append(f"d={d} (x{count}): {e}")
    return problems


# --- fast lane for the two-element field -------------------------------------


def _gf2_product_tables(a: AlgebraTable):
    """Full product lookup PROD[x][y] = x*y on bitmask elements, plus transpose."""
    f = a.field
    one = f.one()
    dim = a.dim
    size = 1 << dim

    def mask(vec) -> int:
        m = 0
        for i, x in enumerate(vec):
            if x == one:
                m |= 1 << i
        return m

    bm = [[mask(a.table[i][j]) for j in range(dim)] for i in range(dim)]
    rows = []
    for i in range(dim):
        row = [0] * size
        for y in range(1, size):
            low = y & -y
            row[y] = row[y ^ low] ^ bm[i][low.bit_length() - 1]
        rows.append(row)
    prod = [[0] * size]
    for x in range(1, size):
        low = x & -x
        src = prod[x ^ low]
        r = rows[low.bit_length() - 1]
        prod.append([src[y] ^ r[y] for y in range(size)])
    tprod = [[prod[x][y] for x in range(size)] for y in range(size)]
    return prod, tprod


def _gf2_search(a: AlgebraTable, collect: bool):
    """Exhaustive search over all nonzero subspaces, elements as bitmasks.

    Valid only under a descending certificate: the per-subspace iteration is
    the descending recursion with first-plateau stop.
    """
    f = a.field
    dim = a.dim
    prod, tprod = _gf2_product_tables(a)
    unit_mask = 0
    e = a.unit_element()
    one = f.one()
    if e is not None:
        for i, x in enumerate(e):
            if x == one:
                unit_mask |= 1 << i
    d0 = 1 if unit_mask else 0

    best_len = -1
    best_rows: tuple = ()
    census: Counter = Counter()
    enumerated = 0
    generating_count = 0

    for k in range(1, dim + 1):
        for pivots in itertools.combinations(range(dim), k):
            pivset = set(pivots)
            cells = [
                (r, c)
                for r in range(k)
                for c in range(pivots[r] + 1, dim)
                if c not in pivset
            ]
            ncells = len(cells)
            base_rows = [1 << p for p in pivots]
            for fill in range(1 << ncells):
                s_rows = list(base_rows)
                if fill:
                    for idx in range(ncells):
                        if fill >> idx & 1:
                            r, c = cells[idx]
                            s_rows[r] |= 1 << c
                enumerated += 1

                # forward echelon keyed by most-significant bit
                red = [0] * dim
                if unit_mask:
                    v = unit_mask
                    while v:
                        p = v.bit_length() - 1
                        w = red[p]
                        if w == 0:
                            red[p] = v
                            break
                        v ^= w
                rank = d0
                new = []
                for v in s_rows:
                    while v:
                        p = v.bit_length() - 1
                        w = red[p]
                        if w == 0:
                            red[p] = v
                            new.append(v)
                            rank += 1
                            break
                        v ^= w
                d = [d0, rank - d0]
                while new and rank < dim:
                    fresh = []
                    for r in s_rows:
                        pr = prod[r]
                        tr = tprod[r]
                        for x in new:
                            for v in (pr[x], tr[x]):
                                while v:
                                    p = v.bit_length() - 1
                                    w = red[p]
                                    if w == 0:
                                        red[p] = v
                                        fresh.append(v)
                                        rank += 1
                                        break
                                    v ^= w
                    if not fresh:
                        break
                    d.append(len(fresh))
                    new = fresh
                if rank == dim:
                    generating_count += 1
                    dt = _trim(d)
                    if collect:
                        census[dt] += 1
                    length = max((i for i, x in enumerate(dt) if x != 0), default=0)
                    if length > best_len:
                        best_len = length
                        best_rows = tuple(s_rows)
    return (best_len, best_rows), enumerated, generating_count, census


def _mask_to_vec(f: Field, dim: int, m: int) -> tuple:
    one, zero = f.one(), f.zero()
    return tuple(one if m >> i & 1 else zero for i in range(dim))


def length_of_algebra(
    a: AlgebraTable,
    mode: str = "exhaustive",
    seed: int = 0,
    budget: int = 2000,
    cap: Optional[int] = None,
    collect: bool = True,
) -> SearchResult:
    """Maximize l(S) over subspaces; exhaustive mode gives the exact value.

    Exhaustive mode enumerates every nonzero subspace (the length of a set
    depends only on its span) and needs a finite field plus an enumeration
    count within the cost cap. Random mode samples subspaces and yields a
    lower bound marked exact=False.
    """
    if cap is None:
        cap = cost_cap()
    if mode == "exhaustive":
        if not a.field.is_finite():
            raise InfiniteField("exhaustive search needs a finite field")
        total = count_subspaces(a.field, a.dim, range(1, a.dim + 1))
        if total > cap:
            raise CostCapExceeded(
                f"enumeration of {total} subspaces exceeds the cost cap {cap}",
                estimate=total,
            )
        if a.field.cardinality() == 2 and has_descending_certificate(a):
            (best_len, witness_rows), enumerated, gen_count, census = _gf2_search(
                a, collect
            )
            witness = (
                Subspace.span(
                    a.field,
                    a.dim,
                    [_mask_to_vec(a.field, a.dim, m) for m in witness_rows],
                )
                if best_len >= 0
                else None
            )
            stats = {"generating": gen_count}
            if collect:
                stats["d_census"] = dict(census)
                stats["violations"] = _validate_census(a, census)
            return SearchResult(
                best_length=max(best_len, 0),
                witness=witness,
                enumerated=enumerated,
                mode="exhaustive",
                exact=True,
                stats=stats,
            )
        census: Counter = Counter()
        enumerated = 0
        gen_count = 0
        best_len = -1
        witness = None
        use_desc = has_descending_certificate(a)
        for k in range(1, a.dim + 1):
            for sub in enumerate_subspaces(a.field, a.dim, k):
                enumerated += 1
                rep = lin_spans(
                    a, sub.rows, mode="descending" if use_desc else "general"
                )
                if not rep.generating:
                    continue
                gen_count += 1
                if collect:
                    census[rep.d] += 1
                if rep.length > best_len:
                    best_len = rep.length
                    witness = sub
        stats = {"generating": gen_count}
        if collect:
            stats["d_census"] = dict(census)
            stats["violations"] = _validate_census(a, census)
        return SearchResult(
            best_length=max(best_len, 0),
            witness=witness,
            enumerated=enumerated,
            mode="exhaustive",
            exact=True,
            stats=stats,
        )

    if mode != "random":
        raise ModeUnjustified(f"unknown search mode {mode!r}")
    rng = random.Random(seed)
    use_desc = has_descending_certificate(a)
    best_len = -1
    witness = None
    census = Counter()
    gen_count = 0
    for _ in range(budget):
        sub = _random_subspace(a.field, a.dim, rng)
        rep = lin_spans(a, sub.rows, mode="descending" if use_desc else "general")
        if not rep.generating:
            continue
        gen_count += 1
        if collect:
            census[rep.d] += 1
        if rep.length > best_len:
            best_len = rep.length
            witness = sub
    stats = {"generating": gen_count}
    if collect:
        stats["d_census"] = dict(census)
        stats["violations"] = _validate_census(a, census)
    return SearchResult(
        best_length=max(best_len, 0),
        witness=witness,
        enumerated=budget,
        mode=f"random(seed={seed},budget={budget})",
        exact=False,
        stats=stats,
    )


def _random_subspace(field: Field, ambient: int, rng: random.Random) -> Subspace:
    """Uniform dimension, then a uniform reduced echelon form of that dimension.

    Finite fields: pivot sets weighted by how many echelon forms they carry,
    free entries uniform. Rationals: uniform pivot set, small integer entries.
    """
    k = rng.randint(1, ambient)
    combos = list(itertools.combinations(range(ambient), k))
    zero, one = field.zero(), field.one()

    def cellcount(pivots):
        pivset = set(pivots)
        return sum(
            1
            for r in range(k)
            for c in range(pivots[r] + 1, ambient)
            if c not in pivset
        )

    if field.is_finite():
        q = field.cardinality()
        weights = [q ** cellcount(p) for p in combos]
        pivots = rng.choices(combos, weights=weights)[0]
        elems = list(field.enumerate())

        def pick():
            return elems[rng.randrange(q)]

    else:
        from fractions import Fraction

        pivots = combos[rng.randrange(len(combos))]

        def pick():
            return Fraction(rng.randint(-3, 3))

    pivset = set(pivots)
    rows = []
    for r in range(k):
        row = [zero] * ambient
        row[pivots[r]] = one
        for c in range(pivots[r] + 1, ambient):
            if c not in pivset:
                row[c] = pick()
        rows.append(tuple(row))
    return Subspace(field, ambient, tuple(rows), tuple(pivots))
