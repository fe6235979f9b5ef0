"""Gluing data for saddle connections of multiplicity p.

A configuration is a cyclic word of construction blocks.  For saddle
connections joining two distinct zeros every block is a slit.  For loops
the blocks are figure-eights, two-holes and cylinders, and the zeros created
by the gluing sit at the interfaces between consecutive blocks: interface j
lies between block j and block j+1 (indices mod N).

Cone angles are tracked in units of pi.  A cylinder boundary contributes 1,
a hole of order b contributes 2b+3 and a figure-eight of order a contributes
2a+4, all of it to one zero because a figure-eight joins the interfaces on
its two sides.  A zero collecting u units has order u/2 - 1.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, replace
from typing import Iterator, Sequence

from .strata import (Component, StratumSignature, classify_components,
                     format_stratum, minimal_stratum, two_zero_stratum)


class BlockKind(enum.Enum):
    SLIT = "slit"
    FIGURE_EIGHT = "figure_eight"
    TWO_HOLE = "two_hole"
    CYLINDER = "cylinder"


_KIND_RANK = {BlockKind.SLIT: 0, BlockKind.FIGURE_EIGHT: 1, BlockKind.TWO_HOLE: 2, BlockKind.CYLINDER: 3}


class ConfigKind(enum.Enum):
    DISTINCT = "distinct_zeros"
    LOOP = "loop"


@dataclass(frozen=True)
class ConstructionBlock:
    kind: BlockKind
    parts: tuple[int, int] = (0, 0)
    substratum: StratumSignature | None = None
    carried: tuple[int, ...] = ()
    component_choice: Component | None = None

    def __post_init__(self):
        if self.kind is BlockKind.CYLINDER:
            if self.parts != (0, 0) or self.substratum is not None or self.carried:
                raise ValueError("a cylinder has no parts and no substratum")
            return
        if min(self.parts) < 0:
            raise ValueError(f"negative part in {self.parts}")
        if self.substratum is None:
            raise ValueError(f"{self.kind.value} block needs a substratum")

    @property
    def is_piece(self) -> bool:
        return self.kind is not BlockKind.CYLINDER

    @property
    def merged_order(self) -> int:
        """a' + a'' for slits and figure-eights."""
        return self.parts[0] + self.parts[1]

    @property
    def weight(self) -> int:
        """(a+1) for slits and figure-eights, (b'+1)(b''+1) for two-holes."""
        if self.kind is BlockKind.TWO_HOLE:
            return (self.parts[0] + 1) * (self.parts[1] + 1)
        if self.kind is BlockKind.CYLINDER:
            return 1
        return self.merged_order + 1

    def key(self) -> tuple:
        comp = self.component_choice.value if self.component_choice else ""
        return (_KIND_RANK[self.kind], self.parts, self.carried, comp)

    def swapped(self) -> "ConstructionBlock":
        if self.kind is BlockKind.CYLINDER:
            return self
        return replace(self, parts=(self.parts[1], self.parts[0]))

    def to_dict(self) -> dict:
        out = {"kind": self.kind.value}
        if self.is_piece:
            out["parts"] = list(self.parts)
            out["substratum"] = format_stratum(self.substratum, self.component_choice or Component.WHOLE)
            out["carried"] = list(self.carried)
        return out


def _piece(kind, parts, carried_labels, stratum_orders, labelled=True, component=None):
    carried = tuple(sorted(carried_labels))
    carried_orders = [stratum_orders[i] for i in carried] if labelled else list(carried)
    if kind is BlockKind.TWO_HOLE:
        sub = StratumSignature((parts[0], parts[1], *carried_orders))
    else:
        sub = StratumSignature((parts[0] + parts[1], *carried_orders))
    return ConstructionBlock(kind, tuple(parts), sub, carried, component)


CYLINDER = ConstructionBlock(BlockKind.CYLINDER)


# the gluing chain

@dataclass(frozen=True)
class ChainStructure:
    """Which interfaces share a zero, and the order of each new zero."""
    group_of_interface: tuple[int, ...]
    orders: tuple[int, ...]


def _chain_groups(kinds: Sequence[BlockKind]) -> tuple[list[int], int]:
    n = len(kinds)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for j, k in enumerate(kinds):
        if k is BlockKind.FIGURE_EIGHT:
            a, b = find((j - 1) % n), find(j)
            if a != b:
                parent[b] = a
    ids: dict[int, int] = {}
    group = []
    for j in range(n):
        r = find(j)
        if r not in ids:
            ids[r] = len(ids)
        group.append(ids[r])
    return group, len(ids)


def chain_structure(blocks: Sequence[ConstructionBlock]) -> ChainStructure:
    kinds = [b.kind for b in blocks]
    if not kinds or all(k is BlockKind.FIGURE_EIGHT for k in kinds):
        raise ValueError("a loop gluing needs a two-hole block or a cylinder")
    if any(k is BlockKind.SLIT for k in kinds):
        raise ValueError("slits do not appear in loop gluings")
    n = len(blocks)
    for j in range(n):
        if kinds[j] is BlockKind.CYLINDER and kinds[(j + 1) % n] is BlockKind.CYLINDER and n > 1:
            raise ValueError("two cylinders cannot be adjacent")
    group, n_groups = _chain_groups(kinds)
    units = [0] * n_groups
    for j, b in enumerate(blocks):
        top, bottom = group[j], group[(j - 1) % n]
        if b.kind is BlockKind.FIGURE_EIGHT:
            units[top] += 2 * b.merged_order + 4
        elif b.kind is BlockKind.TWO_HOLE:
            units[top] += 2 * b.parts[0] + 3
            units[bottom] += 2 * b.parts[1] + 3
        else:
            units[top] += 1
            units[bottom] += 1
    for u in units:
        if u % 2:
            raise ValueError("odd cone angle in gluing chain")
    return ChainStructure(tuple(group), tuple(u // 2 - 1 for u in units))


# configurations

@dataclass(frozen=True)
class SymmetryData:
    gamma_order: int
    gamma_minus_order: int

    @property
    def total(self) -> int:
        return self.gamma_order * self.gamma_minus_order


@dataclass(frozen=True)
class Configuration:
    """Gluing datum for one configuration of homologous saddle connections.

    ``interfaces`` holds the endpoint zeros (z1, z2) for distinct zeros and
    the zero at every interface for loops.  Entries are zero labels (indices
    into the stratum) when ``labelled`` and zero orders otherwise; the same
    applies to ``carried`` in each block.
    """
    stratum: StratumSignature
    kind: ConfigKind
    blocks: tuple[ConstructionBlock, ...]
    interfaces: tuple[int, ...]
    labelled: bool = True
    component: Component = Component.WHOLE

    @property
    def p(self) -> int:
        return sum(1 for b in self.blocks if b.is_piece)

    @property
    def q(self) -> int:
        return sum(1 for b in self.blocks if not b.is_piece)

    @property
    def pieces(self) -> list[ConstructionBlock]:
        return [b for b in self.blocks if b.is_piece]

    @property
    def substrata(self) -> list[StratumSignature]:
        return [b.substratum for b in self.pieces]

    def order_of(self, zero: int) -> int:
        return self.stratum.zero_orders[zero] if self.labelled else zero

    @property
    def zero_orders(self) -> tuple[int, ...]:
        """(m1, m2) for distinct zeros; orders of the new zeros for loops."""
        return tuple(self.order_of(z) for z in self.new_zeros)

    @property
    def new_zeros(self) -> tuple[int, ...]:
        if self.kind is ConfigKind.DISTINCT:
            return self.interfaces
        seen = []
        group = chain_structure(self.blocks).group_of_interface
        first = {}
        for j, gid in enumerate(group):
            if gid not in first:
                first[gid] = j
                seen.append(self.interfaces[j])
        return tuple(seen)

    def weight(self) -> int:
        out = 1
        for b in self.pieces:
            out *= b.weight
        return out

    def unlabelled(self) -> "Configuration":
        if not self.labelled:
            return self
        orders = self.stratum.zero_orders
        blocks = tuple(b if not b.is_piece else replace(b, carried=tuple(sorted(orders[i] for i in b.carried)))
                       for b in self.blocks)
        return Configuration(self.stratum, self.kind, blocks,
                             tuple(orders[i] for i in self.interfaces), False, self.component)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "stratum": format_stratum(self.stratum, self.component),
            "labelled": self.labelled,
            "p": self.p,
            "q": self.q,
            "blocks": [b.to_dict() for b in self.blocks],
            "interfaces": list(self.interfaces),
            "zero_orders": list(self.zero_orders),
        }


def _word(c: Configuration) -> tuple:
    if c.kind is ConfigKind.DISTINCT:
        return tuple(b.key() for b in c.blocks)
    return tuple((b.key(), z) for b, z in zip(c.blocks, c.interfaces))


def _rotations(word: tuple) -> list[tuple]:
    return [word[r:] + word[:r] for r in range(len(word))]


def _reversed_config(c: Configuration) -> Configuration:
    n = len(c.blocks)
    blocks = tuple(c.blocks[n - 1 - k].swapped() for k in range(n))
    if c.kind is ConfigKind.DISTINCT:
        interfaces = (c.interfaces[1], c.interfaces[0])
    else:
        interfaces = tuple(c.interfaces[(n - 2 - k) % n] for k in range(n))
    return replace(c, blocks=blocks, interfaces=interfaces)


def _reversal_applies(c: Configuration) -> bool:
    # labelled endpoints of a saddle connection between distinct zeros are
    # distinguishable, so reading backwards is not a symmetry of the datum
    return c.kind is ConfigKind.LOOP or not c.labelled


def symmetry(c: Configuration) -> SymmetryData:
    word = _word(c)
    rots = _rotations(word)
    gamma = sum(1 for w in rots if w == word)
    gamma_minus = 1
    if _reversal_applies(c):
        rev = _reversed_config(c)
        if c.kind is ConfigKind.DISTINCT and rev.interfaces != c.interfaces:
            gamma_minus = 1
        elif word in _rotations(_word(rev)):
            gamma_minus = 2
    return SymmetryData(gamma, gamma_minus)


def canonical(c: Configuration) -> Configuration:
    """Rotate so that the word is lexicographically minimal."""
    best = None
    variants = [c]
    if _reversal_applies(c):
        variants.append(_reversed_config(c))
    for v in variants:
        n = len(v.blocks)
        for r in range(n):
            rc = replace(v, blocks=v.blocks[r:] + v.blocks[:r],
                         interfaces=v.interfaces if v.kind is ConfigKind.DISTINCT
                         else v.interfaces[r:] + v.interfaces[:r])
            k = (rc.interfaces if rc.kind is ConfigKind.DISTINCT else (), _word(rc))
            if best is None or k < best[0]:
                best = (k, rc)
    return best[1]


def is_dominant(c: Configuration) -> bool:
    trivial = {(0,)} if c.kind is ConfigKind.DISTINCT else {(0,), (0, 0)}
    big = sum(1 for s in c.substrata if s.zero_orders not in trivial)
    return big <= 1


class InvalidConfiguration(ValueError):
    pass


def validate(c: Configuration) -> None:
    """Re-derive every identity a configuration must satisfy.

    Raises InvalidConfiguration on the first failure.
    """
    H = c.stratum
    pieces = c.pieces
    if c.labelled:
        used = list(c.new_zeros) + [z for b in pieces for z in b.carried]
        if sorted(used) != list(range(H.n_zeros)):
            raise InvalidConfiguration("zeros of the stratum are not partitioned by the datum")
    else:
        used = list(c.new_zeros) + [m for b in pieces for m in b.carried]
        if sorted(used) != sorted(H.zero_orders):
            raise InvalidConfiguration("zero orders are not partitioned by the datum")
    for b in pieces:
        carried_orders = [c.order_of(z) for z in b.carried]
        if b.kind is BlockKind.TWO_HOLE:
            expect = (b.parts[0], b.parts[1], *carried_orders)
        else:
            expect = (b.merged_order, *carried_orders)
        if sorted(expect) != sorted(b.substratum.zero_orders):
            raise InvalidConfiguration(f"substratum {b.substratum} does not match block data")
    d_sum = sum(s.dimension for s in c.substrata)
    if H.dimension != d_sum + 2 * c.q + 2:
        raise InvalidConfiguration(f"dimension identity fails: {H.dimension} != {d_sum} + 2*{c.q} + 2")
    g_sum = sum(s.genus for s in c.substrata)
    if c.kind is ConfigKind.DISTINCT:
        if c.q or any(b.kind is not BlockKind.SLIT for b in c.blocks):
            raise InvalidConfiguration("distinct-zero data must consist of slits only")
        m1, m2 = c.zero_orders
        if m1 != sum(b.parts[0] for b in pieces) + c.p - 1:
            raise InvalidConfiguration("first endpoint order mismatch")
        if m2 != sum(b.parts[1] for b in pieces) + c.p - 1:
            raise InvalidConfiguration("second endpoint order mismatch")
        if H.genus != g_sum:
            raise InvalidConfiguration("genus identity fails")
        if c.interfaces[0] == c.interfaces[1] and c.labelled:
            raise InvalidConfiguration("endpoints must be distinct zeros")
    else:
        chain = chain_structure(c.blocks)
        for j, gid in enumerate(chain.group_of_interface):
            if c.order_of(c.interfaces[j]) != chain.orders[gid]:
                raise InvalidConfiguration(f"interface {j} carries the wrong zero order")
        groups: dict[int, int] = {}
        for j, gid in enumerate(chain.group_of_interface):
            if groups.setdefault(gid, c.interfaces[j]) != c.interfaces[j]:
                raise InvalidConfiguration("one glued zero received two labels")
        if c.labelled and len(set(groups.values())) != len(groups):
            raise InvalidConfiguration("two glued zeros received the same label")
        total = sum(chain.orders)
        expected = sum(b.parts[0] + b.parts[1] for b in pieces) + 2 * c.p
        if total != expected:
            raise InvalidConfiguration("total order of new zeros is inconsistent")
        if H.genus != g_sum + 1:
            raise InvalidConfiguration("genus identity fails")


# enumeration helpers

def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of total into the given number of parts."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def _distributions(labels: Sequence[int], p: int, dominant_only: bool) -> Iterator[list[list[int]]]:
    if dominant_only:
        for i in range(p if labels else 1):
            out = [[] for _ in range(p)]
            out[i] = list(labels)
            yield out
        return
    for assign in itertools.product(range(p), repeat=len(labels)):
        out = [[] for _ in range(p)]
        for lab, i in zip(labels, assign):
            out[i].append(lab)
        yield out


def _check_component(H: StratumSignature, component: Component) -> None:
    if component is not Component.WHOLE and component not in classify_components(H):
        raise ValueError(f"{format_stratum(H, component)} is not a component of {H}")


# distinct zeros

def dominant_distinct_config(H: StratumSignature, i1: int, i2: int, p: int,
                             component: Component = Component.WHOLE) -> Configuration | None:
    """The configuration with one big substratum and p-1 tori, built directly."""
    _check_indices(H, i1, i2)
    m1, m2 = H.zero_orders[i1], H.zero_orders[i2]
    a1, a2 = m1 + 1 - p, m2 + 1 - p
    if p < 1 or a1 < 0 or a2 < 0:
        return None
    rest = [i for i in range(H.n_zeros) if i not in (i1, i2)]
    blocks = [_piece(BlockKind.SLIT, (a1, a2), rest, H.zero_orders)]
    blocks += [_piece(BlockKind.SLIT, (0, 0), (), H.zero_orders) for _ in range(p - 1)]
    return canonical(Configuration(H, ConfigKind.DISTINCT, tuple(blocks), (i1, i2), True, component))


def _check_indices(H, i1, i2):
    for i in (i1, i2):
        if not 0 <= i < H.n_zeros:
            raise IndexError(f"zero index {i} out of range for {H}")
    if i1 == i2:
        raise ValueError("the two zeros must be distinct")


def enumerate_distinct_zero_configs(H: StratumSignature, i1: int, i2: int, p: int, *,
                                    component: Component = Component.WHOLE,
                                    dominant_only: bool = False) -> list[Configuration]:
    """All labelled slit configurations joining zero i1 to zero i2."""
    _check_indices(H, i1, i2)
    if p < 1:
        raise ValueError("multiplicity must be at least 1")
    _check_component(H, component)
    if component is Component.HYPERELLIPTIC:
        return _hyperelliptic_distinct(H, i1, i2, p)
    orders = H.zero_orders
    m1, m2 = orders[i1], orders[i2]
    a1, a2 = m1 + 1 - p, m2 + 1 - p
    if a1 < 0 or a2 < 0:
        return []
    rest = [i for i in range(H.n_zeros) if i not in (i1, i2)]
    found: dict[tuple, Configuration] = {}
    for top in compositions(a1, p):
        for bot in compositions(a2, p):
            if dominant_only and sum(1 for i in range(p) if top[i] or bot[i]) > 1:
                continue
            for dist in _distributions(rest, p, dominant_only):
                if any((top[i] + bot[i] + sum(orders[z] for z in dist[i])) % 2 for i in range(p)):
                    continue
                blocks = tuple(_piece(BlockKind.SLIT, (top[i], bot[i]), dist[i], orders) for i in range(p))
                c = Configuration(H, ConfigKind.DISTINCT, blocks, (i1, i2), True, component)
                if dominant_only and not is_dominant(c):
                    continue
                c = canonical(c)
                found.setdefault(_word(c), c)
    return sorted(found.values(), key=_word)


def _hyperelliptic_distinct(H, i1, i2, p):
    g = H.genus
    if H.zero_orders != (g - 1, g - 1):
        raise ValueError(f"hyperelliptic distinct-zero data needs H(g-1,g-1), got {H}")
    if p >= 3:
        return []
    hyp = Component.HYPERELLIPTIC
    if p == 1:
        block = ConstructionBlock(BlockKind.SLIT, (g - 1, g - 1), minimal_stratum(g), (), hyp)
        return [Configuration(H, ConfigKind.DISTINCT, (block,), (g - 1, g - 1), False, hyp)]
    out = []
    for g1 in range(1, g // 2 + 1):
        g2 = g - g1
        blocks = tuple(ConstructionBlock(BlockKind.SLIT, (k - 1, k - 1), minimal_stratum(k), (), hyp)
                       for k in (g1, g2))
        out.append(Configuration(H, ConfigKind.DISTINCT, blocks, (g - 1, g - 1), False, hyp))
    return out


# loops

@dataclass(frozen=True)
class _Pattern:
    kinds: tuple[BlockKind, ...]
    group: tuple[int, ...]
    n_groups: int
    const: tuple[int, ...]            # order contributed by fixed units, per group
    slots: tuple[tuple[tuple[int, int], ...], ...]   # per group: (block index, side)


def loop_patterns(p: int) -> Iterator[_Pattern]:
    """Block-kind words with p pieces and non-adjacent cylinders."""
    for q in range(p + 1):
        for piece_kinds in itertools.product((BlockKind.FIGURE_EIGHT, BlockKind.TWO_HOLE), repeat=p):
            for gaps in itertools.combinations(range(p), q):
                kinds = []
                for i, k in enumerate(piece_kinds):
                    kinds.append(k)
                    if i in gaps:
                        kinds.append(BlockKind.CYLINDER)
                if all(k is BlockKind.FIGURE_EIGHT for k in kinds):
                    continue
                group, n_groups = _chain_groups(kinds)
                n = len(kinds)
                units = [0] * n_groups
                slots: list[list] = [[] for _ in range(n_groups)]
                for j, k in enumerate(kinds):
                    top, bottom = group[j], group[(j - 1) % n]
                    if k is BlockKind.FIGURE_EIGHT:
                        units[top] += 4
                        slots[top].append((j, 2))
                    elif k is BlockKind.TWO_HOLE:
                        units[top] += 3
                        units[bottom] += 3
                        slots[top].append((j, 0))
                        slots[bottom].append((j, 1))
                    else:
                        units[top] += 1
                        units[bottom] += 1
                yield _Pattern(tuple(kinds), tuple(group), n_groups,
                               tuple(u // 2 - 1 for u in units),
                               tuple(tuple(s) for s in slots))


def enumerate_loop_configs(H: StratumSignature, m_index: int | None, p: int, *,
                           component: Component = Component.WHOLE,
                           dominant_only: bool = False) -> list[Configuration]:
    """All labelled loop configurations of multiplicity p.

    With ``m_index`` given, only configurations whose loops start at that
    zero are returned.
    """
    if p < 1:
        raise ValueError("multiplicity must be at least 1")
    if m_index is not None and not 0 <= m_index < H.n_zeros:
        raise IndexError(f"zero index {m_index} out of range for {H}")
    _check_component(H, component)
    if component is Component.HYPERELLIPTIC:
        return _hyperelliptic_loops(H, p)
    orders = H.zero_orders
    found: dict[tuple, Configuration] = {}
    for pat in loop_patterns(p):
        piece_idx = [j for j, k in enumerate(pat.kinds) if k is not BlockKind.CYLINDER]
        for labels in itertools.permutations(range(H.n_zeros), pat.n_groups):
            if m_index is not None and m_index not in labels:
                continue
            need = [orders[labels[gid]] - pat.const[gid] for gid in range(pat.n_groups)]
            if any(r < 0 or (r > 0 and not pat.slots[gid]) for gid, r in enumerate(need)):
                continue
            rest = [i for i in range(H.n_zeros) if i not in labels]
            per_group = [list(compositions(need[gid], len(pat.slots[gid]))) for gid in range(pat.n_groups)]
            for choice in itertools.product(*per_group):
                side_val: dict[tuple[int, int], int] = {}
                for gid, comp in enumerate(choice):
                    for slot, v in zip(pat.slots[gid], comp):
                        side_val[slot] = v
                if dominant_only and len({j for (j, _), v in side_val.items() if v}) > 1:
                    continue
                fig_idx = [j for j in piece_idx if pat.kinds[j] is BlockKind.FIGURE_EIGHT]
                splits = [range(side_val[(j, 2)] + 1) for j in fig_idx]
                for split in itertools.product(*splits):
                    parts = {}
                    for j, a1 in zip(fig_idx, split):
                        parts[j] = (a1, side_val[(j, 2)] - a1)
                    for j in piece_idx:
                        if pat.kinds[j] is BlockKind.TWO_HOLE:
                            parts[j] = (side_val[(j, 0)], side_val[(j, 1)])
                    for dist in _distributions(rest, p, dominant_only):
                        carried = dict(zip(piece_idx, dist))
                        if any((sum(parts[j]) + sum(orders[z] for z in carried[j])) % 2 for j in piece_idx):
                            continue
                        blocks = tuple(CYLINDER if k is BlockKind.CYLINDER
                                       else _piece(k, parts[j], carried[j], orders)
                                       for j, k in enumerate(pat.kinds))
                        interfaces = tuple(labels[pat.group[j]] for j in range(len(pat.kinds)))
                        c = Configuration(H, ConfigKind.LOOP, blocks, interfaces, True, component)
                        if dominant_only and not is_dominant(c):
                            continue
                        c = canonical(c)
                        found.setdefault(_word(c), c)
    return sorted(found.values(), key=_word)


def loop_multiplicity_one_configs(H: StratumSignature, m_index: int, mode: str,
                                  other_index: int | None = None,
                                  component: Component = Component.WHOLE) -> list[Configuration]:
    """The three shapes of a single loop at zero m_index, built without search.

    mode is 'no_cylinder' (one two-hole), 'cylinder_same_zero' (figure-eight
    plus cylinder) or 'cylinder_other_zero' (two-hole plus cylinder whose
    far boundary lies on zero other_index).
    """
    orders = H.zero_orders
    m = orders[m_index]
    out: dict[tuple, Configuration] = {}
    if mode == "no_cylinder":
        rest = [i for i in range(H.n_zeros) if i != m_index]
        for b1 in range(m - 1):
            block = _piece(BlockKind.TWO_HOLE, (b1, m - 2 - b1), rest, orders)
            c = canonical(Configuration(H, ConfigKind.LOOP, (block,), (m_index,), True, component))
            out.setdefault(_word(c), c)
    elif mode == "cylinder_same_zero":
        rest = [i for i in range(H.n_zeros) if i != m_index]
        for a1 in range(m - 1):
            block = _piece(BlockKind.FIGURE_EIGHT, (a1, m - 2 - a1), rest, orders)
            c = canonical(Configuration(H, ConfigKind.LOOP, (block, CYLINDER), (m_index, m_index), True, component))
            out.setdefault(_word(c), c)
    elif mode == "cylinder_other_zero":
        if other_index is None or other_index == m_index:
            raise ValueError("cylinder_other_zero needs a second, different zero")
        m2 = orders[other_index]
        if m < 1 or m2 < 1:
            return []
        rest = [i for i in range(H.n_zeros) if i not in (m_index, other_index)]
        block = _piece(BlockKind.TWO_HOLE, (m - 1, m2 - 1), rest, orders)
        c = canonical(Configuration(H, ConfigKind.LOOP, (block, CYLINDER), (m_index, other_index), True, component))
        out[_word(c)] = c
    else:
        raise ValueError(f"unknown loop shape {mode!r}")
    return list(out.values())


def dominant_loop_config(H: StratumSignature, labels: Sequence[int], p: int,
                         component: Component = Component.WHOLE) -> Configuration:
    """Alternating two-holes and cylinders with one big piece (principal shape).

    labels gives the zero at each of the 2p interfaces; the big piece is the
    first one and carries every other zero.
    """
    if len(labels) != 2 * p:
        raise ValueError("need one label per interface")
    orders = H.zero_orders
    rest = [i for i in range(H.n_zeros) if i not in labels]
    blocks = []
    for i in range(p):
        bt = orders[labels[2 * i]] - 1
        bb = orders[labels[(2 * i - 1) % (2 * p)]] - 1
        blocks.append(_piece(BlockKind.TWO_HOLE, (bt, bb), rest if i == 0 else (), orders))
        blocks.append(CYLINDER)
    return canonical(Configuration(H, ConfigKind.LOOP, tuple(blocks), tuple(labels), True, component))


def _hyperelliptic_loops(H, p):
    g = H.genus
    hyp = Component.HYPERELLIPTIC
    if p >= 3:
        return []
    if H.zero_orders == (g - 1, g - 1):
        if p == 1:
            block = ConstructionBlock(BlockKind.TWO_HOLE, (g - 2, g - 2), two_zero_stratum(g - 1), (), hyp)
            return [Configuration(H, ConfigKind.LOOP, (block, CYLINDER), (g - 1, g - 1), False, hyp)]
        out = []
        for g1 in range(1, (g - 1) // 2 + 1):
            g2 = g - 1 - g1
            blocks = tuple(ConstructionBlock(BlockKind.TWO_HOLE, (k - 1, k - 1), two_zero_stratum(k), (), hyp)
                           for k in (g1, g2))
            out.append(Configuration(H, ConfigKind.LOOP, blocks, (g - 1, g - 1), False, hyp))
        return out
    if H.zero_orders == (2 * g - 2,):
        if p == 1:
            th = ConstructionBlock(BlockKind.TWO_HOLE, (g - 2, g - 2), two_zero_stratum(g - 1), (), hyp)
            f8 = ConstructionBlock(BlockKind.FIGURE_EIGHT, (g - 2, g - 2), minimal_stratum(g - 1), (), hyp)
            return [Configuration(H, ConfigKind.LOOP, (th,), (2 * g - 2,), False, hyp),
                    Configuration(H, ConfigKind.LOOP, (f8, CYLINDER), (2 * g - 2, 2 * g - 2), False, hyp)]
        out = []
        for g1 in range(1, g - 1):
            g2 = g - 1 - g1
            f8 = ConstructionBlock(BlockKind.FIGURE_EIGHT, (g1 - 1, g1 - 1), minimal_stratum(g1), (), hyp)
            th = ConstructionBlock(BlockKind.TWO_HOLE, (g2 - 1, g2 - 1), two_zero_stratum(g2), (), hyp)
            out.append(Configuration(H, ConfigKind.LOOP, (f8, th), (2 * g - 2, 2 * g - 2), False, hyp))
        return out
    raise ValueError(f"hyperelliptic loop data needs H(2g-2) or H(g-1,g-1), got {H}")


def component_choices(c: Configuration) -> Iterator[Configuration]:
    """Variants of c with an odd/even choice on every spin-split substratum.

    Only meaningful below an odd, even or non-hyperelliptic parent; for any
    other parent c itself is the only variant.
    """
    if c.component not in (Component.ODD, Component.EVEN, Component.NON_HYPERELLIPTIC):
        yield c
        return
    options = []
    for b in c.blocks:
        if b.is_piece and {Component.ODD, Component.EVEN} <= classify_components(b.substratum).components:
            options.append([replace(b, component_choice=Component.ODD), replace(b, component_choice=Component.EVEN)])
        else:
            options.append([b])
    for blocks in itertools.product(*options):
        yield replace(c, blocks=tuple(blocks))
