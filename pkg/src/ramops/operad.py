"""Free operads on binary generators, their quotients by quadratic relations.

A tree monomial is a full binary tree: internal vertices carry generator
names, leaves carry pairwise-distinct atoms.  Trees are nested tuples
``(gen, left, right)`` with bare atoms as leaves.  The canonical form puts
the subtree containing the smallest leaf on the left at every vertex; the
sign collected while swapping children is ``symmetry(g)`` times the Koszul
factor ``(-1)**(h(left)*h(right))``, where only the first degree ``h``
carries signs.

Composite expressions are read as tensor words in preorder (vertex before
left before right).  Grafting an element into a place-holder leaf therefore
picks up ``(-1)**(h(graft) * h(generators after the leaf))``, and the same
word order fixes the derivation and coproduct signs used downstream.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Mapping

from .cache import ComponentStore, decode_rows, default_store, encode_rows
from .labels import (
    Atom,
    BiDegree,
    STAR,
    atom_key,
    check_label_set,
    standard_labels,
)
from .linalg import Echelon, SparseMatrix, quotient_basis

Tree = object  # Atom | tuple[str, Tree, Tree]


@dataclass(frozen=True)
class GeneratorSpec:
    """A binary generator: bidegree (h, w) and symmetry +1/-1 under swap."""

    name: str
    bidegree: BiDegree
    symmetry: int
    arity: int = 2

    def __post_init__(self):
        if self.arity != 2:
            raise ValueError("only binary generators are supported")
        if self.symmetry not in (1, -1):
            raise ValueError("symmetry must be +1 or -1")


Signature = Mapping[str, GeneratorSpec]


def is_leaf(t: Tree) -> bool:
    return not isinstance(t, tuple)


def tree_leaves(t: Tree) -> Iterator[Atom]:
    if is_leaf(t):
        yield t
    else:
        yield from tree_leaves(t[1])
        yield from tree_leaves(t[2])


def tree_min_key(t: Tree):
    if is_leaf(t):
        return atom_key(t)
    return min(tree_min_key(t[1]), tree_min_key(t[2]))


def tree_bidegree(t: Tree, gens: Signature) -> BiDegree:
    if is_leaf(t):
        return (0, 0)
    g, l, r = t
    hl, wl = tree_bidegree(l, gens)
    hr, wr = tree_bidegree(r, gens)
    hg, wg = gens[g].bidegree
    return (hg + hl + hr, wg + wl + wr)


def tree_h(t: Tree, gens: Signature) -> int:
    return tree_bidegree(t, gens)[0]


def tree_sort_key(t: Tree):
    if is_leaf(t):
        return (0, atom_key(t))
    return (1, t[0], tree_sort_key(t[1]), tree_sort_key(t[2]))


def tree_to_json(t: Tree):
    if is_leaf(t):
        return t
    return [t[0], tree_to_json(t[1]), tree_to_json(t[2])]


def tree_from_json(data) -> Tree:
    if isinstance(data, list):
        return (data[0], tree_from_json(data[1]), tree_from_json(data[2]))
    return data


def canonicalize(t: Tree, gens: Signature) -> tuple[int, Tree]:
    """Canonical child order with the collected sign.

    Raises on duplicate leaf labels.
    """
    leaves = list(tree_leaves(t))
    if len(set(leaves)) != len(leaves):
        raise ValueError(f"duplicate leaf labels in {t!r}")
    sign, canon, _ = _canon(t, gens)
    return sign, canon


def _canon(t: Tree, gens: Signature) -> tuple[int, Tree, int]:
    if is_leaf(t):
        return 1, t, 0
    g, l, r = t
    sl, cl, hl = _canon(l, gens)
    sr, cr, hr = _canon(r, gens)
    sign = sl * sr
    spec = gens[g]
    if tree_min_key(cl) > tree_min_key(cr):
        sign *= spec.symmetry
        if (hl & 1) and (hr & 1):
            sign = -sign
        cl, cr, hl, hr = cr, cl, hr, hl
    return sign, (g, cl, cr), spec.bidegree[0] + hl + hr


class OperadElement:
    """Sparse rational combination of canonical tree monomials on one label set."""

    __slots__ = ("labels", "gens", "terms")

    def __init__(self, labels: Iterable[Atom], gens: Signature, terms: dict | None = None):
        self.labels = check_label_set(labels)
        self.gens = gens
        self.terms: dict[Tree, Fraction] = terms if terms is not None else {}

    @classmethod
    def zero(cls, labels: Iterable[Atom], gens: Signature) -> "OperadElement":
        return cls(labels, gens)

    @classmethod
    def from_terms(
        cls, labels: Iterable[Atom], gens: Signature, items: Iterable[tuple[Tree, Fraction | int]]
    ) -> "OperadElement":
        el = cls(labels, gens)
        for raw, coeff in items:
            sign, canon = canonicalize(raw, gens)
            el._add_term(canon, Fraction(coeff) * sign)
        return el

    @classmethod
    def generator(cls, gens: Signature, name: str, a: Atom, b: Atom) -> "OperadElement":
        if name not in gens:
            raise KeyError(f"unknown generator {name!r}")
        return cls.from_terms((a, b), gens, [((name, a, b), 1)])

    def _add_term(self, canon: Tree, coeff: Fraction) -> None:
        s = self.terms.get(canon, Fraction(0)) + coeff
        if s:
            self.terms[canon] = s
        elif canon in self.terms:
            del self.terms[canon]

    def is_zero(self) -> bool:
        return not self.terms

    def bidegree(self) -> BiDegree | None:
        """Common bidegree of all terms, or None for 0 / inhomogeneous."""
        degs = {tree_bidegree(t, self.gens) for t in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def scaled(self, c: Fraction | int) -> "OperadElement":
        c = Fraction(c)
        if not c:
            return OperadElement(self.labels, self.gens)
        return OperadElement(self.labels, self.gens, {t: v * c for t, v in self.terms.items()})

    def __add__(self, other: "OperadElement") -> "OperadElement":
        if self.labels != other.labels:
            raise ValueError("label sets differ")
        out = OperadElement(self.labels, self.gens, dict(self.terms))
        for t, v in other.terms.items():
            out._add_term(t, v)
        return out

    def __sub__(self, other: "OperadElement") -> "OperadElement":
        return self + other.scaled(-1)

    def __neg__(self) -> "OperadElement":
        return self.scaled(-1)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, OperadElement)
            and self.labels == other.labels
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.labels, frozenset(self.terms.items())))

    def sorted_terms(self) -> list[tuple[Tree, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: tree_sort_key(kv[0]))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for t, c in self.sorted_terms():
            bits.append(f"{c}*{_tree_str(t)}")
        return " + ".join(bits).replace("+ -", "- ")


def _tree_str(t: Tree) -> str:
    if is_leaf(t):
        return str(t)
    return f"{t[0]}({_tree_str(t[1])},{_tree_str(t[2])})"


def _h_after_place(t: Tree, place: Atom, gens: Signature) -> tuple[bool, int, int]:
    """(found, h of generators after the place leaf in preorder, h of t)."""
    if is_leaf(t):
        return (t == place, 0, 0)
    g, l, r = t
    fl, al, hl = _h_after_place(l, place, gens)
    fr, ar, hr = _h_after_place(r, place, gens)
    hg = gens[g].bidegree[0]
    total = hg + hl + hr
    if fl:
        return True, al + hr, total
    if fr:
        return True, ar, total
    return False, 0, total


def _replace_leaf(t: Tree, place: Atom, sub: Tree) -> Tree:
    if is_leaf(t):
        return sub if t == place else t
    g, l, r = t
    return (g, _replace_leaf(l, place, sub), _replace_leaf(r, place, sub))


def compose(x: OperadElement, y: OperadElement, place: Atom = STAR) -> OperadElement:
    """Graft y into the ``place`` leaf of x; bidegrees add.

    The word-order convention makes the graft pick up
    ``(-1)**(h(y_term) * h(generators after the place leaf))`` per term.
    """
    if place not in x.labels:
        raise ValueError(f"place {place!r} not among labels {x.labels}")
    remaining = tuple(a for a in x.labels if a != place)
    overlap = set(remaining) & set(y.labels)
    if overlap:
        raise ValueError(f"label collision {sorted(overlap, key=atom_key)}")
    out = OperadElement(remaining + y.labels, x.gens)
    for ty, cy in y.terms.items():
        hy = tree_h(ty, x.gens)
        for tx, cx in x.terms.items():
            found, h_after, _ = _h_after_place(tx, place, x.gens)
            if not found:
                raise ValueError(f"place {place!r} missing from a term")
            coeff = cx * cy
            if (hy & 1) and (h_after & 1):
                coeff = -coeff
            sign, canon = canonicalize(_replace_leaf(tx, place, ty), x.gens)
            out._add_term(canon, coeff * sign)
    return out


def relabel(x: OperadElement, phi: Mapping[Atom, Atom]) -> OperadElement:
    """Apply a bijection of label sets to every leaf, then recanonicalize."""
    image = [phi[a] for a in x.labels]
    if len(set(image)) != len(image):
        raise ValueError("relabeling map is not injective on the labels")

    def walk(t: Tree) -> Tree:
        if is_leaf(t):
            return phi[t]
        return (t[0], walk(t[1]), walk(t[2]))

    out = OperadElement(image, x.gens)
    for t, c in x.terms.items():
        sign, canon = canonicalize(walk(t), x.gens)
        out._add_term(canon, c * sign)
    return out


def substitute(x: OperadElement, grafts: Mapping[Atom, OperadElement]) -> OperadElement:
    """Compose several elements into distinct place leaves, in atom order."""
    out = x
    for place in sorted(grafts, key=atom_key):
        out = compose(out, grafts[place], place)
    return out


def enumerate_tree_monomials(
    gens: Signature, labels: Iterable[Atom], bidegree: BiDegree | None = None
) -> list[Tree]:
    """All canonical tree monomials on the label set, in serialization order."""
    labels = check_label_set(labels)
    names = sorted(gens)

    def rec(lbls: tuple[Atom, ...]) -> list[Tree]:
        if len(lbls) == 1:
            return [lbls[0]]
        first, rest = lbls[0], lbls[1:]
        out = []
        for k in range(len(rest)):
            for extra in combinations(rest, k):
                right = tuple(a for a in rest if a not in extra)
                left = (first,) + extra
                for tl in rec(left):
                    for tr in rec(right):
                        for g in names:
                            out.append((g, tl, tr))
        return out

    trees = rec(labels)
    if bidegree is not None:
        trees = [t for t in trees if tree_bidegree(t, gens) == bidegree]
    trees.sort(key=tree_sort_key)
    return trees


class Presentation:
    """Binary generators plus quadratic relations on the abstract atoms 1,2,3."""

    def __init__(
        self,
        name: str,
        generators: Iterable[GeneratorSpec],
        relations: Iterable[OperadElement],
    ):
        self.name = name
        self.generators = tuple(generators)
        self.relations = tuple(relations)
        self.gens: dict[str, GeneratorSpec] = {g.name: g for g in self.generators}
        for r in self.relations:
            if r.bidegree() is None:
                raise ValueError("relations must be bihomogeneous")
            for t in r.terms:
                if _node_count(t) != 2 or len(r.labels) != 3:
                    raise ValueError("relations must be quadratic (two-level trees)")
        self.hash = self._hash()

    def _hash(self) -> str:
        payload = {
            "generators": sorted(
                [g.name, g.bidegree[0], g.bidegree[1], g.symmetry] for g in self.generators
            ),
            "relations": sorted(
                json.dumps(
                    [[str(c), tree_to_json(t)] for t, c in r.sorted_terms()], sort_keys=True
                )
                for r in self.relations
            ),
        }
        blob = json.dumps(payload, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def __repr__(self) -> str:
        return f"Presentation({self.name!r}, {len(self.generators)} gens, {len(self.relations)} rels)"


def _node_count(t: Tree) -> int:
    if is_leaf(t):
        return 0
    return 1 + _node_count(t[1]) + _node_count(t[2])


def element_key(e: OperadElement) -> str:
    return json.dumps([[str(c), tree_to_json(t)] for t, c in e.sorted_terms()])


_SPAN_MEMO: dict[tuple[str, int], list[OperadElement]] = {}


def ideal_span(pres: Presentation, labels: Iterable[Atom]) -> list[OperadElement]:
    """Spanning set of the operadic ideal component on the label set.

    Recursively: relation instances with monomials grafted into their three
    inputs, plus every generator put on top of a lower-arity spanning
    element and a monomial.  Empty below arity 3.
    """
    labels = check_label_set(labels)
    n = len(labels)
    if n < 3:
        return []
    std = standard_labels(n)
    key = (pres.hash, n)
    if key not in _SPAN_MEMO:
        _SPAN_MEMO[key] = _span_standard(pres, n)
    base = _SPAN_MEMO[key]
    if labels == std:
        return list(base)
    phi = dict(zip(std, labels))
    return [relabel(e, phi) for e in base]


def _ordered_tripartitions(labels: tuple[Atom, ...]) -> Iterator[tuple[tuple, tuple, tuple]]:
    n = len(labels)
    for assignment in range(3**n):
        parts: tuple[list, list, list] = ([], [], [])
        a = assignment
        for item in labels:
            parts[a % 3].append(item)
            a //= 3
        if parts[0] and parts[1] and parts[2]:
            yield tuple(parts[0]), tuple(parts[1]), tuple(parts[2])


def _span_standard(pres: Presentation, n: int) -> list[OperadElement]:
    labels = standard_labels(n)
    seen: dict[str, OperadElement] = {}

    def emit(e: OperadElement) -> None:
        if e.is_zero():
            return
        lead_tree = min(e.terms, key=tree_sort_key)
        e = e.scaled(1 / e.terms[lead_tree])
        seen.setdefault(element_key(e), e)

    places = ("s1", "s2", "s3")
    for r in pres.relations:
        r_p = relabel(r, dict(zip((1, 2, 3), places)))
        for blocks in _ordered_tripartitions(labels):
            for m1 in enumerate_tree_monomials(pres.gens, blocks[0]):
                e1 = OperadElement.from_terms(blocks[0], pres.gens, [(m1, 1)])
                for m2 in enumerate_tree_monomials(pres.gens, blocks[1]):
                    e2 = OperadElement.from_terms(blocks[1], pres.gens, [(m2, 1)])
                    for m3 in enumerate_tree_monomials(pres.gens, blocks[2]):
                        e3 = OperadElement.from_terms(blocks[2], pres.gens, [(m3, 1)])
                        emit(substitute(r_p, {"s1": e1, "s2": e2, "s3": e3}))

    for size_a in range(3, n):
        for sub_a in combinations(labels, size_a):
            rest = tuple(x for x in labels if x not in sub_a)
            span_a = ideal_span(pres, sub_a)
            monos_rest = enumerate_tree_monomials(pres.gens, rest)
            for g in sorted(pres.gens):
                top = OperadElement.generator(pres.gens, g, "s1", "s2")
                for r_a in span_a:
                    for m in monos_rest:
                        em = OperadElement.from_terms(rest, pres.gens, [(m, 1)])
                        emit(substitute(top, {"s1": r_a, "s2": em}))

    return [seen[k] for k in sorted(seen)]


class Component:
    """Quotient component on a label set: monomials, reducer, bigraded dims.

    Built once on the reference labels {1..n} and transported to any other
    label set along the order-preserving bijection (transport signs come
    from recanonicalizing relabeled monomials).
    """

    def __init__(
        self,
        pres: Presentation,
        labels: tuple[Atom, ...],
        monomials_std: list[Tree],
        echelon: Echelon,
        basis_positions: list[int],
        dims: dict[BiDegree, int],
    ):
        self.pres = pres
        self.labels = labels
        self.monomials_std = monomials_std
        self.echelon = echelon
        self.basis_positions = basis_positions
        self.dims = dims
        std = standard_labels(len(labels))
        if labels == std:
            self.monomials = list(monomials_std)
            self.transport_signs = [1] * len(monomials_std)
        else:
            phi = dict(zip(std, labels))
            self.monomials = []
            self.transport_signs = []
            for m in monomials_std:
                sign, canon = canonicalize(_map_tree(m, phi), pres.gens)
                self.monomials.append(canon)
                self.transport_signs.append(sign)
        self._index = {m: i for i, m in enumerate(self.monomials)}
        self.basis = [self.monomials[i] for i in basis_positions]

    @property
    def dim(self) -> int:
        return len(self.basis_positions)

    def coords(self, x: OperadElement) -> dict[int, Fraction]:
        """Coordinates of x on the component basis (kills exactly the ideal)."""
        if x.labels != self.labels:
            raise ValueError("label set mismatch")
        vec: dict[int, Fraction] = {}
        for t, c in x.terms.items():
            i = self._index[t]
            val = vec.get(i, Fraction(0)) + c * self.transport_signs[i]
            if val:
                vec[i] = val
            elif i in vec:
                del vec[i]
        reduced = self.echelon.reduce(vec)
        out: dict[int, Fraction] = {}
        for slot, i in enumerate(self.basis_positions):
            if i in reduced:
                out[slot] = reduced[i] * self.transport_signs[i]
        return out

    def normal_form(self, x: OperadElement) -> OperadElement:
        coords = self.coords(x)
        return OperadElement(
            self.labels, self.pres.gens, {self.basis[slot]: c for slot, c in coords.items()}
        )

    def monomial_element(self, tree: Tree) -> OperadElement:
        return OperadElement.from_terms(self.labels, self.pres.gens, [(tree, 1)])


def _map_tree(t: Tree, phi: Mapping[Atom, Atom]) -> Tree:
    if is_leaf(t):
        return phi[t]
    return (t[0], _map_tree(t[1], phi), _map_tree(t[2], phi))


_COMPONENT_MEMO: dict[tuple[str, int], tuple] = {}
_COMPONENT_INSTANCE_MEMO: dict[tuple, Component] = {}


def component_basis(
    pres: Presentation, labels: Iterable[Atom], store: ComponentStore | None = None
) -> Component:
    """Quotient component of the presentation on the label set (cached)."""
    labels = check_label_set(labels)
    instance_key = (pres.hash, labels)
    if instance_key in _COMPONENT_INSTANCE_MEMO:
        return _COMPONENT_INSTANCE_MEMO[instance_key]
    n = len(labels)
    store = store or default_store()
    memo_key = (pres.hash, n)
    if memo_key not in _COMPONENT_MEMO:
        cache_key = f"operad-{pres.hash}-n{n}"
        payload = store.get(cache_key)
        if payload is not None and payload.get("presentation") == pres.hash:
            monomials = [tree_from_json(m) for m in payload["monomials"]]
            ech = Echelon(len(monomials))
            ech.pivots = list(payload["pivots"])
            ech.rows = decode_rows(payload["rows"])
            ech._pivot_pos = {p: i for i, p in enumerate(ech.pivots)}
            basis_positions = list(payload["basis"])
            dims = {(int(h), int(w)): d for h, w, d in payload["dims"]}
        else:
            monomials, ech, basis_positions, dims = _build_component_standard(pres, n)
            store.put(
                cache_key,
                {
                    "kind": "operad-component",
                    "presentation": pres.hash,
                    "n": n,
                    "monomials": [tree_to_json(m) for m in monomials],
                    "pivots": list(ech.pivots),
                    "rows": encode_rows(ech.rows),
                    "basis": basis_positions,
                    "dims": sorted([h, w, d] for (h, w), d in dims.items()),
                },
            )
        _COMPONENT_MEMO[memo_key] = (monomials, ech, basis_positions, dims)
    monomials, ech, basis_positions, dims = _COMPONENT_MEMO[memo_key]
    comp = Component(pres, labels, monomials, ech, basis_positions, dims)
    _COMPONENT_INSTANCE_MEMO[instance_key] = comp
    return comp


def _build_component_standard(pres: Presentation, n: int):
    labels = standard_labels(n)
    monomials = enumerate_tree_monomials(pres.gens, labels)
    index = {m: i for i, m in enumerate(monomials)}
    span = SparseMatrix(len(monomials))
    for e in ideal_span(pres, labels):
        span.add_row({index[t]: c for t, c in e.terms.items()})
    basis_positions, ech = quotient_basis(span, len(monomials))
    dims: dict[BiDegree, int] = {}
    for i in basis_positions:
        d = tree_bidegree(monomials[i], pres.gens)
        dims[d] = dims.get(d, 0) + 1
    return monomials, ech, basis_positions, dims


def normal_form(x: OperadElement, component: Component) -> dict[int, Fraction]:
    """Coordinate vector of x on the component basis."""
    return component.coords(x)


def clear_memos() -> None:
    _SPAN_MEMO.clear()
    _COMPONENT_MEMO.clear()
    _COMPONENT_INSTANCE_MEMO.clear()
