"""The Ramanujan operad and its relatives: presentations, coproduct, differentials.

Three binary generators: E symmetric of bidegree (0,0), L antisymmetric of
(0,1), and the suspended-Griess generator G antisymmetric of (1,1).  The
relation families are associativity for E, the Jacobi sum for L, the mixed
cyclic sum tying L and G, and the two rewriting relations that move E past
L and past G (the distributive laws that split the operad into a
commutative layer over a LieGriess layer).

The coproduct is E -> E(x)E, L -> E(x)L + L(x)E, G -> E(x)G + G(x)E,
extended through trees with the Koszul interleaving sign.  The differential
``down`` sends G to L (bidegree (-1,0)); ``up`` sends L to G ((+1,0)); both
kill E and extend as derivations with the preorder-prefix sign.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator

from .cache import ComponentStore, default_store
from .labels import Atom, BiDegree, STAR, check_label_set, standard_labels
from .operad import (
    Component,
    GeneratorSpec,
    OperadElement,
    Presentation,
    Signature,
    Tree,
    canonicalize,
    component_basis,
    compose,
    ideal_span,
    is_leaf,
    tree_h,
    tree_sort_key,
)

E_SPEC = GeneratorSpec("E", (0, 0), 1)
L_SPEC = GeneratorSpec("L", (0, 1), -1)
G_SPEC = GeneratorSpec("G", (1, 1), -1)

RAM_GENERATORS = (E_SPEC, L_SPEC, G_SPEC)
RAM_SIGNATURE: Signature = {g.name: g for g in RAM_GENERATORS}

PRESENTATION_NAMES = ("com", "lie", "sgriess", "liegriess", "poisson", "bessel", "ram")


class ResourceBoundError(RuntimeError):
    """A configured arity/size bound was exceeded; carries partial results."""

    def __init__(self, message: str, partial: dict | None = None):
        super().__init__(message)
        self.partial = partial or {}


def _gen(gens: Signature, name: str, a: Atom, b: Atom) -> OperadElement:
    return OperadElement.generator(gens, name, a, b)


def _jacobi(gens: Signature) -> OperadElement:
    acc = None
    for i, j, k in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        term = compose(_gen(gens, "L", i, STAR), _gen(gens, "L", j, k))
        acc = term if acc is None else acc + term
    return acc


def _mixed(gens: Signature) -> OperadElement:
    acc = None
    for i, j, k in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        term = compose(_gen(gens, "G", i, STAR), _gen(gens, "L", j, k))
        term = term + compose(_gen(gens, "L", i, STAR), _gen(gens, "G", j, k))
        acc = term if acc is None else acc + term
    return acc


def _associativity(gens: Signature) -> OperadElement:
    lhs = compose(_gen(gens, "E", 1, STAR), _gen(gens, "E", 2, 3))
    rhs = compose(_gen(gens, "E", 2, STAR), _gen(gens, "E", 3, 1))
    return lhs - rhs


def _rewrite(gens: Signature, odd: str) -> OperadElement:
    """x_{1,*}oE_{2,3} - E_{2,*}o x_{1,3} - E_{3,*}o x_{1,2} for x in {L, G}."""
    lhs = compose(_gen(gens, odd, 1, STAR), _gen(gens, "E", 2, 3))
    r1 = compose(_gen(gens, "E", 2, STAR), _gen(gens, odd, 1, 3))
    r2 = compose(_gen(gens, "E", 3, STAR), _gen(gens, odd, 1, 2))
    return lhs - r1 - r2


_PRESENTATION_MEMO: dict[str, Presentation] = {}


def presentation(which: str) -> Presentation:
    """One of com | lie | sgriess | liegriess | poisson | bessel | ram."""
    if which not in PRESENTATION_NAMES:
        raise ValueError(f"unknown presentation {which!r}; choose from {PRESENTATION_NAMES}")
    if which in _PRESENTATION_MEMO:
        return _PRESENTATION_MEMO[which]
    by_name = {
        "com": ((E_SPEC,), ("assoc",)),
        "lie": ((L_SPEC,), ("jacobi",)),
        "sgriess": ((G_SPEC,), ()),
        "liegriess": ((L_SPEC, G_SPEC), ("jacobi", "mixed")),
        "poisson": ((E_SPEC, L_SPEC), ("assoc", "jacobi", "rewrite_L")),
        "bessel": ((E_SPEC, G_SPEC), ("assoc", "rewrite_G")),
        "ram": (RAM_GENERATORS, ("assoc", "jacobi", "mixed", "rewrite_L", "rewrite_G")),
    }
    generators, families = by_name[which]
    gens = {g.name: g for g in generators}
    builders = {
        "assoc": lambda: _associativity(gens),
        "jacobi": lambda: _jacobi(gens),
        "mixed": lambda: _mixed(gens),
        "rewrite_L": lambda: _rewrite(gens, "L"),
        "rewrite_G": lambda: _rewrite(gens, "G"),
    }
    relations = tuple(builders[f]() for f in families)
    pres = Presentation(which, generators, relations)
    _PRESENTATION_MEMO[which] = pres
    return pres


DEFAULT_MAX_ARITY = 6


def operad_dims(
    which: str,
    n: int,
    store: ComponentStore | None = None,
    max_arity: int = DEFAULT_MAX_ARITY,
) -> dict[BiDegree, int]:
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > max_arity:
        from .operad import _COMPONENT_MEMO

        pres = presentation(which)
        done = {
            k: sorted([h, w, d] for (h, w), d in memo[3].items())
            for (key, k), memo in sorted(_COMPONENT_MEMO.items())
            if key == pres.hash
        }
        raise ResourceBoundError(
            f"arity {n} exceeds the configured bound {max_arity}",
            partial={"max_arity": max_arity, "computed_arities": done},
        )
    comp = component_basis(presentation(which), standard_labels(n), store)
    return dict(comp.dims)


def ram_dims(n: int, store: ComponentStore | None = None, max_arity: int = DEFAULT_MAX_ARITY):
    """Bigraded dimension table of the Ramanujan operad on {1..n}."""
    return operad_dims("ram", n, store, max_arity)


# --- coproduct ---------------------------------------------------------------

COPRODUCT_TABLE: dict[str, tuple[tuple[str, str], ...]] = {
    "E": (("E", "E"),),
    "L": (("E", "L"), ("L", "E")),
    "G": (("E", "G"), ("G", "E")),
}


class OperadTensor:
    """Sparse combination of pairs of tree monomials on one label set."""

    __slots__ = ("labels", "gens", "terms")

    def __init__(self, labels, gens: Signature, terms: dict | None = None):
        self.labels = check_label_set(labels)
        self.gens = gens
        self.terms: dict[tuple[Tree, Tree], Fraction] = terms if terms is not None else {}

    def add_term(self, t1: Tree, t2: Tree, coeff: Fraction) -> None:
        key = (t1, t2)
        s = self.terms.get(key, Fraction(0)) + coeff
        if s:
            self.terms[key] = s
        elif key in self.terms:
            del self.terms[key]

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, OperadTensor)
            and self.labels == other.labels
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.labels, frozenset(self.terms.items())))

    def sorted_terms(self):
        return sorted(
            self.terms.items(),
            key=lambda kv: (tree_sort_key(kv[0][0]), tree_sort_key(kv[0][1])),
        )


def _coproduct_tree(t: Tree, gens: Signature) -> list[tuple[Tree, Tree, int]]:
    if is_leaf(t):
        return [(t, t, 1)]
    g, l, r = t
    left_parts = _coproduct_tree(l, gens)
    right_parts = _coproduct_tree(r, gens)
    out = []
    for g1, g2 in COPRODUCT_TABLE[g]:
        hg2 = gens[g2].bidegree[0]
        for u1, u2, s1 in left_parts:
            hu1 = tree_h(u1, gens)
            hu2 = tree_h(u2, gens)
            for v1, v2, s2 in right_parts:
                hv1 = tree_h(v1, gens)
                exponent = hg2 * hu1 + (hg2 + hu2) * hv1
                sign = s1 * s2 * (-1 if exponent & 1 else 1)
                # the root split keeps min-leaf order, so both factors stay canonical
                out.append(((g1, u1, v1), (g2, u2, v2), sign))
    return out


def coproduct(x: OperadElement, component: Component | None = None) -> OperadTensor:
    """Hopf coproduct of an element, term by term through its trees.

    Pass the matching quotient component to reduce both tensor factors to
    its basis; without it the result lives in the free operad.
    """
    out = OperadTensor(x.labels, x.gens)
    for t, c in x.terms.items():
        if is_leaf(t):
            out.add_term(t, t, c)
            continue
        for t1, t2, sign in _coproduct_tree(t, x.gens):
            out.add_term(t1, t2, c * sign)
    if component is not None:
        out = tensor_normal_form(out, component)
    return out


def tensor_normal_form(tens: OperadTensor, comp: Component) -> OperadTensor:
    """Reduce both tensor factors to the component basis (bilinear, no signs)."""
    out = OperadTensor(tens.labels, tens.gens)
    nf_memo: dict[Tree, list[tuple[Tree, Fraction]]] = {}

    def nf(t: Tree) -> list[tuple[Tree, Fraction]]:
        if t not in nf_memo:
            el = comp.normal_form(comp.monomial_element(t))
            nf_memo[t] = list(el.terms.items())
        return nf_memo[t]

    for (t1, t2), c in tens.terms.items():
        for b1, c1 in nf(t1):
            for b2, c2 in nf(t2):
                out.add_term(b1, b2, c * c1 * c2)
    return out


# --- differentials -----------------------------------------------------------

DIFFERENTIAL_MAPS = {
    "down": {"G": "L"},  # bidegree (-1, 0)
    "up": {"L": "G"},  # bidegree (+1, 0)
}


def _diff_tree(t: Tree, mapping: dict[str, str], gens: Signature) -> tuple[list, int]:
    """Per-node replacements with the preorder prefix sign; returns (terms, h)."""
    if is_leaf(t):
        return [], 0
    g, l, r = t
    hg = gens[g].bidegree[0]
    terms: list[tuple[Tree, int]] = []
    if g in mapping:
        terms.append(((mapping[g], l, r), 1))
    sub_l, hl = _diff_tree(l, mapping, gens)
    for nt, s in sub_l:
        terms.append(((g, nt, r), s * (-1 if hg & 1 else 1)))
    sub_r, hr = _diff_tree(r, mapping, gens)
    for nt, s in sub_r:
        terms.append(((g, l, nt), s * (-1 if (hg + hl) & 1 else 1)))
    return terms, hg + hl + hr


def differential(x: OperadElement, which: str) -> OperadElement:
    """Apply the derivation ``down`` (G->L) or ``up`` (L->G)."""
    mapping = DIFFERENTIAL_MAPS[which]
    out = OperadElement(x.labels, x.gens)
    for t, c in x.terms.items():
        if is_leaf(t):
            continue
        for raw, s in _diff_tree(t, mapping, x.gens)[0]:
            sign, canon = canonicalize(raw, x.gens)
            out._add_term(canon, c * s * sign)
    return out


# --- verification reports ----------------------------------------------------


def _verdict(check: str, ok: bool, witness=None, **params) -> dict:
    v = {"check": check, "pass": bool(ok), "params": params}
    if witness is not None and not ok:
        v["witness"] = witness
    return v


def hopf_check(n: int, store: ComponentStore | None = None) -> list[dict]:
    """Coproduct facts at arity n: kills the ideal, coassociative, coderivations."""
    store = store or default_store()
    pres = presentation("ram")
    labels = standard_labels(n)
    comp = component_basis(pres, labels, store)
    verdicts = []

    bad = None
    for idx, rel in enumerate(ideal_span(pres, labels)):
        reduced = tensor_normal_form(coproduct(rel), comp)
        if not reduced.is_zero():
            bad = {"relation_index": idx, "element": repr(rel)}
            break
    verdicts.append(_verdict("coproduct_kills_ideal", bad is None, bad, n=n))

    bad = None
    for b in comp.basis:
        el = comp.monomial_element(b)
        delta = coproduct(el)
        left: dict[tuple, Fraction] = {}
        right: dict[tuple, Fraction] = {}
        for (t1, t2), c in delta.terms.items():
            for u1, u2, s in _expand_factor(t1, pres.gens):
                _bump(left, (u1, u2, t2), c * s)
            for v1, v2, s in _expand_factor(t2, pres.gens):
                _bump(right, (t1, v1, v2), c * s)
        if _triple_normal_form(left, comp) != _triple_normal_form(right, comp):
            bad = {"basis_tree": repr(b)}
            break
    verdicts.append(_verdict("coproduct_coassociative", bad is None, bad, n=n))

    for which in ("down", "up"):
        bad = None
        for b in comp.basis:
            el = comp.monomial_element(b)
            lhs = tensor_normal_form(coproduct(differential(el, which)), comp)
            rhs = OperadTensor(el.labels, el.gens)
            for (t1, t2), c in coproduct(el).terms.items():
                d1 = differential(comp.monomial_element(t1), which)
                for t1d, c1 in d1.terms.items():
                    rhs.add_term(t1d, t2, c * c1)
                d2 = differential(comp.monomial_element(t2), which)
                sgn = -1 if tree_h(t1, pres.gens) & 1 else 1
                for t2d, c2 in d2.terms.items():
                    rhs.add_term(t1, t2d, c * c2 * sgn)
            if tensor_normal_form(rhs, comp).terms != lhs.terms:
                bad = {"basis_tree": repr(b), "differential": which}
                break
        verdicts.append(_verdict(f"coderivation_{which}", bad is None, bad, n=n))
    return verdicts


def _expand_factor(t: Tree, gens: Signature):
    if is_leaf(t):
        return [(t, t, 1)]
    return _coproduct_tree(t, gens)


def _bump(acc: dict, key, val) -> None:
    s = acc.get(key, Fraction(0)) + val
    if s:
        acc[key] = s
    elif key in acc:
        del acc[key]


def _triple_normal_form(triples: dict, comp: Component) -> dict:
    out: dict = {}
    memo: dict[Tree, list[tuple[Tree, Fraction]]] = {}

    def nf(t: Tree):
        if t not in memo:
            memo[t] = list(comp.normal_form(comp.monomial_element(t)).terms.items())
        return memo[t]

    for (t1, t2, t3), c in triples.items():
        for b1, c1 in nf(t1):
            for b2, c2 in nf(t2):
                for b3, c3 in nf(t3):
                    _bump(out, (b1, b2, b3), c * c1 * c2 * c3)
    return out


# --- distributive-law dimension check ---------------------------------------


def set_partitions(items: tuple) -> Iterator[list[tuple]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for sub in set_partitions(rest):
        yield [(first,)] + sub
        for i in range(len(sub)):
            yield sub[:i] + [(first,) + sub[i]] + sub[i + 1 :]


def _convolve(d1: dict[BiDegree, int], d2: dict[BiDegree, int]) -> dict[BiDegree, int]:
    out: dict[BiDegree, int] = {}
    for (h1, w1), c1 in d1.items():
        for (h2, w2), c2 in d2.items():
            key = (h1 + h2, w1 + w2)
            out[key] = out.get(key, 0) + c1 * c2
    return out


def distributive_check(n: int, store: ComponentStore | None = None) -> dict:
    """Compare Ram(n) dims with the partition convolution of LieGriess dims."""
    store = store or default_store()
    direct = ram_dims(n, store)
    lg = {
        k: dict(component_basis(presentation("liegriess"), standard_labels(k), store).dims)
        for k in range(1, n + 1)
    }
    predicted: dict[BiDegree, int] = {}
    for partition in set_partitions(standard_labels(n)):
        term = {(0, 0): 1}
        for block in partition:
            term = _convolve(term, lg[len(block)])
        for k, v in term.items():
            predicted[k] = predicted.get(k, 0) + v
    return {
        "n": n,
        "direct": direct,
        "composite": predicted,
        "liegriess_dims": {k: sum(v.values()) for k, v in lg.items()},
        "pass": direct == predicted,
    }
