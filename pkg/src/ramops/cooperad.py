"""Cocomposition on the forest algebras and the cooperad axiom checks.

The cocomposition for the split I | J sends an edge with both ends in I to
the left tensor factor, both ends in J to the right factor, and a
straddling edge to the left factor rerouted into the place-holder leaf.
Extended multiplicatively with Koszul interleaving signs and reduced to the
quotient on each side, this is a morphism of bidifferential algebras; the
checks below exercise that claim plus both coassociativity equations.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .cache import ComponentStore, default_store
from .graphalg import (
    AlgebraElement,
    GraphComponent,
    GraphPresentation,
    MonomialKey,
    algebra_basis,
    differential_algebra,
    monomial_bidegree,
    monomial_from_word,
    monomial_sort_key,
    monomial_str,
    relation_instances,
)
from .labels import Atom, STAR, HASH, check_label_set, sort_atoms


class TensorAlgebraElement:
    """Sparse combination of monomial pairs from two algebra components."""

    __slots__ = ("labels_left", "labels_right", "pres", "terms")

    def __init__(self, labels_left, labels_right, pres: GraphPresentation, terms=None):
        self.labels_left = check_label_set(labels_left)
        self.labels_right = check_label_set(labels_right)
        self.pres = pres
        self.terms: dict[tuple[MonomialKey, MonomialKey], Fraction] = (
            terms if terms is not None else {}
        )

    def add_term(self, ml: MonomialKey, mr: MonomialKey, coeff: Fraction) -> None:
        key = (ml, mr)
        s = self.terms.get(key, Fraction(0)) + coeff
        if s:
            self.terms[key] = s
        elif key in self.terms:
            del self.terms[key]

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TensorAlgebraElement)
            and self.labels_left == other.labels_left
            and self.labels_right == other.labels_right
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.labels_left, self.labels_right, frozenset(self.terms.items())))

    def sorted_terms(self):
        return sorted(
            self.terms.items(),
            key=lambda kv: (
                monomial_sort_key(kv[0][0], self.pres),
                monomial_sort_key(kv[0][1], self.pres),
            ),
        )

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            f"{c}*{monomial_str(l, self.pres)}(x){monomial_str(r, self.pres)}"
            for (l, r), c in self.sorted_terms()
        ).replace("+ -", "- ")


def tensor_multiply(
    x: TensorAlgebraElement, y: TensorAlgebraElement, mode: str = "forest"
) -> TensorAlgebraElement:
    """(u(x)v)(u'(x)v') = (-1)**(h(v)h(u')) uu' (x) vv'."""
    from .graphalg import multiply

    out = TensorAlgebraElement(x.labels_left, x.labels_right, x.pres)
    for (u, v), c1 in x.terms.items():
        hv = monomial_bidegree(v, x.pres)[0]
        for (u2, v2), c2 in y.terms.items():
            hu2 = monomial_bidegree(u2, x.pres)[0]
            left = multiply(u, u2, x.pres, mode)
            if left is None:
                continue
            right = multiply(v, v2, x.pres, mode)
            if right is None:
                continue
            sign = -1 if (hv & 1) and (hu2 & 1) else 1
            out.add_term(left[1], right[1], c1 * c2 * sign * left[0] * right[0])
    return out


def theta(
    pres: GraphPresentation,
    I: Iterable[Atom],
    J: Iterable[Atom],
    x: AlgebraElement,
    place: Atom = STAR,
    store: ComponentStore | None = None,
    normalize: bool = True,
) -> TensorAlgebraElement:
    """Cocomposition of x along the split I | J, place-holder on the I side.

    Each side is reduced to its quotient normal form when ``normalize`` is
    set, so the terms of the result pair basis monomials.
    """
    I = check_label_set(I)
    J = check_label_set(J)
    iset, jset = set(I), set(J)
    if iset & jset:
        raise ValueError("I and J must be disjoint")
    if place in iset or place in jset:
        raise ValueError("the place-holder must be fresh")
    if x.labels != sort_atoms(I + J):
        raise ValueError("element labels must be exactly I + J")
    store = store or default_store()
    left_labels = sort_atoms(I + (place,))
    out = TensorAlgebraElement(left_labels, J, pres)
    for m, coeff in x.terms.items():
        sign = 1
        left_word: list = []
        right_word: list = []
        seen_right_odd = 0
        alive = True
        for ci, edges in enumerate(m):
            cname = pres.colors[ci].name
            odd = pres.is_odd(ci)
            orientation = pres.colors[ci].orientation
            for u, v in edges:
                if u in iset and v in iset:
                    side, letter, extra = 0, (cname, u, v), 1
                elif u in jset and v in jset:
                    side, letter, extra = 1, (cname, u, v), 1
                elif u in iset:
                    side, letter, extra = 0, (cname, u, place), 1
                elif v in iset:
                    side, letter, extra = 0, (cname, v, place), orientation
                else:
                    raise ValueError(f"edge endpoint outside I + J in {m}")
                sign *= extra
                if side == 0:
                    if odd and (seen_right_odd & 1):
                        sign = -sign
                    left_word.append(letter)
                else:
                    if odd:
                        seen_right_odd += 1
                    right_word.append(letter)
        lres = monomial_from_word(pres, left_word, "forest")
        if lres is None:
            continue
        rres = monomial_from_word(pres, right_word, "forest")
        if rres is None:
            continue
        out.add_term(lres[1], rres[1], coeff * sign * lres[0] * rres[0])
    if normalize:
        comp_left = algebra_basis(pres, left_labels, "forest", store)
        comp_right = algebra_basis(pres, J, "forest", store)
        out = tensor_normal_form(out, comp_left, comp_right)
    return out


def tensor_normal_form(
    t: TensorAlgebraElement, comp_left: GraphComponent, comp_right: GraphComponent
) -> TensorAlgebraElement:
    out = TensorAlgebraElement(t.labels_left, t.labels_right, t.pres)
    memo_l: dict[MonomialKey, list] = {}
    memo_r: dict[MonomialKey, list] = {}

    def nf(m, comp, memo):
        if m not in memo:
            memo[m] = list(comp.normal_form(comp.monomial_element(m)).terms.items())
        return memo[m]

    for (ml, mr), c in t.terms.items():
        for bl, cl in nf(ml, comp_left, memo_l):
            for br, cr in nf(mr, comp_right, memo_r):
                out.add_term(bl, br, c * cl * cr)
    return out


def _bump(acc: dict, key, val: Fraction) -> None:
    s = acc.get(key, Fraction(0)) + val
    if s:
        acc[key] = s
    elif key in acc:
        del acc[key]


def _verdict(check: str, ok: bool, witness=None, **params) -> dict:
    v = {"check": check, "pass": bool(ok), "params": params}
    if witness is not None and not ok:
        v["witness"] = witness
    return v


def theta_relation_kill(
    pres: GraphPresentation,
    I: Iterable[Atom],
    J: Iterable[Atom],
    store: ComponentStore | None = None,
) -> list[dict]:
    """Cocomposition sends every defining relation instance to zero."""
    I = check_label_set(I)
    J = check_label_set(J)
    labels = sort_atoms(I + J)
    store = store or default_store()
    verdicts = []
    for family, rel in relation_instances(pres, labels, "full"):
        image = theta(pres, I, J, rel, STAR, store)
        ok = image.is_zero()
        verdicts.append(
            _verdict(
                "theta_kills_relation",
                ok,
                witness=None if ok else {"family": family, "relation": repr(rel)},
                family=family,
                I=list(I),
                J=list(J),
            )
        )
    return verdicts


def cooperad_axiom_check(
    pres: GraphPresentation,
    I: Iterable[Atom],
    J: Iterable[Atom],
    K: Iterable[Atom],
    store: ComponentStore | None = None,
) -> list[dict]:
    """Both coassociativity equations on every basis element of the union
    component, plus the intertwining of both differentials with theta."""
    I = check_label_set(I)
    J = check_label_set(J)
    K = check_label_set(K)
    store = store or default_store()
    labels = sort_atoms(I + J + K)
    comp = algebra_basis(pres, labels, "forest", store)
    ij = sort_atoms(I + J)
    jk = sort_atoms(J + K)
    ik = sort_atoms(I + K)
    j_hash = sort_atoms(J + (HASH,))
    i_hash = sort_atoms(I + (HASH,))
    i_star = sort_atoms(I + (STAR,))

    bad_nested = None
    bad_swapped = None
    for b in comp.basis:
        el = comp.monomial_element(b)

        lhs: dict = {}
        for (ml, mk), c in theta(pres, ij, K, el, HASH, store).terms.items():
            el_l = AlgebraElement(sort_atoms(ij + (HASH,)), pres, {ml: Fraction(1)})
            for (m1, m2), c2 in theta(pres, I, j_hash, el_l, STAR, store).terms.items():
                _bump(lhs, (m1, m2, mk), c * c2)
        rhs: dict = {}
        for (m1, mjk), c in theta(pres, I, jk, el, STAR, store).terms.items():
            el_r = AlgebraElement(jk, pres, {mjk: Fraction(1)})
            for (m2, m3), c2 in theta(pres, J, K, el_r, HASH, store).terms.items():
                _bump(rhs, (m1, m2, m3), c * c2)
        if lhs != rhs and bad_nested is None:
            bad_nested = {"basis_monomial": monomial_str(b, pres)}

        lhs2: dict = {}
        for (ml, mk), c in theta(pres, ij, K, el, HASH, store).terms.items():
            el_l = AlgebraElement(sort_atoms(ij + (HASH,)), pres, {ml: Fraction(1)})
            for (m1, mj), c2 in theta(pres, i_hash, J, el_l, STAR, store).terms.items():
                _bump(lhs2, (m1, mj, mk), c * c2)
        rhs2: dict = {}
        for (ml, mj), c in theta(pres, ik, J, el, STAR, store).terms.items():
            el_l = AlgebraElement(sort_atoms(ik + (STAR,)), pres, {ml: Fraction(1)})
            hj = monomial_bidegree(mj, pres)[0]
            for (m1, mk), c2 in theta(pres, i_star, K, el_l, HASH, store).terms.items():
                hk = monomial_bidegree(mk, pres)[0]
                sign = -1 if (hj & 1) and (hk & 1) else 1
                _bump(rhs2, (m1, mj, mk), c * c2 * sign)
        if lhs2 != rhs2 and bad_swapped is None:
            bad_swapped = {"basis_monomial": monomial_str(b, pres)}

    split = {"I": list(I), "J": list(J), "K": list(K)}
    verdicts = [
        _verdict("cooperad_nested_coassociativity", bad_nested is None, bad_nested, **split),
        _verdict("cooperad_swapped_coassociativity", bad_swapped is None, bad_swapped, **split),
    ]
    return verdicts


def theta_intertwines_differentials(
    pres: GraphPresentation,
    I: Iterable[Atom],
    J: Iterable[Atom],
    store: ComponentStore | None = None,
) -> list[dict]:
    """theta o d = (d (x) id + (-1)**h id (x) d) o theta for both differentials."""
    I = check_label_set(I)
    J = check_label_set(J)
    labels = sort_atoms(I + J)
    store = store or default_store()
    comp = algebra_basis(pres, labels, "forest", store)
    left_labels = sort_atoms(I + (STAR,))
    comp_left = algebra_basis(pres, left_labels, "forest", store)
    comp_right = algebra_basis(pres, J, "forest", store)
    verdicts = []
    for which in ("up", "down"):
        bad = None
        for b in comp.basis:
            el = comp.monomial_element(b)
            lhs = theta(pres, I, J, differential_algebra(el, which), STAR, store)
            rhs = TensorAlgebraElement(left_labels, J, pres)
            for (ml, mr), c in theta(pres, I, J, el, STAR, store).terms.items():
                d_left = differential_algebra(
                    AlgebraElement(left_labels, pres, {ml: Fraction(1)}), which
                )
                for mld, cl in d_left.terms.items():
                    rhs.add_term(mld, mr, c * cl)
                hl = monomial_bidegree(ml, pres)[0]
                sgn = -1 if hl & 1 else 1
                d_right = differential_algebra(
                    AlgebraElement(J, pres, {mr: Fraction(1)}), which
                )
                for mrd, cr in d_right.terms.items():
                    rhs.add_term(ml, mrd, c * cr * sgn)
            if tensor_normal_form(rhs, comp_left, comp_right).terms != lhs.terms:
                bad = {"basis_monomial": monomial_str(b, pres), "differential": which}
                break
        verdicts.append(
            _verdict(
                f"theta_intertwines_{which}",
                bad is None,
                bad,
                I=list(I),
                J=list(J),
            )
        )
    return verdicts
