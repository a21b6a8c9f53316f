"""Finite-field representation theory of iquiver algebras.

Builds (Q, tau) and its doubled quiver with relations, enumerates complete
isomorphism-class catalogs over F_q by stratifying on the eps-module type and
partitioning each stratum into orbits, counts Hom/Aut/extensions/Hall numbers,
and implements the reflection functors at sinks and sources directly on
representations.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

import numpy as np

from . import ffmat
from .ffmat import gl_order


class QuiverError(ValueError):
    pass


class BoundExceeded(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# quivers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IQuiver:
    """A quiver with involution: vertices 0..n-1, arrows as (src, tgt) pairs
    (multiplicities by repetition), tau an involution preserving arrows."""

    n: int
    arrows: tuple[tuple[int, int], ...]
    tau: tuple[int, ...]

    def __post_init__(self):
        tau = self.tau
        if len(tau) != self.n or sorted(tau) != list(range(self.n)):
            raise QuiverError("tau is not a permutation of the vertices")
        if any(tau[tau[i]] != i for i in range(self.n)):
            raise QuiverError("tau is not an involution (tau^2 != id)")
        counts: dict[tuple[int, int], int] = {}
        for s, t in self.arrows:
            if not (0 <= s < self.n and 0 <= t < self.n):
                raise QuiverError("arrow endpoint out of range")
            counts[(s, t)] = counts.get((s, t), 0) + 1
        for (s, t), c in counts.items():
            if counts.get((tau[s], tau[t]), 0) != c:
                raise QuiverError("tau does not preserve arrow multiplicities")
        for s, t in self.arrows:
            if s == t:
                raise QuiverError("condition (A1) violated: loop (minimal 1-cycle)")
        for (s, t) in counts:
            if (t, s) in counts and tau[s] != t:
                raise QuiverError(
                    "condition (A2) violated: 2-cycle between non-tau-paired vertices"
                )
        # arrows inside a tau-orbit come in tau-paired opposite pairs, so
        # c_{i,tau i} is automatically even; such orbits are of infinite type
        # and outside the supported enumeration
        for (s, t) in counts:
            if tau[s] == t:
                raise QuiverError(
                    "unsupported: arrows inside a tau-orbit (infinite-type rank-1 block)"
                )
        # remaining cycles would have to move through distinct tau-orbits and
        # return, which the next check rules out
        if self._has_cycle():
            raise QuiverError("condition (A1) violated: oriented m-cycle with m != 2")

    def _has_cycle(self) -> bool:
        adj: dict[int, list[int]] = {i: [] for i in range(self.n)}
        for s, t in self.arrows:
            adj[s].append(t)
        state = [0] * self.n
        def visit(u: int) -> bool:
            state[u] = 1
            for w in adj[u]:
                if state[w] == 1 or (state[w] == 0 and visit(w)):
                    return True
            state[u] = 2
            return False
        return any(state[i] == 0 and visit(i) for i in range(self.n))

    # -- structure ------------------------------------------------------

    def arrow_count(self, i: int, j: int) -> int:
        return sum(1 for s, t in self.arrows if (s, t) in ((i, j), (j, i)))

    def cartan(self) -> list[list[int]]:
        c = [[0] * self.n for _ in range(self.n)]
        for i in range(self.n):
            c[i][i] = 2
        for s, t in self.arrows:
            c[s][t] -= 1
            c[t][s] -= 1
        return c

    def euler_form(self, x, y) -> int:
        """<x, y>_Q = sum x_i y_i - sum_{arrows i->j} x_i y_j."""
        val = sum(int(x[i]) * int(y[i]) for i in range(self.n))
        for s, t in self.arrows:
            val -= int(x[s]) * int(y[t])
        return val

    def symmetric_form(self, x, y) -> int:
        return self.euler_form(x, y) + self.euler_form(y, x)

    def orbits(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(self.n):
            if i in seen:
                continue
            o = (i,) if self.tau[i] == i else (i, self.tau[i])
            seen.update(o)
            out.append(o)
        return out

    def is_sink(self, i: int) -> bool:
        return all(s != i for s, _ in self.arrows)

    def is_source(self, i: int) -> bool:
        return all(t != i for _, t in self.arrows)

    def simple_reflection(self, i: int, x) -> tuple[int, ...]:
        c = self.cartan()
        coeff = sum(c[i][j] * int(x[j]) for j in range(self.n))
        out = list(int(v) for v in x)
        out[i] -= coeff
        return tuple(out)

    def orbit_reflection(self, i: int, x) -> tuple[int, ...]:
        """bold-s_i: s_i if tau(i) = i, else s_i s_{tau i} (which commute)."""
        y = self.simple_reflection(i, x)
        if self.tau[i] != i:
            y = self.simple_reflection(self.tau[i], y)
        return y

    def reflected_at(self, ell: int) -> "IQuiver":
        """Reverse every arrow incident to the orbit of the sink/source ell."""
        orbit = {ell, self.tau[ell]}
        new = tuple(
            (t, s) if (s in orbit or t in orbit) else (s, t) for s, t in self.arrows
        )
        return IQuiver(self.n, new, self.tau)

    def hash_str(self) -> str:
        payload = json.dumps({"n": self.n, "arrows": self.arrows, "tau": self.tau})
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


class BarQuiver:
    """The doubled quiver of (Q, tau): Q's arrows plus one eps-arrow i -> tau(i)
    per vertex, together with the nilpotency and commutativity relations."""

    def __init__(self, quiver: IQuiver):
        self.quiver = quiver
        n = quiver.n
        self.num_q_arrows = len(quiver.arrows)
        self.arrows: list[tuple[int, int]] = list(quiver.arrows)
        self.eps_index: dict[int, int] = {}
        for i in range(n):
            self.eps_index[i] = len(self.arrows)
            self.arrows.append((i, quiver.tau[i]))
        self.tau_arrow = self._pair_arrows()

    def _pair_arrows(self) -> list[int]:
        tau = self.quiver.tau
        groups: dict[tuple[int, int], list[int]] = {}
        for idx in range(self.num_q_arrows):
            groups.setdefault(self.arrows[idx], []).append(idx)
        pairing = [0] * self.num_q_arrows
        for (s, t), idxs in groups.items():
            images = groups[(tau[s], tau[t])]
            for pos, idx in enumerate(idxs):
                pairing[idx] = images[pos]
        return pairing

    def relations(self) -> list[list[tuple[int, int, int]]]:
        """Each relation is a signed sum of length-2 paths; a term
        (sign, first, second) stands for sign * (mat[second] @ mat[first])."""
        rels: list[list[tuple[int, int, int]]] = []
        tau = self.quiver.tau
        for i in range(self.quiver.n):
            rels.append([(1, self.eps_index[i], self.eps_index[tau[i]])])
        for a in range(self.num_q_arrows):
            s, t = self.arrows[a]
            rels.append(
                [(1, a, self.eps_index[t]), (-1, self.eps_index[s], self.tau_arrow[a])]
            )
        return rels

    def hash_str(self) -> str:
        return self.quiver.hash_str()


# ---------------------------------------------------------------------------
# representations
# ---------------------------------------------------------------------------


class Rep:
    """A representation of the doubled quiver over F_q: one matrix per arrow
    (including eps-arrows), stored as (dim_tgt x dim_src) numpy arrays."""

    def __init__(self, bar: BarQuiver, q: int, dims, mats):
        self.bar = bar
        self.q = q
        self.dims = tuple(int(d) for d in dims)
        self.mats = [np.mod(np.asarray(m, dtype=np.int64), q) for m in mats]

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def mat(self, arrow: int) -> np.ndarray:
        return self.mats[arrow]

    def eps(self, vertex: int) -> np.ndarray:
        return self.mats[self.bar.eps_index[vertex]]

    def validate(self) -> None:
        for a, (s, t) in enumerate(self.bar.arrows):
            if self.mats[a].shape != (self.dims[t], self.dims[s]):
                raise QuiverError(f"matrix shape mismatch on arrow {a}")
        for rel in self.bar.relations():
            acc = None
            for sign, first, second in rel:
                term = ffmat.matmul(self.mats[second], self.mats[first], self.q)
                acc = term * sign if acc is None else (acc + sign * term)
            if acc is not None and np.any(np.mod(acc, self.q)):
                raise QuiverError("relation violated")
        # nilpotency: eps-loops square to zero by the relations; any other
        # oriented cycle of the doubled quiver passes through an eps-pair and
        # hence vanishes (Q itself is acyclic for supported quivers)
        for i in range(self.quiver_n):
            if self.bar.quiver.tau[i] == i:
                e = self.eps(i)
                if np.any(ffmat.matmul(e, e, self.q)):
                    raise QuiverError("eps-loop is not nilpotent")

    @property
    def quiver_n(self) -> int:
        return self.bar.quiver.n

    def flat_q_arrows(self) -> bytes:
        return b"".join(
            self.mats[a].tobytes() for a in range(self.bar.num_q_arrows)
        )


def zero_rep(bar: BarQuiver, q: int) -> Rep:
    n = bar.quiver.n
    dims = (0,) * n
    mats = [ffmat.zeros(0, 0) for _ in bar.arrows]
    return Rep(bar, q, dims, mats)


def simple(bar: BarQuiver, q: int, i: int) -> Rep:
    dims = [0] * bar.quiver.n
    dims[i] = 1
    mats = [ffmat.zeros(dims[t], dims[s]) for s, t in bar.arrows]
    return Rep(bar, q, dims, mats)


def gen_simple(bar: BarQuiver, q: int, i: int) -> Rep:
    """The generalized simple K_i: k[eps]/(eps^2) at a tau-fixed vertex, or
    the eps-string on {i, tau i} with eps_i acting invertibly."""
    tau = bar.quiver.tau
    dims = [0] * bar.quiver.n
    if tau[i] == i:
        dims[i] = 2
        mats = [ffmat.zeros(dims[t], dims[s]) for s, t in bar.arrows]
        mats[bar.eps_index[i]] = np.array([[0, 0], [1, 0]], dtype=np.int64)
    else:
        dims[i] = dims[tau[i]] = 1
        mats = [ffmat.zeros(dims[t], dims[s]) for s, t in bar.arrows]
        mats[bar.eps_index[i]] = np.array([[1]], dtype=np.int64)
    return Rep(bar, q, dims, mats)


def direct_sum(reps: list[Rep]) -> Rep:
    bar, q = reps[0].bar, reps[0].q
    n = bar.quiver.n
    dims = [sum(r.dims[v] for r in reps) for v in range(n)]
    mats = []
    for a, (s, t) in enumerate(bar.arrows):
        m = ffmat.zeros(dims[t], dims[s])
        ro = co = 0
        for r in reps:
            m[ro : ro + r.dims[t], co : co + r.dims[s]] = r.mats[a]
            ro += r.dims[t]
            co += r.dims[s]
        mats.append(m)
    return Rep(bar, q, dims, mats)


def is_kq_module(rep: Rep) -> bool:
    """True when every eps-arrow acts by zero."""
    return all(
        not np.any(rep.mats[bar_idx])
        for bar_idx in (rep.bar.eps_index[i] for i in range(rep.quiver_n))
    )


# -- hom spaces -------------------------------------------------------------


def hom_system(m: Rep, n: Rep) -> np.ndarray:
    """Coefficient matrix of the intertwiner system for f: m -> n, unknowns
    f_v flattened vertexwise in order."""
    nn = m.quiver_n
    offs = []
    total = 0
    for v in range(nn):
        offs.append(total)
        total += n.dims[v] * m.dims[v]
    rows = []
    for a, (s, t) in enumerate(m.bar.arrows):
        # f_t @ m_a - n_a @ f_s = 0 : shape (n.dims[t], m.dims[s])
        for r in range(n.dims[t]):
            for c in range(m.dims[s]):
                row = np.zeros(total, dtype=np.int64)
                for k in range(m.dims[t]):
                    row[offs[t] + r * m.dims[t] + k] += m.mats[a][k, c]
                for k in range(n.dims[s]):
                    row[offs[s] + k * m.dims[s] + c] -= n.mats[a][r, k]
                rows.append(row % m.q)
    if not rows:
        return ffmat.zeros(0, total)
    return np.array(rows, dtype=np.int64)


def hom_basis(m: Rep, n: Rep) -> list[list[np.ndarray]]:
    """Basis of Hom(m, n) as lists of per-vertex matrices."""
    sys = hom_system(m, n)
    null = ffmat.nullspace(sys, m.q)
    out = []
    for vec in null:
        mats = []
        pos = 0
        for v in range(m.quiver_n):
            size = n.dims[v] * m.dims[v]
            mats.append(vec[pos : pos + size].reshape(n.dims[v], m.dims[v]))
            pos += size
        out.append(mats)
    return out


def hom_dim(m: Rep, n: Rep) -> int:
    sys = hom_system(m, n)
    total = sys.shape[1]
    return total - ffmat.rank(sys, m.q)


def brute_aut_order(rep: Rep, limit: int = 2_000_000) -> int:
    """Count invertible self-intertwiners by iterating the endomorphism space.
    Test oracle only; guarded by the iteration limit."""
    basis = hom_basis(rep, rep)
    d = len(basis)
    if rep.q**d > limit:
        raise BoundExceeded(f"endomorphism space too large: {rep.q}^{d}")
    count = 0
    for coeffs in product(range(rep.q), repeat=d):
        ok = True
        for v in range(rep.quiver_n):
            acc = ffmat.zeros(rep.dims[v], rep.dims[v])
            for c, b in zip(coeffs, basis):
                if c:
                    acc += c * b[v]
            if not ffmat.is_invertible(acc % rep.q, rep.q):
                ok = False
                break
        if ok:
            count += 1
    return count


# -- subreps and quotients ----------------------------------------------------


def is_stable(rep: Rep, bases: tuple[np.ndarray, ...]) -> bool:
    for a, (s, t) in enumerate(rep.bar.arrows):
        if bases[s].size == 0:
            continue
        image = ffmat.matmul(rep.mats[a], bases[s].T, rep.q).T
        if not ffmat.row_space_contains(bases[t], image, rep.q):
            return False
    return True


def sub_rep(rep: Rep, bases: tuple[np.ndarray, ...]) -> Rep:
    dims = [b.shape[0] for b in bases]
    mats = []
    for a, (s, t) in enumerate(rep.bar.arrows):
        if dims[s] == 0 or dims[t] == 0:
            mats.append(ffmat.zeros(dims[t], dims[s]))
            continue
        image = ffmat.matmul(rep.mats[a], bases[s].T, rep.q)
        mats.append(ffmat.solve_matrix(bases[t], image, rep.q))
    return Rep(rep.bar, rep.q, dims, mats)


def quotient_rep(rep: Rep, bases: tuple[np.ndarray, ...]) -> Rep:
    """Quotient by the subrepresentation spanned by the given row bases."""
    q = rep.q
    reduced = []
    comp = []
    for v in range(rep.quiver_n):
        if bases[v].size:
            r, piv = ffmat.rref(bases[v], q)
        else:
            r, piv = ffmat.zeros(0, rep.dims[v]), []
        reduced.append((r, piv))
        comp.append([c for c in range(rep.dims[v]) if c not in piv])

    def project(v: int, cols: np.ndarray) -> np.ndarray:
        r, piv = reduced[v]
        x = cols % q
        for i, pc in enumerate(piv):
            x = (x - r[i][:, None] @ x[pc : pc + 1, :]) % q
        return x[comp[v], :]

    dims = [len(c) for c in comp]
    mats = []
    for a, (s, t) in enumerate(rep.bar.arrows):
        if dims[s] == 0 or dims[t] == 0:
            mats.append(ffmat.zeros(dims[t], dims[s]))
            continue
        cols = rep.mats[a][:, comp[s]]
        mats.append(project(t, cols))
    return Rep(rep.bar, rep.q, dims, mats)


def enumerate_subreps(rep: Rep, target_dims=None):
    """All stable subspace tuples; optionally restricted to one dim vector."""
    n = rep.quiver_n
    ranges = (
        [range(d + 1) for d in rep.dims]
        if target_dims is None
        else [[int(k)] for k in target_dims]
    )
    for ks in product(*ranges):
        if any(k > d for k, d in zip(ks, rep.dims)):
            continue
        per_vertex = [list(ffmat.all_subspaces(rep.dims[v], ks[v], rep.q)) for v in range(n)]
        for combo in product(*per_vertex):
            if is_stable(rep, combo):
                yield tuple(combo)


# ---------------------------------------------------------------------------
# reflection functors
# ---------------------------------------------------------------------------


def in_torsion_class(rep: Rep, ell: int) -> bool:
    """Membership in T_ell: no nonzero morphism onto S_ell or S_{tau ell}."""
    bar, q = rep.bar, rep.q
    tau = bar.quiver.tau
    for v in {ell, tau[ell]}:
        if hom_dim(rep, simple(bar, q, v)) > 0:
            return False
    return True


def in_free_class(rep: Rep, ell: int) -> bool:
    """Membership in S_ell: no nonzero morphism from S_ell or S_{tau ell}."""
    bar, q = rep.bar, rep.q
    tau = bar.quiver.tau
    for v in {ell, tau[ell]}:
        if hom_dim(simple(bar, q, v), rep) > 0:
            return False
    return True


def reflect(rep: Rep, ell: int, direction: str, target_bar: BarQuiver | None = None) -> Rep:
    """The reflection functor at a sink (plus) or source (minus) orbit.

    The (ell, tau ell)-components are replaced by the kernel of the assembled
    incoming map (resp. cokernel of the outgoing map), the incident non-eps
    arrows are reversed, and the new eps-maps are the restrictions of the
    blockwise eps-action on the assembled space.
    """
    bar, q = rep.bar, rep.q
    quiver = bar.quiver
    tau = quiver.tau
    if direction == "plus":
        if not quiver.is_sink(ell):
            raise QuiverError(f"vertex {ell} is not a sink")
    elif direction == "minus":
        if not quiver.is_source(ell):
            raise QuiverError(f"vertex {ell} is not a source")
    else:
        raise ValueError("direction must be 'plus' or 'minus'")
    if target_bar is None:
        target_bar = BarQuiver(quiver.reflected_at(ell))
    orbit = {ell, tau[ell]}

    # arrows of Q incident to the orbit, indexed identically in both quivers
    if direction == "plus":
        incident = [a for a in range(bar.num_q_arrows) if bar.arrows[a][1] in orbit]
        attach = lambda a: bar.arrows[a][1]  # vertex of the orbit
        other = lambda a: bar.arrows[a][0]
    else:
        incident = [a for a in range(bar.num_q_arrows) if bar.arrows[a][0] in orbit]
        attach = lambda a: bar.arrows[a][0]
        other = lambda a: bar.arrows[a][1]

    # assembled space W_v = sum of V_{other(a)} over incident arrows at v
    comp_of: dict[int, list[int]] = {v: [] for v in orbit}
    offsets: dict[int, int] = {}
    wdim: dict[int, int] = {v: 0 for v in orbit}
    for a in incident:
        v = attach(a)
        offsets[a] = wdim[v]
        comp_of[v].append(a)
        wdim[v] += rep.dims[other(a)]

    def eps_w(v: int) -> np.ndarray:
        """Blockwise eps: the a-component maps to the tau(a)-component via the
        eps-map of the source vertex (plus) / target vertex (minus)."""
        w = tau[v]
        m = ffmat.zeros(wdim[w], wdim[v])
        for a in comp_of[v]:
            b = bar.tau_arrow[a]
            u = other(a)
            eps_u = rep.eps(u)
            m[offsets[b] : offsets[b] + rep.dims[tau[u]], offsets[a] : offsets[a] + rep.dims[u]] = eps_u
        return m

    new_comp: dict[int, np.ndarray] = {}
    new_dims = list(rep.dims)
    if direction == "plus":
        # kernel of the assembled in-map
        for v in orbit:
            phi = ffmat.zeros(rep.dims[v], wdim[v])
            for a in comp_of[v]:
                phi[:, offsets[a] : offsets[a] + rep.dims[other(a)]] = rep.mats[a]
            ker = ffmat.nullspace(phi, q)  # rows span the kernel inside W_v
            new_comp[v] = ker
            new_dims[v] = ker.shape[0]
    else:
        # cokernel of the assembled out-map
        for v in orbit:
            psi = ffmat.zeros(wdim[v], rep.dims[v])
            for a in comp_of[v]:
                psi[offsets[a] : offsets[a] + rep.dims[other(a)], :] = rep.mats[a]
            img = psi.T  # rows span the image
            new_comp[v] = img
            new_dims[v] = wdim[v] - ffmat.rank(img, q)

    def coker_project(v: int, cols: np.ndarray) -> np.ndarray:
        img = new_comp[v]
        if img.size:
            r, piv = ffmat.rref(img, q)
        else:
            r, piv = ffmat.zeros(0, wdim[v]), []
        comp = [c for c in range(wdim[v]) if c not in piv]
        x = cols % q
        for i, pc in enumerate(piv):
            x = (x - r[i][:, None] @ x[pc : pc + 1, :]) % q
        return x[comp, :]

    mats = []
    for a, (s, t) in enumerate(target_bar.arrows):
        if a < bar.num_q_arrows and a in incident:
            if direction == "plus":
                # reversed arrow: N_v -> V_u, the a-component of the inclusion
                v = bar.arrows[a][1]
                u = bar.arrows[a][0]
                ker = new_comp[v]
                mats.append(ker[:, offsets[a] : offsets[a] + rep.dims[u]].T % q)
            else:
                # reversed arrow: V_u -> C_v, include as a-component and project
                v = bar.arrows[a][0]
                u = bar.arrows[a][1]
                incl = ffmat.zeros(wdim[v], rep.dims[u])
                incl[offsets[a] : offsets[a] + rep.dims[u], :] = ffmat.eye(rep.dims[u])
                mats.append(coker_project(v, incl))
        elif a < bar.num_q_arrows:
            mats.append(rep.mats[a])
        else:
            # eps arrow at some vertex v
            v = bar.arrows[a][0]
            if v not in orbit:
                mats.append(rep.mats[a])
            elif direction == "plus":
                ker_v, ker_w = new_comp[v], new_comp[tau[v]]
                if ker_v.shape[0] == 0 or ker_w.shape[0] == 0:
                    mats.append(ffmat.zeros(ker_w.shape[0], ker_v.shape[0]))
                else:
                    image = ffmat.matmul(eps_w(v), ker_v.T, q)
                    mats.append(ffmat.solve_matrix(ker_w, image, q))
            else:
                w = tau[v]
                section_cols = []
                img = new_comp[v]
                if img.size:
                    _, piv = ffmat.rref(img, q)
                else:
                    piv = []
                comp = [c for c in range(wdim[v]) if c not in piv]
                sec = ffmat.zeros(wdim[v], len(comp))
                for k, c in enumerate(comp):
                    sec[c, k] = 1
                mats.append(coker_project(w, ffmat.matmul(eps_w(v), sec, q)))
    return Rep(target_bar, q, new_dims, mats)


# ---------------------------------------------------------------------------
# stratified catalogs
# ---------------------------------------------------------------------------

_PRIM_ROOT = {2: 1, 3: 2, 5: 2}


def h_indec_reps(bar: BarQuiver, q: int, orbit: tuple[int, ...]) -> list[Rep]:
    """Canonical indecomposable eps-only modules supported on one tau-orbit:
    [K, S] at a fixed vertex, [K_i, K_j, S_i, S_j] at a pair."""
    if len(orbit) == 1:
        i = orbit[0]
        return [gen_simple(bar, q, i), simple(bar, q, i)]
    i, j = orbit
    return [gen_simple(bar, q, i), gen_simple(bar, q, j), simple(bar, q, i), simple(bar, q, j)]


def orbit_types(dims, orbit) -> list[tuple[int, ...]]:
    """Multiplicity vectors of the eps-module types compatible with dims."""
    if len(orbit) == 1:
        d = dims[orbit[0]]
        return [(c, d - 2 * c) for c in range(d // 2 + 1)]
    di, dj = dims[orbit[0]], dims[orbit[1]]
    out = []
    for c in range(min(di, dj) + 1):
        for cp in range(min(di, dj) - c + 1):
            s, sp = di - c - cp, dj - c - cp
            if s >= 0 and sp >= 0:
                out.append((c, cp, s, sp))
    return out


def _rad_basis(bar: BarQuiver, q: int, tiny: Rep) -> list[list[np.ndarray]]:
    """Basis of the radical of End(tiny) for an indecomposable eps-module."""
    basis = hom_basis(tiny, tiny)
    d = len(basis)
    if d > 3:
        raise BoundExceeded("unexpectedly large local endomorphism algebra")
    non_units = []
    for coeffs in product(range(q), repeat=d):
        mats = []
        unit = True
        for v in range(tiny.quiver_n):
            acc = ffmat.zeros(tiny.dims[v], tiny.dims[v])
            for c, b in zip(coeffs, basis):
                acc = (acc + c * b[v]) % q
            mats.append(acc)
            if tiny.dims[v] and not ffmat.is_invertible(acc, q):
                unit = False
        if not unit:
            non_units.append(np.concatenate([m.flatten() for m in mats]) % q)
    if not non_units:
        return []
    stacked = np.array(non_units, dtype=np.int64)
    r, piv = ffmat.rref(stacked, q)
    out = []
    for row_idx in range(len(piv)):
        vec = r[row_idx]
        mats = []
        pos = 0
        for v in range(tiny.quiver_n):
            size = tiny.dims[v] * tiny.dims[v]
            mats.append(vec[pos : pos + size].reshape(tiny.dims[v], tiny.dims[v]))
            pos += size
        out.append(mats)
    return out


class Stratum:
    """All isoclasses with one fixed eps-module type, realized as the orbit
    partition of the linear variety of arrow matrices under the automorphism
    group of the canonical eps-structure."""

    def __init__(self, bar: BarQuiver, q: int, dims, type_spec, point_limit: int):
        self.bar = bar
        self.q = q
        self.dims = tuple(dims)
        self.type_spec = tuple(type_spec)  # one multiplicity tuple per orbit
        self.point_limit = point_limit
        self._build_canonical()
        self._build_group()
        self._build_variety()

    # canonical eps-structure ------------------------------------------------

    def _build_canonical(self):
        bar, q = self.bar, self.q
        orbits = bar.quiver.orbits()
        n = bar.quiver.n
        offsets = [0] * n
        self.positions: dict[tuple[int, int, int], dict[int, list[int]]] = {}
        summands = []
        for oi, orbit in enumerate(orbits):
            tinies = h_indec_reps(bar, q, orbit)
            mults = self.type_spec[oi]
            for ti, mult in enumerate(mults):
                for copy in range(mult):
                    tiny = tinies[ti]
                    pos = {}
                    for v in orbit:
                        pos[v] = list(range(offsets[v], offsets[v] + tiny.dims[v]))
                        offsets[v] += tiny.dims[v]
                    self.positions[(oi, ti, copy)] = pos
                    summands.append((oi, ti, tiny))
        if tuple(offsets) != self.dims:
            raise QuiverError("eps-type multiplicities do not match the dimension vector")
        self.eps_mats = {}
        for v in range(n):
            tv = bar.quiver.tau[v]
            e = ffmat.zeros(self.dims[tv], self.dims[v])
            self.eps_mats[v] = e
        for (oi, ti, copy), pos in self.positions.items():
            orbit = orbits[oi]
            tiny = h_indec_reps(bar, q, orbit)[ti]
            for v in orbit:
                tv = bar.quiver.tau[v]
                local = tiny.eps(v)
                if local.size:
                    self.eps_mats[v][np.ix_(pos[tv], pos[v])] = local
        self._orbits = orbits

    # the stabilizer of the canonical eps-structure ---------------------------

    def _embed(self, oi: int, ts: int, u: int, tt: int, v: int, phi) -> list[np.ndarray]:
        """Vertex matrices of id + (phi: copy u of type ts -> copy v of type tt)."""
        mats = [ffmat.eye(d) for d in self.dims]
        src = self.positions[(oi, ts, u)]
        tgt = self.positions[(oi, tt, v)]
        for w in self._orbits[oi]:
            if phi[w].size:
                block = mats[w]
                block[np.ix_(tgt[w], src[w])] = (block[np.ix_(tgt[w], src[w])] + phi[w]) % self.q
        return mats

    def _build_group(self):
        bar, q = self.bar, self.q
        gens: list[list[np.ndarray]] = []
        order = 1
        for oi, orbit in enumerate(self._orbits):
            tinies = h_indec_reps(bar, q, orbit)
            mults = self.type_spec[oi]
            homs = {}
            rads = {}
            for a in range(len(tinies)):
                rads[a] = _rad_basis(bar, q, tinies[a])
                for b in range(len(tinies)):
                    if a != b:
                        homs[(a, b)] = hom_basis(tinies[a], tinies[b])
            # group order by the unit-group formula for End of a direct sum
            for ti, m in enumerate(mults):
                rho = len(rads[ti])
                order *= gl_order(m, q) * q ** (m * m * rho)
            for (a, b), basis in homs.items():
                order *= q ** (mults[a] * mults[b] * len(basis))
            # generators
            for ti, m in enumerate(mults):
                id_phi = {v: ffmat.eye(tinies[ti].dims[v]) for v in orbit}
                for u in range(m):
                    for v in range(m):
                        if u != v:
                            gens.append(self._embed(oi, ti, u, ti, v, id_phi))
                if m >= 1 and _PRIM_ROOT[q] != 1:
                    mats = [ffmat.eye(d) for d in self.dims]
                    for w in orbit:
                        for pidx in self.positions[(oi, ti, 0)][w]:
                            mats[w][pidx, pidx] = _PRIM_ROOT[q]
                    gens.append(mats)
                for phi_mats in rads[ti]:
                    phi = {v: phi_mats[v] for v in orbit}
                    for u in range(m):
                        for v in range(m):
                            gens.append(self._embed(oi, ti, u, ti, v, phi))
            for (a, b), basis in homs.items():
                for phi_mats in basis:
                    phi = {v: phi_mats[v] for v in orbit}
                    for u in range(mults[a]):
                        for v in range(mults[b]):
                            gens.append(self._embed(oi, a, u, b, v, phi))
        self.group_order = order
        self.generators = []
        for g in gens:
            ginv = [ffmat.inv(m, q) for m in g]
            self.generators.append((g, ginv))

    # the linear variety of arrow matrices ------------------------------------

    def _build_variety(self):
        bar, q = self.bar, self.q
        sizes = []
        offs = []
        total = 0
        for a in range(bar.num_q_arrows):
            s, t = bar.arrows[a]
            offs.append(total)
            sizes.append((self.dims[t], self.dims[s]))
            total += self.dims[t] * self.dims[s]
        self.arrow_offs = offs
        self.arrow_sizes = sizes
        self.arrow_total = total
        rows = []
        tau = bar.quiver.tau
        for a in range(bar.num_q_arrows):
            s, t = bar.arrows[a]
            ta = bar.tau_arrow[a]
            es = self.eps_mats[s]
            et = self.eps_mats[t]
            # E_t A_a - A_{tau a} E_s = 0, shape (dims[tau t], dims[s])
            for r in range(self.dims[tau[t]]):
                for c in range(self.dims[s]):
                    row = np.zeros(total, dtype=np.int64)
                    dt, ds = sizes[a]
                    for k in range(dt):
                        row[offs[a] + k * ds + c] += et[r, k]
                    dt2, ds2 = sizes[ta]
                    for k in range(ds2):
                        row[offs[ta] + r * ds2 + k] -= es[k, c]
                    rows.append(row % q)
        system = np.array(rows, dtype=np.int64) if rows else ffmat.zeros(0, total)
        self.solution_basis = ffmat.nullspace(system, q)
        self.num_points = q ** self.solution_basis.shape[0]
        if self.num_points > self.point_limit:
            raise BoundExceeded(
                f"stratum variety too large: {self.num_points} points"
            )

    def points(self):
        nb = self.solution_basis.shape[0]
        if self.arrow_total == 0:
            yield np.zeros(0, dtype=np.int64)
            return
        for coeffs in product(range(self.q), repeat=nb):
            if nb:
                vec = np.mod(np.array(coeffs, dtype=np.int64) @ self.solution_basis, self.q)
            else:
                vec = np.zeros(self.arrow_total, dtype=np.int64)
            yield vec

    def unflatten(self, vec: np.ndarray) -> list[np.ndarray]:
        mats = []
        for a in range(self.bar.num_q_arrows):
            dt, ds = self.arrow_sizes[a]
            mats.append(vec[self.arrow_offs[a] : self.arrow_offs[a] + dt * ds].reshape(dt, ds))
        return mats

    def act(self, gpair, vec: np.ndarray) -> np.ndarray:
        g, ginv = gpair
        mats = self.unflatten(vec)
        out = np.zeros_like(vec)
        for a in range(self.bar.num_q_arrows):
            s, t = self.bar.arrows[a]
            m = (g[t] @ mats[a] @ ginv[s]) % self.q
            dt, ds = self.arrow_sizes[a]
            out[self.arrow_offs[a] : self.arrow_offs[a] + dt * ds] = m.flatten()
        return out

    def build_rep(self, vec: np.ndarray) -> Rep:
        mats = self.unflatten(vec)
        for v in range(self.bar.quiver.n):
            mats.append(self.eps_mats[v])
        return Rep(self.bar, self.q, self.dims, mats)


@dataclass
class RepClass:
    """An isomorphism class: canonical representative, |Aut|, and the key that
    identifies it across runs."""

    key: str
    dims: tuple[int, ...]
    rep: Rep
    aut: int
    orbit_size: int
    stratum_sig: tuple

    def __repr__(self) -> str:
        return f"RepClass({self.key})"


@dataclass
class DimData:
    strata: list[Stratum]
    classes: list[RepClass]
    point_to_class: list[dict[bytes, str]]
    certificate: dict


class Catalog:
    """Complete isoclass catalogs of nilpotent representations per dimension
    vector, with orbit-certified completeness and O(1) classification."""

    def __init__(self, bar: BarQuiver, q: int, dim_cap: int = 6, point_limit: int = 600_000):
        if q not in (2, 3, 5):
            raise QuiverError("supported primes are 2, 3, 5")
        self.bar = bar
        self.q = q
        self.dim_cap = dim_cap
        self.point_limit = point_limit
        self._dims: dict[tuple[int, ...], DimData] = {}
        self._decomp: dict[str, tuple[tuple[str, int], ...]] = {}
        self._subreps: dict[str, list] = {}
        self._ext_cache: dict[tuple[str, str], tuple[dict[str, int], int]] = {}
        self._class_index: dict[str, RepClass] = {}

    # -- construction ---------------------------------------------------

    def ensure(self, dims) -> DimData:
        dims = tuple(int(d) for d in dims)
        if dims in self._dims:
            return self._dims[dims]
        if sum(dims) > self.dim_cap:
            raise BoundExceeded(
                f"dimension vector {dims} exceeds the catalog cap {self.dim_cap}"
            )
        data = self._build(dims)
        self._dims[dims] = data
        for cls in data.classes:
            self._class_index[cls.key] = cls
        return data

    def _build(self, dims: tuple[int, ...]) -> DimData:
        orbits = self.bar.quiver.orbits()
        per_orbit = [orbit_types(dims, o) for o in orbits]
        strata: list[Stratum] = []
        classes: list[RepClass] = []
        maps: list[dict[bytes, str]] = []
        gl_total = 1
        for d in dims:
            gl_total *= gl_order(d, self.q)
        mass = 0
        for spec in product(*per_orbit):
            st = Stratum(self.bar, self.q, dims, spec, self.point_limit)
            sidx = len(strata)
            strata.append(st)
            visited: dict[bytes, str] = {}
            order_count = 0
            for vec in st.points():
                key0 = vec.tobytes()
                if key0 in visited:
                    continue
                cls_key = f"{self.q}|{dims}|{spec}|{len([c for c in classes if c.stratum_sig == spec])}"
                queue = [vec]
                visited[key0] = cls_key
                orbit_pts = 1
                head = 0
                while head < len(queue):
                    cur = queue[head]
                    head += 1
                    for gpair in st.generators:
                        nxt = st.act(gpair, cur)
                        kb = nxt.tobytes()
                        if kb not in visited:
                            visited[kb] = cls_key
                            queue.append(nxt)
                            orbit_pts += 1
                aut, rem = divmod(st.group_order, orbit_pts)
                if rem:
                    raise RuntimeError("orbit size does not divide the group order")
                classes.append(
                    RepClass(cls_key, dims, st.build_rep(vec), aut, orbit_pts, spec)
                )
                order_count += orbit_pts
            if order_count != st.num_points:
                raise RuntimeError("stratum points not exhausted by orbits")
            maps.append(visited)
            if st.group_order:
                cfg, rem = divmod(gl_total, st.group_order)
                if rem:
                    raise RuntimeError("eps-stabilizer order does not divide |GL|")
                mass += cfg * st.num_points
        cert = {
            "gl_order": gl_total,
            "predicted_tuples": mass,
            "class_mass": sum(gl_total // c.aut for c in classes),
        }
        if cert["predicted_tuples"] != cert["class_mass"]:
            raise RuntimeError("mass formula certificate failed")
        return DimData(strata, classes, maps, cert)

    def classes(self, dims) -> list[RepClass]:
        return self.ensure(dims).classes

    def class_of(self, key: str) -> RepClass:
        return self._class_index[key]

    # -- classification ----------------------------------------------------

    def etype_of(self, rep: Rep) -> tuple:
        """The eps-module type spec (per tau-orbit multiplicity tuples)."""
        spec = []
        for orbit in self.bar.quiver.orbits():
            if len(orbit) == 1:
                i = orbit[0]
                c = ffmat.rank(rep.eps(i), self.q)
                spec.append((c, rep.dims[i] - 2 * c))
            else:
                i, j = orbit
                c = ffmat.rank(rep.eps(i), self.q)
                cp = ffmat.rank(rep.eps(j), self.q)
                spec.append((c, cp, rep.dims[i] - c - cp, rep.dims[j] - c - cp))
        return tuple(spec)

    def classify(self, rep: Rep) -> str:
        dims = rep.dims
        data = self.ensure(dims)
        spec = self.etype_of(rep)
        sidx = next(
            (k for k, st in enumerate(data.strata) if st.type_spec == spec), None
        )
        if sidx is None:
            raise RuntimeError(f"no stratum with eps-type {spec}")
        gcols = self._adapted_basis(rep)
        ginv = [ffmat.inv(g, self.q) if g.size else g for g in gcols]
        flat = []
        for a in range(self.bar.num_q_arrows):
            s, t = self.bar.arrows[a]
            m = rep.mats[a]
            if m.size:
                m = (ginv[t] @ m @ gcols[s]) % self.q
            flat.append(m.flatten())
        vec = np.concatenate(flat) if flat else np.zeros(0, dtype=np.int64)
        key_bytes = vec.astype(np.int64).tobytes()
        smap = data.point_to_class[sidx]
        if key_bytes not in smap:
            raise RuntimeError("classification failed: point not found in its stratum")
        return smap[key_bytes]

    def _adapted_basis(self, rep: Rep) -> list[np.ndarray]:
        """Per-vertex change of basis (columns = new basis) taking the
        eps-structure to its canonical stratum form."""
        q = self.q
        out: list[np.ndarray] = [None] * rep.quiver_n  # type: ignore[list-item]
        for orbit in self.bar.quiver.orbits():
            if len(orbit) == 1:
                i = orbit[0]
                e = rep.eps(i)
                d = rep.dims[i]
                im_rows, _ = ffmat.rref(e.T % q, q)
                c = ffmat.rank(e, q)
                im_rows = im_rows[:c]
                cols = []
                if c:
                    pre = ffmat.solve_matrix(e.T, im_rows.T, q)
                    # pre columns solve e @ x = w
                for k in range(c):
                    cols.append(pre[:, k])
                    cols.append(im_rows[k])
                ker = ffmat.nullspace(e, q)
                base = im_rows if c else ffmat.zeros(0, d)
                for row in ker:
                    if ffmat.rank(np.vstack([base, row[None, :]]), q) > ffmat.rank(base, q):
                        base = np.vstack([base, row[None, :]])
                        cols.append(row)
                g = np.array(cols, dtype=np.int64).T % q if cols else ffmat.zeros(d, d)
                if d == 0:
                    g = ffmat.zeros(0, 0)
                out[i] = g
                # interleaved (generator, socle) pairs then trivials
            else:
                i, j = orbit
                ei, ej = rep.eps(i), rep.eps(j)
                di, dj = rep.dims[i], rep.dims[j]
                c = ffmat.rank(ei, q)
                cp = ffmat.rank(ej, q)
                qi_rows = ffmat.rref(ei.T % q, q)[0][:c]  # im E_i inside V_j
                p_rows = ffmat.rref(ej.T % q, q)[0][:cp]  # im E_j inside V_i
                a_cols = ffmat.solve_matrix(ei.T, qi_rows.T, q) if c else ffmat.zeros(di, 0)
                b_cols = ffmat.solve_matrix(ej.T, p_rows.T, q) if cp else ffmat.zeros(dj, 0)
                gi_cols = [a_cols[:, k] for k in range(c)]
                gi_cols += [p_rows[k] for k in range(cp)]
                base = p_rows if cp else ffmat.zeros(0, di)
                for row in ffmat.nullspace(ei, q):
                    if ffmat.rank(np.vstack([base, row[None, :]]), q) > ffmat.rank(base, q):
                        base = np.vstack([base, row[None, :]])
                        gi_cols.append(row)
                gj_cols = [qi_rows[k] for k in range(c)]
                gj_cols += [b_cols[:, k] for k in range(cp)]
                base = qi_rows if c else ffmat.zeros(0, dj)
                for row in ffmat.nullspace(ej, q):
                    if ffmat.rank(np.vstack([base, row[None, :]]), q) > ffmat.rank(base, q):
                        base = np.vstack([base, row[None, :]])
                        gj_cols.append(row)
                out[i] = np.array(gi_cols, dtype=np.int64).T % q if gi_cols else ffmat.zeros(di, di)
                out[j] = np.array(gj_cols, dtype=np.int64).T % q if gj_cols else ffmat.zeros(dj, dj)
                if di == 0:
                    out[i] = ffmat.zeros(0, 0)
                if dj == 0:
                    out[j] = ffmat.zeros(0, 0)
        return out

    # -- decomposition and counting ----------------------------------------

    def subrep_bases(self, key: str) -> list[tuple[np.ndarray, ...]]:
        if key not in self._subreps:
            rep = self.class_of(key).rep
            self._subreps[key] = list(enumerate_subreps(rep))
        return self._subreps[key]

    def decomposition(self, key: str) -> tuple[tuple[str, int], ...]:
        """Krull-Schmidt decomposition as a sorted (class key, multiplicity) tuple."""
        if key in self._decomp:
            return self._decomp[key]
        cls = self.class_of(key)
        rep = cls.rep
        total = rep.total_dim
        result: tuple[tuple[str, int], ...]
        if total == 0:
            result = ()
        else:
            split = None
            subs = self.subrep_bases(key)
            by_dims: dict[tuple[int, ...], list] = {}
            for bases in subs:
                by_dims.setdefault(tuple(b.shape[0] for b in bases), []).append(bases)
            for bases in subs:
                sdims = tuple(b.shape[0] for b in bases)
                if sum(sdims) in (0, total):
                    continue
                comp_dims = tuple(d - s for d, s in zip(rep.dims, sdims))
                for cbases in by_dims.get(comp_dims, []):
                    direct = True
                    for v in range(rep.quiver_n):
                        dv = rep.dims[v]
                        if dv == 0:
                            continue
                        stacked = np.vstack([bases[v], cbases[v]]) if bases[v].size or cbases[v].size else ffmat.zeros(0, dv)
                        if ffmat.rank(stacked, self.q) != dv:
                            direct = False
                            break
                    if direct:
                        split = (bases, cbases)
                        break
                if split:
                    break
            if split is None:
                result = ((key, 1),)
            else:
                k1 = self.classify(sub_rep(rep, split[0]))
                k2 = self.classify(sub_rep(rep, split[1]))
                merged: dict[str, int] = {}
                for k, m in self.decomposition(k1) + self.decomposition(k2):
                    merged[k] = merged.get(k, 0) + m
                result = tuple(sorted(merged.items()))
        self._decomp[key] = result
        return result

    def summand_multiplicity(self, key: str, part_key: str) -> int:
        return dict(self.decomposition(key)).get(part_key, 0)

    def is_kq_class(self, key: str) -> bool:
        return is_kq_module(self.class_of(key).rep)

    def hall_number(self, lkey: str, mkey: str, nkey: str) -> int:
        """F^L_{MN}: submodules of L isomorphic to N with quotient isomorphic to M."""
        lcls, mcls, ncls = self.class_of(lkey), self.class_of(mkey), self.class_of(nkey)
        if tuple(a + b for a, b in zip(mcls.dims, ncls.dims)) != lcls.dims:
            raise QuiverError("dimension vectors do not add up")
        rep = lcls.rep
        count = 0
        for bases in enumerate_subreps(rep, ncls.dims):
            if self.classify(sub_rep(rep, bases)) != nkey:
                continue
            if self.classify(quotient_rep(rep, bases)) == mkey:
                count += 1
        return count

    def ext_distribution(
        self, quot_key: str, sub_key: str, q_arrows_only: bool = False
    ) -> tuple[dict[str, int], int]:
        """Cocycle-level census of extensions 0 -> sub -> L -> quot -> 0:
        returns ({class key of L: |Ext^1(quot, sub)_L|}, dim Hom(quot, sub)).

        With q_arrows_only the cocycle components on eps-arrows are frozen to
        zero, which computes extensions over the path algebra kQ instead of
        the iquiver algebra (both modules must then be kQ-modules)."""
        cache_key = (quot_key, sub_key, q_arrows_only)
        if cache_key in self._ext_cache:
            return self._ext_cache[cache_key]
        x = self.class_of(quot_key).rep
        y = self.class_of(sub_key).rep
        q = self.q
        bar = self.bar
        sizes = []
        offs = []
        total = 0
        for a, (s, t) in enumerate(bar.arrows):
            offs.append(total)
            if q_arrows_only and a >= bar.num_q_arrows:
                sizes.append((0, 0))
                continue
            sizes.append((y.dims[t], x.dims[s]))
            total += y.dims[t] * x.dims[s]
        rows = []
        for rel in bar.relations():
            # block entry: sum sign * (y_second c_first + c_second x_first)
            s1 = bar.arrows[rel[0][1]][0]
            t2 = bar.arrows[rel[0][2]][1]
            nrow, ncol = y.dims[t2], x.dims[s1]
            for r in range(nrow):
                for c in range(ncol):
                    row = np.zeros(total, dtype=np.int64)
                    for sign, first, second in rel:
                        fy, fx = sizes[first]
                        sy, sx = sizes[second]
                        # y_second @ c_first : (r, c) entry
                        for k in range(fy):
                            row[offs[first] + k * fx + c] += sign * y.mats[second][r, k]
                        # c_second @ x_first : (r, c)
                        for k in range(sx):
                            row[offs[second] + r * sx + k] += sign * x.mats[first][k, c]
                    rows.append(row % q)
        system = np.array(rows, dtype=np.int64) if rows else ffmat.zeros(0, total)
        zbasis = ffmat.nullspace(system, q)
        nz = zbasis.shape[0]
        if q**nz > self.point_limit:
            raise BoundExceeded(f"cocycle space too large: {q}^{nz}")
        hom_xy = hom_dim(x, y)
        cob_dim = sum(yd * xd for yd, xd in ((y.dims[v], x.dims[v]) for v in range(x.quiver_n))) - hom_xy
        counts: dict[str, int] = {}
        dims = tuple(a + b for a, b in zip(x.dims, y.dims))
        self.ensure(dims)
        for coeffs in product(range(q), repeat=nz):
            if nz:
                vec = np.mod(np.array(coeffs, dtype=np.int64) @ zbasis, q)
            else:
                vec = np.zeros(total, dtype=np.int64)
            mats = []
            for a, (s, t) in enumerate(bar.arrows):
                dy, dx = sizes[a]
                cblock = vec[offs[a] : offs[a] + dy * dx].reshape(dy, dx)
                m = ffmat.zeros(y.dims[t] + x.dims[t], y.dims[s] + x.dims[s])
                m[: y.dims[t], : y.dims[s]] = y.mats[a]
                if dy:
                    m[:dy, y.dims[s] :] = cblock
                m[y.dims[t] :, y.dims[s] :] = x.mats[a]
                mats.append(m)
            middle = Rep(bar, q, dims, mats)
            lkey = self.classify(middle)
            counts[lkey] = counts.get(lkey, 0) + 1
        cob = q**cob_dim
        dist = {}
        for lkey, c in counts.items():
            val, rem = divmod(c, cob)
            if rem:
                raise RuntimeError("cocycle count not divisible by the coboundary count")
            dist[lkey] = val
        out = (dist, hom_xy)
        self._ext_cache[cache_key] = out
        return out

    def ext_middle_ratio(self, quot_key: str, sub_key: str, lkey: str):
        """|Ext^1(M, N)_L| / |Hom(M, N)| as an exact Fraction."""
        from fractions import Fraction

        dist, hom_xy = self.ext_distribution(quot_key, sub_key)
        return Fraction(dist.get(lkey, 0), self.q**hom_xy)

    # -- convenience lookups -------------------------------------------------

    def key_of_rep(self, rep: Rep) -> str:
        return self.classify(rep)

    def simple_key(self, i: int) -> str:
        return self.classify(simple(self.bar, self.q, i))

    def gen_simple_key(self, i: int) -> str:
        return self.classify(gen_simple(self.bar, self.q, i))

    def zero_key(self) -> str:
        return self.classify(zero_rep(self.bar, self.q))

    def semisimple_key(self, mults: dict[int, int]) -> str:
        parts = []
        for v, m in sorted(mults.items()):
            parts.extend(simple(self.bar, self.q, v) for _ in range(m))
        if not parts:
            return self.zero_key()
        return self.classify(direct_sum(parts))

    def certificate(self, dims) -> dict:
        return self.ensure(dims).certificate


def raw_tuple_count(bar: BarQuiver, q: int, dims, limit: int = 400_000) -> int:
    """Independent mass-formula oracle: counts all relation-satisfying matrix
    tuples by brute force over eps-configurations (arrow counts are exact
    nullity counts given the eps-part).  Guarded by the iteration limit."""
    dims = tuple(dims)
    n = bar.quiver.n
    tau = bar.quiver.tau
    eps_entries = sum(dims[v] * dims[tau[v]] for v in range(n))
    if q**eps_entries > limit:
        raise BoundExceeded(f"eps space too large: {q}^{eps_entries}")
    shapes = [(dims[tau[v]], dims[v]) for v in range(n)]
    total = 0
    for flat in product(range(q), repeat=eps_entries):
        eps = []
        pos = 0
        for v in range(n):
            r, c = shapes[v]
            eps.append(np.array(flat[pos : pos + r * c], dtype=np.int64).reshape(r, c))
            pos += r * c
        ok = True
        for v in range(n):
            prod_ = ffmat.matmul(eps[v], eps[tau[v]], q)
            if np.any(prod_):
                ok = False
                break
        if not ok:
            continue
        # arrows: linear constraints given eps
        sizes = []
        offs = []
        tot = 0
        for a in range(bar.num_q_arrows):
            s, t = bar.arrows[a]
            offs.append(tot)
            sizes.append((dims[t], dims[s]))
            tot += dims[t] * dims[s]
        rows = []
        for a in range(bar.num_q_arrows):
            s, t = bar.arrows[a]
            ta = bar.tau_arrow[a]
            for r in range(dims[tau[t]]):
                for c in range(dims[s]):
                    row = np.zeros(tot, dtype=np.int64)
                    dt, ds = sizes[a]
                    for k in range(dt):
                        row[offs[a] + k * ds + c] += eps[t][r, k]
                    dt2, ds2 = sizes[ta]
                    for k in range(ds2):
                        row[offs[ta] + r * ds2 + k] -= eps[s][k, c]
                    rows.append(row % q)
        if rows:
            system = np.array(rows, dtype=np.int64)
            nullity = tot - ffmat.rank(system, q)
        else:
            nullity = tot
        total += q**nullity
    return total


# ---------------------------------------------------------------------------
# standard rank-2 families
# ---------------------------------------------------------------------------


def split_rank_one() -> IQuiver:
    """One tau-fixed vertex, no arrows."""
    return IQuiver(1, (), (0,))


def split_quiver(a: int, sink_first: bool = True) -> IQuiver:
    """Split rank 2 with trivial involution: vertices (i, j) = (0, 1) and a
    arrows j -> i (so 0 is a sink), or i -> j when sink_first is False."""
    arrows = tuple(((1, 0) if sink_first else (0, 1)) for _ in range(a))
    return IQuiver(2, arrows, (0, 1))


def quasisplit_quiver(a: int, b: int, sink_first: bool = True) -> IQuiver:
    """Quasi-split rank 2: vertices (i, tau i, j, tau j) = (0, 1, 2, 3) with a
    arrows j -> i and tau j -> tau i, b arrows j -> tau i and tau j -> i;
    {0, 1} is the sink orbit (source orbit when sink_first is False)."""
    arrows = []
    for _ in range(a):
        arrows += [(2, 0), (3, 1)]
    for _ in range(b):
        arrows += [(2, 1), (3, 0)]
    if not sink_first:
        arrows = [(t, s) for s, t in arrows]
    return IQuiver(4, tuple(arrows), (1, 0, 3, 2))


def split_j_pair_quiver(a: int) -> IQuiver:
    """Rank 2 with i = tau i a sink and a tau-swapped source pair {j, tau j}:
    vertices (i, j, tau j) = (0, 1, 2), a arrows j -> i and tau j -> i."""
    arrows = []
    for _ in range(a):
        arrows += [(1, 0), (2, 0)]
    return IQuiver(3, tuple(arrows), (0, 2, 1))
