"""Simple highest-weight modules of the quantized enveloping algebra over Q(q).

The module V_lambda is cut out of the span of F-monomial vectors
F_{i1}...F_{ik} xi by the radical of the contravariant (Shapovalov-type)
form, echelonized to a weight basis.  Basis words are chosen greedily in
lexicographic order subject to the q = 1 specialization of the Gram minor
staying nonsingular, which keeps every generator-matrix entry regular at
q = 1.  Basis order: weight height, then lexicographic F-word.
"""

from __future__ import annotations

from fractions import Fraction

from .classical import multiset_permutations, solve_intertwiner_square
from .linalg import Mat, solve_square
from .rootdata import RootDatum, gamma_apply
from .scalars import S_ONE, S_ZERO, Scalar, quantum_integer

_F0 = Fraction(0)
_F1 = Fraction(1)


class RepModule:
    """Weight module with explicit generator matrices over Q(q)."""

    def __init__(self, datum: RootDatum, lam):
        lam = tuple(lam)
        if not datum.is_dominant(lam):
            raise ValueError(f"{lam} is not dominant")
        self.datum = datum
        self.lam = lam
        self._e_cache = {}
        self._form_cache = {}
        self._tensor_cache = {}
        self.gamma_mats = {}
        self._build()

    # -- F-word calculus ------------------------------------------------------

    def _word_weight(self, word):
        mu = list(self.lam)
        for i in word:
            mu[i] -= 1
        return tuple(mu)

    def _e_word(self, i, word):
        """e_i . (F_word xi) expanded over F-words, {word': Scalar}."""
        key = (i, word)
        hit = self._e_cache.get(key)
        if hit is not None:
            return hit
        if not word:
            out = {}
        else:
            j, rest = word[0], word[1:]
            out = {}
            for w2, c in self._e_word(i, rest).items():
                w = (j,) + w2
                prev = out.get(w)
                s = c if prev is None else prev + c
                if s:
                    out[w] = s
                elif w in out:
                    del out[w]
            if i == j:
                m = self.datum.coroot_pairing(self._word_weight(rest), i)
                coef = quantum_integer(m, self.datum.d[i])
                if coef:
                    prev = out.get(rest)
                    s = coef if prev is None else prev + coef
                    if s:
                        out[rest] = s
                    elif rest in out:
                        del out[rest]
        self._e_cache[key] = out
        return out

    def _form(self, w1, w2):
        """Contravariant form <F_{w1} xi, F_{w2} xi> over Q(q)."""
        if len(w1) != len(w2):
            return S_ZERO
        if not w1:
            return S_ONE
        key = (w1, w2) if w1 <= w2 else (w2, w1)
        hit = self._form_cache.get(key)
        if hit is not None:
            return hit
        a, b = key
        total = S_ZERO
        for w, c in self._e_word(a[0], b).items():
            total = total + c * self._form(a[1:], w)
        self._form_cache[key] = total
        return total

    # -- construction ----------------------------------------------------------

    def _build(self):
        datum = self.datum
        lam = self.lam
        low = datum.lowest_conjugate(lam)
        box = tuple(a - b for a, b in zip(lam, low))
        contents = [()]
        for i in range(datum.rank):
            contents = [c + (b,) for c in contents for b in range(box[i] + 1)]
        contents.sort(key=lambda c: (sum(c), c))
        self.weights = {}
        order = []
        for content in contents:
            words = sorted(multiset_permutations(content))
            mu = tuple(a - b for a, b in zip(lam, content))
            chosen = self._greedy_basis_at_one(words)
            if chosen:
                self.weights[mu] = (words, chosen)
                order.append(mu)
        self.basis = []
        self.index = {}
        for mu in order:
            for w in self.weights[mu][1]:
                self.index[w] = len(self.basis)
                self.basis.append((mu, w))
        self.dim = len(self.basis)
        expected = datum.weyl_dim(lam)
        if self.dim != expected:
            raise AssertionError(
                f"module construction produced dim {self.dim}, Weyl dim is {expected}")
        self.highest_index = self.index[()]
        n = self.dim
        self.K = []
        self.Kinv = []
        self.E = []
        self.F = []
        for i in range(datum.rank):
            k_mat = Mat(n, n, S_ONE)
            kinv_mat = Mat(n, n, S_ONE)
            for idx, (mu, _) in enumerate(self.basis):
                e = datum.d[i] * datum.coroot_pairing(mu, i)
                k_mat.set(idx, idx, Scalar.q_power(e))
                kinv_mat.set(idx, idx, Scalar.q_power(-e))
            self.K.append(k_mat)
            self.Kinv.append(kinv_mat)
            e_mat = Mat(n, n, S_ONE)
            f_mat = Mat(n, n, S_ONE)
            for idx, (mu, w) in enumerate(self.basis):
                evec = self._e_word(i, w)
                if evec:
                    for w2, c2 in self.express(evec).items():
                        e_mat.set(self.index[w2], idx, c2)
                for w2, c2 in self.express({(i,) + w: S_ONE}).items():
                    f_mat.set(self.index[w2], idx, c2)
            self.E.append(e_mat)
            self.F.append(f_mat)

    def _greedy_basis_at_one(self, words):
        """Lex-greedy word subset with nonsingular Gram minor at q = 1."""
        chosen = []
        rows = []
        by_col = {}
        for k, w in enumerate(words):
            row = {}
            for j, w2 in enumerate(words):
                v = self._form(w, w2).specialize(1)
                if v:
                    row[j] = v
            while row:
                c = min(row)
                hit = by_col.get(c)
                if hit is None:
                    break
                coef = row[c]
                for j, v in rows[hit].items():
                    s = row.get(j, _F0) - coef * v
                    if s:
                        row[j] = s
                    elif j in row:
                        del row[j]
            if row:
                c = min(row)
                piv = row[c]
                rows.append({j: v / piv for j, v in row.items()})
                by_col[c] = len(rows) - 1
                chosen.append(w)
        return chosen

    def express(self, vec):
        """Coordinates {basis word: Scalar} of an F-word combination in V_lambda."""
        vec = {w: c for w, c in vec.items() if c}
        if not vec:
            return {}
        mu = self._word_weight(next(iter(vec)))
        entry = self.weights.get(mu)
        if entry is None:
            return {}
        words, chosen = entry
        rhs = []
        for b in chosen:
            total = S_ZERO
            for w, c in vec.items():
                total = total + c * self._form(b, w)
            rhs.append(total)
        gmat = Mat.from_dense([[self._form(b1, b2) for b2 in chosen] for b1 in chosen], S_ONE)
        x = solve_square(gmat, rhs, S_ZERO)
        for w0 in words:
            lhs = S_ZERO
            for w, c in vec.items():
                lhs = lhs + c * self._form(w0, w)
            acc = S_ZERO
            for j, b in enumerate(chosen):
                acc = acc + x[j] * self._form(w0, b)
            assert lhs == acc, "vector not expressible modulo the form radical"
        return {chosen[j]: x[j] for j in range(len(chosen)) if x[j]}

    @property
    def basis_weights(self):
        return [mu for mu, _ in self.basis]

    # -- tensor-power coproduct action ------------------------------------------

    def tensor_ops(self, m):
        """Matrices of Delta^(m) on V^{(x) m} for E_i, F_i, K_i, K_i^{-1}."""
        hit = self._tensor_cache.get(m)
        if hit is not None:
            return hit
        n = self.dim
        rank = self.datum.rank
        if m == 0:
            one = Mat.identity(1, S_ONE)
            zero = Mat(1, 1, S_ONE)
            ops = {"E": [zero] * rank, "F": [zero] * rank,
                   "K": [one] * rank, "Kinv": [one] * rank}
            self._tensor_cache[0] = ops
            return ops
        ops = {"E": [], "F": [], "K": [], "Kinv": []}
        for i in range(rank):
            e_tot = Mat(n ** m, n ** m, S_ONE)
            f_tot = Mat(n ** m, n ** m, S_ONE)
            for pos in range(m):
                e_term = _kron_chain(
                    [self.K[i]] * pos + [self.E[i]] + [Mat.identity(n, S_ONE)] * (m - pos - 1))
                f_term = _kron_chain(
                    [Mat.identity(n, S_ONE)] * pos + [self.F[i]] + [self.Kinv[i]] * (m - pos - 1))
                e_tot = e_tot + e_term
                f_tot = f_tot + f_term
            ops["E"].append(e_tot)
            ops["F"].append(f_tot)
            ops["K"].append(_kron_chain([self.K[i]] * m))
            ops["Kinv"].append(_kron_chain([self.Kinv[i]] * m))
        self._tensor_cache[m] = ops
        return ops

    def tensor_weights(self, m):
        """Total weight of each V^{(x) m} basis tensor, row-major."""
        if m == 0:
            return [tuple(0 for _ in range(self.datum.rank))]
        prev = self.tensor_weights(m - 1)
        mine = self.basis_weights
        out = []
        for w1 in prev:
            for w2 in mine:
                out.append(tuple(a + b for a, b in zip(w1, w2)))
        return out


def _kron_chain(mats):
    out = mats[0]
    for m in mats[1:]:
        out = out.kron(m)
    return out


def build_module(datum, lam=None):
    if lam is None:
        lam = datum.max_root
    return RepModule(datum, lam)


def specialize_module(module: RepModule, q0):
    """Generator matrices evaluated at a nonzero rational q0 (Fraction entries)."""
    q0 = Fraction(q0)

    def spec(mat):
        rows = {}
        for i, row in mat.rows.items():
            r = {}
            for j, v in row.items():
                w = v.specialize(q0)
                if w:
                    r[j] = w
            if r:
                rows[i] = r
        return Mat(mat.nr, mat.nc, _F1, rows)

    return {
        "E": [spec(m) for m in module.E],
        "F": [spec(m) for m in module.F],
        "K": [spec(m) for m in module.K],
        "Kinv": [spec(m) for m in module.Kinv],
    }


def classical_identification(module: RepModule, adj):
    """The unique module isomorphism V|_{q=1} -> classical adjoint with xi -> e_theta."""
    spec = specialize_module(module, 1)
    rank = module.datum.rank
    mats1 = spec["E"] + spec["F"]
    mats2 = [adj.ad[adj.labels.index(("e", r))] for r in module.datum.positive_roots if sum(r) == 1]
    mats2 += [adj.ad[adj.labels.index(("f", r))] for r in module.datum.positive_roots if sum(r) == 1]
    sols = solve_intertwiner_square(mats1, mats2)
    if len(sols) != 1:
        raise AssertionError(f"expected a unique classical identification, got {len(sols)}")
    phi = sols[0]
    theta_idx = adj.labels.index(("e", module.datum.max_root))
    col = phi.col_vector(module.highest_index)
    pivot = col[theta_idx]
    assert pivot, "identification does not hit the highest root vector"
    phi = phi.scale(_F1 / pivot)
    assert all(not v for k, v in enumerate(phi.col_vector(module.highest_index)) if k != theta_idx)
    return phi


def build_gamma_action(module: RepModule, adj):
    """Gamma-action matrices P_gamma with the sign fixed by the classical limit."""
    datum = module.datum
    if datum.gamma.trivial:
        raise ValueError(f"Gamma is trivial for {datum.type_label}")
    phi = classical_identification(module, adj)
    n = module.dim
    from .linalg import inverse
    phi_inv = inverse(phi)
    bracket_v = phi_inv * adj.bracket * _kron_chain([phi, phi])
    out = {}
    for perm in datum.gamma.perms:
        candidates = []
        for chi in (1, -1):
            p_mat = Mat(n, n, S_ONE)
            sgn = S_ONE if chi == 1 else -S_ONE
            for idx, (mu, w) in enumerate(module.basis):
                gw = tuple(perm[i] for i in w)
                for w2, c2 in module.express({gw: sgn}).items():
                    p_mat.set(module.index[w2], idx, c2)
            p1 = p_mat.map_entries(lambda v: v.specialize(1))
            p1 = Mat(n, n, _F1, p1.rows)
            if (bracket_v * p1.kron(p1)) == (p1 * bracket_v):
                candidates.append((chi, p_mat))
        if len(candidates) != 1:
            raise AssertionError(
                f"{len(candidates)} sign choices preserve the classical bracket; expected 1")
        chi, p_mat = candidates[0]
        assert chi == adj.chi[perm], "quantum sign disagrees with the classical character"
        out[perm] = p_mat
    module.gamma_mats = out
    return out


def defining_relation_residuals(module: RepModule):
    """All quantized-enveloping-algebra defining relations as matrix residuals."""
    datum = module.datum
    n = module.dim
    rank = datum.rank
    I = Mat.identity(n, S_ONE)
    res = {}
    for i in range(rank):
        res[f"K{i}Kinv{i}"] = module.K[i] * module.Kinv[i] - I
        for j in range(rank):
            aij = datum.cartan[i][j]
            qi = Scalar.q_power(datum.d[i])
            res[f"K{i}E{j}"] = module.K[i] * module.E[j] * module.Kinv[i] \
                - module.E[j].scale(qi ** aij)
            res[f"K{i}F{j}"] = module.K[i] * module.F[j] * module.Kinv[i] \
                - module.F[j].scale(qi ** (-aij))
            comm = module.E[i] * module.F[j] - module.F[j] * module.E[i]
            if i == j:
                denom = Scalar.q_power(datum.d[i]) - Scalar.q_power(-datum.d[i])
                target = (module.K[i] - module.Kinv[i]).scale(denom.inv())
                res[f"EF{i}"] = comm - target
            else:
                res[f"E{i}F{j}"] = comm
            if i != j:
                res[f"SerreE{i}{j}"] = _serre_residual(module.E, datum, i, j)
                res[f"SerreF{i}{j}"] = _serre_residual(module.F, datum, i, j)
    return res


def _serre_residual(mats, datum, i, j):
    from .scalars import quantum_binomial
    n_pow = 1 - datum.cartan[i][j]
    n = mats[i].nr
    total = Mat(n, n, S_ONE)
    xi_pows = [Mat.identity(n, S_ONE)]
    for _ in range(n_pow):
        xi_pows.append(xi_pows[-1] * mats[i])
    for k in range(n_pow + 1):
        coef = quantum_binomial(n_pow, k, datum.d[i])
        if k % 2:
            coef = -coef
        term = xi_pows[n_pow - k] * mats[j] * xi_pows[k]
        total = total + term.scale(coef)
    return total
