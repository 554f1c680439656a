"""Classical (q = 1) Lie theory over Q: the adjoint algebra as an exact oracle.

The simple algebra g is realized concretely inside gl(V) with V the adjoint
module, built from the Serre presentation by the contravariant-form
construction.  Root vectors are normalized Chevalley-style along special
pairs, which the tests confirm produces integer structure constants
N = +-(p+1).  The invariant form B is normalized by B(h_alpha, h_alpha) = 2
for short roots; the Killing form is computed independently as
Tr(ad X ad Y).
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import Expresser, Mat, kernel_basis, solve_square
from .rootdata import RootDatum, gamma_apply

F0 = Fraction(0)
F1 = Fraction(1)


def multiset_permutations(content):
    """All distinct orderings of a multiset given as per-letter counts."""
    total = sum(content)
    if total == 0:
        return [()]
    out = []
    for i, c in enumerate(content):
        if c:
            rest = list(content)
            rest[i] -= 1
            out.extend((i,) + w for w in multiset_permutations(rest))
    return out


class ClassicalModule:
    """Simple highest-weight module of g(Q) with explicit generator matrices."""

    def __init__(self, datum: RootDatum, lam):
        self.datum = datum
        self.lam = tuple(lam)
        self._e_cache = {}
        self._form_cache = {}
        self._build()

    # -- free F-word combinatorics ------------------------------------------

    def _word_weight(self, word):
        mu = list(self.lam)
        for i in word:
            mu[i] -= 1
        return tuple(mu)

    def _e_word(self, i, word):
        """Expansion of e_i . (f_word xi) as {word': coeff}."""
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
                out[w] = out.get(w, F0) + c
            if i == j:
                coef = self.datum.coroot_pairing(self._word_weight(rest), i)
                if coef:
                    out[rest] = out.get(rest, F0) + coef
            out = {w: c for w, c in out.items() if c}
        self._e_cache[key] = out
        return out

    def _form(self, w1, w2):
        """Contravariant form <f_{w1} xi, f_{w2} xi>."""
        if len(w1) != len(w2):
            return F0
        if not w1:
            return F1
        key = (w1, w2) if w1 <= w2 else (w2, w1)
        hit = self._form_cache.get(key)
        if hit is not None:
            return hit
        a, b = key
        total = F0
        for w, c in self._e_word(a[0], b).items():
            total += c * self._form(a[1:], w)
        self._form_cache[key] = total
        return total

    # -- construction ---------------------------------------------------------

    def _build(self):
        datum = self.datum
        lam = self.lam
        low = datum.lowest_conjugate(lam)
        box = tuple(a - b for a, b in zip(lam, low))
        weights = {}  # weight -> (words, chosen_basis_words)
        order = []
        contents = [()]
        for i in range(datum.rank):
            contents = [c + (b,) for c in contents for b in range(box[i] + 1)]
        contents.sort(key=lambda c: (sum(c), c))
        for content in contents:
            words = sorted(multiset_permutations(content))
            mu = tuple(a - b for a, b in zip(lam, content))
            gram = [[self._form(w1, w2) for w2 in words] for w1 in words]
            chosen = self._greedy_basis(words, gram)
            if chosen:
                weights[mu] = (words, chosen)
                order.append(mu)
        self.basis = []
        self.index = {}
        for mu in order:
            for w in weights[mu][1]:
                self.index[w] = len(self.basis)
                self.basis.append((mu, w))
        self.dim = len(self.basis)
        self.weights = weights
        assert self.dim == datum.weyl_dim(lam), (
            f"constructed dim {self.dim} != Weyl dim {datum.weyl_dim(lam)}")
        self.highest_index = self.index[()]
        n = self.dim
        self.H = []
        self.E = []
        self.F = []
        for i in range(datum.rank):
            h = Mat(n, n, F1)
            for k, (mu, _) in enumerate(self.basis):
                c = datum.coroot_pairing(mu, i)
                if c:
                    h.set(k, k, Fraction(c))
            self.H.append(h)
            e = Mat(n, n, F1)
            f = Mat(n, n, F1)
            for k, (mu, w) in enumerate(self.basis):
                evec = self._e_word(i, w)
                if evec:
                    for w2, c2 in self.express(evec).items():
                        e.set(self.index[w2], k, c2)
                for w2, c2 in self.express({(i,) + w: F1}).items():
                    f.set(self.index[w2], k, c2)
            self.E.append(e)
            self.F.append(f)

    def _greedy_basis(self, words, gram):
        """Maximal subset of words whose Gram minor is nonsingular (lex-greedy)."""
        chosen = []
        rows = []   # echelonized rows of the chosen Gram submatrix (columns = all words)
        by_col = {}
        for k, w in enumerate(words):
            row = {j: gram[k][j] for j in range(len(words)) if gram[k][j]}
            while row:
                c = min(row)
                hit = by_col.get(c)
                if hit is None:
                    break
                coef = row[c]
                for j, v in rows[hit].items():
                    s = row.get(j, F0) - coef * v
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
        """Coordinates of a word-combination in the module basis, {word: coeff}."""
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
            total = F0
            for w, c in vec.items():
                total += c * self._form(b, w)
            rhs.append(total)
        gmat = Mat.from_dense([[self._form(b1, b2) for b2 in chosen] for b1 in chosen], F1)
        x = solve_square(gmat, rhs, F0)
        # radical check: the expressed vector must pair equally against all words
        for w0 in words:
            lhs = F0
            for w, c in vec.items():
                lhs += c * self._form(w0, w)
            rhs_val = sum((x[j] * self._form(w0, b) for j, b in enumerate(chosen)), F0)
            assert lhs == rhs_val, "vector not expressible modulo the form radical"
        return {chosen[j]: x[j] for j in range(len(chosen)) if x[j]}


class ClassicalAdjoint:
    """Chevalley-type basis of g with bracket tensor, forms and Gamma-action."""

    def __init__(self, datum: RootDatum):
        self.datum = datum
        module = ClassicalModule(datum, datum.max_root)
        self.module = module
        self.dim = module.dim
        n = self.dim
        rank = datum.rank

        # realize g inside gl(V): start from the generator matrices
        E, F, H = module.E, module.F, module.H
        gram_full = Mat(n, n, F1)
        for k, (_, w1) in enumerate(module.basis):
            for l, (_, w2) in enumerate(module.basis):
                v = module._form(w1, w2)
                if v:
                    gram_full.set(k, l, v)
        from .linalg import inverse as _inv
        gram_inv = _inv(gram_full)

        def tau(x):
            return gram_inv * x.transpose() * gram_full

        droot = {r: datum.pairing(r, r) // 2 for r in datum.positive_roots}
        evecs = {}
        fvecs = {}
        f_pair_coef = {}
        for r in datum.positive_roots:
            if sum(r) == 1:
                i = r.index(1)
                evecs[r] = E[i]
                fvecs[r] = F[i]
                f_pair_coef[r] = None
                continue
            i = next(k for k in range(rank) if r[k] and tuple(
                a - (1 if j == k else 0) for j, a in enumerate(r)) in droot)
            beta = tuple(a - (1 if j == i else 0) for j, a in enumerate(r))
            # p = length of the alpha_i-chain below beta
            p = 0
            down = beta
            while True:
                down = tuple(a - (1 if j == i else 0) for j, a in enumerate(down))
                if down in droot or tuple(-a for a in down) in droot:
                    p += 1
                else:
                    break
            scale = Fraction(1, p + 1)
            evecs[r] = (E[i] * evecs[beta] - evecs[beta] * E[i]).scale(scale)
            # the f-side partner: normalized so [e_r, f_r] = h_r (the coroot)
            cand = tau(evecs[r])
            h_r = Mat(n, n, F1)
            for k in range(rank):
                coef = Fraction(r[k] * datum.d[k], droot[r])
                if coef:
                    h_r = h_r + H[k].scale(coef)
            comm = evecs[r] * cand - cand * evecs[r]
            ratio = None
            for k, row in h_r.rows.items():
                for j, v in row.items():
                    w = comm.get(k, j)
                    assert w is not None, "[e_r, tau(e_r)] not proportional to h_r"
                    ratio = v / w
                    break
                break
            assert ratio is not None
            fvecs[r] = cand.scale(ratio)
            assert (evecs[r] * fvecs[r] - fvecs[r] * evecs[r]) == h_r, \
                "Chevalley normalization failed"
            # remember the special-pair expansion of f_r for the Gamma recursion
            fcomm = F[i] * fvecs[beta] - fvecs[beta] * F[i]
            t = _proportionality(fvecs[r], fcomm)
            f_pair_coef[r] = (i, beta, t)

        # fixed basis order: h_1..h_rank, then (e_r, f_r) by root order
        self.labels = [("h", i) for i in range(rank)]
        mats = [H[i] for i in range(rank)]
        for r in datum.positive_roots:
            self.labels.append(("e", r))
            mats.append(evecs[r])
            self.labels.append(("f", r))
            mats.append(fvecs[r])
        assert len(mats) == n
        self.basis_mats = mats
        self._evecs = evecs
        self._fvecs = fvecs
        self._f_pair = f_pair_coef

        expr = Expresser(n * n)
        for idx, m in enumerate(mats):
            vec = {}
            for k, row in m.rows.items():
                for j, v in row.items():
                    vec[k * n + j] = v
            ok = expr.add(vec, idx)
            assert ok, "basis matrices are dependent"
        self._expr = expr

        # bracket tensor as a dim x dim^2 matrix: column a*dim+b -> [x_a, x_b]
        bracket = Mat(n, n * n, F1)
        for a in range(n):
            for b in range(n):
                comm = mats[a] * mats[b] - mats[b] * mats[a]
                for idx, c in self._express_mat(comm).items():
                    bracket.set(idx, a * n + b, c)
        self.bracket = bracket

        self.ad = []
        for a in range(n):
            ada = Mat(n, n, F1)
            for b in range(n):
                col = a * n + b
                for k in range(n):
                    v = bracket.get(k, col)
                    if v:
                        ada.set(k, b, v)
            self.ad.append(ada)

        # Killing form and the short-root-normalized invariant form B
        killing = Mat(n, n, F1)
        for a in range(n):
            for b in range(a, n):
                t = _trace(self.ad[a] * self.ad[b])
                if t:
                    killing.set(a, b, t)
                    if a != b:
                        killing.set(b, a, t)
        self.killing = killing
        short = min(datum.positive_roots, key=lambda r: datum.pairing(r, r))
        # K-dual t_alpha of the short root alpha, solved inside the Cartan block;
        # alpha(h_i) is the eigenvalue of ad(h_i) on the alpha root space
        kcartan = Mat.from_dense(
            [[killing.entry(i, j, F0) for j in range(rank)] for i in range(rank)], F1)
        alpha_vals = [Fraction(datum.coroot_pairing(short, i)) for i in range(rank)]
        t_alpha = solve_square(kcartan, alpha_vals, F0)
        norm = F0
        for i in range(rank):
            for j in range(rank):
                norm += t_alpha[i] * t_alpha[j] * killing.entry(i, j, F0)
        # with B = s*K the induced form on h* scales by 1/s, so s = (alpha,alpha)_K / 2
        self.form_B = killing.scale(norm / 2)

        # Gamma-action with classical signs, plus the character chi
        self.gamma_mats = {}
        self.chi = {}
        for perm in datum.gamma.perms:
            g = self._gamma_matrix(perm)
            self.gamma_mats[perm] = g
            theta_idx = self.labels.index(("e", datum.max_root))
            val = g.get(theta_idx, theta_idx)
            assert val in (F1, -F1), "gamma does not act by a sign on the highest root vector"
            self.chi[perm] = 1 if val == F1 else -1
        datum.gamma.chi.update(self.chi)

    def _express_mat(self, m):
        n = self.dim
        vec = {}
        for k, row in m.rows.items():
            for j, v in row.items():
                vec[k * n + j] = v
        out = self._expr.express(vec)
        assert out is not None, "matrix not in the image of g"
        return out

    def _gamma_matrix(self, perm):
        """Matrix of the diagram automorphism on g in the fixed basis."""
        datum = self.datum
        n = self.dim
        rank = datum.rank
        images = {}  # label -> Mat
        for i in range(rank):
            images[("h", i)] = self.basis_mats[self.labels.index(("h", perm[i]))]
        for r in datum.positive_roots:
            er = ("e", r)
            fr = ("f", r)
            if sum(r) == 1:
                i = r.index(1)
                pr = tuple(1 if j == perm[i] else 0 for j in range(rank))
                images[er] = self._evecs[pr]
                images[fr] = self._fvecs[pr]
        for r in datum.positive_roots:
            if sum(r) == 1:
                continue
            i, beta, t = self._f_pair[r]
            scale = Fraction(1, _chain_p(datum, i, beta) + 1)
            gei = images[("e", tuple(1 if j == i else 0 for j in range(rank)))]
            geb = images[("e", beta)]
            images[("e", r)] = (gei * geb - geb * gei).scale(scale)
            gfi = images[("f", tuple(1 if j == i else 0 for j in range(rank)))]
            gfb = images[("f", beta)]
            images[("f", r)] = (gfi * gfb - gfb * gfi).scale(t)
        g = Mat(n, n, F1)
        for idx, lab in enumerate(self.labels):
            for k, c in self._express_mat(images[lab]).items():
                g.set(k, idx, c)
        return g

    def bracket_of(self, a, b):
        """[x_a, x_b] as coordinates."""
        n = self.dim
        col = a * n + b
        return {k: self.bracket.get(k, col) for k in range(n) if self.bracket.get(k, col)}


def _chain_p(datum, i, beta):
    p = 0
    down = beta
    roots = set(datum.positive_roots)
    while True:
        down = tuple(a - (1 if j == i else 0) for j, a in enumerate(down))
        if down in roots or tuple(-a for a in down) in roots:
            p += 1
        else:
            break
    return p


def _proportionality(target, source):
    """Scalar t with target = t * source exactly (source nonzero)."""
    t = None
    for k, row in source.rows.items():
        for j, v in row.items():
            w = target.get(k, j)
            t = (w if w is not None else F0) / v
            break
        break
    if t is None:
        raise ValueError("zero source matrix")
    assert target == source.scale(t), "matrices are not proportional"
    return t


def _trace(m):
    total = F0
    for i, row in m.rows.items():
        v = row.get(i)
        if v:
            total += v
    return total


def build_classical_adjoint(datum):
    return ClassicalAdjoint(datum)


# ---------------------------------------------------------------------------
# Peter-Weyl counting for G x| Gamma.

def _tensor_leibniz(mats, m, dim):
    """Action of a derivation x on V^{(x) m} given its matrix on V."""
    out = []
    for x in mats:
        total = Mat(dim ** m, dim ** m, F1)
        for pos in range(m):
            term = Mat.identity(dim ** pos, F1).kron(x).kron(Mat.identity(dim ** (m - pos - 1), F1))
            total = total + term
        out.append(total)
    return out


def _weight_indices(weights_of_basis, m, target, rank):
    """Indices of V^{(x) m} basis tensors of a given total weight."""
    dim = len(weights_of_basis)
    out = []
    for idx in range(dim ** m):
        rem = idx
        total = [0] * rank
        for _ in range(m):
            rem, digit = divmod(rem, dim)
            w = weights_of_basis[digit]
            for k in range(rank):
                total[k] += w[k]
        if tuple(total) == target:
            out.append(idx)
    return out


def highest_weight_space(adj, m, lam):
    """Basis of highest-weight-lam vectors in V^{(x) m}, V the adjoint module."""
    datum = adj.datum
    dim = adj.dim
    rank = datum.rank
    weights_of_basis = [_basis_weight(adj, k) for k in range(dim)]
    if m == 0:
        if all(x == 0 for x in lam):
            return [{0: F1}], 1
        return [], 1
    idxs = _weight_indices(weights_of_basis, m, tuple(lam), rank)
    if not idxs:
        return [], dim ** m
    simple_e = [adj.ad[adj.labels.index(("e", r))]
                for r in datum.positive_roots if sum(r) == 1]
    e_tensor = _tensor_leibniz(simple_e, m, dim)
    # kernel of all raising operators, columns restricted to the weight subspace
    pos = {idx: k for k, idx in enumerate(idxs)}
    rows = {}
    rcount = 0
    for e in e_tensor:
        for row in e.rows.values():
            r = {pos[j]: v for j, v in row.items() if j in pos}
            if r:
                rows[rcount] = r
                rcount += 1
    mat = Mat(rcount, len(idxs), F1, rows)
    kb = kernel_basis(mat, F0)
    return [{idxs[k]: v for k, v in enumerate(vec) if v} for vec in kb], dim ** m


def _basis_weight(adj, k):
    lab = adj.labels[k]
    rank = adj.datum.rank
    if lab[0] == "h":
        return tuple(0 for _ in range(rank))
    if lab[0] == "e":
        return lab[1]
    return tuple(-a for a in lab[1])


def peter_weyl_dim(datum, d, gamma=False, adjoint=None):
    """Sum of (dim W)^2 over distinct irreducibles of G (or G x| Gamma) occurring
    in the adjoint tensor filtration up to degree d."""
    if not gamma or datum.gamma.trivial:
        return datum.peter_weyl_dim_plain(d)
    adj = adjoint if adjoint is not None else build_classical_adjoint(datum)
    perm = datum.gamma.perms[0]
    P = adj.gamma_mats[perm]
    dim = adj.dim
    rank = datum.rank
    seen = {}
    for m in range(d + 1):
        Pm = Mat.identity(1, F1)
        for _ in range(m):
            Pm = Pm.kron(P)
        # dominant weights occurring at this tensor power
        level = datum.adjoint_occurrence_sets(m)[m]
        for lam in level:
            lam = tuple(lam)
            glam = gamma_apply(perm, lam)
            if glam == lam:
                hw, _ = highest_weight_space(adj, m, lam)
                if not hw:
                    continue
                # eigen-split of the involution on the highest weight space
                expr = Expresser(dim ** m)
                for t, v in enumerate(hw):
                    assert expr.add(dict(v), t)
                tr = F0
                for t, v in enumerate(hw):
                    img = _apply_sparse(Pm, v)
                    coords = expr.express(img)
                    assert coords is not None, "gamma does not preserve the HW space"
                    tr += coords.get(t, F0)
                mtot = len(hw)
                mplus = (mtot + tr) / 2
                mminus = (mtot - tr) / 2
                assert mplus.denominator == 1 and mminus.denominator == 1
                if mplus:
                    seen[(lam, +1)] = datum.weyl_dim(lam)
                if mminus:
                    seen[(lam, -1)] = datum.weyl_dim(lam)
            else:
                key = (min(lam, glam), "pair")
                if key in seen:
                    continue
                hw, _ = highest_weight_space(adj, m, lam)
                if hw:
                    seen[key] = 2 * datum.weyl_dim(lam)
    return sum(v * v for v in seen.values())


def _apply_sparse(mat, vec):
    out = {}
    for i, row in mat.rows.items():
        total = F0
        hit = False
        for j, v in row.items():
            c = vec.get(j)
            if c:
                total += v * c
                hit = True
        if hit and total:
            out[i] = total
    return out


def solve_intertwiner_square(mats1, mats2):
    """Basis of {phi : phi x1 = x2 phi for all paired generator matrices}."""
    n = mats1[0].nr
    one = mats1[0].one
    zero = one - one
    rows = []
    for x1, x2 in zip(mats1, mats2):
        big = x2.kron(Mat.identity(n, one)) - Mat.identity(n, one).kron(x1.transpose())
        rows.extend(big.rows.values())
    mat = Mat(len(rows), n * n, one, dict(enumerate(rows)))
    kb = kernel_basis(mat, zero)
    out = []
    for vec in kb:
        phi = Mat(n, n, one)
        for idx, v in enumerate(vec):
            if v:
                phi.set(idx // n, idx % n, v)
        out.append(phi)
    return out
