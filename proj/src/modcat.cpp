#include "ntors/modcat.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace ntors {

namespace {

Mat flatten(const ModuleMap& m) {
    size_t total = 0;
    for (const Mat& f : m.f) total += f.a.size();
    Mat v(static_cast<int>(total), 1);
    size_t k = 0;
    for (const Mat& f : m.f)
        for (uint32_t x : f.a) v.at(static_cast<int>(k++), 0) = x;
    return v;
}

Mat flatten_family(const std::vector<ModuleMap>& maps) {
    if (maps.empty()) return Mat(0, 0);
    Mat first = flatten(maps[0]);
    Mat B(first.rows, static_cast<int>(maps.size()));
    for (size_t j = 0; j < maps.size(); ++j) {
        Mat col = flatten(maps[j]);
        for (int i = 0; i < col.rows; ++i) B.at(i, static_cast<int>(j)) = col.at(i, 0);
    }
    return B;
}

ModuleMap combo_map(const Algebra& A, const std::vector<ModuleMap>& basis,
                    const std::vector<uint32_t>& coeffs) {
    ModuleMap m = zero_map(A, basis[0].src, basis[0].tgt);
    for (size_t k = 0; k < basis.size(); ++k)
        if (coeffs[k]) m = map_add(A, m, map_scale(A, coeffs[k], basis[k]));
    return m;
}

ModuleMap map_pow(const Algebra& A, const ModuleMap& m, uint64_t e) {
    ModuleMap r = identity_map(A, m.src), b = m;
    while (e) {
        if (e & 1) r = compose(A, b, r);
        b = compose(A, b, b);
        e >>= 1;
    }
    return r;
}

uint64_t fnv1a(uint64_t h, uint64_t x) {
    for (int i = 0; i < 8; ++i) {
        h ^= (x >> (8 * i)) & 0xff;
        h *= 1099511628211ULL;
    }
    return h;
}

std::vector<std::vector<int>> projective_basis_at(const Algebra& A, int v) {
    std::vector<std::vector<int>> basis_at(A.vertices());
    for (int i = 0; i < A.basis.dim(); ++i)
        if (A.basis.paths[i].src == v) basis_at[A.basis.paths[i].tgt].push_back(i);
    return basis_at;
}

} // namespace

uint64_t content_hash(const Module& X, uint64_t salt) {
    uint64_t h = 1469598103934665603ULL ^ salt;
    for (int d : X.dim) h = fnv1a(h, static_cast<uint64_t>(d));
    for (const Mat& m : X.arr)
        for (uint32_t x : m.a) h = fnv1a(h, x);
    return h;
}

std::vector<ModuleMap> hom_basis(const Algebra& A, const Module& X, const Module& Y) {
    int nv = A.vertices();
    std::vector<int> off(nv + 1, 0);
    for (int v = 0; v < nv; ++v) off[v + 1] = off[v] + Y.dim[v] * X.dim[v];
    int nvars = off[nv];
    int neq = 0;
    for (int a = 0; a < A.num_arrows(); ++a)
        neq += Y.dim[A.pres.arrows[a].tgt] * X.dim[A.pres.arrows[a].src];
    Mat Eq(neq, nvars);
    int row = 0;
    for (int a = 0; a < A.num_arrows(); ++a) {
        int s = A.pres.arrows[a].src, t = A.pres.arrows[a].tgt;
        // f_t X_a - Y_a f_s = 0, entry (r, c) for r < Y.dim[t], c < X.dim[s].
        for (int r = 0; r < Y.dim[t]; ++r)
            for (int c = 0; c < X.dim[s]; ++c) {
                for (int k = 0; k < X.dim[t]; ++k)
                    Eq.at(row, off[t] + r * X.dim[t] + k) =
                        A.F.add(Eq.at(row, off[t] + r * X.dim[t] + k), X.arr[a].at(k, c));
                for (int k = 0; k < Y.dim[s]; ++k)
                    Eq.at(row, off[s] + k * X.dim[s] + c) =
                        A.F.sub(Eq.at(row, off[s] + k * X.dim[s] + c), Y.arr[a].at(r, k));
                ++row;
            }
    }
    Mat K = kernel_basis(A.F, Eq);
    std::vector<ModuleMap> out;
    for (int j = 0; j < K.cols; ++j) {
        ModuleMap m = zero_map(A, X, Y);
        for (int v = 0; v < nv; ++v)
            for (int r = 0; r < Y.dim[v]; ++r)
                for (int c = 0; c < X.dim[v]; ++c) m.f[v].at(r, c) = K.at(off[v] + r * X.dim[v] + c, j);
        out.push_back(std::move(m));
    }
    return out;
}

int hom_dim(const Algebra& A, const Module& X, const Module& Y) {
    return static_cast<int>(hom_basis(A, X, Y).size());
}

Mat map_coords(const Algebra& A, const std::vector<ModuleMap>& basis, const ModuleMap& m) {
    (void)A;
    if (basis.empty()) {
        if (!m.is_zero()) throw std::runtime_error("map_coords: nonzero map, empty basis");
        return Mat(0, 1);
    }
    Mat B = flatten_family(basis);
    auto c = coords_in(Fp{A.F.p}, B, flatten(m));
    if (!c) throw std::runtime_error("map_coords: map outside span");
    return *c;
}

ModuleMap map_from_coords(const Algebra& A, const std::vector<ModuleMap>& basis, const Mat& coords) {
    if (basis.empty()) throw std::runtime_error("map_from_coords: empty basis");
    std::vector<uint32_t> cs(basis.size());
    for (size_t k = 0; k < basis.size(); ++k) cs[k] = coords.at(static_cast<int>(k), 0);
    return combo_map(A, basis, cs);
}

EndAlgebra end_algebra(const Algebra& A, const Module& X) {
    EndAlgebra E;
    E.basis = hom_basis(A, X, X);
    int e = static_cast<int>(E.basis.size());
    if (e == 0) { // zero module
        E.radical_coords = Mat(0, 0);
        return E;
    }
    if (A.F.p <= static_cast<uint32_t>(e))
        throw schur_error("end_algebra: characteristic too small for radical computation (p <= dim End)");
    Mat B = flatten_family(E.basis);
    for (int i = 0; i < e; ++i) {
        Mat L(e, e);
        for (int j = 0; j < e; ++j) {
            ModuleMap prod = compose(A, E.basis[i], E.basis[j]);
            auto c = coords_in(A.F, B, flatten(prod));
            if (!c) throw std::runtime_error("end_algebra: product outside span");
            for (int k = 0; k < e; ++k) L.at(k, j) = c->at(k, 0);
        }
        E.left_mult.push_back(std::move(L));
    }
    Mat T(e, e);
    for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) {
            Mat P = mul(A.F, E.left_mult[i], E.left_mult[j]);
            uint32_t tr = 0;
            for (int k = 0; k < e; ++k) tr = A.F.add(tr, P.at(k, k));
            T.at(i, j) = tr;
        }
    E.radical_coords = kernel_basis(A.F, T);
    return E;
}

std::optional<ModuleMap> find_iso(const Algebra& A, const Module& X, const Module& Y,
                                  uint64_t seed) {
    if (X.dim != Y.dim) return std::nullopt;
    if (X.total_dim() == 0) return zero_map(A, X, Y);
    std::vector<ModuleMap> h = hom_basis(A, X, Y);
    int d = static_cast<int>(h.size());
    if (d == 0) return std::nullopt;
    uint64_t combos = 1;
    bool exhaustive = true;
    for (int k = 0; k < d; ++k) {
        combos *= A.F.p;
        if (combos > 20000) {
            exhaustive = false;
            break;
        }
    }
    if (exhaustive) {
        // Scale-normalised odometer: first nonzero coefficient is 1.
        std::vector<uint32_t> cs(d, 0);
        for (int lead = 0; lead < d; ++lead) {
            std::fill(cs.begin(), cs.end(), 0);
            cs[lead] = 1;
            for (;;) {
                ModuleMap m = combo_map(A, h, cs);
                if (map_invertible(A, m)) return m;
                int k = lead + 1;
                while (k < d && cs[k] == A.F.p - 1) cs[k++] = 0;
                if (k >= d) break;
                ++cs[k];
            }
        }
        return std::nullopt;
    }
    std::mt19937_64 rng(seed ^ content_hash(X, 0x1505) ^ content_hash(Y, 0x9e37));
    std::uniform_int_distribution<uint32_t> dist(0, A.F.p - 1);
    for (int t = 0; t < 512; ++t) {
        std::vector<uint32_t> cs(d);
        for (int k = 0; k < d; ++k) cs[k] = dist(rng);
        ModuleMap m = combo_map(A, h, cs);
        if (!m.is_zero() && map_invertible(A, m)) return m;
    }
    return std::nullopt;
}

namespace {

// Splits X along ker/im of a non-invertible non-nilpotent endomorphism power.
struct SplitResult {
    Piece a, b;
};

std::optional<SplitResult> try_split(const Algebra& A, const Module& X, const ModuleMap& phi) {
    int N = 1;
    while (N < X.total_dim()) N <<= 1;
    ModuleMap h = map_pow(A, phi, static_cast<uint64_t>(N));
    std::vector<Mat> kspans(A.vertices()), ispans(A.vertices());
    int kd = 0, id = 0;
    for (int v = 0; v < A.vertices(); ++v) {
        kspans[v] = kernel_basis(A.F, h.f[v]);
        ispans[v] = col_canon(A.F, h.f[v]);
        kd += kspans[v].cols;
        id += ispans[v].cols;
    }
    if (kd == 0 || id == 0) return std::nullopt;
    SubmoduleData K = submodule_from_spans(A, X, kspans);
    SubmoduleData I = submodule_from_spans(A, X, ispans);
    SplitResult out;
    out.a = {K.sub, K.incl, zero_map(A, X, K.sub)};
    out.b = {I.sub, I.incl, zero_map(A, X, I.sub)};
    for (int v = 0; v < A.vertices(); ++v) {
        Mat B = hcat(K.incl.f[v], I.incl.f[v]);
        if (!invertible(A.F, B)) throw std::runtime_error("fitting: ker+im not a decomposition");
        Mat Binv = inverse(A.F, B);
        Mat pk(K.sub.dim[v], X.dim[v]), pi(I.sub.dim[v], X.dim[v]);
        for (int i = 0; i < K.sub.dim[v]; ++i)
            for (int j = 0; j < X.dim[v]; ++j) pk.at(i, j) = Binv.at(i, j);
        for (int i = 0; i < I.sub.dim[v]; ++i)
            for (int j = 0; j < X.dim[v]; ++j) pi.at(i, j) = Binv.at(K.sub.dim[v] + i, j);
        out.a.proj.f[v] = std::move(pk);
        out.b.proj.f[v] = std::move(pi);
    }
    return out;
}

} // namespace

std::vector<Piece> fitting_pieces(const Algebra& A, const Module& X, uint64_t seed) {
    std::vector<Piece> out;
    if (X.total_dim() == 0) return out;
    std::vector<ModuleMap> endo = hom_basis(A, X, X);
    int e = static_cast<int>(endo.size());
    if (e == 1) {
        out.push_back({X, identity_map(A, X), identity_map(A, X)});
        return out;
    }
    auto recurse = [&](const SplitResult& sr) {
        std::vector<Piece> pieces;
        for (const Piece* part : {&sr.a, &sr.b}) {
            std::vector<Piece> sub = fitting_pieces(A, part->mod, seed);
            for (Piece& p : sub) {
                p.incl = compose(A, part->incl, p.incl);
                p.proj = compose(A, p.proj, part->proj);
                pieces.push_back(std::move(p));
            }
        }
        return pieces;
    };
    // Fitting splits first: basis elements, then up to 64 seeded random
    // combinations. The radical is only computed once no split is found.
    for (int k = 0; k < e; ++k) {
        auto sr = try_split(A, X, endo[k]);
        if (sr) return recurse(*sr);
    }
    std::mt19937_64 rng(seed ^ content_hash(X, 0xfe11));
    std::uniform_int_distribution<uint32_t> dist(0, A.F.p - 1);
    for (int t = 0; t < 64; ++t) {
        std::vector<uint32_t> cs(e);
        for (int k = 0; k < e; ++k) cs[k] = dist(rng);
        auto sr = try_split(A, X, combo_map(A, endo, cs));
        if (sr) return recurse(*sr);
    }
    EndAlgebra EA = end_algebra(A, X);
    if (e - EA.radical_coords.cols == 1) {
        out.push_back({X, identity_map(A, X), identity_map(A, X)});
        return out;
    }
    throw schur_error("fitting_pieces: End/rad not one-dimensional and no Fitting splitting "
                      "found; Schur check failed for a summand");
}

int Registry::find(const Module& X) const {
    for (int i = 0; i < size(); ++i)
        if (find_iso(*A, X, ind[i], seed ^ 0xabcdef)) return i;
    return -1;
}

int Registry::find_or_add(Module X, std::string label) {
    std::lock_guard<std::mutex> lk(mu);
    for (int i = 0; i < size(); ++i)
        if (find_iso(*A, X, ind[i], seed ^ 0xabcdef)) return i;
    ind.push_back(std::move(X));
    labels.push_back(std::move(label));
    return size() - 1;
}

const std::vector<ModuleMap>& Registry::hom(int i, int j) const {
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = hom_cache.find({i, j});
        if (it != hom_cache.end()) return it->second;
    }
    std::vector<ModuleMap> h = hom_basis(*A, ind[i], ind[j]);
    std::lock_guard<std::mutex> lk(mu);
    return hom_cache.emplace(std::make_pair(i, j), std::move(h)).first->second;
}

int Registry::ext_dim(int deg, int i, int j) const {
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = ext_cache.find({deg, i, j});
        if (it != ext_cache.end()) return it->second;
    }
    int d = ntors::ext_dim(*A, ind[i], ind[j], deg);
    std::lock_guard<std::mutex> lk(mu);
    return ext_cache.emplace(std::make_tuple(deg, i, j), d).first->second;
}

int Registry::label_index(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
        if (labels[i] == label) return i;
    return -1;
}

Decomposition decompose(Registry& R, const Module& X) {
    const Algebra& A = *R.A;
    Decomposition D;
    std::vector<Piece> pieces = fitting_pieces(A, X, R.seed);
    std::vector<std::pair<int, Piece>> tagged;
    for (Piece& p : pieces) {
        int idx = R.find(p.mod);
        if (idx < 0)
            throw std::runtime_error("decompose: summand not in the indecomposable registry");
        tagged.emplace_back(idx, std::move(p));
    }
    std::stable_sort(tagged.begin(), tagged.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Module> canon;
    for (auto& [idx, p] : tagged) {
        D.parts.push_back(idx);
        canon.push_back(R.ind[idx]);
        D.pieces.push_back(std::move(p));
    }
    if (canon.empty()) {
        D.iso = zero_map(A, X, zero_module(A));
        return D;
    }
    SumDecomp S = direct_sum(A, canon);
    ModuleMap iso = zero_map(A, X, S.sum);
    for (size_t k = 0; k < D.pieces.size(); ++k) {
        auto piso = find_iso(A, D.pieces[k].mod, canon[k], R.seed ^ 0x51u);
        if (!piso) throw std::runtime_error("decompose: lost isomorphism to canonical form");
        iso = map_add(A, iso, compose(A, S.incl[k], compose(A, *piso, D.pieces[k].proj)));
    }
    if (!is_module_map(A, iso) || !map_invertible(A, iso))
        throw std::runtime_error("decompose: assembled isomorphism invalid");
    D.iso = std::move(iso);
    return D;
}

bool decomposes_into(Registry& R, const Module& X, const std::vector<int>& allowed) {
    if (X.total_dim() == 0) return true;
    Decomposition D = decompose(R, X);
    for (int p : D.parts)
        if (std::find(allowed.begin(), allowed.end(), p) == allowed.end()) return false;
    return true;
}

Cover projective_cover(const Algebra& A, const Module& X) {
    std::vector<Mat> rad = radical_spans(A, X);
    Cover out;
    std::vector<Module> parts;
    std::vector<std::vector<int>> gens; // generator vector per summand
    for (int v = 0; v < A.vertices(); ++v) {
        Mat R = rad[v];
        Mat cur = R;
        for (int e = 0; e < X.dim[v]; ++e) {
            Mat cand(X.dim[v], 1);
            cand.at(e, 0) = 1;
            Mat test = hcat(cur, cand);
            if (rank(A.F, test) > cur.cols) {
                cur = col_canon(A.F, test);
                out.verts.push_back(v);
                std::vector<int> g(X.dim[v], 0);
                g[e] = 1;
                gens.push_back(std::move(g));
                parts.push_back(Module()); // placeholder
            }
        }
    }
    for (size_t k = 0; k < parts.size(); ++k) parts[k] = projective_module(A, out.verts[k]);
    SumDecomp S = parts.empty() ? SumDecomp{zero_module(A), {}, {}} : direct_sum(A, parts);
    ModuleMap cover = zero_map(A, S.sum, X);
    // Column layout per vertex w: concatenation over summands of paths v_k -> w.
    std::vector<int> col(A.vertices(), 0);
    for (size_t k = 0; k < parts.size(); ++k) {
        int v = out.verts[k];
        Mat g(X.dim[v], 1);
        for (int i = 0; i < X.dim[v]; ++i) g.at(i, 0) = gens[k][i];
        auto basis_at = projective_basis_at(A, v);
        for (int w = 0; w < A.vertices(); ++w)
            for (int b : basis_at[w]) {
                Mat act = path_action(A, X, v, A.basis.paths[b].arrows);
                Mat img = mul(A.F, act, g);
                for (int i = 0; i < X.dim[w]; ++i) cover.f[w].at(i, col[w]) = img.at(i, 0);
                ++col[w];
            }
    }
    if (!is_module_map(A, cover)) throw std::runtime_error("projective_cover: not a module map");
    if (!map_surjective(A, cover)) throw std::runtime_error("projective_cover: not surjective");
    out.map = std::move(cover);
    return out;
}

Resolution min_resolution(const Algebra& A, const Module& X, int max_len) {
    Resolution R;
    R.X = X;
    Cover c0 = projective_cover(A, X);
    R.P.push_back(c0.map.src);
    R.verts.push_back(c0.verts);
    R.aug = c0.map;
    ModuleMap cur = c0.map;
    for (int k = 0; k < max_len; ++k) {
        KernelData K = kernel(A, cur);
        if (K.ker.total_dim() == 0) return R;
        Cover ck = projective_cover(A, K.ker);
        R.P.push_back(ck.map.src);
        R.verts.push_back(ck.verts);
        R.d.push_back(compose(A, K.incl, ck.map));
        cur = ck.map;
    }
    throw std::runtime_error("min_resolution: exceeded maximal length (gldim too large?)");
}

Module syzygy(const Algebra& A, const Module& X, int k) {
    Module cur = X;
    for (int i = 0; i < k; ++i) {
        Cover c = projective_cover(A, cur);
        cur = kernel(A, c.map).ker;
    }
    return cur;
}

int global_dimension(const Algebra& A) {
    int g = 0;
    for (int v = 0; v < A.vertices(); ++v)
        g = std::max(g, min_resolution(A, simple_module(A, v)).length());
    return g;
}

ExtSpace ext_space(const Algebra& A, const Resolution& RX, const Module& Y, int deg) {
    if (deg < 0) throw std::runtime_error("ext_space: negative degree");
    ExtSpace E;
    E.deg = deg;
    if (deg > RX.length()) return E;
    E.hom_i = hom_basis(A, RX.P[deg], Y);
    int hd = static_cast<int>(E.hom_i.size());
    if (hd == 0) return E;
    // Cocycles: kernel of post-restriction along d[deg] : P[deg+1] -> P[deg].
    if (deg + 1 <= RX.length()) {
        std::vector<ModuleMap> hom_next = hom_basis(A, RX.P[deg + 1], Y);
        Mat M(static_cast<int>(hom_next.size()), hd);
        for (int j = 0; j < hd; ++j) {
            ModuleMap cmp = compose(A, E.hom_i[j], RX.d[deg]);
            Mat c = map_coords(A, hom_next, cmp);
            for (int i = 0; i < M.rows; ++i) M.at(i, j) = c.at(i, 0);
        }
        E.cocycles = kernel_basis(A.F, M);
    } else {
        E.cocycles = identity(hd);
    }
    if (deg >= 1) {
        std::vector<ModuleMap> hom_prev = hom_basis(A, RX.P[deg - 1], Y);
        Mat B(hd, static_cast<int>(hom_prev.size()));
        for (size_t j = 0; j < hom_prev.size(); ++j) {
            ModuleMap cmp = compose(A, hom_prev[j], RX.d[deg - 1]);
            Mat c = map_coords(A, E.hom_i, cmp);
            for (int i = 0; i < hd; ++i) B.at(i, static_cast<int>(j)) = c.at(i, 0);
        }
        E.boundaries = col_canon(A.F, B);
    } else {
        E.boundaries = Mat(hd, 0);
    }
    // Class representatives: cocycle columns extending the boundary span.
    Mat span = E.boundaries;
    Mat cls(hd, 0);
    for (int j = 0; j < E.cocycles.cols; ++j) {
        Mat col(hd, 1);
        for (int i = 0; i < hd; ++i) col.at(i, 0) = E.cocycles.at(i, j);
        Mat test = hcat(span, col);
        if (rank(A.F, test) > span.cols) {
            span = test;
            cls = hcat(cls, col);
        }
    }
    E.class_coords = cls;
    E.dim = cls.cols;
    for (int j = 0; j < cls.cols; ++j) {
        Mat col(hd, 1);
        for (int i = 0; i < hd; ++i) col.at(i, 0) = cls.at(i, j);
        E.classes.push_back(map_from_coords(A, E.hom_i, col));
    }
    return E;
}

int ext_dim(const Algebra& A, const Module& X, const Module& Y, int deg) {
    if (deg == 0) return hom_dim(A, X, Y);
    Resolution R = min_resolution(A, X);
    return ext_space(A, R, Y, deg).dim;
}

Mat ext_class_coords(const Algebra& A, const ExtSpace& E, const ModuleMap& cocycle) {
    if (E.hom_i.empty()) {
        if (!cocycle.is_zero()) throw std::runtime_error("ext_class_coords: nonzero in zero space");
        return Mat(E.dim, 1);
    }
    Mat c = map_coords(A, E.hom_i, cocycle);
    Mat B = hcat(E.boundaries, E.class_coords);
    auto x = coords_in(A.F, B, c);
    if (!x) throw std::runtime_error("ext_class_coords: not a cocycle");
    Mat out(E.dim, 1);
    for (int i = 0; i < E.dim; ++i) out.at(i, 0) = x->at(E.boundaries.cols + i, 0);
    return out;
}

ModuleMap yoneda_push(const Algebra& A, const ModuleMap& f, const ModuleMap& cocycle) {
    return compose(A, f, cocycle);
}

ModuleMap yoneda_pull(const Algebra& A, const Resolution& RXp, const Resolution& RX,
                      const ModuleMap& g, const ModuleMap& cocycle, int deg) {
    if (deg > RXp.length()) {
        Module zero = zero_module(A);
        // Ext of the pullback vanishes beyond the resolution of X'.
        return zero_map(A, deg <= RXp.length() ? RXp.P[deg] : zero, cocycle.tgt);
    }
    auto g0 = factor_through(A, RX.aug, compose(A, g, RXp.aug));
    if (!g0) throw std::runtime_error("yoneda_pull: comparison lift failed at degree 0");
    ModuleMap lift = *g0;
    for (int k = 1; k <= deg; ++k) {
        if (k > RX.length()) {
            // X side resolution already ended: lift is zero from here on.
            return zero_map(A, RXp.P[deg], cocycle.tgt);
        }
        auto gk = factor_through(A, RX.d[k - 1], compose(A, lift, RXp.d[k - 1]));
        if (!gk) throw std::runtime_error("yoneda_pull: comparison lift failed");
        lift = *gk;
    }
    return compose(A, cocycle, lift);
}

namespace {

std::vector<uint32_t> spans_key(const std::vector<Mat>& spans) {
    std::vector<uint32_t> key;
    for (const Mat& m : spans) {
        key.push_back(static_cast<uint32_t>(m.rows));
        key.push_back(static_cast<uint32_t>(m.cols));
        key.insert(key.end(), m.a.begin(), m.a.end());
    }
    return key;
}

// Maximal submodules of M expressed in ambient coordinates through incl.
std::vector<std::vector<Mat>> maximal_submodules(const Algebra& A, const Module& M,
                                                 const ModuleMap& incl) {
    std::vector<std::vector<Mat>> out;
    std::vector<Mat> rad = radical_spans(A, M);
    for (int v = 0; v < A.vertices(); ++v) {
        // Complement of rad_v inside M_v.
        Mat cur = rad[v];
        std::vector<int> comp;
        for (int e = 0; e < M.dim[v] && cur.cols < M.dim[v]; ++e) {
            Mat cand(M.dim[v], 1);
            cand.at(e, 0) = 1;
            Mat test = hcat(cur, cand);
            if (rank(A.F, test) > cur.cols) {
                comp.push_back(e);
                cur = col_canon(A.F, test);
            }
        }
        int t = static_cast<int>(comp.size());
        if (t == 0) continue;
        Mat C(M.dim[v], t);
        for (int j = 0; j < t; ++j) C.at(comp[j], j) = 1;
        // Hyperplanes of the top at v: kernels of nonzero functionals up to scalar.
        std::vector<uint32_t> lam(t, 0);
        for (int lead = 0; lead < t; ++lead) {
            std::fill(lam.begin(), lam.end(), 0);
            lam[lead] = 1;
            for (;;) {
                Mat L(1, t);
                for (int j = 0; j < t; ++j) L.at(0, j) = lam[j];
                Mat hker = kernel_basis(A.F, L);
                std::vector<Mat> spans(A.vertices());
                for (int w = 0; w < A.vertices(); ++w)
                    spans[w] = (w == v) ? col_canon(A.F, hcat(rad[v], mul(A.F, C, hker)))
                                        : identity(M.dim[w]);
                // Push into ambient coordinates.
                std::vector<Mat> amb(A.vertices());
                for (int w = 0; w < A.vertices(); ++w)
                    amb[w] = col_canon(A.F, mul(A.F, incl.f[w], spans[w]));
                out.push_back(std::move(amb));
                int k = lead + 1;
                while (k < t && lam[k] == A.F.p - 1) lam[k++] = 0;
                if (k >= t) break;
                ++lam[k];
            }
        }
    }
    return out;
}

} // namespace

std::vector<std::vector<Mat>> all_submodule_spans(const Algebra& A, const Module& X, int dim_cap) {
    if (X.total_dim() > dim_cap)
        throw cap_error("submodule enumeration: module dimension exceeds cap");
    std::set<std::vector<uint32_t>> seen;
    std::vector<std::vector<Mat>> out;
    std::vector<std::vector<Mat>> work;
    std::vector<Mat> full(A.vertices());
    for (int v = 0; v < A.vertices(); ++v) full[v] = identity(X.dim[v]);
    auto push = [&](std::vector<Mat> spans) {
        auto key = spans_key(spans);
        if (seen.insert(key).second) {
            out.push_back(spans);
            work.push_back(std::move(spans));
        }
    };
    push(full);
    while (!work.empty()) {
        std::vector<Mat> spans = std::move(work.back());
        work.pop_back();
        SubmoduleData sd = submodule_from_spans(A, X, spans);
        for (auto& m : maximal_submodules(A, sd.sub, sd.incl)) push(std::move(m));
    }
    // Close under pairwise intersection.
    bool grew = true;
    while (grew) {
        grew = false;
        size_t sz = out.size();
        for (size_t i = 0; i < sz; ++i)
            for (size_t j = i + 1; j < sz; ++j) {
                std::vector<Mat> inter(A.vertices());
                for (int v = 0; v < A.vertices(); ++v)
                    inter[v] = intersect_and_sum(A.F, out[i][v], out[j][v]).intersection;
                auto key = spans_key(inter);
                if (seen.insert(key).second) {
                    out.push_back(inter);
                    grew = true;
                }
            }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return spans_key(a) < spans_key(b);
    });
    return out;
}

std::vector<QuotientEntry> all_quotients(const Algebra& A, const Module& X, int dim_cap) {
    std::vector<QuotientEntry> out;
    for (const auto& spans : all_submodule_spans(A, X, dim_cap)) {
        QuotientData q = quotient_by_spans(A, X, spans);
        out.push_back({std::move(q.quot), std::move(q.proj)});
    }
    return out;
}

std::vector<Mat> trace_spans(const Algebra& A, const Module& T, const Module& X) {
    std::vector<Mat> spans(A.vertices());
    for (int v = 0; v < A.vertices(); ++v) spans[v] = Mat(X.dim[v], 0);
    for (const ModuleMap& f : hom_basis(A, T, X))
        for (int v = 0; v < A.vertices(); ++v)
            spans[v] = col_canon(A.F, hcat(spans[v], f.f[v]));
    return spans;
}

bool fac_membership(const Algebra& A, const Module& T, const Module& X) {
    std::vector<Mat> tr = trace_spans(A, T, X);
    for (int v = 0; v < A.vertices(); ++v)
        if (tr[v].cols != X.dim[v]) return false;
    return true;
}

Module transpose_module(const Algebra& A, const Algebra& Aop, const Module& X) {
    if (X.total_dim() == 0) return zero_module(Aop);
    Cover c0 = projective_cover(A, X);
    KernelData K = kernel(A, c0.map);
    if (K.ker.total_dim() == 0) return zero_module(Aop); // projective: Tr = 0
    Cover c1 = projective_cover(A, K.ker);
    ModuleMap d = compose(A, K.incl, c1.map); // +P_{t_i} -> +P_{u_j}
    const std::vector<int>& tv = c1.verts;
    const std::vector<int>& uv = c0.verts;

    // Offsets of summand blocks per vertex on both sides.
    auto offsets_of = [&](const std::vector<int>& verts) {
        std::vector<std::vector<int>> off(verts.size(), std::vector<int>(A.vertices(), 0));
        std::vector<int> run(A.vertices(), 0);
        for (size_t k = 0; k < verts.size(); ++k) {
            auto basis_at = projective_basis_at(A, verts[k]);
            for (int w = 0; w < A.vertices(); ++w) {
                off[k][w] = run[w];
                run[w] += static_cast<int>(basis_at[w].size());
            }
        }
        return off;
    };
    auto src_off = offsets_of(tv);
    auto tgt_off = offsets_of(uv);

    // Extract the path-matrix entries a_{ji} in e_{t_i} Lambda e_{u_j}.
    struct Entry {
        int path;     // A-basis path index (u_j -> t_i)
        uint32_t c;
    };
    std::vector<std::vector<std::vector<Entry>>> elem(
        tv.size(), std::vector<std::vector<Entry>>(uv.size()));
    for (size_t i = 0; i < tv.size(); ++i) {
        int ti = tv[i];
        auto basis_i = projective_basis_at(A, ti);
        // position of e_{ti} inside the vertex-ti block of P_{ti}
        int epos = -1;
        int eidx = A.basis.idempotent(ti);
        for (size_t b = 0; b < basis_i[ti].size(); ++b)
            if (basis_i[ti][b] == eidx) epos = static_cast<int>(b);
        if (epos < 0) throw std::runtime_error("transpose: idempotent position not found");
        int colidx = src_off[i][ti] + epos;
        for (size_t j = 0; j < uv.size(); ++j) {
            auto basis_j = projective_basis_at(A, uv[j]);
            for (size_t b = 0; b < basis_j[ti].size(); ++b) {
                uint32_t c = d.f[ti].at(tgt_off[j][ti] + static_cast<int>(b), colidx);
                if (c) elem[i][j].push_back({basis_j[ti][b], c});
            }
        }
    }

    // Opposite-side projective sums and the transposed map.
    auto op_basis_at = [&](int v) { return projective_basis_at(Aop, v); };
    std::vector<Module> op_src_parts, op_tgt_parts;
    for (size_t j = 0; j < uv.size(); ++j) op_src_parts.push_back(projective_module(Aop, uv[j]));
    for (size_t i = 0; i < tv.size(); ++i) op_tgt_parts.push_back(projective_module(Aop, tv[i]));
    SumDecomp Ssrc = op_src_parts.empty() ? SumDecomp{zero_module(Aop), {}, {}}
                                          : direct_sum(Aop, op_src_parts);
    SumDecomp Stgt = op_tgt_parts.empty() ? SumDecomp{zero_module(Aop), {}, {}}
                                          : direct_sum(Aop, op_tgt_parts);
    auto op_src_off = offsets_of(uv);
    auto op_tgt_off = offsets_of(tv);
    // projective_basis_at over Aop has the same block sizes per vertex as over
    // A with reversed roles; recompute offsets against Aop to be safe.
    {
        std::vector<std::vector<int>> off(uv.size(), std::vector<int>(A.vertices(), 0));
        std::vector<int> run(A.vertices(), 0);
        for (size_t k = 0; k < uv.size(); ++k) {
            auto b = op_basis_at(uv[k]);
            for (int w = 0; w < A.vertices(); ++w) {
                off[k][w] = run[w];
                run[w] += static_cast<int>(b[w].size());
            }
        }
        op_src_off = off;
    }
    {
        std::vector<std::vector<int>> off(tv.size(), std::vector<int>(A.vertices(), 0));
        std::vector<int> run(A.vertices(), 0);
        for (size_t k = 0; k < tv.size(); ++k) {
            auto b = op_basis_at(tv[k]);
            for (int w = 0; w < A.vertices(); ++w) {
                off[k][w] = run[w];
                run[w] += static_cast<int>(b[w].size());
            }
        }
        op_tgt_off = off;
    }

    ModuleMap M = zero_map(Aop, Ssrc.sum, Stgt.sum);
    for (size_t i = 0; i < tv.size(); ++i)
        for (size_t j = 0; j < uv.size(); ++j)
            for (const auto& ent : elem[i][j]) {
                // rev(q): an op-path t_i -> u_j, applied before each basis path
                // x: u_j -> w of P^op_{u_j}.
                std::vector<int> rev = A.basis.paths[ent.path].arrows;
                std::reverse(rev.begin(), rev.end());
                auto bj = op_basis_at(uv[j]);
                auto bi = op_basis_at(tv[i]);
                for (int w = 0; w < A.vertices(); ++w)
                    for (size_t bcol = 0; bcol < bj[w].size(); ++bcol) {
                        const BasisPath& x = Aop.basis.paths[bj[w][bcol]];
                        std::vector<int> word = rev;
                        word.insert(word.end(), x.arrows.begin(), x.arrows.end());
                        Combo nf = normal_form(Aop, tv[i], word);
                        for (const auto& [k, c] : nf) {
                            auto it = std::find(bi[w].begin(), bi[w].end(), k);
                            if (it == bi[w].end())
                                throw std::runtime_error("transpose: op basis bookkeeping error");
                            int r = op_tgt_off[i][w] + static_cast<int>(it - bi[w].begin());
                            int cidx = op_src_off[j][w] + static_cast<int>(bcol);
                            M.f[w].at(r, cidx) =
                                Aop.F.add(M.f[w].at(r, cidx), Aop.F.mul(ent.c, c));
                        }
                    }
            }
    if (!is_module_map(Aop, M)) throw std::runtime_error("transpose: induced map not a module map");
    return cokernel(Aop, M).coker;
}

Module tau_n_minus(const Algebra& A, const Algebra& Aop, const Module& X, int n) {
    Module D = dual_module(A, Aop, X);
    Module W = syzygy(Aop, D, n - 1);
    return transpose_module(Aop, A, W);
}

ModuleMap injective_envelope(const Algebra& A, const Module& X) {
    std::vector<Mat> soc = socle_spans(A, X);
    std::vector<Module> parts;
    std::vector<int> verts;
    for (int v = 0; v < A.vertices(); ++v)
        for (int j = 0; j < soc[v].cols; ++j) {
            parts.push_back(injective_module(A, v));
            verts.push_back(v);
        }
    if (parts.empty()) {
        if (X.total_dim() != 0) throw std::runtime_error("injective_envelope: empty socle");
        return zero_map(A, X, zero_module(A));
    }
    SumDecomp S = direct_sum(A, parts);
    // Prescribed map on the socle: v-th socle column to the socle generator of
    // the matching injective copy.
    SubmoduleData socsub = submodule_from_spans(A, X, soc);
    ModuleMap g = zero_map(A, socsub.sub, S.sum);
    {
        int copy = 0;
        std::vector<int> col_at(A.vertices(), 0);
        for (int v = 0; v < A.vertices(); ++v)
            for (int j = 0; j < soc[v].cols; ++j) {
                std::vector<Mat> isoc = socle_spans(A, parts[copy]);
                if (isoc[v].cols != 1)
                    throw std::runtime_error("injective_envelope: socle of I_v not simple");
                Mat target = mul(A.F, S.incl[copy].f[v], isoc[v]);
                for (int r = 0; r < S.sum.dim[v]; ++r) g.f[v].at(r, col_at[v]) = target.at(r, 0);
                ++copy;
                ++col_at[v];
            }
    }
    auto f = factor_over(A, socsub.incl, g);
    if (!f) throw std::runtime_error("injective_envelope: extension over socle failed");
    if (!map_injective(A, *f)) throw std::runtime_error("injective_envelope: map not injective");
    return *f;
}

Ext1Realization realize_ext1(const Algebra& A, const Resolution& RX, const Module& Y,
                             const ModuleMap& cocycle) {
    if (RX.length() < 1) throw std::runtime_error("realize_ext1: projective module has no Ext^1");
    // Omega = im(d0) inside P0; the cocycle factors through it.
    std::vector<Mat> om = image_spans(A, RX.d[0]);
    SubmoduleData Om = submodule_from_spans(A, RX.P[0], om);
    ModuleMap corest = zero_map(A, RX.P[1], Om.sub);
    for (int v = 0; v < A.vertices(); ++v) {
        auto c = coords_in(A.F, Om.incl.f[v], RX.d[0].f[v]);
        if (!c) throw std::runtime_error("realize_ext1: corestriction failed");
        corest.f[v] = *c;
    }
    auto fbar = factor_through(A, corest, cocycle);
    if (!fbar) throw std::runtime_error("realize_ext1: cocycle does not factor through Omega");
    // Pushout (Y + P0) / graph(-fbar, incl).
    SumDecomp S = direct_sum(A, {Y, RX.P[0]});
    std::vector<Mat> graph(A.vertices());
    for (int v = 0; v < A.vertices(); ++v)
        graph[v] = vcat(scale(A.F, A.F.p - 1, fbar->f[v]), Om.incl.f[v]);
    QuotientData Q = quotient_by_spans(A, S.sum, graph);
    Ext1Realization out;
    out.mid = Q.quot;
    out.incl = compose(A, Q.proj, S.incl[0]);
    // Induced projection onto X from (0, aug).
    ModuleMap zero_aug = map_add(A, zero_map(A, S.sum, RX.X),
                                 compose(A, RX.aug, S.proj[1]));
    auto pr = factor_through(A, Q.proj, zero_aug);
    if (!pr) throw std::runtime_error("realize_ext1: projection does not descend");
    out.proj = *pr;
    if (!map_injective(A, out.incl) || !map_surjective(A, out.proj))
        throw std::runtime_error("realize_ext1: not a short exact sequence");
    return out;
}

std::optional<ModuleMap> factor_through(const Algebra& A, const ModuleMap& c, const ModuleMap& w) {
    // h: w.src -> c.src with c o h = w.
    std::vector<ModuleMap> H = hom_basis(A, w.src, c.src);
    std::vector<ModuleMap> comp;
    comp.reserve(H.size());
    for (const ModuleMap& h : H) comp.push_back(compose(A, c, h));
    Mat B = comp.empty() ? Mat(flatten(w).rows, 0) : flatten_family(comp);
    auto x = coords_in(A.F, B, flatten(w));
    if (!x) return std::nullopt;
    if (H.empty()) return w.is_zero() ? std::optional<ModuleMap>(zero_map(A, w.src, c.src))
                                      : std::nullopt;
    return map_from_coords(A, H, *x);
}

std::optional<ModuleMap> factor_over(const Algebra& A, const ModuleMap& c, const ModuleMap& w) {
    // h: c.tgt -> w.tgt with h o c = w.
    std::vector<ModuleMap> H = hom_basis(A, c.tgt, w.tgt);
    std::vector<ModuleMap> comp;
    comp.reserve(H.size());
    for (const ModuleMap& h : H) comp.push_back(compose(A, h, c));
    Mat B = comp.empty() ? Mat(flatten(w).rows, 0) : flatten_family(comp);
    auto x = coords_in(A.F, B, flatten(w));
    if (!x) return std::nullopt;
    if (H.empty()) return w.is_zero() ? std::optional<ModuleMap>(zero_map(A, c.tgt, w.tgt))
                                      : std::nullopt;
    return map_from_coords(A, H, *x);
}

} // namespace ntors
