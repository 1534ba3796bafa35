#include "ntors/approx.hpp"

#include <algorithm>
#include <random>

namespace ntors {

Subcat Subcat::from_mask(uint32_t mask, int n) {
    Subcat s;
    for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) s.idx.push_back(i);
    return s;
}

uint32_t Subcat::mask() const {
    uint32_t m = 0;
    for (int i : idx) m |= (1u << i);
    return m;
}

namespace {

Mat flatten_map(const ModuleMap& m) {
    size_t total = 0;
    for (const Mat& f : m.f) total += f.a.size();
    Mat v(static_cast<int>(total), 1);
    size_t k = 0;
    for (const Mat& f : m.f)
        for (uint32_t x : f.a) v.at(static_cast<int>(k++), 0) = x;
    return v;
}

// Coordinates (columns) of the ideal {k in End(W) : post/pre-composition with
// the approximation vanishes}, inside the End basis.
Mat vanishing_ideal(const Algebra& A, const std::vector<ModuleMap>& endo, const ModuleMap& f,
                    bool right_side) {
    if (endo.empty()) return Mat(0, 0);
    std::vector<ModuleMap> comps;
    comps.reserve(endo.size());
    for (const ModuleMap& k : endo)
        comps.push_back(right_side ? compose(A, f, k) : compose(A, k, f));
    Mat M(flatten_map(comps[0]).rows, static_cast<int>(comps.size()));
    for (size_t j = 0; j < comps.size(); ++j) {
        Mat c = flatten_map(comps[j]);
        for (int i = 0; i < c.rows; ++i) M.at(i, static_cast<int>(j)) = c.at(i, 0);
    }
    return kernel_basis(A.F, M);
}

bool inside_span(const Fp& F, const Mat& span, const Mat& vecs) {
    if (vecs.cols == 0) return true;
    return coords_in(F, span, vecs).has_value();
}

ModuleMap combo_of(const Algebra& A, const std::vector<ModuleMap>& basis, const Mat& K, int col,
                   const std::vector<uint32_t>* rand_coeffs = nullptr) {
    ModuleMap m = zero_map(A, basis[0].src, basis[0].tgt);
    for (size_t k = 0; k < basis.size(); ++k) {
        uint32_t c = rand_coeffs ? (*rand_coeffs)[k] : K.at(static_cast<int>(k), col);
        if (c) m = map_add(A, m, map_scale(A, c, basis[k]));
    }
    return m;
}

ModuleMap map_power(const Algebra& A, const ModuleMap& m, int dim) {
    int N = 1;
    while (N < std::max(dim, 1)) N <<= 1;
    ModuleMap r = identity_map(A, m.src), b = m;
    for (int e = N; e; e >>= 1) {
        if (e & 1) r = compose(A, b, r);
        b = compose(A, b, b);
    }
    return r;
}

// One reduction step: strip the part of W on which the approximation dies.
// Returns false when already minimal (ideal inside the radical).
bool reduce_once(const Algebra& A, ModuleMap& f, bool right_side, uint64_t seed) {
    const Module& W = right_side ? f.src : f.tgt;
    if (W.total_dim() == 0) return false;
    std::vector<ModuleMap> endo = hom_basis(A, W, W);
    Mat K = vanishing_ideal(A, endo, f, right_side);
    if (K.cols == 0) return false;
    EndAlgebra EA = end_algebra(A, W);
    if (inside_span(A.F, EA.radical_coords, K)) return false;

    auto apply = [&](const ModuleMap& k) -> bool {
        ModuleMap h = map_power(A, k, W.total_dim());
        bool nonzero = false;
        for (const Mat& m : h.f)
            if (!m.is_zero()) nonzero = true;
        if (!nonzero) return false;
        std::vector<Mat> keep(A.vertices());
        for (int v = 0; v < A.vertices(); ++v) keep[v] = kernel_basis(A.F, h.f[v]);
        SubmoduleData sd = submodule_from_spans(A, W, keep);
        if (sd.sub.total_dim() == W.total_dim()) return false;
        if (right_side) {
            // theta kills im(h); restrict to ker(h).
            f = compose(A, f, sd.incl);
        } else {
            // im(phi) lies in ker(h); corestrict.
            ModuleMap ff = zero_map(A, f.src, sd.sub);
            for (int v = 0; v < A.vertices(); ++v) {
                auto c = coords_in(A.F, sd.incl.f[v], f.f[v]);
                if (!c) throw std::runtime_error("minimize: corestriction failed");
                ff.f[v] = *c;
            }
            f = std::move(ff);
        }
        return true;
    };

    for (int j = 0; j < K.cols; ++j)
        if (apply(combo_of(A, endo, K, j))) return true;
    std::mt19937_64 rng(seed ^ content_hash(W, 0x7a77));
    std::uniform_int_distribution<uint32_t> dist(0, A.F.p - 1);
    for (int t = 0; t < 256; ++t) {
        // Random element of the ideal span.
        std::vector<uint32_t> cs(static_cast<size_t>(K.cols));
        for (auto& c : cs) c = dist(rng);
        ModuleMap k = zero_map(A, W, W);
        for (int j = 0; j < K.cols; ++j)
            if (cs[j]) k = map_add(A, k, map_scale(A, cs[j], combo_of(A, endo, K, j)));
        if (apply(k)) return true;
    }
    throw std::runtime_error("minimize: vanishing ideal escapes the radical but no "
                             "non-nilpotent element found");
}

} // namespace

ModuleMap minimize_right(const Algebra& A, ModuleMap theta, uint64_t seed) {
    while (reduce_once(A, theta, true, seed)) {
    }
    return theta;
}

ModuleMap minimize_left(const Algebra& A, ModuleMap phi, uint64_t seed) {
    while (reduce_once(A, phi, false, seed)) {
    }
    return phi;
}

bool is_right_minimal(const Algebra& A, const ModuleMap& theta) {
    if (theta.src.total_dim() == 0) return true;
    std::vector<ModuleMap> endo = hom_basis(A, theta.src, theta.src);
    Mat K = vanishing_ideal(A, endo, theta, true);
    if (K.cols == 0) return true;
    EndAlgebra EA = end_algebra(A, theta.src);
    return inside_span(A.F, EA.radical_coords, K);
}

bool is_left_minimal(const Algebra& A, const ModuleMap& phi) {
    if (phi.tgt.total_dim() == 0) return true;
    std::vector<ModuleMap> endo = hom_basis(A, phi.tgt, phi.tgt);
    Mat K = vanishing_ideal(A, endo, phi, false);
    if (K.cols == 0) return true;
    EndAlgebra EA = end_algebra(A, phi.tgt);
    return inside_span(A.F, EA.radical_coords, K);
}

ModuleMap right_approx(Registry& R, const Subcat& S, const Module& X, bool minimal) {
    const Algebra& A = *R.A;
    std::vector<Module> parts;
    std::vector<ModuleMap> maps;
    for (int i : S.idx) {
        for (const ModuleMap& h : hom_basis(A, R.ind[i], X)) {
            parts.push_back(R.ind[i]);
            maps.push_back(h);
        }
    }
    if (parts.empty()) return zero_map(A, zero_module(A), X);
    SumDecomp D = direct_sum(A, parts);
    ModuleMap theta = zero_map(A, D.sum, X);
    for (size_t k = 0; k < maps.size(); ++k)
        theta = map_add(A, theta, compose(A, maps[k], D.proj[k]));
    if (minimal) theta = minimize_right(A, theta, R.seed);
    return theta;
}

ModuleMap left_approx(Registry& R, const Subcat& S, const Module& X, bool minimal) {
    const Algebra& A = *R.A;
    std::vector<Module> parts;
    std::vector<ModuleMap> maps;
    for (int i : S.idx) {
        for (const ModuleMap& h : hom_basis(A, X, R.ind[i])) {
            parts.push_back(R.ind[i]);
            maps.push_back(h);
        }
    }
    if (parts.empty()) return zero_map(A, X, zero_module(A));
    SumDecomp D = direct_sum(A, parts);
    ModuleMap phi = zero_map(A, X, D.sum);
    for (size_t k = 0; k < maps.size(); ++k)
        phi = map_add(A, phi, compose(A, D.incl[k], maps[k]));
    if (minimal) phi = minimize_left(A, phi, R.seed);
    return phi;
}

bool is_right_approximation(Registry& R, const Subcat& S, const ModuleMap& theta) {
    const Algebra& A = *R.A;
    for (int i : S.idx)
        for (const ModuleMap& g : hom_basis(A, R.ind[i], theta.tgt))
            if (!factor_through(A, theta, g)) return false;
    return true;
}

bool is_left_approximation(Registry& R, const Subcat& S, const ModuleMap& phi) {
    const Algebra& A = *R.A;
    for (int i : S.idx)
        for (const ModuleMap& g : hom_basis(A, phi.src, R.ind[i]))
            if (!factor_over(A, phi, g)) return false;
    return true;
}

} // namespace ntors
