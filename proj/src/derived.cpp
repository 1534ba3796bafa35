#include "ntors/derived.hpp"

#include <algorithm>

namespace ntors {

Module cx_term(const Algebra& A, const Cx& C, int i) {
    if (!C.in_range(i)) return zero_module(A);
    return C.term[i - C.lo];
}

ModuleMap cx_diff(const Algebra& A, const Cx& C, int i) {
    if (C.in_range(i) && i + 1 <= C.hi()) return C.d[i - C.lo];
    return zero_map(A, cx_term(A, C, i), cx_term(A, C, i + 1));
}

void cx_check(const Algebra& A, const Cx& C) {
    for (size_t k = 0; k < C.d.size(); ++k) {
        if (!is_module_map(A, C.d[k])) throw std::runtime_error("cx_check: differential invalid");
        if (!(C.d[k].src == C.term[k]) || !(C.d[k].tgt == C.term[k + 1]))
            throw std::runtime_error("cx_check: differential endpoints");
        if (k + 1 < C.d.size() && !compose(A, C.d[k + 1], C.d[k]).is_zero())
            throw std::runtime_error("cx_check: d*d != 0");
    }
}

Cx cx_trim(const Algebra& A, Cx C) {
    (void)A;
    while (!C.term.empty() && C.term.front().is_zero()) {
        C.term.erase(C.term.begin());
        if (!C.d.empty()) C.d.erase(C.d.begin());
        ++C.lo;
    }
    while (!C.term.empty() && C.term.back().is_zero()) {
        C.term.pop_back();
        if (!C.d.empty()) C.d.pop_back();
    }
    if (C.term.empty()) {
        C.lo = 0;
        C.d.clear();
    }
    return C;
}

Cx cx_of_module(const Algebra& A, const Module& X, int degree) {
    (void)A;
    Cx C;
    if (X.total_dim() == 0) return C;
    C.lo = degree;
    C.term.push_back(X);
    return C;
}

Cx resolve(const Algebra& A, const Module& X) {
    Cx C;
    if (X.total_dim() == 0) return C;
    Resolution R = min_resolution(A, X);
    int len = R.length();
    C.lo = -len;
    for (int j = 0; j <= len; ++j) C.term.push_back(R.P[len - j]);
    for (int j = 0; j < len; ++j) C.d.push_back(R.d[len - j - 1]);
    return C;
}

Cx shift_cx(const Algebra& A, const Cx& C, int k) {
    Cx S = C;
    S.lo = C.lo - k;
    if (k % 2 != 0)
        for (ModuleMap& m : S.d) m = map_scale(A, A.F.p - 1, m);
    return S;
}

ModuleMap cm_component(const Algebra& A, const ChainMap& m, int i) {
    if (m.src.in_range(i)) {
        const ModuleMap& c = m.f[i - m.src.lo];
        return c;
    }
    return zero_map(A, cx_term(A, m.src, i), cx_term(A, m.tgt, i));
}

bool cm_check(const Algebra& A, const ChainMap& m) {
    if (static_cast<int>(m.f.size()) != static_cast<int>(m.src.term.size())) return false;
    int lo = std::min(m.src.empty() ? 0 : m.src.lo, m.tgt.empty() ? 0 : m.tgt.lo) - 1;
    int hi = std::max(m.src.empty() ? 0 : m.src.hi(), m.tgt.empty() ? 0 : m.tgt.hi()) + 1;
    for (int i = lo; i <= hi; ++i) {
        ModuleMap a = compose(A, cx_diff(A, m.tgt, i), cm_component(A, m, i));
        ModuleMap b = compose(A, cm_component(A, m, i + 1), cx_diff(A, m.src, i));
        for (int v = 0; v < A.vertices(); ++v)
            if (!(a.f[v] == b.f[v])) return false;
        if (!is_module_map(A, cm_component(A, m, i))) return false;
    }
    return true;
}

ChainMap cm_zero(const Algebra& A, const Cx& C, const Cx& D) {
    ChainMap m{C, D, {}};
    for (int i = 0; i < static_cast<int>(C.term.size()); ++i)
        m.f.push_back(zero_map(A, C.term[i], cx_term(A, D, C.lo + i)));
    return m;
}

ChainMap cm_identity(const Algebra& A, const Cx& C) {
    ChainMap m{C, C, {}};
    for (const Module& t : C.term) m.f.push_back(identity_map(A, t));
    return m;
}

ChainMap cm_compose(const Algebra& A, const ChainMap& g, const ChainMap& f) {
    ChainMap m{f.src, g.tgt, {}};
    for (int i = 0; i < static_cast<int>(f.src.term.size()); ++i) {
        int deg = f.src.lo + i;
        m.f.push_back(compose(A, cm_component(A, g, deg), cm_component(A, f, deg)));
    }
    return m;
}

ChainMap cm_add(const Algebra& A, const ChainMap& a, const ChainMap& b) {
    ChainMap m{a.src, a.tgt, {}};
    for (size_t i = 0; i < a.f.size(); ++i) m.f.push_back(map_add(A, a.f[i], b.f[i]));
    return m;
}

ChainMap cm_scale(const Algebra& A, uint32_t c, const ChainMap& x) {
    ChainMap m{x.src, x.tgt, {}};
    for (const ModuleMap& g : x.f) m.f.push_back(map_scale(A, c, g));
    return m;
}

ChainMap cm_shift(const Algebra& A, const ChainMap& m, int k) {
    ChainMap s{shift_cx(A, m.src, k), shift_cx(A, m.tgt, k), m.f};
    return s;
}

CxSum cx_direct_sum(const Algebra& A, const std::vector<Cx>& parts) {
    CxSum out;
    int lo = 0, hi = -1;
    bool any = false;
    for (const Cx& c : parts)
        if (!c.empty()) {
            if (!any) {
                lo = c.lo;
                hi = c.hi();
                any = true;
            } else {
                lo = std::min(lo, c.lo);
                hi = std::max(hi, c.hi());
            }
        }
    if (!any) {
        for (const Cx& c : parts) {
            (void)c;
            out.incl.push_back(cm_zero(A, Cx{}, Cx{}));
            out.proj.push_back(cm_zero(A, Cx{}, Cx{}));
        }
        return out;
    }
    out.sum.lo = lo;
    std::vector<std::vector<SumDecomp>> per_degree; // decomposition data per degree
    std::vector<SumDecomp> degree_sums;
    for (int i = lo; i <= hi; ++i) {
        std::vector<Module> mods;
        for (const Cx& c : parts) mods.push_back(cx_term(A, c, i));
        degree_sums.push_back(direct_sum(A, mods));
        out.sum.term.push_back(degree_sums.back().sum);
    }
    for (int i = lo; i < hi; ++i) {
        ModuleMap d = zero_map(A, out.sum.term[i - lo], out.sum.term[i + 1 - lo]);
        for (size_t k = 0; k < parts.size(); ++k) {
            ModuleMap comp = compose(A, degree_sums[i + 1 - lo].incl[k],
                                     compose(A, cx_diff(A, parts[k], i), degree_sums[i - lo].proj[k]));
            d = map_add(A, d, comp);
        }
        out.sum.d.push_back(std::move(d));
    }
    for (size_t k = 0; k < parts.size(); ++k) {
        ChainMap in = cm_zero(A, parts[k], out.sum);
        for (int i = 0; i < static_cast<int>(parts[k].term.size()); ++i)
            in.f[i] = degree_sums[parts[k].lo + i - lo].incl[k];
        out.incl.push_back(std::move(in));
        ChainMap pr = cm_zero(A, out.sum, parts[k]);
        for (int i = 0; i < static_cast<int>(out.sum.term.size()); ++i)
            pr.f[i] = degree_sums[i].proj[k];
        out.proj.push_back(std::move(pr));
    }
    return out;
}

ConeData cone(const Algebra& A, const ChainMap& f) {
    const Cx& C = f.src;
    const Cx& D = f.tgt;
    ConeData out;
    int lo = 0, hi = -1;
    {
        bool any = false;
        auto acc = [&](int a, int b) {
            if (!any) {
                lo = a;
                hi = b;
                any = true;
            } else {
                lo = std::min(lo, a);
                hi = std::max(hi, b);
            }
        };
        if (!C.empty()) acc(C.lo - 1, C.hi() - 1); // C[1] support
        if (!D.empty()) acc(D.lo, D.hi());
        if (!any) return out;
    }
    out.cone.lo = lo;
    std::vector<SumDecomp> sums;
    for (int i = lo; i <= hi; ++i) {
        sums.push_back(direct_sum(A, {cx_term(A, C, i + 1), cx_term(A, D, i)}));
        out.cone.term.push_back(sums.back().sum);
    }
    for (int i = lo; i < hi; ++i) {
        const SumDecomp& S0 = sums[i - lo];
        const SumDecomp& S1 = sums[i + 1 - lo];
        // d(c, x) = (-d_C c, f(c) + d_D x)
        ModuleMap d = compose(A, S1.incl[0],
                              compose(A, map_scale(A, A.F.p - 1, cx_diff(A, C, i + 1)), S0.proj[0]));
        d = map_add(A, d,
                    compose(A, S1.incl[1], compose(A, cm_component(A, f, i + 1), S0.proj[0])));
        d = map_add(A, d, compose(A, S1.incl[1], compose(A, cx_diff(A, D, i), S0.proj[1])));
        out.cone.d.push_back(std::move(d));
    }
    out.incl = cm_zero(A, D, out.cone);
    for (int i = 0; i < static_cast<int>(D.term.size()); ++i) {
        int deg = D.lo + i;
        if (deg >= lo && deg <= hi) out.incl.f[i] = sums[deg - lo].incl[1];
    }
    Cx C1 = shift_cx(A, C, 1);
    out.proj = cm_zero(A, out.cone, C1);
    for (int i = 0; i < static_cast<int>(out.cone.term.size()); ++i) {
        int deg = lo + i;
        out.proj.f[i] = compose(A, identity_map(A, cx_term(A, C1, deg)), sums[i].proj[0]);
    }
    out.cone = cx_trim(A, out.cone);
    // Rebuild incl/proj against the trimmed cone support.
    {
        ChainMap in = cm_zero(A, D, out.cone);
        for (int i = 0; i < static_cast<int>(D.term.size()); ++i) {
            int deg = D.lo + i;
            if (deg >= lo && deg <= hi && out.cone.in_range(deg)) {
                ModuleMap m = sums[deg - lo].incl[1];
                m.tgt = out.cone.term[deg - out.cone.lo];
                in.f[i] = std::move(m);
            }
        }
        out.incl = std::move(in);
        ChainMap pr = cm_zero(A, out.cone, C1);
        for (int i = 0; i < static_cast<int>(out.cone.term.size()); ++i) {
            int deg = out.cone.lo + i;
            ModuleMap m = sums[deg - lo].proj[0];
            m.src = out.cone.term[i];
            m.tgt = cx_term(A, C1, deg);
            pr.f[i] = std::move(m);
        }
        out.proj = std::move(pr);
    }
    return out;
}

Module cohomology(const Algebra& A, const Cx& C, int i) {
    ModuleMap out = cx_diff(A, C, i);
    ModuleMap in = cx_diff(A, C, i - 1);
    KernelData K = kernel(A, out);
    // Image of `in` expressed inside the kernel.
    std::vector<Mat> spans(A.vertices());
    for (int v = 0; v < A.vertices(); ++v) {
        auto c = coords_in(A.F, K.incl.f[v], col_canon(A.F, in.f[v]));
        if (!c) throw std::runtime_error("cohomology: image not inside kernel");
        spans[v] = *c;
    }
    return quotient_by_spans(A, K.ker, spans).quot;
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

} // namespace

HomCx hom_cx(const Algebra& A, const Cx& C, const Cx& D) {
    HomCx H;
    H.src = C;
    H.tgt = D;
    if (C.empty() || D.empty()) {
        H.cycles = Mat(0, 0);
        H.boundaries = Mat(0, 0);
        H.class_reps = Mat(0, 0);
        return H;
    }
    int lo = std::max(C.lo, D.lo), hi = std::min(C.hi(), D.hi());
    std::vector<int> off;
    int nvars = 0;
    for (int i = lo; i <= hi; ++i) {
        H.var_degrees.push_back(i);
        H.hb.push_back(hom_basis(A, cx_term(A, C, i), cx_term(A, D, i)));
        off.push_back(nvars);
        nvars += static_cast<int>(H.hb.back().size());
    }
    // Chain-map equations per degree i in [lo-1, hi]: d_D f_i = f_{i+1} d_C.
    std::vector<std::vector<ModuleMap>> eq_basis;
    std::vector<int> eq_off;
    int neq = 0;
    for (int i = lo - 1; i <= hi; ++i) {
        eq_basis.push_back(hom_basis(A, cx_term(A, C, i), cx_term(A, D, i + 1)));
        eq_off.push_back(neq);
        neq += static_cast<int>(eq_basis.back().size());
    }
    Mat M(neq, nvars);
    auto add_block = [&](int eq_idx, const ModuleMap& val, int var_col, uint32_t sign) {
        // val must lie in eq_basis[eq_idx]'s span; sign multiplies.
        if (eq_basis[eq_idx].empty()) {
            if (!val.is_zero()) throw std::runtime_error("hom_cx: equation space too small");
            return;
        }
        Mat coords = map_coords(A, eq_basis[eq_idx], val);
        for (int r = 0; r < coords.rows; ++r)
            M.at(eq_off[eq_idx] + r, var_col) =
                A.F.add(M.at(eq_off[eq_idx] + r, var_col), A.F.mul(sign, coords.at(r, 0)));
    };
    for (size_t k = 0; k < H.var_degrees.size(); ++k) {
        int i = H.var_degrees[k];
        for (size_t b = 0; b < H.hb[k].size(); ++b) {
            int col = off[k] + static_cast<int>(b);
            // contributes +d_D o f_i at equation (i), and -f_i o d_C at equation (i-1)
            add_block(i - (lo - 1), compose(A, cx_diff(A, D, i), H.hb[k][b]), col, 1);
            add_block(i - 1 - (lo - 1), compose(A, H.hb[k][b], cx_diff(A, C, i - 1)), col,
                      A.F.p - 1);
        }
    }
    H.cycles = kernel_basis(A.F, M);
    // Null-homotopic subspace: images of h -> d h + h d.
    std::vector<Mat> bcols;
    for (int i = lo; i <= hi + 1; ++i) {
        // h_i: C^i -> D^{i-1}
        std::vector<ModuleMap> hb = hom_basis(A, cx_term(A, C, i), cx_term(A, D, i - 1));
        for (const ModuleMap& h : hb) {
            Mat col(nvars, 1);
            // d_D o h contributes at degree i; h o d_C contributes at degree i-1.
            ModuleMap dh = compose(A, cx_diff(A, D, i - 1), h);
            if (static_cast<size_t>(i - lo) < H.hb.size() && !H.hb[i - lo].empty()) {
                Mat c = map_coords(A, H.hb[i - lo], dh);
                for (int r = 0; r < c.rows; ++r) col.at(off[i - lo] + r, 0) = c.at(r, 0);
            } else if (!dh.is_zero()) {
                throw std::runtime_error("hom_cx: homotopy image escapes variable space");
            }
            if (i - 1 >= lo) {
                ModuleMap hd = compose(A, h, cx_diff(A, C, i - 2 + 1));
                if (!H.hb[i - 1 - lo].empty()) {
                    Mat c = map_coords(A, H.hb[i - 1 - lo], hd);
                    for (int r = 0; r < c.rows; ++r)
                        col.at(off[i - 1 - lo] + r, 0) = A.F.add(col.at(off[i - 1 - lo] + r, 0),
                                                                 c.at(r, 0));
                }
            }
            bcols.push_back(std::move(col));
        }
    }
    Mat B(nvars, static_cast<int>(bcols.size()));
    for (size_t j = 0; j < bcols.size(); ++j)
        for (int r = 0; r < nvars; ++r) B.at(r, static_cast<int>(j)) = bcols[j].at(r, 0);
    H.boundaries = col_canon(A.F, B);
    Mat span = H.boundaries;
    Mat reps(nvars, 0);
    for (int j = 0; j < H.cycles.cols; ++j) {
        Mat col(nvars, 1);
        for (int r = 0; r < nvars; ++r) col.at(r, 0) = H.cycles.at(r, j);
        Mat test = hcat(span, col);
        if (rank(A.F, test) > span.cols) {
            span = test;
            reps = hcat(reps, col);
        }
    }
    H.class_reps = reps;
    return H;
}

ChainMap hom_cx_map(const Algebra& A, const HomCx& H, const Mat& coords) {
    ChainMap m = cm_zero(A, H.src, H.tgt);
    int pos = 0;
    for (size_t k = 0; k < H.var_degrees.size(); ++k) {
        int i = H.var_degrees[k];
        ModuleMap comp = zero_map(A, cx_term(A, H.src, i), cx_term(A, H.tgt, i));
        for (size_t b = 0; b < H.hb[k].size(); ++b) {
            uint32_t c = coords.at(pos++, 0);
            if (c) comp = map_add(A, comp, map_scale(A, c, H.hb[k][b]));
        }
        if (H.src.in_range(i)) m.f[i - H.src.lo] = std::move(comp);
    }
    return m;
}

ChainMap hom_cx_class(const Algebra& A, const HomCx& H, int k) {
    Mat col(H.class_reps.rows, 1);
    for (int r = 0; r < col.rows; ++r) col.at(r, 0) = H.class_reps.at(r, k);
    return hom_cx_map(A, H, col);
}

Mat hom_cx_class_coords(const Algebra& A, const HomCx& H, const ChainMap& m) {
    int nvars = H.cycles.rows;
    Mat vec(nvars, 1);
    int pos = 0;
    for (size_t k = 0; k < H.var_degrees.size(); ++k) {
        int i = H.var_degrees[k];
        ModuleMap comp = cm_component(A, m, i);
        if (H.hb[k].empty()) {
            if (!comp.is_zero())
                throw std::runtime_error("hom_cx_class_coords: component outside space");
            continue;
        }
        Mat c = map_coords(A, H.hb[k], comp);
        for (int r = 0; r < c.rows; ++r) vec.at(pos + r, 0) = c.at(r, 0);
        pos += c.rows;
    }
    Mat B = hcat(H.boundaries, H.class_reps);
    auto x = coords_in(A.F, B, vec);
    if (!x) throw std::runtime_error("hom_cx_class_coords: not a chain map class");
    Mat out(H.class_reps.cols, 1);
    for (int r = 0; r < out.rows; ++r) out.at(r, 0) = x->at(H.boundaries.cols + r, 0);
    return out;
}

bool is_null_homotopic(const Algebra& A, const ChainMap& m) {
    if (m.src.empty() || m.tgt.empty()) {
        for (const ModuleMap& c : m.f)
            if (!c.is_zero()) return false;
        return true;
    }
    HomCx H = hom_cx(A, m.src, m.tgt);
    Mat c = hom_cx_class_coords(A, H, m);
    return c.is_zero();
}

bool cm_homotopic(const Algebra& A, const ChainMap& a, const ChainMap& b) {
    return is_null_homotopic(A, cm_add(A, a, cm_scale(A, A.F.p - 1, b)));
}

std::optional<ChainMap> homotopy_inverse(const Algebra& A, const ChainMap& f) {
    // Solve [g o f] = [id_C] in K^b, then verify [f o g] = [id_D].
    HomCx H = hom_cx(A, f.tgt, f.src);
    HomCx HC = hom_cx(A, f.src, f.src);
    if (f.src.empty() && f.tgt.empty()) return cm_zero(A, f.tgt, f.src);
    Mat idc = hom_cx_class_coords(A, HC, cm_identity(A, f.src));
    // Linear map: class(g) -> class(g o f).
    Mat M(idc.rows, H.dim());
    for (int k = 0; k < H.dim(); ++k) {
        ChainMap g = hom_cx_class(A, H, k);
        Mat c = hom_cx_class_coords(A, HC, cm_compose(A, g, f));
        for (int r = 0; r < c.rows; ++r) M.at(r, k) = c.at(r, 0);
    }
    Solve s = solve(A.F, M, idc);
    if (!s.particular) return std::nullopt;
    ChainMap g = cm_zero(A, f.tgt, f.src);
    for (int k = 0; k < H.dim(); ++k) {
        uint32_t c = s.particular->at(k, 0);
        if (c) g = cm_add(A, g, cm_scale(A, c, hom_cx_class(A, H, k)));
    }
    if (!cm_homotopic(A, cm_compose(A, f, g), cm_identity(A, f.tgt))) return std::nullopt;
    return g;
}

ResolvedComplex resolve_complex(const Algebra& A, const ModComplex& X) {
    ResolvedComplex out;
    out.X = X;
    if (X.term.empty()) return out;
    int hi = X.lo + static_cast<int>(X.term.size()) - 1;
    auto term_at = [&](int i) -> Module {
        if (i < X.lo || i > hi) return zero_module(A);
        return X.term[i - X.lo];
    };
    auto diff_at = [&](int i) -> ModuleMap {
        if (i >= X.lo && i < hi) return X.d[i - X.lo];
        return zero_map(A, term_at(i), term_at(i + 1));
    };
    // Build downwards; degree i data stored front-most.
    std::vector<Module> P;     // P[k] at degree (top - k)
    std::vector<ModuleMap> dP; // dP[k]: P at degree (top-k) -> degree (top-k+1)
    std::vector<ModuleMap> eps;
    Module Pup = zero_module(A);   // P^{i+1}
    Module Pupup = zero_module(A); // P^{i+2}
    ModuleMap eps_up = zero_map(A, Pup, term_at(hi + 1));
    ModuleMap d_up = zero_map(A, Pup, Pupup);
    int guard = hi - X.lo + 64;
    for (int i = hi; --guard >= 0; --i) {
        // W = {(x, q) in X^i + P^{i+1} : d_X x = eps q, d_P q = 0}.
        SumDecomp S = direct_sum(A, {term_at(i), Pup});
        SumDecomp T = direct_sum(A, {term_at(i + 1), Pupup});
        ModuleMap big = compose(A, T.incl[0], compose(A, diff_at(i), S.proj[0]));
        big = map_add(A, big,
                      compose(A, T.incl[0],
                              compose(A, map_scale(A, A.F.p - 1, eps_up), S.proj[1])));
        big = map_add(A, big, compose(A, T.incl[1], compose(A, d_up, S.proj[1])));
        KernelData W = kernel(A, big);
        Cover cov = W.ker.total_dim() ? projective_cover(A, W.ker)
                                      : Cover{zero_map(A, zero_module(A), W.ker), {}};
        ModuleMap pi = compose(A, W.incl, cov.map); // P^i -> X^i + P^{i+1}
        Module Pi = cov.map.src;
        ModuleMap eps_i = compose(A, S.proj[0], pi);
        ModuleMap d_i = compose(A, S.proj[1], pi);
        P.insert(P.begin(), Pi);
        eps.insert(eps.begin(), eps_i);
        if (!Pup.is_zero() || !dP.empty()) dP.insert(dP.begin(), d_i);
        if (Pi.total_dim() == 0 && i < X.lo) break;
        Pupup = Pup;
        Pup = Pi;
        d_up = d_i;
        eps_up = eps_i;
    }
    if (guard < 0) throw std::runtime_error("resolve_complex: no termination (gldim issue?)");
    // Assemble, trimming leading zeros.
    Cx C;
    C.lo = hi - static_cast<int>(P.size()) + 1;
    C.term = P;
    C.d = dP;
    // dP currently has size P.size()-1 alignment handled by construction; fix
    // sizes defensively.
    while (C.d.size() + 1 > C.term.size()) C.d.pop_back();
    while (C.d.size() + 1 < C.term.size() && !C.term.empty())
        C.d.push_back(zero_map(A, C.term[C.d.size()], C.term[C.d.size() + 1]));
    // Reorder eps to match term order.
    out.P = C;
    out.eps = eps;
    // Trim zero terms at the bottom (front).
    while (!out.P.term.empty() && out.P.term.front().is_zero()) {
        out.P.term.erase(out.P.term.begin());
        if (!out.P.d.empty()) out.P.d.erase(out.P.d.begin());
        out.eps.erase(out.eps.begin());
        ++out.P.lo;
    }
    while (!out.P.term.empty() && out.P.term.back().is_zero()) {
        out.P.term.pop_back();
        if (!out.P.d.empty()) out.P.d.pop_back();
        out.eps.pop_back();
    }
    if (out.P.term.empty()) out.P = Cx{};
    cx_check(A, out.P);
    return out;
}

Truncation truncate_leq(const Algebra& A, const Cx& C, int s) {
    Truncation out;
    if (C.empty() || s < C.lo) {
        out.part = Cx{};
        out.map = cm_zero(A, Cx{}, C);
        return out;
    }
    // Honest tau^{<=s}: terms below s, then ker(d^s) at degree s.
    ModComplex T;
    T.lo = C.lo;
    KernelData K = kernel(A, cx_diff(A, C, s));
    std::vector<ModuleMap> into_C; // component maps into C per degree
    for (int i = C.lo; i < s; ++i) T.term.push_back(cx_term(A, C, i));
    T.term.push_back(K.ker);
    for (int i = C.lo; i + 1 < s; ++i) T.d.push_back(cx_diff(A, C, i));
    if (s > C.lo) {
        // corestrict d^{s-1} into ker(d^s)
        ModuleMap dprev = cx_diff(A, C, s - 1);
        ModuleMap co = zero_map(A, dprev.src, K.ker);
        for (int v = 0; v < A.vertices(); ++v) {
            auto c = coords_in(A.F, K.incl.f[v], dprev.f[v]);
            if (!c) throw std::runtime_error("truncate_leq: d does not land in kernel");
            co.f[v] = *c;
        }
        T.d.push_back(std::move(co));
    }
    for (int i = C.lo; i < s; ++i) into_C.push_back(identity_map(A, cx_term(A, C, i)));
    into_C.push_back(K.incl);
    ResolvedComplex R = resolve_complex(A, T);
    out.part = R.P;
    out.map = cm_zero(A, R.P, C);
    for (int k = 0; k < static_cast<int>(R.P.term.size()); ++k) {
        int deg = R.P.lo + k;
        if (deg >= T.lo && deg <= T.lo + static_cast<int>(T.term.size()) - 1) {
            out.map.f[k] = compose(A, into_C[deg - T.lo], R.eps[k]);
        }
    }
    if (!cm_check(A, out.map)) throw std::runtime_error("truncate_leq: comparison not a chain map");
    return out;
}

Truncation truncate_geq(const Algebra& A, const Cx& C, int s) {
    Truncation low = truncate_leq(A, C, s - 1);
    ConeData cd = cone(A, low.map);
    Truncation out;
    out.part = cd.cone;
    out.map = cd.incl; // C -> tau^{>= s}
    return out;
}

} // namespace ntors
