#include "ntors/higher.hpp"

#include <algorithm>
#include <set>

namespace ntors {

bool is_exact_sequence(const Algebra& A, const NExactSeq& seq) {
    const auto& obj = seq.obj;
    const auto& map = seq.map;
    if (obj.size() != map.size() + 1) return false;
    for (size_t k = 0; k + 1 < map.size(); ++k)
        if (!compose(A, map[k + 1], map[k]).is_zero()) return false;
    for (int v = 0; v < A.vertices(); ++v) {
        for (size_t i = 0; i < obj.size(); ++i) {
            int rk_in = (i == 0) ? 0 : rank(A.F, map[i - 1].f[v]);
            int ker_out = (i == map.size())
                              ? obj[i].dim[v]
                              : obj[i].dim[v] - rank(A.F, map[i].f[v]);
            if (rk_in != ker_out) return false;
        }
    }
    return true;
}

NExactSeq n_cokernel(Registry& R, const Subcat& Mset, const ModuleMap& theta) {
    const Algebra& A = *R.A;
    if (!map_injective(A, theta)) throw std::runtime_error("n_cokernel: theta not monic");
    const int n = A.n;
    NExactSeq seq;
    seq.obj.push_back(theta.src);
    seq.obj.push_back(theta.tgt);
    seq.map.push_back(theta);
    CokernelData c = cokernel(A, theta);
    ModuleMap to_coker = c.proj; // m -> coker
    for (int step = 1; step <= n; ++step) {
        ModuleMap env = left_approx(R, Mset, c.coker, true);
        if (!map_injective(A, env))
            throw std::runtime_error("n_cokernel: left approximation not monic "
                                     "(Mset not cogenerating)");
        seq.map.push_back(compose(A, env, to_coker));
        seq.obj.push_back(env.tgt);
        c = cokernel(A, env);
        to_coker = c.proj;
    }
    if (c.coker.total_dim() != 0)
        throw std::runtime_error("n_cokernel: final cokernel nonzero "
                                 "(Mset not n-cluster tilting)");
    if (!is_exact_sequence(A, seq))
        throw std::runtime_error("n_cokernel: produced sequence not exact");
    return seq;
}

bool is_U_exact(Registry& R, const std::vector<Module>& tail,
                const std::vector<ModuleMap>& tail_maps, const Subcat& U) {
    const Algebra& A = *R.A;
    for (int u : U.idx) {
        const Module& Umod = R.ind[u];
        std::vector<std::vector<ModuleMap>> hb;
        hb.reserve(tail.size());
        for (const Module& t : tail) hb.push_back(hom_basis(A, Umod, t));
        std::vector<Mat> induced; // induced[i]: coords map hb[i] -> hb[i+1]
        for (size_t i = 0; i + 1 < tail.size(); ++i) {
            Mat M(static_cast<int>(hb[i + 1].size()), static_cast<int>(hb[i].size()));
            for (size_t j = 0; j < hb[i].size(); ++j) {
                ModuleMap cmp = compose(A, tail_maps[i], hb[i][j]);
                Mat coords = map_coords(A, hb[i + 1], cmp);
                for (int r = 0; r < M.rows; ++r) M.at(r, static_cast<int>(j)) = coords.at(r, 0);
            }
            induced.push_back(std::move(M));
        }
        for (size_t i = 0; i < tail.size(); ++i) {
            int dim_i = static_cast<int>(hb[i].size());
            int rk_in = (i == 0) ? 0 : rank(A.F, induced[i - 1]);
            int rk_out = (i + 1 == tail.size()) ? 0 : rank(A.F, induced[i]);
            int ker_out = (i + 1 == tail.size()) ? dim_i : dim_i - rk_out;
            if (ker_out != rk_in) return false;
        }
    }
    return true;
}

ClusterTiltingReport verify_n_cluster_tilting(Registry& R, const Subcat& Mset, int n) {
    const Algebra& A = *R.A;
    ClusterTiltingReport rep;
    if (Mset.empty()) {
        rep.certificate = "empty candidate set";
        return rep;
    }
    for (int a : Mset.idx)
        for (int b : Mset.idx)
            for (int i = 1; i <= n - 1; ++i)
                if (R.ext_dim(i, a, b) != 0) {
                    rep.certificate = "Ext^" + std::to_string(i) + "(" + R.labels[a] + ", " +
                                      R.labels[b] + ") != 0";
                    return rep;
                }
    for (int d = 0; d < R.size(); ++d) {
        bool left_vanish = true, right_vanish = true;
        for (int a : Mset.idx)
            for (int i = 1; i <= n - 1; ++i) {
                if (R.ext_dim(i, a, d) != 0) left_vanish = false;
                if (R.ext_dim(i, d, a) != 0) right_vanish = false;
            }
        if ((left_vanish || right_vanish) && !Mset.contains(d)) {
            rep.certificate = "module " + R.labels[d] +
                              " has vanishing Ext against the set but is missing";
            return rep;
        }
    }
    for (int v = 0; v < A.vertices(); ++v) {
        int ip = R.find(projective_module(A, v));
        int ii = R.find(injective_module(A, v));
        if (ip < 0 || ii < 0) {
            rep.certificate = "projective/injective not in registry";
            return rep;
        }
        if (!Mset.contains(ip)) {
            rep.certificate = "projective " + R.labels[ip] + " missing";
            return rep;
        }
        if (!Mset.contains(ii)) {
            rep.certificate = "injective " + R.labels[ii] + " missing";
            return rep;
        }
    }
    rep.ok = true;
    return rep;
}

std::string module_label(const Algebra& A, const Module& X) {
    if (X.total_dim() == 0) return "0";
    std::string out;
    Module cur = X;
    ModuleMap incl_chain = identity_map(A, cur);
    for (;;) {
        std::vector<Mat> rad = radical_spans(A, cur);
        // Layer = cur/rad dims.
        std::string layer;
        for (int v = 0; v < A.vertices(); ++v) {
            int t = cur.dim[v] - rad[v].cols;
            for (int k = 0; k < t; ++k) {
                if (!layer.empty()) layer += ",";
                layer += std::to_string(v + 1);
            }
        }
        if (!out.empty()) out += "/";
        out += layer;
        int raddim = 0;
        for (const Mat& m : rad) raddim += m.cols;
        if (raddim == 0) break;
        SubmoduleData sd = submodule_from_spans(A, cur, rad);
        cur = sd.sub;
    }
    return out;
}

namespace {

// Enumerate nonzero coefficient vectors over F_p up to scalar (first nonzero
// coordinate normalised to 1), calling fn on each.
template <typename Fn>
void for_each_projective_vector(uint32_t p, int d, Fn&& fn) {
    std::vector<uint32_t> cs(d, 0);
    for (int lead = 0; lead < d; ++lead) {
        std::fill(cs.begin(), cs.end(), 0);
        cs[lead] = 1;
        for (;;) {
            fn(cs);
            int k = lead + 1;
            while (k < d && cs[k] == p - 1) cs[k++] = 0;
            if (k >= d) break;
            ++cs[k];
        }
    }
}

} // namespace

std::optional<int> dynkin_root_count(const Algebra& A) {
    if (!A.pres.relations.empty()) return std::nullopt;
    int nv = A.vertices();
    std::vector<std::set<int>> adj(nv);
    int edges = 0;
    for (const Arrow& a : A.pres.arrows) {
        if (a.src == a.tgt) return std::nullopt; // loop
        if (adj[a.src].count(a.tgt)) return std::nullopt; // multiple edge
        adj[a.src].insert(a.tgt);
        adj[a.tgt].insert(a.src);
        ++edges;
    }
    // Components; each must be a tree of ADE shape.
    std::vector<int> comp(nv, -1);
    int ncomp = 0;
    for (int v = 0; v < nv; ++v) {
        if (comp[v] >= 0) continue;
        std::vector<int> stack{v};
        comp[v] = ncomp;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : adj[x])
                if (comp[y] < 0) {
                    comp[y] = ncomp;
                    stack.push_back(y);
                }
        }
        ++ncomp;
    }
    int total = 0;
    for (int c = 0; c < ncomp; ++c) {
        std::vector<int> verts;
        for (int v = 0; v < nv; ++v)
            if (comp[v] == c) verts.push_back(v);
        int m = static_cast<int>(verts.size());
        int ce = 0;
        for (int v : verts) ce += static_cast<int>(adj[v].size());
        ce /= 2;
        if (ce != m - 1) return std::nullopt; // cycle
        int deg3 = 0, center = -1;
        for (int v : verts) {
            if (adj[v].size() > 3) return std::nullopt;
            if (adj[v].size() == 3) {
                ++deg3;
                center = v;
            }
        }
        if (deg3 == 0) {
            total += m * (m + 1) / 2; // A_m
            continue;
        }
        if (deg3 > 1) return std::nullopt;
        // Arm lengths from the center.
        std::vector<int> arms;
        for (int s : adj[center]) {
            int len = 1, prev = center, cur = s;
            for (;;) {
                int next = -1;
                for (int y : adj[cur])
                    if (y != prev) next = y;
                if (next < 0) break;
                prev = cur;
                cur = next;
                ++len;
            }
            arms.push_back(len);
        }
        std::sort(arms.begin(), arms.end());
        if (arms[0] == 1 && arms[1] == 1) {
            total += m * (m - 1); // D_m
        } else if (arms[0] == 1 && arms[1] == 2 && arms[2] == 2 && m == 6) {
            total += 36;
        } else if (arms[0] == 1 && arms[1] == 2 && arms[2] == 3 && m == 7) {
            total += 63;
        } else if (arms[0] == 1 && arms[1] == 2 && arms[2] == 4 && m == 8) {
            total += 120;
        } else {
            return std::nullopt;
        }
    }
    return total;
}

std::unique_ptr<Registry> build_registry(const Algebra& A, const RegistryOptions& opt) {
    auto Rp = std::make_unique<Registry>();
    Registry& R = *Rp;
    R.A = &A;
    R.seed = opt.seed;
    auto add = [&](Module X) {
        if (X.total_dim() == 0 || X.total_dim() > opt.dim_cap) {
            if (X.total_dim() > opt.dim_cap) R.bounded_search = true;
            return;
        }
        for (Piece& p : fitting_pieces(A, X, opt.seed)) R.find_or_add(std::move(p.mod));
    };
    for (int v = 0; v < A.vertices(); ++v) {
        add(simple_module(A, v));
        add(projective_module(A, v));
        add(injective_module(A, v));
    }
    bool grew = true;
    int round = 0;
    while (grew) {
        if (round++ >= opt.closure_rounds)
            throw std::runtime_error("build_registry: still growing at the closure cap; "
                                     "representation-infinite suspicion");
        int before = R.size();
        int snapshot = R.size();
        // Extensions of pairs.
        for (int i = 0; i < snapshot; ++i) {
            Resolution res = min_resolution(A, R.ind[i]);
            for (int j = 0; j < snapshot; ++j) {
                if (R.ind[i].total_dim() + R.ind[j].total_dim() > opt.dim_cap) {
                    R.bounded_search = true;
                    continue;
                }
                ExtSpace E = ext_space(A, res, R.ind[j], 1);
                if (E.dim == 0) continue;
                for_each_projective_vector(A.F.p, E.dim, [&](const std::vector<uint32_t>& cs) {
                    ModuleMap cocycle = zero_map(A, res.P[1], R.ind[j]);
                    for (int k = 0; k < E.dim; ++k)
                        if (cs[k]) cocycle = map_add(A, cocycle, map_scale(A, cs[k], E.classes[k]));
                    Ext1Realization re = realize_ext1(A, res, R.ind[j], cocycle);
                    add(std::move(re.mid));
                });
            }
        }
        // Submodules and quotients.
        for (int i = 0; i < snapshot; ++i) {
            if (R.ind[i].total_dim() > opt.dim_cap) continue;
            try {
                for (const auto& spans : all_submodule_spans(A, R.ind[i], opt.dim_cap)) {
                    SubmoduleData sd = submodule_from_spans(A, R.ind[i], spans);
                    add(sd.sub);
                    add(quotient_by_spans(A, R.ind[i], spans).quot);
                }
            } catch (const cap_error&) {
                R.bounded_search = true;
            }
        }
        grew = R.size() != before;
    }
    // Labels, disambiguated where the radical-layer pattern repeats.
    std::vector<std::string> raw;
    for (const Module& X : R.ind) raw.push_back(module_label(A, X));
    for (int i = 0; i < R.size(); ++i) {
        int dup = 0;
        for (int j = 0; j < i; ++j)
            if (raw[j] == raw[i]) ++dup;
        R.labels[i] = dup ? raw[i] + "#" + std::to_string(dup + 1) : raw[i];
    }
    if (auto roots = dynkin_root_count(A)) {
        if (*roots != R.size())
            throw std::runtime_error("build_registry: Dynkin root count mismatch "
                                     "(search incomplete)");
        R.bounded_search = false;
    } else if (!R.bounded_search) {
        // Search closed under all generators without hitting a cap; keep the
        // flag off only for the Dynkin-certified case.
        R.bounded_search = true;
    }
    return Rp;
}

Subcat find_cluster_tilting(Registry& R, int n) {
    if (R.size() > 20) throw std::runtime_error("find_cluster_tilting: registry too large");
    std::vector<Subcat> found;
    for (uint32_t mask = 0; mask < (1u << R.size()); ++mask) {
        Subcat S = Subcat::from_mask(mask, R.size());
        if (verify_n_cluster_tilting(R, S, n).ok) found.push_back(S);
    }
    if (found.size() != 1)
        throw std::runtime_error("find_cluster_tilting: expected exactly one subcategory, found " +
                                 std::to_string(found.size()));
    return found[0];
}

} // namespace ntors
