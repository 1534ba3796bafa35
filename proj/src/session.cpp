#include "ntors/session.hpp"

#include <algorithm>
#include <sstream>

namespace ntors {

std::unique_ptr<Session> make_session(AlgebraSpecFile spec, const SessionOptions& opt) {
    auto S = std::make_unique<Session>();
    S->opt = opt;
    if (opt.char_override) spec.pres.p = *opt.char_override;
    S->spec = spec;
    S->A = make_algebra(spec.pres);
    S->Aop = opposite_algebra(S->A);
    RegistryOptions ropt;
    ropt.dim_cap = opt.registry_dim_cap;
    ropt.closure_rounds = opt.closure_rounds;
    ropt.seed = opt.seed;
    S->R = build_registry(S->A, ropt);
    // Schur guard: every indecomposable has one-dimensional End modulo radical.
    for (int i = 0; i < S->R->size(); ++i) {
        const Module& X = S->R->ind[i];
        int e = hom_dim(S->A, X, X);
        if (e == 1) continue;
        EndAlgebra EA = end_algebra(S->A, X);
        if (e - EA.radical_coords.cols != 1)
            throw schur_error("session: indecomposable " + S->R->labels[i] +
                              " fails the Schur check over this field");
    }
    S->gldim = global_dimension(S->A);
    if (S->gldim > S->A.n)
        throw std::runtime_error("session: gldim = " + std::to_string(S->gldim) +
                                 " exceeds n = " + std::to_string(S->A.n));
    if (!spec.declared_M.empty()) {
        Subcat M;
        for (const auto& [label, dims] : spec.declared_M) {
            int found = -1;
            for (int i = 0; i < S->R->size(); ++i)
                if (S->R->ind[i].dim == dims) {
                    if (found >= 0)
                        throw std::runtime_error("session: ambiguous declared module " + label);
                    found = i;
                }
            if (found < 0)
                throw std::runtime_error("session: declared module " + label + " not found");
            S->R->labels[found] = label;
            M.idx.push_back(found);
        }
        std::sort(M.idx.begin(), M.idx.end());
        M.idx.erase(std::unique(M.idx.begin(), M.idx.end()), M.idx.end());
        ClusterTiltingReport rep = verify_n_cluster_tilting(*S->R, M, S->A.n);
        if (!rep.ok)
            throw std::runtime_error("session: declared M is not " + std::to_string(S->A.n) +
                                     "-cluster tilting: " + rep.certificate);
        S->M = M;
    } else {
        S->M = find_cluster_tilting(*S->R, S->A.n);
    }
    return S;
}

Subcat subset_from_labels(const Session& S, const std::string& csv) {
    Subcat U;
    if (csv.empty()) return U;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        int idx = S.R->label_index(item);
        if (idx < 0) throw parse_error("unknown module label '" + item + "'");
        if (!S.M.contains(idx))
            throw parse_error("module '" + item + "' is not in ind(M)");
        U.idx.push_back(idx);
    }
    std::sort(U.idx.begin(), U.idx.end());
    U.idx.erase(std::unique(U.idx.begin(), U.idx.end()), U.idx.end());
    return U;
}

std::string subset_text(const Session& S, const Subcat& U) {
    if (U.idx.empty()) return "{}";
    std::string out = "{";
    for (size_t k = 0; k < U.idx.size(); ++k) {
        if (k) out += ", ";
        out += S.R->labels[U.idx[k]];
    }
    return out + "}";
}

} // namespace ntors
