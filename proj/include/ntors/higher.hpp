#pragma once

// n-cluster-tilting verification and the n-abelian calculus: registry
// construction, n-cokernels via iterated minimal left approximations, and the
// U-exactness test on Hom complexes.

#include <memory>

#include "ntors/approx.hpp"

namespace ntors {

// 0 -> u -> m -> v^1 -> ... -> v^n -> 0, exact in mod(Lambda).
struct NExactSeq {
    std::vector<Module> obj;    // u, m, v^1..v^n
    std::vector<ModuleMap> map; // theta, mu, psi^1..psi^{n-1}; map[k]: obj[k] -> obj[k+1]
};

// Exactness of the underlying sequence in mod(Lambda), 0-padded at both ends.
bool is_exact_sequence(const Algebra& A, const NExactSeq& seq);

// Builds the canonical n-cokernel of a monomorphism theta: u -> m using
// minimal left Mset-approximations at every step; throws when theta is not
// monic or the final cokernel fails to vanish.
NExactSeq n_cokernel(Registry& R, const Subcat& Mset, const ModuleMap& theta);

// The tail v^1 -> ... -> v^n is U-exact: 0 -> Hom(u,v^1) -> ... -> Hom(u,v^n) -> 0
// is exact for every u in ind(U).
bool is_U_exact(Registry& R, const std::vector<Module>& tail,
                const std::vector<ModuleMap>& tail_maps, const Subcat& U);

struct ClusterTiltingReport {
    bool ok{false};
    std::string certificate; // names the violated Ext or missing module
};
ClusterTiltingReport verify_n_cluster_tilting(Registry& R, const Subcat& Mset, int n);

struct RegistryOptions {
    int dim_cap{12};
    int closure_rounds{6};
    uint64_t seed{0};
};
// Exhaustive indecomposable search: simples, projectives and injectives closed
// under extensions, submodules and quotients up to the caps. Throws when the
// search is still growing at the cap (representation-infinite suspicion).
std::unique_ptr<Registry> build_registry(const Algebra& A, const RegistryOptions& opt = {});

// Heuristic completeness certificate: hereditary algebra on a simply laced
// Dynkin graph has #indecomposables = #positive roots.
std::optional<int> dynkin_root_count(const Algebra& A);

// Canonical text label for a registry module: radical filtration layers
// top-to-bottom, vertices 1-based, layers joined by '/'.
std::string module_label(const Algebra& A, const Module& X);

// Finds the unique n-cluster tilting subcategory by exhaustive subset search;
// throws if none or several pass verification.
Subcat find_cluster_tilting(Registry& R, int n);

} // namespace ntors
