#pragma once

// A session bundles the algebra, its opposite, the indecomposable registry and
// the verified n-cluster tilting subcategory for one input description.

#include <memory>

#include "ntors/angulated.hpp"
#include "ntors/specfile.hpp"

namespace ntors {

struct SessionOptions {
    uint64_t seed{0};
    std::optional<uint32_t> char_override;
    TorsionCaps tcaps{};
    AngleCaps acaps{};
    int registry_dim_cap{12};
    int closure_rounds{6};
};

struct Session {
    AlgebraSpecFile spec;
    SessionOptions opt;
    Algebra A;
    Algebra Aop;
    std::unique_ptr<Registry> R;
    Subcat M;
    int gldim{0};
};

// Builds the algebra, the registry (with the Schur guard over every
// indecomposable) and locates M, either from the declared list or by
// exhaustive search.
std::unique_ptr<Session> make_session(AlgebraSpecFile spec, const SessionOptions& opt = {});

// Comma-separated registry labels -> subset of ind(M); throws parse_error on
// unknown labels or labels outside M.
Subcat subset_from_labels(const Session& S, const std::string& csv);
std::string subset_text(const Session& S, const Subcat& U);

} // namespace ntors
