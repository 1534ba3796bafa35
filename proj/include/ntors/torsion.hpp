#pragma once

// Torsion classes in the n-cluster tilting subcategory M(Lambda): the direct
// definitional test over covers and n-cokernels, splitting detection, Property
// (F), the classic n = 1 oracle, enumeration, and the n-APR / Fac examples.

#include "ntors/higher.hpp"

namespace ntors {

struct TorsionItem {
    int m{-1};       // registry index of the tested object of ind(M)
    bool monic{true};
    bool u_exact{true};
    NExactSeq seq;   // valid when monic
};

struct TorsionWitness {
    bool verdict{false};
    std::vector<TorsionItem> items;
    int failing{-1}; // registry index of the first failing object
};

// U and Mset are subsets of registry indices; U must be contained in Mset.
TorsionWitness torsion_test_abelian(Registry& R, const Subcat& Mset, const Subcat& U);

// Precondition: U is a torsion class (throws otherwise).
bool is_splitting(Registry& R, const Subcat& Mset, const Subcat& U);

struct TorsionCaps {
    int mult_cap{2};
    int quot_dim_cap{8};
};

struct PropertyFWitness {
    std::vector<int> u_prime;  // multiset of registry indices
    std::string b_prime;       // label of the failing quotient (dim vector text)
    std::vector<int> u_second; // multiset of registry indices
    int failing_m{-1};         // object of ind(M) where generation fails
};

struct PropertyFResult {
    bool verdict{false};
    bool bounded_scope{false};
    std::optional<PropertyFWitness> witness;
};
PropertyFResult property_F_test(Registry& R, const Subcat& Mset, const Subcat& U,
                                const TorsionCaps& caps = {});

// n = 1 only: closure under quotients and extensions.
bool classic_torsion_test(Registry& R, const Subcat& U, const TorsionCaps& caps = {});

struct TorsionClassEntry {
    Subcat U;
    bool splitting{false};
};
// All subsets of Mset filtered by torsion_test_abelian, in lexicographic
// subset order; per-subset work runs on a small worker pool.
std::vector<TorsionClassEntry> enumerate_torsion_classes(Registry& R, const Subcat& Mset,
                                                         int threads = 0);

struct AprTilt {
    Module t;
    int p_index{-1};      // registry index of the simple projective p
    std::vector<int> t_parts; // registry indices of the summands of t
    Subcat fac;           // { x in ind(M) : x in Fac(t) }
};
// Requires a simple projective non-injective at p_vertex; checks that the Fac
// torsion class equals ind(M) minus p.
AprTilt n_apr_tilt(Registry& R, const Algebra& Aop, const Subcat& Mset, int p_vertex);

} // namespace ntors
