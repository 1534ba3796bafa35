#pragma once

// Minimal right/left approximations relative to add of a finite set of
// registry indecomposables. Pre-approximations are universal maps assembled
// from Hom bases; minimisation strips summands by Fitting reduction and is
// certified by the radical test (all g with theta g = theta invertible).

#include "ntors/modcat.hpp"

namespace ntors {

struct Subcat {
    std::vector<int> idx; // sorted, unique registry indices

    bool contains(int i) const {
        return std::find(idx.begin(), idx.end(), i) != idx.end();
    }
    bool empty() const { return idx.empty(); }
    static Subcat from_mask(uint32_t mask, int n);
    uint32_t mask() const;
};

// theta: s -> X with s in add(S); s = 0 when Hom(S, X) = 0.
ModuleMap right_approx(Registry& R, const Subcat& S, const Module& X, bool minimal = true);
// phi: X -> s.
ModuleMap left_approx(Registry& R, const Subcat& S, const Module& X, bool minimal = true);

ModuleMap minimize_right(const Algebra& A, ModuleMap theta, uint64_t seed);
ModuleMap minimize_left(const Algebra& A, ModuleMap phi, uint64_t seed);

// Certificates: the relevant ideal of End lies inside the radical.
bool is_right_minimal(const Algebra& A, const ModuleMap& theta);
bool is_left_minimal(const Algebra& A, const ModuleMap& phi);

// Every map s' -> X with s' in add(S) factors through theta.
bool is_right_approximation(Registry& R, const Subcat& S, const ModuleMap& theta);
bool is_left_approximation(Registry& R, const Subcat& S, const ModuleMap& phi);

} // namespace ntors
