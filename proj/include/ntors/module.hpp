#pragma once

// Modules over a bound quiver algebra as representations: one vector space per
// vertex, one matrix per arrow (target-dim x source-dim, arrows acting
// source -> target). Module maps are vertex-indexed matrices commuting with
// every arrow.

#include <string>
#include <vector>

#include "ntors/quiver.hpp"

namespace ntors {

struct Module {
    std::vector<int> dim;  // per vertex
    std::vector<Mat> arr;  // per arrow

    int total_dim() const {
        int t = 0;
        for (int d : dim) t += d;
        return t;
    }
    bool is_zero() const { return total_dim() == 0; }
    bool operator==(const Module& o) const { return dim == o.dim && arr == o.arr; }
};

struct ModuleMap {
    Module src;
    Module tgt;
    std::vector<Mat> f; // per vertex

    bool is_zero() const {
        for (const Mat& m : f)
            if (!m.is_zero()) return false;
        return true;
    }
};

Module zero_module(const Algebra& A);
Module simple_module(const Algebra& A, int v);
Module projective_module(const Algebra& A, int v);
Module injective_module(const Algebra& A, int v);
Module regular_module(const Algebra& A); // Lambda as a left module

// Throws unless every relation vanishes on X and matrix shapes line up.
void check_module(const Algebra& A, const Module& X);
bool is_module_map(const Algebra& A, const ModuleMap& m);

ModuleMap zero_map(const Algebra& A, const Module& X, const Module& Y);
ModuleMap identity_map(const Algebra& A, const Module& X);
ModuleMap compose(const Algebra& A, const ModuleMap& g, const ModuleMap& f); // g o f
ModuleMap map_add(const Algebra& A, const ModuleMap& a, const ModuleMap& b);
ModuleMap map_scale(const Algebra& A, uint32_t c, const ModuleMap& m);

struct SumDecomp {
    Module sum;
    std::vector<ModuleMap> incl;
    std::vector<ModuleMap> proj;
};
SumDecomp direct_sum(const Algebra& A, const std::vector<Module>& parts);

// Matrix of the action of a path (application order) from vertex-u space to
// vertex-w space; identity for the empty path.
Mat path_action(const Algebra& A, const Module& X, int src, const std::vector<int>& word);

bool map_injective(const Algebra& A, const ModuleMap& m);
bool map_surjective(const Algebra& A, const ModuleMap& m);
bool map_invertible(const Algebra& A, const ModuleMap& m);
ModuleMap map_inverse(const Algebra& A, const ModuleMap& m);

// Submodule given by per-vertex column spans (must be arrow stable; checked).
struct SubmoduleData {
    Module sub;
    ModuleMap incl;
};
SubmoduleData submodule_from_spans(const Algebra& A, const Module& X, std::vector<Mat> spans);

// Smallest submodule containing the given per-vertex spans.
std::vector<Mat> arrow_closure(const Algebra& A, const Module& X, std::vector<Mat> spans);

struct QuotientData {
    Module quot;
    ModuleMap proj;
};
QuotientData quotient_by_spans(const Algebra& A, const Module& X, const std::vector<Mat>& spans);

struct KernelData {
    Module ker;
    ModuleMap incl;
};
KernelData kernel(const Algebra& A, const ModuleMap& m);

std::vector<Mat> image_spans(const Algebra& A, const ModuleMap& m);

struct CokernelData {
    Module coker;
    ModuleMap proj;
};
CokernelData cokernel(const Algebra& A, const ModuleMap& m);

// Radical subspaces (arrow ideal acting on X) and socle subspaces.
std::vector<Mat> radical_spans(const Algebra& A, const Module& X);
std::vector<Mat> socle_spans(const Algebra& A, const Module& X);

// k-linear dual as a module over the opposite algebra (arrow matrices
// transposed). `Aop` must be opposite_algebra(A).
Module dual_module(const Algebra& A, const Algebra& Aop, const Module& X);
ModuleMap dual_map(const Algebra& A, const Algebra& Aop, const ModuleMap& m);

} // namespace ntors
