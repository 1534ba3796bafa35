#pragma once

// The mod(Lambda) workhorse: Hom spaces, Krull-Schmidt decomposition against a
// registry of indecomposables, minimal projective resolutions, Ext with Yoneda
// composition, submodule lattices, trace/Fac, transpose and tau_n^-.

#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "ntors/module.hpp"

namespace ntors {

// Raised when an enumeration hits a configured cap.
struct cap_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Raised when the field is too small for a radical/Schur computation or an
// endomorphism quotient is not one-dimensional.
struct schur_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

uint64_t content_hash(const Module& X, uint64_t salt);

std::vector<ModuleMap> hom_basis(const Algebra& A, const Module& X, const Module& Y);
int hom_dim(const Algebra& A, const Module& X, const Module& Y);

// Flattened coordinates of a map in a given independent family; throws when
// the map lies outside the span.
Mat map_coords(const Algebra& A, const std::vector<ModuleMap>& basis, const ModuleMap& m);
ModuleMap map_from_coords(const Algebra& A, const std::vector<ModuleMap>& basis, const Mat& coords);

// Endomorphism algebra data: structure constants and radical (trace form;
// requires p > dim End, else schur_error).
struct EndAlgebra {
    std::vector<ModuleMap> basis;
    std::vector<Mat> left_mult; // left regular representation
    Mat radical_coords;         // columns: coordinates of a radical basis
};
EndAlgebra end_algebra(const Algebra& A, const Module& X);

std::optional<ModuleMap> find_iso(const Algebra& A, const Module& X, const Module& Y,
                                  uint64_t seed);

struct Piece {
    Module mod;
    ModuleMap incl; // piece -> X
    ModuleMap proj; // X -> piece
};
// Fitting splitting into indecomposable pieces; schur_error when a piece has
// End/rad of dimension > 1.
std::vector<Piece> fitting_pieces(const Algebra& A, const Module& X, uint64_t seed);

struct Registry {
    const Algebra* A{nullptr};
    std::vector<Module> ind;
    std::vector<std::string> labels;
    bool bounded_search{false};
    uint64_t seed{0};

    mutable std::mutex mu;
    mutable std::map<std::pair<int, int>, std::vector<ModuleMap>> hom_cache;
    mutable std::map<std::tuple<int, int, int>, int> ext_cache;

    int size() const { return static_cast<int>(ind.size()); }
    int find(const Module& X) const; // -1 when no isomorphic entry
    int find_or_add(Module X, std::string label = "");
    const std::vector<ModuleMap>& hom(int i, int j) const;
    int ext_dim(int deg, int i, int j) const;
    int label_index(const std::string& label) const;
};

struct Decomposition {
    std::vector<int> parts; // registry indices, with multiplicity, sorted
    std::vector<Piece> pieces;
    ModuleMap iso; // X -> direct sum of canonical registry modules
};
Decomposition decompose(Registry& R, const Module& X);
bool decomposes_into(Registry& R, const Module& X, const std::vector<int>& allowed);

struct Cover {
    ModuleMap map;          // P -> X, P = sum of indecomposable projectives
    std::vector<int> verts; // vertex of each projective summand
};
Cover projective_cover(const Algebra& A, const Module& X);

struct Resolution {
    Module X;
    std::vector<Module> P;
    std::vector<std::vector<int>> verts; // projective summand vertices per term
    std::vector<ModuleMap> d; // d[k]: P[k+1] -> P[k]
    ModuleMap aug;            // P[0] -> X
    int length() const { return static_cast<int>(P.size()) - 1; }
};
Resolution min_resolution(const Algebra& A, const Module& X, int max_len = 32);
Module syzygy(const Algebra& A, const Module& X, int k);
int global_dimension(const Algebra& A);

struct ExtSpace {
    int deg{0};
    int dim{0};
    std::vector<ModuleMap> hom_i;   // basis of Hom(P_deg, Y)
    Mat boundaries;                 // coords of coboundaries in hom_i
    Mat cocycles;                   // coords of cocycles in hom_i
    std::vector<ModuleMap> classes; // chosen representatives
    Mat class_coords;               // their coordinates in hom_i
};
ExtSpace ext_space(const Algebra& A, const Resolution& RX, const Module& Y, int deg);
int ext_dim(const Algebra& A, const Module& X, const Module& Y, int deg);
// Coordinates of a cocycle's class in the chosen class basis.
Mat ext_class_coords(const Algebra& A, const ExtSpace& E, const ModuleMap& cocycle);

// Yoneda push: post-compose a degree-i cocycle P_i -> Y with f: Y -> Y'.
ModuleMap yoneda_push(const Algebra& A, const ModuleMap& f, const ModuleMap& cocycle);
// Yoneda pull: pre-compose with the comparison lift of g: X' -> X.
ModuleMap yoneda_pull(const Algebra& A, const Resolution& RXp, const Resolution& RX,
                      const ModuleMap& g, const ModuleMap& cocycle, int deg);

std::vector<std::vector<Mat>> all_submodule_spans(const Algebra& A, const Module& X, int dim_cap);
struct QuotientEntry {
    Module quot;
    ModuleMap proj;
};
std::vector<QuotientEntry> all_quotients(const Algebra& A, const Module& X, int dim_cap);

std::vector<Mat> trace_spans(const Algebra& A, const Module& T, const Module& X);
bool fac_membership(const Algebra& A, const Module& T, const Module& X);

// Transpose over the opposite algebra; Aop must be opposite_algebra(A).
Module transpose_module(const Algebra& A, const Algebra& Aop, const Module& X);
Module tau_n_minus(const Algebra& A, const Algebra& Aop, const Module& X, int n);

ModuleMap injective_envelope(const Algebra& A, const Module& X);

struct Ext1Realization {
    Module mid;
    ModuleMap incl; // Y -> mid
    ModuleMap proj; // mid -> X
};
Ext1Realization realize_ext1(const Algebra& A, const Resolution& RX, const Module& Y,
                             const ModuleMap& cocycle);

// Solve h with c o h = w (c: V -> W onto the relevant part, w: U -> W);
// empty when no module map solution exists.
std::optional<ModuleMap> factor_through(const Algebra& A, const ModuleMap& c, const ModuleMap& w);
// Solve h with h o c = w (c: U -> V, w: U -> W).
std::optional<ModuleMap> factor_over(const Algebra& A, const ModuleMap& c, const ModuleMap& w);

} // namespace ntors
