#pragma once

// Perfect-complex engine for the bounded derived category: complexes of
// projectives, chain maps modulo homotopy, cones, shifts, truncations and
// cohomology. Cohomological indexing, differentials raise degree.

#include "ntors/modcat.hpp"

namespace ntors {

struct Cx {
    int lo{0};
    std::vector<Module> term; // degree lo + k
    std::vector<ModuleMap> d; // d[k]: term[k] -> term[k+1]

    bool empty() const { return term.empty(); }
    int hi() const { return lo + static_cast<int>(term.size()) - 1; }
    bool in_range(int i) const { return !empty() && i >= lo && i <= hi(); }
    int total_dim() const {
        int t = 0;
        for (const Module& m : term) t += m.total_dim();
        return t;
    }
};

Module cx_term(const Algebra& A, const Cx& C, int i);
ModuleMap cx_diff(const Algebra& A, const Cx& C, int i); // term(i) -> term(i+1)
void cx_check(const Algebra& A, const Cx& C);             // shapes and d*d = 0
Cx cx_trim(const Algebra& A, Cx C);                       // drop zero boundary terms

Cx cx_of_module(const Algebra& A, const Module& X, int degree);
Cx resolve(const Algebra& A, const Module& X); // minimal resolution, degrees [-len, 0]
Cx shift_cx(const Algebra& A, const Cx& C, int k); // C[k]^i = C^{i+k}, d scaled by (-1)^k

struct ChainMap {
    Cx src;
    Cx tgt;
    std::vector<ModuleMap> f; // component per degree of src support
};
ModuleMap cm_component(const Algebra& A, const ChainMap& m, int i);
bool cm_check(const Algebra& A, const ChainMap& m);
ChainMap cm_zero(const Algebra& A, const Cx& C, const Cx& D);
ChainMap cm_identity(const Algebra& A, const Cx& C);
ChainMap cm_compose(const Algebra& A, const ChainMap& g, const ChainMap& f);
ChainMap cm_add(const Algebra& A, const ChainMap& a, const ChainMap& b);
ChainMap cm_scale(const Algebra& A, uint32_t c, const ChainMap& m);
ChainMap cm_shift(const Algebra& A, const ChainMap& m, int k);

struct CxSum {
    Cx sum;
    std::vector<ChainMap> incl;
    std::vector<ChainMap> proj;
};
CxSum cx_direct_sum(const Algebra& A, const std::vector<Cx>& parts);

struct ConeData {
    Cx cone;
    ChainMap incl; // D -> cone
    ChainMap proj; // cone -> C[1]
};
ConeData cone(const Algebra& A, const ChainMap& f);

Module cohomology(const Algebra& A, const Cx& C, int i);

// Chain maps modulo homotopy: a solved presentation of Hom_{K^b}(C, D).
struct HomCx {
    Cx src, tgt;
    std::vector<int> var_degrees;            // degrees carrying components
    std::vector<std::vector<ModuleMap>> hb;  // hom basis per var degree
    Mat cycles;      // columns: chain maps in stacked hom coordinates
    Mat boundaries;  // columns: null-homotopic chain maps (canonical basis)
    Mat class_reps;  // columns: chosen representatives extending boundaries
    int dim() const { return class_reps.cols; }
};
HomCx hom_cx(const Algebra& A, const Cx& C, const Cx& D);
ChainMap hom_cx_map(const Algebra& A, const HomCx& H, const Mat& coords); // from stacked coords
ChainMap hom_cx_class(const Algebra& A, const HomCx& H, int k);
// Class coordinates of an arbitrary chain map (throws if not a chain map
// between the same complexes).
Mat hom_cx_class_coords(const Algebra& A, const HomCx& H, const ChainMap& m);

bool is_null_homotopic(const Algebra& A, const ChainMap& m);
bool cm_homotopic(const Algebra& A, const ChainMap& a, const ChainMap& b);

// Homotopy inverse when f is a homotopy equivalence.
std::optional<ChainMap> homotopy_inverse(const Algebra& A, const ChainMap& f);

struct ModComplex {
    int lo{0};
    std::vector<Module> term;
    std::vector<ModuleMap> d;
};
// Degreewise-epi quasi-isomorphism from a complex of projectives, built by
// descending pullback covers; terminates since gldim is finite.
struct ResolvedComplex {
    Cx P;
    // eps components per degree of P support, mapping into the input complex.
    std::vector<ModuleMap> eps;
    ModComplex X;
};
ResolvedComplex resolve_complex(const Algebra& A, const ModComplex& X);

// tau^{<= s}: perfect model plus the comparison map into C.
struct Truncation {
    Cx part;
    ChainMap map; // part -> C  (for leq)  /  C -> part (for geq)
};
Truncation truncate_leq(const Algebra& A, const Cx& C, int s);
Truncation truncate_geq(const Algebra& A, const Cx& C, int s);

} // namespace ntors
