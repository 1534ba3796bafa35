#pragma once

// Quiver presentations kQ/I and an explicit path basis of the quotient,
// computed by a fixed-direction rewriting system (longest path leading term,
// degree-lex tie break on arrow order). Paths store arrow indices in
// application order: {a, b} is "a then b", written b.a in the input syntax.

#include <map>
#include <string>
#include <vector>

#include "ntors/fp.hpp"
#include "ntors/matrix.hpp"

namespace ntors {

struct Arrow {
    int src{0};
    int tgt{0};
    std::string name;
};

struct RelTerm {
    uint32_t coeff{1};
    std::vector<int> arrows; // application order, length >= 2
};

struct QuiverPresentation {
    int num_vertices{0};
    uint32_t p{5};
    int n{1}; // the fixed integer of the theory, n >= 1
    std::vector<Arrow> arrows;
    std::vector<std::vector<RelTerm>> relations; // each: parallel terms
};

// A path in the quotient basis; empty `arrows` is the idempotent e_{src}.
struct BasisPath {
    int src{0};
    int tgt{0};
    std::vector<int> arrows;
};

// Sparse linear combination of basis elements.
using Combo = std::vector<std::pair<int, uint32_t>>;

struct PathBasis {
    std::vector<BasisPath> paths; // e_v first, then by length / lex
    std::map<std::pair<int, std::vector<int>>, int> index;

    struct Rule {
        std::vector<int> lead; // arrow word being rewritten
        std::vector<std::pair<uint32_t, std::vector<int>>> rhs;
    };
    std::vector<Rule> rules;

    // mult[i][j]: normal form of path_i o path_j (j applied first); empty when
    // not composable or zero.
    std::vector<std::vector<Combo>> mult;

    int dim() const { return static_cast<int>(paths.size()); }
    int idempotent(int v) const; // index of e_v
};

struct Algebra {
    QuiverPresentation pres;
    PathBasis basis;
    Fp F;
    int n{1};

    int vertices() const { return pres.num_vertices; }
    int num_arrows() const { return static_cast<int>(pres.arrows.size()); }
};

// Builds the path basis; throws std::runtime_error with a descriptive message
// when the ideal fails admissibility within the length cap or the resulting
// multiplication table is inconsistent.
Algebra make_algebra(QuiverPresentation pres, int length_cap = 12);

// Reverses arrows and relations. Involutive on the presentation data, so the
// double opposite is bit-identical to the original.
QuiverPresentation opposite_presentation(const QuiverPresentation& pres);
Algebra opposite_algebra(const Algebra& A, int length_cap = 12);

// Normal form of an arbitrary arrow word (application order) as a combination
// of basis paths. Empty combo means the word is zero in the quotient.
Combo normal_form(const Algebra& A, int src, const std::vector<int>& word);

} // namespace ntors
