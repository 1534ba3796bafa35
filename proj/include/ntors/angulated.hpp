#pragma once

// The (n+2)-angulated category C(Lambda) = add{ Sigma^{in} M | i in Z } inside
// the bounded derived category. Objects are multisets of (indecomposable,
// shift) pairs; Sigma^n acts by shift i -> i+1. Angles are completed from a
// connecting morphism by the cone-then-envelope tower, with minimal envelopes
// throughout.

#include "ntors/derived.hpp"
#include "ntors/torsion.hpp"

namespace ntors {

struct CPart {
    int idx{0};   // registry index into ind(M)
    int shift{0}; // object is Sigma^{shift * n} ind[idx]

    bool operator<(const CPart& o) const {
        return shift != o.shift ? shift < o.shift : idx < o.idx;
    }
    bool operator==(const CPart& o) const { return idx == o.idx && shift == o.shift; }
};

struct CObject {
    std::vector<CPart> parts; // sorted multiset

    bool is_zero() const { return parts.empty(); }
    void normalize() { std::sort(parts.begin(), parts.end()); }
    std::string text(const Registry& R) const;
};

struct CSubcat {
    std::vector<CPart> finite;    // sorted unique
    std::optional<int> tail_from; // contains every (idx, s) with s >= tail_from

    bool contains(const CPart& p) const {
        if (tail_from && p.shift >= *tail_from) return true;
        return std::find(finite.begin(), finite.end(), p) != finite.end();
    }
    bool contains_object(const CObject& o) const {
        for (const CPart& p : o.parts)
            if (!contains(p)) return false;
        return true;
    }
};

struct AngleCaps {
    int mult_cap{2};
    int window_lo{-2};
    int window_hi{2};
    bool scalar_reduction{true};
    int delta_dim_cap{8};
};

// Hom dimension in C: Hom(a,b) at equal shifts, Ext^n at shift difference one,
// zero otherwise.
int hom_C_dim(Registry& R, const CPart& a, const CPart& b);
int hom_C_dim(Registry& R, const CObject& a, const CObject& b);

Cx realize(Registry& R, const CObject& o);

// Minimal left C-approximation of a perfect complex, assembled per shift from
// homotopy-class bases and minimised by copy stripping.
struct CEnvelope {
    CObject obj;
    ChainMap map; // d -> realize(obj)
};
CEnvelope minimal_c_envelope(Registry& R, const Subcat& Mset, const Cx& d);

// Minimal right X-approximation of realize(c) assembled from the generators
// of a CSubcat inside the window.
struct CCover {
    CObject obj;
    ChainMap map; // realize(obj) -> realize(c)
};
CCover minimal_right_approx_C(Registry& R, const Subcat& Mset, const CSubcat& X,
                              const CPart& c, const AngleCaps& caps);

struct NAngle {
    CObject x_prime, x_second;
    std::vector<CObject> inner; // c^1..c^n
    Cx r_xp, r_xs;
    std::vector<Cx> r_inner;
    std::vector<ChainMap> maps; // x'->c^1, c^i->c^{i+1}, c^n->x''
    ChainMap delta;             // realize(x'') -> shift(realize(x'), n)
};
// GKO completion of delta: x'' -> Sigma^n x'. Throws when the final
// comparison is not an isomorphism in the homotopy category.
NAngle complete_angle(Registry& R, const Subcat& Mset, const CObject& xp, const CObject& xs,
                      const ChainMap& delta);

// Exactness of the induced Hom sequences against the given test objects.
bool verify_angle(Registry& R, const NAngle& angle, const std::vector<CPart>& tests);

struct LeftClosedResult {
    bool verdict{true};
    bool bounded_scope{false};
    std::optional<NAngle> witness; // failing angle
};
LeftClosedResult left_closed_test(Registry& R, const Subcat& Mset, const CSubcat& X,
                                  const AngleCaps& caps = {});
LeftClosedResult closed_under_n_extensions_test(Registry& R, const Subcat& Mset, const CSubcat& X,
                                                const AngleCaps& caps = {});

struct AngulatedTorsionResult {
    bool verdict{true};
    std::optional<CPart> failing;
    bool window_scope{false}; // true unless X is intermediate
};
AngulatedTorsionResult torsion_test_angulated(Registry& R, const Subcat& Mset, const CSubcat& X,
                                              const AngleCaps& caps = {});

bool is_sigma_stable(const CSubcat& X);
bool is_aisle(Registry& R, const Subcat& Mset, const CSubcat& X, const AngleCaps& caps = {});

CSubcat make_XU(const Subcat& U);
// Requires an intermediate aisle-shaped subcategory (finite part at shift 0,
// tail from 1); throws otherwise.
Subcat torsion_from_aisle(const CSubcat& X);

// Wakamatsu check at a single object: completes the minimal right
// X-approximation of c to an angle and verifies the tail is X-exact. Requires
// left_closed_test(X) within caps (throws otherwise when check_precondition).
bool wakamatsu_check(Registry& R, const Subcat& Mset, const CSubcat& X, const CPart& c,
                     const AngleCaps& caps = {}, bool check_precondition = true);

} // namespace ntors
