#include <doctest.h>

#include "ntors/higher.hpp"
#include "ntors/specfile.hpp"

using namespace ntors;

namespace {

Algebra gamma_algebra() {
    return make_algebra(parse_spec(corpus_entry("gamma").text, "gamma").pres);
}

Algebra a2_algebra() {
    return make_algebra(parse_spec(corpus_entry("a2").text, "a2").pres);
}

} // namespace

TEST_CASE("path basis of A_2") {
    Algebra A = a2_algebra();
    CHECK(A.basis.dim() == 3); // e1, e2, a
}

TEST_CASE("path basis of Gamma = kQ/(ba)") {
    Algebra A = gamma_algebra();
    CHECK(A.basis.dim() == 5); // e1, e2, e3, a, b
}

TEST_CASE("single vertex algebra") {
    QuiverPresentation q;
    q.num_vertices = 1;
    q.p = 5;
    q.n = 1;
    Algebra A = make_algebra(q);
    CHECK(A.basis.dim() == 1);
}

TEST_CASE("non-admissible ideal is rejected") {
    QuiverPresentation q;
    q.num_vertices = 1;
    q.p = 5;
    q.n = 1;
    q.arrows.push_back({0, 0, "x"});
    CHECK_THROWS(make_algebra(q)); // loop generates infinitely many paths
}

TEST_CASE("projective, injective and simple modules over Gamma") {
    Algebra A = gamma_algebra();
    CHECK(projective_module(A, 0).dim == std::vector<int>{1, 1, 0}); // P_1 = 1/2
    CHECK(projective_module(A, 1).dim == std::vector<int>{0, 1, 1}); // P_2 = 2/3
    CHECK(projective_module(A, 2).dim == std::vector<int>{0, 0, 1}); // P_3 = S_3
    CHECK(injective_module(A, 0).dim == std::vector<int>{1, 0, 0});  // I_1 = S_1
    CHECK(injective_module(A, 2).dim == std::vector<int>{0, 1, 1});  // I_3 = P_2
    CHECK(simple_module(A, 1).dim == std::vector<int>{0, 1, 0});
}

TEST_CASE("regular module decomposes as sum of projectives") {
    Algebra A = gamma_algebra();
    Module L = regular_module(A);
    int total = 0;
    for (int v = 0; v < A.vertices(); ++v) total += projective_module(A, v).total_dim();
    CHECK(L.total_dim() == total);
    CHECK(L.total_dim() == A.basis.dim());
    auto pieces = fitting_pieces(A, L, 0);
    CHECK(pieces.size() == 3);
}

TEST_CASE("opposite algebra and duality") {
    Algebra A = gamma_algebra();
    Algebra Aop = opposite_algebra(A);
    CHECK(Aop.basis.dim() == A.basis.dim());
    // Double opposite restores the presentation bit for bit.
    Algebra Aopop = opposite_algebra(Aop);
    CHECK(Aopop.pres.arrows.size() == A.pres.arrows.size());
    for (size_t k = 0; k < A.pres.arrows.size(); ++k) {
        CHECK(Aopop.pres.arrows[k].src == A.pres.arrows[k].src);
        CHECK(Aopop.pres.arrows[k].tgt == A.pres.arrows[k].tgt);
    }

    // Simples are self-dual; duals of projectives are opposite injectives.
    for (int v = 0; v < A.vertices(); ++v) {
        Module ds = dual_module(A, Aop, simple_module(A, v));
        CHECK(ds.dim == simple_module(Aop, v).dim);
        Module dp = dual_module(A, Aop, projective_module(A, v));
        Module iv = injective_module(Aop, v);
        CHECK(dp.dim == iv.dim);
        CHECK(find_iso(Aop, dp, iv, 1).has_value());
        // total dimension preserved
        CHECK(dp.total_dim() == projective_module(A, v).total_dim());
    }

    // Double dual is naturally isomorphic to the identity.
    Module P = projective_module(A, 0);
    Module dd = dual_module(Aop, A, dual_module(A, Aop, P));
    auto iso = find_iso(A, dd, P, 2);
    CHECK(iso.has_value());
}

TEST_CASE("spec file parsing errors carry line numbers") {
    CHECK_THROWS_AS(parse_spec("vertices 2\narrow a 1 5\n"), parse_error);
    CHECK_THROWS_AS(parse_spec("vertices 2\narrow a 1 2\nrelation 1*a\n"), parse_error);
    CHECK_THROWS_AS(parse_spec("bogus 3\n"), parse_error);
    // Hereditary algebra: empty relation list accepted.
    AlgebraSpecFile ok = parse_spec("char 5\nn 1\nvertices 2\narrow a 1 2\n");
    CHECK(ok.pres.relations.empty());
}
