#pragma once

// Dense exact linear algebra over F_p: row reduction, solving, subspace
// arithmetic. Everything is immutable-after-construction and tiny; matrices of
// either dimension zero are legal throughout.

#include <optional>
#include <vector>

#include "ntors/fp.hpp"

namespace ntors {

struct Mat {
    int rows{0};
    int cols{0};
    std::vector<uint32_t> a; // row-major residues in [0, p)

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

    uint32_t& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    uint32_t at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
    bool is_zero() const {
        for (uint32_t v : a)
            if (v) return false;
        return true;
    }
    bool operator==(const Mat& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }
};

Mat identity(int n);
Mat mul(const Fp& F, const Mat& A, const Mat& B);
Mat add(const Fp& F, const Mat& A, const Mat& B);
Mat sub(const Fp& F, const Mat& A, const Mat& B);
Mat scale(const Fp& F, uint32_t c, const Mat& A);
Mat transpose(const Mat& A);
Mat hcat(const Mat& A, const Mat& B);
Mat vcat(const Mat& A, const Mat& B);
// Direct (block diagonal) sum.
Mat dsum(const Mat& A, const Mat& B);
Mat cols_of(const Mat& A, const std::vector<int>& idx);
Mat mat_pow(const Fp& F, const Mat& A, uint64_t e);

struct Rref {
    Mat R;
    std::vector<int> pivots;
    int rank{0};
};
Rref rref(const Fp& F, Mat A);
int rank(const Fp& F, const Mat& A);

// Column-wise solution of A X = B. `particular` is empty when the system is
// inconsistent; `kernel` columns form a basis of ker A in all cases.
struct Solve {
    std::optional<Mat> particular;
    Mat kernel;
};
Solve solve(const Fp& F, const Mat& A, const Mat& B);
Mat kernel_basis(const Fp& F, const Mat& A);

// Canonical basis of a column span: reduced column echelon form with zero
// columns dropped. Two subspaces are equal iff their canonical bases agree.
Mat col_canon(const Fp& F, const Mat& A);

struct SumIntersect {
    Mat intersection;
    Mat sum;
};
// Inputs are column-span matrices over the same ambient space.
SumIntersect intersect_and_sum(const Fp& F, const Mat& U, const Mat& V);

bool invertible(const Fp& F, const Mat& A);
Mat inverse(const Fp& F, const Mat& A); // requires invertible

// Expresses each column of V in the given independent columns B; empty when
// some column lies outside span(B).
std::optional<Mat> coords_in(const Fp& F, const Mat& B, const Mat& V);

} // namespace ntors
