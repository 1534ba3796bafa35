#include "ntors/matrix.hpp"

#include <stdexcept>

namespace ntors {

bool is_prime(uint32_t m) {
    if (m < 2) return false;
    for (uint32_t d = 2; d * d <= m; ++d)
        if (m % d == 0) return false;
    return true;
}

Mat identity(int n) {
    Mat I(n, n);
    for (int i = 0; i < n; ++i) I.at(i, i) = 1;
    return I;
}

Mat mul(const Fp& F, const Mat& A, const Mat& B) {
    if (A.cols != B.rows) throw std::invalid_argument("mul: dimension mismatch");
    Mat C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < B.cols; ++j) {
            uint64_t acc = 0;
            for (int k = 0; k < A.cols; ++k)
                acc += static_cast<uint64_t>(A.at(i, k)) * B.at(k, j);
            C.at(i, j) = static_cast<uint32_t>(acc % F.p);
        }
    return C;
}

Mat add(const Fp& F, const Mat& A, const Mat& B) {
    if (A.rows != B.rows || A.cols != B.cols) throw std::invalid_argument("add: shape");
    Mat C(A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = F.add(A.a[i], B.a[i]);
    return C;
}

Mat sub(const Fp& F, const Mat& A, const Mat& B) {
    if (A.rows != B.rows || A.cols != B.cols) throw std::invalid_argument("sub: shape");
    Mat C(A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = F.sub(A.a[i], B.a[i]);
    return C;
}

Mat scale(const Fp& F, uint32_t c, const Mat& A) {
    Mat C(A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = F.mul(c, A.a[i]);
    return C;
}

Mat transpose(const Mat& A) {
    Mat T(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
    return T;
}

Mat hcat(const Mat& A, const Mat& B) {
    if (A.rows != B.rows) throw std::invalid_argument("hcat: rows");
    Mat C(A.rows, A.cols + B.cols);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
        for (int j = 0; j < B.cols; ++j) C.at(i, A.cols + j) = B.at(i, j);
    }
    return C;
}

Mat vcat(const Mat& A, const Mat& B) {
    if (A.cols != B.cols) throw std::invalid_argument("vcat: cols");
    Mat C(A.rows + B.rows, A.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
    for (int i = 0; i < B.rows; ++i)
        for (int j = 0; j < B.cols; ++j) C.at(A.rows + i, j) = B.at(i, j);
    return C;
}

Mat dsum(const Mat& A, const Mat& B) {
    Mat C(A.rows + B.rows, A.cols + B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
    for (int i = 0; i < B.rows; ++i)
        for (int j = 0; j < B.cols; ++j) C.at(A.rows + i, A.cols + j) = B.at(i, j);
    return C;
}

Mat cols_of(const Mat& A, const std::vector<int>& idx) {
    Mat C(A.rows, static_cast<int>(idx.size()));
    for (int i = 0; i < A.rows; ++i)
        for (size_t j = 0; j < idx.size(); ++j) C.at(i, static_cast<int>(j)) = A.at(i, idx[j]);
    return C;
}

Mat mat_pow(const Fp& F, const Mat& A, uint64_t e) {
    if (A.rows != A.cols) throw std::invalid_argument("mat_pow: square");
    Mat r = identity(A.rows), b = A;
    while (e) {
        if (e & 1) r = mul(F, r, b);
        b = mul(F, b, b);
        e >>= 1;
    }
    return r;
}

Rref rref(const Fp& F, Mat A) {
    Rref out;
    int r = 0;
    for (int c = 0; c < A.cols && r < A.rows; ++c) {
        int piv = -1;
        for (int i = r; i < A.rows; ++i)
            if (A.at(i, c)) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < A.cols; ++j) std::swap(A.at(piv, j), A.at(r, j));
        uint32_t iv = F.inv(A.at(r, c));
        for (int j = c; j < A.cols; ++j) A.at(r, j) = F.mul(iv, A.at(r, j));
        for (int i = 0; i < A.rows; ++i) {
            if (i == r || A.at(i, c) == 0) continue;
            uint32_t f = A.at(i, c);
            for (int j = c; j < A.cols; ++j) A.at(i, j) = F.sub(A.at(i, j), F.mul(f, A.at(r, j)));
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.rank = r;
    out.R = std::move(A);
    return out;
}

int rank(const Fp& F, const Mat& A) { return rref(F, A).rank; }

Solve solve(const Fp& F, const Mat& A, const Mat& B) {
    if (A.rows != B.rows) throw std::invalid_argument("solve: A.rows != B.rows");
    Rref rr = rref(F, hcat(A, B));
    Solve out;
    // Inconsistent iff a pivot falls in the B block.
    bool consistent = true;
    for (int pc : rr.pivots)
        if (pc >= A.cols) consistent = false;

    std::vector<int> pivot_of_col(A.cols, -1);
    {
        int prow = 0;
        for (int pc : rr.pivots) {
            if (pc < A.cols) pivot_of_col[pc] = prow;
            ++prow;
        }
    }
    if (consistent) {
        Mat X(A.cols, B.cols);
        for (int c = 0; c < A.cols; ++c)
            if (pivot_of_col[c] >= 0)
                for (int j = 0; j < B.cols; ++j) X.at(c, j) = rr.R.at(pivot_of_col[c], A.cols + j);
        out.particular = std::move(X);
    }
    // Kernel basis from free columns of A.
    std::vector<int> free_cols;
    for (int c = 0; c < A.cols; ++c)
        if (pivot_of_col[c] < 0) free_cols.push_back(c);
    Mat K(A.cols, static_cast<int>(free_cols.size()));
    for (size_t k = 0; k < free_cols.size(); ++k) {
        int fc = free_cols[k];
        K.at(fc, static_cast<int>(k)) = 1;
        for (int c = 0; c < A.cols; ++c)
            if (pivot_of_col[c] >= 0) K.at(c, static_cast<int>(k)) = F.neg(rr.R.at(pivot_of_col[c], fc));
    }
    out.kernel = std::move(K);
    return out;
}

Mat kernel_basis(const Fp& F, const Mat& A) {
    return solve(F, A, Mat(A.rows, 0)).kernel;
}

Mat col_canon(const Fp& F, const Mat& A) {
    Rref rr = rref(F, transpose(A));
    Mat B(A.rows, rr.rank);
    for (int i = 0; i < rr.rank; ++i)
        for (int j = 0; j < A.rows; ++j) B.at(j, i) = rr.R.at(i, j);
    return B;
}

SumIntersect intersect_and_sum(const Fp& F, const Mat& U, const Mat& V) {
    if (U.rows != V.rows) throw std::invalid_argument("intersect_and_sum: ambient mismatch");
    SumIntersect out;
    out.sum = col_canon(F, hcat(U, V));
    // U x = V y  <=>  [U | -V] (x,y)^T = 0; intersection is U x over such pairs.
    Mat K = kernel_basis(F, hcat(U, scale(F, F.p - 1, V)));
    Mat xs(U.cols, K.cols);
    for (int i = 0; i < U.cols; ++i)
        for (int j = 0; j < K.cols; ++j) xs.at(i, j) = K.at(i, j);
    out.intersection = col_canon(F, mul(F, U, xs));
    return out;
}

bool invertible(const Fp& F, const Mat& A) {
    return A.rows == A.cols && rank(F, A) == A.rows;
}

Mat inverse(const Fp& F, const Mat& A) {
    Solve s = solve(F, A, identity(A.rows));
    if (!s.particular || A.rows != A.cols || s.kernel.cols != 0)
        throw std::invalid_argument("inverse: singular");
    return *s.particular;
}

std::optional<Mat> coords_in(const Fp& F, const Mat& B, const Mat& V) {
    Solve s = solve(F, B, V);
    if (!s.particular) return std::nullopt;
    return *s.particular;
}

} // namespace ntors
