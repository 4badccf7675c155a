#pragma once

#include "ouspec/common.hpp"

#include <span>

namespace ouspec::la {

// Small dense row-major matrix. Sizes stay tiny (n <= 16 ambient,
// n(n+1)/2 <= 136 for operator-space work), so everything is O(n^3) direct.
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0.0) {}

    static Mat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    const Vec& data() const { return a_; }
    Vec& data() { return a_; }

    Mat& operator+=(const Mat& o);
    Mat& operator-=(const Mat& o);
    Mat& operator*=(double s);

    Vec col(int j) const;
    void set_col(int j, std::span<const double> v);

private:
    int rows_, cols_;
    Vec a_;
};

Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Mat operator*(double s, Mat a);
Mat operator*(const Mat& a, const Mat& b);
Mat transpose(const Mat& a);
Mat symmetrize(const Mat& a);
Mat outer(std::span<const double> u, std::span<const double> v);

double fro_norm(const Mat& a);
double max_abs(const Mat& a);
double dot(std::span<const double> u, std::span<const double> v);

struct SymEigen {
    Vec values;   // ascending
    Mat vectors;  // orthonormal columns, a = V diag(values) V^T
    int sweeps;
    double offdiag;  // remaining off-diagonal Frobenius mass
};

// Cyclic Jacobi rotations on a symmetric matrix. Converges when the
// off-diagonal Frobenius mass drops to rel_tol * ||a||_F; throws
// numeric_error with the residual after max_sweeps otherwise.
SymEigen jacobi_eigen(Mat a, int max_sweeps = 100, double rel_tol = 1e-12);

struct RankData {
    Vec singular_values;  // descending
    Mat right_vectors;    // columns aligned with singular_values
    int rank;
    double cutoff;        // rel_cutoff * largest singular value
};

// Rank / null-space data of a rectangular map via the symmetric
// eigenproblem of A^T A. Columns rank..cols-1 of right_vectors span the
// null space.
RankData rank_decompose(const Mat& a, double rel_cutoff = 1e-8);

// Orthonormal basis of the column space of a (Gram route, same cutoff rule).
Mat column_space(const Mat& a, double rel_cutoff = 1e-8);

} // namespace ouspec::la
