#include "ouspec/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ouspec::la {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat& Mat::operator+=(const Mat& o) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

Mat& Mat::operator-=(const Mat& o) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

Mat& Mat::operator*=(double s) {
    for (double& x : a_) x *= s;
    return *this;
}

Vec Mat::col(int j) const {
    Vec v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void Mat::set_col(int j, std::span<const double> v) {
    for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Mat operator+(Mat a, const Mat& b) { a += b; return a; }
Mat operator-(Mat a, const Mat& b) { a -= b; return a; }
Mat operator*(double s, Mat a) { a *= s; return a; }

Mat operator*(const Mat& a, const Mat& b) {
    Mat c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Mat transpose(const Mat& a) {
    Mat t(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

Mat symmetrize(const Mat& a) {
    Mat s(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) s(i, j) = 0.5 * (a(i, j) + a(j, i));
    return s;
}

Mat outer(std::span<const double> u, std::span<const double> v) {
    Mat m(static_cast<int>(u.size()), static_cast<int>(v.size()));
    for (size_t i = 0; i < u.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = u[i] * v[j];
    return m;
}

double fro_norm(const Mat& a) {
    double s = 0.0;
    for (double x : a.data()) s += x * x;
    return std::sqrt(s);
}

double max_abs(const Mat& a) {
    double m = 0.0;
    for (double x : a.data()) m = std::max(m, std::abs(x));
    return m;
}

double dot(std::span<const double> u, std::span<const double> v) {
    double s = 0.0;
    for (size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
}

namespace {

double offdiag_mass(const Mat& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = i + 1; j < a.cols(); ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
}

} // namespace

SymEigen jacobi_eigen(Mat a, int max_sweeps, double rel_tol) {
    const int n = a.rows();
    require(n >= 1 && a.cols() == n, "jacobi_eigen: square matrix required");
    Mat v = Mat::identity(n);
    const double target = rel_tol * fro_norm(a);

    int sweep = 0;
    double off = offdiag_mass(a);
    while (off > target && sweep < max_sweeps) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                const double app = a(p, p), aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (int r = 0; r < n; ++r) {
                    if (r != p && r != q) {
                        const double arp = a(r, p), arq = a(r, q);
                        a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
                        a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
                    }
                    const double vrp = v(r, p), vrq = v(r, q);
                    v(r, p) = vrp - s * (vrq + tau * vrp);
                    v(r, q) = vrq + s * (vrp - tau * vrq);
                }
            }
        }
        ++sweep;
        off = offdiag_mass(a);
    }
    if (off > target)
        throw numeric_error("jacobi_eigen: no convergence after " + std::to_string(max_sweeps) +
                            " sweeps, off-diagonal residual " + std::to_string(off));

    SymEigen out;
    out.sweeps = sweep;
    out.offdiag = off;
    out.values.resize(n);
    for (int i = 0; i < n; ++i) out.values[i] = a(i, i);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return out.values[i] < out.values[j]; });

    Vec sorted(n);
    Mat vs(n, n);
    for (int k = 0; k < n; ++k) {
        sorted[k] = out.values[order[k]];
        for (int i = 0; i < n; ++i) vs(i, k) = v(i, order[k]);
    }
    out.values = std::move(sorted);
    out.vectors = std::move(vs);
    return out;
}

RankData rank_decompose(const Mat& a, double rel_cutoff) {
    const Mat g = transpose(a) * a;
    SymEigen eig = jacobi_eigen(g);
    const int m = a.cols();

    RankData out;
    out.singular_values.resize(m);
    out.right_vectors = Mat(m, m);
    // jacobi_eigen sorts ascending; report singular values descending.
    for (int k = 0; k < m; ++k) {
        const int src = m - 1 - k;
        out.singular_values[k] = std::sqrt(std::max(0.0, eig.values[src]));
        for (int i = 0; i < m; ++i) out.right_vectors(i, k) = eig.vectors(i, src);
    }
    const double smax = out.singular_values.empty() ? 0.0 : out.singular_values[0];
    out.cutoff = rel_cutoff * smax;
    out.rank = 0;
    for (double s : out.singular_values)
        if (s > out.cutoff) ++out.rank;
    return out;
}

Mat column_space(const Mat& a, double rel_cutoff) {
    RankData rd = rank_decompose(a, rel_cutoff);
    Mat basis(a.rows(), rd.rank);
    for (int k = 0; k < rd.rank; ++k) {
        Vec u(a.rows(), 0.0);
        for (int i = 0; i < a.rows(); ++i) {
            double s = 0.0;
            for (int j = 0; j < a.cols(); ++j) s += a(i, j) * rd.right_vectors(j, k);
            u[i] = s;
        }
        const double inv = 1.0 / rd.singular_values[k];
        for (int i = 0; i < a.rows(); ++i) basis(i, k) = u[i] * inv;
    }
    return basis;
}

} // namespace ouspec::la
