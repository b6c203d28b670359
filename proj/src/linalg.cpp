#include "shrinkpath/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace shrinkpath {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Vector Matrix::column(std::size_t j) const {
    Vector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
}

Vector Matrix::row(std::size_t i) const {
    return Vector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Vector operator*(const Matrix& a, const Vector& v) {
    if (a.cols() != v.size()) throw std::invalid_argument("matrix-vector product: shape mismatch");
    Vector out(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
    return out;
}

double dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm2(const Vector& v) { return std::sqrt(dot(v, v)); }

double pearson(const Vector& a, const Vector& b) {
    if (a.size() != b.size() || a.size() < 2) throw std::invalid_argument("pearson: bad lengths");
    const double n = static_cast<double>(a.size());
    const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
    const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma, db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa == 0.0 || sbb == 0.0) throw std::invalid_argument("pearson: zero-variance input");
    return sab / std::sqrt(saa * sbb);
}

namespace {

constexpr double kSvdTol = 1e-14;
constexpr int kSvdMaxSweeps = 64;

}  // namespace

SvdResult jacobi_svd(const Matrix& x) {
    const std::size_t n = x.rows(), p = x.cols();
    if (p == 0 || n == 0) throw std::invalid_argument("jacobi_svd: empty matrix");

    Matrix a = x;                       // becomes U * diag(sigma)
    Matrix v = Matrix::identity(p);

    for (int sweep = 0; sweep < kSvdMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t i = 0; i + 1 < p; ++i) {
            for (std::size_t j = i + 1; j < p; ++j) {
                double aii = 0.0, ajj = 0.0, aij = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    aii += a(r, i) * a(r, i);
                    ajj += a(r, j) * a(r, j);
                    aij += a(r, i) * a(r, j);
                }
                if (std::abs(aij) <= kSvdTol * std::sqrt(aii * ajj)) continue;
                rotated = true;
                // rotation angle zeroing the (i,j) inner product
                const double tau = (ajj - aii) / (2.0 * aij);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t r = 0; r < n; ++r) {
                    const double ai = a(r, i), aj = a(r, j);
                    a(r, i) = c * ai - s * aj;
                    a(r, j) = s * ai + c * aj;
                }
                for (std::size_t r = 0; r < p; ++r) {
                    const double vi = v(r, i), vj = v(r, j);
                    v(r, i) = c * vi - s * vj;
                    v(r, j) = s * vi + c * vj;
                }
            }
        }
        if (!rotated) break;
    }

    Vector sigma(p);
    for (std::size_t j = 0; j < p; ++j) {
        double s = 0.0;
        for (std::size_t r = 0; r < n; ++r) s += a(r, j) * a(r, j);
        sigma[j] = std::sqrt(s);
    }

    std::vector<std::size_t> order(p);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) { return sigma[l] > sigma[r]; });

    SvdResult out;
    out.u = Matrix(n, p);
    out.v = Matrix(p, p);
    out.sigma.resize(p);
    for (std::size_t j = 0; j < p; ++j) {
        const std::size_t src = order[j];
        out.sigma[j] = sigma[src];
        const double inv = sigma[src] > 0.0 ? 1.0 / sigma[src] : 0.0;
        for (std::size_t r = 0; r < n; ++r) out.u(r, j) = a(r, src) * inv;
        for (std::size_t r = 0; r < p; ++r) out.v(r, j) = v(r, src);
    }
    return out;
}

SymEigenResult jacobi_eigen_sym(Matrix a) {
    const std::size_t p = a.rows();
    if (p == 0 || a.cols() != p) throw std::invalid_argument("jacobi_eigen_sym: not square");

    Matrix v = Matrix::identity(p);
    const double scale = std::max(a.max_abs(), 1e-300);
    constexpr double kTol = 1e-12;
    constexpr int kMaxSweeps = 100;

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i + 1 < p; ++i)
            for (std::size_t j = i + 1; j < p; ++j) off = std::max(off, std::abs(a(i, j)));
        if (off <= kTol * scale) break;

        for (std::size_t i = 0; i + 1 < p; ++i) {
            for (std::size_t j = i + 1; j < p; ++j) {
                const double apq = a(i, j);
                if (std::abs(apq) <= kTol * scale * 1e-3) continue;
                const double theta = (a(j, j) - a(i, i)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                const double aii = a(i, i), ajj = a(j, j);
                a(i, i) = aii - t * apq;
                a(j, j) = ajj + t * apq;
                a(i, j) = 0.0;
                a(j, i) = 0.0;
                for (std::size_t r = 0; r < p; ++r) {
                    if (r != i && r != j) {
                        const double ari = a(r, i), arj = a(r, j);
                        a(r, i) = a(i, r) = ari - s * (arj + tau * ari);
                        a(r, j) = a(j, r) = arj + s * (ari - tau * arj);
                    }
                    const double vri = v(r, i), vrj = v(r, j);
                    v(r, i) = vri - s * (vrj + tau * vri);
                    v(r, j) = vrj + s * (vri - tau * vrj);
                }
            }
        }
    }

    Vector w(p);
    for (std::size_t i = 0; i < p; ++i) w[i] = a(i, i);

    std::vector<std::size_t> order(p);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) { return w[l] > w[r]; });

    SymEigenResult out;
    out.values.resize(p);
    out.vectors = Matrix(p, p);
    for (std::size_t j = 0; j < p; ++j) {
        out.values[j] = w[order[j]];
        for (std::size_t r = 0; r < p; ++r) out.vectors(r, j) = v(r, order[j]);
    }
    return out;
}

}  // namespace shrinkpath
