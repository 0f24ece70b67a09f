#include "tmom/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tmom {

Matrix Matrix::identity(int n) {
    Matrix out(n, n);
    for (int i = 0; i < n; ++i) out(i, i) = 1.0;
    return out;
}

Matrix Matrix::adjoint() const {
    Matrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Coeff aik = (*this)(i, k);
            if (aik == Coeff{}) continue;
            for (int j = 0; j < rhs.cols_; ++j) out(i, j) += aik * rhs(k, j);
        }
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix sum shape mismatch");
    Matrix out = *this;
    for (size_t t = 0; t < a_.size(); ++t) out.a_[t] += rhs.a_[t];
    return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix diff shape mismatch");
    Matrix out = *this;
    for (size_t t = 0; t < a_.size(); ++t) out.a_[t] -= rhs.a_[t];
    return out;
}

Matrix Matrix::scaled(Coeff factor) const {
    Matrix out = *this;
    for (auto& v : out.a_) v *= factor;
    return out;
}

double Matrix::frobenius() const {
    double s = 0.0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double Matrix::max_asymmetry() const {
    double worst = 0.0;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return worst;
}

namespace {

double offdiag_mass(const Matrix& h) {
    double s = 0.0;
    for (int i = 0; i < h.rows(); ++i)
        for (int j = 0; j < h.cols(); ++j)
            if (i != j) s += std::norm(h(i, j));
    return std::sqrt(s);
}

}  // namespace

EigResult jacobi_hermitian(Matrix h, double off_tol, int max_sweeps) {
    const int n = h.rows();
    if (n != h.cols()) throw std::invalid_argument("jacobi_hermitian needs a square matrix");
    Matrix v = Matrix::identity(n);
    const double stop = off_tol * std::max(1.0, h.frobenius());

    for (int sweep = 0; sweep < max_sweeps && offdiag_mass(h) > stop; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Coeff hpq = h(p, q);
                if (std::abs(hpq) == 0.0) continue;
                const double app = h(p, p).real();
                const double aqq = h(q, q).real();
                const double absb = std::abs(hpq);
                // phase that makes the pivot real, then a standard symmetric rotation
                const Coeff phase = hpq / absb;
                const double tau = (aqq - app) / (2.0 * absb);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Coeff sp = s * phase;  // complex sine

                for (int k = 0; k < n; ++k) {
                    const Coeff hkp = h(k, p);
                    const Coeff hkq = h(k, q);
                    h(k, p) = c * hkp - std::conj(sp) * hkq;
                    h(k, q) = sp * hkp + c * hkq;
                }
                for (int k = 0; k < n; ++k) {
                    const Coeff hpk = h(p, k);
                    const Coeff hqk = h(q, k);
                    h(p, k) = c * hpk - sp * hqk;
                    h(q, k) = std::conj(sp) * hpk + c * hqk;
                }
                for (int k = 0; k < n; ++k) {
                    const Coeff vkp = v(k, p);
                    const Coeff vkq = v(k, q);
                    v(k, p) = c * vkp - std::conj(sp) * vkq;
                    v(k, q) = sp * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return h(a, a).real() < h(b, b).real(); });

    EigResult out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (int j = 0; j < n; ++j) {
        out.values[j] = h(order[j], order[j]).real();
        for (int i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

std::vector<double> singular_values(Matrix m, int max_sweeps) {
    const int rows = m.rows();
    const int cols = m.cols();
    if (rows < cols) throw std::invalid_argument("singular_values needs rows >= cols");

    auto col_dot = [&](int a, int b) {  // <col_a, col_b> with conjugation on col_a
        Coeff s = 0.0;
        for (int i = 0; i < rows; ++i) s += std::conj(m(i, a)) * m(i, b);
        return s;
    };

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < cols - 1; ++p) {
            for (int q = p + 1; q < cols; ++q) {
                const double app = col_dot(p, p).real();
                const double aqq = col_dot(q, q).real();
                const Coeff apq = col_dot(p, q);
                const double absb = std::abs(apq);
                if (absb <= 1e-30 || absb * absb <= 1e-32 * app * aqq) continue;
                rotated = true;
                const Coeff phase = apq / absb;
                const double tau = (aqq - app) / (2.0 * absb);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Coeff sp = s * phase;
                for (int i = 0; i < rows; ++i) {
                    const Coeff mip = m(i, p);
                    const Coeff miq = m(i, q);
                    m(i, p) = c * mip - std::conj(sp) * miq;
                    m(i, q) = sp * mip + c * miq;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sv(cols);
    for (int j = 0; j < cols; ++j) sv[j] = std::sqrt(std::max(0.0, col_dot(j, j).real()));
    std::sort(sv.begin(), sv.end(), std::greater<double>());
    return sv;
}

}  // namespace tmom
