#include "tmom/opcheck.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tmom {

namespace {

Matrix matrix_power(const Matrix& a, int e) {
    Matrix acc = Matrix::identity(a.rows());
    for (int i = 0; i < e; ++i) acc = acc * a;
    return acc;
}

BlockCheckResult psd_verdict(const Matrix& m, double tol) {
    const double scale = std::max(1.0, m.frobenius());
    if (m.max_asymmetry() > tol * scale) {
        std::ostringstream os;
        os << "block matrix asymmetry " << m.max_asymmetry();
        throw NotHermitian(os.str());
    }
    if (m.rows() == 0) return {true, 0.0};
    Matrix h = m + m.adjoint();
    h = h.scaled(0.5);
    const EigResult eig = jacobi_hermitian(h);
    return {eig.values.front() >= -tol * scale, eig.values.front()};
}

}  // namespace

void OperatorCoefficientSystem::add(std::vector<int> alpha, int i, int j, Coeff value) {
    if (value == Coeff{}) return;
    Key key{std::move(alpha), i, j};
    auto [it, inserted] = coefficients.try_emplace(std::move(key), value);
    if (!inserted) it->second += value;
}

OperatorCoefficientSystem OperatorCoefficientSystem::scaled(double factor) const {
    OperatorCoefficientSystem out;
    out.m = m;
    for (const auto& [key, value] : coefficients) out.coefficients[key] = value * factor;
    return out;
}

Matrix power_word(const OperatorTuple& a, const std::vector<int>& alpha) {
    if (static_cast<int>(alpha.size()) != a.kappa) throw std::invalid_argument("multi-index length mismatch");
    bool pos = true, neg = true;
    for (int e : alpha) {
        pos = pos && e >= 0;
        neg = neg && e <= 0;
    }
    if (!pos && !neg) {
        std::ostringstream os;
        os << "mixed-sign multi-index (";
        for (size_t i = 0; i < alpha.size(); ++i) os << (i ? "," : "") << alpha[i];
        os << ")";
        throw MixedSignMultiIndex(os.str());
    }
    Matrix acc = Matrix::identity(a.dim());
    for (int r = 0; r < a.kappa; ++r) {
        if (alpha[r] == 0) continue;
        const Matrix factor = pos ? a.matrices[r] : a.matrices[r].adjoint();
        acc = acc * matrix_power(factor, std::abs(alpha[r]));
    }
    return acc;
}

BlockCheckResult dilation_block_check(const OperatorTuple& a, const OperatorCoefficientSystem& sys,
                                      double tol) {
    const int d = a.dim();
    Matrix big(sys.m * d, sys.m * d);
    for (const auto& [key, value] : sys.coefficients) {
        const Matrix word = power_word(a, key.alpha);
        // block row j, block column i
        const int row0 = (key.j - 1) * d;
        const int col0 = (key.i - 1) * d;
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) big(row0 + r, col0 + c) += value * word(r, c);
    }
    return psd_verdict(big, tol);
}

OperatorCoefficientSystem contraction_certificate(int kappa, int r) {
    if (r < 1 || r > kappa) throw std::invalid_argument("coordinate out of range");
    OperatorCoefficientSystem out;
    out.m = 2;
    std::vector<int> zero(kappa, 0);
    std::vector<int> er(kappa, 0), mer(kappa, 0);
    er[r - 1] = 1;
    mer[r - 1] = -1;
    out.add(zero, 1, 1, 1.0);
    out.add(zero, 2, 2, 1.0);
    out.add(er, 1, 2, 1.0);
    out.add(mer, 2, 1, 1.0);
    return out;
}

OperatorCoefficientSystem certificate_to_coefficients(const std::vector<std::vector<TrigPoly>>& q) {
    if (q.empty()) throw std::invalid_argument("empty certificate");
    OperatorCoefficientSystem out;
    out.m = static_cast<int>(q.size());
    for (int i = 0; i < out.m; ++i)
        for (int j = 0; j < out.m; ++j)
            for (size_t l = 0; l < q[i].size(); ++l) {
                if (q[j].size() != q[i].size()) throw std::invalid_argument("ragged certificate matrix");
                if (!is_analytic(q[i][l]))
                    throw EntryOutsideCone("certificate entry is not analytic");
                for (const auto& [a, ca] : q[i][l].terms())
                    for (const auto& [b, cb] : q[j][l].terms()) {
                        std::vector<int> alpha(a.size());
                        for (size_t t = 0; t < a.size(); ++t) alpha[t] = a[t] - b[t];
                        out.add(std::move(alpha), i + 1, j + 1, ca * std::conj(cb));
                    }
            }
    return out;
}

OperatorCoefficientSystem certificate_to_coefficients(const std::vector<std::vector<LaurentPoly>>& q) {
    if (q.empty()) throw std::invalid_argument("empty certificate");
    OperatorCoefficientSystem out;
    out.m = static_cast<int>(q.size());
    for (int i = 0; i < out.m; ++i)
        for (int j = 0; j < out.m; ++j)
            for (size_t l = 0; l < q[i].size(); ++l) {
                if (q[j].size() != q[i].size()) throw std::invalid_argument("ragged certificate matrix");
                if (!support_in(q[i][l], IndexClass::nplus()))
                    throw EntryOutsideCone("certificate entry escapes the half-plane cone");
                // q_i(l,lbar) conj(q_j(l,lbar)) contributes l^(m1+n2) lbar^(n1+m2)
                for (const auto& [a, ca] : q[i][l].terms())
                    for (const auto& [b, cb] : q[j][l].terms())
                        out.add({a.m + b.n, a.n + b.m}, i + 1, j + 1, ca * std::conj(cb));
            }
    return out;
}

BlockCheckResult subnormal_block_check(const Matrix& s, const OperatorCoefficientSystem& sys, double tol) {
    const int d = s.rows();
    if (d != s.cols()) throw std::invalid_argument("square matrix expected");
    Matrix big(sys.m * d, sys.m * d);
    const Matrix sadj = s.adjoint();
    for (const auto& [key, value] : sys.coefficients) {
        if (key.alpha.size() != 2 || key.alpha[0] < 0 || key.alpha[1] < 0)
            throw std::invalid_argument("subnormal systems index over pairs (p,q) in Z_+^2");
        const Matrix word = matrix_power(sadj, key.alpha[1]) * matrix_power(s, key.alpha[0]);
        const int row0 = (key.j - 1) * d;
        const int col0 = (key.i - 1) * d;
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) big(row0 + r, col0 + c) += value * word(r, c);
    }
    return psd_verdict(big, tol);
}

OperatorCoefficientSystem bram_system(int n) {
    if (n < 1) throw std::invalid_argument("order must be >= 1");
    OperatorCoefficientSystem out;
    out.m = n + 1;
    for (int i = 1; i <= n + 1; ++i)
        for (int j = 1; j <= n + 1; ++j) out.add({j - 1, i - 1}, i, j, 1.0);
    return out;
}

}  // namespace tmom
