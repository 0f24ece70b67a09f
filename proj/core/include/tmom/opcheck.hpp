#pragma once

#include <map>
#include <vector>

#include "tmom/algebra.hpp"
#include "tmom/linalg.hpp"

namespace tmom {

// kappa square matrices of a common dimension.
struct OperatorTuple {
    int kappa = 1;
    std::vector<Matrix> matrices;

    int dim() const { return matrices.empty() ? 0 : matrices.front().rows(); }
};

// Finite coefficient system {a_alpha^{i,j}} with blocks i,j in 1..m. The
// exponent is a multi-index over Z_+^kappa union Z_-^kappa for dilation
// checks, or a pair (p,q) in Z_+^2 for subnormality checks.
struct OperatorCoefficientSystem {
    struct Key {
        std::vector<int> alpha;
        int i = 1;
        int j = 1;
        friend auto operator<=>(const Key&, const Key&) = default;
    };

    int m = 1;
    std::map<Key, Coeff> coefficients;

    void add(std::vector<int> alpha, int i, int j, Coeff value);
    OperatorCoefficientSystem scaled(double factor) const;
};

// Ordered power word A^[alpha]: plain powers on Z_+^kappa, adjoint powers on
// Z_-^kappa, identity at 0. Mixed signs are rejected.
Matrix power_word(const OperatorTuple& a, const std::vector<int>& alpha);

struct BlockCheckResult {
    bool pass = false;
    double min_eigenvalue = 0.0;
};

// PSD test of the md x md block matrix with block (j,i) given by
// sum_alpha a_alpha^{i,j} A^[alpha]. A failing verdict is a concrete
// counterexample to the dilation characterization for this certificate.
BlockCheckResult dilation_block_check(const OperatorTuple& a, const OperatorCoefficientSystem& sys,
                                      double tol);

// Canonical m=2 certificate whose block matrix is [[I, A_r*],[A_r, I]]:
// passes exactly when the r-th operator is a contraction.
OperatorCoefficientSystem contraction_certificate(int kappa, int r);

// Coefficients of sum_l q_{i,l} conj(q_{j,l}) for a matrix of analytic
// trigonometric polynomials (dilation form) ...
OperatorCoefficientSystem certificate_to_coefficients(const std::vector<std::vector<TrigPoly>>& q);
// ... or of half-plane rational functions (subnormal form over (p,q)).
OperatorCoefficientSystem certificate_to_coefficients(const std::vector<std::vector<LaurentPoly>>& q);

// PSD test of the block matrix with block (j,i) = sum a^{i,j}_{p,q} S*^q S^p.
BlockCheckResult subnormal_block_check(const Matrix& s, const OperatorCoefficientSystem& sys, double tol);

// Kronecker system a^{i,j}_{p,q} = [p == j-1][q == i-1] on m = n+1 blocks;
// its block matrix stacks S*^(i-1) S^(j-1), the classical falsifier that
// passes for normal matrices and fails for the 2x2 nilpotent Jordan block.
OperatorCoefficientSystem bram_system(int n);

}  // namespace tmom
