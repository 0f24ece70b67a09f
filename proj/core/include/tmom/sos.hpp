#pragma once

#include <vector>

#include "tmom/algebra.hpp"
#include "tmom/linalg.hpp"

namespace tmom {

// Sum-of-squares witness: target = v* G v over the monomial vector
// v_k = z^{m_k} zbar^{n_k}. G is Hermitian; PSD G certifies nonnegativity.
struct GramCertificate {
    std::vector<MonomialIndex> basis;
    Matrix gram;
};

using SquareList = std::vector<LaurentPoly>;
using TrigSquareList = std::vector<TrigPoly>;

struct FeasibilityReport {
    enum class Kind { Certificate, Infeasible, Unknown };

    Kind kind = Kind::Unknown;
    GramCertificate certificate;  // Certificate
    double min_eigenvalue = 0.0;  // Certificate
    Coeff witness_point;          // Infeasible: target(witness_point) < 0
    double witness_value = 0.0;
    int iterations = 0;
    double residual = 0.0;  // Unknown: distance between the two projections
};

// v* G v expanded to a polynomial; Hermitian G gives a Hermitian result.
LaurentPoly expand_certificate(const GramCertificate& c);

// Gram matrix of a finite list of squares, PSD by construction.
GramCertificate squares_to_gram(const SquareList& s);

// Eigendecomposition split of a PSD Gram matrix into explicit squares.
// Eigenvalues in [-clip_tol, 0) are clipped to zero; anything lower throws.
SquareList gram_to_squares(const GramCertificate& c, double clip_tol);

// Decision procedure for membership of target in the cone spanned by Gram
// matrices over the given monomial basis: alternating projection between the
// coefficient-matching affine subspace and the PSD cone, with a pointwise
// negativity scan for the Infeasible verdict. Deterministic.
FeasibilityReport sos_feasibility(const LaurentPoly& target, const std::vector<MonomialIndex>& basis,
                                  int max_iter, double psd_tol);

double default_psd_tol(const Matrix& m);

// Spectral factorization of a nonnegative univariate trigonometric
// polynomial: returns analytic q with |q|^2 = p on the circle.
TrigPoly fejer_riesz(const TrigPoly& p, double tol);

// |z - lambda|^2 - eps^2: nonnegative off the eps-disc around lambda and
// strictly negative at lambda itself.
LaurentPoly sumk_witness(Coeff lambda, double eps);

}  // namespace tmom
