#pragma once

#include "nlssc/types.hpp"

namespace nlssc {

/// M = V diag(values) V^T, values ascending.
struct SymmetricEigen {
    Vector values;
    Matrix vectors;

    /// Decomposition of M + shift * I. Eigenvectors are shared.
    SymmetricEigen shifted(double shift) const;
};

/// Throws InputError if M is not square or is asymmetric beyond 1e-10.
SymmetricEigen symmetric_eigen(const Matrix& m);

/// Solves A X + X B = C for symmetric A, B. Throws SingularSystemError when
/// min |lambda_i(A) + lambda_j(B)| <= 1e-12 (||A|| + ||B||).
Matrix sylvester_solve(const Matrix& a, const Matrix& b, const Matrix& c);

/// Same, from cached decompositions of A and B.
Matrix sylvester_solve(const SymmetricEigen& a, const SymmetricEigen& b, const Matrix& c);

/// Solves (A + s u u^T) X + X B = C where A and B are given by their
/// decompositions. The rank-one term is folded in exactly: in the B
/// eigenbasis every column reduces to a scalar Sherman-Morrison correction,
/// so no decomposition of A + s u u^T is needed.
Matrix sylvester_solve_rank_one(const SymmetricEigen& a, const SymmetricEigen& b,
                                const Vector& u, double s, const Matrix& c);

/// Singular value thresholding: P max(Sigma - t, 0) Q^T, the proximal
/// operator of t ||.||_*.
Matrix svt(const Matrix& m, double threshold);

/// Sum of singular values.
double nuclear_norm(const Matrix& m);

}  // namespace nlssc
