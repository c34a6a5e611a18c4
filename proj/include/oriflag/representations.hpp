#pragma once

#include "oriflag/flags.hpp"
#include "oriflag/weyl.hpp"

namespace oriflag {

// [[0,1],[-1,0]]
Matrix rot90();
RationalMatrix rot90_exact();

// iota_n: SL(2) -> SL(n) in the orthonormal basis e_i = sqrt(C(n-1,i-1)) X^(n-i) Y^(i-1).
Matrix irreducible_rep(int n, const Matrix& A, double eps = kDefaultEps);
// Same map in the monomial basis X^(n-i) Y^(i-1); conjugate to iota_n by a positive diagonal.
RationalMatrix symmetric_power_monomial(int n, const RationalMatrix& A);
// Exact iota_n(A); raises IrrationalEntry if some entry needs a square root.
RationalMatrix irreducible_rep_exact(int n, const RationalMatrix& A);

// diag(iota_k(A), iota_(n-k)(A)); k = 0 or k = n gives iota_n(A).
Matrix block_embedding(int n, int k, const Matrix& A, double eps = kDefaultEps);
RationalMatrix block_embedding_exact(int n, int k, const RationalMatrix& A);

struct BlockSpec {
    int n, k, q, Q, delta;
};
BlockSpec block_spec(int n, int k);

// Signed permutation z with z g z^-1 diagonal decreasing for g = b_k(diag(l, 1/l)), l > 1.
SignedPermutation interlacer(int n, int k);

// Closed form of w_k: antidiagonal, rows from the top J (ones), delta, K (alternating from -1), L.
SignedPermutation block_transversality_formula(int n, int k);

struct BlockTransversality {
    SignedPermutation computed;           // factorization of z b_k(rot90) z^-1
    SignedPermutation formula;
    SignedPermutation computed_canonical;
    SignedPermutation formula_canonical;
    bool matches() const { return computed_canonical == formula_canonical; }
};
BlockTransversality analyze_block_transversality(int n, int k);
// Canonical form of w_k; raises VerificationMismatch if it disagrees with the closed form.
SignedPermutation block_transversality(int n, int k);

// Antidiagonal with entry (n+1-j, j) = (-1)^(j+1). Projective for even n.
SignedPermutation hitchin_w0(int n);

}  // namespace oriflag
