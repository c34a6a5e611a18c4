#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>
#include <initializer_list>

#include "oriflag/bruhat.hpp"
#include "oriflag/weyl.hpp"

namespace oriflag {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Rational = boost::multiprecision::mpq_rational;
using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr double kDefaultEps = 1e-9;

RationalMatrix to_rational(const SignedPermutation& w);
Matrix to_double(const RationalMatrix& m);

class OrientedSubspace;

// Point of G/B0, stored as the rotation Q with g = Q u, u upper triangular, positive diagonal.
class OrientedFlag {
public:
    static OrientedFlag canonicalize(const Matrix& g, double eps = kDefaultEps);
    static OrientedFlag identity(int n) { return OrientedFlag(Matrix::Identity(n, n)); }

    const Matrix& rotation() const { return q_; }
    int rank() const { return static_cast<int>(q_.rows()); }

    OrientedFlag translated(const Matrix& g, double eps = kDefaultEps) const;
    OrientedFlag right_twisted(const SignedPermutation& m) const;
    // Oriented span of the first k columns.
    OrientedSubspace part(int k, double eps = kDefaultEps) const;

    double distance(const OrientedFlag& o) const { return (q_ - o.q_).cwiseAbs().maxCoeff(); }
    // Equal as flags when orientations are forgotten.
    bool same_unoriented(const OrientedFlag& o, double tol) const;

private:
    explicit OrientedFlag(Matrix q) : q_(std::move(q)) {}
    Matrix q_;
};

struct Factorization {
    SignedPermutation w;
    double min_pivot_ratio = 1.0;  // smallest |pivot| / column norm
};

Factorization bruhat_factorize_detailed(const Matrix& g, const GroupContext& ctx, double eps = kDefaultEps);
SignedPermutation bruhat_factorize(const Matrix& g, double eps = kDefaultEps, bool projective = false);
SignedPermutation bruhat_factorize(const RationalMatrix& g, bool projective = false);

SignedPermutation relative_position_element(const OrientedFlag& F1, const OrientedFlag& F2, const GroupContext& ctx,
                                            double eps = kDefaultEps);
int relative_position(const OrientedFlag& F1, const OrientedFlag& F2, const PositionSpace& space,
                      double eps = kDefaultEps);

// Oriented subspace given by an ordered basis. The zero subspace carries a sign.
class OrientedSubspace {
public:
    OrientedSubspace(Matrix basis, double eps = kDefaultEps);
    static OrientedSubspace zero(int ambient, int sign = 1);
    static OrientedSubspace standard(int n) { return OrientedSubspace(Matrix::Identity(n, n)); }

    int dim() const { return static_cast<int>(basis_.cols()); }
    int ambient() const { return static_cast<int>(basis_.rows()); }
    const Matrix& basis() const { return basis_; }
    int zero_sign() const { return zero_sign_; }

    OrientedSubspace flipped() const;
    // +1 or -1 comparing orientations of two bases of the same subspace.
    int orientation_relative_to(const OrientedSubspace& other, double eps = kDefaultEps) const;
    bool same_span(const OrientedSubspace& other, double eps = kDefaultEps) const;

private:
    OrientedSubspace() = default;
    Matrix basis_;
    int zero_sign_ = 1;
};

OrientedSubspace oriented_sum(const OrientedSubspace& A, const OrientedSubspace& B, double eps = kDefaultEps);
OrientedSubspace oriented_intersection(const OrientedSubspace& A, const OrientedSubspace& B, double eps = kDefaultEps);

// Sign of the determinant of the concatenation; zero-dimensional pieces contribute their sign.
int concatenation_sign(std::initializer_list<const OrientedSubspace*> pieces, double eps = kDefaultEps);

}  // namespace oriflag
