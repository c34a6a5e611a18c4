#include "oriflag/flags.hpp"

#include <algorithm>
#include <cmath>

#include "oriflag/errors.hpp"

namespace oriflag {

RationalMatrix to_rational(const SignedPermutation& w) {
    const int n = w.rank();
    RationalMatrix m = RationalMatrix::Zero(n, n);
    for (int j = 0; j < n; ++j) m(w.row(j), j) = w.sign(j);
    return m;
}

Matrix to_double(const RationalMatrix& m) {
    Matrix out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).convert_to<double>();
    return out;
}

namespace {

void require_square(const auto& g) {
    require(g.rows() == g.cols() && g.rows() >= 2, ErrorCode::RankMismatch, "expected a square matrix of size >= 2");
}

int determinant_sign(const Matrix& g, double eps) {
    Eigen::PartialPivLU<Matrix> lu(g);
    const double det = lu.determinant();
    double scale = 1.0;
    for (Eigen::Index j = 0; j < g.cols(); ++j) scale *= std::max(g.col(j).norm(), 1e-300);
    require(std::abs(det) > eps * scale, ErrorCode::DegenerateInput, "matrix is numerically singular");
    return det > 0 ? 1 : -1;
}

// Column-by-column elimination. Zero(x, norm) decides numerical zeros; Check(x, norm)
// rejects pivots that sit in the ambiguous band.
template <class Scalar, class Abs, class IsZero, class Ambiguous>
std::vector<int> eliminate(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a, Abs abs_of, IsZero is_zero,
                           Ambiguous ambiguous, double* min_ratio) {
    const int n = static_cast<int>(a.rows());
    std::vector<char> used(n, 0);
    std::vector<int> images(n);
    for (int j = 0; j < n; ++j) {
        double norm2 = 0;
        for (int i = 0; i < n; ++i)
            if (!used[i]) {
                const double x = abs_of(a(i, j));
                norm2 += x * x;
            }
        const double norm = std::sqrt(norm2);
        int p = -1;
        for (int i = n - 1; i >= 0; --i) {
            if (used[i]) continue;
            if (is_zero(a(i, j), norm)) {
                a(i, j) = Scalar(0);
                continue;
            }
            p = i;
            break;
        }
        require(p >= 0, ErrorCode::DegenerateInput, "column " + std::to_string(j + 1) + " has no pivot");
        require(!ambiguous(a(p, j), norm), ErrorCode::DegenerateInput,
                "pivot in column " + std::to_string(j + 1) + " is below tolerance");
        if (min_ratio && norm > 0) *min_ratio = std::min(*min_ratio, abs_of(a(p, j)) / norm);
        used[p] = 1;
        images[j] = (a(p, j) > Scalar(0) ? 1 : -1) * (p + 1);
        // clear above the pivot with lower row p
        for (int r = 0; r < p; ++r) {
            if (a(r, j) == Scalar(0)) continue;
            const Scalar f = a(r, j) / a(p, j);
            for (int c = j + 1; c < n; ++c) a(r, c) -= f * a(p, c);
            a(r, j) = Scalar(0);
        }
        // column j now holds only the pivot; clearing to its right only touches row p
        for (int c = j + 1; c < n; ++c) a(p, c) = Scalar(0);
    }
    return images;
}

}  // namespace

OrientedFlag OrientedFlag::canonicalize(const Matrix& g, double eps) {
    require_square(g);
    require(determinant_sign(g, eps) > 0, ErrorCode::InvalidArgument, "flag representative needs det > 0");
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < q.cols(); ++i)
        if (r(i, i) < 0) q.col(i) *= -1;
    return OrientedFlag(std::move(q));
}

OrientedFlag OrientedFlag::translated(const Matrix& g, double eps) const { return canonicalize(g * q_, eps); }

OrientedFlag OrientedFlag::right_twisted(const SignedPermutation& m) const {
    require(in_mbar(m) && m.rank() == rank(), ErrorCode::NotInMbar, "twist must be an M-bar element of matching rank");
    Matrix q = q_;
    for (int j = 0; j < rank(); ++j) q.col(j) *= m.sign(j);
    return OrientedFlag(std::move(q));
}

OrientedSubspace OrientedFlag::part(int k, double eps) const {
    require(k >= 0 && k <= rank(), ErrorCode::IndexOutOfRange, "flag part out of range");
    if (k == 0) return OrientedSubspace::zero(rank());
    return OrientedSubspace(q_.leftCols(k), eps);
}

bool OrientedFlag::same_unoriented(const OrientedFlag& o, double tol) const {
    for (int j = 0; j < rank(); ++j) {
        const double d = std::min((q_.col(j) - o.q_.col(j)).cwiseAbs().maxCoeff(),
                                  (q_.col(j) + o.q_.col(j)).cwiseAbs().maxCoeff());
        if (d > tol) return false;
    }
    return true;
}

Factorization bruhat_factorize_detailed(const Matrix& g, const GroupContext& ctx, double eps) {
    require_square(g);
    require(g.rows() == ctx.n, ErrorCode::RankMismatch, "matrix size does not match the group");
    require(eps > 0, ErrorCode::InvalidArgument, "eps must be positive");
    const int dsign = determinant_sign(g, eps);
    require(dsign > 0 || ctx.projective, ErrorCode::InvalidArgument, "matrix has negative determinant");
    Matrix a = dsign > 0 ? g : Matrix(-g);
    const double floor = std::min(1e-13, eps);
    Factorization out;
    auto images = eliminate<double>(
        a, [](double x) { return std::abs(x); }, [&](double x, double norm) { return std::abs(x) <= floor * norm; },
        [&](double x, double norm) { return std::abs(x) < eps * norm; }, &out.min_pivot_ratio);
    out.w = SignedPermutation::from_images(ctx, images);
    return out;
}

SignedPermutation bruhat_factorize(const Matrix& g, double eps, bool projective) {
    return bruhat_factorize_detailed(g, GroupContext(static_cast<int>(g.rows()), projective), eps).w;
}

SignedPermutation bruhat_factorize(const RationalMatrix& g, bool projective) {
    require_square(g);
    const GroupContext ctx(static_cast<int>(g.rows()), projective);
    const Rational det = g.fullPivLu().determinant();
    require(det != 0, ErrorCode::DegenerateInput, "matrix is singular");
    require(det > 0 || projective, ErrorCode::InvalidArgument, "matrix has negative determinant");
    RationalMatrix a = det > 0 ? g : RationalMatrix(-g);
    auto images = eliminate<Rational>(
        a, [](const Rational& x) { return std::abs(x.convert_to<double>()); },
        [](const Rational& x, double) { return x == 0; }, [](const Rational&, double) { return false; }, nullptr);
    return SignedPermutation::from_images(ctx, images);
}

SignedPermutation relative_position_element(const OrientedFlag& F1, const OrientedFlag& F2, const GroupContext& ctx,
                                            double eps) {
    require(F1.rank() == F2.rank() && F1.rank() == ctx.n, ErrorCode::RankMismatch, "flag sizes differ");
    return bruhat_factorize_detailed(F1.rotation().transpose() * F2.rotation(), ctx, eps).w;
}

int relative_position(const OrientedFlag& F1, const OrientedFlag& F2, const PositionSpace& space, double eps) {
    return space.class_of(relative_position_element(F1, F2, space.context(), eps));
}

OrientedSubspace::OrientedSubspace(Matrix basis, double eps) : basis_(std::move(basis)) {
    require(basis_.rows() >= 1 && basis_.cols() >= 1, ErrorCode::InvalidArgument,
            "use OrientedSubspace::zero for the zero subspace");
    require(basis_.cols() <= basis_.rows(), ErrorCode::InvalidArgument, "more basis vectors than dimensions");
    Eigen::JacobiSVD<Matrix> svd(basis_);
    const auto& s = svd.singularValues();
    require(s(s.size() - 1) > eps * std::max(1.0, s(0)), ErrorCode::DegenerateInput,
            "basis columns are linearly dependent");
}

OrientedSubspace OrientedSubspace::zero(int ambient, int sign) {
    OrientedSubspace z;
    z.basis_ = Matrix(ambient, 0);
    z.zero_sign_ = sign < 0 ? -1 : 1;
    return z;
}

OrientedSubspace OrientedSubspace::flipped() const {
    OrientedSubspace out = *this;
    if (dim() == 0)
        out.zero_sign_ = -zero_sign_;
    else
        out.basis_.col(dim() - 1) *= -1;
    return out;
}

namespace {

int numeric_rank(const Matrix& m, double eps) {
    if (m.cols() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& s = svd.singularValues();
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > eps * std::max(1.0, s(0))) ++r;
    return r;
}

Matrix hcat(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows(), a.cols() + b.cols());
    out << a, b;
    return out;
}

// Orthonormal basis of the orthogonal complement of span(sub) inside span(whole).
Matrix complement_within(const Matrix& whole, const Matrix& sub) {
    Eigen::HouseholderQR<Matrix> qr(whole);
    const Matrix U = Matrix(qr.householderQ()).leftCols(whole.cols());
    if (sub.cols() == 0) return U;
    // coordinates of sub in U, then the orthogonal complement of those coordinates
    const Matrix coords = U.transpose() * sub;
    Eigen::JacobiSVD<Matrix> svd(coords, Eigen::ComputeFullU);
    return U * svd.matrixU().rightCols(whole.cols() - sub.cols());
}

}  // namespace

bool OrientedSubspace::same_span(const OrientedSubspace& other, double eps) const {
    if (ambient() != other.ambient() || dim() != other.dim()) return false;
    if (dim() == 0) return true;
    return numeric_rank(hcat(basis_, other.basis_), eps) == dim();
}

int OrientedSubspace::orientation_relative_to(const OrientedSubspace& other, double eps) const {
    require(same_span(other, eps), ErrorCode::InvalidArgument, "subspaces differ");
    if (dim() == 0) return zero_sign_ * other.zero_sign_;
    const Matrix X = other.basis_.colPivHouseholderQr().solve(basis_);
    return X.determinant() > 0 ? 1 : -1;
}

int concatenation_sign(std::initializer_list<const OrientedSubspace*> pieces, double eps) {
    int sign = 1;
    int cols = 0, n = -1;
    for (const auto* p : pieces) {
        if (n < 0) n = p->ambient();
        require(p->ambient() == n, ErrorCode::RankMismatch, "ambient dimensions differ");
        if (p->dim() == 0) sign *= p->zero_sign();
        cols += p->dim();
    }
    require(cols == n, ErrorCode::RankMismatch, "pieces do not add up to the ambient dimension");
    Matrix m(n, cols);
    int at = 0;
    for (const auto* p : pieces) {
        m.middleCols(at, p->dim()) = p->basis();
        at += p->dim();
    }
    if (n == 0) return sign;
    return sign * determinant_sign(m, eps);
}

OrientedSubspace oriented_sum(const OrientedSubspace& A, const OrientedSubspace& B, double eps) {
    require(A.ambient() == B.ambient(), ErrorCode::RankMismatch, "ambient dimensions differ");
    require(A.dim() + B.dim() <= A.ambient(), ErrorCode::NotTransverseSubspaces, "dimensions exceed the ambient space");
    if (A.dim() == 0) return A.zero_sign() > 0 ? B : B.flipped();
    if (B.dim() == 0) return B.zero_sign() > 0 ? A : A.flipped();
    const Matrix m = hcat(A.basis(), B.basis());
    require(numeric_rank(m, eps) == m.cols(), ErrorCode::NotTransverseSubspaces, "summands intersect");
    return OrientedSubspace(m, eps);
}

OrientedSubspace oriented_intersection(const OrientedSubspace& A, const OrientedSubspace& B, double eps) {
    require(A.ambient() == B.ambient(), ErrorCode::RankMismatch, "ambient dimensions differ");
    const int n = A.ambient(), a = A.dim(), b = B.dim();
    require(numeric_rank(hcat(A.basis(), B.basis()), eps) == n, ErrorCode::NotSpanning, "A + B is not the whole space");
    const int c = a + b - n;

    Matrix C(n, c);
    if (c > 0) {
        // kernel of [A | -B] gives A x = B y
        Matrix AB = hcat(A.basis(), -B.basis());
        Eigen::JacobiSVD<Matrix> svd(AB, Eigen::ComputeFullV);
        const Matrix ker = svd.matrixV().rightCols(c);
        C = A.basis() * ker.topRows(a);
    }
    auto make = [&](const Matrix& m) { return m.cols() == 0 ? OrientedSubspace::zero(n) : OrientedSubspace(m, eps); };
    OrientedSubspace Ap = make(complement_within(A.basis(), C));
    if (concatenation_sign({&Ap, &B}, eps) < 0) Ap = Ap.flipped();
    OrientedSubspace Bp = make(complement_within(B.basis(), C));
    if (concatenation_sign({&A, &Bp}, eps) < 0) Bp = Bp.flipped();
    OrientedSubspace out = make(C);
    if (concatenation_sign({&Ap, &out, &Bp}, eps) < 0) out = out.flipped();
    return out;
}

}  // namespace oriflag
