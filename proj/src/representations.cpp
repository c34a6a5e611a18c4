#include "oriflag/representations.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/special_functions/binomial.hpp>
#include <boost/multiprecision/gmp.hpp>

#include "oriflag/errors.hpp"

namespace oriflag {

namespace mp = boost::multiprecision;

Matrix rot90() {
    Matrix r(2, 2);
    r << 0, 1, -1, 0;
    return r;
}

RationalMatrix rot90_exact() {
    RationalMatrix r(2, 2);
    r << 0, 1, -1, 0;
    return r;
}

namespace {

void check_n(int n) { require(n >= 1 && n <= 100, ErrorCode::IndexOutOfRange, "representation dimension out of range"); }

double binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    return boost::math::binomial_coefficient<double>(static_cast<unsigned>(n), static_cast<unsigned>(k));
}

mp::mpz_int binom_exact(int n, int k) {
    if (k < 0 || k > n) return 0;
    mp::mpz_int r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Coefficient of X^(n-i) Y^(i-1) in (aX+cY)^(n-j) (bX+dY)^(j-1), 1-based i, j.
template <class T, class B>
T monomial_entry(int n, int i, int j, const T& a, const T& b, const T& c, const T& d, B binomial) {
    T sum = 0;
    for (int p = 0; p <= i - 1; ++p) {
        const int q = i - 1 - p;
        if (p > n - j || q > j - 1) continue;
        T term = T(binomial(n - j, p)) * T(binomial(j - 1, q));
        for (int e = 0; e < n - j - p; ++e) term *= a;
        for (int e = 0; e < p; ++e) term *= c;
        for (int e = 0; e < j - 1 - q; ++e) term *= b;
        for (int e = 0; e < q; ++e) term *= d;
        sum += term;
    }
    return sum;
}

void check_two_by_two(const Matrix& A, double eps) {
    require(A.rows() == 2 && A.cols() == 2, ErrorCode::RankMismatch, "expected a 2x2 matrix");
    require(std::abs(A.determinant() - 1) < eps * std::max(1.0, A.squaredNorm()), ErrorCode::InvalidArgument,
            "2x2 matrix must have determinant 1");
}

void check_two_by_two(const RationalMatrix& A) {
    require(A.rows() == 2 && A.cols() == 2, ErrorCode::RankMismatch, "expected a 2x2 matrix");
    require(A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0) == 1, ErrorCode::InvalidArgument,
            "2x2 matrix must have determinant 1");
}

bool exact_sqrt(const mp::mpz_int& x, mp::mpz_int& root) {
    root = mp::sqrt(x);
    return root * root == x;
}

void check_block(int n, int k) {
    check_n(n);
    require(k >= 0 && k <= n, ErrorCode::IndexOutOfRange, "block size out of range");
}

}  // namespace

Matrix irreducible_rep(int n, const Matrix& A, double eps) {
    check_n(n);
    check_two_by_two(A, eps);
    const double a = A(0, 0), b = A(0, 1), c = A(1, 0), d = A(1, 1);
    Matrix m(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            m(i - 1, j - 1) = std::sqrt(binom(n - 1, j - 1) / binom(n - 1, i - 1)) *
                              monomial_entry<double>(n, i, j, a, b, c, d, binom);
    return m;
}

RationalMatrix symmetric_power_monomial(int n, const RationalMatrix& A) {
    check_n(n);
    check_two_by_two(A);
    RationalMatrix m(n, n);
    auto bin = [](int x, int y) { return Rational(binom_exact(x, y)); };
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            m(i - 1, j - 1) = monomial_entry<Rational>(n, i, j, A(0, 0), A(0, 1), A(1, 0), A(1, 1), bin);
    return m;
}

RationalMatrix irreducible_rep_exact(int n, const RationalMatrix& A) {
    RationalMatrix m = symmetric_power_monomial(n, A);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (m(i - 1, j - 1) == 0) continue;
            // sqrt(C(n-1,j-1) / C(n-1,i-1)) must be rational
            Rational ratio(binom_exact(n - 1, j - 1), binom_exact(n - 1, i - 1));
            mp::mpz_int rn, rd;
            require(exact_sqrt(mp::numerator(ratio), rn) && exact_sqrt(mp::denominator(ratio), rd),
                    ErrorCode::IrrationalEntry,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) + ") is irrational");
            m(i - 1, j - 1) *= Rational(rn, rd);
        }
    return m;
}

Matrix block_embedding(int n, int k, const Matrix& A, double eps) {
    check_block(n, k);
    if (k == 0 || k == n) return irreducible_rep(n, A, eps);
    Matrix m = Matrix::Zero(n, n);
    m.topLeftCorner(k, k) = irreducible_rep(k, A, eps);
    m.bottomRightCorner(n - k, n - k) = irreducible_rep(n - k, A, eps);
    return m;
}

RationalMatrix block_embedding_exact(int n, int k, const RationalMatrix& A) {
    check_block(n, k);
    if (k == 0 || k == n) return irreducible_rep_exact(n, A);
    RationalMatrix m = RationalMatrix::Zero(n, n);
    m.topLeftCorner(k, k) = irreducible_rep_exact(k, A);
    m.bottomRightCorner(n - k, n - k) = irreducible_rep_exact(n - k, A);
    return m;
}

BlockSpec block_spec(int n, int k) {
    require(n >= 3 && n % 2 == 1, ErrorCode::InvalidArgument, "block embeddings need odd n >= 3");
    require(k >= 1 && k <= n - 1, ErrorCode::IndexOutOfRange, "k must lie in 1..n-1");
    BlockSpec s{n, k, std::min(k, n - k), std::max(k, n - k), 1};
    const int e = k % 2 ? (k - 1) / 2 : (n - k - 1) / 2;
    s.delta = e % 2 ? -1 : 1;
    return s;
}

SignedPermutation interlacer(int n, int k) {
    check_block(n, k);
    GroupContext ctx(n);
    if (k == 0 || k == n) return identity(ctx);
    std::vector<int> ex;
    for (int i = 0; i < k; ++i) ex.push_back(k - 1 - 2 * i);
    for (int i = 0; i < n - k; ++i) ex.push_back(n - k - 1 - 2 * i);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return ex[x] > ex[y]; });
    for (int r = 0; r + 1 < n; ++r)
        require(ex[order[r]] != ex[order[r + 1]], ErrorCode::InvalidArgument, "duplicate exponents");
    std::vector<int> perm(n), signs(n, 1);
    for (int r = 0; r < n; ++r) perm[order[r]] = r + 1;
    int inversions = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    if (inversions % 2) signs[n - 1] = -1;
    return SignedPermutation::from_perm_signs(ctx, perm, signs);
}

SignedPermutation block_transversality_formula(int n, int k) {
    if (k == 0 || k == n) return hitchin_w0(n);
    const BlockSpec s = block_spec(n, k);
    std::vector<int> rows((n - 1) / 2, 1);
    rows.push_back(s.delta);
    for (int i = 0; i < s.q - 1; ++i) rows.push_back(i % 2 ? 1 : -1);
    const int l = (s.Q - 1) % 2 ? -1 : 1;
    for (int i = 0; i < (s.Q - s.q + 1) / 2; ++i) rows.push_back(l);
    require(static_cast<int>(rows.size()) == n, ErrorCode::InvalidArgument, "block sizes do not add up");
    return antidiag(GroupContext(n), rows);
}

BlockTransversality analyze_block_transversality(int n, int k) {
    check_block(n, k);
    if (k == 0 || k == n) {
        const auto w = bruhat_factorize(irreducible_rep_exact(n, rot90_exact()), n % 2 == 0);
        const auto f = hitchin_w0(n);
        return {w, f, canonicalize_transverse_under_conjugation(w).canonical,
                canonicalize_transverse_under_conjugation(f).canonical};
    }
    block_spec(n, k);
    const RationalMatrix z = to_rational(interlacer(n, k));
    const RationalMatrix g = z * block_embedding_exact(n, k, rot90_exact()) * z.transpose();
    const auto w = bruhat_factorize(g);
    const auto f = block_transversality_formula(n, k);
    return {w, f, canonicalize_transverse_under_conjugation(w).canonical,
            canonicalize_transverse_under_conjugation(f).canonical};
}

SignedPermutation block_transversality(int n, int k) {
    const auto r = analyze_block_transversality(n, k);
    require(r.matches(), ErrorCode::VerificationMismatch,
            "computed w_k " + r.computed_canonical.encode() + " differs from closed form " +
                r.formula_canonical.encode());
    return r.computed_canonical;
}

SignedPermutation hitchin_w0(int n) {
    require(n >= 2 && n <= 100, ErrorCode::IndexOutOfRange, "n out of range");
    std::vector<int> rows(n);
    // entry (n+1-j, j) = (-1)^(j+1); row i = n+1-j
    for (int j = 1; j <= n; ++j) rows[n - j] = j % 2 ? 1 : -1;
    return antidiag(GroupContext(n, n % 2 == 0), rows);
}

}  // namespace oriflag
