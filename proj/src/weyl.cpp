#include "oriflag/weyl.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "oriflag/errors.hpp"

namespace oriflag {

namespace {

int permutation_parity(const std::vector<int>& perm) {
    // (-1)^(number of inversions) via cycle decomposition
    std::vector<char> seen(perm.size(), 0);
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
            seen[j] = 1;
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

void require_same(const SignedPermutation& a, const SignedPermutation& b) {
    require(a.rank() == b.rank(), ErrorCode::RankMismatch,
            "ranks " + std::to_string(a.rank()) + " and " + std::to_string(b.rank()));
    require(a.projective() == b.projective(), ErrorCode::RankMismatch,
            "mixing projective and linear elements");
}

}  // namespace

GroupContext::GroupContext(int n_, bool projective_) : n(n_), projective(projective_) {
    require(n >= 2, ErrorCode::InvalidArgument, "rank must be at least 2");
    require(n <= 100, ErrorCode::InvalidArgument, "rank too large");
    require(!projective || n % 2 == 0, ErrorCode::InvalidArgument,
            "projective mode needs even n (-I must have determinant 1)");
}

SignedPermutation::SignedPermutation(std::vector<std::int8_t> images, bool projective)
    : images_(std::move(images)), projective_(projective) {
    normalize();
}

void SignedPermutation::normalize() {
    if (projective_ && !images_.empty() && images_[0] < 0) {
        for (auto& x : images_) x = static_cast<std::int8_t>(-x);
    }
}

SignedPermutation SignedPermutation::from_images(const GroupContext& ctx, const std::vector<int>& images) {
    const int n = ctx.n;
    require(static_cast<int>(images.size()) == n, ErrorCode::RankMismatch,
            "expected " + std::to_string(n) + " images, got " + std::to_string(images.size()));
    std::vector<int> perm(n);
    std::vector<char> used(n, 0);
    int sign = 1;
    for (int j = 0; j < n; ++j) {
        const int v = images[j];
        const int r = std::abs(v) - 1;
        require(v != 0 && r < n, ErrorCode::InvalidArgument, "image out of range: " + std::to_string(v));
        require(!used[r], ErrorCode::InvalidArgument, "repeated row " + std::to_string(r + 1));
        used[r] = 1;
        perm[j] = r;
        if (v < 0) sign = -sign;
    }
    require(sign * permutation_parity(perm) == 1, ErrorCode::InvalidArgument,
            "signed permutation has determinant -1");
    std::vector<std::int8_t> im(images.begin(), images.end());
    return SignedPermutation(std::move(im), ctx.projective);
}

SignedPermutation SignedPermutation::from_perm_signs(const GroupContext& ctx, const std::vector<int>& perm,
                                                     const std::vector<int>& signs) {
    require(perm.size() == signs.size(), ErrorCode::RankMismatch, "perm and signs differ in length");
    std::vector<int> images(perm.size());
    for (std::size_t j = 0; j < perm.size(); ++j) {
        require(signs[j] == 1 || signs[j] == -1, ErrorCode::InvalidArgument, "signs must be +-1");
        images[j] = signs[j] * perm[j];
    }
    return from_images(ctx, images);
}

SignedPermutation SignedPermutation::from_matrix(const GroupContext& ctx, const Eigen::MatrixXd& m) {
    require(m.rows() == ctx.n && m.cols() == ctx.n, ErrorCode::RankMismatch, "matrix size");
    std::vector<int> images(ctx.n, 0);
    for (int j = 0; j < ctx.n; ++j) {
        for (int i = 0; i < ctx.n; ++i) {
            const double x = m(i, j);
            if (x == 0.0) continue;
            require(std::abs(x) == 1.0 && images[j] == 0, ErrorCode::InvalidArgument,
                    "not a signed permutation matrix");
            images[j] = (x > 0 ? 1 : -1) * (i + 1);
        }
    }
    return from_images(ctx, images);
}

SignedPermutation SignedPermutation::decode(const GroupContext& ctx, const std::string& text) {
    std::istringstream in(text);
    std::vector<int> images;
    std::string tok;
    while (in >> tok) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(tok, &used);
            require(used == tok.size(), ErrorCode::ParseError, "bad token '" + tok + "'");
            images.push_back(v);
        } catch (const std::logic_error&) {
            fail(ErrorCode::ParseError, "bad token '" + tok + "'");
        }
    }
    return from_images(ctx, images);
}

std::string SignedPermutation::encode() const {
    std::string out;
    for (int j = 0; j < rank(); ++j) {
        if (j) out += ' ';
        out += images_[j] < 0 ? '-' : '+';
        out += std::to_string(row(j) + 1);
    }
    return out;
}

Eigen::MatrixXd SignedPermutation::matrix() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rank(), rank());
    for (int j = 0; j < rank(); ++j) m(row(j), j) = sign(j);
    return m;
}

Eigen::MatrixXi SignedPermutation::int_matrix() const {
    Eigen::MatrixXi m = Eigen::MatrixXi::Zero(rank(), rank());
    for (int j = 0; j < rank(); ++j) m(row(j), j) = sign(j);
    return m;
}

bool SignedPermutation::is_identity() const {
    for (int j = 0; j < rank(); ++j)
        if (images_[j] != j + 1) return false;
    return true;
}

bool SignedPermutation::is_diagonal() const {
    for (int j = 0; j < rank(); ++j)
        if (row(j) != j) return false;
    return true;
}

bool SignedPermutation::is_antidiagonal() const {
    for (int j = 0; j < rank(); ++j)
        if (row(j) != rank() - 1 - j) return false;
    return true;
}

bool SignedPermutation::operator<(const SignedPermutation& o) const {
    if (projective_ != o.projective_) return projective_ < o.projective_;
    if (rank() != o.rank()) return rank() < o.rank();
    for (int j = 0; j < rank(); ++j) {
        const bool na = images_[j] < 0, nb = o.images_[j] < 0;
        if (na != nb) return nb;
        if (row(j) != o.row(j)) return row(j) < o.row(j);
    }
    return false;
}

std::size_t SignedPermutation::hash() const {
    std::size_t h = 1469598103934665603ull ^ static_cast<std::size_t>(projective_);
    for (auto x : images_) {
        h ^= static_cast<std::uint8_t>(x);
        h *= 1099511628211ull;
    }
    return h;
}

SignedPermutation identity(const GroupContext& ctx) {
    std::vector<int> images(ctx.n);
    std::iota(images.begin(), images.end(), 1);
    return SignedPermutation::from_images(ctx, images);
}

SignedPermutation compose(const SignedPermutation& a, const SignedPermutation& b) {
    require_same(a, b);
    std::vector<std::int8_t> c(a.images_.size());
    for (std::size_t j = 0; j < c.size(); ++j) {
        const int bj = b.images_[j];
        const int r = (bj < 0 ? -bj : bj) - 1;
        c[j] = static_cast<std::int8_t>(bj < 0 ? -a.images_[r] : a.images_[r]);
    }
    return SignedPermutation(std::move(c), a.projective_);
}

SignedPermutation compose(std::initializer_list<SignedPermutation> factors) {
    require(factors.size() > 0, ErrorCode::InvalidArgument, "empty product");
    auto it = factors.begin();
    SignedPermutation acc = *it++;
    for (; it != factors.end(); ++it) acc = compose(acc, *it);
    return acc;
}

SignedPermutation inverse(const SignedPermutation& w) {
    std::vector<std::int8_t> inv(w.images_.size());
    for (int j = 0; j < w.rank(); ++j) {
        inv[w.row(j)] = static_cast<std::int8_t>(w.sign(j) * (j + 1));
    }
    return SignedPermutation(std::move(inv), w.projective_);
}

SignedPermutation power(const SignedPermutation& w, int e) {
    SignedPermutation base = e < 0 ? inverse(w) : w;
    SignedPermutation acc = identity(w.context());
    for (int k = 0; k < std::abs(e); ++k) acc = compose(acc, base);
    return acc;
}

SignedPermutation negate(const SignedPermutation& w) {
    require(w.rank() % 2 == 0, ErrorCode::InvalidArgument, "-w has determinant -1 for odd n");
    std::vector<std::int8_t> im(w.images_);
    for (auto& x : im) x = static_cast<std::int8_t>(-x);
    return SignedPermutation(std::move(im), w.projective_);
}

SignedPermutation generator(const GroupContext& ctx, int i) {
    require(i >= 1 && i <= ctx.n - 1, ErrorCode::IndexOutOfRange,
            "root index " + std::to_string(i) + " outside 1.." + std::to_string(ctx.n - 1));
    std::vector<int> images(ctx.n);
    std::iota(images.begin(), images.end(), 1);
    images[i - 1] = i + 1;  // column i -> +row i+1
    images[i] = -i;         // column i+1 -> -row i
    return SignedPermutation::from_images(ctx, images);
}

namespace {

std::vector<SignedPermutation> sorted_unique(std::vector<SignedPermutation> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<SignedPermutation> with_sign_patterns(const GroupContext& ctx, const std::vector<int>& perm1) {
    std::vector<SignedPermutation> out;
    const int n = ctx.n;
    std::vector<int> perm0(n);
    for (int j = 0; j < n; ++j) perm0[j] = perm1[j] - 1;
    const int parity = permutation_parity(perm0);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        const int negs = std::popcount(mask);
        if ((negs % 2 == 0 ? 1 : -1) != parity) continue;
        std::vector<int> images(n);
        for (int j = 0; j < n; ++j) images[j] = ((mask >> j) & 1u) ? -perm1[j] : perm1[j];
        out.push_back(SignedPermutation::from_images(ctx, images));
    }
    return out;
}

}  // namespace

std::vector<SignedPermutation> mbar_elements(const GroupContext& ctx) {
    std::vector<int> id(ctx.n);
    std::iota(id.begin(), id.end(), 1);
    return sorted_unique(with_sign_patterns(ctx, id));
}

std::vector<SignedPermutation> transverse_elements(const GroupContext& ctx) {
    std::vector<int> rev(ctx.n);
    for (int j = 0; j < ctx.n; ++j) rev[j] = ctx.n - j;
    return sorted_unique(with_sign_patterns(ctx, rev));
}

std::vector<SignedPermutation> all_elements(const GroupContext& ctx) {
    require(ctx.n <= 9, ErrorCode::TooLarge, "enumerating W~ for n > 9");
    std::vector<int> perm(ctx.n);
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<SignedPermutation> out;
    do {
        auto part = with_sign_patterns(ctx, perm);
        out.insert(out.end(), part.begin(), part.end());
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sorted_unique(std::move(out));
}

bool in_mbar(const SignedPermutation& w) { return w.is_diagonal(); }

bool is_transverse(const SignedPermutation& w) { return w.is_antidiagonal(); }

std::vector<int> underlying_permutation(const SignedPermutation& w) {
    std::vector<int> p(w.rank());
    for (int j = 0; j < w.rank(); ++j) p[j] = w.row(j);
    return p;
}

int length(const SignedPermutation& w) {
    int inv = 0;
    for (int a = 0; a < w.rank(); ++a)
        for (int b = a + 1; b < w.rank(); ++b)
            if (w.row(a) > w.row(b)) ++inv;
    return inv;
}

ReducedWord reduced_word(const SignedPermutation& w, DescentRule rule) {
    const GroupContext ctx = w.context();
    const int n = ctx.n;
    ReducedWord out;
    SignedPermutation cur = w;
    std::vector<int> col_of_row(n);
    while (true) {
        for (int j = 0; j < n; ++j) col_of_row[cur.row(j)] = j;
        int pick = -1;
        for (int i = 0; i + 1 < n; ++i) {
            if (col_of_row[i] > col_of_row[i + 1]) {
                pick = i;
                if (rule == DescentRule::Smallest) break;
            }
        }
        if (pick < 0) break;
        out.letters.push_back(pick + 1);
        cur = compose(inverse(generator(ctx, pick + 1)), cur);
    }
    out.m = cur;
    return out;
}

SignedPermutation evaluate_word(const GroupContext& ctx, const std::vector<int>& letters,
                                const SignedPermutation& m) {
    SignedPermutation acc = identity(ctx);
    for (int i : letters) acc = compose(acc, generator(ctx, i));
    return compose(acc, m);
}

int opposition(const GroupContext& ctx, int i) {
    require(i >= 1 && i <= ctx.n - 1, ErrorCode::IndexOutOfRange, "root index out of range");
    return ctx.n - i;
}

namespace {

CanonicalTransverse canonical_linear(const SignedPermutation& w0) {
    const int n = w0.rank();
    const GroupContext lin(n, false);
    const SignedPermutation w = SignedPermutation::from_images(lin, w0.images());
    const int h = n % 2 ? (n - 1) / 2 : (n - 2) / 2;
    std::vector<int> m(n, 1);
    // entry (i, n-1-i) sits in column n-1-i
    for (int i = 0; i < h; ++i) m[i] = w.sign(n - 1 - i);
    const int negs = static_cast<int>(std::count(m.begin(), m.end(), -1));
    if (negs % 2) m[n % 2 ? (n - 1) / 2 : h] *= -1;
    const SignedPermutation c = diag(lin, m);
    return {compose({c, w, c}), c};
}

}  // namespace

CanonicalTransverse canonicalize_transverse_under_conjugation(const SignedPermutation& w0) {
    require(is_transverse(w0), ErrorCode::NotTransverse, w0.encode() + " is not antidiagonal");
    const GroupContext ctx = w0.context();
    auto to_ctx = [&](const SignedPermutation& x) { return SignedPermutation::from_images(ctx, x.images()); };
    if (!ctx.projective) return canonical_linear(w0);
    auto a = canonical_linear(w0);
    auto b = canonical_linear(negate(SignedPermutation::from_images(GroupContext(ctx.n), w0.images())));
    const auto& best = b.canonical < a.canonical ? b : a;
    return {to_ctx(best.canonical), to_ctx(best.conjugator)};
}

SignedPermutation antidiag(const GroupContext& ctx, const std::vector<int>& signs_top_down) {
    require(static_cast<int>(signs_top_down.size()) == ctx.n, ErrorCode::RankMismatch, "antidiag sign count");
    std::vector<int> images(ctx.n);
    for (int i = 0; i < ctx.n; ++i) images[ctx.n - 1 - i] = signs_top_down[i] * (i + 1);
    return SignedPermutation::from_images(ctx, images);
}

SignedPermutation diag(const GroupContext& ctx, const std::vector<int>& signs) {
    require(static_cast<int>(signs.size()) == ctx.n, ErrorCode::RankMismatch, "diag sign count");
    std::vector<int> images(ctx.n);
    for (int i = 0; i < ctx.n; ++i) images[i] = signs[i] * (i + 1);
    return SignedPermutation::from_images(ctx, images);
}

}  // namespace oriflag
