#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace oriflag {

struct GroupContext {
    int n = 2;
    bool projective = false;

    GroupContext() = default;
    GroupContext(int n_, bool projective_ = false);

    bool operator==(const GroupContext&) const = default;
};

// Signed permutation matrix of determinant +1. Column j (0-based) has its
// single nonzero entry sign(j) at row row(j). Stored as signed one-line
// images: image(j) = sign(j) * (row(j) + 1).
class SignedPermutation {
public:
    SignedPermutation() = default;

    static SignedPermutation from_images(const GroupContext& ctx, const std::vector<int>& images);
    static SignedPermutation from_perm_signs(const GroupContext& ctx, const std::vector<int>& perm,
                                             const std::vector<int>& signs);
    static SignedPermutation from_matrix(const GroupContext& ctx, const Eigen::MatrixXd& m);
    // "+2 -1 +3"
    static SignedPermutation decode(const GroupContext& ctx, const std::string& text);

    int rank() const { return static_cast<int>(images_.size()); }
    bool projective() const { return projective_; }
    GroupContext context() const { return GroupContext(rank(), projective_); }

    int row(int col) const { return (images_[col] < 0 ? -images_[col] : images_[col]) - 1; }
    int sign(int col) const { return images_[col] < 0 ? -1 : 1; }
    int image(int col) const { return images_[col]; }
    std::vector<int> images() const { return {images_.begin(), images_.end()}; }

    std::string encode() const;
    Eigen::MatrixXd matrix() const;
    Eigen::MatrixXi int_matrix() const;

    bool is_identity() const;
    bool is_diagonal() const;
    bool is_antidiagonal() const;

    bool operator==(const SignedPermutation& o) const {
        return projective_ == o.projective_ && images_ == o.images_;
    }
    // Lexicographic on per-column keys (is_negative, row).
    bool operator<(const SignedPermutation& o) const;

    std::size_t hash() const;

private:
    SignedPermutation(std::vector<std::int8_t> images, bool projective);
    void normalize();

    std::vector<std::int8_t> images_;
    bool projective_ = false;

    friend SignedPermutation compose(const SignedPermutation& a, const SignedPermutation& b);
    friend SignedPermutation inverse(const SignedPermutation& w);
    friend SignedPermutation negate(const SignedPermutation& w);
};

struct SignedPermutationHash {
    std::size_t operator()(const SignedPermutation& w) const { return w.hash(); }
};

SignedPermutation identity(const GroupContext& ctx);
SignedPermutation compose(const SignedPermutation& a, const SignedPermutation& b);
SignedPermutation compose(std::initializer_list<SignedPermutation> factors);
inline SignedPermutation operator*(const SignedPermutation& a, const SignedPermutation& b) {
    return compose(a, b);
}
SignedPermutation inverse(const SignedPermutation& w);
SignedPermutation power(const SignedPermutation& w, int e);
// -w; only valid when n is even (otherwise det would flip).
SignedPermutation negate(const SignedPermutation& w);

// v(alpha_i), 1 <= i <= n-1: block [[0,-1],[1,0]] on rows/columns i, i+1.
SignedPermutation generator(const GroupContext& ctx, int i);

std::vector<SignedPermutation> mbar_elements(const GroupContext& ctx);
std::vector<SignedPermutation> transverse_elements(const GroupContext& ctx);
std::vector<SignedPermutation> all_elements(const GroupContext& ctx);

bool in_mbar(const SignedPermutation& w);
bool is_transverse(const SignedPermutation& w);

// Underlying permutation: perm[j] = row(j).
std::vector<int> underlying_permutation(const SignedPermutation& w);

int length(const SignedPermutation& w);

enum class DescentRule { Smallest, Largest };

struct ReducedWord {
    std::vector<int> letters;  // root indices 1..n-1
    SignedPermutation m;       // remainder in M-bar
};

// w = v(letters[0]) ... v(letters[k-1]) m with k = length(w).
ReducedWord reduced_word(const SignedPermutation& w, DescentRule rule = DescentRule::Smallest);
SignedPermutation evaluate_word(const GroupContext& ctx, const std::vector<int>& letters,
                                const SignedPermutation& m);

int opposition(const GroupContext& ctx, int i);

struct CanonicalTransverse {
    SignedPermutation canonical;
    SignedPermutation conjugator;  // canonical = conjugator * w0 * conjugator^-1
};

CanonicalTransverse canonicalize_transverse_under_conjugation(const SignedPermutation& w0);

// antidiag(s_1, ..., s_n): entry (i, n+1-i) = s_i, listed from the top row.
SignedPermutation antidiag(const GroupContext& ctx, const std::vector<int>& signs_top_down);
SignedPermutation diag(const GroupContext& ctx, const std::vector<int>& signs);

}  // namespace oriflag

template <>
struct std::hash<oriflag::SignedPermutation> {
    std::size_t operator()(const oriflag::SignedPermutation& w) const { return w.hash(); }
};
